use std::collections::HashSet;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde_json::Value;

use super::Document;
use crate::error::{Error, Result};

/// A technical abstract and its plain-language counterpart.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    pub pair_id: String,
    pub abs_doc: Document,
    pub pls_doc: Document,
}

/// Reads a pairs file: one JSON object per line with string fields
/// `pair_id`, `abs_text` and `pls_text`. Blank lines are ignored.
///
/// Documents get the ids `<pair_id>#abs` and `<pair_id>#pls`.
pub fn load_pairs(path: &Path) -> Result<Vec<PairRecord>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(BufReader::new(file), &path.display().to_string())
}

pub fn parse_pairs<R: BufRead>(reader: R, source: &str) -> Result<Vec<PairRecord>> {
    let mut out = Vec::new();
    let mut ids = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::parse(source, lineno, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line)
            .map_err(|e| Error::parse(source, lineno, format!("invalid JSON: {e}")))?;
        let field = |name: &str| -> Result<String> {
            match value.get(name) {
                Some(Value::String(s)) => Ok(s.clone()),
                Some(_) => Err(Error::parse(
                    source,
                    lineno,
                    format!("field `{name}` is not a string"),
                )),
                None => Err(Error::parse(
                    source,
                    lineno,
                    format!("missing field `{name}`"),
                )),
            }
        };
        let pair_id = field("pair_id")?;
        let abs_text = field("abs_text")?;
        let pls_text = field("pls_text")?;
        if !ids.insert(pair_id.clone()) {
            return Err(Error::DuplicateId(pair_id));
        }
        let abs_doc = Document::from_text(format!("{pair_id}#abs"), &abs_text);
        let pls_doc = Document::from_text(format!("{pair_id}#pls"), &pls_text);
        for (role, doc) in [("abs_text", &abs_doc), ("pls_text", &pls_doc)] {
            if doc.is_empty() {
                return Err(Error::parse(
                    source,
                    lineno,
                    format!("field `{role}` is empty"),
                ));
            }
        }
        out.push(PairRecord {
            pair_id,
            abs_doc,
            pls_doc,
        });
    }
    Ok(out)
}

/// Reads every `.txt` file in `dir` as one document named by its file stem,
/// in file-name order.
pub fn load_text_dir(dir: &Path) -> Result<Vec<Document>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "txt") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(Document::from_text(id, &text))
        })
        .collect()
}

/// Where a corpus came from; CoNLL-U input arrives already tagged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    TextDir,
    TextFile,
    Conllu,
}

/// Reads a corpus from a directory of `.txt` files, a `.conllu` file, or a
/// single text file (one document named by the file stem).
pub fn load_corpus(path: &Path) -> Result<(Vec<Document>, CorpusFormat)> {
    if path.is_dir() {
        return Ok((load_text_dir(path)?, CorpusFormat::TextDir));
    }
    if path.extension().is_some_and(|e| e == "conllu") {
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        return Ok((
            super::parse_conllu(BufReader::new(file), &path.display().to_string())?,
            CorpusFormat::Conllu,
        ));
    }
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok((vec![Document::from_text(id, &text)], CorpusFormat::TextFile))
}
