use std::collections::HashMap;
use std::fs;
use std::path::Path;

use regex::{Regex, RegexBuilder};
use serde::Deserialize;

use super::vectors::{Embedding, SentenceEmbeddingSource};
use crate::corpus::Document;
use crate::error::{Error, Result};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rating {
    pub concreteness: f64,
    pub imageability: f64,
}

/// Word concreteness and imageability ratings.
#[derive(Debug, Clone, Default)]
pub struct RatingLexicon {
    entries: HashMap<String, Rating>,
}

impl RatingLexicon {
    pub fn new(entries: impl IntoIterator<Item = (String, Rating)>) -> Self {
        RatingLexicon {
            entries: entries
                .into_iter()
                .map(|(w, r)| (w.to_lowercase(), r))
                .collect(),
        }
    }

    pub fn get(&self, word: &str) -> Option<Rating> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `word<TAB>concreteness<TAB>imageability`. A first line whose
    /// second column is not numeric is taken as a header.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(Error::parse(
                    source,
                    lineno,
                    format!("expected 3 columns, found {}", cols.len()),
                ));
            }
            let parsed = (cols[1].parse::<f64>(), cols[2].parse::<f64>());
            let (Ok(c), Ok(im)) = parsed else {
                if entries.is_empty() && parsed.0.is_err() {
                    continue; // header
                }
                return Err(Error::parse(source, lineno, "ratings must be numbers"));
            };
            if !c.is_finite() || !im.is_finite() {
                return Err(Error::parse(source, lineno, "ratings must be finite"));
            }
            entries.insert(
                cols[0].to_lowercase(),
                Rating {
                    concreteness: c,
                    imageability: im,
                },
            );
        }
        Ok(RatingLexicon { entries })
    }
}

const DEFAULT_CONNECTIVES: &str = include_str!("../../data/connectives.txt");

/// Literal phrases matched case-insensitively on word boundaries, longest
/// phrase first, without overlaps.
#[derive(Debug, Clone)]
pub struct ConnectivePatterns {
    patterns: Vec<String>,
    regex: Regex,
}

impl ConnectivePatterns {
    pub fn new<S: AsRef<str>>(patterns: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut patterns: Vec<String> = patterns
            .into_iter()
            .map(|p| {
                p.as_ref()
                    .split_whitespace()
                    .collect::<Vec<_>>()
                    .join(" ")
                    .to_lowercase()
            })
            .filter(|p| !p.is_empty())
            .collect();
        patterns.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        patterns.dedup();
        if patterns.is_empty() {
            return Err(Error::Config("connective list is empty".into()));
        }
        let alternation = patterns
            .iter()
            .map(|p| {
                p.split(' ')
                    .map(regex::escape)
                    .collect::<Vec<_>>()
                    .join(r"\s+")
            })
            .collect::<Vec<_>>()
            .join("|");
        let regex = RegexBuilder::new(&format!(r"\b(?:{alternation})\b"))
            .case_insensitive(true)
            .build()
            .map_err(|e| Error::Config(format!("connective patterns: {e}")))?;
        Ok(ConnectivePatterns { patterns, regex })
    }

    /// One pattern per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    /// The bundled list of causal and intentional connectives.
    pub fn default_list() -> Self {
        Self::parse(DEFAULT_CONNECTIVES).expect("bundled connective list is valid")
    }

    /// Patterns in matching order.
    pub fn patterns(&self) -> &[String] {
        &self.patterns
    }

    pub fn count_matches(&self, text: &str) -> usize {
        self.regex.find_iter(text).count()
    }
}

#[derive(Deserialize)]
struct SidecarRecord {
    doc_id: String,
    sent: usize,
    vec: Vec<f64>,
}

/// Precomputed sentence embeddings keyed by `(doc_id, sentence index)`.
#[derive(Debug, Clone)]
pub struct SidecarEmbeddings {
    dim: usize,
    vectors: HashMap<(String, usize), Vec<f64>>,
}

impl SidecarEmbeddings {
    /// One JSON object per line with `doc_id`, `sent` and `vec`. Lines
    /// starting with `#` are provenance comments.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut dim = None;
        let mut vectors = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let rec: SidecarRecord = serde_json::from_str(line)
                .map_err(|e| Error::parse(source, lineno, format!("invalid record: {e}")))?;
            let expected = *dim.get_or_insert(rec.vec.len());
            if rec.vec.len() != expected || expected == 0 {
                return Err(Error::parse(
                    source,
                    lineno,
                    format!(
                        "vector has {} components, expected {expected}",
                        rec.vec.len()
                    ),
                ));
            }
            if vectors
                .insert((rec.doc_id.clone(), rec.sent), rec.vec)
                .is_some()
            {
                return Err(Error::parse(
                    source,
                    lineno,
                    format!(
                        "duplicate record for `{}` sentence {}",
                        rec.doc_id, rec.sent
                    ),
                ));
            }
        }
        let dim = dim.ok_or_else(|| Error::parse(source, 1, "sidecar has no records"))?;
        Ok(SidecarEmbeddings { dim, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, doc_id: &str, sent: usize) -> Option<&[f64]> {
        self.vectors
            .get(&(doc_id.to_string(), sent))
            .map(Vec::as_slice)
    }
}

impl SentenceEmbeddingSource for SidecarEmbeddings {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, doc: &Document, index: usize, _buffer: usize) -> Result<Embedding> {
        let v = self
            .get(&doc.doc_id, index)
            .ok_or_else(|| Error::MissingEmbedding {
                doc_id: doc.doc_id.clone(),
                sentence: index,
            })?;
        Ok(Embedding {
            degenerate: v.iter().all(|&x| x == 0.0),
            vector: v.to_vec(),
        })
    }
}

#[derive(Debug, Default)]
pub struct SupportFiles {
    pub lexicon: Option<RatingLexicon>,
    pub connectives: Option<ConnectivePatterns>,
    pub sidecar: Option<SidecarEmbeddings>,
}

/// Loads whichever optional support files are given.
pub fn load_support_files(
    lexicon: Option<&Path>,
    connectives: Option<&Path>,
    sidecar: Option<&Path>,
) -> Result<SupportFiles> {
    let label = |p: &Path| p.display().to_string();
    Ok(SupportFiles {
        lexicon: lexicon
            .map(|p| RatingLexicon::parse(&read(p)?, &label(p)))
            .transpose()?,
        connectives: connectives
            .map(|p| ConnectivePatterns::parse(&read(p)?))
            .transpose()?,
        sidecar: sidecar
            .map(|p| SidecarEmbeddings::parse(&read(p)?, &label(p)))
            .transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicon_columns_and_header() {
        let lex = RatingLexicon::parse("word\tconc\timag\nheart\t5.8\t6.1\n", "lex").unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(
            lex.get("heart"),
            Some(Rating {
                concreteness: 5.8,
                imageability: 6.1
            })
        );
        assert!(RatingLexicon::parse("heart\t5.8\n", "lex").is_err());
        assert!(RatingLexicon::parse("heart\t5.8\t6\nlung\tx\t1\n", "lex").is_err());
    }

    #[test]
    fn connectives_phrases() {
        let c = ConnectivePatterns::parse("# causal\nbecause\nso that\n").unwrap();
        assert_eq!(c.patterns(), ["because", "so that"]);
        assert_eq!(c.count_matches("We ran SO  THAT we won, because."), 2);
        assert_eq!(c.count_matches("becausex"), 0);
    }

    #[test]
    fn longest_first_without_overlap() {
        let c = ConnectivePatterns::new(["so", "so that"]).unwrap();
        assert_eq!(c.count_matches("so that"), 1);
        assert_eq!(c.count_matches("so, so"), 2);
    }

    #[test]
    fn default_list_matches_because() {
        let c = ConnectivePatterns::default_list();
        assert!(c.patterns().len() >= 40);
        assert_eq!(c.count_matches("He fell because it rained."), 1);
    }

    #[test]
    fn sidecar_dims_must_agree() {
        let v384 = vec!["0.5"; 384].join(",");
        let v385 = vec!["0.5"; 385].join(",");
        let text = format!(
            "{{\"doc_id\":\"a\",\"sent\":0,\"vec\":[{v384}]}}\n{{\"doc_id\":\"a\",\"sent\":1,\"vec\":[{v385}]}}\n"
        );
        let err = SidecarEmbeddings::parse(&text, "side").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn sidecar_lookup() {
        let text = "# encoder=test pooling=mean\n{\"doc_id\":\"a\",\"sent\":0,\"vec\":[1,0]}\n";
        let s = SidecarEmbeddings::parse(text, "side").unwrap();
        assert_eq!(s.dim(), 2);
        let doc = Document::from_text("a", "One.");
        assert_eq!(s.embed(&doc, 0, 3).unwrap().vector, vec![1.0, 0.0]);
        assert!(s.embed(&doc, 1, 0).is_err());
    }
}
