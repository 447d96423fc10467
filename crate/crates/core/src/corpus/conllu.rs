use std::io::{BufRead, Write};

use super::{Document, Pos, Sentence, Token};
use crate::error::{Error, Result};

fn finish_sentence(
    doc: &mut Option<Document>,
    tokens: &mut Vec<Token>,
    text: &mut Option<String>,
    docs_seen: &mut usize,
) {
    if tokens.is_empty() {
        *text = None;
        return;
    }
    let doc = doc.get_or_insert_with(|| {
        *docs_seen += 1;
        Document {
            doc_id: format!("doc{docs_seen}"),
            sentences: Vec::new(),
        }
    });
    let raw = text.take().unwrap_or_else(|| {
        tokens
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    });
    doc.sentences.push(Sentence {
        tokens: std::mem::take(tokens),
        raw,
    });
}

/// Reads CoNLL-U into documents.
///
/// `# newdoc id = X` starts a new document; sentences before the first such
/// comment go to a document with a generated id. `# text = ...` becomes the
/// sentence's raw text. Multiword ranges (`1-2`) and empty nodes (`1.1`) are
/// skipped. Every other non-comment, non-blank line must have 10 columns.
pub fn parse_conllu<R: BufRead>(reader: R, source: &str) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut current: Option<Document> = None;
    let mut tokens = Vec::new();
    let mut text = None;
    let mut docs_seen = 0;

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::parse(source, lineno, e.to_string()))?;
        let line = line.trim_end_matches(['\r', '\n']);

        if line.trim().is_empty() {
            finish_sentence(&mut current, &mut tokens, &mut text, &mut docs_seen);
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("newdoc") {
                finish_sentence(&mut current, &mut tokens, &mut text, &mut docs_seen);
                docs.extend(current.take());
                docs_seen += 1;
                let id = rest
                    .trim()
                    .strip_prefix("id")
                    .and_then(|r| r.trim().strip_prefix('='))
                    .map(|r| r.trim().to_string())
                    .filter(|r| !r.is_empty())
                    .unwrap_or_else(|| format!("doc{docs_seen}"));
                current = Some(Document {
                    doc_id: id,
                    sentences: Vec::new(),
                });
            } else if let Some(rest) = comment.strip_prefix("text") {
                if let Some(t) = rest.trim_start().strip_prefix('=') {
                    text = Some(t.trim().to_string());
                }
            }
            continue;
        }

        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(Error::parse(
                source,
                lineno,
                format!("expected 10 tab-separated columns, found {}", cols.len()),
            ));
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let form = cols[1];
        let lemma = if cols[2] == "_" {
            form.to_lowercase()
        } else {
            cols[2].to_string()
        };
        tokens.push(Token::with_tags(form, lemma, Pos::from_upos(cols[3])));
    }
    finish_sentence(&mut current, &mut tokens, &mut text, &mut docs_seen);
    docs.extend(current);

    let mut seen = std::collections::HashSet::new();
    for d in &docs {
        if !seen.insert(d.doc_id.as_str()) {
            return Err(Error::DuplicateId(d.doc_id.clone()));
        }
    }
    Ok(docs)
}

fn upos(pos: Pos) -> &'static str {
    match pos {
        Pos::Noun => "NOUN",
        Pos::Verb => "VERB",
        Pos::Punct => "PUNCT",
        Pos::Other => "X",
    }
}

/// Writes documents as CoNLL-U with FORM, LEMMA and UPOS filled in.
pub fn write_conllu<W: Write>(docs: &[Document], mut out: W) -> std::io::Result<()> {
    for doc in docs {
        writeln!(out, "# newdoc id = {}", doc.doc_id)?;
        for (s, sentence) in doc.sentences.iter().enumerate() {
            writeln!(out, "# sent_id = {}-{}", doc.doc_id, s + 1)?;
            writeln!(out, "# text = {}", sentence.raw)?;
            for (k, t) in sentence.tokens.iter().enumerate() {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t_\t_\t_\t_\t_\t_",
                    k + 1,
                    t.surface,
                    t.lemma,
                    upos(t.pos)
                )?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_token() {
        let docs = parse_conllu(
            "1\tdogs\tdog\tNOUN\t_\t_\t_\t_\t_\t_\n".as_bytes(),
            "t.conllu",
        )
        .unwrap();
        assert_eq!(docs.len(), 1);
        let t = &docs[0].sentences[0].tokens[0];
        assert_eq!(
            (t.surface.as_str(), t.lemma.as_str(), t.pos),
            ("dogs", "dog", Pos::Noun)
        );
    }

    #[test]
    fn adjective_is_other() {
        let docs = parse_conllu(
            "1\tbig\tbig\tADJ\t_\t_\t_\t_\t_\t_\n".as_bytes(),
            "t.conllu",
        )
        .unwrap();
        assert_eq!(docs[0].sentences[0].tokens[0].pos, Pos::Other);
    }

    #[test]
    fn wrong_column_count_names_line() {
        let input = "# newdoc id = a\n1\tdogs\tdog\tNOUN\t_\t_\t_\t_\t_\n";
        match parse_conllu(input.as_bytes(), "t.conllu") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn documents_and_sentences() {
        let input = "\
# newdoc id = first
# text = Dogs bark.
1\tDogs\tdog\tNOUN\t_\t_\t_\t_\t_\t_
2\tbark\tbark\tVERB\t_\t_\t_\t_\t_\t_
3\t.\t.\tPUNCT\t_\t_\t_\t_\t_\t_

1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_
1\tdo\tdo\tAUX\t_\t_\t_\t_\t_\t_
2\tn't\tnot\tPART\t_\t_\t_\t_\t_\t_

# newdoc id = second
1\tHi\thi\tINTJ\t_\t_\t_\t_\t_\t_
";
        let docs = parse_conllu(input.as_bytes(), "t.conllu").unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].doc_id, "first");
        assert_eq!(docs[0].sentences.len(), 2);
        assert_eq!(docs[0].sentences[0].raw, "Dogs bark.");
        assert_eq!(docs[0].sentences[1].tokens.len(), 2);
        assert_eq!(docs[1].doc_id, "second");
    }

    #[test]
    fn duplicate_doc_ids_rejected() {
        let input = "# newdoc id = a\n1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n\n# newdoc id = a\n1\ty\ty\tX\t_\t_\t_\t_\t_\t_\n";
        assert!(matches!(
            parse_conllu(input.as_bytes(), "t.conllu"),
            Err(Error::DuplicateId(_))
        ));
    }
}
