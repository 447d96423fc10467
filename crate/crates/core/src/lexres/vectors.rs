use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::Loaded;
use crate::corpus::{Document, Token};
use crate::error::{Error, Result};

/// Word embeddings from a text vector file (fastText `.vec` layout).
#[derive(Debug, Clone)]
pub struct WordVectors {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl WordVectors {
    /// Keys are lowercased; later duplicates replace earlier ones.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (String, Vec<f64>)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("vector dimension must be positive".into()));
        }
        let mut vectors = HashMap::new();
        for (word, v) in entries {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            vectors.insert(word.to_lowercase(), v);
        }
        Ok(WordVectors { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        if let Some(v) = self.vectors.get(word) {
            return Some(v);
        }
        self.vectors.get(&word.to_lowercase()).map(Vec::as_slice)
    }
}

/// Reads a vector file: a `V D` header, then `word x1 .. xD` per line.
pub fn load_word_vectors(path: &Path) -> Result<Loaded<WordVectors>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_word_vectors(BufReader::new(file), &path.display().to_string())
}

pub fn parse_word_vectors<R: BufRead>(reader: R, source: &str) -> Result<Loaded<WordVectors>> {
    let mut lines = reader.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((i, line)) => {
                let line = line.map_err(|e| Error::parse(source, i + 1, e.to_string()))?;
                if !line.trim().is_empty() {
                    break (i + 1, line);
                }
            }
            None => return Err(Error::parse(source, 1, "missing `V D` header")),
        }
    };
    let bad_header = || Error::parse(source, header.0, "header must be `V D` with D > 0");
    let mut h = header.1.split_whitespace();
    let declared: usize = h
        .next()
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad_header)?;
    let dim: usize = h
        .next()
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad_header)?;
    if dim == 0 || h.next().is_some() {
        return Err(bad_header());
    }

    let mut warnings = Vec::new();
    let mut vectors: HashMap<String, Vec<f64>> = HashMap::with_capacity(declared);
    let mut rows = 0usize;
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::parse(source, lineno, e.to_string()))?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(' ');
        let word = parts.next().unwrap_or_default().to_lowercase();
        let values = parts
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(source, lineno, format!("bad component: {e}")))?;
        if values.len() != dim {
            return Err(Error::parse(
                source,
                lineno,
                format!("expected {dim} components, found {}", values.len()),
            ));
        }
        rows += 1;
        if vectors.insert(word.clone(), values).is_some() {
            let msg = format!("{source}:{lineno}: duplicate word `{word}`, keeping the last");
            log::warn!("{msg}");
            warnings.push(msg);
        }
    }
    if rows != declared {
        let msg = format!("{source}: header declares {declared} vectors, found {rows}");
        log::warn!("{msg}");
        warnings.push(msg);
    }
    Ok(Loaded {
        value: WordVectors { dim, vectors },
        warnings,
    })
}

/// Cosine similarity with a flag for zero-norm inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cosine {
    pub value: f64,
    pub degenerate: bool,
}

/// `u·v / (|u| |v|)`, clamped to `[-1, 1]`. Zero vectors give 0 with the
/// degenerate flag set.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<Cosine> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let (mut dot, mut nu, mut nv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Ok(Cosine {
            value: 0.0,
            degenerate: true,
        });
    }
    Ok(Cosine {
        value: (dot / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0),
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub vector: Vec<f64>,
    /// No input contributed; `vector` is all zeros.
    pub degenerate: bool,
}

/// Mean vector of the in-vocabulary, non-punctuation tokens.
pub fn sentence_embedding_avg<'a>(
    wv: &WordVectors,
    tokens: impl IntoIterator<Item = &'a Token>,
) -> Embedding {
    let mut sum = vec![0.0; wv.dim()];
    let mut n = 0usize;
    for t in tokens {
        if !t.is_word() {
            continue;
        }
        if let Some(v) = wv.get(&t.surface) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
            n += 1;
        }
    }
    if n == 0 {
        return Embedding {
            vector: sum,
            degenerate: true,
        };
    }
    for s in &mut sum {
        *s /= n as f64;
    }
    Embedding {
        vector: sum,
        degenerate: false,
    }
}

/// Provides one vector per sentence (or sentence window) of a document.
pub trait SentenceEmbeddingSource: Send + Sync {
    fn dim(&self) -> usize;

    /// Embeds sentence `index` of `doc` together with `buffer` sentences of
    /// context on each side. Sources keyed only by sentence position may
    /// ignore `buffer`.
    fn embed(&self, doc: &Document, index: usize, buffer: usize) -> Result<Embedding>;
}

/// Averages word vectors over the tokens of a sentence window.
#[derive(Debug, Clone, Copy)]
pub struct AverageEmbedder<'a> {
    wv: &'a WordVectors,
}

impl<'a> AverageEmbedder<'a> {
    pub fn new(wv: &'a WordVectors) -> Self {
        AverageEmbedder { wv }
    }
}

impl SentenceEmbeddingSource for AverageEmbedder<'_> {
    fn dim(&self) -> usize {
        self.wv.dim()
    }

    fn embed(&self, doc: &Document, index: usize, buffer: usize) -> Result<Embedding> {
        if index >= doc.sentences.len() {
            return Err(Error::MissingEmbedding {
                doc_id: doc.doc_id.clone(),
                sentence: index,
            });
        }
        let (lo, hi) = doc.window_bounds(index, buffer);
        let tokens = doc.sentences[lo..=hi].iter().flat_map(|s| s.tokens.iter());
        Ok(sentence_embedding_avg(self.wv, tokens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv() -> WordVectors {
        WordVectors::new(
            2,
            [
                ("heart".to_string(), vec![1.0, 0.0]),
                ("drug".to_string(), vec![0.0, 1.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn parses_header_and_rows() {
        let v = parse_word_vectors("2 3\nfoo 1 2 3\nBar 4 5 6\n".as_bytes(), "v").unwrap();
        assert_eq!(v.value.len(), 2);
        assert_eq!(v.value.dim(), 3);
        assert_eq!(v.value.get("bar"), Some(&[4.0, 5.0, 6.0][..]));
        assert_eq!(v.value.get("BAR"), Some(&[4.0, 5.0, 6.0][..]));
        assert!(v.warnings.is_empty());
    }

    #[test]
    fn short_row_errors_at_line() {
        let err = parse_word_vectors("2 3\nfoo 1 2 3\nbar 4 5\n".as_bytes(), "v").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn duplicate_word_last_wins() {
        let v = parse_word_vectors("2 1\nfoo 1\nfoo 2\n".as_bytes(), "v").unwrap();
        assert_eq!(v.value.get("foo"), Some(&[2.0][..]));
        assert_eq!(v.warnings.len(), 1);
    }

    #[test]
    fn cosine_cases() {
        assert!((cosine(&[1.0, 2.0], &[1.0, 2.0]).unwrap().value - 1.0).abs() < 1e-15);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap().value, 0.0);
        let zero = cosine(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(
            zero,
            Cosine {
                value: 0.0,
                degenerate: true
            }
        );
        assert!(cosine(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn averages() {
        let wv = wv();
        let one = sentence_embedding_avg(&wv, &[Token::new("Heart")]);
        assert_eq!(one.vector, vec![1.0, 0.0]);
        let two = sentence_embedding_avg(
            &wv,
            &[Token::new("heart"), Token::new(","), Token::new("drug")],
        );
        assert_eq!(two.vector, vec![0.5, 0.5]);
        let none = sentence_embedding_avg(&wv, &[Token::new("zebra")]);
        assert!(none.degenerate);
        assert_eq!(none.vector, vec![0.0, 0.0]);
    }

    #[test]
    fn average_embedder_uses_window() {
        let wv = wv();
        let doc = Document::from_text("d", "Heart. Drug. Heart.");
        let e = AverageEmbedder::new(&wv);
        assert_eq!(e.embed(&doc, 1, 0).unwrap().vector, vec![0.0, 1.0]);
        let w = e.embed(&doc, 1, 1).unwrap().vector;
        assert!((w[0] - 2.0 / 3.0).abs() < 1e-15 && (w[1] - 1.0 / 3.0).abs() < 1e-15);
    }
}
