use serde::{Deserialize, Serialize};

use super::mean;
use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::lexres::{cosine, ConnectivePatterns, Embedding, SentenceEmbeddingSource};

/// Which sentence pairs referential cohesion averages over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PcrefMode {
    /// Consecutive sentences only.
    #[default]
    Adjacent,
    /// Every unordered pair.
    AllPairs,
}

fn embed_all(
    doc: &Document,
    src: &dyn SentenceEmbeddingSource,
    buffer: usize,
) -> Result<Vec<Embedding>> {
    (0..doc.sentences.len())
        .map(|i| {
            let e = src.embed(doc, i, buffer)?;
            if e.vector.len() != src.dim() {
                return Err(Error::DimensionMismatch {
                    expected: src.dim(),
                    found: e.vector.len(),
                });
            }
            Ok(e)
        })
        .collect()
}

/// Mean cosine between sentence embeddings. Unavailable below two sentences.
pub fn idx_pcref(
    doc: &Document,
    src: &dyn SentenceEmbeddingSource,
    mode: PcrefMode,
) -> Result<Option<f64>> {
    if doc.sentences.len() < 2 {
        return Ok(None);
    }
    let e = embed_all(doc, src, 0)?;
    let mut sims = Vec::new();
    match mode {
        PcrefMode::Adjacent => {
            for w in e.windows(2) {
                sims.push(cosine(&w[0].vector, &w[1].vector)?.value);
            }
        }
        PcrefMode::AllPairs => {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    sims.push(cosine(&e[i].vector, &e[j].vector)?.value);
                }
            }
        }
    }
    Ok(mean(sims))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChunkingParams {
    /// Sentences of context on each side of the embedded sentence.
    pub buffer_size: usize,
    /// Distances above this percentile become breakpoints; in `(0, 100]`.
    pub breakpoint_percentile: f64,
}

impl Default for ChunkingParams {
    fn default() -> Self {
        ChunkingParams {
            buffer_size: 1,
            breakpoint_percentile: 95.0,
        }
    }
}

impl ChunkingParams {
    pub fn validate(&self) -> Result<()> {
        let p = self.breakpoint_percentile;
        if !(p > 0.0 && p <= 100.0) {
            return Err(Error::Config(format!(
                "breakpoint percentile must be in (0, 100], got {p}"
            )));
        }
        Ok(())
    }
}

/// Percentile with linear interpolation between order statistics
/// (rank `p/100 * (n-1)`). `values` must be non-empty.
pub fn percentile(values: &[f64], p: f64) -> f64 {
    assert!(!values.is_empty(), "percentile of an empty set");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = rank - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Chunks implied by consecutive-sentence cosine distances: one more than
/// the number of distances strictly above the percentile threshold.
pub fn chunk_count(distances: &[f64], breakpoint_percentile: f64) -> usize {
    if distances.is_empty() {
        return 1;
    }
    let threshold = percentile(distances, breakpoint_percentile);
    1 + distances.iter().filter(|&&d| d > threshold).count()
}

/// Number of semantic chunks. Each sentence is embedded together with its
/// `buffer_size` neighbours; breakpoints fall where the cosine distance to
/// the next window exceeds the configured percentile of all distances.
/// `None` for an empty document.
pub fn idx_semantic_chunks(
    doc: &Document,
    src: &dyn SentenceEmbeddingSource,
    params: &ChunkingParams,
) -> Result<Option<usize>> {
    params.validate()?;
    if doc.sentences.is_empty() {
        return Ok(None);
    }
    let e = embed_all(doc, src, params.buffer_size)?;
    let distances = e
        .windows(2)
        .map(|w| Ok(1.0 - cosine(&w[0].vector, &w[1].vector)?.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(chunk_count(&distances, params.breakpoint_percentile)))
}

/// Connective matches per sentence.
pub fn idx_pcdc(doc: &Document, patterns: &ConnectivePatterns) -> Option<f64> {
    if doc.sentences.is_empty() {
        return None;
    }
    let matches: usize = doc
        .sentences
        .iter()
        .map(|s| patterns.count_matches(&s.raw))
        .sum();
    Some(matches as f64 / doc.sentences.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Embeddings looked up by sentence index.
    struct Fixed(Vec<Vec<f64>>);

    impl SentenceEmbeddingSource for Fixed {
        fn dim(&self) -> usize {
            self.0[0].len()
        }
        fn embed(&self, _doc: &Document, i: usize, _b: usize) -> Result<Embedding> {
            Ok(Embedding {
                vector: self.0[i].clone(),
                degenerate: false,
            })
        }
    }

    fn doc(n: usize) -> Document {
        let text: Vec<String> = (0..n).map(|i| format!("Sentence number {i}.")).collect();
        Document::from_text("d", &text.join(" "))
    }

    const E: [f64; 2] = [1.0, 0.0];
    const F: [f64; 2] = [0.0, 1.0];

    #[test]
    fn pcref_cases() {
        let one = Fixed(vec![E.to_vec()]);
        assert_eq!(idx_pcref(&doc(1), &one, PcrefMode::Adjacent).unwrap(), None);

        let same = Fixed(vec![E.to_vec(); 3]);
        assert_eq!(
            idx_pcref(&doc(3), &same, PcrefMode::Adjacent).unwrap(),
            Some(1.0)
        );

        let eef = Fixed(vec![E.to_vec(), E.to_vec(), F.to_vec()]);
        assert_eq!(
            idx_pcref(&doc(3), &eef, PcrefMode::Adjacent).unwrap(),
            Some(0.5)
        );
        // pairs (0,1)=1, (0,2)=0, (1,2)=0
        let all = idx_pcref(&doc(3), &eef, PcrefMode::AllPairs)
            .unwrap()
            .unwrap();
        assert!((all - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn percentile_interpolates() {
        assert_eq!(percentile(&[0.0, 0.0, 1.0, 0.0, 0.0], 50.0), 0.0);
        assert_eq!(percentile(&[1.0, 2.0, 3.0, 4.0], 50.0), 2.5);
        assert_eq!(percentile(&[1.0, 2.0, 3.0, 4.0], 100.0), 4.0);
        assert!((percentile(&[1.0, 2.0, 3.0, 4.0, 5.0], 95.0) - 4.8).abs() < 1e-12);
    }

    #[test]
    fn chunk_cases() {
        let params = ChunkingParams {
            buffer_size: 0,
            breakpoint_percentile: 50.0,
        };
        let single = Fixed(vec![E.to_vec()]);
        assert_eq!(
            idx_semantic_chunks(&doc(1), &single, &params).unwrap(),
            Some(1)
        );

        let same = Fixed(vec![E.to_vec(); 4]);
        assert_eq!(
            idx_semantic_chunks(&doc(4), &same, &params).unwrap(),
            Some(1)
        );

        let blocks = Fixed(vec![
            E.to_vec(),
            E.to_vec(),
            E.to_vec(),
            F.to_vec(),
            F.to_vec(),
            F.to_vec(),
        ]);
        assert_eq!(
            idx_semantic_chunks(&doc(6), &blocks, &params).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn bad_percentile_rejected() {
        let params = ChunkingParams {
            buffer_size: 0,
            breakpoint_percentile: 0.0,
        };
        assert!(idx_semantic_chunks(&doc(2), &Fixed(vec![E.to_vec(); 2]), &params).is_err());
    }

    #[test]
    fn pcdc_counts_per_sentence() {
        let c = ConnectivePatterns::default_list();
        assert_eq!(
            idx_pcdc(&Document::from_text("d", "Nothing here."), &c),
            Some(0.0)
        );
        assert_eq!(
            idx_pcdc(&Document::from_text("d", "He fell because it rained."), &c),
            Some(1.0)
        );
        let four = "It rained. Therefore we stayed. We slept. Due to noise we woke.";
        assert_eq!(idx_pcdc(&Document::from_text("d", four), &c), Some(0.5));
        assert_eq!(idx_pcdc(&Document::from_text("d", ""), &c), None);
    }

    #[test]
    fn missing_embedding_propagates() {
        struct Empty;
        impl SentenceEmbeddingSource for Empty {
            fn dim(&self) -> usize {
                2
            }
            fn embed(&self, doc: &Document, i: usize, _b: usize) -> Result<Embedding> {
                Err(Error::MissingEmbedding {
                    doc_id: doc.doc_id.clone(),
                    sentence: i,
                })
            }
        }
        assert!(idx_pcref(&doc(2), &Empty, PcrefMode::Adjacent).is_err());
    }
}
