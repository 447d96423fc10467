use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FormulaConfig, ZRow};
use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::indices::{
    idx_msl, idx_pcdc, idx_pcref, idx_rating, idx_semantic_chunks, idx_smcaus_embed, idx_smcaus_wn,
    idx_wrdhyp_mean, idx_wrdhyp_norm, idx_wrdic, ChunkingParams, IndexKind, PcrefMode, RatingKind,
    RawIndices, WrdhypNormMode,
};
use crate::lexres::{
    AverageEmbedder, ConnectivePatterns, Embedding, IcTable, RatingLexicon,
    SentenceEmbeddingSource, SidecarEmbeddings, WordNetDb, WordVectors,
};

/// Loaded resources shared read-only by every scoring thread.
#[derive(Debug, Default)]
pub struct Resources {
    pub wordnet: Option<WordNetDb>,
    pub ic: Option<IcTable>,
    pub vectors: Option<WordVectors>,
    /// Preferred over `vectors` for sentence embeddings when present.
    pub sidecar: Option<SidecarEmbeddings>,
    pub lexicon: Option<RatingLexicon>,
    /// Falls back to the bundled list.
    pub connectives: Option<ConnectivePatterns>,
}

impl Resources {
    pub fn connectives(&self) -> &ConnectivePatterns {
        static DEFAULT: OnceLock<ConnectivePatterns> = OnceLock::new();
        self.connectives
            .as_ref()
            .unwrap_or_else(|| DEFAULT.get_or_init(ConnectivePatterns::default_list))
    }

    /// Sentence embeddings from the sidecar, else averaged word vectors.
    pub fn embedder(&self) -> Option<Embedder<'_>> {
        match (&self.sidecar, &self.vectors) {
            (Some(s), _) => Some(Embedder::Sidecar(s)),
            (None, Some(v)) => Some(Embedder::Average(AverageEmbedder::new(v))),
            (None, None) => None,
        }
    }

    pub fn has(&self, req: Requirement) -> bool {
        match req {
            Requirement::Embeddings => self.sidecar.is_some() || self.vectors.is_some(),
            Requirement::WordVectors => self.vectors.is_some(),
            Requirement::WordNet => self.wordnet.is_some(),
            Requirement::InformationContent => self.ic.is_some(),
            Requirement::Lexicon => self.lexicon.is_some(),
        }
    }

    /// Fails on the first enabled index whose resources are missing.
    pub fn check(&self, enabled: &BTreeSet<IndexKind>) -> Result<()> {
        check_requirements(enabled, |r| self.has(r))
    }
}

/// A resource some index cannot be computed without.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    /// A sidecar file or word vectors.
    Embeddings,
    WordVectors,
    WordNet,
    InformationContent,
    Lexicon,
}

impl Requirement {
    pub fn for_index(kind: IndexKind) -> &'static [Requirement] {
        use IndexKind::*;
        match kind {
            Pcref | PcrefChunk => &[Requirement::Embeddings],
            SmcausE => &[Requirement::WordVectors],
            SmcausWn | WrdhypMean | WrdhypNorm => &[Requirement::WordNet],
            Wrdic => &[Requirement::WordNet, Requirement::InformationContent],
            Pccnc | Wrdimg => &[Requirement::Lexicon],
            Pcdc | Msl => &[],
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Requirement::Embeddings => "sentence embeddings (a sidecar or word vectors)",
            Requirement::WordVectors => "word vectors",
            Requirement::WordNet => "a WordNet database",
            Requirement::InformationContent => "an information content table",
            Requirement::Lexicon => "a rating lexicon",
        }
    }
}

/// Checks every enabled index against `has`, in index order.
pub fn check_requirements(
    enabled: &BTreeSet<IndexKind>,
    has: impl Fn(Requirement) -> bool,
) -> Result<()> {
    for &kind in enabled {
        if let Some(&missing) = Requirement::for_index(kind).iter().find(|&&r| !has(r)) {
            return Err(Error::MissingResource {
                index: kind.name(),
                resource: missing.describe(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub enum Embedder<'a> {
    Sidecar(&'a SidecarEmbeddings),
    Average(AverageEmbedder<'a>),
}

impl SentenceEmbeddingSource for Embedder<'_> {
    fn dim(&self) -> usize {
        match self {
            Embedder::Sidecar(s) => s.dim(),
            Embedder::Average(a) => a.dim(),
        }
    }

    fn embed(&self, doc: &Document, index: usize, buffer: usize) -> Result<Embedding> {
        match self {
            Embedder::Sidecar(s) => s.embed(doc, index, buffer),
            Embedder::Average(a) => a.embed(doc, index, buffer),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScoringOptions {
    /// Indices to compute; the rest are left unavailable.
    pub enabled: BTreeSet<IndexKind>,
    pub pcref_mode: PcrefMode,
    pub chunking: ChunkingParams,
    pub wrdhyp_norm_mode: WrdhypNormMode,
    /// Report chunks per sentence instead of the raw chunk count.
    pub chunks_per_sentence: bool,
}

impl ScoringOptions {
    pub fn with_enabled(indices: impl IntoIterator<Item = IndexKind>) -> Self {
        ScoringOptions {
            enabled: indices.into_iter().collect(),
            ..Default::default()
        }
    }
}

fn index_document(doc: &Document, res: &Resources, opts: &ScoringOptions) -> Result<RawIndices> {
    let mut raw = RawIndices::new(doc.doc_id.clone());
    let embedder = res.embedder();
    for &kind in &opts.enabled {
        let value = match kind {
            IndexKind::Pcref => {
                idx_pcref(doc, embedder.as_ref().expect("checked"), opts.pcref_mode)?
            }
            IndexKind::PcrefChunk => {
                idx_semantic_chunks(doc, embedder.as_ref().expect("checked"), &opts.chunking)?.map(
                    |c| {
                        if opts.chunks_per_sentence {
                            c as f64 / doc.sentences.len() as f64
                        } else {
                            c as f64
                        }
                    },
                )
            }
            IndexKind::Pcdc => idx_pcdc(doc, res.connectives()),
            IndexKind::SmcausE => idx_smcaus_embed(doc, res.vectors.as_ref().expect("checked")),
            IndexKind::SmcausWn => idx_smcaus_wn(doc, res.wordnet.as_ref().expect("checked")),
            IndexKind::WrdhypMean => idx_wrdhyp_mean(doc, res.wordnet.as_ref().expect("checked")),
            IndexKind::WrdhypNorm => idx_wrdhyp_norm(
                doc,
                res.wordnet.as_ref().expect("checked"),
                opts.wrdhyp_norm_mode,
            ),
            IndexKind::Wrdic => idx_wrdic(
                doc,
                res.wordnet.as_ref().expect("checked"),
                res.ic.as_ref().expect("checked"),
            ),
            IndexKind::Msl => idx_msl(doc),
            IndexKind::Pccnc => idx_rating(
                doc,
                res.lexicon.as_ref().expect("checked"),
                RatingKind::Concreteness,
            ),
            IndexKind::Wrdimg => idx_rating(
                doc,
                res.lexicon.as_ref().expect("checked"),
                RatingKind::Imageability,
            ),
        };
        raw.set(kind, value);
    }
    Ok(raw)
}

/// Computes the enabled indices for every document on a pool of `jobs`
/// threads (0 picks the number of CPUs). Output follows input order, and
/// when several documents fail the earliest one's error is returned.
pub fn compute_corpus_indices(
    docs: &[Document],
    res: &Resources,
    opts: &ScoringOptions,
    jobs: usize,
) -> Result<Vec<RawIndices>> {
    res.check(&opts.enabled)?;
    opts.chunking.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let results: Vec<Result<RawIndices>> = pool.install(|| {
        docs.par_iter()
            .map(|d| index_document(d, res, opts))
            .collect()
    });
    results.into_iter().collect()
}

/// Raw values, z values and the weighted total for one document.
#[derive(Debug, Clone, PartialEq)]
pub struct GisScore {
    pub raw: RawIndices,
    pub z: ZRow,
    pub gis: f64,
}

impl GisScore {
    pub fn doc_id(&self) -> &str {
        &self.raw.doc_id
    }
}

/// Applies `formula` to each row of `z`.
pub fn score_documents(
    raw: &[RawIndices],
    z: &[ZRow],
    formula: &FormulaConfig,
) -> Result<Vec<GisScore>> {
    raw.iter()
        .zip(z)
        .map(|(r, z)| {
            Ok(GisScore {
                raw: r.clone(),
                z: *z,
                gis: formula.apply(z)?,
            })
        })
        .collect()
}
