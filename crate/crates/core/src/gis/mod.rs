//! Corpus-level normalization and weighted scoring.
//!
//! Scoring runs in three steps. [`compute_corpus_indices`] fills one
//! [`RawIndices`](crate::indices::RawIndices) per document, [`zscore`]
//! standardizes each index over the whole population, and a
//! [`FormulaConfig`] sums the weighted z values into a GIS per document.

mod formula;
mod pipeline;
mod zscore;

pub use formula::{FormulaConfig, PRESET_NAMES};
pub use pipeline::{
    check_requirements, compute_corpus_indices, score_documents, Embedder, GisScore, Requirement,
    Resources, ScoringOptions,
};
pub use zscore::{zscore, zscore_with, IndexStats, ZMatrix, ZRow, ZStats};
