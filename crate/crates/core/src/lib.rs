//! Referenceless gist inference scoring for text simplification.
//!
//! A document is segmented and tagged ([`corpus`]), measured by a set of
//! cohesion, lexical and surface indices ([`indices`]) backed by lexical
//! resources ([`lexres`]), normalized over the scored population and
//! combined into a weighted Gist Inference Score ([`gis`]). [`eval`]
//! compares paired texts, runs group t-tests and correlates scores with
//! readability formulas.
//!
//! ```
//! use scigis::corpus::Document;
//! use scigis::gis::{compute_corpus_indices, score_documents, zscore, FormulaConfig, Resources, ScoringOptions};
//!
//! let docs = vec![
//!     Document::from_text("long", "This sentence runs on for quite a few words before it ends."),
//!     Document::from_text("short", "Short one. Another."),
//! ];
//! let formula = FormulaConfig::from_json(r#"{"name": "msl", "terms": {"msl": -1}}"#).unwrap();
//! let opts = ScoringOptions::with_enabled(formula.indices().unwrap());
//! let raw = compute_corpus_indices(&docs, &Resources::default(), &opts, 1).unwrap();
//! let (_, z) = zscore(&raw);
//! let scores = score_documents(&raw, &z, &formula).unwrap();
//! assert!(scores[1].gis > scores[0].gis);
//! ```

pub mod corpus;
pub mod error;
pub mod eval;
pub mod gis;
pub mod indices;
pub mod lexres;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/documents.md")]
    mod documents {}
    #[doc = include_str!("../../../book/src/resources.md")]
    mod resources {}
    #[doc = include_str!("../../../book/src/indices.md")]
    mod indices {}
    #[doc = include_str!("../../../book/src/scoring.md")]
    mod scoring {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
