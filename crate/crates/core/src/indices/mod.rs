//! Raw, per-document index values.
//!
//! Each index is a pure function of one document and read-only resources.
//! An index that cannot be computed (too few sentences or verbs, no lexicon
//! hits) is *unavailable*: it reports `None` here and is stored as value 0
//! with the availability flag cleared.

mod cohesion;
mod hypernymy;
mod surface;
mod verbs;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use cohesion::{
    chunk_count, idx_pcdc, idx_pcref, idx_semantic_chunks, percentile, ChunkingParams, PcrefMode,
};
pub use hypernymy::{idx_wrdhyp_mean, idx_wrdhyp_norm, idx_wrdic, WrdhypNormMode};
pub use surface::{idx_msl, idx_rating, RatingKind};
pub use verbs::{idx_smcaus_embed, idx_smcaus_wn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    Pcref,
    PcrefChunk,
    Pcdc,
    SmcausE,
    SmcausWn,
    WrdhypMean,
    WrdhypNorm,
    Wrdic,
    Msl,
    Pccnc,
    Wrdimg,
}

impl IndexKind {
    pub const COUNT: usize = 11;

    pub const ALL: [IndexKind; IndexKind::COUNT] = [
        IndexKind::Pcref,
        IndexKind::PcrefChunk,
        IndexKind::Pcdc,
        IndexKind::SmcausE,
        IndexKind::SmcausWn,
        IndexKind::WrdhypMean,
        IndexKind::WrdhypNorm,
        IndexKind::Wrdic,
        IndexKind::Msl,
        IndexKind::Pccnc,
        IndexKind::Wrdimg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Pcref => "pcref",
            IndexKind::PcrefChunk => "pcref_chunk",
            IndexKind::Pcdc => "pcdc",
            IndexKind::SmcausE => "smcaus_e",
            IndexKind::SmcausWn => "smcaus_wn",
            IndexKind::WrdhypMean => "wrdhyp_mean",
            IndexKind::WrdhypNorm => "wrdhyp_norm",
            IndexKind::Wrdic => "wrdic",
            IndexKind::Msl => "msl",
            IndexKind::Pccnc => "pccnc",
            IndexKind::Wrdimg => "wrdimg",
        }
    }

    pub fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        IndexKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownIndex(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IndexValue {
    pub value: f64,
    pub available: bool,
}

impl From<Option<f64>> for IndexValue {
    fn from(v: Option<f64>) -> Self {
        match v {
            Some(value) => IndexValue {
                value,
                available: true,
            },
            None => IndexValue::default(),
        }
    }
}

/// Every index value for one document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawIndices {
    pub doc_id: String,
    values: [IndexValue; IndexKind::COUNT],
}

impl RawIndices {
    /// All indices unavailable.
    pub fn new(doc_id: impl Into<String>) -> Self {
        RawIndices {
            doc_id: doc_id.into(),
            values: [IndexValue::default(); IndexKind::COUNT],
        }
    }

    pub fn get(&self, kind: IndexKind) -> IndexValue {
        self.values[kind.slot()]
    }

    /// `None` marks the index unavailable and stores 0.
    pub fn set(&mut self, kind: IndexKind, value: Option<f64>) {
        self.values[kind.slot()] = value.into();
    }

    pub fn with(mut self, kind: IndexKind, value: Option<f64>) -> Self {
        self.set(kind, value);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndexKind, IndexValue)> + '_ {
        IndexKind::ALL.into_iter().map(|k| (k, self.get(k)))
    }
}

/// Mean of an iterator of reals, `None` when empty.
pub(crate) fn mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values
        .into_iter()
        .fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in IndexKind::ALL {
            assert_eq!(k.name().parse::<IndexKind>().unwrap(), k);
            assert_eq!(IndexKind::ALL[k.slot()], k);
        }
        assert!("coref".parse::<IndexKind>().is_err());
    }

    #[test]
    fn unavailable_is_zero() {
        let r = RawIndices::new("d")
            .with(IndexKind::Msl, Some(3.0))
            .with(IndexKind::Pcref, None);
        assert_eq!(
            r.get(IndexKind::Msl),
            IndexValue {
                value: 3.0,
                available: true
            }
        );
        assert_eq!(
            r.get(IndexKind::Pcref),
            IndexValue {
                value: 0.0,
                available: false
            }
        );
    }

    #[test]
    fn mean_of_nothing() {
        assert_eq!(mean([]), None);
        assert_eq!(mean([1.0, 2.0]), Some(1.5));
    }
}
