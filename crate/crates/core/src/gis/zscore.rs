use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::indices::{IndexKind, RawIndices};

/// One z value per index, in [`IndexKind::ALL`] order.
pub type ZRow = [f64; IndexKind::COUNT];
pub type ZMatrix = Vec<ZRow>;

/// Normalization parameters for one index.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IndexStats {
    pub mean: f64,
    /// Population standard deviation over available values.
    pub std: f64,
    pub available_count: usize,
    /// Fewer than two available values or zero spread: every z is 0.
    pub degenerate: bool,
}

impl IndexStats {
    fn from_values(values: &[f64]) -> IndexStats {
        let n = values.len();
        if n == 0 {
            return IndexStats {
                degenerate: true,
                ..Default::default()
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let constant = values.iter().all(|&v| v == values[0]);
        let std = if constant { 0.0 } else { var.sqrt() };
        IndexStats {
            mean,
            std,
            available_count: n,
            degenerate: n < 2 || std == 0.0,
        }
    }

    pub fn z(&self, value: f64) -> f64 {
        if self.degenerate {
            0.0
        } else {
            (value - self.mean) / self.std
        }
    }
}

/// Per-index normalization statistics of a population.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZStats {
    stats: [IndexStats; IndexKind::COUNT],
}

impl ZStats {
    pub fn get(&self, kind: IndexKind) -> IndexStats {
        self.stats[kind.slot()]
    }

    pub fn set(&mut self, kind: IndexKind, stats: IndexStats) {
        self.stats[kind.slot()] = stats;
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndexKind, IndexStats)> + '_ {
        IndexKind::ALL.into_iter().map(|k| (k, self.get(k)))
    }

    /// z values for one document; unavailable indices get 0.
    pub fn row(&self, raw: &RawIndices) -> ZRow {
        let mut row = [0.0; IndexKind::COUNT];
        for (kind, v) in raw.iter() {
            if v.available {
                row[kind.slot()] = self.get(kind).z(v.value);
            }
        }
        row
    }
}

impl Serialize for ZStats {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, IndexStats> = self.iter().map(|(k, v)| (k.name(), v)).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZStats {
    /// Accepts a map from index name to stats. Missing indices are degenerate.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, IndexStats>::deserialize(d)?;
        let mut out = ZStats {
            stats: [IndexStats {
                degenerate: true,
                ..Default::default()
            }; IndexKind::COUNT],
        };
        for (name, mut stats) in map {
            let kind: IndexKind = name.parse().map_err(serde::de::Error::custom)?;
            stats.degenerate = stats.degenerate || !(stats.std > 0.0 && stats.std.is_finite());
            out.set(kind, stats);
        }
        Ok(out)
    }
}

/// Standardizes every index over the available values of `matrix`.
pub fn zscore(matrix: &[RawIndices]) -> (ZStats, ZMatrix) {
    let mut stats = ZStats::default();
    for kind in IndexKind::ALL {
        let values: Vec<f64> = matrix
            .iter()
            .map(|r| r.get(kind))
            .filter(|v| v.available)
            .map(|v| v.value)
            .collect();
        stats.set(kind, IndexStats::from_values(&values));
    }
    let z = zscore_with(matrix, &stats);
    (stats, z)
}

/// Standardizes with externally supplied statistics.
pub fn zscore_with(matrix: &[RawIndices], stats: &ZStats) -> ZMatrix {
    matrix.iter().map(|r| stats.row(r)).collect()
}
