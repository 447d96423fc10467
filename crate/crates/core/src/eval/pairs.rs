use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `GIS(PLS) - GIS(ABS)`: positive when the simplified side scores as more
/// gist-friendly.
///
/// ```
/// assert!((scigis::eval::gis_difference(0.225, -0.225) + 0.45).abs() < 1e-12);
/// ```
pub fn gis_difference(abs_score: f64, pls_score: f64) -> f64 {
    pls_score - abs_score
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub pair_id: String,
    pub gis_abs: f64,
    pub gis_pls: f64,
    pub diff: f64,
}

impl PairOutcome {
    pub fn new(pair_id: impl Into<String>, gis_abs: f64, gis_pls: f64) -> Self {
        PairOutcome {
            pair_id: pair_id.into(),
            gis_abs,
            gis_pls,
            diff: gis_difference(gis_abs, gis_pls),
        }
    }
}

/// Summary over all pairs. The last two fields need a baseline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub n: usize,
    pub mean_diff: f64,
    /// Percentage with `diff > 0`.
    pub pct_positive: f64,
    /// Percentage whose diff exceeds the baseline diff.
    pub pct_increased: Option<f64>,
    /// Percentage with a negative baseline diff and a positive diff.
    pub pct_neg_to_pos: Option<f64>,
}

fn pct(count: usize, n: usize) -> f64 {
    100.0 * count as f64 / n as f64
}

/// Aggregates pair outcomes, optionally against a baseline run over the
/// same pair ids.
pub fn pair_stats(
    outcomes: &[PairOutcome],
    baseline: Option<&[PairOutcome]>,
) -> Result<CompareReport> {
    let n = outcomes.len();
    if n == 0 {
        return Err(Error::InsufficientData("no pairs".into()));
    }
    let mean_diff = outcomes.iter().map(|o| o.diff).sum::<f64>() / n as f64;
    let pct_positive = pct(outcomes.iter().filter(|o| o.diff > 0.0).count(), n);

    let (pct_increased, pct_neg_to_pos) = match baseline {
        None => (None, None),
        Some(base) => {
            let by_id: HashMap<&str, f64> =
                base.iter().map(|o| (o.pair_id.as_str(), o.diff)).collect();
            if by_id.len() != n || base.len() != n {
                return Err(Error::PairMismatch(format!(
                    "{n} pairs against {} baseline pairs",
                    base.len()
                )));
            }
            let mut increased = 0;
            let mut flipped = 0;
            for o in outcomes {
                let b = *by_id.get(o.pair_id.as_str()).ok_or_else(|| {
                    Error::PairMismatch(format!("`{}` has no baseline", o.pair_id))
                })?;
                if o.diff > b {
                    increased += 1;
                }
                if b < 0.0 && o.diff > 0.0 {
                    flipped += 1;
                }
            }
            (Some(pct(increased, n)), Some(pct(flipped, n)))
        }
    };
    Ok(CompareReport {
        n,
        mean_diff,
        pct_positive,
        pct_increased,
        pct_neg_to_pos,
    })
}
