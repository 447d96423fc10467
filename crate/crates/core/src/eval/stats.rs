use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample Pearson correlation, clamped to `[-1, 1]`.
///
/// ```
/// let r = scigis::eval::pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap();
/// assert!((r - 0.5).abs() < 1e-12);
/// ```
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InsufficientData(format!(
            "series lengths differ ({} and {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData(
            "correlation needs at least two points".into(),
        ));
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("constant series"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Continued fraction for the incomplete beta, evaluated with Lentz's method.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let guard = |v: f64| if v.abs() < TINY { TINY } else { v };
    let mut c = 1.0;
    let mut d = 1.0 / guard(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / guard(1.0 + aa * d);
        c = guard(1.0 + aa / c);
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / guard(1.0 + aa * d);
        c = guard(1.0 + aa / c);
        let step = d * c;
        h *= step;
        if (step - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`, `x ∈ [0, 1]`.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// `P(|T| ≥ |t|)` for Student's t with `df` degrees of freedom.
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    regularized_incomplete_beta(df / (df + t * t), df / 2.0, 0.5).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TTestKind {
    /// Pooled variance.
    #[default]
    Student,
    /// Unequal variances with Welch-Satterthwaite degrees of freedom.
    Welch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTestReport {
    /// `mean(group1) - mean(group2)`.
    pub distance: f64,
    pub t: f64,
    /// Two-sided.
    pub p: f64,
    /// Integral for the Student test.
    pub df: f64,
}

fn sample_var(xs: &[f64], m: f64) -> f64 {
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Two-sample t-test.
///
/// ```
/// use scigis::eval::{ttest_ind, TTestKind};
///
/// let r = ttest_ind(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], TTestKind::Student).unwrap();
/// assert_eq!(r.df, 4.0);
/// assert!((r.t + 3.6742).abs() < 1e-3);
/// assert!((r.p - 0.0213).abs() < 1e-3);
/// ```
pub fn ttest_ind(group1: &[f64], group2: &[f64], kind: TTestKind) -> Result<TTestReport> {
    let (n1, n2) = (group1.len(), group2.len());
    if n1 < 2 || n2 < 2 {
        return Err(Error::InsufficientData(format!(
            "t-test needs at least two values per group, got {n1} and {n2}"
        )));
    }
    let (m1, m2) = (mean(group1), mean(group2));
    let (v1, v2) = (sample_var(group1, m1), sample_var(group2, m2));
    let (f1, f2) = (n1 as f64, n2 as f64);
    let distance = m1 - m2;
    let (se2, df) = match kind {
        TTestKind::Student => {
            let df = f1 + f2 - 2.0;
            let pooled = ((f1 - 1.0) * v1 + (f2 - 1.0) * v2) / df;
            (pooled * (1.0 / f1 + 1.0 / f2), df)
        }
        TTestKind::Welch => {
            let (a, b) = (v1 / f1, v2 / f2);
            let df = if a + b > 0.0 {
                (a + b).powi(2) / (a * a / (f1 - 1.0) + b * b / (f2 - 1.0))
            } else {
                f1 + f2 - 2.0
            };
            (a + b, df)
        }
    };
    if se2 == 0.0 {
        if distance == 0.0 {
            return Ok(TTestReport {
                distance,
                t: 0.0,
                p: 1.0,
                df,
            });
        }
        return Err(Error::DegenerateVariance);
    }
    let t = distance / se2.sqrt();
    Ok(TTestReport {
        distance,
        t,
        p: student_t_two_sided(t, df),
        df,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub r_gis_fkgl: f64,
    pub r_gis_ari: f64,
    pub n: usize,
}

/// Correlates GIS with FKGL and ARI over `(gis, fkgl, ari)` triples.
pub fn correlate_readability(scores: &[(f64, f64, f64)]) -> Result<CorrelationReport> {
    let gis: Vec<f64> = scores.iter().map(|s| s.0).collect();
    let fk: Vec<f64> = scores.iter().map(|s| s.1).collect();
    let ar: Vec<f64> = scores.iter().map(|s| s.2).collect();
    Ok(CorrelationReport {
        r_gis_fkgl: pearson(&gis, &fk)?,
        r_gis_ari: pearson(&gis, &ar)?,
        n: scores.len(),
    })
}
