use std::fmt::Write;

use serde::Serialize;

use super::{CompareReport, CorrelationReport, PairOutcome, TTestKind, TTestReport};

/// Shortest round-trip text for `v`, in exponent form when very small or
/// very large.
///
/// ```
/// use scigis::eval::format_number;
///
/// assert_eq!(format_number(0.5), "0.5");
/// assert_eq!(format_number(4.1e-8), "4.1e-8");
/// assert_eq!(format_number(-3.0), "-3");
/// ```
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), format_number)
}

/// Per-pair rows plus the summary of one formula (and optional baseline).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairsReport {
    pub formula: String,
    pub baseline: Option<String>,
    pub pairs: Vec<PairOutcome>,
    pub summary: CompareReport,
}

impl PairsReport {
    /// A `pair_id gis_abs gis_pls diff` table followed by `# key value`
    /// summary lines.
    ///
    /// ```
    /// use scigis::eval::{pair_stats, PairOutcome, PairsReport};
    ///
    /// let pairs = vec![PairOutcome::new("p1", 0.5, 1.0)];
    /// let summary = pair_stats(&pairs, None).unwrap();
    /// let report = PairsReport { formula: "scigispy".into(), baseline: None, pairs, summary };
    /// let tsv = report.to_tsv();
    /// assert!(tsv.starts_with("pair_id\tgis_abs\tgis_pls\tdiff\np1\t0.5\t1\t0.5\n"));
    /// assert!(tsv.contains("# pct_increased\tNA\n"));
    /// ```
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("pair_id\tgis_abs\tgis_pls\tdiff\n");
        for p in &self.pairs {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                p.pair_id,
                format_number(p.gis_abs),
                format_number(p.gis_pls),
                format_number(p.diff)
            )
            .unwrap();
        }
        let s = &self.summary;
        writeln!(out, "# formula\t{}", self.formula).unwrap();
        writeln!(
            out,
            "# baseline\t{}",
            self.baseline.as_deref().unwrap_or("NA")
        )
        .unwrap();
        writeln!(out, "# n\t{}", s.n).unwrap();
        writeln!(out, "# mean_diff\t{}", format_number(s.mean_diff)).unwrap();
        writeln!(out, "# pct_positive\t{}", format_number(s.pct_positive)).unwrap();
        writeln!(out, "# pct_increased\t{}", opt(s.pct_increased)).unwrap();
        writeln!(out, "# pct_neg_to_pos\t{}", opt(s.pct_neg_to_pos)).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub formula: String,
    pub test: TTestKind,
    pub n1: usize,
    pub n2: usize,
    pub result: TTestReport,
}

impl BenchReport {
    pub fn to_tsv(&self) -> String {
        let r = &self.result;
        format!(
            "formula\ttest\tn1\tn2\tdistance\tt\tp\tdf\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            self.formula,
            match self.test {
                TTestKind::Student => "student",
                TTestKind::Welch => "welch",
            },
            self.n1,
            self.n2,
            format_number(r.distance),
            format_number(r.t),
            format_number(r.p),
            format_number(r.df)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelateRow {
    pub doc_id: String,
    pub gis: f64,
    pub fkgl: f64,
    pub ari: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelateReport {
    pub formula: String,
    pub documents: Vec<CorrelateRow>,
    pub summary: CorrelationReport,
}

impl CorrelateReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("doc_id\tgis\tfkgl\tari\n");
        for d in &self.documents {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                d.doc_id,
                format_number(d.gis),
                format_number(d.fkgl),
                format_number(d.ari)
            )
            .unwrap();
        }
        writeln!(out, "# formula\t{}", self.formula).unwrap();
        writeln!(out, "# n\t{}", self.summary.n).unwrap();
        writeln!(
            out,
            "# r_gis_fkgl\t{}",
            format_number(self.summary.r_gis_fkgl)
        )
        .unwrap();
        writeln!(
            out,
            "# r_gis_ari\t{}",
            format_number(self.summary.r_gis_ari)
        )
        .unwrap();
        out
    }
}
