use std::path::PathBuf;

use proptest::collection::vec;
use proptest::prelude::*;

use scigis::corpus::{is_abbreviation, Document, Pos, Sentence, Token};
use scigis::eval::{
    ari, fkgl, pair_stats, pearson, regularized_incomplete_beta, ttest_ind, PairOutcome, TTestKind,
};
use scigis::gis::{zscore, FormulaConfig, ZRow};
use scigis::indices::{
    chunk_count, idx_msl, idx_smcaus_wn, idx_wrdhyp_norm, IndexKind, RawIndices, WrdhypNormMode,
};
use scigis::lexres::{cosine, parse_wordnet_db, WordNetDb};

fn corpus(values: &[Option<f64>]) -> Vec<RawIndices> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| RawIndices::new(format!("d{i}")).with(IndexKind::Wrdic, *v))
        .collect()
}

fn slot() -> usize {
    IndexKind::Wrdic.slot()
}

fn z_row() -> impl Strategy<Value = ZRow> {
    prop::array::uniform11(-5.0f64..5.0)
}

fn sentence_text() -> impl Strategy<Value = String> {
    vec("[a-z]{1,9}", 1..8)
        .prop_filter("abbreviations do not end sentences", |w| {
            !is_abbreviation(w.last().unwrap())
        })
        .prop_map(|w| {
            let mut s = w.join(" ");
            s[..1].make_ascii_uppercase();
            s.push('.');
            s
        })
}

fn toy_db() -> WordNetDb {
    parse_wordnet_db(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/wordnet"))
        .unwrap()
}

fn tagged(lemmas: &[(String, Pos)]) -> Document {
    Document {
        doc_id: "d".into(),
        sentences: vec![Sentence {
            tokens: lemmas
                .iter()
                .map(|(l, p)| Token::with_tags(l.as_str(), l.as_str(), *p))
                .collect(),
            raw: String::new(),
        }],
    }
}

const NOUNS: &[&str] = &[
    "entity",
    "drug",
    "medication",
    "lipitor",
    "trial",
    "heart",
    "patient",
    "zebra",
];
const VERBS: &[&str] = &[
    "administer",
    "give",
    "reduce",
    "lower",
    "buy",
    "purchase",
    "run",
    "zap",
];

proptest! {
    #[test]
    fn z_scores_are_standardized(values in vec(prop::option::weighted(0.8, -1e3f64..1e3), 2..50)) {
        let (stats, z) = zscore(&corpus(&values));
        let s = stats.get(IndexKind::Wrdic);
        let avail: Vec<f64> = values.iter().zip(&z).filter(|(v, _)| v.is_some()).map(|(_, r)| r[slot()]).collect();
        if s.degenerate {
            prop_assert!(z.iter().all(|r| r[slot()] == 0.0));
        } else {
            let n = avail.len() as f64;
            let m = avail.iter().sum::<f64>() / n;
            let sd = (avail.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n).sqrt();
            prop_assert!(m.abs() < 1e-9);
            prop_assert!((sd - 1.0).abs() < 1e-9);
        }
        for (v, r) in values.iter().zip(&z) {
            if v.is_none() {
                prop_assert_eq!(r[slot()], 0.0);
            }
        }
    }

    #[test]
    fn z_scores_ignore_affine_rescaling(
        values in vec(-100.0f64..100.0, 2..30),
        scale in 0.01f64..100.0,
        shift in -100.0f64..100.0,
    ) {
        let base: Vec<Option<f64>> = values.iter().map(|&v| Some(v)).collect();
        let moved: Vec<Option<f64>> = values.iter().map(|&v| Some(v * scale + shift)).collect();
        let (s1, z1) = zscore(&corpus(&base));
        let (_, z2) = zscore(&corpus(&moved));
        prop_assume!(s1.get(IndexKind::Wrdic).std > 1e-6);
        for (a, b) in z1.iter().zip(&z2) {
            prop_assert!((a[slot()] - b[slot()]).abs() < 1e-9);
        }
    }

    #[test]
    fn formulas_are_linear(z1 in z_row(), z2 in z_row()) {
        for name in ["original_gispy", "scigispy"] {
            let f = FormulaConfig::preset(name).unwrap();
            let mut sum = [0.0; IndexKind::COUNT];
            for i in 0..IndexKind::COUNT {
                sum[i] = z1[i] + z2[i];
            }
            let lhs = f.apply(&sum).unwrap();
            let rhs = f.apply(&z1).unwrap() + f.apply(&z2).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn scoring_is_order_independent(values in vec(-10.0f64..10.0, 2..20)) {
        let wrap: Vec<Option<f64>> = values.iter().map(|&v| Some(v)).collect();
        let mut reversed = wrap.clone();
        reversed.reverse();
        let (_, z) = zscore(&corpus(&wrap));
        let (_, zr) = zscore(&corpus(&reversed));
        let n = values.len();
        for i in 0..n {
            prop_assert!((z[i][slot()] - zr[n - 1 - i][slot()]).abs() < 1e-12);
        }
    }

    #[test]
    fn chunk_counts_are_bounded_and_monotone(distances in vec(0.0f64..2.0, 0..40)) {
        let sentences = distances.len() + 1;
        let mut last = usize::MAX;
        for p in [50.0, 75.0, 90.0, 95.0, 99.0, 100.0] {
            let c = chunk_count(&distances, p);
            prop_assert!((1..=sentences).contains(&c));
            prop_assert!(c <= last);
            last = c;
        }
        prop_assert_eq!(chunk_count(&distances, 100.0), 1);
    }

    #[test]
    fn surface_measures_survive_duplication(sentences in vec(sentence_text(), 1..6)) {
        let text = sentences.join(" ");
        let doc = Document::from_text("d", &text);
        let twice = Document::from_text("d", &format!("{text} {text}"));
        prop_assert_eq!(twice.sentences.len(), 2 * doc.sentences.len());
        prop_assert_eq!(idx_msl(&doc), idx_msl(&twice));
        prop_assert_eq!(fkgl(&doc).unwrap(), fkgl(&twice).unwrap());
        prop_assert_eq!(ari(&doc).unwrap(), ari(&twice).unwrap());
    }

    #[test]
    fn msl_ignores_inserted_punctuation(sentences in vec(sentence_text(), 1..6)) {
        let text = sentences.join(" ");
        let noisy = sentences.iter().map(|s| s.replace(' ', " , ")).collect::<Vec<_>>().join(" ");
        prop_assert_eq!(
            idx_msl(&Document::from_text("d", &text)),
            idx_msl(&Document::from_text("d", &noisy))
        );
    }

    #[test]
    fn pair_stats_ignore_order(diffs in vec(-5.0f64..5.0, 1..30)) {
        let pairs: Vec<PairOutcome> =
            diffs.iter().enumerate().map(|(i, &d)| PairOutcome::new(format!("p{i}"), 0.0, d)).collect();
        let mut rev = pairs.clone();
        rev.reverse();
        let a = pair_stats(&pairs, Some(&rev)).unwrap();
        let b = pair_stats(&rev, Some(&pairs)).unwrap();
        prop_assert!((a.mean_diff - b.mean_diff).abs() < 1e-12);
        prop_assert_eq!(a.pct_positive, b.pct_positive);
        prop_assert_eq!(a.pct_increased, Some(0.0));

        let positives = diffs.iter().filter(|&&d| d > 0.0).count();
        let mut with_tie = pairs.clone();
        with_tie.push(PairOutcome::new("tie", 1.0, 1.0));
        let t = pair_stats(&with_tie, None).unwrap();
        prop_assert!((t.pct_positive * with_tie.len() as f64 / 100.0 - positives as f64).abs() < 1e-9);
    }

    #[test]
    fn swapping_sides_negates_diffs(pairs in vec((-5.0f64..5.0, -5.0f64..5.0), 1..30)) {
        let fwd: Vec<PairOutcome> =
            pairs.iter().enumerate().map(|(i, &(a, p))| PairOutcome::new(format!("p{i}"), a, p)).collect();
        let back: Vec<PairOutcome> =
            pairs.iter().enumerate().map(|(i, &(a, p))| PairOutcome::new(format!("p{i}"), p, a)).collect();
        for (f, b) in fwd.iter().zip(&back) {
            prop_assert_eq!(f.diff, -b.diff);
        }
        let n = pairs.len() as f64;
        let zero = 100.0 * fwd.iter().filter(|o| o.diff == 0.0).count() as f64 / n;
        let f = pair_stats(&fwd, None).unwrap();
        let b = pair_stats(&back, None).unwrap();
        prop_assert!((b.pct_positive - (100.0 - f.pct_positive - zero)).abs() < 1e-9);
    }

    #[test]
    fn ttest_is_antisymmetric(g1 in vec(-10.0f64..10.0, 2..20), g2 in vec(-10.0f64..10.0, 2..20)) {
        for kind in [TTestKind::Student, TTestKind::Welch] {
            let (Ok(a), Ok(b)) = (ttest_ind(&g1, &g2, kind), ttest_ind(&g2, &g1, kind)) else {
                continue;
            };
            prop_assert_eq!(a.t, -b.t);
            prop_assert!((a.p - b.p).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&a.p));
            if a.distance != 0.0 {
                prop_assert_eq!(a.t.signum(), a.distance.signum());
            }
        }
    }

    #[test]
    fn pearson_ignores_positive_affine_maps(
        xs in vec(-10.0f64..10.0, 3..40),
        noise in vec(-10.0f64..10.0, 40),
        scale in 0.1f64..10.0,
        shift in -10.0f64..10.0,
    ) {
        let ys: Vec<f64> = xs.iter().zip(&noise).map(|(x, n)| x + n).collect();
        let Ok(r) = pearson(&xs, &ys) else { return Ok(()); };
        let moved: Vec<f64> = ys.iter().map(|y| y * scale + shift).collect();
        let flipped: Vec<f64> = ys.iter().map(|y| -y * scale).collect();
        prop_assert!((pearson(&xs, &moved).unwrap() - r).abs() < 1e-12);
        prop_assert!((pearson(&xs, &flipped).unwrap() + r).abs() < 1e-12);
        prop_assert!(r.abs() <= 1.0);
    }

    #[test]
    fn incomplete_beta_reflects(x in 0.0f64..1.0, a in 0.1f64..50.0, b in 0.1f64..50.0) {
        let lhs = regularized_incomplete_beta(x, a, b);
        let rhs = 1.0 - regularized_incomplete_beta(1.0 - x, b, a);
        prop_assert!((lhs - rhs).abs() < 1e-10);
        prop_assert!((0.0..=1.0).contains(&lhs));
    }

    #[test]
    fn cosine_is_bounded(u in vec(-5.0f64..5.0, 4), v in vec(-5.0f64..5.0, 4)) {
        let c = cosine(&u, &v).unwrap().value;
        prop_assert!((-1.0..=1.0).contains(&c));
    }

    #[test]
    fn lexical_indices_stay_in_range(
        nouns in vec(prop::sample::select(NOUNS), 0..6),
        verbs in vec(prop::sample::select(VERBS), 0..6),
    ) {
        let db = toy_db();
        let mut tokens: Vec<(String, Pos)> = nouns.iter().map(|n| (n.to_string(), Pos::Noun)).collect();
        tokens.extend(verbs.iter().map(|v| (v.to_string(), Pos::Verb)));
        let doc = tagged(&tokens);
        if let Some(v) = idx_wrdhyp_norm(&doc, &db, WrdhypNormMode::RootScale) {
            prop_assert!(v > 0.0 && v <= 1.0);
        }
        if let Some(v) = idx_smcaus_wn(&doc, &db) {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }
}
