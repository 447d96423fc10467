use std::collections::BTreeSet;

use super::mean;
use crate::corpus::{Document, Pos};
use crate::lexres::{cosine, SynsetId, WnPos, WordNetDb, WordVectors};

fn verbs(doc: &Document) -> impl Iterator<Item = &crate::corpus::Token> {
    doc.tokens().filter(|t| t.pos == Pos::Verb)
}

fn mean_over_pairs<T>(items: &[T], mut score: impl FnMut(&T, &T) -> f64) -> Option<f64> {
    let mut values = Vec::new();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            values.push(score(&items[i], &items[j]));
        }
    }
    mean(values)
}

/// Mean cosine over all pairs of verb vectors (lemma first, then surface).
/// Out-of-vocabulary verbs are skipped; unavailable below two.
pub fn idx_smcaus_embed(doc: &Document, wv: &WordVectors) -> Option<f64> {
    let vectors: Vec<&[f64]> = verbs(doc)
        .filter_map(|t| wv.get(&t.lemma).or_else(|| wv.get(&t.surface)))
        .collect();
    mean_over_pairs(&vectors, |a, b| {
        cosine(a, b)
            .expect("vectors share the file dimension")
            .value
    })
}

/// Fraction of verb pairs whose WordNet verb synsets overlap. Verbs
/// without synsets are skipped; unavailable below two.
pub fn idx_smcaus_wn(doc: &Document, db: &WordNetDb) -> Option<f64> {
    let sets: Vec<BTreeSet<SynsetId>> = verbs(doc)
        .map(|t| {
            db.synsets_for(&t.lemma, WnPos::Verb)
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| !s.is_empty())
        .collect();
    mean_over_pairs(&sets, |a, b| if a.is_disjoint(b) { 0.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Sentence, Token};
    use crate::lexres::Synset;

    fn verb_doc(lemmas: &[&str]) -> Document {
        let tokens = lemmas
            .iter()
            .map(|l| Token::with_tags(*l, *l, Pos::Verb))
            .collect();
        Document {
            doc_id: "d".into(),
            sentences: vec![Sentence {
                tokens,
                raw: lemmas.join(" "),
            }],
        }
    }

    fn wv() -> WordVectors {
        WordVectors::new(
            2,
            [
                ("go".to_string(), vec![1.0, 0.0]),
                ("stop".to_string(), vec![0.0, 1.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn embed_cases() {
        let wv = wv();
        assert_eq!(idx_smcaus_embed(&verb_doc(&["go"]), &wv), None);
        assert_eq!(idx_smcaus_embed(&verb_doc(&["go", "go"]), &wv), Some(1.0));
        assert_eq!(idx_smcaus_embed(&verb_doc(&["go", "stop"]), &wv), Some(0.0));
        assert_eq!(idx_smcaus_embed(&verb_doc(&["go", "fly"]), &wv), None);
    }

    #[test]
    fn wordnet_cases() {
        let db = WordNetDb::from_synsets(vec![
            Synset::new(SynsetId::verb(1), ["buy", "purchase"], []),
            Synset::new(SynsetId::verb(2), ["sell"], []),
        ])
        .unwrap();
        assert_eq!(
            idx_smcaus_wn(&verb_doc(&["buy", "purchase"]), &db),
            Some(1.0)
        );
        assert_eq!(idx_smcaus_wn(&verb_doc(&["buy", "sell"]), &db), Some(0.0));
        assert_eq!(idx_smcaus_wn(&verb_doc(&["sell", "sell"]), &db), Some(1.0));
        assert_eq!(idx_smcaus_wn(&verb_doc(&["sell", "fly"]), &db), None);
        let third = idx_smcaus_wn(&verb_doc(&["buy", "purchase", "sell"]), &db).unwrap();
        assert!((third - 1.0 / 3.0).abs() < 1e-15);
    }
}
