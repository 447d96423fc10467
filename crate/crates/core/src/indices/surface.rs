use serde::{Deserialize, Serialize};

use super::mean;
use crate::corpus::Document;
use crate::lexres::{Rating, RatingLexicon};

/// Mean number of non-punctuation tokens per sentence.
pub fn idx_msl(doc: &Document) -> Option<f64> {
    mean(doc.sentences.iter().map(|s| s.word_count() as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatingKind {
    Concreteness,
    Imageability,
}

impl RatingKind {
    fn pick(self, r: Rating) -> f64 {
        match self {
            RatingKind::Concreteness => r.concreteness,
            RatingKind::Imageability => r.imageability,
        }
    }
}

/// Mean rating over words found in the lexicon, by lowercased surface and
/// then by lemma.
pub fn idx_rating(doc: &Document, lex: &RatingLexicon, which: RatingKind) -> Option<f64> {
    mean(doc.tokens().filter(|t| t.is_word()).filter_map(|t| {
        lex.get(&t.surface.to_lowercase())
            .or_else(|| lex.get(&t.lemma))
            .map(|r| which.pick(r))
    }))
}
