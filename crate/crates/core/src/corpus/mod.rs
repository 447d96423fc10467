//! Documents, sentences and tokens, plus the readers that produce them.
//!
//! Plain text goes through a deterministic rule-based segmenter
//! ([`segment_and_tokenize`]) and can then be tagged against a WordNet
//! database with [`Tagger`]. Pre-annotated text comes in as CoNLL-U
//! ([`parse_conllu`]) and keeps the tags it was given.

mod conllu;
mod morph;
mod pairs;
mod segment;
mod syllable;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use conllu::{parse_conllu, write_conllu};
pub use morph::{fallback_pos_and_lemma, is_closed_class, Tagger};
pub use pairs::{load_corpus, load_pairs, load_text_dir, parse_pairs, CorpusFormat, PairRecord};
pub use segment::{is_abbreviation, segment_and_tokenize};
pub use syllable::count_syllables;

/// Coarse part of speech. Only nouns and verbs matter to the lexical indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Verb,
    Other,
    Punct,
}

impl Pos {
    /// Maps a Universal Dependencies UPOS tag.
    pub fn from_upos(upos: &str) -> Pos {
        match upos {
            "NOUN" | "PROPN" => Pos::Noun,
            "VERB" => Pos::Verb,
            "PUNCT" => Pos::Punct,
            _ => Pos::Other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Other => "OTHER",
            Pos::Punct => "PUNCT",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub char_count: usize,
    pub syllable_count: usize,
}

impl Token {
    /// Builds an untagged token: `Punct` when the surface has no alphanumeric
    /// character, `Other` otherwise, with the lowercased surface as lemma.
    pub fn new(surface: impl Into<String>) -> Token {
        let surface = surface.into();
        let pos = if has_alphanumeric(&surface) {
            Pos::Other
        } else {
            Pos::Punct
        };
        let lemma = surface.to_lowercase();
        Token::with_tags(surface, lemma, pos)
    }

    /// Builds a token with explicit tags. The punctuation invariant wins over
    /// the supplied tag: a surface without alphanumerics is always `Punct`,
    /// and `Punct` is downgraded to `Other` for alphanumeric surfaces.
    pub fn with_tags(surface: impl Into<String>, lemma: impl Into<String>, pos: Pos) -> Token {
        let surface = surface.into();
        let mut lemma = lemma.into();
        let alnum = has_alphanumeric(&surface);
        let pos = match (alnum, pos) {
            (false, _) => Pos::Punct,
            (true, Pos::Punct) => Pos::Other,
            (true, p) => p,
        };
        if matches!(pos, Pos::Noun | Pos::Verb) {
            lemma = lemma.to_lowercase();
            if lemma.is_empty() {
                lemma = surface.to_lowercase();
            }
        }
        Token {
            char_count: surface.chars().count(),
            syllable_count: count_syllables(&surface),
            surface,
            lemma,
            pos,
        }
    }

    pub fn is_word(&self) -> bool {
        self.pos != Pos::Punct
    }

    pub fn is_content(&self) -> bool {
        matches!(self.pos, Pos::Noun | Pos::Verb)
    }
}

pub(crate) fn has_alphanumeric(s: &str) -> bool {
    s.chars().any(char::is_alphanumeric)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub raw: String,
}

impl Sentence {
    /// Number of non-punctuation tokens.
    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    /// Segments and tokenizes `text`. Tokens are untagged until passed
    /// through a [`Tagger`].
    pub fn from_text(doc_id: impl Into<String>, text: &str) -> Document {
        Document {
            doc_id: doc_id.into(),
            sentences: segment_and_tokenize(text),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(|s| s.tokens.len()).sum()
    }

    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(Sentence::word_count).sum()
    }

    /// Text of sentences `i - buffer ..= i + buffer`, clipped to the document
    /// and joined by single spaces.
    pub fn window_text(&self, i: usize, buffer: usize) -> String {
        let (lo, hi) = self.window_bounds(i, buffer);
        self.sentences[lo..=hi]
            .iter()
            .map(|s| s.raw.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub(crate) fn window_bounds(&self, i: usize, buffer: usize) -> (usize, usize) {
        let last = self.sentences.len().saturating_sub(1);
        (i.saturating_sub(buffer), (i + buffer).min(last))
    }
}
