use std::collections::HashSet;
use std::sync::OnceLock;

use super::segment::data_lines;
use super::{Document, Pos, Token};
use crate::lexres::{WnPos, WordNetDb};

const CLOSED_CLASS: &str = include_str!("../../data/closed_class.txt");

fn closed_class() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| data_lines(CLOSED_CLASS).collect())
}

pub fn is_closed_class(word: &str) -> bool {
    closed_class().contains(word.to_lowercase().as_str())
}

// Inflectional detachment rules, tried in order after the bare form.
const NOUN_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("men", "man"),
    ("ies", "y"),
];

const VERB_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ies", "y"),
    ("es", "e"),
    ("es", ""),
    ("ed", "e"),
    ("ed", ""),
    ("ing", "e"),
    ("ing", ""),
];

// Agentive/comparative endings, tried last for both parts of speech.
const ER_RULES: &[(&str, &str)] = &[("er", ""), ("er", "e")];

fn candidates(word: &str, rules: &[(&str, &str)]) -> Vec<String> {
    let mut out = vec![word.to_string()];
    if word.contains('-') {
        out.push(word.replace('-', "_"));
    }
    for &(suffix, replacement) in rules.iter().chain(ER_RULES) {
        let Some(stem) = word.strip_suffix(suffix) else {
            continue;
        };
        if stem.is_empty() {
            continue;
        }
        out.push(format!("{stem}{replacement}"));
        // running -> runn -> run, stopped -> stopp -> stop
        if replacement.is_empty() {
            let b = stem.as_bytes();
            if b.len() >= 2
                && b[b.len() - 1] == b[b.len() - 2]
                && b[b.len() - 1].is_ascii_alphabetic()
            {
                out.push(stem[..stem.len() - 1].to_string());
            }
        }
    }
    let mut seen = HashSet::new();
    out.retain(|c| seen.insert(c.clone()));
    out
}

/// Guesses part of speech and lemma for a word using WordNet membership.
///
/// Closed-class words are `Other`. Otherwise the lowercased word and its
/// detached stems are looked up as nouns first, then as verbs; the first
/// hit wins. Words with no hit are `Other` with the lowercased surface as
/// lemma. Surfaces without alphanumerics are `Punct`.
pub fn fallback_pos_and_lemma(surface: &str, db: &WordNetDb) -> (Pos, String) {
    let lower = surface.to_lowercase();
    if !super::has_alphanumeric(surface) {
        return (Pos::Punct, lower);
    }
    if is_closed_class(&lower) || !lower.chars().any(char::is_alphabetic) {
        return (Pos::Other, lower);
    }
    for (wn, pos, rules) in [
        (WnPos::Noun, Pos::Noun, NOUN_RULES),
        (WnPos::Verb, Pos::Verb, VERB_RULES),
    ] {
        if let Some(lemma) = candidates(&lower, rules)
            .into_iter()
            .find(|c| db.contains(c, wn))
        {
            return (pos, lemma);
        }
    }
    (Pos::Other, lower)
}

/// Tags plain-text documents against a WordNet database.
#[derive(Debug, Clone, Copy)]
pub struct Tagger<'a> {
    db: &'a WordNetDb,
}

impl<'a> Tagger<'a> {
    pub fn new(db: &'a WordNetDb) -> Self {
        Tagger { db }
    }

    pub fn tag_token(&self, token: &Token) -> Token {
        let (pos, lemma) = fallback_pos_and_lemma(&token.surface, self.db);
        Token::with_tags(token.surface.clone(), lemma, pos)
    }

    pub fn tag_document(&self, doc: &mut Document) {
        for sentence in &mut doc.sentences {
            for token in &mut sentence.tokens {
                *token = self.tag_token(token);
            }
        }
    }
}
