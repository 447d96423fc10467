use std::collections::HashSet;
use std::sync::OnceLock;

use super::{Sentence, Token};

const ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");

fn abbreviations() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| data_lines(ABBREVIATIONS).collect())
}

/// Non-empty, non-comment lines of a bundled word list.
pub(crate) fn data_lines(text: &'static str) -> impl Iterator<Item = &'static str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Whether `word` (without its final period) is on the abbreviation list.
pub fn is_abbreviation(word: &str) -> bool {
    abbreviations().contains(word.to_lowercase().as_str())
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

#[derive(Debug)]
struct Chunk<'a> {
    /// (byte start, byte end) of each token, relative to the whole text.
    spans: Vec<(usize, usize)>,
    /// Trailing punctuation contains a sentence terminator.
    terminal: bool,
    text: &'a str,
}

fn split_chunk(text: &str, offset: usize) -> Chunk<'_> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let lead = chars
        .iter()
        .take_while(|(_, c)| !c.is_alphanumeric())
        .count();
    let mut spans = Vec::new();
    let end_of = |k: usize| chars.get(k).map_or(text.len(), |&(b, _)| b);
    let single = |k: usize| (offset + chars[k].0, offset + end_of(k + 1));

    if lead == chars.len() {
        spans.extend((0..chars.len()).map(single));
        let terminal = chars.iter().any(|&(_, c)| is_terminator(c));
        return Chunk {
            spans,
            terminal,
            text,
        };
    }

    let trail = chars
        .iter()
        .rev()
        .take_while(|(_, c)| !c.is_alphanumeric())
        .count();
    let mut core_end = chars.len() - trail;
    let core = &text[chars[lead].0..end_of(core_end)];
    if trail > 0 && chars[core_end].1 == '.' && is_abbreviation(core) {
        core_end += 1;
    }

    spans.extend((0..lead).map(single));
    spans.push((offset + chars[lead].0, offset + end_of(core_end)));
    spans.extend((core_end..chars.len()).map(single));
    let terminal = chars[core_end..].iter().any(|&(_, c)| is_terminator(c));
    Chunk {
        spans,
        terminal,
        text,
    }
}

fn starts_with_capital(chunk: &str) -> bool {
    chunk
        .chars()
        .find(|c| c.is_alphanumeric())
        .is_some_and(char::is_uppercase)
}

/// Splits `text` into sentences of untagged tokens.
///
/// Tokens are whitespace-separated chunks with leading and trailing
/// punctuation detached one character at a time; internal punctuation
/// (hyphens, apostrophes, decimal points) stays inside the word. A chunk on
/// the abbreviation list keeps its final period. A sentence ends after a
/// chunk whose detached punctuation contains `.`, `!` or `?` when the next
/// chunk begins with a capital letter.
pub fn segment_and_tokenize(text: &str) -> Vec<Sentence> {
    let mut chunks = Vec::new();
    let mut pos = 0;
    for piece in text.split_whitespace() {
        // split_whitespace yields subslices in order; recover their offsets.
        let start = pos + text[pos..].find(piece).expect("piece comes from text");
        chunks.push(split_chunk(piece, start));
        pos = start + piece.len();
    }

    let mut sentences = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();
    for (i, chunk) in chunks.iter().enumerate() {
        current.extend_from_slice(&chunk.spans);
        let boundary = chunk.terminal
            && chunks
                .get(i + 1)
                .is_none_or(|next| starts_with_capital(next.text));
        if boundary {
            sentences.push(build_sentence(text, &current));
            current.clear();
        }
    }
    if !current.is_empty() {
        sentences.push(build_sentence(text, &current));
    }
    sentences
}

fn build_sentence(text: &str, spans: &[(usize, usize)]) -> Sentence {
    let tokens = spans
        .iter()
        .map(|&(s, e)| Token::new(&text[s..e]))
        .collect();
    let raw = text[spans[0].0..spans[spans.len() - 1].1].to_string();
    Sentence { tokens, raw }
}
