use std::sync::OnceLock;

use super::segment::data_lines;

const EXCEPTIONS: &str = include_str!("../../data/syllable_exceptions.txt");

fn voiced_e_endings() -> &'static [&'static str] {
    static LIST: OnceLock<Vec<&'static str>> = OnceLock::new();
    LIST.get_or_init(|| data_lines(EXCEPTIONS).collect())
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Heuristic syllable count.
///
/// Counts maximal runs of `aeiouy`, then drops one for a terminal silent
/// `e` (a lone final `e` after a consonant) unless the word ends in one of
/// the bundled voiced-e endings such as consonant + `le`. Any word with a
/// letter has at least one syllable; pure punctuation and numbers have none.
pub fn count_syllables(surface: &str) -> usize {
    if !surface.chars().any(char::is_alphabetic) {
        return 0;
    }
    let word: Vec<char> = surface.to_lowercase().chars().collect();
    let mut groups = 0;
    let mut in_group = false;
    for &c in &word {
        let v = is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }

    let n = word.len();
    let silent_e =
        n >= 2 && word[n - 1] == 'e' && !is_vowel(word[n - 2]) && word[n - 2].is_alphabetic();
    if silent_e && groups > 1 {
        let tail: String = word.iter().collect();
        if !voiced_e_endings().iter().any(|end| tail.ends_with(end)) {
            groups -= 1;
        }
    }
    groups.max(1)
}
