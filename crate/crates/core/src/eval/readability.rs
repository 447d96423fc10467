use crate::corpus::Document;
use crate::error::{Error, Result};

struct Counts {
    sentences: f64,
    words: f64,
    syllables: f64,
    chars: f64,
}

fn counts(doc: &Document) -> Result<Counts> {
    let mut c = Counts {
        sentences: doc.sentences.len() as f64,
        words: 0.0,
        syllables: 0.0,
        chars: 0.0,
    };
    for t in doc.tokens().filter(|t| t.is_word()) {
        c.words += 1.0;
        c.syllables += t.syllable_count as f64;
        c.chars += t.surface.chars().filter(|ch| ch.is_alphanumeric()).count() as f64;
    }
    if c.words == 0.0 {
        return Err(Error::InsufficientData(format!(
            "document `{}` has no words",
            doc.doc_id
        )));
    }
    Ok(c)
}

/// Flesch-Kincaid grade level.
///
/// ```
/// use scigis::corpus::Document;
///
/// let doc = Document::from_text("d", "The cat sat on the mat and the dog ran.");
/// let grade = scigis::eval::fkgl(&doc).unwrap();
/// assert!((grade - 0.11).abs() < 1e-9);
/// ```
pub fn fkgl(doc: &Document) -> Result<f64> {
    let c = counts(doc)?;
    Ok(0.39 * (c.words / c.sentences) + 11.8 * (c.syllables / c.words) - 15.59)
}

/// Automated readability index, counting letters and digits as characters.
pub fn ari(doc: &Document) -> Result<f64> {
    let c = counts(doc)?;
    Ok(4.71 * (c.chars / c.words) + 0.5 * (c.words / c.sentences) - 21.43)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn fkgl_examples() {
        let one = Document::from_text("d", "The cat sat on the mat and the dog ran.");
        assert!(close(fkgl(&one).unwrap(), 0.11));
        let two = Document::from_text("d", "The cat sat on the mat. And the dog ran.");
        assert!(close(fkgl(&two).unwrap(), -1.84));
    }

    #[test]
    fn ari_examples() {
        assert!(close(
            ari(&Document::from_text("d", "Cats have four legs only.")).unwrap(),
            -0.09
        ));
        let short = ari(&Document::from_text("d", "aa bb.")).unwrap();
        let long = ari(&Document::from_text("d", "aaaa bbbb.")).unwrap();
        assert!(long > short);
    }

    #[test]
    fn punctuation_only_is_an_error() {
        let doc = Document::from_text("d", "... !");
        assert!(fkgl(&doc).is_err());
        assert!(ari(&doc).is_err());
    }
}
