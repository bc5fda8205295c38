//! Splits text into sentences and word tokens.
//!
//! A word token is a maximal run of alphabetic characters: whitespace,
//! punctuation, digits, brackets and hyphens all separate tokens. Sentences
//! end at `.`, `!`, `?` or `…`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawToken<'a> {
    pub surface: &'a str,
    pub sentence: usize,
    pub index: usize,
    /// Byte offset of the token in the source text.
    pub offset: usize,
}

fn ends_sentence(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

pub fn tokenize(text: &str) -> Vec<RawToken<'_>> {
    let mut tokens = Vec::new();
    let mut sentence = 0;
    let mut index = 0;
    let mut start: Option<usize> = None;
    let mut pending_break = false;

    let mut flush = |start: &mut Option<usize>, end: usize, sentence: usize, index: &mut usize| {
        if let Some(s) = start.take() {
            tokens.push(RawToken {
                surface: &text[s..end],
                sentence,
                index: *index,
                offset: s,
            });
            *index += 1;
        }
    };

    for (i, c) in text.char_indices() {
        if c.is_alphabetic() {
            if pending_break {
                sentence += 1;
                index = 0;
                pending_break = false;
            }
            start.get_or_insert(i);
        } else {
            flush(&mut start, i, sentence, &mut index);
            if ends_sentence(c) && index > 0 {
                pending_break = true;
            }
        }
    }
    flush(&mut start, text.len(), sentence, &mut index);
    tokens
}
