//! Character-level tokenization: one token per character.

use super::Vocabulary;

pub fn char_tokens(text: &str) -> Vec<String> {
    text.chars().map(|c| c.to_string()).collect()
}

/// Vocabulary over the corpus character alphabet, sorted, plus specials.
pub fn char_vocab<S: AsRef<str>>(corpus: &[S]) -> Vocabulary {
    let mut alphabet: Vec<char> = corpus
        .iter()
        .flat_map(|line| line.as_ref().chars())
        .collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    Vocabulary::from_tokens(alphabet.into_iter().map(|c| c.to_string()))
        .expect("distinct single characters cannot collide with specials")
}
