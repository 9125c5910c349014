//! SMILES tokenization schemes: character-level, atom-environment (AIS),
//! and byte-pair encoding with trained or externally loaded vocabularies.

pub mod ais;
mod bpe;
mod chars;
mod stats;
mod vocab;

pub use ais::{ais_decode, ais_tokens};
pub use bpe::{apply_merges, train_bpe};
pub use chars::{char_tokens, char_vocab};
pub use stats::{token_stats, vocab_jaccard, LengthAndFrequencyStats};
pub use vocab::{MergeList, Vocabulary};

use crate::validator::SmilesError;
use serde::{Deserialize, Serialize};

pub const PAD: &str = "[PAD]";
pub const UNK: &str = "[UNK]";
pub const BOS: &str = "[BOS]";
pub const EOS: &str = "[EOS]";

/// The four special tokens, in id order.
pub const SPECIALS: [&str; 4] = [PAD, UNK, BOS, EOS];

/// Default fixed sequence length for padded encoding.
pub const DEFAULT_MAX_LEN: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Char,
    Ais,
    Bpe,
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "char" => Ok(Scheme::Char),
            "ais" => Ok(Scheme::Ais),
            "bpe" => Ok(Scheme::Bpe),
            other => Err(format!("unknown scheme `{other}`")),
        }
    }
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Char => "char",
            Scheme::Ais => "ais",
            Scheme::Bpe => "bpe",
        }
    }
}

/// Token ids with their parallel surface texts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    pub ids: Vec<u32>,
    pub texts: Vec<String>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TokenizeError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("target vocabulary {target} is smaller than alphabet {alphabet} + {specials} specials")]
    TargetVocabTooSmall {
        target: usize,
        alphabet: usize,
        specials: usize,
    },
    #[error("unknown token id {0}")]
    UnknownId(u32),
    #[error("malformed token `{0}`")]
    InvalidToken(String),
    #[error("BPE scheme needs a merge list")]
    MissingMerges,
    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),
    #[error(transparent)]
    Smiles(#[from] SmilesError),
}

/// A ready-to-use tokenizer: scheme + vocabulary (+ merges for BPE).
#[derive(Debug, Clone)]
pub struct Tokenizer {
    scheme: Scheme,
    vocab: Vocabulary,
    merges: Option<MergeList>,
}

impl Tokenizer {
    pub fn new(
        scheme: Scheme,
        vocab: Vocabulary,
        merges: Option<MergeList>,
    ) -> Result<Self, TokenizeError> {
        if scheme == Scheme::Bpe && merges.is_none() {
            return Err(TokenizeError::MissingMerges);
        }
        Ok(Tokenizer {
            scheme,
            vocab,
            merges,
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Surface tokens of `text`, without special-token framing.
    pub fn tokenize(&self, text: &str) -> Result<Vec<String>, TokenizeError> {
        match self.scheme {
            Scheme::Char => Ok(char_tokens(text)),
            Scheme::Ais => Ok(ais_tokens(text)?),
            Scheme::Bpe => {
                let merges = self.merges.as_ref().expect("checked at construction");
                Ok(apply_merges(text, merges))
            }
        }
    }

    /// Encode with `[BOS]`/`[EOS]` framing. With `pad` the sequence is
    /// truncated or padded to exactly `max_len`; out-of-vocabulary tokens
    /// become `[UNK]`.
    pub fn encode(
        &self,
        text: &str,
        max_len: usize,
        pad: bool,
    ) -> Result<TokenSequence, TokenizeError> {
        let mut texts = vec![BOS.to_string()];
        for tok in self.tokenize(text)? {
            match self.vocab.id_of(&tok) {
                Some(_) => texts.push(tok),
                None => texts.push(UNK.to_string()),
            }
        }
        texts.push(EOS.to_string());
        if pad {
            texts.truncate(max_len);
            while texts.len() < max_len {
                texts.push(PAD.to_string());
            }
        }
        let ids = texts
            .iter()
            .map(|t| self.vocab.id_of(t).expect("framed tokens are in-vocab"))
            .collect();
        Ok(TokenSequence { ids, texts })
    }

    /// Decode ids back to a SMILES string, dropping special tokens. For
    /// AIS the atom tokens are folded back to their SMILES atoms.
    pub fn decode(&self, ids: &[u32]) -> Result<String, TokenizeError> {
        let mut tokens = Vec::with_capacity(ids.len());
        for &id in ids {
            let text = self
                .vocab
                .token(id)
                .ok_or(TokenizeError::UnknownId(id))?;
            if SPECIALS.contains(&text) {
                continue;
            }
            tokens.push(text.to_string());
        }
        match self.scheme {
            Scheme::Char | Scheme::Bpe => Ok(tokens.concat()),
            Scheme::Ais => ais_decode(&tokens),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn char_tokenizer(corpus: &[&str]) -> Tokenizer {
        Tokenizer::new(Scheme::Char, char_vocab(corpus), None).unwrap()
    }

    #[test]
    fn encode_frames_and_pads() {
        let tok = char_tokenizer(&["CCO"]);
        let seq = tok.encode("CCO", 6, true).unwrap();
        assert_eq!(seq.len(), 6);
        assert_eq!(seq.texts[0], BOS);
        assert_eq!(seq.texts[4], EOS);
        assert_eq!(seq.texts[5], PAD);
        assert_eq!(seq.ids[5], 0, "[PAD] holds id 0");
        assert_eq!(tok.decode(&seq.ids).unwrap(), "CCO");
    }

    #[test]
    fn truncation_caps_length() {
        let tok = char_tokenizer(&["CCCCCCCC"]);
        let seq = tok.encode("CCCCCCCC", 4, true).unwrap();
        assert_eq!(seq.len(), 4);
    }

    #[test]
    fn unknown_characters_become_unk() {
        let tok = char_tokenizer(&["CCO"]);
        let seq = tok.encode("CXO", 16, false).unwrap();
        assert!(seq.texts.contains(&UNK.to_string()));
        // decode drops nothing except specials, so the X is gone
        assert_eq!(tok.decode(&seq.ids).unwrap(), "CO");
    }

    #[test]
    fn decode_of_pad_only_is_empty() {
        let tok = char_tokenizer(&["CCO"]);
        assert_eq!(tok.decode(&[0, 0, 0]).unwrap(), "");
    }
}
