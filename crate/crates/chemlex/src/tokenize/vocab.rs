//! Vocabulary and merge-list containers with their file formats.
//!
//! Vocabulary files are JSON: a `tokens` map from token text to id plus a
//! `specials` array. Merge files are plain text, one `left right` pair
//! per line in application order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{TokenizeError, SPECIALS};

/// Immutable token-text <-> id map with dense ids and the four special
/// tokens always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    id_to_token: Vec<String>,
    token_to_id: HashMap<String, u32>,
    special_ids: [u32; 4],
}

impl Vocabulary {
    /// Build from content tokens; specials take ids 0..4 and content
    /// follows in the given order. Duplicate or special-colliding content
    /// tokens are rejected.
    pub fn from_tokens<I, S>(content: I) -> Result<Vocabulary, TokenizeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut id_to_token: Vec<String> = SPECIALS.iter().map(|s| s.to_string()).collect();
        for tok in content {
            id_to_token.push(tok.into());
        }
        Self::from_dense_list(id_to_token)
    }

    fn from_dense_list(id_to_token: Vec<String>) -> Result<Vocabulary, TokenizeError> {
        let mut token_to_id = HashMap::with_capacity(id_to_token.len());
        for (id, tok) in id_to_token.iter().enumerate() {
            if token_to_id.insert(tok.clone(), id as u32).is_some() {
                return Err(TokenizeError::InvalidVocabulary(format!(
                    "duplicate token `{tok}`"
                )));
            }
        }
        let mut special_ids = [0u32; 4];
        for (slot, name) in SPECIALS.iter().enumerate() {
            match token_to_id.get(*name) {
                Some(&id) => special_ids[slot] = id,
                None => {
                    return Err(TokenizeError::InvalidVocabulary(format!(
                        "missing special token `{name}`"
                    )))
                }
            }
        }
        Ok(Vocabulary {
            id_to_token,
            token_to_id,
            special_ids,
        })
    }

    pub fn len(&self) -> usize {
        self.id_to_token.len()
    }

    pub fn is_empty(&self) -> bool {
        self.id_to_token.is_empty()
    }

    pub fn id_of(&self, token: &str) -> Option<u32> {
        self.token_to_id.get(token).copied()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.id_to_token.get(id as usize).map(|s| s.as_str())
    }

    pub fn pad_id(&self) -> u32 {
        self.special_ids[0]
    }

    pub fn unk_id(&self) -> u32 {
        self.special_ids[1]
    }

    pub fn bos_id(&self) -> u32 {
        self.special_ids[2]
    }

    pub fn eos_id(&self) -> u32 {
        self.special_ids[3]
    }

    pub fn is_special_id(&self, id: u32) -> bool {
        self.special_ids.contains(&id)
    }

    /// Content tokens (specials excluded), in id order.
    pub fn content_tokens(&self) -> impl Iterator<Item = &str> {
        self.id_to_token
            .iter()
            .map(|s| s.as_str())
            .filter(|t| !SPECIALS.contains(t))
    }

    pub fn to_json(&self) -> String {
        let file = VocabFile {
            specials: SPECIALS.iter().map(|s| s.to_string()).collect(),
            tokens: self
                .id_to_token
                .iter()
                .enumerate()
                .map(|(id, tok)| (tok.clone(), id as u32))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("vocabulary serializes")
    }

    pub fn from_json(text: &str) -> Result<Vocabulary, TokenizeError> {
        let file: VocabFile = serde_json::from_str(text)
            .map_err(|e| TokenizeError::InvalidVocabulary(e.to_string()))?;
        let mut pairs: Vec<(String, u32)> = file.tokens.into_iter().collect();
        pairs.sort_by_key(|(_, id)| *id);
        for (expect, (_, id)) in pairs.iter().enumerate() {
            if *id as usize != expect {
                return Err(TokenizeError::InvalidVocabulary(format!(
                    "ids are not dense at {id}"
                )));
            }
        }
        Self::from_dense_list(pairs.into_iter().map(|(tok, _)| tok).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct VocabFile {
    specials: Vec<String>,
    tokens: std::collections::BTreeMap<String, u32>,
}

/// Ordered list of BPE merges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeList(pub Vec<(String, String)>);

impl MergeList {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (left, right) in &self.0 {
            out.push_str(left);
            out.push(' ');
            out.push_str(right);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<MergeList, TokenizeError> {
        let mut merges = Vec::new();
        for line in text.lines() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let Some((left, right)) = line.split_once(' ') else {
                return Err(TokenizeError::InvalidToken(line.to_string()));
            };
            merges.push((left.to_string(), right.to_string()));
        }
        Ok(MergeList(merges))
    }
}
