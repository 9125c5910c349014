//! Tokenized-length statistics and vocabulary overlap.

use std::collections::HashMap;

use super::{Tokenizer, TokenizeError, Vocabulary};

/// Length statistics plus the token rank-frequency table.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthAndFrequencyStats {
    /// Lines measured (parse failures are skipped, counted below).
    pub lines: usize,
    pub skipped: usize,
    /// Mean/median token count per line, specials excluded.
    pub mean_len: f64,
    pub median_len: f64,
    /// Tokens by descending frequency; ties in ascending token order.
    pub rank_frequency: Vec<(String, usize)>,
}

/// Tokenize every line (no framing) and aggregate lengths and token
/// frequencies. Lines the scheme cannot tokenize are skipped and counted.
pub fn token_stats<S: AsRef<str>>(
    tokenizer: &Tokenizer,
    corpus: &[S],
) -> Result<LengthAndFrequencyStats, TokenizeError> {
    let mut lengths: Vec<usize> = Vec::new();
    let mut skipped = 0usize;
    let mut freq: HashMap<String, usize> = HashMap::new();
    for line in corpus {
        match tokenizer.tokenize(line.as_ref()) {
            Ok(tokens) => {
                lengths.push(tokens.len());
                for t in tokens {
                    *freq.entry(t).or_insert(0) += 1;
                }
            }
            Err(TokenizeError::Smiles(_)) => skipped += 1,
            Err(e) => return Err(e),
        }
    }

    let mut rank_frequency: Vec<(String, usize)> = freq.into_iter().collect();
    rank_frequency.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    let lines = lengths.len();
    let mean_len = if lines == 0 {
        0.0
    } else {
        lengths.iter().sum::<usize>() as f64 / lines as f64
    };
    let median_len = median(&mut lengths);

    Ok(LengthAndFrequencyStats {
        lines,
        skipped,
        mean_len,
        median_len,
        rank_frequency,
    })
}

fn median(values: &mut [usize]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_unstable();
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2] as f64
    } else {
        (values[n / 2 - 1] + values[n / 2]) as f64 / 2.0
    }
}

/// Jaccard similarity of two vocabularies over token texts, specials
/// excluded. Two empty vocabularies count as identical.
pub fn vocab_jaccard(a: &Vocabulary, b: &Vocabulary) -> f64 {
    let set_a: std::collections::HashSet<&str> = a.content_tokens().collect();
    let set_b: std::collections::HashSet<&str> = b.content_tokens().collect();
    let intersection = set_a.intersection(&set_b).count();
    let union = set_a.union(&set_b).count();
    if union == 0 {
        1.0
    } else {
        intersection as f64 / union as f64
    }
}
