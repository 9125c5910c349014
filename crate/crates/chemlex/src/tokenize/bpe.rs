//! Byte-pair encoding over raw SMILES characters.
//!
//! Training starts from the corpus character alphabet and repeatedly
//! merges the most frequent adjacent token pair until the vocabulary
//! reaches its target size or no pair occurs at least twice. Ties break
//! lexicographically on the (left, right) pair text, so training is fully
//! reproducible. There is no pre-tokenization: SMILES has no word
//! boundaries, and merges are free to cross multi-character atoms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{MergeList, TokenizeError, Vocabulary};

/// Train a BPE vocabulary of at most `target_vocab` tokens (including the
/// four specials) on `corpus`.
pub fn train_bpe<S: AsRef<str>>(
    corpus: &[S],
    target_vocab: usize,
) -> Result<(Vocabulary, MergeList), TokenizeError> {
    if corpus.is_empty() || corpus.iter().all(|l| l.as_ref().is_empty()) {
        return Err(TokenizeError::EmptyCorpus);
    }

    let mut alphabet: Vec<char> = corpus
        .iter()
        .flat_map(|l| l.as_ref().chars())
        .collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    if target_vocab < alphabet.len() + 4 {
        return Err(TokenizeError::TargetVocabTooSmall {
            target: target_vocab,
            alphabet: alphabet.len(),
            specials: 4,
        });
    }

    let mut tokens: Vec<String> = alphabet.iter().map(|c| c.to_string()).collect();
    let token_id: HashMap<String, usize> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();

    // unique lines with multiplicities
    let mut line_count: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for line in corpus {
        let ids: Vec<usize> = line
            .as_ref()
            .chars()
            .map(|c| token_id[&c.to_string()])
            .collect();
        if !ids.is_empty() {
            *line_count.entry(ids).or_insert(0) += 1;
        }
    }
    let mut lines: Vec<(Vec<usize>, u64)> = line_count.into_iter().collect();

    let mut pair_counts: HashMap<(usize, usize), u64> = HashMap::new();
    let mut pair_lines: HashMap<(usize, usize), BTreeSet<usize>> = HashMap::new();
    for (idx, (ids, count)) in lines.iter().enumerate() {
        for w in ids.windows(2) {
            *pair_counts.entry((w[0], w[1])).or_insert(0) += count;
            pair_lines.entry((w[0], w[1])).or_default().insert(idx);
        }
    }

    let mut merges = Vec::new();
    while tokens.len() + 4 < target_vocab {
        let best = pair_counts
            .iter()
            .filter(|(_, &count)| count >= 2)
            .map(|(&pair, &count)| (count, &tokens[pair.0], &tokens[pair.1], pair))
            .max_by(|a, b| {
                a.0.cmp(&b.0)
                    .then_with(|| (b.1, b.2).cmp(&(a.1, a.2)))
            });
        let Some((_, _, _, pair)) = best else {
            break;
        };

        let new_id = tokens.len();
        let new_text = format!("{}{}", tokens[pair.0], tokens[pair.1]);
        tokens.push(new_text.clone());
        merges.push((tokens[pair.0].clone(), tokens[pair.1].clone()));

        let affected: Vec<usize> = pair_lines
            .remove(&pair)
            .map(|s| s.into_iter().collect())
            .unwrap_or_default();
        for line_idx in affected {
            let (ids, count) = &mut lines[line_idx];
            // retract this line's old pair contributions
            for w in ids.windows(2) {
                let key = (w[0], w[1]);
                if let Some(c) = pair_counts.get_mut(&key) {
                    *c -= *count;
                    if *c == 0 {
                        pair_counts.remove(&key);
                    }
                }
                if let Some(set) = pair_lines.get_mut(&key) {
                    set.remove(&line_idx);
                    if set.is_empty() {
                        pair_lines.remove(&key);
                    }
                }
            }
            // leftmost non-overlapping replacement
            let mut merged = Vec::with_capacity(ids.len());
            let mut i = 0;
            while i < ids.len() {
                if i + 1 < ids.len() && ids[i] == pair.0 && ids[i + 1] == pair.1 {
                    merged.push(new_id);
                    i += 2;
                } else {
                    merged.push(ids[i]);
                    i += 1;
                }
            }
            *ids = merged;
            for w in ids.windows(2) {
                let key = (w[0], w[1]);
                *pair_counts.entry(key).or_insert(0) += *count;
                pair_lines.entry(key).or_default().insert(line_idx);
            }
        }
    }

    let vocab = Vocabulary::from_tokens(tokens)?;
    Ok((vocab, MergeList(merges)))
}

/// Tokenize by applying the merge list in learned order over the raw
/// characters of `text`.
pub fn apply_merges(text: &str, merges: &MergeList) -> Vec<String> {
    let mut seq: Vec<String> = text.chars().map(|c| c.to_string()).collect();
    if seq.len() < 2 {
        return seq;
    }
    let rank: HashMap<(&str, &str), usize> = merges
        .0
        .iter()
        .enumerate()
        .map(|(i, (l, r))| ((l.as_str(), r.as_str()), i))
        .collect();

    loop {
        let mut best: Option<(usize, usize)> = None; // (rank, position)
        for i in 0..seq.len() - 1 {
            if let Some(&r) = rank.get(&(seq[i].as_str(), seq[i + 1].as_str())) {
                if best.map(|(br, _)| r < br).unwrap_or(true) {
                    best = Some((r, i));
                }
            }
        }
        let Some((r, _)) = best else {
            break;
        };
        let (left, right) = &merges.0[r];
        let mut merged = Vec::with_capacity(seq.len());
        let mut i = 0;
        while i < seq.len() {
            if i + 1 < seq.len() && seq[i] == *left && seq[i + 1] == *right {
                merged.push(format!("{left}{right}"));
                i += 2;
            } else {
                merged.push(std::mem::take(&mut seq[i]));
                i += 1;
            }
        }
        seq = merged;
        if seq.len() < 2 {
            break;
        }
    }
    seq
}
