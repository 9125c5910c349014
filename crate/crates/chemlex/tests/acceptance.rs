//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Every expected value is either a printed golden sequence, a hand-
//! checked constant, or the output of an independent oracle coded here.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::collections::HashSet;
use std::time::Instant;

use chemlex::evalharness::{auc_roc, mcc, welch_t};
use chemlex::genmetrics::evaluate_corpus;
use chemlex::graph::{
    canonical_key, double_bond_count, kekulize, parse_smiles, standardize_corpus,
};
use chemlex::scaffold::{scaffold_split, zipf_fit, zipf_fit_counts, Partition};
use chemlex::seed::stream_rng;
use chemlex::synth;
use chemlex::tokenize::{
    ais_decode, ais_tokens, char_tokens, char_vocab, train_bpe, MergeList, Scheme, Tokenizer,
};
use chemlex::validator::{classify_long_range, validate, ErrorCategory, Mode};
use rand::prelude::*;

fn pass(criterion: usize, name: &str) {
    println!("acceptance {criterion:>2} ({name}): PASS");
}

// ---------------------------------------------------------------- 1

const TERPENE: &str = "CC1=C2[C@@H]3[C@H](C(=O)C1)[C@@]2(C)CCCC3(C)C";

const TERPENE_CHAR_TOKENS: &str = "C, C, 1, =, C, 2, [, C, @, @, H, ], 3, [, C, @, H, ], (, C, \
     (, =, O, ), C, 1, ), [, C, @, @, ], 2, (, C, ), C, C, C, C, 3, (, C, ), C";

const TERPENE_AIS_TOKENS: &str = "[CH3;!R;C], [C;R;CCC], 1, =, [C;R;CCC], 2, [[C@H];R;CCC], 3, \
     [[C@H];R;CCC], (, [C;R;CCO], (, =, [O;!R;C], ), [CH2;R;CC], 1, ), [[C@@];R;CCCC], 2, (, \
     [CH3;!R;C], ), [CH2;R;CC], [CH2;R;CC], [CH2;R;CC], [C;R;CCCC], 3, (, [CH3;!R;C], ), \
     [CH3;!R;C]";

const ETHANOL_AIS_TOKENS: &str = "[CH3;!R;C], [CH2;!R;CO], [OH;!R;C]";

#[test]
fn criterion_01_golden_tokenization() {
    let started = Instant::now();

    assert_eq!(char_tokens("CCO").join(", "), "C, C, O");
    assert_eq!(char_tokens(TERPENE).join(", "), TERPENE_CHAR_TOKENS);
    assert_eq!(ais_tokens("CCO").unwrap().join(", "), ETHANOL_AIS_TOKENS);
    assert_eq!(ais_tokens(TERPENE).unwrap().join(", "), TERPENE_AIS_TOKENS);

    assert!(started.elapsed().as_secs_f64() < 1.0);
    pass(1, "golden tokenization");
}

// ---------------------------------------------------------------- 2

#[test]
fn criterion_02_roundtrip_suite() {
    let started = Instant::now();
    let corpus = synth::corpus(0x20250810, 10_000);

    let char_tok = Tokenizer::new(Scheme::Char, char_vocab(&corpus), None).unwrap();
    let (bpe_vocab, merges) = train_bpe(&corpus, bpe_target(&corpus, 64)).unwrap();
    let bpe_tok = Tokenizer::new(Scheme::Bpe, bpe_vocab, Some(merges)).unwrap();

    for s in &corpus {
        let seq = char_tok.encode(s, 0, false).unwrap();
        assert_eq!(char_tok.decode(&seq.ids).unwrap(), *s, "char roundtrip {s}");

        let seq = bpe_tok.encode(s, 0, false).unwrap();
        assert_eq!(bpe_tok.decode(&seq.ids).unwrap(), *s, "bpe roundtrip {s}");

        let tokens = ais_tokens(s).unwrap();
        let decoded = ais_decode(&tokens).unwrap();
        let key_in = canonical_key(&parse_smiles(s).unwrap()).unwrap();
        let key_out = canonical_key(&parse_smiles(&decoded).unwrap()).unwrap();
        assert_eq!(key_in, key_out, "ais roundtrip {s} -> {decoded}");
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "roundtrip suite took {elapsed:.1}s");
    pass(2, "roundtrip suite, 10k molecules");
}

fn bpe_target(corpus: &[String], extra: usize) -> usize {
    let alphabet: HashSet<char> = corpus.iter().flat_map(|s| s.chars()).collect();
    alphabet.len() + 4 + extra
}

// ---------------------------------------------------------------- 3

#[test]
fn criterion_03_error_taxonomy_mutations() {
    let corpus = synth::corpus(0x3aa, 3000);
    let percent_free: Vec<&String> = corpus.iter().filter(|s| !s.contains('%')).collect();

    let mut ring_mutants = 0usize;
    let mut paren_open_mutants = 0usize;
    let mut paren_close_mutants = 0usize;
    let mut valence_mutants = 0usize;
    let mut ring_shrink_mutants = 0usize;

    for s in &percent_free {
        // delete one ring-closure digit (a digit value used exactly once)
        if let Some(pos) = lone_ring_digit(s) {
            let mutant: String = s
                .chars()
                .enumerate()
                .filter(|(i, _)| *i != pos)
                .map(|(_, c)| c)
                .collect();
            let err = validate(&mutant, Mode::Full).error.unwrap_or_else(|| {
                panic!("ring-digit deletion left {mutant} valid (from {s})")
            });
            assert_eq!(err.category, ErrorCategory::RingOpeningsNotClosed, "{mutant}");
            assert_eq!(err.message(), "1 ring openings have not been closed");
            assert!(classify_long_range(err.category));
            ring_mutants += 1;
        }

        // drop an open parenthesis
        if let Some(pos) = s.find('(') {
            let mutant = remove_at(s, pos);
            let err = validate(&mutant, Mode::Full).error.expect("unbalanced");
            assert_eq!(
                err.category,
                ErrorCategory::UnmatchedCloseParenthesis,
                "{s} -> {mutant}"
            );
            assert_eq!(err.message(), "Unmatched close parenthesis");
            assert!(classify_long_range(err.category));
            paren_open_mutants += 1;
        }

        // lose a close parenthesis by stopping mid-branch (cutting at a
        // point with no open ring digits, so the branch error is the one
        // that surfaces)
        if let Some(pos) = truncatable_close_paren(s) {
            let mutant: String = s.chars().take(pos).collect();
            let err = validate(&mutant, Mode::Full).error.expect("unclosed");
            assert_eq!(err.category, ErrorCategory::BranchesNotClosed, "{s} -> {mutant}");
            assert!(err.message().ends_with("branches have not been closed"));
            assert!(classify_long_range(err.category));
            paren_close_mutants += 1;
        }

        // give a carbon a fifth bond
        if let Some(pos) = plain_carbon_site(s) {
            let mut mutant = String::new();
            mutant.push_str(&s[..pos]);
            mutant.push_str("(C)(C)(C)(C)(C)");
            mutant.push_str(&s[pos..]);
            let err = validate(&mutant, Mode::Full).error.expect("overloaded");
            assert_eq!(err.category, ErrorCategory::UncommonValence, "{s} -> {mutant}");
            assert_eq!(err.message(), "Uncommon valence or charge state");
            assert!(!classify_long_range(err.category));
            valence_mutants += 1;
        }

        // shrink a contiguously written aromatic six-ring to three atoms
        if let Some((start, digit)) = benzene_span(s) {
            let mut mutant = String::new();
            mutant.push_str(&s[..start]);
            mutant.push('c');
            mutant.push(digit);
            mutant.push_str("cc");
            mutant.push(digit);
            mutant.push_str(&s[start + 8..]);
            let err = validate(&mutant, Mode::Full).error.expect("unkekulizable");
            assert_eq!(err.category, ErrorCategory::CannotKekulize, "{s} -> {mutant}");
            assert_eq!(err.message(), "Aromatic system cannot be kekulized");
            assert!(!classify_long_range(err.category));
            ring_shrink_mutants += 1;
        }
    }

    assert!(ring_mutants > 200, "only {ring_mutants} ring mutants");
    assert!(paren_open_mutants > 200);
    assert!(paren_close_mutants > 200);
    assert!(valence_mutants > 200);
    assert!(ring_shrink_mutants > 50, "only {ring_shrink_mutants} shrink mutants");

    // the long-range subset is exactly the six syntax categories
    let long_range: Vec<&str> = ErrorCategory::ALL
        .iter()
        .filter(|c| classify_long_range(**c))
        .map(|c| c.message_template())
        .collect();
    assert_eq!(
        long_range,
        vec![
            "N ring openings have not been closed",
            "Unmatched close parenthesis",
            "N branches have not been closed",
            "Missing the close bracket",
            "The final branch should not be within parentheses",
            "An open square brackets is present without the corresponding close square brackets",
        ]
    );
    pass(3, "error taxonomy mutation harness");
}

fn remove_at(s: &str, pos: usize) -> String {
    s.chars()
        .enumerate()
        .filter(|(i, _)| *i != pos)
        .map(|(_, c)| c)
        .collect()
}

/// Position of a `)` whose prefix has every ring digit closed, so that
/// truncating there exposes only the unclosed branch.
fn truncatable_close_paren(s: &str) -> Option<usize> {
    let mut digit_counts = [0usize; 10];
    let mut depth = 0i32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            d if d.is_ascii_digit() && depth == 0 => {
                digit_counts[d.to_digit(10).unwrap() as usize] += 1;
            }
            ')' if depth == 0 && digit_counts.iter().all(|c| c.is_multiple_of(2)) => {
                return Some(i);
            }
            _ => {}
        }
    }
    None
}

/// Position of a ring digit whose value occurs exactly twice outside
/// brackets (deleting one leaves the other unclosed).
fn lone_ring_digit(s: &str) -> Option<usize> {
    let mut counts = [0usize; 10];
    let mut last_pos = [0usize; 10];
    let mut depth = 0i32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            d if d.is_ascii_digit() && depth == 0 => {
                let v = d.to_digit(10).unwrap() as usize;
                counts[v] += 1;
                last_pos[v] = i;
            }
            _ => {}
        }
    }
    (0..10).find(|&v| counts[v] == 2).map(|v| last_pos[v])
}

/// Position right after a plain carbon atom token and its ring digits.
fn plain_carbon_site(s: &str) -> Option<usize> {
    let chars: Vec<char> = s.chars().collect();
    let mut depth = 0;
    for i in 0..chars.len() {
        match chars[i] {
            '[' => depth += 1,
            ']' => depth -= 1,
            'C' if depth == 0 => {
                if chars.get(i + 1) == Some(&'l') {
                    continue;
                }
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                return Some(j);
            }
            _ => {}
        }
    }
    None
}

/// A contiguously written benzene ring `c<d>cccc c<d>`; returns the span
/// start and the digit.
fn benzene_span(s: &str) -> Option<(usize, char)> {
    let chars: Vec<char> = s.chars().collect();
    for i in 0..chars.len().saturating_sub(7) {
        if chars[i] == 'c'
            && chars[i + 1].is_ascii_digit()
            && chars[i + 2..i + 6].iter().all(|c| *c == 'c')
            && chars[i + 6] == 'c'
            && chars[i + 7] == chars[i + 1]
        {
            return Some((i, chars[i + 1]));
        }
    }
    None
}

// ---------------------------------------------------------------- 4

#[test]
fn criterion_04_kekulization_oracle() {
    // fixed expectations
    let benzene = kekulize(&parse_smiles("c1ccccc1").unwrap()).unwrap();
    assert_eq!(double_bond_count(&benzene), 3);
    let naphthalene = kekulize(&parse_smiles("c1ccc2ccccc2c1").unwrap()).unwrap();
    assert_eq!(double_bond_count(&naphthalene), 5);
    assert!(kekulize(&parse_smiles("c1cc1").unwrap()).is_err());

    let mut rng = stream_rng(0x4bb, 0);
    let mut checked = 0usize;
    let mut failures_seen = 0usize;
    while checked < 400 {
        let s = synth::random_aromatic_system(&mut rng);
        let g = parse_smiles(&s).unwrap();
        if g.atoms.len() > 10 {
            continue;
        }
        checked += 1;

        let needs: Vec<usize> = (0..g.atoms.len())
            .filter(|&i| g.needs_ring_double(i))
            .collect();
        let candidate_edges: Vec<(usize, usize)> = g
            .bonds
            .iter()
            .filter(|b| {
                b.order == chemlex::BondOrder::Aromatic
                    && g.needs_ring_double(b.a)
                    && g.needs_ring_double(b.b)
            })
            .map(|b| (b.a, b.b))
            .collect();
        let oracle_ok = perfect_matching_exists(&needs, &candidate_edges);

        match kekulize(&g) {
            Ok(k) => {
                assert!(oracle_ok, "kekulize accepted {s} but oracle rejects");
                assert_eq!(
                    double_bond_count(&k),
                    needs.len() / 2,
                    "double bond count mismatch for {s}"
                );
                // soundness: every paired atom hosts exactly one double
                for &atom in &needs {
                    let doubles = k
                        .neighbors(atom)
                        .iter()
                        .filter(|(_, b)| k.bonds[*b].order == chemlex::BondOrder::Double)
                        .count();
                    assert_eq!(doubles, 1, "atom {atom} of {s}");
                }
            }
            Err(_) => {
                assert!(!oracle_ok, "kekulize rejected {s} but oracle accepts");
                failures_seen += 1;
            }
        }
    }
    assert!(failures_seen > 20, "oracle corpus too easy: {failures_seen} failures");
    pass(4, "kekulization matches brute-force matching");
}

/// Exhaustive search for a perfect matching covering `vertices`.
fn perfect_matching_exists(vertices: &[usize], edges: &[(usize, usize)]) -> bool {
    fn go(uncovered: &[usize], edges: &[(usize, usize)]) -> bool {
        let Some(&v) = uncovered.first() else {
            return true;
        };
        let partners: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v && uncovered.contains(&b) {
                    Some(b)
                } else if b == v && uncovered.contains(&a) {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        for p in partners {
            let rest: Vec<usize> = uncovered
                .iter()
                .copied()
                .filter(|&x| x != v && x != p)
                .collect();
            if go(&rest, edges) {
                return true;
            }
        }
        false
    }
    if vertices.len() % 2 == 1 {
        return false;
    }
    go(vertices, edges)
}

// ---------------------------------------------------------------- 5

#[test]
fn criterion_05_bpe_oracle() {
    let mut rng = stream_rng(0x5cc, 0);
    let alphabet = ['C', 'O', 'N', 'c', '1', '(', ')', '='];

    for round in 0..50 {
        let lines: Vec<String> = (0..rng.gen_range(2..10))
            .map(|_| {
                let len = rng.gen_range(2..14);
                (0..len).map(|_| alphabet.choose(&mut rng).unwrap()).collect()
            })
            .collect();
        let distinct: HashSet<char> = lines.iter().flat_map(|l| l.chars()).collect();
        let target = distinct.len() + 4 + rng.gen_range(1..10);

        let (_, merges) = train_bpe(&lines, target).unwrap();
        let expected = naive_bpe_reference(&lines, target);
        assert_eq!(merges.0, expected, "round {round}: {lines:?}");
    }

    // mean tokenized length is non-increasing in target vocabulary size
    let corpus = synth::corpus(0x5dd, 400);
    let mut previous = f64::INFINITY;
    for extra in [0usize, 8, 24, 64, 160] {
        let target = bpe_target(&corpus, extra);
        let (vocab, merges) = train_bpe(&corpus, target).unwrap();
        let tok = Tokenizer::new(Scheme::Bpe, vocab, Some(merges)).unwrap();
        let stats = chemlex::tokenize::token_stats(&tok, &corpus).unwrap();
        assert!(
            stats.mean_len <= previous + 1e-12,
            "mean length grew: {} -> {} at +{extra}",
            previous,
            stats.mean_len
        );
        previous = stats.mean_len;
    }
    pass(5, "bpe trainer matches quadratic reference");
}

/// Quadratic reference trainer: retokenize the whole corpus after every
/// merge and recount every pair.
fn naive_bpe_reference(lines: &[String], target_vocab: usize) -> Vec<(String, String)> {
    let mut alphabet: Vec<char> = lines.iter().flat_map(|l| l.chars()).collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut vocab_size = alphabet.len() + 4;
    let mut merges: Vec<(String, String)> = Vec::new();

    loop {
        if vocab_size >= target_vocab {
            break;
        }
        // tokenize from scratch with merges so far
        let merge_list = MergeList(merges.clone());
        let mut counts: std::collections::BTreeMap<(String, String), u64> =
            std::collections::BTreeMap::new();
        for line in lines {
            let tokens = chemlex::tokenize::apply_merges(line, &merge_list);
            for w in tokens.windows(2) {
                *counts.entry((w[0].clone(), w[1].clone())).or_insert(0) += 1;
            }
        }
        let best = counts
            .into_iter()
            .filter(|(_, c)| *c >= 2)
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        let Some((pair, _)) = best else { break };
        merges.push(pair);
        vocab_size += 1;
    }
    merges
}

// ---------------------------------------------------------------- 6

#[test]
fn criterion_06_scaffold_split() {
    let mut rng = stream_rng(0x6ee, 0);

    // distinct ring cores, each contributing at most 3 molecules
    let mut by_scaffold: std::collections::BTreeMap<String, Vec<String>> =
        std::collections::BTreeMap::new();
    let mut attempts = 0;
    while by_scaffold.values().map(|v| v.len()).sum::<usize>() < 1000 {
        attempts += 1;
        assert!(attempts < 50_000, "core generator exhausted");
        let core = synth::ring_core(&mut rng);
        if chemlex::graph::kekulize(&core).is_err() {
            continue;
        }
        let key = chemlex::scaffold::murcko_scaffold(&core).unwrap();
        let entry = by_scaffold.entry(key.0.clone()).or_default();
        if entry.len() >= 3 {
            continue;
        }
        entry.push(synth::decorate_with_chains(&mut rng, &core));
    }
    let mols: Vec<String> = by_scaffold.values().flatten().cloned().collect();
    let mols = &mols[..1000.min(mols.len())];
    assert_eq!(mols.len(), 1000);

    let plan = scaffold_split(mols, (0.8, 0.1, 0.1), 77).unwrap();

    // zero scaffold overlap between partitions, checked exhaustively
    let mut seen: std::collections::HashMap<&str, Partition> = std::collections::HashMap::new();
    for (idx, key) in plan.scaffold_keys.iter().enumerate() {
        let partition = plan.assignment[idx];
        if let Some(&previous) = seen.get(key.as_str()) {
            assert_eq!(previous, partition, "scaffold {key} straddles partitions");
        } else {
            seen.insert(key.as_str(), partition);
        }
    }

    // largest group is at most 1% here, so fractions stay within 1.5pp
    let largest = by_scaffold.values().map(|v| v.len()).max().unwrap();
    assert!(largest <= 10);
    let realized = plan.realized_fractions();
    for (got, want) in realized.iter().zip([0.8, 0.1, 0.1]) {
        assert!(
            (got - want).abs() <= 0.015,
            "fractions {realized:?} vs 80/10/10"
        );
    }
    pass(6, "scaffold split disjoint and on-fraction");
}

// ---------------------------------------------------------------- 7

#[test]
fn criterion_07_zipf_fit() {
    let inverse: Vec<f64> = (1..=100).map(|r| 5e5 / r as f64).collect();
    let fit = zipf_fit_counts(&inverse).unwrap();
    assert!((fit.slope + 1.0).abs() < 1e-9, "slope {}", fit.slope);
    assert!((fit.r_squared - 1.0).abs() < 1e-9);

    let inverse_square: Vec<f64> = (1..=100).map(|r| 5e8 / (r * r) as f64).collect();
    let fit = zipf_fit_counts(&inverse_square).unwrap();
    assert!((fit.slope + 2.0).abs() < 1e-9);

    // sampled Zipf(1) scaffold ids recover the exponent within 0.05
    let ranks = 100usize;
    let weights: Vec<f64> = (1..=ranks).map(|r| 1.0 / r as f64).collect();
    let total: f64 = weights.iter().sum();
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w / total;
            Some(*acc)
        })
        .collect();
    let mut rng = stream_rng(0x7ff, 0);
    let samples: Vec<usize> = (0..1_000_000)
        .map(|_| {
            let u: f64 = rng.gen();
            cumulative.partition_point(|c| *c < u)
        })
        .collect();
    let fit = zipf_fit(samples).unwrap();
    assert!(
        (fit.slope + 1.0).abs() < 0.05,
        "sampled slope {} strays from -1",
        fit.slope
    );
    pass(7, "zipf exponent recovery");
}

// ---------------------------------------------------------------- 8

#[test]
fn criterion_08_metric_oracles() {
    // fixed points
    assert_eq!(mcc(&[vec![50, 0], vec![0, 50]]).unwrap(), 1.0);
    assert_eq!(mcc(&[vec![0, 50], vec![50, 0]]).unwrap(), -1.0);
    assert_eq!(
        auc_roc(&[0.5, 0.5, 0.5, 0.5], &[true, false, true, false]).unwrap(),
        0.5
    );

    let mut rng = stream_rng(0x8aa, 0);

    for _ in 0..1000 {
        // binary confusion matrices vs two independent routes
        let m = [
            vec![rng.gen_range(0..100u64), rng.gen_range(0..100)],
            vec![rng.gen_range(0..100), rng.gen_range(0..100)],
        ];
        if m.iter().flatten().sum::<u64>() == 0 {
            continue;
        }
        let got = mcc(&m).unwrap();
        let four_term = mcc_four_term_oracle(&m);
        let covariance = mcc_covariance_oracle(&m);
        assert!((got - four_term).abs() < 1e-12);
        assert!((got - covariance).abs() < 1e-12);

        // multiclass vs the covariance route
        let k = rng.gen_range(3..=5);
        let mk: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_range(0..30)).collect())
            .collect();
        if mk.iter().flatten().sum::<u64>() > 0 {
            let got = mcc(&mk).unwrap();
            let oracle = mcc_covariance_oracle(&mk);
            assert!((got - oracle).abs() < 1e-12, "{mk:?}");
        }

        // AUC vs brute-force pairwise counting (with ties)
        let n = rng.gen_range(3..40);
        let scores: Vec<f64> = (0..n).map(|_| (rng.gen_range(0..20) as f64) / 10.0).collect();
        let mut labels: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        labels[0] = true;
        labels[n - 1] = false;
        let got = auc_roc(&scores, &labels).unwrap();
        let oracle = auc_pairwise_oracle(&scores, &labels);
        assert!((got - oracle).abs() < 1e-12);
    }

    for _ in 0..300 {
        // Welch's t against textbook formulas + numerical CDF integration
        let na = rng.gen_range(2..12);
        let nb = rng.gen_range(2..12);
        let a: Vec<f64> = (0..na).map(|_| rng.gen_range(-3.0..8.0)).collect();
        let b: Vec<f64> = (0..nb).map(|_| rng.gen_range(-3.0..8.0)).collect();
        let Ok(cmp) = welch_t(&a, &b) else { continue };
        let (t_oracle, dof_oracle) = welch_formula_oracle(&a, &b);
        assert!((cmp.t - t_oracle).abs() < 1e-9);
        assert!((cmp.dof - dof_oracle).abs() < 1e-9);
        let p_oracle = t_two_tailed_by_quadrature(t_oracle, dof_oracle);
        assert!(
            (cmp.p - p_oracle).abs() < 1e-9,
            "p {} vs quadrature {} (t={t_oracle}, dof={dof_oracle})",
            cmp.p,
            p_oracle
        );
    }

    let identical = welch_t(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
    assert_eq!(identical.t, 0.0);
    assert!((identical.p - 1.0).abs() < 1e-12);
    pass(8, "MCC/AUC/Welch oracles");
}

fn mcc_four_term_oracle(m: &[Vec<u64>]) -> f64 {
    let (tn, fp, fn_, tp) = (
        m[0][0] as f64,
        m[0][1] as f64,
        m[1][0] as f64,
        m[1][1] as f64,
    );
    let denom = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
    if denom == 0.0 {
        return 0.0;
    }
    (tp * tn - fp * fn_) / denom.sqrt()
}

/// MCC as the Pearson correlation of one-hot indicator vectors, expanded
/// sample by sample from the confusion matrix.
fn mcc_covariance_oracle(m: &[Vec<u64>]) -> f64 {
    let k = m.len();
    let mut actual: Vec<usize> = Vec::new();
    let mut predicted: Vec<usize> = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &count) in row.iter().enumerate() {
            for _ in 0..count {
                actual.push(i);
                predicted.push(j);
            }
        }
    }
    let n = actual.len() as f64;
    let mut cov_xy = 0.0;
    let mut cov_xx = 0.0;
    let mut cov_yy = 0.0;
    for class in 0..k {
        let x: Vec<f64> = predicted.iter().map(|&p| f64::from(p == class)).collect();
        let y: Vec<f64> = actual.iter().map(|&a| f64::from(a == class)).collect();
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        cov_xy += x.iter().zip(&y).map(|(xi, yi)| (xi - mx) * (yi - my)).sum::<f64>();
        cov_xx += x.iter().map(|xi| (xi - mx).powi(2)).sum::<f64>();
        cov_yy += y.iter().map(|yi| (yi - my).powi(2)).sum::<f64>();
    }
    let denom = (cov_xx * cov_yy).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    cov_xy / denom
}

fn auc_pairwise_oracle(scores: &[f64], labels: &[bool]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (sp, lp) in scores.iter().zip(labels) {
        if !lp {
            continue;
        }
        for (sn, ln) in scores.iter().zip(labels) {
            if *ln {
                continue;
            }
            pairs += 1.0;
            if sp > sn {
                wins += 1.0;
            } else if sp == sn {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

fn welch_formula_oracle(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let var = |s: &[f64]| {
        let m = mean(s);
        s.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (s.len() as f64 - 1.0)
    };
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (sa, sb) = (var(a) / na, var(b) / nb);
    let t = (mean(a) - mean(b)) / (sa + sb).sqrt();
    let dof = (sa + sb).powi(2) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    (t, dof)
}

/// Two-tailed p by adaptive Simpson quadrature. With x = sqrt(dof) tan(h)
/// the t density integrates as cos^(dof-1), so no gamma normalization is
/// needed: p = 1 - I(atan(|t|/sqrt(dof))) / I(pi/2).
fn t_two_tailed_by_quadrature(t: f64, dof: f64) -> f64 {
    let density = |theta: f64| theta.cos().powf(dof - 1.0);
    let theta_t = (t.abs() / dof.sqrt()).atan();
    let body = adaptive_simpson(&density, 0.0, theta_t, 1e-13, 40);
    let total = adaptive_simpson(&density, 0.0, std::f64::consts::FRAC_PI_2, 1e-13, 40);
    (1.0 - body / total).clamp(0.0, 1.0)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b))
    }
    fn go(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = (a + b) / 2.0;
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() < 15.0 * eps {
            left + right + (left + right - whole) / 15.0
        } else {
            go(f, a, m, left, eps / 2.0, depth - 1) + go(f, m, b, right, eps / 2.0, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    go(f, a, b, simpson(f, a, b), eps, depth)
}

// ---------------------------------------------------------------- 9

#[test]
fn criterion_09_generation_report_containment() {
    let mut rng = stream_rng(0x9bb, 0);
    let valid_pool = synth::corpus(0x9cc, 400);
    let invalid_pool = [
        "C1CC", "CC)C", "c1cc1", "C(C)(C)(C)(C)C", "C[C@@Hx]", "xyz", "C==C", "CC(C)",
    ];
    let (ref_keys, ref_scaffolds) =
        chemlex::genmetrics::index_reference(&valid_pool[..100]);
    let mut ref_key_list: Vec<chemlex::CanonicalKey> = ref_keys.iter().cloned().collect();
    ref_key_list.sort();

    for round in 0..1000 {
        let n = rng.gen_range(1..=40);
        let corpus: Vec<String> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.7) {
                    valid_pool.choose(&mut rng).unwrap().clone()
                } else {
                    invalid_pool.choose(&mut rng).unwrap().to_string()
                }
            })
            .collect();

        let report = evaluate_corpus(&corpus, &ref_keys, &ref_scaffolds);
        assert!(report.novel_count <= report.unique_count);
        assert!(report.unique_count <= report.valid_count);
        assert!(report.valid_count <= report.total);
        assert_eq!(report.total, corpus.len());

        // naive quadratic oracle with a linear reference scan
        let (valid, unique, novel) = naive_evaluation_oracle(&corpus, &ref_key_list);
        assert_eq!(report.valid_count, valid, "round {round}");
        assert_eq!(report.unique_count, unique, "round {round}");
        assert_eq!(report.novel_count, novel, "round {round}");

        // shuffling never changes the counts
        let mut shuffled = corpus.clone();
        shuffled.shuffle(&mut rng);
        let reshuffled = evaluate_corpus(&shuffled, &ref_keys, &ref_scaffolds);
        assert_eq!(reshuffled.valid_count, report.valid_count);
        assert_eq!(reshuffled.unique_count, report.unique_count);
        assert_eq!(reshuffled.novel_count, report.novel_count);
    }
    pass(9, "generation report containment + quadratic oracle");
}

fn naive_evaluation_oracle(
    corpus: &[String],
    reference: &[chemlex::CanonicalKey],
) -> (usize, usize, usize) {
    let mut valid = 0;
    let mut unique = 0;
    let mut novel = 0;
    let mut seen: Vec<chemlex::CanonicalKey> = Vec::new();
    for line in corpus {
        let Ok(g) = parse_smiles(line) else { continue };
        let Ok(key) = canonical_key(&g) else { continue };
        valid += 1;
        if seen.contains(&key) {
            continue;
        }
        unique += 1;
        if !reference.contains(&key) {
            novel += 1;
        }
        seen.push(key);
    }
    (valid, unique, novel)
}

// ---------------------------------------------------------------- 11

#[test]
fn criterion_11_throughput() {
    let corpus = synth::corpus(0xbcd, 100_000);
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();

    let started = Instant::now();
    single.install(|| {
        let (kept, report) = standardize_corpus(&corpus);
        assert_eq!(report.input_count, 100_000);
        assert!(report.kept > 50_000);
        assert!(kept.len() == report.kept);

        let mut rejected = 0usize;
        for line in &corpus {
            if !validate(line, Mode::Full).is_valid() {
                rejected += 1;
            }
        }
        assert_eq!(rejected, 0, "synthetic corpus must be fully valid");

        let mut token_total = 0usize;
        for line in &corpus {
            token_total += char_tokens(line).len();
        }
        assert!(token_total > 100_000);
    });
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < 60.0,
        "standardize+validate+tokenize took {elapsed:.1}s"
    );
    pass(11, "single-thread throughput on 100k lines");
}
