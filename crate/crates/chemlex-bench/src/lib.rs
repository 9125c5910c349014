//! Shared fixtures for the benchmarks.

/// A reproducible benchmark corpus.
pub fn corpus(n: usize) -> Vec<String> {
    chemlex::synth::corpus(0xBE7C, n)
}
