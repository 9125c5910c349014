//! `chemlex` — batch front end for SMILES corpus work: standardization,
//! validation, tokenization, scaffolds, and evaluation statistics.
//!
//! Exit codes: 0 success, 1 usage error, 2 input/output error, 3 domain
//! error (bad corpus, invalid configuration values).

mod commands;
mod io;

use std::path::PathBuf;

use clap::Parser;

use chemlex::scaffold::SplitMode;
use chemlex::tokenize::Scheme;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "chemlex", version, about = "chemical-language corpus toolkit")]
struct Cli {
    /// Worker threads (default: $CHEMLEX_PARALLEL, then all cores).
    /// Outputs never depend on this.
    #[arg(long, global = true)]
    parallel: Option<usize>,

    /// Manifest path (default: `<first output>.manifest.json`)
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand, serde::Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
enum Command {
    /// Standardize a corpus: largest fragment, kekulization gate,
    /// canonical dedup.
    Standardize {
        #[arg(long = "in")]
        input: PathBuf,
        /// Kept canonical SMILES, one per line
        #[arg(long)]
        out: PathBuf,
        /// JSON counts: input/kept/dropped per reason
        #[arg(long)]
        report: PathBuf,
    },
    /// Validate every line and write the error profile JSON.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Error-analysis artifacts: per-category CSV (and optional JSON).
    Errors {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Train a byte-pair-encoding vocabulary on a corpus.
    TrainBpe {
        #[arg(long = "in")]
        input: PathBuf,
        /// Total vocabulary size including the four specials
        #[arg(long)]
        target_vocab: usize,
        #[arg(long)]
        vocab_out: PathBuf,
        #[arg(long)]
        merges_out: PathBuf,
    },
    /// Encode a corpus to token ids, one space-separated row per line.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        scheme: Scheme,
        /// Vocabulary JSON (required for bpe; derived from the corpus
        /// for char/ais when omitted)
        #[arg(long)]
        vocab: Option<PathBuf>,
        /// Merge list (bpe only)
        #[arg(long)]
        merges: Option<PathBuf>,
        #[arg(long, default_value_t = 512)]
        max_len: usize,
        /// Pad/truncate every row to exactly max-len
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tokenized-length statistics and token rank-frequency table.
    TokenStats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        vocab: Option<PathBuf>,
        #[arg(long)]
        merges: Option<PathBuf>,
        /// Summary JSON
        #[arg(long)]
        out: PathBuf,
        /// Rank-frequency CSV
        #[arg(long)]
        freq_out: Option<PathBuf>,
    },
    /// Jaccard similarity of two vocabulary files.
    VocabJaccard {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Murcko scaffold key per molecule (CSV smiles,scaffold_key).
    Scaffold {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train/valid/test split (CSV smiles,scaffold_key,partition).
    Split {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        mode: SplitMode,
        #[arg(long, default_value = "0.8,0.1,0.1")]
        fractions: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank-frequency fit over items (one item per line).
    Zipf {
        #[arg(long = "in")]
        input: PathBuf,
        /// Fit JSON {slope, intercept, r2}
        #[arg(long)]
        out: PathBuf,
        /// Rank,frequency CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Jaccard similarity of two scaffold-key files (one key per line).
    ScaffoldJaccard {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build reference canonical-key and scaffold-key files.
    Index {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        keys_out: PathBuf,
        #[arg(long)]
        scaffolds_out: PathBuf,
    },
    /// Evaluate a generated corpus against reference indexes.
    EvalGen {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        ref_keys: PathBuf,
        #[arg(long)]
        ref_scaffolds: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// One-row CSV table
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value = "run")]
        label: String,
        /// Comma-separated schemes for mean tokenized length (e.g.
        /// `char,ais`)
        #[arg(long)]
        token_schemes: Option<String>,
    },
    /// Plan a repeated 5x5 cross-validation.
    CvPlan {
        /// Record count (random mode)
        #[arg(long)]
        count: Option<usize>,
        /// SMILES file (scaffold mode, or random mode line count)
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        mode: SplitMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize metric values (CSV run_id,fold,repeat,metric,value).
    Metrics {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Pairwise Welch comparisons between run_ids for one metric.
    Compare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        metric: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };

    let threads = cli
        .parallel
        .or_else(|| {
            std::env::var("CHEMLEX_PARALLEL")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("chemlex: cannot configure thread pool: {e}");
        std::process::exit(2);
    }

    match commands::run(cli.command, cli.manifest) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("chemlex: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
