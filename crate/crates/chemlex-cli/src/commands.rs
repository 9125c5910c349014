//! Subcommand implementations. Each writes its artifacts atomically and
//! finishes with a run manifest next to the first output.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use chemlex::evalharness::{plan_cv_random, plan_cv_scaffold, summarize, welch_t};
use chemlex::genmetrics::{evaluate_corpus, report_table};
use chemlex::graph::standardize_corpus;
use chemlex::scaffold::{
    murcko_scaffold, random_split, scaffold_set_jaccard, scaffold_split, split_plan_csv,
    zipf_fit, ScaffoldKey, SplitMode,
};
use chemlex::tokenize::{
    char_vocab, token_stats, train_bpe, vocab_jaccard, MergeList, Scheme, Tokenizer, Vocabulary,
};
use chemlex::validator::error_profile;
use chemlex::CanonicalKey;

use crate::io::{manifest_path_for, read_corpus, read_text, write_atomic, write_manifest};
use crate::{CliError, Command};

pub fn run(command: Command, manifest_override: Option<PathBuf>) -> Result<(), CliError> {
    let config = serde_json::to_value(&command).expect("command serializes");
    let name = config["subcommand"]
        .as_str()
        .expect("tagged enum")
        .to_string();
    let (first_output, inputs) = dispatch(&command)?;
    let manifest = manifest_override.unwrap_or_else(|| manifest_path_for(&first_output));
    let input_refs: Vec<&Path> = inputs.iter().map(|p| p.as_path()).collect();
    write_manifest(&manifest, &name, config, &input_refs)
}

/// Execute one subcommand; returns (first output path, input paths).
fn dispatch(command: &Command) -> Result<(PathBuf, Vec<PathBuf>), CliError> {
    match command {
        Command::Standardize { input, out, report } => {
            let lines = read_corpus(input)?;
            let (kept, counts) = standardize_corpus(&lines);
            write_atomic(out, &join_lines(&kept))?;
            write_atomic(
                report,
                &format!(
                    "{}\n",
                    serde_json::to_string_pretty(&counts).expect("report serializes")
                ),
            )?;
            Ok((out.clone(), vec![input.clone()]))
        }

        Command::Validate { input, out } => {
            let lines = read_corpus(input)?;
            let profile = error_profile(lines.iter().map(|s| s.as_str()));
            write_atomic(
                out,
                &format!("{}\n", serde_json::to_string_pretty(&profile.to_json()).unwrap()),
            )?;
            Ok((out.clone(), vec![input.clone()]))
        }

        Command::Errors { input, out, json } => {
            let lines = read_corpus(input)?;
            let profile = error_profile(lines.iter().map(|s| s.as_str()));
            write_atomic(out, &profile.to_csv())?;
            if let Some(json_path) = json {
                write_atomic(
                    json_path,
                    &format!("{}\n", serde_json::to_string_pretty(&profile.to_json()).unwrap()),
                )?;
            }
            Ok((out.clone(), vec![input.clone()]))
        }

        Command::TrainBpe {
            input,
            target_vocab,
            vocab_out,
            merges_out,
        } => {
            let lines = read_corpus(input)?;
            let (vocab, merges) =
                train_bpe(&lines, *target_vocab).map_err(|e| CliError::Domain(e.to_string()))?;
            write_atomic(vocab_out, &format!("{}\n", vocab.to_json()))?;
            write_atomic(merges_out, &merges.to_text())?;
            Ok((vocab_out.clone(), vec![input.clone()]))
        }

        Command::Encode {
            input,
            scheme,
            vocab,
            merges,
            max_len,
            pad,
            out,
        } => {
            let lines = read_corpus(input)?;
            let tokenizer = build_tokenizer(*scheme, vocab, merges, &lines)?;
            let mut rows = Vec::with_capacity(lines.len());
            for (lineno, line) in lines.iter().enumerate() {
                let seq = tokenizer.encode(line, *max_len, *pad).map_err(|e| {
                    CliError::Domain(format!("line {}: {e}", lineno + 1))
                })?;
                let row: Vec<String> = seq.ids.iter().map(|id| id.to_string()).collect();
                rows.push(row.join(" "));
            }
            write_atomic(out, &join_lines(&rows))?;
            let mut inputs = vec![input.clone()];
            inputs.extend(vocab.iter().cloned());
            inputs.extend(merges.iter().cloned());
            Ok((out.clone(), inputs))
        }

        Command::TokenStats {
            input,
            scheme,
            vocab,
            merges,
            out,
            freq_out,
        } => {
            let lines = read_corpus(input)?;
            let tokenizer = build_tokenizer(*scheme, vocab, merges, &lines)?;
            let stats =
                token_stats(&tokenizer, &lines).map_err(|e| CliError::Domain(e.to_string()))?;
            let summary = serde_json::json!({
                "scheme": scheme.as_str(),
                "lines": stats.lines,
                "skipped": stats.skipped,
                "mean_len": stats.mean_len,
                "median_len": stats.median_len,
                "distinct_tokens": stats.rank_frequency.len(),
            });
            write_atomic(out, &format!("{}\n", serde_json::to_string_pretty(&summary).unwrap()))?;
            if let Some(freq_path) = freq_out {
                let mut csv = String::from("rank,token,frequency\n");
                for (rank, (token, count)) in stats.rank_frequency.iter().enumerate() {
                    csv.push_str(&format!("{},{},{}\n", rank + 1, token, count));
                }
                write_atomic(freq_path, &csv)?;
            }
            let mut inputs = vec![input.clone()];
            inputs.extend(vocab.iter().cloned());
            inputs.extend(merges.iter().cloned());
            Ok((out.clone(), inputs))
        }

        Command::VocabJaccard { a, b, out } => {
            let va = load_vocab(a)?;
            let vb = load_vocab(b)?;
            let value = serde_json::json!({ "jaccard": vocab_jaccard(&va, &vb) });
            write_atomic(out, &format!("{}\n", serde_json::to_string_pretty(&value).unwrap()))?;
            Ok((out.clone(), vec![a.clone(), b.clone()]))
        }

        Command::Scaffold { input, out } => {
            let lines = read_corpus(input)?;
            let mut csv = String::from("smiles,scaffold_key\n");
            for (lineno, line) in lines.iter().enumerate() {
                let graph = chemlex::graph::parse_smiles(line)
                    .map_err(|e| CliError::Domain(format!("line {}: {e}", lineno + 1)))?;
                let key = murcko_scaffold(&graph)
                    .map_err(|e| CliError::Domain(format!("line {}: {e}", lineno + 1)))?;
                csv.push_str(&format!("{line},{key}\n"));
            }
            write_atomic(out, &csv)?;
            Ok((out.clone(), vec![input.clone()]))
        }

        Command::Split {
            input,
            mode,
            fractions,
            seed,
            out,
        } => {
            let lines = read_corpus(input)?;
            let fractions = parse_fractions(fractions)?;
            let plan = match mode {
                SplitMode::Scaffold => scaffold_split(&lines, fractions, *seed),
                SplitMode::Random => random_split(&lines, fractions, *seed),
            }
            .map_err(|e| CliError::Domain(e.to_string()))?;
            write_atomic(out, &split_plan_csv(&plan, &lines))?;
            Ok((out.clone(), vec![input.clone()]))
        }

        Command::Zipf { input, out, csv } => {
            let items = read_corpus(input)?;
            let fit = zipf_fit(items).map_err(|e| CliError::Domain(e.to_string()))?;
            write_atomic(out, &format!("{}\n", serde_json::to_string_pretty(&fit.to_json()).unwrap()))?;
            if let Some(csv_path) = csv {
                write_atomic(csv_path, &fit.to_csv())?;
            }
            Ok((out.clone(), vec![input.clone()]))
        }

        Command::ScaffoldJaccard { a, b, out } => {
            let set_a: HashSet<ScaffoldKey> = read_corpus(a)?
                .into_iter()
                .map(ScaffoldKey)
                .collect();
            let set_b: HashSet<ScaffoldKey> = read_corpus(b)?
                .into_iter()
                .map(ScaffoldKey)
                .collect();
            let value = serde_json::json!({ "jaccard": scaffold_set_jaccard(&set_a, &set_b) });
            write_atomic(out, &format!("{}\n", serde_json::to_string_pretty(&value).unwrap()))?;
            Ok((out.clone(), vec![a.clone(), b.clone()]))
        }

        Command::Index {
            input,
            keys_out,
            scaffolds_out,
        } => {
            let lines = read_corpus(input)?;
            let (keys, scaffolds) = chemlex::genmetrics::index_reference(&lines);
            let mut keys: Vec<String> = keys.into_iter().map(|k| k.0).collect();
            keys.sort();
            // the empty scaffold of acyclic molecules is a legitimate
            // set member but has no line representation; keep non-empty
            let mut scaffolds: Vec<String> = scaffolds
                .into_iter()
                .map(|s| s.0)
                .filter(|s| !s.is_empty())
                .collect();
            scaffolds.sort();
            write_atomic(keys_out, &join_lines(&keys))?;
            write_atomic(scaffolds_out, &join_lines(&scaffolds))?;
            Ok((keys_out.clone(), vec![input.clone()]))
        }

        Command::EvalGen {
            input,
            ref_keys,
            ref_scaffolds,
            out,
            csv,
            label,
            token_schemes,
        } => {
            let lines = read_corpus(input)?;
            let keys: HashSet<CanonicalKey> = read_corpus(ref_keys)?
                .into_iter()
                .map(CanonicalKey)
                .collect();
            let scaffolds: HashSet<ScaffoldKey> = read_corpus(ref_scaffolds)?
                .into_iter()
                .map(ScaffoldKey)
                .collect();
            let mut report = evaluate_corpus(&lines, &keys, &scaffolds);
            if let Some(schemes) = token_schemes {
                for scheme_name in schemes.split(',').filter(|s| !s.is_empty()) {
                    let scheme: Scheme = scheme_name
                        .parse()
                        .map_err(|e: String| CliError::Domain(e))?;
                    let tokenizer = build_tokenizer(scheme, &None, &None, &lines)?;
                    let stats = token_stats(&tokenizer, &lines)
                        .map_err(|e| CliError::Domain(e.to_string()))?;
                    report
                        .mean_token_len
                        .push((scheme.as_str().to_string(), stats.mean_len));
                }
            }
            write_atomic(
                out,
                &format!("{}\n", serde_json::to_string_pretty(&report.to_json()).unwrap()),
            )?;
            if let Some(csv_path) = csv {
                let (table, _) = report_table(&[(label.clone(), report)]);
                write_atomic(csv_path, &table)?;
            }
            Ok((
                out.clone(),
                vec![input.clone(), ref_keys.clone(), ref_scaffolds.clone()],
            ))
        }

        Command::CvPlan {
            count,
            input,
            mode,
            seed,
            out,
        } => {
            let plan = match (mode, count, input) {
                (SplitMode::Random, Some(n), _) => plan_cv_random(*n, *seed),
                (SplitMode::Random, None, Some(path)) => {
                    plan_cv_random(read_corpus(path)?.len(), *seed)
                }
                (SplitMode::Scaffold, _, Some(path)) => {
                    plan_cv_scaffold(&read_corpus(path)?, *seed)
                }
                (SplitMode::Random, None, None) => {
                    return Err(CliError::Domain(
                        "random cv-plan needs --count or --in".to_string(),
                    ))
                }
                (SplitMode::Scaffold, _, None) => {
                    return Err(CliError::Domain(
                        "scaffold cv-plan needs --in".to_string(),
                    ))
                }
            }
            .map_err(|e| CliError::Domain(e.to_string()))?;
            write_atomic(out, &format!("{}\n", plan.to_json()))?;
            Ok((out.clone(), input.iter().cloned().collect()))
        }

        Command::Metrics { input, out, csv } => {
            let rows = read_metric_rows(input)?;
            let mut grouped: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
            for row in &rows {
                grouped
                    .entry((row.run_id.clone(), row.metric.clone()))
                    .or_default()
                    .push(row.value);
            }
            let mut summaries = Vec::new();
            let mut csv_text = String::from("run_id,metric,n,mean,std,se\n");
            for ((run_id, metric), values) in &grouped {
                let s = summarize(values);
                summaries.push(serde_json::json!({
                    "run_id": run_id,
                    "metric": metric,
                    "n": s.n,
                    "mean": s.mean,
                    "std": s.std,
                    "se": s.se,
                }));
                csv_text.push_str(&format!(
                    "{},{},{},{:.6},{:.6},{:.6}\n",
                    run_id, metric, s.n, s.mean, s.std, s.se
                ));
            }
            write_atomic(
                out,
                &format!(
                    "{}\n",
                    serde_json::to_string_pretty(&serde_json::Value::Array(summaries)).unwrap()
                ),
            )?;
            if let Some(csv_path) = csv {
                write_atomic(csv_path, &csv_text)?;
            }
            Ok((out.clone(), vec![input.clone()]))
        }

        Command::Compare {
            input,
            metric,
            out,
            json,
        } => {
            let rows = read_metric_rows(input)?;
            let mut grouped: BTreeMap<String, Vec<f64>> = BTreeMap::new();
            for row in rows.iter().filter(|r| r.metric == *metric) {
                grouped.entry(row.run_id.clone()).or_default().push(row.value);
            }
            if grouped.len() < 2 {
                return Err(CliError::Domain(format!(
                    "need at least two run_ids with metric `{metric}`"
                )));
            }
            let labels: Vec<&String> = grouped.keys().collect();
            let mut csv_text = String::from("run_id");
            for l in &labels {
                csv_text.push(',');
                csv_text.push_str(l);
            }
            csv_text.push('\n');
            let mut cells = Vec::new();
            for a in &labels {
                csv_text.push_str(a);
                for b in &labels {
                    csv_text.push(',');
                    if a == b {
                        continue;
                    }
                    let cmp = welch_t(&grouped[*a], &grouped[*b])
                        .map_err(|e| CliError::Domain(format!("{a} vs {b}: {e}")))?;
                    csv_text.push_str(&format!("{:+.6}{}", cmp.mean_diff, cmp.stars.stars()));
                    cells.push(serde_json::json!({
                        "a": a,
                        "b": b,
                        "t": cmp.t,
                        "dof": cmp.dof,
                        "p": cmp.p,
                        "mean_diff": cmp.mean_diff,
                        "stars": cmp.stars.stars(),
                    }));
                }
                csv_text.push('\n');
            }
            write_atomic(out, &csv_text)?;
            if let Some(json_path) = json {
                write_atomic(
                    json_path,
                    &format!(
                        "{}\n",
                        serde_json::to_string_pretty(&serde_json::Value::Array(cells)).unwrap()
                    ),
                )?;
            }
            Ok((out.clone(), vec![input.clone()]))
        }
    }
}

fn join_lines(lines: &[String]) -> String {
    let mut out = String::new();
    for line in lines {
        out.push_str(line);
        out.push('\n');
    }
    out
}

fn parse_fractions(text: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Domain(format!("bad fractions `{text}`: {e}")))?;
    if parts.len() != 3 {
        return Err(CliError::Domain(format!(
            "fractions need three comma-separated values, got `{text}`"
        )));
    }
    Ok((parts[0], parts[1], parts[2]))
}

fn load_vocab(path: &Path) -> Result<Vocabulary, CliError> {
    Vocabulary::from_json(&read_text(path)?).map_err(|e| CliError::Domain(e.to_string()))
}

fn build_tokenizer(
    scheme: Scheme,
    vocab: &Option<PathBuf>,
    merges: &Option<PathBuf>,
    corpus: &[String],
) -> Result<Tokenizer, CliError> {
    let vocabulary = match (vocab, scheme) {
        (Some(path), _) => load_vocab(path)?,
        (None, Scheme::Char) => char_vocab(corpus),
        (None, Scheme::Ais) => {
            // derive the AIS vocabulary from the corpus tokens
            let mut tokens: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
            for line in corpus {
                if let Ok(line_tokens) = chemlex::tokenize::ais_tokens(line) {
                    tokens.extend(line_tokens);
                }
            }
            Vocabulary::from_tokens(tokens).map_err(|e| CliError::Domain(e.to_string()))?
        }
        (None, Scheme::Bpe) => {
            return Err(CliError::Domain(
                "bpe encoding needs --vocab and --merges".to_string(),
            ))
        }
    };
    let merge_list = match merges {
        Some(path) => {
            Some(MergeList::from_text(&read_text(path)?).map_err(|e| CliError::Domain(e.to_string()))?)
        }
        None if scheme == Scheme::Bpe => {
            return Err(CliError::Domain(
                "bpe encoding needs --vocab and --merges".to_string(),
            ))
        }
        None => None,
    };
    Tokenizer::new(scheme, vocabulary, merge_list).map_err(|e| CliError::Domain(e.to_string()))
}

#[derive(Debug)]
struct MetricRow {
    run_id: String,
    metric: String,
    value: f64,
}

/// Parse `run_id,fold,repeat,metric,value` rows; a header line is
/// skipped when present.
fn read_metric_rows(path: &Path) -> Result<Vec<MetricRow>, CliError> {
    let text = read_text(path)?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(|f| f.trim()).collect();
        if fields.len() != 5 {
            return Err(CliError::Domain(format!(
                "line {}: expected 5 comma-separated fields",
                lineno + 1
            )));
        }
        if lineno == 0 && fields[4].parse::<f64>().is_err() {
            continue; // header
        }
        let value = fields[4].parse::<f64>().map_err(|e| {
            CliError::Domain(format!("line {}: bad value `{}`: {e}", lineno + 1, fields[4]))
        })?;
        rows.push(MetricRow {
            run_id: fields[0].to_string(),
            metric: fields[3].to_string(),
            value,
        });
    }
    if rows.is_empty() {
        return Err(CliError::Domain("no metric rows in input".to_string()));
    }
    Ok(rows)
}
