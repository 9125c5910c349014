//! File plumbing: corpus reading, atomic writes, and run manifests.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::CliError;

/// Read a SMILES/text corpus: one entry per line, blank lines and lines
/// starting with `#` ignored.
pub fn read_corpus(path: &Path) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_string())
        .collect())
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

static WRITE_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Write atomically: temp file in the same directory, then rename.
/// Partial outputs never persist.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let serial = WRITE_COUNTER.fetch_add(1, Ordering::Relaxed);
    let mut tmp = path.to_path_buf();
    tmp.set_extension(format!("tmp.{}.{serial}", std::process::id()));
    fs::write(&tmp, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| CliError::Io(format!("cannot rename into {}: {e}", path.display())))?;
    Ok(())
}

fn sha256_hex(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Io(format!("cannot digest {}: {e}", path.display())))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Run manifest: configuration echo, version, and input digests. The
/// timestamp is the single non-reproducible field.
pub fn write_manifest(
    manifest_path: &Path,
    subcommand: &str,
    config: serde_json::Value,
    inputs: &[&Path],
) -> Result<(), CliError> {
    let digests: Result<Vec<serde_json::Value>, CliError> = inputs
        .iter()
        .map(|p| {
            Ok(serde_json::json!({
                "path": p.display().to_string(),
                "sha256": sha256_hex(p)?,
            }))
        })
        .collect();
    let manifest = serde_json::json!({
        "tool": "chemlex",
        "version": env!("CARGO_PKG_VERSION"),
        "subcommand": subcommand,
        "config": config,
        "inputs": digests?,
        "timestamp_unix": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    });
    write_atomic(
        manifest_path,
        &format!("{}\n", serde_json::to_string_pretty(&manifest).unwrap()),
    )
}

/// Default manifest path: `<output>.manifest.json`.
pub fn manifest_path_for(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    output.with_file_name(name)
}
