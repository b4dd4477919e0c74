//! Run manifests: one JSON file per command recording seed, effective
//! parameters, and outputs. Only the `generated_at` key varies between
//! identical reruns; every other output is byte-identical.

use crate::CliResult;
use serde::Serialize;
use serde_json::json;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

pub fn write<P: Serialize>(
    out_dir: &Path,
    command: &str,
    seed: u64,
    params: &P,
    outputs: &[&str],
) -> CliResult<()> {
    let generated_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let manifest = json!({
        "command": command,
        "seed": seed,
        "params": params,
        "outputs": outputs,
        "generated_at": generated_at,
    });
    let path = out_dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(())
}
