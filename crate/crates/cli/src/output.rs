//! Output helpers: atomic writes, metadata blocks and shared parsing.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

pub const TOOL: &str = "pareto-lens";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Writes a file atomically (temp file in the same directory, then rename),
/// creating parent directories as needed.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Base metadata object embedded in every JSON output.
pub fn meta(entries: &[(&str, Value)]) -> Value {
    let mut object = serde_json::Map::new();
    object.insert("tool".into(), json!(TOOL));
    object.insert("version".into(), json!(VERSION));
    for (key, value) in entries {
        object.insert((*key).to_string(), value.clone());
    }
    Value::Object(object)
}

/// One-line metadata comment for CSV/SVG outputs.
pub fn meta_comment(details: &str) -> String {
    format!("{TOOL} v{VERSION}; {details}")
}

/// Emits a JSON document to a file, or pretty-printed to stdout when the
/// path is `-` or absent.
pub fn emit_json(path: Option<&Path>, doc: &Value) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(doc)?);
    match path {
        Some(p) if p.as_os_str() != "-" => write_atomic(p, &text),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses a 1-based objective list such as `1,3` into 0-based indices.
pub fn parse_objective_list(raw: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for field in raw.split(',') {
        let z: usize = field
            .trim()
            .parse()
            .with_context(|| format!("bad objective number '{}'", field.trim()))?;
        if z == 0 {
            bail!("objective numbers are 1-based");
        }
        out.push(z - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Loads an approximation-set file with a friendly error.
pub fn load_set(path: &Path) -> Result<pareto_lens::ApproximationSet> {
    pareto_lens::io::read_set_file(path)
        .with_context(|| format!("reading approximation set {}", path.display()))
}
