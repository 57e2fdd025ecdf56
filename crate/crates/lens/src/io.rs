//! Approximation-set file format.
//!
//! UTF-8 CSV with a comment header declaring the objectives:
//!
//! ```text
//! # objectives: Z1:max,Z2:max,Z3:min
//! # instance: momkp-C-n100-s7        (optional)
//! 45,68,85
//! 6,63,99|01101
//! ```
//!
//! Each data row carries exactly m comma-separated values; an optional
//! trailing `|` separator carries the decision bit-string. Rows with the
//! wrong arity are rejected with their line number.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::objective::{ObjectiveSpec, ObjectiveVector, Sense, Solution};
use crate::set::ApproximationSet;

const OBJECTIVES_PREFIX: &str = "# objectives:";
const INSTANCE_PREFIX: &str = "# instance:";

/// Parses a set from text. `default_instance_id` is used when the file does
/// not carry an `# instance:` line (typically the file stem).
pub fn parse_set(text: &str, default_instance_id: &str) -> Result<ApproximationSet> {
    let mut specs: Option<Vec<ObjectiveSpec>> = None;
    let mut instance_id = default_instance_id.to_string();
    let mut rows: Vec<Solution> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(OBJECTIVES_PREFIX) {
            let mut parsed = Vec::new();
            for field in rest.split(',') {
                let field = field.trim();
                let (name, sense) = field.rsplit_once(':').ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: format!("objective '{field}' must look like name:max or name:min"),
                })?;
                let sense = Sense::parse_token(sense.trim()).ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: format!("unknown sense '{sense}' (expected max or min)"),
                })?;
                parsed.push(ObjectiveSpec { name: name.trim().to_string(), sense });
            }
            specs = Some(parsed);
            continue;
        }
        if let Some(rest) = line.strip_prefix(INSTANCE_PREFIX) {
            instance_id = rest.trim().to_string();
            continue;
        }
        if line.starts_with('#') {
            continue;
        }

        let specs = specs.as_ref().ok_or_else(|| Error::Parse {
            line: lineno,
            message: "data row before '# objectives:' header".into(),
        })?;
        let (values_part, decision_part) = match line.split_once('|') {
            Some((v, d)) => (v, Some(d.trim())),
            None => (line, None),
        };
        let values: Vec<f64> = values_part
            .split(',')
            .map(|f| {
                f.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("bad value '{}'", f.trim()),
                })
            })
            .collect::<Result<_>>()?;
        if values.len() != specs.len() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {} values, got {}", specs.len(), values.len()),
            });
        }
        let objectives = ObjectiveVector::new(values)
            .map_err(|e| Error::Parse { line: lineno, message: e.to_string() })?;
        let decision = match decision_part {
            None => None,
            Some(bits) => Some(
                bits.chars()
                    .map(|ch| match ch {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        other => Err(Error::Parse {
                            line: lineno,
                            message: format!("bad decision bit '{other}'"),
                        }),
                    })
                    .collect::<Result<Vec<u8>>>()?,
            ),
        };
        rows.push(Solution { objectives, decision, origin: "file".into() });
    }

    let specs = specs.ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing '# objectives:' header".into(),
    })?;
    ApproximationSet::with_solutions(specs, instance_id, rows)
}

/// Serialises a set in the ingestion format. Values print with full
/// round-trip precision.
pub fn format_set(set: &ApproximationSet) -> String {
    let mut out = String::new();
    let header: Vec<String> =
        set.specs().iter().map(|s| format!("{}:{}", s.name, s.sense.token())).collect();
    let _ = writeln!(out, "{OBJECTIVES_PREFIX} {}", header.join(","));
    let _ = writeln!(out, "{INSTANCE_PREFIX} {}", set.instance_id());
    for sol in set.solutions() {
        let values: Vec<String> = sol.objectives.values().iter().map(|v| v.to_string()).collect();
        out.push_str(&values.join(","));
        if let Some(bits) = &sol.decision {
            out.push('|');
            for &b in bits {
                out.push(if b == 0 { '0' } else { '1' });
            }
        }
        out.push('\n');
    }
    out
}

/// Reads a set file; the instance id defaults to the file stem.
pub fn read_set_file(path: &Path) -> Result<ApproximationSet> {
    let text = std::fs::read_to_string(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("set");
    parse_set(&text, stem)
}

/// Writes a set file atomically (temp file + rename).
pub fn write_set_file(set: &ApproximationSet, path: &Path) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, format_set(set))?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_set() {
        let text = "# objectives: Z1:max,Z2:min\n1,2\n3.5,4\n";
        let set = parse_set(text, "fallback").unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.instance_id(), "fallback");
        assert_eq!(set.specs()[1].sense, Sense::Minimise);
        assert_eq!(set.solutions()[1].objectives.values(), &[3.5, 4.0]);
    }

    #[test]
    fn parse_instance_id_and_decision_bits() {
        let text = "# objectives: Z1:max,Z2:max\n# instance: run-7\n1,2|0110\n";
        let set = parse_set(text, "fallback").unwrap();
        assert_eq!(set.instance_id(), "run-7");
        assert_eq!(set.solutions()[0].decision, Some(vec![0, 1, 1, 0]));
    }

    #[test]
    fn wrong_arity_is_rejected_with_line_number() {
        let text = "# objectives: Z1:max,Z2:max\n1,2\n1,2,3\n";
        match parse_set(text, "x") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_value_and_missing_header_are_rejected() {
        assert!(matches!(
            parse_set("# objectives: A:max,B:max\n1,x\n", "t"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_set("1,2\n", "t"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_set("", "t"), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn round_trip_preserves_everything() {
        let text = "# objectives: a:max,b:min\n# instance: rt\n0.1,2\n-3,4.25|101\n";
        let set = parse_set(text, "x").unwrap();
        let again = parse_set(&format_set(&set), "y").unwrap();
        assert_eq!(set, again);
    }
}
