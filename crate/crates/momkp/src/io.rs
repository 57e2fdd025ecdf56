//! Plain-text instance format:
//!
//! ```text
//! MOMKP n m p kind seed
//! W1 W2 ... Wm
//! w1 ... wm c1 ... cp        (one line per item)
//! ```
//!
//! All values are space-separated decimal integers. The reader validates the
//! structural shape and the per-family value invariants.

use std::path::Path;

use crate::instance::{MomkpInstance, SetKind};
use crate::{Error, Result};

/// Serialises an instance in the plain-text format.
pub fn format_instance(inst: &MomkpInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "MOMKP {} {} {} {} {}\n",
        inst.num_items(),
        inst.num_weights(),
        inst.num_profits(),
        inst.kind().token(),
        inst.seed()
    ));
    let caps: Vec<String> = inst.capacities().iter().map(|c| c.to_string()).collect();
    out.push_str(&caps.join(" "));
    out.push('\n');
    for item in 0..inst.num_items() {
        let mut fields: Vec<String> = inst.weights(item).iter().map(|w| w.to_string()).collect();
        fields.extend(inst.profits(item).iter().map(|c| c.to_string()));
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

/// Writes an instance file atomically (temp file + rename).
pub fn write_instance_file(inst: &MomkpInstance, path: &Path) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, format_instance(inst))?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Parses an instance and validates the family invariants.
pub fn parse_instance(text: &str) -> Result<MomkpInstance> {
    let mut lines = text.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, message: "empty file".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "MOMKP" {
        return Err(Error::Parse {
            line: 1,
            message: "expected header 'MOMKP n m p kind seed'".into(),
        });
    }
    let n: usize = parse_field(fields[1], 1, "n")?;
    let m: usize = parse_field(fields[2], 1, "m")?;
    let p: usize = parse_field(fields[3], 1, "p")?;
    let kind = SetKind::parse_token(fields[4]).ok_or_else(|| Error::Parse {
        line: 1,
        message: format!("unknown set kind '{}'", fields[4]),
    })?;
    let seed: u64 = parse_field(fields[5], 1, "seed")?;

    let (_, caps_line) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 2, message: "missing capacities line".into() })?;
    let capacities: Vec<u64> = caps_line
        .split_whitespace()
        .map(|f| parse_field(f, 2, "capacity"))
        .collect::<Result<_>>()?;
    if capacities.len() != m {
        return Err(Error::Parse {
            line: 2,
            message: format!("expected {m} capacities, got {}", capacities.len()),
        });
    }

    let mut weights = Vec::with_capacity(n);
    let mut profits = Vec::with_capacity(n);
    for item in 0..n {
        let (idx, line) = lines.next().ok_or_else(|| Error::Parse {
            line: 3 + item,
            message: format!("missing item line {} of {n}", item + 1),
        })?;
        let lineno = idx + 1;
        let values: Vec<u32> = line
            .split_whitespace()
            .map(|f| parse_field(f, lineno, "value"))
            .collect::<Result<_>>()?;
        if values.len() != m + p {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {} values, got {}", m + p, values.len()),
            });
        }
        weights.push(values[..m].to_vec());
        profits.push(values[m..].to_vec());
    }
    if let Some((idx, trailing)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Parse {
            line: idx + 1,
            message: format!("unexpected trailing content '{trailing}'"),
        });
    }

    let inst = MomkpInstance::new(capacities, weights, profits, kind, seed)?;
    validate_family_invariants(&inst)?;
    Ok(inst)
}

/// Reads and validates an instance file.
pub fn read_instance_file(path: &Path) -> Result<MomkpInstance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

fn parse_field<T: std::str::FromStr>(field: &str, line: usize, what: &str) -> Result<T> {
    field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("bad {what} '{field}'"),
    })
}

/// Checks the value-level invariants of the generated families.
fn validate_family_invariants(inst: &MomkpInstance) -> Result<()> {
    let kind = inst.kind();
    for item in 0..inst.num_items() {
        let w = inst.weights(item);
        let c = inst.profits(item);
        match kind {
            SetKind::A | SetKind::B | SetKind::C | SetKind::D => {
                if w.iter().any(|&v| !(1..=1000).contains(&v)) {
                    return Err(Error::InvalidInstance(format!(
                        "set {}: item {item} has a weight outside [1,1000]",
                        kind.token()
                    )));
                }
                if c.iter().any(|&v| !(1..=1000).contains(&v)) {
                    return Err(Error::InvalidInstance(format!(
                        "set {}: item {item} has a profit outside [1,1000]",
                        kind.token()
                    )));
                }
            }
            SetKind::X => {
                if c.iter().any(|&v| v > 1000) {
                    return Err(Error::InvalidInstance(format!(
                        "set X: item {item} has a profit outside [0,1000]"
                    )));
                }
            }
            SetKind::External => {}
        }
        match kind {
            SetKind::B => {
                for k in 1..c.len() {
                    if (c[k] as i64 - c[k - 1] as i64).abs() > 100 {
                        return Err(Error::InvalidInstance(format!(
                            "set B: item {item} breaks the +/-100 profit chain at k={}",
                            k + 1
                        )));
                    }
                }
            }
            SetKind::C | SetKind::D => {
                for k in 1..c.len() {
                    let sum = c[k] as i64 + c[k - 1] as i64;
                    if !(900..=1100).contains(&sum) {
                        return Err(Error::InvalidInstance(format!(
                            "set {}: item {item} has c{}+c{} = {sum} outside [900,1100]",
                            kind.token(),
                            k + 1,
                            k
                        )));
                    }
                }
            }
            SetKind::X => {
                let expect = [
                    c[0] + c[1] + c[2],
                    c[1] + c[2] + c[3],
                    c[0] + c[2] + c[3],
                    c[0] + c[1] + c[3],
                ];
                if w != expect {
                    return Err(Error::InvalidInstance(format!(
                        "set X: item {item} weights are not profit sums"
                    )));
                }
            }
            _ => {}
        }
    }
    Ok(())
}
