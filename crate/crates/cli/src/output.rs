//! JSON and CSV writers. Floats are printed with 17 significant digits so
//! every value parses back to the same double.

use std::fmt::Write as _;
use std::path::Path;

use qrlab::harness::VerificationReport;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Indented JSON with every float as `{:.16e}`; non-finite floats become `null`.
pub fn to_json<S: Serialize>(value: &S) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n(' ', 2 * n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap_or(f64::NAN);
                let _ = write!(out, "{x:.16e}");
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

fn joined<V: std::fmt::Display>(map: &std::collections::BTreeMap<String, V>) -> String {
    map.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// One flat row per report.
pub fn write_csv(path: &Path, reports: &[VerificationReport]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record([
        "theorem_id",
        "applicable",
        "pass",
        "lhs",
        "rhs",
        "constant",
        "ratio",
        "angles",
        "radial",
        "params",
        "hypotheses",
        "diagnostics",
        "measured",
        "notes",
    ])
    .map_err(io)?;
    let num = |x: f64| format!("{x:.16e}");
    for r in reports {
        w.write_record([
            r.theorem_id.clone(),
            r.applicable.to_string(),
            r.pass.to_string(),
            num(r.lhs),
            num(r.rhs),
            num(r.constant),
            r.ratio.map(num).unwrap_or_default(),
            r.grid.angles.to_string(),
            r.grid.radial.to_string(),
            joined(&r.params.iter().map(|(k, v)| (k.clone(), num(*v))).collect()),
            joined(&r.hypotheses),
            joined(&r.diagnostics),
            joined(&r.measured.iter().map(|(k, v)| (k.clone(), num(*v))).collect()),
            r.notes.clone(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qrlab::harness::{GridMeta, VerificationReport};

    fn sample() -> VerificationReport {
        VerificationReport::new("sample", GridMeta { angles: 64, radial: 8 })
            .param("p", 1.5)
            .param("K", 1.0 / 3.0)
            .hypothesis("h", true)
            .measure("tiny", 1e-300)
            .measure("pi", std::f64::consts::PI)
            .compare(0.1 + 0.2, 0.7, 2.0f64.sqrt())
    }

    #[test]
    fn seventeen_digits() {
        let s = to_json(&sample()).unwrap();
        assert!(s.contains("3.0000000000000004e-1"), "{s}");
        assert!(s.contains("\"angles\": 64"));
    }

    #[test]
    fn roundtrip_exact() {
        let r = sample();
        let back: VerificationReport = serde_json::from_str(&to_json(&r).unwrap()).unwrap();
        assert_eq!(r, back);
        let list = vec![r.clone(), r];
        let back: Vec<VerificationReport> = serde_json::from_str(&to_json(&list).unwrap()).unwrap();
        assert_eq!(list, back);
    }

    #[test]
    fn csv_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        write_csv(&path, &[sample(), sample()]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("theorem_id,applicable,pass"));
    }
}
