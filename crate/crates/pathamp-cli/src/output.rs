//! Canonical output formats. CSV floats use 17 significant digits so every
//! f64 round-trips exactly and re-emission after parsing is byte-identical.

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// Canonical float rendering: scientific, 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render a table as CSV with the given header line.
pub fn emit_csv(header: &str, rows: &[Vec<f64>]) -> String {
    let mut out = String::with_capacity(16 + rows.len() * 26 * 2);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            out.push_str(&format_float(*v));
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Parse CSV emitted by [`emit_csv`] back into header plus rows.
pub fn parse_csv(text: &str) -> Result<(String, Vec<Vec<f64>>), CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::validation("empty CSV"))?
        .to_string();
    let width = header.split(',').count();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|cell| {
                cell.parse::<f64>().map_err(|e| {
                    CliError::validation(format!("CSV row {}: bad number '{cell}': {e}", i + 2))
                })
            })
            .collect::<Result<_, _>>()?;
        if row.len() != width {
            return Err(CliError::validation(format!(
                "CSV row {}: expected {} columns, got {}",
                i + 2,
                width,
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

/// One diffraction peak in the JSON summary.
#[derive(Debug, Clone, Serialize)]
pub struct PeakOut {
    pub theta_deg: f64,
    pub intensity: f64,
    pub order: u32,
}

/// JSON summary of a run: peaks, the resolved configuration, and a flat map
/// of named scalar checks.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub peaks: Vec<PeakOut>,
    pub config_echo: Value,
    pub checks: serde_json::Map<String, Value>,
}

impl Summary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_the_canonical_format() {
        for v in [
            0.0,
            1.0,
            -1.0,
            std::f64::consts::PI,
            6.582119569e-8,
            2.3723078450492577e-3,
            1.0e300,
            5.0e-324,
        ] {
            let s = format_float(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v} -> {s}");
        }
    }

    #[test]
    fn csv_reemission_is_byte_identical() {
        let rows = vec![
            vec![0.0, 1.0],
            vec![5.000571234567891, 0.123456789012345678],
            vec![90.0, 1.0e-30],
        ];
        let text = emit_csv("theta_deg,intensity", &rows);
        let (header, parsed) = parse_csv(&text).unwrap();
        let again = emit_csv(&header, &parsed);
        assert_eq!(text, again);
    }

    #[test]
    fn ragged_rows_are_rejected_with_position() {
        let err = parse_csv("a,b\n1.0,2.0\n3.0\n").unwrap_err();
        assert!(err.message.contains("row 3"), "{}", err.message);
    }

    #[test]
    fn summary_serialization_is_stable_and_sorted() {
        let mut checks = serde_json::Map::new();
        checks.insert("zeta".into(), 1.0.into());
        checks.insert("alpha".into(), 2.0.into());
        let s = Summary {
            peaks: vec![PeakOut {
                theta_deg: 5.0,
                intensity: 1.0,
                order: 1,
            }],
            config_echo: serde_json::json!({"kind": "cat"}),
            checks,
        };
        let text = s.to_json();
        let alpha = text.find("\"alpha\"").unwrap();
        let zeta = text.find("\"zeta\"").unwrap();
        assert!(alpha < zeta, "checks must serialize in sorted key order");
        assert_eq!(text, s.to_json());
    }
}
