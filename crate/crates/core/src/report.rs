//! Tabular output: CSV with 12 significant digits and JSON of the form
//! `{"config": ..., "rows": [...]}`.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation when the decimal exponent is below -4 or at least 12.
pub fn format_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Named columns of optional numbers; `None` is an empty CSV field and
/// `null` in JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    /// Panics if the row length differs from the number of columns.
    pub fn push(&mut self, row: Vec<Option<f64>>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Option<f64>>] {
        &self.rows
    }

    /// Values of one column, `None` if the column does not exist.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|&c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|v| v.map(format_g12).unwrap_or_default()).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    pub fn to_json<C: Serialize>(&self, config: &C) -> serde_json::Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(&c, v)| (c.to_string(), v.map_or(Value::Null, Value::from)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({ "config": config, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_matches_printf() {
        let cases = [
            (0.5, "0.5"),
            (1.0, "1"),
            (0.499_915_958_164_528_1, "0.499915958165"),
            (1e-5, "1e-05"),
            (0.000_123_456_789_012_345, "0.000123456789012"),
            (123_456_789_012_345.0, "1.23456789012e+14"),
            (-2.5e-7, "-2.5e-07"),
            (100.0, "100"),
            (0.08000000000000002, "0.08"),
            (999_999_999_999.9, "1e+12"),
            (0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g12(x), want, "{x:e}");
        }
    }

    #[test]
    fn csv_and_json_layout() {
        let mut t = Table::new(vec!["x", "y"]);
        t.push(vec![Some(0.1), None]);
        t.push(vec![Some(0.2), Some(1.0 / 3.0)]);
        assert_eq!(t.to_csv(), "x,y\n0.1,\n0.2,0.333333333333\n");
        let json: Value = serde_json::from_str(&t.to_json(&serde_json::json!({"k": 1})).unwrap()).unwrap();
        assert_eq!(json["config"]["k"], 1);
        assert!(json["rows"][0]["y"].is_null());
        assert_eq!(json["rows"][1]["x"], 0.2);
        assert_eq!(t.column("y").unwrap()[1], Some(1.0 / 3.0));
    }
}
