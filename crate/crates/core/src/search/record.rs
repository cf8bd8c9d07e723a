//! Text serialization of scan records.
//!
//! Triple columns: `a,b,c,rad_abc,rad_bc,quality,passes_condition,kappa_demand`
//! where `kappa_demand` is the preliminary-bound demand.
//!
//! Quadruple columns: `x1,x2,x3,x4,H,min_i,min_j,min_sum,R,passes_hypothesis,kappa_demand`
//! where `kappa_demand` is the abcd demand, empty when the hypothesis fails.
//!
//! Integers are written exactly and reals via [`fmt_real`]. JSONL uses the
//! same field names with every number as a JSON string.

use serde::{Deserialize, Serialize};

pub const TRIPLE_COLUMNS: [&str; 8] = [
    "a",
    "b",
    "c",
    "rad_abc",
    "rad_bc",
    "quality",
    "passes_condition",
    "kappa_demand",
];

pub const QUADRUPLE_COLUMNS: [&str; 11] = [
    "x1",
    "x2",
    "x3",
    "x4",
    "H",
    "min_i",
    "min_j",
    "min_sum",
    "R",
    "passes_hypothesis",
    "kappa_demand",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordFormat {
    Csv,
    Jsonl,
    Human,
}

/// A real to 12 significant digits, positional for moderate exponents and
/// scientific otherwise, trailing zeros removed.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if x < 0.0 { "-" } else { "" };

    if !(-6..=14).contains(&exp) {
        let m = trim_fraction(mantissa);
        return format!("{sign}{m}e{exp}");
    }
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{}", trim_fraction(&body))
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One record as ordered `(column, value)` cells; `None` is a missing value.
pub type Cells = Vec<(&'static str, Option<Cell>)>;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> &str {
        match self {
            Cell::Text(s) => s,
            Cell::Bool(true) => "true",
            Cell::Bool(false) => "false",
        }
    }
}

pub fn csv_header(columns: &[&str]) -> String {
    let mut s = columns.join(",");
    s.push('\n');
    s
}

/// Appends one record in `format` to `out`.
pub fn render(format: RecordFormat, cells: &Cells, out: &mut String) {
    match format {
        RecordFormat::Csv => {
            for (k, (_, v)) in cells.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                if let Some(v) = v {
                    out.push_str(v.csv());
                }
            }
        }
        RecordFormat::Jsonl => {
            // Written field by field to keep the column order.
            out.push('{');
            for (k, (name, v)) in cells.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let value = match v {
                    None => serde_json::Value::Null,
                    Some(Cell::Text(s)) => serde_json::Value::String(s.clone()),
                    Some(Cell::Bool(b)) => serde_json::Value::Bool(*b),
                };
                out.push_str(&serde_json::Value::String((*name).to_string()).to_string());
                out.push(':');
                out.push_str(&value.to_string());
            }
            out.push('}');
        }
        RecordFormat::Human => {
            for (k, (name, v)) in cells.iter().enumerate() {
                if k > 0 {
                    out.push_str("  ");
                }
                out.push_str(name);
                out.push('=');
                out.push_str(v.as_ref().map_or("-", Cell::csv));
            }
        }
    }
    out.push('\n');
}
