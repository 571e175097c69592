//! Output rendering shared by all commands: exact rationals as strings in
//! JSON, aligned plain text for reading, and optional decimal
//! approximations behind the `--float` flag (never in JSON).

use num_traits::ToPrimitive;
use rank1eq::matrix::RatMatrix;
use rank1eq::rational::{format_rational, Rational};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Exact,
    Approximate,
}

impl Style {
    pub fn from_flag(float: bool) -> Self {
        if float {
            Style::Approximate
        } else {
            Style::Exact
        }
    }
}

pub fn scalar(r: &Rational, style: Style) -> String {
    match style {
        Style::Exact => format_rational(r),
        Style::Approximate => {
            let v = r.to_f64().unwrap_or(f64::NAN);
            format!("{v:.6}")
        }
    }
}

pub fn vector(v: &[Rational], style: Style) -> String {
    let parts: Vec<String> = v.iter().map(|r| scalar(r, style)).collect();
    format!("({})", parts.join(", "))
}

pub fn json_scalar(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn json_vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(json_scalar).collect())
}

pub fn json_matrix(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json_vector(m.row(i))).collect())
}

/// 1-based positions of the set bits, for reporting index sets.
pub fn json_indices(mask: &[bool]) -> Value {
    Value::Array(
        mask.iter()
            .enumerate()
            .filter(|(_, &on)| on)
            .map(|(i, _)| Value::Number((i as u64 + 1).into()))
            .collect(),
    )
}

pub fn indices_text(mask: &[bool]) -> String {
    let picked: Vec<String> = mask
        .iter()
        .enumerate()
        .filter(|(_, &on)| on)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    format!("{{{}}}", picked.join(", "))
}

pub fn matrix_text(m: &RatMatrix, style: Style, indent: &str) -> String {
    let mut widths = vec![0usize; m.cols()];
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let s = scalar(m.at(i, j), style);
                    widths[j] = widths[j].max(s.len());
                    s
                })
                .collect()
        })
        .collect();
    cells
        .iter()
        .map(|row| {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            format!("{indent}{}", line.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON tree"));
}
