//! Deterministic rendering helpers: Laurent polynomials as sorted
//! exponent→coefficient maps, exact integers (JSON numbers when they fit
//! in i64, decimal strings otherwise), and the three output formats.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use dlhecke_core::dlchar::UniformVirtual;
use dlhecke_core::LaurentPoly;

use crate::words::render_word;

pub fn bigint_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(c.to_string()),
    }
}

/// `{"exp": coeff}` with exponents as string keys (sorted by the JSON map).
pub fn laurent_value(p: &LaurentPoly) -> Value {
    let mut m = Map::new();
    for (e, c) in p.iter() {
        m.insert(e.to_string(), bigint_value(c));
    }
    Value::Object(m)
}

/// A uniform virtual character: symbol key `ρ[word]` (or `ρ[word;a/b,...]`
/// for nontrivial character data) to its coefficient map.
pub fn uniform_value(u: &UniformVirtual) -> Value {
    let g = u.group();
    let mut m = Map::new();
    for ((w, theta), p) in u.iter() {
        let key = if theta.is_trivial() {
            render_word(g, *w)
        } else {
            let frac: Vec<String> = theta
                .nums
                .iter()
                .map(|n| format!("{n}/{}", theta.den))
                .collect();
            format!("{};{}", render_word(g, *w), frac.join(","))
        };
        m.insert(key, laurent_value(p));
    }
    Value::Object(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}


/// One renderable artifact: a JSON value plus tabular projections for the
/// csv/text formats.
pub struct Artifact {
    pub json: Value,
    pub table_header: Vec<String>,
    pub table_rows: Vec<Vec<String>>,
}

impl Artifact {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.table_header.join(","));
                out.push('\n');
                for row in &self.table_rows {
                    let escaped: Vec<String> = row
                        .iter()
                        .map(|cell| {
                            if cell.contains(',') || cell.contains('"') {
                                format!("\"{}\"", cell.replace('"', "\"\""))
                            } else {
                                cell.clone()
                            }
                        })
                        .collect();
                    out.push_str(&escaped.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Text => {
                let mut widths: Vec<usize> =
                    self.table_header.iter().map(|h| h.len()).collect();
                for row in &self.table_rows {
                    for (i, cell) in row.iter().enumerate() {
                        if i < widths.len() {
                            widths[i] = widths[i].max(cell.len());
                        }
                    }
                }
                let mut out = String::new();
                let fmt_row = |cells: &[String], widths: &[usize]| -> String {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{:<w$}", c, w = widths.get(i).copied().unwrap_or(0)))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                out.push_str(fmt_row(&self.table_header, &widths).trim_end());
                out.push('\n');
                for row in &self.table_rows {
                    out.push_str(fmt_row(row, &widths).trim_end());
                    out.push('\n');
                }
                out
            }
        }
    }
}
