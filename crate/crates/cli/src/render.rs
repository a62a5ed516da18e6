//! Output in JSON, CSV and plain text.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use parastacks_core::{BiTruncatedSeries, Polynomial, Ring, TruncatedSeries};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A rectangular table for CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn with_row(mut self, row: Vec<String>) -> Self {
        self.rows.push(row);
        self
    }

    /// Two-column table from key/value pairs.
    pub fn pairs(pairs: &[(&str, String)]) -> Self {
        let mut t = Table::new(&["key", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.to_string(), v.clone()]);
        }
        t
    }
}

/// What a command produced, in every output format, and whether all
/// checks it ran passed.
pub struct Output {
    pub json: Value,
    pub table: Table,
    pub text: String,
    pub ok: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).expect("in-memory write");
                for r in &self.table.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// A float with 17 significant digits and a `.` decimal point.
pub fn float17(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.0000000000000000".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..17).contains(&e) {
        format!("{:.*}", (16 - e) as usize, x)
    } else {
        format!("{:.16e}", x)
    }
}

/// Exact coefficients that flatten to CSV rows and print as text.
pub trait Coeff {
    /// Appends one row per nonzero leaf, prefixed by the indices so far.
    fn rows(&self, prefix: &mut Vec<String>, out: &mut Vec<Vec<String>>);
    /// Text with `vars[0]` as the outermost variable.
    fn text(&self, vars: &[&str]) -> String;
}

impl Coeff for BigInt {
    fn rows(&self, prefix: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        let mut r = prefix.clone();
        r.push(self.to_string());
        out.push(r);
    }
    fn text(&self, _: &[&str]) -> String {
        self.to_string()
    }
}

impl Coeff for BigRational {
    fn rows(&self, prefix: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        let mut r = prefix.clone();
        r.push(self.to_string());
        out.push(r);
    }
    fn text(&self, _: &[&str]) -> String {
        self.to_string()
    }
}

impl<R: Ring + Coeff> Coeff for Polynomial<R> {
    fn rows(&self, prefix: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            prefix.push(k.to_string());
            c.rows(prefix, out);
            prefix.pop();
        }
    }
    fn text(&self, vars: &[&str]) -> String {
        let (var, rest) = vars.split_first().expect("one variable per nesting level");
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let c = c.text(rest);
                let c = if rest.is_empty() { c } else { format!("({c})") };
                match k {
                    0 => c,
                    1 => format!("{c}*{var}"),
                    _ => format!("{c}*{var}^{k}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// CSV and text for a univariate series; `vars` are the main variable then
/// the coefficient variables.
pub fn series_table<R: Ring + Coeff>(s: &TruncatedSeries<R>, vars: &[&str]) -> (Table, String) {
    let mut header: Vec<&str> = vars.to_vec();
    header.push("coefficient");
    let mut t = Table::new(&header);
    let mut lines = Vec::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        c.rows(&mut vec![k.to_string()], &mut t.rows);
        lines.push(format!("{}^{k}: {}", vars[0], c.text(&vars[1..])));
    }
    (t, lines.join("\n"))
}

/// CSV and text for a bivariate series.
pub fn biseries_table<R: Ring + Coeff>(s: &BiTruncatedSeries<R>, vars: &[&str]) -> (Table, String) {
    let mut header: Vec<&str> = vars.to_vec();
    header.push("coefficient");
    let mut t = Table::new(&header);
    let mut lines = Vec::new();
    let (ns, nt) = s.orders();
    for i in 0..=ns {
        for j in 0..=nt {
            let c = s.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            let mut prefix = vec![i.to_string(), j.to_string()];
            c.rows(&mut prefix, &mut t.rows);
            lines.push(format!("{}^{i} {}^{j}: {}", vars[0], vars[1], c.text(&vars[2..])));
        }
    }
    (t, lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use parastacks_core::IntPolynomial;

    #[test]
    fn seventeen_digits() {
        assert_eq!(float17(0.0625), "0.062500000000000000");
        assert_eq!(float17(8.25), "8.2500000000000000");
        assert_eq!(float17(1e-9), "1.0000000000000001e-9");
        assert_eq!(float17(12345.678).replace('.', "").trim_start_matches('0').len(), 17);
    }

    #[test]
    fn nested_text() {
        let p = Polynomial::new(vec![IntPolynomial::from_i64s(&[8, 2]), IntPolynomial::from_i64s(&[1])]);
        assert_eq!(p.text(&["s", "a"]), "(8 + 2*a) + (1)*s");
    }
}
