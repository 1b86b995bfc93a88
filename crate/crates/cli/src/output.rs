//! Deterministic CSV/JSON emission. Floats are printed with 12 significant
//! digits through a single formatter so reruns are byte-identical.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// 12 significant digits; plain decimal in a sane range, scientific outside.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let a = v.abs();
    if (1e-4..1e12).contains(&a) {
        // significant digits = digits before the point (possibly <= 0 for
        // a < 1) plus the printed decimals
        let digits_before = a.log10().floor() as i32 + 1;
        let dec = (12 - digits_before).clamp(0, 16) as usize;
        format!("{v:.dec$}")
    } else {
        format!("{v:.11e}")
    }
}

pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            comments: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: &str) {
        self.comments.push(line.to_string());
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn write_output(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(p)?;
            f.write_all(content.as_bytes())
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(content.as_bytes())
        }
    }
}

/// Parses a CSV produced by `Table::to_csv` back into rows; round-trip
/// helper for tests and downstream loaders.
pub fn parse_csv(content: &str) -> (Vec<String>, Vec<String>, Vec<Vec<String>>) {
    let mut comments = Vec::new();
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for line in content.lines() {
        if let Some(c) = line.strip_prefix("# ") {
            comments.push(c.to_string());
        } else if header.is_empty() {
            header = line.split(',').map(str::to_string).collect();
        } else {
            rows.push(line.split(',').map(str::to_string).collect());
        }
    }
    (comments, header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1.00000000000");
        assert_eq!(fmt_sig(-0.1732867951399863), "-0.173286795140");
        assert_eq!(fmt_sig(123456.789), "123456.789000");
        assert!(fmt_sig(3.9e17).contains('e'));
    }

    #[test]
    fn csv_round_trip() {
        let mut t = Table::new(vec!["a", "b"]);
        t.comment("k=v");
        t.push(vec!["1".into(), "2".into()]);
        let s = t.to_csv();
        let (c, h, r) = parse_csv(&s);
        assert_eq!(c, vec!["k=v"]);
        assert_eq!(h, vec!["a", "b"]);
        assert_eq!(r, vec![vec!["1", "2"]]);
    }
}
