//! Experiment configuration: defaults, key=value config files, and the
//! caps every run obeys. Command-line flags override file values.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use ekc_core::field::FieldElement;

pub const X_CAP: u64 = 10_000_000;
pub const Q_CAP: u64 = 1_000;
pub const Q_MIN: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default, Clone)]
pub struct FileConfig(HashMap<String, String>);

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<FileConfig> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut map = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("config line {} is not key=value: {line}", lineno + 1);
            };
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(FileConfig(map))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

/// Accepts either a squarefree negative d or a fundamental discriminant
/// (so -20 means the field of discriminant -20, i.e. d = -5).
pub fn normalize_d(value: i64) -> Result<i64> {
    if value >= 0 {
        bail!("d must be negative, got {value}");
    }
    if is_squarefree(value) {
        return Ok(value);
    }
    if value % 4 == 0 {
        let q = value / 4;
        if is_squarefree(q) && q.rem_euclid(4) != 1 {
            return Ok(q);
        }
    }
    bail!("{value} is neither a squarefree d nor a fundamental discriminant")
}

fn is_squarefree(n: i64) -> bool {
    let n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

pub fn parse_d_list(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let v: i64 = part
            .trim()
            .parse()
            .with_context(|| format!("bad d value {part}"))?;
        out.push(normalize_d(v)?);
    }
    if out.is_empty() {
        bail!("empty d list");
    }
    Ok(out)
}

pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|p| parse_number(p.trim()).map(|x| x as u64))
        .collect()
}

/// Accepts 1000000, 1e6, 2.5e3.
pub fn parse_number(s: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .with_context(|| format!("bad numeric value {s}"))?;
    if !v.is_finite() || v < 0.0 {
        bail!("value must be a nonnegative finite number, got {s}");
    }
    Ok(v)
}

/// Field element given as "x" or "x,y" meaning x + y*omega.
pub fn parse_element(s: &str) -> Result<FieldElement> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [x] => Ok(FieldElement::new(x.trim().parse()?, 0)),
        [x, y] => Ok(FieldElement::new(x.trim().parse()?, y.trim().parse()?)),
        _ => bail!("element must be x or x,y"),
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub d_values: Vec<i64>,
    pub q_grid: Vec<u64>,
    pub user_x: Option<u64>,
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_grid.is_empty() {
            bail!("at least one Q value required");
        }
        if self.threads > 4096 {
            bail!("threads capped at 4096");
        }
        if let Some(out) = &self.out {
            if out.as_os_str().is_empty() {
                bail!("empty output path");
            }
        }
        for &q in &self.q_grid {
            if !(Q_MIN..=Q_CAP).contains(&q) {
                bail!("Q must lie in [{Q_MIN}, {Q_CAP}], got {q}");
            }
        }
        if let Some(x) = self.user_x {
            if x > X_CAP {
                bail!("x exceeds the cap {X_CAP}");
            }
            for &q in &self.q_grid {
                if x < q * q {
                    bail!("x = {x} below Q^2 = {} (estimator sanity)", q * q);
                }
            }
        }
        Ok(())
    }

    /// Truncation rule: x = max(min(Q^4, cap), user x), capped.
    pub fn x_for(&self, q: u64) -> u64 {
        let q4 = q.saturating_pow(4).min(X_CAP);
        q4.max(self.user_x.unwrap_or(0)).min(X_CAP)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_normalization() {
        assert_eq!(normalize_d(-5).unwrap(), -5);
        assert_eq!(normalize_d(-20).unwrap(), -5);
        assert_eq!(normalize_d(-4).unwrap(), -1);
        assert_eq!(normalize_d(-7).unwrap(), -7);
        assert!(normalize_d(-12).is_err()); // -12/4 = -3 = 1 mod 4: not fundamental
        assert!(normalize_d(-9).is_err());
        assert!(normalize_d(5).is_err());
    }

    #[test]
    fn numbers_and_lists() {
        assert_eq!(parse_number("1e6").unwrap(), 1_000_000.0);
        assert_eq!(parse_u64_list("50,100").unwrap(), vec![50, 100]);
        assert_eq!(parse_d_list("-1,-3,-20").unwrap(), vec![-1, -3, -5]);
    }

    #[test]
    fn x_rule() {
        let cfg = ExperimentConfig {
            d_values: vec![-1],
            q_grid: vec![50, 100],
            user_x: Some(1_000_000),
            threads: 0,
            out: None,
            format: Format::Csv,
        };
        cfg.validate().unwrap();
        assert_eq!(cfg.x_for(50), 6_250_000);
        assert_eq!(cfg.x_for(100), X_CAP);
        assert_eq!(cfg.x_for(30), 1_000_000); // 30^4 = 810k < user x
    }
}
