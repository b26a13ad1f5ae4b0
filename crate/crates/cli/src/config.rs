//! Suite configuration in a flat `key = value` text format.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Largest chain degree the suites accept.
pub const N_MAX_LIMIT: usize = 6;

/// Known suites, in the order `all` runs them.
pub const SUITES: [&str; 10] = ["signs", "xext", "cocycles", "index", "duhamel", "comb", "heat", "thm412", "main", "sphere"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest chain degree for randomized chain and heat checks.
    pub n_max: usize,
    /// Largest `n` for exhaustive enumeration of index classes.
    pub comb_max: usize,
    /// Matrix gradings `(p, q)` used by the model suites.
    pub dims: Vec<(usize, usize)>,
    /// Exterior generators of the matrix model.
    pub k: usize,
    pub t_grid: Vec<f64>,
    pub s_grid: Vec<f64>,
    /// Random instances per property in the sign-calculus suites.
    pub samples: usize,
    /// Independent seeds for the model-based suites.
    pub seeds: usize,
    /// Per-suite tolerance overrides.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20_240_601,
            n_max: 4,
            comb_max: 10,
            dims: vec![(1, 1), (2, 1), (2, 2), (3, 3), (4, 4)],
            k: 2,
            t_grid: vec![0.5, 1.0, 2.0],
            s_grid: vec![0.5, 1.0, 1.5],
            samples: 500,
            seeds: 5,
            tolerances: BTreeMap::new(),
        }
    }
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, CliError> {
    v.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| CliError::Config(format!("{key}: cannot parse `{s}`"))))
        .collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim().parse::<T>().map_err(|_| CliError::Config(format!("{key}: cannot parse `{v}`")))
}

impl SuiteConfig {
    /// Parses `key = value` lines; `#` starts a comment. Unknown keys are
    /// errors. Keys: `seed`, `n_max`, `comb_max`, `dims` (`2x1,3x3`), `k`,
    /// `t_grid`, `s_grid`, `samples`, `seeds`, `tol.<suite>`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = SuiteConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "seed" => self.seed = parse_one(key, value)?,
            "n_max" => self.n_max = parse_one(key, value)?,
            "comb_max" => self.comb_max = parse_one(key, value)?,
            "k" => self.k = parse_one(key, value)?,
            "samples" => self.samples = parse_one(key, value)?,
            "seeds" => self.seeds = parse_one(key, value)?,
            "t_grid" => self.t_grid = parse_list(key, value)?,
            "s_grid" => self.s_grid = parse_list(key, value)?,
            "dims" => {
                self.dims = value
                    .split(',')
                    .map(|d| {
                        let (p, q) = d
                            .trim()
                            .split_once('x')
                            .ok_or_else(|| CliError::Config(format!("dims: expected PxQ, got `{d}`")))?;
                        Ok((parse_one("dims", p)?, parse_one("dims", q)?))
                    })
                    .collect::<Result<_, CliError>>()?
            }
            _ => match key.strip_prefix("tol.") {
                Some(suite) if SUITES.contains(&suite) => {
                    self.tolerances.insert(suite.to_string(), parse_one(key, value)?);
                }
                _ => return Err(CliError::Config(format!("unknown key `{key}`"))),
            },
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_max > N_MAX_LIMIT {
            return Err(CliError::Config(format!("n_max = {} exceeds {N_MAX_LIMIT}", self.n_max)));
        }
        if self.comb_max > 12 {
            return Err(CliError::Config(format!("comb_max = {} exceeds 12", self.comb_max)));
        }
        if !self.k.is_multiple_of(2) || self.k > 8 {
            return Err(CliError::Config(format!("k = {} must be even and at most 8", self.k)));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&(p, q)| p + q == 0 || p + q > 64) {
            return Err(CliError::Config("dims must be nonempty with 1 ≤ p + q ≤ 64".into()));
        }
        if self.t_grid.iter().any(|&t| t <= 0.0 || !t.is_finite()) || self.t_grid.is_empty() {
            return Err(CliError::Config("t_grid must hold positive times".into()));
        }
        if self.s_grid.is_empty() || self.s_grid.iter().any(|s| !s.is_finite()) {
            return Err(CliError::Config("s_grid must be nonempty and finite".into()));
        }
        if self.samples == 0 || self.seeds == 0 {
            return Err(CliError::Config("samples and seeds must be positive".into()));
        }
        for (suite, tol) in &self.tolerances {
            if *tol <= 0.0 || !tol.is_finite() {
                return Err(CliError::Config(format!("tolerance for {suite} must be positive")));
            }
        }
        Ok(())
    }

    /// Tolerance for `suite`: the override if present, else `default`.
    pub fn tol(&self, suite: &str, default: f64) -> f64 {
        self.tolerances.get(suite).copied().unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_keys() {
        let cfg = SuiteConfig::parse("seed = 7\n# comment\nn_max=3\ndims = 2x1, 3x3\nt_grid=0.5,1\ntol.heat = 1e-7\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.n_max, 3);
        assert_eq!(cfg.dims, vec![(2, 1), (3, 3)]);
        assert_eq!(cfg.t_grid, vec![0.5, 1.0]);
        assert_eq!(cfg.tol("heat", 1.0), 1e-7);
        assert_eq!(cfg.tol("index", 2.0), 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SuiteConfig::parse("n_max = 7").is_err());
        assert!(SuiteConfig::parse("bogus = 1").is_err());
        assert!(SuiteConfig::parse("tol.heat = -1").is_err());
        assert!(SuiteConfig::parse("seed").is_err());
        assert!(SuiteConfig::parse("k = 3").is_err());
    }
}
