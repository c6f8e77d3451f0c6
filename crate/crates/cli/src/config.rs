//! Run configuration: built-in defaults, an optional TOML file, the
//! `FIBCONTRACT_CACHE` variable and command-line flags, later sources
//! overriding earlier ones.

use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use clap::ValueEnum;
use serde::Deserialize;

use fibcontract::numtheory::DEFAULT_BUDGET;

/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "FIBCONTRACT_CACHE";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Default horizons of the commands that take one.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Horizons {
    /// `contract` rows.
    pub contract_n_max: u64,
    /// `report-asymptotics` sample points.
    pub asymptotics: Vec<u64>,
    /// Largest `x` for which `report-asymptotics` factors Fibonacci numbers
    /// (the e_p-sum and π_α rows); larger `x` get the lcm row only.
    pub asymptotics_factor_x_max: u64,
    /// Terms of the truncated Dirichlet series.
    pub series_terms: u64,
}

impl Default for Horizons {
    fn default() -> Self {
        Horizons {
            contract_n_max: 24,
            asymptotics: vec![1, 5, 10, 20, 30, 50, 60, 100, 150, 200],
            asymptotics_factor_x_max: 100,
            series_terms: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// No cache is read or written when unset.
    pub cache_path: Option<PathBuf>,
    /// Work units allowed per factorization.
    pub factor_budget: u64,
    pub horizons: Horizons,
    pub output_format: OutputFormat,
    /// Digits after the decimal point for emitted reals.
    pub precision: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_path: None,
            factor_budget: DEFAULT_BUDGET,
            horizons: Horizons::default(),
            output_format: OutputFormat::Csv,
            precision: 12,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layers alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub cache_path: Option<PathBuf>,
    pub factor_budget: Option<u64>,
    pub output_format: Option<OutputFormat>,
    pub precision: Option<usize>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Layers `file`, then `env_cache`, then `flags` over the defaults.
    pub fn resolve(file: Option<&Path>, env_cache: Option<PathBuf>, flags: Overrides) -> Result<Self> {
        let mut config = match file {
            Some(path) => Self::from_file(path)?,
            None => Config::default(),
        };
        if let Some(path) = env_cache.filter(|p| !p.as_os_str().is_empty()) {
            config.cache_path = Some(path);
        }
        if let Some(path) = flags.cache_path {
            config.cache_path = Some(path);
        }
        if let Some(budget) = flags.factor_budget {
            config.factor_budget = budget;
        }
        if let Some(format) = flags.output_format {
            config.output_format = format;
        }
        if let Some(precision) = flags.precision {
            config.precision = precision;
        }
        anyhow::ensure!(config.factor_budget > 0, "factor budget must be positive");
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_need_no_file() {
        let c = Config::resolve(None, None, Overrides::default()).unwrap();
        assert_eq!(c, Config::default());
        assert_eq!(c.precision, 12);
        assert_eq!(c.output_format, OutputFormat::Csv);
    }

    #[test]
    fn precedence() {
        let file = Config::from_toml("cache_path = \"from-file\"\nprecision = 6\n").unwrap();
        assert_eq!(file.cache_path, Some(PathBuf::from("from-file")));
        assert_eq!(file.horizons, Horizons::default());

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fibcontract.toml");
        std::fs::write(&path, "cache_path = \"from-file\"\nprecision = 6\n[horizons]\ncontract_n_max = 40\n").unwrap();

        let c = Config::resolve(Some(&path), None, Overrides::default()).unwrap();
        assert_eq!(c.cache_path, Some(PathBuf::from("from-file")));
        assert_eq!(c.horizons.contract_n_max, 40);

        let c = Config::resolve(Some(&path), Some("from-env".into()), Overrides::default()).unwrap();
        assert_eq!(c.cache_path, Some(PathBuf::from("from-env")));

        let flags = Overrides { cache_path: Some("from-flag".into()), precision: Some(3), ..Default::default() };
        let c = Config::resolve(Some(&path), Some("from-env".into()), flags).unwrap();
        assert_eq!(c.cache_path, Some(PathBuf::from("from-flag")));
        assert_eq!(c.precision, 3);
    }

    #[test]
    fn rejects_unknown_keys_and_zero_budget() {
        assert!(Config::from_toml("cache = 1").is_err());
        let flags = Overrides { factor_budget: Some(0), ..Default::default() };
        assert!(Config::resolve(None, None, flags).is_err());
    }
}
