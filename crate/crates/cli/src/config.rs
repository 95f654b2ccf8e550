//! Optional TOML job file. Every key mirrors a command-line flag, and flags
//! override file values.

use std::path::{Path, PathBuf};

use anyhow::Context as _;
use serde::Deserialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub algebra: Option<String>,
    pub weight: Option<String>,
    pub mu: Option<String>,
    pub v: Option<String>,
    pub theta: Option<String>,
    pub trunc: Option<u32>,
    pub v0: Option<String>,
    pub format: Option<String>,
    pub cache_dir: Option<PathBuf>,
    pub grid: Option<String>,
    pub max_weight: Option<u32>,
}

impl JobConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }
}

/// Flag value if given, else the config value.
pub fn pick<T: Clone>(flag: &Option<T>, file: &Option<T>) -> Option<T> {
    flag.clone().or_else(|| file.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects_unknown_keys() {
        let c = JobConfig::parse("algebra = \"A2\"\ntrunc = 3\ntheta = \"1\"").unwrap();
        assert_eq!(c.algebra.as_deref(), Some("A2"));
        assert_eq!(c.trunc, Some(3));
        assert!(JobConfig::parse("colour = 1").is_err());
        assert!(JobConfig::parse("trunc = -1").is_err());
    }

    #[test]
    fn flags_win() {
        assert_eq!(pick(&Some(1), &Some(2)), Some(1));
        assert_eq!(pick(&None, &Some(2)), Some(2));
        assert_eq!(pick::<u8>(&None, &None), None);
    }
}
