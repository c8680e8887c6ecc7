use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use serde::Deserialize;

/// Options shared by every subcommand. Each may also come from a TOML file
/// given with `--config`; flags on the command line take precedence.
#[derive(Args, Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Common {
    /// Field as `p^n`, `p^n/m0,...,1` or a prime power `q`.
    #[arg(long)]
    pub field: Option<String>,
    /// Surface file in the text surface format.
    #[arg(long, conflicts_with = "family")]
    pub surface: Option<PathBuf>,
    /// Family constructor: plane, del-pezzo-4, del-pezzo-6, shioda, van-luijk,
    /// cayley-salmon, random-cubic.
    #[arg(long)]
    pub family: Option<String>,
    /// Degree of the Shioda surface.
    #[arg(long)]
    pub shioda_degree: Option<u32>,
    /// Evaluation degree `s`.
    #[arg(long)]
    pub degree: Option<u32>,
    /// exhaustive, isd or auto.
    #[arg(long)]
    pub strategy: Option<String>,
    /// Maximum number of codewords (or points, hyperplanes) enumerated.
    #[arg(long)]
    pub budget: Option<u128>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with any of these options.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

macro_rules! fill {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $dst.$f.is_none() { $dst.$f = $src.$f; } )*
    };
}

impl Common {
    /// Fill unset options from the config file, if any.
    pub fn resolve(mut self) -> Result<Self> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = load(&path)?;
        fill!(self, file; field, surface, family, shioda_degree, degree, strategy, budget, seed, workers, out);
        Ok(self)
    }
}

fn load(path: &Path) -> Result<Common> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "field = \"7\"\ndegree = 2\nseed = 5\n").unwrap();
        let c = Common {
            degree: Some(1),
            config: Some(path),
            ..Default::default()
        }
        .resolve()
        .unwrap();
        assert_eq!(c.field.as_deref(), Some("7"));
        assert_eq!(c.degree, Some(1));
        assert_eq!(c.seed, Some(5));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "colour = 1\n").unwrap();
        let c = Common {
            config: Some(path),
            ..Default::default()
        };
        assert!(c.resolve().is_err());
    }
}
