//! Solver parameters from flat `key = value` files and `--set` overrides.
//!
//! ```text
//! # regulus.toml
//! mu0 = 1.0
//! mu_min = 1e-3
//! M = 8
//! ```
//!
//! Every key is optional; missing keys keep their current value. `m` and
//! `M` are accepted as aliases for `memory` and `nonmonotone`.

use std::path::Path;

use regulus_core::SolverConfig;
use serde::Deserialize;

use crate::{HarnessError, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigPatch {
    mu0: Option<f64>,
    mu_min: Option<f64>,
    gamma1: Option<f64>,
    gamma2: Option<f64>,
    eta1: Option<f64>,
    eta2: Option<f64>,
    #[serde(alias = "m")]
    memory: Option<usize>,
    #[serde(alias = "M")]
    nonmonotone: Option<usize>,
    c1: Option<f64>,
    c2: Option<f64>,
    grad_tol: Option<f64>,
    max_fevals: Option<usize>,
    mu_max: Option<f64>,
    alpha_floor: Option<f64>,
    max_ls_iters: Option<usize>,
}

impl ConfigPatch {
    fn apply(self, c: &mut SolverConfig) {
        macro_rules! set {
            ($($f:ident),*) => {
                $( if let Some(v) = self.$f { c.$f = v; } )*
            };
        }
        set!(
            mu0,
            mu_min,
            gamma1,
            gamma2,
            eta1,
            eta2,
            memory,
            nonmonotone,
            c1,
            c2,
            grad_tol,
            max_fevals,
            mu_max,
            alpha_floor,
            max_ls_iters
        );
    }
}

fn parse_patch(text: &str) -> Result<ConfigPatch> {
    toml::from_str(text).map_err(|e| HarnessError::Config(e.message().to_string()))
}

/// Applies the keys in `text` on top of `base`.
pub fn apply_str(base: SolverConfig, text: &str) -> Result<SolverConfig> {
    let mut c = base;
    parse_patch(text)?.apply(&mut c);
    Ok(c)
}

/// Reads a config file on top of the defaults.
pub fn load(path: &Path) -> Result<SolverConfig> {
    let text = std::fs::read_to_string(path)?;
    apply_str(SolverConfig::default(), &text)
}

/// Applies `key=value` overrides in order.
pub fn apply_overrides(base: SolverConfig, overrides: &[String]) -> Result<SolverConfig> {
    let mut c = base;
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("expected key=value, got '{o}'")))?;
        c = apply_str(c, &format!("{} = {}", k.trim(), v.trim()))?;
    }
    Ok(c)
}

/// Defaults, then the optional file, then the overrides; validated.
pub fn resolve(path: Option<&Path>, overrides: &[String]) -> Result<SolverConfig> {
    let base = match path {
        Some(p) => load(p)?,
        None => SolverConfig::default(),
    };
    let c = apply_overrides(base, overrides)?;
    c.validate()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(
            apply_str(SolverConfig::default(), "").unwrap(),
            SolverConfig::default()
        );
    }

    #[test]
    fn keys_and_aliases() {
        let c = apply_str(
            SolverConfig::default(),
            "mu0 = 2\nM = 8\nm = 7\ngamma2 = 5.0\n# comment\nmax_fevals = 500\n",
        )
        .unwrap();
        assert_eq!(c.mu0, 2.0);
        assert_eq!(c.nonmonotone, 8);
        assert_eq!(c.memory, 7);
        assert_eq!(c.gamma2, 5.0);
        assert_eq!(c.max_fevals, 500);
        assert_eq!(c.eta1, 0.01);
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(apply_str(SolverConfig::default(), "tau = 3").is_err());
    }

    #[test]
    fn overrides_in_order() {
        let c = apply_overrides(
            SolverConfig::default(),
            &["M=0".into(), "c2 = 0.5".into(), "M=4".into()],
        )
        .unwrap();
        assert_eq!(c.nonmonotone, 4);
        assert_eq!(c.c2, 0.5);
        assert!(apply_overrides(SolverConfig::default(), &["oops".into()]).is_err());
    }

    #[test]
    fn resolve_validates() {
        assert!(resolve(None, &["eta1=0.95".into()]).is_err());
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cfg.toml");
        std::fs::write(&p, "mu_min = 1e-4\nmu0 = 0.5\n").unwrap();
        let c = resolve(Some(&p), &[]).unwrap();
        assert_eq!((c.mu_min, c.mu0), (1e-4, 0.5));
    }
}
