//! Run configuration: flat `key = value` files, CLI overrides, and the
//! canonical form hashed into every artifact.

use schedule::{optimal_exponents, Exponent, PlanConfig};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

use crate::CliError;

/// Everything a run needs: the schedule parameters plus sampling, sweep and
/// output plumbing. Every field has a config-file key of the same name.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub c: f64,
    pub gamma: f64,
    pub delta: f64,
    pub mu: f64,
    pub zeta: f64,
    pub eps: f64,
    pub k_max: Exponent,
    pub lambda: Exponent,
    pub n_layers: usize,
    pub ode_tol: f64,
    pub seed: u64,
    /// Per-layer time samples for trajectory export and probes.
    pub samples: usize,
    /// Hölder indices for the regularity sweep (and envelope exponents).
    pub alphas: Vec<f64>,
    /// Base constants for the convergence probe.
    pub c_list: Vec<f64>,
    /// Which layer the convergence probe compares to its ideal model.
    pub probe_n: usize,
    /// Field-export grid.
    pub grid_nx: usize,
    pub grid_ny: usize,
    /// Optional explicit field box `x1lo,x1hi,x2lo,x2hi`; None = support box.
    pub field_box: Option<[f64; 4]>,
    /// Per-axis grid for the force-breakdown export.
    pub forces_grid: usize,
    /// Per-axis grid for each Hölder-estimate window in the sweep.
    pub sweep_grid: usize,
    /// Optional explicit sample time for field/force export; None = window
    /// midpoints.
    pub time: Option<f64>,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let alpha_star = optimal_exponents().alpha_star;
        RunConfig {
            c: 10.0,
            gamma: 0.5,
            delta: 0.05,
            mu: 0.01,
            zeta: 0.01,
            eps: 0.1,
            k_max: Exponent::Auto,
            lambda: Exponent::Auto,
            n_layers: 2,
            ode_tol: 1e-11,
            seed: 1,
            samples: 201,
            alphas: vec![0.5 * alpha_star, 0.99],
            c_list: vec![8.0, 16.0, 32.0, 64.0],
            probe_n: 2,
            grid_nx: 33,
            grid_ny: 33,
            field_box: None,
            forces_grid: 9,
            sweep_grid: 32,
            time: None,
            out_dir: PathBuf::from("out"),
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::config(format!("key {key}: expected a number, got {v:?}")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::config(format!("key {key}: expected an integer, got {v:?}")))
}

fn parse_exponent(key: &str, v: &str) -> Result<Exponent, CliError> {
    if v.trim() == "auto" {
        Ok(Exponent::Auto)
    } else {
        Ok(Exponent::Value(parse_f64(key, v)?))
    }
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    v.split(',')
        .map(|s| parse_f64(key, s))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|l| {
            if l.is_empty() {
                Err(CliError::config(format!("key {key}: empty list")))
            } else {
                Ok(l)
            }
        })
}

impl RunConfig {
    /// Apply one `key = value` assignment.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let v = value.trim();
        match key {
            "c" => self.c = parse_f64(key, v)?,
            "gamma" => self.gamma = parse_f64(key, v)?,
            "delta" => self.delta = parse_f64(key, v)?,
            "mu" => self.mu = parse_f64(key, v)?,
            "zeta" => self.zeta = parse_f64(key, v)?,
            "eps" => self.eps = parse_f64(key, v)?,
            "k_max" => self.k_max = parse_exponent(key, v)?,
            "lambda" => self.lambda = parse_exponent(key, v)?,
            "n_layers" => self.n_layers = parse_usize(key, v)?,
            "ode_tol" => self.ode_tol = parse_f64(key, v)?,
            "seed" => {
                self.seed = v.parse().map_err(|_| {
                    CliError::config(format!("key seed: expected an integer, got {v:?}"))
                })?
            }
            "samples" => self.samples = parse_usize(key, v)?,
            "alphas" => self.alphas = parse_list(key, v)?,
            "c_list" => self.c_list = parse_list(key, v)?,
            "probe_n" => self.probe_n = parse_usize(key, v)?,
            "grid_nx" => self.grid_nx = parse_usize(key, v)?,
            "grid_ny" => self.grid_ny = parse_usize(key, v)?,
            "field_box" => {
                if v == "auto" {
                    self.field_box = None;
                } else {
                    let l = parse_list(key, v)?;
                    if l.len() != 4 {
                        return Err(CliError::config(format!(
                            "key field_box: expected x1lo,x1hi,x2lo,x2hi or auto, got {v:?}"
                        )));
                    }
                    self.field_box = Some([l[0], l[1], l[2], l[3]]);
                }
            }
            "forces_grid" => self.forces_grid = parse_usize(key, v)?,
            "sweep_grid" => self.sweep_grid = parse_usize(key, v)?,
            "time" => {
                self.time = if v == "auto" {
                    None
                } else {
                    Some(parse_f64(key, v)?)
                }
            }
            "out_dir" => self.out_dir = PathBuf::from(v),
            other => {
                return Err(CliError::config(format!("unknown config key {other:?}")));
            }
        }
        Ok(())
    }

    /// Load `key = value` lines (with `#` comments) over the defaults.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(format!(
                    "{}:{}: expected key = value, got {raw:?}",
                    path.display(),
                    i + 1
                ))
            })?;
            self.apply(key.trim(), value)?;
        }
        Ok(())
    }

    /// Apply a `KEY=VALUE` CLI override.
    pub fn apply_set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| {
            CliError::config(format!("--set expects KEY=VALUE, got {assignment:?}"))
        })?;
        self.apply(key.trim(), value)
    }

    pub fn plan_config(&self) -> PlanConfig {
        PlanConfig {
            c: self.c,
            gamma: self.gamma,
            delta: self.delta,
            mu: self.mu,
            zeta: self.zeta,
            eps: self.eps,
            k_max: self.k_max,
            lambda: self.lambda,
            n_layers: self.n_layers,
        }
    }

    /// Canonical text form: every run-affecting key in fixed order. The
    /// output directory is plumbing and deliberately excluded, so the same
    /// run into a different directory produces byte-identical artifacts.
    pub fn canonical(&self) -> String {
        let exp = |e: Exponent| match e {
            Exponent::Auto => "auto".to_string(),
            Exponent::Value(v) => format!("{v:.17e}"),
        };
        let list = |l: &[f64]| {
            l.iter()
                .map(|v| format!("{v:.17e}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        s.push_str(&format!("c = {:.17e}\n", self.c));
        s.push_str(&format!("gamma = {:.17e}\n", self.gamma));
        s.push_str(&format!("delta = {:.17e}\n", self.delta));
        s.push_str(&format!("mu = {:.17e}\n", self.mu));
        s.push_str(&format!("zeta = {:.17e}\n", self.zeta));
        s.push_str(&format!("eps = {:.17e}\n", self.eps));
        s.push_str(&format!("k_max = {}\n", exp(self.k_max)));
        s.push_str(&format!("lambda = {}\n", exp(self.lambda)));
        s.push_str(&format!("n_layers = {}\n", self.n_layers));
        s.push_str(&format!("ode_tol = {:.17e}\n", self.ode_tol));
        s.push_str(&format!("seed = {}\n", self.seed));
        s.push_str(&format!("samples = {}\n", self.samples));
        s.push_str(&format!("alphas = {}\n", list(&self.alphas)));
        s.push_str(&format!("c_list = {}\n", list(&self.c_list)));
        s.push_str(&format!("probe_n = {}\n", self.probe_n));
        s.push_str(&format!("grid_nx = {}\n", self.grid_nx));
        s.push_str(&format!("grid_ny = {}\n", self.grid_ny));
        s.push_str(&format!(
            "field_box = {}\n",
            self.field_box.map_or("auto".to_string(), |b| list(&b))
        ));
        s.push_str(&format!("forces_grid = {}\n", self.forces_grid));
        s.push_str(&format!("sweep_grid = {}\n", self.sweep_grid));
        s.push_str(&format!(
            "time = {}\n",
            self.time
                .map_or("auto".to_string(), |t| format!("{t:.17e}"))
        ));
        s
    }

    /// Short hex digest of the canonical form, stamped into every artifact.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_apply() {
        let mut cfg = RunConfig::default();
        cfg.apply("c", " 12.5 ").unwrap();
        cfg.apply("k_max", "0.2").unwrap();
        cfg.apply("alphas", "0.1,0.9").unwrap();
        assert_eq!(cfg.c, 12.5);
        assert_eq!(cfg.k_max, Exponent::Value(0.2));
        assert_eq!(cfg.alphas, vec![0.1, 0.9]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply("speling", "1").is_err());
        assert!(cfg.apply_set("no_equals_sign").is_err());
    }

    #[test]
    fn hash_ignores_out_dir_but_not_parameters() {
        let base = RunConfig::default();
        let mut moved = base.clone();
        moved.apply("out_dir", "elsewhere").unwrap();
        assert_eq!(base.hash(), moved.hash());
        let mut changed = base.clone();
        changed.apply("c", "11").unwrap();
        assert_ne!(base.hash(), changed.hash());
    }
}
