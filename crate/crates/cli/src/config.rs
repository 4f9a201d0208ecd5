//! Sweep configuration: a flat JSON document, overridable by flags.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use stsc::channel::{FadingModel, DEFAULT_RX_ANTENNAS};
use stsc::storage::DEFAULT_FRAGMENT_BITS;
use stsc::{Scheme, SimConfig};

pub const WORKERS_ENV: &str = "STSC_WORKERS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub schemes: Vec<Scheme>,
    pub fading: Vec<FadingModel>,
    pub snr_start: f64,
    pub snr_stop: f64,
    pub snr_step: f64,
    pub trials: u64,
    pub seed: u64,
    pub nr: usize,
    pub fragment_bits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            schemes: vec![Scheme::Ssm, Scheme::Dsm, Scheme::MacGolden { twist: true }],
            fading: vec![FadingModel::Slow],
            snr_start: 0.0,
            snr_stop: 30.0,
            snr_step: 5.0,
            trials: 10_000,
            seed: 42,
            nr: DEFAULT_RX_ANTENNAS,
            fragment_bits: DEFAULT_FRAGMENT_BITS,
            out: None,
        }
    }
}

/// Metadata written next to every sweep CSV. Its `config` member is itself
/// a valid `--config` input.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub tool: String,
    pub version: String,
    pub config: SweepConfig,
    pub snr_points: Vec<f64>,
    pub rows: usize,
    pub workers: Option<usize>,
    pub wall_time_s: f64,
}

impl SweepConfig {
    /// Reads a config file, or the `config` member of a sidecar.
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .with_context(|| format!("{} is not valid JSON", path.display()))?;
        let inner = match value.get("config") {
            Some(c) if value.get("tool").is_some() => c.clone(),
            _ => value,
        };
        serde_json::from_value(inner).with_context(|| format!("invalid config {}", path.display()))
    }

    pub fn snr_points(&self) -> Result<Vec<f64>> {
        let (a, b, s) = (self.snr_start, self.snr_stop, self.snr_step);
        if !(a.is_finite() && b.is_finite() && s.is_finite()) {
            bail!("SNR grid values must be finite");
        }
        if s <= 0.0 {
            bail!("snr_step must be positive, got {s}");
        }
        if b < a {
            bail!("snr_stop {b} is below snr_start {a}");
        }
        let n = ((b - a) / s + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| a + i as f64 * s).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            bail!("at least one scheme is required");
        }
        if self.fading.is_empty() {
            bail!("at least one fading model is required");
        }
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.nr == 0 {
            bail!("nr must be at least 1");
        }
        self.snr_points()?;
        for sim in self.sim_configs()? {
            sim.validate().map_err(|e| anyhow!(e))?;
        }
        Ok(())
    }

    /// One simulator configuration per (scheme, fading), in output order.
    pub fn sim_configs(&self) -> Result<Vec<SimConfig>> {
        let snr = self.snr_points()?;
        Ok(self
            .schemes
            .iter()
            .flat_map(|&scheme| {
                let snr = snr.clone();
                self.fading.iter().map(move |&fading| SimConfig {
                    scheme,
                    fading,
                    snr_db: snr.clone(),
                    trials: self.trials,
                    fragment_bits: self.fragment_bits,
                    n_r: self.nr,
                    master_seed: self.seed,
                })
            })
            .collect())
    }
}

/// Worker count from `STSC_WORKERS`; `None` means all cores.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => bail!("{WORKERS_ENV} must be a positive integer, got {v:?}"),
        },
    }
}
