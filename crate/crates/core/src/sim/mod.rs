//! Monte Carlo repair simulation: random helper fragments → scheme encode
//! → fading channel → joint ML decode → XOR repair → error tallies.
//!
//! Every trial owns a ChaCha8 generator seeded from (master seed, scheme,
//! fading, SNR index, trial index), so sweeps are bit-identical for any
//! worker count and any execution order.

mod report;
mod seed;

pub use report::{format_sig, wilson_interval, SweepResult, SweepRow, CSV_HEADER};
pub use seed::{mix_words, splitmix64, trial_seed};

use crate::bits::BitString;
use crate::channel::{draw_channel, noise_std_from_snr, transmit, FadingModel, DEFAULT_RX_ANTENNAS};
use crate::decode::ml_decode;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stcode::{Codebook, Scheme, BITS_PER_HELPER};
use crate::storage::{Fragment, StorageParams, DEFAULT_FRAGMENT_BITS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Storage node that fails in every trial; nodes 2 and 3 are the helpers.
const FAILED_NODE: usize = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub scheme: Scheme,
    pub fading: FadingModel,
    pub snr_db: Vec<f64>,
    pub trials: u64,
    pub fragment_bits: usize,
    pub n_r: usize,
    pub master_seed: u64,
}

impl SimConfig {
    pub fn new(scheme: Scheme, fading: FadingModel, snr_db: Vec<f64>, trials: u64, master_seed: u64) -> Self {
        Self {
            scheme,
            fading,
            snr_db,
            trials,
            fragment_bits: DEFAULT_FRAGMENT_BITS,
            n_r: DEFAULT_RX_ANTENNAS,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.fragment_bits != BITS_PER_HELPER {
            return Err(Error::Config(format!(
                "fragment_bits must be {BITS_PER_HELPER} for the built-in schemes, got {}",
                self.fragment_bits
            )));
        }
        if self.n_r == 0 {
            return Err(Error::Config("n_r must be at least 1".into()));
        }
        if self.snr_db.is_empty() {
            return Err(Error::Config("empty SNR list".into()));
        }
        if self.snr_db.iter().any(|s| s.is_nan()) {
            return Err(Error::Config("SNR values must be numbers".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub transmitted: (BitString, BitString),
    pub decoded: (BitString, BitString),
    /// b̂ = b̂₁ ⊕ b̂₂, the regenerated fragment.
    pub repaired: BitString,
    pub bit_errors: u32,
    pub frame_error: bool,
}

/// Information bits delivered per channel use.
pub fn bits_per_channel_use(scheme: Scheme) -> f64 {
    scheme.bits_per_channel_use()
}

/// A validated configuration together with its codebook.
#[derive(Clone, Debug)]
pub struct Simulator<T: Real = f64> {
    config: SimConfig,
    codebook: Codebook<T>,
    storage: StorageParams,
}

impl<T: Real> Simulator<T> {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let codebook = Codebook::enumerate(config.scheme)?;
        let storage = StorageParams::single_parity(config.scheme.helpers() + 1)?;
        Ok(Self {
            config,
            codebook,
            storage,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn codebook(&self) -> &Codebook<T> {
        &self.codebook
    }

    pub fn trial_seed(&self, snr_index: usize, trial: u64) -> u64 {
        trial_seed(
            self.config.master_seed,
            self.config.scheme.id(),
            self.config.fading.id(),
            snr_index as u64,
            trial,
        )
    }

    fn noise_std(&self, snr_db: f64) -> T {
        noise_std_from_snr(T::from_f64_lossy(snr_db), self.config.scheme.helpers())
    }

    /// One trial at the configured SNR point `snr_index`.
    pub fn run_trial(&self, snr_index: usize, trial: u64) -> Result<TrialRecord> {
        let snr = *self
            .config
            .snr_db
            .get(snr_index)
            .ok_or_else(|| Error::Config(format!("no SNR point {snr_index}")))?;
        self.run_trial_seeded(snr, self.trial_seed(snr_index, trial))
    }

    /// One trial with an explicit seed, for matched-seed comparisons.
    pub fn run_trial_seeded(&self, snr_db: f64, seed: u64) -> Result<TrialRecord> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.run_trial_with(self.noise_std(snr_db), &mut rng)
    }

    fn draw_index<R: Rng + ?Sized>(rng: &mut R) -> usize {
        // Codebook order is (b₁, b₂) lexicographic, so the byte is the index.
        usize::from(rng.random::<u8>())
    }

    pub fn run_trial_with<R: Rng + ?Sized>(&self, noise_std: T, rng: &mut R) -> Result<TrialRecord> {
        let scheme = self.config.scheme;
        let index = Self::draw_index(rng);
        let sent = &self.codebook.codewords[index];
        let x = &self.codebook.transmit_matrices()[index];
        let realization = draw_channel(
            self.config.n_r,
            x.rows(),
            scheme.channel_uses(),
            self.config.fading,
            rng,
        )
        .with_noise_std(noise_std);
        let y = transmit(x, &realization, rng)?;
        let decoded = ml_decode(&y, &realization, &self.codebook)?;

        let (b1, b2) = &sent.source_bits;
        let helpers = [
            Fragment::new(2, decoded.bits.0.clone()),
            Fragment::new(3, decoded.bits.1.clone()),
        ];
        let repaired = self.storage.repair(&helpers, FAILED_NODE)?.bits;
        let truth = b1.xor(b2)?;
        let bit_errors = repaired.hamming(&truth) as u32;
        Ok(TrialRecord {
            transmitted: sent.source_bits.clone(),
            decoded: decoded.bits,
            repaired,
            bit_errors,
            frame_error: bit_errors > 0,
        })
    }

    /// Runs every (SNR, trial) pair; `workers = None` uses the global pool.
    pub fn run_sweep(&self, workers: Option<usize>) -> Result<SweepResult> {
        match workers {
            None => self.sweep_in_pool(),
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?
                .install(|| self.sweep_in_pool()),
        }
    }

    fn sweep_in_pool(&self) -> Result<SweepResult> {
        let cfg = &self.config;
        let rows = cfg
            .snr_db
            .iter()
            .enumerate()
            .map(|(si, &snr)| {
                let (bit_errors, frame_errors) = (0..cfg.trials)
                    .into_par_iter()
                    .map(|t| {
                        self.run_trial(si, t)
                            .map(|r| (u64::from(r.bit_errors), u64::from(r.frame_error)))
                    })
                    .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
                Ok(SweepRow::from_tally(
                    cfg.scheme,
                    cfg.fading,
                    snr,
                    cfg.trials,
                    cfg.fragment_bits,
                    bit_errors,
                    frame_errors,
                    cfg.master_seed,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SweepResult { rows })
    }

    /// Mean |x|² per helper per channel use of the transmitted codewords
    /// over `trials` draws of the trial generators.
    pub fn mean_transmit_energy(&self, trials: u64) -> f64 {
        let total: f64 = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(self.trial_seed(0, t));
                let x = &self.codebook.transmit_matrices()[Self::draw_index(&mut rng)];
                (x.frobenius_sq() / T::from_usize(x.rows() * x.cols()).unwrap()).to_f64_lossy()
            })
            .sum();
        total / trials as f64
    }
}

/// Convenience wrapper: build a double-precision simulator and sweep.
pub fn run_sweep(config: &SimConfig, workers: Option<usize>) -> Result<SweepResult> {
    Simulator::<f64>::new(config.clone())?.run_sweep(workers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(scheme: Scheme, fading: FadingModel, snr: Vec<f64>, trials: u64) -> SimConfig {
        SimConfig::new(scheme, fading, snr, trials, 42)
    }

    #[test]
    fn validation() {
        let mut c = cfg(Scheme::Dsm, FadingModel::Slow, vec![10.0], 0);
        assert!(c.validate().is_err());
        c.trials = 1;
        assert!(c.validate().is_ok());
        c.fragment_bits = 8;
        assert!(c.validate().is_err());
        c.fragment_bits = 4;
        c.snr_db.clear();
        assert!(c.validate().is_err());
        c.snr_db.push(f64::NAN);
        assert!(c.validate().is_err());
    }

    #[test]
    fn noiseless_trials_are_error_free() {
        for scheme in Scheme::ALL {
            for fading in [FadingModel::Slow, FadingModel::Fast] {
                let sim = Simulator::<f64>::new(cfg(scheme, fading, vec![f64::INFINITY], 200)).unwrap();
                for t in 0..200 {
                    let r = sim.run_trial(0, t).unwrap();
                    assert_eq!(r.bit_errors, 0);
                    assert_eq!(r.decoded, r.transmitted);
                }
            }
        }
    }

    #[test]
    fn trial_record_consistency() {
        let sim = Simulator::<f64>::new(cfg(Scheme::Ssm, FadingModel::Slow, vec![0.0], 10)).unwrap();
        for t in 0..300 {
            let r = sim.run_trial(0, t).unwrap();
            let truth = r.transmitted.0.xor(&r.transmitted.1).unwrap();
            assert_eq!(r.repaired, r.decoded.0.xor(&r.decoded.1).unwrap());
            assert_eq!(r.bit_errors as usize, r.repaired.hamming(&truth));
            assert_eq!(r.frame_error, r.bit_errors > 0);
            assert_eq!(sim.run_trial(0, t).unwrap(), r);
        }
    }

    #[test]
    fn doubling_trials_keeps_prefix() {
        let a = Simulator::<f64>::new(cfg(Scheme::Dsm, FadingModel::Fast, vec![5.0], 50)).unwrap();
        let b = Simulator::<f64>::new(cfg(Scheme::Dsm, FadingModel::Fast, vec![5.0], 100)).unwrap();
        for t in 0..50 {
            assert_eq!(a.run_trial(0, t).unwrap(), b.run_trial(0, t).unwrap());
        }
    }

    #[test]
    fn ssm_matched_seeds_ignore_fading() {
        let slow = Simulator::<f64>::new(cfg(Scheme::Ssm, FadingModel::Slow, vec![8.0], 1)).unwrap();
        let fast = Simulator::<f64>::new(cfg(Scheme::Ssm, FadingModel::Fast, vec![8.0], 1)).unwrap();
        for seed in 0..500 {
            assert_eq!(
                slow.run_trial_seeded(8.0, seed).unwrap(),
                fast.run_trial_seeded(8.0, seed).unwrap()
            );
        }
    }

    #[test]
    fn sweep_rows_follow_config_order() {
        let c = cfg(Scheme::MacGolden { twist: true }, FadingModel::Slow, vec![20.0, 0.0, 10.0], 200);
        let res = run_sweep(&c, Some(2)).unwrap();
        let snrs: Vec<f64> = res.rows.iter().map(|r| r.snr_db).collect();
        assert_eq!(snrs, vec![20.0, 0.0, 10.0]);
        for r in &res.rows {
            assert!(r.ber_ci_low <= r.ber && r.ber <= r.ber_ci_high);
            assert_eq!(r.ber, r.bit_errors as f64 / 800.0);
        }
        assert_eq!(res, run_sweep(&c, Some(1)).unwrap());
    }

    #[test]
    fn rates() {
        assert_eq!(bits_per_channel_use(Scheme::Ssm), 8.0);
        assert_eq!(bits_per_channel_use(Scheme::Dsm), 4.0);
        assert_eq!(bits_per_channel_use(Scheme::MacGolden { twist: true }), 4.0);
    }
}
