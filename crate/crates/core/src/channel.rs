//! Rayleigh-fading MAC seen as a virtual MIMO channel, Y = H·X + W.

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Matrix};
use crate::scalar::Real;
use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Receive antennas used throughout the repair experiments.
pub const DEFAULT_RX_ANTENNAS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FadingModel {
    /// One H for the whole codeword.
    Slow,
    /// An independent H for every channel use.
    Fast,
}

impl FadingModel {
    pub fn id(self) -> u64 {
        match self {
            FadingModel::Slow => 0,
            FadingModel::Fast => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FadingModel::Slow => "slow",
            FadingModel::Fast => "fast",
        }
    }
}

impl fmt::Display for FadingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FadingModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slow" => Ok(FadingModel::Slow),
            "fast" => Ok(FadingModel::Fast),
            _ => Err(Error::Unknown {
                kind: "fading model",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization<T> {
    /// H_t for t = 1..T, each n_r × (K·n_t).
    pub h_per_use: Vec<CMatrix<T>>,
    /// Noise standard deviation per complex dimension (E|w|² = σ²).
    pub noise_std: T,
}

impl<T: Real> ChannelRealization<T> {
    pub fn uses(&self) -> usize {
        self.h_per_use.len()
    }

    pub fn rx_antennas(&self) -> usize {
        self.h_per_use[0].rows()
    }

    pub fn tx_antennas(&self) -> usize {
        self.h_per_use[0].cols()
    }

    pub fn with_noise_std(mut self, noise_std: T) -> Self {
        self.noise_std = noise_std;
        self
    }

    pub(crate) fn check_codeword(&self, rows: usize, cols: usize) -> Result<()> {
        self.check(rows, cols, self.tx_antennas(), "codeword")
    }

    pub(crate) fn check_received(&self, rows: usize, cols: usize) -> Result<()> {
        self.check(rows, cols, self.rx_antennas(), "received block")
    }

    fn check(&self, rows: usize, cols: usize, want_rows: usize, what: &str) -> Result<()> {
        if rows != want_rows || cols != self.uses() {
            return Err(Error::Dimension(format!(
                "{what} is {rows}x{cols}, channel is {}x{} over {} uses",
                self.rx_antennas(),
                self.tx_antennas(),
                self.uses()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedBlock<T> {
    /// n_r × T.
    pub y: CMatrix<T>,
}

/// Circularly-symmetric complex Gaussian with E|z|² = σ².
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R, std: T) -> Complex<T> {
    let s = std * T::FRAC_1_SQRT_2();
    let re = T::standard_normal(rng);
    let im = T::standard_normal(rng);
    Complex::new(re * s, im * s)
}

/// Draws i.i.d. CN(0, 1) fading matrices. Slow fading draws once and
/// repeats; fast fading draws per use. The noise level is left at zero.
pub fn draw_channel<T: Real, R: Rng + ?Sized>(
    n_r: usize,
    n_t_total: usize,
    uses: usize,
    model: FadingModel,
    rng: &mut R,
) -> ChannelRealization<T> {
    assert!(n_r >= 1 && n_t_total >= 1 && uses >= 1, "empty channel");
    let mut draw = || Matrix::from_fn(n_r, n_t_total, |_, _| complex_gaussian(rng, T::one()));
    let h_per_use = match model {
        FadingModel::Slow => vec![draw(); uses],
        FadingModel::Fast => (0..uses).map(|_| draw()).collect(),
    };
    ChannelRealization {
        h_per_use,
        noise_std: T::zero(),
    }
}

/// σ for unit-energy codebooks: σ² = K / 10^(snr_db/10), so the SNR is the
/// per-helper signal power over noise power at each receive antenna.
pub fn noise_std_from_snr<T: Real>(snr_db: T, helpers: usize) -> T {
    let k = T::from_usize(helpers).unwrap();
    let ten = T::from_f64_lossy(10.0);
    (k / ten.powf(snr_db / ten)).sqrt()
}

/// Y[:, t] = H_t·X[:, t] + w_t. Noise is always drawn, so the generator
/// advances identically at every SNR.
pub fn transmit<T: Real, R: Rng + ?Sized>(
    x: &CMatrix<T>,
    realization: &ChannelRealization<T>,
    rng: &mut R,
) -> Result<ReceivedBlock<T>> {
    realization.check_codeword(x.rows(), x.cols())?;
    let n_r = realization.rx_antennas();
    let mut y = Matrix::zeros(n_r, x.cols());
    for (t, h) in realization.h_per_use.iter().enumerate() {
        for r in 0..n_r {
            let mut acc = Complex::new(T::zero(), T::zero());
            for c in 0..x.rows() {
                acc = acc + h[(r, c)] * x[(c, t)];
            }
            y[(r, t)] = acc;
        }
    }
    for t in 0..x.cols() {
        for r in 0..n_r {
            let w = complex_gaussian(rng, realization.noise_std);
            y[(r, t)] = y[(r, t)] + w;
        }
    }
    Ok(ReceivedBlock { y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    #[test]
    fn slow_repeats_fast_redraws() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let slow = draw_channel::<f64, _>(2, 2, 2, FadingModel::Slow, &mut rng);
        assert_eq!(slow.h_per_use[0], slow.h_per_use[1]);
        let fast = draw_channel::<f64, _>(2, 2, 2, FadingModel::Fast, &mut rng);
        assert_ne!(fast.h_per_use[0], fast.h_per_use[1]);
    }

    #[test]
    fn fading_power_is_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| complex_gaussian::<f64, _>(&mut rng, 1.0).norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((0.99..=1.01).contains(&mean), "{mean}");
    }

    #[test]
    fn snr_convention() {
        assert!((noise_std_from_snr(0.0f64, 2).powi(2) - 2.0).abs() < 1e-12);
        assert!((noise_std_from_snr(10.0f64, 2).powi(2) - 0.2).abs() < 1e-12);
        assert_eq!(noise_std_from_snr(f64::INFINITY, 2), 0.0);
    }

    #[test]
    fn noiseless_identity_channel_passes_codeword() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = Matrix::from_rows(vec![
            vec![C::new(1.0, -1.0), C::new(0.5, 2.0)],
            vec![C::new(-3.0, 0.0), C::new(0.0, 1.0)],
        ])
        .unwrap();
        let real = ChannelRealization {
            h_per_use: vec![Matrix::identity(2); 2],
            noise_std: 0.0,
        };
        assert_eq!(transmit(&x, &real, &mut rng).unwrap().y, x);

        let real = draw_channel::<f64, _>(2, 2, 2, FadingModel::Fast, &mut rng);
        let y = transmit(&x, &real, &mut rng).unwrap().y;
        for t in 0..2 {
            let col = Matrix::new(2, 1, x.column(t)).unwrap();
            let want = real.h_per_use[t].matmul(&col).unwrap();
            assert_eq!(y.column(t), want.column(0));
        }
    }

    #[test]
    fn pure_noise_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x: CMatrix<f64> = Matrix::zeros(2, 1);
        let real = draw_channel::<f64, _>(1, 2, 1, FadingModel::Slow, &mut rng).with_noise_std(0.5);
        let n = 100_000;
        let var = (0..n)
            .map(|_| transmit(&x, &real, &mut rng).unwrap().y[(0, 0)].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((var / 0.25 - 1.0).abs() < 0.02, "{var}");
    }

    #[test]
    fn shape_mismatch_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let real = draw_channel::<f64, _>(2, 2, 2, FadingModel::Slow, &mut rng);
        let x: CMatrix<f64> = Matrix::zeros(2, 1);
        assert!(transmit(&x, &real, &mut rng).is_err());
        let x: CMatrix<f64> = Matrix::zeros(3, 2);
        assert!(transmit(&x, &real, &mut rng).is_err());
    }
}
