//! Exhaustive joint maximum-likelihood decoding.

use crate::bits::BitString;
use crate::channel::{ChannelRealization, ReceivedBlock};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;
use crate::stcode::Codebook;
use num_complex::Complex;

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult<T> {
    pub index: usize,
    pub bits: (BitString, BitString),
    /// Σ_t ‖Y[:,t] − H_t·X̂[:,t]‖².
    pub metric: T,
}

/// Squared residual of one candidate, abandoning the sum once it reaches
/// `bound` (the returned value is then some partial sum ≥ `bound`).
fn residual<T: Real>(
    y: &CMatrix<T>,
    realization: &ChannelRealization<T>,
    x: &CMatrix<T>,
    bound: T,
) -> T {
    let mut acc = T::zero();
    for (t, h) in realization.h_per_use.iter().enumerate() {
        for r in 0..y.rows() {
            let mut hx = Complex::new(T::zero(), T::zero());
            for c in 0..x.rows() {
                hx = hx + h[(r, c)] * x[(c, t)];
            }
            acc = acc + (y[(r, t)] - hx).norm_sqr();
        }
        if acc >= bound {
            return acc;
        }
    }
    acc
}

/// Argmin of the residual over `candidates`; ties go to the lowest index.
pub fn ml_search<T: Real>(
    y: &CMatrix<T>,
    realization: &ChannelRealization<T>,
    candidates: &[CMatrix<T>],
) -> Result<(usize, T)> {
    let first = candidates.first().ok_or(Error::EmptyCodebook)?;
    realization.check_received(y.rows(), y.cols())?;
    realization.check_codeword(first.rows(), first.cols())?;
    let mut best = (0, residual(y, realization, first, T::infinity()));
    for (i, x) in candidates.iter().enumerate().skip(1) {
        let m = residual(y, realization, x, best.1);
        if m < best.1 {
            best = (i, m);
        }
    }
    Ok(best)
}

/// Joint ML decision over the codebook's normalized codewords. Slow fading
/// is the case where every H_t is the same matrix.
pub fn ml_decode<T: Real>(
    received: &ReceivedBlock<T>,
    realization: &ChannelRealization<T>,
    codebook: &Codebook<T>,
) -> Result<DecodeResult<T>> {
    let (index, metric) = ml_search(&received.y, realization, codebook.transmit_matrices())?;
    Ok(DecodeResult {
        index,
        bits: codebook.codewords[index].source_bits.clone(),
        metric,
    })
}
