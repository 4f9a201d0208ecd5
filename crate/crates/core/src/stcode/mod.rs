//! Physical-layer repair schemes and their codebooks.
//!
//! Every codeword is built exactly in ℤ[i][θ] first; the complex matrix is
//! the entrywise embedding. The uncoded baselines simply have no θ part.

mod block;
mod cnvd;

pub use block::{assemble_block, lrr};
pub use cnvd::{cnvd_check, subset_absdet, CnvdMode, CnvdReport, SubsetStats, ZERO_THRESHOLD};

use crate::algebra::{GaussInt, GoldenElem};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Matrix};
use crate::modulation::{gray16_gauss, gray4_gauss, lift_golden};
use crate::scalar::Real;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Exact codeword entries.
pub type ExactElem = GoldenElem<BigInt>;

/// Bits each helper contributes per repair.
pub const BITS_PER_HELPER: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Scheme {
    /// Single spatial multiplexing: one 16-QAM symbol per helper, one use.
    Ssm,
    /// Double spatial multiplexing: two 4-QAM symbols per helper, two uses.
    Dsm,
    /// The two-user golden MAC code, optionally with the twisting unit i.
    MacGolden { twist: bool },
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::Ssm,
        Scheme::Dsm,
        Scheme::MacGolden { twist: true },
        Scheme::MacGolden { twist: false },
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Ssm => "ssm",
            Scheme::Dsm => "dsm",
            Scheme::MacGolden { twist: true } => "mac-golden",
            Scheme::MacGolden { twist: false } => "mac-golden-notwist",
        }
    }

    /// Stable small integer used when deriving per-trial seeds.
    pub fn id(self) -> u64 {
        match self {
            Scheme::Ssm => 0,
            Scheme::Dsm => 1,
            Scheme::MacGolden { twist: true } => 2,
            Scheme::MacGolden { twist: false } => 3,
        }
    }

    pub fn helpers(self) -> usize {
        2
    }

    /// Transmit antennas per helper.
    pub fn antennas_per_helper(self) -> usize {
        1
    }

    pub fn channel_uses(self) -> usize {
        match self {
            Scheme::Ssm => 1,
            Scheme::Dsm | Scheme::MacGolden { .. } => 2,
        }
    }

    pub fn total_bits(self) -> usize {
        self.helpers() * BITS_PER_HELPER
    }

    pub fn bits_per_channel_use(self) -> f64 {
        self.total_bits() as f64 / self.channel_uses() as f64
    }

    pub fn encode<T: Real>(self, b1: &[bool], b2: &[bool]) -> Result<Codeword<T>> {
        match self {
            Scheme::Ssm => encode_ssm(b1, b2),
            Scheme::Dsm => encode_dsm(b1, b2),
            Scheme::MacGolden { twist } => encode_mac_golden(b1, b2, twist),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ssm" => Ok(Scheme::Ssm),
            "dsm" => Ok(Scheme::Dsm),
            "mac-golden" | "mac-golden-twist" => Ok(Scheme::MacGolden { twist: true }),
            "mac-golden-notwist" => Ok(Scheme::MacGolden { twist: false }),
            _ => Err(Error::Unknown {
                kind: "scheme",
                value: s.to_string(),
            }),
        }
    }
}

impl TryFrom<String> for Scheme {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Scheme> for String {
    fn from(s: Scheme) -> String {
        s.name().to_string()
    }
}

/// One space-time codeword: rows are virtual transmit antennas (helper
/// row-blocks), columns are channel uses.
#[derive(Clone, Debug)]
pub struct Codeword<T> {
    /// Unnormalized complex matrix.
    pub matrix: CMatrix<T>,
    pub source_bits: (BitString, BitString),
    pub exact_form: Option<Matrix<ExactElem>>,
}

impl<T: Real> Codeword<T> {
    fn from_exact(exact: Matrix<ExactElem>, b1: &[bool], b2: &[bool]) -> Self {
        Self {
            matrix: exact.map(|e| e.embed()),
            source_bits: (b1.into(), b2.into()),
            exact_form: Some(exact),
        }
    }
}

fn check_fragment(b: &[bool]) -> Result<()> {
    if b.len() != BITS_PER_HELPER {
        return Err(Error::BitLength {
            expected: BITS_PER_HELPER,
            got: b.len(),
        });
    }
    Ok(())
}

/// The shaping element α = (1+i) − iθ.
pub fn alpha() -> ExactElem {
    GoldenElem::new(GaussInt::from_i64(1, 1), GaussInt::from_i64(0, -1))
}

/// Helper i sends the 4-QAM images of its two bit pairs on uses 1 and 2.
pub fn encode_dsm<T: Real>(b1: &[bool], b2: &[bool]) -> Result<Codeword<T>> {
    check_fragment(b1)?;
    check_fragment(b2)?;
    let row = |b: &[bool]| -> Result<Vec<ExactElem>> {
        Ok(vec![
            GoldenElem::from_gauss(gray4_gauss(&b[..2])?),
            GoldenElem::from_gauss(gray4_gauss(&b[2..])?),
        ])
    };
    let exact = Matrix::from_rows(vec![row(b1)?, row(b2)?])?;
    Ok(Codeword::from_exact(exact, b1, b2))
}

/// Helper i sends one 16-QAM symbol.
pub fn encode_ssm<T: Real>(b1: &[bool], b2: &[bool]) -> Result<Codeword<T>> {
    check_fragment(b1)?;
    check_fragment(b2)?;
    let exact = Matrix::from_rows(vec![
        vec![GoldenElem::from_gauss(gray16_gauss(b1)?)],
        vec![GoldenElem::from_gauss(gray16_gauss(b2)?)],
    ])?;
    Ok(Codeword::from_exact(exact, b1, b2))
}

/// Rows (α·x₁, τ(α)·τ(x₁)) and (w·α·x₂, τ(α)·τ(x₂)), w = i when twisted.
pub fn encode_mac_golden<T: Real>(b1: &[bool], b2: &[bool], twist: bool) -> Result<Codeword<T>> {
    let x1: ExactElem = lift_golden(b1)?;
    let x2: ExactElem = lift_golden(b2)?;
    let a = alpha();
    let ta = a.checked_tau()?;
    let mut lead2 = a.checked_mul(&x2)?;
    if twist {
        lead2 = lead2.checked_scale(&GaussInt::i())?;
    }
    let exact = Matrix::from_rows(vec![
        vec![a.checked_mul(&x1)?, ta.checked_mul(&x1.checked_tau()?)?],
        vec![lead2, ta.checked_mul(&x2.checked_tau()?)?],
    ])?;
    Ok(Codeword::from_exact(exact, b1, b2))
}

/// Every codeword of a scheme, in lexicographic (b₁, b₂) order, with the
/// power normalization that gives unit average energy per entry, i.e. per
/// helper per channel use.
#[derive(Clone, Debug)]
pub struct Codebook<T> {
    pub scheme: Scheme,
    pub codewords: Vec<Codeword<T>>,
    pub normalization: T,
    transmit: Vec<CMatrix<T>>,
}

impl<T: Real> Codebook<T> {
    pub fn enumerate(scheme: Scheme) -> Result<Self> {
        let codewords = BitString::all(BITS_PER_HELPER)
            .flat_map(|b1| BitString::all(BITS_PER_HELPER).map(move |b2| (b1.clone(), b2)))
            .map(|(b1, b2)| scheme.encode::<T>(&b1, &b2))
            .collect::<Result<Vec<_>>>()?;
        let normalization = T::one() / mean_entry_energy(codewords.iter().map(|c| &c.matrix)).sqrt();
        Ok(Self::with_normalization(scheme, codewords, normalization))
    }

    /// Builds a codebook with an explicit scale factor.
    pub fn with_normalization(scheme: Scheme, codewords: Vec<Codeword<T>>, normalization: T) -> Self {
        let s = num_complex::Complex::new(normalization, T::zero());
        let transmit = codewords.iter().map(|c| c.matrix.scale(&s)).collect();
        Self {
            scheme,
            codewords,
            normalization,
            transmit,
        }
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Normalized matrices actually put on the air, indexed like `codewords`.
    pub fn transmit_matrices(&self) -> &[CMatrix<T>] {
        &self.transmit
    }

    pub fn index_of(&self, b1: &[bool], b2: &[bool]) -> Option<usize> {
        self.codewords
            .iter()
            .position(|c| *c.source_bits.0 == *b1 && *c.source_bits.1 == *b2)
    }

    /// Rows of helper `h` (0-based).
    pub fn helper_rows(&self, h: usize) -> std::ops::Range<usize> {
        let nt = self.scheme.antennas_per_helper();
        h * nt..(h + 1) * nt
    }
}

/// Mean |x|² over all entries of the given matrices.
pub fn mean_entry_energy<'a, T: Real>(mats: impl Iterator<Item = &'a CMatrix<T>>) -> T {
    let (sum, count) = mats.fold((T::zero(), 0usize), |(s, n), m| {
        (s + m.frobenius_sq(), n + m.rows() * m.cols())
    });
    sum / T::from_usize(count).unwrap()
}

/// Free-function form of [`Codebook::enumerate`].
pub fn enumerate_codebook<T: Real>(scheme: Scheme) -> Result<Codebook<T>> {
    Codebook::enumerate(scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;
    use num_complex::Complex;
    use num_traits::Zero;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn dsm_examples() {
        let w = encode_dsm::<f64>(&bits("0000"), &bits("0000")).unwrap();
        assert!(w.matrix.iter().all(|&z| z == c(-1.0, -1.0)));
        let w = encode_dsm::<f64>(&bits("0011"), &bits("1100")).unwrap();
        assert_eq!(
            w.matrix,
            Matrix::from_rows(vec![
                vec![c(-1.0, -1.0), c(1.0, 1.0)],
                vec![c(1.0, 1.0), c(-1.0, -1.0)]
            ])
            .unwrap()
        );
        assert!(encode_dsm::<f64>(&bits("000"), &bits("0000")).is_err());
    }

    #[test]
    fn ssm_examples() {
        let w = encode_ssm::<f64>(&bits("0000"), &bits("0000")).unwrap();
        assert_eq!(w.matrix.shape(), (2, 1));
        assert!(w.matrix.iter().all(|&z| z == c(-3.0, -3.0)));
        let w = encode_ssm::<f64>(&bits("1111"), &bits("1111")).unwrap();
        assert!(w.matrix.iter().all(|&z| z == c(1.0, 1.0)));
    }

    #[test]
    fn untwisted_equal_symbols_are_singular() {
        for b in BitString::all(4) {
            let w = encode_mac_golden::<f64>(&b, &b, false).unwrap();
            assert!(w.exact_form.unwrap().det().unwrap().is_zero());
        }
    }

    #[test]
    fn alpha_norm_product_is_sqrt5() {
        let a = alpha();
        let prod = a.embed::<f64>().norm() * a.tau().embed::<f64>().norm();
        assert!((prod - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exact_form_embeds_to_matrix() {
        for twist in [false, true] {
            let w = encode_mac_golden::<f64>(&bits("0110"), &bits("1001"), twist).unwrap();
            let e = w.exact_form.as_ref().unwrap().map(|x| x.embed::<f64>());
            assert!(e.max_abs_diff(&w.matrix) < 1e-12);
        }
    }

    #[test]
    fn codebooks_are_complete_and_injective() {
        for scheme in Scheme::ALL {
            let cb = Codebook::<f64>::enumerate(scheme).unwrap();
            assert_eq!(cb.len(), 256);
            for (i, a) in cb.codewords.iter().enumerate() {
                for b in &cb.codewords[i + 1..] {
                    assert!(a.matrix.max_abs_diff(&b.matrix) > 1e-9);
                }
            }
            assert_eq!(cb.index_of(&bits("0001"), &bits("0010")), Some(18));
        }
    }

    #[test]
    fn normalization_constants() {
        let dsm = Codebook::<f64>::enumerate(Scheme::Dsm).unwrap();
        assert_eq!(mean_entry_energy(dsm.codewords.iter().map(|c| &c.matrix)), 2.0);
        assert!((dsm.normalization - 0.5f64.sqrt()).abs() < 1e-15);
        let ssm = Codebook::<f64>::enumerate(Scheme::Ssm).unwrap();
        assert!((ssm.normalization - 0.1f64.sqrt()).abs() < 1e-15);
        for twist in [false, true] {
            let mac = Codebook::<f64>::enumerate(Scheme::MacGolden { twist }).unwrap();
            // E|αx|² = (3−θ)(4+2θ) = 10 per entry
            assert!((mac.normalization - 0.1f64.sqrt()).abs() < 1e-13);
        }
        for scheme in Scheme::ALL {
            let cb = Codebook::<f64>::enumerate(scheme).unwrap();
            let e = mean_entry_energy(cb.transmit_matrices().iter());
            assert!((e - 1.0).abs() < 1e-12, "{scheme}: {e}");
        }
    }

    #[test]
    fn f32_codebook_builds() {
        let cb = Codebook::<f32>::enumerate(Scheme::MacGolden { twist: true }).unwrap();
        let e = mean_entry_energy(cb.transmit_matrices().iter());
        assert!((e - 1.0).abs() < 1e-5);
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("qpsk".parse::<Scheme>().is_err());
        assert_eq!(Scheme::Ssm.bits_per_channel_use(), 8.0);
        assert_eq!(Scheme::Dsm.bits_per_channel_use(), 4.0);
    }
}
