//! Exact arithmetic in the Gaussian integers ℤ[i] and in ℤ[i][θ] with
//! θ² = θ + 1, plus the ideal-chain cosets ℤ[i]/(2ᵗ) used by the coset lift.
//!
//! Elements of ℤ[i][θ] are stored in the basis (1, θ); the Galois
//! conjugation τ: θ ↦ θ̄ = 1 − θ acts as (a, b) ↦ (a + b, −b).

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::matrix::Conj;
use crate::scalar::{ExactInt, Real};
use num_complex::Complex;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

fn add<I: ExactInt>(a: &I, b: &I) -> Result<I> {
    a.checked_add(b).ok_or(Error::Overflow("add"))
}

fn sub<I: ExactInt>(a: &I, b: &I) -> Result<I> {
    a.checked_sub(b).ok_or(Error::Overflow("sub"))
}

fn mul<I: ExactInt>(a: &I, b: &I) -> Result<I> {
    a.checked_mul(b).ok_or(Error::Overflow("mul"))
}

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussInt<I> {
    pub re: I,
    pub im: I,
}

impl<I: ExactInt> GaussInt<I> {
    pub fn new(re: I, im: I) -> Self {
        Self { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Self::new(I::from_small(re), I::from_small(im))
    }

    pub fn i() -> Self {
        Self::new(I::zero(), I::one())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(add(&self.re, &rhs.re)?, add(&self.im, &rhs.im)?))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(sub(&self.re, &rhs.re)?, sub(&self.im, &rhs.im)?))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let re = sub(&mul(&self.re, &rhs.re)?, &mul(&self.im, &rhs.im)?)?;
        let im = add(&mul(&self.re, &rhs.im)?, &mul(&self.im, &rhs.re)?)?;
        Ok(Self::new(re, im))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        Self::zero().checked_sub(self)
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Result<I> {
        add(&mul(&self.re, &self.re)?, &mul(&self.im, &self.im)?)
    }

    pub fn embed<T: Real>(&self) -> Complex<T> {
        Complex::new(to_real(&self.re), to_real(&self.im))
    }

    /// Converts to another integer backend.
    pub fn cast<J: ExactInt>(&self) -> Option<GaussInt<J>> {
        Some(GaussInt::new(
            J::from_i128(self.re.to_i128()?)?,
            J::from_i128(self.im.to_i128()?)?,
        ))
    }
}

fn to_real<I: ExactInt, T: Real>(x: &I) -> T {
    T::from_f64_lossy(x.to_f64().expect("integer converts to f64"))
}

impl<I: ExactInt> Conj for GaussInt<I> {
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }
}

impl<I: ExactInt> fmt::Display for GaussInt<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// An element `a + b·θ` of ℤ[i][θ], θ = (1+√5)/2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GoldenElem<I> {
    pub a: GaussInt<I>,
    pub b: GaussInt<I>,
}

impl<I: ExactInt> GoldenElem<I> {
    pub fn new(a: GaussInt<I>, b: GaussInt<I>) -> Self {
        Self { a, b }
    }

    pub fn from_gauss(a: GaussInt<I>) -> Self {
        Self::new(a, GaussInt::zero())
    }

    pub fn theta() -> Self {
        Self::new(GaussInt::zero(), GaussInt::one())
    }

    /// √5 = 2θ − 1.
    pub fn sqrt5() -> Self {
        Self::new(GaussInt::from_i64(-1, 0), GaussInt::from_i64(2, 0))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(self.a.checked_add(&rhs.a)?, self.b.checked_add(&rhs.b)?))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(self.a.checked_sub(&rhs.a)?, self.b.checked_sub(&rhs.b)?))
    }

    /// Exact product under θ² = θ + 1:
    /// (a+bθ)(c+dθ) = (ac+bd) + (ad+bc+bd)θ.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let (a, b, c, d) = (&self.a, &self.b, &rhs.a, &rhs.b);
        let bd = b.checked_mul(d)?;
        let first = a.checked_mul(c)?.checked_add(&bd)?;
        let second = a
            .checked_mul(d)?
            .checked_add(&b.checked_mul(c)?)?
            .checked_add(&bd)?;
        Ok(Self::new(first, second))
    }

    pub fn checked_scale(&self, s: &GaussInt<I>) -> Result<Self> {
        Ok(Self::new(self.a.checked_mul(s)?, self.b.checked_mul(s)?))
    }

    /// The Galois conjugation θ ↦ 1 − θ over ℚ(i).
    pub fn checked_tau(&self) -> Result<Self> {
        Ok(Self::new(self.a.checked_add(&self.b)?, self.b.checked_neg()?))
    }

    pub fn tau(&self) -> Self {
        self.checked_tau().expect("golden element overflow")
    }

    /// N(x) = x·τ(x), which always lies in ℤ[i].
    pub fn relative_norm(&self) -> Result<GaussInt<I>> {
        let p = self.checked_mul(&self.checked_tau()?)?;
        if !p.b.is_zero() {
            return Err(Error::NormInconsistency(p.to_string()));
        }
        Ok(p.a)
    }

    /// Image under the embedding θ ↦ (1+√5)/2.
    pub fn embed<T: Real>(&self) -> Complex<T> {
        let phi = (T::one() + T::from_f64_lossy(5.0).sqrt()) / T::from_f64_lossy(2.0);
        self.a.embed::<T>() + self.b.embed::<T>() * phi
    }

    /// Image under the conjugate embedding θ ↦ (1−√5)/2.
    pub fn embed_conjugate<T: Real>(&self) -> Complex<T> {
        let phi_bar = (T::one() - T::from_f64_lossy(5.0).sqrt()) / T::from_f64_lossy(2.0);
        self.a.embed::<T>() + self.b.embed::<T>() * phi_bar
    }

    /// The θ-free part, if this element lies in ℤ[i].
    pub fn as_gauss(&self) -> Option<&GaussInt<I>> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Returns g ∈ ℤ[i] with self = g·√5, if one exists.
    pub fn div_sqrt5(&self) -> Option<GaussInt<I>> {
        // g(2θ − 1) = −g + 2gθ
        let two = I::from_small(2);
        let (re_q, re_r) = self.b.re.div_rem(&two);
        let (im_q, im_r) = self.b.im.div_rem(&two);
        if !re_r.is_zero() || !im_r.is_zero() {
            return None;
        }
        let g = GaussInt::new(re_q, im_q);
        (self.a == g.checked_neg().ok()?).then_some(g)
    }

    pub fn cast<J: ExactInt>(&self) -> Option<GoldenElem<J>> {
        Some(GoldenElem::new(self.a.cast()?, self.b.cast()?))
    }
}

impl<I: ExactInt> Conj for GoldenElem<I> {
    fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj())
    }
}

impl<I: ExactInt> fmt::Display for GoldenElem<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})θ", self.a, self.b)
    }
}

macro_rules! checked_ops {
    ($ty:ident) => {
        impl<I: ExactInt> Add for $ty<I> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                self.checked_add(&rhs).expect(concat!(stringify!($ty), " overflow"))
            }
        }
        impl<I: ExactInt> Sub for $ty<I> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self.checked_sub(&rhs).expect(concat!(stringify!($ty), " overflow"))
            }
        }
        impl<I: ExactInt> Mul for $ty<I> {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                self.checked_mul(&rhs).expect(concat!(stringify!($ty), " overflow"))
            }
        }
        impl<I: ExactInt> Neg for $ty<I> {
            type Output = Self;
            fn neg(self) -> Self {
                Self::zero() - self
            }
        }
    };
}

checked_ops!(GaussInt);
checked_ops!(GoldenElem);

impl<I: ExactInt> Zero for GaussInt<I> {
    fn zero() -> Self {
        Self::new(I::zero(), I::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<I: ExactInt> One for GaussInt<I> {
    fn one() -> Self {
        Self::new(I::one(), I::zero())
    }
}

impl<I: ExactInt> Zero for GoldenElem<I> {
    fn zero() -> Self {
        Self::new(GaussInt::zero(), GaussInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<I: ExactInt> One for GoldenElem<I> {
    fn one() -> Self {
        Self::new(GaussInt::one(), GaussInt::zero())
    }
}

/// Free-function form of [`GoldenElem::checked_mul`].
pub fn golden_mul<I: ExactInt>(x: &GoldenElem<I>, y: &GoldenElem<I>) -> Result<GoldenElem<I>> {
    x.checked_mul(y)
}

/// Free-function form of [`GoldenElem::tau`].
pub fn tau<I: ExactInt>(x: &GoldenElem<I>) -> GoldenElem<I> {
    x.tau()
}

/// Free-function form of [`GoldenElem::relative_norm`].
pub fn relative_norm<I: ExactInt>(x: &GoldenElem<I>) -> Result<GaussInt<I>> {
    x.relative_norm()
}

/// A coset of the ideal (2ᵗ) in ℤ[i], named by its reduced representative
/// with both coordinates in `0..2ᵗ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    t: u32,
    re: u64,
    im: u64,
}

impl CosetLabel {
    pub const MAX_LEVEL: u32 = 62;

    pub fn new(t: u32, re: u64, im: u64) -> Result<Self> {
        check_level(t)?;
        let m = 1u64 << t;
        if re >= m || im >= m {
            return Err(Error::Dimension(format!(
                "representative {re}+{im}i not reduced mod 2^{t}"
            )));
        }
        Ok(Self { t, re, im })
    }

    /// The coset of `x` modulo (2ᵗ).
    pub fn of<I: ExactInt>(x: &GaussInt<I>, t: u32) -> Result<Self> {
        check_level(t)?;
        let m = I::from_u64(1u64 << t).ok_or(Error::Overflow("coset modulus"))?;
        let reduce = |v: &I| v.mod_floor(&m).to_u64().expect("reduced residue fits u64");
        Ok(Self {
            t,
            re: reduce(&x.re),
            im: reduce(&x.im),
        })
    }

    /// Number of cosets at level t: 2^{2t}.
    pub fn count(t: u32) -> u128 {
        1u128 << (2 * t)
    }

    pub fn level(&self) -> u32 {
        self.t
    }

    pub fn representative<I: ExactInt>(&self) -> GaussInt<I> {
        GaussInt::new(
            I::from_u64(self.re).expect("representative fits"),
            I::from_u64(self.im).expect("representative fits"),
        )
    }
}

fn check_level(t: u32) -> Result<()> {
    if t == 0 || t > CosetLabel::MAX_LEVEL {
        return Err(Error::CosetLevel(t));
    }
    Ok(())
}

/// Maps a 2t-bit string to a coset of (2ᵗ): the first t bits give the real
/// part and the last t the imaginary part, both most significant first.
pub fn coset_encode(bits: &[bool]) -> Result<CosetLabel> {
    if bits.is_empty() || !bits.len().is_multiple_of(2) {
        return Err(Error::OddCosetLength(bits.len()));
    }
    let t = bits.len() / 2;
    let t = u32::try_from(t).map_err(|_| Error::CosetLevel(u32::MAX))?;
    check_level(t)?;
    let read = |s: &[bool]| s.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
    CosetLabel::new(t, read(&bits[..t as usize]), read(&bits[t as usize..]))
}

/// Inverse of [`coset_encode`].
pub fn coset_decode(label: &CosetLabel) -> BitString {
    let t = label.t as usize;
    BitString::from_u64(label.re, t).concat(&BitString::from_u64(label.im, t))
}
