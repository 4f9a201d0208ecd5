//! Lift functions from bit strings to complex symbols: Gray-mapped 4-QAM
//! and 16-QAM, and the lift of 4-bit fragments into ℤ[i][θ].

use crate::algebra::{GaussInt, GoldenElem};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::scalar::{ExactInt, Real};
use num_complex::Complex;

fn expect_len(bits: &[bool], n: usize) -> Result<()> {
    if bits.len() != n {
        return Err(Error::BitLength {
            expected: n,
            got: bits.len(),
        });
    }
    Ok(())
}

// 1-bit axis: 0 → −1, 1 → +1.
fn axis2(b: bool) -> i64 {
    if b {
        1
    } else {
        -1
    }
}

// 2-bit Gray axis: 00 → −3, 01 → −1, 11 → +1, 10 → +3.
fn axis4(b0: bool, b1: bool) -> i64 {
    match (b0, b1) {
        (false, false) => -3,
        (false, true) => -1,
        (true, true) => 1,
        (true, false) => 3,
    }
}

/// Gray 4-QAM as a Gaussian integer: 00→−1−i, 01→−1+i, 11→1+i, 10→1−i.
pub fn gray4_gauss<I: ExactInt>(bits: &[bool]) -> Result<GaussInt<I>> {
    expect_len(bits, 2)?;
    Ok(GaussInt::from_i64(axis2(bits[0]), axis2(bits[1])))
}

pub fn gray4<T: Real>(bits: &[bool]) -> Result<Complex<T>> {
    Ok(gray4_gauss::<i64>(bits)?.embed())
}

/// Gray 16-QAM on {±1,±3}²; the first two bits select the real axis.
pub fn gray16_gauss<I: ExactInt>(bits: &[bool]) -> Result<GaussInt<I>> {
    expect_len(bits, 4)?;
    Ok(GaussInt::from_i64(
        axis4(bits[0], bits[1]),
        axis4(bits[2], bits[3]),
    ))
}

pub fn gray16<T: Real>(bits: &[bool]) -> Result<Complex<T>> {
    Ok(gray16_gauss::<i64>(bits)?.embed())
}

/// x₁ + x₂θ with x₁, x₂ the Gray 4-QAM images of the two bit pairs.
pub fn lift_golden<I: ExactInt>(bits: &[bool]) -> Result<GoldenElem<I>> {
    expect_len(bits, 4)?;
    Ok(GoldenElem::new(
        gray4_gauss(&bits[..2])?,
        gray4_gauss(&bits[2..])?,
    ))
}

fn degray4<I: ExactInt>(x: &GaussInt<I>) -> Result<[bool; 2]> {
    let one = I::one();
    let sign = |v: &I| {
        if *v == one {
            Some(true)
        } else if *v == -one.clone() {
            Some(false)
        } else {
            None
        }
    };
    match (sign(&x.re), sign(&x.im)) {
        (Some(r), Some(i)) => Ok([r, i]),
        _ => Err(Error::NotInConstellation(x.to_string())),
    }
}

/// Inverse of [`lift_golden`]; fails if either coordinate is off 4-QAM.
pub fn delift_golden<I: ExactInt>(x: &GoldenElem<I>) -> Result<BitString> {
    let [a0, a1] = degray4(&x.a)?;
    let [b0, b1] = degray4(&x.b)?;
    Ok(BitString::new(vec![a0, a1, b0, b1]))
}

/// A finite Gray-labelled constellation.
#[derive(Clone, Debug)]
pub struct Constellation<T> {
    order: usize,
    points: Vec<(BitString, Complex<T>)>,
}

impl<T: Real> Constellation<T> {
    pub fn qam4() -> Self {
        Self::build(2, |b| gray4(b))
    }

    pub fn qam16() -> Self {
        Self::build(4, |b| gray16(b))
    }

    fn build(bits: usize, map: impl Fn(&[bool]) -> Result<Complex<T>>) -> Self {
        let points = BitString::all(bits)
            .map(|b| {
                let p = map(&b).expect("label length matches");
                (b, p)
            })
            .collect();
        Self {
            order: 1 << bits,
            points,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.order.trailing_zeros() as usize
    }

    /// Points in lexicographic label order.
    pub fn points(&self) -> &[(BitString, Complex<T>)] {
        &self.points
    }

    pub fn map(&self, bits: &[bool]) -> Result<Complex<T>> {
        expect_len(bits, self.bits_per_symbol())?;
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        Ok(self.points[idx].1)
    }

    pub fn average_energy(&self) -> T {
        let total = self.points.iter().fold(T::zero(), |acc, (_, p)| acc + p.norm_sqr());
        total / T::from_usize(self.order).unwrap()
    }

    /// Nearest-point demapping; ties go to the lexicographically smallest
    /// label.
    pub fn demap(&self, point: Complex<T>) -> BitString {
        let mut best = 0;
        let mut best_d = (self.points[0].1 - point).norm_sqr();
        for (i, (_, p)) in self.points.iter().enumerate().skip(1) {
            let d = (p - point).norm_sqr();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        self.points[best].0.clone()
    }

    pub fn min_distance_sq(&self) -> T {
        let mut m = T::infinity();
        for (i, (_, p)) in self.points.iter().enumerate() {
            for (_, q) in &self.points[i + 1..] {
                m = m.min((p - q).norm_sqr());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;

    type C = Complex<f64>;

    #[test]
    fn gray4_assignments() {
        assert_eq!(gray4::<f64>(&bits("00")).unwrap(), C::new(-1.0, -1.0));
        assert_eq!(gray4::<f64>(&bits("01")).unwrap(), C::new(-1.0, 1.0));
        assert_eq!(gray4::<f64>(&bits("11")).unwrap(), C::new(1.0, 1.0));
        assert_eq!(gray4::<f64>(&bits("10")).unwrap(), C::new(1.0, -1.0));
        assert_eq!(
            gray4::<f64>(&bits("0")),
            Err(Error::BitLength { expected: 2, got: 1 })
        );
    }

    #[test]
    fn gray16_assignments() {
        assert_eq!(gray16::<f64>(&bits("0000")).unwrap(), C::new(-3.0, -3.0));
        assert_eq!(gray16::<f64>(&bits("1111")).unwrap(), C::new(1.0, 1.0));
        assert_eq!(gray16::<f64>(&bits("1001")).unwrap(), C::new(3.0, -1.0));
        assert!(gray16::<f64>(&bits("00000")).is_err());
    }

    #[test]
    fn gray16_distinct_with_energy_ten() {
        let c = Constellation::<f64>::qam16();
        let mut pts: Vec<(i64, i64)> = c
            .points()
            .iter()
            .map(|(_, p)| (p.re as i64, p.im as i64))
            .collect();
        pts.sort();
        pts.dedup();
        assert_eq!(pts.len(), 16);
        assert_eq!(c.average_energy(), 10.0);
        assert_eq!(Constellation::<f64>::qam4().average_energy(), 2.0);
    }

    #[test]
    fn lift_golden_examples() {
        let x = lift_golden::<i64>(&bits("0000")).unwrap();
        assert_eq!(x.a, GaussInt::from_i64(-1, -1));
        assert_eq!(x.b, GaussInt::from_i64(-1, -1));
        let x = lift_golden::<i64>(&bits("1100")).unwrap();
        assert_eq!(x.a, GaussInt::from_i64(1, 1));
        assert_eq!(x.b, GaussInt::from_i64(-1, -1));
        assert!(delift_golden(&GoldenElem::<i64>::theta()).is_err());
    }

    #[test]
    fn demap_examples() {
        let c = Constellation::<f64>::qam4();
        assert_eq!(c.demap(C::new(-1.1, -0.9)), bits("00"));
        assert_eq!(c.demap(C::new(1.0, 1.0)), bits("11"));
        assert_eq!(c.demap(C::new(0.0, 0.0)), bits("00"));
    }

    #[test]
    fn gray_adjacency_exhaustive() {
        for c in [Constellation::<f64>::qam4(), Constellation::<f64>::qam16()] {
            let dmin = c.min_distance_sq();
            let pts = c.points();
            let mut pairs = 0;
            for (i, (bi, pi)) in pts.iter().enumerate() {
                for (bj, pj) in &pts[i + 1..] {
                    if ((pi - pj).norm_sqr() - dmin).abs() < 1e-12 {
                        assert_eq!(bi.hamming(bj), 1, "{bi} vs {bj}");
                        pairs += 1;
                    }
                }
            }
            // grid neighbours: 2·√M·(√M−1)
            let side = (c.order() as f64).sqrt() as usize;
            assert_eq!(pairs, 2 * side * (side - 1));
        }
    }

    #[test]
    fn demap_inverts_map_exhaustive() {
        for c in [Constellation::<f64>::qam4(), Constellation::<f64>::qam16()] {
            for (b, p) in c.points() {
                assert_eq!(&c.demap(*p), b);
                assert_eq!(c.map(b).unwrap(), *p);
            }
        }
    }
}
