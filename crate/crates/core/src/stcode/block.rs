use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Matrix};
use crate::scalar::Real;
use num_complex::Complex;
use num_traits::Zero;

/// Stacks the helpers' inner blocks into the MAC codeword
///
/// ```text
/// [ X_1  c_1(X_1)  …  c_{d-1}(X_1) ]
/// [  ⋮                            ]
/// [ X_K  c_1(X_K)  …  c_{d-1}(X_K) ]
/// ```
///
/// where each `c_m` is applied entrywise. `conjugates[0]` must be the
/// identity; this is checked on the supplied entries.
pub fn assemble_block<E>(inner: &[Matrix<E>], conjugates: &[&dyn Fn(&E) -> E]) -> Result<Matrix<E>>
where
    E: Clone + PartialEq,
{
    let first = inner
        .first()
        .ok_or_else(|| Error::Dimension("no inner blocks".into()))?;
    let nt = first.rows();
    if nt == 0 || conjugates.is_empty() {
        return Err(Error::Dimension("empty block or conjugate list".into()));
    }
    if let Some(bad) = inner.iter().find(|m| m.shape() != (nt, nt)) {
        return Err(Error::Dimension(format!(
            "inner block {:?}, expected {nt}x{nt}",
            bad.shape()
        )));
    }
    let ident = conjugates[0];
    if inner.iter().flat_map(|m| m.iter()).any(|x| ident(x) != *x) {
        return Err(Error::Dimension("first conjugate is not the identity".into()));
    }
    let conj_blocks: Vec<Vec<Matrix<E>>> = inner
        .iter()
        .map(|x| conjugates.iter().map(|c| x.map(|e| c(e))).collect())
        .collect();
    Ok(Matrix::from_fn(inner.len() * nt, conjugates.len() * nt, |r, c| {
        conj_blocks[r / nt][c / nt][(r % nt, c % nt)].clone()
    }))
}

/// Left regular representation of x₀ + e·x₁ + … + e^{n−1}·x_{n−1} in the
/// cyclic algebra with eⁿ = γ and x·e = e·σ(x).
///
/// `coords[k][m]` is the complex embedding of σᵐ(x_k), for m = 0..n. Entry
/// (i, j) of the result is σʲ(x_{i−j}) on and below the diagonal and
/// γ·σʲ(x_{n+i−j}) above it.
pub fn lrr<T: Real>(coords: &[Vec<Complex<T>>], gamma: Complex<T>) -> Result<CMatrix<T>> {
    let n = coords.len();
    if n == 0 {
        return Err(Error::Dimension("no coordinates".into()));
    }
    if let Some(bad) = coords.iter().find(|c| c.len() < n) {
        return Err(Error::Dimension(format!(
            "coordinate has {} conjugates, need {n}",
            bad.len()
        )));
    }
    if gamma.is_zero() {
        return Err(Error::Dimension("gamma must be nonzero".into()));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i >= j {
            coords[i - j][j]
        } else {
            gamma * coords[n + i - j][j]
        }
    }))
}
