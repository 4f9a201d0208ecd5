//! Conditional non-vanishing determinant check.
//!
//! For every codeword (or every pairwise difference) and every subset of j
//! helpers, the helpers' row blocks form S. Square S is scored by |det S|;
//! rectangular S by |det(S·S†)|. Codebooks with exact entries are scored in
//! ℤ[i][θ] and cross-checked against the complex path.

use super::{Codebook, ExactElem};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Matrix};
use crate::scalar::Real;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Numeric values below this magnitude count as zero determinants.
pub const ZERO_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CnvdMode {
    #[default]
    OverCodewords,
    OverDifferences,
}

impl fmt::Display for CnvdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CnvdMode::OverCodewords => "over-codewords",
            CnvdMode::OverDifferences => "over-differences",
        })
    }
}

impl FromStr for CnvdMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "over-codewords" => Ok(CnvdMode::OverCodewords),
            "over-differences" => Ok(CnvdMode::OverDifferences),
            _ => Err(Error::Unknown {
                kind: "cnvd mode",
                value: s.to_string(),
            }),
        }
    }
}

/// Statistics for all helper subsets of one size j.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetStats {
    pub j: usize,
    pub evaluated: usize,
    pub zero_count: usize,
    /// Smallest nonzero score; from the exact path when available.
    pub min_nonzero_absdet: Option<f64>,
    /// Same minimum computed purely from the complex matrices.
    pub numeric_min_nonzero_absdet: Option<f64>,
    pub witness_b1: Option<BitString>,
    pub witness_b2: Option<BitString>,
    /// Second codeword of the witness difference (over-differences only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_minus_b1: Option<BitString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_minus_b2: Option<BitString>,
    /// 1-based helper indices of the witness subset.
    pub witness_helpers: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_exact_det: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnvdReport {
    pub scheme: super::Scheme,
    pub mode: CnvdMode,
    pub normalization: f64,
    pub exact: bool,
    pub per_j: Vec<SubsetStats>,
    /// Largest |numeric − embed(exact)| over all scored submatrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_exact_numeric_deviation: Option<f64>,
}

impl CnvdReport {
    /// True when every subset size has at least one nonzero score.
    pub fn all_have_nonzero_minimum(&self) -> bool {
        self.per_j
            .iter()
            .all(|s| s.min_nonzero_absdet.is_some_and(|m| m > 0.0))
    }
}

pub(crate) fn subsets(k: usize, j: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for h in start..k {
            cur.push(h);
            go(h + 1, k, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, j, &mut Vec::new(), &mut out);
    out
}

fn score_numeric<T: Real>(s: &CMatrix<T>) -> Result<num_complex::Complex<f64>> {
    let d = if s.is_square() {
        s.det()?
    } else {
        s.matmul(&s.adjoint())?.det()?
    };
    Ok(num_complex::Complex::new(d.re.to_f64_lossy(), d.im.to_f64_lossy()))
}

fn score_exact(s: &Matrix<ExactElem>) -> Result<ExactElem> {
    if s.is_square() {
        s.det()
    } else {
        s.matmul(&s.adjoint())?.det()
    }
}

#[derive(Clone, Debug)]
struct Eval {
    numeric_abs: f64,
    exact: Option<ExactElem>,
    deviation: Option<f64>,
}

impl Eval {
    fn exact_abs(&self) -> Option<f64> {
        self.exact.as_ref().map(|e| e.embed::<f64>().norm())
    }
}

/// Rows owned by the listed helpers.
fn subset_rows<T: Real>(cb: &Codebook<T>, helpers: &[usize]) -> Vec<usize> {
    helpers.iter().flat_map(|&h| cb.helper_rows(h)).collect()
}

/// Numeric score of one codeword (or difference) restricted to `helpers`
/// (0-based), as used by [`cnvd_check`].
pub fn subset_absdet<T: Real>(
    cb: &Codebook<T>,
    index: usize,
    minus: Option<usize>,
    helpers: &[usize],
) -> Result<f64> {
    let m = test_matrix(cb, index, minus)?;
    Ok(score_numeric(&m.select_rows(&subset_rows(cb, helpers))?)?.norm())
}

fn test_matrix<T: Real>(cb: &Codebook<T>, index: usize, minus: Option<usize>) -> Result<CMatrix<T>> {
    let a = &cb.codewords[index].matrix;
    match minus {
        None => Ok(a.clone()),
        Some(k) => a.sub(&cb.codewords[k].matrix),
    }
}

fn test_exact<T: Real>(
    cb: &Codebook<T>,
    index: usize,
    minus: Option<usize>,
) -> Result<Option<Matrix<ExactElem>>> {
    let Some(a) = cb.codewords[index].exact_form.as_ref() else {
        return Ok(None);
    };
    match minus {
        None => Ok(Some(a.clone())),
        Some(k) => {
            let b = cb.codewords[k]
                .exact_form
                .as_ref()
                .ok_or_else(|| Error::Dimension("mixed exact and numeric codewords".into()))?;
            Ok(Some(a.sub(b)?))
        }
    }
}

/// Scans the codebook for the smallest nonzero determinant score per
/// helper-subset size. The scan is parallel; the result does not depend on
/// scheduling (minima are resolved in enumeration order).
pub fn cnvd_check<T: Real>(cb: &Codebook<T>, mode: CnvdMode) -> Result<CnvdReport> {
    if cb.is_empty() {
        return Err(Error::EmptyCodebook);
    }
    let exact = cb.codewords.iter().all(|c| c.exact_form.is_some());
    let n = cb.len();
    let tests: Vec<(usize, Option<usize>)> = match mode {
        CnvdMode::OverCodewords => (0..n).map(|i| (i, None)).collect(),
        CnvdMode::OverDifferences => (0..n)
            .flat_map(|i| (i + 1..n).map(move |k| (i, Some(k))))
            .collect(),
    };
    let k = cb.scheme.helpers();
    let all_subsets: Vec<Vec<Vec<usize>>> = (1..=k).map(|j| subsets(k, j)).collect();
    let row_sets: Vec<Vec<Vec<usize>>> = all_subsets
        .iter()
        .map(|ss| ss.iter().map(|s| subset_rows(cb, s)).collect())
        .collect();

    // evals[t][j-1][s]
    let evals: Vec<Vec<Vec<Eval>>> = tests
        .par_iter()
        .map(|&(i, minus)| -> Result<Vec<Vec<Eval>>> {
            let m = test_matrix(cb, i, minus)?;
            let me = if exact { test_exact(cb, i, minus)? } else { None };
            row_sets
                .iter()
                .map(|rows_j| {
                    rows_j
                        .iter()
                        .map(|rows| {
                            let num = score_numeric(&m.select_rows(rows)?)?;
                            let ex = me
                                .as_ref()
                                .map(|me| score_exact(&me.select_rows(rows)?))
                                .transpose()?;
                            let deviation = ex.as_ref().map(|e| (num - e.embed::<f64>()).norm());
                            Ok(Eval {
                                numeric_abs: num.norm(),
                                exact: ex,
                                deviation,
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut per_j = Vec::with_capacity(k);
    let mut max_dev: Option<f64> = None;
    for (jdx, ss) in all_subsets.iter().enumerate() {
        let mut stats = SubsetStats {
            j: jdx + 1,
            evaluated: 0,
            zero_count: 0,
            min_nonzero_absdet: None,
            numeric_min_nonzero_absdet: None,
            witness_b1: None,
            witness_b2: None,
            witness_minus_b1: None,
            witness_minus_b2: None,
            witness_helpers: Vec::new(),
            witness_exact_det: None,
        };
        for (t, &(i, minus)) in tests.iter().enumerate() {
            for (s, helpers) in ss.iter().enumerate() {
                let e = &evals[t][jdx][s];
                stats.evaluated += 1;
                if let Some(d) = e.deviation {
                    max_dev = Some(max_dev.map_or(d, |m: f64| m.max(d)));
                }
                if e.numeric_abs >= ZERO_THRESHOLD
                    && stats
                        .numeric_min_nonzero_absdet
                        .is_none_or(|m| e.numeric_abs < m)
                {
                    stats.numeric_min_nonzero_absdet = Some(e.numeric_abs);
                }
                let (is_zero, value) = match &e.exact {
                    Some(x) => (x.is_zero(), e.exact_abs().unwrap()),
                    None => (e.numeric_abs < ZERO_THRESHOLD, e.numeric_abs),
                };
                if is_zero {
                    stats.zero_count += 1;
                    continue;
                }
                if stats.min_nonzero_absdet.is_none_or(|m| value < m) {
                    stats.min_nonzero_absdet = Some(value);
                    let (b1, b2) = &cb.codewords[i].source_bits;
                    stats.witness_b1 = Some(b1.clone());
                    stats.witness_b2 = Some(b2.clone());
                    let minus_bits = minus.map(|m| cb.codewords[m].source_bits.clone());
                    stats.witness_minus_b1 = minus_bits.as_ref().map(|b| b.0.clone());
                    stats.witness_minus_b2 = minus_bits.map(|b| b.1);
                    stats.witness_helpers = helpers.iter().map(|h| h + 1).collect();
                    stats.witness_exact_det = e.exact.as_ref().map(|x| x.to_string());
                }
            }
        }
        per_j.push(stats);
    }

    Ok(CnvdReport {
        scheme: cb.scheme,
        mode,
        normalization: cb.normalization.to_f64_lossy(),
        exact,
        per_j,
        max_exact_numeric_deviation: max_dev,
    })
}
