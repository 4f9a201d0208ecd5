//! CNVD properties of the two-user golden MAC code, checked against an
//! independent closed form and an independent numeric determinant.

use nalgebra::DMatrix;
use stsc::stcode::{subset_absdet, ExactElem};
use stsc::{cnvd_check, BitString, CnvdMode, Codebook64, Complex64, GaussBig, Scheme};

fn nalgebra_det(m: &stsc::CMatrix64) -> Complex64 {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice()).determinant()
}

fn four_qam(bits: &[bool]) -> GaussBig {
    let s = |b: bool| if b { 1 } else { -1 };
    GaussBig::from_i64(s(bits[0]), s(bits[1]))
}

/// −√5·(2+i)·(ad − bc) for x₁ = a + bθ, x₂ = c + dθ.
fn closed_form_det(b1: &BitString, b2: &BitString) -> ExactElem {
    let (a, b) = (four_qam(&b1[..2]), four_qam(&b1[2..]));
    let (c, d) = (four_qam(&b2[..2]), four_qam(&b2[2..]));
    let adbc = a * d - b * c;
    let factor = GaussBig::from_i64(-2, -1) * adbc;
    ExactElem::sqrt5().checked_scale(&factor).unwrap()
}

#[test]
fn untwisted_determinant_closed_form_holds_for_every_codeword() {
    let cb = Codebook64::enumerate(Scheme::MacGolden { twist: false }).unwrap();
    for cw in &cb.codewords {
        let exact = cw.exact_form.as_ref().unwrap().det().unwrap();
        assert_eq!(exact, closed_form_det(&cw.source_bits.0, &cw.source_bits.1));
        assert!((nalgebra_det(&cw.matrix) - exact.embed::<f64>()).norm() < 1e-9);
    }
}

#[test]
fn numeric_and_exact_determinants_agree_with_twist() {
    let cb = Codebook64::enumerate(Scheme::MacGolden { twist: true }).unwrap();
    for cw in &cb.codewords {
        let exact = cw.exact_form.as_ref().unwrap().det().unwrap();
        assert!((nalgebra_det(&cw.matrix) - exact.embed::<f64>()).norm() < 1e-9);
    }
}

#[test]
fn untwisted_cnvd_report() {
    let cb = Codebook64::enumerate(Scheme::MacGolden { twist: false }).unwrap();
    let r = cnvd_check(&cb, CnvdMode::OverCodewords).unwrap();
    assert!(r.exact);
    assert!(r.max_exact_numeric_deviation.unwrap() < 1e-9);

    // j = 2: zero exactly when ad = bc
    let zeros = cb
        .codewords
        .iter()
        .filter(|c| closed_form_det(&c.source_bits.0, &c.source_bits.1) == ExactElem::default())
        .count();
    let j2 = &r.per_j[1];
    assert_eq!(j2.evaluated, 256);
    assert_eq!(j2.zero_count, zeros);
    let kappa = j2.min_nonzero_absdet.unwrap();
    assert!((kappa - 10.0 * 2f64.sqrt()).abs() < 1e-9, "{kappa}");
    assert!((kappa - j2.numeric_min_nonzero_absdet.unwrap()).abs() < 1e-9);

    // j = 1: every single-helper Gram determinant is strictly positive
    let j1 = &r.per_j[0];
    assert_eq!(j1.evaluated, 512);
    assert_eq!(j1.zero_count, 0);
    // |αx|² + |τ(α)τ(x)|² minimised over 4-QAM pairs; independent check
    let min_j1 = cb
        .codewords
        .iter()
        .flat_map(|c| {
            (0..2).map(move |r| c.matrix.row(r).iter().map(|z| z.norm_sqr()).sum::<f64>())
        })
        .fold(f64::INFINITY, f64::min);
    assert!((j1.min_nonzero_absdet.unwrap() - min_j1).abs() < 1e-9);

    // identical across runs, bit for bit
    assert_eq!(r, cnvd_check(&cb, CnvdMode::OverCodewords).unwrap());
}

#[test]
fn nonzero_untwisted_determinants_are_sqrt5_times_gaussian_integers() {
    let cb = Codebook64::enumerate(Scheme::MacGolden { twist: false }).unwrap();
    let mut nonzero = 0;
    for cw in &cb.codewords {
        let det = cw.exact_form.as_ref().unwrap().det().unwrap();
        if det != ExactElem::default() {
            nonzero += 1;
            let g = det.div_sqrt5().expect("det/√5 in ℤ[i]");
            // |det| = √5·|g| ≥ √5 since g is a nonzero Gaussian integer
            assert!(g.norm().unwrap() >= 1.into());
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn witnesses_reproduce_reported_minima() {
    for twist in [false, true] {
        let cb = Codebook64::enumerate(Scheme::MacGolden { twist }).unwrap();
        for mode in [CnvdMode::OverCodewords, CnvdMode::OverDifferences] {
            let r = cnvd_check(&cb, mode).unwrap();
            for s in &r.per_j {
                let i = cb
                    .index_of(s.witness_b1.as_ref().unwrap(), s.witness_b2.as_ref().unwrap())
                    .unwrap();
                let minus = s
                    .witness_minus_b1
                    .as_ref()
                    .map(|b1| cb.index_of(b1, s.witness_minus_b2.as_ref().unwrap()).unwrap());
                assert_eq!(minus.is_some(), mode == CnvdMode::OverDifferences);
                let helpers: Vec<usize> = s.witness_helpers.iter().map(|h| h - 1).collect();
                let v = subset_absdet(&cb, i, minus, &helpers).unwrap();
                assert!((v - s.min_nonzero_absdet.unwrap()).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn differences_of_untwisted_code_reduce_to_codeword_dets() {
    // The code is ℤ[i]-linear in (x₁, x₂), so difference dets are
    // −√5(2+i)(Δa·Δd − Δb·Δc) with Δ over 4-QAM differences {0, ±2, ±2i, ±2±2i}.
    let cb = Codebook64::enumerate(Scheme::MacGolden { twist: false }).unwrap();
    let r = cnvd_check(&cb, CnvdMode::OverDifferences).unwrap();
    assert_eq!(r.per_j[1].evaluated, 256 * 255 / 2);
    let mut best = f64::INFINITY;
    let diffs: Vec<(i64, i64)> = [-2, 0, 2]
        .iter()
        .flat_map(|&re| [-2, 0, 2].iter().map(move |&im| (re, im)))
        .collect();
    for &a in &diffs {
        for &b in &diffs {
            for &c in &diffs {
                for &d in &diffs {
                    let g = |p: (i64, i64)| GaussBig::from_i64(p.0, p.1);
                    let v = g(a) * g(d) - g(b) * g(c);
                    let n = v.norm().unwrap();
                    if n != 0.into() {
                        let abs = 5.0 * (n.to_string().parse::<f64>().unwrap()).sqrt();
                        best = best.min(abs);
                    }
                }
            }
        }
    }
    assert!((r.per_j[1].min_nonzero_absdet.unwrap() - best).abs() < 1e-9);
}
