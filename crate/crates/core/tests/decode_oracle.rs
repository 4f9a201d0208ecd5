//! ML decoding against an independent full scan built on nalgebra.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stsc::channel::{draw_channel, noise_std_from_snr, transmit, FadingModel};
use stsc::decode::ml_search;
use stsc::{ml_decode, CMatrix64, ChannelRealization, Codebook64, Complex64, Scheme};

fn dm(m: &CMatrix64) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

fn naive_scan(y: &CMatrix64, real: &ChannelRealization<f64>, cands: &[CMatrix64]) -> (usize, f64) {
    let y = dm(y);
    let mut best = (usize::MAX, f64::INFINITY);
    for (i, x) in cands.iter().enumerate() {
        let x = dm(x);
        let mut metric = 0.0;
        for (t, h) in real.h_per_use.iter().enumerate() {
            let r = y.column(t) - dm(h) * x.column(t);
            metric += r.norm_squared();
        }
        if metric < best.1 {
            best = (i, metric);
        }
    }
    best
}

#[test]
fn ml_decode_matches_naive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for scheme in Scheme::ALL {
        let cb = Codebook64::enumerate(scheme).unwrap();
        for k in 0..1000 {
            let fading = if k % 2 == 0 { FadingModel::Slow } else { FadingModel::Fast };
            let snr = rng.random_range(-5.0..25.0);
            let real = draw_channel(2, 2, scheme.channel_uses(), fading, &mut rng)
                .with_noise_std(noise_std_from_snr(snr, 2));
            let idx = rng.random_range(0..cb.len());
            let y = transmit(&cb.transmit_matrices()[idx], &real, &mut rng).unwrap();
            let got = ml_decode(&y, &real, &cb).unwrap();
            let (want, metric) = naive_scan(&y.y, &real, cb.transmit_matrices());
            assert_eq!(got.index, want, "{scheme} instance {k}");
            assert!((got.metric - metric).abs() <= 1e-9 * metric.max(1.0));
            assert_eq!(got.bits, cb.codewords[want].source_bits);
        }
    }
}

#[test]
fn decision_is_invariant_under_codebook_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cb = Codebook64::enumerate(Scheme::MacGolden { twist: true }).unwrap();
    let mats = cb.transmit_matrices();
    let mut perm: Vec<usize> = (0..mats.len()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let permuted: Vec<CMatrix64> = perm.iter().map(|&i| mats[i].clone()).collect();
    for _ in 0..200 {
        let real = draw_channel(2, 2, 2, FadingModel::Slow, &mut rng).with_noise_std(0.7);
        let y = transmit(&mats[rng.random_range(0..256)], &real, &mut rng).unwrap();
        let (a, _) = ml_search(&y.y, &real, mats).unwrap();
        let (b, _) = ml_search(&y.y, &real, &permuted).unwrap();
        assert_eq!(a, perm[b]);
    }
}

#[test]
fn ssm_slow_and_fast_paths_coincide() {
    let cb = Codebook64::enumerate(Scheme::Ssm).unwrap();
    for seed in 0..200 {
        let mut r1 = ChaCha8Rng::seed_from_u64(seed);
        let mut r2 = ChaCha8Rng::seed_from_u64(seed);
        let slow = draw_channel(2, 2, 1, FadingModel::Slow, &mut r1).with_noise_std(1.0);
        let fast = draw_channel(2, 2, 1, FadingModel::Fast, &mut r2).with_noise_std(1.0);
        assert_eq!(slow, fast);
        let x = &cb.transmit_matrices()[seed as usize];
        let y1 = transmit(x, &slow, &mut r1).unwrap();
        let y2 = transmit(x, &fast, &mut r2).unwrap();
        assert_eq!(y1, y2);
        assert_eq!(ml_decode(&y1, &slow, &cb).unwrap(), ml_decode(&y2, &fast, &cb).unwrap());
    }
}
