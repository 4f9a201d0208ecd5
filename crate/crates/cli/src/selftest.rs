//! End-to-end sanity checks runnable from a release binary.

use crate::error::{runtime, CliResult};
use anyhow::anyhow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stsc::channel::{draw_channel, noise_std_from_snr, transmit, FadingModel};
use stsc::stcode::alpha;
use stsc::{ml_decode, Codebook64, Complex64, GaussBig, GoldenBig, Scheme, SimConfig, Simulator64};

type Check = Result<String, String>;

/// τ must fix ℤ[i], have order two, and give norms in ℤ[i] with
/// N(α) = 2+i and N(θ) = −1.
pub fn check_norm(tau: &dyn Fn(&GoldenBig) -> GoldenBig) -> Check {
    let norm = |x: &GoldenBig| -> Result<GaussBig, String> {
        let p = x.checked_mul(&tau(x)).map_err(|e| e.to_string())?;
        p.as_gauss()
            .cloned()
            .ok_or_else(|| format!("N({x}) = {p} is not in Z[i]"))
    };
    let a = alpha();
    if norm(&a)? != GaussBig::from_i64(2, 1) {
        return Err(format!("N(alpha) = {}", norm(&a)?));
    }
    if norm(&GoldenBig::theta())? != GaussBig::from_i64(-1, 0) {
        return Err("N(theta) != -1".into());
    }
    for re in -2..=2 {
        for im in -2..=2 {
            let x = GoldenBig::new(GaussBig::from_i64(re, im), GaussBig::from_i64(im, -re));
            if tau(&tau(&x)) != x {
                return Err(format!("tau(tau({x})) != {x}"));
            }
            norm(&x)?;
        }
    }
    Ok("alpha, theta and 25 samples".into())
}

pub fn check_noiseless(trials: u64) -> Check {
    for scheme in Scheme::ALL {
        for fading in [FadingModel::Slow, FadingModel::Fast] {
            let cfg = SimConfig::new(scheme, fading, vec![f64::INFINITY], trials, 7);
            let sim = Simulator64::new(cfg).map_err(|e| e.to_string())?;
            for t in 0..trials {
                let r = sim.run_trial(0, t).map_err(|e| e.to_string())?;
                if r.bit_errors != 0 {
                    return Err(format!("{scheme}/{fading} trial {t}: {} bit errors", r.bit_errors));
                }
            }
        }
    }
    Ok(format!("{trials} trials per scheme and fading"))
}

/// Compares `ml_decode` with an explicit residual scan.
pub fn check_decoder(instances: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    for scheme in Scheme::ALL {
        let cb = Codebook64::enumerate(scheme).map_err(|e| e.to_string())?;
        for k in 0..instances {
            let fading = if k % 2 == 0 { FadingModel::Slow } else { FadingModel::Fast };
            let real = draw_channel(2, 2, scheme.channel_uses(), fading, &mut rng)
                .with_noise_std(noise_std_from_snr(rng.random_range(0.0..20.0), 2));
            let sent = rng.random_range(0..cb.len());
            let y = transmit(&cb.transmit_matrices()[sent], &real, &mut rng)
                .map_err(|e| e.to_string())?;
            let mut best = (0, f64::INFINITY);
            for (i, x) in cb.transmit_matrices().iter().enumerate() {
                let mut m = 0.0;
                for t in 0..x.cols() {
                    for r in 0..y.y.rows() {
                        let hx: Complex64 = (0..x.rows())
                            .map(|c| real.h_per_use[t][(r, c)] * x[(c, t)])
                            .sum();
                        m += (y.y[(r, t)] - hx).norm_sqr();
                    }
                }
                if m < best.1 {
                    best = (i, m);
                }
            }
            let got = ml_decode(&y, &real, &cb).map_err(|e| e.to_string())?;
            if got.index != best.0 {
                return Err(format!("{scheme} instance {k}: decoder {} vs scan {}", got.index, best.0));
            }
        }
    }
    Ok(format!("{instances} noisy instances per scheme"))
}

/// Mean per-entry energy of uniformly drawn transmitted codewords must be
/// 1 within 1%.
pub fn check_energy(cb: &Codebook64, draws: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats = cb.transmit_matrices();
    let total: f64 = (0..draws)
        .map(|_| {
            let x = &mats[rng.random_range(0..mats.len())];
            x.frobenius_sq() / (x.rows() * x.cols()) as f64
        })
        .sum();
    let mean = total / draws as f64;
    if (mean - 1.0).abs() > 0.01 {
        return Err(format!("{}: mean energy {mean:.4}", cb.scheme));
    }
    Ok(format!("{}: {mean:.4}", cb.scheme))
}

pub fn cmd_selftest() -> CliResult {
    let mut checks: Vec<(&str, Check)> = vec![
        ("norm", check_norm(&|x| x.tau())),
        ("noiseless-repair", check_noiseless(500)),
        ("decoder-oracle", check_decoder(200)),
    ];
    for scheme in Scheme::ALL {
        let r = Codebook64::enumerate(scheme)
            .map_err(|e| e.to_string())
            .and_then(|cb| check_energy(&cb, 10_000, 11));
        checks.push(("energy", r));
    }
    let mut failed = Vec::new();
    for (name, r) in &checks {
        match r {
            Ok(detail) => println!("PASS {name} ({detail})"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(*name);
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(runtime(anyhow!("selftest failed: {}", failed.join(", "))))
    }
}
