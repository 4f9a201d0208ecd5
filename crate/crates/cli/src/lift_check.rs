use crate::error::{runtime, validation, CliResult};
use anyhow::anyhow;
use std::collections::HashSet;
use stsc::algebra::{coset_decode, coset_encode, CosetLabel};
use stsc::modulation::{delift_golden, lift_golden, Constellation};
use stsc::{BitString, GoldenBig};

pub const MAX_LEVEL: u32 = 8;

/// Exhaustive coset round trip at level t; returns the label count.
pub fn check_cosets(t: u32) -> Result<u128, String> {
    let mut seen = HashSet::new();
    for s in BitString::all(2 * t as usize) {
        let label = coset_encode(&s).map_err(|e| format!("{s}: {e}"))?;
        let back = coset_decode(&label);
        if back != s {
            return Err(format!("{s} decoded as {back}"));
        }
        if !seen.insert(label) {
            return Err(format!("{s} collides with an earlier string"));
        }
    }
    if seen.len() as u128 != CosetLabel::count(t) {
        return Err(format!("{} labels, expected {}", seen.len(), CosetLabel::count(t)));
    }
    Ok(CosetLabel::count(t))
}

pub fn check_constellation(c: &Constellation<f64>) -> Result<(), String> {
    for (b, p) in c.points() {
        let got = c.demap(*p);
        if &got != b {
            return Err(format!("{b} → {p} demapped to {got}"));
        }
    }
    Ok(())
}

pub fn check_golden_lift() -> Result<(), String> {
    let mut seen = HashSet::new();
    for s in BitString::all(4) {
        let x: GoldenBig = lift_golden(&s).map_err(|e| format!("{s}: {e}"))?;
        let back = delift_golden(&x).map_err(|e| format!("{s}: {e}"))?;
        if back != s {
            return Err(format!("{s} → {x} delifted to {back}"));
        }
        if !seen.insert(x) {
            return Err(format!("{s} collides"));
        }
    }
    Ok(())
}

pub fn cmd_lift_check(t_max: u32) -> CliResult {
    if t_max == 0 || t_max > MAX_LEVEL {
        return Err(validation(anyhow!("t-max must be in 1..={MAX_LEVEL}, got {t_max}")));
    }
    let fail = |what: &str, w: String| runtime(anyhow!("{what} failed at {w}"));
    check_constellation(&Constellation::qam4()).map_err(|w| fail("gray4", w))?;
    println!("gray4: 4 labels ok");
    check_constellation(&Constellation::qam16()).map_err(|w| fail("gray16", w))?;
    println!("gray16: 16 labels ok");
    check_golden_lift().map_err(|w| fail("lift_golden", w))?;
    println!("lift_golden: 16 labels ok");
    for t in 1..=t_max {
        let n = check_cosets(t).map_err(|w| fail(&format!("coset t={t}"), w))?;
        println!("coset t={t}: {n} labels ok");
    }
    println!("PASS");
    Ok(())
}
