use crate::error::{runtime, validation, CliResult};
use anyhow::anyhow;
use stsc::{cnvd_check, CnvdMode, CnvdReport, Codebook64, Scheme};

pub fn parse_cnvd_scheme(name: &str) -> CliResult<Scheme> {
    match name {
        "mac-golden-twist" | "mac-golden" => Ok(Scheme::MacGolden { twist: true }),
        "mac-golden-notwist" => Ok(Scheme::MacGolden { twist: false }),
        other => Err(validation(anyhow!(
            "unknown scheme {other:?} (expected mac-golden-twist or mac-golden-notwist)"
        ))),
    }
}

pub fn report(scheme: Scheme, mode: CnvdMode) -> CliResult<CnvdReport> {
    let cb = Codebook64::enumerate(scheme).map_err(runtime)?;
    cnvd_check(&cb, mode).map_err(runtime)
}

/// Prints the JSON report; succeeds iff every subset size has a positive
/// minimum nonzero determinant.
pub fn cmd_cnvd(scheme: &str, mode: CnvdMode) -> CliResult {
    let scheme = parse_cnvd_scheme(scheme)?;
    let r = report(scheme, mode)?;
    println!("{}", serde_json::to_string_pretty(&r).map_err(runtime)?);
    if r.all_have_nonzero_minimum() {
        Ok(())
    } else {
        Err(runtime(anyhow!("no positive minimum determinant found")))
    }
}
