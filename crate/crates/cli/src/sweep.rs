use crate::config::{workers_from_env, Sidecar, SweepConfig};
use crate::error::{runtime, validation, CliResult};
use anyhow::Context;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;
use stsc::sim::run_sweep;
use stsc::SweepResult;

pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

/// Runs every (scheme, fading) sweep and writes the CSV plus its sidecar
/// (or the CSV alone to stdout when no output path is set).
pub fn cmd_sweep(config: &SweepConfig) -> CliResult {
    config.validate().map_err(validation)?;
    let workers = workers_from_env().map_err(validation)?;
    let sims = config.sim_configs().map_err(validation)?;

    let started = Instant::now();
    let mut result = SweepResult::default();
    for (i, sim) in sims.iter().enumerate() {
        eprintln!("[{}/{}] {} {}", i + 1, sims.len(), sim.scheme, sim.fading);
        result.extend(run_sweep(sim, workers).map_err(runtime)?);
    }
    let wall = started.elapsed().as_secs_f64();

    let csv = result.to_csv_string().map_err(runtime)?;
    match &config.out {
        None => std::io::stdout()
            .write_all(csv.as_bytes())
            .map_err(runtime)?,
        Some(out) => {
            std::fs::write(out, &csv)
                .with_context(|| format!("writing {}", out.display()))
                .map_err(runtime)?;
            let meta = Sidecar {
                tool: "stsc".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                config: config.clone(),
                snr_points: config.snr_points().map_err(validation)?,
                rows: result.rows.len(),
                workers,
                wall_time_s: wall,
            };
            let path = sidecar_path(out);
            let json = serde_json::to_string_pretty(&meta).map_err(runtime)?;
            std::fs::write(&path, json + "\n")
                .with_context(|| format!("writing {}", path.display()))
                .map_err(runtime)?;
            eprintln!("wrote {} rows to {} in {wall:.1}s", result.rows.len(), out.display());
        }
    }
    Ok(())
}
