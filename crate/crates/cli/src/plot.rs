//! BER-versus-SNR plots from one or more sweep CSVs.

use crate::error::{runtime, validation, CliResult};
use anyhow::{anyhow, Context};
use plotters::prelude::*;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use stsc::{SweepResult, SweepRow};

/// Points of one (scheme, fading) curve, sorted by SNR.
#[derive(Clone, Debug)]
pub struct Curve {
    pub label: String,
    pub points: Vec<SweepRow>,
}

pub fn load_rows(paths: &[PathBuf]) -> CliResult<Vec<SweepRow>> {
    if paths.is_empty() {
        return Err(validation(anyhow!("no input CSV given")));
    }
    let mut rows = Vec::new();
    for p in paths {
        let f = std::fs::File::open(p)
            .with_context(|| format!("opening {}", p.display()))
            .map_err(validation)?;
        let r = SweepResult::read_csv(f)
            .with_context(|| format!("reading {}", p.display()))
            .map_err(validation)?;
        if r.rows.is_empty() {
            return Err(validation(anyhow!("{} has no data rows", p.display())));
        }
        rows.extend(r.rows);
    }
    Ok(rows)
}

/// Groups rows into curves. Rows from different files for the same
/// (scheme, fading) land on one curve.
pub fn curves(rows: &[SweepRow]) -> Vec<Curve> {
    let mut map: BTreeMap<(u64, u64), Curve> = BTreeMap::new();
    for r in rows {
        map.entry((r.scheme.id(), r.fading.id()))
            .or_insert_with(|| Curve {
                label: format!("{} ({})", r.scheme, r.fading),
                points: Vec::new(),
            })
            .points
            .push(r.clone());
    }
    let mut out: Vec<Curve> = map.into_values().collect();
    for c in &mut out {
        c.points.sort_by(|a, b| a.snr_db.total_cmp(&b.snr_db));
    }
    out
}

/// Lowest plotted BER: one bit error in the largest sweep.
pub fn ber_floor(rows: &[SweepRow], fragment_bits: usize) -> f64 {
    let trials = rows.iter().map(|r| r.trials).max().unwrap_or(1).max(1);
    1.0 / (trials as f64 * fragment_bits.max(1) as f64)
}

pub fn render(curves: &[Curve], floor: f64, out: &Path) -> anyhow::Result<()> {
    let xs = curves.iter().flat_map(|c| c.points.iter().map(|p| p.snr_db));
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (x0, x1) = if x1 > x0 { (x0, x1) } else { (x0 - 1.0, x0 + 1.0) };
    let clip = |v: f64| v.max(floor);

    let root = SVGBackend::new(out, (800, 560)).into_drawing_area();
    root.fill(&WHITE)?;
    let mut chart = ChartBuilder::on(&root)
        .caption("BER vs SNR", ("sans-serif", 22))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(70)
        .build_cartesian_2d(x0..x1, (floor..1.0).log_scale())?;
    chart
        .configure_mesh()
        .x_desc("SNR (dB)")
        .y_desc("BER")
        .y_label_formatter(&|v| format!("{v:.0e}"))
        .draw()?;

    for (i, c) in curves.iter().enumerate() {
        let color = Palette99::pick(i).to_rgba();
        let pts: Vec<(f64, f64)> = c.points.iter().map(|p| (p.snr_db, clip(p.ber))).collect();
        chart
            .draw_series(LineSeries::new(pts.clone(), color.stroke_width(2)))?
            .label(c.label.clone())
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color.stroke_width(2)));
        chart.draw_series(pts.iter().map(|&p| Circle::new(p, 3, color.filled())))?;
        chart.draw_series(c.points.iter().map(|p| {
            PathElement::new(
                vec![(p.snr_db, clip(p.ber_ci_low)), (p.snr_db, clip(p.ber_ci_high))],
                color,
            )
        }))?;
    }
    chart
        .configure_series_labels()
        .position(SeriesLabelPosition::LowerLeft)
        .background_style(WHITE.mix(0.85))
        .border_style(BLACK)
        .draw()?;
    root.present()?;
    Ok(())
}

pub fn cmd_plot(inputs: &[PathBuf], out: &Path, fragment_bits: usize) -> CliResult {
    if fragment_bits == 0 {
        return Err(validation(anyhow!("fragment bits must be at least 1")));
    }
    let rows = load_rows(inputs)?;
    let curves = curves(&rows);
    render(&curves, ber_floor(&rows, fragment_bits), out)
        .with_context(|| format!("rendering {}", out.display()))
        .map_err(runtime)?;
    println!("wrote {} with {} curves", out.display(), curves.len());
    Ok(())
}
