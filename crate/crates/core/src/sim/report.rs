use crate::channel::FadingModel;
use crate::error::{Error, Result};
use crate::stcode::Scheme;
use std::io::{Read, Write};

pub const CSV_HEADER: [&str; 11] = [
    "scheme",
    "fading",
    "snr_db",
    "trials",
    "bit_errors",
    "ber",
    "frame_errors",
    "fer",
    "ber_ci_low",
    "ber_ci_high",
    "seed",
];

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if p >= 1.0 { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub scheme: Scheme,
    pub fading: FadingModel,
    pub snr_db: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub frame_errors: u64,
    pub fer: f64,
    pub ber_ci_low: f64,
    pub ber_ci_high: f64,
    pub seed: u64,
}

impl SweepRow {
    #[allow(clippy::too_many_arguments)]
    pub fn from_tally(
        scheme: Scheme,
        fading: FadingModel,
        snr_db: f64,
        trials: u64,
        fragment_bits: usize,
        bit_errors: u64,
        frame_errors: u64,
        seed: u64,
    ) -> Self {
        let bits = trials * fragment_bits as u64;
        let (lo, hi) = wilson_interval(bit_errors, bits);
        Self {
            scheme,
            fading,
            snr_db,
            trials,
            bit_errors,
            ber: bit_errors as f64 / bits as f64,
            frame_errors,
            fer: frame_errors as f64 / trials as f64,
            ber_ci_low: lo,
            ber_ci_high: hi,
            seed,
        }
    }

    fn record(&self) -> [String; 11] {
        [
            self.scheme.to_string(),
            self.fading.to_string(),
            format_sig(self.snr_db, 10),
            self.trials.to_string(),
            self.bit_errors.to_string(),
            format_sig(self.ber, 10),
            self.frame_errors.to_string(),
            format_sig(self.fer, 10),
            format_sig(self.ber_ci_low, 10),
            format_sig(self.ber_ci_high, 10),
            self.seed.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn extend(&mut self, other: SweepResult) {
        self.rows.extend(other.rows);
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let err = |e: csv::Error| Error::Csv(e.to_string());
        wr.write_record(CSV_HEADER).map_err(err)?;
        for row in &self.rows {
            wr.write_record(row.record()).map_err(err)?;
        }
        wr.flush().map_err(|e| Error::Csv(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    /// Parses a sweep CSV; errors name the 1-based line number.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let header = rd.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
        if header.iter().ne(CSV_HEADER.iter().copied()) {
            return Err(Error::Csv(format!("line 1: unexpected header {header:?}")));
        }
        let mut rows = Vec::new();
        for (i, rec) in rd.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| Error::Csv(format!("line {line}: {e}")))?;
            rows.push(parse_row(&rec).map_err(|e| Error::Csv(format!("line {line}: {e}")))?);
        }
        Ok(Self { rows })
    }
}

fn parse_row(rec: &csv::StringRecord) -> std::result::Result<SweepRow, String> {
    if rec.len() != CSV_HEADER.len() {
        return Err(format!("expected {} fields, got {}", CSV_HEADER.len(), rec.len()));
    }
    fn num<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize) -> std::result::Result<T, String> {
        rec[i]
            .parse()
            .map_err(|_| format!("bad {} value {:?}", CSV_HEADER[i], &rec[i]))
    }
    Ok(SweepRow {
        scheme: rec[0].parse().map_err(|e: Error| e.to_string())?,
        fading: rec[1].parse().map_err(|e: Error| e.to_string())?,
        snr_db: num(rec, 2)?,
        trials: num(rec, 3)?,
        bit_errors: num(rec, 4)?,
        ber: num(rec, 5)?,
        frame_errors: num(rec, 6)?,
        fer: num(rec, 7)?,
        ber_ci_low: num(rec, 8)?,
        ber_ci_high: num(rec, 9)?,
        seed: num(rec, 10)?,
    })
}

/// `%.{sig}g`-style formatting: `sig` significant digits, trailing zeros
/// dropped, scientific notation outside [1e-4, 10^sig).
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", sig.saturating_sub(1), x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mant), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
