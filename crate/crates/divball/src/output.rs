//! Deterministic number formatting and atomic file output.

use crate::records::PlotRow;
use std::io::Write;
use std::path::Path;

/// Significant digits every formatted float carries at minimum.
pub const SIG_DIGITS: usize = 10;

/// Shortest round-trip representation, padded with zeros to at least
/// [`SIG_DIGITS`] significant digits.
///
/// Values with a decimal exponent in `[-5, 15)` are written positionally,
/// everything else in scientific notation. Parsing the output with
/// `str::parse::<f64>` recovers the input exactly.
///
/// ```
/// use divball::output::format_float;
/// assert_eq!(format_float(24.1715), "24.17150000");
/// assert_eq!(format_float(-0.5), "-0.5000000000");
/// assert_eq!(format_float(1e-9), "1.000000000e-9");
/// assert_eq!(format_float(f64::INFINITY), "inf");
/// ```
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "NaN".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0.000000000" } else { "0.000000000" }.to_string();
    }
    let sci = format!("{:e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let mut digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    while digits.len() < SIG_DIGITS {
        digits.push('0');
    }
    let sign = if v < 0.0 { "-" } else { "" };
    let body = if (-5..15).contains(&exp) {
        if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        } else {
            let split = exp as usize + 1;
            if digits.len() <= split {
                let padded = format!("{digits:0<split$}");
                format!("{padded}.0")
            } else {
                format!("{}.{}", &digits[..split], &digits[split..])
            }
        }
    } else {
        format!("{}.{}e{}", &digits[..1], &digits[1..], exp)
    };
    format!("{sign}{body}")
}

/// Writes `contents` to a temporary file next to `path`, then renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// A CSV document built in memory, so it can be written atomically.
pub struct CsvBuffer {
    writer: csv::Writer<Vec<u8>>,
}

impl CsvBuffer {
    pub fn new<I, S>(header: I) -> csv::Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Self { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> csv::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields)
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.writer.into_inner().expect("in-memory writer cannot fail")
    }
}

pub const PLOT_HEADER: [&str; 3] = ["theta", "kappa", "worst_mean"];

/// Long-format CSV of `(theta, kappa, worst_mean)`. Failed points are
/// written with an empty `worst_mean`.
pub fn plot_data_csv(rows: &[PlotRow]) -> Vec<u8> {
    let mut buf = CsvBuffer::new(PLOT_HEADER).expect("header");
    for r in rows {
        let mean = r.worst_mean.map(format_float).unwrap_or_default();
        buf.row([format_float(r.theta), format_float(r.kappa), mean]).expect("row");
    }
    buf.into_bytes()
}

#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    #[error("no sweep records to write")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("bad header {0:?}")]
    Header(Vec<String>),
    #[error("bad number {0:?}")]
    Number(String),
}

pub fn emit_plot_data(rows: &[PlotRow], path: &Path) -> Result<(), PlotError> {
    if rows.is_empty() {
        return Err(PlotError::Empty);
    }
    write_atomic(path, &plot_data_csv(rows))?;
    Ok(())
}

fn parse_float(s: &str) -> Result<f64, PlotError> {
    s.parse().map_err(|_| PlotError::Number(s.to_string()))
}

pub fn read_plot_data(path: &Path) -> Result<Vec<PlotRow>, PlotError> {
    let mut reader = csv::Reader::from_path(path)?;
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != PLOT_HEADER {
        return Err(PlotError::Header(header));
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let mean = match &rec[2] {
            "" => None,
            s => Some(parse_float(s)?),
        };
        rows.push(PlotRow { theta: parse_float(&rec[0])?, kappa: parse_float(&rec[1])?, worst_mean: mean });
    }
    Ok(rows)
}
