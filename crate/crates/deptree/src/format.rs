//! Report serialization: CSV with decimals, JSON lines with exact `p/q`
//! strings.

use std::io::{self, Write};

use deptree_core::Rational;
use serde::Serialize;

use crate::report::{LengthSummary, SentenceReport};

/// Version of the CSV/JSON column layout.
pub const SCHEMA_VERSION: u32 = 1;

pub const REPORT_COLUMNS: [&str; 15] = [
    "sent_id",
    "n",
    "mean_k2",
    "var_k",
    "mean_d",
    "mean_d2",
    "C",
    "M",
    "dmin_eq10",
    "dmin_eq11",
    "dmax_eq7",
    "cmax_eq12",
    "cmax_eq13",
    "cpairs_eq14",
    "E_d_baseline",
];

pub const SUMMARY_COLUMNS: [&str; 8] = [
    "n",
    "sentences",
    "mean_d",
    "mean_d2",
    "var_k",
    "mean_k2",
    "C",
    "mean_d_over_E_d",
];

const SIGNIFICANT: u32 = 12;

/// Renders `value` in plain decimal notation rounded to 12 significant
/// digits (half away from zero), without trailing zeros.
pub fn decimal(value: Rational) -> String {
    let (numer, denom) = (*value.numer() as i128, *value.denom() as i128);
    if numer == 0 {
        return "0".to_string();
    }
    let negative = numer < 0;
    let (p, q) = (numer.unsigned_abs(), denom.unsigned_abs());
    match scaled_digits(p, q) {
        Some((digits, exponent)) => render(negative, &digits, exponent),
        None => {
            let x = numer as f64 / denom as f64;
            format!("{x:.*e}", SIGNIFICANT as usize - 1)
        }
    }
}

/// Returns the 12 rounded significant digits of `p/q` and the decimal
/// exponent of the first one.
fn scaled_digits(p: u128, q: u128) -> Option<(String, i32)> {
    // exponent = floor(log10(p/q))
    let mut exponent = 0i32;
    let (mut a, mut b) = (p, q);
    while a >= b.checked_mul(10)? {
        b *= 10;
        exponent += 1;
    }
    while a < b {
        a = a.checked_mul(10)?;
        exponent -= 1;
    }
    // now b <= a < 10b, and p/q = (a/b) * 10^exponent
    let scale = 10u128.checked_pow(SIGNIFICANT - 1)?;
    let scaled = a.checked_mul(scale)?;
    let (mut digits, rem) = (scaled / b, scaled % b);
    if rem.checked_mul(2)? >= b {
        digits += 1;
    }
    if digits == 10u128.pow(SIGNIFICANT) {
        digits /= 10;
        exponent += 1;
    }
    Some((digits.to_string(), exponent))
}

fn render(negative: bool, digits: &str, exponent: i32) -> String {
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    let body = if exponent >= 0 {
        let int_len = exponent as usize + 1;
        if int_len >= digits.len() {
            let mut s = digits.to_string();
            s.extend(std::iter::repeat_n('0', int_len - digits.len()));
            s
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        let zeros = (-exponent - 1) as usize;
        format!("0.{}{}", "0".repeat(zeros), digits)
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    out.push_str(&body);
    out
}

/// Exact `p/q` rendering (`p` when the denominator is 1).
pub fn exact(value: Rational) -> String {
    value.to_string()
}

/// Sentence report row with exact values, in column order.
#[derive(Debug, Serialize)]
pub struct ReportRecord {
    pub sent_id: String,
    pub n: usize,
    pub mean_k2: String,
    pub var_k: String,
    pub mean_d: String,
    pub mean_d2: String,
    #[serde(rename = "C")]
    pub crossings: u64,
    #[serde(rename = "M")]
    pub uncrossable: usize,
    pub dmin_eq10: String,
    pub dmin_eq11: String,
    pub dmax_eq7: String,
    pub cmax_eq12: String,
    pub cmax_eq13: String,
    pub cpairs_eq14: String,
    #[serde(rename = "E_d_baseline")]
    pub expected_d: String,
}

impl ReportRecord {
    pub fn new(report: &SentenceReport, render: fn(Rational) -> String) -> Self {
        let b = &report.bounds;
        ReportRecord {
            sent_id: report.sent_id.clone(),
            n: report.n,
            mean_k2: render(report.degrees.mean_k2),
            var_k: render(report.degrees.var_k),
            mean_d: render(report.mean_d()),
            mean_d2: render(report.mean_d2()),
            crossings: report.crossings.crossings,
            uncrossable: report.crossings.uncrossable,
            dmin_eq10: render(b.dmin_star_ensemble),
            dmin_eq11: render(b.dmin_hubiness),
            dmax_eq7: render(b.dmax_noncrossing),
            cmax_eq12: b.cmax_uncrossable.to_string(),
            cmax_eq13: render(b.cmax_length),
            cpairs_eq14: render(b.cpairs_degree),
            expected_d: render(b.expected_d),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SummaryRecord {
    pub n: usize,
    pub sentences: u64,
    pub mean_d: String,
    pub mean_d2: String,
    pub var_k: String,
    pub mean_k2: String,
    #[serde(rename = "C")]
    pub crossings: String,
    #[serde(rename = "mean_d_over_E_d")]
    pub normalized_d: String,
}

impl SummaryRecord {
    pub fn new(row: &LengthSummary, render: fn(Rational) -> String) -> Self {
        SummaryRecord {
            n: row.n,
            sentences: row.sentences,
            mean_d: render(row.mean_d),
            mean_d2: render(row.mean_d2),
            var_k: render(row.var_k),
            mean_k2: render(row.mean_k2),
            crossings: render(row.crossings),
            normalized_d: render(row.normalized_d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes reports as CSV (decimal values) or JSON lines (exact values).
///
/// CSV output starts with a `#` line naming the schema version, then the
/// header row.
pub struct ReportWriter<W: Write> {
    format: Format,
    csv: Option<csv::Writer<W>>,
    json: Option<W>,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(mut out: W, format: Format, meta: &str) -> io::Result<Self> {
        match format {
            Format::Csv => {
                writeln!(out, "# deptree-report v{SCHEMA_VERSION} {meta}")?;
                let mut csv = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(out);
                csv.write_record(REPORT_COLUMNS)?;
                Ok(ReportWriter {
                    format,
                    csv: Some(csv),
                    json: None,
                })
            }
            Format::Json => {
                writeln!(
                    out,
                    "{{\"schema\":\"deptree-report\",\"version\":{SCHEMA_VERSION},\"meta\":{}}}",
                    serde_json::to_string(meta)?
                )?;
                Ok(ReportWriter {
                    format,
                    csv: None,
                    json: Some(out),
                })
            }
        }
    }

    pub fn write(&mut self, report: &SentenceReport) -> io::Result<()> {
        match self.format {
            Format::Csv => {
                let csv = self.csv.as_mut().expect("csv writer");
                csv.serialize(ReportRecord::new(report, decimal))?;
                Ok(())
            }
            Format::Json => {
                let out = self.json.as_mut().expect("json writer");
                serde_json::to_writer(&mut *out, &ReportRecord::new(report, exact))?;
                out.write_all(b"\n")
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        if let Some(mut csv) = self.csv {
            csv.flush()?;
        }
        if let Some(mut out) = self.json {
            out.flush()?;
        }
        Ok(())
    }
}

/// Writes the per-length summary table.
pub fn write_summary<W: Write>(
    mut out: W,
    format: Format,
    rows: &[LengthSummary],
) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut csv = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            csv.write_record(SUMMARY_COLUMNS)?;
            for row in rows {
                csv.serialize(SummaryRecord::new(row, decimal))?;
            }
            csv.flush()
        }
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut out, &SummaryRecord::new(row, exact))?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(r(11, 8)), "1.375");
        assert_eq!(decimal(r(10, 3)), "3.33333333333");
        assert_eq!(decimal(r(2, 3)), "0.666666666667");
        assert_eq!(decimal(r(19, 16)), "1.1875");
        assert_eq!(decimal(r(0, 1)), "0");
        assert_eq!(decimal(r(18, 1)), "18");
        assert_eq!(decimal(r(-7, 2)), "-3.5");
        assert_eq!(decimal(r(1, 3000)), "0.000333333333333");
        assert_eq!(decimal(r(123456789012345, 1)), "123456789012000");
        assert_eq!(decimal(r(9999999999999, 10000000000000)), "1");
        assert_eq!(decimal(r(1000, 1)), "1000");
    }

    #[test]
    fn exact_strings() {
        assert_eq!(exact(r(9, 1)), "9");
        assert_eq!(exact(r(17, 8)), "17/8");
    }
}
