//! Deterministic text formats.
//!
//! CSV numbers carry 17 significant digits so every `f64` reads back exactly;
//! lines end in a single `\n`.

use std::fmt::Write as _;
use std::path::Path;

use zerosound::kinetic::TimeSeries;
use zerosound::{BranchScan, DispersionPoint, ScanPoint};

pub const SCAN_HEADER: &str = "k_lambda_d,Q0,A,S,S_minus_1,omega_over_k_vF,method,residual";
pub const SERIES_HEADER: &str = "t,re_density,im_density,abs_density";

pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

/// Quotes a free-text CSV field when needed.
pub fn text(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn scan_row(point: &DispersionPoint) -> String {
    [
        number(point.k_lambda_d),
        number(point.q0),
        number(point.coupling),
        number(point.s),
        number(point.s_minus_1),
        number(point.s),
        point.method.as_str().to_string(),
        optional(point.residual),
    ]
    .join(",")
}

pub fn scan_csv(scan: &BranchScan) -> String {
    let mut out = String::with_capacity(160 * (scan.points.len() + 1));
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for point in &scan.points {
        match point {
            ScanPoint::Solved(p) => out.push_str(&scan_row(p)),
            ScanPoint::Failed(f) => {
                let _ = write!(
                    out,
                    "{},{},{},,,,error,",
                    number(f.k_lambda_d),
                    number(f.q0),
                    number(f.coupling)
                );
            }
        }
        out.push('\n');
    }
    out
}

pub fn series_csv(series: &TimeSeries) -> String {
    let mut out = String::with_capacity(100 * (series.len() + 1));
    out.push_str(SERIES_HEADER);
    out.push('\n');
    for (j, z) in series.samples.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            number(series.time(j)),
            number(z.re),
            number(z.im),
            number(z.norm())
        );
    }
    out
}

/// Writes to `path`, or to standard output when absent.
pub fn emit(path: Option<&Path>, contents: &str) -> std::io::Result<()> {
    match path {
        Some(path) => std::fs::write(path, contents),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()
        }
    }
}
