use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::integrators::StepperKind;

pub const CSV_HEADER: &str = "scheme,c,tau,N,data,r,error,wall_time_ms";

/// One measured error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub scheme: StepperKind,
    pub c: f64,
    pub tau: f64,
    pub n: usize,
    /// `smooth` or `rough:THETA`
    pub data: String,
    pub r: f64,
    pub error: f64,
    pub wall_time_ms: f64,
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_csv_string(records: &[ConvergenceRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for rec in records {
        let row = [
            rec.scheme.name().to_string(),
            real(rec.c),
            real(rec.tau),
            rec.n.to_string(),
            rec.data.clone(),
            real(rec.r),
            real(rec.error),
            real(rec.wall_time_ms),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(records: &[ConvergenceRecord], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| KgError::io(dir, e))?;
    }
    fs::write(path, to_csv_string(records)).map_err(|e| KgError::io(path, e))
}

pub fn parse_csv(text: &str) -> Result<Vec<ConvergenceRecord>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(KgError::Validation("missing or wrong CSV header".into()));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let bad = || KgError::Validation(format!("malformed CSV row {}: '{line}'", i + 2));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(bad());
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
            Ok(ConvergenceRecord {
                scheme: f[0].parse()?,
                c: num(f[1])?,
                tau: num(f[2])?,
                n: f[3].parse().map_err(|_| bad())?,
                data: f[4].to_string(),
                r: num(f[5])?,
                error: num(f[6])?,
                wall_time_ms: num(f[7])?,
            })
        })
        .collect()
}

pub fn read_csv(path: &Path) -> Result<Vec<ConvergenceRecord>> {
    parse_csv(&fs::read_to_string(path).map_err(|e| KgError::io(path, e))?)
}
