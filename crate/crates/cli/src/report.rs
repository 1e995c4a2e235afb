//! CSV emission: provenance headers, 12-significant-digit floats,
//! byte-deterministic output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const CSV_SCHEMA: &str = "folnerlab csv v1";

/// Formats a float with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

pub fn fmt_int(x: i64) -> String {
    x.to_string()
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

pub struct CsvWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(
        dir: &Path,
        file_name: &str,
        subcommand: &str,
        config_hash: &str,
        columns: &[&str],
    ) -> io::Result<CsvWriter> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(file_name);
        let mut out = BufWriter::new(File::create(&path)?);
        writeln!(out, "# {CSV_SCHEMA}")?;
        writeln!(out, "# subcommand: {subcommand}")?;
        writeln!(out, "# config-hash: fnv1a:{config_hash}")?;
        writeln!(out, "{}", columns.join(","))?;
        Ok(CsvWriter { path, out })
    }

    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        writeln!(self.out, "# {text}")
    }

    pub fn row(&mut self, fields: &[String]) -> io::Result<()> {
        writeln!(self.out, "{}", fields.join(","))
    }

    pub fn finish(mut self) -> io::Result<PathBuf> {
        self.out.flush()?;
        Ok(self.path)
    }
}

/// Least-squares line fit returning (slope, intercept, r²).
pub fn linear_fit(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    let n = points.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = nf * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    let slope = (nf * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / nf;
    let mean_y = sy / nf;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    let r2 = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    Some((slope, intercept, r2))
}
