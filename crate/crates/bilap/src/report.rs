//! Report model and its CSV / JSON writers.
//!
//! CSV files start with one `#` line carrying the timestamp; everything after it is
//! a deterministic function of the configuration.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use bilap_core::BoundReport;
use serde::Serialize;

/// Column set of every check file.
pub const CHECK_COLUMNS: [&str; 8] = ["check", "param1", "param2", "lhs", "rhs", "margin", "holds", "paper_ref"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A named list of checks written next to the main file.
#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<BoundReport>,
}

/// Plot-ready numeric data.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveTiming {
    pub key: String,
    pub cache_hit: bool,
    pub seconds: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub solves: Vec<SolveTiming>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<BoundReport>,
    pub sections: Vec<Section>,
    pub tables: Vec<Table>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), checks: Vec::new(), sections: Vec::new(), tables: Vec::new(), timing: Timing::default() }
    }

    pub fn section(&mut self, name: &str, checks: Vec<BoundReport>) {
        self.sections.push(Section { name: name.into(), checks });
    }

    pub fn all_checks(&self) -> impl Iterator<Item = &BoundReport> {
        self.checks.iter().chain(self.sections.iter().flat_map(|s| s.checks.iter()))
    }

    /// Asserted checks that do not hold.
    pub fn failures(&self) -> usize {
        self.all_checks().filter(|c| c.is_failure()).count()
    }
}

/// Shortest round-trip decimal; exponent form outside [1e-4, 1e15); empty for NaN.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x == 0.0 || x.is_infinite() || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn timestamp_line(command: &str, name: Option<&str>) -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    match name {
        Some(n) => format!("# bilap {command} {n} generated_unix={secs}\n"),
        None => format!("# bilap {command} generated_unix={secs}\n"),
    }
}

pub fn write_checks_csv<W: Write>(mut w: W, first_line: &str, checks: &[BoundReport]) -> Result<()> {
    w.write_all(first_line.as_bytes())?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(CHECK_COLUMNS)?;
    for c in checks {
        csv.write_record([
            c.check.clone(),
            format_number(c.param1),
            format_number(c.param2),
            format_number(c.lhs),
            format_number(c.rhs),
            format_number(c.margin),
            c.holds.to_string(),
            c.key.clone(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_table_csv<W: Write>(mut w: W, first_line: &str, t: &Table) -> Result<()> {
    w.write_all(first_line.as_bytes())?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(&t.columns)?;
    for r in &t.rows {
        csv.write_record(r.iter().map(|&x| format_number(x)))?;
    }
    csv.flush()?;
    Ok(())
}

/// `<dir>/<stem>.<name>.<ext>` next to the main output.
pub fn sibling_path(out: &Path, name: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}.{name}.{ext}"))
}

/// Writes the report; without `out` everything goes to stdout. Returns the files written.
pub fn write_report(report: &Report, out: Option<&Path>, format: Format) -> Result<Vec<PathBuf>> {
    if let Some(parent) = out.and_then(Path::parent).filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    match format {
        Format::Json => {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            let doc = serde_json::json!({ "generated_unix": secs, "report": report });
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            match out {
                Some(p) => {
                    fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
                    Ok(vec![p.to_path_buf()])
                }
                None => {
                    std::io::stdout().write_all(text.as_bytes())?;
                    Ok(Vec::new())
                }
            }
        }
        Format::Csv => {
            let cmd = &report.command;
            match out {
                Some(p) => {
                    let mut written = Vec::new();
                    let create = |path: &Path| fs::File::create(path).with_context(|| format!("writing {}", path.display()));
                    write_checks_csv(create(p)?, &timestamp_line(cmd, None), &report.checks)?;
                    written.push(p.to_path_buf());
                    for s in &report.sections {
                        let path = sibling_path(p, &s.name);
                        write_checks_csv(create(&path)?, &timestamp_line(cmd, Some(&s.name)), &s.checks)?;
                        written.push(path);
                    }
                    for t in &report.tables {
                        let path = sibling_path(p, &t.name);
                        write_table_csv(create(&path)?, &timestamp_line(cmd, Some(&t.name)), t)?;
                        written.push(path);
                    }
                    Ok(written)
                }
                None => {
                    let mut w = std::io::stdout().lock();
                    write_checks_csv(&mut w, &timestamp_line(cmd, None), &report.checks)?;
                    for s in &report.sections {
                        writeln!(w)?;
                        write_checks_csv(&mut w, &timestamp_line(cmd, Some(&s.name)), &s.checks)?;
                    }
                    for t in &report.tables {
                        writeln!(w)?;
                        write_table_csv(&mut w, &timestamp_line(cmd, Some(&t.name)), t)?;
                    }
                    Ok(Vec::new())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 1.0, -2.5, 1e-10, 4.730040744862704, 1e300, 123456789.125, f64::MIN_POSITIVE] {
            let s = format_number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_number(f64::NAN), "");
        assert_eq!(format_number(1e-10), "1e-10");
    }

    #[test]
    fn csv_layout() {
        let checks = vec![BoundReport::le("a.b", "key-x", 1.0, 2.0).params(3.0, f64::NAN)];
        let mut buf = Vec::new();
        write_checks_csv(&mut buf, "# t\n", &checks).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# t\ncheck,param1,param2,lhs,rhs,margin,holds,paper_ref\na.b,3,,1,2,1,true,key-x\n");
        assert_eq!(sibling_path(Path::new("/x/r.csv"), "values"), PathBuf::from("/x/r.values.csv"));
    }
}
