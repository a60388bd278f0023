//! On-disk spectrum cache: one JSON file per (domain, boundary condition, source, resolution).
//!
//! Values are stored as decimal strings with 17 significant digits, which
//! round-trips every f64 exactly.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{ensure, Context, Result};
use bilap_core::{BcKind, BoundaryCondition, DomainSpec, Source, Spectrum};
use serde::{Deserialize, Serialize};

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    key: String,
    domain: DomainSpec,
    bc: BoundaryCondition,
    source: Source,
    values: Vec<String>,
}

fn num(x: f64) -> String {
    format!("{x}").replace('-', "m")
}

/// File-name-safe key that differs whenever any parameter differs.
pub fn cache_key(domain: &DomainSpec, bc: &BoundaryCondition, source: &Source) -> String {
    let d = match *domain {
        DomainSpec::Interval { length } => format!("interval{}", num(length)),
        DomainSpec::Rectangle { lx, ly } => format!("rect{}x{}", num(lx), num(ly)),
    };
    let b = match *bc {
        BoundaryCondition::Plate { kind: BcKind::Dirichlet, .. } => "clamped".to_string(),
        BoundaryCondition::Plate { kind, a } => {
            let k = match kind {
                BcKind::Navier => "navier",
                BcKind::KuttlerSigillito => "ks",
                _ => "neumann",
            };
            format!("{k}-a{}", num(a))
        }
        BoundaryCondition::OneD(p) => format!("pair{}{}", p.i(), p.j()),
        BoundaryCondition::Laplacian { neumann } => if neumann { "lapneumann" } else { "lapdirichlet" }.to_string(),
    };
    let s = match *source {
        Source::Exact => "exact".to_string(),
        Source::FiniteDifference { nx, ny } => format!("fd{nx}x{ny}"),
        Source::Extrapolated { coarsest, finest } => format!("rich{coarsest}-{finest}"),
        Source::Predicted => "predicted".to_string(),
    };
    format!("{d}_{b}_{s}")
}

pub fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Writes the spectrum and returns the file path.
pub fn cache_spectrum(spec: &Spectrum, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
    let key = cache_key(&spec.domain(), &spec.bc(), &spec.source());
    let file = CacheFile {
        format: FORMAT_VERSION,
        key: key.clone(),
        domain: spec.domain(),
        bc: spec.bc(),
        source: spec.source(),
        values: spec.values().iter().map(|v| format!("{v:.16e}")).collect(),
    };
    let path = cache_path(dir, &key);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string_pretty(&file)?).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// `Ok(None)` when absent; an error when the file exists but is unreadable or inconsistent.
pub fn load_spectrum(dir: &Path, key: &str) -> Result<Option<Spectrum>> {
    let path = cache_path(dir, key);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let file: CacheFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    ensure!(file.format == FORMAT_VERSION, "cache format {} is not supported", file.format);
    ensure!(file.key == key, "cache file key '{}' does not match '{key}'", file.key);
    ensure!(
        cache_key(&file.domain, &file.bc, &file.source) == key,
        "cache file parameters do not match its key"
    );
    let values = file
        .values
        .iter()
        .map(|s| s.parse::<f64>().with_context(|| format!("bad value '{s}'")))
        .collect::<Result<Vec<_>>>()?;
    let spec = Spectrum::new(values, file.domain, file.bc, file.source).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(Some(spec))
}

/// Loads when present and long enough; a corrupt file is logged and treated as a miss.
pub fn lookup(dir: &Path, key: &str, need: usize) -> Option<Spectrum> {
    match load_spectrum(dir, key) {
        Ok(Some(s)) if s.len() >= need => Some(s),
        Ok(_) => None,
        Err(e) => {
            log::warn!("ignoring corrupt cache entry {key}: {e:#}; recomputing");
            None
        }
    }
}
