//! Text syntax of ranges, grids, domains and pairs used on the command line and in config files.

use anyhow::{bail, ensure, Context, Result};
use bilap_core::{DomainSpec, Pair};

/// Smallest and largest admissible cells per side of a 2D grid.
pub const MIN_CELLS: usize = 4;
pub const MAX_CELLS: usize = 512;

/// `a:b:Nlog`, `a:b:Nlin`, a comma list, or a single value.
pub fn parse_real_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let parts: Vec<&str> = s.split(':').collect();
    let out = match parts.as_slice() {
        [one] => one.split(',').map(parse_f64).collect::<Result<Vec<_>>>()?,
        [a, b, spec] => {
            let (a, b) = (parse_f64(a)?, parse_f64(b)?);
            ensure!(a.is_finite() && b.is_finite() && a <= b, "grid '{s}': need finite a <= b");
            let (n, log) = if let Some(n) = spec.strip_suffix("log") {
                (n, true)
            } else if let Some(n) = spec.strip_suffix("lin") {
                (n, false)
            } else {
                bail!("grid '{s}': third field must be Nlog or Nlin");
            };
            let n: usize = n.parse().with_context(|| format!("grid '{s}': bad point count"))?;
            ensure!(n >= 1, "grid '{s}': need at least one point");
            if log {
                ensure!(a > 0.0, "grid '{s}': log grid needs a > 0");
                bilap_core::riesz::log_grid(a, b, n)
            } else if n == 1 {
                vec![a]
            } else {
                (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
            }
        }
        _ => bail!("grid '{s}': expected a:b:Nlog, a:b:Nlin, a list or a value"),
    };
    ensure!(!out.is_empty(), "grid '{s}' is empty");
    ensure!(out.iter().all(|x| x.is_finite()), "grid '{s}' has non-finite values");
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().with_context(|| format!("'{s}' is not a number"))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse::<usize>().with_context(|| format!("'{s}' is not a nonnegative integer"))
}

/// `N` (1..=N), `a:b` (inclusive) or a comma list of positive integers.
pub fn parse_index_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let out: Vec<usize> = if let Some((a, b)) = s.split_once(':') {
        let (a, b) = (parse_usize(a)?, parse_usize(b)?);
        ensure!(a <= b, "range '{s}': need a <= b");
        (a..=b).collect()
    } else if s.contains(',') {
        s.split(',').map(parse_usize).collect::<Result<_>>()?
    } else {
        (1..=parse_usize(s)?).collect()
    };
    ensure!(!out.is_empty(), "range '{s}' is empty");
    ensure!(out.iter().all(|&k| k >= 1), "range '{s}': indices start at 1");
    Ok(out)
}

/// `interval:L`, `square:L` or `rect:LxW`.
pub fn parse_domain(s: &str) -> Result<DomainSpec> {
    let (kind, rest) = s.trim().split_once(':').with_context(|| format!("domain '{s}': expected kind:size"))?;
    let dom = match kind {
        "interval" => DomainSpec::interval(parse_f64(rest)?),
        "square" => DomainSpec::square(parse_f64(rest)?),
        "rect" => {
            let (lx, ly) = rest.split_once(['x', 'X']).with_context(|| format!("domain '{s}': expected rect:LxW"))?;
            DomainSpec::rectangle(parse_f64(lx)?, parse_f64(ly)?)
        }
        _ => bail!("domain '{s}': kind must be interval, square or rect"),
    };
    dom.map_err(|e| anyhow::anyhow!("domain '{s}': {e}"))
}

/// `i,j` with 0 <= i < j <= 3.
pub fn parse_pair(s: &str) -> Result<Pair> {
    let (i, j) = s.trim().split_once(',').with_context(|| format!("pair '{s}': expected i,j"))?;
    let (i, j): (u8, u8) = (i.trim().parse()?, j.trim().parse()?);
    Pair::new(i, j).map_err(|e| anyhow::anyhow!("{e}"))
}

/// Comma list of cells per side, strictly increasing, within [MIN_CELLS, MAX_CELLS].
pub fn parse_grids(s: &str) -> Result<Vec<usize>> {
    let g: Vec<usize> = s.split(',').map(parse_usize).collect::<Result<_>>()?;
    validate_grids(&g)?;
    Ok(g)
}

pub fn validate_grids(g: &[usize]) -> Result<()> {
    ensure!(g.len() >= 2, "need at least two grids for extrapolation");
    ensure!(g.windows(2).all(|w| w[1] > w[0]), "grids must be strictly increasing");
    ensure!(
        g.iter().all(|&n| (MIN_CELLS..=MAX_CELLS).contains(&n)),
        "grid cells must lie in [{MIN_CELLS}, {MAX_CELLS}]"
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let z = parse_real_grid("1e2:1e8:64log").unwrap();
        assert_eq!(z.len(), 64);
        assert_eq!((z[0], z[63]), (1e2, 1e8));
        assert_eq!(parse_real_grid("0:200:5lin").unwrap(), vec![0.0, 50.0, 100.0, 150.0, 200.0]);
        assert_eq!(parse_real_grid("1e-3,1e-4").unwrap(), vec![1e-3, 1e-4]);
        assert!(parse_real_grid("0:1:4log").is_err());
        assert!(parse_real_grid("1:2:4cubic").is_err());
        assert!(parse_real_grid("2:1:4lin").is_err());
    }

    #[test]
    fn indices() {
        assert_eq!(parse_index_range("3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_index_range("20:22").unwrap(), vec![20, 21, 22]);
        assert_eq!(parse_index_range("5,7").unwrap(), vec![5, 7]);
        assert!(parse_index_range("0").is_err());
        assert!(parse_index_range("0:2").is_err());
    }

    #[test]
    fn domains_and_pairs() {
        assert_eq!(parse_domain("square:1").unwrap(), DomainSpec::unit_square());
        assert_eq!(parse_domain("rect:2x0.5").unwrap(), DomainSpec::rectangle(2.0, 0.5).unwrap());
        assert_eq!(parse_domain("interval:3").unwrap(), DomainSpec::interval(3.0).unwrap());
        assert!(parse_domain("disk:1").is_err());
        assert!(parse_domain("square:-1").is_err());
        assert_eq!(parse_pair("0,2").unwrap(), Pair::NAVIER);
        assert!(parse_pair("2,1").is_err());
        assert_eq!(parse_grids("32,64,128").unwrap(), vec![32, 64, 128]);
        assert!(parse_grids("64,32").is_err());
        assert!(parse_grids("32").is_err());
        assert!(parse_grids("2,4").is_err());
    }
}
