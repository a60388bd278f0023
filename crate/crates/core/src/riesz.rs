//! Riesz means R_σ(z) = Σ (z − ω_j)_+^σ, counting functions, and the explicit
//! two-sided bounds on 1D Riesz means.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::bc::{BoundaryCondition, Pair};
use crate::error::{Error, Result};
use crate::report::BoundReport;
use crate::special::KahanSum;
use crate::spectra1d::spectrum_1d_below;
use crate::spectrum::{Source, Spectrum};

/// Sums with more terms than this use compensated accumulation.
pub const KAHAN_THRESHOLD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RieszMeanPoint {
    pub z: f64,
    pub sigma: f64,
    pub value: f64,
    /// Number of eigenvalues strictly below z (all of them enter the sum).
    pub truncation_count: usize,
    /// For σ = 1: ∫₀ᶻ N(t) dt integrated piecewise over the steps of N.
    pub counting_integral: Option<f64>,
}

// Borrow the spectrum if it is complete below z, otherwise extend exact 1D spectra.
fn complete_below<'a>(spec: &'a Spectrum, z: f64, buf: &'a mut Option<Spectrum>) -> Result<&'a [f64]> {
    let vals = spec.values();
    if vals.last().is_some_and(|&v| v >= z) {
        return Ok(vals);
    }
    match (spec.source(), spec.bc(), spec.domain()) {
        (Source::Exact, BoundaryCondition::OneD(pair), crate::DomainSpec::Interval { length }) => {
            *buf = Some(spectrum_1d_below(pair, z, length)?);
            Ok(buf.as_ref().map(|s| s.values()).unwrap_or(&[]))
        }
        _ => Err(Error::InsufficientSpectrum { have: vals.len(), z }),
    }
}

pub fn riesz_mean(spec: &Spectrum, z: f64, sigma: f64) -> Result<RieszMeanPoint> {
    if !(z >= 0.0) || !(sigma > 0.0) {
        return Err(Error::Domain("need z >= 0 and sigma > 0"));
    }
    let mut buf = None;
    let vals = complete_below(spec, z, &mut buf)?;
    let below = &vals[..vals.partition_point(|&w| w < z)];
    let term = |w: f64| if sigma == 1.0 { z - w } else { (z - w).powf(sigma) };
    let value = if below.len() > KAHAN_THRESHOLD {
        let mut k = KahanSum::default();
        below.iter().for_each(|&w| k.add(term(w)));
        k.value()
    } else {
        below.iter().fold(0.0, |acc, &w| acc + term(w))
    };
    let counting_integral = (sigma == 1.0).then(|| {
        let mut k = KahanSum::default();
        for (i, &w) in below.iter().enumerate() {
            let next = below.get(i + 1).copied().unwrap_or(z);
            k.add((i + 1) as f64 * (next - w));
        }
        k.value()
    });
    Ok(RieszMeanPoint { z, sigma, value, truncation_count: below.len(), counting_integral })
}

/// N(z) = #{ω_j < z}.
pub fn counting(spec: &Spectrum, z: f64) -> Result<usize> {
    if !(z >= 0.0) {
        return Err(Error::Domain("need z >= 0"));
    }
    let mut buf = None;
    let vals = complete_below(spec, z, &mut buf)?;
    Ok(vals.partition_point(|&w| w < z))
}

/// Σ_{n≥1} [4(πe^{−πn}(n+½)³ + π³e^{−3πn}(n+½)) + 6π²e^{−2πn}(n+½)² + π⁴e^{−4πn}],
/// the constant bounding the defect corrections of the 1D Dirichlet Riesz mean.
pub fn constant_c() -> f64 {
    constant_c_truncated(usize::MAX)
}

pub fn constant_c_truncated(n_max: usize) -> f64 {
    let mut sum = 0.0;
    let mut n = 1usize;
    while n <= n_max {
        let m = n as f64 + 0.5;
        let e = (-PI * n as f64).exp();
        let t = 4.0 * (PI * e * m.powi(3) + PI.powi(3) * e.powi(3) * m)
            + 6.0 * PI * PI * e * e * m * m
            + PI.powi(4) * e.powi(4);
        sum += t;
        if t < 1e-16 {
            break;
        }
        n += 1;
    }
    sum
}

/// Lower and upper bounds on R₁(z) for the 1D pair, z > 0.
///
/// The printed coefficients "1π³/30" and "1π⁴/8" are read as π³/30 and π⁴/8.
pub fn theorem_bounds_1d(pair: Pair, z: f64) -> Result<(f64, f64)> {
    if !(z > 0.0) {
        return Err(Error::Domain("need z > 0"));
    }
    let q = z.powf(0.25);
    let lead = 4.0 / (5.0 * PI) * z * q;
    let shift = pair.second_coefficient() * z;
    let z34 = q * q * q;
    let z12 = q * q;
    if pair == Pair::NAVIER || pair == Pair::KUTTLER_SIGILLITO {
        let lo = lead + shift - PI / 3.0 * z34;
        let hi = lead + shift + PI / 6.0 * z34 + PI * PI / 12.0 * z12;
        return Ok((lo, hi));
    }
    let c = constant_c();
    let lo = lead + shift - 11.0 * PI / 6.0 * z34 - 1.5 * PI * PI * z12 - 127.0 * PI.powi(3) / 240.0 * q - c;
    let hi = lead + shift + PI / 6.0 * z34 + 1.5 * PI * PI * z12 + PI.powi(3) / 30.0 * q + PI.powi(4) / 8.0 + c;
    Ok((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LatticeVariant {
    /// Σ (R⁴ − n⁴)_+
    Integers,
    /// Σ (R⁴ − (n+½)⁴)_+
    HalfIntegers,
}

/// (lhs, mid, rhs) where mid is the lattice sum minus its main terms and lhs, rhs
/// are the cubic polynomial envelopes; lhs ≤ mid ≤ rhs for every R ≥ 0.
pub fn lemma_onedim_bounds(r: f64, variant: LatticeVariant) -> Result<(f64, f64, f64)> {
    if !(r >= 0.0) {
        return Err(Error::Domain("need R >= 0"));
    }
    let r4 = r.powi(4);
    let shift = match variant {
        LatticeVariant::Integers => 0.0,
        LatticeVariant::HalfIntegers => 0.5,
    };
    let mut sum = 0.0;
    let mut n = 1usize;
    loop {
        let p = (n as f64 + shift).powi(4);
        if p >= r4 {
            break;
        }
        sum += r4 - p;
        n += 1;
    }
    let (r2, r3, r5) = (r * r, r * r * r, r4 * r);
    Ok(match variant {
        LatticeVariant::Integers => {
            let mid = sum - 0.8 * r5 + 0.5 * r4;
            (-r3 / 3.0, mid, r3 / 6.0 + r2 / 12.0)
        }
        LatticeVariant::HalfIntegers => {
            let mid = sum - 0.8 * r5 + r4;
            let lo = -11.0 / 6.0 * r3 - 1.5 * r2 - 127.0 / 240.0 * r;
            let hi = r3 / 6.0 + 1.5 * r2 + r / 30.0 + 0.125;
            (lo, mid, hi)
        }
    })
}

/// `n` log-spaced points in [a, b]; both endpoints are returned exactly.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i + 1 == n {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Default grid for the second-term fit: 32 log-spaced points in [1e4, 1e9].
pub fn default_fit_grid() -> Vec<f64> {
    log_grid(1e4, 1e9, 32)
}

/// Least-squares slope of R₁(z) − (4/(5π)) z^{5/4} against z (with intercept).
pub fn second_term_fit(pair: Pair, z_grid: &[f64]) -> Result<f64> {
    if z_grid.len() < 8 {
        return Err(Error::Domain("fit grid needs at least 8 points"));
    }
    if z_grid.windows(2).any(|w| !(w[1] > w[0])) || !(z_grid[0] > 0.0) {
        return Err(Error::Domain("fit grid must be positive and increasing"));
    }
    let zmax = *z_grid.last().unwrap_or(&0.0);
    if zmax < 1e6 {
        return Err(Error::Domain("fit grid must reach at least 1e6"));
    }
    let spec = spectrum_1d_below(pair, zmax, 1.0)?;
    let mut ys = Vec::with_capacity(z_grid.len());
    for &z in z_grid {
        let r = riesz_mean(&spec, z, 1.0)?.value;
        ys.push(r - 4.0 / (5.0 * PI) * z.powf(1.25));
    }
    let n = z_grid.len() as f64;
    let zbar = z_grid.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (z, y) in z_grid.iter().zip(&ys) {
        sxy += (z - zbar) * (y - ybar);
        sxx += (z - zbar) * (z - zbar);
    }
    Ok(sxy / sxx)
}

const KEY_RIESZ: &str = "riesz-1d-bounds";
const KEY_LEMMA: &str = "lattice-riesz-envelopes";

/// lower ≤ R₁(z) ≤ upper for each z.
pub fn theorem_report(pair: Pair, zs: &[f64]) -> Result<Vec<BoundReport>> {
    let zmax = zs.iter().cloned().fold(1.0, f64::max);
    let spec = spectrum_1d_below(pair, zmax, 1.0)?;
    let mut out = Vec::with_capacity(2 * zs.len());
    for &z in zs {
        let (lo, hi) = theorem_bounds_1d(pair, z)?;
        let r = riesz_mean(&spec, z, 1.0)?.value;
        let tag = (pair.i() * 10 + pair.j()) as f64;
        let tol = 1e-12 * r.abs().max(1.0);
        out.push(BoundReport::le(format!("riesz1d.lower{pair}"), KEY_RIESZ, lo, r).params(tag, z).tolerance(tol));
        out.push(
            BoundReport::le(format!("riesz1d.upper{pair}"), KEY_RIESZ, r, hi)
                .params(tag, z)
                .tolerance(tol)
                .note("coefficients read as pi^3/30 and pi^4/8"),
        );
    }
    Ok(out)
}

/// Both lattice envelopes at each R.
pub fn lemma_report(rs: &[f64]) -> Result<Vec<BoundReport>> {
    let mut out = Vec::with_capacity(4 * rs.len());
    for &r in rs {
        for (variant, name, p2) in [
            (LatticeVariant::Integers, "integers", 0.0),
            (LatticeVariant::HalfIntegers, "half_integers", 0.5),
        ] {
            let (lo, mid, hi) = lemma_onedim_bounds(r, variant)?;
            // Cancellation in Σ − (4/5)R⁵ leaves absolute rounding of order ε R⁵.
            let tol = 64.0 * f64::EPSILON * r.powi(5).max(1.0);
            out.push(BoundReport::le(format!("lemma.{name}.lower"), KEY_LEMMA, lo, mid).params(r, p2).tolerance(tol));
            out.push(BoundReport::le(format!("lemma.{name}.upper"), KEY_LEMMA, mid, hi).params(r, p2).tolerance(tol));
        }
    }
    Ok(out)
}
