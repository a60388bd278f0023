//! Refined Kröger–Laptev inequality for Neumann-type spectra, the sharpened
//! Young inequality behind it, and the Navier/Laplacian cross inequalities.

use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

use crate::constants::dimensional_constants;
use crate::error::{Error, Result};
use crate::report::BoundReport;
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KroegerLaptev {
    pub k: usize,
    /// Weyl expression m_k = C_d²(k/|Ω|)^{4/d}.
    pub m_k: f64,
    /// S_k = ((d+4)/d)(1/k)Σ_{j≤k} ω_j / m_k; the classical bound is S_k ≤ 1.
    pub s_k: f64,
    /// m_k(1 ∓ √(1 − S_k))², present when S_k ≤ 1.
    pub interval: Option<(f64, f64)>,
    /// ω_{k+1}.
    pub next: f64,
}

impl KroegerLaptev {
    /// ω_{k+1} lies in the interval (false when S_k > 1).
    pub fn contains_next(&self) -> bool {
        self.interval.is_some_and(|(lo, hi)| lo <= self.next && self.next <= hi)
    }

    /// Reports: S_k ≤ 1, lower and upper end of the interval.
    pub fn reports(&self, d: usize) -> Vec<BoundReport> {
        let k = self.k as f64;
        let note = if d == 1 { "extrapolated to d=1" } else { "" };
        let mut out = alloc::vec![BoundReport::le("kroeger_laptev.s_k", "kroeger-laptev", self.s_k, 1.0).params(k, d as f64).note(note)];
        let (lo, hi) = self.interval.unwrap_or((f64::NAN, f64::NAN));
        out.push(BoundReport::ge("kroeger_laptev.next_lower", "kroeger-laptev-refined", self.next, lo).params(k, d as f64).note(note));
        out.push(BoundReport::le("kroeger_laptev.next_upper", "kroeger-laptev-refined", self.next, hi).params(k, d as f64).note(note));
        out
    }
}

/// Evaluates the refined inequality m_k(1 − S_k) ≥ (√ω_{k+1} − √m_k)² on a spectrum.
/// `d` is the dimension used in the Weyl constants; |Ω| comes from the spectrum's domain.
pub fn kroeger_laptev_refined(spec: &Spectrum, d: usize, k: usize) -> Result<KroegerLaptev> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1"));
    }
    if spec.len() < k + 1 {
        return Err(Error::InsufficientSpectrum { have: spec.len(), z: f64::NAN });
    }
    let kc = dimensional_constants(d)?;
    let df = d as f64;
    let m_k = kc.c * kc.c * (k as f64 / spec.domain().volume()).powf(4.0 / df);
    let avg = spec.average(k).ok_or(Error::Internal("average of a nonempty prefix"))?;
    let s_k = (df + 4.0) / df * avg / m_k;
    let interval = (s_k <= 1.0).then(|| {
        let r = (1.0 - s_k).sqrt();
        (m_k * (1.0 - r) * (1.0 - r), m_k * (1.0 + r) * (1.0 + r))
    });
    Ok(KroegerLaptev { k, m_k, s_k, interval, next: spec.values()[k] })
}

/// y_p(x) = (p+1)x − p − x^{p+1} and its refined bound −p(1 − √x)².
pub fn young_refined(p: f64, x: f64) -> Result<(f64, f64)> {
    if !(p >= 0.0 && x >= 0.0) {
        return Err(Error::Domain("young_refined needs p >= 0 and x >= 0"));
    }
    let y = (p + 1.0) * x - p - x.powf(p + 1.0);
    let s = 1.0 - x.sqrt();
    Ok((y, -p * s * s))
}

/// Σ_{j≤n}(λ_{n+1} − λ_j) ≥ Σ_{k≤N}(λ_{n+1} − ∫|∇Ũ_k|²) and
/// Σ_{j=2}^{m}(μ_{m+1} − μ_j)μ_j ≥ Σ_{k≤N}(μ_{m+1}∫|∇Ũ_k|² − ∫|D²Ũ_k|²).
///
/// `lap_dirichlet` (λ) and `lap_neumann` (μ, starting with μ₁ = 0) are Laplacian
/// spectra; `energies` are (gradient, Hessian) energies of L²-normalised Navier
/// eigenfunctions. `tol` is the absolute tolerance band for both checks.
pub fn navier_cross_inequalities(
    lap_dirichlet: &Spectrum,
    lap_neumann: &Spectrum,
    energies: &[(f64, f64)],
    n: usize,
    m: usize,
    big_n: usize,
    tol: f64,
) -> Result<[BoundReport; 2]> {
    if big_n > energies.len() {
        return Err(Error::Domain("N exceeds the number of available energies"));
    }
    if n == 0 || m == 0 {
        return Err(Error::Domain("n and m must be positive"));
    }
    if lap_dirichlet.len() < n + 1 || lap_neumann.len() < m + 1 {
        return Err(Error::InsufficientSpectrum { have: lap_dirichlet.len().min(lap_neumann.len()), z: f64::NAN });
    }
    let lam = lap_dirichlet.values();
    let mu = lap_neumann.values();
    let ln = lam[n];
    let lhs1: f64 = lam[..n].iter().map(|l| ln - l).sum();
    let rhs1: f64 = energies[..big_n].iter().map(|(g, _)| ln - g).sum();
    let mm = mu[m];
    let lhs2: f64 = mu[1..m].iter().map(|u| (mm - u) * u).sum();
    let rhs2: f64 = energies[..big_n].iter().map(|(g, h)| mm * g - h).sum();
    let params = |r: BoundReport, a: usize| r.params(a as f64, big_n as f64).tolerance(tol);
    Ok([
        params(BoundReport::ge("navier_cross.gradient", "navier-laplacian-cross", lhs1, rhs1), n)
            .note(format!("n={n} N={big_n}")),
        params(BoundReport::ge("navier_cross.hessian", "navier-laplacian-cross", lhs2, rhs2), m)
            .note(format!("m={m} N={big_n}")),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bc::Pair;
    use crate::spectra1d::spectrum_1d;
    use crate::{BoundaryCondition, DomainSpec, Source};


    fn neumann_1d(count: usize) -> Spectrum {
        spectrum_1d(Pair::NEUMANN, count, 1.0).unwrap()
    }

    #[test]
    fn young_examples() {
        assert_eq!(young_refined(3.0, 1.0).unwrap(), (0.0, 0.0));
        assert_eq!(young_refined(2.5, 0.0).unwrap(), (-2.5, -2.5));
        let (y, b) = young_refined(0.5, 4.0).unwrap();
        assert!((y + 2.5).abs() < 1e-12 && (b + 0.5).abs() < 1e-15);
        assert!(young_refined(-1.0, 1.0).is_err());
    }

    #[test]
    fn kroeger_laptev_1d_neumann() {
        let s = neumann_1d(12);
        let kl = kroeger_laptev_refined(&s, 1, 10).unwrap();
        assert!(kl.s_k < 1.0 && kl.contains_next());
        assert!(kl.m_k * (1.0 - kl.s_k) >= (kl.next.sqrt() - kl.m_k.sqrt()).powi(2));
        assert!(kroeger_laptev_refined(&s, 1, 12).is_err());
    }

    #[test]
    fn collapsed_interval() {
        let dom = DomainSpec::interval(1.0).unwrap();
        // one eigenvalue chosen so that S_1 = 1 exactly: (5/1)·ω₁ = π⁴
        let w = core::f64::consts::PI.powi(4) / 5.0;
        let s = Spectrum::new(alloc::vec![w, 2.0 * w], dom, BoundaryCondition::OneD(Pair::NEUMANN), Source::Predicted).unwrap();
        let kl = kroeger_laptev_refined(&s, 1, 1).unwrap();
        let (lo, hi) = kl.interval.unwrap();
        assert!((lo - hi).abs() < 1e-6 * hi && (lo - kl.m_k).abs() < 1e-6 * hi);
    }

    #[test]
    fn cross_trivial_and_errors() {
        let dom = DomainSpec::unit_square();
        let pi2 = core::f64::consts::PI.powi(2);
        let lam = Spectrum::new(alloc::vec![2.0 * pi2, 5.0 * pi2, 5.0 * pi2, 8.0 * pi2], dom, BoundaryCondition::dirichlet(), Source::Exact).unwrap();
        let mu = Spectrum::new(alloc::vec![0.0, pi2, pi2, 2.0 * pi2], dom, BoundaryCondition::dirichlet(), Source::Exact).unwrap();
        let r = navier_cross_inequalities(&lam, &mu, &[], 2, 2, 0, 0.0).unwrap();
        assert!(r[0].holds && r[1].holds && r[0].rhs == 0.0);
        assert!(navier_cross_inequalities(&lam, &mu, &[], 2, 2, 1, 0.0).is_err());
        // exact sine energies: N = n gives equality in the gradient form
        let en: Vec<(f64, f64)> = lam.values().iter().map(|&l| (l, l * l)).collect();
        let r = navier_cross_inequalities(&lam, &mu, &en, 3, 3, 3, 0.0).unwrap();
        assert!(r[0].margin.abs() < 1e-9 && r[0].holds);
        assert!(r[1].holds);
    }
}
