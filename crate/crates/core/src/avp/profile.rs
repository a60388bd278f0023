//! Test functions φ ∈ H²₀(Ω) ∩ L^∞(Ω) and their norms.
//!
//! Two families: the quartic bump ψ_r(x) = (|x|²/r² − 1)² on an inscribed ball
//! (closed-form norms) and the mollified indicator φ_h = 1_{h/2} ∗ η_{h/2}, which
//! equals 1 at distance ≥ h from ∂Ω. On intervals and rectangles φ_h is evaluated
//! semi-analytically: along edges it is a 1D profile, near corners a 2D integral
//! of the bump over a quarter plane.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::constants::{dimensional_constants, unit_ball_volume};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::special::GaussLegendre;

/// Largest accepted relative error estimate of the quadrature norms.
pub const MAX_NORM_ERROR: f64 = 1e-4;
/// Minimum number of grid intervals across the collar of width h.
pub const MIN_GRID_RES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ProfileKind {
    InscribedBallPolynomial { r: f64 },
    MollifiedIndicator { h: f64, grid_res: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum NormProvenance {
    ClosedForm,
    Quadrature { est_rel_err: f64 },
}

impl NormProvenance {
    pub fn relative_error(&self) -> f64 {
        match *self {
            Self::ClosedForm => 0.0,
            Self::Quadrature { est_rel_err } => est_rel_err,
        }
    }
}

/// ‖φ‖₂², ‖∇φ‖₂², ‖Δφ‖₂², ‖φ‖∞².
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Norms {
    pub l2_sq: f64,
    pub grad_l2_sq: f64,
    pub lap_l2_sq: f64,
    pub sup_sq: f64,
}

/// Extremes of φ_h, |∇φ_h| and |Δφ_h| over the quadrature grid.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SampledExtremes {
    pub min_value: f64,
    pub max_value: f64,
    pub max_grad: f64,
    pub max_lap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TestFunctionProfile {
    pub kind: ProfileKind,
    pub domain: DomainSpec,
    pub norms: Norms,
    /// ρ(φ) = ‖φ‖₂² / (|Ω| ‖φ‖∞²).
    pub rho: f64,
    pub provenance: NormProvenance,
    pub sampled: Option<SampledExtremes>,
}

impl TestFunctionProfile {
    fn new(kind: ProfileKind, domain: DomainSpec, norms: Norms, provenance: NormProvenance, sampled: Option<SampledExtremes>) -> Self {
        let rho = norms.l2_sq / (domain.volume() * norms.sup_sq);
        Self { kind, domain, norms, rho, provenance, sampled }
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn grad_ratio(&self) -> f64 {
        self.norms.grad_l2_sq / self.norms.l2_sq
    }

    pub fn lap_ratio(&self) -> f64 {
        self.norms.lap_l2_sq / self.norms.l2_sq
    }

    /// Norms moved against every bound by the estimated quadrature error:
    /// ‖φ‖₂² down, gradient and Laplacian norms up.
    pub fn conservative_norms(&self) -> Norms {
        let e = self.provenance.relative_error();
        Norms {
            l2_sq: self.norms.l2_sq * (1.0 - e),
            grad_l2_sq: self.norms.grad_l2_sq * (1.0 + e),
            lap_l2_sq: self.norms.lap_l2_sq * (1.0 + e),
            sup_sq: self.norms.sup_sq,
        }
    }
}

/// ψ_r on a ball of radius r_Ω inside Ω, with closed-form norms.
///
/// The Laplacian ratio is d(d+2)(d+6)(d+8)/(6r⁴); the form (8 + d(d−2))(d+6)(d+8)/(6r⁴)
/// behind the constant c_d agrees with it only at d = 2.
pub fn inscribed_ball_profile(dom: &DomainSpec) -> Result<TestFunctionProfile> {
    let r = dom.inradius();
    if !(r > 0.0) {
        return Err(Error::Domain("domain needs a positive inradius"));
    }
    let norms = inscribed_ball_norms(dom.dim(), r);
    Ok(TestFunctionProfile::new(
        ProfileKind::InscribedBallPolynomial { r },
        *dom,
        norms,
        NormProvenance::ClosedForm,
        None,
    ))
}

pub fn inscribed_ball_norms(d: usize, r: f64) -> Norms {
    let df = d as f64;
    let l2 = 384.0 * r.powi(d as i32) * unit_ball_volume(d) / ((df + 2.0) * (df + 4.0) * (df + 6.0) * (df + 8.0));
    Norms {
        l2_sq: l2,
        grad_l2_sq: l2 * df * (df + 8.0) / (3.0 * r * r),
        lap_l2_sq: l2 * df * (df + 2.0) * (df + 6.0) * (df + 8.0) / (6.0 * r.powi(4)),
        sup_sq: 1.0,
    }
}

/// Radial quadrature of the ψ_r norms; validates the closed forms.
pub fn inscribed_ball_norms_by_quadrature(d: usize, r: f64) -> Norms {
    let df = d as f64;
    let shell = df * unit_ball_volume(d) * r.powi(d as i32);
    let gl = GaussLegendre::new(40);
    let radial = |g: &dyn Fn(f64) -> f64| shell * gl.integrate(0.0, 1.0, |s| g(s) * s.powi(d as i32 - 1));
    Norms {
        l2_sq: radial(&|s| (s * s - 1.0).powi(4)),
        grad_l2_sq: radial(&|s| (4.0 * s * (s * s - 1.0) / r).powi(2)),
        lap_l2_sq: radial(&|s| (4.0 * ((df + 2.0) * s * s - df) / (r * r)).powi(2)),
        sup_sq: 1.0,
    }
}

/// Bump mass constant c_d of η₁(z) = c_d(|z|² − 1)² on |z| < 1.
fn bump_constant(d: usize) -> f64 {
    let df = d as f64;
    (df * df + 6.0 * df + 8.0) / (8.0 * unit_ball_volume(d))
}

// ∫_{−β}^{min(τ,β)} (w² − β²)² dw
fn g_quartic(beta: f64, tau: f64) -> f64 {
    if tau <= -beta {
        return 0.0;
    }
    let w = tau.min(beta);
    let b2 = beta * beta;
    let anti = |w: f64| w.powi(5) / 5.0 - 2.0 * b2 * w.powi(3) / 3.0 + b2 * b2 * w;
    anti(w) + 8.0 * beta.powi(5) / 15.0
}

// ∫_{−β}^{min(τ,β)} (w² − β²) dw
fn g_quadratic(beta: f64, tau: f64) -> f64 {
    if tau <= -beta {
        return 0.0;
    }
    let w = tau.min(beta);
    let b2 = beta * beta;
    w.powi(3) / 3.0 - b2 * w - 2.0 * beta.powi(3) / 3.0
}

fn chord(u: f64) -> f64 {
    (1.0 - u * u).max(0.0).sqrt()
}

/// Scaled profile values: φ and its derivatives in units where ε = h/2 = 1.
#[derive(Debug, Clone, Copy, Default)]
struct Jet {
    value: f64,
    grad_sq: f64,
    lap: f64,
}

/// Edge profile: φ across a straight edge, σ = (distance − ε)/ε ∈ [−1, 1].
struct EdgeProfile {
    d: usize,
    c: f64,
    gl: GaussLegendre,
}

impl EdgeProfile {
    fn new(d: usize) -> Self {
        Self { d, c: bump_constant(d), gl: GaussLegendre::new(24) }
    }

    fn jet(&self, s: f64) -> Jet {
        if s <= -1.0 {
            return Jet::default();
        }
        if s >= 1.0 {
            return Jet { value: 1.0, ..Jet::default() };
        }
        let c = self.c;
        match self.d {
            1 => {
                let anti = |u: f64| u.powi(5) / 5.0 - 2.0 * u.powi(3) / 3.0 + u;
                let p = c * (anti(s) + 8.0 / 15.0);
                let p1 = c * (s * s - 1.0).powi(2);
                let p2 = 4.0 * c * s * (s * s - 1.0);
                Jet { value: p, grad_sq: p1 * p1, lap: p2 }
            }
            _ => {
                // marginal of the 2D bump: (16/15) c (1 − u²)^{5/2}; integrate with u = sin θ
                let k = 16.0 * c / 15.0;
                let top = s.asin();
                let p = k * self.gl.integrate(-PI / 2.0, top, |t| t.cos().powi(6));
                let b = chord(s);
                let p1 = k * b.powi(5);
                let p2 = -5.0 * k * s * b.powi(3);
                Jet { value: p, grad_sq: p1 * p1, lap: p2 }
            }
        }
    }
}

/// Corner profile in 2D: φ = c ∫∫_{u<σ, w<τ} (u² + w² − 1)²₊.
struct CornerProfile {
    c: f64,
    gl: GaussLegendre,
}

impl CornerProfile {
    fn new() -> Self {
        Self { c: bump_constant(2), gl: GaussLegendre::new(24) }
    }

    fn value(&self, s: f64, t: f64) -> f64 {
        if s <= -1.0 || t <= -1.0 {
            return 0.0;
        }
        let top = s.min(1.0).asin();
        // the integrand switches form where cos θ = |τ|
        let mut cuts = vec![-PI / 2.0];
        if t.abs() < 1.0 {
            let k = t.abs().acos();
            for x in [-k, k] {
                if x > -PI / 2.0 && x < top {
                    cuts.push(x);
                }
            }
        }
        cuts.push(top);
        let mut acc = 0.0;
        for w in cuts.windows(2) {
            acc += self.gl.integrate(w[0], w[1], |th| g_quartic(th.cos(), t) * th.cos());
        }
        self.c * acc
    }

    fn jet(&self, s: f64, t: f64) -> Jet {
        let c = self.c;
        let (bs, bt) = (chord(s), chord(t));
        let inside = |x: f64| x > -1.0 && x < 1.0;
        let fs = if inside(s) { c * g_quartic(bs, t) } else { 0.0 };
        let ft = if inside(t) { c * g_quartic(bt, s) } else { 0.0 };
        let fss = if inside(s) { 4.0 * c * s * g_quadratic(bs, t) } else { 0.0 };
        let ftt = if inside(t) { 4.0 * c * t * g_quadratic(bt, s) } else { 0.0 };
        Jet { value: self.value(s, t), grad_sq: fs * fs + ft * ft, lap: fss + ftt }
    }
}

fn trapezoid_weights(n: usize) -> Vec<f64> {
    let h = 2.0 / n as f64;
    (0..=n).map(|i| if i == 0 || i == n { h / 2.0 } else { h }).collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    v2: f64,
    g2: f64,
    l2: f64,
}

impl Moments {
    fn add(&mut self, w: f64, j: &Jet) {
        self.v2 += w * j.value * j.value;
        self.g2 += w * j.grad_sq;
        self.l2 += w * j.lap * j.lap;
    }
}

struct Sampled {
    ext: SampledExtremes,
}

impl Sampled {
    fn new() -> Self {
        Self { ext: SampledExtremes { min_value: f64::INFINITY, max_value: f64::NEG_INFINITY, max_grad: 0.0, max_lap: 0.0 } }
    }

    fn push(&mut self, j: &Jet) {
        let e = &mut self.ext;
        e.min_value = e.min_value.min(j.value);
        e.max_value = e.max_value.max(j.value);
        e.max_grad = e.max_grad.max(j.grad_sq.sqrt());
        e.max_lap = e.max_lap.max(j.lap.abs());
    }
}

// Scaled moments on the edge ([−1,1]) and the corner ([−1,1]²) at n intervals.
fn edge_moments(p: &EdgeProfile, n: usize, sampled: &mut Sampled) -> Moments {
    let w = trapezoid_weights(n);
    let mut m = Moments::default();
    for (i, wi) in w.iter().enumerate() {
        let j = p.jet(-1.0 + 2.0 * i as f64 / n as f64);
        sampled.push(&j);
        m.add(*wi, &j);
    }
    m
}

fn corner_moments(p: &CornerProfile, n: usize, sampled: &mut Sampled) -> Moments {
    let w = trapezoid_weights(n);
    let x: Vec<f64> = (0..=n).map(|i| -1.0 + 2.0 * i as f64 / n as f64).collect();
    let mut m = Moments::default();
    for (i, wi) in w.iter().enumerate() {
        for (k, wk) in w.iter().enumerate() {
            // symmetric in (σ, τ): evaluate the upper triangle once
            if k < i {
                continue;
            }
            let j = p.jet(x[i], x[k]);
            sampled.push(&j);
            let mult = if k == i { 1.0 } else { 2.0 };
            m.add(mult * wi * wk, &j);
        }
    }
    m
}

fn assemble(dom: &DomainSpec, h: f64, edge: Moments, corner: Option<Moments>) -> Norms {
    let eps = h / 2.0;
    match *dom {
        DomainSpec::Interval { length } => Norms {
            l2_sq: (length - 2.0 * h) + 2.0 * eps * edge.v2,
            grad_l2_sq: 2.0 * edge.g2 / eps,
            lap_l2_sq: 2.0 * edge.l2 / eps.powi(3),
            sup_sq: 1.0,
        },
        DomainSpec::Rectangle { lx, ly } => {
            let strips = 2.0 * (lx + ly - 4.0 * h);
            let c = corner.unwrap_or_default();
            Norms {
                l2_sq: (lx - 2.0 * h) * (ly - 2.0 * h) + strips * eps * edge.v2 + 4.0 * eps * eps * c.v2,
                grad_l2_sq: strips * edge.g2 / eps + 4.0 * c.g2,
                lap_l2_sq: strips * edge.l2 / eps.powi(3) + 4.0 * c.l2 / (eps * eps),
                sup_sq: 1.0,
            }
        }
    }
}

/// φ_h = (1_{h/2} ∗ η_{h/2})|_Ω with trapezoid-rule norms at `grid_res` intervals
/// across the collar; the error is estimated against the half-resolution rule.
pub fn mollified_indicator_profile(dom: &DomainSpec, h: f64, grid_res: usize) -> Result<TestFunctionProfile> {
    if !(h > 0.0) || h > dom.inradius() {
        return Err(Error::Domain("mollifier width h must lie in (0, inradius]"));
    }
    if grid_res < MIN_GRID_RES || grid_res % 2 != 0 {
        return Err(Error::Domain("grid_res must be even and at least 64"));
    }
    let d = dom.dim();
    let edge = EdgeProfile::new(d);
    let corner = (d == 2).then(CornerProfile::new);
    let mut sampled = Sampled::new();
    let mut coarse_sampled = Sampled::new();
    let fine = assemble(
        dom,
        h,
        edge_moments(&edge, grid_res, &mut sampled),
        corner.as_ref().map(|c| corner_moments(c, grid_res, &mut sampled)),
    );
    let coarse = assemble(
        dom,
        h,
        edge_moments(&edge, grid_res / 2, &mut coarse_sampled),
        corner.as_ref().map(|c| corner_moments(c, grid_res / 2, &mut coarse_sampled)),
    );
    let rel = |a: f64, b: f64| (a - b).abs() / (3.0 * a.abs());
    let est = rel(fine.l2_sq, coarse.l2_sq).max(rel(fine.grad_l2_sq, coarse.grad_l2_sq)).max(rel(fine.lap_l2_sq, coarse.lap_l2_sq));
    if est > MAX_NORM_ERROR {
        return Err(Error::Resolution { estimate: est, limit: MAX_NORM_ERROR });
    }
    let eps = h / 2.0;
    let mut ext = sampled.ext;
    ext.max_grad /= eps;
    ext.max_lap /= eps * eps;
    Ok(TestFunctionProfile::new(
        ProfileKind::MollifiedIndicator { h, grid_res },
        *dom,
        fine,
        NormProvenance::Quadrature { est_rel_err: est },
        Some(ext),
    ))
}

/// Sup-norm constants (A_d/h, Ã_d/h²) that the sampled extremes must respect.
pub fn mollifier_sup_bounds(d: usize, h: f64) -> Result<(f64, f64)> {
    let k = dimensional_constants(d)?;
    Ok((k.a_grad / h, k.a_lap / (h * h)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_closed_forms() {
        let p = inscribed_ball_profile(&DomainSpec::unit_square()).unwrap();
        assert!((p.grad_ratio() - 80.0 / 3.0).abs() < 1e-12);
        assert!((p.lap_ratio() - 640.0 * 16.0 / 6.0).abs() < 1e-9);
        assert_eq!(p.norms.sup_sq, 1.0);
        assert!(p.rho < 1.0);
    }

    #[test]
    fn ball_quadrature_matches_closed_form() {
        for d in 1..=6 {
            for r in [0.5, 1.3] {
                let a = inscribed_ball_norms(d, r);
                let b = inscribed_ball_norms_by_quadrature(d, r);
                for (x, y) in [(a.l2_sq, b.l2_sq), (a.grad_l2_sq, b.grad_l2_sq), (a.lap_l2_sq, b.lap_l2_sq)] {
                    assert!((x / y - 1.0).abs() < 1e-8, "d={d} r={r}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn edge_profile_is_a_cdf() {
        for d in [1, 2] {
            let p = EdgeProfile::new(d);
            assert!(p.jet(-1.0).value == 0.0);
            assert!((p.jet(0.999_999_999).value - 1.0).abs() < 1e-9);
            assert!((p.jet(0.0).value - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn corner_profile_limits() {
        let c = CornerProfile::new();
        let e = EdgeProfile::new(2);
        for s in [-0.7, -0.1, 0.3, 0.95] {
            assert!((c.value(s, 5.0) - e.jet(s).value).abs() < 1e-13);
            assert!((c.value(s, 0.4) - c.value(0.4, s)).abs() < 1e-13);
        }
        assert!((c.value(0.0, 0.0) - 0.25).abs() < 1e-13);
        assert!((c.value(2.0, 2.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn corner_derivatives_match_differences() {
        let c = CornerProfile::new();
        let step = 1e-5;
        for (s, t) in [(0.2, -0.3), (-0.5, 0.6), (0.1, 0.1)] {
            let j = c.jet(s, t);
            let fs = (c.value(s + step, t) - c.value(s - step, t)) / (2.0 * step);
            let ft = (c.value(s, t + step) - c.value(s, t - step)) / (2.0 * step);
            assert!(((fs * fs + ft * ft) - j.grad_sq).abs() < 1e-8);
            let lap = (c.value(s + step, t) + c.value(s - step, t) + c.value(s, t + step) + c.value(s, t - step) - 4.0 * c.value(s, t)) / (step * step);
            assert!((lap - j.lap).abs() < 1e-4, "{lap} vs {}", j.lap);
        }
    }

    #[test]
    fn mollified_square() {
        let sq = DomainSpec::unit_square();
        let h = 0.1;
        let p = mollified_indicator_profile(&sq, h, 64).unwrap();
        let tube = sq.tube_volume(h).unwrap();
        assert!(p.norms.l2_sq >= 1.0 - tube && p.norms.l2_sq <= 1.0);
        let ext = p.sampled.unwrap();
        assert!(ext.min_value >= 0.0 && ext.max_value <= 1.0 + 1e-15);
        let (g, l) = mollifier_sup_bounds(2, h).unwrap();
        assert!(ext.max_grad <= g && ext.max_lap <= l);
        assert!(p.rho < 1.0);
        let finer = mollified_indicator_profile(&sq, h, 256).unwrap();
        let e = p.provenance.relative_error();
        assert!((finer.norms.lap_l2_sq / p.norms.lap_l2_sq - 1.0).abs() < 3.0 * e + 1e-9);
        assert!(mollified_indicator_profile(&sq, 0.6, 64).is_err());
        assert!(mollified_indicator_profile(&sq, 0.1, 32).is_err());
    }

    #[test]
    fn mollified_interval_closed_form() {
        // d = 1: ∫P² etc. have exact values through the polynomial profile
        let dom = DomainSpec::interval(1.0).unwrap();
        let p = mollified_indicator_profile(&dom, 0.2, 512).unwrap();
        let gl = GaussLegendre::new(20);
        let e = EdgeProfile::new(1);
        let eps = 0.1;
        let v2 = gl.integrate(-1.0, 1.0, |s| e.jet(s).value.powi(2));
        let g2 = gl.integrate(-1.0, 1.0, |s| e.jet(s).grad_sq);
        assert!((p.norms.l2_sq - (0.6 + 2.0 * eps * v2)).abs() < 1e-6);
        assert!((p.norms.grad_l2_sq / (2.0 * g2 / eps) - 1.0).abs() < 1e-5);
    }
}
