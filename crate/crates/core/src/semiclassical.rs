//! Weyl constants, boundary coefficients c₁ and two-term eigenvalue predictions.
//!
//! Counting functions behave like N(z) = c₀ z^{d/4} + c₁ z^{(d−1)/4} + o(·) with
//! c₀ = (2π)^{-d} B_d |Ω| and a boundary-condition dependent c₁ ∝ |∂Ω|.
//! These are asymptotic statements for smooth domains; predictions are labelled accordingly.

use core::f64::consts::PI;
use num_traits::Float;

use crate::bc::{BcKind, BoundaryCondition};
use crate::constants::{dimensional_constants, unit_ball_volume};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::special::{adaptive, gamma, Quadrature};

/// Tolerance of the adaptive quadratures for c₁.
pub const QUADRATURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpansionCoefficients {
    pub d: usize,
    pub bc: BoundaryCondition,
    /// Leading coefficient per unit volume.
    pub c0: f64,
    /// Boundary coefficient per unit boundary measure.
    pub c1: f64,
    pub quadrature_error: f64,
}

/// f(a) = 4a − 1 − 3a² + 2(1−a)√(2a² − 2a + 1), for a ∈ (−1, 1).
pub fn f_neumann(a: f64) -> Result<f64> {
    if !(a > -1.0 && a < 1.0) {
        return Err(Error::Domain("f is evaluated for a in (-1, 1)"));
    }
    Ok(4.0 * a - 1.0 - 3.0 * a * a + 2.0 * (1.0 - a) * (2.0 * a * a - 2.0 * a + 1.0).sqrt())
}

fn g_parts(t: f64, a: f64) -> (f64, f64) {
    let s = (1.0 - a) * t * t;
    let num = (1.0 - t * t).max(0.0).sqrt() * (1.0 + s) * (1.0 + s);
    let den = (1.0 + t * t).sqrt() * (1.0 - s) * (1.0 - s);
    (num, den)
}

/// g(t, a) = √(1−t²)(1+(1−a)t²)² / (√(1+t²)(1−(1−a)t²)²).
pub fn g_neumann(t: f64, a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain("t must lie in [0, 1]"));
    }
    let (num, den) = g_parts(t, a);
    if den <= 1e-24 * num {
        return Err(Error::Eval("g has a pole at (1-a)t^2 = 1; use arctan_g"));
    }
    Ok(num / den)
}

/// arctan g(t, a), continuous through the pole (value π/2 there).
pub fn arctan_g(t: f64, a: f64) -> f64 {
    let (num, den) = g_parts(t, a);
    num.atan2(den)
}

/// arctan(1/g(t, a)).
pub fn arctan_g_inv(t: f64, a: f64) -> f64 {
    let (num, den) = g_parts(t, a);
    den.atan2(num)
}

// ∫₀¹ t^{d−2} h(t) dt with t = sin θ, which removes the √(1−t²) endpoint behaviour.
fn sine_substituted<F: Fn(f64) -> f64>(d: usize, h: F) -> Result<Quadrature> {
    adaptive(
        |th: f64| {
            let t = th.sin();
            t.powi(d as i32 - 2) * h(t) * th.cos()
        },
        0.0,
        PI / 2.0,
        QUADRATURE_TOL,
    )
}

/// 1 + Γ((d+1)/4) / (√π Γ((d+3)/4)); tends to 1 as d → ∞.
pub fn dirichlet_factor(d: usize) -> f64 {
    let df = d as f64;
    1.0 + gamma((df + 1.0) / 4.0) / (PI.sqrt() * gamma((df + 3.0) / 4.0))
}

fn boundary_unit(d: usize) -> f64 {
    unit_ball_volume(d - 1) / (4.0 * (2.0 * PI).powi(d as i32 - 1))
}

/// Both equivalent forms of the Neumann c₁ (per unit boundary measure), with the
/// quadrature error estimates: (arctan g form, arctan(1/g) form, error).
pub fn neumann_c1_forms(a: f64, d: usize) -> Result<(f64, f64, f64)> {
    if d < 2 {
        return Err(Error::Unsupported("two-term expansion", d));
    }
    BoundaryCondition::plate(BcKind::Neumann, a, d)?;
    let f = f_neumann(a)?.powf((1.0 - d as f64) / 4.0);
    let k = 4.0 * (d as f64 - 1.0) / PI;
    let i1 = sine_substituted(d, |t| arctan_g(t, a))?;
    let i2 = sine_substituted(d, |t| arctan_g_inv(t, a))?;
    let base = boundary_unit(d);
    let form1 = base * (4.0 * f - 1.0 - k * i1.value);
    let form2 = base * (4.0 * f - 3.0 + k * i2.value);
    Ok((form1, form2, base * k * (i1.error + i2.error)))
}

/// Dirichlet c₁ per unit boundary measure from its defining integral
/// (2π)^{-d}((d−1)B_{d−1}∫₀¹ t^{d−2} arcsin(t²) dt − πB_{d−1}).
pub fn dirichlet_c1_by_quadrature(d: usize) -> Result<Quadrature> {
    if d < 2 {
        return Err(Error::Unsupported("two-term expansion", d));
    }
    let bm = unit_ball_volume(d - 1);
    let q = sine_substituted(d, |t| (t * t).asin())?;
    let scale = (2.0 * PI).powi(-(d as i32));
    Ok(Quadrature {
        value: scale * ((d as f64 - 1.0) * bm * q.value - PI * bm),
        error: scale * (d as f64 - 1.0) * bm * q.error,
    })
}

pub fn expansion_coefficients(bc: BoundaryCondition, d: usize) -> Result<ExpansionCoefficients> {
    if d < 2 {
        return Err(Error::Unsupported("two-term expansion", d));
    }
    bc.validate(d)?;
    let c0 = (2.0 * PI).powi(-(d as i32)) * unit_ball_volume(d);
    let base = boundary_unit(d);
    let (c1, quadrature_error) = match bc {
        BoundaryCondition::OneD(_) | BoundaryCondition::Laplacian { .. } => return Err(Error::Unsupported("non-plate condition in a plate expansion", d)),
        BoundaryCondition::Plate { kind, a } => match kind {
            BcKind::Dirichlet => (-base * dirichlet_factor(d), 0.0),
            BcKind::Navier => (-base, 0.0),
            BcKind::KuttlerSigillito => (base, 0.0),
            BcKind::Neumann => {
                let (c1, _, err) = neumann_c1_forms(a, d)?;
                (c1, err)
            }
        },
    };
    Ok(ExpansionCoefficients { d, bc, c0, c1, quadrature_error })
}

fn check_domain(d: usize, dom: &DomainSpec, k: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Unsupported("two-term prediction", d));
    }
    if dom.dim() != d {
        return Err(Error::Domain("domain dimension differs from d"));
    }
    if k == 0 {
        return Err(Error::Domain("k must be at least 1"));
    }
    Ok(())
}

/// Factor multiplying C_d² B_{d−1} / (d B_d^{1−1/d}) in the second term of Λ_j.
fn second_term_factor(bc: BoundaryCondition, d: usize) -> Result<f64> {
    bc.validate(d)?;
    match bc {
        BoundaryCondition::OneD(_) | BoundaryCondition::Laplacian { .. } => Err(Error::Unsupported("non-plate condition in a plate expansion", d)),
        BoundaryCondition::Plate { kind, a } => Ok(match kind {
            BcKind::Dirichlet => dirichlet_factor(d),
            BcKind::Navier => 1.0,
            BcKind::KuttlerSigillito => -1.0,
            BcKind::Neumann => {
                let c1 = neumann_c1_forms(a, d)?.0;
                -c1 / boundary_unit(d)
            }
        }),
    }
}

/// C_d²(k/|Ω|)^{4/d}, the Weyl term of Λ_k.
pub fn weyl_eigenvalue(d: usize, volume: f64, k: f64) -> Result<f64> {
    let kc = dimensional_constants(d)?;
    Ok(kc.c * kc.c * (k / volume).powf(4.0 / d as f64))
}

/// d/(d+4) C_d²(k/|Ω|)^{4/d}: leading term of the average of the first k
/// eigenvalues and a lower bound for the Dirichlet average.
pub fn leading_average(d: usize, volume: f64, k: f64) -> Result<f64> {
    let df = d as f64;
    Ok(df / (df + 4.0) * weyl_eigenvalue(d, volume, k)?)
}

/// Two-term prediction of the k-th eigenvalue (asymptotic, smooth-domain hypothesis).
pub fn predict_eigenvalue(bc: BoundaryCondition, d: usize, dom: &DomainSpec, k: usize) -> Result<f64> {
    check_domain(d, dom, k)?;
    let kc = dimensional_constants(d)?;
    let df = d as f64;
    let (vol, per) = (dom.volume(), dom.perimeter());
    let kk = k as f64 / vol;
    let coeff = kc.c * kc.c * unit_ball_volume(d - 1) / (df * kc.b.powf(1.0 - 1.0 / df));
    Ok(kc.c * kc.c * kk.powf(4.0 / df) + coeff * second_term_factor(bc, d)? * per / vol * kk.powf(3.0 / df))
}

/// Second term of the prediction derived from (c₀, c₁) by inverting the counting
/// function: −4c₁|∂Ω| / (d (c₀|Ω|)^{(d+3)/d}) k^{3/d}. Used as a cross-check.
pub fn second_term_from_counting(bc: BoundaryCondition, d: usize, dom: &DomainSpec, k: usize) -> Result<f64> {
    check_domain(d, dom, k)?;
    let e = expansion_coefficients(bc, d)?;
    let df = d as f64;
    let c0 = e.c0 * dom.volume();
    let c1 = e.c1 * dom.perimeter();
    Ok(-4.0 * c1 / (df * c0.powf((df + 3.0) / df)) * (k as f64).powf(3.0 / df))
}

/// Two-term prediction of the Dirichlet average (1/k)Σ_{j≤k} Λ_j.
pub fn predict_average(d: usize, dom: &DomainSpec, k: usize) -> Result<f64> {
    check_domain(d, dom, k)?;
    let kc = dimensional_constants(d)?;
    let df = d as f64;
    let (vol, per) = (dom.volume(), dom.perimeter());
    let kk = k as f64 / vol;
    let coeff = kc.c * kc.c * unit_ball_volume(d - 1) / (df * kc.b.powf(1.0 - 1.0 / df));
    Ok(leading_average(d, vol, k as f64)? + df / (df + 3.0) * coeff * dirichlet_factor(d) * per / vol * kk.powf(3.0 / df))
}
