//! Exact spectra and eigenfunctions of the six problems u'''' = Λu on [0, L] with
//! u^{(i)} = u^{(j)} = 0 at both ends.
//!
//! With γ_n the roots of cos γ cosh γ = 1 (γ_0 = γ_{-1} = 0) and L = 1:
//!
//! | pair  | Λ_n          |
//! |-------|--------------|
//! | (0,1) | γ_n⁴         |
//! | (0,2) | π⁴ n⁴        |
//! | (0,3) | γ_{n−1}⁴     |
//! | (1,2) | γ_{n−1}⁴     |
//! | (1,3) | π⁴ (n−1)⁴    |
//! | (2,3) | γ_{n−2}⁴     |

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::bc::{BoundaryCondition, Pair};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::report::BoundReport;
use crate::roots1d::solve_gamma;
use crate::spectrum::{Source, Spectrum};

/// Eigenfunctions are exposed up to this index; beyond it only eigenvalues.
pub const MAX_EIGENFUNCTION_INDEX: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Form {
    /// Combination of cosh, sinh, cos, sin with parameter γ.
    Hyperbolic,
    /// sin(mπx)
    Sine(usize),
    /// cos(mπx)
    Cosine(usize),
    Constant,
    Linear,
    /// x(1 − x)
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Eigenfunction1D {
    pub pair: Pair,
    pub n: usize,
    /// Coefficient A of the closed form (0 for non-hyperbolic forms).
    pub a: f64,
    /// A − 1, computed without cancellation.
    pub delta: f64,
    pub gamma: f64,
    pub form: Form,
    pub length: f64,
}

fn root_offset(pair: Pair) -> Option<usize> {
    match (pair.i(), pair.j()) {
        (0, 1) => Some(0),
        (0, 3) | (1, 2) => Some(1),
        (2, 3) => Some(2),
        _ => None,
    }
}

fn gamma_of(m: usize) -> Result<f64> {
    Ok(solve_gamma(m, 1e-12)?.gamma)
}

/// Λ_n for L = 1; shares roots with every other pair (bit-identical).
fn unit_eigenvalue(pair: Pair, n: usize, roots: &mut RootCache) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("eigenvalue index starts at 1"));
    }
    Ok(match root_offset(pair) {
        Some(off) => {
            if n <= off {
                0.0
            } else {
                roots.get(n - off)?.powi(4)
            }
        }
        None if pair == Pair::NAVIER => (PI * n as f64).powi(4),
        None => (PI * (n - 1) as f64).powi(4),
    })
}

#[derive(Default)]
struct RootCache(Vec<f64>);

impl RootCache {
    fn get(&mut self, m: usize) -> Result<f64> {
        while self.0.len() <= m {
            let k = self.0.len();
            self.0.push(gamma_of(k)?);
        }
        Ok(self.0[m])
    }
}

fn check_length(l: f64) -> Result<DomainSpec> {
    DomainSpec::interval(l)
}

/// The first `count` eigenvalues of `pair` on [0, L].
pub fn spectrum_1d(pair: Pair, count: usize, length: f64) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1"));
    }
    let dom = check_length(length)?;
    let mut roots = RootCache::default();
    let scale = length.powi(4);
    let values = (1..=count)
        .map(|n| unit_eigenvalue(pair, n, &mut roots).map(|v| v / scale))
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(values, dom, BoundaryCondition::OneD(pair), Source::Exact)
}

/// All eigenvalues below z plus the first one ≥ z, so the list is provably complete.
pub fn spectrum_1d_below(pair: Pair, z: f64, length: f64) -> Result<Spectrum> {
    let dom = check_length(length)?;
    let mut roots = RootCache::default();
    let scale = length.powi(4);
    let mut values = Vec::new();
    let mut n = 1;
    loop {
        let v = unit_eigenvalue(pair, n, &mut roots)? / scale;
        values.push(v);
        if v >= z && v > 0.0 {
            break;
        }
        n += 1;
    }
    Spectrum::new(values, dom, BoundaryCondition::OneD(pair), Source::Exact)
}

/// Eigenfunction belonging to Λ_n of `pair` on [0, L], n ≤ 40.
pub fn eigenfunction(pair: Pair, n: usize, length: f64) -> Result<Eigenfunction1D> {
    if n > MAX_EIGENFUNCTION_INDEX {
        return Err(Error::Domain("eigenfunctions are only exposed for n <= 40"));
    }
    eigenfunction_unchecked(pair, n, length)
}

pub(crate) fn eigenfunction_unchecked(pair: Pair, n: usize, length: f64) -> Result<Eigenfunction1D> {
    check_length(length)?;
    if n == 0 {
        return Err(Error::Domain("eigenfunction index starts at 1"));
    }
    let mk = |form, gamma, a, delta| Eigenfunction1D { pair, n, a, delta, gamma, form, length };
    Ok(match (pair.i(), pair.j()) {
        (0, 2) => mk(Form::Sine(n), PI * n as f64, 0.0, 0.0),
        (1, 3) if n == 1 => mk(Form::Constant, 0.0, 0.0, 0.0),
        (1, 3) => mk(Form::Cosine(n - 1), PI * (n - 1) as f64, 0.0, 0.0),
        (0, 3) if n == 1 => mk(Form::Quadratic, 0.0, 0.0, 0.0),
        (1, 2) if n == 1 => mk(Form::Constant, 0.0, 0.0, 0.0),
        (2, 3) if n == 1 => mk(Form::Constant, 0.0, 0.0, 0.0),
        (2, 3) if n == 2 => mk(Form::Linear, 0.0, 0.0, 0.0),
        _ => {
            let m = n - root_offset(pair).unwrap_or(0);
            let g = gamma_of(m)?;
            let denom = g.cosh() - g.cos();
            let eg = (-g).exp();
            let (a, delta) = if pair == Pair::DIRICHLET_NEUMANN {
                ((g.sinh() + g.sin()) / denom, (g.cos() + g.sin() - eg) / denom)
            } else {
                ((g.sinh() - g.sin()) / denom, (g.cos() - g.sin() - eg) / denom)
            };
            mk(Form::Hyperbolic, g, a, delta)
        }
    })
}

// k-th derivative of cos and sin at t, without the γ^k factor.
fn cos_k(t: f64, k: u32) -> f64 {
    match k % 4 {
        0 => t.cos(),
        1 => -t.sin(),
        2 => -t.cos(),
        _ => t.sin(),
    }
}

fn sin_k(t: f64, k: u32) -> f64 {
    cos_k(t, k + 3)
}

impl Eigenfunction1D {
    pub fn eigenvalue(&self) -> f64 {
        (self.gamma / self.length).powi(4)
    }

    /// k-th derivative at x ∈ [0, L] for any k ≤ 4.
    pub(crate) fn derivative(&self, x: f64, k: u32) -> f64 {
        let xi = x / self.length;
        let scale = self.length.powi(-(k as i32));
        let g = self.gamma;
        let v = match self.form {
            Form::Constant => {
                if k == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            Form::Linear => match k {
                0 => xi,
                1 => 1.0,
                _ => 0.0,
            },
            Form::Quadratic => match k {
                0 => xi * (1.0 - xi),
                1 => 1.0 - 2.0 * xi,
                2 => -2.0,
                _ => 0.0,
            },
            Form::Sine(_) => g.powi(k as i32) * sin_k(g * xi, k),
            Form::Cosine(_) => g.powi(k as i32) * cos_k(g * xi, k),
            Form::Hyperbolic => {
                let t = g * xi;
                let gk = g.powi(k as i32);
                let e = if k % 2 == 0 { 1.0 } else { -1.0 } * (-t).exp();
                let (ch, sh) = if k % 2 == 0 { (t.cosh(), t.sinh()) } else { (t.sinh(), t.cosh()) };
                let (c, s) = (cos_k(t, k), sin_k(t, k));
                let (a, d) = (self.a, self.delta);
                gk * match (self.pair.i(), self.pair.j()) {
                    (0, 1) => e + d * ch - a * c + s,
                    (0, 3) => e + d * ch - a * c - s,
                    (1, 2) => e - d * sh + c + a * s,
                    _ => e + d * ch + a * c - s,
                }
            }
        };
        v * scale
    }
}

pub fn eval_eigenfunction(ef: &Eigenfunction1D, x: f64, deriv: u32) -> Result<f64> {
    if deriv > 3 {
        return Err(Error::Domain("derivative order must be 0..=3"));
    }
    if !(x >= 0.0 && x <= ef.length) {
        return Err(Error::Domain("x outside [0, L]"));
    }
    Ok(ef.derivative(x, deriv))
}

const KEY_IDENTITY: &str = "one-dimensional-spectra";
const KEY_CHAIN: &str = "comparison-chain";

/// Shared-root identities, interlacing of the six spectra, and the sharp
/// Weyl-type bound for the Neumann problem, for n ≤ n_max.
pub fn identity_check(n_max: usize) -> Result<Vec<BoundReport>> {
    let n_max = n_max.max(1);
    let spec = |p: Pair| spectrum_1d(p, n_max + 2, 1.0).map(Spectrum::into_values);
    let s01 = spec(Pair::DIRICHLET)?;
    let s02 = spec(Pair::NAVIER)?;
    let s03 = spec(Pair::DIRICHLET_NEUMANN)?;
    let s12 = spec(Pair::NEUMANN_DIRICHLET)?;
    let s13 = spec(Pair::KUTTLER_SIGILLITO)?;
    let s23 = spec(Pair::NEUMANN)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let i = n - 1;
        let p = |r: BoundReport| r.params(n as f64, f64::NAN);
        out.push(p(BoundReport::eq("spectra1d.identity_03", KEY_IDENTITY, s01[i], s03[i + 1])));
        out.push(p(BoundReport::eq("spectra1d.identity_12", KEY_IDENTITY, s01[i], s12[i + 1])));
        out.push(p(BoundReport::eq("spectra1d.identity_23", KEY_IDENTITY, s01[i], s23[i + 2])));
        out.push(p(BoundReport::ge("spectra1d.order_01_02", KEY_IDENTITY, s01[i], s02[i])));
        out.push(p(BoundReport::ge("spectra1d.order_02_03", KEY_IDENTITY, s02[i], s03[i])));
        out.push(p(BoundReport::eq("spectra1d.order_03_12", KEY_IDENTITY, s03[i], s12[i])));
        out.push(p(BoundReport::ge("spectra1d.order_12_13", KEY_IDENTITY, s12[i], s13[i])));
        out.push(p(BoundReport::ge("spectra1d.order_13_23", KEY_IDENTITY, s13[i], s23[i])));
        let weyl = (PI * (n as f64 - 1.0)).powi(4);
        out.push(p(BoundReport::le("spectra1d.neumann_weyl", KEY_IDENTITY, s23[i], weyl)));
    }
    Ok(out)
}

/// Exact 1D comparison chain: M_j ≤ M̃_j ≤ μ_j², Λ̃_j ≤ Λ_j and λ_j² ≤ Λ_j
/// (Neumann ≤ Kuttler–Sigillito ≤ squared Neumann Laplacian; Navier ≤ Dirichlet).
pub fn comparison_chain_1d(j_max: usize) -> Result<Vec<BoundReport>> {
    let j_max = j_max.max(1);
    let spec = |p: Pair| spectrum_1d(p, j_max, 1.0).map(Spectrum::into_values);
    let dir = spec(Pair::DIRICHLET)?;
    let nav = spec(Pair::NAVIER)?;
    let ks = spec(Pair::KUTTLER_SIGILLITO)?;
    let neu = spec(Pair::NEUMANN)?;
    let mut out = Vec::new();
    for j in 1..=j_max {
        let i = j - 1;
        let lap_d_sq = (PI * j as f64).powi(4);
        let lap_n_sq = (PI * (j - 1) as f64).powi(4);
        let p = |r: BoundReport| r.params(j as f64, f64::NAN);
        out.push(p(BoundReport::le(format!("chain1d.neumann_le_ks"), KEY_CHAIN, neu[i], ks[i])));
        out.push(p(BoundReport::le("chain1d.ks_le_neumann_laplacian_sq", KEY_CHAIN, ks[i], lap_n_sq)));
        out.push(p(BoundReport::le("chain1d.navier_le_dirichlet", KEY_CHAIN, nav[i], dir[i])));
        out.push(p(BoundReport::le("chain1d.laplacian_sq_le_dirichlet", KEY_CHAIN, lap_d_sq, dir[i])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let s = spectrum_1d(Pair::NAVIER, 3, 1.0).unwrap();
        assert!((s.values()[2] - 81.0 * PI.powi(4)).abs() < 1e-9);
        let s = spectrum_1d(Pair::NEUMANN, 3, 1.0).unwrap();
        assert_eq!(&s.values()[..2], &[0.0, 0.0]);
        assert_eq!(s.kernel_dim(), 2);
        let s = spectrum_1d(Pair::DIRICHLET, 1, 1.0).unwrap();
        assert!((s.values()[0] - 500.563_901_740_432_6).abs() < 1e-9);
        let kernels: [usize; 6] = Pair::ALL.map(|p| spectrum_1d(p, 5, 1.0).unwrap().kernel_dim());
        assert_eq!(kernels, [0, 0, 1, 1, 1, 2]);
    }

    #[test]
    fn length_scaling() {
        let a = spectrum_1d(Pair::DIRICHLET, 4, 1.0).unwrap();
        let b = spectrum_1d(Pair::DIRICHLET, 4, 2.0).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x / 16.0 - y).abs() <= 1e-12 * y);
        }
        assert!(spectrum_1d(Pair::DIRICHLET, 0, 1.0).is_err());
        assert!(spectrum_1d(Pair::DIRICHLET, 2, -1.0).is_err());
    }

    #[test]
    fn boundary_conditions_hold() {
        for pair in Pair::ALL {
            for n in 1..=MAX_EIGENFUNCTION_INDEX {
                let ef = eigenfunction(pair, n, 1.0).unwrap();
                let scale = ef.gamma.max(1.0);
                for x in [0.0, 1.0] {
                    for k in [pair.i() as u32, pair.j() as u32] {
                        let v = eval_eigenfunction(&ef, x, k).unwrap();
                        assert!(v.abs() <= 1e-8 * scale.powi(k as i32), "{pair} n={n} x={x} k={k} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn eigenfunctions_are_nontrivial() {
        for pair in Pair::ALL {
            for n in [1, 2, 5, 20, 40] {
                let ef = eigenfunction(pair, n, 1.0).unwrap();
                let norm: f64 = (0..200).map(|i| ef.derivative((i as f64 + 0.5) / 200.0, 0).powi(2)).sum();
                assert!(norm > 1.0, "{pair} n={n}");
            }
        }
    }

    #[test]
    fn trivial_examples_and_errors() {
        let ef = eigenfunction(Pair::DIRICHLET, 1, 1.0).unwrap();
        assert!(eval_eigenfunction(&ef, 0.0, 0).unwrap().abs() < 1e-14);
        assert!(eval_eigenfunction(&ef, 0.0, 1).unwrap().abs() < 1e-12);
        assert!(eval_eigenfunction(&ef, 0.5, 4).is_err());
        assert!(eval_eigenfunction(&ef, 1.5, 0).is_err());
        let lin = eigenfunction(Pair::NEUMANN, 2, 1.0).unwrap();
        assert_eq!(eval_eigenfunction(&lin, 0.3, 2).unwrap(), 0.0);
        assert!(eigenfunction(Pair::NEUMANN, 41, 1.0).is_err());
    }

    #[test]
    fn identities_and_chain() {
        let r = identity_check(50).unwrap();
        assert!(r.iter().all(|r| r.holds), "{:?}", r.iter().find(|r| !r.holds));
        assert!(r.iter().filter(|r| r.check.starts_with("spectra1d.identity")).all(|r| r.lhs == r.rhs));
        let c = comparison_chain_1d(50).unwrap();
        assert!(c.iter().all(|r| r.holds));
    }

    #[test]
    fn spectrum_below_is_complete() {
        let s = spectrum_1d_below(Pair::NEUMANN, 1.0, 1.0).unwrap();
        assert_eq!(s.values().iter().filter(|&&v| v < 1.0).count(), 2);
        assert!(*s.values().last().unwrap() >= 1.0);
    }
}
