//! Averaged-variational checks against a spectrum known up to per-mode tolerance bands.
//! Every comparison uses the end of the band that works against the inequality.

use anyhow::Result;
use bilap_core::avp::{avg_upper_bound, individual_bounds, partition_lower_bound, riesz_lower_bound, TestFunctionProfile};
use bilap_core::eig2d::RefinementStudy;
use bilap_core::{dimensional_constants, BoundReport, DomainSpec, Spectrum};

/// An eigenvalue with a band [lower, upper] around its best estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn modes_from_study(s: &RefinementStudy) -> Vec<Mode> {
    s.extrapolated.iter().map(|e| Mode { value: e.limit, lower: e.lower(), upper: e.upper() }).collect()
}

pub fn modes_exact(s: &Spectrum) -> Vec<Mode> {
    s.values().iter().map(|&v| Mode { value: v, lower: v, upper: v }).collect()
}

/// avg_upper_bound(φ, k) ≥ average of upper ends, and average of lower ends ≥ (d/(d+4))C_d²(k/|Ω|)^{4/d}.
pub fn average_sandwich(
    dom: &DomainSpec,
    modes: &[Mode],
    profiles: &[(String, TestFunctionProfile)],
    ks: &[usize],
) -> Result<Vec<BoundReport>> {
    let d = dom.dim() as f64;
    let kc = dimensional_constants(dom.dim())?;
    let mut out = Vec::new();
    for &k in ks.iter().filter(|&&k| k <= modes.len()) {
        let kf = k as f64;
        let hi = modes[..k].iter().map(|m| m.upper).sum::<f64>() / kf;
        let lo = modes[..k].iter().map(|m| m.lower).sum::<f64>() / kf;
        for (label, p) in profiles {
            out.push(
                BoundReport::ge(format!("avp.average_upper.{label}"), "avp-average-upper", avg_upper_bound(p, k)?, hi)
                    .params(kf, f64::NAN),
            );
        }
        let weyl = d / (d + 4.0) * kc.c * kc.c * (kf / dom.volume()).powf(4.0 / d);
        out.push(BoundReport::ge("avp.average_lower", "average-lower-weyl", lo, weyl).params(kf, f64::NAN));
    }
    Ok(out)
}

/// Partition-function lower bounds against the truncated heat trace built from upper ends.
pub fn heat_trace(modes: &[Mode], profiles: &[(String, TestFunctionProfile)], ts: &[f64]) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for &t in ts {
        let trace: f64 = modes.iter().map(|m| (-m.upper * t).exp()).sum();
        for (label, p) in profiles {
            let b = partition_lower_bound(p, t)?;
            out.push(BoundReport::le(format!("heat.unweighted.{label}"), "heat-trace-lower", b.unweighted, trace).params(t, f64::NAN));
            out.push(BoundReport::le(format!("heat.weighted.{label}"), "heat-trace-lower", b.weighted, trace).params(t, f64::NAN));
            out.push(
                BoundReport::le(format!("heat.unweighted_as_printed.{label}"), "heat-trace-lower", b.unweighted_as_printed, trace)
                    .params(t, f64::NAN)
                    .reported_only()
                    .note("gradient term divided by the L2 norm; not scale invariant"),
            );
        }
    }
    Ok(out)
}

/// Riesz-mean lower bound against R₁(z) of the upper ends (truncation only lowers R₁).
pub fn riesz_lower(modes: &[Mode], profiles: &[(String, TestFunctionProfile)], zs: &[f64]) -> Vec<BoundReport> {
    let mut out = Vec::new();
    let top = modes.last().map_or(0.0, |m| m.lower);
    for &z in zs {
        let r1: f64 = modes.iter().map(|m| (z - m.upper).max(0.0)).sum();
        for (label, p) in profiles {
            let mut r = BoundReport::le(format!("avp.riesz_lower.{label}"), "avp-riesz-lower", riesz_lower_bound(p, z), r1).params(z, f64::NAN);
            if z > top {
                r = r.note("z beyond the computed modes; truncated mean");
            }
            out.push(r);
        }
    }
    out
}

/// lower(k) ≤ Λ_k and Λ_{k+1} ≤ upper(k) for a given A.
pub fn individual(dom: &DomainSpec, modes: &[Mode], a: f64, ks: &[usize]) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for &k in ks.iter().filter(|&&k| k < modes.len()) {
        let b = individual_bounds(dom, a, k)?;
        out.push(BoundReport::le("individual.lower", "individual-eigenvalue-bounds", b.lower, modes[k - 1].lower).params(k as f64, a));
        out.push(BoundReport::le("individual.upper", "individual-eigenvalue-bounds", modes[k].upper, b.upper).params(k as f64 + 1.0, a));
    }
    Ok(out)
}
