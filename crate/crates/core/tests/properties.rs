//! Invariants checked on random inputs.

use bilap_core::avp::{avg_upper_bound, inscribed_ball_profile, young_refined};
use bilap_core::eig2d::banded::BandedSym;
use bilap_core::eig2d::richardson;
use bilap_core::riesz::{lemma_onedim_bounds, riesz_mean, theorem_bounds_1d, LatticeVariant};
use bilap_core::roots1d::solve_gamma;
use bilap_core::spectra1d::spectrum_1d_below;
use bilap_core::{BoundaryCondition, DomainSpec, Pair, Source, Spectrum};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = Pair> {
    prop::sample::select(Pair::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn young_refinement_holds(p in 0.0..20.0f64, x in 0.0..4.0f64) {
        let (y, bound) = young_refined(p, x).unwrap();
        prop_assert!(y <= bound + 1e-12 * (1.0 + x.powf(p + 1.0)));
        prop_assert!(bound <= 0.0);
    }

    #[test]
    fn riesz_sandwich(pair in pair(), lz in 0.0..8.0f64) {
        let z = 10f64.powf(lz);
        let spec = spectrum_1d_below(pair, z, 1.0).unwrap();
        let r = riesz_mean(&spec, z, 1.0).unwrap().value;
        let (lo, hi) = theorem_bounds_1d(pair, z).unwrap();
        let tol = 1e-12 * r.abs().max(1.0);
        prop_assert!(lo <= r + tol, "lower {lo} > {r}");
        prop_assert!(r <= hi + tol, "upper {hi} < {r}");
    }

    #[test]
    fn lattice_envelopes(r in 0.0..200.0f64, half in any::<bool>()) {
        let v = if half { LatticeVariant::HalfIntegers } else { LatticeVariant::Integers };
        let (lo, mid, hi) = lemma_onedim_bounds(r, v).unwrap();
        let tol = 1e-12 * r.powi(5).max(1.0);
        prop_assert!(lo <= mid + tol && mid <= hi + tol, "{lo} {mid} {hi}");
    }

    #[test]
    fn spectrum_rejects_any_descent(mut v in prop::collection::vec(0.0..1e6f64, 2..40), i in 0usize..39) {
        v.sort_by(f64::total_cmp);
        let dom = DomainSpec::unit_square();
        let bc = BoundaryCondition::dirichlet();
        prop_assert!(Spectrum::new(v.clone(), dom, bc, Source::Exact).is_ok());
        let i = i % (v.len() - 1);
        if v[i] < v[i + 1] {
            v.swap(i, i + 1);
            prop_assert!(Spectrum::new(v, dom, bc, Source::Exact).is_err());
        }
    }

    #[test]
    fn richardson_exact_for_quadratic_error(limit in 1.0..1e4f64, c in -1e3..1e3f64, n0 in 4usize..40) {
        let cells = [n0, 2 * n0, 4 * n0];
        let values: Vec<Vec<f64>> = cells.iter().map(|&n| vec![limit + c / (n * n) as f64]).collect();
        let e = richardson(&values, &cells).unwrap()[0];
        prop_assert!((e.limit - limit).abs() <= 1e-9 * limit);
        prop_assert!(e.lower() <= limit + 1e-9 * limit && limit - 1e-9 * limit <= e.upper());
        if c.abs() > 1.0 {
            prop_assert!((e.order - 2.0).abs() < 1e-4);
        }
    }

    #[test]
    fn tube_volume_monotone_and_bounded(lx in 0.1..10.0f64, ly in 0.1..10.0f64, a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let dom = DomainSpec::rectangle(lx, ly).unwrap();
        let (h1, h2) = (a.min(b) * dom.inradius(), a.max(b) * dom.inradius());
        let (v1, v2) = (dom.tube_volume(h1).unwrap(), dom.tube_volume(h2).unwrap());
        prop_assert!(v1 <= v2 + 1e-12);
        prop_assert!(v2 <= dom.volume() * (1.0 + 1e-12));
        prop_assert!(v2 <= h2 * dom.perimeter() * (1.0 + 1e-12));
    }

    #[test]
    fn inertia_count_matches_dense(n in 2usize..24, kd in 1usize..4, seed in prop::collection::vec(-1.0..1.0f64, 24 * 4), sigma in -3.0..3.0f64) {
        let mut a = BandedSym::zeros(n, kd);
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i.saturating_sub(kd)..=i {
                let v = seed[(i * 4 + (i - j)) % seed.len()];
                a.set(i, j, v);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        let eig = SymmetricEigen::new(m).eigenvalues;
        prop_assume!(eig.iter().all(|e| (e - sigma).abs() > 1e-8));
        let dense = eig.iter().filter(|&&e| e < sigma).count();
        prop_assert_eq!(a.count_below(sigma).unwrap(), dense);
    }

    #[test]
    fn beam_roots_increase_with_unit_spacing_limit(n in 1usize..200) {
        let a = solve_gamma(n, 1e-14).unwrap();
        let b = solve_gamma(n + 1, 1e-14).unwrap();
        prop_assert!(a.gamma < b.gamma);
        prop_assert!(b.r <= a.r);
        prop_assert!((b.gamma - a.gamma - std::f64::consts::PI).abs() <= a.r + b.r + 1e-12 * b.gamma);
    }

    #[test]
    fn average_bound_scales_like_length_to_minus_four(s in 0.1..10.0f64, lx in 0.5..3.0f64, k in 1usize..200) {
        let dom = DomainSpec::rectangle(lx, 1.0).unwrap();
        let base = avg_upper_bound(&inscribed_ball_profile(&dom).unwrap(), k).unwrap();
        let scaled = avg_upper_bound(&inscribed_ball_profile(&dom.scaled(s)).unwrap(), k).unwrap();
        prop_assert!((scaled * s.powi(4) / base - 1.0).abs() < 1e-10);
    }
}
