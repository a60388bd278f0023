//! One function per subcommand, each turning a [`RunConfig`] into a [`Report`].

use std::time::Instant;

use anyhow::{anyhow, bail, ensure, Result};
use bilap_core::avp::{
    certified_a, explicit_sum_bound, explicit_sum_threshold, inscribed_ball_profile, kroeger_laptev_refined,
    mollified_indicator_profile, rough_bound, young_refined, TestFunctionProfile, MIN_GRID_RES,
};
use bilap_core::eig2d::{comparison_report, DISCRETE_CHAIN_MODES};
use bilap_core::riesz::{constant_c, constant_c_truncated, lemma_report, log_grid, riesz_mean, theorem_report};
use bilap_core::roots1d::{proposition_bound_report, solve_gamma};
use bilap_core::semiclassical::{
    dirichlet_c1_by_quadrature, expansion_coefficients, f_neumann, g_neumann, neumann_c1_forms, predict_average,
    predict_eigenvalue, second_term_from_counting, weyl_eigenvalue,
};
use bilap_core::spectra1d::{identity_check, spectrum_1d, spectrum_1d_below};
use bilap_core::{dimensional_constants, BcKind, BoundReport, BoundaryCondition, DomainSpec, Pair, Relation};

use crate::checks::{average_sandwich, heat_trace, individual, modes_exact, modes_from_study, riesz_lower, Mode};
use crate::config::{Command, RunConfig};
use crate::fd::{clamped_study, DEFAULT_GRIDS};
use crate::report::{Report, Table};
use crate::suite::{halton, young_tolerance, Suite};

fn core<T>(r: bilap_core::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("{e}"))
}

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let mut report = match cfg.command {
        Command::Roots => roots(cfg),
        Command::Spectrum1d => spectrum1d(cfg),
        Command::Riesz1d => riesz1d(cfg),
        Command::LemmaOnedim => lemma_onedim(cfg),
        Command::Constants => constants(cfg),
        Command::Predict => predict(cfg),
        Command::Avp => avp(cfg),
        Command::KroegerLaptev => kroeger_laptev(cfg),
        Command::Eig2d => eig2d(cfg),
        Command::Compare => compare(cfg),
        Command::All => all(cfg),
    }?;
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

fn pairs(cfg: &RunConfig) -> Vec<Pair> {
    cfg.pair.map_or_else(|| Pair::ALL.to_vec(), |p| vec![p])
}

fn interval_length(cfg: &RunConfig) -> Result<f64> {
    match cfg.domain {
        None => Ok(1.0),
        Some(DomainSpec::Interval { length }) => Ok(length),
        Some(_) => bail!("this subcommand needs an interval domain"),
    }
}

fn rectangle(cfg: &RunConfig) -> Result<DomainSpec> {
    match cfg.domain {
        None => Ok(DomainSpec::unit_square()),
        Some(d @ DomainSpec::Rectangle { .. }) => Ok(d),
        Some(_) => bail!("this subcommand needs a rectangle (square:L or rect:LxW)"),
    }
}

fn roots(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n.unwrap_or(20);
    let mut r = Report::new("roots");
    let mut table = Table::new("gamma", &["n", "gamma", "defect", "residual", "asymptotic"]);
    for k in 1..=n {
        let g = core(solve_gamma(k, 1e-12))?;
        r.checks.push(BoundReport::le("roots.residual", "beam-roots", g.residual(), 1e-9).params(k as f64, g.gamma));
        table.push(vec![k as f64, g.gamma, g.r, g.residual(), f64::from(u8::from(g.asymptotic))]);
    }
    r.section("proposition", core(proposition_bound_report(n))?);
    r.tables.push(table);
    Ok(r)
}

fn spectrum1d(cfg: &RunConfig) -> Result<Report> {
    let length = interval_length(cfg)?;
    let ks = cfg.k.clone().unwrap_or_else(|| (1..=20).collect());
    let count = *ks.iter().max().unwrap_or(&1);
    let mut r = Report::new("spectrum1d");
    r.checks = core(identity_check(count))?;
    let mut table = Table::new("values", &["i", "j", "n", "eigenvalue", "fourth_root_times_length"]);
    for p in pairs(cfg) {
        let s = core(spectrum_1d(p, count, length))?;
        for &k in &ks {
            let v = s.values()[k - 1];
            table.push(vec![p.i() as f64, p.j() as f64, k as f64, v, v.powf(0.25) * length]);
        }
    }
    r.tables.push(table);
    Ok(r)
}

/// Collapses the lower/upper rows of one z into a single row:
/// param2 = R₁(z), lhs = lower bound, rhs = upper bound, margin = the smaller slack.
fn sandwich_row(lo: &BoundReport, up: &BoundReport, pair: Pair) -> BoundReport {
    BoundReport {
        check: format!("riesz1d.bounds{pair}"),
        param1: lo.param2,
        param2: lo.rhs,
        lhs: lo.lhs,
        rhs: up.rhs,
        relation: Relation::Le,
        margin: lo.margin.min(up.margin),
        tolerance: lo.tolerance.max(up.tolerance),
        holds: lo.holds && up.holds,
        asserted: true,
        key: lo.key.clone(),
        note: "param1 = z, param2 = R1(z), lhs/rhs = lower/upper bound".into(),
    }
}

fn riesz1d(cfg: &RunConfig) -> Result<Report> {
    let zs = cfg.z.clone().unwrap_or_else(|| log_grid(1.0, 1e8, 200));
    ensure!(zs.iter().all(|&z| z > 0.0), "z values must be positive");
    let mut r = Report::new("riesz1d");
    let mut table = Table::new("means", &["i", "j", "z", "lower", "mean", "upper", "counting"]);
    for p in pairs(cfg) {
        let rows = core(theorem_report(p, &zs))?;
        let zmax = zs.iter().cloned().fold(1.0, f64::max);
        let spec = core(spectrum_1d_below(p, zmax, 1.0))?;
        for (pair_rows, &z) in rows.chunks(2).zip(&zs) {
            let row = sandwich_row(&pair_rows[0], &pair_rows[1], p);
            let mean = core(riesz_mean(&spec, z, 1.0))?;
            table.push(vec![p.i() as f64, p.j() as f64, z, row.lhs, row.param2, row.rhs, mean.truncation_count as f64]);
            r.checks.push(row);
        }
    }
    let c = constant_c();
    r.section(
        "constant",
        vec![
            BoundReport::flag("riesz1d.constant_c_in_2_3", "riesz-1d-bounds", c > 2.0 && c < 3.0).params(c, f64::NAN),
            BoundReport::eq("riesz1d.constant_c_series", "riesz-1d-bounds", constant_c_truncated(60), c).tolerance(1e-12),
        ],
    );
    r.tables.push(table);
    Ok(r)
}

fn lemma_onedim(cfg: &RunConfig) -> Result<Report> {
    let rs = cfg.r.clone().unwrap_or_else(|| (0..500).map(|i| 200.0 * i as f64 / 499.0).collect());
    ensure!(rs.iter().all(|&x| x >= 0.0), "radii must be nonnegative");
    let mut r = Report::new("lemma-onedim");
    r.checks = core(lemma_report(&rs))?;
    Ok(r)
}

fn constants(cfg: &RunConfig) -> Result<Report> {
    let dims = cfg.dims.clone().unwrap_or_else(|| (1..=6).collect());
    let a_list = cfg.a.map_or_else(|| vec![-0.3, 0.0, 0.5, 0.9], |a| vec![a]);
    let mut r = Report::new("constants");
    let mut dim_table = Table::new(
        "dimensional",
        &["d", "B_d", "C_d", "A_d", "A_tilde_d", "a_d", "b_d", "c_d", "M_d", "c0", "c1_dirichlet", "c1_navier", "c1_ks"],
    );
    for &d in &dims {
        let kc = core(dimensional_constants(d))?;
        let c1 = |kind: BcKind| {
            if d < 2 {
                return Ok((f64::NAN, f64::NAN));
            }
            core(expansion_coefficients(BoundaryCondition::Plate { kind, a: 1.0 }, d)).map(|e| (e.c0, e.c1))
        };
        let (c0, cd) = c1(BcKind::Dirichlet)?;
        let (_, cn) = c1(BcKind::Navier)?;
        let (_, ck) = c1(BcKind::KuttlerSigillito)?;
        dim_table.push(vec![d as f64, kc.b, kc.c, kc.a_grad, kc.a_lap, kc.a_d, kc.b_d, kc.c_d, kc.m_d, c0, cd, cn, ck]);
        if d >= 2 {
            let closed = cd;
            let quad = core(dirichlet_c1_by_quadrature(d))?.value;
            r.checks.push(
                BoundReport::eq("constants.dirichlet_c1_quadrature", "dirichlet-boundary-coefficient", closed, quad)
                    .params(d as f64, f64::NAN)
                    .tolerance(1e-9),
            );
        }
    }
    r.checks.push(BoundReport::eq("constants.f_at_zero", "neumann-boundary-coefficient", core(f_neumann(0.0))?, 1.0));
    let mut neu = Table::new("neumann", &["a", "d", "f", "c1_form1", "c1_form2", "quadrature_error"]);
    let mut g_table = Table::new("g", &["a", "t", "g"]);
    for &a in &a_list {
        let f = core(f_neumann(a))?;
        for &d in dims.iter().filter(|&&d| d >= 2) {
            if !(a > -1.0 / (d as f64 - 1.0)) {
                continue;
            }
            let (f1, f2, err) = core(neumann_c1_forms(a, d))?;
            neu.push(vec![a, d as f64, f, f1, f2, err]);
            r.checks.push(
                BoundReport::eq("constants.neumann_c1_forms", "neumann-boundary-coefficient", f1, f2)
                    .params(a, d as f64)
                    .tolerance(1e-9),
            );
        }
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            g_table.push(vec![a, t, g_neumann(t, a).unwrap_or(f64::NAN)]);
        }
    }
    r.tables.extend([dim_table, neu, g_table]);
    Ok(r)
}

fn plate_bc(cfg: &RunConfig, d: usize) -> Result<BoundaryCondition> {
    let kind = cfg.bc.unwrap_or(BcKind::Dirichlet);
    let a = cfg.a.unwrap_or(0.0);
    core(BoundaryCondition::plate(kind, a, d))
}

fn predict(cfg: &RunConfig) -> Result<Report> {
    let dom = rectangle(cfg)?;
    let d = dom.dim();
    let bc = plate_bc(cfg, d)?;
    let ks = cfg.k.clone().unwrap_or_else(|| (1..=50).collect());
    let mut r = Report::new("predict");
    let mut table = Table::new("predictions", &["k", "weyl", "two_term", "dirichlet_average"]);
    for &k in &ks {
        let weyl = core(weyl_eigenvalue(d, dom.volume(), k as f64))?;
        let two = core(predict_eigenvalue(bc, d, &dom, k))?;
        let avg = core(predict_average(d, &dom, k))?;
        table.push(vec![k as f64, weyl, two, avg]);
        let from_counting = core(second_term_from_counting(bc, d, &dom, k))?;
        r.checks.push(
            BoundReport::eq("predict.second_term_consistency", "two-term-asymptotics", two - weyl, from_counting)
                .params(k as f64, f64::NAN)
                .tolerance(1e-9 * weyl),
        );
    }
    r.tables.push(table);
    Ok(r)
}

fn profiles_for(dom: &DomainSpec, widths: &[f64]) -> Result<Vec<(String, TestFunctionProfile)>> {
    let mut v = vec![("ball".to_string(), core(inscribed_ball_profile(dom))?)];
    for &h in widths {
        match mollified_indicator_profile(dom, h, MIN_GRID_RES) {
            Ok(p) => v.push((format!("mollified_h{h}"), p)),
            Err(e) => bail!("mollified profile at h = {h}: {e}"),
        }
    }
    Ok(v)
}

fn avp(cfg: &RunConfig) -> Result<Report> {
    let dom = cfg.domain.unwrap_or_else(DomainSpec::unit_square);
    let ks = cfg.k.clone().unwrap_or_else(|| (1..=30).collect());
    let kmax = *ks.iter().max().unwrap_or(&1);
    let widths = cfg.h.clone().unwrap_or_else(|| vec![0.2 * dom.inradius(), 0.5 * dom.inradius()]);
    let ts = cfg.t.clone().unwrap_or_else(|| vec![1e-3, 1e-4]);
    let mut r = Report::new("avp");
    // exact clamped beam on an interval, refined FD study on a rectangle
    let modes: Vec<Mode> = match dom {
        DomainSpec::Interval { length } => modes_exact(&core(spectrum_1d(Pair::DIRICHLET, kmax + 1, length))?),
        DomainSpec::Rectangle { .. } => {
            let grids = cfg.grids.clone().unwrap_or_else(|| DEFAULT_GRIDS.to_vec());
            let study = clamped_study(&dom, &grids, kmax + 1, cfg.cache_dir.as_deref(), &mut r.timing.solves)?;
            modes_from_study(&study)
        }
    };
    let profiles = profiles_for(&dom, if dom.dim() == 2 { &widths } else { &[] })?;
    r.checks = average_sandwich(&dom, &modes, &profiles, &ks)?;
    r.section("heat", heat_trace(&modes, &profiles, &ts)?);
    let zs = cfg.z.clone().unwrap_or_else(|| log_grid(modes[0].value, modes[modes.len() - 1].value, 16));
    r.section("riesz", riesz_lower(&modes, &profiles, &zs));
    let a = core(certified_a(&dom, 1, 2 * (kmax + 1)))?;
    r.section("individual", individual(&dom, &modes, a, &ks)?);
    let mut sums = Table::new("sums", &["k", "rough", "explicit_total", "main", "second", "remainder", "h", "certified_a"]);
    let thr = core(explicit_sum_threshold(&dom))?;
    for &k in &ks {
        let rough = core(rough_bound(&dom, k))?;
        let row = match explicit_sum_bound(&dom, k) {
            Ok(e) => vec![k as f64, rough, e.total(), e.main, e.second, e.remainder, e.h, a],
            Err(_) => vec![k as f64, rough, f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN, a],
        };
        sums.push(row);
    }
    log::info!("explicit sum bound valid from k >= {thr:.6}; certified A = {a:.6e}");
    let mut prof = Table::new("profiles", &["index", "l2_sq", "grad_l2_sq", "lap_l2_sq", "sup_sq", "rho", "relative_error"]);
    for (i, (_, p)) in profiles.iter().enumerate() {
        let n = p.norms;
        prof.push(vec![i as f64, n.l2_sq, n.grad_l2_sq, n.lap_l2_sq, n.sup_sq, p.rho, p.provenance.relative_error()]);
    }
    r.tables.extend([sums, prof]);
    Ok(r)
}

fn kroeger_laptev(cfg: &RunConfig) -> Result<Report> {
    let length = interval_length(cfg)?;
    let pair = cfg.pair.unwrap_or(Pair::NEUMANN);
    let ks = cfg.k.clone().unwrap_or_else(|| (1..=500).collect());
    let kmax = *ks.iter().max().unwrap_or(&1);
    let spec = core(spectrum_1d(pair, kmax + 1, length))?;
    let mut r = Report::new("kroeger-laptev");
    let mut table = Table::new("interval", &["k", "m_k", "s_k", "lower", "next", "upper"]);
    for &k in &ks {
        let kl = core(kroeger_laptev_refined(&spec, 1, k))?;
        let (lo, hi) = kl.interval.unwrap_or((f64::NAN, f64::NAN));
        table.push(vec![k as f64, kl.m_k, kl.s_k, lo, kl.next, hi]);
        r.checks.extend(kl.reports(1));
    }
    let samples = cfg.n.unwrap_or(10_000);
    let young = (0..samples)
        .map(|i| {
            let (u, v) = halton(i);
            let (p, x) = (10.0 * u, 10.0 * v);
            let (y, b) = core(young_refined(p, x))?;
            Ok(BoundReport::le("young.refined", "young-refined", y, b).params(p, x).tolerance(young_tolerance(p, x)))
        })
        .collect::<Result<Vec<_>>>()?;
    r.section("young", young);
    r.tables.push(table);
    Ok(r)
}

fn clamped_only(cfg: &RunConfig) -> Result<()> {
    match cfg.bc {
        None | Some(BcKind::Dirichlet) => Ok(()),
        Some(_) => bail!("2D finite differences are implemented for the clamped (dirichlet) plate only"),
    }
}

fn eig2d(cfg: &RunConfig) -> Result<Report> {
    clamped_only(cfg)?;
    let dom = rectangle(cfg)?;
    let grids = cfg.grids.clone().unwrap_or_else(|| DEFAULT_GRIDS.to_vec());
    let k = cfg.k.as_ref().and_then(|v| v.iter().max().copied()).unwrap_or(10);
    let mut r = Report::new("eig2d");
    let study = clamped_study(&dom, &grids, k, cfg.cache_dir.as_deref(), &mut r.timing.solves)?;
    let mut cols: Vec<String> = vec!["j".into()];
    cols.extend(grids.iter().map(|n| format!("n{n}")));
    cols.extend(["limit", "band", "order"].map(String::from));
    let mut table = Table { name: "values".into(), columns: cols, rows: Vec::new() };
    for (j, e) in study.extrapolated.iter().enumerate() {
        let mut row = vec![(j + 1) as f64];
        row.extend(study.values.iter().map(|v| v[j]));
        row.extend([e.limit, e.band, e.order]);
        table.rows.push(row);
        let jf = (j + 1) as f64;
        let g = study.values.len();
        if g >= 3 {
            let (c, m, f) = (study.values[g - 3][j], study.values[g - 2][j], study.values[g - 1][j]);
            r.checks.push(BoundReport::le("eig2d.refinement_contracting", "fd-refinement", (f - m).abs(), (m - c).abs()).params(jf, f64::NAN));
        }
        r.checks.push(
            BoundReport::eq("eig2d.observed_order", "fd-refinement", e.order, 2.0)
                .params(jf, f64::NAN)
                .tolerance(0.5)
                .reported_only(),
        );
    }
    r.tables.push(table);
    Ok(r)
}

fn compare(cfg: &RunConfig) -> Result<Report> {
    clamped_only(cfg)?;
    let dom = rectangle(cfg)?;
    let grids = cfg.grids.clone().unwrap_or_else(|| DEFAULT_GRIDS.to_vec());
    let k = cfg.k.as_ref().and_then(|v| v.iter().max().copied()).unwrap_or(10);
    let mut r = Report::new("compare");
    let study = clamped_study(&dom, &grids, k.max(DISCRETE_CHAIN_MODES), cfg.cache_dir.as_deref(), &mut r.timing.solves)?;
    r.checks = core(comparison_report(&study, k, 50))?;
    Ok(r)
}

fn all(cfg: &RunConfig) -> Result<Report> {
    let suite = Suite::new(cfg.cache_dir.clone());
    let mut r = Report::new("all");
    for o in suite.run_all() {
        log::info!("{}", o.line());
        let misses = o.failures() + usize::from(o.error.is_some()) + usize::from(!o.within_budget());
        r.checks.push(
            BoundReport::le(format!("acceptance.a{:02}.{}", o.id, o.name), "acceptance", misses as f64, 0.0)
                .params(o.id as f64, o.checks.len() as f64)
                .note(o.error.clone().unwrap_or_default()),
        );
        r.section(&format!("a{:02}", o.id), o.checks);
    }
    r.timing.solves = suite.timings();
    Ok(r)
}
