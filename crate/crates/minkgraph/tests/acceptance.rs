//! End-to-end acceptance suite. Each test verifies one headline capability
//! and prints a single pass/fail line (visible with `--nocapture`).

use minkgraph::curvature;
use minkgraph::lab::{run_scenario, ScenarioConfig};
use minkgraph::lewy;
use minkgraph::rep::{construct_ber3, make_canonical, Classification, StationaryData};
use minkgraph::{Expr, GraphSurface};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(num: u32, slug: &str, ok: bool, detail: &str) {
    let status = if ok { "pass" } else { "FAIL" };
    println!("criterion {num:02} {slug}: {status} [{detail}]");
    assert!(ok, "criterion {num:02} {slug}: {detail}");
}

fn random_data(rng: &mut ChaCha8Rng) -> StationaryData {
    let betas = ["z", "z^2", "sinh(z)", "(1+i)*0.2*z^3", "cos(z)"];
    let a = rng.gen_range(-2.0..2.0);
    let b = rng.gen_range(0.1..2.0);
    let n_consts = rng.gen_range(0..=2usize);
    let consts: Vec<f64> = (0..n_consts).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let beta = Expr::parse(betas[rng.gen_range(0..betas.len())]).unwrap();
    make_canonical(a, b, &consts, beta, 2 + n_consts).unwrap()
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn grid5() -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            pts.push((-1.0 + 0.5 * i as f64, -1.0 + 0.5 * j as f64));
        }
    }
    pts
}

fn residual_max(f: &GraphSurface, h: f64) -> f64 {
    grid5()
        .iter()
        .map(|&(x1, x2)| {
            f.stationarity_residual(x1, x2, h)
                .unwrap()
                .into_iter()
                .fold(0.0_f64, |m, v| m.max(v.abs()))
        })
        .fold(0.0_f64, f64::max)
}

#[test]
fn c01_isotropy_of_generated_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let data = random_data(&mut rng);
        for z in random_points(&mut rng, 100) {
            worst = worst.max(data.isotropy_defect(z).unwrap());
        }
    }
    verdict(
        1,
        "isotropy-of-generated-data",
        worst < 1e-12,
        &format!("max defect {worst:.3e}"),
    );
}

#[test]
fn c02_stationarity_residual_and_order() {
    let sets = [
        (0.0, 2.0, vec![], "z"),
        (1.0, 1.5, vec![], "z"),
        (0.5, 1.5, vec![], "1+2*i"),
        (0.0, 1.0, vec![], "z"),
        (0.3, 1.2, vec![1.0], "0.25*z^2"),
    ];
    let mut worst = 0.0_f64;
    for (a, b, consts, beta) in &sets {
        let data =
            make_canonical(*a, *b, consts, Expr::parse(beta).unwrap(), 2 + consts.len()).unwrap();
        worst = worst.max(residual_max(&data.graph_surface(), 1e-3));
    }
    let curved = make_canonical(1.0, 1.0, &[], Expr::parse("z").unwrap(), 2).unwrap();
    let f = curved.graph_surface();
    let (r_fine, r_coarse) = (residual_max(&f, 1e-3), residual_max(&f, 4e-3));
    let order = (r_coarse / r_fine).ln() / 4.0_f64.ln();
    verdict(
        2,
        "divergence-form-residual",
        worst < 1e-6 && (1.5..=2.5).contains(&order),
        &format!("max residual {worst:.3e}, fd order {order:.2}"),
    );
}

#[test]
fn c03_w_range_trichotomy() {
    let data = make_canonical(1.0, 1.0, &[], Expr::parse("z").unwrap(), 2).unwrap();
    let (r1, r2) = match data.classify() {
        Classification::CaseIII { r1, r2 } => (r1, r2),
        other => panic!("expected oscillating case, got {other:?}"),
    };
    let (lo, hi) = data.w_range_on_grid(20.0, 401).unwrap();
    let product = lo * hi;
    let scenario = run_scenario(&ScenarioConfig::named("t1-case-iii")).unwrap();
    verdict(
        3,
        "w-range-trichotomy",
        (r1 * r2 - 1.0).abs() < 1e-12
            && (0.999..=1.001).contains(&product)
            && scenario.passed(),
        &format!("r1*r2 = {:.15}, grid inf*sup = {product:.6}", r1 * r2),
    );
}

#[test]
fn c04_lightlike_direction_flatness() {
    let data = make_canonical(0.0, 1.0, &[], Expr::parse("z").unwrap(), 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut w_dev = 0.0_f64;
    let mut k_max = 0.0_f64;
    for z in random_points(&mut rng, 25) {
        w_dev = w_dev.max((data.w_of(z).unwrap() - 1.0).abs());
        let s = curvature::curvatures(&data, z).unwrap();
        k_max = k_max.max(s.k.abs()).max(s.kperp.abs());
    }
    let case_ok = matches!(data.classify(), Classification::CaseII { y0 } if y0 == [1.0, 1.0]);
    verdict(
        4,
        "lightlike-direction-flatness",
        data.is_lightlike_branch() && case_ok && w_dev < 1e-12 && k_max < 1e-10,
        &format!("|W-1| <= {w_dev:.3e}, |K| <= {k_max:.3e}"),
    );
}

#[test]
fn c05_near_area_preserving_family() {
    let wide = construct_ber3(4.0, 0.1, 3).unwrap();
    let (lo, hi) = wide.w_extremes();
    let tight = construct_ber3(1.0, 0.5, 3).unwrap();
    let (tlo, thi) = tight.w_extremes();
    let scenario = run_scenario(&ScenarioConfig::named("ber3")).unwrap();
    verdict(
        5,
        "near-area-preserving-family",
        (3.99..=4.01).contains(&(lo * hi))
            && hi - lo > 0.0
            && hi - lo < 0.1
            && (0.99..=1.01).contains(&(tlo * thi))
            && thi - tlo < 0.5
            && scenario.passed(),
        &format!(
            "C=4: inf*sup = {:.6}, osc = {:.5}; C=1: inf*sup = {:.6}",
            lo * hi,
            hi - lo,
            tlo * thi
        ),
    );
}

#[test]
fn c06_curvature_spot_values() {
    let data = make_canonical(0.0, 2.0, &[], Expr::parse("z").unwrap(), 2).unwrap();
    let z = Complex64::new(0.0, 0.0);
    let s = curvature::curvatures(&data, z).unwrap();
    let (k_fd, kp_fd) = curvature::curvature_fd_oracle(&data, z, 1e-3).unwrap();
    let density = curvature::abs_k_density(&data, z).unwrap();
    verdict(
        6,
        "curvature-spot-values",
        (s.e2omega - 4.0).abs() < 1e-12
            && (s.k - 0.1875).abs() < 1e-10
            && s.kperp.abs() < 1e-10
            && (k_fd - 0.1875).abs() < 1e-4
            && kp_fd.abs() < 1e-4
            && (density - 0.75).abs() < 1e-10,
        &format!("e2omega = {}, K = {}, fd K = {k_fd}", s.e2omega, s.k),
    );
}

#[test]
fn c07_total_curvature_divergence() {
    let scenario = run_scenario(&ScenarioConfig::named("ftc-divergence")).unwrap();
    let affine = make_canonical(0.5, 1.5, &[], Expr::parse("1+2*i").unwrap(), 2).unwrap();
    let lightlike = make_canonical(0.0, 1.0, &[], Expr::parse("z").unwrap(), 2).unwrap();
    let t_affine = curvature::total_curvature(&affine, 32.0, 1e-6).unwrap();
    let t_light = curvature::total_curvature(&lightlike, 32.0, 1e-6).unwrap();
    verdict(
        7,
        "total-curvature-divergence",
        scenario.passed() && t_affine < 1e-8 && t_light < 1e-8,
        &format!("flat totals {t_affine:.2e} / {t_light:.2e}, growth scenario passed"),
    );
}

#[test]
fn c08_random_harmonic_lightlike_isometry() {
    let mut ok = true;
    let mut detail = String::new();
    for seed in [1u64, 2, 3] {
        let mut config = ScenarioConfig::named("lightlike-graph");
        config.seed = seed;
        let report = run_scenario(&config).unwrap();
        ok &= report.passed();
        detail.push_str(&format!("seed {seed}: {}; ", report.passed()));
    }
    verdict(8, "harmonic-height-isometry", ok, detail.trim_end_matches("; "));
}

#[test]
fn c09_incomplete_spacelike_graph() {
    let scenario = run_scenario(&ScenarioConfig::named("incomplete-graph")).unwrap();
    let length = scenario
        .checks
        .iter()
        .find(|c| c.id == "finite-length")
        .map(|c| c.measured[0])
        .unwrap_or(f64::NAN);
    verdict(
        9,
        "incomplete-spacelike-graph",
        scenario.passed() && (length - 2.8042).abs() < 1e-3,
        &format!("truncated length {length:.5}"),
    );
}

#[test]
fn c10_lewy_isothermal_parameters() {
    let scenario = run_scenario(&ScenarioConfig::named("lewy-conformal")).unwrap();
    // flat sanity value: on the horizontal plane beta_1 = 1/4, beta_2 = -i/4
    let flat = GraphSurface::zero(2);
    let beta = lewy::beta_at(&flat, [0.3, -0.4]).unwrap();
    let positivity = -4.0 * (beta[0].conj() * beta[1]).im;
    verdict(
        10,
        "lewy-isothermal-parameters",
        scenario.passed() && (positivity - 0.25).abs() < 1e-12,
        &format!("flat positivity {positivity}"),
    );
}

#[test]
fn c11_curvature_fd_oracle_agreement() {
    let sets = [(0.0, 2.0, "z"), (1.0, 1.0, "z"), (0.5, 1.5, "sinh(z)")];
    let mut worst = 0.0_f64;
    for (a, b, beta) in &sets {
        let data = make_canonical(*a, *b, &[], Expr::parse(beta).unwrap(), 2).unwrap();
        for &(x, y) in &grid5() {
            let z = Complex64::new(x, y);
            let s = curvature::curvatures(&data, z).unwrap();
            let (k_fd, kp_fd) = curvature::curvature_fd_oracle(&data, z, 1e-4).unwrap();
            let scale = 1.0 + s.k.abs().max(s.kperp.abs());
            worst = worst
                .max((s.k - k_fd).abs() / scale)
                .max((s.kperp - kp_fd).abs() / scale);
        }
    }
    verdict(
        11,
        "curvature-fd-oracle",
        worst < 1e-4,
        &format!("max relative deviation {worst:.3e}"),
    );
}
