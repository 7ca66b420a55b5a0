//! A spacelike (non-stationary) graph whose induced metric is incomplete:
//! the projected line through the origin has finite length, in sharp
//! contrast with stationary graphs, which are always complete.

use std::sync::Arc;

use minkgraph::graph::{GraphSurface, ScalarField2};
use minkgraph::quad;

fn main() -> minkgraph::Result<()> {
    // radial height with h'(r) = r^3 / sqrt(1 + r^6) into R_1^1
    let hprime = |r: f64| r.powi(3) / (1.0 + r.powi(6)).sqrt();
    let value = Arc::new(|x1: f64, x2: f64| {
        let r = (x1 * x1 + x2 * x2).sqrt();
        quad::integrate_real(|t| Ok(t.powi(3) / (1.0 + t.powi(6)).sqrt()), 0.0, r, 1e-10)
    });
    let d1 = Arc::new(move |x1: f64, x2: f64| {
        let r = (x1 * x1 + x2 * x2).sqrt();
        Ok(if r == 0.0 { 0.0 } else { hprime(r) * x1 / r })
    });
    let d2 = Arc::new(move |x1: f64, x2: f64| {
        let r = (x1 * x1 + x2 * x2).sqrt();
        Ok(if r == 0.0 { 0.0 } else { hprime(r) * x2 / r })
    });
    let f = GraphSurface::new(vec![ScalarField2::analytic(value, d1, d2)]);

    // spacelike everywhere: det g = 1/(1 + r^6) > 0
    for &(a, b) in &[(0.0, 0.0), (3.0, 4.0), (-100.0, 5.0)] {
        let m = f.metric_at(a, b)?;
        println!("det g at ({a:5.1}, {b:4.1}) = {:.3e}", m.g11 * m.g22 - m.g12 * m.g12);
    }

    // induced length of t -> (t, 0): the integrand 1/sqrt(1+t^6) is
    // integrable, so the length stays bounded as T grows
    for t in [5.0, 20.0, 50.0] {
        let len = f.curve_length(|s| ([s, 0.0], [1.0, 0.0]), -t, t, 1e-9)?;
        println!("length over [-{t}, {t}] = {len:.8}");
    }
    // analytic tail bound per side: 1/(2 T^2)
    println!("tail bound at T=50: {:.1e} per side", 1.0 / (2.0 * 50.0f64 * 50.0));
    Ok(())
}
