//! Induced metric of a graph in Minkowski space: tangent vectors, causal
//! classification, the W-function and the stationarity residual.

use minkgraph::graph::{GraphSurface, ScalarField2};
use minkgraph::mink::{default_causal_tau, mink_inner, MinkVector};
use minkgraph::Expr;

fn main() -> minkgraph::Result<()> {
    // u . v with the last coordinate timelike
    let u = MinkVector::new(vec![1.0, 2.0, 3.0]);
    let v = MinkVector::new(vec![4.0, 5.0, 6.0]);
    println!("<u,v> = {}", mink_inner(&u, &v)?);
    println!(
        "(1,1) is {:?}",
        MinkVector::new(vec![1.0, 1.0]).causal_class(default_causal_tau(1.0))
    );

    // a graph along the lightlike direction (1,1): projection to the base
    // plane is an isometry no matter how wild the height function is
    let h = Expr::parse_with_vars("exp(x1)*cos(x2)", &["x1", "x2"])?;
    let f = GraphSurface::directed(
        ScalarField2::from_expr(&h),
        &MinkVector::new(vec![1.0, 1.0]),
    );
    let m = f.metric_at(1.3, -0.4)?;
    println!(
        "lightlike graph: g = [{:.3} {:.3}; {:.3} {:.3}], W = {:?}",
        m.g11, m.g12, m.g12, m.g22, m.w
    );

    // harmonic height functions give stationary surfaces: the
    // divergence-form residual vanishes up to the O(h^2) stencil error
    let harmonic = Expr::parse_with_vars("x1^2 - x2^2", &["x1", "x2"])?;
    let g = GraphSurface::directed(
        ScalarField2::from_expr(&harmonic),
        &MinkVector::new(vec![1.0, 1.0]),
    );
    let res = g.stationarity_residual(0.7, 0.4, 1e-3)?;
    println!("stationarity residual: {res:?}");
    Ok(())
}
