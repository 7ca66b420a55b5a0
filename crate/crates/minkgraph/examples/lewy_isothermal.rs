//! The Lewy transformation `eta = x + xi(x)` turns a stationary spacelike
//! graph into global isothermal parameters; this example checks it
//! numerically on a curved canonical surface.

use minkgraph::lewy;
use minkgraph::rep::make_canonical;
use minkgraph::Expr;

fn main() -> minkgraph::Result<()> {
    let data = make_canonical(1.0, 1.0, &[], Expr::parse("z")?, 2)?;
    let surface = data.graph_surface();
    let base = [0.0, 0.0];
    let tol = 1e-10;

    let x = [0.8, 0.5];
    let s = lewy::lewy_sample(&surface, x, base, tol)?;
    println!("xi({x:?})   = {:?}", s.xi);
    println!("eta        = {:?}", s.eta);
    println!("J_L        = {:?}", s.jl);
    println!("lambdas    = {:?} (product = W)", s.lambdas);
    println!("conf       = {}", s.conf);

    // the xi 1-forms are closed: two different L-shaped paths agree
    let a = lewy::xi_potentials_via(&surface, x, base, tol, lewy::PathOrder::X1First)?;
    let b = lewy::xi_potentials_via(&surface, x, base, tol, lewy::PathOrder::X2First)?;
    println!("path dev   = {:.3e}", (a[0] - b[0]).abs().max((a[1] - b[1]).abs()));

    // pull the metric back through a finite-difference Jacobian of L:
    // it must be conformal with factor (1/l1 + 1/l2)^{-2}
    let pts: Vec<(f64, f64)> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i as f64 - 1.0, j as f64 - 1.0)))
        .collect();
    let rep = lewy::conformal_check(&surface, &pts, base, 1e-4, tol)?;
    println!("conformal  = {rep:?}");

    // beta_l = dx_l/dzeta are holomorphic over the eta-chart and
    // -4 Im(conj(beta1) beta2) stays positive
    let hol = lewy::beta_holomorphy_check(&surface, &pts[..3], base, 1e-3, tol)?;
    println!("holomorphy = {hol:?}");
    Ok(())
}
