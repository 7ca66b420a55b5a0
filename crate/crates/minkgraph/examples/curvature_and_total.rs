//! Gauss and normal curvature of a canonical surface in `R_1^4`, the
//! finite-difference oracle, and the divergence of total curvature.

use minkgraph::curvature;
use minkgraph::rep::make_canonical;
use minkgraph::Expr;
use num_complex::Complex64;

fn main() -> minkgraph::Result<()> {
    let data = make_canonical(0.0, 2.0, &[], Expr::parse("z")?, 2)?;

    let z = Complex64::new(0.0, 0.0);
    let s = curvature::curvatures(&data, z)?;
    println!("e^2omega = {}", s.e2omega);
    println!("K        = {} (exact 3/16)", s.k);
    println!("Kperp    = {}", s.kperp);
    println!("|K|e^2om = {}", s.density);

    // independent oracle: 5-point Laplacian of ln(phi - conj psi)
    let (k_fd, kp_fd) = curvature::curvature_fd_oracle(&data, z, 1e-3)?;
    println!("fd oracle: K = {k_fd}, Kperp = {kp_fd}");

    // closed-form |K| e^{2 omega} density
    println!("density  = {}", curvature::abs_k_density(&data, z)?);

    // total curvature over expanding squares: grows without bound for any
    // non-constant beta, which is exactly why finite total curvature
    // forces flatness
    for r in [2.0, 4.0, 8.0, 16.0] {
        let t = curvature::total_curvature(&data, r, 1e-6)?;
        println!("total |K| dM over [-{r},{r}]^2 = {t:.4}");
    }

    // constant beta for comparison: identically flat
    let flat = make_canonical(0.0, 2.0, &[], Expr::parse("1+2*i")?, 2)?;
    println!(
        "flat data: total = {}",
        curvature::total_curvature(&flat, 16.0, 1e-6)?
    );
    Ok(())
}
