//! Tour of the holomorphic expression mini-language: parsing, evaluation,
//! symbolic differentiation and the constancy probe.

use minkgraph::Expr;
use num_complex::Complex64;

fn main() -> minkgraph::Result<()> {
    let e = Expr::parse("exp(2*z) - sinh(z)^2 + 1/(1+z^2)")?;
    println!("expr      : {e}");

    let z = Complex64::new(0.3, -0.7);
    println!("value     : {}", e.eval(z)?);

    let d = e.derive();
    println!("derivative: {d}");
    println!("d(z)      : {}", d.eval(z)?);

    // central-difference cross-check of the symbolic derivative
    let h = 1e-5;
    let fd = (e.eval(z + h)? - e.eval(z - h)?) / (2.0 * h);
    println!("fd oracle : {fd}");

    // round trip: printing and re-parsing preserves structure
    let back = Expr::parse(&format!("{e}"))?;
    assert_eq!(back, e);

    // the constancy probe sees through identities like cosh^2 - sinh^2 = 1
    let c = Expr::parse("cosh(z)^2 - sinh(z)^2")?;
    println!("cosh^2 - sinh^2 constant? {}", c.is_constant_function());

    // two-variable expressions drive the graph-surface module
    let f = Expr::parse_with_vars("x1^3 - 3*x1*x2^2", &["x1", "x2"])?;
    let fx1 = f.derive_var(0);
    println!("d/dx1 ({f}) = {fx1}");
    Ok(())
}
