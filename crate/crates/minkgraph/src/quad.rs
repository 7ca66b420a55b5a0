//! Adaptive quadrature: Gauss–Legendre of order 16 with interval bisection,
//! and adaptive Simpson used for the curvature integrals.

use num_complex::Complex64;

use crate::error::{Error, Result};

// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
const GL16_X: [f64; 8] = [
    0.0950125098376374401853,
    0.2816035507792589132304,
    0.4580167776572273863424,
    0.6178762444026437484467,
    0.7554044083550030338951,
    0.8656312023878317438805,
    0.9445750230732325760780,
    0.9894009349916499325962,
];
const GL16_W: [f64; 8] = [
    0.1894506104550684962854,
    0.1826034150449235888667,
    0.1691565193950025381893,
    0.1495959888165767320815,
    0.1246289712555338720525,
    0.0951585116824927848099,
    0.0622535239386478928628,
    0.0271524594117540948518,
];

const MAX_DEPTH: usize = 40;

fn gl16<F>(f: &F, a: f64, b: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..8 {
        let dx = half * GL16_X[k];
        acc += GL16_W[k] * (f(mid + dx)? + f(mid - dx)?);
    }
    Ok(acc * half)
}

fn adaptive_gl<F>(f: &F, a: f64, b: f64, whole: Complex64, tol: f64, depth: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mid = 0.5 * (a + b);
    let left = gl16(f, a, mid)?;
    let right = gl16(f, mid, b)?;
    let err = (left + right - whole).norm();
    if err <= tol {
        return Ok(left + right);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature { tol });
    }
    let l = adaptive_gl(f, a, mid, left, 0.5 * tol, depth + 1)?;
    let r = adaptive_gl(f, mid, b, right, 0.5 * tol, depth + 1)?;
    Ok(l + r)
}

/// Adaptive Gauss-Legendre integral of a complex-valued function over `[a, b]`,
/// absolute error estimate at most `tol`.
pub fn integrate_complex<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidData("tol must be positive".into()));
    }
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let whole = gl16(&f, a, b)?;
    adaptive_gl(&f, a, b, whole, tol, 0)
}

/// Adaptive Gauss-Legendre integral of a real-valued function over `[a, b]`.
pub fn integrate_real<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    integrate_complex(|t| f(t).map(|v| Complex64::new(v, 0.0)), a, b, tol).map(|v| v.re)
}

/// Integral of `f` along the straight segment from `z0` to `z1`.
pub fn integrate_segment_fn<F>(f: F, z0: Complex64, z1: Complex64, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let d = z1 - z0;
    if d.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    integrate_complex(|t| f(z0 + t * d).map(|v| v * d), 0.0, 1.0, tol)
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    (fa + 4.0 * fm + fb) * h / 6.0
}

fn adaptive_simpson_rec<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let err = (left + right - whole).abs();
    if err <= 15.0 * tol || depth >= MAX_DEPTH {
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    let l = adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
    let r = adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
    Ok(l + r)
}

/// Adaptive Simpson integral of a real-valued function over `[a, b]`.
///
/// `tol` is treated as an absolute tolerance on the interval.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let fb = f(b)?;
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_simpson_rec(&f, a, b, fa, fm, fb, whole, tol, 0)
}

/// Iterated adaptive Simpson quadrature of `f(u1, u2)` over
/// `[-r, r] x [-r, r]` with relative tolerance `rel_tol`.
///
/// The inner integral runs over `u2` at fixed `u1`; the outer pass then
/// integrates the (smoother) inner values over `u1`. An initial coarse
/// composite pass sets the absolute scale for the relative tolerance.
pub fn integrate_square<F>(f: F, r: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    if !(r > 0.0) {
        return Err(Error::InvalidData("R must be positive".into()));
    }
    // Coarse magnitude estimate on a fixed grid, used only to scale tolerances.
    let n = 17usize;
    let step = 2.0 * r / (n - 1) as f64;
    let mut coarse = 0.0;
    for i in 0..n {
        for j in 0..n {
            coarse += f(-r + i as f64 * step, -r + j as f64 * step)?.abs();
        }
    }
    coarse = coarse * step * step;
    let abs_tol = (rel_tol * coarse).max(1e-300);
    let inner_tol = abs_tol / (2.0 * r) / 4.0;
    integrate_real(
        |u1| adaptive_simpson(|u2| f(u1, u2), -r, r, inner_tol),
        -r,
        r,
        abs_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_cosh() {
        let v = integrate_segment_fn(
            |z| Ok(z.cosh()),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            1e-12,
        )
        .unwrap();
        assert!((v.re - 1.1752011936438014).abs() < 1e-12);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn segment_constant_diagonal() {
        let v = integrate_segment_fn(
            |_| Ok(Complex64::new(1.0, 0.0)),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0),
            1e-12,
        )
        .unwrap();
        assert!((v - Complex64::new(1.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn segment_linear() {
        let v = integrate_segment_fn(
            |z| Ok(z),
            Complex64::new(0.0, 0.0),
            Complex64::new(2.0, 0.0),
            1e-12,
        )
        .unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_abs_cos() {
        // integral of |cos t| over [0, 2pi] = 4
        let v = adaptive_simpson(|t: f64| Ok(t.cos().abs()), 0.0, 2.0 * std::f64::consts::PI, 1e-10)
            .unwrap();
        assert!((v - 4.0).abs() < 1e-7, "got {v}");
    }

    #[test]
    fn square_separable() {
        // integral of u1^2 * cos(u2) over [-1,1]^2 = (2/3) * 2 sin 1
        let v = integrate_square(|u1, u2| Ok(u1 * u1 * u2.cos()), 1.0, 1e-9).unwrap();
        let exact = 2.0 / 3.0 * 2.0 * 1.0f64.sin();
        assert!((v - exact).abs() < 1e-6 * exact, "got {v} want {exact}");
    }
}
