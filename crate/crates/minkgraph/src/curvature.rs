//! Gauss curvature K, normal curvature Kperp, the conformal factor and the
//! `|K| e^{2 omega}` density for canonical surfaces in `R_1^4`, plus
//! total-curvature quadrature over expanding parameter squares.
//!
//! With Weierstrass data `phi = r e^{i theta} e^{-beta}`,
//! `psi = -(1/r) e^{-i theta} e^{-beta}` and `h' = (mu/2) e^{beta}`, the
//! curvature pair collapses to
//! `-K + i Kperp = -4 e^{-2 omega} |beta'|^2 / w^2` where
//! `w = r e^{-i v2} + r^{-1} e^{i v2}` and `v2 = Im beta`. Since `r > 1`,
//! `|w| >= r - 1/r > 0` and the formula is everywhere defined.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;
use crate::rep::StationaryData;

/// Pointwise curvature data.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureSample {
    /// Conformal factor `e^{2 omega} = 2 <alpha, conj alpha>`.
    pub e2omega: f64,
    pub k: f64,
    pub kperp: f64,
    /// `|K| e^{2 omega}`.
    pub density: f64,
    /// Set when the data lies on the lightlike branch, where the surface is
    /// flat by classification and the Gauss-map formula does not apply.
    pub flat_by_classification: bool,
}

/// `e^{2 omega}(z) = 2 <alpha(z), conj alpha(z)>`; positive for valid data.
pub fn conformal_factor(data: &StationaryData, z: Complex64) -> Result<f64> {
    let v = 2.0 * data.alpha_pairing(z)?;
    if !(v > 0.0) {
        return Err(Error::NotSpacelike(z.re, z.im));
    }
    Ok(v)
}

/// Modulus and argument of the `phi` coefficient `(1 + c i)/(2 mu)`.
fn gauss_r_theta(data: &StationaryData) -> Result<(f64, f64)> {
    if data.codim() != 2 {
        return Err(Error::Codimension(data.codim()));
    }
    if data.is_lightlike_branch() {
        return Err(Error::Degenerate(
            "mu = 0: curvature is identically zero on the lightlike branch".into(),
        ));
    }
    let i = Complex64::new(0.0, 1.0);
    let a = (Complex64::new(1.0, 0.0) + data.c() * i) / (2.0 * data.mu());
    Ok((a.norm(), a.arg()))
}

fn w_of_v2(r: f64, v2: f64) -> Complex64 {
    let e = Complex64::new(0.0, -v2).exp();
    r * e + e.conj() / r
}

/// Closed-form curvatures at `z` (codimension 2). On the lightlike branch
/// the sample is returned flat with `flat_by_classification` set.
pub fn curvatures(data: &StationaryData, z: Complex64) -> Result<CurvatureSample> {
    if data.codim() != 2 {
        return Err(Error::Codimension(data.codim()));
    }
    if data.is_lightlike_branch() {
        return Ok(CurvatureSample {
            e2omega: conformal_factor(data, z)?,
            k: 0.0,
            kperp: 0.0,
            density: 0.0,
            flat_by_classification: true,
        });
    }
    let (r, _theta) = gauss_r_theta(data)?;
    let e2omega = conformal_factor(data, z)?;
    let bp2 = data.beta_deriv().eval(z)?.norm_sqr();
    let v2 = data.beta().eval(z)?.im;
    let w = w_of_v2(r, v2);
    let n4 = w.norm_sqr().powi(2);
    if n4 == 0.0 {
        return Err(Error::Degenerate("Gauss map collision: phi = conj psi".into()));
    }
    let w2 = w * w;
    let scale = 4.0 * bp2 / (e2omega * n4);
    let k = scale * w2.re;
    let kperp = scale * w2.im;
    Ok(CurvatureSample {
        e2omega,
        k,
        kperp,
        density: k.abs() * e2omega,
        flat_by_classification: false,
    })
}

/// `|K| e^{2 omega}` in closed form,
/// `4 |2 + (r^2 + r^{-2}) cos 2 v2| |beta'|^2 / |w|^4`.
pub fn abs_k_density(data: &StationaryData, z: Complex64) -> Result<f64> {
    let (r, _) = gauss_r_theta(data)?;
    let bp2 = data.beta_deriv().eval(z)?.norm_sqr();
    let v2 = data.beta().eval(z)?.im;
    let r2 = r * r;
    let num = (2.0 + (r2 + 1.0 / r2) * (2.0 * v2).cos()).abs();
    let n4 = w_of_v2(r, v2).norm_sqr().powi(2);
    Ok(4.0 * num * bp2 / n4)
}

/// Independent finite-difference oracle: 5-point Laplacian of
/// `ln(phi - conj psi)` with the phase unwrapped to the stencil center,
/// scaled by `e^{-2 omega}`. Returns `(K, Kperp)`.
pub fn curvature_fd_oracle(data: &StationaryData, z: Complex64, h: f64) -> Result<(f64, f64)> {
    if !(h > 0.0) {
        return Err(Error::InvalidData("step h must be positive".into()));
    }
    let g = data.alpha_to_gauss()?;
    let f = |w: Complex64| -> Result<Complex64> { Ok((g.phi)(w)? - (g.psi)(w)?.conj()) };
    let center = f(z)?;
    if center.norm() < 1e-14 {
        return Err(Error::Degenerate("Gauss map collision on stencil".into()));
    }
    let arg_c = center.arg();
    // branch-consistent logarithm: neighbor phases unwrapped to within pi
    // of the center phase
    let ln_at = |w: Complex64| -> Result<Complex64> {
        let v = f(w)?;
        if v.norm() < 1e-14 {
            return Err(Error::Degenerate("Gauss map collision on stencil".into()));
        }
        let mut d = (v / center).arg();
        if d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        Ok(Complex64::new(v.norm().ln(), arg_c + d))
    };
    let lc = Complex64::new(center.norm().ln(), arg_c);
    let le = ln_at(z + h)?;
    let lw = ln_at(z - h)?;
    let ln_ = ln_at(z + Complex64::new(0.0, h))?;
    let ls = ln_at(z - Complex64::new(0.0, h))?;
    let lap = (le + lw + ln_ + ls - 4.0 * lc) / (h * h);
    let val = lap / conformal_factor(data, z)?;
    // -K + i Kperp = e^{-2 omega} Lap ln(phi - conj psi)
    Ok((-val.re, val.im))
}

/// `int_{[-R,R]^2} |K| e^{2 omega} du1 du2` by iterated adaptive quadrature
/// at relative tolerance `rel_tol`.
pub fn total_curvature(data: &StationaryData, r: f64, rel_tol: f64) -> Result<f64> {
    if data.is_lightlike_branch() {
        return Ok(0.0);
    }
    quad::integrate_square(
        |u1, u2| abs_k_density(data, Complex64::new(u1, u2)),
        r,
        rel_tol,
    )
}

/// Normal-curvature analogue: `int_{[-R,R]^2} |Kperp| e^{2 omega}`.
pub fn total_normal_curvature(data: &StationaryData, r: f64, rel_tol: f64) -> Result<f64> {
    if data.is_lightlike_branch() {
        return Ok(0.0);
    }
    let (rr, _) = gauss_r_theta(data)?;
    let r2 = rr * rr;
    quad::integrate_square(
        |u1, u2| {
            let z = Complex64::new(u1, u2);
            let bp2 = data.beta_deriv().eval(z)?.norm_sqr();
            let v2 = data.beta().eval(z)?.im;
            // Im(w^2) = (1/r^2 - r^2) sin 2 v2
            let num = ((1.0 / r2 - r2) * (2.0 * v2).sin()).abs();
            let n4 = w_of_v2(rr, v2).norm_sqr().powi(2);
            Ok(4.0 * num * bp2 / n4)
        },
        r,
        rel_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::rep::make_canonical;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn canon(a: f64, b: f64, beta: &str) -> StationaryData {
        make_canonical(a, b, &[], Expr::parse(beta).unwrap(), 2).unwrap()
    }

    #[test]
    fn conformal_factor_values() {
        // a=0, b=2 at 0: 2 (1/4 + 1 + 3/4) = 4
        let d = canon(0.0, 2.0, "z");
        assert!((conformal_factor(&d, c64(0.0, 0.0)).unwrap() - 4.0).abs() < 1e-14);
        // lightlike branch: 2 (1/4 + 1/4) = 1 everywhere
        let dii = canon(0.0, 1.0, "z^2");
        for &(x, y) in &[(0.0, 0.0), (2.0, -1.0), (-0.5, 3.0)] {
            assert!((conformal_factor(&dii, c64(x, y)).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn conformal_factor_lower_bound() {
        let d = canon(1.0, 1.0, "z");
        let bound = 2.0 * d.pairing_lower_bound();
        assert!(bound > 0.0);
        for k in 0..100 {
            let t = k as f64;
            let z = c64((t * 0.17).sin() * 2.0, (t * 0.29).cos() * 2.0);
            assert!(conformal_factor(&d, z).unwrap() >= bound - 1e-12);
        }
    }

    #[test]
    fn flat_cases() {
        let ci = canon(0.0, 2.0, "1+2*i");
        for &(x, y) in &[(0.0, 0.0), (1.0, -2.0), (-0.3, 0.8)] {
            let s = curvatures(&ci, c64(x, y)).unwrap();
            assert!(s.k.abs() < 1e-10 && s.kperp.abs() < 1e-10);
            assert!(!s.flat_by_classification);
            let (k, kp) = curvature_fd_oracle(&ci, c64(x, y), 1e-3).unwrap();
            assert!(k.abs() < 1e-10 && kp.abs() < 1e-10);
        }
        let cii = canon(0.0, 1.0, "z");
        let s = curvatures(&cii, c64(0.4, -0.6)).unwrap();
        assert!(s.flat_by_classification);
        assert_eq!((s.k, s.kperp, s.density), (0.0, 0.0, 0.0));
    }

    #[test]
    fn spot_values_a0_b2() {
        let d = canon(0.0, 2.0, "z");
        let s = curvatures(&d, c64(0.0, 0.0)).unwrap();
        assert!((s.k - 3.0 / 16.0).abs() < 1e-13, "K {}", s.k);
        assert!(s.kperp.abs() < 1e-13);
        assert!((s.e2omega - 4.0).abs() < 1e-13);
        assert!((s.density - 0.75).abs() < 1e-13);
        // v2 = pi/2 flips the cos(2 v2) factor: K = -3, density 3
        let z = c64(0.0, std::f64::consts::FRAC_PI_2);
        let s = curvatures(&d, z).unwrap();
        assert!((s.k + 3.0).abs() < 1e-12, "K {}", s.k);
        assert!(s.kperp.abs() < 1e-12);
        assert!((s.density - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fd_oracle_spot() {
        let d = canon(0.0, 2.0, "z");
        let (k, kp) = curvature_fd_oracle(&d, c64(0.0, 0.0), 1e-3).unwrap();
        assert!((k - 0.1875).abs() < 1e-4, "K {k}");
        assert!(kp.abs() < 1e-4);
    }

    #[test]
    fn fd_oracle_agreement_grid() {
        for data in [canon(0.0, 2.0, "z"), canon(1.0, 1.0, "z"), canon(0.5, 1.5, "sinh(z)")] {
            for i in 0..5 {
                for j in 0..5 {
                    let z = c64(-1.0 + 0.5 * i as f64, -1.0 + 0.5 * j as f64);
                    let s = curvatures(&data, z).unwrap();
                    let (k, kp) = curvature_fd_oracle(&data, z, 1e-3).unwrap();
                    assert!(
                        (s.k - k).abs() <= 1e-4 * (1.0 + s.k.abs()),
                        "K {} vs {} at {z}",
                        s.k,
                        k
                    );
                    assert!(
                        (s.kperp - kp).abs() <= 1e-4 * (1.0 + s.kperp.abs()),
                        "Kperp {} vs {} at {z}",
                        s.kperp,
                        kp
                    );
                }
            }
        }
    }

    #[test]
    fn density_identity() {
        let d = canon(1.0, 1.0, "z^2");
        for k in 0..25 {
            let z = c64((k as f64 * 0.23).sin(), (k as f64 * 0.47).cos());
            let s = curvatures(&d, z).unwrap();
            let dens = abs_k_density(&d, z).unwrap();
            assert!((dens - s.k.abs() * s.e2omega).abs() < 1e-10 * (1.0 + dens));
        }
    }

    #[test]
    fn parabolic_points() {
        // r^2 = 3: density vanishes where cos 2 v2 = -2/(r^2 + r^{-2}) = -0.6
        let d = canon(0.0, 2.0, "z");
        let v2 = 0.5 * (-0.6f64).acos();
        let dens = abs_k_density(&d, c64(0.7, v2)).unwrap();
        assert!(dens.abs() < 1e-13, "density {dens}");
        let s = curvatures(&d, c64(0.7, v2)).unwrap();
        assert!(s.k.abs() < 1e-13);
        assert!(s.kperp.abs() > 1e-3, "normal curvature survives");
    }

    #[test]
    fn total_curvature_growth() {
        let ci = canon(0.0, 2.0, "1+2*i");
        assert_eq!(total_curvature(&ci, 5.0, 1e-6).unwrap(), 0.0);
        let d = canon(0.0, 2.0, "z");
        let vals: Vec<f64> = [2.0, 5.0, 10.0, 20.0]
            .iter()
            .map(|&r| total_curvature(&d, r, 1e-6).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!(w[1] > w[0], "not increasing: {vals:?}");
        }
        assert!(vals[3] / vals[0] > 5.0, "{vals:?}");
        // the integrand is u1-independent, so doubling R at fixed inner
        // range doubles the integral; sanity-check the order of growth
        assert!(vals[3] > 2.0 * vals[1]);
    }

    #[test]
    fn total_normal_curvature_growth() {
        let d = canon(0.0, 2.0, "z");
        let t2 = total_normal_curvature(&d, 2.0, 1e-6).unwrap();
        let t5 = total_normal_curvature(&d, 5.0, 1e-6).unwrap();
        assert!(t2 > 0.0);
        assert!(t5 > t2);
        let cii = canon(0.0, 1.0, "z");
        assert_eq!(total_normal_curvature(&cii, 5.0, 1e-6).unwrap(), 0.0);
    }

    #[test]
    fn codimension_guard() {
        let d3 = make_canonical(0.0, 1.5, &[0.5], Expr::parse("z").unwrap(), 3).unwrap();
        assert!(matches!(curvatures(&d3, c64(0.0, 0.0)), Err(Error::Codimension(3))));
        assert!(matches!(
            curvature_fd_oracle(&d3, c64(0.0, 0.0), 1e-3),
            Err(Error::Codimension(3))
        ));
    }
}
