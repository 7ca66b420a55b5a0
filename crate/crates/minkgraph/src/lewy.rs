//! The Lewy transformation `L(x) = x + xi(x)` of a stationary spacelike
//! graph, and numerical verification that `eta = L(x)` are global isothermal
//! parameters with conformal factor `(1/lambda1 + 1/lambda2)^{-2}`.
//!
//! The potentials `xi_1, xi_2` are primitives of the 1-forms
//! `omega_1 = (g11/W) dx1 + (g12/W) dx2` and
//! `omega_2 = (g12/W) dx1 + (g22/W) dx2`, which are closed exactly when the
//! graph is stationary. They are computed here by path integration along
//! L-shaped paths; closedness is checked, not assumed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::GraphSurface;
use crate::quad;

/// Which leg of the L-shaped integration path comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathOrder {
    /// base -> (x1, base2) -> x
    X1First,
    /// base -> (base1, x2) -> x
    X2First,
}

/// Result of integrating the xi 1-forms, with a finite-difference
/// diagnostic of their closedness at the path midpoint.
#[derive(Debug, Clone, Copy)]
pub struct XiResult {
    pub xi: [f64; 2],
    /// `max_j |d2 (omega_j)_1 - d1 (omega_j)_2|` at the rectangle center.
    pub closedness_defect: f64,
}

/// Pointwise Lewy data at a spacelike sample.
#[derive(Debug, Clone, Copy)]
pub struct LewySample {
    pub xi: [f64; 2],
    pub eta: [f64; 2],
    pub jl: [[f64; 2]; 2],
    /// Square roots of the eigenvalues of `(g_ij)`; `lambda1 * lambda2 = W`.
    pub lambdas: (f64, f64),
    /// `(1/lambda1 + 1/lambda2)^{-2}`, the isothermal conformal factor.
    pub conf: f64,
}

/// Worst-case deviations from conformality of the pulled-back metric over a
/// sample set, all relative to the diagonal entry.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ConformalReport {
    /// `max |G11 - G22| / G11` over the grid.
    pub max_anisotropy: f64,
    /// `max |G12| / G11`.
    pub max_offdiag: f64,
    /// `max |G11 - conf| / G11` against the eigenvalue-based factor.
    pub max_conf_dev: f64,
}

/// Cauchy–Riemann residuals of `beta_l = dx_l/dzeta` over the eta-chart.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BetaReport {
    pub max_cr_residual: f64,
    /// `min -4 Im(conj(beta1) beta2)` over the grid; positive for a
    /// spacelike stationary graph.
    pub min_positivity: f64,
}

fn omega_rows(f: &GraphSurface, x1: f64, x2: f64) -> Result<[[f64; 2]; 2]> {
    let m = f.metric_at(x1, x2)?;
    let w = m.w.ok_or(Error::NotSpacelike(x1, x2))?;
    Ok([[m.g11 / w, m.g12 / w], [m.g12 / w, m.g22 / w]])
}

/// Integrate the xi 1-forms from `base` to `x` along an L-shaped path.
pub fn xi_potentials_via(
    f: &GraphSurface,
    x: [f64; 2],
    base: [f64; 2],
    tol: f64,
    order: PathOrder,
) -> Result<[f64; 2]> {
    let mut xi = [0.0; 2];
    // (start, end, frozen coordinate, which variable moves)
    let legs: [(f64, f64, f64, usize); 2] = match order {
        PathOrder::X1First => [(base[0], x[0], base[1], 0), (base[1], x[1], x[0], 1)],
        PathOrder::X2First => [(base[1], x[1], base[0], 1), (base[0], x[0], x[1], 0)],
    };
    for &(t0, t1, frozen, mv) in &legs {
        for j in 0..2 {
            xi[j] += quad::integrate_real(
                |t| {
                    let (x1, x2) = if mv == 0 { (t, frozen) } else { (frozen, t) };
                    Ok(omega_rows(f, x1, x2)?[j][mv])
                },
                t0,
                t1,
                tol,
            )?;
        }
    }
    Ok(xi)
}

/// xi with `xi(base) = 0`, along base -> (x1, base2) -> x, plus a
/// closedness diagnostic at the rectangle center.
pub fn xi_potentials(f: &GraphSurface, x: [f64; 2], base: [f64; 2], tol: f64) -> Result<XiResult> {
    let xi = xi_potentials_via(f, x, base, tol, PathOrder::X1First)?;
    let cx = 0.5 * (x[0] + base[0]);
    let cy = 0.5 * (x[1] + base[1]);
    let h = 1e-4 * (1.0 + cx.abs().max(cy.abs()));
    let e = omega_rows(f, cx + h, cy)?;
    let w = omega_rows(f, cx - h, cy)?;
    let n = omega_rows(f, cx, cy + h)?;
    let s = omega_rows(f, cx, cy - h)?;
    let mut defect = 0.0f64;
    for j in 0..2 {
        let d2_first = (n[j][0] - s[j][0]) / (2.0 * h);
        let d1_second = (e[j][1] - w[j][1]) / (2.0 * h);
        defect = defect.max((d2_first - d1_second).abs());
    }
    Ok(XiResult {
        xi,
        closedness_defect: defect,
    })
}

/// `eta = x + xi(x)`.
pub fn lewy_map(f: &GraphSurface, x: [f64; 2], base: [f64; 2], tol: f64) -> Result<[f64; 2]> {
    let xi = xi_potentials_via(f, x, base, tol, PathOrder::X1First)?;
    Ok([x[0] + xi[0], x[1] + xi[1]])
}

/// `J_L = I + g/W` and the metric eigenvalue roots, from the metric entries.
pub fn jl_from_components(g11: f64, g12: f64, g22: f64) -> Result<([[f64; 2]; 2], (f64, f64))> {
    let det = g11 * g22 - g12 * g12;
    if !(g11 > 0.0 && det > 0.0) {
        return Err(Error::InvalidData(
            "metric is not spacelike (positive-definite)".into(),
        ));
    }
    let w = det.sqrt();
    let jl = [
        [1.0 + g11 / w, g12 / w],
        [g12 / w, 1.0 + g22 / w],
    ];
    let tr = g11 + g22;
    let disc = ((g11 - g22).powi(2) + 4.0 * g12 * g12).sqrt();
    let l1 = (0.5 * (tr - disc)).sqrt();
    let l2 = (0.5 * (tr + disc)).sqrt();
    Ok((jl, (l1, l2)))
}

/// The Jacobian of L and the metric eigenvalue roots at `x`.
pub fn lewy_jacobian(f: &GraphSurface, x: [f64; 2]) -> Result<([[f64; 2]; 2], (f64, f64))> {
    let m = f.metric_at(x[0], x[1])?;
    if !m.spacelike {
        return Err(Error::NotSpacelike(x[0], x[1]));
    }
    jl_from_components(m.g11, m.g12, m.g22)
}

/// Full pointwise sample: xi, eta, J_L, eigenvalue roots and the isothermal
/// conformal factor.
pub fn lewy_sample(f: &GraphSurface, x: [f64; 2], base: [f64; 2], tol: f64) -> Result<LewySample> {
    let xi = xi_potentials_via(f, x, base, tol, PathOrder::X1First)?;
    let (jl, (l1, l2)) = lewy_jacobian(f, x)?;
    let conf = (1.0 / l1 + 1.0 / l2).powi(-2);
    Ok(LewySample {
        xi,
        eta: [x[0] + xi[0], x[1] + xi[1]],
        jl,
        lambdas: (l1, l2),
        conf,
    })
}

fn inv2(m: [[f64; 2]; 2]) -> Result<[[f64; 2]; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det == 0.0 {
        return Err(Error::Evaluation("singular 2x2 matrix".into()));
    }
    Ok([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

/// Pull the induced metric back through a finite-difference Jacobian of L
/// and report how far it is from `conf * identity` at each sample.
pub fn conformal_check(
    f: &GraphSurface,
    points: &[(f64, f64)],
    base: [f64; 2],
    fd_step: f64,
    tol: f64,
) -> Result<ConformalReport> {
    let mut rep = ConformalReport {
        max_anisotropy: 0.0,
        max_offdiag: 0.0,
        max_conf_dev: 0.0,
    };
    for &(x1, x2) in points {
        let h = fd_step;
        let e1p = lewy_map(f, [x1 + h, x2], base, tol)?;
        let e1m = lewy_map(f, [x1 - h, x2], base, tol)?;
        let e2p = lewy_map(f, [x1, x2 + h], base, tol)?;
        let e2m = lewy_map(f, [x1, x2 - h], base, tol)?;
        // D[k][i] = d eta_k / d x_i
        let d = [
            [(e1p[0] - e1m[0]) / (2.0 * h), (e2p[0] - e2m[0]) / (2.0 * h)],
            [(e1p[1] - e1m[1]) / (2.0 * h), (e2p[1] - e2m[1]) / (2.0 * h)],
        ];
        let dinv = inv2(d)?;
        let m = f.metric_at(x1, x2)?;
        if !m.spacelike {
            return Err(Error::NotSpacelike(x1, x2));
        }
        let g = [[m.g11, m.g12], [m.g12, m.g22]];
        // Ghat = (D^{-1})^T g D^{-1}
        let mut ghat = [[0.0; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let mut s = 0.0;
                for i in 0..2 {
                    for j in 0..2 {
                        s += dinv[i][a] * g[i][j] * dinv[j][b];
                    }
                }
                ghat[a][b] = s;
            }
        }
        let (_, (l1, l2)) = jl_from_components(m.g11, m.g12, m.g22)?;
        let conf = (1.0 / l1 + 1.0 / l2).powi(-2);
        let g11 = ghat[0][0];
        rep.max_anisotropy = rep.max_anisotropy.max((g11 - ghat[1][1]).abs() / g11);
        rep.max_offdiag = rep.max_offdiag.max(ghat[0][1].abs() / g11);
        rep.max_conf_dev = rep.max_conf_dev.max((g11 - conf).abs() / g11);
    }
    Ok(rep)
}

/// `beta_l = (dx_l/deta1 - i dx_l/deta2)/2` for `l = 1, 2`, computed from
/// the inverse of J_L at `x`.
pub fn beta_at(f: &GraphSurface, x: [f64; 2]) -> Result<[Complex64; 2]> {
    let (jl, _) = lewy_jacobian(f, x)?;
    let inv = inv2(jl)?;
    Ok([
        Complex64::new(inv[0][0], -inv[0][1]) / 2.0,
        Complex64::new(inv[1][0], -inv[1][1]) / 2.0,
    ])
}

/// Newton inversion of L near `guess`: find x with `L(x) = eta`.
fn lewy_invert(
    f: &GraphSurface,
    eta: [f64; 2],
    guess: [f64; 2],
    base: [f64; 2],
    tol: f64,
) -> Result<[f64; 2]> {
    let mut x = guess;
    for _ in 0..25 {
        let cur = lewy_map(f, x, base, tol)?;
        let r = [eta[0] - cur[0], eta[1] - cur[1]];
        if r[0].abs().max(r[1].abs()) < 10.0 * tol {
            return Ok(x);
        }
        let (jl, _) = lewy_jacobian(f, x)?;
        let inv = inv2(jl)?;
        x = [
            x[0] + inv[0][0] * r[0] + inv[0][1] * r[1],
            x[1] + inv[1][0] * r[0] + inv[1][1] * r[1],
        ];
    }
    Err(Error::Evaluation(format!(
        "Newton inversion of the Lewy map failed near ({}, {})",
        eta[0], eta[1]
    )))
}

/// Check holomorphy of `beta_l` over the eta-chart by a central-difference
/// d/d(conj zeta) on an eta-stencil (pre-images found by Newton), and the
/// positivity of `-4 Im(conj(beta1) beta2)`.
pub fn beta_holomorphy_check(
    f: &GraphSurface,
    points: &[(f64, f64)],
    base: [f64; 2],
    fd_step: f64,
    tol: f64,
) -> Result<BetaReport> {
    let mut rep = BetaReport {
        max_cr_residual: 0.0,
        min_positivity: f64::INFINITY,
    };
    for &(x1, x2) in points {
        let x0 = [x1, x2];
        let beta0 = beta_at(f, x0)?;
        let pos = -4.0 * (beta0[0].conj() * beta0[1]).im;
        rep.min_positivity = rep.min_positivity.min(pos);

        let eta0 = lewy_map(f, x0, base, tol)?;
        let h = fd_step;
        let stencil = [
            [eta0[0] + h, eta0[1]],
            [eta0[0] - h, eta0[1]],
            [eta0[0], eta0[1] + h],
            [eta0[0], eta0[1] - h],
        ];
        let mut beta_s = [[Complex64::new(0.0, 0.0); 2]; 4];
        for (k, eta) in stencil.iter().enumerate() {
            let x = lewy_invert(f, *eta, x0, base, tol)?;
            beta_s[k] = beta_at(f, x)?;
        }
        for l in 0..2 {
            let d1 = (beta_s[0][l] - beta_s[1][l]) / (2.0 * h);
            let d2 = (beta_s[2][l] - beta_s[3][l]) / (2.0 * h);
            // d/d(conj zeta) = (d/d eta1 + i d/d eta2)/2
            let cr = (d1 + Complex64::new(0.0, 1.0) * d2) / 2.0;
            rep.max_cr_residual = rep.max_cr_residual.max(cr.norm());
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::graph::ScalarField2;
    use crate::mink::MinkVector;
    use crate::rep::make_canonical;

    fn zero_graph() -> GraphSurface {
        GraphSurface::zero(2)
    }

    fn lightlike_graph() -> GraphSurface {
        let h = Expr::parse_with_vars("sin(x1)*cosh(x2)", &["x1", "x2"]).unwrap();
        GraphSurface::directed(ScalarField2::from_expr(&h), &MinkVector::new(vec![1.0, 1.0]))
    }

    fn canonical_graph() -> GraphSurface {
        make_canonical(1.0, 1.0, &[], Expr::parse("z").unwrap(), 2)
            .unwrap()
            .graph_surface()
    }

    #[test]
    fn xi_flat_is_identity() {
        let f = zero_graph();
        let r = xi_potentials(&f, [3.0, 4.0], [0.0, 0.0], 1e-12).unwrap();
        assert!((r.xi[0] - 3.0).abs() < 1e-11);
        assert!((r.xi[1] - 4.0).abs() < 1e-11);
        assert!(r.closedness_defect < 1e-10);
        let eta = lewy_map(&f, [1.0, 1.0], [0.0, 0.0], 1e-12).unwrap();
        assert!((eta[0] - 2.0).abs() < 1e-11 && (eta[1] - 2.0).abs() < 1e-11);
    }

    #[test]
    fn xi_lightlike_is_identity() {
        let f = lightlike_graph();
        let r = xi_potentials(&f, [1.2, -0.7], [0.3, 0.1], 1e-12).unwrap();
        assert!((r.xi[0] - 0.9).abs() < 1e-11);
        assert!((r.xi[1] - (-0.8)).abs() < 1e-11);
        let eta = lewy_map(&f, [1.5, -0.5], [0.0, 0.0], 1e-12).unwrap();
        assert!((eta[0] - 3.0).abs() < 1e-10 && (eta[1] - (-1.0)).abs() < 1e-10);
    }

    #[test]
    fn xi_affine_closed_form() {
        // affine graph: constant metric, xi = g (x - base) / W
        let f = GraphSurface::from_exprs(&[
            Expr::parse_with_vars("0.4*x1 - 0.1*x2", &["x1", "x2"]).unwrap(),
            Expr::parse_with_vars("0.2*x1 + 0.3*x2", &["x1", "x2"]).unwrap(),
        ]);
        let m = f.metric_at(0.0, 0.0).unwrap();
        let w = m.w.unwrap();
        let x = [2.0, -1.5];
        let want = [
            (m.g11 * x[0] + m.g12 * x[1]) / w,
            (m.g12 * x[0] + m.g22 * x[1]) / w,
        ];
        let r = xi_potentials(&f, x, [0.0, 0.0], 1e-12).unwrap();
        assert!((r.xi[0] - want[0]).abs() < 1e-10);
        assert!((r.xi[1] - want[1]).abs() < 1e-10);
        assert!(r.closedness_defect < 1e-9);
    }

    #[test]
    fn xi_path_independence_canonical() {
        let f = canonical_graph();
        let tol = 1e-10;
        for &(x1, x2) in &[(0.8, 0.5), (-0.6, 0.9), (0.3, -0.7)] {
            let a = xi_potentials_via(&f, [x1, x2], [0.0, 0.0], tol, PathOrder::X1First).unwrap();
            let b = xi_potentials_via(&f, [x1, x2], [0.0, 0.0], tol, PathOrder::X2First).unwrap();
            assert!((a[0] - b[0]).abs() < 5.0 * tol, "{} vs {}", a[0], b[0]);
            assert!((a[1] - b[1]).abs() < 5.0 * tol, "{} vs {}", a[1], b[1]);
        }
        let r = xi_potentials(&f, [0.8, 0.5], [0.0, 0.0], tol).unwrap();
        assert!(r.closedness_defect < 1e-6, "defect {}", r.closedness_defect);
    }

    #[test]
    fn jacobian_values() {
        let f = zero_graph();
        let (jl, (l1, l2)) = lewy_jacobian(&f, [0.0, 0.0]).unwrap();
        assert_eq!(jl, [[2.0, 0.0], [0.0, 2.0]]);
        assert_eq!((l1, l2), (1.0, 1.0));
        // synthetic g = diag(4, 1): W = 2, JL = diag(3, 3/2)
        let (jl, (l1, l2)) = jl_from_components(4.0, 0.0, 1.0).unwrap();
        assert!((jl[0][0] - 3.0).abs() < 1e-15);
        assert!((jl[1][1] - 1.5).abs() < 1e-15);
        assert!((l1 * l2 - 2.0).abs() < 1e-15);
        // eigenvalues of diagonal JL are its entries; both exceed 1
        assert!(jl[0][0] > 1.0 && jl[1][1] > 1.0);
        assert!(jl_from_components(-1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn jl_eigenvalues_exceed_one() {
        let f = canonical_graph();
        for k in 0..30 {
            let x = [(k as f64 * 0.37).sin() * 2.0, (k as f64 * 0.53).cos() * 2.0];
            let (jl, (l1, l2)) = lewy_jacobian(&f, x).unwrap();
            // closed form: eigenvalues are 1 + l1/l2 and 1 + l2/l1
            let tr = jl[0][0] + jl[1][1];
            let det = jl[0][0] * jl[1][1] - jl[0][1] * jl[1][0];
            let disc = (tr * tr - 4.0 * det).sqrt();
            let e_min = 0.5 * (tr - disc);
            let e_max = 0.5 * (tr + disc);
            assert!(e_min > 1.0);
            assert!((e_min - (1.0 + l1 / l2)).abs() < 1e-10);
            assert!((e_max - (1.0 + l2 / l1)).abs() < 1e-10);
            assert!(det >= 4.0 - 1e-12);
            // lambda1 lambda2 = W
            let m = f.metric_at(x[0], x[1]).unwrap();
            assert!((l1 * l2 - m.w.unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn conformal_flat_and_lightlike() {
        let pts = [(0.0, 0.0), (0.5, -0.25), (-0.4, 0.3)];
        let rep = conformal_check(&zero_graph(), &pts, [0.0, 0.0], 1e-4, 1e-12).unwrap();
        assert!(rep.max_anisotropy < 1e-10);
        assert!(rep.max_offdiag < 1e-10);
        assert!(rep.max_conf_dev < 1e-10);
        // lightlike: eta = 2x, conf = 1/4, pullback of delta is delta/4
        let rep = conformal_check(&lightlike_graph(), &pts, [0.0, 0.0], 1e-4, 1e-12).unwrap();
        assert!(rep.max_anisotropy < 1e-10);
        assert!(rep.max_offdiag < 1e-10);
        assert!(rep.max_conf_dev < 1e-10);
        let s = lewy_sample(&lightlike_graph(), [0.7, 0.2], [0.0, 0.0], 1e-12).unwrap();
        assert!((s.conf - 0.25).abs() < 1e-12);
    }

    #[test]
    fn conformal_canonical_grid() {
        let f = canonical_graph();
        let mut pts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                pts.push((-1.0 + i as f64, -1.0 + j as f64));
            }
        }
        let rep = conformal_check(&f, &pts, [0.0, 0.0], 1e-4, 1e-11).unwrap();
        assert!(rep.max_anisotropy < 1e-4, "aniso {}", rep.max_anisotropy);
        assert!(rep.max_offdiag < 1e-4, "offdiag {}", rep.max_offdiag);
        assert!(rep.max_conf_dev < 1e-4, "conf {}", rep.max_conf_dev);
    }

    #[test]
    fn beta_flat_and_lightlike() {
        let pts = [(0.0, 0.0), (0.6, -0.3)];
        let rep = beta_holomorphy_check(&zero_graph(), &pts, [0.0, 0.0], 1e-3, 1e-12).unwrap();
        assert!(rep.max_cr_residual < 1e-10);
        assert!((rep.min_positivity - 0.25).abs() < 1e-10);
        let rep =
            beta_holomorphy_check(&lightlike_graph(), &pts, [0.0, 0.0], 1e-3, 1e-12).unwrap();
        assert!(rep.max_cr_residual < 1e-8);
        assert!(rep.min_positivity > 0.0);
        // beta is constant (1/4, -i/4) for the identity metric
        let b = beta_at(&lightlike_graph(), [0.3, 0.9]).unwrap();
        assert!((b[0] - Complex64::new(0.25, 0.0)).norm() < 1e-12);
        assert!((b[1] - Complex64::new(0.0, -0.25)).norm() < 1e-12);
    }

    #[test]
    fn beta_canonical_grid() {
        let f = canonical_graph();
        let pts = [(0.0, 0.0), (0.5, 0.5), (-0.5, 0.25)];
        let rep = beta_holomorphy_check(&f, &pts, [0.0, 0.0], 1e-3, 1e-11).unwrap();
        assert!(rep.max_cr_residual < 1e-4, "cr {}", rep.max_cr_residual);
        assert!(rep.min_positivity > 0.0);
    }
}
