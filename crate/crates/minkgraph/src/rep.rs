//! Exact stationary-surface synthesis from holomorphic data.
//!
//! Canonical data fixes `alpha = dx/dz` as
//! `(1/2, c/2, d_3/2, ..., mu cosh(beta), mu sinh(beta))` with `c = a - b i`,
//! `b > 0` and `mu^2 = -(1 + c^2 + sum d_k^2)/4`. Integrating `alpha` and
//! taking real parts yields an entire spacelike stationary graph over the
//! plane `(x1, x2) = (u1, a u1 + b u2)`. The degenerate branch `c = -i`
//! (no extra constants) produces the lightlike-direction graphs
//! `f = 2 Re(beta) * (1, 1)` instead.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::graph::{GraphSurface, ScalarField2};
use crate::mink::{mink_inner_complex, MinkVector};
use crate::quad;

/// Tolerance on `|c + i|` for detecting the degenerate (lightlike) branch.
pub const TAU_CASE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tail {
    /// `(mu cosh beta, mu sinh beta)`
    Hyperbolic,
    /// `(beta', beta')` — the lightlike-direction branch, `c = -i`.
    Lightlike,
}

/// Canonical holomorphic data of an exact stationary surface.
#[derive(Debug, Clone)]
pub struct StationaryData {
    m: usize,
    a: f64,
    b: f64,
    consts: Vec<f64>,
    mu: Complex64,
    beta: Expr,
    beta_deriv: Expr,
    tail: Tail,
}

/// Wire form of `StationaryData` (the JSON schema consumed by the CLI).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StationaryDataSpec {
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub consts: Vec<f64>,
    pub beta: String,
    pub m: usize,
}

/// Trichotomy of entire stationary graphs in `R_1^4` (and the analogous
/// W-range data in higher codimension).
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// Affine graph, constant W.
    CaseI,
    /// Lightlike-direction graph `f = h y0 + y1`, `W = 1`.
    CaseII { y0: Vec<f64> },
    /// W oscillates over `[r1, r2]` with `r1 r2 = 1` in codimension 2.
    CaseIII { r1: f64, r2: f64 },
}

/// Weierstrass-type data of a stationary surface in `R_1^4`: Gauss maps
/// `phi`, `psi` and height differential `dh = h'(z) dz`.
pub struct GaussData {
    pub phi: HoloFn,
    pub psi: HoloFn,
    pub hprime: HoloFn,
    /// Modulus of the `phi` coefficient; `> 1` exactly when `b > 0`.
    pub r: f64,
    pub theta: f64,
}

pub type HoloFn = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;

/// Pointwise Weierstrass representation
/// `alpha = (phi + psi, -i (phi - psi), 1 - phi psi, 1 + phi psi) h'`.
pub fn alpha_from_weierstrass(
    phi: Complex64,
    psi: Complex64,
    hprime: Complex64,
) -> [Complex64; 4] {
    let i = Complex64::new(0.0, 1.0);
    [
        (phi + psi) * hprime,
        -i * (phi - psi) * hprime,
        (Complex64::new(1.0, 0.0) - phi * psi) * hprime,
        (Complex64::new(1.0, 0.0) + phi * psi) * hprime,
    ]
}

impl GaussData {
    /// Evaluate `alpha` at `z` from the Weierstrass data.
    pub fn alpha_at(&self, z: Complex64) -> Result<[Complex64; 4]> {
        Ok(alpha_from_weierstrass(
            (self.phi)(z)?,
            (self.psi)(z)?,
            (self.hprime)(z)?,
        ))
    }
}

/// Validated canonical data.
///
/// `mu` is the principal root of `-(1 + c^2 + sum d^2)/4` with `Im mu >= 0`
/// (and `Re mu > 0` when `Im mu = 0`). When `mu^2 = 0`, the degenerate
/// lightlike branch is returned, which requires `c = -i` and no extra
/// constants.
pub fn make_canonical(a: f64, b: f64, consts: &[f64], beta: Expr, m: usize) -> Result<StationaryData> {
    if !(b > 0.0) {
        return Err(Error::InvalidData("b must be positive".into()));
    }
    if m < 2 {
        return Err(Error::InvalidData("codimension m must be at least 2".into()));
    }
    if consts.len() != m - 2 {
        return Err(Error::InvalidData(format!(
            "expected {} extra constants for m = {}, got {}",
            m - 2,
            m,
            consts.len()
        )));
    }
    if beta.has_division() {
        return Err(Error::InvalidData(
            "beta must be entire (no division nodes)".into(),
        ));
    }
    let c = Complex64::new(a, -b);
    let sum_d2: f64 = consts.iter().map(|d| d * d).sum();
    let mu2 = -(Complex64::new(1.0 + sum_d2, 0.0) + c * c) / 4.0;
    let beta_deriv = beta.derive();
    if mu2.norm() <= 1e-15 * (1.0 + c.norm_sqr() + sum_d2) {
        // degenerate branch: 1 + c^2 + sum d^2 = 0
        let degenerate_ok = consts.is_empty() && (c + Complex64::new(0.0, 1.0)).norm() <= TAU_CASE;
        if !degenerate_ok {
            return Err(Error::Degenerate(
                "mu = 0 outside the lightlike branch (requires c = -i and no extra constants)"
                    .into(),
            ));
        }
        return Ok(StationaryData {
            m,
            a,
            b,
            consts: consts.to_vec(),
            mu: Complex64::new(0.0, 0.0),
            beta,
            beta_deriv,
            tail: Tail::Lightlike,
        });
    }
    let mut mu = mu2.sqrt();
    if mu.im < 0.0 || (mu.im == 0.0 && mu.re < 0.0) {
        mu = -mu;
    }
    Ok(StationaryData {
        m,
        a,
        b,
        consts: consts.to_vec(),
        mu,
        beta,
        beta_deriv,
        tail: Tail::Hyperbolic,
    })
}

/// The constructor behind the near-area-preserving family: given `C >= 1`
/// and `eps > 0` it returns data with `inf W * sup W = C` and
/// `0 < sup W - inf W < eps`, in codimension `m >= 3`.
pub fn construct_ber3(c_target: f64, eps: f64, m: usize) -> Result<StationaryData> {
    if c_target < 1.0 {
        return Err(Error::InvalidData("C must be at least 1".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidData("eps must be positive".into()));
    }
    if m < 3 {
        return Err(Error::InvalidData("m must be at least 3".into()));
    }
    let d = (c_target - 1.0).sqrt();
    let mut consts = vec![0.0; m - 2];
    *consts.last_mut().unwrap() = d;
    let sqrt_c = c_target.sqrt();
    let delta = (eps / (4.0 * sqrt_c)).min(0.005);
    let b = sqrt_c * (1.0 + delta);
    make_canonical(0.0, b, &consts, Expr::parse("z")?, m)
}

impl StationaryData {
    pub fn from_spec(spec: &StationaryDataSpec) -> Result<Self> {
        make_canonical(spec.a, spec.b, &spec.consts, Expr::parse(&spec.beta)?, spec.m)
    }

    pub fn to_spec(&self) -> StationaryDataSpec {
        StationaryDataSpec {
            a: self.a,
            b: self.b,
            consts: self.consts.clone(),
            beta: format!("{}", self.beta),
            m: self.m,
        }
    }

    pub fn codim(&self) -> usize {
        self.m
    }

    pub fn ambient_dim(&self) -> usize {
        self.m + 2
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn consts(&self) -> &[f64] {
        &self.consts
    }

    pub fn c(&self) -> Complex64 {
        Complex64::new(self.a, -self.b)
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn beta(&self) -> &Expr {
        &self.beta
    }

    pub fn beta_deriv(&self) -> &Expr {
        &self.beta_deriv
    }

    pub fn is_lightlike_branch(&self) -> bool {
        self.tail == Tail::Lightlike
    }

    pub fn sum_d2(&self) -> f64 {
        self.consts.iter().map(|d| d * d).sum()
    }

    /// `alpha(z) = dx/dz`, a holomorphic curve in `C^{2+m}`.
    pub fn alpha(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let mut alpha = Vec::with_capacity(self.m + 2);
        alpha.push(Complex64::new(0.5, 0.0));
        alpha.push(self.c() / 2.0);
        for d in &self.consts {
            alpha.push(Complex64::new(d / 2.0, 0.0));
        }
        match self.tail {
            Tail::Hyperbolic => {
                let bz = self.beta.eval(z)?;
                alpha.push(self.mu * bz.cosh());
                alpha.push(self.mu * bz.sinh());
            }
            Tail::Lightlike => {
                let d = self.beta_deriv.eval(z)?;
                alpha.push(d);
                alpha.push(d);
            }
        }
        Ok(alpha)
    }

    /// `<alpha(z), alpha(z)>` — identically zero (isotropy) for valid data.
    pub fn isotropy_defect(&self, z: Complex64) -> Result<f64> {
        let a = self.alpha(z)?;
        Ok(mink_inner_complex(&a, &a)?.norm())
    }

    /// `<alpha, conj(alpha)> = sum_{l<2+m} |alpha_l|^2 - |alpha_{2+m}|^2`;
    /// half the conformal factor of the induced metric.
    pub fn alpha_pairing(&self, z: Complex64) -> Result<f64> {
        let a = self.alpha(z)?;
        let n = a.len();
        let mut s = 0.0;
        for v in &a[..n - 1] {
            s += v.norm_sqr();
        }
        s -= a[n - 1].norm_sqr();
        Ok(s)
    }

    /// Pointwise lower bound `(1 + |c|^2 - |1 + c^2 + sum d^2|)/4` for
    /// `<alpha, conj(alpha)>` (completeness of the induced metric).
    pub fn pairing_lower_bound(&self) -> f64 {
        let c = self.c();
        let s = self.sum_d2();
        let one_c2 = Complex64::new(1.0 + s, 0.0) + c * c;
        (1.0 + c.norm_sqr() + s - one_c2.norm()) / 4.0
    }

    /// `x(z) = 2 Re int_0^z alpha + x(0)` with `x(0) = 0`, in `R_1^{2+m}`
    /// (the factor 2 because `alpha = dx/dz` for real `x`). In particular
    /// `x1 = u1` and `x2 = a u1 + b u2` exactly.
    ///
    /// Closed-form antiderivatives are used for the canonical `beta = z`
    /// family and the first `2 + (m-2)` linear components; everything else
    /// goes through adaptive quadrature at tolerance `tol`.
    pub fn synthesize_point(&self, z: Complex64, tol: f64) -> Result<MinkVector> {
        let (t1, t2) = self.tail_antiderivative(z, tol)?;
        Ok(self.assemble_point(z, t1, t2))
    }

    /// Same surface point with the tail components forced through segment
    /// quadrature; cross-validates the closed-form route.
    pub fn synthesize_point_quadrature(&self, z: Complex64, tol: f64) -> Result<MinkVector> {
        let (t1, t2) = self.tail_quadrature(z, tol)?;
        Ok(self.assemble_point(z, t1, t2))
    }

    fn assemble_point(&self, z: Complex64, t1: Complex64, t2: Complex64) -> MinkVector {
        let u1 = z.re;
        let u2 = z.im;
        let mut x = Vec::with_capacity(self.m + 2);
        x.push(u1);
        x.push(self.a * u1 + self.b * u2);
        for d in &self.consts {
            x.push(d * u1);
        }
        x.push(2.0 * t1.re);
        x.push(2.0 * t2.re);
        MinkVector(x)
    }

    fn tail_antiderivative(&self, z: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
        match self.tail {
            Tail::Hyperbolic if self.beta.is_identity() => {
                Ok((self.mu * z.sinh(), self.mu * (z.cosh() - 1.0)))
            }
            Tail::Lightlike => {
                let v = self.beta.eval(z)? - self.beta.eval(Complex64::new(0.0, 0.0))?;
                Ok((v, v))
            }
            Tail::Hyperbolic => self.tail_quadrature(z, tol),
        }
    }

    fn tail_quadrature(&self, z: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
        let zero = Complex64::new(0.0, 0.0);
        match self.tail {
            Tail::Hyperbolic => {
                let t1 = quad::integrate_segment_fn(
                    |w| Ok(self.mu * self.beta.eval(w)?.cosh()),
                    zero,
                    z,
                    tol,
                )?;
                let t2 = quad::integrate_segment_fn(
                    |w| Ok(self.mu * self.beta.eval(w)?.sinh()),
                    zero,
                    z,
                    tol,
                )?;
                Ok((t1, t2))
            }
            Tail::Lightlike => {
                let t = quad::integrate_segment_fn(|w| self.beta_deriv.eval(w), zero, z, tol)?;
                Ok((t, t))
            }
        }
    }

    /// Parameter chart: `u1 = x1`, `u2 = (x2 - a x1)/b`.
    pub fn chart(&self, x1: f64, x2: f64) -> Complex64 {
        Complex64::new(x1, (x2 - self.a * x1) / self.b)
    }

    /// Graph map value `f(x1, x2)` in `R_1^m` (ambient coordinates 3..2+m).
    pub fn graph_eval(&self, x1: f64, x2: f64, tol: f64) -> Result<Vec<f64>> {
        let p = self.synthesize_point(self.chart(x1, x2), tol)?;
        Ok(p.0[2..].to_vec())
    }

    /// The graph map as a `GraphSurface` with analytic partial derivatives
    /// (chain rule through the chart; values by synthesis).
    pub fn graph_surface(&self) -> GraphSurface {
        let comps = (0..self.m)
            .map(|k| {
                let data = self.clone();
                let value = Arc::new(move |x1: f64, x2: f64| {
                    Ok(data.graph_eval(x1, x2, 1e-10)?[k])
                });
                // x_l = 2 Re int alpha_l, so dx_l/du1 = 2 Re alpha_l and
                // dx_l/du2 = -2 Im alpha_l; then the chain rule through
                // u1 = x1, u2 = (x2 - a x1)/b
                let data1 = self.clone();
                let d1 = Arc::new(move |x1: f64, x2: f64| {
                    let al = data1.alpha(data1.chart(x1, x2))?[2 + k];
                    Ok(2.0 * (al.re + (data1.a / data1.b) * al.im))
                });
                let data2 = self.clone();
                let d2 = Arc::new(move |x1: f64, x2: f64| {
                    let al = data2.alpha(data2.chart(x1, x2))?[2 + k];
                    Ok(-2.0 * al.im / data2.b)
                });
                ScalarField2::analytic(value, d1, d2)
            })
            .collect();
        GraphSurface::new(comps)
    }

    /// The W-function from the area-element formula
    /// `W = (1 + |c|^2 + 4(|alpha_3|^2 + ... - |alpha_{2+m}|^2)) / (2b)`.
    ///
    /// The last two terms are combined through the exact identity
    /// `|cosh beta|^2 - |sinh beta|^2 = cos(2 Im beta)`: summing them
    /// separately cancels catastrophically once `|Re beta|` is large.
    pub fn w_of(&self, z: Complex64) -> Result<f64> {
        let mut tail = self.sum_d2() / 4.0;
        match self.tail {
            Tail::Hyperbolic => {
                let v2 = self.beta.eval(z)?.im;
                tail += self.mu.norm_sqr() * (2.0 * v2).cos();
            }
            Tail::Lightlike => {
                // |alpha_3|^2 - |alpha_4|^2 = |beta'|^2 - |beta'|^2 = 0
            }
        }
        Ok((1.0 + self.c().norm_sqr() + 4.0 * tail) / (2.0 * self.b))
    }

    /// Closed form of the same W-function,
    /// `(1 + |c|^2 + sum d^2 + |1 + c^2 + sum d^2| cos(2 Im beta)) / (2b)`.
    pub fn w_closed_form(&self, z: Complex64) -> Result<f64> {
        match self.tail {
            Tail::Lightlike => Ok(1.0),
            Tail::Hyperbolic => {
                let c = self.c();
                let s = self.sum_d2();
                let amp = (Complex64::new(1.0 + s, 0.0) + c * c).norm();
                let v2 = self.beta.eval(z)?.im;
                Ok((1.0 + c.norm_sqr() + s + amp * (2.0 * v2).cos()) / (2.0 * self.b))
            }
        }
    }

    /// Closed-form extremes of W: `((1+|c|^2+S) -/+ |1+c^2+S|) / (2b)`.
    pub fn w_extremes(&self) -> (f64, f64) {
        match self.tail {
            Tail::Lightlike => (1.0, 1.0),
            Tail::Hyperbolic => {
                let c = self.c();
                let s = self.sum_d2();
                let base = 1.0 + c.norm_sqr() + s;
                let amp = (Complex64::new(1.0 + s, 0.0) + c * c).norm();
                ((base - amp) / (2.0 * self.b), (base + amp) / (2.0 * self.b))
            }
        }
    }

    /// Empirical min/max of W over an `n x n` grid on `[-l, l]^2` in the
    /// parameter plane.
    pub fn w_range_on_grid(&self, l: f64, n: usize) -> Result<(f64, f64)> {
        if n < 2 {
            return Err(Error::InvalidData("grid needs n >= 2".into()));
        }
        let step = 2.0 * l / (n - 1) as f64;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::new(-l + i as f64 * step, -l + j as f64 * step);
                let w = self.w_of(z)?;
                lo = lo.min(w);
                hi = hi.max(w);
            }
        }
        Ok((lo, hi))
    }

    /// The data-level trichotomy: constant `beta` is affine; `c = -i` with no
    /// extra constants is the lightlike branch; everything else oscillates.
    pub fn classify(&self) -> Classification {
        if self.beta.is_constant_function() {
            return Classification::CaseI;
        }
        if self.consts.is_empty()
            && (self.c() + Complex64::new(0.0, 1.0)).norm() <= TAU_CASE
        {
            return Classification::CaseII { y0: vec![1.0, 1.0] };
        }
        let (r1, r2) = self.w_extremes();
        Classification::CaseIII { r1, r2 }
    }

    /// Weierstrass data of the surface (codimension 2, nondegenerate only):
    /// `h' = (mu/2) e^beta`, `phi = ((1 + c i)/(2 mu)) e^{-beta}`,
    /// `psi = ((1 - c i)/(2 mu)) e^{-beta}`.
    pub fn alpha_to_gauss(&self) -> Result<GaussData> {
        if self.m != 2 {
            return Err(Error::Codimension(self.m));
        }
        if self.tail == Tail::Lightlike {
            return Err(Error::Degenerate(
                "mu = 0: lightlike branch has no exponential Gauss data".into(),
            ));
        }
        let i = Complex64::new(0.0, 1.0);
        let c = self.c();
        let phi_coeff = (Complex64::new(1.0, 0.0) + c * i) / (2.0 * self.mu);
        let psi_coeff = (Complex64::new(1.0, 0.0) - c * i) / (2.0 * self.mu);
        let r = phi_coeff.norm();
        let theta = phi_coeff.arg();
        let h_coeff = self.mu / 2.0;
        let beta_phi = self.beta.clone();
        let beta_psi = self.beta.clone();
        let beta_h = self.beta.clone();
        Ok(GaussData {
            phi: Arc::new(move |z| Ok(phi_coeff * (-beta_phi.eval(z)?).exp())),
            psi: Arc::new(move |z| Ok(psi_coeff * (-beta_psi.eval(z)?).exp())),
            hprime: Arc::new(move |z| Ok(h_coeff * beta_h.eval(z)?.exp())),
            r,
            theta,
        })
    }
}
