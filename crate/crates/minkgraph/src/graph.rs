//! Entire graphs `f: R^2 -> R_1^m`: tangent vectors, induced metric,
//! W-function, stationarity residual and curve length.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::mink::{mink_inner, MinkVector};
use crate::quad;

type Field = Arc<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

/// Partial derivatives of a component: supplied in closed form, or central
/// differences of step `h`.
#[derive(Clone)]
enum Partials {
    Analytic { d1: Field, d2: Field },
    Numeric { h: f64 },
}

/// One scalar component of the graph map.
#[derive(Clone)]
pub struct ScalarField2 {
    value: Field,
    partials: Partials,
}

impl ScalarField2 {
    pub fn analytic(value: Field, d1: Field, d2: Field) -> Self {
        ScalarField2 {
            value,
            partials: Partials::Analytic { d1, d2 },
        }
    }

    pub fn numeric(value: Field, h: f64) -> Self {
        ScalarField2 {
            value,
            partials: Partials::Numeric { h },
        }
    }

    /// Closed-form component from a real expression in `x1`, `x2`
    /// (symbolic partials).
    pub fn from_expr(e: &Expr) -> Self {
        let d1 = e.derive_var(0);
        let d2 = e.derive_var(1);
        let evalr = |e: Expr| -> Field {
            Arc::new(move |x1: f64, x2: f64| {
                let v = e.eval_vars(&[x1.into(), x2.into()])?;
                Ok(v.re)
            })
        };
        ScalarField2::analytic(evalr(e.clone()), evalr(d1), evalr(d2))
    }

    pub fn value(&self, x1: f64, x2: f64) -> Result<f64> {
        let v = (self.value)(x1, x2)?;
        if !v.is_finite() {
            return Err(Error::Evaluation(format!(
                "non-finite field value at ({x1}, {x2})"
            )));
        }
        Ok(v)
    }

    pub fn d1(&self, x1: f64, x2: f64) -> Result<f64> {
        match &self.partials {
            Partials::Analytic { d1, .. } => d1(x1, x2),
            Partials::Numeric { h } => {
                Ok((self.value(x1 + h, x2)? - self.value(x1 - h, x2)?) / (2.0 * h))
            }
        }
    }

    pub fn d2(&self, x1: f64, x2: f64) -> Result<f64> {
        match &self.partials {
            Partials::Analytic { d2, .. } => d2(x1, x2),
            Partials::Numeric { h } => {
                Ok((self.value(x1, x2 + h)? - self.value(x1, x2 - h)?) / (2.0 * h))
            }
        }
    }
}

/// An entire graph `f: R^2 -> R_1^m` given by `m` scalar components.
#[derive(Clone)]
pub struct GraphSurface {
    components: Vec<ScalarField2>,
}

/// Metric data of the graph at one base point.
#[derive(Debug, Clone, Copy)]
pub struct MetricSample {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub spacelike: bool,
    /// `sqrt(det g)`, present only when spacelike.
    pub w: Option<f64>,
    /// Inverse metric, present only when spacelike.
    pub ginv: Option<[[f64; 2]; 2]>,
}

/// Length of a curve computed on a truncated range together with an
/// analytic bound on the omitted tails.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedLength {
    pub value: f64,
    pub half_range: f64,
    pub tail_bound: f64,
}

impl GraphSurface {
    pub fn new(components: Vec<ScalarField2>) -> Self {
        assert!(!components.is_empty(), "codimension must be at least 1");
        GraphSurface { components }
    }

    /// The zero map (graph is the coordinate plane).
    pub fn zero(m: usize) -> Self {
        let mk = || -> ScalarField2 {
            ScalarField2::analytic(
                Arc::new(|_, _| Ok(0.0)),
                Arc::new(|_, _| Ok(0.0)),
                Arc::new(|_, _| Ok(0.0)),
            )
        };
        GraphSurface::new((0..m).map(|_| mk()).collect())
    }

    /// Graph of `f = h * y0` for a scalar field `h` and a fixed direction
    /// `y0` in `R_1^m`.
    pub fn directed(h: ScalarField2, y0: &MinkVector) -> Self {
        let comps = y0
            .0
            .iter()
            .map(|&c| {
                let hh = h.clone();
                let hd = h.clone();
                let he = h.clone();
                ScalarField2::analytic(
                    Arc::new(move |x1, x2| Ok(c * hh.value(x1, x2)?)),
                    Arc::new(move |x1, x2| Ok(c * hd.d1(x1, x2)?)),
                    Arc::new(move |x1, x2| Ok(c * he.d2(x1, x2)?)),
                )
            })
            .collect();
        GraphSurface::new(comps)
    }

    /// Components from closed-form expressions in `x1`, `x2`.
    pub fn from_exprs(exprs: &[Expr]) -> Self {
        GraphSurface::new(exprs.iter().map(ScalarField2::from_expr).collect())
    }

    pub fn codim(&self) -> usize {
        self.components.len()
    }

    pub fn value(&self, x1: f64, x2: f64) -> Result<Vec<f64>> {
        self.components.iter().map(|c| c.value(x1, x2)).collect()
    }

    /// Tangent vectors `p = df/dx1`, `q = df/dx2` in `R_1^m`.
    pub fn jacobian(&self, x1: f64, x2: f64) -> Result<(MinkVector, MinkVector)> {
        let mut p = Vec::with_capacity(self.codim());
        let mut q = Vec::with_capacity(self.codim());
        for c in &self.components {
            let a = c.d1(x1, x2)?;
            let b = c.d2(x1, x2)?;
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::Evaluation(format!(
                    "non-finite derivative at ({x1}, {x2})"
                )));
            }
            p.push(a);
            q.push(b);
        }
        Ok((MinkVector(p), MinkVector(q)))
    }

    /// Induced metric `g11 = 1 + <p,p>`, `g22 = 1 + <q,q>`, `g12 = <p,q>`.
    ///
    /// A non-spacelike point is not an error; `w` and `ginv` are simply
    /// absent there.
    pub fn metric_at(&self, x1: f64, x2: f64) -> Result<MetricSample> {
        let (p, q) = self.jacobian(x1, x2)?;
        let g11 = 1.0 + mink_inner(&p, &p)?;
        let g22 = 1.0 + mink_inner(&q, &q)?;
        let g12 = mink_inner(&p, &q)?;
        let det = g11 * g22 - g12 * g12;
        let spacelike = g11 > 0.0 && det > 0.0;
        let (w, ginv) = if spacelike {
            let w = det.sqrt();
            let inv = [[g22 / det, -g12 / det], [-g12 / det, g11 / det]];
            (Some(w), Some(inv))
        } else {
            (None, None)
        };
        Ok(MetricSample {
            g11,
            g12,
            g22,
            spacelike,
            w,
            ginv,
        })
    }

    fn flux_at(&self, x1: f64, x2: f64) -> Result<([[f64; 2]; 2], Vec<[f64; 2]>)> {
        let m = self.metric_at(x1, x2)?;
        let w = m.w.ok_or(Error::NotSpacelike(x1, x2))?;
        let ginv = m.ginv.unwrap();
        let mut flux = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                flux[i][j] = w * ginv[i][j];
            }
        }
        let (p, q) = self.jacobian(x1, x2)?;
        // G[a][i] = sum_j W g^{ij} d_j f_a
        let mut g = Vec::with_capacity(self.codim());
        for a in 0..self.codim() {
            let d = [p.0[a], q.0[a]];
            g.push([
                flux[0][0] * d[0] + flux[0][1] * d[1],
                flux[1][0] * d[0] + flux[1][1] * d[1],
            ]);
        }
        Ok((flux, g))
    }

    /// Divergence-form residual of the stationary-surface system at `x`,
    /// by central differences of step `h` on the composite flux fields.
    ///
    /// Entries `0..2` are `sum_i d_i(W g^{ij})`; entries `2..2+m` are
    /// `sum_{i,j} d_i(W g^{ij} d_j f_a)`. For an exactly stationary graph
    /// the residual is `O(h^2)`.
    pub fn stationarity_residual(&self, x1: f64, x2: f64, h: f64) -> Result<Vec<f64>> {
        if !(h > 0.0) {
            return Err(Error::InvalidData("step h must be positive".into()));
        }
        let m = self.codim();
        let (fe, ge) = self.flux_at(x1 + h, x2)?;
        let (fw, gw) = self.flux_at(x1 - h, x2)?;
        let (fn_, gn) = self.flux_at(x1, x2 + h)?;
        let (fs, gs) = self.flux_at(x1, x2 - h)?;
        let inv2h = 1.0 / (2.0 * h);
        let mut res = Vec::with_capacity(2 + m);
        for j in 0..2 {
            res.push((fe[0][j] - fw[0][j]) * inv2h + (fn_[1][j] - fs[1][j]) * inv2h);
        }
        for a in 0..m {
            res.push((ge[a][0] - gw[a][0]) * inv2h + (gn[a][1] - gs[a][1]) * inv2h);
        }
        Ok(res)
    }

    /// Length of a `C^1` curve `t -> (x1(t), x2(t))` in the induced metric,
    /// by adaptive quadrature to absolute tolerance `tol`.
    ///
    /// The path closure returns position and velocity.
    pub fn curve_length<P>(&self, path: P, t0: f64, t1: f64, tol: f64) -> Result<f64>
    where
        P: Fn(f64) -> ([f64; 2], [f64; 2]),
    {
        quad::integrate_real(
            |t| {
                let (x, v) = path(t);
                let m = self.metric_at(x[0], x[1])?;
                if !m.spacelike {
                    return Err(Error::NotSpacelike(x[0], x[1]));
                }
                let s = m.g11 * v[0] * v[0] + 2.0 * m.g12 * v[0] * v[1] + m.g22 * v[1] * v[1];
                Ok(s.max(0.0).sqrt())
            },
            t0,
            t1,
            tol,
        )
    }

    /// Length over `[-T, T]` with a caller-supplied analytic bound on the
    /// omitted improper tails.
    pub fn curve_length_truncated<P>(
        &self,
        path: P,
        half_range: f64,
        tail_bound: f64,
        tol: f64,
    ) -> Result<TruncatedLength>
    where
        P: Fn(f64) -> ([f64; 2], [f64; 2]),
    {
        let value = self.curve_length(path, -half_range, half_range, tol)?;
        Ok(TruncatedLength {
            value,
            half_range,
            tail_bound,
        })
    }
}
