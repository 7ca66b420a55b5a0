//! Minkowski linear algebra over `R_1^n`.
//!
//! The signature convention throughout the crate: coordinates `1..n-1` are
//! spacelike and the last coordinate is timelike, so
//! `<u,v> = u_1 v_1 + ... + u_{n-1} v_{n-1} - u_n v_n`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point or vector in the Minkowski space `R_1^n`, last coordinate timelike.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkVector(pub Vec<f64>);

/// Causal type of a vector with respect to the Minkowski inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

impl MinkVector {
    pub fn new(coords: Vec<f64>) -> Self {
        assert!(coords.len() >= 1, "MinkVector needs at least one coordinate");
        MinkVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        MinkVector(vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, s: f64) -> Self {
        MinkVector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &MinkVector) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(self.dim(), other.dim()));
        }
        Ok(MinkVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `<u,u>` classification with scale-aware tolerance `tau`.
    pub fn causal_class(&self, tau: f64) -> CausalClass {
        let s = mink_inner(self, self).expect("same vector");
        causal_class_of(s, tau)
    }
}

/// The Minkowski inner product `u_1 v_1 + ... + u_{n-1} v_{n-1} - u_n v_n`.
pub fn mink_inner(u: &MinkVector, v: &MinkVector) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::Dimension(u.dim(), v.dim()));
    }
    let n = u.dim();
    let mut s = 0.0;
    for k in 0..n - 1 {
        s += u.0[k] * v.0[k];
    }
    s -= u.0[n - 1] * v.0[n - 1];
    Ok(s)
}

/// Sesquilinear Minkowski pairing of complex vectors, `<u, conj(v)>` taken
/// componentwise as `sum u_k conj(v_k)` with the last term negated.
pub fn mink_inner_complex(u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    if u.len() != v.len() {
        return Err(Error::Dimension(u.len(), v.len()));
    }
    let n = u.len();
    let mut s = Complex64::new(0.0, 0.0);
    for k in 0..n - 1 {
        s += u[k] * v[k];
    }
    s -= u[n - 1] * v[n - 1];
    Ok(s)
}

/// Classify a self-inner-product value: lightlike iff `|s| <= tau`.
pub fn causal_class_of(s: f64, tau: f64) -> CausalClass {
    if s.abs() <= tau {
        CausalClass::Lightlike
    } else if s > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

/// Default scale-aware tolerance for causal classification.
pub fn default_causal_tau(scale: f64) -> f64 {
    1e-12 * (1.0 + scale.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_lightlike_r12() {
        let u = MinkVector::new(vec![1.0, 1.0]);
        assert_eq!(mink_inner(&u, &u).unwrap(), 0.0);
    }

    #[test]
    fn inner_unit_timelike() {
        let u = MinkVector::new(vec![0.0, 0.0, 1.0]);
        assert_eq!(mink_inner(&u, &u).unwrap(), -1.0);
    }

    #[test]
    fn inner_direct_arithmetic() {
        let u = MinkVector::new(vec![1.0, 2.0, 3.0]);
        let v = MinkVector::new(vec![4.0, 5.0, 6.0]);
        assert_eq!(mink_inner(&u, &v).unwrap(), 4.0 + 10.0 - 18.0);
    }

    #[test]
    fn dimension_mismatch() {
        let u = MinkVector::new(vec![1.0, 2.0]);
        let v = MinkVector::new(vec![1.0, 2.0, 3.0]);
        assert!(matches!(mink_inner(&u, &v), Err(Error::Dimension(2, 3))));
    }

    #[test]
    fn classification() {
        assert_eq!(
            MinkVector::new(vec![1.0, 1.0]).causal_class(0.0),
            CausalClass::Lightlike
        );
        assert_eq!(
            MinkVector::new(vec![1.0, 0.0]).causal_class(0.0),
            CausalClass::Spacelike
        );
        assert_eq!(
            MinkVector::new(vec![0.0, 0.0, 5.0]).causal_class(0.0),
            CausalClass::Timelike
        );
    }
}
