//! Points and increments of utility space.

use serde::Serialize;

use crate::error::{Error, Result};

/// Euclidean norms below this are treated as the zero vector.
pub const ZERO_TOL: f64 = 1e-12;

/// Two utility vectors closer than this in the max norm count as equal.
pub const EQUALITY_TOL: f64 = 1e-12;

/// A point of utility space: one real value per objective.
///
/// The length is fixed at construction and equals the objective dimension
/// `n >= 2`; every component must be finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UtilityVector(Vec<f64>);

impl UtilityVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::DimensionTooSmall(components.len()));
        }
        for (i, c) in components.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite(i));
            }
        }
        Ok(Self(components))
    }

    /// The normalized all-ones direction `(1/sqrt(n), ..., 1/sqrt(n))`.
    pub fn ideal_direction(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let c = 1.0 / (n as f64).sqrt();
        Ok(Self(vec![c; n]))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.norm() <= ZERO_TOL
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }

    /// Max-norm equality test at the given tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .0
                .iter()
                .zip(other.0.iter())
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for UtilityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for UtilityVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}
