//! Euclidean preference cones: angles, membership, duality, family bounds.
//!
//! A Euclidean cone `K(q, s)` with unit axis `q` and threshold `s` in (0, 1)
//! is the set of vectors whose angle with `q` has cosine at least `s`,
//! together with the origin. The preference family used for multi-objective
//! comparison fixes the axis to the ideal direction `r` and lets `s` range
//! over `[1/sqrt(n), sqrt(n-1)/sqrt(n)]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::{UtilityVector, EQUALITY_TOL, ZERO_TOL};

/// Default tolerance on the cosine scale for membership classification.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

/// Cosine of the angle between two non-zero vectors, clamped to `[-1, 1]`.
///
/// Rounding can push the raw ratio slightly outside the unit interval, which
/// would break downstream `acos`/`sqrt(1 - c^2)` uses, hence the clamp.
pub fn cos_angle(x: &UtilityVector, y: &UtilityVector) -> Result<f64> {
    let (nx, ny) = (x.norm(), y.norm());
    if nx <= ZERO_TOL || ny <= ZERO_TOL {
        return Err(Error::ZeroVector);
    }
    let c = x.dot(y)? / (nx * ny);
    Ok(c.clamp(-1.0, 1.0))
}

/// Discrepancy of `x` from the axis direction: the norm of the component of
/// `x` orthogonal to `axis` per unit of its axial component, i.e. the tangent
/// of the angle between them.
///
/// Returns `f64::INFINITY` when the axial projection is not positive; the
/// measure is only meaningful relative to a positive axial part, and the
/// sentinel keeps threshold sweeps total.
pub fn discrepancy_tan(x: &UtilityVector, axis: &UtilityVector) -> Result<f64> {
    let c = cos_angle(x, axis)?;
    if c <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((1.0 - c * c).max(0.0).sqrt() / c)
}

/// Threshold corresponding to a discrepancy limit: `s = 1/sqrt(a^2 + 1)`.
pub fn threshold_from_discrepancy(a: f64) -> f64 {
    1.0 / (a * a + 1.0).sqrt()
}

/// Discrepancy limit corresponding to a threshold: `a = sqrt(1 - s^2)/s`.
pub fn discrepancy_from_threshold(s: f64) -> f64 {
    (1.0 - s * s).max(0.0).sqrt() / s
}

/// How a vector sits relative to a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipClass {
    /// The zero vector; a member of every cone by convention.
    Zero,
    Interior,
    Boundary,
    Exterior,
}

/// Classification outcome; `cosine` is `None` for the zero vector, whose
/// angle with the axis is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Membership {
    pub class: MembershipClass,
    pub cosine: Option<f64>,
}

impl Membership {
    /// Zero, interior, and boundary vectors are all members.
    pub fn is_member(&self) -> bool {
        self.class != MembershipClass::Exterior
    }
}

/// Whether an improvement must enter the cone or its interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weak,
    Strong,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::Strong),
            other => Err(format!("unknown mode `{other}`; expected weak|strong")),
        }
    }
}

/// A Euclidean cone `{x : cos(x, axis) >= s} ∪ {0}` with unit axis and
/// threshold `s` in (0, 1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EuclideanCone {
    axis: UtilityVector,
    s: f64,
}

impl EuclideanCone {
    /// Builds a cone around an arbitrary unit axis.
    pub fn new(axis: UtilityVector, s: f64) -> Result<Self> {
        let norm = axis.norm();
        if (norm - 1.0).abs() > ZERO_TOL {
            return Err(Error::NonUnitAxis(norm));
        }
        if !(s > 0.0 && s < 1.0) || !s.is_finite() {
            return Err(Error::InvalidThreshold(s));
        }
        Ok(Self { axis, s })
    }

    /// Builds `K(s)`: the cone around the ideal direction in dimension `n`.
    pub fn with_ideal_axis(n: usize, s: f64) -> Result<Self> {
        Self::new(UtilityVector::ideal_direction(n)?, s)
    }

    pub fn axis(&self) -> &UtilityVector {
        &self.axis
    }

    pub fn threshold(&self) -> f64 {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.axis.dim()
    }

    /// The dual cone: same axis, threshold `sqrt(1 - s^2)`.
    pub fn dual(&self) -> Self {
        Self {
            axis: self.axis.clone(),
            s: (1.0 - self.s * self.s).sqrt(),
        }
    }

    /// Classifies `x` against the cone with the given cosine tolerance.
    pub fn classify(&self, x: &UtilityVector, tol: f64) -> Result<Membership> {
        if tol <= 0.0 || !tol.is_finite() {
            return Err(Error::InvalidTolerance(tol));
        }
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        if x.norm() <= ZERO_TOL {
            return Ok(Membership {
                class: MembershipClass::Zero,
                cosine: None,
            });
        }
        let c = cos_angle(x, &self.axis)?;
        let class = if c > self.s + tol {
            MembershipClass::Interior
        } else if (c - self.s).abs() <= tol {
            MembershipClass::Boundary
        } else {
            MembershipClass::Exterior
        };
        Ok(Membership {
            class,
            cosine: Some(c),
        })
    }

    pub fn classify_default(&self, x: &UtilityVector) -> Result<Membership> {
        self.classify(x, DEFAULT_MEMBERSHIP_TOL)
    }

    pub fn contains(&self, x: &UtilityVector, tol: f64) -> Result<bool> {
        Ok(self.classify(x, tol)?.is_member())
    }

    /// Does moving `from -> to` improve in the cone order?
    ///
    /// Strong mode asks for a genuine cone member: `to != from` in utility
    /// space and `to - from` in the cone. Weak mode asks for an interior
    /// increment.
    pub fn is_improvement(
        &self,
        from: &UtilityVector,
        to: &UtilityVector,
        mode: Mode,
        tol: f64,
    ) -> Result<bool> {
        let diff = to.sub(from)?;
        match mode {
            Mode::Weak => Ok(self.classify(&diff, tol)?.class == MembershipClass::Interior),
            Mode::Strong => {
                if diff.norm_inf() <= EQUALITY_TOL {
                    return Ok(false);
                }
                Ok(self.classify(&diff, tol)?.is_member())
            }
        }
    }
}

/// Admissible threshold interval for the preference family in dimension `n`.
///
/// The widest admissible cone `K_U = K(s_min)` circumscribes the Pareto
/// orthant (its boundary passes through the orts); the narrowest `K_L =
/// K(s_max)` is inscribed in it (its boundary passes through the projections
/// of the ideal direction onto the coordinate hyperplanes).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeFamilyBounds {
    pub n: usize,
    pub s_min: f64,
    pub s_max: f64,
}

impl ConeFamilyBounds {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let root_n = (n as f64).sqrt();
        Ok(Self {
            n,
            s_min: 1.0 / root_n,
            s_max: ((n - 1) as f64).sqrt() / root_n,
        })
    }

    /// Whether `s` lies in the closed admissible interval.
    pub fn admits(&self, s: f64) -> bool {
        s >= self.s_min && s <= self.s_max
    }

    /// The widest cone of the family, `K_U = K(1/sqrt(n))`.
    pub fn upper_cone(&self) -> EuclideanCone {
        EuclideanCone::with_ideal_axis(self.n, self.s_min)
            .expect("family bounds always yield a valid threshold")
    }

    /// The narrowest cone of the family, `K_L = K(sqrt(n-1)/sqrt(n))`.
    pub fn lower_cone(&self) -> EuclideanCone {
        EuclideanCone::with_ideal_axis(self.n, self.s_max)
            .expect("family bounds always yield a valid threshold")
    }

    /// The unique self-dual member, `K(1/sqrt(2))`.
    pub fn self_dual_cone(&self) -> EuclideanCone {
        EuclideanCone::with_ideal_axis(self.n, std::f64::consts::FRAC_1_SQRT_2)
            .expect("1/sqrt(2) lies in (0, 1)")
    }
}

/// Convenience constructor mirroring [`ConeFamilyBounds::new`].
pub fn family_bounds(n: usize) -> Result<ConeFamilyBounds> {
    ConeFamilyBounds::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv(c: &[f64]) -> UtilityVector {
        UtilityVector::new(c.to_vec()).unwrap()
    }

    fn r(n: usize) -> UtilityVector {
        UtilityVector::ideal_direction(n).unwrap()
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(cos_angle(&r(4), &r(4)).unwrap(), 1.0);
        let c = cos_angle(&uv(&[1.0, 1.0, 2.0, 2.0]), &r(4)).unwrap();
        assert!((c - 6.0 / 40f64.sqrt()).abs() <= 1e-12);
        let c = cos_angle(&uv(&[-1.0, 1.0, 1.0, 1.0]), &r(4)).unwrap();
        assert!((c - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn cosine_rejects_zero_and_mismatch() {
        assert!(matches!(
            cos_angle(&uv(&[0.0, 0.0]), &r(2)),
            Err(Error::ZeroVector)
        ));
        assert!(cos_angle(&uv(&[1.0, 0.0]), &r(3)).is_err());
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(discrepancy_tan(&r(4), &r(4)).unwrap(), 0.0);
        let t = discrepancy_tan(&uv(&[-1.0, 1.0, 1.0, 1.0]), &r(4)).unwrap();
        assert!((t - 3f64.sqrt()).abs() <= 1e-12);
        assert!(discrepancy_tan(&uv(&[1.0, -1.0, 0.0, 0.0]), &r(4))
            .unwrap()
            .is_infinite());
        // tangent/threshold conversions are mutually inverse
        let s = 0.73;
        assert!((threshold_from_discrepancy(discrepancy_from_threshold(s)) - s).abs() <= 1e-15);
    }

    #[test]
    fn discrepancy_matches_explicit_projections() {
        // split x into axial and orthogonal parts and compare norms directly
        let x = uv(&[-1.0, 1.0, 1.0, 1.0]);
        let axis = r(4);
        let axial = axis.scale(x.dot(&axis).unwrap());
        let ortho = x.sub(&axial).unwrap();
        let expected = ortho.norm() / axial.norm();
        let got = discrepancy_tan(&x, &axis).unwrap();
        assert!((got - expected).abs() <= 1e-12);
    }

    #[test]
    fn family_bounds_values() {
        let b2 = family_bounds(2).unwrap();
        assert!((b2.s_min - b2.s_max).abs() <= 1e-15);
        assert!((b2.s_min - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);

        let b4 = family_bounds(4).unwrap();
        assert!((b4.s_min - 0.5).abs() <= 1e-15);
        assert!((b4.s_max - 3f64.sqrt() / 2.0).abs() <= 1e-15);

        let b3 = family_bounds(3).unwrap();
        assert!((b3.s_min - 1.0 / 3f64.sqrt()).abs() <= 1e-15);
        assert!((b3.s_max - 2f64.sqrt() / 3f64.sqrt()).abs() <= 1e-15);

        assert!(matches!(family_bounds(1), Err(Error::DimensionTooSmall(1))));
    }

    #[test]
    fn classify_examples() {
        let b4 = family_bounds(4).unwrap();
        let k_l = b4.lower_cone();
        let k_u = b4.upper_cone();

        let m = k_l.classify_default(&uv(&[1.0, 1.0, 2.0, 2.0])).unwrap();
        assert_eq!(m.class, MembershipClass::Interior);

        let m = k_u.classify_default(&uv(&[-1.0, 1.0, 1.0, 1.0])).unwrap();
        assert_eq!(m.class, MembershipClass::Boundary);

        let m = k_l.classify_default(&uv(&[0.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(m.class, MembershipClass::Zero);
        assert!(m.is_member());
        assert!(m.cosine.is_none());

        // two vanishing components expel a vector from the narrow cone
        let m = k_l.classify_default(&uv(&[0.0, 0.0, 1.0, 1.0])).unwrap();
        assert_eq!(m.class, MembershipClass::Exterior);
    }

    #[test]
    fn dual_examples() {
        let b4 = family_bounds(4).unwrap();
        let k_u = b4.upper_cone();
        let dual = k_u.dual();
        assert!((dual.threshold() - b4.s_max).abs() <= 1e-15);

        let k = EuclideanCone::with_ideal_axis(5, 0.37).unwrap();
        let back = k.dual().dual();
        assert!((back.threshold() - 0.37).abs() <= 1e-12);

        let self_dual = b4.self_dual_cone();
        assert!((self_dual.dual().threshold() - self_dual.threshold()).abs() <= 1e-12);
    }

    #[test]
    fn improvement_examples() {
        let k_u3 = family_bounds(3).unwrap().upper_cone();
        let from = uv(&[1.0, 0.0, 0.0]);
        let to = uv(&[1.0, 1.0, 1.0]);
        assert!(k_u3
            .is_improvement(&from, &to, Mode::Weak, DEFAULT_MEMBERSHIP_TOL)
            .unwrap());
        assert!(k_u3
            .is_improvement(&from, &to, Mode::Strong, DEFAULT_MEMBERSHIP_TOL)
            .unwrap());

        // equal utilities are never a strong improvement
        assert!(!k_u3
            .is_improvement(&to, &to, Mode::Strong, DEFAULT_MEMBERSHIP_TOL)
            .unwrap());

        // a boundary increment improves strongly but not weakly
        let k_u4 = family_bounds(4).unwrap().upper_cone();
        let zero = uv(&[0.0, 0.0, 0.0, 0.0]);
        let boundary = uv(&[-1.0, 1.0, 1.0, 1.0]);
        assert!(!k_u4
            .is_improvement(&zero, &boundary, Mode::Weak, DEFAULT_MEMBERSHIP_TOL)
            .unwrap());
        assert!(k_u4
            .is_improvement(&zero, &boundary, Mode::Strong, DEFAULT_MEMBERSHIP_TOL)
            .unwrap());
    }

    #[test]
    fn cone_constructor_validation() {
        assert!(matches!(
            EuclideanCone::new(uv(&[1.0, 1.0]), 0.5),
            Err(Error::NonUnitAxis(_))
        ));
        assert!(matches!(
            EuclideanCone::with_ideal_axis(3, 1.0),
            Err(Error::InvalidThreshold(_))
        ));
        assert!(matches!(
            EuclideanCone::with_ideal_axis(3, 0.0),
            Err(Error::InvalidThreshold(_))
        ));
    }
}
