//! Certificates: the outcome of an optimality test, with residuals and a
//! witness when the verdict is negative or informative.

use serde::Serialize;

use crate::cone::Membership;
use crate::vector::UtilityVector;

/// Three-valued verdict plus an "unsupported" state for claims whose
/// hypotheses were not met.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The tested property holds.
    Holds,
    /// The tested property fails; see the witness.
    Fails,
    /// A strict inequality fell inside the tolerance band and cannot be
    /// resolved in floating point.
    Marginal,
    /// The claim's hypothesis (e.g. an interior weight) was not satisfied,
    /// so nothing is asserted.
    Unsupported,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        *self == Verdict::Holds
    }
}

/// Which test produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestKind {
    /// Root test of the angle-distance scalarization (weak optimality).
    WeakScalarization,
    /// Root test plus maximizer uniqueness in utility space.
    StrongScalarization,
    /// Cross-product test for weak optimality under the widest cone.
    WeakUpperCross,
    /// Cross-product test for optimality under the widest cone.
    StrongUpperCross,
}

/// Why a certificate failed, attached to its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// A competitor whose increment enters the cone interior.
    InteriorImprovement,
    /// A maximizer of the scalarization with a distinct utility vector.
    DistinctUtilityMaximizer,
    /// A competitor with positive gain sum and positive cross term.
    CrossViolation,
    /// A competitor whose cross term fell inside the tolerance band.
    MarginalCross,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub id: String,
    pub kind: WitnessKind,
    /// The quantity that triggered the witness (scalarization gain or cross
    /// term, depending on the test).
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub test: TestKind,
    pub target_id: String,
    /// Cone threshold the test ran against.
    pub s: f64,
    pub verdict: Verdict,
    /// Primary residual: the scalarization value for root tests, the
    /// extremal cross term for cross-product tests.
    pub residual: f64,
    pub witness: Option<Witness>,
}

/// Outcome of cone-weighted linear scalarization: the maximizers of
/// `<lambda, F(x)>` and whether the optimality claim for them is supported
/// by an interior weight.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedCertificate {
    pub s: f64,
    pub lambda: UtilityVector,
    pub weight_membership: Membership,
    /// `Holds` when the weight is interior to the dual cone and the
    /// maximizers are therefore optimal; `Unsupported` otherwise.
    pub verdict: Verdict,
    pub maximizer_ids: Vec<String>,
    pub best_value: f64,
}
