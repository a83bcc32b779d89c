//! Angle-distance scalarization.
//!
//! For a candidate `x*` and threshold `s`, the scalarization is
//!
//! ```text
//! G(x*) = max over y of  sum_i (F_i(y) - F_i(x*)) - s*sqrt(n)*||F(y) - F(x*)||
//! ```
//!
//! The maximum is over the finite decision list, includes `y = x*` (value 0),
//! and is therefore always non-negative. `G(x*) = 0` characterizes weak
//! optimality under the cone `K(s)`; strong optimality additionally requires
//! every maximizer to share the utility vector of `x*`.

use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{Certificate, TestKind, Verdict, Witness, WitnessKind};
use crate::error::{Error, Result};
use crate::problem::FiniteProblem;
use crate::vector::UtilityVector;

/// Maximizers within this absolute gap of the maximum are all collected.
pub const ARGMAX_TIE_TOL: f64 = 1e-9;

/// Utility-space radius within which a maximizer counts as the same point
/// as the candidate.
pub const UNIQUENESS_TOL: f64 = 1e-9;

/// Value and argmax structure of the scalarization at one candidate.
#[derive(Debug, Clone, Serialize)]
pub struct ScalarizationResult {
    pub value: f64,
    /// All decisions attaining the maximum within [`ARGMAX_TIE_TOL`], in
    /// decision-list order.
    pub argmax_ids: Vec<String>,
    /// True when every maximizer's utility vector coincides with the
    /// candidate's within [`UNIQUENESS_TOL`].
    pub unique_in_utility: bool,
}

fn check_threshold(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) || !s.is_finite() {
        return Err(Error::InvalidThreshold(s));
    }
    Ok(())
}

fn gain(target: &UtilityVector, competitor: &UtilityVector, s_root_n: f64) -> f64 {
    let diff = competitor
        .sub(target)
        .expect("problem construction fixes a common dimension");
    diff.sum() - s_root_n * diff.norm()
}

/// Evaluates the scalarization at `xstar_id`.
pub fn g_value(problem: &FiniteProblem, xstar_id: &str, s: f64) -> Result<ScalarizationResult> {
    check_threshold(s)?;
    let target = problem.utility(xstar_id)?;
    let s_root_n = s * (problem.dimension() as f64).sqrt();

    let mut value = f64::NEG_INFINITY;
    for d in problem.decisions() {
        value = value.max(gain(target, &d.utility, s_root_n));
    }

    let mut argmax_ids = Vec::new();
    let mut unique_in_utility = true;
    for d in problem.decisions() {
        if gain(target, &d.utility, s_root_n) >= value - ARGMAX_TIE_TOL {
            if d.utility.sub(target)?.norm() > UNIQUENESS_TOL {
                unique_in_utility = false;
            }
            argmax_ids.push(d.id.clone());
        }
    }
    Ok(ScalarizationResult {
        value,
        argmax_ids,
        unique_in_utility,
    })
}

/// Weak optimality test: `x*` passes iff its scalarization value is zero
/// within `tol`. On failure the witness is a maximizer realizing the
/// positive value, i.e. a weak-improving competitor.
pub fn weak_optimal(
    problem: &FiniteProblem,
    xstar_id: &str,
    s: f64,
    tol: f64,
) -> Result<Certificate> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidTolerance(tol));
    }
    let result = g_value(problem, xstar_id, s)?;
    let verdict = if result.value <= tol {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    let witness = (verdict == Verdict::Fails).then(|| Witness {
        id: result.argmax_ids[0].clone(),
        kind: WitnessKind::InteriorImprovement,
        value: result.value,
    });
    Ok(Certificate {
        test: TestKind::WeakScalarization,
        target_id: xstar_id.to_string(),
        s,
        verdict,
        residual: result.value,
        witness,
    })
}

/// Strong optimality test: the root condition of [`weak_optimal`] plus
/// uniqueness of the maximizer in utility space. The witness distinguishes
/// the two failure causes.
pub fn strong_optimal(
    problem: &FiniteProblem,
    xstar_id: &str,
    s: f64,
    tol: f64,
) -> Result<Certificate> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidTolerance(tol));
    }
    let result = g_value(problem, xstar_id, s)?;
    let target = problem.utility(xstar_id)?;

    let (verdict, witness) = if result.value > tol {
        (
            Verdict::Fails,
            Some(Witness {
                id: result.argmax_ids[0].clone(),
                kind: WitnessKind::InteriorImprovement,
                value: result.value,
            }),
        )
    } else if !result.unique_in_utility {
        let offender = result
            .argmax_ids
            .iter()
            .find(|id| {
                problem
                    .utility(id)
                    .and_then(|u| u.sub(target))
                    .map(|d| d.norm() > UNIQUENESS_TOL)
                    .unwrap_or(false)
            })
            .expect("non-unique argmax contains a distinct-utility maximizer")
            .clone();
        (
            Verdict::Fails,
            Some(Witness {
                id: offender,
                kind: WitnessKind::DistinctUtilityMaximizer,
                value: result.value,
            }),
        )
    } else {
        (Verdict::Holds, None)
    };

    Ok(Certificate {
        test: TestKind::StrongScalarization,
        target_id: xstar_id.to_string(),
        s,
        verdict,
        residual: result.value,
        witness,
    })
}

/// Maximin comparator: `max over y of min_i (F_i(y) - F_i(x*))`.
///
/// Always non-negative, and zero exactly when `x*` is weak Pareto-optimal.
pub fn g1_value(problem: &FiniteProblem, xstar_id: &str) -> Result<f64> {
    let target = problem.utility(xstar_id)?;
    let mut best = f64::NEG_INFINITY;
    for d in problem.decisions() {
        let worst_gain = d
            .utility
            .sub(target)?
            .as_slice()
            .iter()
            .fold(f64::INFINITY, |m, &g| m.min(g));
        best = best.max(worst_gain);
    }
    Ok(best)
}

/// Weak certificates for every decision, in decision-list order.
pub fn weak_optimal_all(problem: &FiniteProblem, s: f64, tol: f64) -> Result<Vec<Certificate>> {
    check_threshold(s)?;
    problem
        .decisions()
        .par_iter()
        .map(|d| weak_optimal(problem, &d.id, s, tol))
        .collect()
}

/// Strong certificates for every decision, in decision-list order.
pub fn strong_optimal_all(problem: &FiniteProblem, s: f64, tol: f64) -> Result<Vec<Certificate>> {
    check_threshold(s)?;
    problem
        .decisions()
        .par_iter()
        .map(|d| strong_optimal(problem, &d.id, s, tol))
        .collect()
}
