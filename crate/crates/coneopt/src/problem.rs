//! Problem instances: explicit finite decision lists and smooth boxed
//! problems with differentiable objectives.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand::SeedableRng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::UtilityVector;

/// One admissible decision: a label, the raw decision point (arbitrary
/// arity, possibly empty for abstract instances), and its utility vector.
#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub id: String,
    pub point: Vec<f64>,
    pub utility: UtilityVector,
}

/// A finite decision set with precomputed utilities.
#[derive(Debug, Clone)]
pub struct FiniteProblem {
    n: usize,
    decisions: Vec<Decision>,
    index: HashMap<String, usize>,
    provenance: String,
}

impl FiniteProblem {
    pub fn new(n: usize, decisions: Vec<Decision>, provenance: impl Into<String>) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if decisions.is_empty() {
            return Err(Error::EmptyProblem);
        }
        let mut index = HashMap::with_capacity(decisions.len());
        for (i, d) in decisions.iter().enumerate() {
            if d.utility.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: d.utility.dim(),
                });
            }
            if index.insert(d.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(d.id.clone()));
            }
        }
        Ok(Self {
            n,
            decisions,
            index,
            provenance: provenance.into(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.decisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decisions.is_empty()
    }

    pub fn decisions(&self) -> &[Decision] {
        &self.decisions
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn get(&self, id: &str) -> Option<&Decision> {
        self.index.get(id).map(|&i| &self.decisions[i])
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownDecision(id.to_string()))
    }

    pub fn utility(&self, id: &str) -> Result<&UtilityVector> {
        Ok(&self.decisions[self.index_of(id)?].utility)
    }
}

/// Uniform i.i.d. utilities in `range`, `count` decisions labeled
/// `p0..p{count-1}`; deterministic for a given seed.
pub fn generate_random(
    n: usize,
    count: usize,
    seed: u64,
    range: (f64, f64),
) -> Result<FiniteProblem> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if count == 0 {
        return Err(Error::EmptyProblem);
    }
    let (lo, hi) = range;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidBox(0));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut decisions = Vec::with_capacity(count);
    for i in 0..count {
        let comps: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        decisions.push(Decision {
            id: format!("p{i}"),
            point: Vec::new(),
            utility: UtilityVector::new(comps)?,
        });
    }
    FiniteProblem::new(
        n,
        decisions,
        format!("random(n={n},count={count},seed={seed},range=[{lo},{hi}])"),
    )
}

type Objectives = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;
type JacobianFn = dyn Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync;

/// Relative margin used for strict interiority checks against the box.
pub const INTERIOR_MARGIN: f64 = 1e-9;

/// A boxed decision set with `n` differentiable objectives of `k` variables.
///
/// Evaluators must be reentrant: they are called concurrently and must not
/// carry hidden mutable state. An evaluation counter tracks how many times
/// the objectives were computed.
#[derive(Clone)]
pub struct SmoothProblem {
    name: String,
    k: usize,
    n: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objectives: Arc<Objectives>,
    jacobian: Option<Arc<JacobianFn>>,
    evals: Arc<AtomicU64>,
}

impl std::fmt::Debug for SmoothProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothProblem")
            .field("name", &self.name)
            .field("k", &self.k)
            .field("n", &self.n)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .finish()
    }
}

impl SmoothProblem {
    pub fn new(
        name: impl Into<String>,
        k: usize,
        n: usize,
        lower: Vec<f64>,
        upper: Vec<f64>,
        objectives: Arc<Objectives>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if k == 0 || lower.len() != k || upper.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: lower.len().min(upper.len()),
            });
        }
        for j in 0..k {
            if !(lower[j] < upper[j]) || !lower[j].is_finite() || !upper[j].is_finite() {
                return Err(Error::InvalidBox(j));
            }
        }
        Ok(Self {
            name: name.into(),
            k,
            n,
            lower,
            upper,
            objectives,
            jacobian: None,
            evals: Arc::new(AtomicU64::new(0)),
        })
    }

    /// Attaches an analytic Jacobian and validates it against central
    /// differences at 10 seeded interior points before accepting it.
    pub fn with_jacobian(mut self, jacobian: Arc<JacobianFn>) -> Result<Self> {
        self.jacobian = Some(jacobian);
        self.validate_jacobian(10, 0xC0FFEE, 1e-5)?;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decision_dim(&self) -> usize {
        self.k
    }

    pub fn objective_dim(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn has_analytic_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn eval_count(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }

    /// Evaluates the objective vector, counting the evaluation.
    pub fn evaluate(&self, x: &[f64]) -> Result<UtilityVector> {
        if x.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: x.len(),
            });
        }
        self.evals.fetch_add(1, Ordering::Relaxed);
        let values = (self.objectives)(x);
        debug_assert_eq!(values.len(), self.n);
        UtilityVector::new(values)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.k
            && (0..self.k).all(|j| x[j] >= self.lower[j] && x[j] <= self.upper[j])
    }

    /// Strict interiority with a margin of `INTERIOR_MARGIN` of each box
    /// width.
    pub fn is_interior(&self, x: &[f64]) -> bool {
        x.len() == self.k
            && (0..self.k).all(|j| {
                let margin = INTERIOR_MARGIN * (self.upper[j] - self.lower[j]);
                x[j] > self.lower[j] + margin && x[j] < self.upper[j] - margin
            })
    }

    /// Analytic Jacobian rows at `x`, without falling back to differences.
    pub(crate) fn analytic_jacobian(&self, x: &[f64]) -> Option<Vec<Vec<f64>>> {
        self.jacobian.as_ref().map(|j| j(x))
    }

    /// Central-difference Jacobian with per-coordinate step
    /// `max(1e-6, 1e-7 * (1 + |x_j|))`.
    pub fn finite_difference_jacobian(&self, x: &[f64]) -> Result<Vec<Vec<f64>>> {
        if x.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: x.len(),
            });
        }
        let mut rows = vec![vec![0.0; self.k]; self.n];
        let mut probe = x.to_vec();
        for j in 0..self.k {
            let h = (1e-7 * (1.0 + x[j].abs())).max(1e-6);
            probe[j] = x[j] + h;
            let plus = self.evaluate(&probe)?;
            probe[j] = x[j] - h;
            let minus = self.evaluate(&probe)?;
            probe[j] = x[j];
            for i in 0..self.n {
                rows[i][j] = (plus[i] - minus[i]) / (2.0 * h);
            }
        }
        Ok(rows)
    }

    fn validate_jacobian(&self, points: usize, seed: u64, tol: f64) -> Result<()> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for _ in 0..points {
            let x: Vec<f64> = (0..self.k)
                .map(|j| {
                    let w = self.upper[j] - self.lower[j];
                    // keep clear of the box walls so central differences stay honest
                    rng.random_range(self.lower[j] + 0.05 * w..self.upper[j] - 0.05 * w)
                })
                .collect();
            let analytic = self
                .analytic_jacobian(&x)
                .expect("validate_jacobian is only called with a jacobian attached");
            let numeric = self.finite_difference_jacobian(&x)?;
            let scale = analytic
                .iter()
                .flatten()
                .fold(1.0f64, |m, v| m.max(v.abs()));
            for i in 0..self.n {
                for j in 0..self.k {
                    let rel = (analytic[i][j] - numeric[i][j]).abs() / scale;
                    if rel > tol {
                        return Err(Error::JacobianMismatch {
                            point: x,
                            row: i,
                            col: j,
                            rel,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Discretizes the box on a rectangular grid, row-major over axes in
    /// declaration order, with ids `g0..g{M-1}`. Each node is evaluated
    /// exactly once.
    pub fn grid(&self, resolution: &[usize]) -> Result<FiniteProblem> {
        if resolution.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: resolution.len(),
            });
        }
        for &res in resolution {
            if res < 2 {
                return Err(Error::BadGridResolution(res));
            }
        }
        let total: usize = resolution.iter().product();
        let mut decisions = Vec::with_capacity(total);
        let mut indices = vec![0usize; self.k];
        for m in 0..total {
            let point: Vec<f64> = (0..self.k)
                .map(|j| {
                    let t = indices[j] as f64 / (resolution[j] - 1) as f64;
                    self.lower[j] + t * (self.upper[j] - self.lower[j])
                })
                .collect();
            let utility = self.evaluate(&point)?;
            decisions.push(Decision {
                id: format!("g{m}"),
                point,
                utility,
            });
            // advance the row-major counter: last axis fastest
            for j in (0..self.k).rev() {
                indices[j] += 1;
                if indices[j] < resolution[j] {
                    break;
                }
                indices[j] = 0;
            }
        }
        FiniteProblem::new(
            self.n,
            decisions,
            format!("grid{resolution:?} of {}", self.name),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_problem() -> SmoothProblem {
        SmoothProblem::new(
            "line",
            1,
            2,
            vec![0.0],
            vec![1.0],
            Arc::new(|x: &[f64]| vec![x[0], 1.0 - x[0]]),
        )
        .unwrap()
    }

    #[test]
    fn finite_problem_validation() {
        let d = |id: &str, f: &[f64]| Decision {
            id: id.to_string(),
            point: vec![],
            utility: UtilityVector::new(f.to_vec()).unwrap(),
        };
        assert!(matches!(
            FiniteProblem::new(2, vec![], "t"),
            Err(Error::EmptyProblem)
        ));
        assert!(matches!(
            FiniteProblem::new(2, vec![d("a", &[1.0, 2.0]), d("a", &[0.0, 1.0])], "t"),
            Err(Error::DuplicateId(_))
        ));
        assert!(matches!(
            FiniteProblem::new(3, vec![d("a", &[1.0, 2.0])], "t"),
            Err(Error::DimensionMismatch { .. })
        ));
        let p = FiniteProblem::new(2, vec![d("a", &[1.0, 2.0])], "t").unwrap();
        assert_eq!(p.index_of("a").unwrap(), 0);
        assert!(matches!(
            p.index_of("missing"),
            Err(Error::UnknownDecision(_))
        ));
    }

    #[test]
    fn random_generation_is_deterministic() {
        let a = generate_random(4, 200, 42, (-1.0, 1.0)).unwrap();
        let b = generate_random(4, 200, 42, (-1.0, 1.0)).unwrap();
        for (da, db) in a.decisions().iter().zip(b.decisions()) {
            assert_eq!(da.id, db.id);
            assert_eq!(da.utility.as_slice(), db.utility.as_slice());
        }
        let c = generate_random(4, 200, 43, (-1.0, 1.0)).unwrap();
        assert!(a.decisions()[0].utility.as_slice() != c.decisions()[0].utility.as_slice());
    }

    #[test]
    fn grid_counts_one_evaluation_per_node() {
        let p = line_problem();
        let g = p.grid(&[11]).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(p.eval_count(), 11);
        assert_eq!(g.get("g0").unwrap().point, vec![0.0]);
        assert_eq!(g.get("g10").unwrap().point, vec![1.0]);
    }

    #[test]
    fn grid_is_row_major() {
        let p = SmoothProblem::new(
            "plane",
            2,
            2,
            vec![0.0, 0.0],
            vec![1.0, 2.0],
            Arc::new(|x: &[f64]| vec![x[0], x[1]]),
        )
        .unwrap();
        let g = p.grid(&[2, 3]).unwrap();
        assert_eq!(g.len(), 6);
        // last axis fastest: g0=(0,0), g1=(0,1), g2=(0,2), g3=(1,0)
        assert_eq!(g.get("g1").unwrap().point, vec![0.0, 1.0]);
        assert_eq!(g.get("g3").unwrap().point, vec![1.0, 0.0]);
    }

    #[test]
    fn interiority_margins() {
        let p = line_problem();
        assert!(p.is_interior(&[0.5]));
        assert!(!p.is_interior(&[0.0]));
        assert!(!p.is_interior(&[1.0 - 1e-12]));
        assert!(p.contains(&[1.0]));
        assert!(!p.contains(&[1.1]));
    }

    #[test]
    fn jacobian_validation_rejects_wrong_derivatives() {
        let p = SmoothProblem::new(
            "quad",
            2,
            2,
            vec![-3.0, -3.0],
            vec![3.0, 3.0],
            Arc::new(|x: &[f64]| vec![x[0] * x[0], x[1] * x[1]]),
        )
        .unwrap();
        let ok = p
            .clone()
            .with_jacobian(Arc::new(|x: &[f64]| {
                vec![vec![2.0 * x[0], 0.0], vec![0.0, 2.0 * x[1]]]
            }));
        assert!(ok.is_ok());
        let bad = p.with_jacobian(Arc::new(|x: &[f64]| {
            vec![vec![2.0 * x[0] + 0.5, 0.0], vec![0.0, 2.0 * x[1]]]
        }));
        assert!(matches!(bad, Err(Error::JacobianMismatch { .. })));
    }
}
