//! King stability and the search for stability weights.
//!
//! A representation `V` is `theta`-semistable when `theta(dim V) = 0` and
//! `theta(dim V') <= 0` for every subrepresentation `V'`, and `theta`-stable
//! when the inequality is strict for every proper nonzero `V'`.
//!
//! The set of subrepresentation dimension vectors is computed exhaustively
//! over small prime fields and united across primes. Every report records
//! which primes were used: the verdict is relative to that oracle, which is
//! exact for the reductions but not a proof over an algebraically closed
//! field of characteristic zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ff::{all_subspaces, total_subspace_count, Subspace};
use crate::linalg::Matrix;
use crate::quiver::{DimensionVector, Weight};
use crate::rep::{are_isomorphic, is_indecomposable, reduce_mod_p, ModpRepresentation, RepError};
use crate::scalar::{primitive_integer_vector, RationalField};
use crate::{Rational, Representation};

pub const DEFAULT_PRIMES: [u64; 3] = [5, 7, 11];
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Largest vertex dimension the subspace enumeration accepts.
pub const MAX_VERTEX_DIM: usize = 4;

/// Primes and enumeration budget for the subrepresentation oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub primes: Vec<u64>,
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            primes: DEFAULT_PRIMES.to_vec(),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl OracleConfig {
    pub fn with_primes(primes: &[u64]) -> Self {
        Self {
            primes: primes.to_vec(),
            ..Self::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("no primes supplied to the subrepresentation oracle")]
    NoPrimes,
    #[error("enumerating subspace tuples mod {p} needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { p: u64, needed: u128, budget: u64 },
    #[error("vertex {vertex} has dimension {dim}, the oracle handles at most {MAX_VERTEX_DIM}")]
    VertexTooLarge { vertex: usize, dim: usize },
    #[error("weight has {got} entries, quiver has {expected} vertices")]
    WeightLength { expected: usize, got: usize },
    #[error("summand {0} is not indecomposable")]
    Decomposable(usize),
    #[error("summand {0} is zero")]
    ZeroSummand(usize),
    #[error("summands {0} and {1} are isomorphic")]
    Isomorphic(usize, usize),
    #[error("weight {weight} failed verification on summand {index}")]
    VerificationFailed { index: usize, weight: Weight },
}

/// Dimension vectors of subrepresentations of `V`, united over primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubrepDimSet {
    pub primes: Vec<u64>,
    pub dim: DimensionVector,
    pub dimvectors: BTreeSet<DimensionVector>,
}

impl SubrepDimSet {
    pub fn contains(&self, d: &[i64]) -> bool {
        self.dimvectors.iter().any(|v| v.as_slice() == d)
    }

    /// Members other than `0` and `dim V`.
    pub fn proper_nonzero(&self) -> impl Iterator<Item = &DimensionVector> {
        self.dimvectors
            .iter()
            .filter(move |d| !d.is_zero() && **d != self.dim)
    }

    pub fn merge(&mut self, other: SubrepDimSet) {
        assert_eq!(
            self.dim, other.dim,
            "merging oracle sets of different representations"
        );
        for p in other.primes {
            if !self.primes.contains(&p) {
                self.primes.push(p);
            }
        }
        self.dimvectors.extend(other.dimvectors);
    }
}

/// Exhaustive subrepresentation dimension vectors of `V mod p`.
pub fn subrep_dimvectors<T: RationalField>(
    v: &Representation<T>,
    p: u64,
    budget: u64,
) -> Result<SubrepDimSet, StabilityError> {
    let modp = reduce_mod_p(v, p)?;
    let n = v.quiver().vertex_count();
    let mut needed: u128 = 1;
    for x in 0..n {
        let d = v.dim_at(x);
        if d > MAX_VERTEX_DIM {
            return Err(StabilityError::VertexTooLarge { vertex: x, dim: d });
        }
        needed = needed.saturating_mul(total_subspace_count(p, d));
    }
    if needed > budget as u128 {
        return Err(StabilityError::BudgetExceeded { p, needed, budget });
    }
    let spaces: Vec<_> = (0..n).map(|x| all_subspaces(p, v.dim_at(x))).collect();
    // Arrows checked once both endpoints are assigned, keyed by the later one.
    let mut arrows_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in v.quiver().arrows().iter().enumerate() {
        arrows_at[a.tail.max(a.head)].push(i);
    }
    let mut found = BTreeSet::new();
    let mut chosen: Vec<&Subspace> = Vec::with_capacity(n);
    enumerate(v, &modp, &spaces, &arrows_at, &mut chosen, &mut found);
    Ok(SubrepDimSet {
        primes: vec![p],
        dim: v.dim().clone(),
        dimvectors: found,
    })
}

fn enumerate<'a, T: RationalField>(
    v: &Representation<T>,
    modp: &ModpRepresentation,
    spaces: &'a [std::sync::Arc<Vec<Subspace>>],
    arrows_at: &[Vec<usize>],
    chosen: &mut Vec<&'a Subspace>,
    found: &mut BTreeSet<DimensionVector>,
) {
    let x = chosen.len();
    if x == spaces.len() {
        let dims = chosen.iter().map(|s| s.dim() as i64).collect();
        found.insert(DimensionVector::new(dims).expect("nonnegative"));
        return;
    }
    for s in spaces[x].iter() {
        chosen.push(s);
        let ok = arrows_at[x].iter().all(|&i| {
            let a = &v.quiver().arrows()[i];
            let (src, dst) = (chosen[a.tail], chosen[a.head]);
            src.basis
                .iter()
                .all(|b| dst.contains(&modp.matrices[i].apply(b, modp.p), modp.p))
        });
        if ok {
            enumerate(v, modp, spaces, arrows_at, chosen, found);
        }
        chosen.pop();
    }
}

/// Union of [`subrep_dimvectors`] over the configured primes.
pub fn subrep_dimvectors_all<T: RationalField>(
    v: &Representation<T>,
    config: &OracleConfig,
) -> Result<SubrepDimSet, StabilityError> {
    let (first, rest) = config
        .primes
        .split_first()
        .ok_or(StabilityError::NoPrimes)?;
    let mut set = subrep_dimvectors(v, *first, config.budget)?;
    for &p in rest {
        set.merge(subrep_dimvectors(v, p, config.budget)?);
    }
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    SemistableNotStable,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Stable => "stable",
            Verdict::SemistableNotStable => "semistable-not-stable",
            Verdict::Unstable => "unstable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub weight: Weight,
    /// Present exactly when the verdict is not `Stable`.
    pub destabilizer: Option<DimensionVector>,
    pub primes: Vec<u64>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Stable
    }
}

/// King's criterion against a precomputed oracle set.
///
/// For an unstable verdict the destabiliser is the subrepresentation
/// dimension vector maximising `theta` (ties broken by the smallest vector),
/// or `dim V` itself when `theta(dim V) != 0`.
pub fn stability_from_set(set: &SubrepDimSet, theta: &Weight) -> StabilityReport {
    let report = |verdict, destabilizer| StabilityReport {
        verdict,
        weight: theta.clone(),
        destabilizer,
        primes: set.primes.clone(),
    };
    if theta.eval_dim(&set.dim) != 0 {
        return report(Verdict::Unstable, Some(set.dim.clone()));
    }
    let mut worst: Option<(&DimensionVector, i64)> = None;
    for d in set.proper_nonzero() {
        let t = theta.eval_dim(d);
        if worst.is_none_or(|(_, w)| t > w) {
            worst = Some((d, t));
        }
    }
    match worst {
        Some((d, t)) if t > 0 => report(Verdict::Unstable, Some(d.clone())),
        Some((d, 0)) => report(Verdict::SemistableNotStable, Some(d.clone())),
        _ => report(Verdict::Stable, None),
    }
}

pub fn check_stability<T: RationalField>(
    v: &Representation<T>,
    theta: &Weight,
    config: &OracleConfig,
) -> Result<StabilityReport, StabilityError> {
    let n = v.quiver().vertex_count();
    if theta.len() != n {
        return Err(StabilityError::WeightLength {
            expected: n,
            got: theta.len(),
        });
    }
    let set = subrep_dimvectors_all(v, config)?;
    Ok(stability_from_set(&set, theta))
}

/// Find `theta` with `theta . b = 0` for each equality and `theta . b < 0`
/// for each strict member.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FeasibilityProblem {
    pub vertex_count: usize,
    pub equalities: Vec<DimensionVector>,
    pub strict: Vec<DimensionVector>,
}

impl FeasibilityProblem {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            ..Self::default()
        }
    }

    /// The constraints making every listed representation stable, given its
    /// oracle set.
    pub fn from_oracle_sets<'a>(
        vertex_count: usize,
        sets: impl IntoIterator<Item = &'a SubrepDimSet>,
    ) -> Self {
        let mut eq = BTreeSet::new();
        let mut strict = BTreeSet::new();
        for s in sets {
            eq.insert(s.dim.clone());
            strict.extend(s.proper_nonzero().cloned());
        }
        Self {
            vertex_count,
            equalities: eq.into_iter().collect(),
            strict: strict.into_iter().collect(),
        }
    }

    pub fn is_satisfied_by(&self, theta: &Weight) -> bool {
        self.equalities.iter().all(|d| theta.eval_dim(d) == 0)
            && self.strict.iter().all(|d| theta.eval_dim(d) < 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "weight", rename_all = "kebab-case")]
pub enum Feasibility {
    Feasible(Weight),
    Infeasible,
}

/// `coeffs . y <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    coeffs: Vec<Rational>,
    bound: Rational,
}

enum Normalized {
    Keep(Ineq),
    Trivial,
    Contradiction,
}

fn normalize(ineq: Ineq) -> Normalized {
    if ineq.coeffs.iter().all(Zero::is_zero) {
        return if ineq.bound.is_negative() {
            Normalized::Contradiction
        } else {
            Normalized::Trivial
        };
    }
    let ints = primitive_integer_vector(&ineq.coeffs);
    // Positive factor taking coeffs to the primitive integer vector.
    let (idx, c) = ineq
        .coeffs
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .expect("nonzero row");
    let factor = Rational::from_integer(ints[idx].clone()) / c.clone();
    Normalized::Keep(Ineq {
        coeffs: ints.into_iter().map(Rational::from_integer).collect(),
        bound: ineq.bound * factor,
    })
}

/// Keeps the tightest bound for each coefficient vector.
fn dedup(rows: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for r in rows {
        match normalize(r) {
            Normalized::Contradiction => return None,
            Normalized::Trivial => {}
            Normalized::Keep(r) => {
                best.entry(r.coeffs)
                    .and_modify(|b| {
                        if r.bound < *b {
                            *b = r.bound.clone();
                        }
                    })
                    .or_insert(r.bound);
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(coeffs, bound)| Ineq { coeffs, bound })
            .collect(),
    )
}

/// Fourier-Motzkin elimination in variable order; returns a feasible point
/// or `None`.
fn fourier_motzkin(rows: Vec<Ineq>, vars: usize) -> Option<Vec<Rational>> {
    let mut stages = vec![dedup(rows)?];
    for k in 0..vars {
        let current = stages.last().expect("nonempty");
        let (mut upper, mut lower, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in current {
            if r.coeffs[k].is_positive() {
                upper.push(r);
            } else if r.coeffs[k].is_negative() {
                lower.push(r);
            } else {
                rest.push(r.clone());
            }
        }
        for u in &upper {
            for l in &lower {
                let (cu, cl) = (u.coeffs[k].clone(), -l.coeffs[k].clone());
                let coeffs = u
                    .coeffs
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(a, b)| a.clone() * cl.clone() + b.clone() * cu.clone())
                    .collect();
                let bound = u.bound.clone() * cl.clone() + l.bound.clone() * cu.clone();
                rest.push(Ineq { coeffs, bound });
            }
        }
        stages.push(dedup(rest)?);
    }
    // Back substitution, last eliminated variable first.
    let mut y = vec![Rational::zero(); vars];
    for k in (0..vars).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for r in &stages[k] {
            let c = &r.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let slack = (k + 1..vars).fold(r.bound.clone(), |acc, j| {
                acc - r.coeffs[j].clone() * y[j].clone()
            });
            let b = slack / c.clone();
            if c.is_positive() {
                hi = Some(hi.map_or(b.clone(), |h| h.min(b)));
            } else {
                lo = Some(lo.map_or(b.clone(), |l| l.max(b)));
            }
        }
        y[k] = pick_value(lo, hi);
    }
    Some(y)
}

/// Zero when allowed, otherwise the integer nearest zero inside the
/// interval, otherwise the endpoint nearest zero.
fn pick_value(lo: Option<Rational>, hi: Option<Rational>) -> Rational {
    let zero = Rational::zero();
    let above = lo.as_ref().is_some_and(|l| *l > zero);
    let below = hi.as_ref().is_some_and(|h| *h < zero);
    if above {
        let l = lo.expect("checked");
        let c = l.ceil();
        if hi.as_ref().is_none_or(|h| c <= *h) {
            c
        } else {
            l
        }
    } else if below {
        let h = hi.expect("checked");
        let f = h.floor();
        if lo.as_ref().is_none_or(|l| f >= *l) {
            f
        } else {
            h
        }
    } else {
        zero
    }
}

/// Solves a [`FeasibilityProblem`] exactly.
///
/// The equalities are eliminated by parametrising their common kernel; the
/// strict inequalities are normalised to `<= -1` (valid by homogeneity) and
/// handed to Fourier-Motzkin elimination. The point found is scaled to a
/// primitive integer vector.
pub fn find_weight(problem: &FeasibilityProblem) -> Feasibility {
    let n = problem.vertex_count;
    let to_q = |v: i64| Rational::from_integer(v.into());
    let kernel: Vec<Vec<Rational>> = if problem.equalities.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| to_q((i == j) as i64)).collect())
            .collect()
    } else {
        let rows = problem
            .equalities
            .iter()
            .map(|d| d.as_slice().iter().map(|&v| to_q(v)).collect())
            .collect();
        Matrix::from_rows(rows, n)
            .expect("rectangular")
            .kernel_basis()
    };
    let m = kernel.len();
    let rows: Vec<Ineq> = problem
        .strict
        .iter()
        .map(|d| Ineq {
            coeffs: kernel
                .iter()
                .map(|k| {
                    k.iter()
                        .zip(d.as_slice())
                        .fold(Rational::zero(), |acc, (a, &b)| acc + a.clone() * to_q(b))
                })
                .collect(),
            bound: -Rational::one(),
        })
        .collect();
    let Some(y) = fourier_motzkin(rows, m) else {
        return Feasibility::Infeasible;
    };
    let theta_q: Vec<Rational> = (0..n)
        .map(|i| {
            kernel
                .iter()
                .zip(&y)
                .fold(Rational::zero(), |acc, (k, yk)| {
                    acc + k[i].clone() * yk.clone()
                })
        })
        .collect();
    let theta = Weight(
        primitive_integer_vector(&theta_q)
            .iter()
            .map(|v| v.to_i64().expect("weight entries fit in i64"))
            .collect(),
    );
    debug_assert!(problem.is_satisfied_by(&theta));
    if problem.is_satisfied_by(&theta) {
        Feasibility::Feasible(theta)
    } else {
        Feasibility::Infeasible
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSemisimplicity {
    pub locally_semisimple: bool,
    pub weight: Option<Weight>,
    /// One report per summand under the weight found (empty when none).
    pub reports: Vec<StabilityReport>,
    pub primes: Vec<u64>,
}

/// Decides whether pairwise non-isomorphic indecomposable summands admit a
/// common stability weight (relative to the oracle).
pub fn is_locally_semisimple<T: RationalField>(
    summands: &[&Representation<T>],
    config: &OracleConfig,
    seed: u64,
) -> Result<LocalSemisimplicity, StabilityError> {
    for (i, v) in summands.iter().enumerate() {
        match is_indecomposable(*v) {
            Ok(true) => {}
            Ok(false) => return Err(StabilityError::Decomposable(i)),
            Err(RepError::ZeroRepresentation) => return Err(StabilityError::ZeroSummand(i)),
            Err(e) => return Err(e.into()),
        }
    }
    for i in 0..summands.len() {
        for j in i + 1..summands.len() {
            if are_isomorphic(summands[i], summands[j], seed)? {
                return Err(StabilityError::Isomorphic(i, j));
            }
        }
    }
    let n = summands.first().map_or(0, |v| v.quiver().vertex_count());
    let sets = summands
        .iter()
        .map(|v| subrep_dimvectors_all(*v, config))
        .collect::<Result<Vec<_>, _>>()?;
    let problem = FeasibilityProblem::from_oracle_sets(n, &sets);
    match find_weight(&problem) {
        Feasibility::Infeasible => Ok(LocalSemisimplicity {
            locally_semisimple: false,
            weight: None,
            reports: Vec::new(),
            primes: config.primes.clone(),
        }),
        Feasibility::Feasible(theta) => {
            let reports: Vec<_> = sets.iter().map(|s| stability_from_set(s, &theta)).collect();
            if let Some(index) = reports.iter().position(|r| !r.is_stable()) {
                return Err(StabilityError::VerificationFailed {
                    index,
                    weight: theta,
                });
            }
            Ok(LocalSemisimplicity {
                locally_semisimple: true,
                weight: Some(theta),
                reports,
                primes: config.primes.clone(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]], cols: usize) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    fn dv(v: &[i64]) -> DimensionVector {
        DimensionVector::new(v.to_vec()).unwrap()
    }

    fn a3() -> Arc<Quiver> {
        Arc::new(
            Quiver::new(
                ["1", "2", "3"],
                [
                    ("a".into(), "1".into(), "2".into()),
                    ("b".into(), "2".into(), "3".into()),
                ],
            )
            .unwrap(),
        )
    }

    fn k3_rep() -> Representation {
        let quiver = Arc::new(
            Quiver::new(
                ["1", "2"],
                (0..3).map(|i| (format!("a{i}"), "1".to_string(), "2".to_string())),
            )
            .unwrap(),
        );
        Representation::new(
            quiver,
            dv(&[2, 2]),
            vec![
                mat(&[&[1, 0], &[0, 1]], 2),
                mat(&[&[1, 0], &[0, 0]], 2),
                mat(&[&[0, 1], &[0, 0]], 2),
            ],
        )
        .unwrap()
    }

    fn a3_sincere() -> Representation {
        Representation::new(a3(), dv(&[1, 1, 1]), vec![mat(&[&[1]], 1), mat(&[&[1]], 1)]).unwrap()
    }

    #[test]
    fn oracle_on_simple() {
        let s = Representation::<Rational>::simple(a3(), 1);
        let set = subrep_dimvectors(&s, 5, DEFAULT_BUDGET).unwrap();
        let expected: BTreeSet<_> = [dv(&[0, 0, 0]), dv(&[0, 1, 0])].into();
        assert_eq!(set.dimvectors, expected);
    }

    #[test]
    fn oracle_on_sincere_a3() {
        let set = subrep_dimvectors(&a3_sincere(), 7, DEFAULT_BUDGET).unwrap();
        let expected: BTreeSet<_> = [
            dv(&[0, 0, 0]),
            dv(&[0, 0, 1]),
            dv(&[0, 1, 1]),
            dv(&[1, 1, 1]),
        ]
        .into();
        assert_eq!(set.dimvectors, expected);
    }

    #[test]
    fn oracle_on_k3_contains_diagonal() {
        let set = subrep_dimvectors(&k3_rep(), 5, DEFAULT_BUDGET).unwrap();
        assert!(set.contains(&[1, 1]));
        assert!(!set.contains(&[1, 0]));
    }

    #[test]
    fn oracle_errors() {
        let v = k3_rep();
        assert!(matches!(
            subrep_dimvectors(&v, 5, 10),
            Err(StabilityError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            subrep_dimvectors(&v, 6, DEFAULT_BUDGET),
            Err(StabilityError::Rep(RepError::BadPrime { .. }))
        ));
        assert_eq!(
            check_stability(&v, &Weight(vec![1, -1]), &OracleConfig::with_primes(&[])),
            Err(StabilityError::NoPrimes)
        );
    }

    #[test]
    fn stability_examples() {
        let cfg = OracleConfig::default();
        let s = Representation::<Rational>::simple(a3(), 0);
        assert!(check_stability(&s, &Weight::zero(3), &cfg)
            .unwrap()
            .is_stable());

        let r = check_stability(&a3_sincere(), &Weight(vec![1, 0, -1]), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Stable);
        assert_eq!(r.destabilizer, None);
        assert_eq!(r.primes, vec![5, 7, 11]);

        let r = check_stability(&k3_rep(), &Weight(vec![1, -1]), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::SemistableNotStable);
        assert_eq!(r.destabilizer, Some(dv(&[1, 1])));
        let r = check_stability(&k3_rep(), &Weight(vec![-1, 1]), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);

        let r = check_stability(&a3_sincere(), &Weight(vec![1, 0, 0]), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        assert_eq!(r.destabilizer, Some(dv(&[1, 1, 1])));
        assert!(matches!(
            check_stability(&a3_sincere(), &Weight(vec![1]), &cfg),
            Err(StabilityError::WeightLength { .. })
        ));
    }

    #[test]
    fn feasibility_examples() {
        let p = FeasibilityProblem {
            vertex_count: 2,
            equalities: vec![dv(&[1, 1])],
            strict: vec![dv(&[1, 0])],
        };
        assert_eq!(find_weight(&p), Feasibility::Feasible(Weight(vec![-1, 1])));

        let p = FeasibilityProblem {
            vertex_count: 2,
            equalities: vec![dv(&[2, 2])],
            strict: vec![dv(&[1, 1])],
        };
        assert_eq!(find_weight(&p), Feasibility::Infeasible);

        // No equalities: theta = 0 when nothing is strict.
        assert_eq!(
            find_weight(&FeasibilityProblem::new(3)),
            Feasibility::Feasible(Weight::zero(3))
        );
    }

    #[test]
    fn fm_handles_several_variables() {
        // theta(e1) < 0, theta(e2) < 0, theta(e1 + e2 + e3) = 0, theta(e3) < 5 is implied.
        let p = FeasibilityProblem {
            vertex_count: 3,
            equalities: vec![dv(&[1, 1, 1])],
            strict: vec![dv(&[1, 0, 0]), dv(&[0, 1, 0]), dv(&[1, 1, 0])],
        };
        match find_weight(&p) {
            Feasibility::Feasible(t) => assert!(p.is_satisfied_by(&t)),
            Feasibility::Infeasible => panic!("feasible problem reported infeasible"),
        }
    }

    #[test]
    fn locally_semisimple_examples() {
        let cfg = OracleConfig::default();
        let s = Representation::<Rational>::simple(a3(), 0);
        let r = is_locally_semisimple(&[&s], &cfg, 0).unwrap();
        assert!(r.locally_semisimple);
        assert_eq!(r.weight, Some(Weight::zero(3)));

        let r = is_locally_semisimple(&[&k3_rep()], &cfg, 0).unwrap();
        assert!(!r.locally_semisimple);
        assert_eq!(r.weight, None);

        assert_eq!(
            is_locally_semisimple(&[&s, &s], &cfg, 0).unwrap_err(),
            StabilityError::Isomorphic(0, 1)
        );
        let ss = crate::rep::direct_sum(&[(&s, 2)]).unwrap();
        assert_eq!(
            is_locally_semisimple(&[&ss], &cfg, 0).unwrap_err(),
            StabilityError::Decomposable(0)
        );
    }
}
