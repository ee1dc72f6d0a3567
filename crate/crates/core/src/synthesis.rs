//! Weight synthesis for orthogonal Schur sequences.
//!
//! A sequence of pairwise non-isomorphic Schur representations with no
//! morphisms between distinct members admits a common stability weight when
//! the quiver is Dynkin or Euclidean. Sequences with a preprojective or
//! preinjective member are handled by exact linear feasibility over the
//! oracle's subrepresentation sets. All-regular sequences on a Euclidean
//! quiver go through the tubes: every member is located by its regular top
//! and length, the tube contents are completed to a maximal orthogonal family,
//! a linear system fixes `theta` on the regular simples, and a multiple of the
//! defect weight is added so that non-regular subrepresentations are also
//! destabilised.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Matrix, SolveError};
use crate::quiver::{DimensionVector, Quiver, QuiverClass, QuiverError, Weight};
use crate::rep::{are_isomorphic, ext1_dim, hom_dim, is_schur, RepError};
use crate::scalar::{Field, RationalField};
use crate::stability::{
    check_stability, find_weight, stability_from_set, subrep_dimvectors_all, Feasibility,
    FeasibilityProblem, OracleConfig, StabilityError, StabilityReport, SubrepDimSet,
};
use crate::{Rational, Representation};

/// Position of a Euclidean member relative to the defect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MemberClass {
    Preprojective,
    Regular,
    Preinjective,
}

impl MemberClass {
    pub fn from_defect(defect: i64) -> Self {
        match defect.signum() {
            -1 => MemberClass::Preprojective,
            0 => MemberClass::Regular,
            _ => MemberClass::Preinjective,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MemberClass::Preprojective => "preprojective",
            MemberClass::Regular => "regular",
            MemberClass::Preinjective => "preinjective",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("empty sequence")]
    Empty,
    #[error("member {0} lives on a different quiver")]
    QuiverMismatch(usize),
    #[error("members {0} and {1} are isomorphic")]
    Isomorphic(usize, usize),
    #[error("member {0} is not Schur")]
    NotSchur(usize),
    #[error("members {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A validated orthogonal Schur sequence.
#[derive(Clone, Debug)]
pub struct SchurSequence<T = Rational> {
    members: Vec<Representation<T>>,
    classes: Option<Vec<MemberClass>>,
}

impl<T: Field> SchurSequence<T> {
    pub fn members(&self) -> &[Representation<T>] {
        &self.members
    }

    /// Defect classes, present when the quiver is Euclidean.
    pub fn classes(&self) -> Option<&[MemberClass]> {
        self.classes.as_deref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.members[0].quiver()
    }

    pub fn is_all_regular(&self) -> bool {
        self.classes
            .as_ref()
            .is_some_and(|c| c.iter().all(|&k| k == MemberClass::Regular))
    }
}

/// Checks pairwise non-isomorphism, the Schur property and orthogonality,
/// in that order, reporting the first offending member or pair.
pub fn validate_sequence<T: Field>(
    members: &[Representation<T>],
    seed: u64,
) -> Result<SchurSequence<T>, SequenceError> {
    let first = members.first().ok_or(SequenceError::Empty)?;
    for (i, v) in members.iter().enumerate() {
        if **v.quiver() != **first.quiver() {
            return Err(SequenceError::QuiverMismatch(i));
        }
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if are_isomorphic(&members[i], &members[j], seed)? {
                return Err(SequenceError::Isomorphic(i, j));
            }
        }
    }
    for (i, v) in members.iter().enumerate() {
        if !is_schur(v) {
            return Err(SequenceError::NotSchur(i));
        }
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if hom_dim(&members[i], &members[j])? != 0 || hom_dim(&members[j], &members[i])? != 0 {
                return Err(SequenceError::NotOrthogonal(i, j));
            }
        }
    }
    let q = first.quiver();
    let classes = match q.classify() {
        QuiverClass::Euclidean(_) => Some(
            members
                .iter()
                .map(|v| MemberClass::from_defect(q.defect(v.dim().as_slice()).expect("euclidean")))
                .collect(),
        ),
        _ => None,
    };
    Ok(SchurSequence {
        members: members.to_vec(),
        classes,
    })
}

/// Arrow `i -> j` whenever `Ext^1(V_i, V_j) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtQuiver {
    pub size: usize,
    pub arrows: Vec<(usize, usize)>,
}

pub fn build_ext_quiver<T: Field>(seq: &SchurSequence<T>) -> Result<ExtQuiver, RepError> {
    let m = seq.members();
    let mut arrows = Vec::new();
    for i in 0..m.len() {
        for j in 0..m.len() {
            if i != j && ext1_dim(&m[i], &m[j])? != 0 {
                arrows.push((i, j));
            }
        }
    }
    Ok(ExtQuiver {
        size: m.len(),
        arrows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "order", rename_all = "kebab-case")]
pub enum ExceptionalOrder {
    /// Member indices with `Ext^1(V_a, V_b) = 0` whenever `a` precedes `b`.
    Order(Vec<usize>),
    Cyclic,
}

/// Topological order of the Ext-quiver, reversed along arrows. Ties go to
/// preprojectives, then regulars, then preinjectives, then input order.
pub fn exceptional_order<T: Field>(seq: &SchurSequence<T>) -> Result<ExceptionalOrder, RepError> {
    let ext = build_ext_quiver(seq)?;
    let n = ext.size;
    let rank = |i: usize| seq.classes().map_or(MemberClass::Regular, |c| c[i]);
    let mut pending = vec![0usize; n];
    let mut dependents = vec![Vec::new(); n];
    for &(i, j) in &ext.arrows {
        pending[i] += 1;
        dependents[j].push(i);
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !done[i] && pending[i] == 0)
            .min_by_key(|&i| (rank(i), i));
        let Some(i) = next else {
            return Ok(ExceptionalOrder::Cyclic);
        };
        done[i] = true;
        order.push(i);
        for &k in &dependents[i] {
            pending[k] -= 1;
        }
    }
    Ok(ExceptionalOrder::Order(order))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TubeError {
    #[error("tubes need a Euclidean quiver, this one is {0}")]
    NotEuclidean(QuiverClass),
    #[error("{0} tubes listed, a Euclidean quiver has at most 3 non-homogeneous tubes")]
    TooManyTubes(usize),
    #[error("tube {0} is empty")]
    EmptyTube(usize),
    #[error("tube {tube}: simple {name:?} lives on a different quiver")]
    QuiverMismatch { tube: usize, name: String },
    #[error("tube {tube}: simple {name:?} has defect {defect}, expected 0")]
    NonzeroDefect {
        tube: usize,
        name: String,
        defect: i64,
    },
    #[error("tube {tube}: simples sum to {sum}, expected {delta}")]
    OrbitSum {
        tube: usize,
        sum: DimensionVector,
        delta: DimensionVector,
    },
    #[error("tube {tube}: the Coxeter transformation sends {from:?} to {image}, not to the dimension vector of {to:?}")]
    CoxeterOrder {
        tube: usize,
        from: String,
        to: String,
        image: DimensionVector,
    },
    #[error(
        "tube {tube}: {name:?} is not stable for the defect weight, so it is not regular simple"
    )]
    NotRegularSimple { tube: usize, name: String },
    #[error("tube {tube}: {name:?}: {source}")]
    Oracle {
        tube: usize,
        name: String,
        source: StabilityError,
    },
}

/// One non-homogeneous tube: its regular simples `E, tau E, ...` in order.
#[derive(Clone, Debug)]
pub struct Tube<T = Rational> {
    names: Vec<String>,
    simples: Vec<Representation<T>>,
}

impl<T: Field> Tube<T> {
    pub fn period(&self) -> usize {
        self.simples.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn simples(&self) -> &[Representation<T>] {
        &self.simples
    }

    pub fn simple(&self, k: usize) -> &Representation<T> {
        &self.simples[k % self.period()]
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k % self.period()]
    }

    /// Sum of `dim tau^k(top)` for `k` in `from..to`.
    fn segment_dim(&self, top: usize, from: usize, to: usize) -> DimensionVector {
        let n = self.simples[0].dim().len();
        (from..to).fold(DimensionVector::zero(n), |acc, k| {
            acc.add(self.simple(top + k).dim())
        })
    }
}

/// Validated regular simples of the non-homogeneous tubes.
#[derive(Clone, Debug)]
pub struct TubeCatalog<T = Rational> {
    quiver: Arc<Quiver>,
    tubes: Vec<Tube<T>>,
}

impl<T: RationalField> TubeCatalog<T> {
    /// Checks that every simple has defect 0 and is stable for the defect
    /// weight, that each tube sums to `delta`, and that the Coxeter
    /// transformation steps through each tube in the listed order.
    pub fn new(
        quiver: Arc<Quiver>,
        tubes: Vec<Vec<(String, Representation<T>)>>,
    ) -> Result<Self, TubeError> {
        let delta = match quiver.classify() {
            QuiverClass::Euclidean(d) => d.clone(),
            other => return Err(TubeError::NotEuclidean(other.clone())),
        };
        if tubes.len() > 3 {
            return Err(TubeError::TooManyTubes(tubes.len()));
        }
        let defect_weight = quiver.defect_weight().expect("euclidean");
        let phi = quiver.coxeter_matrix();
        let config = OracleConfig::default();
        let mut out = Vec::with_capacity(tubes.len());
        for (t, tube) in tubes.into_iter().enumerate() {
            if tube.is_empty() {
                return Err(TubeError::EmptyTube(t));
            }
            let mut sum = DimensionVector::zero(quiver.vertex_count());
            for (name, e) in &tube {
                if **e.quiver() != *quiver {
                    return Err(TubeError::QuiverMismatch {
                        tube: t,
                        name: name.clone(),
                    });
                }
                let defect = defect_weight.eval_dim(e.dim());
                if defect != 0 {
                    return Err(TubeError::NonzeroDefect {
                        tube: t,
                        name: name.clone(),
                        defect,
                    });
                }
                sum = sum.add(e.dim());
            }
            if sum != delta {
                return Err(TubeError::OrbitSum {
                    tube: t,
                    sum,
                    delta,
                });
            }
            let p = tube.len();
            for k in 0..p {
                let (from, e) = &tube[k];
                let (to, next) = &tube[(k + 1) % p];
                let image = phi.mul_vec(e.dim().as_slice());
                if image != next.dim().as_slice() {
                    return Err(TubeError::CoxeterOrder {
                        tube: t,
                        from: from.clone(),
                        to: to.clone(),
                        image: DimensionVector::new(image.iter().map(|v| (*v).max(0)).collect())
                            .expect("clamped"),
                    });
                }
                let report = check_stability(e, &defect_weight, &config).map_err(|source| {
                    TubeError::Oracle {
                        tube: t,
                        name: from.clone(),
                        source,
                    }
                })?;
                if !report.is_stable() {
                    return Err(TubeError::NotRegularSimple {
                        tube: t,
                        name: from.clone(),
                    });
                }
            }
            let (names, simples) = tube.into_iter().unzip();
            out.push(Tube { names, simples });
        }
        Ok(Self { quiver, tubes: out })
    }
}

impl<T: Field> TubeCatalog<T> {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn tubes(&self) -> &[Tube<T>] {
        &self.tubes
    }

    pub fn tube(&self, index: usize) -> &Tube<T> {
        &self.tubes[index]
    }

    pub fn periods(&self) -> Vec<usize> {
        self.tubes.iter().map(Tube::period).collect()
    }
}

/// A regular uniserial representation `(E_top; tau E_top; ...)` of the
/// given regular length inside a catalogued tube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TubePosition {
    pub tube: usize,
    pub top: usize,
    pub length: usize,
}

impl TubePosition {
    pub fn simple(tube: usize, index: usize) -> Self {
        Self {
            tube,
            top: index,
            length: 1,
        }
    }

    pub fn socle(&self, period: usize) -> usize {
        (self.top + self.length - 1) % period
    }

    /// Indices of the regular composition factors, top first.
    pub fn factors(&self, period: usize) -> Vec<usize> {
        (0..self.length).map(|k| (self.top + k) % period).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Location {
    Tube(TubePosition),
    /// Dimension `delta` and no catalogued tube simple as a quotient.
    Homogeneous,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocateError {
    #[error("representation has defect {0}, expected a regular one")]
    NotRegular(i64),
    #[error("representation is not in the tube catalog")]
    NotInCatalog,
    #[error("representation matches several tube positions")]
    Ambiguous,
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Finds the regular top (the tube simple admitting a nonzero map from `V`)
/// and walks the orbit until the accumulated dimension vector equals `dim V`.
pub fn locate_in_tube<T: Field>(
    v: &Representation<T>,
    cat: &TubeCatalog<T>,
) -> Result<Location, LocateError> {
    let q = cat.quiver();
    let defect = q
        .defect(v.dim().as_slice())
        .map_err(|_| LocateError::NotInCatalog)?;
    if defect != 0 {
        return Err(LocateError::NotRegular(defect));
    }
    let mut found = Vec::new();
    let mut any_top = false;
    for (t, tube) in cat.tubes().iter().enumerate() {
        for k in 0..tube.period() {
            if hom_dim(v, tube.simple(k))? == 0 {
                continue;
            }
            any_top = true;
            for length in 1..=tube.period() {
                let d = tube.segment_dim(k, 0, length);
                if d == *v.dim() {
                    found.push(TubePosition {
                        tube: t,
                        top: k,
                        length,
                    });
                    break;
                }
                if !d.fits_in(v.dim()) {
                    break;
                }
            }
        }
    }
    match found.len() {
        1 => Ok(Location::Tube(found[0])),
        0 if !any_top && q.delta().is_ok_and(|d| d == v.dim()) => Ok(Location::Homogeneous),
        0 => Err(LocateError::NotInCatalog),
        _ => Err(LocateError::Ambiguous),
    }
}

/// Dimension vectors of the proper nonzero regular subrepresentations: the
/// tails `(tau^j top; ...; socle)` for `j = 1..length`.
pub fn regular_subrep_dims<T: Field>(
    pos: &TubePosition,
    cat: &TubeCatalog<T>,
) -> Vec<DimensionVector> {
    let tube = cat.tube(pos.tube);
    (1..pos.length)
        .map(|j| tube.segment_dim(pos.top, j, pos.length))
        .collect()
}

/// Orthogonality read off the positions: members of different tubes are
/// orthogonal, and members of one tube are orthogonal exactly when their
/// factor sets are disjoint or one sits strictly inside the other, sharing
/// neither top nor socle.
pub fn check_orthogonality_structurally<T: Field>(
    a: &TubePosition,
    b: &TubePosition,
    cat: &TubeCatalog<T>,
) -> bool {
    if a.tube != b.tube {
        return true;
    }
    let p = cat.tube(a.tube).period();
    let fa = a.factors(p);
    if b.factors(p).iter().all(|k| !fa.contains(k)) {
        return true;
    }
    let strictly_inside = |inner: &TubePosition, outer: &TubePosition| {
        let j = (inner.top + p - outer.top) % p;
        let i = j + inner.length - 1;
        0 < j && i < outer.length - 1
    };
    strictly_inside(a, b) || strictly_inside(b, a)
}

/// Adds, as length-one members, the simples of `tube` that are neither a
/// member nor the top or socle of one.
pub fn maximal_extension<T: Field>(
    members: &[TubePosition],
    tube: usize,
    cat: &TubeCatalog<T>,
) -> Vec<TubePosition> {
    let p = cat.tube(tube).period();
    let mut covered = vec![false; p];
    let mut out: Vec<TubePosition> = members.iter().filter(|m| m.tube == tube).copied().collect();
    for m in &out {
        covered[m.top % p] = true;
        covered[m.socle(p)] = true;
    }
    out.extend(
        (0..p)
            .filter(|&k| !covered[k])
            .map(|k| TubePosition::simple(tube, k)),
    );
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowRole {
    Top,
    Socle,
    MemberSimple,
}

impl RowRole {
    pub fn rhs(self) -> i64 {
        match self {
            RowRole::Top => 1,
            RowRole::Socle => -1,
            RowRole::MemberSimple => 0,
        }
    }
}

/// `theta(dim simple) = rhs`, one row per tube simple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThomasRow {
    pub tube: usize,
    pub simple: usize,
    pub name: String,
    pub dim: DimensionVector,
    pub role: RowRole,
    pub rhs: i64,
    /// Implied by the other rows through `theta(delta) = 0`.
    pub dropped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThomasSystem {
    pub vertex_count: usize,
    pub rows: Vec<ThomasRow>,
}

impl ThomasSystem {
    pub fn active_rows(&self) -> impl Iterator<Item = &ThomasRow> {
        self.rows.iter().filter(|r| !r.dropped)
    }

    pub fn matrix(&self) -> Matrix<Rational> {
        let rows: Vec<Vec<Rational>> = self
            .active_rows()
            .map(|r| {
                r.dim
                    .as_slice()
                    .iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, self.vertex_count).expect("rectangular")
    }

    pub fn rhs(&self) -> Vec<i64> {
        self.active_rows().map(|r| r.rhs).collect()
    }

    /// Every row, dropped ones included, holds for `theta`.
    pub fn is_satisfied_by(&self, theta: &Weight) -> bool {
        self.rows.iter().all(|r| theta.eval_dim(&r.dim) == r.rhs)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThomasError {
    #[error("tube {tube}: simple {simple} is both a top and a socle, or covered twice")]
    RoleConflict { tube: usize, simple: usize },
    #[error("tube {tube}: simple {simple} is not covered, the members are not maximal")]
    Uncovered { tube: usize, simple: usize },
    #[error(
        "the rows are linearly dependent (rank {rank} of {rows}), the tube catalog is inconsistent"
    )]
    DependentRows { rank: usize, rows: usize },
    #[error("the system is inconsistent")]
    Inconsistent,
}

/// Builds the rows for maximal member families: tops `+1`, socles `-1`,
/// length-one members `0`. In each tube after the first the last member
/// simple row, or failing that the last socle row, is marked dropped.
pub fn assemble_thomas<T: Field>(
    cat: &TubeCatalog<T>,
    members: &[TubePosition],
) -> Result<ThomasSystem, ThomasError> {
    let n = cat.quiver().vertex_count();
    let mut rows = Vec::new();
    for (t, tube) in cat.tubes().iter().enumerate() {
        let p = tube.period();
        let mut roles: Vec<Option<RowRole>> = vec![None; p];
        let mut assign = |k: usize, role: RowRole| match roles[k] {
            Some(_) => Err(ThomasError::RoleConflict { tube: t, simple: k }),
            None => {
                roles[k] = Some(role);
                Ok(())
            }
        };
        for m in members.iter().filter(|m| m.tube == t) {
            if m.length == 1 {
                assign(m.top % p, RowRole::MemberSimple)?;
            } else {
                assign(m.top % p, RowRole::Top)?;
                assign(m.socle(p), RowRole::Socle)?;
            }
        }
        let start = rows.len();
        for (k, role) in roles.into_iter().enumerate() {
            let role = role.ok_or(ThomasError::Uncovered { tube: t, simple: k })?;
            rows.push(ThomasRow {
                tube: t,
                simple: k,
                name: tube.name(k).to_string(),
                dim: tube.simple(k).dim().clone(),
                role,
                rhs: role.rhs(),
                dropped: false,
            });
        }
        if t > 0 {
            let tube_rows = &mut rows[start..];
            let last_of =
                |role: RowRole, rows: &[ThomasRow]| rows.iter().rposition(|r| r.role == role);
            if let Some(i) = last_of(RowRole::MemberSimple, tube_rows)
                .or_else(|| last_of(RowRole::Socle, tube_rows))
            {
                tube_rows[i].dropped = true;
            }
        }
    }
    let sys = ThomasSystem {
        vertex_count: n,
        rows,
    };
    let count = sys.active_rows().count();
    let rank = sys.matrix().rank();
    if rank != count {
        return Err(ThomasError::DependentRows { rank, rows: count });
    }
    Ok(sys)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThomasSolution {
    pub theta: Weight,
    /// Values given to the free coordinates.
    pub free: Vec<(usize, i64)>,
    /// `theta` is `scale` times a rational solution; 1 unless no integral
    /// solution exists.
    pub scale: i64,
}

const FREE_SEARCH_LIMIT: usize = 100_000;

/// An integral solution with the free coordinates as small as possible,
/// tried in the order `0, 1, -1, 2, -2, ...`.
pub fn solve_thomas(sys: &ThomasSystem) -> Result<ThomasSolution, ThomasError> {
    let a = sys.matrix();
    let b: Vec<Rational> = sys
        .rhs()
        .iter()
        .map(|&v| Rational::from_integer(v.into()))
        .collect();
    let sol = a.solve(&b).map_err(|e| match e {
        SolveError::Inconsistent { .. } => ThomasError::Inconsistent,
        SolveError::Shape { .. } => ThomasError::Inconsistent,
    })?;
    let free_cols: Vec<usize> = sol
        .kernel
        .iter()
        .map(|k| {
            k.iter()
                .position(|v| !v.is_zero())
                .expect("nonzero kernel vector")
        })
        .collect();
    let period = sol
        .kernel
        .iter()
        .flatten()
        .chain(&sol.particular)
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let period = period.to_i64().unwrap_or(i64::MAX);
    let span = |t: &[i64]| {
        let mut x = sol.particular.clone();
        for (k, &c) in sol.kernel.iter().zip(t) {
            let c = Rational::from_integer(c.into());
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi += &c * ki;
            }
        }
        x
    };
    let to_weight = |x: &[Rational]| {
        Weight(
            x.iter()
                .map(|v| v.to_integer().to_i64().expect("small weight"))
                .collect(),
        )
    };
    let m = sol.kernel.len();
    let radius = period.min(FREE_SEARCH_LIMIT as i64);
    let candidates = small_first(radius);
    let total = (candidates.len() as u128).saturating_pow(m as u32);
    if total <= FREE_SEARCH_LIMIT as u128 {
        let mut idx = vec![0usize; m];
        loop {
            let t: Vec<i64> = idx.iter().map(|&i| candidates[i]).collect();
            let x = span(&t);
            if x.iter().all(|v| v.is_integer()) {
                return Ok(ThomasSolution {
                    theta: to_weight(&x),
                    free: free_cols.iter().copied().zip(t).collect(),
                    scale: 1,
                });
            }
            if !next_by_max_norm(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    let x = span(&vec![0; m]);
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<Rational> = x
        .iter()
        .map(|v| v * Rational::from_integer(lcm.clone()))
        .collect();
    Ok(ThomasSolution {
        theta: to_weight(&scaled),
        free: free_cols.into_iter().map(|c| (c, 0)).collect(),
        scale: lcm.to_i64().expect("small scale"),
    })
}

/// `0, 1, -1, 2, -2, ..., r, -r`.
fn small_first(r: i64) -> Vec<i64> {
    let mut out = vec![0];
    for k in 1..=r {
        out.push(k);
        out.push(-k);
    }
    out
}

/// Steps through index tuples by increasing maximum entry, then
/// lexicographically.
fn next_by_max_norm(idx: &mut [usize], len: usize) -> bool {
    let m = idx.len();
    let Some(&norm) = idx.iter().max() else {
        return false;
    };
    loop {
        let mut k = m;
        let advanced = loop {
            if k == 0 {
                break false;
            }
            k -= 1;
            if idx[k] < norm {
                idx[k] += 1;
                idx[k + 1..].fill(0);
                break true;
            }
        };
        if !advanced {
            if norm + 1 >= len {
                return false;
            }
            idx.fill(0);
            idx[m - 1] = norm + 1;
            return true;
        }
        if idx.contains(&norm) {
            return true;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftMode {
    /// `N` from the oracle's non-regular subrepresentation dimension vectors.
    Exact(OracleConfig),
    /// `N` replaced by an upper bound read off `theta` and the member
    /// dimensions.
    Bound,
}

impl ShiftMode {
    pub fn name(&self) -> &'static str {
        match self {
            ShiftMode::Exact(_) => "exact",
            ShiftMode::Bound => "bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shift {
    pub mode: &'static str,
    /// `None` when no member has a non-regular subrepresentation.
    pub n: Option<i64>,
    pub sigma: Weight,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("shift needs at least one member")]
    NoMembers,
}

/// `sigma = theta` when `N < 0`, otherwise `theta + (N + 1) <delta, .>`.
pub fn shift_sigma<T: RationalField>(
    theta: &Weight,
    members: &[&Representation<T>],
    mode: &ShiftMode,
) -> Result<Shift, ShiftError> {
    let q = members
        .first()
        .ok_or(ShiftError::NoMembers)?
        .quiver()
        .clone();
    let n = match mode {
        ShiftMode::Exact(config) => {
            let sets = members
                .iter()
                .map(|v| subrep_dimvectors_all(*v, config))
                .collect::<Result<Vec<_>, _>>()?;
            exact_n(&q, theta, &sets)?
        }
        ShiftMode::Bound => Some(bound_n(theta, members)),
    };
    sigma_from_n(&q, theta, n, mode.name())
}

fn exact_n(q: &Quiver, theta: &Weight, sets: &[SubrepDimSet]) -> Result<Option<i64>, QuiverError> {
    let d = q.defect_weight()?;
    Ok(sets
        .iter()
        .flat_map(|s| s.dimvectors.iter())
        .filter(|b| d.eval_dim(b) != 0)
        .map(|b| theta.eval_dim(b))
        .max())
}

fn bound_n<T: Field>(theta: &Weight, members: &[&Representation<T>]) -> i64 {
    theta
        .as_slice()
        .iter()
        .enumerate()
        .map(|(x, &t)| t.max(0) * members.iter().map(|v| v.dim().get(x)).max().unwrap_or(0))
        .sum()
}

fn sigma_from_n(
    q: &Quiver,
    theta: &Weight,
    n: Option<i64>,
    mode: &'static str,
) -> Result<Shift, ShiftError> {
    let d = q.defect_weight()?;
    let sigma = match n {
        Some(n) if n >= 0 => theta.add_scaled(&d, n + 1),
        _ => theta.clone(),
    };
    Ok(Shift { mode, n, sigma })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum Route {
    /// Feasibility over the oracle sets.
    Linear { order: Option<ExceptionalOrder> },
    /// Regular members on a Euclidean quiver.
    Tube {
        locations: Vec<Location>,
        members: Vec<TubePosition>,
        system: ThomasSystem,
        solution: ThomasSolution,
        shift: Shift,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Synthesis {
    pub route: Route,
    /// A weight making every member stable, verified by the oracle.
    pub weight: Option<Weight>,
    /// One report per member under `weight`.
    pub reports: Vec<StabilityReport>,
    pub primes: Vec<u64>,
}

impl Synthesis {
    pub fn found(&self) -> bool {
        self.weight.is_some()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("all members are regular, the tube route needs a tube catalog")]
    MissingCatalog,
    #[error("member {index}: {source}")]
    Locate { index: usize, source: LocateError },
    #[error(transparent)]
    Thomas(#[from] ThomasError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("weight {weight} does not make member {index} stable")]
    VerificationFailed { index: usize, weight: Weight },
}

/// Finds a common stability weight for a validated sequence. Any weight
/// returned has been checked against every member with the oracle.
pub fn synthesize_weight<T: RationalField>(
    seq: &SchurSequence<T>,
    cat: Option<&TubeCatalog<T>>,
    config: &OracleConfig,
    mode: &ShiftMode,
) -> Result<Synthesis, SynthesisError> {
    let q = seq.quiver().clone();
    let sets = seq
        .members()
        .iter()
        .map(|v| subrep_dimvectors_all(v, config))
        .collect::<Result<Vec<_>, _>>()?;
    let verify = |theta: &Weight| -> Result<Vec<StabilityReport>, SynthesisError> {
        let reports: Vec<_> = sets.iter().map(|s| stability_from_set(s, theta)).collect();
        match reports.iter().position(|r| !r.is_stable()) {
            Some(index) => Err(SynthesisError::VerificationFailed {
                index,
                weight: theta.clone(),
            }),
            None => Ok(reports),
        }
    };
    if seq.is_all_regular() {
        let cat = cat.ok_or(SynthesisError::MissingCatalog)?;
        let locations = seq
            .members()
            .iter()
            .enumerate()
            .map(|(index, v)| {
                locate_in_tube(v, cat).map_err(|source| SynthesisError::Locate { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let located: Vec<TubePosition> = locations
            .iter()
            .filter_map(|l| match l {
                Location::Tube(p) => Some(*p),
                Location::Homogeneous => None,
            })
            .collect();
        let members: Vec<TubePosition> = (0..cat.tubes().len())
            .flat_map(|t| maximal_extension(&located, t, cat))
            .collect();
        let system = assemble_thomas(cat, &members)?;
        let solution = solve_thomas(&system)?;
        let n = match mode {
            ShiftMode::Exact(_) => exact_n(&q, &solution.theta, &sets).map_err(ShiftError::from)?,
            ShiftMode::Bound => {
                let refs: Vec<_> = seq.members().iter().collect();
                Some(bound_n(&solution.theta, &refs))
            }
        };
        let shift = sigma_from_n(&q, &solution.theta, n, mode.name())?;
        let reports = verify(&shift.sigma)?;
        return Ok(Synthesis {
            weight: Some(shift.sigma.clone()),
            route: Route::Tube {
                locations,
                members,
                system,
                solution,
                shift,
            },
            reports,
            primes: config.primes.clone(),
        });
    }
    let order = match q.classify() {
        QuiverClass::Wild => None,
        _ => Some(exceptional_order(seq)?),
    };
    let problem = FeasibilityProblem::from_oracle_sets(q.vertex_count(), &sets);
    let (weight, reports) = match find_weight(&problem) {
        Feasibility::Feasible(theta) => {
            let reports = verify(&theta)?;
            (Some(theta), reports)
        }
        Feasibility::Infeasible => (None, Vec::new()),
    };
    Ok(Synthesis {
        route: Route::Linear { order },
        weight,
        reports,
        primes: config.primes.clone(),
    })
}

/// Groups located members by tube, keeping input order.
pub fn positions_by_tube(locations: &[Location]) -> BTreeMap<usize, Vec<TubePosition>> {
    let mut out: BTreeMap<usize, Vec<TubePosition>> = BTreeMap::new();
    for l in locations {
        if let Location::Tube(p) = l {
            out.entry(p.tube).or_default().push(*p);
        }
    }
    out
}
