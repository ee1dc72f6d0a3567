//! Quivers, dimension vectors, weights and the bilinear forms attached to
//! them.
//!
//! Vectors are indexed by the position of a vertex in [`Quiver::vertices`].
//! The Euler form is `<a, b> = sum_x a(x) b(x) - sum_arrows a(t) b(h)` and
//! its Gram matrix `C` (so `<a, b> = a^T C b`) is what [`Quiver::euler_matrix`]
//! returns.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::primitive_integer_vector;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver has no vertices")]
    Empty,
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow id {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} references unknown vertex {vertex:?}")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("quiver has an oriented cycle through vertex {0:?}")]
    OrientedCycle(String),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("vector has length {got}, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation needs a Euclidean quiver, this one is {0}")]
    NotEuclidean(QuiverClass),
}

/// Dynkin / Euclidean / wild trichotomy of a connected acyclic quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuiverClass {
    Dynkin,
    /// Carries the primitive positive radical vector.
    Euclidean(DimensionVector),
    Wild,
}

impl fmt::Display for QuiverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverClass::Dynkin => write!(f, "Dynkin"),
            QuiverClass::Euclidean(d) => write!(f, "Euclidean(delta={d})"),
            QuiverClass::Wild => write!(f, "Wild"),
        }
    }
}

impl QuiverClass {
    pub fn name(&self) -> &'static str {
        match self {
            QuiverClass::Dynkin => "Dynkin",
            QuiverClass::Euclidean(_) => "Euclidean",
            QuiverClass::Wild => "Wild",
        }
    }

    pub fn delta(&self) -> Option<&DimensionVector> {
        match self {
            QuiverClass::Euclidean(d) => Some(d),
            _ => None,
        }
    }
}

/// Nonnegative integer vector indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DimensionVector(Vec<i64>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("dimension vector entry {index} is negative ({value})")]
pub struct NegativeDimension {
    pub index: usize,
    pub value: i64,
}

impl DimensionVector {
    pub fn new(entries: Vec<i64>) -> Result<Self, NegativeDimension> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, v)| **v < 0) {
            return Err(NegativeDimension { index, value });
        }
        Ok(Self(entries))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, x: usize) -> Self {
        let mut v = vec![0; n];
        v[x] = 1;
        Self(v)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn get(&self, x: usize) -> i64 {
        self.0[x]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        assert!(k >= 0, "dimension vectors scale by nonnegative integers");
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn fits_in(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<i64>> for DimensionVector {
    type Error = NegativeDimension;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<DimensionVector> for Vec<i64> {
    fn from(v: DimensionVector) -> Self {
        v.0
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

/// Integer weight `theta`, acting on dimension vectors by the dot product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, v: &[i64]) -> i64 {
        assert_eq!(v.len(), self.0.len(), "weight and vector lengths differ");
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn eval_dim(&self, d: &DimensionVector) -> i64 {
        self.eval(d.as_slice())
    }

    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }

    /// Parses `"t1,t2,...,tn"`.
    pub fn parse(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| format!("bad weight entry {t:?}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

fn fmt_tuple(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// A finite, connected quiver without oriented cycles.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    topo_order: Vec<usize>,
    class: QuiverClass,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from vertex names and `(id, tail, head)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(QuiverError::Empty);
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        let mut built = Vec::new();
        for (id, tail, head) in arrows {
            if !ids.insert(id.clone()) {
                return Err(QuiverError::DuplicateArrow(id));
            }
            let lookup = |v: &String| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| QuiverError::UnknownVertex {
                        arrow: id.clone(),
                        vertex: v.clone(),
                    })
            };
            let (t, h) = (lookup(&tail)?, lookup(&head)?);
            built.push(Arrow {
                id,
                tail: t,
                head: h,
            });
        }
        Self::from_parts(vertices, built)
    }

    fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let n = vertices.len();
        // Kahn's algorithm; smallest index first keeps the order canonical.
        let mut indeg = vec![0usize; n];
        for a in &arrows {
            indeg[a.head] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for a in arrows.iter().filter(|a| a.tail == v) {
                indeg[a.head] -= 1;
                if indeg[a.head] == 0 {
                    ready.insert(a.head);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(QuiverError::OrientedCycle(vertices[stuck].clone()));
        }
        // Connectivity of the underlying graph.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &arrows {
                for (from, to) in [(a.tail, a.head), (a.head, a.tail)] {
                    if from == v && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(QuiverError::Disconnected);
        }
        let mut q = Self {
            vertices,
            arrows,
            topo_order: topo,
            class: QuiverClass::Wild,
        };
        q.class = classify_symmetric(&q.symmetrized_euler_matrix());
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Vertices ordered so that every arrow goes forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo_order
    }

    pub fn arrow_count_between(&self, tail: usize, head: usize) -> i64 {
        self.arrows
            .iter()
            .filter(|a| a.tail == tail && a.head == head)
            .count() as i64
    }

    fn check_len(&self, v: &[i64]) -> Result<(), QuiverError> {
        if v.len() != self.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.vertex_count(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn euler_form(&self, alpha: &[i64], beta: &[i64]) -> Result<i64, QuiverError> {
        self.check_len(alpha)?;
        self.check_len(beta)?;
        let diag: i64 = alpha.iter().zip(beta).map(|(a, b)| a * b).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| alpha[a.tail] * beta[a.head])
            .sum();
        Ok(diag - off)
    }

    /// Tits form `q(a) = <a, a>`.
    pub fn tits_form(&self, alpha: &[i64]) -> Result<i64, QuiverError> {
        self.euler_form(alpha, alpha)
    }

    /// Gram matrix `C` of the Euler form: `C = I - A` with `A[x][y]` the
    /// number of arrows `x -> y`.
    pub fn euler_matrix(&self) -> Matrix<i64> {
        let n = self.vertex_count();
        let mut c = Matrix::<i64>::identity(n);
        for a in &self.arrows {
            let v = *c.get(a.tail, a.head) - 1;
            c.set(a.tail, a.head, v);
        }
        c
    }

    pub fn symmetrized_euler_matrix(&self) -> Matrix<i64> {
        let c = self.euler_matrix();
        c.add(&c.transpose()).expect("square")
    }

    pub fn classify(&self) -> &QuiverClass {
        &self.class
    }

    /// The radical vector of a Euclidean quiver.
    pub fn delta(&self) -> Result<&DimensionVector, QuiverError> {
        self.class
            .delta()
            .ok_or_else(|| QuiverError::NotEuclidean(self.class.clone()))
    }

    /// `<delta, alpha>`.
    pub fn defect(&self, alpha: &[i64]) -> Result<i64, QuiverError> {
        let delta = self.delta()?;
        self.euler_form(delta.as_slice(), alpha)
    }

    /// The weight `i -> <delta, e_i>`.
    pub fn defect_weight(&self) -> Result<Weight, QuiverError> {
        let delta = self.delta()?.clone();
        let n = self.vertex_count();
        (0..n)
            .map(|i| self.euler_form(delta.as_slice(), DimensionVector::unit(n, i).as_slice()))
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }

    /// Coxeter matrix `Phi = -C^{-1} C^T`, the unique matrix with
    /// `<b, Phi a> = -<a, b>` for all `a`, `b`. It realises the
    /// Auslander-Reiten translate on dimension vectors of non-projective
    /// indecomposables.
    pub fn coxeter_matrix(&self) -> Matrix<i64> {
        let c = self
            .euler_matrix()
            .map(|&v| Rational::from_integer(v.into()));
        let inv = c.inverse().expect("Euler matrix is unitriangular");
        let phi = inv.mul(&c.transpose()).expect("square").map(|v| -v.clone());
        phi.map(|v| {
            assert!(v.is_integer(), "Coxeter matrix is integral");
            v.to_integer().to_i64().expect("small entries")
        })
    }

    /// The weight `x -> <alpha, e_x> - <e_x, alpha>`. It vanishes on `alpha`.
    pub fn weight_from_dimvec(&self, alpha: &[i64]) -> Result<Weight, QuiverError> {
        self.check_len(alpha)?;
        let n = self.vertex_count();
        (0..n)
            .map(|x| {
                let e = DimensionVector::unit(n, x);
                Ok(self.euler_form(alpha, e.as_slice())? - self.euler_form(e.as_slice(), alpha)?)
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }

    pub fn format_vector(&self, v: &[i64]) -> String {
        let parts: Vec<String> = v.iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// Outcome of symmetric elimination on an integer symmetric matrix.
fn classify_symmetric(b: &Matrix<i64>) -> QuiverClass {
    let n = b.rows();
    let mut m = b.map(|&v| Rational::from_integer(v.into()));
    let mut zero_pivots = 0;
    // Elimination with diagonal pivots only. A zero pivot forces the rest of
    // its row to vanish for semidefiniteness.
    for k in 0..n {
        let pivot = m.get(k, k).clone();
        if pivot.is_negative() {
            return QuiverClass::Wild;
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !m.get(k, j).is_zero()) {
                return QuiverClass::Wild;
            }
            zero_pivots += 1;
            continue;
        }
        for i in k + 1..n {
            let f = m.get(i, k).clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = m.get(i, j).clone() - f.clone() * m.get(k, j).clone();
                m.set(i, j, v);
            }
        }
    }
    match zero_pivots {
        0 => QuiverClass::Dynkin,
        1 => {
            let bq = b.map(|&v| Rational::from_integer(v.into()));
            let kernel = bq.kernel_basis();
            debug_assert_eq!(kernel.len(), 1);
            let mut ints = primitive_integer_vector(&kernel[0]);
            if ints.iter().any(|v| v.is_negative()) {
                ints = ints.into_iter().map(|v| -v).collect();
            }
            let delta: Vec<i64> = ints
                .iter()
                .map(|v: &BigInt| v.to_i64().expect("small entries"))
                .collect();
            match DimensionVector::new(delta) {
                Ok(d) if d.as_slice().iter().all(|&x| x > 0) => QuiverClass::Euclidean(d),
                // A semidefinite form on a connected quiver always has a
                // sincere positive radical generator; anything else is not
                // of Euclidean type.
                _ => QuiverClass::Wild,
            }
        }
        _ => QuiverClass::Wild,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        Quiver::new(
            (1..=n).map(|i| i.to_string()),
            arrows
                .iter()
                .enumerate()
                .map(|(k, (t, h))| (format!("a{k}"), t.to_string(), h.to_string())),
        )
        .unwrap()
    }

    fn d5() -> Quiver {
        quiver(6, &[(1, 5), (4, 5), (5, 6), (6, 2), (6, 3)])
    }

    #[test]
    fn construction_errors() {
        let cyc = Quiver::new(
            ["1", "2"],
            [
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        );
        assert!(matches!(cyc, Err(QuiverError::OrientedCycle(_))));
        let disc = Quiver::new(["1", "2"], Vec::new());
        assert_eq!(disc.unwrap_err(), QuiverError::Disconnected);
        let unknown = Quiver::new(["1"], [("a".into(), "1".into(), "9".into())]);
        assert!(matches!(unknown, Err(QuiverError::UnknownVertex { .. })));
        assert_eq!(
            Quiver::new(Vec::<String>::new(), Vec::new()).unwrap_err(),
            QuiverError::Empty
        );
    }

    #[test]
    fn euler_form_examples() {
        let q = d5();
        for x in 0..6 {
            let e = DimensionVector::unit(6, x);
            assert_eq!(q.euler_form(e.as_slice(), e.as_slice()).unwrap(), 1);
        }
        let delta = [1, 1, 1, 1, 2, 2];
        assert_eq!(q.euler_form(&delta, &delta).unwrap(), 0);
        assert_eq!(q.euler_form(&[1; 6], &[0, 0, 0, 0, 1, 0]).unwrap(), -1);
        assert!(matches!(
            q.euler_form(&[1, 2], &delta),
            Err(QuiverError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tits_form_examples() {
        let k3 = quiver(2, &[(1, 2), (1, 2), (1, 2)]);
        assert_eq!(k3.tits_form(&[1, 1]).unwrap(), -1);
        assert_eq!(d5().tits_form(&[1, 1, 1, 1, 2, 2]).unwrap(), 0);
    }

    #[test]
    fn classification() {
        assert_eq!(
            *quiver(3, &[(1, 2), (2, 3)]).classify(),
            QuiverClass::Dynkin
        );
        assert_eq!(
            *d5().classify(),
            QuiverClass::Euclidean(DimensionVector::new(vec![1, 1, 1, 1, 2, 2]).unwrap())
        );
        assert_eq!(
            *quiver(2, &[(1, 2), (1, 2), (1, 2)]).classify(),
            QuiverClass::Wild
        );
        assert_eq!(
            quiver(2, &[(1, 2), (1, 2)])
                .classify()
                .delta()
                .unwrap()
                .as_slice(),
            &[1, 1]
        );
        // D4 star and E6 are Dynkin; the 5-star is Euclidean with delta (2,1,1,1,1).
        assert_eq!(
            *quiver(4, &[(2, 1), (3, 1), (4, 1)]).classify(),
            QuiverClass::Dynkin
        );
        assert_eq!(
            *quiver(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)]).classify(),
            QuiverClass::Dynkin
        );
        assert_eq!(
            quiver(5, &[(2, 1), (3, 1), (4, 1), (5, 1)])
                .classify()
                .delta()
                .unwrap()
                .as_slice(),
            &[2, 1, 1, 1, 1]
        );
        // Cyclic orientation of a 3-cycle underlying graph: affine A2.
        assert_eq!(
            quiver(3, &[(1, 2), (2, 3), (1, 3)])
                .classify()
                .delta()
                .unwrap()
                .as_slice(),
            &[1, 1, 1]
        );
    }

    #[test]
    fn defect_and_defect_weight() {
        let q = d5();
        assert_eq!(q.defect(&[1, 1, 1, 1, 2, 2]).unwrap(), 0);
        assert_eq!(q.defect(&[1, 0, 0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(q.defect(&[1; 6]).unwrap(), 0);
        let w = q.defect_weight().unwrap();
        assert_eq!(w.0, vec![1, -1, -1, 1, 0, 0]);
        assert_eq!(w.eval(&[1, 1, 1, 1, 2, 2]), 0);
        // Projective P2 = e2 (vertex 2 is a sink).
        assert!(w.eval(&[0, 1, 0, 0, 0, 0]) < 0);
        let a3 = quiver(3, &[(1, 2), (2, 3)]);
        assert!(matches!(
            a3.defect(&[1, 0, 0]),
            Err(QuiverError::NotEuclidean(_))
        ));
        assert!(a3.defect_weight().is_err());
    }

    #[test]
    fn coxeter_identity_and_orbit() {
        let q = d5();
        let c = q.euler_matrix();
        let phi = q.coxeter_matrix();
        // C * Phi + C^T = 0  <=>  <b, Phi a> = -<a, b>.
        assert!(c.mul(&phi).unwrap().add(&c.transpose()).unwrap().is_zero());
        assert_eq!(phi.mul_vec(&[1, 1, 1, 1, 2, 2]), vec![1, 1, 1, 1, 2, 2]);
        assert_eq!(phi.mul_vec(&[1; 6]), vec![0, 0, 0, 0, 1, 0]);
        assert_eq!(phi.mul_vec(&[0, 0, 0, 0, 1, 0]), vec![0, 0, 0, 0, 0, 1]);
        assert_eq!(phi.mul_vec(&[0, 0, 0, 0, 0, 1]), vec![1; 6]);
    }

    #[test]
    fn weight_from_dimvec_examples() {
        let a3 = quiver(3, &[(1, 2), (2, 3)]);
        assert_eq!(a3.weight_from_dimvec(&[1, 1, 1]).unwrap().0, vec![1, 0, -1]);
        let a2 = quiver(2, &[(1, 2)]);
        let w = a2.weight_from_dimvec(&[1, 0]).unwrap();
        assert_eq!(w.eval(&[0, 1]), -1);
        assert_eq!(w.eval(&[1, 0]), 0);
        let w = a2.weight_from_dimvec(&[0, 1]).unwrap();
        assert_eq!(w.0, vec![1, 0]);
    }

    #[test]
    fn dimension_vector_rejects_negatives() {
        assert_eq!(
            DimensionVector::new(vec![1, -2]).unwrap_err(),
            NegativeDimension {
                index: 1,
                value: -2
            }
        );
        assert_eq!(Weight::parse("3,-1, 2").unwrap().0, vec![3, -1, 2]);
        assert!(Weight::parse("3,x").is_err());
    }
}
