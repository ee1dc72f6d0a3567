//! Representations, Hom spaces and endomorphism algebras.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ff::{is_prime, ModpMatrix};
use crate::linalg::Matrix;
use crate::quiver::{DimensionVector, Quiver};
use crate::scalar::{Field, RationalField};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("arrow {arrow:?} needs a {rows}x{cols} matrix, got {got_rows}x{got_cols}")]
    BadShape {
        arrow: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("expected {expected} arrow matrices, got {got}")]
    ArrowCount { expected: usize, got: usize },
    #[error("direct sum of an empty list")]
    EmptySum,
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("zero representation")]
    ZeroRepresentation,
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: &'static str },
    #[error("negative Ext dimension {0}: inconsistent input")]
    NegativeExt(i64),
}

/// A representation: a vector space `K^dim(x)` at each vertex and a matrix
/// `dim(h) x dim(t)` for each arrow `t -> h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<T = Rational> {
    quiver: Arc<Quiver>,
    dim: DimensionVector,
    matrices: Vec<Matrix<T>>,
}

impl<T: Field> Representation<T> {
    pub fn new(
        quiver: Arc<Quiver>,
        dim: DimensionVector,
        matrices: Vec<Matrix<T>>,
    ) -> Result<Self, RepError> {
        if matrices.len() != quiver.arrows().len() {
            return Err(RepError::ArrowCount {
                expected: quiver.arrows().len(),
                got: matrices.len(),
            });
        }
        assert_eq!(dim.len(), quiver.vertex_count(), "dimension vector length");
        for (a, m) in quiver.arrows().iter().zip(&matrices) {
            let (rows, cols) = (dim.get(a.head) as usize, dim.get(a.tail) as usize);
            if m.rows() != rows || m.cols() != cols {
                return Err(RepError::BadShape {
                    arrow: a.id.clone(),
                    rows,
                    cols,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        Ok(Self {
            quiver,
            dim,
            matrices,
        })
    }

    /// The simple representation at vertex `x`.
    pub fn simple(quiver: Arc<Quiver>, x: usize) -> Self {
        let n = quiver.vertex_count();
        Self::zero_maps(quiver, DimensionVector::unit(n, x))
    }

    /// The representation with the given dimensions and every map zero.
    pub fn zero_maps(quiver: Arc<Quiver>, dim: DimensionVector) -> Self {
        let matrices = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dim.get(a.head) as usize, dim.get(a.tail) as usize))
            .collect();
        Self {
            quiver,
            dim,
            matrices,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimensionVector {
        &self.dim
    }

    pub fn dim_at(&self, x: usize) -> usize {
        self.dim.get(x) as usize
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    pub fn matrix(&self, arrow: usize) -> &Matrix<T> {
        &self.matrices[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dim.is_zero()
    }

    fn same_quiver(&self, other: &Self) -> Result<(), RepError> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver {
            Ok(())
        } else {
            Err(RepError::QuiverMismatch)
        }
    }
}

/// Block-diagonal direct sum `V_1^{m_1} + ... + V_r^{m_r}`.
pub fn direct_sum<T: Field>(
    parts: &[(&Representation<T>, usize)],
) -> Result<Representation<T>, RepError> {
    let (first, _) = parts.first().ok_or(RepError::EmptySum)?;
    let mut copies: Vec<&Representation<T>> = Vec::new();
    for &(v, m) in parts {
        first.same_quiver(v)?;
        if m == 0 {
            return Err(RepError::ZeroMultiplicity);
        }
        copies.extend(std::iter::repeat_n(v, m));
    }
    let n = first.quiver.vertex_count();
    let dim = copies
        .iter()
        .fold(DimensionVector::zero(n), |acc, v| acc.add(&v.dim));
    let matrices = (0..first.quiver.arrows().len())
        .map(|a| {
            let blocks: Vec<&Matrix<T>> = copies.iter().map(|v| &v.matrices[a]).collect();
            Matrix::block_diagonal(&blocks)
        })
        .collect();
    Representation::new(first.quiver.clone(), dim, matrices)
}

/// A morphism `V -> W`: one matrix `dim_W(x) x dim_V(x)` per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism<T = Rational> {
    pub components: Vec<Matrix<T>>,
}

impl<T: Field> Morphism<T> {
    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.mul(b).expect("composable morphisms"))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Checks `phi(h) V(a) = W(a) phi(t)` on every arrow.
    pub fn commutes(&self, v: &Representation<T>, w: &Representation<T>) -> bool {
        v.quiver.arrows().iter().enumerate().all(|(i, a)| {
            let lhs = self.components[a.head].mul(&v.matrices[i]).expect("shape");
            let rhs = w.matrices[i].mul(&self.components[a.tail]).expect("shape");
            lhs == rhs
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }
}

/// Basis of `Hom(V, W)`.
///
/// Morphisms are flattened vertex by vertex (row-major within each vertex).
/// Basis element `k` is 1 at flat coordinate `free_coords[k]` and 0 at every
/// other free coordinate, so coordinates of any element of the span can be
/// read off directly.
#[derive(Clone, Debug)]
pub struct MorphismBasis<T = Rational> {
    pub basis: Vec<Morphism<T>>,
    free_coords: Vec<usize>,
    offsets: Vec<usize>,
    col_dims: Vec<usize>,
}

impl<T: Field> MorphismBasis<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    fn flat_entry(&self, m: &Morphism<T>, coord: usize) -> T {
        let x = self.offsets.partition_point(|&o| o <= coord) - 1;
        let local = coord - self.offsets[x];
        let cols = self.col_dims[x];
        m.components[x].get(local / cols, local % cols).clone()
    }

    /// Coordinates of a morphism known to lie in the span.
    pub fn coordinates(&self, m: &Morphism<T>) -> Vec<T> {
        self.free_coords
            .iter()
            .map(|&c| self.flat_entry(m, c))
            .collect()
    }

    pub fn combination(&self, coeffs: &[T]) -> Option<Morphism<T>> {
        let first = self.basis.first()?;
        let mut acc: Vec<Matrix<T>> = first
            .components
            .iter()
            .map(|c| Matrix::zeros(c.rows(), c.cols()))
            .collect();
        for (b, k) in self.basis.iter().zip(coeffs) {
            if k.is_zero() {
                continue;
            }
            for (a, c) in acc.iter_mut().zip(&b.components) {
                *a = a.add(&c.scale(k)).expect("same shape");
            }
        }
        Some(Morphism { components: acc })
    }
}

/// Union-find over flat coordinates.
struct Components {
    parent: Vec<usize>,
}

impl Components {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// `Hom(V, W)` as the kernel of the commutation operator
/// `phi -> (phi(h) V(a) - W(a) phi(t))_a`.
///
/// The linear system is split into connected blocks of unknowns before
/// elimination, which makes direct sums cost no more than their summands.
pub fn hom_space<T: Field>(
    v: &Representation<T>,
    w: &Representation<T>,
) -> Result<MorphismBasis<T>, RepError> {
    v.same_quiver(w)?;
    let q = &v.quiver;
    let n = q.vertex_count();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut col_dims = Vec::with_capacity(n);
    let mut total = 0;
    for x in 0..n {
        offsets.push(total);
        col_dims.push(v.dim_at(x));
        total += w.dim_at(x) * v.dim_at(x);
    }
    offsets.push(total);
    let var = |x: usize, r: usize, c: usize| offsets[x] + r * col_dims[x] + c;

    // Sparse equations, one per arrow entry.
    let mut equations: Vec<Vec<(usize, T)>> = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        let va = &v.matrices[i];
        let wa = &w.matrices[i];
        for r in 0..w.dim_at(h) {
            for c in 0..v.dim_at(t) {
                let mut eq = Vec::new();
                // sum_k phi(h)[r][k] V(a)[k][c]
                for k in 0..v.dim_at(h) {
                    let coeff = va.get(k, c);
                    if !coeff.is_zero() {
                        eq.push((var(h, r, k), coeff.clone()));
                    }
                }
                // - sum_k W(a)[r][k] phi(t)[k][c]
                for k in 0..w.dim_at(t) {
                    let coeff = wa.get(r, k);
                    if !coeff.is_zero() {
                        eq.push((var(t, k, c), -coeff.clone()));
                    }
                }
                if !eq.is_empty() {
                    equations.push(merge_terms(eq));
                }
            }
        }
    }

    let mut uf = Components::new(total);
    for eq in &equations {
        for pair in eq.windows(2) {
            uf.union(pair[0].0, pair[1].0);
        }
    }
    let mut block_vars: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..total {
        let root = uf.find(x);
        block_vars.entry(root).or_default().push(x);
    }
    let mut block_eqs: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, eq) in equations.iter().enumerate() {
        if let Some(&(first, _)) = eq.first() {
            let root = uf.find(first);
            block_eqs.entry(root).or_default().push(i);
        }
    }

    let mut flat_basis: Vec<(usize, Vec<(usize, T)>)> = Vec::new();
    for (root, vars) in &block_vars {
        let eqs = block_eqs.get(root).map(Vec::as_slice).unwrap_or(&[]);
        if eqs.is_empty() {
            for &x in vars {
                flat_basis.push((x, vec![(x, T::one())]));
            }
            continue;
        }
        let local: std::collections::HashMap<usize, usize> =
            vars.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut m = Matrix::zeros(eqs.len(), vars.len());
        for (r, &e) in eqs.iter().enumerate() {
            for (x, c) in &equations[e] {
                m.set(r, local[x], c.clone());
            }
        }
        let rref = m.rref();
        let mut is_pivot = vec![false; vars.len()];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let free_locals: Vec<usize> = (0..vars.len()).filter(|&c| !is_pivot[c]).collect();
        for (kv, &fl) in m.kernel_basis().into_iter().zip(&free_locals) {
            let sparse = kv
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (vars[i], c))
                .collect();
            flat_basis.push((vars[fl], sparse));
        }
    }
    flat_basis.sort_by_key(|(free, _)| *free);

    let mut basis = Vec::with_capacity(flat_basis.len());
    let mut free_coords = Vec::with_capacity(flat_basis.len());
    for (free, sparse) in flat_basis {
        let mut components: Vec<Matrix<T>> = (0..n)
            .map(|x| Matrix::zeros(w.dim_at(x), v.dim_at(x)))
            .collect();
        for (coord, val) in sparse {
            let x = offsets.partition_point(|&o| o <= coord) - 1;
            let local = coord - offsets[x];
            components[x].set(local / col_dims[x], local % col_dims[x], val);
        }
        basis.push(Morphism { components });
        free_coords.push(free);
    }
    Ok(MorphismBasis {
        basis,
        free_coords,
        offsets,
        col_dims,
    })
}

fn merge_terms<T: Field>(mut eq: Vec<(usize, T)>) -> Vec<(usize, T)> {
    eq.sort_by_key(|(x, _)| *x);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(eq.len());
    for (x, c) in eq {
        match out.last_mut() {
            Some((lx, lc)) if *lx == x => *lc = lc.clone() + c,
            _ => out.push((x, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn hom_dim<T: Field>(v: &Representation<T>, w: &Representation<T>) -> Result<usize, RepError> {
    hom_space(v, w).map(|h| h.dim())
}

/// `dim Ext^1(V, W) = dim Hom(V, W) - <dim V, dim W>` (the path algebra is
/// hereditary).
pub fn ext1_dim<T: Field>(v: &Representation<T>, w: &Representation<T>) -> Result<usize, RepError> {
    let hom = hom_dim(v, w)? as i64;
    let euler = v
        .quiver
        .euler_form(v.dim.as_slice(), w.dim.as_slice())
        .expect("same quiver");
    let ext = hom - euler;
    if ext < 0 {
        return Err(RepError::NegativeExt(ext));
    }
    Ok(ext as usize)
}

/// `End(V)` with its multiplication table: `f_i f_j = sum_k c[i][j][k] f_k`.
#[derive(Clone, Debug)]
pub struct EndAlgebra<T = Rational> {
    pub basis: MorphismBasis<T>,
    structure: Vec<T>,
    pub identity: Vec<T>,
}

impl<T: Field> EndAlgebra<T> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &T {
        let n = self.dim();
        &self.structure[(i * n + j) * n + k]
    }

    /// Product of two elements given in coordinates.
    pub fn multiply(&self, a: &[T], b: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut out = vec![T::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.clone() * bj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + ab.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Trace of left multiplication by each basis element.
    fn left_traces(&self) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|l| {
                (0..n).fold(T::zero(), |acc, k| {
                    acc + self.structure_constant(l, k, k).clone()
                })
            })
            .collect()
    }

    /// Gram matrix of the trace form `(a, b) -> tr(L_{ab})`.
    pub fn trace_form(&self) -> Matrix<T> {
        let n = self.dim();
        let tr = self.left_traces();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = (0..n).fold(T::zero(), |acc, l| {
                    acc + self.structure_constant(i, j, l).clone() * tr[l].clone()
                });
                g.set(i, j, v);
            }
        }
        g
    }

    /// Basis of the Jacobson radical: the kernel of the trace form
    /// (valid in characteristic zero).
    pub fn radical_basis(&self) -> Vec<Vec<T>> {
        self.trace_form().kernel_basis()
    }

    pub fn radical_dim(&self) -> usize {
        self.dim() - self.trace_form().rank()
    }
}

pub fn end_algebra<T: Field>(v: &Representation<T>) -> EndAlgebra<T> {
    let basis = hom_space(v, v).expect("same quiver");
    let n = basis.dim();
    let mut structure = Vec::with_capacity(n * n * n);
    for fi in &basis.basis {
        for fj in &basis.basis {
            let prod = fi.compose(fj);
            structure.extend(basis.coordinates(&prod));
        }
    }
    let identity_map = Morphism {
        components: (0..v.quiver.vertex_count())
            .map(|x| Matrix::identity(v.dim_at(x)))
            .collect(),
    };
    let identity = basis.coordinates(&identity_map);
    EndAlgebra {
        basis,
        structure,
        identity,
    }
}

pub fn radical_dim<T: Field>(a: &EndAlgebra<T>) -> usize {
    a.radical_dim()
}

/// `End(V) = K`.
pub fn is_schur<T: Field>(v: &Representation<T>) -> bool {
    hom_dim(v, v).expect("same quiver") == 1
}

/// `End(V)` is local, i.e. `End(V) / rad` is one-dimensional.
pub fn is_indecomposable<T: Field>(v: &Representation<T>) -> Result<bool, RepError> {
    if v.is_zero() {
        return Err(RepError::ZeroRepresentation);
    }
    let end = end_algebra(v);
    Ok(end.dim() - end.radical_dim() == 1)
}

const ISO_TRIALS: usize = 8;
const ISO_COEFF_RANGE: i64 = 8;
const ISO_GRID_LIMIT: u128 = 20_000;

/// Decides `V ~ W` by searching `Hom(V, W)` for an element invertible at
/// every vertex. Random trials come from a seeded generator; if they all
/// fail, the product of the vertex determinants (a polynomial of degree
/// `D = sum_x dim(x)` in the Hom coordinates) is tested for being
/// identically zero on a grid `{0..D}^m`, or along a moment curve when the
/// grid is too large.
pub fn are_isomorphic<T: Field>(
    v: &Representation<T>,
    w: &Representation<T>,
    seed: u64,
) -> Result<bool, RepError> {
    v.same_quiver(w)?;
    if v.dim != w.dim {
        return Ok(false);
    }
    if v.is_zero() {
        return Ok(true);
    }
    let hom = hom_space(v, w)?;
    let m = hom.dim();
    if m == 0 {
        return Ok(false);
    }
    let invertible_at = |coeffs: &[T]| {
        hom.combination(coeffs)
            .is_some_and(|phi| phi.is_invertible())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_TRIALS {
        let coeffs: Vec<T> = (0..m)
            .map(|_| T::from_int(rng.gen_range(-ISO_COEFF_RANGE..=ISO_COEFF_RANGE)))
            .collect();
        if invertible_at(&coeffs) {
            return Ok(true);
        }
    }
    let degree = v.dim.total() as u128;
    let grid = degree + 1;
    if grid
        .checked_pow(m as u32)
        .is_some_and(|g| g <= ISO_GRID_LIMIT)
    {
        let mut idx = vec![0u128; m];
        loop {
            let coeffs: Vec<T> = idx.iter().map(|&i| T::from_int(i as i64)).collect();
            if invertible_at(&coeffs) {
                return Ok(true);
            }
            let mut k = 0;
            loop {
                if k == m {
                    return Ok(false);
                }
                idx[k] += 1;
                if idx[k] < grid {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    // Moment curve c_i = s^i: the restriction has degree <= D (m - 1).
    let points = degree as usize * (m - 1) + 1;
    for s in 1..=points as i64 {
        let base = T::from_int(s);
        let mut coeffs = Vec::with_capacity(m);
        let mut pow = T::one();
        for _ in 0..m {
            coeffs.push(pow.clone());
            pow = pow * base.clone();
        }
        if invertible_at(&coeffs) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A representation with entries in `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModpRepresentation {
    pub p: u64,
    pub dim: DimensionVector,
    pub matrices: Vec<ModpMatrix>,
}

/// Entrywise reduction modulo a prime dividing no denominator.
pub fn reduce_mod_p<T: RationalField>(
    v: &Representation<T>,
    p: u64,
) -> Result<ModpRepresentation, RepError> {
    if !is_prime(p) {
        return Err(RepError::BadPrime {
            p,
            reason: "not a prime",
        });
    }
    let matrices = v
        .matrices
        .iter()
        .map(|m| {
            let data = m
                .entries()
                .iter()
                .map(|e| {
                    e.reduce_mod(p).ok_or(RepError::BadPrime {
                        p,
                        reason: "a denominator vanishes mod p",
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ModpMatrix {
                rows: m.rows(),
                cols: m.cols(),
                data,
            })
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    Ok(ModpRepresentation {
        p,
        dim: v.dim.clone(),
        matrices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn kronecker(arrows: usize) -> Arc<Quiver> {
        Arc::new(
            Quiver::new(
                ["1", "2"],
                (0..arrows).map(|i| (format!("a{i}"), "1".to_string(), "2".to_string())),
            )
            .unwrap(),
        )
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

    fn jordan_kronecker() -> Representation {
        let k2 = kronecker(2);
        Representation::new(
            k2,
            DimensionVector::new(vec![2, 2]).unwrap(),
            vec![mat(&[&[1, 0], &[0, 1]], 2), mat(&[&[0, 1], &[0, 0]], 2)],
        )
        .unwrap()
    }

    fn k2_line(lambda: i64) -> Representation {
        Representation::new(
            kronecker(2),
            DimensionVector::new(vec![1, 1]).unwrap(),
            vec![mat(&[&[1]], 1), mat(&[&[lambda]], 1)],
        )
        .unwrap()
    }

    #[test]
    fn shape_is_checked() {
        let err = Representation::new(
            kronecker(1),
            DimensionVector::new(vec![1, 2]).unwrap(),
            vec![mat(&[&[1]], 1)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            RepError::BadShape {
                rows: 2,
                cols: 1,
                ..
            }
        ));
    }

    #[test]
    fn hom_of_simples() {
        let q = a3();
        let s1 = Representation::<Rational>::simple(q.clone(), 0);
        let s2 = Representation::<Rational>::simple(q.clone(), 1);
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(ext1_dim(&s1, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
        let k3 = kronecker(3);
        let (t, h) = (
            Representation::<Rational>::simple(k3.clone(), 0),
            Representation::<Rational>::simple(k3, 1),
        );
        assert_eq!(ext1_dim(&t, &h).unwrap(), 3);
    }

    #[test]
    fn hom_basis_commutes() {
        let j = jordan_kronecker();
        let h = hom_space(&j, &j).unwrap();
        assert_eq!(h.dim(), 2);
        for b in &h.basis {
            assert!(b.commutes(&j, &j));
        }
    }

    #[test]
    fn end_algebra_examples() {
        let q = a3();
        let s = Representation::<Rational>::simple(q.clone(), 1);
        let e = end_algebra(&s);
        assert_eq!(e.dim(), 1);
        assert_eq!(*e.structure_constant(0, 0, 0), q_one());
        assert_eq!(e.radical_dim(), 0);

        let ss = direct_sum(&[(&s, 2)]).unwrap();
        let e = end_algebra(&ss);
        assert_eq!(e.dim(), 4);
        assert_eq!(e.radical_dim(), 0);

        let e = end_algebra(&jordan_kronecker());
        assert_eq!(e.dim(), 2);
        assert_eq!(e.radical_dim(), 1);
    }

    fn q_one() -> Rational {
        q(1)
    }

    #[test]
    fn identity_coordinates_are_a_unit() {
        let j = jordan_kronecker();
        let e = end_algebra(&j);
        let n = e.dim();
        for i in 0..n {
            let mut basis_i = vec![q(0); n];
            basis_i[i] = q(1);
            assert_eq!(e.multiply(&e.identity, &basis_i), basis_i);
            assert_eq!(e.multiply(&basis_i, &e.identity), basis_i);
        }
    }

    #[test]
    fn schur_and_indecomposable() {
        let q = a3();
        let s = Representation::<Rational>::simple(q.clone(), 0);
        let t = Representation::<Rational>::simple(q.clone(), 2);
        assert!(is_schur(&s));
        assert!(!is_schur(&direct_sum(&[(&s, 2)]).unwrap()));
        assert!(is_indecomposable(&s).unwrap());
        assert!(!is_indecomposable(&direct_sum(&[(&s, 1), (&t, 1)]).unwrap()).unwrap());
        assert!(is_indecomposable(&jordan_kronecker()).unwrap());
        assert!(!is_schur(&jordan_kronecker()));
        let zero = Representation::<Rational>::zero_maps(q, DimensionVector::zero(3));
        assert_eq!(is_indecomposable(&zero), Err(RepError::ZeroRepresentation));
    }

    #[test]
    fn k3_schur_and_diagonal_counterpart() {
        let rep = |third: Matrix<Rational>| {
            Representation::new(
                kronecker(3),
                DimensionVector::new(vec![2, 2]).unwrap(),
                vec![
                    mat(&[&[1, 0], &[0, 1]], 2),
                    mat(&[&[1, 0], &[0, 0]], 2),
                    third,
                ],
            )
            .unwrap()
        };
        // With three diagonal maps the coordinate lines split off.
        let diagonal = rep(mat(&[&[0, 0], &[0, 1]], 2));
        assert!(!is_schur(&diagonal));
        assert!(!is_indecomposable(&diagonal).unwrap());
        assert_eq!(end_algebra(&diagonal).radical_dim(), 0);
        let nilpotent = rep(mat(&[&[0, 1], &[0, 0]], 2));
        assert!(is_schur(&nilpotent));
    }

    #[test]
    fn isomorphism() {
        let a = k2_line(1);
        let b = k2_line(2);
        assert!(are_isomorphic(&a, &a, 0).unwrap());
        assert_eq!(hom_dim(&a, &b).unwrap(), 0);
        assert!(!are_isomorphic(&a, &b, 0).unwrap());
        let q = a3();
        assert!(!are_isomorphic(
            &Representation::<Rational>::simple(q.clone(), 0),
            &Representation::<Rational>::simple(q, 1),
            0
        )
        .unwrap());
        // A change of basis is detected.
        let c = Representation::new(
            kronecker(2),
            DimensionVector::new(vec![1, 1]).unwrap(),
            vec![mat(&[&[3]], 1), mat(&[&[3]], 1)],
        )
        .unwrap();
        assert!(are_isomorphic(&a, &c, 42).unwrap());
    }

    #[test]
    fn direct_sum_shapes() {
        let q = a3();
        let s = Representation::<Rational>::simple(q.clone(), 0);
        assert_eq!(direct_sum(&[(&s, 1)]).unwrap(), s);
        assert_eq!(direct_sum(&[(&s, 2)]).unwrap().dim().as_slice(), &[2, 0, 0]);
        assert_eq!(direct_sum::<Rational>(&[]), Err(RepError::EmptySum));
        assert_eq!(direct_sum(&[(&s, 0)]), Err(RepError::ZeroMultiplicity));
        let other = Representation::<Rational>::simple(kronecker(1), 0);
        assert_eq!(
            direct_sum(&[(&s, 1), (&other, 1)]),
            Err(RepError::QuiverMismatch)
        );
    }

    #[test]
    fn modular_reduction() {
        let half = Representation::new(
            kronecker(1),
            DimensionVector::new(vec![1, 1]).unwrap(),
            vec![Matrix::from_rows(vec![vec![Rational::new(1.into(), 2.into())]], 1).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            reduce_mod_p(&half, 2),
            Err(RepError::BadPrime { p: 2, .. })
        ));
        assert_eq!(reduce_mod_p(&half, 5).unwrap().matrices[0].data, vec![3]);
        assert!(matches!(
            reduce_mod_p(&half, 4),
            Err(RepError::BadPrime { .. })
        ));
        let j = jordan_kronecker();
        assert_eq!(
            reduce_mod_p(&j, 7).unwrap().matrices[1].data,
            vec![0, 1, 0, 0]
        );
    }
}
