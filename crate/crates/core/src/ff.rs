//! Prime-field arithmetic and enumeration of subspaces of `F_p^d`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // Fermat; p is prime wherever this is called.
    Some(pow_mod(a, p - 2, p))
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModpMatrix {
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn apply(&self, v: &[u64], p: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|r| (0..self.cols).fold(0, |acc, c| (acc + mul_mod(self.get(r, c), v[c], p)) % p))
            .collect()
    }
}

/// A subspace of `F_p^d` stored as the rows of its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u64], p: u64) -> bool {
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = (*wi + p - mul_mod(f, *ri, p)) % p;
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// Number of `k`-dimensional subspaces of `F_p^d` (Gaussian binomial).
pub fn subspace_count(p: u64, d: usize, k: usize) -> u128 {
    if k > d {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= p.pow((d - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Total number of subspaces of `F_p^d`.
pub fn total_subspace_count(p: u64, d: usize) -> u128 {
    (0..=d).map(|k| subspace_count(p, d, k)).sum()
}

type SubspaceCache = Mutex<HashMap<(u64, usize), Arc<Vec<Subspace>>>>;

fn cache() -> &'static SubspaceCache {
    static CACHE: OnceLock<SubspaceCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Every subspace of `F_p^d`, each exactly once, via reduced echelon
/// representatives. Results are cached per `(p, d)`.
pub fn all_subspaces(p: u64, d: usize) -> Arc<Vec<Subspace>> {
    if let Some(hit) = cache().lock().expect("cache poisoned").get(&(p, d)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            echelon_fill(p, d, &pivots, &mut out);
        }
    }
    let out = Arc::new(out);
    cache()
        .lock()
        .expect("cache poisoned")
        .insert((p, d), out.clone());
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Appends every reduced echelon basis with the given pivot columns.
fn echelon_fill(p: u64, d: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    // Free slots: (row, col) with col > pivot(row) and col not a pivot column.
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &pc)| {
            (pc + 1..d)
                .filter(|c| !pivots.contains(c))
                .map(move |c| (r, c))
        })
        .collect();
    let mut values = vec![0u64; free.len()];
    loop {
        let mut basis: Vec<Vec<u64>> = pivots
            .iter()
            .map(|&pc| {
                let mut row = vec![0; d];
                row[pc] = 1;
                row
            })
            .collect();
        for (&(r, c), &v) in free.iter().zip(&values) {
            basis[r][c] = v;
        }
        out.push(Subspace {
            basis,
            pivots: pivots.to_vec(),
        });
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == values.len() {
                return;
            }
            values[i] += 1;
            if values[i] < p {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse() {
        for p in [2, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p).unwrap(), p), 1);
            }
            assert_eq!(inv_mod(0, p), None);
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn enumeration_matches_gaussian_binomials() {
        for p in [2, 3, 5] {
            for d in 0..=3 {
                let subs = all_subspaces(p, d);
                assert_eq!(
                    subs.len() as u128,
                    total_subspace_count(p, d),
                    "p={p} d={d}"
                );
                for k in 0..=d {
                    let n = subs.iter().filter(|s| s.dim() == k).count() as u128;
                    assert_eq!(n, subspace_count(p, d, k));
                }
            }
        }
        // F_5^2: 1 + 6 + 1 subspaces.
        assert_eq!(total_subspace_count(5, 2), 8);
    }

    #[test]
    fn containment() {
        let subs = all_subspaces(5, 2);
        let line = subs.iter().find(|s| s.basis == vec![vec![1, 2]]).unwrap();
        assert!(line.contains(&[2, 4], 5));
        assert!(!line.contains(&[1, 0], 5));
        assert!(line.contains(&[0, 0], 5));
    }
}
