use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::atoms::AtomSet;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Coefficient field for homology computations: the rationals (default) or a
/// prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::TooLarge(format!(
                "prime modulus {p} exceeds 2^31 - 1"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Parses the CLI spelling: `q`, `f2`, `f3`, `f101`, …
    pub fn parse(s: &str) -> Result<Self> {
        if s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix('f') {
            if let Ok(p) = rest.parse::<u64>() {
                return Self::prime(p);
            }
        }
        Err(Error::BadFieldSpec(s.to_string()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "f{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of an integer matrix over the chosen field.
///
/// Over the rationals the rank is computed by fraction-free (Bareiss)
/// elimination: all intermediate entries stay integral, being minors of the
/// input, so the result is exact. A fixed-width i128 pass is tried first and
/// the computation falls back to arbitrary precision if it would overflow.
pub fn matrix_rank(rows: &[Vec<i64>], field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => {
            rank_bareiss_i128(rows).unwrap_or_else(|| rank_bareiss_bigint(rows))
        }
        FieldSpec::Prime(p) => rank_mod_p(rows, p),
    }
}

fn rank_bareiss_i128(rows: &[Vec<i64>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let (m, n) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..n {
        let pivot = (rank..m).find(|&r| a[r][col] != 0);
        let Some(pr) = pivot else { continue };
        a.swap(rank, pr);
        let p = a[rank][col];
        for r in rank + 1..m {
            for c in col + 1..n {
                let t = p
                    .checked_mul(a[r][c])?
                    .checked_sub(a[r][col].checked_mul(a[rank][c])?)?;
                a[r][c] = t / prev; // exact by the Bareiss identity
            }
            a[r][col] = 0;
        }
        prev = p;
        rank += 1;
        if rank == m {
            break;
        }
    }
    Some(rank)
}

fn rank_bareiss_bigint(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let (m, n) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        let pivot = (rank..m).find(|&r| !a[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        a.swap(rank, pr);
        let p = a[rank][col].clone();
        for r in rank + 1..m {
            let head = a[r][col].clone();
            for c in col + 1..n {
                let t = &p * &a[r][c] - &head * &a[rank][c];
                a[r][c] = t / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = p;
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let reduce = |x: i64| -> u64 { x.rem_euclid(p as i64) as u64 };
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| reduce(x)).collect())
        .collect();
    let (m, n) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..m).find(|&r| a[r][col] != 0);
        let Some(pr) = pivot else { continue };
        a.swap(rank, pr);
        let inv = mod_pow(a[rank][col], p - 2, p);
        for r in rank + 1..m {
            if a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col] * inv % p;
            for c in col..n {
                let sub = factor * a[rank][c] % p;
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduced homology ranks of a complex, indexed by degree from -1 upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHomology {
    dims: Vec<usize>, // dims[k] = rank of H̃_{k-1}
}

impl ReducedHomology {
    pub fn dim(&self, degree: i64) -> usize {
        if degree < -1 {
            return 0;
        }
        self.dims.get((degree + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Nonzero ranks as (degree, rank) pairs in increasing degree.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.dims
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d > 0)
            .map(|(k, &d)| (k as i64 - 1, d))
            .collect()
    }

    pub fn max_degree(&self) -> i64 {
        self.dims.len() as i64 - 2
    }
}

/// Reduced simplicial homology over the chosen field, computed from exact
/// ranks of the boundary maps of the augmented chain complex.
///
/// Conventions: the empty complex {∅} has H̃_{-1} of rank 1 and nothing else;
/// the void complex has no homology in any degree.
pub fn reduced_homology(complex: &SimplicialComplex, field: FieldSpec) -> ReducedHomology {
    if complex.is_void() {
        return ReducedHomology { dims: Vec::new() };
    }
    let faces = complex.faces();
    let max_card = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    // groups[k] = faces of cardinality k (dimension k - 1), canonically sorted
    let mut groups: Vec<Vec<AtomSet>> = vec![Vec::new(); max_card + 1];
    for f in faces {
        groups[f.len()].push(f);
    }

    // boundary_ranks[k] = rank of ∂ : C_{k-1} → C_{k-2} (cardinality k to k-1)
    let mut boundary_ranks = vec![0usize; max_card + 2];
    for k in 1..=max_card {
        let rows = &groups[k - 1];
        let cols = &groups[k];
        let mut matrix = vec![vec![0i64; cols.len()]; rows.len()];
        for (j, &f) in cols.iter().enumerate() {
            for (pos, v) in f.iter().enumerate() {
                let g = f.remove(v);
                let i = rows.binary_search(&g).expect("faces are downward closed");
                matrix[i][j] = if pos % 2 == 0 { 1 } else { -1 };
            }
        }
        boundary_ranks[k] = matrix_rank(&matrix, field);
    }

    let dims = (0..=max_card)
        .map(|k| groups[k].len() - boundary_ranks[k] - boundary_ranks[k + 1])
        .collect();
    ReducedHomology { dims }
}

/// Whether every reduced homology group vanishes. The empty complex is not
/// acyclic (H̃_{-1} ≠ 0); the void complex is.
pub fn is_acyclic(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    reduced_homology(complex, field).is_trivial()
}
