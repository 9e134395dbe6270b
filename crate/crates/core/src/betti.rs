//! Total and graded Betti numbers of S/M from the lattice alone, via the
//! crosscut complexes Γ(0̂, p), and the support check for cellular
//! resolutions.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{is_acyclic, reduced_homology, FieldSpec};
use crate::lattice::{ElementId, FiniteAtomicLattice};
use crate::lcm_lattice::lcm_lattice;
use crate::monomial::{Monomial, MonomialIdeal};

/// Betti numbers of S/M, graded by lattice element: b_{i,p} is the
/// dimension of H̃_{i−2} of the crosscut complex of p, and b_{0,0̂} = 1 by
/// convention. b_1 always counts the atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    /// Nonzero entries only.
    pub graded: BTreeMap<(usize, ElementId), usize>,
    /// totals[i] = b_i; no trailing zeros.
    pub totals: Vec<usize>,
}

impl BettiTable {
    pub fn entry(&self, i: usize, p: ElementId) -> usize {
        self.graded.get(&(i, p)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.totals.get(i).copied().unwrap_or(0)
    }

    /// Largest homological degree with a nonzero Betti number; the length
    /// of the minimal free resolution of S/M.
    pub fn projective_dimension(&self) -> usize {
        self.totals.len().saturating_sub(1)
    }
}

/// Computes every b_{i,p} by running exact homology on the crosscut
/// complex of each element above 0̂.
pub fn graded_betti(lattice: &FiniteAtomicLattice, field: FieldSpec) -> BettiTable {
    let mut graded = BTreeMap::new();
    graded.insert((0, lattice.bottom()), 1);
    for p in 0..lattice.len() {
        if p == lattice.bottom() {
            continue;
        }
        let crosscut = lattice
            .crosscut_complex(p)
            .expect("every element id is in range");
        for (degree, dim) in reduced_homology(&crosscut, field).nonzero() {
            graded.insert(((degree + 2) as usize, p), dim);
        }
    }
    let max_i = graded.keys().map(|&(i, _)| i).max().unwrap_or(0);
    let mut totals = vec![0usize; max_i + 1];
    for (&(i, _), &d) in &graded {
        totals[i] += d;
    }
    BettiTable { graded, totals }
}

/// How a complex relates to the minimal free resolution of an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolutionVerdict {
    /// Every lcm-restriction is acyclic and the face counts match the
    /// Betti numbers exactly.
    SupportsMinimally,
    /// Every lcm-restriction is acyclic, but the complex is larger than
    /// the minimal resolution.
    Supports,
    DoesNotSupport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub verdict: ResolutionVerdict,
    /// Elements p whose restriction X_{≤p} is not acyclic, with the
    /// nonzero homology found there.
    pub failing: Vec<(ElementId, Vec<(i64, usize)>)>,
    /// Face counts of X by dimension (vertices first).
    pub face_vector: Vec<usize>,
    /// Total Betti numbers of the lcm lattice.
    pub betti_totals: Vec<usize>,
}

/// The support criterion for cellular resolutions: X (vertex i standing for
/// generator i) supports a resolution of I iff for every p ≠ 0̂ in the lcm
/// lattice, the subcomplex of faces whose generator-lcm divides l_p is
/// acyclic. It supports the *minimal* resolution iff additionally the face
/// vector equals (b_1, b_2, …).
pub fn supports_resolution(
    x: &SimplicialComplex,
    ideal: &MonomialIdeal,
    field: FieldSpec,
) -> Result<ResolutionReport> {
    if x.n_vertices() != ideal.generators.len() {
        return Err(Error::VertexGeneratorMismatch {
            vertices: x.n_vertices(),
            generators: ideal.generators.len(),
        });
    }
    let lcm = lcm_lattice(ideal)?;
    let mut failing = Vec::new();
    for p in 0..lcm.lattice.len() {
        if p == lcm.lattice.bottom() {
            continue;
        }
        let target = &lcm.labels[p];
        let restricted = x.subcomplex_where(|face| {
            face.iter()
                .fold(Monomial::one(), |m, v| m.lcm(&ideal.generators[v]))
                .divides(target)
        });
        if !is_acyclic(&restricted, field) {
            failing.push((p, reduced_homology(&restricted, field).nonzero()));
        }
    }
    let betti = graded_betti(&lcm.lattice, field);
    let face_vector = x.f_vector();
    let verdict = if !failing.is_empty() {
        ResolutionVerdict::DoesNotSupport
    } else if betti.totals.len() == face_vector.len() + 1
        && face_vector
            .iter()
            .enumerate()
            .all(|(i, &f)| f == betti.totals[i + 1])
    {
        ResolutionVerdict::SupportsMinimally
    } else {
        ResolutionVerdict::Supports
    };
    Ok(ResolutionReport {
        verdict,
        failing,
        face_vector,
        betti_totals: betti.totals,
    })
}
