//! Families of subsets of the generator index set [n]: the three CM_*(X)
//! conditions, reducedness, the refinement order, and connectivity of
//! restrictions.

use std::collections::BTreeSet;

use crate::atoms::AtomSet;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{is_acyclic, FieldSpec};
use crate::monomial::MonomialIdeal;

/// A named family of subsets of [n] (0-based internally; n counts the
/// generators the indices refer to). Typically the support family of an
/// ideal: one member V_t per variable, the set of generators it divides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFamily {
    pub n: usize,
    pub sets: Vec<(String, AtomSet)>,
}

impl SupportFamily {
    pub fn new(n: usize, sets: Vec<(String, AtomSet)>) -> Result<Self> {
        if n > 32 {
            return Err(Error::TooLarge(format!("family ground set of size {n}")));
        }
        for (i, (name, s)) in sets.iter().enumerate() {
            if !s.is_subset_of(AtomSet::full(n)) {
                return Err(Error::InvalidFamily(format!(
                    "member {name:?} leaves the ground set [{n}]"
                )));
            }
            if sets[..i].iter().any(|(m, _)| m == name) {
                return Err(Error::InvalidFamily(format!("duplicate member name {name:?}")));
            }
        }
        Ok(SupportFamily { n, sets })
    }

    /// The support family of an ideal: for each occurring variable x_t, the
    /// set V_t of generator indices x_t divides into.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Self {
        let sets = ideal
            .support_family()
            .into_iter()
            .map(|(v, s)| (ideal.variables.names()[v].clone(), s))
            .collect();
        SupportFamily {
            n: ideal.generators.len(),
            sets,
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = AtomSet> + '_ {
        self.sets.iter().map(|&(_, s)| s)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.sets[i].0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionOutcome<W> {
    pub pass: bool,
    pub witnesses: Vec<W>,
}

impl<W> ConditionOutcome<W> {
    fn from_witnesses(witnesses: Vec<W>) -> Self {
        ConditionOutcome {
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Results of the three CM_*(X) conditions for a family F on [n] against a
/// complex X on the same vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyChecksReport {
    /// Condition 1: no d members of F cover [n]. Witnesses are the covering
    /// member-index subsets.
    pub condition1: ConditionOutcome<Vec<usize>>,
    /// Condition 2: for every union W of a subfamily (short of all of [n]),
    /// the restriction of X to [n] − W is acyclic. Witnesses are the
    /// failing W.
    pub condition2: ConditionOutcome<AtomSet>,
    /// Condition 3: for every face pair F ⊊ G of X some member S has
    /// S ∩ F = ∅ and S ∩ G ≠ ∅. Witnesses are the unseparated pairs.
    pub condition3: ConditionOutcome<(AtomSet, AtomSet)>,
}

impl FamilyChecksReport {
    pub fn all_pass(&self) -> bool {
        self.condition1.pass && self.condition2.pass && self.condition3.pass
    }
}

/// Checks the three CM_*(X) conditions exhaustively. Condition 2 enumerates
/// every subfamily, so the family size is capped at 20 members.
pub fn check_cmstar_conditions(
    x: &SimplicialComplex,
    family: &SupportFamily,
    d: usize,
    field: FieldSpec,
) -> Result<FamilyChecksReport> {
    if x.n_vertices() != family.n {
        return Err(Error::InvalidFamily(format!(
            "complex on {} vertices but family ground set is [{}]",
            x.n_vertices(),
            family.n
        )));
    }
    if family.len() > 20 {
        return Err(Error::TooLarge(format!(
            "condition 2 enumerates 2^{} subfamilies",
            family.len()
        )));
    }
    let full = AtomSet::full(family.n);

    let mut cover_witnesses = Vec::new();
    let mut chosen = Vec::new();
    d_subsets(family.len(), d, &mut chosen, &mut |subset| {
        let union = subset
            .iter()
            .fold(AtomSet::EMPTY, |acc, &i| acc.union(family.sets[i].1));
        if union == full {
            cover_witnesses.push(subset.to_vec());
        }
    });

    let mut failing_unions = BTreeSet::new();
    for mask in 0u32..1 << family.len() {
        let w = (0..family.len())
            .filter(|&i| mask >> i & 1 == 1)
            .fold(AtomSet::EMPTY, |acc, i| acc.union(family.sets[i].1));
        if w == full || failing_unions.contains(&w) {
            continue;
        }
        let restricted = x.restrict_to_vertices(full.difference(w));
        if !is_acyclic(&restricted, field) {
            failing_unions.insert(w);
        }
    }

    let faces: Vec<AtomSet> = x.faces().into_iter().collect();
    let mut pair_witnesses = Vec::new();
    for &f in &faces {
        for &g in &faces {
            if !f.is_strict_subset_of(g) {
                continue;
            }
            let separated = family
                .members()
                .any(|s| s.is_disjoint_from(f) && !s.is_disjoint_from(g));
            if !separated {
                pair_witnesses.push((f, g));
            }
        }
    }

    Ok(FamilyChecksReport {
        condition1: ConditionOutcome::from_witnesses(cover_witnesses),
        condition2: ConditionOutcome::from_witnesses(failing_unions.into_iter().collect()),
        condition3: ConditionOutcome::from_witnesses(pair_witnesses),
    })
}

fn d_subsets(n: usize, d: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if chosen.len() == d {
        visit(chosen);
        return;
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for i in start..n {
        chosen.push(i);
        d_subsets(n, d, chosen, visit);
        chosen.pop();
    }
}

/// Searches for pairwise-disjoint members among `pool` (indices into the
/// family) whose union is exactly `target`, using at least `min_parts`
/// parts. Returns the part indices if found.
fn disjoint_cover(
    family: &SupportFamily,
    pool: &[usize],
    target: AtomSet,
    min_parts: usize,
) -> Option<Vec<usize>> {
    fn go(
        family: &SupportFamily,
        pool: &[usize],
        from: usize,
        remaining: AtomSet,
        parts: &mut Vec<usize>,
        min_parts: usize,
    ) -> bool {
        if remaining.is_empty() {
            return parts.len() >= min_parts;
        }
        // The lowest uncovered index must come from some part; trying only
        // parts that contain it prunes the search without losing solutions.
        let pivot = remaining.iter().next().expect("nonempty");
        for (k, &i) in pool.iter().enumerate().skip(from) {
            let s = family.sets[i].1;
            if s.is_empty() || !s.contains(pivot) || !s.is_subset_of(remaining) {
                continue;
            }
            parts.push(i);
            if go(family, pool, k + 1, remaining.difference(s), parts, min_parts) {
                return true;
            }
            parts.pop();
        }
        false
    }
    let mut parts = Vec::new();
    go(family, pool, 0, target, &mut parts, min_parts).then_some(parts)
}

/// A family is reduced when no member is the disjoint union of two or more
/// other members. Returns the first witness (member index, part indices)
/// otherwise.
pub fn is_reduced_family(family: &SupportFamily) -> (bool, Option<(usize, Vec<usize>)>) {
    for (i, &(_, target)) in family.sets.iter().enumerate() {
        if target.is_empty() {
            continue;
        }
        let pool: Vec<usize> = (0..family.len()).filter(|&j| j != i).collect();
        if let Some(parts) = disjoint_cover(family, &pool, target, 2) {
            return (false, Some((i, parts)));
        }
    }
    (true, None)
}

/// F ≤ G in the refinement order: every member of G is a disjoint union of
/// members of F (and F may contain arbitrary further subsets).
pub fn refinement_leq(f: &SupportFamily, g: &SupportFamily) -> Result<bool> {
    if f.n != g.n {
        return Err(Error::AtomCountMismatch(f.n, g.n));
    }
    let pool: Vec<usize> = (0..f.len()).collect();
    Ok(g
        .members()
        .all(|target| target.is_empty() || disjoint_cover(f, &pool, target, 1).is_some()))
}

/// Connectivity of the 1-skeleton of X restricted to S. S must be a
/// nonempty set of covered vertices.
pub fn restriction_connected(x: &SimplicialComplex, s: AtomSet) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    x.skeleton_connected_on(s)
}
