//! The lattice of finite atomic lattices on n ordered atoms: enumeration,
//! the inclusion order and its join-preserving-map characterization, cover
//! relations, stratification by total Betti numbers, and the tree
//! proposition checked over covers of subtree lattices.

use std::collections::{BTreeMap, HashMap};

use crate::atoms::AtomSet;
use crate::betti::graded_betti;
use crate::constructions::{subtree_lattice, Tree};
use crate::error::{Error, Result};
use crate::homology::FieldSpec;
use crate::lattice::FiniteAtomicLattice;

/// All of L(n): every intersection-closed family on [n] containing ∅, the
/// singletons, and [n]. Members are stored as canonically sorted support
/// families in a deterministic global order.
#[derive(Debug, Clone)]
pub struct LnUniverse {
    n: usize,
    members: Vec<Vec<AtomSet>>,
    index: HashMap<Vec<AtomSet>, usize>,
}

impl LnUniverse {
    pub fn n_atoms(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn family(&self, i: usize) -> &[AtomSet] {
        &self.members[i]
    }

    pub fn lattice(&self, i: usize) -> FiniteAtomicLattice {
        FiniteAtomicLattice::from_family(self.n, &self.members[i])
            .expect("every enumerated family is a valid lattice")
    }

    /// Index of a family given in any order, if it is a member.
    pub fn index_of(&self, family: &[AtomSet]) -> Option<usize> {
        self.index.get(&canonical_family(family)).copied()
    }

    /// The stored order: member i ≤ member j iff family(i) ⊆ family(j).
    pub fn leq(&self, i: usize, j: usize) -> bool {
        family_subset(&self.members[i], &self.members[j])
    }
}

fn canonical_family(family: &[AtomSet]) -> Vec<AtomSet> {
    let mut sorted = family.to_vec();
    sorted.sort_by_key(|s| s.canonical_key());
    sorted
}

fn family_subset(a: &[AtomSet], b: &[AtomSet]) -> bool {
    a.iter().all(|s| b.contains(s))
}

/// Enumerates L(n) by deciding, in canonical order, which of the candidate
/// supports (cardinality 2 to n−1) to include; intersection closure is
/// checked incrementally. Every intersection of a candidate with an
/// included set is either a base set or an earlier candidate, so a missing
/// intersection can never be repaired later and the branch is pruned.
///
/// n = 5 is behind an explicit opt-in; larger n is refused outright.
pub fn enumerate_l(n: usize, allow_large: bool) -> Result<LnUniverse> {
    enumerate_l_with_workers(n, 1, allow_large)
}

/// Same enumeration split over `workers` threads. The first few
/// include/exclude decisions partition the search into independent
/// subtrees; the final canonical sort makes the result identical for every
/// worker count.
pub fn enumerate_l_with_workers(n: usize, workers: usize, allow_large: bool) -> Result<LnUniverse> {
    if n == 0 {
        return Err(Error::InvalidFamily("L(n) needs at least one atom".into()));
    }
    if n > 5 || (n == 5 && !allow_large) {
        return Err(Error::TooLarge(format!(
            "enumeration of L({n}) {}",
            if n == 5 {
                "requires the explicit large-run opt-in"
            } else {
                "is out of range (n ≤ 5)"
            }
        )));
    }

    let full = AtomSet::full(n);
    let mut candidates: Vec<AtomSet> = full
        .subsets()
        .filter(|s| s.len() >= 2 && s.len() < n)
        .collect();
    candidates.sort_by_key(|s| s.canonical_key());

    // For n = 1 the full set coincides with the singleton; dedupe.
    let mut base: Vec<AtomSet> = vec![AtomSet::EMPTY];
    base.extend((0..n).map(AtomSet::singleton));
    if n > 1 {
        base.push(full);
    }

    let base_present = {
        let mut present = vec![false; 1 << n];
        for &s in &base {
            present[s.0 as usize] = true;
        }
        present
    };

    let mut members = if workers <= 1 {
        let mut present = base_present;
        let mut members = Vec::new();
        let mut chosen: Vec<AtomSet> = Vec::new();
        dfs(
            &candidates,
            0,
            &base,
            &mut chosen,
            &mut present,
            &mut members,
        );
        members
    } else {
        // Fix the first prefix_len decisions up front; each feasible prefix
        // is an independent DFS subtree.
        let mut prefix_len = 0usize;
        while (1usize << prefix_len) < workers && prefix_len < candidates.len() {
            prefix_len += 1;
        }
        let prefixes: Vec<Vec<AtomSet>> = (0u32..1 << prefix_len)
            .filter_map(|mask| {
                let mut chosen: Vec<AtomSet> = Vec::new();
                let mut present = base_present.clone();
                for (i, &c) in candidates[..prefix_len].iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        continue;
                    }
                    let closed = chosen.iter().all(|&m| {
                        let x = c.intersection(m);
                        x == c || present[x.0 as usize]
                    });
                    if !closed {
                        return None;
                    }
                    chosen.push(c);
                    present[c.0 as usize] = true;
                }
                Some(chosen)
            })
            .collect();

        let n_threads = workers.min(prefixes.len()).max(1);
        let mut per_prefix: Vec<Vec<Vec<AtomSet>>> = vec![Vec::new(); prefixes.len()];
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..n_threads)
                .map(|t| {
                    let prefixes = &prefixes;
                    let candidates = &candidates;
                    let base = &base;
                    let base_present = &base_present;
                    scope.spawn(move || {
                        let mut out: Vec<(usize, Vec<Vec<AtomSet>>)> = Vec::new();
                        for (i, prefix) in prefixes.iter().enumerate() {
                            if i % n_threads != t {
                                continue;
                            }
                            let mut present = base_present.clone();
                            for &c in prefix {
                                present[c.0 as usize] = true;
                            }
                            let mut chosen = prefix.clone();
                            let mut found = Vec::new();
                            dfs(
                                candidates,
                                prefix_len,
                                base,
                                &mut chosen,
                                &mut present,
                                &mut found,
                            );
                            out.push((i, found));
                        }
                        out
                    })
                })
                .collect();
            for h in handles {
                for (i, found) in h.join().expect("enumeration worker panicked") {
                    per_prefix[i] = found;
                }
            }
        });
        per_prefix.into_iter().flatten().collect()
    };

    members.sort();
    members.sort_by(|a, b| {
        let ka: Vec<(usize, u32)> = a.iter().map(|s| s.canonical_key()).collect();
        let kb: Vec<(usize, u32)> = b.iter().map(|s| s.canonical_key()).collect();
        ka.cmp(&kb)
    });
    let index = members
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    Ok(LnUniverse { n, members, index })
}

fn dfs(
    candidates: &[AtomSet],
    next: usize,
    base: &[AtomSet],
    chosen: &mut Vec<AtomSet>,
    present: &mut Vec<bool>,
    members: &mut Vec<Vec<AtomSet>>,
) {
    if next == candidates.len() {
        let mut family = base.to_vec();
        family.extend(chosen.iter().copied());
        members.push(canonical_family(&family));
        return;
    }
    let c = candidates[next];

    // Branch 1: leave c out.
    dfs(candidates, next + 1, base, chosen, present, members);

    // Branch 2: include c if closure admits it.
    let closed = chosen
        .iter()
        .all(|&m| {
            let i = c.intersection(m);
            i == c || present[i.0 as usize]
        });
    if closed {
        chosen.push(c);
        present[c.0 as usize] = true;
        dfs(candidates, next + 1, base, chosen, present, members);
        present[c.0 as usize] = false;
        chosen.pop();
    }
}

/// P ≤ Q in the order on L(n), computed on the canonical encoding:
/// the support family of P is contained in that of Q.
pub fn leq_in_l(p: &FiniteAtomicLattice, q: &FiniteAtomicLattice) -> Result<bool> {
    if p.n_atoms() != q.n_atoms() {
        return Err(Error::AtomCountMismatch(p.n_atoms(), q.n_atoms()));
    }
    Ok(p.elements().iter().all(|s| q.element_id(*s).is_some()))
}

/// Whether a join-preserving map P → Q restricting to the identity on
/// atoms exists; this holds exactly when Q ≤ P (the map definition of the
/// order on L(n), with the map running from the larger lattice down).
///
/// Every element of an atomic lattice is the join of its atoms, so the only
/// possible such map is p ↦ join_Q(support(p)); it suffices to test that
/// this candidate preserves binary joins.
pub fn exists_join_preserving_atom_bijection(
    p: &FiniteAtomicLattice,
    q: &FiniteAtomicLattice,
) -> Result<bool> {
    if p.n_atoms() != q.n_atoms() {
        return Err(Error::AtomCountMismatch(p.n_atoms(), q.n_atoms()));
    }
    if p.len() > 12 || q.len() > 12 {
        return Err(Error::TooLarge(format!(
            "join-preservation search on lattices of sizes {} and {} (cap 12)",
            p.len(),
            q.len()
        )));
    }
    let f: Vec<usize> = (0..p.len())
        .map(|a| q.join_of_atoms(p.support(a)))
        .collect();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if f[p.join(a, b)] != q.join(f[a], f[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All valid one-set additions to a family: the families covering it in
/// L(n). Adding a single support set keeps intersection closure iff each
/// intersection with an existing member is already present.
pub fn cover_families(family: &[AtomSet], n: usize) -> Vec<Vec<AtomSet>> {
    let sorted = canonical_family(family);
    let mut out = Vec::new();
    for s in AtomSet::full(n).subsets() {
        if s.len() < 2 || s.len() >= n || sorted.contains(&s) {
            continue;
        }
        let closed = sorted
            .iter()
            .all(|&m| {
                let i = s.intersection(m);
                i == s || sorted.contains(&i)
            });
        if closed {
            let mut bigger = sorted.clone();
            bigger.push(s);
            out.push(canonical_family(&bigger));
        }
    }
    out.sort();
    out
}

/// Indices of the members covering member `i` within the universe.
pub fn covers_above(universe: &LnUniverse, i: usize) -> Vec<usize> {
    let mut out: Vec<usize> = cover_families(universe.family(i), universe.n_atoms())
        .iter()
        .map(|f| {
            universe
                .index_of(f)
                .expect("one-set additions are members of L(n)")
        })
        .collect();
    out.sort_unstable();
    out
}

/// L(n) grouped by total Betti vector, with a maximality flag per member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumReport {
    /// Total Betti vector → member indices, ascending.
    pub strata: BTreeMap<Vec<usize>, Vec<usize>>,
    /// maximal[i]: no strictly greater member shares member i's vector.
    pub maximal: Vec<bool>,
}

/// Computes every member's total Betti numbers and groups the universe into
/// strata; a member is flagged maximal when everything strictly above it
/// lies in a different stratum.
pub fn betti_strata(universe: &LnUniverse, field: FieldSpec) -> StratumReport {
    let vectors: Vec<Vec<usize>> = (0..universe.len())
        .map(|i| graded_betti(&universe.lattice(i), field).totals)
        .collect();
    let mut strata: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, v) in vectors.iter().enumerate() {
        strata.entry(v.clone()).or_default().push(i);
    }
    let maximal = (0..universe.len())
        .map(|i| {
            (0..universe.len()).all(|j| {
                i == j || !universe.leq(i, j) || universe.leq(j, i) || vectors[j] != vectors[i]
            })
        })
        .collect();
    StratumReport { strata, maximal }
}

/// Whether member `i` is maximal in its Betti stratum; on failure also
/// returns the first strictly greater member with the same vector.
pub fn is_maximal_in_stratum(
    universe: &LnUniverse,
    i: usize,
    field: FieldSpec,
) -> (bool, Option<usize>) {
    let mine = graded_betti(&universe.lattice(i), field).totals;
    for j in 0..universe.len() {
        if j == i || !universe.leq(i, j) || universe.leq(j, i) {
            continue;
        }
        if graded_betti(&universe.lattice(j), field).totals == mine {
            return (false, Some(j));
        }
    }
    (true, None)
}

/// One cover of P_T compared against the base subtree lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverComparison {
    /// The support set whose addition forms the cover.
    pub added: AtomSet,
    pub totals: Vec<usize>,
    /// Componentwise ≥ the base vector (padded) and different.
    pub strictly_greater: bool,
    /// Whether b_2 itself increased.
    pub strict_in_b2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePropositionReport {
    pub base_totals: Vec<usize>,
    pub covers: Vec<CoverComparison>,
    pub all_strictly_greater: bool,
}

fn padded_ge(bigger: &[usize], smaller: &[usize]) -> bool {
    (0..bigger.len().max(smaller.len())).all(|i| {
        bigger.get(i).copied().unwrap_or(0) >= smaller.get(i).copied().unwrap_or(0)
    })
}

/// Checks, for every cover of the subtree lattice of T in L(V), that the
/// cover's total Betti numbers strictly dominate those of P_T — so P_T sits
/// alone at the bottom boundary of its stratum among its covers. Covers are
/// built directly as one-set additions; the full universe is not needed.
pub fn check_tree_proposition(
    tree: &Tree,
    field: FieldSpec,
    allow_large: bool,
) -> Result<TreePropositionReport> {
    let v = tree.vertex_count();
    if v > 6 || (v == 6 && !allow_large) {
        return Err(Error::TooLarge(format!(
            "tree proposition check on {v} vertices {}",
            if v == 6 {
                "requires the explicit large-run opt-in"
            } else {
                "is out of range (V ≤ 6)"
            }
        )));
    }
    let base = subtree_lattice(tree)?;
    let base_totals = graded_betti(&base, field).totals;
    let base_family: Vec<AtomSet> = base.elements().to_vec();
    let covers: Vec<CoverComparison> = cover_families(&base_family, v)
        .into_iter()
        .map(|family| {
            let added = *family
                .iter()
                .find(|s| !base_family.contains(s))
                .expect("a cover adds exactly one set");
            let lattice = FiniteAtomicLattice::from_family(v, &family)
                .expect("cover families are valid");
            let totals = graded_betti(&lattice, field).totals;
            let strictly_greater = padded_ge(&totals, &base_totals) && totals != base_totals;
            let strict_in_b2 =
                totals.get(2).copied().unwrap_or(0) > base_totals.get(2).copied().unwrap_or(0);
            CoverComparison {
                added,
                totals,
                strictly_greater,
                strict_in_b2,
            }
        })
        .collect();
    let all_strictly_greater = covers.iter().all(|c| c.strictly_greater);
    Ok(TreePropositionReport {
        base_totals,
        covers,
        all_strictly_greater,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_universes() {
        assert_eq!(enumerate_l(1, false).unwrap().len(), 1);
        assert_eq!(enumerate_l(2, false).unwrap().len(), 1);
        assert_eq!(enumerate_l(3, false).unwrap().len(), 8);
        assert!(matches!(enumerate_l(5, false), Err(Error::TooLarge(_))));
        assert!(matches!(enumerate_l(6, true), Err(Error::TooLarge(_))));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_l(4, false).unwrap();
        let b = enumerate_l(4, false).unwrap();
        assert_eq!(a.len(), b.len());
        for i in 0..a.len() {
            assert_eq!(a.family(i), b.family(i));
        }
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        for n in 1..=4 {
            let serial = enumerate_l(n, false).unwrap();
            for workers in [2, 3, 8] {
                let parallel = enumerate_l_with_workers(n, workers, false).unwrap();
                assert_eq!(parallel.len(), serial.len(), "n = {n}, {workers} workers");
                for i in 0..serial.len() {
                    assert_eq!(parallel.family(i), serial.family(i));
                }
            }
        }
    }

    #[test]
    fn every_member_is_a_valid_lattice() {
        let u = enumerate_l(4, false).unwrap();
        for i in 0..u.len() {
            let lattice = u.lattice(i);
            assert_eq!(lattice.n_atoms(), 4);
        }
    }

    #[test]
    fn inclusion_order_examples() {
        let u = enumerate_l(3, false).unwrap();
        let path = u
            .index_of(&[
                AtomSet::EMPTY,
                AtomSet::singleton(0),
                AtomSet::singleton(1),
                AtomSet::singleton(2),
                AtomSet::from_indices([0, 1]),
                AtomSet::from_indices([1, 2]),
                AtomSet::full(3),
            ])
            .unwrap();
        let b3 = (0..u.len()).find(|&i| u.family(i).len() == 8).unwrap();
        assert!(u.leq(path, b3));
        assert!(!u.leq(b3, path));
        assert!(u.leq(path, path));
        // Two different one-missing-pair families are incomparable.
        let others: Vec<usize> = (0..u.len())
            .filter(|&i| u.family(i).len() == 7 && i != path)
            .collect();
        assert_eq!(others.len(), 2);
        assert!(!u.leq(others[0], others[1]));
        assert!(!u.leq(others[1], others[0]));
    }

    #[test]
    fn map_oracle_matches_inclusion_on_l3() {
        let u = enumerate_l(3, false).unwrap();
        for i in 0..u.len() {
            for j in 0..u.len() {
                let li = u.lattice(i);
                let lj = u.lattice(j);
                // A map P → Q exists exactly when Q ≤ P.
                assert_eq!(
                    exists_join_preserving_atom_bijection(&li, &lj).unwrap(),
                    u.leq(j, i),
                    "members {i} and {j}"
                );
            }
        }
    }

    #[test]
    fn map_oracle_respects_the_size_cap() {
        let u = enumerate_l(4, false).unwrap();
        let b4 = (0..u.len())
            .find(|&i| u.family(i).len() == 16)
            .unwrap();
        let l = u.lattice(b4);
        assert!(matches!(
            exists_join_preserving_atom_bijection(&l, &l),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn covers_of_the_path_family() {
        let u = enumerate_l(3, false).unwrap();
        let path_family = vec![
            AtomSet::EMPTY,
            AtomSet::singleton(0),
            AtomSet::singleton(1),
            AtomSet::singleton(2),
            AtomSet::from_indices([0, 1]),
            AtomSet::from_indices([1, 2]),
            AtomSet::full(3),
        ];
        let covers = cover_families(&path_family, 3);
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].len(), 8);
        let i = u.index_of(&path_family).unwrap();
        let above = covers_above(&u, i);
        assert_eq!(above.len(), 1);
        assert_eq!(u.family(above[0]).len(), 8);
        // The Boolean top has no covers.
        assert!(covers_above(&u, above[0]).is_empty());
    }

    #[test]
    fn covers_change_cardinality_by_one() {
        let u = enumerate_l(4, false).unwrap();
        for i in 0..u.len() {
            for j in covers_above(&u, i) {
                assert_eq!(u.family(j).len(), u.family(i).len() + 1);
                assert!(u.leq(i, j));
            }
        }
        // On L(3), additionally check nothing sits strictly between.
        let u = enumerate_l(3, false).unwrap();
        for i in 0..u.len() {
            for j in covers_above(&u, i) {
                for k in 0..u.len() {
                    assert!(
                        !(u.leq(i, k) && u.leq(k, j) && k != i && k != j),
                        "member {k} sits between {i} and {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn l3_strata() {
        let u = enumerate_l(3, false).unwrap();
        let report = betti_strata(&u, FieldSpec::Rationals);
        let sizes: Vec<usize> = report.strata.values().map(|v| v.len()).collect();
        let total: usize = sizes.iter().sum();
        assert_eq!(total, 8);
        assert_eq!(report.strata.len(), 2);
        assert_eq!(report.strata.get(&vec![1, 3, 2]).map(|v| v.len()), Some(7));
        assert_eq!(
            report.strata.get(&vec![1, 3, 3, 1]).map(|v| v.len()),
            Some(1)
        );
    }

    #[test]
    fn maximality_in_l3() {
        let u = enumerate_l(3, false).unwrap();
        // The path member is maximal in its stratum: its only cover is B3.
        let path = u
            .index_of(&[
                AtomSet::EMPTY,
                AtomSet::singleton(0),
                AtomSet::singleton(1),
                AtomSet::singleton(2),
                AtomSet::from_indices([0, 1]),
                AtomSet::from_indices([1, 2]),
                AtomSet::full(3),
            ])
            .unwrap();
        let (max, witness) = is_maximal_in_stratum(&u, path, FieldSpec::Rationals);
        assert!(max);
        assert_eq!(witness, None);
        // The bottom member (no 2-element supports) is not: any 7-member
        // family above it shares the vector (1, 3, 2).
        let bottom = (0..u.len()).find(|&i| u.family(i).len() == 5).unwrap();
        let (max, witness) = is_maximal_in_stratum(&u, bottom, FieldSpec::Rationals);
        assert!(!max);
        assert!(witness.is_some());
        // The Boolean top is maximal vacuously.
        let b3 = (0..u.len()).find(|&i| u.family(i).len() == 8).unwrap();
        assert!(is_maximal_in_stratum(&u, b3, FieldSpec::Rationals).0);
        // Flags in the full report agree.
        let report = betti_strata(&u, FieldSpec::Rationals);
        assert!(report.maximal[path]);
        assert!(!report.maximal[bottom]);
        assert!(report.maximal[b3]);
    }

    #[test]
    fn tree_proposition_on_small_paths() {
        let report =
            check_tree_proposition(&Tree::path(3), FieldSpec::Rationals, false).unwrap();
        assert_eq!(report.base_totals, vec![1, 3, 2]);
        assert_eq!(report.covers.len(), 1);
        assert_eq!(report.covers[0].totals, vec![1, 3, 3, 1]);
        assert!(report.covers[0].strictly_greater);
        assert!(report.covers[0].strict_in_b2);
        assert!(report.all_strictly_greater);

        // P_T = B2 is the top of L(2): no covers, vacuously true.
        let report =
            check_tree_proposition(&Tree::path(2), FieldSpec::Rationals, false).unwrap();
        assert!(report.covers.is_empty());
        assert!(report.all_strictly_greater);

        assert!(matches!(
            check_tree_proposition(&Tree::path(6), FieldSpec::Rationals, false),
            Err(Error::TooLarge(_))
        ));
    }
}
