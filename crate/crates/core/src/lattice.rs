use std::collections::HashMap;

use crate::atoms::AtomSet;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Index of an element in a lattice's canonical element list.
pub type ElementId = usize;

/// A finite atomic lattice, stored as the intersection-closed family of
/// atom-support sets of its elements.
///
/// Every element is the join of the atoms below it, so the support map
/// `p ↦ {atoms ≤ p}` is injective and order-reflecting: `p ≤ q` iff
/// `support(p) ⊆ support(q)`. The family therefore determines the lattice
/// completely, with meet given by intersection and join by least superset.
///
/// Elements are kept in a canonical order — by (cardinality, bitmask) — so
/// element ids are stable across runs and across re-encodings. Id 0 is the
/// bottom, ids 1..=n are the atoms in index order, and the last id is the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAtomicLattice {
    n_atoms: usize,
    elements: Vec<AtomSet>,
    index: HashMap<AtomSet, ElementId>,
    meet_table: Vec<ElementId>,
    join_table: Vec<ElementId>,
    covers: Vec<(ElementId, ElementId)>,
}

impl FiniteAtomicLattice {
    /// Builds a lattice from the family of its element supports.
    ///
    /// The family must contain the empty set, every singleton, the full set,
    /// and be closed under pairwise intersection; duplicates are rejected.
    /// Atomicity then comes for free: the join of the singletons inside any
    /// element recovers that element.
    pub fn from_family(n_atoms: usize, family: &[AtomSet]) -> Result<Self> {
        let full = AtomSet::full(n_atoms);
        let mut elements = family.to_vec();
        elements.sort_by_key(|s| s.canonical_key());
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0].to_string()));
            }
        }
        if elements.first() != Some(&AtomSet::EMPTY) {
            return Err(Error::MissingBottom);
        }
        if elements.last() != Some(&full) {
            return Err(Error::MissingTop);
        }
        for s in &elements {
            if !s.is_subset_of(full) {
                return Err(Error::AtomOutOfRange {
                    got: s.iter().last().unwrap(),
                    n: n_atoms,
                });
            }
        }
        for i in 0..n_atoms {
            if !elements.contains(&AtomSet::singleton(i)) {
                return Err(Error::MissingAtom(i));
            }
        }
        let index: HashMap<AtomSet, ElementId> =
            elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        for (i, &a) in elements.iter().enumerate() {
            for &b in &elements[i + 1..] {
                let c = a.intersection(b);
                if !index.contains_key(&c) {
                    return Err(Error::NotIntersectionClosed(
                        a.to_string(),
                        b.to_string(),
                        c.to_string(),
                    ));
                }
            }
        }

        let m = elements.len();
        let mut meet_table = vec![0; m * m];
        let mut join_table = vec![0; m * m];
        for p in 0..m {
            for q in p..m {
                let meet = index[&elements[p].intersection(elements[q])];
                // Least superset of the union: the canonical order lists
                // elements by cardinality, and the least superset is the
                // unique one of minimal cardinality, so the first hit wins.
                let u = elements[p].union(elements[q]);
                let join = (0..m).find(|&r| u.is_subset_of(elements[r])).unwrap();
                meet_table[p * m + q] = meet;
                meet_table[q * m + p] = meet;
                join_table[p * m + q] = join;
                join_table[q * m + p] = join;
            }
        }

        let mut covers = Vec::new();
        for q in 0..m {
            // Lower covers of q = maximal elements strictly below q.
            let below: Vec<ElementId> = (0..m)
                .filter(|&p| elements[p].is_strict_subset_of(elements[q]))
                .collect();
            for &p in &below {
                let has_intermediate = below
                    .iter()
                    .any(|&r| elements[p].is_strict_subset_of(elements[r]));
                if !has_intermediate {
                    covers.push((p, q));
                }
            }
        }
        covers.sort_unstable();

        Ok(FiniteAtomicLattice {
            n_atoms,
            elements,
            index,
            meet_table,
            join_table,
            covers,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid lattice always has at least bottom and top
    }

    pub fn elements(&self) -> &[AtomSet] {
        &self.elements
    }

    /// Atom support of an element.
    pub fn support(&self, p: ElementId) -> AtomSet {
        self.elements[p]
    }

    pub fn element_id(&self, support: AtomSet) -> Option<ElementId> {
        self.index.get(&support).copied()
    }

    pub fn bottom(&self) -> ElementId {
        0
    }

    pub fn top(&self) -> ElementId {
        self.elements.len() - 1
    }

    /// Element id of atom `i`. Atoms occupy ids 1..=n_atoms in atom order.
    pub fn atom_id(&self, i: usize) -> ElementId {
        debug_assert!(i < self.n_atoms);
        1 + i
    }

    pub fn atom_ids(&self) -> impl Iterator<Item = ElementId> {
        1..=self.n_atoms
    }

    pub fn leq(&self, p: ElementId, q: ElementId) -> bool {
        self.elements[p].is_subset_of(self.elements[q])
    }

    pub fn lt(&self, p: ElementId, q: ElementId) -> bool {
        p != q && self.leq(p, q)
    }

    pub fn meet(&self, p: ElementId, q: ElementId) -> ElementId {
        self.meet_table[p * self.elements.len() + q]
    }

    pub fn join(&self, p: ElementId, q: ElementId) -> ElementId {
        self.join_table[p * self.elements.len() + q]
    }

    /// Join of an arbitrary set of atoms: the least element whose support
    /// contains it. The empty set joins to the bottom.
    pub fn join_of_atoms(&self, atoms: AtomSet) -> ElementId {
        (0..self.elements.len())
            .find(|&r| atoms.is_subset_of(self.elements[r]))
            .unwrap()
    }

    /// Cover relations as (lower, upper) pairs, sorted.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    pub fn upper_covers(&self, p: ElementId) -> Vec<ElementId> {
        self.covers
            .iter()
            .filter(|&&(a, _)| a == p)
            .map(|&(_, b)| b)
            .collect()
    }

    pub fn lower_covers(&self, q: ElementId) -> Vec<ElementId> {
        self.covers
            .iter()
            .filter(|&&(_, b)| b == q)
            .map(|&(a, _)| a)
            .collect()
    }

    /// Meet-irreducible elements: those with exactly one upper cover.
    /// The top has none and is excluded; the bottom qualifies only in the
    /// degenerate one-atom lattice.
    pub fn meet_irreducibles(&self) -> Vec<ElementId> {
        let mut counts = vec![0usize; self.elements.len()];
        for &(a, _) in &self.covers {
            counts[a] += 1;
        }
        (0..self.elements.len())
            .filter(|&p| counts[p] == 1)
            .collect()
    }

    /// The filter (up-set) ⌈p⌉ = { q : q ≥ p }.
    pub fn filter(&self, p: ElementId) -> Vec<ElementId> {
        (0..self.elements.len())
            .filter(|&q| self.leq(p, q))
            .collect()
    }

    /// The order ideal (down-set) { q : q ≤ p }.
    pub fn order_ideal(&self, p: ElementId) -> Vec<ElementId> {
        (0..self.elements.len())
            .filter(|&q| self.leq(q, p))
            .collect()
    }

    pub fn open_interval(&self, a: ElementId, b: ElementId) -> Result<Subposet<'_>> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable(
                self.elements[a].to_string(),
                self.elements[b].to_string(),
            ));
        }
        let members = (0..self.elements.len())
            .filter(|&q| self.lt(a, q) && self.lt(q, b))
            .collect();
        Ok(Subposet { lattice: self, members })
    }

    pub fn closed_interval(&self, a: ElementId, b: ElementId) -> Result<Subposet<'_>> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable(
                self.elements[a].to_string(),
                self.elements[b].to_string(),
            ));
        }
        let members = (0..self.elements.len())
            .filter(|&q| self.leq(a, q) && self.leq(q, b))
            .collect();
        Ok(Subposet { lattice: self, members })
    }

    pub fn subposet(&self, members: Vec<ElementId>) -> Result<Subposet<'_>> {
        for &p in &members {
            if p >= self.elements.len() {
                return Err(Error::ElementOutOfRange {
                    got: p,
                    n: self.elements.len(),
                });
            }
        }
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        Ok(Subposet { lattice: self, members })
    }

    /// The crosscut complex Γ(0̂, p) on the atoms below p: a nonempty set of
    /// such atoms is a face when its join stays strictly below p. For an atom
    /// p there are no vertices and the result is the empty complex {∅}.
    pub fn crosscut_complex(&self, p: ElementId) -> Result<SimplicialComplex> {
        if p >= self.elements.len() {
            return Err(Error::ElementOutOfRange {
                got: p,
                n: self.elements.len(),
            });
        }
        let atoms: Vec<usize> = self.elements[p].iter().collect();
        let labels: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
        if p == self.bottom() || atoms.len() == 1 {
            return Ok(SimplicialComplex::empty(labels));
        }
        let vertex_set = AtomSet::full(atoms.len());
        let faces: Vec<AtomSet> = vertex_set
            .subsets()
            .filter(|s| !s.is_empty())
            .filter(|s| {
                let join = self.join_of_atoms(AtomSet::from_indices(s.iter().map(|v| atoms[v])));
                self.lt(join, p)
            })
            .collect();
        Ok(SimplicialComplex::from_faces(labels, &faces))
    }

    /// Checks whether `self` and `other` are the same lattice under the
    /// identity map on atoms, i.e. whether their support families coincide.
    pub fn is_isomorphic_atomfixed(&self, other: &FiniteAtomicLattice) -> Result<bool> {
        if self.n_atoms != other.n_atoms {
            return Err(Error::AtomCountMismatch(self.n_atoms, other.n_atoms));
        }
        Ok(self.elements == other.elements)
    }
}

/// A subset of a lattice's elements with the induced order.
#[derive(Debug, Clone)]
pub struct Subposet<'a> {
    lattice: &'a FiniteAtomicLattice,
    members: Vec<ElementId>,
}

impl<'a> Subposet<'a> {
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn leq(&self, p: ElementId, q: ElementId) -> bool {
        self.lattice.leq(p, q)
    }

    /// The order complex Δ: vertices are the members, faces are the chains.
    /// The empty poset gives the empty complex {∅}.
    pub fn order_complex(&self) -> SimplicialComplex {
        let labels: Vec<String> = self.members.iter().map(|p| p.to_string()).collect();
        if self.members.is_empty() {
            return SimplicialComplex::empty(labels);
        }
        // Maximal chains via depth-first extension; members are listed in
        // canonical order, so any chain visits them in increasing index.
        let n = self.members.len();
        let mut facets = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = (0..n)
            .filter(|&i| (0..n).all(|j| j == i || !self.lattice.lt(self.members[j], self.members[i])))
            .map(|i| (vec![i], i))
            .collect();
        while let Some((chain, last)) = stack.pop() {
            let extensions: Vec<usize> = (last + 1..n)
                .filter(|&j| self.lattice.lt(self.members[last], self.members[j]))
                .filter(|&j| {
                    // keep only covers within the subposet to avoid duplicate chains
                    (last + 1..n).all(|k| {
                        k == j
                            || !(self.lattice.lt(self.members[last], self.members[k])
                                && self.lattice.lt(self.members[k], self.members[j]))
                    })
                })
                .collect();
            if extensions.is_empty() {
                facets.push(AtomSet::from_indices(chain.iter().copied()));
            } else {
                for j in extensions {
                    let mut next = chain.clone();
                    next.push(j);
                    stack.push((next, j));
                }
            }
        }
        SimplicialComplex::from_facets(labels, facets)
    }
}
