use std::collections::BTreeSet;

use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::lattice::{ElementId, FiniteAtomicLattice};
use crate::monomial::{Monomial, MonomialIdeal, VariableTable};

/// The lcm lattice of a minimally generated monomial ideal: all least common
/// multiples of nonempty sets of generators, ordered by divisibility, with
/// the unit monomial adjoined as the bottom.
///
/// Each element carries its atom support — the set of generators dividing
/// it — and the support map is an isomorphism onto an intersection-closed
/// family, so the underlying structure is a [`FiniteAtomicLattice`] whose
/// atom `i` is generator `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    pub lattice: FiniteAtomicLattice,
    /// Monomial label of each element, indexed by element id; the bottom is
    /// labeled 1.
    pub labels: Vec<Monomial>,
    pub variables: VariableTable,
}

impl LcmLattice {
    pub fn label(&self, p: ElementId) -> &Monomial {
        &self.labels[p]
    }

    /// Id of the element labeled by `m`, if present.
    pub fn element_of(&self, m: &Monomial) -> Option<ElementId> {
        self.labels.iter().position(|l| l == m)
    }
}

/// Builds the lcm lattice of `ideal`.
///
/// The generators must be minimal: a unit generator or one dividing another
/// is rejected, because either collapses the generator-to-atom bijection.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<LcmLattice> {
    let gens = &ideal.generators;
    for (i, g) in gens.iter().enumerate() {
        if g.is_unit() {
            return Err(Error::UnitLabel(i));
        }
    }
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i != j && gens[i].divides(&gens[j]) {
                return Err(Error::NonMinimalGenerators(i, j));
            }
        }
    }

    // Close under pairwise lcm; the closure is exactly the set of lcms of
    // nonempty generator subsets.
    let mut elems: BTreeSet<Monomial> = gens.iter().cloned().collect();
    loop {
        let mut fresh: Vec<Monomial> = Vec::new();
        for a in &elems {
            for b in &elems {
                let l = a.lcm(b);
                if !elems.contains(&l) {
                    fresh.push(l);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        elems.extend(fresh);
    }
    elems.insert(Monomial::one());

    let support = |m: &Monomial| -> AtomSet {
        gens.iter()
            .enumerate()
            .filter(|(_, g)| g.divides(m))
            .map(|(i, _)| i)
            .collect()
    };
    let family: Vec<AtomSet> = elems.iter().map(support).collect();
    let lattice = FiniteAtomicLattice::from_family(gens.len(), &family)?;
    let mut labels = vec![Monomial::one(); lattice.len()];
    for m in &elems {
        let id = lattice.element_id(support(m)).expect("support is closed");
        labels[id] = m.clone();
    }
    Ok(LcmLattice {
        lattice,
        labels,
        variables: ideal.variables.clone(),
    })
}
