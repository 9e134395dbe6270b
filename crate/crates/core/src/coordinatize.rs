use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{ElementId, FiniteAtomicLattice};
use crate::lcm_lattice::{lcm_lattice, LcmLattice};
use crate::monomial::{Monomial, MonomialIdeal, VarId, VariableTable};

/// A partial assignment of monomials to lattice elements.
///
/// Unit labels are never stored: an element either carries a nontrivial
/// monomial or no label at all. The labeling does not own the lattice; every
/// operation takes the lattice alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub variables: VariableTable,
    labels: BTreeMap<ElementId, Monomial>,
}

impl Labeling {
    pub fn empty(variables: VariableTable) -> Self {
        Labeling {
            variables,
            labels: BTreeMap::new(),
        }
    }

    pub fn new(
        variables: VariableTable,
        labels: BTreeMap<ElementId, Monomial>,
        lattice_len: usize,
    ) -> Result<Self> {
        for (&p, m) in &labels {
            if p >= lattice_len {
                return Err(Error::LabelOutOfRange {
                    got: p,
                    n: lattice_len,
                });
            }
            if m.is_unit() {
                return Err(Error::UnitLabel(p));
            }
            if let Some(v) = m.support().find(|&v| v >= variables.len()) {
                return Err(Error::UnknownVariable(format!("#{v}")));
            }
        }
        Ok(Labeling { variables, labels })
    }

    /// Sets the label of `p`; a unit erases any existing label.
    pub fn set(&mut self, p: ElementId, m: Monomial) {
        if m.is_unit() {
            self.labels.remove(&p);
        } else {
            self.labels.insert(p, m);
        }
    }

    pub fn label(&self, p: ElementId) -> Option<&Monomial> {
        self.labels.get(&p)
    }

    pub fn labeled_elements(&self) -> impl Iterator<Item = (ElementId, &Monomial)> {
        self.labels.iter().map(|(&p, m)| (p, m))
    }

    /// Element ids carrying a label, in increasing order.
    pub fn support(&self) -> Vec<ElementId> {
        self.labels.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// The monomial ideal generated by a labeling: one generator per atom,
///
///   x(a) = ∏ { m_p : p ∈ ⌈a⌉ᶜ },
///
/// the product of the labels at all elements *not* above the atom (the
/// complement of the filter of `a` in all of P, bottom included).
pub fn generate_ideal(lattice: &FiniteAtomicLattice, labeling: &Labeling) -> MonomialIdeal {
    let generators = lattice
        .atom_ids()
        .map(|a| {
            let mut g = Monomial::one();
            for (p, m) in labeling.labeled_elements() {
                if !lattice.leq(a, p) {
                    g = g.mul(m);
                }
            }
            g
        })
        .collect();
    MonomialIdeal {
        variables: labeling.variables.clone(),
        generators,
    }
}

/// Outcome of the (C1) check: every meet-irreducible must carry a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C1Outcome {
    pub pass: bool,
    /// Meet-irreducible elements with no label.
    pub unlabeled: Vec<ElementId>,
}

pub fn check_c1(lattice: &FiniteAtomicLattice, labeling: &Labeling) -> C1Outcome {
    let unlabeled: Vec<ElementId> = lattice
        .meet_irreducibles()
        .into_iter()
        .filter(|p| labeling.label(*p).is_none())
        .collect();
    C1Outcome {
        pass: unlabeled.is_empty(),
        unlabeled,
    }
}

/// Outcome of the (C2) check: for each variable, the labeled elements whose
/// label involves it must form a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C2Outcome {
    pub pass: bool,
    /// (variable, p, q) with p, q incomparable and both labels containing
    /// the variable.
    pub violations: Vec<(VarId, ElementId, ElementId)>,
}

pub fn check_c2(lattice: &FiniteAtomicLattice, labeling: &Labeling) -> C2Outcome {
    let mut violations = Vec::new();
    for v in 0..labeling.variables.len() {
        let carriers: Vec<ElementId> = labeling
            .labeled_elements()
            .filter(|(_, m)| m.degree_of(v) > 0)
            .map(|(p, _)| p)
            .collect();
        for (i, &p) in carriers.iter().enumerate() {
            for &q in &carriers[i + 1..] {
                if !lattice.leq(p, q) && !lattice.leq(q, p) {
                    violations.push((v, p, q));
                }
            }
        }
    }
    C2Outcome {
        pass: violations.is_empty(),
        violations,
    }
}

/// The deficit labeling computed from per-element monomials `l`:
///
///   m_p = gcd { l_t : t > p } / l_p,
///
/// with m at the top defined to be 1. Requires l to be monotone enough that
/// l_p divides the gcd, which holds for lcm-derived values.
fn deficit_from_values(lattice: &FiniteAtomicLattice, l: &[Monomial]) -> Vec<Monomial> {
    (0..lattice.len())
        .map(|p| {
            if p == lattice.top() {
                return Monomial::one();
            }
            let mut gcd: Option<Monomial> = None;
            for t in 0..lattice.len() {
                if lattice.lt(p, t) {
                    gcd = Some(match gcd {
                        None => l[t].clone(),
                        Some(g) => g.gcd(&l[t]),
                    });
                }
            }
            let gcd = gcd.expect("every non-top element has the top above it");
            l[p].quotient_into(&gcd)
                .expect("l_p divides every l_t above it")
        })
        .collect()
}

/// The deficit labeling D of an lcm lattice: Eq. (2) applied to the true
/// lcm values. Unit deficits are dropped.
pub fn deficit_labeling(lcm: &LcmLattice) -> Labeling {
    let values = deficit_from_values(&lcm.lattice, &lcm.labels);
    let mut out = Labeling::empty(lcm.variables.clone());
    for (p, m) in values.into_iter().enumerate() {
        out.set(p, m);
    }
    out
}

/// The induced labeling D_M: deficit values computed on P itself, using
///
///   l_a = x(a) for atoms,  l_p = lcm { l_a : a ≤ p },  l_0̂ = 1,
///
/// in place of true lcm-lattice values. M is a coordinatization of P exactly
/// when D_M satisfies (C1) and (C2).
pub fn induced_labeling(lattice: &FiniteAtomicLattice, labeling: &Labeling) -> Labeling {
    let ideal = generate_ideal(lattice, labeling);
    let l: Vec<Monomial> = (0..lattice.len())
        .map(|p| {
            lattice
                .support(p)
                .iter()
                .fold(Monomial::one(), |acc, i| acc.lcm(&ideal.generators[i]))
        })
        .collect();
    let values = deficit_from_values(lattice, &l);
    let mut out = Labeling::empty(labeling.variables.clone());
    for (p, m) in values.into_iter().enumerate() {
        out.set(p, m);
    }
    out
}

/// Verdict of the coordinatization test, with the induced labeling and the
/// C1/C2 witness sets as the certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinatizationVerdict {
    pub is_coordinatization: bool,
    pub induced: Labeling,
    pub c1: C1Outcome,
    pub c2: C2Outcome,
    /// On a yes verdict, whether the lcm lattice of the generated ideal
    /// reproduces P atom for atom; carried as the positive certificate.
    /// `None` on a no verdict.
    pub lcm_lattice_matches: Option<bool>,
}

/// Decides whether M coordinatizes P by checking (C1) and (C2) on the
/// induced labeling D_M. On success, independently rebuilds the lcm lattice
/// of the generated ideal and compares it with P.
pub fn is_coordinatization(
    lattice: &FiniteAtomicLattice,
    labeling: &Labeling,
) -> CoordinatizationVerdict {
    let induced = induced_labeling(lattice, labeling);
    let c1 = check_c1(lattice, &induced);
    let c2 = check_c2(lattice, &induced);
    let yes = c1.pass && c2.pass;
    let lcm_lattice_matches = yes.then(|| {
        let ideal = generate_ideal(lattice, labeling).minimal_generators();
        ideal.generators.len() == lattice.n_atoms()
            && lcm_lattice(&ideal)
                .ok()
                .map(|lcm| {
                    lcm.lattice
                        .is_isomorphic_atomfixed(lattice)
                        .unwrap_or(false)
                })
                .unwrap_or(false)
    });
    CoordinatizationVerdict {
        is_coordinatization: yes,
        induced,
        c1,
        c2,
        lcm_lattice_matches,
    }
}

/// One peeled layer of [`x_strata`]: the elements above the atoms whose
/// generators realize the exponent `s` within the current complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumLayer {
    pub exponent: u32,
    pub elements: Vec<ElementId>,
    /// The unique maximal element of the layer, when there is one. The first
    /// layer always has the top as its unique maximal element; a later layer
    /// without one certifies that D_M violates (C2) for this variable.
    pub unique_maximal: Option<ElementId>,
}

/// The layer decomposition of P for one variable of a labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XStrata {
    pub variable: VarId,
    /// Highest exponent of the variable among the generators.
    pub max_exponent: u32,
    /// Layers in order of strictly decreasing exponent.
    pub layers: Vec<StratumLayer>,
    /// Elements never peeled: the bottom, plus everything above only
    /// variable-free atoms.
    pub residual: Vec<ElementId>,
    pub residual_is_bottom_only: bool,
}

/// Peels P into the sets A_s of the proposition's proof for one variable:
/// repeatedly take the highest remaining exponent s among atom generators,
/// and remove the up-set (within the remaining complement) of the atoms
/// realizing it.
pub fn x_strata(
    lattice: &FiniteAtomicLattice,
    labeling: &Labeling,
    variable: VarId,
) -> Result<XStrata> {
    let ideal = generate_ideal(lattice, labeling);
    let degrees: Vec<u32> = ideal
        .generators
        .iter()
        .map(|g| g.degree_of(variable))
        .collect();
    let r = degrees.iter().copied().max().unwrap_or(0);
    if r == 0 {
        let name = labeling
            .variables
            .names()
            .get(variable)
            .cloned()
            .unwrap_or_else(|| format!("#{variable}"));
        return Err(Error::VariableAbsent(name));
    }

    let mut in_b = vec![true; lattice.len()];
    let mut layers = Vec::new();
    loop {
        let s = (0..lattice.n_atoms())
            .filter(|&i| in_b[lattice.atom_id(i)])
            .map(|i| degrees[i])
            .max()
            .unwrap_or(0);
        if s == 0 {
            break;
        }
        let max_atoms: Vec<usize> = (0..lattice.n_atoms())
            .filter(|&i| in_b[lattice.atom_id(i)] && degrees[i] == s)
            .collect();
        let elements: Vec<ElementId> = (0..lattice.len())
            .filter(|&p| in_b[p])
            .filter(|&p| max_atoms.iter().any(|&i| lattice.support(p).contains(i)))
            .collect();
        let maximal: Vec<ElementId> = elements
            .iter()
            .copied()
            .filter(|&p| elements.iter().all(|&q| q == p || !lattice.lt(p, q)))
            .collect();
        for &p in &elements {
            in_b[p] = false;
        }
        layers.push(StratumLayer {
            exponent: s,
            elements,
            unique_maximal: match maximal.as_slice() {
                [only] => Some(*only),
                _ => None,
            },
        });
    }

    let residual: Vec<ElementId> = (0..lattice.len()).filter(|&p| in_b[p]).collect();
    let residual_is_bottom_only = residual == [lattice.bottom()];
    Ok(XStrata {
        variable,
        max_exponent: r,
        layers,
        residual,
        residual_is_bottom_only,
    })
}

/// The lattice element canonically associated with a variable of a minimal
/// ideal: the join (in the lcm lattice) of the atoms outside V_t, where V_t
/// is the set of generators the variable divides into.
pub fn variable_to_element(ideal: &MonomialIdeal, variable: &str) -> Result<ElementId> {
    let v = ideal
        .variables
        .id(variable)
        .ok_or_else(|| Error::UnknownVariable(variable.to_string()))?;
    let lcm = lcm_lattice(ideal)?;
    let vt: crate::atoms::AtomSet = ideal
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.degree_of(v) > 0)
        .map(|(i, _)| i)
        .collect();
    if vt.is_empty() {
        return Err(Error::VariableAbsent(variable.to_string()));
    }
    let complement = vt.complement_in(ideal.generators.len());
    Ok(lcm.lattice.join_of_atoms(complement))
}
