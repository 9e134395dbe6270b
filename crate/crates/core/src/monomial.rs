use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::atoms::AtomSet;
use crate::error::{Error, Result};

/// Variable id: index into a [`VariableTable`].
pub type VarId = usize;

/// An ordered table of variable names. The order fixes how monomials are
/// printed and how generators map to polynomial-ring variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidFamily(format!("duplicate variable {n:?}")));
            }
        }
        Ok(VariableTable { names })
    }

    /// Returns the id of `name`, appending it to the table if absent.
    pub fn intern(&mut self, name: &str) -> VarId {
        if let Some(i) = self.id(name) {
            return i;
        }
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn id(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A monomial with nonnegative exponents, stored sparsely; variables with
/// exponent zero are never stored, so equal monomials compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<VarId, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn variable(v: VarId) -> Self {
        Monomial {
            exps: BTreeMap::from([(v, 1)]),
        }
    }

    pub fn from_exponents<I: IntoIterator<Item = (VarId, u32)>>(iter: I) -> Self {
        let mut exps = BTreeMap::new();
        for (v, e) in iter {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.values().map(|&e| e as u64).sum()
    }

    pub fn degree_of(&self, v: VarId) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.keys().copied()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&e| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            let cur = exps.entry(v).or_insert(0);
            *cur = (*cur).max(e);
        }
        Monomial { exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .filter_map(|(&v, &e)| {
                let m = e.min(other.degree_of(v));
                (m > 0).then_some((v, m))
            })
            .collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(&v, &e)| e <= other.degree_of(v))
    }

    /// `other / self`; errors unless `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Result<Monomial> {
        if !self.divides(other) {
            return Err(Error::NotDivisible);
        }
        let exps = other
            .exps
            .iter()
            .filter_map(|(&v, &e)| {
                let q = e - self.degree_of(v);
                (q > 0).then_some((v, q))
            })
            .collect();
        Ok(Monomial { exps })
    }

    /// Renders with the table's variable order: `x^2yz`, or `1` for the unit.
    pub fn display(&self, table: &VariableTable) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut out = String::new();
        for v in 0..table.len() {
            match self.degree_of(v) {
                0 => {}
                1 => out.push_str(table.name(v)),
                e => {
                    let _ = write!(out, "{}^{}", table.name(v), e);
                }
            }
        }
        out
    }
}

/// A monomial ideal, presented by an ordered list of generators over a
/// variable table. The presentation is kept as given; use
/// [`minimal_generators`](Self::minimal_generators) to pass to the unique
/// minimal one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub variables: VariableTable,
    pub generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(variables: VariableTable, generators: Vec<Monomial>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            if let Some(v) = g.support().find(|&v| v >= variables.len()) {
                return Err(Error::UnknownVariable(format!("#{v}")));
            }
        }
        Ok(MonomialIdeal {
            variables,
            generators,
        })
    }

    /// The unique minimal generating set: generators strictly divisible by
    /// another are dropped, duplicates keep their first occurrence, and the
    /// original order of the survivors is preserved.
    pub fn minimal_generators(&self) -> MonomialIdeal {
        let mut keep: Vec<Monomial> = Vec::new();
        for g in &self.generators {
            if keep.iter().any(|h| h.divides(g)) {
                continue;
            }
            keep.retain(|h| !g.divides(h));
            keep.push(g.clone());
        }
        MonomialIdeal {
            variables: self.variables.clone(),
            generators: keep,
        }
    }

    pub fn is_minimally_generated(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || !h.divides(g))
        })
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|g| g.is_squarefree())
    }

    /// For each variable, the set of generator indices it divides into:
    /// V_t = { i : x_t divides m_i }. Only variables that occur in some
    /// generator appear.
    pub fn support_family(&self) -> Vec<(VarId, AtomSet)> {
        (0..self.variables.len())
            .filter_map(|v| {
                let s: AtomSet = self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.degree_of(v) > 0)
                    .map(|(i, _)| i)
                    .collect();
                (!s.is_empty()).then_some((v, s))
            })
            .collect()
    }

    /// Smallest number of variables meeting the support of every minimal
    /// generator — the codimension (height) of the ideal. Exhaustive over
    /// variable subsets, which is fine at desk scale.
    pub fn codimension(&self) -> usize {
        let minimal = self.minimal_generators();
        let supports: Vec<AtomSet> = minimal
            .generators
            .iter()
            .map(|g| g.support().collect())
            .collect();
        if supports.iter().any(|s| s.is_empty()) {
            return 0; // the unit ideal has no proper minimal primes
        }
        let nv = self.variables.len();
        for size in 0..=nv {
            let mut found = None;
            subsets_of_size(nv, size, &mut |cand| {
                if found.is_none() && supports.iter().all(|s| !s.is_disjoint_from(cand)) {
                    found = Some(cand);
                }
            });
            if found.is_some() {
                return size;
            }
        }
        nv
    }

    pub fn display_generators(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.display(&self.variables))
            .collect()
    }

    /// Renders as `(m_1, m_2, …)`.
    pub fn display(&self) -> String {
        format!("({})", self.display_generators().join(", "))
    }
}

fn subsets_of_size(n: usize, k: usize, f: &mut impl FnMut(AtomSet)) {
    fn rec(n: usize, k: usize, start: usize, cur: AtomSet, f: &mut impl FnMut(AtomSet)) {
        if k == 0 {
            f(cur);
            return;
        }
        for i in start..n {
            rec(n, k - 1, i + 1, cur.insert(i), f);
        }
    }
    rec(n, k, 0, AtomSet::EMPTY, f);
}
