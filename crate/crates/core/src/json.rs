//! JSON interchange for every object the tools read or write: lattices,
//! ideals, labelings, trees, simplicial complexes, and support families.
//! All maps are ordered so emission is byte-deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::atoms::AtomSet;
use crate::complex::SimplicialComplex;
use crate::constructions::Tree;
use crate::coordinatize::Labeling;
use crate::error::{Error, Result};
use crate::families::SupportFamily;
use crate::lattice::FiniteAtomicLattice;
use crate::monomial::{Monomial, MonomialIdeal, VariableTable};

/// Parses any of the schema types, reporting position on malformed input.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

/// Emits with a trailing newline, two-space indentation, sorted keys.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("schema types serialize");
    out.push('\n');
    out
}

/// `{"n_atoms": n, "elements": [[atom indices ascending], …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n_atoms: usize,
    pub elements: Vec<Vec<usize>>,
}

impl LatticeJson {
    pub fn from_lattice(lattice: &FiniteAtomicLattice) -> Self {
        LatticeJson {
            n_atoms: lattice.n_atoms(),
            elements: lattice
                .elements()
                .iter()
                .map(|s| s.iter().collect())
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteAtomicLattice> {
        if self.n_atoms > 32 {
            return Err(Error::TooLarge(format!(
                "{} atoms; supports are 32-bit sets",
                self.n_atoms
            )));
        }
        let mut family = Vec::with_capacity(self.elements.len());
        for raw in &self.elements {
            for &a in raw {
                if a >= self.n_atoms {
                    return Err(Error::AtomOutOfRange {
                        got: a,
                        n: self.n_atoms,
                    });
                }
            }
            family.push(raw.iter().copied().collect::<AtomSet>());
        }
        FiniteAtomicLattice::from_family(self.n_atoms, &family)
    }
}

/// `{"variables": [names], "generators": [{"x": e, …}, …]}`; an absent
/// variable means exponent zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub variables: Vec<String>,
    pub generators: Vec<BTreeMap<String, u32>>,
}

fn monomial_to_map(m: &Monomial, table: &VariableTable) -> BTreeMap<String, u32> {
    m.exponents()
        .map(|(v, e)| (table.name(v).to_string(), e))
        .collect()
}

fn monomial_from_map(map: &BTreeMap<String, u32>, table: &VariableTable) -> Result<Monomial> {
    let mut pairs = Vec::with_capacity(map.len());
    for (name, &e) in map {
        let v = table
            .id(name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        if e > 0 {
            pairs.push((v, e));
        }
    }
    Ok(Monomial::from_exponents(pairs))
}

impl IdealJson {
    pub fn from_ideal(ideal: &MonomialIdeal) -> Self {
        IdealJson {
            variables: ideal.variables.names().to_vec(),
            generators: ideal
                .generators
                .iter()
                .map(|g| monomial_to_map(g, &ideal.variables))
                .collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        let table = VariableTable::new(self.variables.clone())?;
        let generators = self
            .generators
            .iter()
            .map(|g| monomial_from_map(g, &table))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(table, generators)
    }
}

/// The `lattice` field of a labeling: inline object or a file path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Path(String),
    Inline(LatticeJson),
}

impl LatticeRef {
    /// Resolves the reference; relative paths are taken from `base_dir`.
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<FiniteAtomicLattice> {
        match self {
            LatticeRef::Inline(json) => json.to_lattice(),
            LatticeRef::Path(p) => {
                let path = Path::new(p);
                let full = match (path.is_relative(), base_dir) {
                    (true, Some(base)) => base.join(path),
                    _ => path.to_path_buf(),
                };
                read_json::<LatticeJson>(&full)?.to_lattice()
            }
        }
    }
}

/// `{"lattice": <lattice or path>, "labels": {"<element index>": {"x": e}}}`
///
/// The `lattice` field may be omitted when the consumer supplies the lattice
/// separately (see [`labels_for`](Self::labels_for)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeRef>,
    pub labels: BTreeMap<String, BTreeMap<String, u32>>,
}

impl LabelingJson {
    pub fn from_parts(lattice: &FiniteAtomicLattice, labeling: &Labeling) -> Self {
        LabelingJson {
            lattice: Some(LatticeRef::Inline(LatticeJson::from_lattice(lattice))),
            labels: labeling
                .labeled_elements()
                .map(|(p, m)| (p.to_string(), monomial_to_map(m, &labeling.variables)))
                .collect(),
        }
    }

    /// Resolves into the lattice and its labeling. The variable table is the
    /// sorted set of names appearing anywhere in the labels.
    pub fn to_parts(&self, base_dir: Option<&Path>) -> Result<(FiniteAtomicLattice, Labeling)> {
        let lattice = self
            .lattice
            .as_ref()
            .ok_or_else(|| {
                Error::Parse("labeling names no lattice (field \"lattice\")".into())
            })?
            .resolve(base_dir)?;
        let labeling = self.labels_for(&lattice)?;
        Ok((lattice, labeling))
    }

    /// Parses just the labels against an externally supplied lattice, for
    /// callers that received the lattice as its own file.
    pub fn labels_for(&self, lattice: &FiniteAtomicLattice) -> Result<Labeling> {
        let names: BTreeSet<String> = self
            .labels
            .values()
            .flat_map(|m| m.keys().cloned())
            .collect();
        let table = VariableTable::new(names.into_iter().collect())?;
        let mut labeling = Labeling::empty(table);
        for (key, map) in &self.labels {
            let p: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("element index {key:?} is not a number")))?;
            if p >= lattice.len() {
                return Err(Error::LabelOutOfRange {
                    got: p,
                    n: lattice.len(),
                });
            }
            labeling.set(p, monomial_from_map(map, &labeling.variables)?);
        }
        Ok(labeling)
    }
}

/// `{"vertices": V, "edges": [[j, k], …]}` with 1-based endpoints, j < k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TreeJson {
    pub fn from_tree(tree: &Tree) -> Self {
        TreeJson {
            vertices: tree.vertex_count(),
            edges: tree.edges().to_vec(),
        }
    }

    pub fn to_tree(&self) -> Result<Tree> {
        Tree::new(self.vertices, self.edges.clone())
    }
}

/// `{"vertices": [labels], "facets": [[labels], …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexJson {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        let labels = complex.vertex_labels();
        ComplexJson {
            vertices: labels.to_vec(),
            facets: complex
                .facets()
                .iter()
                .map(|f| f.iter().map(|v| labels[v].clone()).collect())
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let mut seen = BTreeSet::new();
        for label in &self.vertices {
            if !seen.insert(label) {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        let index: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut facets = Vec::with_capacity(self.facets.len());
        for facet in &self.facets {
            let mut set = AtomSet::EMPTY;
            for label in facet {
                let &i = index
                    .get(label.as_str())
                    .ok_or_else(|| Error::UnknownVertex(label.clone()))?;
                set = set.insert(i);
            }
            facets.push(set);
        }
        Ok(SimplicialComplex::from_facets(self.vertices.clone(), facets))
    }
}

/// `{"n": n, "sets": {"x1": [1-based atoms], …}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub sets: BTreeMap<String, Vec<usize>>,
}

impl FamilyJson {
    pub fn from_family(family: &SupportFamily) -> Self {
        FamilyJson {
            n: family.n,
            sets: family
                .sets
                .iter()
                .map(|(name, s)| (name.clone(), s.iter().map(|a| a + 1).collect()))
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<SupportFamily> {
        let mut sets = Vec::with_capacity(self.sets.len());
        for (name, atoms) in &self.sets {
            let mut set = AtomSet::EMPTY;
            for &a in atoms {
                if a == 0 || a > self.n {
                    return Err(Error::AtomOutOfRange { got: a, n: self.n });
                }
                set = set.insert(a - 1);
            }
            sets.push((name.clone(), set));
        }
        SupportFamily::new(self.n, sets)
    }
}
