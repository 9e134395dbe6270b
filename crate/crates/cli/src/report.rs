//! Report assembly shared by every subcommand: input digests, payload
//! fields, the verdict that decides the exit code, and the optional primary
//! artifact written to `--out`. Reports serialize with sorted keys so
//! identical runs emit identical bytes.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use lcmlat::json::{parse_json, IdealJson, LabelingJson, LatticeJson, LatticeRef};
use lcmlat::{
    AtomSet, BettiTable, Error, FiniteAtomicLattice, Labeling, LcmLattice, MonomialIdeal, Result,
};

/// What a subcommand hands back to `main`.
pub struct Outcome {
    /// Command-specific report fields, merged into the report root.
    pub payload: Map<String, Value>,
    /// `Some(false)` turns into exit code 1; `None` means the command has no
    /// verdict and exits 0 unless it errors.
    pub verdict: Option<bool>,
    /// Written to `--out` when given.
    pub artifact: Option<Artifact>,
}

pub enum Artifact {
    /// Pretty-printed JSON file.
    Json(Value),
    /// Raw text file (DOT).
    Text(String),
    /// A directory of named files (`strata enum`).
    Dir(Vec<(String, String)>),
}

impl Outcome {
    pub fn new(payload: Map<String, Value>) -> Self {
        Outcome {
            payload,
            verdict: None,
            artifact: None,
        }
    }

    pub fn with_verdict(mut self, ok: bool) -> Self {
        self.verdict = Some(ok);
        self
    }

    pub fn with_artifact(mut self, artifact: Artifact) -> Self {
        self.artifact = Some(artifact);
        self
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Reads one input file, recording `{path, sha256}` for the report.
pub fn read_input_text(path: &Path, inputs: &mut Vec<Value>) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    inputs.push(json!({
        "path": path.display().to_string(),
        "sha256": sha256_hex(&bytes),
    }));
    String::from_utf8(bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads and parses one schema file, recording its digest.
pub fn read_input<T: DeserializeOwned>(path: &Path, inputs: &mut Vec<Value>) -> Result<T> {
    let text = read_input_text(path, inputs)?;
    parse_json(&text)
}

pub fn value_of<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("schema types serialize")
}

/// Atom/element sets as ascending 0-based index arrays.
pub fn atoms_value(s: AtomSet) -> Value {
    Value::Array(s.iter().map(|a| json!(a)).collect())
}

pub fn lattice_value(lattice: &FiniteAtomicLattice) -> Value {
    value_of(&LatticeJson::from_lattice(lattice))
}

pub fn ideal_value(ideal: &MonomialIdeal) -> Value {
    value_of(&IdealJson::from_ideal(ideal))
}

pub fn labeling_value(lattice: &FiniteAtomicLattice, labeling: &Labeling) -> Value {
    value_of(&LabelingJson::from_parts(lattice, labeling))
}

/// The lcm lattice as a labeling of its own underlying lattice: every
/// element except the bottom carries its monomial.
pub fn lcm_lattice_value(lcm: &LcmLattice) -> Value {
    let labels: Map<String, Value> = (0..lcm.lattice.len())
        .filter(|&p| p != lcm.lattice.bottom())
        .map(|p| {
            let mono: Map<String, Value> = lcm.labels[p]
                .exponents()
                .map(|(v, e)| (lcm.variables.name(v).to_string(), json!(e)))
                .collect();
            (p.to_string(), Value::Object(mono))
        })
        .collect();
    let mut obj = Map::new();
    obj.insert(
        "lattice".into(),
        value_of(&LatticeRef::Inline(LatticeJson::from_lattice(&lcm.lattice))),
    );
    obj.insert("labels".into(), Value::Object(labels));
    Value::Object(obj)
}

pub fn betti_value(table: &BettiTable) -> Value {
    let graded: Vec<Value> = table
        .graded
        .iter()
        .map(|(&(i, p), &dim)| json!({"i": i, "element": p, "value": dim}))
        .collect();
    json!({
        "graded": graded,
        "totals": table.totals,
        "projective_dimension": table.projective_dimension(),
    })
}
