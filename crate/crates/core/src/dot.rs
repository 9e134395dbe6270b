//! DOT rendering of Hasse diagrams: single lattices with optional monomial
//! annotations, and the stratum-colored diagram of a small L(n). Output is
//! deterministic for identical inputs.

use std::fmt::Write as _;

use crate::coordinatize::Labeling;
use crate::error::{Error, Result};
use crate::homology::FieldSpec;
use crate::lattice::FiniteAtomicLattice;
use crate::strata::{betti_strata, covers_above, LnUniverse};

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The Hasse diagram of a lattice, drawn bottom-up with one rank per
/// support cardinality. Each `(tag, labeling)` pair adds a `tag: monomial`
/// line to the nodes that labeling marks.
pub fn dot_lattice(lattice: &FiniteAtomicLattice, annotations: &[(&str, &Labeling)]) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for p in 0..lattice.len() {
        let mut label = lattice.support(p).to_string();
        for (tag, labeling) in annotations {
            if let Some(m) = labeling.label(p) {
                let _ = write!(label, "\\n{tag}: {}", m.display(&labeling.variables));
            }
        }
        let _ = writeln!(out, "  n{p} [label=\"{}\"];", escape(&label));
    }
    let max_card = lattice.n_atoms();
    for card in 0..=max_card {
        let rank: Vec<usize> = (0..lattice.len())
            .filter(|&p| lattice.support(p).len() == card)
            .collect();
        if rank.len() > 1 {
            let _ = write!(out, "  {{ rank=same;");
            for p in rank {
                let _ = write!(out, " n{p};");
            }
            out.push_str(" }\n");
        }
    }
    for &(lo, hi) in lattice.covers() {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

const PALETTE: [&str; 10] = [
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99", "#1f78b4", "#33a02c",
    "#e31a1c", "#ff7f00",
];

/// The Hasse diagram of L(n) itself, nodes colored by Betti stratum and
/// labeled with the member index, family size, and total Betti vector.
/// Rendering is capped at n ≤ 3; larger universes do not fit a page.
pub fn dot_universe(universe: &LnUniverse, field: FieldSpec) -> Result<String> {
    if universe.n_atoms() > 3 {
        return Err(Error::TooLarge(format!(
            "rendering L({}); diagrams are drawn for n ≤ 3",
            universe.n_atoms()
        )));
    }
    let report = betti_strata(universe, field);
    let mut stratum_of = vec![0usize; universe.len()];
    for (s, members) in report.strata.values().enumerate() {
        for &i in members {
            stratum_of[i] = s;
        }
    }
    let vectors: Vec<&Vec<usize>> = {
        let mut v = vec![None; universe.len()];
        for (vector, members) in &report.strata {
            for &i in members {
                v[i] = Some(vector);
            }
        }
        v.into_iter().map(|x| x.expect("every member lies in a stratum")).collect()
    };
    let mut out = String::from(
        "digraph universe {\n  rankdir=BT;\n  node [shape=box, style=filled];\n",
    );
    for i in 0..universe.len() {
        let totals: Vec<String> = vectors[i].iter().map(|b| b.to_string()).collect();
        let _ = writeln!(
            out,
            "  m{i} [label=\"P{i}\\n|F| = {}\\nb = ({})\", fillcolor=\"{}\"];",
            universe.family(i).len(),
            totals.join(", "),
            PALETTE[stratum_of[i] % PALETTE.len()]
        );
    }
    for card in 0..=(1usize << universe.n_atoms()) {
        let rank: Vec<usize> = (0..universe.len())
            .filter(|&i| universe.family(i).len() == card)
            .collect();
        if rank.len() > 1 {
            let _ = write!(out, "  {{ rank=same;");
            for i in rank {
                let _ = write!(out, " m{i};");
            }
            out.push_str(" }\n");
        }
    }
    for i in 0..universe.len() {
        for j in covers_above(universe, i) {
            let _ = writeln!(out, "  m{i} -> m{j};");
        }
    }
    out.push_str("}\n");
    Ok(out)
}
