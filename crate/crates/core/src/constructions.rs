//! The named coordinatizations: nearly Scarf ideals of simplicial complexes,
//! the minimal squarefree labeling by meet-irreducibles, Faridi-style facet
//! ideals, and tree ideals together with the subtree lattice.

use std::collections::BTreeSet;

use crate::atoms::AtomSet;
use crate::complex::SimplicialComplex;
use crate::coordinatize::{generate_ideal, Labeling};
use crate::error::{Error, Result};
use crate::lattice::{ElementId, FiniteAtomicLattice};
use crate::monomial::{Monomial, MonomialIdeal, VariableTable};

/// A finite tree on vertices 1..=V, edges stored with the smaller endpoint
/// first. The edge index (position in the list) is the `i` of the component
/// notation T_{i,1} / T_{i,2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    /// Validates and normalizes an edge list into a tree. Endpoints are
    /// 1-based; each edge is stored smaller-first.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        if vertices > 20 {
            return Err(Error::TooLarge(format!(
                "tree on {vertices} vertices; the subtree machinery caps at 20"
            )));
        }
        if edges.len() != vertices - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges on {} vertices; a tree has exactly {}",
                edges.len(),
                vertices,
                vertices - 1
            )));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (j, k) in edges {
            if j == k {
                return Err(Error::InvalidTree(format!("loop at vertex {j}")));
            }
            if j < 1 || k < 1 || j > vertices || k > vertices {
                return Err(Error::InvalidTree(format!(
                    "edge {{{j},{k}}} leaves the vertex range 1..={vertices}"
                )));
            }
            let e = (j.min(k), j.max(k));
            if normalized.contains(&e) {
                return Err(Error::InvalidTree(format!(
                    "duplicate edge {{{},{}}}",
                    e.0, e.1
                )));
            }
            normalized.push(e);
        }
        let tree = Tree {
            vertices,
            edges: normalized,
        };
        // Right edge count + acyclicity (no duplicate merge) would also do;
        // checking connectivity directly is simplest.
        if tree.component_of(0, None).len() != vertices {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(tree)
    }

    /// The path 1 – 2 – … – V.
    pub fn path(vertices: usize) -> Self {
        Tree::new(vertices, (1..vertices).map(|j| (j, j + 1)).collect())
            .expect("paths are trees")
    }

    /// Decodes a Prüfer sequence of length V − 2 into the labeled tree on
    /// 1..=V it encodes; iterating over all sequences enumerates all V^(V−2)
    /// labeled trees.
    pub fn from_pruefer(vertices: usize, seq: &[usize]) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::InvalidTree(
                "Prüfer decoding needs at least two vertices".into(),
            ));
        }
        if seq.len() != vertices - 2 {
            return Err(Error::InvalidTree(format!(
                "Prüfer sequence of length {} for {} vertices",
                seq.len(),
                vertices
            )));
        }
        if seq.iter().any(|&v| v < 1 || v > vertices) {
            return Err(Error::InvalidTree("Prüfer entry out of range".into()));
        }
        let mut degree = vec![1usize; vertices + 1];
        for &v in seq {
            degree[v] += 1;
        }
        let mut edges = Vec::with_capacity(vertices - 1);
        let mut leaf_heap: BTreeSet<usize> =
            (1..=vertices).filter(|&v| degree[v] == 1).collect();
        for &v in seq {
            let leaf = *leaf_heap.iter().next().expect("a leaf always remains");
            leaf_heap.remove(&leaf);
            edges.push((leaf.min(v), leaf.max(v)));
            degree[v] -= 1;
            if degree[v] == 1 {
                leaf_heap.insert(v);
            }
        }
        let mut last = leaf_heap.into_iter();
        let (a, b) = (
            last.next().expect("two leaves remain"),
            last.next().expect("two leaves remain"),
        );
        edges.push((a.min(b), a.max(b)));
        Tree::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices (0-based) reachable from `start` (0-based) without crossing
    /// `skip_edge`.
    fn component_of(&self, start: usize, skip_edge: Option<usize>) -> AtomSet {
        let mut seen = AtomSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                if Some(i) == skip_edge {
                    continue;
                }
                let (a, b) = (a - 1, b - 1);
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen.contains(next) {
                    seen = seen.insert(next);
                    stack.push(next);
                }
            }
        }
        seen
    }

    /// The two components of T − e_i as 0-based vertex sets:
    /// (T_{i,1}, T_{i,2}), where T_{i,1} contains the smaller endpoint.
    pub fn split(&self, edge_index: usize) -> (AtomSet, AtomSet) {
        let (j, _) = self.edges[edge_index];
        let first = self.component_of(j - 1, Some(edge_index));
        let second = AtomSet::full(self.vertices).difference(first);
        (first, second)
    }
}

/// One variable per nonempty face, in canonical (cardinality, support)
/// order; the variable name is "x" followed by the face's vertex labels.
pub fn face_variable_table(delta: &SimplicialComplex) -> Result<(VariableTable, Vec<AtomSet>)> {
    let mut faces: Vec<AtomSet> = delta
        .faces()
        .into_iter()
        .filter(|f| !f.is_empty())
        .collect();
    faces.sort_by_key(|f| f.canonical_key());
    let labels = delta.vertex_labels();
    let names = faces
        .iter()
        .map(|f| {
            let mut name = String::from("x");
            for v in f.iter() {
                name.push_str(&labels[v]);
            }
            name
        })
        .collect();
    Ok((VariableTable::new(names)?, faces))
}

fn require_covered(delta: &SimplicialComplex) -> Result<()> {
    if delta.n_vertices() == 0 {
        return Err(Error::NoVertices);
    }
    let covered = delta.covered_vertices();
    if let Some(v) = (0..delta.n_vertices()).find(|&v| !covered.contains(v)) {
        return Err(Error::UncoveredVertex(delta.vertex_labels()[v].clone()));
    }
    Ok(())
}

/// The augmented face poset of Δ: the empty set, all nonempty faces ordered
/// by inclusion, and — when Δ is not a simplex — an adjoined top. When Δ is
/// a simplex its maximal face already has full support and serves as the
/// top; adjoining another would break atomicity.
pub fn augmented_face_poset(delta: &SimplicialComplex) -> Result<FiniteAtomicLattice> {
    require_covered(delta)?;
    let mut family: Vec<AtomSet> = delta.faces().into_iter().collect();
    let full = AtomSet::full(delta.n_vertices());
    if !delta.is_simplex() {
        family.push(full);
    }
    FiniteAtomicLattice::from_family(delta.n_vertices(), &family)
}

/// The nearly Scarf coordinatization of a non-simplex Δ: each nonempty face
/// σ is labeled with its own variable x_σ, so the generator of vertex v is
/// the product of x_σ over all faces σ not containing v. With
/// `include_empty_face` an extra variable labels 0̂, multiplying every
/// generator by it without changing the lcm lattice.
pub fn nearly_scarf(
    delta: &SimplicialComplex,
    include_empty_face: bool,
) -> Result<(FiniteAtomicLattice, Labeling, MonomialIdeal)> {
    require_covered(delta)?;
    if delta.is_simplex() {
        return Err(Error::IsSimplex);
    }
    let lattice = augmented_face_poset(delta)?;
    let (table, faces) = face_variable_table(delta)?;
    let (table, empty_var) = if include_empty_face {
        let mut names = table.names().to_vec();
        names.push("xe".to_string());
        let id = names.len() - 1;
        (VariableTable::new(names)?, Some(id))
    } else {
        (table, None)
    };
    let mut labeling = Labeling::empty(table);
    for (v, &face) in faces.iter().enumerate() {
        let p = lattice
            .element_id(face)
            .expect("every nonempty face is a poset element");
        labeling.set(p, Monomial::variable(v));
    }
    if let Some(v) = empty_var {
        labeling.set(lattice.bottom(), Monomial::variable(v));
    }
    let ideal = generate_ideal(&lattice, &labeling);
    Ok((lattice, labeling, ideal))
}

const FRESH_NAMES: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];

fn fresh_name(i: usize) -> String {
    if i < FRESH_NAMES.len() {
        FRESH_NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// The minimal squarefree coordinatization of P: a distinct fresh variable
/// on each meet-irreducible strictly between 0̂ and 1̂, in increasing
/// element order.
pub fn minimal_squarefree(
    lattice: &FiniteAtomicLattice,
) -> Result<(Labeling, MonomialIdeal)> {
    if lattice.n_atoms() < 2 {
        return Err(Error::InvalidFamily(
            "the minimal squarefree labeling needs at least two atoms".into(),
        ));
    }
    let mi: Vec<ElementId> = lattice
        .meet_irreducibles()
        .into_iter()
        .filter(|&p| p != lattice.bottom() && p != lattice.top())
        .collect();
    let table = VariableTable::new((0..mi.len()).map(fresh_name).collect())?;
    let mut labeling = Labeling::empty(table);
    for (v, &p) in mi.iter().enumerate() {
        labeling.set(p, Monomial::variable(v));
    }
    let ideal = generate_ideal(lattice, &labeling);
    Ok((labeling, ideal))
}

/// The faces Faridi's labeling marks: every facet (except the top face of a
/// simplex) and every codimension-one face of every facet.
fn faridi_faces(delta: &SimplicialComplex) -> BTreeSet<AtomSet> {
    let mut marked = BTreeSet::new();
    for &g in delta.facets() {
        if !(delta.is_simplex() && g == AtomSet::full(delta.n_vertices())) {
            marked.insert(g);
        }
        for v in g.iter() {
            let sigma = g.remove(v);
            if !sigma.is_empty() {
                marked.insert(sigma);
            }
        }
    }
    marked
}

/// Faridi's labeling of the augmented face poset: the faces of
/// [`faridi_faces`] carry their nearly-Scarf variables (the full face table
/// is kept so the two constructions share variable names).
pub fn faridi_labeling(
    delta: &SimplicialComplex,
) -> Result<(FiniteAtomicLattice, Labeling)> {
    require_covered(delta)?;
    if delta.n_vertices() < 2 {
        return Err(Error::InvalidFamily(
            "Faridi's labeling needs at least two vertices".into(),
        ));
    }
    let lattice = augmented_face_poset(delta)?;
    let (table, faces) = face_variable_table(delta)?;
    let marked = faridi_faces(delta);
    let mut labeling = Labeling::empty(table);
    for (v, &face) in faces.iter().enumerate() {
        if marked.contains(&face) {
            labeling.set(
                lattice
                    .element_id(face)
                    .expect("every nonempty face is a poset element"),
                Monomial::variable(v),
            );
        }
    }
    Ok((lattice, labeling))
}

/// Faridi's ideal, evaluated directly: the generator of vertex v is the
/// squarefree product of x_{G−{v}} over facets G containing v, together
/// with x_F and all its codimension-one x_σ over facets F avoiding v.
/// Empty faces contribute nothing.
pub fn faridi_ideal(delta: &SimplicialComplex) -> Result<MonomialIdeal> {
    require_covered(delta)?;
    if delta.n_vertices() < 2 {
        return Err(Error::InvalidFamily(
            "Faridi's ideal needs at least two vertices".into(),
        ));
    }
    let (table, faces) = face_variable_table(delta)?;
    let var_of = |face: AtomSet| -> usize {
        faces
            .iter()
            .position(|&f| f == face)
            .expect("referenced faces are faces of Δ")
    };
    let simplex_top = delta.is_simplex().then(|| AtomSet::full(delta.n_vertices()));
    let generators = (0..delta.n_vertices())
        .map(|v| {
            let mut marked: BTreeSet<AtomSet> = BTreeSet::new();
            for &g in delta.facets() {
                if g.contains(v) {
                    let sigma = g.remove(v);
                    if !sigma.is_empty() {
                        marked.insert(sigma);
                    }
                } else {
                    if Some(g) != simplex_top {
                        marked.insert(g);
                    }
                    for w in g.iter() {
                        let sigma = g.remove(w);
                        if !sigma.is_empty() {
                            marked.insert(sigma);
                        }
                    }
                }
            }
            marked
                .into_iter()
                .fold(Monomial::one(), |m, f| m.mul(&Monomial::variable(var_of(f))))
        })
        .collect();
    MonomialIdeal::new(table, generators)
}

/// The variable table x_1, y_1, …, x_n, y_n for a tree with n edges,
/// interleaved so generators print with x_i and y_i adjacent by index.
fn tree_variable_table(n_edges: usize) -> VariableTable {
    let mut names = Vec::with_capacity(2 * n_edges);
    for i in 1..=n_edges {
        names.push(format!("x{i}"));
        names.push(format!("y{i}"));
    }
    VariableTable::new(names).expect("indexed names never collide")
}

fn tree_side_variables(
    tree: &Tree,
    flip: &[bool],
) -> Result<Vec<(AtomSet, AtomSet, usize, usize)>> {
    if !flip.is_empty() && flip.len() != tree.edge_count() {
        return Err(Error::InvalidTree(format!(
            "{} orientation flags for {} edges",
            flip.len(),
            tree.edge_count()
        )));
    }
    Ok((0..tree.edge_count())
        .map(|i| {
            let (first, second) = tree.split(i);
            let (x_i, y_i) = (2 * i, 2 * i + 1);
            if flip.get(i).copied().unwrap_or(false) {
                (second, first, x_i, y_i)
            } else {
                (first, second, x_i, y_i)
            }
        })
        .collect())
}

/// The tree ideal M_T with an explicit per-edge orientation override:
/// `flip[i]` swaps which component of T − e_i counts as T_{i,1}. The
/// generator of vertex v multiplies x_i when v ∈ T_{i,1} and y_i otherwise.
pub fn floystad_tree_ideal_oriented(tree: &Tree, flip: &[bool]) -> Result<MonomialIdeal> {
    let sides = tree_side_variables(tree, flip)?;
    let table = tree_variable_table(tree.edge_count());
    let generators = (0..tree.vertex_count())
        .map(|v| {
            sides.iter().fold(Monomial::one(), |m, &(first, _, x_i, y_i)| {
                m.mul(&Monomial::variable(if first.contains(v) { x_i } else { y_i }))
            })
        })
        .collect();
    MonomialIdeal::new(table, generators)
}

/// The tree ideal M_T under the default orientation: T_{i,1} is the
/// component of T − e_i containing the smaller endpoint of e_i.
pub fn floystad_tree_ideal(tree: &Tree) -> MonomialIdeal {
    floystad_tree_ideal_oriented(tree, &[]).expect("empty override is always valid")
}

/// The subtree lattice P_T: vertex sets of connected subgraphs of T,
/// together with ∅. Atoms are the vertices; meet is intersection.
pub fn subtree_lattice(tree: &Tree) -> Result<FiniteAtomicLattice> {
    let v = tree.vertex_count();
    let mut family = Vec::new();
    for set in AtomSet::full(v).subsets() {
        if set.len() <= 1 || connected_in_tree(tree, set) {
            family.push(set);
        }
    }
    FiniteAtomicLattice::from_family(v, &family)
}

fn connected_in_tree(tree: &Tree, set: AtomSet) -> bool {
    let start = match set.iter().next() {
        Some(s) => s,
        None => return true,
    };
    let mut seen = AtomSet::singleton(start);
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for &(a, b) in tree.edges() {
            let (a, b) = (a - 1, b - 1);
            let next = if a == p { b } else if b == p { a } else { continue };
            if set.contains(next) && !seen.contains(next) {
                seen = seen.insert(next);
                stack.push(next);
            }
        }
    }
    seen == set
}

/// The coordinatization of the subtree lattice: for each edge e_i, the
/// element T_{i,1} is labeled y_i and the element T_{i,2} is labeled x_i.
/// (A label contributes to the generators of the atoms *outside* its
/// element, hence the crossed placement.)
pub fn floystad_coordinatization(tree: &Tree) -> Result<(FiniteAtomicLattice, Labeling)> {
    let lattice = subtree_lattice(tree)?;
    let table = tree_variable_table(tree.edge_count());
    let mut labeling = Labeling::empty(table);
    for i in 0..tree.edge_count() {
        let (first, second) = tree.split(i);
        let (x_i, y_i) = (2 * i, 2 * i + 1);
        labeling.set(
            lattice.element_id(first).expect("components are subtrees"),
            Monomial::variable(y_i),
        );
        labeling.set(
            lattice.element_id(second).expect("components are subtrees"),
            Monomial::variable(x_i),
        );
    }
    Ok((lattice, labeling))
}

/// Which side of which edge a subtree-lattice element is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaggedSubtree {
    pub element: ElementId,
    /// Edge index i of the split T − e_i.
    pub edge: usize,
    /// 1 for T_{i,1} (side of the smaller endpoint), 2 for T_{i,2}.
    pub side: u8,
}

/// The 2n deletion components {T_{i,1}, T_{i,2}} of a tree with n edges, as
/// elements of the subtree lattice. These are exactly its proper
/// meet-irreducibles.
pub fn meet_irreducible_subtrees(tree: &Tree) -> Result<Vec<TaggedSubtree>> {
    let lattice = subtree_lattice(tree)?;
    let mut out = Vec::with_capacity(2 * tree.edge_count());
    for i in 0..tree.edge_count() {
        let (first, second) = tree.split(i);
        out.push(TaggedSubtree {
            element: lattice.element_id(first).expect("components are subtrees"),
            edge: i,
            side: 1,
        });
        out.push(TaggedSubtree {
            element: lattice.element_id(second).expect("components are subtrees"),
            edge: i,
            side: 2,
        });
    }
    Ok(out)
}
