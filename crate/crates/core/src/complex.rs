use std::collections::BTreeSet;

use crate::atoms::AtomSet;
use crate::error::{Error, Result};

/// A finite abstract simplicial complex on a labeled vertex set, stored by
/// its facets (inclusion-maximal faces) as bitmasks over the vertex list.
///
/// Two degenerate complexes are kept distinct, following the usual
/// combinatorial conventions:
///
/// * the **void complex** has no faces at all (`facets` is empty);
/// * the **empty complex** has the single face ∅ (`facets == [∅]`).
///
/// The distinction matters for reduced homology: the empty complex has
/// H̃_{-1} of rank 1, while the void complex has no homology in any degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_labels: Vec<String>,
    facets: Vec<AtomSet>,
}

impl SimplicialComplex {
    /// The complex whose only face is the empty face.
    pub fn empty(vertex_labels: Vec<String>) -> Self {
        SimplicialComplex {
            vertex_labels,
            facets: vec![AtomSet::EMPTY],
        }
    }

    /// The complex with no faces whatsoever.
    pub fn void(vertex_labels: Vec<String>) -> Self {
        SimplicialComplex {
            vertex_labels,
            facets: Vec::new(),
        }
    }

    /// Builds a complex from a list of faces that need not be maximal or
    /// distinct; inclusion-maximal ones are kept. An empty list gives the
    /// empty complex.
    pub fn from_faces(vertex_labels: Vec<String>, faces: &[AtomSet]) -> Self {
        let mut maximal: Vec<AtomSet> = Vec::new();
        for &f in faces {
            if maximal.iter().any(|&g| f.is_subset_of(g)) {
                continue;
            }
            maximal.retain(|&g| !g.is_subset_of(f));
            maximal.push(f);
        }
        if maximal.is_empty() {
            maximal.push(AtomSet::EMPTY);
        }
        maximal.sort_by_key(|s| s.canonical_key());
        SimplicialComplex {
            vertex_labels,
            facets: maximal,
        }
    }

    /// Like [`from_faces`](Self::from_faces) but for callers that already
    /// hold facets.
    pub fn from_facets(vertex_labels: Vec<String>, facets: Vec<AtomSet>) -> Self {
        Self::from_faces(vertex_labels, &facets)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn facets(&self) -> &[AtomSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets == [AtomSet::EMPTY]
    }

    /// A simplex is the complex of all subsets of its full vertex set.
    pub fn is_simplex(&self) -> bool {
        !self.vertex_labels.is_empty()
            && self.facets == [AtomSet::full(self.vertex_labels.len())]
    }

    /// Vertices that actually occur in some face.
    pub fn covered_vertices(&self) -> AtomSet {
        self.facets
            .iter()
            .fold(AtomSet::EMPTY, |acc, &f| acc.union(f))
    }

    /// All faces, including the empty face when the complex is non-void.
    pub fn faces(&self) -> BTreeSet<AtomSet> {
        let mut all = BTreeSet::new();
        for &f in &self.facets {
            for s in f.subsets() {
                all.insert(s);
            }
        }
        all
    }

    /// Faces of dimension `dim` (so cardinality `dim + 1`), in canonical order.
    pub fn faces_of_dim(&self, dim: i64) -> Vec<AtomSet> {
        let want = (dim + 1) as usize;
        self.faces()
            .into_iter()
            .filter(|f| f.len() == want)
            .collect()
    }

    /// Dimension of the complex: -1 for the empty complex; the void complex
    /// has no dimension and reports None.
    pub fn dim(&self) -> Option<i64> {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
    }

    /// Face counts by dimension starting at dimension 0; the empty and void
    /// complexes give an empty vector.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = match self.dim() {
            Some(d) if d >= 0 => d,
            _ => return Vec::new(),
        };
        let faces = self.faces();
        (0..=top)
            .map(|d| faces.iter().filter(|f| f.len() as i64 == d + 1).count())
            .collect()
    }

    /// The induced subcomplex on a vertex subset: all faces contained in
    /// `keep`. Labels are preserved, so vertex indices keep their meaning.
    pub fn restrict_to_vertices(&self, keep: AtomSet) -> SimplicialComplex {
        let faces: Vec<AtomSet> = self.facets.iter().map(|&f| f.intersection(keep)).collect();
        Self::from_faces(self.vertex_labels.clone(), &faces)
    }

    /// The subcomplex of faces satisfying a predicate; the face set of a
    /// complex is downward closed, so the predicate must be as well.
    pub fn subcomplex_where<F: Fn(AtomSet) -> bool>(&self, keep: F) -> SimplicialComplex {
        let faces: Vec<AtomSet> = self.faces().into_iter().filter(|&f| keep(f)).collect();
        if faces.is_empty() {
            return Self::void(self.vertex_labels.clone());
        }
        Self::from_faces(self.vertex_labels.clone(), &faces)
    }

    /// Whether the 1-skeleton of the induced subcomplex on `verts` is
    /// connected. Requires every vertex of `verts` to be a face; a single
    /// vertex is connected, the empty set is not.
    pub fn skeleton_connected_on(&self, verts: AtomSet) -> Result<bool> {
        if verts.is_empty() {
            return Ok(false);
        }
        let faces = self.faces();
        for v in verts.iter() {
            if v >= self.vertex_labels.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            if !faces.contains(&AtomSet::singleton(v)) {
                return Err(Error::UncoveredVertex(self.vertex_labels[v].clone()));
            }
        }
        let vs: Vec<usize> = verts.iter().collect();
        let mut comp: Vec<usize> = (0..vs.len()).collect();
        fn find(comp: &mut Vec<usize>, i: usize) -> usize {
            if comp[i] != i {
                let r = find(comp, comp[i]);
                comp[i] = r;
            }
            comp[i]
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let edge = AtomSet::singleton(vs[i]).insert(vs[j]);
                if faces.contains(&edge) {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a] = b;
                }
            }
        }
        let root = find(&mut comp, 0);
        Ok((0..vs.len()).all(|i| find(&mut comp, i) == root))
    }
}
