//! Exhaustive and sampled sweeps over the named constructions: tree
//! coordinatizations against tree ideals, nearly Scarf against the face
//! poset, and the squarefree facet-ideal equality with its resolution
//! support on simplicial trees.

use itertools::Itertools;
use lcmlat::atoms::AtomSet;
use lcmlat::betti::{supports_resolution, ResolutionVerdict};
use lcmlat::complex::SimplicialComplex;
use lcmlat::constructions::{
    augmented_face_poset, faridi_ideal, faridi_labeling, floystad_coordinatization,
    floystad_tree_ideal, meet_irreducible_subtrees, nearly_scarf, Tree,
};
use lcmlat::coordinatize::{generate_ideal, is_coordinatization};
use lcmlat::homology::FieldSpec;
use lcmlat::lcm_lattice::lcm_lattice;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn all_trees(v: usize) -> Vec<Tree> {
    if v == 2 {
        return vec![Tree::from_pruefer(2, &[]).unwrap()];
    }
    (0..v - 2)
        .map(|_| 1..=v)
        .multi_cartesian_product()
        .map(|seq| Tree::from_pruefer(v, &seq).unwrap())
        .collect()
}

/// Every complex on exactly `v` vertices with no uncovered vertex, as a
/// facet antichain.
fn all_complexes(v: usize) -> Vec<SimplicialComplex> {
    let labels: Vec<String> = (1..=v).map(|i| i.to_string()).collect();
    let pool: Vec<AtomSet> = AtomSet::full(v)
        .subsets()
        .filter(|s| !s.is_empty())
        .collect();
    let mut out = Vec::new();
    for pick in 1u32..1 << pool.len() {
        let facets: Vec<AtomSet> = pool
            .iter()
            .enumerate()
            .filter(|&(i, _)| pick >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let union = facets.iter().fold(AtomSet::EMPTY, |a, &b| a.union(b));
        if union != AtomSet::full(v) {
            continue;
        }
        let antichain = facets
            .iter()
            .enumerate()
            .all(|(i, f)| facets.iter().enumerate().all(|(j, g)| i == j || !f.is_subset_of(*g)));
        if !antichain {
            continue;
        }
        out.push(SimplicialComplex::from_facets(labels.clone(), facets));
    }
    out
}

fn complex(v: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(
        (1..=v).map(|i| i.to_string()).collect(),
        facets.iter().map(|f| f.iter().copied().collect()).collect(),
    )
}

fn assert_tree_theorem(tree: &Tree) {
    let (lattice, labeling) = floystad_coordinatization(tree).unwrap();
    let generated = generate_ideal(&lattice, &labeling);
    let direct = floystad_tree_ideal(tree);
    assert_eq!(
        generated.generators,
        direct.generators,
        "tree {:?}",
        tree.edges()
    );
    assert_eq!(generated.variables.names(), direct.variables.names());

    // The labels sit exactly on the 2(V−1) deletion components, and those
    // are the proper meet-irreducibles of the subtree lattice.
    let mut tagged: Vec<usize> = meet_irreducible_subtrees(tree)
        .unwrap()
        .iter()
        .map(|t| t.element)
        .collect();
    tagged.sort_unstable();
    assert_eq!(labeling.support(), tagged, "tree {:?}", tree.edges());

    let verdict = is_coordinatization(&lattice, &labeling);
    assert!(verdict.is_coordinatization, "tree {:?}", tree.edges());
    assert_eq!(verdict.lcm_lattice_matches, Some(true));
}

#[test]
fn tree_coordinatizations_reproduce_tree_ideals_up_to_five_vertices() {
    let mut seen = 0usize;
    for v in 2..=5 {
        for tree in all_trees(v) {
            assert_tree_theorem(&tree);
            seen += 1;
        }
    }
    assert_eq!(seen, 1 + 3 + 16 + 125);
}

#[test]
fn tree_coordinatizations_on_sampled_six_vertex_trees() {
    let trees = all_trees(6);
    assert_eq!(trees.len(), 1296);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee6);
    for i in rand::seq::index::sample(&mut rng, trees.len(), 200) {
        assert_tree_theorem(&trees[i]);
    }
}

#[test]
fn nearly_scarf_reproduces_the_face_poset() {
    let expected_corpus = [2, 9, 114];
    for v in 2..=4 {
        let corpus = all_complexes(v);
        assert_eq!(corpus.len(), expected_corpus[v - 2]);
        for delta in corpus {
            if delta.is_simplex() {
                assert!(nearly_scarf(&delta, false).is_err());
                continue;
            }
            let face_poset = augmented_face_poset(&delta).unwrap();
            for include_empty in [false, true] {
                let (lattice, labeling, ideal) = nearly_scarf(&delta, include_empty).unwrap();
                assert!(lattice.is_isomorphic_atomfixed(&face_poset).unwrap());
                assert_eq!(generate_ideal(&lattice, &labeling).generators, ideal.generators);

                let lcm = lcm_lattice(&ideal).unwrap();
                assert!(
                    lcm.lattice.is_isomorphic_atomfixed(&face_poset).unwrap(),
                    "facets {:?}, empty face {include_empty}",
                    delta.facets()
                );

                let verdict = is_coordinatization(&lattice, &labeling);
                assert!(verdict.is_coordinatization);
                assert_eq!(verdict.lcm_lattice_matches, Some(true));
            }
        }
    }
}

#[test]
fn nearly_scarf_path_generators() {
    let path = complex(3, &[&[0, 1], &[1, 2]]);
    let (_, _, ideal) = nearly_scarf(&path, false).unwrap();
    assert_eq!(ideal.display_generators(), vec!["x2x3x23", "x1x3", "x1x2x12"]);

    let two_points = complex(2, &[&[0], &[1]]);
    let (_, _, ideal) = nearly_scarf(&two_points, false).unwrap();
    assert_eq!(ideal.display_generators(), vec!["x2", "x1"]);
}

#[test]
fn faridi_equality_on_all_small_complexes() {
    for v in 2..=4 {
        for delta in all_complexes(v) {
            let (lattice, labeling) = faridi_labeling(&delta).unwrap();
            let generated = generate_ideal(&lattice, &labeling);
            let direct = faridi_ideal(&delta).unwrap();
            assert_eq!(
                generated.generators,
                direct.generators,
                "facets {:?}",
                delta.facets()
            );

            let verdict = is_coordinatization(&lattice, &labeling);
            assert!(verdict.is_coordinatization, "facets {:?}", delta.facets());
            assert_eq!(verdict.lcm_lattice_matches, Some(true));
        }
    }
}

#[test]
fn faridi_hand_examples() {
    // Two triangles sharing the edge {2,3}: the generator at vertex 1
    // collects the opposite edge of its own facet plus the far facet with
    // all of its boundary edges, squarefree.
    let shared = complex(4, &[&[0, 1, 2], &[1, 2, 3]]);
    let ideal = faridi_ideal(&shared).unwrap();
    assert_eq!(ideal.display_generators()[0], "x23x24x34x234");

    // A lone triangle is a simplex: only the opposite-edge variables occur.
    let triangle = complex(3, &[&[0, 1, 2]]);
    let ideal = faridi_ideal(&triangle).unwrap();
    assert_eq!(ideal.display_generators(), vec!["x23", "x13", "x12"]);
}

#[test]
fn faridi_resolutions_live_on_simplicial_trees() {
    let corpus: Vec<(&str, SimplicialComplex)> = vec![
        ("path on four vertices", complex(4, &[&[0, 1], &[1, 2], &[2, 3]])),
        ("star on four vertices", complex(4, &[&[0, 1], &[0, 2], &[0, 3]])),
        ("single triangle", complex(3, &[&[0, 1, 2]])),
        ("triangles sharing an edge", complex(4, &[&[0, 1, 2], &[1, 2, 3]])),
        ("triangle with a pendant edge", complex(4, &[&[0, 1, 2], &[2, 3]])),
        ("triangles sharing a vertex", complex(5, &[&[0, 1, 2], &[2, 3, 4]])),
        ("path on five vertices", complex(5, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4]])),
    ];
    assert!(corpus.len() >= 5);
    for (name, delta) in &corpus {
        let ideal = faridi_ideal(delta).unwrap();
        let report = supports_resolution(delta, &ideal, FieldSpec::Rationals).unwrap();
        assert_eq!(
            report.verdict,
            ResolutionVerdict::SupportsMinimally,
            "{name}: faces {:?} vs betti {:?} (failing at {:?})",
            report.face_vector,
            report.betti_totals,
            report.failing
        );
    }
}
