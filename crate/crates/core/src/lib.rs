//! Finite atomic lattices and the monomial ideals that realize them.
//!
//! The library represents a finite atomic lattice by the family of atom
//! supports of its elements — an intersection-closed family of subsets of
//! [n] — and builds everything else on that encoding: lcm lattices of
//! monomial ideals, labelings and their generated ideals, the induced
//! (deficit) labeling used to verify coordinatizations, the classical
//! constructions (nearly Scarf, minimal squarefree, facet ideals, tree
//! ideals), exact graded Betti numbers via crosscut homology, support
//! checks for cellular resolutions, and the stratification of the universe
//! L(n) by total Betti numbers.

pub mod atoms;
pub mod betti;
pub mod complex;
pub mod constructions;
pub mod coordinatize;
pub mod dot;
pub mod error;
pub mod families;
pub mod homology;
pub mod json;
pub mod lattice;
pub mod lcm_lattice;
pub mod monomial;
pub mod strata;

pub use atoms::AtomSet;
pub use betti::{graded_betti, supports_resolution, BettiTable, ResolutionReport, ResolutionVerdict};
pub use complex::SimplicialComplex;
pub use constructions::{
    faridi_ideal, faridi_labeling, floystad_coordinatization, floystad_tree_ideal,
    minimal_squarefree, nearly_scarf, subtree_lattice, Tree,
};
pub use coordinatize::{
    deficit_labeling, generate_ideal, induced_labeling, is_coordinatization, x_strata,
    CoordinatizationVerdict, Labeling, XStrata,
};
pub use error::{Error, Result};
pub use families::{check_cmstar_conditions, FamilyChecksReport, SupportFamily};
pub use homology::{is_acyclic, reduced_homology, FieldSpec, ReducedHomology};
pub use lattice::{ElementId, FiniteAtomicLattice};
pub use lcm_lattice::{lcm_lattice, LcmLattice};
pub use monomial::{Monomial, MonomialIdeal, VarId, VariableTable};
pub use strata::{
    betti_strata, check_tree_proposition, enumerate_l, enumerate_l_with_workers, LnUniverse,
    StratumReport, TreePropositionReport,
};
