//! Construction, coloring and certification tools for packing chromatic
//! numbers of path-aligned graph products, coronas and caterpillars, plus an
//! ILP model exporter for instances beyond desk scale.

pub mod caterpillar;
pub mod constructions;
pub mod graph;
pub mod ilp;
pub mod io;
pub mod packing;
pub mod patterns;
pub mod tables;

pub use constructions::{
    caterpillar, complete_overlap_transform, corona, cycle_overlap_transform,
    path_aligned_product, tree_to_caterpillar_spec, BaseKind, CaterpillarSpec, ConstructionError,
    IsoWitness, ProductSpec,
};

pub use graph::{
    all_pairs_distances, build_complete, build_cycle, build_path, DistanceMatrix, Graph,
    GraphError,
};
pub use packing::{
    brute_force_chi_p, exact_chi_p, greedy_coloring, is_valid, lower_bound, validate,
    PackingColoring, PackingError, SolveOptions, SolveOutcome, SolveResult, Violation,
};
