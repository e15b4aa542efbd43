//! Levenshtein graphs `L_{k1,k2;a}`: all strings of lengths `k1..=k2` over
//! an `a`-symbol alphabet, joined when their edit distance is one.
//!
//! * [`strings`]: symbol strings, counts, runs, literals.
//! * [`distance`]: edit-distance kernels, including the linear-time kernel
//!   for targets with at most two runs.
//! * [`graph`]: graph construction, BFS and closed-form geodesics.
//! * [`resolving`]: explicit resolving sets and string embeddings.
//! * [`symmetry`]: automorphisms and determining sets.
//! * [`verify`]: oracle cross-checks used by the CLI.

#![forbid(unsafe_code)]

pub mod distance;
pub mod error;
pub mod graph;
pub mod resolving;
pub mod strings;
pub mod symmetry;
pub mod verify;

pub use distance::{
    dist_one_run, dist_to_run_pattern, dist_two_run_linear, dist_two_run_minform,
    edit_distance_banded, edit_distance_dp, hamming_distance, RunShape, TwoRunPattern,
};
pub use error::{Error, Result};
pub use graph::{degree_formula, DegreeSplit, GeodesicRegime, GraphSpec, LevGraph};
pub use resolving::{
    build_resolving_set, build_rka, check_dimension_bounds, embed, exact_metric_dimension,
    is_resolving, shift_chars, EmbeddingVector, Provenance, Resolution, ResolvingSet,
};
pub use strings::{Alphabet, LevString, Symbol};
pub use symmetry::{
    apply_automorphism, build_determining_set, construct_theorem_group, enumerate_automorphisms,
    exact_determining_number, is_determining, match_groups, Automorphism, DeterminingSet,
    StructuralAutomorphism, VertexPermutation,
};
