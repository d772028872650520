//! Perfect codes in the maximum metric on the q-ary torus Z_q^n.
//!
//! A code is perfect for radius e when the closed balls of radius e around
//! its words tile the torus; equivalently the words are the centers of a
//! tiling by cubes of side 2e+1. This crate implements the metric and
//! perfection checks, the classical constructions (cartesian, the 2D linear
//! family, products, linear and nonlinear extensions, sections, the cyclic
//! family), the classification machinery for linear codes (associated
//! permutations, generator-matrix normal forms, enumeration of ordered
//! codes, admissible group structures, counting), and a brute-force tiling
//! census usable as an oracle for everything else.
//!
//! All linear algebra is exact (arbitrary-precision integers); every
//! enumeration is deterministic.

pub use num_bigint;

pub mod arith;
pub mod classify;
pub mod code;
pub mod construct;
pub mod error;
pub mod isometry;
pub mod json;
pub mod matrix;
pub mod oracle;

pub use classify::{
    admissible_structures, associated_permutation, count_all_2d, count_isomorphism_classes_maximal,
    enumerate_2d, enumerate_ordered_maximal, existence, is_maximal, is_perfect_matrix,
    ordering_permutation, perfect_generator_matrix, structure_2d, AdmissibleReport, ExistenceReport,
    GammaClass, IsomorphismClass2D, MatrixPerfection, OrderedMaximalReport, PermutationRecord,
    TwoDimCode, TwoDimReport,
};
pub use code::{
    chebyshev_distance, circ_abs, word_norm, AbelianType, Code, LinearCode, Params, Perfection, Word,
};
pub use construct::{
    cartesian_code, cartesian_product, cartesian_product_linear, cyclic_family, horizontal_code,
    lc_alternative_generator, lc_code, linear_construction, nonlinear_construction, section,
    section_linear, t_inverse, vertical_code, Section,
};
pub use error::{Error, Result};
pub use isometry::{all_isometries, apply_isometry, apply_isometry_linear, isometry_orbit, Isometry};
pub use matrix::{
    bidiagonal_reduction, gamma_equivalent, hnf, invariant_chain, q_inverse, snf, solve_left_upper,
    HnfResult, IntMatrix, SnfResult,
};
pub use oracle::oracle_all_perfect;
