//! Infinitesimal automorphisms of quadric models and jet determination.

pub mod direct;
pub mod general;
pub mod identity;
pub mod maps;
pub mod solve;

pub use direct::{assemble_system_direct, Block, DirectSystem, PdSystem, UnknownLayout, UnknownVector};
pub use general::{assemble_system_general, GeneralSystem, GeneralUnknown};
pub use identity::{delta, expand_basic_identity, extract_bidegree, solves_basic_identity};
pub use maps::{decompose_weighted, HolMapPair, WeightedComponent};
pub use solve::{
    char_variety_test, degree_bounds, is_polynomial_automorphism, jet_determination_check, nonzero_probes,
    solve_jet_system, stabilization, truncation_report, two_jet_injective, two_jet_kernel_dimension, BlockDegrees,
    DegreeBoundReport, Route, SolutionSpace, TruncationReport,
};
