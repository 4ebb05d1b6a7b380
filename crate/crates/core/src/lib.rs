//! Hochschild cohomology `HH^1` of twisted group algebras `k_αG` of finite
//! groups, computed through the twisted centraliser decomposition and
//! checked against a derivation-space computation.

pub mod algebra;
pub mod arith;
pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod extension;
pub mod field;
pub mod group;
pub mod nonschur;
pub mod report;
pub mod selftest;

pub use algebra::{TwistedAlgebra, DEFAULT_ORACLE_CAP};
pub use catalog::{resolve, Resolved};
pub use decomposition::{
    all_twists, class_contribution, hh0_dim, hh1_dim, CheckFlags, ClassContribution, Decomposer, HH1Report,
    TwistSummary,
};
pub use error::{Error, Result};
pub use extension::{CentralExtension, SectionChoice, TwistIndex};
pub use field::{fixed_space_dim, FieldSpec, Fq, FqMatrix, RowReducer};
pub use group::{ConjugacyClass, FiniteGroup, Subgroup};
pub use nonschur::{certify_nonvanishing, Witness, WitnessKind};
pub use report::{compute, ComputeReport, ComputeRequest, OracleStatus};
pub use selftest::{run_selftest, Fault, SelftestOptions, SelftestReport};
