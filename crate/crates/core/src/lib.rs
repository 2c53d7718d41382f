//! Exact arithmetic for N-qutrit Pauli groups: maximally commuting subsets
//! (MCS's), partitions of the group into disjoint MCS's, their
//! factor-group structure, and the mutually unbiased bases they define.
//!
//! All amplitudes live in Q(ω), ω = e^{2πi/3}, with rational coefficients;
//! nothing is computed in floating point.

pub mod check;
pub mod cover;
pub mod cyclotomic;
pub mod error;
pub mod export;
pub mod factor_group;
pub mod mcs;
pub mod mub;
pub mod partition;
pub mod pauli;
pub mod states;
pub mod suite;
pub mod tomography;
pub mod trit;

pub use check::CheckReport;
pub use cyclotomic::{CycMatrix, CycNum, Rational};
pub use error::{Error, Result};
pub use factor_group::{Coset, FactorReport};
pub use mcs::{enumerate_all_mcs, EntanglementClass, Mcs, McsCatalog};
pub use mub::BasisSet;
pub use partition::{Partition, StructureCounts, WitnessOptions, WitnessSearch};
pub use pauli::PauliOp;
pub use states::Expansion;
pub use tomography::{DensityMatrix, Mubs, ProbTable};
pub use trit::{Trit, TritVec};
