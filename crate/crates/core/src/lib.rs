//! Exact toric geometry for checking whether the line bundles produced by the
//! Hanlon–Hicks–Lazarev resolution of the diagonal form a full strong
//! exceptional collection.
//!
//! The pipeline for one variety:
//!
//! 1. [`fan::Fan`] and its class map [`fan::DivisorClassMap`].
//! 2. [`resolution::enumerate_cells`] builds the quotient of the periodic
//!    arrangement `{⟨m, u_ρ⟩ ∈ Z}` by `M`, whose cell labels give the
//!    collection.
//! 3. [`cohomology::CohomologyEngine`] evaluates every `Hom^•(E_i, E_j)`.
//! 4. [`exceptional::certify`] orders the collection or returns a cycle.

pub mod cancel;
pub mod cohomology;
pub mod error;
pub mod exceptional;
pub mod fan;
pub mod lattice;
pub mod resolution;

pub use cancel::Budget;
pub use cohomology::{CohomologyEngine, CohomologyRanks, SimplicialModel, TorusDivisor};
pub use error::{CheckError, CohomologyError, FanError, LatticeError, ResolutionError};
pub use exceptional::{certify, GradedHom, HomDigraph, Verdict};
pub use fan::{CanonicalFan, DivisorClassMap, Fan, Provenance, VarietyRecord, Wall};
pub use lattice::{IntMatrix, RationalPolyhedron, SmithDecomposition};
pub use resolution::{BTCollection, LabelConvention, PeriodicArrangement, QuotientCell};

/// Bumped whenever a change can alter a computed verdict; cached survey
/// records from other versions are ignored.
pub const ENGINE_VERSION: &str = "1";
