//! Exact singularity and nullity of Cayley graphs over `C_n` and `D_n`.
//!
//! The cyclotomic method decides nullity from which cyclotomic polynomials
//! `Φ_d`, `d | n`, divide a handful of 0/±1 polynomials built from the
//! connecting set. Every such answer can be audited against [`oracle`],
//! which computes rank exactly by fraction-free elimination.
//!
//! ```
//! use dihedral_nullity::{audit_instance, ConnectingSet, Mode};
//!
//! // Cay(D_4, {a, a^3, b}) is the 3-cube.
//! let cs = ConnectingSet::new(4, [1, 3], [0]).unwrap();
//! let record = audit_instance(&cs, Mode::Dihedral, true).unwrap();
//! assert_eq!(record.paper.total, 0);
//! assert_eq!(record.oracle.nullity, 0);
//! ```

pub mod arith;
pub mod audit;
pub mod census;
pub mod circulant;
pub mod error;
pub mod export;
pub mod group;
pub mod matrix;
pub mod method;
pub mod nullity;
pub mod oracle;
pub mod poly;

pub use audit::{audit_instance, deep_check, null_vector_check, Agreement, AuditRecord, InstanceChecks};
pub use census::{run_census, CensusFilter, CensusOutcome, CensusSpec, CensusSummary, Sampling};
pub use circulant::CirculantMatrix;
pub use error::{AxiomViolation, Error, Result};
pub use group::{build_block_adjacency, BlockAdjacency, ConnectingSet, GroupElement, Mode};
pub use matrix::{IntMatrix, RealMatrix};
pub use method::{
    build_deltas, dispatch_transitive_case, p_power_criterion, paper_nullity_cyclic,
    paper_nullity_dihedral, spectrum_split_check, split_blocks, DeltaPair, TransitiveCase,
};
pub use nullity::{Contribution, NullityReport, Source};
pub use oracle::{exact_nullity, symmetric_eigenvalues, OracleReport};
pub use poly::{cyclotomic, divides, IntPolynomial};
