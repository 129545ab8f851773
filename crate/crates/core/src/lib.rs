//! Twisted first homology H₁(G; H₁(N; ℤ)) of mapping class groups of
//! nonorientable surfaces with boundary and punctures.
//!
//! The pipeline: [`surface`] builds the integral representation ψ,
//! [`chains`] rewrites group relations into 1-chains through the Fox
//! derivative, [`catalog`] lists the relations, [`engine`] forms and reduces
//! the quotient, and [`certify`] produces the ℤ₂-valued lower bound and the
//! closed-form oracle.

pub mod catalog;
pub mod certify;
pub mod chains;
pub mod engine;
pub mod intlin;
pub mod surface;

pub use catalog::{build_catalog, Catalog, RelationBody, RelationEntry};
pub use certify::{lower_bound, oracle, oracle_exponent};
pub use chains::{boundary1, rewrite_relation, ChainVector};
pub use engine::{compute_h1, express_class, EngineError, EngineOptions, H1Result};
pub use intlin::{AbelianInvariants, IntMatrix};
pub use surface::{Flavor, Generator, GeneratorKind, Representation, SurfaceSpec, Word};
