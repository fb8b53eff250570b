//! Exact quantum cluster algebra engine.

pub mod charcalc;
pub mod coulomb;
pub mod error;
pub mod graph;
pub mod intlin;
pub mod pairs;
pub mod qtorus;
pub mod scalar;
pub mod seed;

pub use coulomb::{SimpleClassRegistry, SimpleLabel, Suite, SuiteReport};
pub use error::{CharError, CoulombError, GraphError, PairsError, SeedError, TorusError};
pub use qtorus::{Exponent, LaurentPolynomial, SkewForm, TorusElement};
pub use scalar::QuantumScalar;
pub use seed::{
    build_quiver_gln, canonical_form, canonicalize, complete_lambda, CanonicalKey, CompatibilityReport,
    ExchangeMatrix, QuantumSeed, SeedFile,
};
pub use graph::{explore, ExchangeGraph};
