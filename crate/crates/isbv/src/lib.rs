//! Exact verification engine for the local models of involution surface
//! bundles.
//!
//! The crate ships a registry of explicit local models of quadric surface
//! bundle degenerations (pairs of degeneration types meeting over the origin
//! of an affine plane base) together with machine-checkable claim records:
//! defining relations vanishing on parametrizations, relation-space
//! dimensions, module freeness over polynomial subrings, fiberwise Hilbert
//! functions (flatness), singular-locus location and local type, and exact
//! polynomial identities between maps to projective space.
//!
//! Every certificate is exact: arbitrary-precision rational arithmetic,
//! Groebner bases with explicit reduction budgets, fraction-free linear
//! algebra, and exhaustive finite-field point enumeration as an independent
//! oracle.
//!
//! The main entry points are [`models::builtin_models`] for the registry and
//! [`verify`] for the check suite; the `isbv` binary and the `examples/`
//! directory drive both.

pub mod cli;
pub mod coeff;
pub mod error;
pub mod ffenum;
pub mod groebner;
pub mod linalg;
pub mod models;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod polymap;
pub mod vars;
pub mod verify;

pub use coeff::{Coefficient, Domain};
pub use error::{AlgebraError, GroebnerError, ModelError};
pub use monomial::Monomial;
pub use order::{MonomialOrder, SimpleOrder};
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use polymap::PolyMap;
pub use vars::{Block, BlockKind, VariableSet};
