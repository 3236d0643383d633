//! Exact decomposition of tensor powers of the B2 fundamental modules.
//!
//! Multiplicities are computed four ways (weight-diagram extraction, the
//! antisymmetric recurrence, iterated single tensor steps and the injection
//! fan recursion) and compared against closed-form families.

pub mod binomial;
pub mod cache;
pub mod closed_forms;
pub mod engine;
pub mod error;
pub mod fan;
pub mod formal;
pub mod io;
pub mod lattice;
pub mod poly;
pub mod verify;

pub use closed_forms::{ClosedFormFamily, CoordinateMap, FormulaVariant};
pub use engine::{DecompositionResult, MultiplicityFunction, MultiplicityTower, Window};
pub use error::{Error, Result};
pub use fan::{Fan, OriginConvention, SingularPowerElement};
pub use formal::LatticeSeries;
pub use lattice::{Fundamental, HalfInt, Sign, Weight, WeylElement};
pub use verify::{CheckStatus, Suite, VerificationReport};
