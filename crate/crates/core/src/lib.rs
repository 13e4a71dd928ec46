//! Exact arithmetic for Laurent polynomial algebras over Q: classification
//! of locally finite derivations and E-derivations (maps `I - phi`), exact
//! deciders for membership in `im D` and `im(I - phi)` with witnesses, and a
//! Mathieu-subspace test harness built on Newton polytope origin tests.
//!
//! All computation is exact: rational coefficients, integer lattice normal
//! forms, and rational linear programming. Batch operations run on rayon
//! when the `parallel` feature (default) is enabled and produce output
//! identical to the sequential fallback.

pub mod error;
pub mod exec;
pub mod intlat;
pub mod laurent;
pub mod maps;
pub mod parser;
pub mod rat;
pub mod relations;

pub use error::{Error, Result};
pub use laurent::{Exponent, LaurentPoly};
pub use rat::Rat;
