//! Incompressible surfaces and ideal points of hyperbolic once-punctured-torus bundles.
//!
//! Starting from a monodromy word in the generators `L`, `R`, this crate
//!
//! * builds the Farey strip of the monodromy and enumerates the minimal
//!   invariant edge paths indexing the non-fiber incompressible surfaces,
//! * constructs the canonical layered triangulation, its gluing equations and
//!   the induced triangulation of the cusp torus,
//! * translates each edge path into twisted-square degeneration data
//!   (per-tetrahedron rates and collapse directions), adds sphere components
//!   until the non-unique minimum rate condition holds,
//! * builds the leading-order ("bar") equation system at the candidate ideal
//!   point and solves it in closed form, normalised by the semi-meridian
//!   holonomy,
//! * and certifies the ideal point numerically by Newton continuation of the
//!   honest gluing equations for a decreasing schedule of the blow-up
//!   parameter, fitting the observed degeneration rates.
//!
//! Numeric kernels are generic over the scalar via [`scalar::Real`]; the
//! pipeline types at the crate root fix `f64`.

pub mod continuation;
pub mod cusp;
pub mod error;
pub mod paths;
pub mod pipeline;
pub mod profile;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod strip;
pub mod svg;
pub mod tilde;
pub mod triangulation;
pub mod word;

pub use error::Error;
pub use scalar::{C64, R64};

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
