//! Extrinsic geometry of Lagrangian surfaces in the complex space forms
//! C², CP² and CH².
//!
//! Surfaces in the curved models are handled through horizontal lifts into
//! S⁵ and the anti-de Sitter space H⁵₁; all derivatives come from exact
//! second-order jets over a two-parameter chart. On top of that the crate
//! computes the ellipse of curvature, the circularity defect, the cubic and
//! linear form densities, the radius function, intrinsic and extrinsic
//! Gauss curvature, and Willmore-type integrals, and audits the identities
//! that tie them together.

pub mod ambient;
pub mod atlas;
pub mod catalog;
pub mod error;
pub mod geom;
pub mod global;
pub mod numerics;
pub mod verify;

pub use ambient::{AmbientSpace, Model};
pub use atlas::{Chart, ChartPoint, Domain, QuadratureRule};
pub use catalog::SurfaceSpec;
pub use error::{Error, Result};
pub use geom::{point_geometry, PointGeometry};
