//! Decision and construction machinery for cone-angle vectors of spherical
//! metrics on the 2-sphere.
//!
//! The crate is organized around five pieces:
//!
//! * [`angles`] — angle/defect vectors, the positivity and holonomy
//!   constraint families, and the closed-form ℓ1 distance to the odd
//!   integer lattice;
//! * [`cubes`] — truncated unit cubes (the local shape of the holonomy
//!   region), radial boundary projection, simplicial classification,
//!   coverage tables and interior connectivity paths;
//! * [`merging`] — algebraic merging operations that reduce an admissible
//!   defect vector one dimension at a time down to the base cases;
//! * [`holonomy`] — numerical realization of admissible angles as closed
//!   broken geodesics on the 3-sphere and the induced SU(2) matrix sets;
//! * [`planner`] — symbolic construction plans assembling triangles,
//!   bigons, quadrilaterals, covers and surgeries into a validated recipe
//!   for a metric with the requested angles.

pub mod angles;
pub mod cubes;
pub mod holonomy;
pub mod merging;
pub mod perm;
pub mod planner;
pub mod scalar;

pub use angles::{
    classify, d1_odd_lattice, d1_parity_min, polygon_feasible, reduce, AdmissibilityReport,
    AdmissibilityStatus, AngleUnit, AngleVector, DefectVector,
};
pub use scalar::{Scalar, DEFAULT_TOLERANCE};
