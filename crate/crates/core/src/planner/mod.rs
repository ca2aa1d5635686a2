//! Symbolic construction plans for spherical metrics with prescribed cone
//! angles.
//!
//! A plan is a tree of construction steps — triangles, bigons, the
//! quadrilateral catalog, branched covers, slit gluings and cone-point
//! splits — whose exact angle and area bookkeeping reproduces the target
//! angle vector and the Gauss–Bonnet area identity. Free small parameters
//! of the constructions (deformation fees, width budgets, path lengths)
//! stay formal symbols with attached inequality constraints; a valid plan
//! cancels them in the final comparison.

mod catalog;
mod node;
mod quad;
mod sphere;
mod sym;
mod triangle;
mod validate;

pub use catalog::{families, routes_for_cube, CatalogFamily, VertexRoute};
pub use node::{Constraint, NonCoaxiality, PlanKind, PlanNode, PlanUnit};
pub use quad::plan_quadrilateral;
pub use sphere::{plan_sphere4, plan_sphere_n};
pub use sym::{sym_sum, Rat, Sym};
pub use triangle::{gamma3_decompose, plan_triangle};
pub use validate::{validate_plan, ValidationReport};

use crate::angles::AdmissibilityStatus;
use crate::scalar::Scalar;
use std::cmp::Ordering;

#[derive(Debug, thiserror::Error)]
pub enum PlanError {
    #[error("input is not strictly admissible ({0:?})")]
    NotStrict(AdmissibilityStatus),
    #[error("input contains a non-finite float")]
    NonFinite,
    #[error("coordinate {index} is integral where a non-integral value is required")]
    IntegralCoordinate { index: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("angles lie outside the quadrilateral catalog cubes")]
    QuadOutOfRange,
    #[error("angles are not coverable by a quadrilateral double: {detail}")]
    NotQuadCoverable { detail: String },
    #[error("internal planner invariant failed: {0}")]
    Internal(String),
    #[error("plan validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Merge(#[from] crate::merging::MergeError),
    #[error(transparent)]
    Angle(#[from] crate::angles::AngleError),
}

/// Fresh-symbol supply for one planning run.
#[derive(Default)]
pub(crate) struct SymCtx {
    counter: u32,
}

impl SymCtx {
    pub fn fresh(&mut self, prefix: &str) -> String {
        self.counter += 1;
        format!("{prefix}{}", self.counter)
    }
}

/// Convert scalars to exact rationals (floats convert losslessly).
pub(crate) fn to_rats(entries: &[Scalar]) -> Result<Vec<Rat>, PlanError> {
    entries
        .iter()
        .map(|e| e.to_exact().map(Rat).ok_or(PlanError::NonFinite))
        .collect()
}

pub(crate) fn rat_scalar(r: &Rat) -> Scalar {
    Scalar::Exact(r.0.clone())
}

/// ℓ1 distance from a rational vector to the odd lattice.
pub(crate) fn d1_odd_rat(v: &[Rat]) -> Rat {
    let dv = crate::angles::DefectVector::new(v.iter().map(rat_scalar).collect());
    let (d, _) = crate::angles::d1_odd_lattice(&dv).expect("non-empty");
    match d {
        Scalar::Exact(r) => Rat(r),
        Scalar::Approx(_) => unreachable!("exact input"),
    }
}

/// Strict admissibility (positivity and strict holonomy) for a rational
/// angle vector.
pub(crate) fn strict_admissible(theta: &[Rat]) -> Result<(), PlanError> {
    if theta.iter().any(|t| !t.is_positive()) {
        return Err(PlanError::NotStrict(AdmissibilityStatus::PositivityViolated));
    }
    let sum = theta.iter().fold(Rat::int(0), |acc, t| &acc + t);
    let n = theta.len() as i64;
    if (&sum - &Rat::int(n - 2)).cmp(&Rat::int(0)) != Ordering::Greater {
        return Err(PlanError::NotStrict(AdmissibilityStatus::PositivityViolated));
    }
    let defects: Vec<Rat> = theta.iter().map(|t| t - &Rat::int(1)).collect();
    let d = d1_odd_rat(&defects);
    match d.cmp(&Rat::int(1)) {
        Ordering::Greater => Ok(()),
        Ordering::Equal => Err(PlanError::NotStrict(AdmissibilityStatus::HolonomyBoundary)),
        Ordering::Less => Err(PlanError::NotStrict(AdmissibilityStatus::HolonomyViolated)),
    }
}
