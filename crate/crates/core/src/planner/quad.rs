//! Quadrilateral plans: convex bases in the half truncated cube at the
//! all-ones vertex, the ten catalog families covering the three larger
//! cubes, and the center quadrilateral glued from two right-angle bigons.

use crate::perm::Perm;
use crate::planner::catalog::routes_for_cube;
use crate::planner::node::{Constraint, PlanKind, PlanNode, PlanUnit};
use crate::planner::sym::{sym_sum, Rat, Sym};
use crate::planner::{d1_odd_rat, PlanError, SymCtx};
use std::cmp::Ordering;

fn syms(v: &[Rat]) -> Vec<Sym> {
    v.iter().map(|r| Sym::rat(r.clone())).collect()
}

fn d1_to_integer_point(v: &[Rat], m: &[i64]) -> Rat {
    v.iter().zip(m).fold(Rat::int(0), |acc, (x, &p)| {
        let d = x - &Rat::int(p);
        let d = if num_traits::Signed::is_negative(&d.0) { -&d } else { d };
        &acc + &d
    })
}

/// Convex quadrilateral node for angles interior to the half truncated
/// cube at the all-ones vertex.
fn convex_quad(v: &[Rat]) -> Result<PlanNode, PlanError> {
    let one = Rat::int(1);
    for (index, t) in v.iter().enumerate() {
        if !t.is_positive() || t.cmp(&one) != Ordering::Less {
            return Err(PlanError::Internal(format!(
                "convex quad angle {index} = {t} outside (0,1)"
            )));
        }
    }
    if d1_to_integer_point(v, &[1, 1, 1, 1]).cmp(&Rat::int(2)) != Ordering::Less {
        return Err(PlanError::Internal("convex quad base outside the half cube".into()));
    }
    if d1_odd_rat(v).cmp(&Rat::int(1)) != Ordering::Greater {
        return Err(PlanError::Internal("convex quad base not strictly holonomy-feasible".into()));
    }
    let angles = syms(v);
    let area = &sym_sum(&angles) - &Sym::int(2);
    Ok(PlanNode::leaf(PlanKind::ConvexQuad, PlanUnit::Pi, angles, area))
}

/// The quadrilateral with cyclic angles π(3/2, 1/2, 3/2, 1/2): two
/// right-angle bigons sharing a seam of free length.
fn center_quad(ctx: &mut SymCtx) -> PlanNode {
    let bigon = || {
        let alpha = Rat::ratio(1, 2);
        PlanNode::leaf(
            PlanKind::OrdinaryBigon { alpha: alpha.clone() },
            PlanUnit::Pi,
            vec![Sym::ratio(1, 2), Sym::ratio(1, 2)],
            Sym::int(1),
        )
    };
    let seam = ctx.fresh("r");
    let angles = vec![Sym::ratio(3, 2), Sym::ratio(1, 2), Sym::ratio(3, 2), Sym::ratio(1, 2)];
    PlanNode {
        kind: PlanKind::CenterQuad { seam: seam.clone() },
        unit: PlanUnit::Pi,
        angle_out: angles,
        area_out: Sym::int(2),
        constraints: vec![Constraint::LengthRange {
            symbol: seam,
            lo: Rat::int(0),
            hi: Rat::int(1),
        }],
        noncoaxiality: None,
        children: vec![bigon(), bigon()],
    }
}

/// Sorted-cube region of a descending quadruple, by integer parts.
fn cube_center_halves(sorted: &[Rat]) -> Option<[i64; 4]> {
    let fl: Vec<i64> = sorted.iter().map(Rat::floor_i64).collect();
    match (fl[0], fl[1], fl[2], fl[3]) {
        (0, 0, 0, 0) => Some([1, 1, 1, 1]),
        (1, 0, 0, 0) => Some([3, 1, 1, 1]),
        (1, 1, 0, 0) => Some([3, 3, 1, 1]),
        (2, 0, 0, 0) => Some([5, 1, 1, 1]),
        _ => None,
    }
}

/// Plan a spherical quadrilateral whose angles are a permutation of
/// `pi * theta`, returning the node plus the relabeling with
/// `perm.apply(node.angle_out) == theta`.
///
/// The angles must be non-integral, strictly holonomy-feasible, and
/// interior to one of the catalog cubes (modulo permutation). The two
/// excluded rays surface as [`PlanError::NotQuadCoverable`] so callers can
/// fall through to the sporadic constructions.
pub fn plan_quadrilateral(theta: &[crate::scalar::Scalar]) -> Result<(PlanNode, Perm), PlanError> {
    let t = crate::planner::to_rats(theta)?;
    plan_quadrilateral_inner(&t, &mut SymCtx::default())
}

pub(crate) fn plan_quadrilateral_inner(
    theta: &[Rat],
    ctx: &mut SymCtx,
) -> Result<(PlanNode, Perm), PlanError> {
    if theta.len() != 4 {
        return Err(PlanError::WrongLength { expected: 4, got: theta.len() });
    }
    for (index, t) in theta.iter().enumerate() {
        if t.is_integer() {
            return Err(PlanError::IntegralCoordinate { index });
        }
        if !t.is_positive() {
            return Err(PlanError::QuadOutOfRange);
        }
    }
    // For quadruples the holonomy constraint reads the same in angle and
    // defect coordinates (translating by the all-ones vector preserves the
    // odd lattice in even dimension).
    if d1_odd_rat(theta).cmp(&Rat::int(1)) != Ordering::Greater {
        return Err(PlanError::NotStrict(
            crate::angles::AdmissibilityStatus::HolonomyViolated,
        ));
    }
    let sort = Perm::sorting_desc(theta, |a, b| a.cmp(b));
    let sorted: Vec<Rat> = sort.apply(theta);
    let Some(center) = cube_center_halves(&sorted) else {
        return Err(PlanError::QuadOutOfRange);
    };

    if center == [1, 1, 1, 1] {
        // The half cube at the all-ones vertex is permutation-invariant,
        // so the base holds the target order directly.
        if d1_to_integer_point(theta, &[1, 1, 1, 1]).cmp(&Rat::int(2)) == Ordering::Less {
            return Ok((convex_quad(theta)?, Perm::identity(4)));
        }
        return Err(PlanError::QuadOutOfRange);
    }

    // Coverage scan over the listed even vertices, sorted copy first.
    let routes = routes_for_cube(center);
    for perm in Perm::all(4) {
        let w: Vec<Rat> = perm.apply(&sorted);
        let fits = cube_center_halves(&w)
            .map(|c| c == center)
            .unwrap_or(false);
        if !fits {
            continue;
        }
        for route in &routes {
            if d1_to_integer_point(&w, &route.vertex).cmp(&Rat::int(2)) != Ordering::Less {
                continue;
            }
            // w lies in the half cube of route.vertex; pull back to the
            // family's convex base.
            let w_syms = syms(&w);
            let home = route.relabel.inverse().apply(&w_syms);
            let base_syms = route.family.apply_inverse(&home);
            let base: Vec<Rat> = base_syms
                .iter()
                .map(|s| s.constant_part().clone())
                .collect();
            let quad_base = convex_quad(&base)?;
            let natural = route.family.apply(&quad_base.angle_out);
            // Choose a dihedral relabel making the residual sphere
            // relabeling as small as possible (identity when achievable).
            let total = sort.then(&perm).then(&route.relabel.inverse());
            let mut best: Option<(Perm, Perm)> = None;
            for d8 in Perm::dihedral8() {
                // node angles = d8(natural); residual r with
                // r.apply(node angles) == theta.
                let residual = d8.inverse().then(&total.inverse());
                if best
                    .as_ref()
                    .is_none_or(|(_, r)| residual.0 < r.0)
                {
                    best = Some((d8, residual));
                }
            }
            let (d8, residual) = best.expect("dihedral group non-empty");
            let angle_out = d8.apply(&natural);
            let area = &sym_sum(&angle_out) - &Sym::int(2);
            let node = PlanNode {
                kind: PlanKind::CatalogQuad {
                    family: route.family.index,
                    quad_relabel: d8,
                },
                unit: PlanUnit::Pi,
                angle_out,
                area_out: area,
                constraints: vec![Constraint::Structural {
                    text: format!(
                        "covering vertex ({},{},{},{})",
                        route.vertex[0], route.vertex[1], route.vertex[2], route.vertex[3]
                    ),
                }],
                noncoaxiality: None,
                children: vec![quad_base],
            };
            return Ok((node, residual));
        }
    }

    // Not covered: the excluded families.
    if center == [3, 3, 1, 1] {
        let half = Rat::ratio(1, 2);
        let three_halves = Rat::ratio(3, 2);
        if sorted == [three_halves.clone(), three_halves, half.clone(), half.clone()] {
            let node = center_quad(ctx);
            // Find the relabeling onto the target order.
            for perm in Perm::all(4) {
                let candidate: Vec<Rat> = perm.apply(&[
                    Rat::ratio(3, 2),
                    Rat::ratio(1, 2),
                    Rat::ratio(3, 2),
                    Rat::ratio(1, 2),
                ]);
                if candidate == theta {
                    return Ok((node, perm));
                }
            }
            unreachable!("center orbit always matches some relabeling");
        }
        return Err(PlanError::Internal(
            "two-large cube interior point not covered and not the center".into(),
        ));
    }
    let detail = if center == [3, 1, 1, 1] {
        "ray (1+a, 1-a, 1-a, 1-a)"
    } else {
        "ray (2+a, a, a, a)"
    };
    Err(PlanError::NotQuadCoverable { detail: detail.into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(p, q)| Rat::ratio(p, q)).collect()
    }

    #[test]
    fn convex_case() {
        let mut ctx = SymCtx::default();
        let theta = rats(&[(9, 10), (9, 10), (9, 10), (9, 10)]);
        let (node, perm) = plan_quadrilateral_inner(&theta, &mut ctx).unwrap();
        assert_eq!(node.kind, PlanKind::ConvexQuad);
        assert!(perm.is_identity());
        assert_eq!(node.angle_out, syms(&theta));
    }

    #[test]
    fn catalog_case_one_large() {
        let mut ctx = SymCtx::default();
        let theta = rats(&[(12, 10), (9, 10), (5, 10), (4, 10)]);
        let (node, perm) = plan_quadrilateral_inner(&theta, &mut ctx).unwrap();
        match &node.kind {
            PlanKind::CatalogQuad { family, quad_relabel } => {
                assert_eq!(*family, 1);
                assert!(quad_relabel.is_dihedral8());
            }
            other => panic!("expected catalog quad, got {other:?}"),
        }
        // The recorded relabeling restores the target exactly.
        let restored: Vec<Sym> = perm.apply(&node.angle_out);
        assert_eq!(restored, syms(&theta));
        // Base is a valid convex quad.
        assert_eq!(node.children[0].kind, PlanKind::ConvexQuad);
    }

    #[test]
    fn excluded_ray_one_large() {
        let mut ctx = SymCtx::default();
        let theta = rats(&[(13, 10), (7, 10), (7, 10), (7, 10)]);
        assert!(matches!(
            plan_quadrilateral_inner(&theta, &mut ctx),
            Err(PlanError::NotQuadCoverable { .. })
        ));
    }

    #[test]
    fn center_orbit_case() {
        let mut ctx = SymCtx::default();
        let theta = rats(&[(1, 2), (3, 2), (1, 2), (3, 2)]);
        let (node, perm) = plan_quadrilateral_inner(&theta, &mut ctx).unwrap();
        assert!(matches!(node.kind, PlanKind::CenterQuad { .. }));
        let restored: Vec<Sym> = perm.apply(&node.angle_out);
        assert_eq!(restored, syms(&theta));
    }

    #[test]
    fn immersed_cube_catalog() {
        let mut ctx = SymCtx::default();
        let theta = rats(&[(25, 10), (3, 10), (3, 10), (3, 10)]);
        let (node, _) = plan_quadrilateral_inner(&theta, &mut ctx).unwrap();
        match &node.kind {
            PlanKind::CatalogQuad { family, .. } => assert!([8, 9, 10].contains(family)),
            other => panic!("expected catalog quad, got {other:?}"),
        }
    }

    #[test]
    fn excluded_ray_immersed() {
        let mut ctx = SymCtx::default();
        let theta = rats(&[(9, 4), (1, 4), (1, 4), (1, 4)]);
        assert!(matches!(
            plan_quadrilateral_inner(&theta, &mut ctx),
            Err(PlanError::NotQuadCoverable { .. })
        ));
        // The immersed-cube center is the a = 1/2 ray point.
        let theta = rats(&[(5, 2), (1, 2), (1, 2), (1, 2)]);
        assert!(matches!(
            plan_quadrilateral_inner(&theta, &mut ctx),
            Err(PlanError::NotQuadCoverable { .. })
        ));
    }

    #[test]
    fn integral_coordinate_rejected() {
        let mut ctx = SymCtx::default();
        let theta = rats(&[(3, 2), (1, 1), (1, 2), (1, 5)]);
        assert!(matches!(
            plan_quadrilateral_inner(&theta, &mut ctx),
            Err(PlanError::IntegralCoordinate { .. })
        ));
    }
}
