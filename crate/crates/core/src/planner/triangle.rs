//! Triangle plans: convex and hemisphere-complement bases inside the box
//! `[0,2] x [0,1]^2`, and the translated assembly with cone triangles and
//! exceptional bigons for everything beyond it.

use crate::perm::Perm;
use crate::planner::node::{Constraint, PlanKind, PlanNode, PlanUnit};
use crate::planner::sym::{sym_sum, Rat, Sym};
use crate::planner::{d1_odd_rat, strict_admissible, PlanError, SymCtx};
use std::cmp::Ordering;

/// Decompose a descending-sorted positive triple as `theta = theta' + m`
/// with `theta'` in `[0,2] x [0,1]^2` and `m` a non-negative integer
/// triple of even sum. Deterministic greedy with parity repair on the
/// first coordinate.
///
/// The translation need not be descending itself: sorted triples like
/// (9/4, 9/4, 5/4) admit only unsorted translations (here (1, 2, 1)), and
/// nothing downstream uses the order — the assembly only splits on whether
/// some coordinate of `m` dominates the other two.
pub fn gamma3_decompose(theta: &[Rat]) -> Result<([i64; 3], Vec<Rat>), PlanError> {
    if theta.len() != 3 {
        return Err(PlanError::WrongLength { expected: 3, got: theta.len() });
    }
    for w in theta.windows(2) {
        if w[0].cmp(&w[1]) == Ordering::Less {
            return Err(PlanError::Internal("gamma3 input must be sorted descending".into()));
        }
    }
    let fl: Vec<i64> = theta.iter().map(Rat::floor_i64).collect();
    let in_range = |v: &Rat, lo: i64, hi: i64| {
        v.cmp(&Rat::int(lo)) != Ordering::Less && v.cmp(&Rat::int(hi)) != Ordering::Greater
    };
    for m2 in [fl[1], fl[1] - 1] {
        if m2 < 0 || !in_range(&(&theta[1] - &Rat::int(m2)), 0, 1) {
            continue;
        }
        for m3 in [fl[2], fl[2] - 1] {
            if m3 < 0 || !in_range(&(&theta[2] - &Rat::int(m3)), 0, 1) {
                continue;
            }
            for m1 in [fl[0], fl[0] - 1] {
                if m1 < 0 || (m1 + m2 + m3) % 2 != 0 {
                    continue;
                }
                if !in_range(&(&theta[0] - &Rat::int(m1)), 0, 2) {
                    continue;
                }
                let rest: Vec<Rat> = theta
                    .iter()
                    .zip([m1, m2, m3])
                    .map(|(t, m)| t - &Rat::int(m))
                    .collect();
                return Ok((([m1, m2, m3]), rest));
            }
        }
    }
    Err(PlanError::Internal(format!(
        "no box decomposition for sorted triple ({}, {}, {})",
        theta[0], theta[1], theta[2]
    )))
}

fn syms(v: &[Rat]) -> Vec<Sym> {
    v.iter().map(|r| Sym::rat(r.clone())).collect()
}

/// Convex triangle node; panics on violated side conditions (callers
/// guarantee them from strict admissibility).
fn convex_triangle(v: &[Rat]) -> Result<PlanNode, PlanError> {
    let one = Rat::int(1);
    for t in v {
        if !t.is_positive() || t.cmp(&one) != Ordering::Less {
            return Err(PlanError::Internal(format!("convex triangle angle {t} outside (0,1)")));
        }
    }
    let sum = v.iter().fold(Rat::int(0), |acc, t| &acc + t);
    if sum.cmp(&one) != Ordering::Greater {
        return Err(PlanError::Internal("convex triangle angle sum at most 1".into()));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        // (1 - v_i) < (1 - v_j) + (1 - v_k)
        let lhs = &one - &v[i];
        let rhs = &(&one - &v[j]) + &(&one - &v[k]);
        if lhs.cmp(&rhs) != Ordering::Less {
            return Err(PlanError::Internal("complementary triangle inequality not strict".into()));
        }
    }
    let angles = syms(v);
    let area = &sym_sum(&angles) - &Sym::int(1);
    Ok(PlanNode::leaf(PlanKind::ConvexTriangle, PlanUnit::Pi, angles, area))
}

/// Base plan for a triple inside `[0,2] x [0,1]^2` satisfying the holonomy
/// constraint strictly: convex when the first angle is below 1, otherwise
/// the complement of a convex triangle in a hemisphere.
fn base_box_triangle(v: &[Rat]) -> Result<PlanNode, PlanError> {
    let one = Rat::int(1);
    match v[0].cmp(&one) {
        Ordering::Less => convex_triangle(v),
        Ordering::Equal => Err(PlanError::IntegralCoordinate { index: 0 }),
        Ordering::Greater => {
            let two = Rat::int(2);
            if v[0].cmp(&two) != Ordering::Less {
                return Err(PlanError::Internal(format!("box triple head {} outside (1,2)", v[0])));
            }
            let base = convex_triangle(&[&two - &v[0], &one - &v[2], &one - &v[1]])?;
            let angles = syms(v);
            let area = &sym_sum(&angles) - &Sym::int(1);
            Ok(PlanNode {
                kind: PlanKind::ComplementTriangle,
                unit: PlanUnit::Pi,
                angle_out: angles,
                area_out: area,
                constraints: vec![],
                noncoaxiality: None,
                children: vec![base],
            })
        }
    }
}

/// Plan a spherical triangle with angles `pi * theta` (any order). The
/// produced node's `angle_out` equals `theta` entrywise.
///
/// Requires positivity and the strict holonomy constraint, which imply the
/// angle sum exceeds 1.
pub fn plan_triangle(theta: &[crate::scalar::Scalar]) -> Result<PlanNode, PlanError> {
    let t = crate::planner::to_rats(theta)?;
    plan_triangle_inner(&t, &mut SymCtx::default())
}

pub(crate) fn plan_triangle_inner(theta: &[Rat], ctx: &mut SymCtx) -> Result<PlanNode, PlanError> {
    if theta.len() != 3 {
        return Err(PlanError::WrongLength { expected: 3, got: theta.len() });
    }
    strict_admissible(theta)?;
    let perm = Perm::sorting_desc(theta, |a, b| a.cmp(b));
    let sorted: Vec<Rat> = perm.apply(theta);
    let in_box = sorted[0].cmp(&Rat::int(2)) != Ordering::Greater
        && sorted[1].cmp(&Rat::int(1)) != Ordering::Greater;
    let node = if in_box {
        base_box_triangle(&sorted)?
    } else {
        let (m, rest) = gamma3_decompose(&sorted)?;
        // Translation by an even integer vector preserves the holonomy
        // constraint, so the box base exists.
        let defects: Vec<Rat> = rest.iter().map(|t| t - &Rat::int(1)).collect();
        if d1_odd_rat(&defects).cmp(&Rat::int(1)) != Ordering::Greater {
            return Err(PlanError::Internal("box base lost strict holonomy".into()));
        }
        let base = base_box_triangle(&rest)?;
        assembly(base, m, &rest, &sorted, ctx)?
    };
    Ok(if perm.is_identity() {
        node
    } else {
        relabel_triangle(node, perm.inverse())
    })
}

/// Wrap a triangle plan in a free vertex relabeling.
fn relabel_triangle(node: PlanNode, perm: Perm) -> PlanNode {
    let angles = perm.apply(&node.angle_out);
    let area = node.area_out.clone();
    PlanNode {
        kind: PlanKind::Relabel { perm },
        unit: PlanUnit::Pi,
        angle_out: angles,
        area_out: area,
        constraints: vec![],
        noncoaxiality: None,
        children: vec![node],
    }
}

/// Glue cone triangles and exceptional bigons onto the box base to realize
/// the integer translation `m`.
fn assembly(
    base: PlanNode,
    m: [i64; 3],
    rest: &[Rat],
    target: &[Rat],
    ctx: &mut SymCtx,
) -> Result<PlanNode, PlanError> {
    let mut children = vec![base];
    let mut constraints = Vec::new();
    fn bigon(
        d: i64,
        side: (usize, usize),
        constraints: &mut Vec<Constraint>,
        children: &mut Vec<PlanNode>,
        ctx: &mut SymCtx,
    ) {
        if d == 0 {
            return;
        }
        let length = ctx.fresh("l");
        constraints.push(Constraint::LengthRange {
            symbol: length.clone(),
            lo: Rat::int(0),
            hi: Rat::int(2),
        });
        constraints.push(Constraint::Structural {
            text: format!("bigon glued along the side x{}x{}", side.0, side.1),
        });
        let angles = vec![Sym::int(d), Sym::int(d)];
        let area = Sym::int(2 * d);
        children.push(PlanNode::leaf(
            PlanKind::ExceptionalBigon { d: d as u32, length },
            PlanUnit::Pi,
            angles,
            area,
        ));
    }
    let total: i64 = m.iter().sum();
    let dominant = (0..3).find(|&i| 2 * m[i] > total);
    if let Some(i) = dominant {
        // Cone triangle adding 2d at the dominant vertex, glued along its
        // side to the last other vertex (which it flattens); bigons make
        // up the rest.
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let d = (2 * m[i] - total) / 2;
        let alpha = &Rat::int(1) - &rest[k];
        let length = ctx.fresh("l");
        constraints.push(Constraint::LengthRange {
            symbol: length.clone(),
            lo: Rat::int(0),
            hi: Rat::int(1),
        });
        constraints.push(Constraint::Structural {
            text: format!("cone triangle glued along the side x{}x{}", i + 1, k + 1),
        });
        let angles = vec![
            Sym::int(2 * d),
            Sym::rat(alpha.clone()),
            Sym::rat(&Rat::int(1) - &alpha),
        ];
        let area = Sym::int(2 * d);
        children.push(PlanNode::leaf(
            PlanKind::ConeTriangle { d: d as u32, length, alpha },
            PlanUnit::Pi,
            angles,
            area,
        ));
        bigon(m[j], (i + 1, j + 1), &mut constraints, &mut children, ctx);
        bigon(m[k], (i + 1, k + 1), &mut constraints, &mut children, ctx);
    } else {
        let d1 = (m[1] + m[2] - m[0]) / 2;
        let d2 = (m[2] + m[0] - m[1]) / 2;
        let d3 = (m[0] + m[1] - m[2]) / 2;
        bigon(d1, (2, 3), &mut constraints, &mut children, ctx);
        bigon(d2, (3, 1), &mut constraints, &mut children, ctx);
        bigon(d3, (1, 2), &mut constraints, &mut children, ctx);
    }
    let angles = syms(target);
    let area = children
        .iter()
        .fold(Sym::int(0), |acc, c| &acc + &c.area_out);
    Ok(PlanNode {
        kind: PlanKind::TriangleAssembly { m },
        unit: PlanUnit::Pi,
        angle_out: angles,
        area_out: area,
        constraints,
        noncoaxiality: None,
        children,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(p, q)| Rat::ratio(p, q)).collect()
    }

    #[test]
    fn gamma3_examples() {
        let (m, rest) = gamma3_decompose(&rats(&[(13, 10), (4, 10), (1, 10)])).unwrap();
        assert_eq!(m, [0, 0, 0]);
        assert_eq!(rest, rats(&[(13, 10), (4, 10), (1, 10)]));

        let (m, rest) = gamma3_decompose(&rats(&[(53, 10), (21, 10), (4, 10)])).unwrap();
        assert_eq!(m, [4, 2, 0]);
        assert_eq!(rest, rats(&[(13, 10), (1, 10), (4, 10)]));

        let (m, rest) = gamma3_decompose(&rats(&[(7, 2), (1, 2), (1, 2)])).unwrap();
        assert_eq!(m, [2, 0, 0]);
        assert_eq!(rest, rats(&[(3, 2), (1, 2), (1, 2)]));
    }

    #[test]
    fn gamma3_oracle_small_search() {
        // Brute-force over all valid decompositions confirms membership.
        let samples = [
            rats(&[(53, 10), (21, 10), (4, 10)]),
            rats(&[(9, 2), (7, 3), (1, 5)]),
            rats(&[(19, 7), (19, 7), (19, 7)]),
        ];
        for theta in samples {
            let (m, rest) = gamma3_decompose(&theta).unwrap();
            assert!(m[0] >= m[1] && m[1] >= m[2] && m[2] >= 0);
            assert_eq!((m[0] + m[1] + m[2]) % 2, 0);
            for (t, (r, mm)) in theta.iter().zip(rest.iter().zip(m)) {
                assert_eq!(*t, &(r.clone()) + &Rat::int(mm));
            }
            assert!(rest[0].cmp(&Rat::int(2)) != Ordering::Greater && !rest[0].0.is_negative());
            for r in &rest[1..] {
                assert!(r.cmp(&Rat::int(1)) != Ordering::Greater && !r.0.is_negative());
            }
        }
    }

    #[test]
    fn equilateral_is_convex() {
        let mut ctx = SymCtx::default();
        let p = plan_triangle_inner(&rats(&[(1, 2), (1, 2), (1, 2)]), &mut ctx).unwrap();
        assert_eq!(p.kind, PlanKind::ConvexTriangle);
        assert_eq!(p.area_out, Sym::ratio(1, 2));
    }

    #[test]
    fn complement_base() {
        let mut ctx = SymCtx::default();
        let p = plan_triangle_inner(&rats(&[(3, 2), (1, 2), (1, 2)]), &mut ctx).unwrap();
        assert_eq!(p.kind, PlanKind::ComplementTriangle);
        assert_eq!(p.children.len(), 1);
        assert_eq!(
            p.children[0].angle_out,
            vec![Sym::ratio(1, 2), Sym::ratio(1, 2), Sym::ratio(1, 2)]
        );
    }

    #[test]
    fn assembly_case_a_example() {
        // (5.3, 2.1, 0.3): translation (4,2,0), head exceeds the others, so
        // one cone triangle of degree 1 plus a single bigon of degree 2.
        // (The nearby (5.3, 2.1, 0.4) sits exactly on the holonomy
        // boundary: distance 1 to (4,1,0) after the defect shift.)
        let mut ctx = SymCtx::default();
        let p = plan_triangle_inner(&rats(&[(53, 10), (21, 10), (3, 10)]), &mut ctx).unwrap();
        assert_eq!(p.kind, PlanKind::TriangleAssembly { m: [4, 2, 0] });
        assert_eq!(p.angle_out, vec![Sym::ratio(53, 10), Sym::ratio(21, 10), Sym::ratio(3, 10)]);
        let kinds: Vec<&PlanKind> = p.children.iter().map(|c| &c.kind).collect();
        assert!(matches!(kinds[0], PlanKind::ComplementTriangle));
        assert!(matches!(kinds[1], PlanKind::ConeTriangle { d: 1, .. }));
        assert!(matches!(kinds[2], PlanKind::ExceptionalBigon { d: 2, .. }));
        assert_eq!(p.children.len(), 3);
        // Cone triangle apex angle 1 - 0.3 = 0.7.
        if let PlanKind::ConeTriangle { alpha, .. } = &p.children[1].kind {
            assert_eq!(*alpha, Rat::ratio(7, 10));
        }
        // Area bookkeeping: base + attachments equals Gauss-Bonnet.
        assert_eq!(p.area_out, p.gauss_bonnet_area());
    }

    #[test]
    fn unsorted_input_is_relabeled_back() {
        let mut ctx = SymCtx::default();
        let input = rats(&[(3, 10), (53, 10), (21, 10)]);
        let p = plan_triangle_inner(&input, &mut ctx).unwrap();
        assert!(matches!(p.kind, PlanKind::Relabel { .. }));
        assert_eq!(
            p.angle_out,
            vec![Sym::ratio(3, 10), Sym::ratio(53, 10), Sym::ratio(21, 10)]
        );
    }

    #[test]
    fn boundary_rejected() {
        let mut ctx = SymCtx::default();
        assert!(matches!(
            plan_triangle_inner(&rats(&[(1, 2), (1, 2), (1, 1)]), &mut ctx),
            Err(PlanError::NotStrict(_))
        ));
    }
}
