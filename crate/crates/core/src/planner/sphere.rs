//! Closed-sphere plans: triangle doubles for three cone points, the
//! four-point case machine (quadrilateral doubles, sporadic covers, slit
//! gluings and cone-triangle gluings), and the split induction that undoes
//! one algebraic merge per step for five or more cone points.

use crate::angles::DefectVector;
use crate::merging::{find_merge_constructive, MergeSign};
use crate::perm::Perm;
use crate::planner::node::{Constraint, NonCoaxiality, PlanKind, PlanNode, PlanUnit};
use crate::planner::quad::plan_quadrilateral_inner;
use crate::planner::sym::{Rat, Sym};
use crate::planner::triangle::plan_triangle_inner;
use crate::planner::{rat_scalar, strict_admissible, to_rats, PlanError, SymCtx};
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};
use std::cmp::Ordering;

fn syms(v: &[Rat]) -> Vec<Sym> {
    v.iter().map(|r| Sym::rat(r.clone())).collect()
}

/// Double a polygon plan into a closed sphere.
fn double(child: PlanNode) -> PlanNode {
    let angles = child.angle_out.clone();
    let area = child.area_out.scale(&Rat::int(2));
    PlanNode {
        kind: PlanKind::Double,
        unit: PlanUnit::TwoPi,
        angle_out: angles,
        area_out: area,
        constraints: vec![],
        noncoaxiality: None,
        children: vec![child],
    }
}

/// Free sphere relabeling (skipped when trivial).
fn relabel(node: PlanNode, perm: Perm) -> PlanNode {
    if perm.is_identity() {
        return node;
    }
    let angles = perm.apply(&node.angle_out);
    let area = node.area_out.clone();
    let unit = node.unit;
    PlanNode {
        kind: PlanKind::Relabel { perm },
        unit,
        angle_out: angles,
        area_out: area,
        constraints: vec![],
        noncoaxiality: Some(NonCoaxiality::Inherited { child: 0 }),
        children: vec![node],
    }
}

/// Double of a triangle plan, certified non-coaxial by the interior seam
/// geodesic between the first two cone points.
fn triangle_sphere(theta: &[Rat], ctx: &mut SymCtx) -> Result<PlanNode, PlanError> {
    let tri = plan_triangle_inner(theta, ctx)?;
    let seam = ctx.fresh("l");
    let mut node = double(tri);
    node.constraints.push(Constraint::LengthRange {
        symbol: seam.clone(),
        lo: Rat::int(0),
        hi: Rat::int(1),
    });
    node.constraints.push(Constraint::Structural {
        text: "seam x1x2 of the underlying triangle survives as an interior geodesic".into(),
    });
    node.noncoaxiality = Some(NonCoaxiality::Certificate { i: 0, j: 1, symbol: seam });
    Ok(node)
}

/// Attach the short-geodesic guarantee of the four-point base spheres:
/// after relabeling, a smooth geodesic of length below π joins cone points
/// 0 and `j`.
fn with_short_geodesic(mut node: PlanNode, j: usize, ctx: &mut SymCtx) -> PlanNode {
    let symbol = ctx.fresh("g");
    node.constraints.push(Constraint::ShortGeodesic { i: 0, j, symbol: symbol.clone() });
    node.constraints.push(Constraint::LengthRange {
        symbol,
        lo: Rat::int(0),
        hi: Rat::int(1),
    });
    node
}

/// Degree-3 cyclic cover over a triangle double, branched at the first and
/// third cone points.
fn cyclic_cover3(base: PlanNode, out_angles: Vec<Rat>) -> PlanNode {
    let area = base.area_out.scale(&Rat::int(3));
    PlanNode {
        kind: PlanKind::CyclicCover { degree: 3, branch: (0, 2) },
        unit: PlanUnit::TwoPi,
        angle_out: syms(&out_angles),
        area_out: area,
        constraints: vec![],
        noncoaxiality: Some(NonCoaxiality::Inherited { child: 0 }),
        children: vec![base],
    }
}

/// Sphere for the ray 2π(1+a, 1-a, 1-a, 1-a): cyclic cover of the triangle
/// with angles 2π((1+a)/3, 1-a, 1/3).
fn sporadic_a(a: &Rat, ctx: &mut SymCtx) -> Result<PlanNode, PlanError> {
    let third = Rat::ratio(1, 3);
    let tri = [
        Rat(&(&Rat::int(1) + a).0 / &Rat::int(3).0),
        &Rat::int(1) - a,
        third,
    ];
    let base = triangle_sphere(&tri, ctx)?;
    let out = vec![
        &Rat::int(1) + a,
        &Rat::int(1) - a,
        &Rat::int(1) - a,
        &Rat::int(1) - a,
    ];
    let cover = cyclic_cover3(base, out.clone());
    let geodesic = ctx.fresh("g");
    let node = PlanNode {
        kind: PlanKind::SporadicA { a: a.clone() },
        unit: PlanUnit::TwoPi,
        angle_out: syms(&out),
        area_out: cover.area_out.clone(),
        constraints: vec![
            Constraint::ShortGeodesic { i: 0, j: 1, symbol: geodesic.clone() },
            Constraint::LengthRange { symbol: geodesic.clone(), lo: Rat::int(0), hi: Rat::int(1) },
            Constraint::Structural {
                text: "geodesics from x1 to each x_j are preimages of the short base geodesic".into(),
            },
        ],
        noncoaxiality: Some(NonCoaxiality::Certificate { i: 0, j: 1, symbol: geodesic }),
        children: vec![cover],
    };
    Ok(node)
}

/// Sphere for the ray 2π(2+b, b, b, b), b in (0, 1/2): cyclic cover of the
/// triangle with angles 2π((2+b)/3, b, 1/3).
fn sporadic_b(b: &Rat, ctx: &mut SymCtx) -> Result<PlanNode, PlanError> {
    let third = Rat::ratio(1, 3);
    let tri = [Rat(&(&Rat::int(2) + b).0 / &Rat::int(3).0), b.clone(), third];
    let base = triangle_sphere(&tri, ctx)?;
    let out = vec![&Rat::int(2) + b, b.clone(), b.clone(), b.clone()];
    let cover = cyclic_cover3(base, out.clone());
    let geodesic = ctx.fresh("g");
    let node = PlanNode {
        kind: PlanKind::SporadicB { b: b.clone() },
        unit: PlanUnit::TwoPi,
        angle_out: syms(&out),
        area_out: cover.area_out.clone(),
        constraints: vec![
            Constraint::ShortGeodesic { i: 0, j: 1, symbol: geodesic.clone() },
            Constraint::LengthRange { symbol: geodesic.clone(), lo: Rat::int(0), hi: Rat::int(1) },
        ],
        noncoaxiality: Some(NonCoaxiality::Certificate { i: 0, j: 1, symbol: geodesic }),
        children: vec![cover],
    };
    Ok(node)
}

/// The sphere with angles 2π(5/2, 1/2, 1/2, 1/2) from two hemispheres with
/// boundary identifications.
fn sporadic_c(ctx: &mut SymCtx) -> PlanNode {
    let seam = ctx.fresh("l");
    let geodesic = ctx.fresh("g");
    PlanNode {
        kind: PlanKind::SporadicC { seam: seam.clone() },
        unit: PlanUnit::TwoPi,
        angle_out: vec![Sym::ratio(5, 2), Sym::ratio(1, 2), Sym::ratio(1, 2), Sym::ratio(1, 2)],
        area_out: Sym::int(4),
        constraints: vec![
            Constraint::LengthRange { symbol: seam, lo: Rat::int(0), hi: Rat::int(1) },
            Constraint::ShortGeodesic { i: 0, j: 1, symbol: geodesic.clone() },
            Constraint::LengthRange { symbol: geodesic.clone(), lo: Rat::int(0), hi: Rat::int(1) },
        ],
        noncoaxiality: Some(NonCoaxiality::Certificate { i: 0, j: 1, symbol: geodesic }),
        children: vec![],
    }
}

/// Base sphere for a quadruple in the catalog region: quadrilateral double
/// when coverable, sporadic cover on the two excluded rays, hemisphere
/// gluing at the immersed-cube center. The result's `angle_out` equals the
/// input exactly and carries a short-geodesic guarantee from cone point 0.
fn base_sphere4(theta: &[Rat], ctx: &mut SymCtx) -> Result<PlanNode, PlanError> {
    // In the immersed cube the large vertex reaches any other vertex by a
    // short geodesic; pick x2 there, x3 in the box region (either of the
    // two opposite small vertices qualifies; the first is preferred).
    let immersed = theta.iter().any(|t| t.cmp(&Rat::int(2)) == Ordering::Greater);
    let short_j = if immersed { 1 } else { 2 };
    match plan_quadrilateral_inner(theta, ctx) {
        Ok((quad, perm)) => {
            let seam = ctx.fresh("l");
            let mut dbl = double(quad);
            dbl.constraints.push(Constraint::LengthRange {
                symbol: seam.clone(),
                lo: Rat::int(0),
                hi: Rat::int(1),
            });
            dbl.constraints.push(Constraint::Structural {
                text: "a quadrilateral edge adjacent to the large-angle vertex is shorter than pi"
                    .into(),
            });
            dbl.noncoaxiality = Some(NonCoaxiality::Certificate { i: 0, j: 1, symbol: seam });
            let node = relabel(dbl, perm);
            Ok(with_short_geodesic(node, short_j, ctx))
        }
        Err(PlanError::NotQuadCoverable { .. }) => {
            // Sporadic rays: (1+a, 1-a, 1-a, 1-a) or (2+a, a, a, a).
            let big = theta
                .iter()
                .position(|t| t.cmp(&Rat::int(1)) == Ordering::Greater)
                .ok_or_else(|| PlanError::Internal("sporadic ray without a large angle".into()))?;
            let small = theta[(big + 1) % 4].clone();
            let node = if theta[big].cmp(&Rat::int(2)) == Ordering::Less {
                let a = &theta[big] - &Rat::int(1);
                if &Rat::int(1) - &a != small {
                    return Err(PlanError::Internal("not on the (1+a, 1-a, ..) ray".into()));
                }
                sporadic_a(&a, ctx)?
            } else {
                let a = &theta[big] - &Rat::int(2);
                if a != small {
                    return Err(PlanError::Internal("not on the (2+a, a, ..) ray".into()));
                }
                if a == Rat::ratio(1, 2) {
                    sporadic_c(ctx)
                } else {
                    sporadic_b(&a, ctx)?
                }
            };
            // Relabel the canonical ray order onto the target order.
            let canon: Vec<Rat> = node
                .angle_out
                .iter()
                .map(|s| s.constant_part().clone())
                .collect();
            let perm = Perm::all(4)
                .into_iter()
                .find(|p| p.apply(&canon) == theta)
                .ok_or_else(|| PlanError::Internal("ray relabeling not found".into()))?;
            let node = relabel(node, perm);
            Ok(with_short_geodesic(node, short_j, ctx))
        }
        Err(e) => Err(e),
    }
}

/// Glue `copies` slit copies along the path joining cone points `path`.
fn glue_slit(child: PlanNode, path: (usize, usize), copies: u32) -> PlanNode {
    let mut angles = child.angle_out.clone();
    angles[path.0] = &angles[path.0] + &Sym::int(copies as i64);
    angles[path.1] = &angles[path.1] + &Sym::int(copies as i64);
    let area = &child.area_out + &Sym::int(4 * copies as i64);
    PlanNode {
        kind: PlanKind::GlueSlitCopies { path, copies },
        unit: PlanUnit::TwoPi,
        angle_out: angles,
        area_out: area,
        constraints: vec![Constraint::Structural {
            text: "path is simple and simply developable".into(),
        }],
        noncoaxiality: Some(NonCoaxiality::Inherited { child: 0 }),
        children: vec![child],
    }
}

/// Glue the double of a cone triangle along the short geodesic from
/// `path.0` to `path.1`, adding `2d` to the first endpoint angle.
fn glue_cone_triangle(child: PlanNode, path: (usize, usize), d: u32, ctx: &mut SymCtx) -> PlanNode {
    let mut angles = child.angle_out.clone();
    angles[path.0] = &angles[path.0] + &Sym::int(2 * d as i64);
    let area = &child.area_out + &Sym::int(4 * d as i64);
    let len = ctx.fresh("g");
    let second = child.angle_out[path.1].clone();
    PlanNode {
        kind: PlanKind::GlueConeTrianglePath { path, d },
        unit: PlanUnit::TwoPi,
        angle_out: angles,
        area_out: area,
        constraints: vec![
            Constraint::LessThanOne { value: second },
            Constraint::LengthRange { symbol: len.clone(), lo: Rat::int(0), hi: Rat::int(1) },
            Constraint::Structural {
                text: format!("glued along the short geodesic {len} from x{} to x{}", path.0, path.1),
            },
        ],
        noncoaxiality: Some(NonCoaxiality::Inherited { child: 0 }),
        children: vec![child],
    }
}

/// Greedy decomposition of a non-negative even-sum vector with
/// `2 p_j <= |p|` into coordinate pairs: repeatedly subtract 1 from the
/// two largest coordinates.
pub(crate) fn gamma4_decompose(mut p: [i64; 4]) -> Result<Vec<((usize, usize), u32)>, PlanError> {
    if p.iter().any(|&x| x < 0)
        || p.iter().sum::<i64>() % 2 != 0
        || p.iter().any(|&x| 2 * x > p.iter().sum::<i64>())
    {
        return Err(PlanError::Internal(format!("{p:?} outside the pair semigroup")));
    }
    let mut counts = std::collections::BTreeMap::<(usize, usize), u32>::new();
    while p.iter().sum::<i64>() > 0 {
        let mut idx: Vec<usize> = (0..4).collect();
        idx.sort_by_key(|&i| (-p[i], i));
        let (a, b) = (idx[0], idx[1]);
        if p[b] == 0 {
            return Err(PlanError::Internal("pair decomposition stalled".into()));
        }
        p[a] -= 1;
        p[b] -= 1;
        *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    Ok(counts.into_iter().collect())
}

/// Plan a sphere with four non-integral, strictly admissible cone angles.
pub fn plan_sphere4(theta: &[Scalar]) -> Result<PlanNode, PlanError> {
    let t = to_rats(theta)?;
    plan_sphere4_exact(&t, &mut SymCtx::default())
}

fn plan_sphere4_exact(t: &[Rat], ctx: &mut SymCtx) -> Result<PlanNode, PlanError> {
    if t.len() != 4 {
        return Err(PlanError::WrongLength { expected: 4, got: t.len() });
    }
    strict_admissible(t)?;
    for (index, x) in t.iter().enumerate() {
        if x.is_integer() {
            return Err(PlanError::IntegralCoordinate { index });
        }
    }
    let sort = Perm::sorting_desc(t, |a, b| a.cmp(b));
    let u: Vec<Rat> = sort.apply(t);
    let m: Vec<i64> = u.iter().map(Rat::floor_i64).collect();
    let sub = |v: &[Rat], w: &[i64]| -> Vec<Rat> {
        v.iter().zip(w).map(|(x, &k)| x - &Rat::int(k)).collect()
    };

    let node = if m[0] == 0 {
        // All angles in (0, 1): positivity forces the convex half cube.
        base_sphere4(&u, ctx)?
    } else if m[0] <= m[1] + m[2] + m[3] {
        // Case (a): reduce to the box region by removing coordinate pairs.
        let parity = m.iter().sum::<i64>() % 2;
        let mp: [i64; 4] = if parity == 0 {
            [m[0] - 1, m[1] - 1, m[2], m[3]]
        } else {
            [m[0] - 1, m[1], m[2], m[3]]
        };
        let base_target = sub(&u, &mp);
        let mut node = base_sphere4(&base_target, ctx)?;
        for ((k, l), copies) in gamma4_decompose(mp)? {
            node = glue_slit(node, (k, l), copies);
        }
        node
    } else if m.iter().sum::<i64>() % 2 == 1 {
        // Case (b): dominant head, odd translation.
        let d = (m[0] - 1 - m[1] - m[2] - m[3]) / 2;
        let base_target = sub(&u, &[m[0], m[1], m[2], m[3]])
            .iter()
            .enumerate()
            .map(|(k, x)| if k == 0 { x + &Rat::int(1) } else { x.clone() })
            .collect::<Vec<_>>();
        let mut node = base_sphere4(&base_target, ctx)?;
        if d > 0 {
            node = glue_cone_triangle(node, (0, 2), d as u32, ctx);
        }
        for (j, &count) in m.iter().enumerate().skip(1) {
            if count > 0 {
                node = glue_slit(node, (0, j), count as u32);
            }
        }
        node
    } else if m[1] > 0 {
        // Case (c): dominant head, even translation, helped by the pair
        // (e_1 + e_2).
        let d = (m[0] - m[1] - m[2] - m[3]) / 2;
        let base_target: Vec<Rat> = sub(&u, &[m[0], m[1], m[2], m[3]])
            .iter()
            .enumerate()
            .map(|(k, x)| if k <= 1 { x + &Rat::int(1) } else { x.clone() })
            .collect();
        let mut node = base_sphere4(&base_target, ctx)?;
        if d > 0 {
            node = glue_cone_triangle(node, (0, 2), d as u32, ctx);
        }
        let copies = [m[1] - 1, m[2], m[3]];
        for (j, &count) in copies.iter().enumerate() {
            if count > 0 {
                node = glue_slit(node, (0, j + 1), count as u32);
            }
        }
        node
    } else {
        // Case (d): translation (2 + 2d, 0, 0, 0); the base lives in the
        // immersed-quadrilateral cube, which guarantees a short geodesic
        // from x1 to x2.
        let d = (m[0] - 2) / 2;
        let base_target = sub(&u, &[2 * d, 0, 0, 0]);
        let mut node = base_sphere4(&base_target, ctx)?;
        if d > 0 {
            node = glue_cone_triangle(node, (0, 1), d as u32, ctx);
        }
        node
    };
    Ok(relabel(node, sort.inverse()))
}

/// Split one cone point of `child` (its last angle, equal to the merged
/// value) into the pair `(theta_i, theta_j)` of `target`.
fn split(
    target: &[Rat],
    i: usize,
    j: usize,
    sign: MergeSign,
    child: PlanNode,
    ctx: &mut SymCtx,
) -> Result<PlanNode, PlanError> {
    let n = target.len();
    let eta = ctx.fresh("eta");
    let eps = ctx.fresh("eps");
    let a = Sym::rat(target[i].clone());
    let b = Sym::rat(target[j].clone());
    let merged = match sign {
        MergeSign::Plus => &(&a + &b) - &Sym::int(1),
        MergeSign::Minus => &(&a - &b) - &Sym::int(1),
    };
    match child.angle_out.last() {
        Some(last) if *last == merged => {}
        other => {
            return Err(PlanError::Internal(format!(
                "split child last angle {:?} does not match merged value {merged}",
                other
            )))
        }
    }
    let third = &merged + &Sym::symbol(&eta);
    let tri_kind = match sign {
        MergeSign::Plus => PlanKind::SumTriangle { eta: eta.clone() },
        MergeSign::Minus => PlanKind::DifferenceTriangle { eta: eta.clone() },
    };
    let tri_angles = vec![a.clone(), b.clone(), third.clone()];
    let tri_area = &(&(&a + &b) + &third) - &Sym::int(1);
    let mut tri = PlanNode::leaf(tri_kind, PlanUnit::Pi, tri_angles, tri_area);
    tri.constraints.push(Constraint::WideAt { vertex: "x3".into(), eps: eps.clone() });
    tri.constraints.push(Constraint::EtaBound { eta: eta.clone(), eps: eps.clone() });
    if sign == MergeSign::Minus {
        if target[j].is_integer() {
            return Err(PlanError::IntegralCoordinate { index: j });
        }
        tri.constraints.push(Constraint::NotInteger { value: b.clone() });
    }
    let dt = double(tri);

    // Reassemble the target order: survivors keep their relative order.
    let mut angle_out = Vec::with_capacity(n);
    let mut survivor = child.angle_out[..n - 2].iter();
    for k in 0..n {
        if k == i {
            angle_out.push(a.clone());
        } else if k == j {
            angle_out.push(b.clone());
        } else {
            angle_out.push(survivor.next().expect("survivor count").clone());
        }
    }
    // Deformed child area plus the triangle double, minus the excised
    // neighbourhoods of the joined points.
    let eta_sym = Sym::symbol(&eta);
    let join_angle = &merged + &eta_sym;
    let area = &(&(&child.area_out + &eta_sym.scale(&Rat::int(2))) + &dt.area_out)
        - &join_angle.scale(&Rat::int(4));
    Ok(PlanNode {
        kind: PlanKind::Split { i, j, sign, eta },
        unit: PlanUnit::TwoPi,
        angle_out,
        area_out: area,
        constraints: vec![
            Constraint::DeformabilityAssumption,
            Constraint::Structural {
                text: "join the deformed child at its last cone point with the triangle double at x3"
                    .into(),
            },
        ],
        noncoaxiality: Some(NonCoaxiality::Inherited { child: 0 }),
        children: vec![child, dt],
    })
}

/// Plan a sphere with `n >= 3` strictly admissible cone angles (2π units).
///
/// Three cone points double a triangle; four go through the case machine
/// (with an integral coordinate handled by one distance-preserving merge);
/// five or more reduce by one merge per step, undone as splits.
pub fn plan_sphere_n(theta: &[Scalar]) -> Result<PlanNode, PlanError> {
    let t = to_rats(theta)?;
    plan_sphere_n_exact(&t, &mut SymCtx::default())
}

fn plan_sphere_n_exact(t: &[Rat], ctx: &mut SymCtx) -> Result<PlanNode, PlanError> {
    let n = t.len();
    if n < 3 {
        return Err(PlanError::WrongLength { expected: 3, got: n });
    }
    strict_admissible(t)?;
    if n == 3 {
        return triangle_sphere(t, ctx);
    }
    if n == 4 {
        return match t.iter().position(Rat::is_integer) {
            None => plan_sphere4_exact(t, ctx),
            Some(i) => {
                // One integral angle: merge it away (distance preserved
                // exactly), plan the triangle sphere, split back.
                let j = usize::from(i == 0);
                let merged = &(&t[i] + &t[j]) - &Rat::int(1);
                let mut child_target: Vec<Rat> = t
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i && *k != j)
                    .map(|(_, x)| x.clone())
                    .collect();
                child_target.push(merged);
                let child = plan_sphere_n_exact(&child_target, ctx)?;
                split(t, i, j, MergeSign::Plus, child, ctx)
            }
        };
    }
    // n >= 5: one constructive merge, then recurse.
    let delta = DefectVector::new(t.iter().map(|x| rat_scalar(&(x - &Rat::int(1)))).collect());
    let step = find_merge_constructive(&delta, DEFAULT_TOLERANCE)?;
    let child_target: Vec<Rat> = step
        .result
        .entries
        .iter()
        .map(|e| match e.to_exact() {
            Some(r) => Rat(&r + &Rat::int(1).0),
            None => unreachable!("exact input"),
        })
        .collect();
    let child = plan_sphere_n_exact(&child_target, ctx)?;
    split(t, step.i, step.j, step.sign, child, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(p, q)| Rat::ratio(p, q)).collect()
    }

    fn consts(node: &PlanNode) -> Vec<Rat> {
        node.angle_out
            .iter()
            .map(|s| {
                assert!(s.is_constant(), "leftover symbols in {s}");
                s.constant_part().clone()
            })
            .collect()
    }

    #[test]
    fn gamma4_greedy() {
        let pairs = gamma4_decompose([2, 1, 1, 0]).unwrap();
        let total: i64 = pairs.iter().map(|(_, c)| 2 * *c as i64).sum();
        assert_eq!(total, 4);
        assert!(gamma4_decompose([3, 0, 0, 1]).is_err()); // 2*3 > 4
        assert!(gamma4_decompose([1, 0, 0, 0]).is_err()); // odd sum
        assert_eq!(gamma4_decompose([0, 0, 0, 0]).unwrap(), vec![]);
    }

    #[test]
    fn four_point_plain_double() {
        // All fractional parts, head slightly above 1: one slit-free
        // quadrilateral double.
        let mut ctx = SymCtx::default();
        let t = rats(&[(12, 10), (9, 10), (5, 10), (4, 10)]);
        let p = plan_sphere4_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        // No surgery nodes anywhere.
        fn no_glue(n: &PlanNode) -> bool {
            !matches!(
                n.kind,
                PlanKind::GlueSlitCopies { .. } | PlanKind::GlueConeTrianglePath { .. }
            ) && n.children.iter().all(no_glue)
        }
        assert!(no_glue(&p));
    }

    #[test]
    fn four_point_case_d() {
        // (4.5, 0.3, 0.3, 0.3): base in the immersed cube after removing
        // 2*e_1, then one cone-triangle gluing of degree 1.
        let mut ctx = SymCtx::default();
        let t = rats(&[(45, 10), (3, 10), (3, 10), (3, 10)]);
        let p = plan_sphere4_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        fn find_glue(n: &PlanNode) -> Option<(usize, usize, u32)> {
            if let PlanKind::GlueConeTrianglePath { path, d } = &n.kind {
                return Some((path.0, path.1, *d));
            }
            n.children.iter().find_map(find_glue)
        }
        assert_eq!(find_glue(&p), Some((0, 1, 1)));
    }

    #[test]
    fn four_point_sporadic_a() {
        let mut ctx = SymCtx::default();
        let t = rats(&[(13, 10), (7, 10), (7, 10), (7, 10)]);
        let p = plan_sphere_n_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        fn has_sporadic_a(n: &PlanNode) -> bool {
            matches!(n.kind, PlanKind::SporadicA { .. }) || n.children.iter().any(has_sporadic_a)
        }
        assert!(has_sporadic_a(&p));
        assert_eq!(p.area_out, p.gauss_bonnet_area());
    }

    #[test]
    fn four_point_sporadic_c() {
        let mut ctx = SymCtx::default();
        let t = rats(&[(5, 2), (1, 2), (1, 2), (1, 2)]);
        let p = plan_sphere_n_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        fn has_sporadic_c(n: &PlanNode) -> bool {
            matches!(n.kind, PlanKind::SporadicC { .. }) || n.children.iter().any(has_sporadic_c)
        }
        assert!(has_sporadic_c(&p));
    }

    #[test]
    fn four_point_case_b_with_slits() {
        // (5.3, 2.3, 0.3, 0.7): translation (5,2,0,0) with dominant odd
        // head; one cone-triangle gluing of degree 1 plus two slit copies
        // along the path to the second point.
        let mut ctx = SymCtx::default();
        let t = rats(&[(53, 10), (23, 10), (3, 10), (7, 10)]);
        let p = plan_sphere4_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        fn collect<'a>(n: &'a PlanNode, out: &mut Vec<&'a PlanKind>) {
            out.push(&n.kind);
            for c in &n.children {
                collect(c, out);
            }
        }
        let mut kinds = Vec::new();
        collect(&p, &mut kinds);
        assert!(kinds
            .iter()
            .any(|k| matches!(k, PlanKind::GlueConeTrianglePath { path: (0, 2), d: 1 })));
        assert!(kinds
            .iter()
            .any(|k| matches!(k, PlanKind::GlueSlitCopies { path: (0, 1), copies: 2 })));
    }

    #[test]
    fn four_point_case_c_even_translation() {
        // (6.3, 2.3, 0.3, 0.7): translation (6,2,0,0), even sum with a
        // positive second coordinate; degree-2 cone gluing plus one slit
        // copy.
        let mut ctx = SymCtx::default();
        let t = rats(&[(63, 10), (23, 10), (3, 10), (7, 10)]);
        let p = plan_sphere4_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        fn find(n: &PlanNode, pred: &dyn Fn(&PlanKind) -> bool) -> bool {
            pred(&n.kind) || n.children.iter().any(|c| find(c, pred))
        }
        assert!(find(&p, &|k| matches!(
            k,
            PlanKind::GlueConeTrianglePath { path: (0, 2), d: 2 }
        )));
        assert!(find(&p, &|k| matches!(
            k,
            PlanKind::GlueSlitCopies { path: (0, 1), copies: 1 }
        )));
    }

    #[test]
    fn four_point_case_a_with_pair_decomposition() {
        // (3.3, 2.3, 1.3, 1.7): translation (3,2,1,1) is balanced and odd,
        // so the base absorbs one unit and the rest splits into pairs.
        let mut ctx = SymCtx::default();
        let t = rats(&[(33, 10), (23, 10), (13, 10), (17, 10)]);
        let p = plan_sphere4_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        fn count_slits(n: &PlanNode) -> u32 {
            let own = if let PlanKind::GlueSlitCopies { copies, .. } = n.kind {
                copies
            } else {
                0
            };
            own + n.children.iter().map(count_slits).sum::<u32>()
        }
        // Translation after removing e_1 is (2,2,1,1): three coordinate
        // pairs in total.
        assert_eq!(count_slits(&p), 3);
    }

    #[test]
    fn three_point_double() {
        let mut ctx = SymCtx::default();
        let t = rats(&[(1, 2), (1, 2), (1, 2)]);
        let p = plan_sphere_n_exact(&t, &mut ctx).unwrap();
        assert_eq!(p.kind, PlanKind::Double);
        assert_eq!(p.area_out, Sym::int(1));
        assert_eq!(p.area_out, p.gauss_bonnet_area());
    }

    #[test]
    fn four_point_integral_route() {
        // (2, 1/2, 1/2, 1/2): merge the integral head with the next angle,
        // plan the triangle sphere, split back.
        let mut ctx = SymCtx::default();
        let t = rats(&[(2, 1), (1, 2), (1, 2), (1, 2)]);
        let p = plan_sphere_n_exact(&t, &mut ctx).unwrap();
        assert!(matches!(p.kind, PlanKind::Split { i: 0, j: 1, sign: MergeSign::Plus, .. }));
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        // Child target is the merged triple (1/2, 1/2, 3/2).
        assert_eq!(
            consts(&p.children[0]),
            rats(&[(1, 2), (1, 2), (3, 2)])
        );
    }

    #[test]
    fn five_point_split_over_case_machine() {
        let mut ctx = SymCtx::default();
        let t = rats(&[(9, 10), (8, 10), (7, 10), (7, 10), (6, 10)]);
        let p = plan_sphere_n_exact(&t, &mut ctx).unwrap();
        match &p.kind {
            PlanKind::Split { i, j, sign, .. } => {
                assert_eq!((*i, *j), (0, 1));
                assert_eq!(*sign, MergeSign::Plus);
            }
            other => panic!("expected split at the root, got {other:?}"),
        }
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        // Child is the merged quadruple (0.7, 0.7, 0.6, 0.7).
        assert_eq!(
            consts(&p.children[0]),
            rats(&[(7, 10), (7, 10), (6, 10), (7, 10)])
        );
    }

    #[test]
    fn boundary_rejected() {
        let mut ctx = SymCtx::default();
        let t = rats(&[(1, 2), (1, 2), (1, 1)]);
        assert!(matches!(
            plan_sphere_n_exact(&t, &mut ctx),
            Err(PlanError::NotStrict(_))
        ));
    }

    #[test]
    fn five_point_negative_split() {
        // Defects (2.7, -0.7, -0.75, -0.75, -0.75) are not positively
        // mergeable, so the reduction takes the negative merge of the
        // extremes and the plan undoes it with a difference triangle.
        let mut ctx = SymCtx::default();
        let t = rats(&[(37, 10), (3, 10), (1, 4), (1, 4), (1, 4)]);
        let p = plan_sphere_n_exact(&t, &mut ctx).unwrap();
        match &p.kind {
            PlanKind::Split { sign, .. } => assert_eq!(*sign, MergeSign::Minus),
            other => panic!("expected a split root, got {other:?}"),
        }
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        fn has_difference_triangle(n: &PlanNode) -> bool {
            matches!(n.kind, PlanKind::DifferenceTriangle { .. })
                || n.children.iter().any(has_difference_triangle)
        }
        assert!(has_difference_triangle(&p));
    }

    #[test]
    fn base_target_on_center_orbit() {
        // (7/2, 3/2, 1/2, 1/2): translation (3,1,0,0) has a dominant head
        // with even sum and a positive second coordinate, so the base
        // target is the center of the two-large cube, built from two
        // right-angle bigons.
        let mut ctx = SymCtx::default();
        let t = rats(&[(7, 2), (3, 2), (1, 2), (1, 2)]);
        let p = plan_sphere4_exact(&t, &mut ctx).unwrap();
        assert_eq!(consts(&p), t);
        assert_eq!(p.area_out, p.gauss_bonnet_area());
        fn has_center_quad(n: &PlanNode) -> bool {
            matches!(n.kind, PlanKind::CenterQuad { .. }) || n.children.iter().any(has_center_quad)
        }
        assert!(has_center_quad(&p));
    }
}
