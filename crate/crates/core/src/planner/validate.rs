//! Plan validation: recompute every node's bookkeeping bottom-up with
//! exact arithmetic, check the recorded side conditions, and compare the
//! root against the target angles and the Gauss–Bonnet area identity.

use crate::merging::MergeSign;
use crate::planner::node::{Constraint, NonCoaxiality, PlanKind, PlanNode, PlanUnit};
use crate::planner::sym::{Rat, Sym};
use crate::planner::{families, PlanError};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub nodes: usize,
    pub checks: usize,
    pub angle_target_matched: bool,
    pub gauss_bonnet_matched: bool,
    pub noncoaxiality_certified: bool,
}

struct Checker {
    checks: usize,
}

impl Checker {
    fn ensure(&mut self, ok: bool, detail: impl FnOnce() -> String) -> Result<(), PlanError> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(PlanError::Validation(detail()))
        }
    }
}

fn consts_or_err(v: &[Sym], what: &str) -> Result<Vec<Rat>, PlanError> {
    v.iter()
        .map(|s| {
            if s.is_constant() {
                Ok(s.constant_part().clone())
            } else {
                Err(PlanError::Validation(format!("{what}: leftover symbols in {s}")))
            }
        })
        .collect()
}

/// Validate a plan against the target angle vector (same unit as the plan
/// root). Angle equality is exact; every recorded constraint with numeric
/// content is re-checked.
pub fn validate_plan(plan: &PlanNode, target: &[Rat]) -> Result<ValidationReport, PlanError> {
    let mut ck = Checker { checks: 0 };
    recompute(plan, &mut ck)?;

    let out = consts_or_err(&plan.angle_out, "root angles")?;
    let angle_target_matched = out == target;
    ck.ensure(angle_target_matched, || {
        format!(
            "root angles ({}) differ from target ({})",
            join(&out),
            join(target)
        )
    })?;
    let gb = plan.gauss_bonnet_area();
    let gauss_bonnet_matched = plan.area_out == gb;
    ck.ensure(gauss_bonnet_matched, || {
        format!("root area {} differs from Gauss-Bonnet value {}", plan.area_out, gb)
    })?;
    let noncoaxiality_certified = if plan.unit == PlanUnit::TwoPi {
        check_noncoaxiality(plan, &mut ck)?;
        true
    } else {
        false
    };
    Ok(ValidationReport {
        nodes: plan.size(),
        checks: ck.checks,
        angle_target_matched,
        gauss_bonnet_matched,
        noncoaxiality_certified,
    })
}

fn join(v: &[Rat]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

fn check_noncoaxiality(node: &PlanNode, ck: &mut Checker) -> Result<(), PlanError> {
    let mut cur = node;
    loop {
        match &cur.noncoaxiality {
            Some(NonCoaxiality::Inherited { child }) => {
                cur = cur.children.get(*child).ok_or_else(|| {
                    PlanError::Validation("non-coaxiality inherited from missing child".into())
                })?;
            }
            Some(NonCoaxiality::Certificate { i, j, symbol }) => {
                let angles = &cur.angle_out;
                ck.ensure(*i < angles.len() && *j < angles.len() && i != j, || {
                    "certificate indices out of range".into()
                })?;
                for k in [*i, *j] {
                    let a = &angles[k];
                    ck.ensure(a.is_constant() && !a.constant_part().is_integer(), || {
                        format!("certificate angle {a} must be constant and non-integral")
                    })?;
                }
                let bounded = cur.constraints.iter().any(|c| match c {
                    Constraint::LengthRange { symbol: s, lo, hi } => {
                        s == symbol && *lo == Rat::int(0) && *hi == Rat::int(1)
                    }
                    _ => false,
                });
                ck.ensure(bounded, || {
                    format!("certificate geodesic {symbol} lacks a (0, pi) length constraint")
                })?;
                return Ok(());
            }
            None => {
                return Err(PlanError::Validation(
                    "no non-coaxiality certificate on the resolution chain".into(),
                ))
            }
        }
    }
}

fn expect_unit(node: &PlanNode, unit: PlanUnit, ck: &mut Checker) -> Result<(), PlanError> {
    ck.ensure(node.unit == unit, || {
        format!("node {:?} has wrong unit", node.kind)
    })
}

fn positive_constant_part(node: &PlanNode, ck: &mut Checker) -> Result<(), PlanError> {
    for a in &node.angle_out {
        ck.ensure(a.constant_part().is_positive(), || {
            format!("angle {a} not positive at vanishing symbols")
        })?;
    }
    Ok(())
}

fn has_length_range(node: &PlanNode, symbol: &str) -> bool {
    node.constraints.iter().any(
        |c| matches!(c, Constraint::LengthRange { symbol: s, .. } if s == symbol),
    )
}

fn recompute(node: &PlanNode, ck: &mut Checker) -> Result<(), PlanError> {
    for child in &node.children {
        recompute(child, ck)?;
    }
    positive_constant_part(node, ck)?;
    let expect_angles = |ck: &mut Checker, got: &[Sym], want: &[Sym]| {
        ck.ensure(got == want, || {
            let g: Vec<String> = got.iter().map(|s| s.to_string()).collect();
            let w: Vec<String> = want.iter().map(|s| s.to_string()).collect();
            format!("angles ({}) differ from recomputed ({})", g.join(", "), w.join(", "))
        })
    };

    match &node.kind {
        PlanKind::ConvexTriangle => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            ck.ensure(node.children.is_empty() && node.angle_out.len() == 3, || {
                "convex triangle must be a 3-angle leaf".into()
            })?;
            let v = consts_or_err(&node.angle_out, "convex triangle")?;
            let one = Rat::int(1);
            for t in &v {
                ck.ensure(t.is_positive() && t.cmp(&one) == Ordering::Less, || {
                    format!("convex triangle angle {t} outside (0,1)")
                })?;
            }
            let sum = v.iter().fold(Rat::int(0), |acc, t| &acc + t);
            ck.ensure(sum.cmp(&one) == Ordering::Greater, || {
                "convex triangle angle sum at most 1".into()
            })?;
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                let lhs = &one - &v[i];
                let rhs = &(&one - &v[j]) + &(&one - &v[k]);
                ck.ensure(lhs.cmp(&rhs) == Ordering::Less, || {
                    "complementary triangle inequality not strict".into()
                })?;
            }
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "convex triangle area mismatch".into()
            })?;
        }
        PlanKind::ComplementTriangle => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            ck.ensure(
                node.children.len() == 1 && node.children[0].kind == PlanKind::ConvexTriangle,
                || "complement triangle needs a convex base".into(),
            )?;
            let base = &node.children[0].angle_out;
            let one = Sym::int(1);
            let two = Sym::int(2);
            let want = vec![&two - &base[0], &one - &base[2], &one - &base[1]];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "complement triangle area mismatch".into()
            })?;
        }
        PlanKind::ConeTriangle { d, alpha, .. } => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            ck.ensure(*d >= 1, || "cone triangle needs d >= 1".into())?;
            ck.ensure(
                alpha.is_positive() && alpha.cmp(&Rat::int(1)) == Ordering::Less,
                || format!("cone triangle apex fraction {alpha} outside (0,1)"),
            )?;
            let want = vec![
                Sym::int(2 * *d as i64),
                Sym::rat(alpha.clone()),
                Sym::rat(&Rat::int(1) - alpha),
            ];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == Sym::int(2 * *d as i64), || {
                "cone triangle area mismatch".into()
            })?;
        }
        PlanKind::OrdinaryBigon { alpha } => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            let want = vec![Sym::rat(alpha.clone()), Sym::rat(alpha.clone())];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == Sym::rat(alpha.clone()).scale(&Rat::int(2)), || {
                "bigon area mismatch".into()
            })?;
        }
        PlanKind::ExceptionalBigon { d, .. } => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            ck.ensure(*d >= 1, || "exceptional bigon needs d >= 1".into())?;
            let want = vec![Sym::int(*d as i64), Sym::int(*d as i64)];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == Sym::int(2 * *d as i64), || {
                "exceptional bigon area mismatch".into()
            })?;
        }
        PlanKind::TriangleAssembly { m } => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            ck.ensure(!node.children.is_empty(), || "assembly needs a base".into())?;
            ck.ensure(
                m.iter().all(|&x| x >= 0) && m.iter().sum::<i64>() % 2 == 0,
                || "assembly translation must be non-negative with even sum".into(),
            )?;
            let base = &node.children[0];
            ck.ensure(base.angle_out.len() == 3, || "assembly base must be a triangle".into())?;
            let want: Vec<Sym> = base
                .angle_out
                .iter()
                .zip(m)
                .map(|(a, &k)| a + &Sym::int(k))
                .collect();
            expect_angles(ck, &node.angle_out, &want)?;
            let child_sum = node
                .children
                .iter()
                .fold(Sym::int(0), |acc, c| &acc + &c.area_out);
            ck.ensure(node.area_out == child_sum, || {
                "assembly area differs from the sum of its pieces".into()
            })?;
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "assembly area differs from Gauss-Bonnet".into()
            })?;
            // Case split: a cone triangle appears exactly when one
            // coordinate of the translation dominates the other two, and
            // its apex flattens one base vertex.
            let cone: Vec<&PlanNode> = node.children[1..]
                .iter()
                .filter(|c| matches!(c.kind, PlanKind::ConeTriangle { .. }))
                .collect();
            let total: i64 = m.iter().sum();
            if let Some(i) = (0..3).find(|&i| 2 * m[i] > total) {
                ck.ensure(cone.len() == 1, || "dominant-coordinate assembly needs one cone triangle".into())?;
                if let PlanKind::ConeTriangle { d, alpha, .. } = &cone[0].kind {
                    ck.ensure(*d as i64 == (2 * m[i] - total) / 2, || {
                        "cone triangle degree mismatch".into()
                    })?;
                    let flattens = base.angle_out.iter().enumerate().any(|(k, a)| {
                        k != i && a.is_constant() && *alpha == &Rat::int(1) - a.constant_part()
                    });
                    ck.ensure(flattens, || {
                        "cone triangle apex does not flatten a base vertex".into()
                    })?;
                }
            } else {
                ck.ensure(cone.is_empty(), || "balanced assembly must not have a cone triangle".into())?;
            }
        }
        PlanKind::SumTriangle { eta } | PlanKind::DifferenceTriangle { eta } => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            ck.ensure(node.angle_out.len() == 3 && node.children.is_empty(), || {
                "near-degenerate triangle must be a 3-angle leaf".into()
            })?;
            let (a, b, c) = (&node.angle_out[0], &node.angle_out[1], &node.angle_out[2]);
            let merged = match &node.kind {
                PlanKind::SumTriangle { .. } => &(a + b) - &Sym::int(1),
                _ => &(a - b) - &Sym::int(1),
            };
            let want = &merged + &Sym::symbol(eta);
            ck.ensure(*c == want, || {
                format!("third angle {c} differs from {want}")
            })?;
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "near-degenerate triangle area mismatch".into()
            })?;
            let wide = node
                .constraints
                .iter()
                .any(|k| matches!(k, Constraint::WideAt { .. }));
            let bound = node
                .constraints
                .iter()
                .any(|k| matches!(k, Constraint::EtaBound { eta: e, .. } if e == eta));
            ck.ensure(wide && bound, || {
                "near-degenerate triangle missing width or eta constraints".into()
            })?;
            if matches!(node.kind, PlanKind::DifferenceTriangle { .. }) {
                ck.ensure(b.is_constant() && !b.constant_part().is_integer(), || {
                    format!("difference triangle second angle {b} must be non-integral")
                })?;
                let noted = node.constraints.iter().any(
                    |k| matches!(k, Constraint::NotInteger { value } if value == b),
                );
                ck.ensure(noted, || "difference triangle missing non-integrality note".into())?;
            }
        }
        PlanKind::ConvexQuad => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            let v = consts_or_err(&node.angle_out, "convex quad")?;
            ck.ensure(v.len() == 4 && node.children.is_empty(), || {
                "convex quad must be a 4-angle leaf".into()
            })?;
            let one = Rat::int(1);
            for t in &v {
                ck.ensure(t.is_positive() && t.cmp(&one) == Ordering::Less, || {
                    format!("convex quad angle {t} outside (0,1)")
                })?;
            }
            let gap = v
                .iter()
                .fold(Rat::int(0), |acc, t| &acc + &(&one - t));
            ck.ensure(gap.cmp(&Rat::int(2)) == Ordering::Less, || {
                "convex quad base outside the half cube".into()
            })?;
            let d = crate::planner::d1_odd_rat(&v);
            ck.ensure(d.cmp(&Rat::int(1)) == Ordering::Greater, || {
                "convex quad base not strictly holonomy-feasible".into()
            })?;
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "convex quad area mismatch".into()
            })?;
        }
        PlanKind::CatalogQuad { family, quad_relabel } => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            ck.ensure(quad_relabel.is_dihedral8(), || {
                "catalog relabeling must be dihedral".into()
            })?;
            ck.ensure(
                node.children.len() == 1 && node.children[0].kind == PlanKind::ConvexQuad,
                || "catalog quad needs a convex base".into(),
            )?;
            let fam = families()
                .into_iter()
                .find(|f| f.index == *family)
                .ok_or_else(|| PlanError::Validation(format!("unknown family {family}")))?;
            let want = quad_relabel.apply(&fam.apply(&node.children[0].angle_out));
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "catalog quad area mismatch".into()
            })?;
        }
        PlanKind::CenterQuad { seam } => {
            expect_unit(node, PlanUnit::Pi, ck)?;
            let want = vec![Sym::ratio(3, 2), Sym::ratio(1, 2), Sym::ratio(3, 2), Sym::ratio(1, 2)];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.children.len() == 2, || "center quad needs two bigons".into())?;
            for c in &node.children {
                ck.ensure(
                    matches!(&c.kind, PlanKind::OrdinaryBigon { alpha } if *alpha == Rat::ratio(1, 2)),
                    || "center quad children must be right-angle bigons".into(),
                )?;
            }
            ck.ensure(has_length_range(node, seam), || "center quad seam unconstrained".into())?;
            ck.ensure(node.area_out == Sym::int(2), || "center quad area mismatch".into())?;
        }
        PlanKind::Double => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            ck.ensure(node.children.len() == 1 && node.children[0].unit == PlanUnit::Pi, || {
                "double needs one polygon child".into()
            })?;
            expect_angles(ck, &node.angle_out, &node.children[0].angle_out)?;
            ck.ensure(
                node.area_out == node.children[0].area_out.scale(&Rat::int(2)),
                || "double must have twice the polygon area".into(),
            )?;
        }
        PlanKind::Relabel { perm } => {
            ck.ensure(node.children.len() == 1, || "relabel needs one child".into())?;
            let child = &node.children[0];
            ck.ensure(node.unit == child.unit, || "relabel changes units".into())?;
            ck.ensure(
                child.unit == PlanUnit::TwoPi || child.angle_out.len() == 3,
                || "polygon relabeling is only free for triangles".into(),
            )?;
            ck.ensure(perm.len() == child.angle_out.len(), || "relabel arity mismatch".into())?;
            let want = perm.apply(&child.angle_out);
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == child.area_out, || "relabel changes area".into())?;
        }
        PlanKind::SporadicA { a } => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            ck.ensure(
                a.is_positive() && a.cmp(&Rat::int(1)) == Ordering::Less,
                || format!("sporadic family parameter {a} outside (0,1)"),
            )?;
            let one = Sym::int(1);
            let big = &one + &Sym::rat(a.clone());
            let small = &one - &Sym::rat(a.clone());
            let want = vec![big, small.clone(), small.clone(), small];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.children.len() == 1, || "sporadic sphere needs its cover".into())?;
            expect_angles(ck, &node.children[0].angle_out, &node.angle_out)?;
            ck.ensure(node.area_out == node.children[0].area_out, || {
                "sporadic sphere area mismatch".into()
            })?;
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "sporadic sphere Gauss-Bonnet mismatch".into()
            })?;
        }
        PlanKind::SporadicB { b } => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            ck.ensure(
                b.is_positive() && b.cmp(&Rat::ratio(1, 2)) == Ordering::Less,
                || format!("sporadic family parameter {b} outside (0,1/2)"),
            )?;
            let big = &Sym::int(2) + &Sym::rat(b.clone());
            let small = Sym::rat(b.clone());
            let want = vec![big, small.clone(), small.clone(), small];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.children.len() == 1, || "sporadic sphere needs its cover".into())?;
            expect_angles(ck, &node.children[0].angle_out, &node.angle_out)?;
            ck.ensure(node.area_out == node.gauss_bonnet_area(), || {
                "sporadic sphere Gauss-Bonnet mismatch".into()
            })?;
        }
        PlanKind::SporadicC { seam } => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            let want = vec![Sym::ratio(5, 2), Sym::ratio(1, 2), Sym::ratio(1, 2), Sym::ratio(1, 2)];
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == Sym::int(4), || "hemisphere gluing area mismatch".into())?;
            ck.ensure(has_length_range(node, seam), || "hemisphere seam unconstrained".into())?;
        }
        PlanKind::CyclicCover { degree, branch } => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            ck.ensure(*degree >= 2 && node.children.len() == 1, || {
                "cyclic cover needs degree >= 2 and one child".into()
            })?;
            let child = &node.children[0];
            let (b1, b2) = *branch;
            ck.ensure(b1 < b2 && b2 < child.angle_out.len(), || {
                "branch indices out of range".into()
            })?;
            let deg = Rat::int(*degree as i64);
            let mut want = Vec::new();
            for (k, a) in child.angle_out.iter().enumerate() {
                if k == b1 || k == b2 {
                    let lifted = a.scale(&deg);
                    if lifted != Sym::int(1) {
                        want.push(lifted);
                    }
                } else {
                    for _ in 0..*degree {
                        want.push(a.clone());
                    }
                }
            }
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(node.area_out == child.area_out.scale(&deg), || {
                "cover area must be degree times the base".into()
            })?;
        }
        PlanKind::GlueSlitCopies { path, copies } => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            ck.ensure(*copies >= 1 && path.0 != path.1 && node.children.len() == 1, || {
                "slit gluing needs copies >= 1 along a proper path".into()
            })?;
            let child = &node.children[0];
            let mut want = child.angle_out.clone();
            want[path.0] = &want[path.0] + &Sym::int(*copies as i64);
            want[path.1] = &want[path.1] + &Sym::int(*copies as i64);
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(
                node.area_out == &child.area_out + &Sym::int(4 * *copies as i64),
                || "slit gluing adds 4 pi per copy".into(),
            )?;
        }
        PlanKind::GlueConeTrianglePath { path, d } => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            ck.ensure(*d >= 1 && path.0 != path.1 && node.children.len() == 1, || {
                "cone-triangle gluing needs d >= 1 along a proper path".into()
            })?;
            let child = &node.children[0];
            let mut want = child.angle_out.clone();
            want[path.0] = &want[path.0] + &Sym::int(2 * *d as i64);
            expect_angles(ck, &node.angle_out, &want)?;
            ck.ensure(
                node.area_out == &child.area_out + &Sym::int(4 * *d as i64),
                || "cone-triangle gluing adds 4 pi per degree".into(),
            )?;
            // The far endpoint keeps its angle, which must be below 1.
            let far = &child.angle_out[path.1];
            ck.ensure(
                far.is_constant() && far.constant_part().cmp(&Rat::int(1)) == Ordering::Less,
                || format!("gluing endpoint angle {far} must be below 1"),
            )?;
            let noted = node.constraints.iter().any(
                |c| matches!(c, Constraint::LessThanOne { value } if value == far),
            );
            ck.ensure(noted, || "missing endpoint-angle constraint".into())?;
            // The child must expose a short geodesic between the endpoints.
            let available = child.constraints.iter().any(|c| {
                matches!(c, Constraint::ShortGeodesic { i, j, .. } if (*i, *j) == *path)
            });
            ck.ensure(available, || {
                format!("child exposes no short geodesic between x{} and x{}", path.0, path.1)
            })?;
        }
        PlanKind::Split { i, j, sign, eta } => {
            expect_unit(node, PlanUnit::TwoPi, ck)?;
            ck.ensure(node.children.len() == 2, || "split needs child and triangle double".into())?;
            let child = &node.children[0];
            let dt = &node.children[1];
            ck.ensure(dt.kind == PlanKind::Double && dt.children.len() == 1, || {
                "split gluing partner must be a triangle double".into()
            })?;
            let tri = &dt.children[0];
            let tri_eta = match (&tri.kind, sign) {
                (PlanKind::SumTriangle { eta: e }, MergeSign::Plus) => e,
                (PlanKind::DifferenceTriangle { eta: e }, MergeSign::Minus) => e,
                _ => {
                    return Err(PlanError::Validation(
                        "split sign does not match the glued triangle kind".into(),
                    ))
                }
            };
            ck.ensure(tri_eta == eta, || "split eta symbol mismatch".into())?;
            let a = &dt.angle_out[0];
            let b = &dt.angle_out[1];
            let third = &dt.angle_out[2];
            let merged = third - &Sym::symbol(eta);
            ck.ensure(child.angle_out.last() == Some(&merged), || {
                format!(
                    "child last angle {:?} is not the merged value {merged}",
                    child.angle_out.last().map(|s| s.to_string())
                )
            })?;
            let n = node.angle_out.len();
            ck.ensure(child.angle_out.len() == n - 1, || "split arity mismatch".into())?;
            let mut want = Vec::with_capacity(n);
            let mut survivor = child.angle_out[..n - 2].iter();
            for k in 0..n {
                if k == *i {
                    want.push(a.clone());
                } else if k == *j {
                    want.push(b.clone());
                } else {
                    want.push(survivor.next().expect("arity checked").clone());
                }
            }
            expect_angles(ck, &node.angle_out, &want)?;
            let eta_sym = Sym::symbol(eta);
            let join_angle = &merged + &eta_sym;
            let want_area = &(&(&child.area_out + &eta_sym.scale(&Rat::int(2))) + &dt.area_out)
                - &join_angle.scale(&Rat::int(4));
            ck.ensure(node.area_out == want_area, || {
                format!("split area {} differs from recomputed {}", node.area_out, want_area)
            })?;
            let luo = node
                .constraints
                .iter()
                .any(|c| matches!(c, Constraint::DeformabilityAssumption));
            ck.ensure(luo, || "split missing the deformability assumption tag".into())?;
        }
    }
    Ok(())
}
