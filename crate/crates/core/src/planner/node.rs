//! Plan tree nodes and their exact bookkeeping rules.
//!
//! Every node carries the angle vector it produces (`angle_out`, in π units
//! for polygon pieces and 2π units for closed spheres), its area in units
//! of π, and the symbolic side conditions of the construction it stands
//! for. `angle_out` and `area_out` are recomputable bottom-up from the
//! children; the validator redoes that computation and diffs.

use crate::merging::MergeSign;
use crate::perm::Perm;
use crate::planner::sym::{sym_sum, Rat, Sym};
use serde::{Deserialize, Serialize};

/// Construction rule the node stands for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum PlanKind {
    // -- polygon pieces, angles in π units --
    /// Triangle with all angles below π; the complementary angles satisfy
    /// the strict triangle inequality and the angle sum exceeds 1.
    ConvexTriangle,
    /// Completion of the complement of a convex triangle in a hemisphere;
    /// child is the convex base.
    ComplementTriangle,
    /// Triangle with angles (2dπ, απ, (1-α)π) and two equal sides of
    /// length `length`, built from a branched cover of a hemisphere.
    ConeTriangle { d: u32, length: String, alpha: Rat },
    /// Two equal angles απ with vertices at distance π.
    OrdinaryBigon { alpha: Rat },
    /// Both angles dπ (integral), side lengths driven by `length`.
    ExceptionalBigon { d: u32, length: String },
    /// Base triangle translated by an even integer vector `m`: a cone
    /// triangle glued on a side (when m_1 exceeds m_2 + m_3) and/or
    /// exceptional bigons glued on the sides.
    TriangleAssembly { m: [i64; 3] },
    /// Triangle with angles π(a, b, a+b-1+eta), close to an ordinary
    /// bigon, wide at its third vertex.
    SumTriangle { eta: String },
    /// Triangle with angles π(a, b, a-b-1+eta), close to a double bigon;
    /// requires the second angle non-integral.
    DifferenceTriangle { eta: String },
    /// Convex quadrilateral; angles interior to the half truncated cube at
    /// the all-ones vertex.
    ConvexQuad,
    /// One of the ten catalog families applied to a convex base; the
    /// recorded relabeling is dihedral (free for quadrilaterals).
    CatalogQuad { family: u8, quad_relabel: Perm },
    /// The quadrilateral with angles π(3/2, 1/2, 3/2, 1/2) assembled from
    /// two right-angle bigons.
    CenterQuad { seam: String },

    // -- closed spheres, angles in 2π units --
    /// Double of the child polygon across its boundary.
    Double,
    /// Free relabeling of the cone points of a closed sphere (or of a
    /// triangle, where any vertex relabeling is realizable).
    Relabel { perm: Perm },
    /// Sphere with angles 2π(1+a, 1-a, 1-a, 1-a) via a degree-3 cyclic
    /// cover of a triangle double.
    SporadicA { a: Rat },
    /// Sphere with angles 2π(2+b, b, b, b) via a degree-3 cyclic cover.
    SporadicB { b: Rat },
    /// The sphere with angles 2π(5/2, 1/2, 1/2, 1/2) glued from two
    /// hemispheres with boundary identifications.
    SporadicC { seam: String },
    /// Cyclic cover of the child sphere branched at two cone points;
    /// branch images whose angle becomes exactly 2π are smooth and
    /// dropped.
    CyclicCover { degree: u32, branch: (usize, usize) },
    /// Glue `copies` copies of the sphere slit along the developed path
    /// joining cone points `path`; adds `copies` to both endpoint angles.
    GlueSlitCopies { path: (usize, usize), copies: u32 },
    /// Glue the double of a cone triangle along a short geodesic from
    /// `path.0` to `path.1`; adds `2d` to the first endpoint angle only
    /// and requires the second endpoint angle below 1.
    GlueConeTrianglePath { path: (usize, usize), d: u32 },
    /// Split one cone point of the child sphere into two by excising a
    /// neighbourhood and gluing in a near-degenerate triangle double; the
    /// inverse of the algebraic merge at `(i, j)`.
    Split {
        i: usize,
        j: usize,
        sign: MergeSign,
        eta: String,
    },
}

/// Symbolic side conditions attached to a node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// Named length symbol lies in the open interval `(lo, hi)` (π units).
    LengthRange { symbol: String, lo: Rat, hi: Rat },
    /// `|eta| < eps / 2` for the named width budget.
    EtaBound { eta: String, eps: String },
    /// The piece is π(1-eps)-wide at the named vertex.
    WideAt { vertex: String, eps: String },
    /// The child metric is deformed within a small angle neighbourhood to
    /// absorb the eta shift; recorded as an assumption on deformability of
    /// non-coaxial metrics with non-integral angles.
    DeformabilityAssumption,
    /// The value must not be an integer (checked numerically).
    NotInteger { value: Sym },
    /// The value must be strictly below 1 (checked numerically).
    LessThanOne { value: Sym },
    /// A smooth geodesic joins cone points `i` and `j` with length symbol
    /// constrained to `(0, 1)` in π units (hence not a multiple of π).
    ShortGeodesic { i: usize, j: usize, symbol: String },
    /// Structural assumption with no checkable symbolic content.
    Structural { text: String },
}

/// How a node's non-coaxiality is certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonCoaxiality {
    /// Cone points `i` and `j` have non-integral angles and are joined by
    /// a smooth geodesic of length not a multiple of π.
    Certificate { i: usize, j: usize, symbol: String },
    /// Holonomy contains the holonomy of the given child, which is
    /// non-coaxial.
    Inherited { child: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanUnit {
    /// Polygon piece; angles in units of π.
    Pi,
    /// Closed sphere; angles in units of 2π.
    TwoPi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanNode {
    pub kind: PlanKind,
    pub unit: PlanUnit,
    pub angle_out: Vec<Sym>,
    /// Area in units of π.
    pub area_out: Sym,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noncoaxiality: Option<NonCoaxiality>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<PlanNode>,
}

impl PlanNode {
    pub fn leaf(kind: PlanKind, unit: PlanUnit, angles: Vec<Sym>, area: Sym) -> Self {
        PlanNode {
            kind,
            unit,
            angle_out: angles,
            area_out: area,
            constraints: Vec::new(),
            noncoaxiality: None,
            children: Vec::new(),
        }
    }

    pub fn with_constraints(mut self, cs: Vec<Constraint>) -> Self {
        self.constraints.extend(cs);
        self
    }

    pub fn with_noncoaxiality(mut self, nc: NonCoaxiality) -> Self {
        self.noncoaxiality = Some(nc);
        self
    }

    /// Gauss–Bonnet area (π units) for this node's angle data: polygons
    /// contribute `sum - (n - 2)`, closed spheres `2 (sum - n + 2)`.
    pub fn gauss_bonnet_area(&self) -> Sym {
        let n = self.angle_out.len() as i64;
        let sum = sym_sum(&self.angle_out);
        match self.unit {
            PlanUnit::Pi => &sum - &Sym::int(n - 2),
            PlanUnit::TwoPi => (&sum - &Sym::int(n - 2)).scale(&Rat::int(2)),
        }
    }

    /// Number of nodes in the subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PlanNode::size).sum::<usize>()
    }

    /// Human-readable tree rendering, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let indent = "  ".repeat(depth);
        let angles: Vec<String> = self.angle_out.iter().map(|a| a.to_string()).collect();
        let unit = match self.unit {
            PlanUnit::Pi => "pi",
            PlanUnit::TwoPi => "2pi",
        };
        let _ = writeln!(
            out,
            "{indent}{} [{unit}] angles ({}) area {}",
            self.kind_label(),
            angles.join(", "),
            self.area_out
        );
        for c in &self.constraints {
            let _ = writeln!(out, "{indent}  | {}", constraint_label(c));
        }
        for child in &self.children {
            child.render_into(out, depth + 1);
        }
    }

    fn kind_label(&self) -> String {
        match &self.kind {
            PlanKind::ConvexTriangle => "convex-triangle".into(),
            PlanKind::ComplementTriangle => "complement-triangle".into(),
            PlanKind::ConeTriangle { d, length, alpha } => {
                format!("cone-triangle(d={d}, len={length}, alpha={alpha})")
            }
            PlanKind::OrdinaryBigon { alpha } => format!("ordinary-bigon(alpha={alpha})"),
            PlanKind::ExceptionalBigon { d, length } => {
                format!("exceptional-bigon(d={d}, len={length})")
            }
            PlanKind::TriangleAssembly { m } => {
                format!("triangle-assembly(m=({}, {}, {}))", m[0], m[1], m[2])
            }
            PlanKind::SumTriangle { eta } => format!("sum-triangle(eta={eta})"),
            PlanKind::DifferenceTriangle { eta } => format!("difference-triangle(eta={eta})"),
            PlanKind::ConvexQuad => "convex-quad".into(),
            PlanKind::CatalogQuad { family, quad_relabel } => {
                format!("catalog-quad(family={family}, relabel={:?})", quad_relabel.0)
            }
            PlanKind::CenterQuad { seam } => format!("center-quad(seam={seam})"),
            PlanKind::Double => "double".into(),
            PlanKind::Relabel { perm } => format!("relabel({:?})", perm.0),
            PlanKind::SporadicA { a } => format!("sporadic-a(a={a})"),
            PlanKind::SporadicB { b } => format!("sporadic-b(b={b})"),
            PlanKind::SporadicC { seam } => format!("sporadic-c(seam={seam})"),
            PlanKind::CyclicCover { degree, branch } => {
                format!("cyclic-cover(degree={degree}, branch=({}, {}))", branch.0, branch.1)
            }
            PlanKind::GlueSlitCopies { path, copies } => {
                format!("glue-slit-copies(path=({}, {}), copies={copies})", path.0, path.1)
            }
            PlanKind::GlueConeTrianglePath { path, d } => {
                format!("glue-cone-triangle-path(path=({}, {}), d={d})", path.0, path.1)
            }
            PlanKind::Split { i, j, sign, eta } => {
                let s = match sign {
                    MergeSign::Plus => "+",
                    MergeSign::Minus => "-",
                };
                format!("split({i} {s} {j}, eta={eta})")
            }
        }
    }
}

fn constraint_label(c: &Constraint) -> String {
    match c {
        Constraint::LengthRange { symbol, lo, hi } => format!("{lo} < {symbol} < {hi} (pi units)"),
        Constraint::EtaBound { eta, eps } => format!("|{eta}| < {eps}/2"),
        Constraint::WideAt { vertex, eps } => format!("pi(1-{eps})-wide at {vertex}"),
        Constraint::DeformabilityAssumption => "deformability assumption on the child metric".into(),
        Constraint::NotInteger { value } => format!("{value} not an integer"),
        Constraint::LessThanOne { value } => format!("{value} < 1"),
        Constraint::ShortGeodesic { i, j, symbol } => {
            format!("smooth geodesic x{i}-x{j} of length {symbol} in (0, pi)")
        }
        Constraint::Structural { text } => text.clone(),
    }
}
