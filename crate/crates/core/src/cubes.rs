//! Unit integer cubes truncated by the holonomy constraint.
//!
//! Inside a unit cube with integer vertices, the holonomy region is the
//! convex hull of the cube's even vertices: the cube with one simplex cut
//! off at every odd vertex. The module locates the cube containing a defect
//! vector, projects points radially to the boundary, classifies the binding
//! constraint (simplex cut vs. cube face), runs the coverage checks behind
//! the quadrilateral catalog, and builds interior connectivity paths.

use crate::angles::{d1_odd_lattice, AngleVector, DefectVector};
use crate::perm::Perm;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, thiserror::Error)]
pub enum CubeError {
    #[error("coordinate {index} is integral; the containing cube is ambiguous")]
    AmbiguousCube { index: usize },
    #[error("point coincides with the cube center")]
    CenterPoint,
    #[error("point is outside the truncated cube interior")]
    OutsideCube,
    #[error("dimension {n} too small; need at least {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("center coordinate {index} is not half-integral")]
    BadCenter { index: usize },
    #[error("vectors must have equal length")]
    LengthMismatch,
    #[error("endpoint does not strictly satisfy the holonomy constraint")]
    HolonomyViolated,
    #[error(transparent)]
    Angle(#[from] crate::angles::AngleError),
}

/// A unit integer cube intersected with the holonomy region; equivalently,
/// the convex hull of the cube's even vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedCube {
    /// Half-integral center.
    pub center: Vec<Scalar>,
    pub n: usize,
}

impl TruncatedCube {
    pub fn new(center: Vec<Scalar>, tol: f64) -> Result<Self, CubeError> {
        let n = center.len();
        if n < 2 {
            return Err(CubeError::DimensionTooSmall { n, min: 2 });
        }
        for (index, c) in center.iter().enumerate() {
            if !c.is_half_integral(tol) {
                return Err(CubeError::BadCenter { index });
            }
        }
        Ok(TruncatedCube { center, n })
    }

    /// Is `x` inside the closed cube `|x_i - c_i| <= 1/2`?
    pub fn in_cube(&self, x: &[Scalar]) -> bool {
        let half = Scalar::ratio(1, 2);
        self.center
            .iter()
            .zip(x)
            .all(|(c, xi)| (xi - c).abs().cmp_val(&half) != Ordering::Greater)
    }

    /// Is `x` strictly inside the open cube?
    pub fn in_open_cube(&self, x: &[Scalar]) -> bool {
        let half = Scalar::ratio(1, 2);
        self.center
            .iter()
            .zip(x)
            .all(|(c, xi)| (xi - c).abs().cmp_val(&half) == Ordering::Less)
    }

    /// Minimum over the cube's odd vertices m of the linear form
    /// `sum_j s_j (x_j - m_j)` with `s_j = sign(c_j - m_j)`; for `x` in the
    /// cube this equals the ℓ1 distance from `x` to the odd lattice.
    ///
    /// Rather than enumerating all `2^(n-1)` odd vertices, pick per
    /// coordinate the vertex side closest to `x_j` and repair the parity
    /// with the cheapest single flip (flip cost `1 - 2 |x_j - m_j|`).
    pub fn min_odd_vertex_value(&self, x: &[Scalar]) -> (Scalar, Vec<i64>) {
        let half = Scalar::ratio(1, 2);
        let mut vertex: Vec<i64> = Vec::with_capacity(self.n);
        let mut cost = Scalar::zero();
        let mut residuals: Vec<Scalar> = Vec::with_capacity(self.n);
        for (c, xi) in self.center.iter().zip(x) {
            let lo = (c - &half).round_ties_even_i64();
            let hi = lo + 1;
            let d_lo = (xi - &Scalar::from_int(lo)).abs();
            let d_hi = (xi - &Scalar::from_int(hi)).abs();
            let (m, d) = if d_lo.cmp_val(&d_hi) != Ordering::Greater {
                (lo, d_lo)
            } else {
                (hi, d_hi)
            };
            cost = &cost + &d;
            vertex.push(m);
            residuals.push(d);
        }
        if vertex.iter().sum::<i64>().rem_euclid(2) == 0 {
            let mut best = 0usize;
            let mut best_cost = &Scalar::one() - &(&Scalar::from_int(2) * &residuals[0]);
            for (j, f) in residuals.iter().enumerate().skip(1) {
                let c = &Scalar::one() - &(&Scalar::from_int(2) * f);
                if c.cmp_val(&best_cost) == Ordering::Less {
                    best = j;
                    best_cost = c;
                }
            }
            cost = &cost + &best_cost;
            // Move the flipped coordinate to the other side of its slab.
            let c = &self.center[best];
            let lo = (c - &half).round_ties_even_i64();
            let hi = lo + 1;
            vertex[best] = if vertex[best] == lo { hi } else { lo };
        }
        (cost, vertex)
    }

    /// Membership in the truncated cube: inside the cube and at ℓ1
    /// distance at least 1 from every odd vertex.
    pub fn contains(&self, x: &[Scalar]) -> bool {
        if x.len() != self.n || !self.in_cube(x) {
            return false;
        }
        let (v, _) = self.min_odd_vertex_value(x);
        v.cmp_val(&Scalar::one()) != Ordering::Less
    }

    /// Strict interior of the truncated cube.
    pub fn contains_interior(&self, x: &[Scalar]) -> bool {
        if x.len() != self.n || !self.in_open_cube(x) {
            return false;
        }
        let (v, _) = self.min_odd_vertex_value(x);
        v.cmp_val(&Scalar::one()) == Ordering::Greater
    }

    /// All even vertices (used by tests and small-n callers; there are
    /// `2^(n-1)` of them).
    pub fn even_vertices(&self) -> Vec<Vec<i64>> {
        let half = Scalar::ratio(1, 2);
        let lows: Vec<i64> = self
            .center
            .iter()
            .map(|c| (c - &half).round_ties_even_i64())
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..(1 << self.n) {
            let v: Vec<i64> = (0..self.n)
                .map(|i| lows[i] + ((mask >> i) & 1) as i64)
                .collect();
            if v.iter().sum::<i64>().rem_euclid(2) == 0 {
                out.push(v);
            }
        }
        out
    }
}

/// Half of a truncated cube: the points within ℓ1 distance 2 of one even
/// vertex. Two opposite halves tile the truncated cube, overlapping along
/// one face.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfTruncatedCube {
    pub cube: TruncatedCube,
    /// An even vertex of the underlying unit cube.
    pub vertex: Vec<i64>,
}

impl HalfTruncatedCube {
    pub fn new(cube: TruncatedCube, vertex: Vec<i64>) -> Result<Self, CubeError> {
        if vertex.len() != cube.n {
            return Err(CubeError::LengthMismatch);
        }
        let half = Scalar::ratio(1, 2);
        let on_cube = cube
            .center
            .iter()
            .zip(&vertex)
            .all(|(c, &m)| (c - &Scalar::from_int(m)).abs() == half);
        let even = vertex.iter().sum::<i64>().rem_euclid(2) == 0;
        if !on_cube || !even {
            return Err(CubeError::OutsideCube);
        }
        Ok(HalfTruncatedCube { cube, vertex })
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        if !self.cube.contains(x) {
            return false;
        }
        let d = x
            .iter()
            .zip(&self.vertex)
            .fold(Scalar::zero(), |acc, (xi, &m)| {
                &acc + &(xi - &Scalar::from_int(m)).abs()
            });
        d.cmp_val(&Scalar::from_int(2)) != Ordering::Greater
    }

    pub fn contains_interior(&self, x: &[Scalar]) -> bool {
        if !self.cube.contains_interior(x) {
            return false;
        }
        let d = x
            .iter()
            .zip(&self.vertex)
            .fold(Scalar::zero(), |acc, (xi, &m)| {
                &acc + &(xi - &Scalar::from_int(m)).abs()
            });
        d.cmp_val(&Scalar::from_int(2)) == Ordering::Less
    }
}

/// Locate the unit cube whose open interior contains `delta`:
/// `c_i = floor(delta_i) + 1/2`. Integral coordinates are rejected because
/// the cube is then ambiguous (the caller should use integral merging
/// instead).
pub fn containing_cube(delta: &DefectVector, tol: f64) -> Result<TruncatedCube, CubeError> {
    for (index, e) in delta.entries.iter().enumerate() {
        if e.is_integer(tol) {
            return Err(CubeError::AmbiguousCube { index });
        }
    }
    let half = Scalar::ratio(1, 2);
    let center: Vec<Scalar> = delta
        .entries
        .iter()
        .map(|e| &Scalar::from_int(e.floor_i64()) + &half)
        .collect();
    TruncatedCube::new(center, tol)
}

/// Which constraint the radial projection hits first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum BindingConstraint {
    /// A simplex cut, identified by its odd vertex.
    SimplexCut { vertex: Vec<i64> },
    /// A cube face `x_i = integer`.
    Face { index: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundaryProjection {
    /// The projected point on the boundary of the truncated cube.
    pub point: Vec<Scalar>,
    /// Scale factor along the ray from the center (at least 1).
    pub t: Scalar,
    pub binding: BindingConstraint,
}

/// Project `delta` from the cube center radially onto the boundary of the
/// truncated cube: the smallest `t >= 1` with `c + t (delta - c)` making a
/// face or simplex-cut constraint tight.
///
/// Inside the cube each odd vertex contributes one linear inequality with
/// fixed signs, so the projection is a pure ray–hyperplane computation. A
/// tie between a face and a cut reports the cut (the point then lies on a
/// simplicial face).
pub fn project_to_boundary(
    delta: &DefectVector,
    cube: &TruncatedCube,
    tol: f64,
) -> Result<BoundaryProjection, CubeError> {
    let n = cube.n;
    if n < 3 {
        return Err(CubeError::DimensionTooSmall { n, min: 3 });
    }
    if delta.len() != n {
        return Err(CubeError::LengthMismatch);
    }
    let dir: Vec<Scalar> = delta
        .entries
        .iter()
        .zip(&cube.center)
        .map(|(e, c)| e - c)
        .collect();
    if dir.iter().all(|d| d.is_zero()) {
        return Err(CubeError::CenterPoint);
    }
    if !cube.contains_interior(&delta.entries) {
        return Err(CubeError::OutsideCube);
    }
    let half = Scalar::ratio(1, 2);

    // Earliest face hit: t = (1/2) / |dir_i|.
    let mut face: Option<(Scalar, usize)> = None;
    for (i, d) in dir.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let t = &half / &d.abs();
        if face.as_ref().is_none_or(|(bt, _)| t.cmp_val(bt) == Ordering::Less) {
            face = Some((t, i));
        }
    }
    let (face_t, face_i) = face.expect("nonzero direction");

    // Earliest simplex cut: over odd vertices m with signs s_j, the value
    // n/2 + t * sum_j s_j dir_j reaches 1 fastest for the vertex maximizing
    // sum_j (-s_j) dir_j; pick the best side per coordinate and repair the
    // vertex parity with the cheapest flip (penalty 2 |dir_j|).
    let lows: Vec<i64> = cube
        .center
        .iter()
        .map(|c| (c - &half).round_ties_even_i64())
        .collect();
    let mut vertex: Vec<i64> = Vec::with_capacity(n);
    let mut slope = Scalar::zero(); // sum_j (-s_j) dir_j, to maximize
    for (j, d) in dir.iter().enumerate() {
        // -s_j = +1 picks m_j = lows[j] + 1 (above center), contributing +d_j.
        if d.is_negative() {
            vertex.push(lows[j]);
            slope = &slope + &d.abs();
        } else {
            vertex.push(lows[j] + 1);
            slope = &slope + d;
        }
    }
    if vertex.iter().sum::<i64>().rem_euclid(2) == 0 {
        let mut best: Option<(Scalar, usize)> = None;
        for (j, d) in dir.iter().enumerate() {
            let penalty = &Scalar::from_int(2) * &d.abs();
            if best.as_ref().is_none_or(|(bp, _)| penalty.cmp_val(bp) == Ordering::Less) {
                best = Some((penalty, j));
            }
        }
        let (penalty, j) = best.expect("n >= 3");
        slope = &slope - &penalty;
        vertex[j] = if vertex[j] == lows[j] { lows[j] + 1 } else { lows[j] };
    }
    let cut = if slope.is_positive() {
        let num = &Scalar::ratio(n as i64, 2) - &Scalar::one();
        Some(&num / &slope)
    } else {
        None
    };

    let (t, binding) = match cut {
        Some(ct) if ct.cmp_val(&face_t) != Ordering::Greater => {
            (ct, BindingConstraint::SimplexCut { vertex })
        }
        _ => (face_t, BindingConstraint::Face { index: face_i }),
    };
    debug_assert!(t.cmp_val(&Scalar::one()) != Ordering::Less || !t.is_exact() || tol > 0.0);
    let point: Vec<Scalar> = cube
        .center
        .iter()
        .zip(&dir)
        .map(|(c, d)| c + &(&t * d))
        .collect();
    Ok(BoundaryProjection { point, t, binding })
}

/// Classification of a point of a truncated cube by where its radial
/// boundary projection lands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PointClassification {
    Center,
    /// The projection lands on a simplex face; the odd vertex is a nearest
    /// odd lattice point to the original point.
    Simplicial {
        projection: Vec<Scalar>,
        witness: Vec<i64>,
    },
    /// The projection lands on a cube face, so some coordinate of it is
    /// integral and its distance to the odd lattice exceeds 1.
    NonSimplicial {
        projection: Vec<Scalar>,
        integral_index: usize,
    },
}

/// Classify `delta` inside its containing cube.
pub fn classify_point(delta: &DefectVector, tol: f64) -> Result<PointClassification, CubeError> {
    let cube = containing_cube(delta, tol)?;
    let dir_zero = delta
        .entries
        .iter()
        .zip(&cube.center)
        .all(|(e, c)| (e - c).is_zero());
    if dir_zero {
        return Ok(PointClassification::Center);
    }
    let proj = project_to_boundary(delta, &cube, tol)?;
    Ok(match proj.binding {
        BindingConstraint::SimplexCut { vertex } => PointClassification::Simplicial {
            projection: proj.point,
            witness: vertex,
        },
        BindingConstraint::Face { index } => PointClassification::NonSimplicial {
            projection: proj.point,
            integral_index: index,
        },
    })
}

/// Which permutations may be applied to the target during a coverage check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermutationGroup {
    /// Dihedral relabelings of a quadrilateral's cyclically ordered corners.
    D8,
    /// Arbitrary relabelings (free for closed spheres).
    S4,
}

impl PermutationGroup {
    pub fn elements(&self) -> Vec<Perm> {
        match self {
            PermutationGroup::D8 => Perm::dihedral8(),
            PermutationGroup::S4 => Perm::all(4),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverageResult {
    pub covered: bool,
    /// Witness vertex and the permutation applied to the target, when
    /// covered.
    pub witness: Option<(Vec<i64>, Perm)>,
}

/// The six even vertices covering the one-large-angle cube
/// (center `(3/2, 1/2, 1/2, 1/2)`).
pub const COVER_ONE_LARGE: [[i64; 4]; 6] = [
    [1, 0, 1, 0],
    [1, 1, 0, 0],
    [1, 0, 0, 1],
    [2, 0, 1, 1],
    [2, 1, 0, 1],
    [2, 1, 1, 0],
];

/// The eight even vertices of the two-large-angles cube
/// (center `(3/2, 3/2, 1/2, 1/2)`).
pub const COVER_TWO_LARGE: [[i64; 4]; 8] = [
    [2, 2, 1, 1],
    [1, 1, 0, 0],
    [1, 1, 1, 1],
    [2, 2, 0, 0],
    [2, 1, 0, 1],
    [2, 1, 1, 0],
    [1, 2, 0, 1],
    [1, 2, 1, 0],
];

/// The seven even vertices of the immersed-quadrilateral cube
/// (center `(5/2, 1/2, 1/2, 1/2)`).
pub const COVER_IMMERSED: [[i64; 4]; 7] = [
    [3, 1, 1, 1],
    [2, 1, 1, 0],
    [2, 1, 0, 1],
    [2, 0, 1, 1],
    [3, 1, 0, 0],
    [3, 0, 1, 0],
    [3, 0, 0, 1],
];

/// Does some permuted copy of `target` lie within ℓ1 distance strictly
/// less than 2 of a listed even vertex? "Covered" uses the strict
/// inequality: coverage at distance exactly 2 is left to the sporadic
/// constructions.
///
/// Only permutations placing the target inside the (closed) truncated cube
/// are considered; if none does, the target is outside the cube.
pub fn coverage_check(
    target: &AngleVector,
    center: &[Scalar],
    vertex_list: &[Vec<i64>],
    group: PermutationGroup,
    tol: f64,
) -> Result<CoverageResult, CubeError> {
    if target.len() != 4 || center.len() != 4 {
        return Err(CubeError::LengthMismatch);
    }
    let cube = TruncatedCube::new(center.to_vec(), tol)?;
    let two = Scalar::from_int(2);
    let mut in_cube_somewhere = false;
    for perm in group.elements() {
        let permuted = perm.apply(&target.entries);
        if !cube.contains(&permuted) {
            continue;
        }
        in_cube_somewhere = true;
        for v in vertex_list {
            let d = permuted
                .iter()
                .zip(v)
                .fold(Scalar::zero(), |acc, (x, &m)| {
                    &acc + &(x - &Scalar::from_int(m)).abs()
                });
            if d.cmp_val(&two) == Ordering::Less {
                return Ok(CoverageResult {
                    covered: true,
                    witness: Some((v.clone(), perm)),
                });
            }
        }
    }
    if !in_cube_somewhere {
        return Err(CubeError::OutsideCube);
    }
    Ok(CoverageResult {
        covered: false,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathSegment {
    /// Indices into `breakpoints` of the segment endpoints.
    pub from: usize,
    pub to: usize,
    /// Minimum sampled holonomy distance along the segment.
    pub min_holonomy_distance: Scalar,
    /// Does every sampled point satisfy the positivity constraints?
    pub positivity_ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InteriorPath {
    pub breakpoints: Vec<DefectVector>,
    pub segments: Vec<PathSegment>,
}

const SAMPLES_PER_SEGMENT: i64 = 64;

/// Piecewise-linear path from `a` to `b` through cube centers whose every
/// breakpoint and sample strictly satisfies the holonomy constraint.
///
/// Route: `a` → center of its cube → unit steps through the lattice of
/// cube centers (a shared-face interior point inserted between adjacent
/// centers) → center of `b`'s cube → `b`. Requires dimension at least 4;
/// in dimension 3 the strict holonomy region is disconnected. Positivity is
/// not guaranteed along the way; segments that violate it are reported.
pub fn interior_path(a: &DefectVector, b: &DefectVector, tol: f64) -> Result<InteriorPath, CubeError> {
    let n = a.len();
    if n != b.len() {
        return Err(CubeError::LengthMismatch);
    }
    if n < 4 {
        return Err(CubeError::DimensionTooSmall { n, min: 4 });
    }
    for endpoint in [a, b] {
        let (d, _) = d1_odd_lattice(endpoint)?;
        let strict = if d.is_exact() {
            d.cmp_val(&Scalar::one()) == Ordering::Greater
        } else {
            d.to_f64() > 1.0 - tol
        };
        if !strict {
            return Err(CubeError::HolonomyViolated);
        }
    }
    if a == b {
        return Ok(InteriorPath {
            breakpoints: vec![a.clone()],
            segments: vec![],
        });
    }

    let cube_a = containing_cube(a, tol)?;
    let cube_b = containing_cube(b, tol)?;
    let mut breakpoints: Vec<Vec<Scalar>> = vec![a.entries.clone()];
    if cube_a.center != breakpoints[0] {
        breakpoints.push(cube_a.center.clone());
    }
    // Walk the centers one coordinate at a time, inserting the midpoint of
    // each pair of adjacent centers (an interior point of the shared face).
    let mut cur = cube_a.center.clone();
    let half = Scalar::ratio(1, 2);
    for i in 0..n {
        loop {
            let diff = &cube_b.center[i] - &cur[i];
            if diff.is_zero() {
                break;
            }
            let step = if diff.is_positive() {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            };
            let mut mid = cur.clone();
            mid[i] = &cur[i] + &(&half * &step);
            let mut next = cur.clone();
            next[i] = &cur[i] + &step;
            breakpoints.push(mid);
            breakpoints.push(next.clone());
            cur = next;
        }
    }
    if *breakpoints.last().unwrap() != b.entries {
        breakpoints.push(b.entries.clone());
    }

    // Verify every breakpoint exactly and sample the segments.
    let mut segments = Vec::new();
    for w in 0..breakpoints.len() - 1 {
        let (from, to) = (&breakpoints[w], &breakpoints[w + 1]);
        let mut min_d: Option<Scalar> = None;
        let mut positivity_ok = true;
        for k in 0..=SAMPLES_PER_SEGMENT {
            let t = Scalar::ratio(k, SAMPLES_PER_SEGMENT);
            let point: Vec<Scalar> = from
                .iter()
                .zip(to)
                .map(|(p, q)| p + &(&t * &(q - p)))
                .collect();
            let (d, _) = d1_odd_lattice(&DefectVector::new(point.clone()))?;
            let strict = if d.is_exact() {
                d.cmp_val(&Scalar::one()) == Ordering::Greater
            } else {
                d.to_f64() > 1.0 - tol
            };
            if !strict {
                return Err(CubeError::HolonomyViolated);
            }
            if min_d.as_ref().is_none_or(|m| d.cmp_val(m) == Ordering::Less) {
                min_d = Some(d);
            }
            let sum = point.iter().fold(Scalar::zero(), |acc, e| &acc + e);
            let pos = point
                .iter()
                .all(|e| e.cmp_val(&Scalar::from_int(-1)) == Ordering::Greater)
                && sum.cmp_val(&Scalar::from_int(-2)) == Ordering::Greater;
            positivity_ok &= pos;
        }
        segments.push(PathSegment {
            from: w,
            to: w + 1,
            min_holonomy_distance: min_d.expect("sampled"),
            positivity_ok,
        });
    }
    Ok(InteriorPath {
        breakpoints: breakpoints.into_iter().map(DefectVector::new).collect(),
        segments,
    })
}
