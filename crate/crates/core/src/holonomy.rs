//! Numerical realization of admissible angles as closed broken geodesics
//! on the 3-sphere and the induced SU(2) matrix sets.
//!
//! Side lengths are π times the absolute reduced defects. Feasible length
//! vectors are realized by a triangle fan inside a fixed great 2-sphere of
//! S³: diagonal distances from the basepoint are propagated forward as
//! intervals and fixed on a backward pass, then each vertex is placed by a
//! two-distance intersection. A great 2-sphere suffices because only
//! configurations on a single maximal circle are coaxial; closure is exact
//! by construction rather than by iterative descent.

use crate::angles::{classify, polygon_feasible, reduce, AngleVector};
use crate::scalar::Scalar;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Norm slack accepted when constructing unit quaternions.
pub const PLACEMENT_TOLERANCE: f64 = 1e-12;
/// Tolerance for the reported closure/eigenvalue checks.
pub const CHECK_TOLERANCE: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum HolonomyError {
    #[error("angle vector admits no closed broken geodesic (holonomy constraint violated, distance {distance})")]
    HolonomyInfeasible { distance: f64 },
    #[error("side lengths admit no closed broken geodesic")]
    ClosureInfeasible,
    #[error("side length at index {index} outside [0, pi]")]
    SideOutOfRange { index: usize },
    #[error(transparent)]
    Angle(#[from] crate::angles::AngleError),
}

/// A unit quaternion; doubles as a point of S³ and an element of SU(2)
/// (the real part is the half-trace).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitQuaternion {
    pub const ONE: UnitQuaternion = UnitQuaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let q = UnitQuaternion { w, x, y, z };
        debug_assert!((q.norm() - 1.0).abs() <= 1e-6, "not a unit quaternion");
        q.normalized()
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        UnitQuaternion {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    pub fn conjugate(&self) -> Self {
        UnitQuaternion { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// Hamilton product, renormalized.
    pub fn mul(&self, r: &UnitQuaternion) -> Self {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        UnitQuaternion {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
        .normalized()
    }

    pub fn dot(&self, r: &UnitQuaternion) -> f64 {
        self.w * r.w + self.x * r.x + self.y * r.y + self.z * r.z
    }

    /// Geodesic distance on S³.
    pub fn distance(&self, r: &UnitQuaternion) -> f64 {
        self.dot(r).clamp(-1.0, 1.0).acos()
    }

    /// Imaginary part as a 3-vector.
    pub fn imag(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// 2x2 complex rendering `[[w+iz, y+ix], [-y+ix, w-iz]]`, entries as
    /// `(re, im)` pairs in row-major order.
    pub fn su2_matrix(&self) -> [[(f64, f64); 2]; 2] {
        [
            [(self.w, self.z), (self.y, self.x)],
            [(-self.y, self.x), (self.w, -self.z)],
        ]
    }
}

/// Closed chain of minimal geodesic arcs on S³.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BrokenGeodesic {
    /// `v_0, .., v_n` with `v_n == v_0`.
    pub vertices: Vec<UnitQuaternion>,
    /// Realized side lengths `arccos <v_{j-1}, v_j>`.
    pub side_lengths: Vec<f64>,
    /// Requested side lengths.
    pub target_lengths: Vec<f64>,
}

/// The matrices stepping a broken geodesic, with their diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardMatrixSet {
    /// `U_j = v_j * v_{j-1}^{-1}`.
    pub matrices: Vec<UnitQuaternion>,
    pub target_angles: Vec<f64>,
    /// `|U_n ... U_1 - 1|` in the quaternion 4-norm.
    pub closure_residual: f64,
    /// Largest deviation `|Re U_j - cos(pi |reduced defect_j|)|`.
    pub eigenvalue_residual: f64,
    pub coaxial: bool,
    /// Numerical rank of the Gram matrix of the vertices.
    pub gram_rank: usize,
}

/// Side lengths `pi * |reduced defect|` of the broken geodesic attached to
/// an angle vector in 2π units.
pub fn side_lengths(theta: &AngleVector) -> Vec<f64> {
    reduce(&theta.defects())
        .entries
        .iter()
        .map(|r| std::f64::consts::PI * r.abs().to_f64())
        .collect()
}

/// Feasible range of the next fan diagonal given the previous one:
/// spherical triangle constraints on sides `(d, l, d_next)`.
fn step_interval(d_lo: f64, d_hi: f64, l: f64) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    let lo = if l >= d_lo && l <= d_hi {
        0.0
    } else {
        (d_lo - l).abs().min((d_hi - l).abs())
    };
    let up_at = |d: f64| (d + l).min(2.0 * pi - d - l);
    let mut hi = up_at(d_lo).max(up_at(d_hi));
    let peak = pi - l;
    if peak >= d_lo && peak <= d_hi {
        hi = hi.max(pi);
    }
    (lo.clamp(0.0, pi), hi.clamp(0.0, pi))
}

/// Forward–backward propagation of the fan diagonals `d_k = dist(v_0, v_k)`.
///
/// Forward intervals are the exact reachable sets; the closure requires the
/// final side to land inside the last interval, and a backward pass pins
/// each diagonal (midpoint by default, perturbed on retries).
pub fn propagate_intervals(lengths: &[f64]) -> Result<Vec<(f64, f64)>, HolonomyError> {
    let pi = std::f64::consts::PI;
    let n = lengths.len();
    for (index, &l) in lengths.iter().enumerate() {
        if !(0.0 - 1e-12..=pi + 1e-12).contains(&l) {
            return Err(HolonomyError::SideOutOfRange { index });
        }
    }
    if n == 1 {
        // A single closed side must be degenerate.
        return if lengths[0].abs() <= CHECK_TOLERANCE {
            Ok(vec![])
        } else {
            Err(HolonomyError::ClosureInfeasible)
        };
    }
    let mut intervals = Vec::with_capacity(n - 1);
    intervals.push((lengths[0], lengths[0]));
    for &l in &lengths[1..n - 1] {
        let (lo, hi) = intervals.last().copied().unwrap();
        intervals.push(step_interval(lo, hi, l));
    }
    let (lo, hi) = *intervals.last().unwrap();
    let closing = lengths[n - 1];
    if closing < lo - CHECK_TOLERANCE || closing > hi + CHECK_TOLERANCE {
        return Err(HolonomyError::ClosureInfeasible);
    }
    Ok(intervals)
}

/// Backward pass: fix each diagonal inside its forward interval, compatible
/// with the fixed successor. `pick(k, lo, hi)` chooses the value.
fn fix_diagonals<F: FnMut(usize, f64, f64) -> f64>(
    lengths: &[f64],
    intervals: &[(f64, f64)],
    mut pick: F,
) -> Vec<f64> {
    let n = lengths.len();
    let mut diag = vec![0.0; n - 1];
    diag[0] = lengths[0];
    if n >= 2 {
        let (lo, hi) = intervals[n - 2];
        diag[n - 2] = lengths[n - 1].clamp(lo, hi);
    }
    for k in (1..n.saturating_sub(2)).rev() {
        let (f_lo, f_hi) = intervals[k];
        let (b_lo, b_hi) = step_interval(diag[k + 1], diag[k + 1], lengths[k + 1]);
        let lo = f_lo.max(b_lo);
        let hi = f_hi.min(b_hi);
        // The intersection is non-empty in exact arithmetic; an empty one
        // is rounding dust (e.g. a reflected singleton at a side of length
        // exactly pi). Collapse to the crossing point, or keep the chain
        // constraint if the gap is somehow larger.
        let (lo, hi) = if lo <= hi {
            (lo, hi)
        } else if lo - hi <= 1e-9 {
            let mid = 0.5 * (lo + hi);
            (mid, mid)
        } else {
            (b_lo, b_hi)
        };
        diag[k] = pick(k, lo, hi).clamp(lo, hi);
    }
    diag
}

/// Place the fan inside the great 2-sphere spanned by `1, i, j`:
/// `point(colat, az) = cos(colat) + sin(colat)(cos(az) i + sin(az) j)`.
fn sphere_point(colat: f64, az: f64) -> UnitQuaternion {
    UnitQuaternion {
        w: colat.cos(),
        x: colat.sin() * az.cos(),
        y: colat.sin() * az.sin(),
        z: 0.0,
    }
    .normalized()
}

fn place_vertices(lengths: &[f64], diagonals: &[f64], branch_bits: &[bool]) -> Vec<UnitQuaternion> {
    let n = lengths.len();
    let mut vertices = Vec::with_capacity(n + 1);
    vertices.push(UnitQuaternion::ONE);
    vertices.push(sphere_point(diagonals[0], 0.0));
    let mut azimuth = 0.0;
    // Place v_{k+1} at distance diagonals[k] from the basepoint and
    // lengths[k] from v_k.
    for k in 1..(n - 1) {
        let d_prev = diagonals[k - 1];
        let d_next = diagonals[k];
        let l = lengths[k];
        // Exact degenerate sides: repeat or antipode.
        if l <= 1e-15 {
            let prev = vertices[k];
            vertices.push(prev);
            continue;
        }
        if (l - std::f64::consts::PI).abs() <= 1e-15 {
            let prev = vertices[k];
            azimuth += std::f64::consts::PI;
            vertices.push(UnitQuaternion {
                w: -prev.w,
                x: -prev.x,
                y: -prev.y,
                z: -prev.z,
            });
            continue;
        }
        let (sp, sn) = (d_prev.sin(), d_next.sin());
        let dpsi = if sp.abs() < 1e-12 || sn.abs() < 1e-12 {
            0.0
        } else {
            ((l.cos() - d_prev.cos() * d_next.cos()) / (sp * sn))
                .clamp(-1.0, 1.0)
                .acos()
        };
        let sign = if branch_bits[k] { 1.0 } else { -1.0 };
        azimuth += sign * dpsi;
        vertices.push(sphere_point(d_next, azimuth));
    }
    vertices.push(UnitQuaternion::ONE);
    vertices
}

fn second_moment_eigenvalues(vertices: &[UnitQuaternion]) -> [f64; 4] {
    // rank(Gram) = rank(V^T V) for the 4-column coordinate matrix V.
    let mut a = [[0.0f64; 4]; 4];
    for v in vertices {
        let c = [v.w, v.x, v.y, v.z];
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] += c[i] * c[j];
            }
        }
    }
    jacobi_eigenvalues(a)
}

fn gram_rank(vertices: &[UnitQuaternion]) -> usize {
    let eigs = second_moment_eigenvalues(vertices);
    let max = eigs.iter().cloned().fold(0.0f64, f64::max);
    if max <= 0.0 {
        return 0;
    }
    eigs.iter().filter(|&&e| e > max * 1e-8).count()
}

/// Relative size of the third principal direction: near zero exactly when
/// the vertices sit on one maximal circle.
fn planarity(vertices: &[UnitQuaternion]) -> f64 {
    let mut eigs = second_moment_eigenvalues(vertices);
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    if eigs[0] <= 0.0 {
        return 0.0;
    }
    (eigs[2].max(0.0) / eigs[0]).sqrt()
}

/// Jacobi eigenvalue iteration for a symmetric 4x4 matrix.
fn jacobi_eigenvalues(mut a: [[f64; 4]; 4]) -> [f64; 4] {
    for _ in 0..64 {
        let mut p = 0;
        let mut q = 1;
        let mut off = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if a[i][j].abs() > off {
                    off = a[i][j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if off < 1e-14 {
            break;
        }
        let theta = 0.5 * (2.0 * a[p][q]).atan2(a[q][q] - a[p][p]);
        let (s, c) = theta.sin_cos();
        for k in 0..4 {
            let (akp, akq) = (a[k][p], a[k][q]);
            a[k][p] = c * akp - s * akq;
            a[k][q] = s * akp + c * akq;
        }
        for k in 0..4 {
            let (apk, aqk) = (a[p][k], a[q][k]);
            a[p][k] = c * apk - s * aqk;
            a[q][k] = s * apk + c * aqk;
        }
    }
    [a[0][0], a[1][1], a[2][2], a[3][3]]
}

/// Build a closed broken geodesic realizing the angle vector, if the
/// holonomy constraint permits one.
///
/// Branch choices and retry perturbations are driven by a deterministic
/// generator seeded from `seed`. For strictly admissible inputs a
/// circle-degenerate configuration is re-drawn (up to 32 attempts) until
/// the vertex Gram rank reaches 3.
pub fn build_geodesic(theta: &AngleVector, seed: u64, tol: f64) -> Result<BrokenGeodesic, HolonomyError> {
    let report = classify(theta, tol)?;
    // Realizability depends only on the holonomy component; positivity may
    // fail freely. Gate on the distance, not the combined status.
    let violated = match &report.holonomy_distance {
        Scalar::Exact(_) => {
            report.holonomy_distance.cmp_val(&Scalar::one()) == std::cmp::Ordering::Less
        }
        Scalar::Approx(d) => *d < 1.0 - tol,
    };
    if violated {
        return Err(HolonomyError::HolonomyInfeasible {
            distance: report.holonomy_distance.to_f64(),
        });
    }
    let lengths = side_lengths(theta);
    // Cross-check against the odd-subset criterion: an infeasible closure
    // must coincide with a violated constraint.
    let pol = polygon_feasible(
        &lengths
            .iter()
            .map(|&l| Scalar::Approx(l / std::f64::consts::PI))
            .collect::<Vec<_>>(),
        tol,
    )?;
    let intervals = propagate_intervals(&lengths)?;
    debug_assert!(pol.feasible);
    let n = lengths.len();
    if n == 1 {
        let vertices = vec![UnitQuaternion::ONE, UnitQuaternion::ONE];
        return Ok(BrokenGeodesic {
            vertices,
            side_lengths: vec![0.0],
            target_lengths: lengths,
        });
    }
    let strict = match &report.holonomy_distance {
        Scalar::Exact(_) => {
            report.holonomy_distance.cmp_val(&Scalar::one()) == std::cmp::Ordering::Greater
        }
        Scalar::Approx(d) => *d > 1.0 + tol,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Vec<UnitQuaternion>> = None;
    for attempt in 0..32 {
        let jitter = attempt > 0;
        let diagonals = fix_diagonals(&lengths, &intervals, |_, lo, hi| {
            if jitter {
                let u = (rng.next_u32() as f64) / (u32::MAX as f64);
                lo + u * (hi - lo)
            } else {
                0.5 * (lo + hi)
            }
        });
        let branch_bits: Vec<bool> = (0..n).map(|_| rng.next_u32() & 1 == 1).collect();
        let vertices = place_vertices(&lengths, &diagonals, &branch_bits);
        let ok_lengths = lengths
            .iter()
            .enumerate()
            .all(|(j, &l)| (vertices[j].distance(&vertices[j + 1]) - l).abs() <= CHECK_TOLERANCE);
        if !ok_lengths {
            continue;
        }
        // For strictly feasible inputs insist on a solidly non-planar
        // configuration, so non-coaxiality is robust to axis extraction.
        if !strict || planarity(&vertices) > 1e-3 {
            best = Some(vertices);
            break;
        }
        if best.is_none() {
            best = Some(vertices);
        }
    }
    let vertices = best.ok_or(HolonomyError::ClosureInfeasible)?;
    let side_lengths = (0..n)
        .map(|j| vertices[j].distance(&vertices[j + 1]))
        .collect();
    Ok(BrokenGeodesic {
        vertices,
        side_lengths,
        target_lengths: lengths,
    })
}

/// Derive the step matrices `U_j = v_j v_{j-1}^{-1}` with closure and
/// eigenvalue diagnostics. Coaxiality is read off the vertex Gram rank:
/// the matrices commute exactly when all vertices share a maximal circle.
pub fn matrices_from_geodesic(g: &BrokenGeodesic, theta: &AngleVector) -> StandardMatrixSet {
    let n = g.vertices.len() - 1;
    let mut matrices = Vec::with_capacity(n);
    for j in 1..=n {
        matrices.push(g.vertices[j].mul(&g.vertices[j - 1].conjugate()));
    }
    // Product in decreasing index order transports v_0 around the loop.
    let mut prod = UnitQuaternion::ONE;
    for u in &matrices {
        prod = u.mul(&prod);
    }
    let closure_residual = ((prod.w - 1.0).powi(2)
        + prod.x.powi(2)
        + prod.y.powi(2)
        + prod.z.powi(2))
    .sqrt();
    let reduced = reduce(&theta.defects());
    let eigenvalue_residual = matrices
        .iter()
        .zip(&reduced.entries)
        .map(|(u, r)| (u.w - (std::f64::consts::PI * r.abs().to_f64()).cos()).abs())
        .fold(0.0f64, f64::max);
    let rank = gram_rank(&g.vertices);
    StandardMatrixSet {
        matrices,
        target_angles: theta.entries.iter().map(|e| e.to_f64()).collect(),
        closure_residual,
        eigenvalue_residual,
        coaxial: rank <= 2,
        gram_rank: rank,
    }
}

/// Tolerance for comparing extracted rotation axes. Axis extraction near
/// ±1 is ill-conditioned (the angle carries a square-root error from the
/// inverse cosine), so this is looser than the closure checks.
pub const AXIS_TOLERANCE: f64 = 1e-6;

/// Are all rotation axes pairwise parallel? Real matrices (±1) rotate about
/// no axis and are compatible with every axis; near-real matrices are
/// skipped because their axis is numerically meaningless.
pub fn coaxiality_test(ms: &StandardMatrixSet) -> bool {
    let mut axis: Option<[f64; 3]> = None;
    for u in &ms.matrices {
        let im = u.imag();
        let norm = (im[0] * im[0] + im[1] * im[1] + im[2] * im[2]).sqrt();
        if norm <= AXIS_TOLERANCE {
            continue;
        }
        let a = [im[0] / norm, im[1] / norm, im[2] / norm];
        match axis {
            None => axis = Some(a),
            Some(b) => {
                let cross = [
                    a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0],
                ];
                let c = (cross[0_usize].powi(2) + cross[1].powi(2) + cross[2].powi(2)).sqrt();
                if c > AXIS_TOLERANCE {
                    return false;
                }
            }
        }
    }
    true
}
