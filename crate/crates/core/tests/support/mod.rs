#![allow(dead_code)]

//! Shared oracles and samplers for the integration suites. Oracles here
//! are deliberately independent of the library's closed-form code paths.

use coneangles::angles::{classify, AdmissibilityStatus, AngleUnit, AngleVector, DefectVector};
use coneangles::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random exact rational vector with one common denominator, handed back
/// as numerators plus denominator so integer oracles can use it directly.
pub fn sample_common_denominator(
    rng: &mut ChaCha8Rng,
    n: usize,
    span: i64,
    max_den: i64,
) -> (Vec<i64>, i64) {
    let den = rng.gen_range(1..=max_den);
    let numerators = (0..n).map(|_| rng.gen_range(-span * den..=span * den)).collect();
    (numerators, den)
}

pub fn to_defects(numerators: &[i64], den: i64) -> DefectVector {
    DefectVector::new(numerators.iter().map(|&p| Scalar::ratio(p, den)).collect())
}

/// Exhaustive search for the ℓ1 distance to the odd lattice: explores the
/// full ±2 box around the componentwise rounding in integer arithmetic,
/// with sound branch-and-bound pruning on the partial sum. Returns the
/// distance scaled by `den`.
pub fn exhaustive_d1_scaled(numerators: &[i64], den: i64) -> i64 {
    let n = numerators.len();
    // Nearest integer times den, ties toward even (any tie choice is
    // inside the search box).
    let rounds: Vec<i64> = numerators
        .iter()
        .map(|&p| {
            let q = p.div_euclid(den);
            let r = p.rem_euclid(den);
            if 2 * r > den {
                q + 1
            } else if 2 * r < den {
                q
            } else if q % 2 == 0 {
                q
            } else {
                q + 1
            }
        })
        .collect();
    let mut best = i64::MAX;
    let mut choice = vec![0i64; n];
    fn descend(
        k: usize,
        partial: i64,
        parity: i64,
        numerators: &[i64],
        den: i64,
        rounds: &[i64],
        choice: &mut Vec<i64>,
        best: &mut i64,
    ) {
        if partial >= *best {
            return; // every extension only adds non-negative cost
        }
        if k == numerators.len() {
            if parity.rem_euclid(2) == 1 {
                *best = partial;
            }
            return;
        }
        for off in -2..=2i64 {
            let m = rounds[k] + off;
            let cost = (numerators[k] - m * den).abs();
            choice[k] = m;
            descend(k + 1, partial + cost, parity + m, numerators, den, rounds, choice, best);
        }
    }
    descend(0, 0, 0, numerators, den, &rounds, &mut choice, &mut best);
    best
}

/// Exact feasibility of `x` as a convex combination of the given integer
/// points: phase-1 simplex over rationals with Bland's rule.
///
/// Solves `sum l_v * v = x`, `sum l_v = 1`, `l_v >= 0`.
pub fn in_convex_hull(points: &[Vec<i64>], x: &[BigRational]) -> bool {
    let m = x.len() + 1; // coordinate equations plus the affine one
    let n = points.len();
    // Tableau rows: [A | I | b] with artificial basis; minimize the sum of
    // artificials. Flip signs so b >= 0.
    let mut a = vec![vec![BigRational::zero(); n + m + 1]; m];
    for (r, row) in a.iter_mut().enumerate().take(m) {
        for (c, p) in points.iter().enumerate() {
            row[c] = if r < x.len() {
                BigRational::from_integer(BigInt::from(p[r]))
            } else {
                BigRational::one()
            };
        }
        row[n + r] = BigRational::one();
        row[n + m] = if r < x.len() { x[r].clone() } else { BigRational::one() };
        if row[n + m].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            row[n + r] = -row[n + r].clone();
        }
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective: sum of artificial variables, expressed in the current
    // basis (initially the artificials themselves).
    loop {
        // Reduced cost of column c: sum over rows of a[r][c] where the
        // basic variable is artificial, negated for minimization.
        let mut entering = None;
        for c in 0..n {
            let mut reduced = BigRational::zero();
            for r in 0..m {
                if basis[r] >= n {
                    reduced += a[r][c].clone();
                }
            }
            if reduced.is_positive() {
                entering = Some(c);
                break; // Bland's rule: smallest index
            }
        }
        let Some(c) = entering else { break };
        // Ratio test.
        let mut pivot: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if a[r][c].is_positive() {
                let ratio = &a[r][n + m] / &a[r][c];
                let better = match &pivot {
                    None => true,
                    Some((pr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*pr]),
                };
                if better {
                    pivot = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = pivot else { return false };
        // Pivot.
        let div = a[pr][c].clone();
        for v in a[pr].iter_mut() {
            *v = &*v / &div;
        }
        for r in 0..m {
            if r != pr && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                for cc in 0..n + m + 1 {
                    let delta = &factor * &a[pr][cc];
                    a[r][cc] = &a[r][cc] - &delta;
                }
            }
        }
        basis[pr] = c;
    }
    // Feasible iff all artificial variables are zero.
    (0..m).all(|r| basis[r] < n || a[r][n + m].is_zero())
}

/// Rejection-sample a strictly admissible rational angle vector with no
/// integral coordinate.
pub fn sample_strict_interior(rng: &mut ChaCha8Rng, n: usize) -> AngleVector {
    loop {
        let den = rng.gen_range(4..=20i64);
        let entries: Vec<Scalar> = (0..n)
            .map(|_| Scalar::ratio(rng.gen_range(1..=3 * den), den))
            .collect();
        if entries.iter().any(|e| e.is_integer(0.0)) {
            continue;
        }
        let Ok(theta) = AngleVector::new(entries, AngleUnit::TwoPi) else {
            continue;
        };
        let report = classify(&theta, 0.0).expect("non-empty");
        if report.status == AdmissibilityStatus::StrictInterior {
            return theta;
        }
    }
}

/// Strictly admissible vector shaped like the hardest merge case: one
/// angle in `(n-2, n-1)` and the rest below 1/2, putting the defect vector
/// deep into the tail-negative regime where negative merges occur.
pub fn sample_strict_interior_tail_heavy(rng: &mut ChaCha8Rng, n: usize) -> AngleVector {
    loop {
        let den = rng.gen_range(8..=20i64);
        let mut entries: Vec<Scalar> = vec![&Scalar::from_int(n as i64 - 2)
            + &Scalar::ratio(rng.gen_range(1..den), den)];
        entries.extend((1..n).map(|_| Scalar::ratio(rng.gen_range(1..den / 2), den)));
        if entries.iter().any(|e| e.is_integer(0.0)) {
            continue;
        }
        let Ok(theta) = AngleVector::new(entries, AngleUnit::TwoPi) else {
            continue;
        };
        let report = classify(&theta, 0.0).expect("non-empty");
        if report.status == AdmissibilityStatus::StrictInterior {
            return theta;
        }
    }
}

/// Sample a defect vector at ℓ1 distance exactly 1 from the odd lattice,
/// with all angles positive: an odd lattice point with non-negative
/// coordinates plus a displacement of total length 1 and coordinates of
/// magnitude at most 1/2.
pub fn sample_boundary_defects(rng: &mut ChaCha8Rng, n: usize) -> DefectVector {
    loop {
        let mut m: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2i64)).collect();
        if m.iter().sum::<i64>().rem_euclid(2) == 0 {
            m[0] += 1;
        }
        // Rational displacement with |v|_1 = 1, entries in [-1/2, 1/2].
        let parts: Vec<i64> = (0..n).map(|_| rng.gen_range(-32..=32i64)).collect();
        let total: i64 = parts.iter().map(|p| p.abs()).sum();
        if total == 0 {
            continue;
        }
        if parts.iter().any(|p| 2 * p.abs() > total) {
            continue; // scaled entry would exceed 1/2
        }
        let entries: Vec<Scalar> = m
            .iter()
            .zip(&parts)
            .map(|(&mi, &p)| &Scalar::from_int(mi) + &Scalar::ratio(p, total))
            .collect();
        let dv = DefectVector::new(entries);
        let (d, _) = coneangles::angles::d1_odd_lattice(&dv).expect("non-empty");
        assert_eq!(d, Scalar::one(), "construction yields exact boundary");
        return dv;
    }
}
