//! Algebraic merging operations and reduction chains.
//!
//! A merge replaces two defects by their sum (positive merge) or by
//! `delta_i - delta_j - 2` (negative merge), shrinking the vector by one
//! while mapping the odd lattice onto the odd lattice and contracting ℓ1
//! distances. For every strictly admissible defect vector of length at
//! least 5 some merge keeps strict admissibility; the constructive search
//! walks the case ladder on a descending-sorted copy, while the brute-force
//! search enumerates every candidate as an oracle.

use crate::angles::{d1_odd_lattice, AdmissibilityReport, AdmissibilityStatus, DefectVector};
use crate::cubes::{classify_point, PointClassification};
use crate::perm::Perm;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, thiserror::Error)]
pub enum MergeError {
    #[error("merge indices must be distinct and in range")]
    BadIndices,
    #[error("dimension {n} unsupported for this operation (need {min})")]
    UnsupportedDimension { n: usize, min: usize },
    #[error("input is not strictly admissible ({status:?})")]
    NotStrictlyAdmissible { status: AdmissibilityStatus },
    #[error("no integral coordinate available for the final 4-to-3 step")]
    NoIntegralCoordinate,
    #[error("constructive step produced a non-admissible result; this contradicts the merge ladder")]
    LadderFailure,
    #[error(transparent)]
    Angle(#[from] crate::angles::AngleError),
    #[error(transparent)]
    Cube(#[from] crate::cubes::CubeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeSign {
    Plus,
    Minus,
}

/// One merge step. Indices refer to the (unsorted) vector the step was
/// applied to.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MergeStep {
    pub i: usize,
    pub j: usize,
    pub sign: MergeSign,
    pub result: DefectVector,
    /// For negative merges, the triple `(delta_i, delta_j, delta_i -
    /// delta_j)`, all certified non-integral.
    pub nonintegrality_certificate: Option<(Scalar, Scalar, Scalar)>,
}

impl MergeStep {
    /// Key identifying the operation regardless of the stored result.
    pub fn key(&self) -> (MergeSign, usize, usize) {
        (self.sign, self.i, self.j)
    }
}

/// Apply a merge: drop entries `i` and `j`, append `delta_i + delta_j`
/// (plus) or `delta_i - delta_j - 2` (minus). Survivor order is preserved.
pub fn apply_merge(
    delta: &DefectVector,
    i: usize,
    j: usize,
    sign: MergeSign,
) -> Result<DefectVector, MergeError> {
    let n = delta.len();
    if n < 4 {
        return Err(MergeError::UnsupportedDimension { n, min: 4 });
    }
    if i == j || i >= n || j >= n {
        return Err(MergeError::BadIndices);
    }
    let merged = match sign {
        MergeSign::Plus => &delta.entries[i] + &delta.entries[j],
        MergeSign::Minus => &(&delta.entries[i] - &delta.entries[j]) - &Scalar::from_int(2),
    };
    let mut out: Vec<Scalar> = delta
        .entries
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, e)| e.clone())
        .collect();
    out.push(merged);
    Ok(DefectVector::new(out))
}

fn classify_defects(delta: &DefectVector, tol: f64) -> Result<AdmissibilityReport, MergeError> {
    // classify() takes angles; shift by one. Positivity of angles is part
    // of the constraint set, so route through the raw arithmetic.
    let theta: Vec<Scalar> = delta.entries.iter().map(|e| e + &Scalar::one()).collect();
    let sum = delta.entries.iter().fold(Scalar::zero(), |acc, e| &acc + e);
    let positive = theta.iter().all(|e| e.is_positive());
    let positivity_ok = positive && sum.cmp_val(&Scalar::from_int(-2)) == Ordering::Greater;
    let (distance, witness) = d1_odd_lattice(delta)?;
    let status = if !positivity_ok {
        AdmissibilityStatus::PositivityViolated
    } else {
        match &distance {
            Scalar::Exact(_) => match distance.cmp_val(&Scalar::one()) {
                Ordering::Less => AdmissibilityStatus::HolonomyViolated,
                Ordering::Equal => AdmissibilityStatus::HolonomyBoundary,
                Ordering::Greater => AdmissibilityStatus::StrictInterior,
            },
            Scalar::Approx(d) => {
                if (d - 1.0).abs() <= tol {
                    AdmissibilityStatus::HolonomyBoundary
                } else if *d < 1.0 {
                    AdmissibilityStatus::HolonomyViolated
                } else {
                    AdmissibilityStatus::StrictInterior
                }
            }
        }
    };
    Ok(AdmissibilityReport {
        positivity_ok,
        holonomy_distance: distance,
        status,
        witness_lattice_point: witness,
    })
}

/// Strict admissibility of a defect vector.
pub fn is_strict_interior(delta: &DefectVector, tol: f64) -> Result<bool, MergeError> {
    Ok(classify_defects(delta, tol)?.status == AdmissibilityStatus::StrictInterior)
}

fn d1_between(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x - y).abs())
}

fn d1_to_point(delta: &DefectVector, m: &[i64]) -> Scalar {
    delta
        .entries
        .iter()
        .zip(m)
        .fold(Scalar::zero(), |acc, (e, &p)| {
            &acc + &(e - &Scalar::from_int(p)).abs()
        })
}

/// Internal: the ladder's chosen pair on the sorted copy.
struct SortedChoice {
    i: usize,
    j: usize,
    sign: MergeSign,
}

/// Constructive merge search for strictly admissible `delta`, `n >= 5`.
///
/// The case ladder runs on the descending-sorted copy (stable ties by
/// index) and the chosen pair is mapped back to the original coordinates:
///
/// * cube center: merge the two largest entries; the result sits at
///   distance at least 3/2 from the odd lattice;
/// * an integral entry: merging it with the largest other entry preserves
///   the lattice distance exactly;
/// * all entries negative: merge the two largest;
/// * largest entry positive and second+third above -1: merge by the
///   non-simplicial face index, or a same-signed pair among the top three
///   for simplicial points;
/// * otherwise: positive-mergeability test against the canonical nearest
///   odd vertex, falling back to the negative merge of the extremes, whose
///   defects are certified non-integral.
pub fn find_merge_constructive(delta: &DefectVector, tol: f64) -> Result<MergeStep, MergeError> {
    let n = delta.len();
    if n < 5 {
        return Err(MergeError::UnsupportedDimension { n, min: 5 });
    }
    let report = classify_defects(delta, tol)?;
    if report.status != AdmissibilityStatus::StrictInterior {
        return Err(MergeError::NotStrictlyAdmissible {
            status: report.status,
        });
    }
    let perm = Perm::sorting_desc(&delta.entries, |a, b| a.cmp_val(b));
    let s = DefectVector::new(perm.apply(&delta.entries));
    let choice = sorted_ladder(&s, tol)?;
    let (oi, oj) = (perm.0[choice.i], perm.0[choice.j]);
    let (oi, oj) = match choice.sign {
        MergeSign::Plus => (oi.min(oj), oi.max(oj)),
        MergeSign::Minus => (oi, oj),
    };
    let result = apply_merge(delta, oi, oj, choice.sign)?;
    if !is_strict_interior(&result, tol)? {
        return Err(MergeError::LadderFailure);
    }
    let certificate = match choice.sign {
        MergeSign::Minus => {
            let di = delta.entries[oi].clone();
            let dj = delta.entries[oj].clone();
            let diff = &di - &dj;
            if di.is_integer(tol) || dj.is_integer(tol) || diff.is_integer(tol) {
                return Err(MergeError::LadderFailure);
            }
            Some((di, dj, diff))
        }
        MergeSign::Plus => None,
    };
    Ok(MergeStep {
        i: oi,
        j: oj,
        sign: choice.sign,
        result,
        nonintegrality_certificate: certificate,
    })
}

fn sorted_ladder(s: &DefectVector, tol: f64) -> Result<SortedChoice, MergeError> {
    let plus = |i, j| SortedChoice { i, j, sign: MergeSign::Plus };

    // Cube center: all entries strictly half-integral.
    if s.entries.iter().all(|e| e.is_half_integral(tol)) {
        return Ok(plus(0, 1));
    }
    // Integral entry: merging it preserves the lattice distance exactly,
    // so pair it with the largest other entry.
    if let Some(i) = s.entries.iter().position(|e| e.is_integer(tol)) {
        let j = if i == 0 { 1 } else { 0 };
        return Ok(plus(i.min(j), i.max(j)));
    }
    // All entries in (-1, 0).
    if s.entries[0].is_negative() {
        return Ok(plus(0, 1));
    }
    let pair_sum = &s.entries[1] + &s.entries[2];
    if pair_sum.cmp_val(&Scalar::from_int(-1)) == Ordering::Greater {
        // Largest positive, second+third above -1.
        match classify_point(s, tol)? {
            PointClassification::Center => Ok(plus(0, 1)),
            PointClassification::NonSimplicial { integral_index, .. } => {
                Ok(if integral_index == 0 { plus(0, 1) } else { plus(0, integral_index) })
            }
            PointClassification::Simplicial { witness, .. } => {
                // Two of the top three have same-signed gaps to the nearest
                // odd vertex (zero is compatible with either sign).
                let gap = |k: usize| &Scalar::from_int(witness[k]) - &s.entries[k];
                for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                    let (a, b) = (gap(i), gap(j));
                    let compatible = a.is_zero()
                        || b.is_zero()
                        || a.is_positive() == b.is_positive();
                    if compatible {
                        return Ok(plus(i, j));
                    }
                }
                Err(MergeError::LadderFailure)
            }
        }
    } else {
        // Largest non-negative, second+third at most -1: all entries after
        // the first are strictly negative.
        case_tail_negative(s, tol)
    }
}

/// The hard case: `s_1 >= 0`, `s_2 + s_3 <= -1` on the sorted copy.
fn case_tail_negative(s: &DefectVector, tol: f64) -> Result<SortedChoice, MergeError> {
    let n = s.len();
    let plus = |i, j| SortedChoice { i, j, sign: MergeSign::Plus };
    match classify_point(s, tol)? {
        PointClassification::Center => Ok(plus(0, 1)),
        PointClassification::NonSimplicial { integral_index, .. } => {
            Ok(if integral_index == 0 { plus(0, 1) } else { plus(0, integral_index) })
        }
        PointClassification::Simplicial { .. } => {
            let m = canonical_nearest_odd(s);
            debug_assert_eq!(d1_to_point(s, &m), d1_odd_lattice(s).unwrap().0);
            let l = m[0];
            // Nearest odd vertex has shape l*e_1 - sum of trailing e_j.
            if s.entries[0].cmp_val(&Scalar::from_int(l)) != Ordering::Less {
                // No cancellation when merging coordinates 1 and 3.
                Ok(plus(0, 2))
            } else if m[1] == 0 {
                Ok(plus(0, 1))
            } else {
                // m = (l, -1, ..., -1) with l > s_1: positively mergeable
                // unless merging the extremes lands within distance 1 of
                // the merged vertex.
                let ms = apply_merge(s, 0, n - 1, MergeSign::Plus)?;
                let mm = merge_lattice_point(&m, 0, n - 1, MergeSign::Plus);
                let gap = d1_between(&ms.entries, &int_vec(&mm));
                if gap.cmp_val(&Scalar::one()) == Ordering::Greater {
                    Ok(plus(0, n - 1))
                } else {
                    Ok(SortedChoice {
                        i: 0,
                        j: n - 1,
                        sign: MergeSign::Minus,
                    })
                }
            }
        }
    }
}

/// Canonical nearest odd lattice point for the tail-negative case: round
/// the head (ties down), send every entry at most -1/2 to -1, then repair
/// parity with the cheapest flip and normalize so that the -1 block is a
/// suffix containing position 3 onward.
fn canonical_nearest_odd(s: &DefectVector) -> Vec<i64> {
    let n = s.len();
    let half = Scalar::ratio(1, 2);
    let mut m: Vec<i64> = Vec::with_capacity(n);
    // Head: nearest integer, ties toward the floor.
    let e0 = &s.entries[0];
    let fl = e0.floor_i64();
    let frac = e0 - &Scalar::from_int(fl);
    m.push(if frac.cmp_val(&half) == Ordering::Greater { fl + 1 } else { fl });
    for e in &s.entries[1..] {
        // Entries in (-1, 0): -1 when at distance <= 1/2, else 0.
        let to_minus_one = (e - &Scalar::from_int(-1)).abs();
        m.push(if to_minus_one.cmp_val(&half) != Ordering::Greater { -1 } else { 0 });
    }
    if m.iter().sum::<i64>().rem_euclid(2) == 0 {
        // Cheapest single parity repair.
        let mut best: Option<(Scalar, usize, i64)> = None;
        for k in 0..n {
            let f = (&s.entries[k] - &Scalar::from_int(m[k])).abs();
            let cost = &Scalar::one() - &(&Scalar::from_int(2) * &f);
            let flipped = if k == 0 {
                let toward = &s.entries[0] - &Scalar::from_int(m[0]);
                m[0] + if toward.is_negative() { -1 } else { 1 }
            } else if m[k] == 0 {
                -1
            } else {
                0
            };
            if best
                .as_ref()
                .is_none_or(|(bc, _, _)| cost.cmp_val(bc) == Ordering::Less)
            {
                best = Some((cost, k, flipped));
            }
        }
        let (_, k, flipped) = best.expect("non-empty");
        m[k] = flipped;
    }
    // Normalize: if position 3 escaped the -1 block, pull positions 2 and 3
    // both to -1; this never increases the distance because s_2 + s_3 <= -1.
    if m[2] == 0 {
        m[1] = -1;
        m[2] = -1;
    }
    // Tail entries beyond position 3 at distance <= 1/2 from -1 stay -1 by
    // construction; enforce the suffix shape for positions after any zero.
    m
}

fn int_vec(m: &[i64]) -> Vec<Scalar> {
    m.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn merge_lattice_point(m: &[i64], i: usize, j: usize, sign: MergeSign) -> Vec<i64> {
    let merged = match sign {
        MergeSign::Plus => m[i] + m[j],
        MergeSign::Minus => m[i] - m[j] - 2,
    };
    let mut out: Vec<i64> = m
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, &x)| x)
        .collect();
    out.push(merged);
    out
}

/// All merge steps whose result is strictly admissible (and, for negative
/// merges, whose non-integrality certificate holds). The oracle for the
/// constructive search.
pub fn find_merge_bruteforce(delta: &DefectVector, tol: f64) -> Result<Vec<MergeStep>, MergeError> {
    let n = delta.len();
    if n < 5 {
        return Err(MergeError::UnsupportedDimension { n, min: 5 });
    }
    let report = classify_defects(delta, tol)?;
    if report.status != AdmissibilityStatus::StrictInterior {
        return Err(MergeError::NotStrictlyAdmissible {
            status: report.status,
        });
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let candidates = [
                (i, j, MergeSign::Plus),
                (i, j, MergeSign::Minus),
                (j, i, MergeSign::Minus),
            ];
            for (a, b, sign) in candidates {
                let result = apply_merge(delta, a, b, sign)?;
                if !is_strict_interior(&result, tol)? {
                    continue;
                }
                let certificate = match sign {
                    MergeSign::Plus => None,
                    MergeSign::Minus => {
                        let da = delta.entries[a].clone();
                        let db = delta.entries[b].clone();
                        let diff = &da - &db;
                        if da.is_integer(tol) || db.is_integer(tol) || diff.is_integer(tol) {
                            continue;
                        }
                        Some((da, db, diff))
                    }
                };
                out.push(MergeStep {
                    i: a,
                    j: b,
                    sign,
                    result,
                    nonintegrality_certificate: certificate,
                });
            }
        }
    }
    Ok(out)
}

/// A reduction chain from `start` down to a base of length 3 or 4, with
/// per-step admissibility reports and sorting permutations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionChain {
    pub start: DefectVector,
    pub steps: Vec<MergeStep>,
    pub base: DefectVector,
    /// The descending-sort permutation used by the ladder at each step.
    pub permutation_log: Vec<Perm>,
    /// Admissibility of every intermediate vector (including the base).
    pub reports: Vec<AdmissibilityReport>,
}

/// Repeatedly merge until the vector has length `stop_at` (3 or 4).
///
/// The final 4-to-3 step requires an integral defect: merging it with any
/// other coordinate preserves the lattice distance exactly. Without one the
/// reduction stops at 4 with an error.
pub fn reduce_chain(delta: &DefectVector, stop_at: usize, tol: f64) -> Result<ReductionChain, MergeError> {
    if stop_at != 3 && stop_at != 4 {
        return Err(MergeError::BadIndices);
    }
    let n = delta.len();
    if n < stop_at {
        return Err(MergeError::UnsupportedDimension { n, min: stop_at });
    }
    let report = classify_defects(delta, tol)?;
    if report.status != AdmissibilityStatus::StrictInterior {
        return Err(MergeError::NotStrictlyAdmissible {
            status: report.status,
        });
    }
    let mut steps = Vec::new();
    let mut perms = Vec::new();
    let mut reports = Vec::new();
    let mut cur = delta.clone();
    while cur.len() > stop_at {
        let step = if cur.len() >= 5 {
            let perm = Perm::sorting_desc(&cur.entries, |a, b| a.cmp_val(b));
            perms.push(perm);
            find_merge_constructive(&cur, tol)?
        } else {
            // Length 4 with stop_at 3: only the integral route preserves
            // strict admissibility in general.
            let Some(i) = cur.entries.iter().position(|e| e.is_integer(tol)) else {
                return Err(MergeError::NoIntegralCoordinate);
            };
            let j = if i == 0 { 1 } else { 0 };
            perms.push(Perm::identity(4));
            let (a, b) = (i.min(j), i.max(j));
            let result = apply_merge(&cur, a, b, MergeSign::Plus)?;
            if !is_strict_interior(&result, tol)? {
                return Err(MergeError::LadderFailure);
            }
            MergeStep {
                i: a,
                j: b,
                sign: MergeSign::Plus,
                result,
                nonintegrality_certificate: None,
            }
        };
        cur = step.result.clone();
        reports.push(classify_defects(&cur, tol)?);
        steps.push(step);
    }
    Ok(ReductionChain {
        start: delta.clone(),
        steps,
        base: cur,
        permutation_log: perms,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DEFAULT_TOLERANCE as TOL;

    fn dvec(entries: &[(i64, i64)]) -> DefectVector {
        DefectVector::new(entries.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect())
    }

    #[test]
    fn apply_merge_definitions() {
        let d = dvec(&[(3, 10), (-2, 10), (-5, 10), (-4, 10), (-6, 10)]);
        let plus = apply_merge(&d, 0, 1, MergeSign::Plus).unwrap();
        assert_eq!(plus, dvec(&[(-5, 10), (-4, 10), (-6, 10), (1, 10)]));
        let minus = apply_merge(&d, 0, 1, MergeSign::Minus).unwrap();
        assert_eq!(minus, dvec(&[(-5, 10), (-4, 10), (-6, 10), (-15, 10)]));
        assert!(apply_merge(&d, 2, 2, MergeSign::Plus).is_err());
        assert!(apply_merge(&dvec(&[(0, 1), (0, 1), (0, 1)]), 0, 1, MergeSign::Plus).is_err());
    }

    #[test]
    fn merge_preserves_odd_lattice() {
        let m = dvec(&[(1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]);
        let out = apply_merge(&m, 0, 1, MergeSign::Plus).unwrap();
        let sum: i64 = out.entries.iter().map(|e| e.round_ties_even_i64()).sum();
        assert_eq!(sum.rem_euclid(2), 1);
        assert!(out.entries.iter().all(|e| e.is_integer(0.0)));
    }

    #[test]
    fn constructive_all_negative() {
        let d = dvec(&[(-1, 10), (-2, 10), (-3, 10), (-3, 10), (-4, 10)]);
        let step = find_merge_constructive(&d, TOL).unwrap();
        assert_eq!(step.key(), (MergeSign::Plus, 0, 1));
        assert_eq!(step.result, dvec(&[(-3, 10), (-3, 10), (-4, 10), (-3, 10)]));
        assert!(is_strict_interior(&step.result, TOL).unwrap());
    }

    #[test]
    fn constructive_rejects_small_n() {
        let d = dvec(&[(1, 4), (-1, 4), (-3, 4), (-3, 4)]);
        assert!(matches!(
            find_merge_constructive(&d, TOL),
            Err(MergeError::UnsupportedDimension { n: 4, min: 5 })
        ));
    }

    #[test]
    fn constructive_rejects_non_strict() {
        // The all-halves center of length 5 violates positivity (sum -5/2).
        let d = dvec(&[(-1, 2); 5]);
        assert!(matches!(
            find_merge_constructive(&d, TOL),
            Err(MergeError::NotStrictlyAdmissible { .. })
        ));
    }

    #[test]
    fn center_merge_distance() {
        // Any positive merge of a half-integral center keeps distance at
        // least 3/2 from the odd lattice (checked for all pairs). The
        // vector here is admissible: sum 1/2 > -2.
        let d = dvec(&[(1, 2), (1, 2), (1, 2), (-1, 2), (-1, 2)]);
        for i in 0..5 {
            for j in (i + 1)..5 {
                let out = apply_merge(&d, i, j, MergeSign::Plus).unwrap();
                let (dist, _) = d1_odd_lattice(&out).unwrap();
                assert!(dist.cmp_val(&Scalar::ratio(3, 2)) != Ordering::Less);
            }
        }
        let step = find_merge_constructive(&d, TOL).unwrap();
        assert_eq!(step.sign, MergeSign::Plus);
    }

    #[test]
    fn constructive_in_bruteforce_smoke() {
        let cases = [
            dvec(&[(-1, 10), (-2, 10), (-3, 10), (-3, 10), (-4, 10)]),
            dvec(&[(1, 2), (1, 2), (1, 2), (-1, 2), (-1, 2)]),
            dvec(&[(7, 10), (-6, 10), (-6, 10), (-6, 10), (-6, 10)]),
            dvec(&[(12, 10), (-2, 10), (-6, 10), (-7, 10), (-8, 10)]),
        ];
        for d in cases {
            let step = find_merge_constructive(&d, TOL).unwrap();
            let all = find_merge_bruteforce(&d, TOL).unwrap();
            assert!(!all.is_empty());
            assert!(
                all.iter().any(|s| s.key() == step.key()),
                "constructive {:?} missing from brute force for {:?}",
                step.key(),
                d
            );
        }
    }

    #[test]
    fn minus_steps_carry_certificates() {
        let all = find_merge_bruteforce(
            &dvec(&[(12, 10), (-2, 10), (-6, 10), (-7, 10), (-8, 10)]),
            TOL,
        )
        .unwrap();
        for s in all {
            if s.sign == MergeSign::Minus {
                let (a, b, d) = s.nonintegrality_certificate.as_ref().unwrap();
                assert!(!a.is_integer(0.0) && !b.is_integer(0.0) && !d.is_integer(0.0));
            }
        }
    }

    #[test]
    fn integral_entry_shortcut() {
        // An integral defect merges with exact distance preservation.
        let d = dvec(&[(3, 2), (0, 1), (-7, 10), (-7, 10), (-7, 10)]);
        let (before, _) = d1_odd_lattice(&d).unwrap();
        let step = find_merge_constructive(&d, TOL).unwrap();
        assert_eq!(step.sign, MergeSign::Plus);
        assert!(d.entries[step.i].is_integer(0.0) || d.entries[step.j].is_integer(0.0));
        let (after, _) = d1_odd_lattice(&step.result).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn negative_merge_branch() {
        // Simplicial, nearest odd vertex (3,-1,-1,-1,-1) with head below
        // its first coordinate, and the merged pair lands within distance
        // 1 of the merged vertex: not positively mergeable, so the ladder
        // must take the negative merge of the extremes.
        let d = dvec(&[(27, 10), (-7, 10), (-3, 4), (-3, 4), (-3, 4)]);
        let step = find_merge_constructive(&d, TOL).unwrap();
        assert_eq!(step.sign, MergeSign::Minus);
        assert_eq!((step.i, step.j), (0, 4));
        let (a, b, diff) = step.nonintegrality_certificate.as_ref().unwrap();
        assert!(!a.is_integer(0.0) && !b.is_integer(0.0) && !diff.is_integer(0.0));
        assert!(is_strict_interior(&step.result, TOL).unwrap());
        // The same vector in scrambled order maps back to the extremes.
        let d = dvec(&[(-3, 4), (27, 10), (-3, 4), (-7, 10), (-3, 4)]);
        let step = find_merge_constructive(&d, TOL).unwrap();
        assert_eq!(step.sign, MergeSign::Minus);
        assert_eq!(step.i, 1);
        assert!(step.nonintegrality_certificate.is_some());
    }

    #[test]
    fn chain_to_four() {
        let d = dvec(&[(-1, 10), (-2, 10), (-3, 10), (-3, 10), (-4, 10)]);
        let chain = reduce_chain(&d, 4, TOL).unwrap();
        assert_eq!(chain.steps.len(), 1);
        assert_eq!(chain.base.len(), 4);
        for r in &chain.reports {
            assert_eq!(r.status, AdmissibilityStatus::StrictInterior);
        }
        // Replaying the chain reproduces the base.
        let mut cur = chain.start.clone();
        for s in &chain.steps {
            cur = apply_merge(&cur, s.i, s.j, s.sign).unwrap();
        }
        assert_eq!(cur, chain.base);
    }

    #[test]
    fn chain_stop_at_equal_length() {
        let d = dvec(&[(-1, 4), (-1, 4), (-1, 4), (-1, 4)]);
        let chain = reduce_chain(&d, 4, TOL).unwrap();
        assert!(chain.steps.is_empty());
        assert_eq!(chain.base, d);
    }

    #[test]
    fn chain_four_to_three_needs_integral() {
        // theta = (2, 1/2, 1/2, 1/2): delta = (1, -1/2, -1/2, -1/2).
        let d = dvec(&[(1, 1), (-1, 2), (-1, 2), (-1, 2)]);
        let chain = reduce_chain(&d, 3, TOL).unwrap();
        assert_eq!(chain.steps.len(), 1);
        assert_eq!(chain.steps[0].key(), (MergeSign::Plus, 0, 1));
        assert_eq!(chain.base, dvec(&[(-1, 2), (-1, 2), (1, 2)]));

        let no_integral = dvec(&[(1, 4), (-1, 4), (-1, 4), (-1, 4)]);
        assert!(matches!(
            reduce_chain(&no_integral, 3, TOL),
            Err(MergeError::NoIntegralCoordinate)
        ));
    }
}
