//! Coordinate permutations.
//!
//! A permutation is stored as a lookup table: `apply(v)[k] = v[p[k]]`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &p)| k == p)
    }

    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| v[i].clone()).collect()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (k, &p) in self.0.iter().enumerate() {
            inv[p] = k;
        }
        Perm(inv)
    }

    /// `self.then(other)` applies `self` first: `(self.then(g)).apply(v) ==
    /// g.apply(&self.apply(v))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// Stable argsort descending: the permutation whose application sorts
    /// `v` in non-increasing order, ties broken by original index.
    pub fn sorting_desc<T, F>(v: &[T], cmp: F) -> Perm
    where
        F: Fn(&T, &T) -> std::cmp::Ordering,
    {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| cmp(&v[b], &v[a]).then(a.cmp(&b)));
        Perm(idx)
    }

    /// All permutations of `{0, .., n-1}` in lexicographic order, identity
    /// first.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// The dihedral group of order 8 acting on four cyclically labelled
    /// vertices: rotations of the 4-cycle plus the four reflections.
    pub fn dihedral8() -> Vec<Perm> {
        vec![
            Perm(vec![0, 1, 2, 3]),
            Perm(vec![1, 2, 3, 0]),
            Perm(vec![2, 3, 0, 1]),
            Perm(vec![3, 0, 1, 2]),
            Perm(vec![2, 1, 0, 3]), // swap 1,3
            Perm(vec![0, 3, 2, 1]), // swap 2,4
            Perm(vec![1, 0, 3, 2]),
            Perm(vec![3, 2, 1, 0]),
        ]
    }

    pub fn is_dihedral8(&self) -> bool {
        Perm::dihedral8().contains(self)
    }
}
