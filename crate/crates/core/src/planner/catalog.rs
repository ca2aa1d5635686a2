//! The ten-family quadrilateral catalog.
//!
//! Each family is an affine ℓ1-isometry (signed coordinate permutation
//! plus integer shift) mapping the half truncated cube at the all-ones
//! vertex onto a half truncated cube around one even vertex of the three
//! catalog cubes. The coordinate-permutation orbits of the family vertices
//! are exactly the coverage vertex lists.

use crate::perm::Perm;
use crate::planner::sym::{Rat, Sym};

/// One output slot of a family map: `out_k = shift + sign * x_source`.
#[derive(Clone, Copy, Debug)]
pub struct AffineSlot {
    pub shift: i64,
    pub sign: i64,
    pub source: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogFamily {
    pub index: u8,
    pub slots: [AffineSlot; 4],
    /// Image of the all-ones vertex.
    pub vertex: [i64; 4],
    /// Center of the image cube (numerators over 2).
    pub center_halves: [i64; 4],
}

impl CatalogFamily {
    pub fn apply(&self, x: &[Sym]) -> Vec<Sym> {
        self.slots
            .iter()
            .map(|s| {
                let v = x[s.source].scale(&Rat::int(s.sign));
                &Sym::int(s.shift) + &v
            })
            .collect()
    }

    /// Inverse map (families are affine bijections).
    pub fn apply_inverse(&self, y: &[Sym]) -> Vec<Sym> {
        let mut out = vec![Sym::int(0); 4];
        for (k, s) in self.slots.iter().enumerate() {
            // y_k = shift + sign * x_source  =>  x_source = sign * (y_k - shift)
            out[s.source] = (&y[k] - &Sym::int(s.shift)).scale(&Rat::int(s.sign));
        }
        out
    }

    pub fn center(&self) -> Vec<Rat> {
        self.center_halves.iter().map(|&h| Rat::ratio(h, 2)).collect()
    }
}

const fn slot(shift: i64, sign: i64, source: usize) -> AffineSlot {
    AffineSlot { shift, sign, source }
}

/// The ten families, in catalog order.
pub fn families() -> Vec<CatalogFamily> {
    vec![
        CatalogFamily {
            index: 1,
            slots: [slot(2, -1, 0), slot(1, -1, 1), slot(0, 1, 2), slot(1, -1, 3)],
            vertex: [1, 0, 1, 0],
            center_halves: [3, 1, 1, 1],
        },
        CatalogFamily {
            index: 2,
            slots: [slot(1, 1, 0), slot(1, -1, 1), slot(0, 1, 2), slot(0, 1, 3)],
            vertex: [2, 0, 1, 1],
            center_halves: [3, 1, 1, 1],
        },
        CatalogFamily {
            index: 3,
            slots: [slot(1, 1, 0), slot(0, 1, 1), slot(0, 1, 2), slot(1, 1, 3)],
            vertex: [2, 1, 1, 2],
            center_halves: [3, 1, 1, 3],
        },
        CatalogFamily {
            index: 4,
            slots: [slot(2, -1, 0), slot(2, -1, 3), slot(1, -1, 2), slot(1, -1, 1)],
            vertex: [1, 1, 0, 0],
            center_halves: [3, 3, 1, 1],
        },
        CatalogFamily {
            index: 5,
            slots: [slot(2, -1, 0), slot(0, 1, 3), slot(2, -1, 2), slot(0, 1, 1)],
            vertex: [1, 1, 1, 1],
            center_halves: [3, 1, 3, 1],
        },
        CatalogFamily {
            index: 6,
            slots: [slot(1, 1, 0), slot(1, -1, 1), slot(1, 1, 2), slot(1, -1, 3)],
            vertex: [2, 0, 2, 0],
            center_halves: [3, 1, 3, 1],
        },
        CatalogFamily {
            index: 7,
            slots: [slot(1, 1, 0), slot(1, -1, 1), slot(2, -1, 2), slot(0, 1, 3)],
            vertex: [2, 0, 1, 1],
            center_halves: [3, 1, 3, 1],
        },
        CatalogFamily {
            index: 8,
            slots: [slot(3, -1, 0), slot(1, -1, 3), slot(0, 1, 2), slot(0, 1, 1)],
            vertex: [2, 0, 1, 1],
            center_halves: [5, 1, 1, 1],
        },
        CatalogFamily {
            index: 9,
            slots: [slot(2, 1, 0), slot(1, -1, 1), slot(0, 1, 2), slot(1, -1, 3)],
            vertex: [3, 0, 1, 0],
            center_halves: [5, 1, 1, 1],
        },
        CatalogFamily {
            index: 10,
            slots: [slot(2, 1, 0), slot(0, 1, 1), slot(0, 1, 2), slot(0, 1, 3)],
            vertex: [3, 1, 1, 1],
            center_halves: [5, 1, 1, 1],
        },
    ]
}

/// Entry of the coverage lookup: `relabel` applied to the family's home
/// cube center/vertex gives the target cube center and the listed vertex.
#[derive(Clone, Debug)]
pub struct VertexRoute {
    pub vertex: [i64; 4],
    pub family: CatalogFamily,
    pub relabel: Perm,
}

/// All routes into the cube with the given (sorted) center, keyed by even
/// vertex; first family in catalog order wins on ties.
pub fn routes_for_cube(center_halves: [i64; 4]) -> Vec<VertexRoute> {
    let mut out: Vec<VertexRoute> = Vec::new();
    for fam in families() {
        for perm in Perm::all(4) {
            let c = perm.apply(&fam.center_halves);
            if c != center_halves {
                continue;
            }
            let v4 = perm.apply(&fam.vertex);
            let vertex = [v4[0], v4[1], v4[2], v4[3]];
            if out.iter().any(|r| r.vertex == vertex) {
                continue;
            }
            out.push(VertexRoute {
                vertex,
                family: fam.clone(),
                relabel: perm,
            });
        }
    }
    out
}
