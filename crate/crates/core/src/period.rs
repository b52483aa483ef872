//! Period lattices `L ⊂ Z²` acting on square coordinates.
//!
//! Every full-rank sublattice has a unique Hermite basis `((d1, 0), (k, d2))`
//! with `d1, d2 > 0` and `0 <= k < d1`. Reducing a square modulo `L` against
//! that basis gives canonical representatives in `[0, d1) × [0, d2)`.

use serde::{Deserialize, Serialize};

use crate::lattice::VertexCoord;
use crate::Error;

/// An integer 2-vector.
pub type Vec2 = [i64; 2];

/// A pair of integer vectors spanning a period lattice.
pub type Basis = [Vec2; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodLattice {
    d1: i64,
    k: i64,
    d2: i64,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        // a = q*b + r with r = a mod b
        let q = (a - a.rem_euclid(b)) / b;
        (g, y, x - q * y)
    }
}

pub fn det(basis: &Basis) -> i64 {
    basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]
}

impl PeriodLattice {
    /// Lattice spanned by `basis`; rejects singular bases.
    pub fn from_basis(basis: &Basis) -> Result<Self, Error> {
        let dt = det(basis);
        if dt == 0 {
            return Err(Error::SingularBasis(*basis));
        }
        let [b1, b2] = *basis;
        let (g, u, v) = ext_gcd(b1[1], b2[1]);
        debug_assert!(g > 0);
        let wx = u * b1[0] + v * b2[0];
        let d2 = g;
        let d1 = dt.abs() / g;
        Ok(PeriodLattice {
            d1,
            k: wx.rem_euclid(d1),
            d2,
        })
    }

    /// Hermite-form lattice `((d1, 0), (k, d2))`.
    pub fn hermite(d1: i64, k: i64, d2: i64) -> Result<Self, Error> {
        if d1 <= 0 || d2 <= 0 || !(0..d1).contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "not a Hermite basis: d1={d1} k={k} d2={d2}"
            )));
        }
        Ok(PeriodLattice { d1, k, d2 })
    }

    pub fn hermite_basis(&self) -> Basis {
        [[self.d1, 0], [self.k, self.d2]]
    }

    /// `|det|`, the number of square classes.
    pub fn index(&self) -> i64 {
        self.d1 * self.d2
    }

    /// Number of vertex classes, `4 |det|`.
    pub fn class_count(&self) -> usize {
        4 * self.index() as usize
    }

    /// Canonical representative of the square `(x, y)` modulo the lattice.
    pub fn reduce(&self, x: i64, y: i64) -> (i64, i64) {
        let j = y.div_euclid(self.d2);
        let ry = y - j * self.d2;
        let rx = (x - j * self.k).rem_euclid(self.d1);
        (rx, ry)
    }

    pub fn reduce_vertex(&self, v: VertexCoord) -> VertexCoord {
        let (x, y) = self.reduce(v.x, v.y);
        VertexCoord { a: v.a, x, y }
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.reduce(x, y) == (0, 0)
    }

    /// Dense index of the class of `v`, ordered by `(y, x, a)` of the representative.
    pub fn class_index(&self, v: VertexCoord) -> usize {
        let (x, y) = self.reduce(v.x, v.y);
        ((y * self.d1 + x) * 4) as usize + v.a as usize
    }

    /// Canonical representative of class `idx`.
    pub fn class_vertex(&self, idx: usize) -> VertexCoord {
        let a = (idx % 4) as u8;
        let sq = (idx / 4) as i64;
        VertexCoord {
            a,
            x: sq % self.d1,
            y: sq / self.d1,
        }
    }

    /// Canonical square representatives in `(y, x)` order.
    pub fn squares(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..self.d2).flat_map(move |y| (0..self.d1).map(move |x| (x, y)))
    }

    /// All Hermite-form lattices with `1 <= |det| <= max_det`.
    pub fn enumerate(max_det: i64) -> Vec<PeriodLattice> {
        let mut out = Vec::new();
        for det in 1..=max_det {
            for d1 in 1..=det {
                if det % d1 != 0 {
                    continue;
                }
                let d2 = det / d1;
                for k in 0..d1 {
                    out.push(PeriodLattice { d1, k, d2 });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn singular_basis_rejected() {
        assert!(PeriodLattice::from_basis(&[[1, 2], [2, 4]]).is_err());
        assert!(PeriodLattice::from_basis(&[[1, 0], [3, 0]]).is_err());
    }

    #[test]
    fn catalog_bases_in_hermite_form() {
        let l = PeriodLattice::from_basis(&[[1, 1], [0, 4]]).unwrap();
        assert_eq!(l.index(), 4);
        assert!(l.contains(1, 1));
        assert!(l.contains(0, 4));
        assert!(!l.contains(0, 2));
        let l = PeriodLattice::from_basis(&[[1, 3], [0, 6]]).unwrap();
        assert_eq!(l.index(), 6);
        assert!(l.contains(1, 3) && l.contains(2, 0) && l.contains(-1, 3));
        assert!(!l.contains(1, 0));
    }

    #[test]
    fn enumeration_counts_sublattices() {
        // number of index-n sublattices of Z² is sigma(n)
        let sigma = [1, 3, 4, 7, 6, 12];
        let all = PeriodLattice::enumerate(6);
        for (i, s) in sigma.iter().enumerate() {
            let n = i as i64 + 1;
            assert_eq!(all.iter().filter(|l| l.index() == n).count(), *s);
        }
    }

    proptest! {
        #[test]
        fn reduction_is_canonical(
            b in prop::array::uniform4(-5i64..=5),
            x in -40i64..40, y in -40i64..40,
            i in -3i64..3, j in -3i64..3,
        ) {
            let basis = [[b[0], b[1]], [b[2], b[3]]];
            prop_assume!(det(&basis) != 0);
            let l = PeriodLattice::from_basis(&basis).unwrap();
            prop_assert_eq!(l.index(), det(&basis).abs());
            prop_assert!(l.contains(b[0], b[1]));
            prop_assert!(l.contains(b[2], b[3]));
            let sx = x + i * b[0] + j * b[2];
            let sy = y + i * b[1] + j * b[3];
            prop_assert_eq!(l.reduce(x, y), l.reduce(sx, sy));
            let (rx, ry) = l.reduce(x, y);
            prop_assert!(l.contains(x - rx, y - ry));
            let v = VertexCoord { a: 2, x, y };
            prop_assert_eq!(l.class_vertex(l.class_index(v)), l.reduce_vertex(v));
        }
    }
}
