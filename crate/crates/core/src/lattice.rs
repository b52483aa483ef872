//! Coordinates, adjacency and distances on the infinite truncated square tiling.
//!
//! Every vertex sits on exactly one 4-cycle ("square"). Squares are indexed by
//! `(x, y)` in `Z²` and the four vertices of a square are numbered like a clock:
//! `0` top, `1` right, `2` bottom, `3` left. Besides its two in-square
//! neighbours, each vertex has one cross edge leaving its square:
//!
//! * `(0, (x, y))` ~ `(2, (x, y + 1))`
//! * `(1, (x, y))` ~ `(3, (x + 1, y))`
//!
//! The cross edges are the octagon edges shared by no square.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// A vertex of the infinite tiling, `(a, (x, y))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCoord {
    pub a: u8,
    pub x: i64,
    pub y: i64,
}

impl VertexCoord {
    /// Builds a coordinate, reducing the clock position modulo 4.
    pub fn new(a: i64, x: i64, y: i64) -> Self {
        VertexCoord {
            a: a.rem_euclid(4) as u8,
            x,
            y,
        }
    }

    /// Translates the square coordinate by `(dx, dy)`.
    pub fn shifted(self, dx: i64, dy: i64) -> Self {
        VertexCoord {
            a: self.a,
            x: self.x + dx,
            y: self.y + dy,
        }
    }

    /// The vertex at the other end of this vertex's cross edge.
    pub fn cross(self) -> Self {
        match self.a {
            0 => VertexCoord {
                a: 2,
                x: self.x,
                y: self.y + 1,
            },
            1 => VertexCoord {
                a: 3,
                x: self.x + 1,
                y: self.y,
            },
            2 => VertexCoord {
                a: 0,
                x: self.x,
                y: self.y - 1,
            },
            3 => VertexCoord {
                a: 1,
                x: self.x - 1,
                y: self.y,
            },
            _ => unreachable!("clock position out of range"),
        }
    }

    /// The three neighbours: clockwise, counter-clockwise, then the cross edge.
    pub fn neighbors(self) -> [VertexCoord; 3] {
        [
            VertexCoord {
                a: (self.a + 1) % 4,
                ..self
            },
            VertexCoord {
                a: (self.a + 3) % 4,
                ..self
            },
            self.cross(),
        ]
    }
}

impl fmt::Display for VertexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},({},{}))", self.a, self.x, self.y)
    }
}

impl Serialize for VertexCoord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.a as i64, self.x, self.y).serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexCoord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (a, x, y) = <(i64, i64, i64)>::deserialize(d)?;
        if !(0..4).contains(&a) {
            return Err(serde::de::Error::custom(format!(
                "clock position {a} not in 0..=3"
            )));
        }
        Ok(VertexCoord { a: a as u8, x, y })
    }
}

/// Free-function form of [`VertexCoord::neighbors`].
pub fn neighbors(v: VertexCoord) -> [VertexCoord; 3] {
    v.neighbors()
}

/// Graph distance between `u` and `v`.
pub fn distance(u: VertexCoord, v: VertexCoord) -> u32 {
    // the tiling is connected, so the uncapped search always terminates
    distance_capped(u, v, None).expect("uncapped search always meets")
}

/// Bidirectional breadth-first search. Returns `None` when a cap is given and
/// no path of length `<= cap` exists.
pub fn distance_capped(u: VertexCoord, v: VertexCoord, cap: Option<u32>) -> Option<u32> {
    if u == v {
        return Some(0);
    }
    let mut seen = [HashMap::new(), HashMap::new()];
    let mut frontier = [vec![u], vec![v]];
    seen[0].insert(u, 0u32);
    seen[1].insert(v, 0u32);
    let mut depth = [0u32, 0u32];
    loop {
        if let Some(c) = cap {
            if depth[0] + depth[1] >= c {
                return None;
            }
        }
        // grow the smaller side by one full level
        let side = if frontier[0].len() <= frontier[1].len() {
            0
        } else {
            1
        };
        let other = 1 - side;
        let next_depth = depth[side] + 1;
        let mut next = Vec::with_capacity(frontier[side].len() * 2);
        for w in std::mem::take(&mut frontier[side]) {
            for nb in w.neighbors() {
                if seen[side].contains_key(&nb) {
                    continue;
                }
                if let Some(&d_other) = seen[other].get(&nb) {
                    // the first meeting is exact: disjoint balls bound the distance below
                    return Some(next_depth + d_other);
                }
                seen[side].insert(nb, next_depth);
                next.push(nb);
            }
        }
        frontier[side] = next;
        depth[side] = next_depth;
    }
}

/// All vertices within distance `t - 1` of `v`, with their distances.
pub fn ball(v: VertexCoord, t: u32) -> Result<HashMap<VertexCoord, u32>, Error> {
    if t < 1 {
        return Err(Error::InvalidParameter(format!(
            "ball needs t >= 1, got {t}"
        )));
    }
    Ok(bfs_layers(v, t - 1))
}

/// Breadth-first search from `v` out to `radius` (inclusive).
pub(crate) fn bfs_layers(v: VertexCoord, radius: u32) -> HashMap<VertexCoord, u32> {
    let mut dist = HashMap::new();
    dist.insert(v, 0);
    let mut queue = VecDeque::from([v]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        if d == radius {
            continue;
        }
        for nb in w.neighbors() {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(nb) {
                e.insert(d + 1);
                queue.push_back(nb);
            }
        }
    }
    dist
}

/// Number of vertices at distance exactly `t - 1` from any vertex.
///
/// The sequence `1, 3, 5, 8, 11, 13, ...` repeats with period 3 and increment 8.
pub fn coordination(t: u32) -> Result<u64, Error> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "coordination needs t >= 2, got {t}"
        )));
    }
    Ok(coordination_at_distance(t as u64 - 1))
}

/// Sphere size at distance `k` (with `k = 0` giving 1).
pub(crate) fn coordination_at_distance(k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    let q = k / 3;
    match k % 3 {
        0 => 8 * q,
        1 => 8 * q + 3,
        _ => 8 * q + 5,
    }
}

/// `1 + sum_{i=2}^{t} coordination(i)`: the number of vertices within distance `t - 1`.
pub fn ball_size(t: u32) -> Result<u64, Error> {
    if t < 1 {
        return Err(Error::InvalidParameter(format!(
            "ball_size needs t >= 1, got {t}"
        )));
    }
    Ok((0..t as u64).map(coordination_at_distance).sum())
}
