//! Reference implementations used as oracles. Adjacency comes from plane
//! geometry (regular octagons and squares with unit edges), not from the
//! library's neighbour rules.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use truncdom::VertexCoord;

const SQRT2: f64 = std::f64::consts::SQRT_2;
const EPS: f64 = 1e-9;

pub fn position(v: VertexCoord) -> (f64, f64) {
    let s = 1.0 + SQRT2;
    let h = SQRT2 / 2.0;
    let (dx, dy) = match v.a {
        0 => (0.0, h),
        1 => (h, 0.0),
        2 => (0.0, -h),
        _ => (-h, 0.0),
    };
    (s * v.x as f64 + dx, s * v.y as f64 + dy)
}

fn dist(p: (f64, f64), q: (f64, f64)) -> f64 {
    ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()
}

/// Vertices at unit distance.
pub fn plane_neighbors(v: VertexCoord) -> Vec<VertexCoord> {
    let p = position(v);
    let mut out = Vec::new();
    for dx in -1..=1 {
        for dy in -1..=1 {
            for a in 0..4 {
                let w = VertexCoord::new(a, v.x + dx, v.y + dy);
                if w != v && (dist(p, position(w)) - 1.0).abs() < EPS {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Distance layers around `v` in the infinite tiling, up to `radius`.
pub fn plane_layers(v: VertexCoord, radius: u32) -> Vec<usize> {
    let mut seen = HashMap::from([(v, 0u32)]);
    let mut queue = VecDeque::from([v]);
    let mut layers = vec![0usize; radius as usize + 1];
    layers[0] = 1;
    while let Some(u) = queue.pop_front() {
        let d = seen[&u];
        if d == radius {
            continue;
        }
        for w in plane_neighbors(u) {
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                e.insert(d + 1);
                layers[d as usize + 1] += 1;
                queue.push_back(w);
            }
        }
    }
    layers
}

/// Adjacency-list graph with all-pairs distances.
pub struct RefGraph {
    pub vertices: Vec<VertexCoord>,
    pub adj: Vec<Vec<usize>>,
    pub dist: Vec<Vec<u32>>,
}

impl RefGraph {
    fn new(vertices: Vec<VertexCoord>, adj: Vec<Vec<usize>>) -> Self {
        let n = vertices.len();
        let dist = (0..n)
            .map(|s| {
                let mut d = vec![u32::MAX; n];
                d[s] = 0;
                let mut q = VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    for &w in &adj[u] {
                        if d[w] == u32::MAX {
                            d[w] = d[u] + 1;
                            q.push_back(w);
                        }
                    }
                }
                d
            })
            .collect();
        RefGraph {
            vertices,
            adj,
            dist,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn reception(&self, towers: &[usize], t: u32) -> Vec<u64> {
        (0..self.len())
            .map(|u| {
                towers
                    .iter()
                    .map(|&v| self.dist[u][v])
                    .filter(|&d| d < t)
                    .map(|d| (t - d) as u64)
                    .sum()
            })
            .collect()
    }

    pub fn is_broadcast(&self, towers: &[usize], t: u32, r: u32) -> bool {
        self.reception(towers, t).iter().all(|&f| f >= r as u64)
    }

    pub fn radius(&self) -> u32 {
        self.dist
            .iter()
            .map(|row| *row.iter().max().unwrap())
            .min()
            .unwrap()
    }

    /// Smallest broadcast by trying subsets in increasing size.
    pub fn exhaustive_gamma(&self, t: u32, r: u32) -> usize {
        let n = self.len();
        for k in 1..=n {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                if self.is_broadcast(&idx, t, r) {
                    return k;
                }
                let mut i = k;
                while i > 0 && idx[i - 1] == n - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        n
    }
}

fn induced(vertices: Vec<VertexCoord>) -> RefGraph {
    let pos: Vec<(f64, f64)> = vertices.iter().map(|&v| position(v)).collect();
    let adj = (0..vertices.len())
        .map(|i| {
            (0..vertices.len())
                .filter(|&j| j != i && (dist(pos[i], pos[j]) - 1.0).abs() < EPS)
                .collect()
        })
        .collect();
    RefGraph::new(vertices, adj)
}

/// `m` rows of `n` regular octagons: every vertex lying on the circumcircle
/// of one of the octagons.
pub fn ref_grid(m: u32, n: u32) -> RefGraph {
    let s = 1.0 + SQRT2;
    let circumradius = 1.0 / (2.0 * (std::f64::consts::PI / 8.0).sin());
    let mut vertices = Vec::new();
    for x in -1..=n as i64 + 1 {
        for y in -1..=m as i64 + 1 {
            for a in 0..4 {
                let v = VertexCoord::new(a, x, y);
                let p = position(v);
                let on_octagon = (0..n as i64).any(|ox| {
                    (0..m as i64).any(|oy| {
                        let c = (s * (ox as f64 + 0.5), s * (oy as f64 + 0.5));
                        (dist(p, c) - circumradius).abs() < EPS
                    })
                });
                if on_octagon {
                    vertices.push(v);
                }
            }
        }
    }
    induced(vertices)
}

/// Whether `(dx, dy)` is an integer combination of the basis rows.
pub fn in_lattice(basis: [[i64; 2]; 2], dx: i64, dy: i64) -> bool {
    let [[ax, ay], [bx, by]] = basis;
    let det = ax * by - ay * bx;
    let i = dx * by - dy * bx;
    let j = ax * dy - ay * dx;
    i % det == 0 && j % det == 0
}

/// Quotient of the tiling by the lattice spanned by `basis`.
pub fn ref_torus(basis: [[i64; 2]; 2]) -> RefGraph {
    let det = (basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]).abs();
    let same =
        |u: VertexCoord, v: VertexCoord| u.a == v.a && in_lattice(basis, u.x - v.x, u.y - v.y);
    let mut vertices: Vec<VertexCoord> = Vec::new();
    for x in 0..det {
        for y in 0..det {
            for a in 0..4 {
                let v = VertexCoord::new(a, x, y);
                if !vertices.iter().any(|&w| same(v, w)) {
                    vertices.push(v);
                }
            }
        }
    }
    assert_eq!(vertices.len() as i64, 4 * det);
    let adj = vertices
        .iter()
        .map(|&v| {
            let mut nbs: Vec<usize> = plane_neighbors(v)
                .into_iter()
                .map(|w| vertices.iter().position(|&u| same(u, w)).unwrap())
                .collect();
            nbs.sort_unstable();
            nbs.dedup();
            nbs
        })
        .collect();
    RefGraph::new(vertices, adj)
}

/// Every lattice of index `<= max_det` in Hermite form `((d1, 0), (k, d2))`.
pub fn hermite_bases(max_det: i64) -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    for d1 in 1..=max_det {
        for d2 in 1..=max_det / d1 {
            for k in 0..d1 {
                out.push([[d1, 0], [k, d2]]);
            }
        }
    }
    out
}

/// Reception at `u` in the infinite tiling from every tower selected by `tower`.
pub fn plane_reception(u: VertexCoord, t: u32, tower: impl Fn(VertexCoord) -> bool) -> u64 {
    let mut seen = HashMap::from([(u, 0u32)]);
    let mut queue = VecDeque::from([u]);
    let mut f = 0;
    while let Some(w) = queue.pop_front() {
        let d = seen[&w];
        if tower(w) {
            f += (t - d) as u64;
        }
        if d + 1 >= t {
            continue;
        }
        for z in plane_neighbors(w) {
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(z) {
                e.insert(d + 1);
                queue.push_back(z);
            }
        }
    }
    f
}
