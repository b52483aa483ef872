//! Finite pieces of the tiling: the grids `H_{m,n}` and torus quotients.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::lattice::VertexCoord;
use crate::period::{Basis, PeriodLattice};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// `m` rows of `n` octagons.
    Grid { m: u32, n: u32 },
    /// Quotient of the tiling by the lattice spanned by `basis`.
    Torus {
        basis: Basis,
        lattice: PeriodLattice,
    },
}

/// An immutable finite graph with coordinate-labelled, densely indexed vertices.
#[derive(Clone, Debug)]
pub struct FiniteGraph {
    kind: GraphKind,
    coords: Vec<VertexCoord>,
    index_of: HashMap<VertexCoord, usize>,
    adjacency: Vec<Vec<usize>>,
}

/// The eight vertices of the octagon whose lower-left square is `(x, y)`,
/// listed in cyclic order.
pub fn octagon(x: i64, y: i64) -> [VertexCoord; 8] {
    let v = |a, x, y| VertexCoord { a, x, y };
    [
        v(0, x, y),
        v(1, x, y),
        v(3, x + 1, y),
        v(0, x + 1, y),
        v(2, x + 1, y + 1),
        v(3, x + 1, y + 1),
        v(1, x, y + 1),
        v(2, x, y + 1),
    ]
}

/// Closed-form vertex count of `H_{m,n}`.
pub fn grid_vertex_count(m: u32, n: u32) -> u64 {
    let (m, n) = (m as u64, n as u64);
    2 * m + n * (4 * m + 2)
}

impl FiniteGraph {
    fn from_vertices(
        kind: GraphKind,
        mut coords: Vec<VertexCoord>,
        project: impl Fn(VertexCoord) -> VertexCoord,
    ) -> Self {
        coords.sort_by_key(|v| (v.y, v.x, v.a));
        coords.dedup();
        let index_of: HashMap<_, _> = coords.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adjacency = coords
            .iter()
            .map(|&v| {
                let mut nbs: Vec<usize> = v
                    .neighbors()
                    .into_iter()
                    .filter_map(|u| index_of.get(&project(u)).copied())
                    .collect();
                nbs.sort_unstable();
                nbs.dedup();
                nbs
            })
            .collect();
        FiniteGraph {
            kind,
            coords,
            index_of,
            adjacency,
        }
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn coords(&self) -> &[VertexCoord] {
        &self.coords
    }

    pub fn coord(&self, v: usize) -> VertexCoord {
        self.coords[v]
    }

    /// Index of a coordinate. Torus graphs accept any lift of a class.
    pub fn index_of(&self, v: VertexCoord) -> Option<usize> {
        match &self.kind {
            GraphKind::Torus { lattice, .. } => {
                self.index_of.get(&lattice.reduce_vertex(v)).copied()
            }
            GraphKind::Grid { .. } => self.index_of.get(&v).copied(),
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges `(i, j)` with `i < j`, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbs)| nbs.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
            .collect()
    }

    /// Single-source distances; `None` marks vertices farther than `cap` or unreachable.
    pub fn bfs_distances(
        &self,
        source: usize,
        cap: Option<u32>,
    ) -> Result<Vec<Option<u32>>, Error> {
        if source >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                index: source,
                count: self.vertex_count(),
            });
        }
        Ok(self.bfs_unchecked(source, cap))
    }

    pub(crate) fn bfs_unchecked(&self, source: usize, cap: Option<u32>) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            if cap.is_some_and(|c| d >= c) {
                continue;
            }
            for &u in &self.adjacency[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs_unchecked(0, None).iter().all(Option::is_some)
    }

    /// Two-colouring by BFS parity.
    pub fn is_bipartite(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.vertex_count()];
        for s in 0..self.vertex_count() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &u in &self.adjacency[v] {
                    match colour[u] {
                        None => {
                            colour[u] = Some(!c);
                            queue.push_back(u);
                        }
                        Some(cu) if cu == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn eccentricity(&self, v: usize) -> Result<u32, Error> {
        let dist = self.bfs_distances(v, None)?;
        dist.iter()
            .map(|d| d.ok_or(Error::Disconnected))
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// Minimum eccentricity together with the smallest index attaining it.
    pub fn center(&self) -> Result<(u32, usize), Error> {
        if self.vertex_count() == 0 {
            return Err(Error::InvalidParameter("empty graph has no radius".into()));
        }
        let mut best = (u32::MAX, 0);
        for v in 0..self.vertex_count() {
            let e = self.eccentricity(v)?;
            if e < best.0 {
                best = (e, v);
            }
        }
        Ok(best)
    }

    pub fn radius(&self) -> Result<u32, Error> {
        self.center().map(|(r, _)| r)
    }

    pub fn diameter(&self) -> Result<u32, Error> {
        (0..self.vertex_count()).try_fold(0, |acc, v| Ok(acc.max(self.eccentricity(v)?)))
    }

    pub fn to_export(&self) -> GraphExport {
        let (kind, m, n, basis) = match &self.kind {
            GraphKind::Grid { m, n } => ("grid", Some(*m), Some(*n), None),
            GraphKind::Torus { basis, .. } => ("torus", None, None, Some(*basis)),
        };
        GraphExport {
            kind: kind.to_string(),
            m,
            n,
            basis,
            vertices: self.coords.clone(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    /// Rebuilds a graph from an export, checking the listed structure against
    /// the construction it names.
    pub fn from_export(e: &GraphExport) -> Result<Self, Error> {
        let g = match (e.kind.as_str(), e.m, e.n, e.basis) {
            ("grid", Some(m), Some(n), _) => build_grid(m, n)?,
            ("torus", _, _, Some(basis)) => build_torus(basis)?,
            _ => {
                return Err(Error::Format(format!(
                    "graph kind {:?} missing its parameters",
                    e.kind
                )))
            }
        };
        if g.coords != e.vertices {
            return Err(Error::Format(
                "vertex list does not match the named graph".into(),
            ));
        }
        let listed: BTreeSet<(usize, usize)> =
            e.edges.iter().map(|&[i, j]| (i.min(j), i.max(j))).collect();
        let expected: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
        if listed != expected {
            return Err(Error::Format(
                "edge list does not match the named graph".into(),
            ));
        }
        Ok(g)
    }
}

/// JSON form of a finite graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphExport {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    pub vertices: Vec<VertexCoord>,
    pub edges: Vec<[usize; 2]>,
}

/// `H_{m,n}`: the induced subgraph on the octagons with lower-left squares
/// `(x, y)`, `0 <= x < n`, `0 <= y < m`.
pub fn build_grid(m: u32, n: u32) -> Result<FiniteGraph, Error> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "grid needs m, n >= 1, got m={m} n={n}"
        )));
    }
    let mut coords = Vec::with_capacity(grid_vertex_count(m, n) as usize);
    for y in 0..m as i64 {
        for x in 0..n as i64 {
            coords.extend(octagon(x, y));
        }
    }
    Ok(FiniteGraph::from_vertices(
        GraphKind::Grid { m, n },
        coords,
        |v| v,
    ))
}

/// Quotient of the tiling by the lattice spanned by `basis`.
pub fn build_torus(basis: Basis) -> Result<FiniteGraph, Error> {
    let lattice = PeriodLattice::from_basis(&basis)?;
    let coords = (0..lattice.class_count())
        .map(|i| lattice.class_vertex(i))
        .collect();
    Ok(FiniteGraph::from_vertices(
        GraphKind::Torus { basis, lattice },
        coords,
        move |v| lattice.reduce_vertex(v),
    ))
}
