//! Reception `f(u) = Σ_{v∈T, d(u,v)<t} (t − d(u,v))` and the broadcast check.

use serde::{Deserialize, Serialize};

use crate::grid::FiniteGraph;
use crate::lattice::VertexCoord;
use crate::par::{self, Exec};
use crate::Error;

/// A set of broadcasting vertices (graph indices) with transmission strength `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BroadcastSet {
    vertices: Vec<usize>,
    t: u32,
}

impl BroadcastSet {
    /// Sorts and deduplicates `vertices`.
    pub fn new(vertices: impl IntoIterator<Item = usize>, t: u32) -> Result<Self, Error> {
        if t < 1 {
            return Err(Error::InvalidParameter(format!("t must be >= 1, got {t}")));
        }
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Ok(BroadcastSet { vertices, t })
    }

    pub fn empty(t: u32) -> Result<Self, Error> {
        Self::new([], t)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn check(&self, g: &FiniteGraph) -> Result<(), Error> {
        match self.vertices.last() {
            Some(&v) if v >= g.vertex_count() => Err(Error::VertexOutOfRange {
                index: v,
                count: g.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    pub fn coords(&self, g: &FiniteGraph) -> Vec<VertexCoord> {
        self.vertices.iter().map(|&v| g.coord(v)).collect()
    }

    pub fn to_file(&self, g: &FiniteGraph) -> BroadcastSetFile {
        BroadcastSetFile {
            t: self.t,
            vertices: self.coords(g),
        }
    }

    pub fn from_file(file: &BroadcastSetFile, g: &FiniteGraph) -> Result<Self, Error> {
        let idx = file
            .vertices
            .iter()
            .map(|&c| g.index_of(c).ok_or(Error::VertexNotInGraph(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(idx, file.t)
    }
}

/// JSON form: `{"t": 2, "vertices": [[a, x, y], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroadcastSetFile {
    pub t: u32,
    pub vertices: Vec<VertexCoord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReceptionMap {
    pub values: Vec<u64>,
}

impl ReceptionMap {
    pub fn min(&self) -> Option<u64> {
        self.values.iter().copied().min()
    }
}

/// Outcome of [`is_broadcast`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    /// Every vertex with reception below `r`, with its reception.
    pub deficient: Vec<(usize, u64)>,
}

pub fn reception_map(g: &FiniteGraph, set: &BroadcastSet) -> Result<ReceptionMap, Error> {
    reception_map_with(g, set, Exec::Sequential)
}

/// Per-broadcaster capped BFS, merged by summation.
pub fn reception_map_with(
    g: &FiniteGraph,
    set: &BroadcastSet,
    exec: Exec,
) -> Result<ReceptionMap, Error> {
    set.check(g)?;
    let t = set.t();
    let partials = par::map(exec, set.vertices(), |&v| g.bfs_unchecked(v, Some(t - 1)));
    let mut values = vec![0u64; g.vertex_count()];
    for dist in partials {
        for (u, d) in dist.into_iter().enumerate() {
            if let Some(d) = d {
                values[u] += (t - d) as u64;
            }
        }
    }
    Ok(ReceptionMap { values })
}

/// Whether every vertex receives at least `r`; requires `1 <= r <= t`.
pub fn is_broadcast(g: &FiniteGraph, set: &BroadcastSet, r: u32) -> Result<Verdict, Error> {
    check_r(r, set.t())?;
    let map = reception_map(g, set)?;
    let deficient: Vec<(usize, u64)> = map
        .values
        .iter()
        .enumerate()
        .filter(|&(_, &f)| f < r as u64)
        .map(|(u, &f)| (u, f))
        .collect();
    Ok(Verdict {
        valid: deficient.is_empty(),
        deficient,
    })
}

pub(crate) fn check_r(r: u32, t: u32) -> Result<(), Error> {
    if r < 1 || r > t {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r <= t, got r={r} t={t}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use proptest::prelude::*;

    /// C8 as H_{1,1}; indices along the cycle.
    fn c8_cycle(g: &FiniteGraph) -> Vec<usize> {
        let mut order = vec![0];
        let mut prev = usize::MAX;
        while order.len() < 8 {
            let cur = *order.last().unwrap();
            let next = *g.neighbors(cur).iter().find(|&&u| u != prev).unwrap();
            prev = cur;
            order.push(next);
        }
        order
    }

    #[test]
    fn single_source_on_cycle() {
        let g = build_grid(1, 1).unwrap();
        let cyc = c8_cycle(&g);
        let set = BroadcastSet::new([cyc[0]], 3).unwrap();
        let f = reception_map(&g, &set).unwrap().values;
        let by_pos: Vec<u64> = cyc.iter().map(|&v| f[v]).collect();
        assert_eq!(by_pos, vec![3, 2, 1, 0, 0, 0, 1, 2]);
    }

    #[test]
    fn antipodal_pair_on_cycle() {
        let g = build_grid(1, 1).unwrap();
        let cyc = c8_cycle(&g);
        let set = BroadcastSet::new([cyc[0], cyc[4]], 2).unwrap();
        let f = reception_map(&g, &set).unwrap().values;
        let by_pos: Vec<u64> = cyc.iter().map(|&v| f[v]).collect();
        // frozen from a direct sum over the 8-cycle
        assert_eq!(by_pos, vec![2, 1, 0, 1, 2, 1, 0, 1]);
        let verdict = is_broadcast(&g, &set, 1).unwrap();
        assert!(!verdict.valid);
        assert_eq!(verdict.deficient.len(), 2);
    }

    #[test]
    fn empty_set_receives_nothing() {
        let g = build_grid(2, 3).unwrap();
        let set = BroadcastSet::empty(4).unwrap();
        assert!(reception_map(&g, &set)
            .unwrap()
            .values
            .iter()
            .all(|&f| f == 0));
        let v = is_broadcast(&g, &set, 1).unwrap();
        assert_eq!(v.deficient.len(), g.vertex_count());
    }

    #[test]
    fn three_towers_dominate_c8() {
        let g = build_grid(1, 1).unwrap();
        let cyc = c8_cycle(&g);
        // gaps 3, 3, 2 around the cycle
        let set = BroadcastSet::new([cyc[0], cyc[3], cyc[6]], 2).unwrap();
        assert!(is_broadcast(&g, &set, 1).unwrap().valid);
    }

    #[test]
    fn everything_with_t1() {
        let g = build_grid(2, 2).unwrap();
        let set = BroadcastSet::new(0..g.vertex_count(), 1).unwrap();
        assert!(is_broadcast(&g, &set, 1).unwrap().valid);
    }

    #[test]
    fn r_above_t_rejected() {
        let g = build_grid(1, 1).unwrap();
        let set = BroadcastSet::new([0], 2).unwrap();
        assert!(is_broadcast(&g, &set, 3).is_err());
        assert!(is_broadcast(&g, &set, 0).is_err());
    }

    #[test]
    fn out_of_range_index_rejected() {
        let g = build_grid(1, 1).unwrap();
        let set = BroadcastSet::new([8], 2).unwrap();
        assert!(reception_map(&g, &set).is_err());
    }

    #[test]
    fn file_round_trip() {
        let g = build_grid(2, 2).unwrap();
        let set = BroadcastSet::new([0, 5, 17], 3).unwrap();
        let json = serde_json::to_string(&set.to_file(&g)).unwrap();
        let file: BroadcastSetFile = serde_json::from_str(&json).unwrap();
        assert_eq!(BroadcastSet::from_file(&file, &g).unwrap(), set);
        let stray = BroadcastSetFile {
            t: 2,
            vertices: vec![VertexCoord::new(0, 40, 40)],
        };
        assert!(BroadcastSet::from_file(&stray, &g).is_err());
    }

    #[test]
    fn closed_neighbourhood_equivalence() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let g = build_grid(2, 2).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let picks: Vec<usize> = (0..g.vertex_count())
                .filter(|_| rng.random_bool(0.35))
                .collect();
            let set = BroadcastSet::new(picks.clone(), 2).unwrap();
            let dominated = (0..g.vertex_count())
                .all(|u| picks.contains(&u) || g.neighbors(u).iter().any(|w| picks.contains(w)));
            assert_eq!(is_broadcast(&g, &set, 1).unwrap().valid, dominated);
        }
    }

    fn subset_strategy(n: usize) -> impl Strategy<Value = (Vec<bool>, Vec<bool>, u32)> {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
            1u32..5,
        )
    }

    proptest! {
        #[test]
        fn additive_monotone_and_self_receiving((a, b, t) in subset_strategy(34)) {
            let g = build_grid(2, 3).unwrap();
            let s1: Vec<usize> = (0..34).filter(|&i| a[i]).collect();
            let s2: Vec<usize> = (0..34).filter(|&i| b[i] && !a[i]).collect();
            let f1 = reception_map(&g, &BroadcastSet::new(s1.clone(), t).unwrap()).unwrap().values;
            let f2 = reception_map(&g, &BroadcastSet::new(s2.clone(), t).unwrap()).unwrap().values;
            let union = BroadcastSet::new(s1.iter().chain(&s2).copied(), t).unwrap();
            let fu = reception_map_with(&g, &union, Exec::Parallel).unwrap().values;
            for u in 0..34 {
                prop_assert_eq!(fu[u], f1[u] + f2[u]);
                prop_assert!(fu[u] >= f1[u]);
            }
            for &v in union.vertices() {
                prop_assert!(fu[v] >= t as u64);
            }
        }
    }
}
