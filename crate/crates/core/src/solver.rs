//! Exact `(t,r)` broadcast domination numbers by branch and bound.
//!
//! The search works on a [`Coverage`] table: for every candidate tower the
//! signal it delivers to every target. Finite graphs and periodic quotients
//! both reduce to this form, so the same search serves grids, tori and
//! lattice-periodic patterns.
//!
//! Branching follows the most-constrained-first rule: take the target with the
//! largest remaining deficiency (smallest index on ties) and branch over the
//! towers that reach it. Branch `i` adds tower `c_i` and forbids
//! `c_1 .. c_{i-1}`, so every set is visited at most once.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::grid::{build_grid, FiniteGraph, GraphKind};
use crate::lattice::VertexCoord;
use crate::par::{self, Exec};
use crate::reception::{check_r, is_broadcast, BroadcastSet};
use crate::{bounds, Error, Interrupted};

/// Signal table for a covering problem.
#[derive(Clone, Debug)]
pub struct Coverage {
    t: u32,
    r: u32,
    /// tower -> (target, signal), signal > 0
    reach: Vec<Vec<(u32, u32)>>,
    /// target -> towers with nonzero signal there
    reached_by: Vec<Vec<u32>>,
    /// automorphisms of the table, as index permutations (identity excluded)
    symmetries: Vec<Vec<u32>>,
}

impl Coverage {
    /// Builds a table from per-tower signal lists over `size` vertices.
    /// Entries for the same target are merged by summation.
    pub fn from_reach(
        size: usize,
        t: u32,
        r: u32,
        reach: Vec<Vec<(u32, u32)>>,
    ) -> Result<Self, Error> {
        check_r(r, t)?;
        if reach.len() != size {
            return Err(Error::InvalidParameter("reach table size mismatch".into()));
        }
        let mut merged = Vec::with_capacity(size);
        let mut reached_by = vec![Vec::new(); size];
        for (v, list) in reach.into_iter().enumerate() {
            let mut list = list;
            list.sort_unstable();
            let mut out: Vec<(u32, u32)> = Vec::with_capacity(list.len());
            for (u, s) in list {
                if (u as usize) >= size {
                    return Err(Error::VertexOutOfRange {
                        index: u as usize,
                        count: size,
                    });
                }
                match out.last_mut() {
                    Some(last) if last.0 == u => last.1 += s,
                    _ => out.push((u, s)),
                }
            }
            out.retain(|&(_, s)| s > 0);
            for &(u, _) in &out {
                reached_by[u as usize].push(v as u32);
            }
            merged.push(out);
        }
        Ok(Coverage {
            t,
            r,
            reach: merged,
            reached_by,
            symmetries: Vec::new(),
        })
    }

    /// Signals on a finite graph from depth-`(t-1)` BFS around every vertex.
    pub fn from_graph(g: &FiniteGraph, t: u32, r: u32) -> Result<Self, Error> {
        check_r(r, t)?;
        let reach = (0..g.vertex_count())
            .map(|v| {
                g.bfs_unchecked(v, Some(t - 1))
                    .into_iter()
                    .enumerate()
                    .filter_map(|(u, d)| d.map(|d| (u as u32, t - d)))
                    .collect()
            })
            .collect();
        let mut cov = Self::from_reach(g.vertex_count(), t, r, reach)?;
        if let GraphKind::Grid { .. } = g.kind() {
            cov.symmetries = grid_symmetries(g);
        }
        Ok(cov)
    }

    /// Installs automorphisms used to prune the root branch. Each must map
    /// signals onto equal signals; non-automorphisms are rejected.
    pub fn with_symmetries(mut self, perms: Vec<Vec<u32>>) -> Result<Self, Error> {
        for p in &perms {
            if !self.is_automorphism(p) {
                return Err(Error::InvalidParameter(
                    "permutation is not a symmetry".into(),
                ));
            }
        }
        self.symmetries = perms.into_iter().filter(|p| !is_identity(p)).collect();
        Ok(self)
    }

    pub fn is_automorphism(&self, p: &[u32]) -> bool {
        if p.len() != self.size() {
            return false;
        }
        let mut seen = vec![false; p.len()];
        for &x in p {
            if x as usize >= p.len() || std::mem::replace(&mut seen[x as usize], true) {
                return false;
            }
        }
        self.reach.iter().enumerate().all(|(v, list)| {
            let mut image: Vec<(u32, u32)> =
                list.iter().map(|&(u, s)| (p[u as usize], s)).collect();
            image.sort_unstable();
            image == self.reach[p[v] as usize]
        })
    }

    pub fn size(&self) -> usize {
        self.reach.len()
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn symmetries(&self) -> &[Vec<u32>] {
        &self.symmetries
    }

    pub fn reach(&self, v: usize) -> &[(u32, u32)] {
        &self.reach[v]
    }

    /// Reception of every target under `towers`.
    pub fn reception(&self, towers: &[u32]) -> Vec<u64> {
        let mut f = vec![0u64; self.size()];
        for &v in towers {
            for &(u, s) in &self.reach[v as usize] {
                f[u as usize] += s as u64;
            }
        }
        f
    }

    pub fn covers(&self, towers: &[u32]) -> bool {
        self.reception(towers).iter().all(|&f| f >= self.r as u64)
    }

    /// Upper bound on how much one tower can lower the total deficiency.
    fn max_useful_signal(&self) -> u64 {
        self.reach
            .iter()
            .map(|l| l.iter().map(|&(_, s)| s.min(self.r) as u64).sum::<u64>())
            .max()
            .unwrap_or(0)
    }
}

fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Dihedral symmetries of a grid, found by testing the eight point symmetries
/// of the square lattice against the vertex set.
pub fn grid_symmetries(g: &FiniteGraph) -> Vec<Vec<u32>> {
    let GraphKind::Grid { m, n } = *g.kind() else {
        return Vec::new();
    };
    let (m, n) = (m as i64, n as i64);
    // direction of clock position a: 0 up, 1 right, 2 down, 3 left
    const DIRS: [[i64; 2]; 4] = [[0, 1], [1, 0], [0, -1], [-1, 0]];
    let mats: [[[i64; 2]; 2]; 8] = [
        [[1, 0], [0, 1]],
        [[-1, 0], [0, 1]],
        [[1, 0], [0, -1]],
        [[-1, 0], [0, -1]],
        [[0, 1], [1, 0]],
        [[0, -1], [1, 0]],
        [[0, 1], [-1, 0]],
        [[0, -1], [-1, 0]],
    ];
    let mut out = Vec::new();
    for mat in mats {
        let apply = |x: i64, y: i64| (mat[0][0] * x + mat[0][1] * y, mat[1][0] * x + mat[1][1] * y);
        // squares span [0, n] x [0, m]; realign the image box at the origin
        let corners = [apply(0, 0), apply(n, 0), apply(0, m), apply(n, m)];
        let min_x = corners.iter().map(|c| c.0).min().unwrap();
        let min_y = corners.iter().map(|c| c.1).min().unwrap();
        let map_a = |a: u8| {
            let d = DIRS[a as usize];
            let img = apply(d[0], d[1]);
            DIRS.iter().position(|&e| e == [img.0, img.1]).unwrap() as u8
        };
        let perm: Option<Vec<u32>> = g
            .coords()
            .iter()
            .map(|c| {
                let (x, y) = apply(c.x, c.y);
                let image = VertexCoord {
                    a: map_a(c.a),
                    x: x - min_x,
                    y: y - min_y,
                };
                g.index_of(image).map(|i| i as u32)
            })
            .collect();
        if let Some(p) = perm {
            let preserves = (0..g.vertex_count()).all(|v| {
                g.neighbors(v)
                    .iter()
                    .all(|&u| g.neighbors(p[v] as usize).contains(&(p[u] as usize)))
            });
            if preserves && !is_identity(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Search limits shared by every worker.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
    pub node_limit: Option<u64>,
}

impl Limits {
    pub fn none() -> Self {
        Limits::default()
    }

    pub fn time(budget: Duration) -> Self {
        Limits {
            deadline: Some(Instant::now() + budget),
            node_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolverConfig {
    pub exec: Exec,
    pub limits: Limits,
}

impl SolverConfig {
    pub fn sequential() -> Self {
        SolverConfig {
            exec: Exec::Sequential,
            limits: Limits::none(),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }
}

/// Outcome of a decision search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    /// Some set of at most `k` towers, or `None` when none exists.
    pub witness: Option<Vec<u32>>,
    pub explored: u64,
}

/// Outcome of a minimisation on a [`Coverage`] table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    pub towers: Vec<u32>,
    pub explored: u64,
    pub proved: bool,
}

#[derive(Debug)]
struct Stop;

struct Shared<'a> {
    cov: &'a Coverage,
    limits: Limits,
    explored: AtomicU64,
    found: AtomicBool,
    interrupted: AtomicBool,
    static_gain: u64,
}

impl Shared<'_> {
    fn tick(&self) -> Result<(), Stop> {
        let n = self.explored.fetch_add(1, Ordering::Relaxed) + 1;
        if self.interrupted.load(Ordering::Relaxed) {
            return Err(Stop);
        }
        if let Some(limit) = self.limits.node_limit {
            if n > limit {
                self.interrupted.store(true, Ordering::Relaxed);
                return Err(Stop);
            }
        }
        if n.is_multiple_of(1024) {
            if let Some(d) = self.limits.deadline {
                if Instant::now() >= d {
                    self.interrupted.store(true, Ordering::Relaxed);
                    return Err(Stop);
                }
            }
        }
        Ok(())
    }
}

/// A partially built tower set.
#[derive(Clone)]
struct State {
    reception: Vec<u32>,
    deficit: u64,
    chosen: Vec<u32>,
    in_set: Vec<bool>,
    banned: Vec<bool>,
}

#[derive(Clone, Debug)]
struct Task {
    chosen: Vec<u32>,
    banned: Vec<u32>,
}

impl State {
    fn new(cov: &Coverage) -> Self {
        State {
            reception: vec![0; cov.size()],
            deficit: cov.r as u64 * cov.size() as u64,
            chosen: Vec::new(),
            in_set: vec![false; cov.size()],
            banned: vec![false; cov.size()],
        }
    }

    fn from_task(cov: &Coverage, task: &Task) -> Self {
        let mut s = State::new(cov);
        for &v in &task.chosen {
            s.add(cov, v);
        }
        for &v in &task.banned {
            s.banned[v as usize] = true;
        }
        s
    }

    fn deficiency(&self, r: u32, u: usize) -> u32 {
        r.saturating_sub(self.reception[u])
    }

    fn gain(&self, cov: &Coverage, v: u32) -> u64 {
        cov.reach[v as usize]
            .iter()
            .map(|&(u, s)| s.min(self.deficiency(cov.r, u as usize)) as u64)
            .sum()
    }

    fn add(&mut self, cov: &Coverage, v: u32) {
        let r = cov.r;
        for &(u, s) in &cov.reach[v as usize] {
            let before = self.deficiency(r, u as usize);
            self.reception[u as usize] += s;
            self.deficit -= (before - self.deficiency(r, u as usize)) as u64;
        }
        self.chosen.push(v);
        self.in_set[v as usize] = true;
    }

    fn remove_last(&mut self, cov: &Coverage) {
        let v = self.chosen.pop().expect("nothing to remove");
        let r = cov.r;
        for &(u, s) in &cov.reach[v as usize] {
            let before = self.deficiency(r, u as usize);
            self.reception[u as usize] -= s;
            self.deficit += (self.deficiency(r, u as usize) - before) as u64;
        }
        self.in_set[v as usize] = false;
    }

    fn open(&self, v: u32) -> bool {
        !self.in_set[v as usize] && !self.banned[v as usize]
    }

    /// Target with the largest deficiency, smallest index on ties.
    fn branch_target(&self, r: u32) -> usize {
        let mut best = (0, 0);
        for u in 0..self.reception.len() {
            let d = self.deficiency(r, u);
            if d > best.0 {
                best = (d, u);
            }
        }
        best.1
    }

    /// Admissible test: can `budget` more towers possibly clear the deficit?
    fn hopeless(&self, sh: &Shared, budget: usize) -> bool {
        if self.deficit > budget as u64 * sh.static_gain {
            return true;
        }
        // sum of the `budget` best individual gains over all open towers
        let mut gains: Vec<u64> = (0..sh.cov.size() as u32)
            .filter(|&v| self.open(v))
            .map(|v| self.gain(sh.cov, v))
            .filter(|&g| g > 0)
            .collect();
        if gains.len() > budget {
            gains.select_nth_unstable_by(budget - 1, |a, b| b.cmp(a));
            gains.truncate(budget);
        }
        gains.iter().sum::<u64>() < self.deficit
    }

    /// Branch candidates for target `u`, best first; root symmetry applied when
    /// a stabiliser is supplied.
    fn candidates(&self, cov: &Coverage, u: usize, stabiliser: &[&Vec<u32>]) -> Vec<u32> {
        let mut cands: Vec<(u64, u32)> = cov.reached_by[u]
            .iter()
            .copied()
            .filter(|&v| self.open(v))
            .map(|v| (self.gain(cov, v), v))
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut out: Vec<u32> = Vec::with_capacity(cands.len());
        for (_, v) in cands {
            let redundant = stabiliser.iter().any(|p| out.contains(&p[v as usize]));
            if !redundant {
                out.push(v);
            }
        }
        out
    }
}

fn dfs(
    sh: &Shared,
    st: &mut State,
    budget: usize,
    frontier: &mut Option<(usize, Vec<Task>)>,
) -> Result<bool, Stop> {
    sh.tick()?;
    if st.deficit == 0 {
        return Ok(true);
    }
    if sh.found.load(Ordering::Relaxed) {
        return Ok(false);
    }
    if budget == 0 || st.hopeless(sh, budget) {
        return Ok(false);
    }
    if let Some((depth, tasks)) = frontier {
        if st.chosen.len() == *depth {
            tasks.push(Task {
                chosen: st.chosen.clone(),
                banned: (0..st.banned.len() as u32)
                    .filter(|&v| st.banned[v as usize])
                    .collect(),
            });
            return Ok(false);
        }
    }
    let r = sh.cov.r;
    let at_root = st.chosen.is_empty() && st.banned.iter().all(|b| !b);
    let (u, stabiliser) = if at_root && !sh.cov.symmetries.is_empty() {
        // every target is equally deficient here, so pick one with the largest stabiliser
        let mut best: (usize, usize) = (0, 0);
        for u in 0..sh.cov.size() {
            let fixed = sh
                .cov
                .symmetries
                .iter()
                .filter(|p| p[u] as usize == u)
                .count();
            if fixed > best.0 {
                best = (fixed, u);
            }
        }
        let u = best.1;
        let stab: Vec<&Vec<u32>> = sh
            .cov
            .symmetries
            .iter()
            .filter(|p| p[u] as usize == u)
            .collect();
        (u, stab)
    } else {
        (st.branch_target(r), Vec::new())
    };
    let cands = st.candidates(sh.cov, u, &stabiliser);
    let mut banned_here = Vec::with_capacity(cands.len());
    let mut result = Ok(false);
    for c in cands {
        st.add(sh.cov, c);
        let sub = dfs(sh, st, budget - 1, frontier);
        match sub {
            Ok(true) => {
                result = Ok(true);
                break;
            }
            Ok(false) => {}
            Err(e) => {
                st.remove_last(sh.cov);
                result = Err(e);
                break;
            }
        }
        st.remove_last(sh.cov);
        st.banned[c as usize] = true;
        banned_here.push(c);
    }
    if !matches!(result, Ok(true)) {
        for c in banned_here {
            st.banned[c as usize] = false;
        }
    }
    result
}

/// Finds a set of at most `k` towers covering every target, or proves none exists.
pub fn exists_cover(
    cov: &Coverage,
    k: usize,
    config: &SolverConfig,
) -> Result<Decision, Interrupted> {
    let sh = Shared {
        cov,
        limits: config.limits,
        explored: AtomicU64::new(0),
        found: AtomicBool::new(false),
        interrupted: AtomicBool::new(false),
        static_gain: cov.max_useful_signal(),
    };
    let interrupted = |sh: &Shared| Interrupted {
        lower: 0,
        best: None,
        explored: sh.explored.load(Ordering::Relaxed),
    };
    let k = k.min(cov.size());
    let mut root = State::new(cov);

    if !config.exec.is_parallel() || k < 3 {
        let mut none = None;
        return match dfs(&sh, &mut root, k, &mut none) {
            Ok(true) => Ok(Decision {
                witness: Some(root.chosen),
                explored: sh.explored.load(Ordering::Relaxed),
            }),
            Ok(false) => Ok(Decision {
                witness: None,
                explored: sh.explored.load(Ordering::Relaxed),
            }),
            Err(Stop) => Err(interrupted(&sh)),
        };
    }

    // grow a frontier deep enough to keep the pool busy, then farm it out
    let target = 8 * par::current_threads();
    let mut tasks = Vec::new();
    for depth in 1..=3.min(k - 1) {
        let mut frontier = Some((depth, Vec::new()));
        let mut st = State::new(cov);
        match dfs(&sh, &mut st, k, &mut frontier) {
            Ok(true) => {
                return Ok(Decision {
                    witness: Some(st.chosen),
                    explored: sh.explored.load(Ordering::Relaxed),
                })
            }
            Ok(false) => {}
            Err(Stop) => return Err(interrupted(&sh)),
        }
        tasks = frontier.unwrap().1;
        if tasks.len() >= target {
            break;
        }
    }
    let stop = AtomicBool::new(false);
    let hit = par::find_map(config.exec, &tasks, &stop, |task| {
        let mut st = State::from_task(cov, task);
        let budget = k - task.chosen.len();
        match dfs(&sh, &mut st, budget, &mut None) {
            Ok(true) => {
                sh.found.store(true, Ordering::Relaxed);
                Some(st.chosen)
            }
            _ => None,
        }
    });
    if hit.is_none() && sh.interrupted.load(Ordering::Relaxed) {
        return Err(interrupted(&sh));
    }
    Ok(Decision {
        witness: hit,
        explored: sh.explored.load(Ordering::Relaxed),
    })
}

/// Greedy cover: repeatedly add the tower with the largest gain (smallest
/// index on ties), then drop towers that are not needed, last-added first.
pub fn greedy_cover(cov: &Coverage) -> Vec<u32> {
    let mut st = State::new(cov);
    while st.deficit > 0 {
        let best = (0..cov.size() as u32)
            .filter(|&v| st.open(v))
            .map(|v| (st.gain(cov, v), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .expect("the full vertex set always covers");
        st.add(cov, best.1);
    }
    prune_redundant(cov, st.chosen)
}

/// Removes towers whose removal keeps the set covering, scanning from the end.
pub fn prune_redundant(cov: &Coverage, mut towers: Vec<u32>) -> Vec<u32> {
    let mut i = towers.len();
    while i > 0 {
        i -= 1;
        let v = towers.remove(i);
        if !cov.covers(&towers) {
            towers.insert(i, v);
        }
    }
    towers
}

/// Lower bound from total deficiency over the best single-tower gain.
pub fn trivial_lower_bound(cov: &Coverage) -> usize {
    let total = cov.r as u64 * cov.size() as u64;
    let g = cov.max_useful_signal().max(1);
    total.div_ceil(g) as usize
}

/// Minimum cover size: descends from `upper` (a known cover) until the search fails.
pub fn minimum_cover(
    cov: &Coverage,
    upper: Vec<u32>,
    config: &SolverConfig,
) -> Result<CoverSolution, Interrupted> {
    debug_assert!(cov.covers(&upper));
    let mut best = upper;
    let mut explored = 0;
    let lower = trivial_lower_bound(cov);
    while !best.is_empty() {
        match exists_cover(cov, best.len() - 1, config) {
            Ok(Decision {
                witness: Some(w),
                explored: e,
            }) => {
                explored += e;
                best = w;
            }
            Ok(Decision {
                witness: None,
                explored: e,
            }) => {
                explored += e;
                break;
            }
            Err(mut i) => {
                i.explored += explored;
                i.lower = lower.min(best.len());
                i.best = Some(best.iter().map(|&v| v as usize).collect());
                return Err(i);
            }
        }
    }
    best.sort_unstable();
    Ok(CoverSolution {
        towers: best,
        explored,
        proved: true,
    })
}

/// Result of an exact solve on a finite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub gamma: usize,
    pub witness: BroadcastSet,
    pub explored: u64,
    pub proof_of_minimality: bool,
}

fn graph_checks(g: &FiniteGraph, t: u32, r: u32) -> Result<(), Error> {
    check_r(r, t)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// A `(t,r)` broadcast of at most `k` vertices, if one exists.
pub fn exists_broadcast(
    g: &FiniteGraph,
    t: u32,
    r: u32,
    k: usize,
    config: &SolverConfig,
) -> Result<Option<BroadcastSet>, Error> {
    check_r(r, t)?;
    if k > g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "k={k} exceeds vertex count {}",
            g.vertex_count()
        )));
    }
    let cov = Coverage::from_graph(g, t, r)?;
    let d = exists_cover(&cov, k, config).map_err(|i| Error::Interrupted(Box::new(i)))?;
    match d.witness {
        Some(w) => {
            let set = BroadcastSet::new(w.into_iter().map(|v| v as usize), t)?;
            debug_assert!(is_broadcast(g, &set, r)?.valid);
            Ok(Some(set))
        }
        None => Ok(None),
    }
}

/// `γ_{t,r}(g)` with a minimality certificate.
pub fn gamma(g: &FiniteGraph, t: u32, r: u32, config: &SolverConfig) -> Result<SolveResult, Error> {
    graph_checks(g, t, r)?;
    let cov = Coverage::from_graph(g, t, r)?;
    let upper = bounds::constructive_upper(g, t, r)?;
    let upper: Vec<u32> = upper.vertices().iter().map(|&v| v as u32).collect();
    let sol = minimum_cover(&cov, upper, config).map_err(|i| Error::Interrupted(Box::new(i)))?;
    let witness = BroadcastSet::new(sol.towers.iter().map(|&v| v as usize), t)?;
    if !is_broadcast(g, &witness, r)?.valid {
        return Err(Error::Internal(
            "solver witness failed the reception check".into(),
        ));
    }
    Ok(SolveResult {
        gamma: witness.len(),
        witness,
        explored: sol.explored,
        proof_of_minimality: sol.proved,
    })
}

/// Smallest `t` for which a single tower suffices: `r + radius(g)`, with a center.
pub fn single_tower_threshold(g: &FiniteGraph, r: u32) -> Result<(u32, usize), Error> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let (rad, center) = g.center()?;
    Ok((r + rad, center))
}

/// One row of the single-tower threshold comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerRow {
    pub m: u32,
    pub r: u32,
    pub threshold: u32,
    pub conjectured: u32,
    pub agree: bool,
}

/// Conjectured threshold on `H_{m,m}`: `r + 2m + 1` for even `m`, `r + 2m + 2` for odd `m`.
pub fn conjectured_threshold(m: u32, r: u32) -> u32 {
    r + 2 * m + if m.is_multiple_of(2) { 1 } else { 2 }
}

/// Compares computed single-tower thresholds on `H_{m,m}` with the conjectured formula.
pub fn single_tower_report(m_max: u32, r_max: u32) -> Result<Vec<TowerRow>, Error> {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let g = build_grid(m, m)?;
        let rad = g.radius()?;
        for r in 1..=r_max {
            let threshold = r + rad;
            let conjectured = conjectured_threshold(m, r);
            rows.push(TowerRow {
                m,
                r,
                threshold,
                conjectured,
                agree: threshold == conjectured,
            });
        }
    }
    Ok(rows)
}
