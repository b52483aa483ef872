//! Periodic broadcasts of the infinite tiling.
//!
//! A pattern is a period lattice `L` acting on square coordinates plus one
//! representative per broadcasting vertex class. Because reception is
//! translation invariant, checking one vertex per class (`4 |det L|` of them)
//! certifies the whole plane.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::lattice::{bfs_layers, distance_capped, VertexCoord};
use crate::par::{self, Exec};
use crate::period::{Basis, PeriodLattice, Vec2};
use crate::reception::check_r;
use crate::solver::{greedy_cover, minimum_cover, Coverage, Limits, SolverConfig};
use crate::{Error, Interrupted};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPattern {
    basis: Basis,
    lattice: PeriodLattice,
    reps: Vec<VertexCoord>,
    classes: BTreeSet<usize>,
    t: u32,
}

/// JSON form: `{"t": 3, "basis": [[1,1],[0,4]], "reps": [[2,0,0],[1,0,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternFile {
    pub t: u32,
    pub basis: Basis,
    pub reps: Vec<VertexCoord>,
}

impl PeriodicPattern {
    pub fn new(basis: Basis, reps: Vec<VertexCoord>, t: u32) -> Result<Self, Error> {
        if t < 1 {
            return Err(Error::InvalidParameter(format!("t must be >= 1, got {t}")));
        }
        let lattice = PeriodLattice::from_basis(&basis)?;
        let mut classes = BTreeSet::new();
        for &v in &reps {
            if !classes.insert(lattice.class_index(v)) {
                return Err(Error::InvalidParameter(format!(
                    "representative {v} repeats a class modulo the period lattice"
                )));
            }
        }
        Ok(PeriodicPattern {
            basis,
            lattice,
            reps,
            classes,
            t,
        })
    }

    pub fn from_file(f: &PatternFile) -> Result<Self, Error> {
        Self::new(f.basis, f.reps.clone(), f.t)
    }

    pub fn to_file(&self) -> PatternFile {
        PatternFile {
            t: self.t,
            basis: self.basis,
            reps: self.reps.clone(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn lattice(&self) -> &PeriodLattice {
        &self.lattice
    }

    pub fn reps(&self) -> &[VertexCoord] {
        &self.reps
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Whether `v` broadcasts.
    pub fn contains(&self, v: VertexCoord) -> bool {
        self.classes.contains(&self.lattice.class_index(v))
    }

    /// The same pattern without representative `i`.
    pub fn without_rep(&self, i: usize) -> Result<Self, Error> {
        let mut reps = self.reps.clone();
        reps.remove(i);
        Self::new(self.basis, reps, self.t)
    }

    /// `|reps| / (4 |det|)`, exactly.
    pub fn density(&self) -> Ratio<i64> {
        Ratio::new(self.reps.len() as i64, self.lattice.class_count() as i64)
    }
}

fn pattern(basis: Basis, reps: &[(i64, i64, i64)], t: u32) -> PeriodicPattern {
    let reps = reps
        .iter()
        .map(|&(a, x, y)| VertexCoord::new(a, x, y))
        .collect();
    PeriodicPattern::new(basis, reps, t).expect("catalog patterns are well formed")
}

/// The six known periodic broadcasts, keyed by `(t, r)`.
pub fn catalog() -> Vec<((u32, u32), PeriodicPattern)> {
    vec![
        ((2, 1), pattern([[1, 0], [0, 1]], &[(0, 0, 0)], 2)),
        (
            (2, 2),
            pattern(
                [[1, 1], [0, 2]],
                &[(0, 0, 0), (2, 0, 0), (1, 0, 1), (3, 0, 1)],
                2,
            ),
        ),
        (
            (3, 1),
            pattern([[1, 1], [0, 4]], &[(2, 0, 0), (1, 0, 2)], 3),
        ),
        (
            (3, 2),
            pattern(
                [[1, 1], [0, 6]],
                &[(3, 0, 0), (1, 0, 2), (0, 0, 3), (2, 0, 5)],
                3,
            ),
        ),
        ((3, 3), pattern([[1, 0], [0, 1]], &[(0, 0, 0)], 3)),
        (
            (4, 1),
            pattern([[1, 3], [0, 6]], &[(0, 0, 0), (2, 1, 2)], 4),
        ),
    ]
}

pub fn catalog_pattern(t: u32, r: u32) -> Option<PeriodicPattern> {
    catalog()
        .into_iter()
        .find(|(key, _)| *key == (t, r))
        .map(|(_, p)| p)
}

/// Result of checking a pattern over the whole plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteReport {
    pub valid: bool,
    pub min_reception: u64,
    /// Extremes over non-broadcasting classes; `None` when every class broadcasts.
    pub min_nonbroadcaster_reception: Option<u64>,
    pub max_nonbroadcaster_reception: Option<u64>,
    /// Canonical representatives of classes receiving less than `r`.
    pub deficient: Vec<(VertexCoord, u64)>,
}

/// Reception of every vertex class, indexed as in [`PeriodLattice::class_index`].
pub fn class_receptions(p: &PeriodicPattern, exec: Exec) -> Vec<u64> {
    let classes: Vec<usize> = (0..p.lattice.class_count()).collect();
    par::map(exec, &classes, |&c| {
        let u = p.lattice.class_vertex(c);
        bfs_layers(u, p.t - 1)
            .into_iter()
            .filter(|&(w, _)| p.contains(w))
            .map(|(_, d)| (p.t - d) as u64)
            .sum()
    })
}

pub fn verify_infinite(p: &PeriodicPattern, r: u32) -> Result<InfiniteReport, Error> {
    verify_infinite_with(p, r, Exec::default())
}

/// One depth-`(t-1)` BFS per class; valid iff every class receives `r`.
pub fn verify_infinite_with(
    p: &PeriodicPattern,
    r: u32,
    exec: Exec,
) -> Result<InfiniteReport, Error> {
    check_r(r, p.t)?;
    let f = class_receptions(p, exec);
    let non: Vec<u64> = f
        .iter()
        .enumerate()
        .filter(|&(c, _)| !p.classes.contains(&c))
        .map(|(_, &x)| x)
        .collect();
    let deficient: Vec<(VertexCoord, u64)> = f
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x < r as u64)
        .map(|(c, &x)| (p.lattice.class_vertex(c), x))
        .collect();
    Ok(InfiniteReport {
        valid: deficient.is_empty(),
        min_reception: f.iter().copied().min().unwrap_or(0),
        min_nonbroadcaster_reception: non.iter().copied().min(),
        max_nonbroadcaster_reception: non.iter().copied().max(),
        deficient,
    })
}

/// Signal table on the vertex classes of `lattice`: the signal from class `c`
/// to class `u` sums over every lift of `u` within reach of a fixed lift of `c`.
pub fn periodic_coverage(lattice: &PeriodLattice, t: u32, r: u32) -> Result<Coverage, Error> {
    check_r(r, t)?;
    let reach = (0..lattice.class_count())
        .map(|c| {
            bfs_layers(lattice.class_vertex(c), t - 1)
                .into_iter()
                .map(|(w, d)| (lattice.class_index(w) as u32, t - d))
                .collect()
        })
        .collect();
    Coverage::from_reach(lattice.class_count(), t, r, reach)
}

/// A nonzero lattice vector whose translation moves some vertex by fewer than
/// `2(t-1)` steps, with that displacement.
pub fn injectivity_violation(lattice: &PeriodLattice, t: u32) -> Option<(Vec2, u32)> {
    let need = 2 * t.saturating_sub(1);
    if need == 0 {
        return None;
    }
    // a path through M squares has length >= 2M - 1, so |dx| + |dy| <= t suffices
    let reach = t as i64;
    let mut worst: Option<(Vec2, u32)> = None;
    for dx in -reach..=reach {
        for dy in -reach..=reach {
            if (dx, dy) == (0, 0) || dx.abs() + dy.abs() > reach || !lattice.contains(dx, dy) {
                continue;
            }
            for a in 0..4 {
                let u = VertexCoord::new(a, 0, 0);
                if let Some(d) = distance_capped(u, u.shifted(dx, dy), Some(need - 1)) {
                    if worst.is_none_or(|(_, w)| d < w) {
                        worst = Some(([dx, dy], d));
                    }
                }
            }
        }
    }
    worst
}

/// Minimum periodic broadcast for one period lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSolution {
    pub basis: Basis,
    pub count: usize,
    pub reps: Vec<VertexCoord>,
    pub explored: u64,
    /// The count is the exact minimum for this lattice (search completed).
    pub proved: bool,
}

impl TorusSolution {
    pub fn density(&self) -> Ratio<i64> {
        let classes = PeriodLattice::from_basis(&self.basis)
            .expect("validated")
            .class_count();
        Ratio::new(self.count as i64, classes as i64)
    }

    /// The infinite periodic broadcast this solution describes.
    pub fn lift(&self, t: u32) -> Result<PeriodicPattern, Error> {
        PeriodicPattern::new(self.basis, self.reps.clone(), t)
    }
}

fn solve_lattice(
    basis: Basis,
    lattice: &PeriodLattice,
    t: u32,
    r: u32,
    config: &SolverConfig,
) -> Result<TorusSolution, Error> {
    let cov = periodic_coverage(lattice, t, r)?;
    let upper = greedy_cover(&cov);
    let to_reps = |towers: &[u32]| {
        towers
            .iter()
            .map(|&c| lattice.class_vertex(c as usize))
            .collect::<Vec<_>>()
    };
    match minimum_cover(&cov, upper, config) {
        Ok(sol) => Ok(TorusSolution {
            basis,
            count: sol.towers.len(),
            reps: to_reps(&sol.towers),
            explored: sol.explored,
            proved: sol.proved,
        }),
        Err(Interrupted { best, explored, .. }) => {
            let towers: Vec<u32> = best
                .unwrap_or_default()
                .into_iter()
                .map(|v| v as u32)
                .collect();
            Ok(TorusSolution {
                basis,
                count: towers.len(),
                reps: to_reps(&towers),
                explored,
                proved: false,
            })
        }
    }
}

/// Minimum number of representatives of a `(t,r)` broadcast with period lattice
/// spanned by `basis`. Rejects lattices too small for `t`.
pub fn torus_gamma(
    basis: Basis,
    t: u32,
    r: u32,
    config: &SolverConfig,
) -> Result<TorusSolution, Error> {
    check_r(r, t)?;
    let lattice = PeriodLattice::from_basis(&basis)?;
    if let Some((vector, displacement)) = injectivity_violation(&lattice, t) {
        return Err(Error::Injectivity {
            vector,
            displacement,
            required: 2 * (t - 1),
        });
    }
    solve_lattice(basis, &lattice, t, r, config)
}

/// One lattice tried by [`density_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeTrial {
    pub basis: Basis,
    pub count: usize,
    pub classes: usize,
    pub density: String,
    pub proved: bool,
    pub reps: Vec<VertexCoord>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub best: Option<PeriodicPattern>,
    pub best_density: Option<Ratio<i64>>,
    /// Every lattice finished its exact solve within the budget.
    pub complete: bool,
    pub trials: Vec<LatticeTrial>,
}

/// Exact periodic minimum over every Hermite-form lattice with `|det| <= max_det`.
/// Results are upper bounds on the optimal density, never optimality claims.
pub fn density_search(
    t: u32,
    r: u32,
    max_det: i64,
    limits: Limits,
    exec: Exec,
) -> Result<SearchReport, Error> {
    check_r(r, t)?;
    let lattices = PeriodLattice::enumerate(max_det);
    let inner = SolverConfig {
        exec: Exec::Sequential,
        limits,
    };
    let results = par::map(exec, &lattices, |l| {
        solve_lattice(l.hermite_basis(), l, t, r, &inner)
    });
    let mut trials = Vec::with_capacity(results.len());
    let mut best: Option<(Ratio<i64>, TorusSolution)> = None;
    let mut complete = true;
    for res in results {
        let sol = res?;
        let density = sol.density();
        complete &= sol.proved;
        trials.push(LatticeTrial {
            basis: sol.basis,
            count: sol.count,
            classes: 4 * (sol.basis[0][0] * sol.basis[1][1]) as usize,
            density: density.to_string(),
            proved: sol.proved,
            reps: sol.reps.clone(),
        });
        if sol.count > 0 && best.as_ref().is_none_or(|(d, _)| density < *d) {
            best = Some((density, sol));
        }
    }
    let (best_density, best) = match best {
        Some((d, sol)) => (Some(d), Some(sol.lift(t)?)),
        None => (None, None),
    };
    Ok(SearchReport {
        best,
        best_density,
        complete,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn catalog_densities() {
        let want = [
            ((2, 1), r(1, 4)),
            ((2, 2), r(1, 2)),
            ((3, 1), r(1, 8)),
            ((3, 2), r(1, 6)),
            ((3, 3), r(1, 4)),
            ((4, 1), r(1, 12)),
        ];
        let cat = catalog();
        assert_eq!(cat.len(), 6);
        for ((key, p), (k2, d)) in cat.iter().zip(want) {
            assert_eq!(*key, k2);
            assert_eq!(p.density(), d);
        }
    }

    #[test]
    fn empty_pattern_has_zero_density() {
        let p = PeriodicPattern::new([[1, 0], [0, 1]], vec![], 2).unwrap();
        assert_eq!(p.density(), r(0, 1));
    }

    #[test]
    fn duplicate_classes_rejected() {
        let reps = vec![VertexCoord::new(0, 0, 0), VertexCoord::new(0, 1, 1)];
        assert!(PeriodicPattern::new([[1, 1], [0, 4]], reps, 3).is_err());
    }

    #[test]
    fn catalog_verifies() {
        for ((_, r), p) in catalog() {
            let rep = verify_infinite(&p, r).unwrap();
            assert!(
                rep.valid,
                "pattern at t={} r={r}: {:?}",
                p.t(),
                rep.deficient
            );
        }
    }

    #[test]
    fn excess_reception() {
        let rep = verify_infinite(&catalog_pattern(3, 3).unwrap(), 3).unwrap();
        assert_eq!(rep.max_nonbroadcaster_reception, Some(4));
        // bottom vertices see their own top at distance 2 and one top across the cross edge
        assert_eq!(rep.min_nonbroadcaster_reception, Some(3));
        let rep = verify_infinite(&catalog_pattern(2, 2).unwrap(), 2).unwrap();
        assert_eq!(rep.max_nonbroadcaster_reception, Some(3));
        assert_eq!(rep.min_nonbroadcaster_reception, Some(3));
    }

    #[test]
    fn perturbed_31_fails() {
        let p = catalog_pattern(3, 1).unwrap();
        let i = p
            .reps()
            .iter()
            .position(|&v| v == VertexCoord::new(1, 0, 2))
            .unwrap();
        let rep = verify_infinite(&p.without_rep(i).unwrap(), 1).unwrap();
        assert!(!rep.valid);
        assert!(!rep.deficient.is_empty());
    }

    #[test]
    fn verify_rejects_bad_r() {
        assert!(verify_infinite(&catalog_pattern(2, 1).unwrap(), 3).is_err());
    }

    #[test]
    fn sequential_and_parallel_receptions_agree() {
        for (_, p) in catalog() {
            assert_eq!(
                class_receptions(&p, Exec::Sequential),
                class_receptions(&p, Exec::Parallel)
            );
        }
    }

    #[test]
    fn injectivity_examples() {
        let unit = PeriodLattice::from_basis(&[[1, 0], [0, 1]]).unwrap();
        let (_, d) = injectivity_violation(&unit, 3).unwrap();
        assert!(d < 4);
        let l = PeriodLattice::from_basis(&[[1, 1], [0, 4]]).unwrap();
        assert_eq!(injectivity_violation(&l, 3), None);
        assert!(injectivity_violation(&l, 4).is_some());
        let l = PeriodLattice::from_basis(&[[1, 3], [0, 6]]).unwrap();
        assert_eq!(injectivity_violation(&l, 4), None);
    }

    #[test]
    fn torus_gamma_examples() {
        let cfg = SolverConfig::sequential();
        let sol = torus_gamma([[1, 1], [0, 4]], 3, 1, &cfg).unwrap();
        assert_eq!(sol.count, 2);
        assert!(sol.proved);
        let err = torus_gamma([[1, 0], [0, 1]], 3, 1, &cfg).unwrap_err();
        assert!(matches!(err, Error::Injectivity { .. }));
        let sol = torus_gamma([[1, 3], [0, 6]], 4, 1, &cfg).unwrap();
        assert!(sol.count <= 2);
        assert!(verify_infinite(&sol.lift(4).unwrap(), 1).unwrap().valid);
    }

    #[test]
    fn density_search_examples() {
        let rep = density_search(3, 3, 1, Limits::none(), Exec::default()).unwrap();
        assert_eq!(rep.best_density, Some(r(1, 4)));
        assert!(rep.complete);
        let rep = density_search(3, 1, 4, Limits::none(), Exec::default()).unwrap();
        assert!(rep.best_density.unwrap() <= r(1, 8));
        let best = rep.best.unwrap();
        assert!(verify_infinite(&best, 1).unwrap().valid);
    }

    #[test]
    fn pattern_file_round_trip() {
        let p = catalog_pattern(4, 1).unwrap();
        let json = serde_json::to_string(&p.to_file()).unwrap();
        assert_eq!(
            json,
            r#"{"t":4,"basis":[[1,3],[0,6]],"reps":[[0,0,0],[2,1,2]]}"#
        );
        let back: PatternFile = serde_json::from_str(&json).unwrap();
        assert_eq!(PeriodicPattern::from_file(&back).unwrap(), p);
    }
}
