//! Closed-form bounds on `γ_{t,r}(H_{m,n})` and the constructions behind the
//! upper bounds. All arithmetic is integral; ceilings are `div_ceil`.

use serde::{Deserialize, Serialize};

use crate::grid::{build_grid, grid_vertex_count, FiniteGraph, GraphKind};
use crate::lattice::{ball_size, VertexCoord};
use crate::patterns::{catalog_pattern, PeriodicPattern};
use crate::reception::{check_r, is_broadcast, BroadcastSet};
use crate::solver::{greedy_cover, prune_redundant, Coverage};
use crate::Error;

fn check_dims(m: u32, n: u32) -> Result<(), Error> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "need m, n >= 1, got m={m} n={n}"
        )));
    }
    Ok(())
}

/// `⌈|V(H_{m,n})| / 4⌉`: each tower dominates itself and at most three neighbours.
pub fn lower_degree(m: u32, n: u32) -> u64 {
    grid_vertex_count(m, n).div_ceil(4)
}

/// `⌈|V(H_{m,n})| / ball_size(t)⌉` for `(t, 1)` broadcasts.
pub fn lower_ball(m: u32, n: u32, t: u32) -> Result<u64, Error> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "lower_ball needs t >= 2, got {t}"
        )));
    }
    Ok(grid_vertex_count(m, n).div_ceil(ball_size(t)?))
}

/// Tiling `H_{m,n}` with copies of `H_{1,4}` (9 towers each) plus a remainder
/// block of `H_{1,1}`, `H_{1,2}` or `H_{1,3}` (3, 5, 7 towers).
pub fn upper_tiling_21(m: u32, n: u32) -> u64 {
    let (m, n) = (m as u64, n as u64);
    let rem = n % 4;
    let tail = [0, 3, 5, 7][rem as usize];
    9 * m * (n - rem) / 4 + tail * m
}

/// `8 ⌈(m + r1)(n + r2) / 4⌉` with `r1, r2` the parities of `m, n`.
pub fn upper_2x2(m: u32, n: u32) -> Result<u64, Error> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "upper_2x2 needs m, n >= 2, got m={m} n={n}"
        )));
    }
    let (m, n) = (m as u64, n as u64);
    Ok(8 * ((m + m % 2) * (n + n % 2)).div_ceil(4))
}

/// `n(m + 1) + m`.
pub fn upper_rows_21(m: u32, n: u32) -> u64 {
    let (m, n) = (m as u64, n as u64);
    n * (m + 1) + m
}

/// `2mn + m + n` for `(2,2)` broadcasts.
pub fn upper_22(m: u32, n: u32) -> u64 {
    let (m, n) = (m as u64, n as u64);
    2 * m * n + m + n
}

/// `mn + m + n` for `(3,3)` broadcasts.
pub fn upper_33(m: u32, n: u32) -> u64 {
    let (m, n) = (m as u64, n as u64);
    m * n + m + n
}

/// Start from the vertices of `g` selected by `seed`, add towers until every
/// vertex receives `r`, then delete redundant towers.
///
/// Repair always serves the smallest-index deficient vertex, choosing among
/// the towers that reach it the one with the largest gain.
pub fn seed_and_repair(
    g: &FiniteGraph,
    t: u32,
    r: u32,
    seed: impl Fn(VertexCoord) -> bool,
) -> Result<BroadcastSet, Error> {
    let cov = Coverage::from_graph(g, t, r)?;
    let mut towers: Vec<u32> = (0..g.vertex_count() as u32)
        .filter(|&v| seed(g.coord(v as usize)))
        .collect();
    let mut reception = cov.reception(&towers);
    let mut in_set = vec![false; g.vertex_count()];
    for &v in &towers {
        in_set[v as usize] = true;
    }
    while let Some(u) = (0..g.vertex_count()).find(|&u| reception[u] < r as u64) {
        let gain = |v: usize| -> u64 {
            cov.reach(v)
                .iter()
                .map(|&(w, s)| (s as u64).min((r as u64).saturating_sub(reception[w as usize])))
                .sum()
        };
        let best = cov
            .reach(u)
            .iter()
            .map(|&(v, _)| v as usize)
            .filter(|&v| !in_set[v])
            .map(|v| (gain(v), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, v)| v)
            .ok_or_else(|| {
                Error::Internal("deficient vertex with no open tower in reach".into())
            })?;
        in_set[best] = true;
        towers.push(best as u32);
        for &(w, s) in cov.reach(best) {
            reception[w as usize] += s as u64;
        }
    }
    let towers = prune_redundant(&cov, towers);
    BroadcastSet::new(towers.into_iter().map(|v| v as usize), t)
}

fn checked_witness(
    g: &FiniteGraph,
    set: BroadcastSet,
    r: u32,
    bound: u64,
    name: &str,
) -> Result<BroadcastSet, Error> {
    if !is_broadcast(g, &set, r)?.valid {
        return Err(Error::Internal(format!(
            "{name} witness is not a broadcast"
        )));
    }
    if set.len() as u64 > bound {
        return Err(Error::Internal(format!(
            "{name} witness has {} towers, above the bound {bound}",
            set.len()
        )));
    }
    Ok(set)
}

/// Smallest repaired restriction over every translate of a periodic pattern.
fn best_translate(g: &FiniteGraph, p: &PeriodicPattern, r: u32) -> Result<BroadcastSet, Error> {
    let mut best: Option<BroadcastSet> = None;
    for (dx, dy) in p.lattice().squares().collect::<Vec<_>>() {
        let set = seed_and_repair(g, p.t(), r, |v| p.contains(v.shifted(-dx, -dy)))?;
        if best.as_ref().is_none_or(|b| set.len() < b.len()) {
            best = Some(set);
        }
    }
    best.ok_or_else(|| Error::Internal("pattern lattice has no squares".into()))
}

/// A `(2,1)` broadcast of `H_{m,n}` with at most `n(m+1) + m` towers, seeded
/// with every top vertex.
pub fn construct_rows_21(m: u32, n: u32) -> Result<BroadcastSet, Error> {
    let g = build_grid(m, n)?;
    let set = seed_and_repair(&g, 2, 1, |v| v.a == 0)?;
    checked_witness(&g, set, 1, upper_rows_21(m, n), "rows_21")
}

/// A `(2,2)` broadcast of `H_{m,n}` with at most `2mn + m + n` towers, seeded
/// with the density-1/2 periodic pattern.
pub fn construct_22(m: u32, n: u32) -> Result<BroadcastSet, Error> {
    let g = build_grid(m, n)?;
    let p = catalog_pattern(2, 2).expect("catalog has (2,2)");
    let set = best_translate(&g, &p, 2)?;
    checked_witness(&g, set, 2, upper_22(m, n), "construct_22")
}

/// A `(3,3)` broadcast of `H_{m,n}` with at most `mn + m + n` towers, seeded
/// with the all-tops pattern.
pub fn construct_33(m: u32, n: u32) -> Result<BroadcastSet, Error> {
    let g = build_grid(m, n)?;
    let p = catalog_pattern(3, 3).expect("catalog has (3,3)");
    let set = best_translate(&g, &p, 3)?;
    checked_witness(&g, set, 3, upper_33(m, n), "construct_33")
}

/// A verified broadcast used to start the exact search: the greedy cover, or a
/// bound construction when that is smaller.
pub fn constructive_upper(g: &FiniteGraph, t: u32, r: u32) -> Result<BroadcastSet, Error> {
    let cov = Coverage::from_graph(g, t, r)?;
    let mut best = BroadcastSet::new(greedy_cover(&cov).into_iter().map(|v| v as usize), t)?;
    if let GraphKind::Grid { m, n } = *g.kind() {
        let built = match (t, r) {
            (2, 1) => Some(construct_rows_21(m, n)?),
            (2, 2) => Some(construct_22(m, n)?),
            (3, 3) => Some(construct_33(m, n)?),
            _ => None,
        };
        if let Some(set) = built {
            if set.len() < best.len() {
                best = set;
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: u64,
    pub formula: String,
}

impl Bound {
    fn new(value: u64, formula: &str) -> Self {
        Bound {
            value,
            formula: formula.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub m: u32,
    pub n: u32,
    pub t: u32,
    pub r: u32,
    pub lower_bounds: Vec<Bound>,
    pub upper_bounds: Vec<Bound>,
    pub best_lower: Option<u64>,
    pub best_upper: Option<u64>,
}

/// Every closed-form bound that applies to `(m, n, t, r)`.
pub fn report(m: u32, n: u32, t: u32, r: u32) -> Result<BoundsReport, Error> {
    check_dims(m, n)?;
    check_r(r, t)?;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    if (t, r) == (2, 1) {
        lower.push(Bound::new(lower_degree(m, n), "thm2.9"));
        upper.push(Bound::new(upper_tiling_21(m, n), "thm2.6"));
        if m >= 2 && n >= 2 {
            upper.push(Bound::new(upper_2x2(m, n)?, "thm2.7"));
        }
        upper.push(Bound::new(upper_rows_21(m, n), "thm2.8"));
    }
    if r == 1 && t >= 2 {
        lower.push(Bound::new(lower_ball(m, n, t)?, "thm3.3"));
    }
    if (t, r) == (2, 2) {
        upper.push(Bound::new(upper_22(m, n), "cor5.1"));
    }
    if (t, r) == (3, 3) {
        upper.push(Bound::new(upper_33(m, n), "cor5.2"));
    }
    Ok(BoundsReport {
        m,
        n,
        t,
        r,
        best_lower: lower.iter().map(|b| b.value).max(),
        best_upper: upper.iter().map(|b| b.value).min(),
        lower_bounds: lower,
        upper_bounds: upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_examples() {
        assert_eq!(lower_degree(1, 1), 2);
        assert_eq!(lower_degree(2, 2), 6);
        assert_eq!(lower_degree(1, 4), 7);
        assert_eq!(lower_ball(2, 2, 2).unwrap(), 6);
        assert_eq!(lower_ball(2, 2, 4).unwrap(), 2);
        assert_eq!(lower_ball(3, 5, 3).unwrap(), 9);
        assert!(lower_ball(2, 2, 1).is_err());
    }

    #[test]
    fn lower_ball_at_t2_is_lower_degree() {
        for m in 1..=8 {
            for n in 1..=8 {
                assert_eq!(lower_ball(m, n, 2).unwrap(), lower_degree(m, n));
            }
        }
    }

    #[test]
    fn upper_examples() {
        assert_eq!(upper_tiling_21(1, 4), 9);
        assert_eq!(upper_tiling_21(2, 5), 24);
        assert_eq!(upper_tiling_21(1, 2), 5);
        assert_eq!(upper_tiling_21(1, 3), 7);
        assert_eq!(upper_2x2(2, 2).unwrap(), 8);
        assert_eq!(upper_2x2(3, 3).unwrap(), 32);
        assert_eq!(upper_2x2(2, 4).unwrap(), 16);
        assert!(upper_2x2(1, 4).is_err());
        assert_eq!(upper_rows_21(1, 1), 3);
        assert_eq!(upper_rows_21(2, 2), 8);
        assert_eq!(upper_rows_21(3, 5), 23);
        assert_eq!(upper_22(1, 1), 4);
        assert_eq!(upper_22(2, 2), 12);
        assert_eq!(upper_22(3, 4), 31);
        assert_eq!(upper_33(1, 1), 3);
        assert_eq!(upper_33(2, 2), 8);
        assert_eq!(upper_33(3, 3), 15);
    }

    #[test]
    fn rows_bound_beats_tiling_bound_on_large_squares() {
        for m in 8..=30 {
            assert!(upper_rows_21(m, m) < upper_tiling_21(m, m));
        }
    }

    #[test]
    fn report_examples() {
        let rep = report(2, 2, 2, 1).unwrap();
        assert_eq!((rep.best_lower, rep.best_upper), (Some(6), Some(8)));
        let rep = report(1, 4, 2, 1).unwrap();
        assert_eq!((rep.best_lower, rep.best_upper), (Some(7), Some(9)));
        assert!(rep.upper_bounds.iter().all(|b| b.formula != "thm2.7"));
        let rep = report(1, 1, 3, 3).unwrap();
        assert_eq!(rep.best_upper, Some(3));
        assert_eq!(rep.best_lower, None);
        let rep = report(3, 5, 3, 1).unwrap();
        assert_eq!(rep.lower_bounds, vec![Bound::new(9, "thm3.3")]);
        assert!(report(2, 2, 2, 3).is_err());
    }

    #[test]
    fn report_json_names() {
        let json = serde_json::to_value(report(2, 3, 2, 1).unwrap()).unwrap();
        let names: Vec<&str> = json["upper_bounds"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| b["formula"].as_str().unwrap())
            .collect();
        assert_eq!(names, vec!["thm2.6", "thm2.7", "thm2.8"]);
    }

    #[test]
    fn small_witnesses() {
        assert!(construct_rows_21(1, 1).unwrap().len() <= 3);
        assert!(construct_22(1, 1).unwrap().len() <= 4);
        assert!(construct_33(1, 1).unwrap().len() <= 3);
        assert!(construct_rows_21(2, 2).unwrap().len() <= 8);
    }

    #[test]
    fn witnesses_are_verified_up_to_six() {
        for m in 1..=6 {
            for n in 1..=6 {
                let g = build_grid(m, n).unwrap();
                for (set, r) in [
                    (construct_rows_21(m, n).unwrap(), 1),
                    (construct_22(m, n).unwrap(), 2),
                    (construct_33(m, n).unwrap(), 3),
                ] {
                    assert!(is_broadcast(&g, &set, r).unwrap().valid);
                }
            }
        }
    }
}
