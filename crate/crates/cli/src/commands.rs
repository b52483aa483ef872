use std::time::Instant;

use anyhow::{bail, Result};
use serde_json::{json, Value};
use truncdom::bounds;
use truncdom::cache::{CacheRecord, ResultsCache};
use truncdom::patterns::{catalog, density_search, verify_infinite_with};
use truncdom::reception::reception_map_with;
use truncdom::solver::{self, single_tower_report, Limits};
use truncdom::{
    build_grid, is_broadcast, BroadcastSet, Error, FiniteGraph, PeriodicPattern, SolverConfig,
};

use crate::render;
use crate::{input, Body, Command, Config, Format, Outcome, PatternCommand};

pub fn dispatch(cmd: Command, cfg: &Config) -> Result<Outcome> {
    match cmd {
        Command::Build {
            m,
            n,
            format,
            highlight,
        } => build(m, n, format, highlight.as_deref()),
        Command::Verify {
            graph,
            set,
            r,
            show_reception,
        } => verify(&graph, &set, r, show_reception, cfg),
        Command::Gamma {
            m,
            n,
            t,
            r,
            no_cache,
        } => gamma(m, n, t, r, no_cache, cfg),
        Command::Bounds { m, n, t, r } => bounds_cmd(m, n, t, r),
        Command::Pattern { action } => match action {
            PatternCommand::Verify { pattern, r } => pattern_verify(&pattern, r, cfg),
            PatternCommand::Density { pattern } => pattern_density(&pattern),
            PatternCommand::Search { t, r, max_det } => pattern_search(t, r, max_det, cfg),
            PatternCommand::ExportCatalog { dir } => export_catalog(dir.as_deref()),
        },
        Command::Radius { m, n } => radius(m, n),
        Command::Conjecture61 { m_max, r_max } => conjecture61(m_max, r_max),
    }
}

fn done(body: Value, summary: String) -> Outcome {
    Outcome {
        body: Body::Json(body),
        summary,
        code: 0,
    }
}

fn build(m: u32, n: u32, format: Format, highlight: Option<&str>) -> Result<Outcome> {
    let g = build_grid(m, n)?;
    let set = highlight
        .map(|src| input::broadcast_set(src, &g))
        .transpose()?;
    let summary = format!(
        "H_{{{m},{n}}}: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    let body = match format {
        Format::Json => Body::Json(serde_json::to_value(g.to_export())?),
        Format::Svg => Body::Text(render::svg(&g, set.as_ref())),
        Format::Ascii => Body::Text(render::ascii(&g, set.as_ref())),
    };
    Ok(Outcome {
        body,
        summary,
        code: 0,
    })
}

fn verify(graph: &str, set: &str, r: u32, show_reception: bool, cfg: &Config) -> Result<Outcome> {
    let g = input::graph(graph)?;
    let set = input::broadcast_set(set, &g)?;
    let verdict = is_broadcast(&g, &set, r)?;
    let deficient: Vec<Value> = verdict
        .deficient
        .iter()
        .map(|&(u, f)| json!({"index": u, "vertex": g.coord(u), "reception": f}))
        .collect();
    let mut body = json!({
        "valid": verdict.valid,
        "t": set.t(),
        "r": r,
        "size": set.len(),
        "vertex_count": g.vertex_count(),
        "deficient": deficient,
    });
    if show_reception {
        body["reception"] = json!(reception_map_with(&g, &set, cfg.exec)?.values);
    }
    let summary = if verdict.valid {
        format!(
            "valid: {} towers give every vertex reception >= {r}",
            set.len()
        )
    } else {
        format!(
            "invalid: {} vertices receive less than {r}",
            verdict.deficient.len()
        )
    };
    Ok(Outcome {
        body: Body::Json(body),
        summary,
        code: if verdict.valid { 0 } else { 1 },
    })
}

fn gamma_json(rec: &CacheRecord) -> Value {
    json!({
        "m": rec.m,
        "n": rec.n,
        "t": rec.t,
        "r": rec.r,
        "gamma": rec.gamma,
        "witness": rec.witness,
        "proof_of_minimality": rec.proved,
        "runtime_ms": rec.runtime_ms,
    })
}

/// A cached record is reused only if its witness still checks out.
fn usable(rec: &CacheRecord, g: &FiniteGraph) -> bool {
    let idx: Option<Vec<usize>> = rec.witness.iter().map(|&c| g.index_of(c)).collect();
    let Some(idx) = idx else { return false };
    let Ok(set) = BroadcastSet::new(idx, rec.t) else {
        return false;
    };
    set.len() == rec.gamma && is_broadcast(g, &set, rec.r).is_ok_and(|v| v.valid)
}

fn gamma(m: u32, n: u32, t: u32, r: u32, no_cache: bool, cfg: &Config) -> Result<Outcome> {
    let g = build_grid(m, n)?;
    let report = bounds::report(m, n, t, r)?;
    let cache = ResultsCache::new(&cfg.cache);
    if !no_cache {
        if let Some(rec) = cache.lookup(m, n, t, r)? {
            if usable(&rec, &g) {
                let summary = format!("gamma_{{{t},{r}}}(H_{{{m},{n}}}) = {} (cached)", rec.gamma);
                return Ok(done(gamma_json(&rec), summary));
            }
            eprintln!(
                "warning: ignoring cache entry for ({m},{n},{t},{r}) whose witness does not verify"
            );
        }
    }
    let start = Instant::now();
    let config = SolverConfig {
        exec: cfg.exec,
        limits: Limits::time(cfg.time_limit),
    };
    match solver::gamma(&g, t, r, &config) {
        Ok(res) => {
            let rec = CacheRecord {
                m,
                n,
                t,
                r,
                gamma: res.gamma,
                witness: res.witness.coords(&g),
                proved: res.proof_of_minimality,
                runtime_ms: start.elapsed().as_millis() as u64,
            };
            if !no_cache {
                cache.append(&rec)?;
            }
            let summary = format!(
                "gamma_{{{t},{r}}}(H_{{{m},{n}}}) = {} ({} nodes, {} ms)",
                res.gamma, res.explored, rec.runtime_ms
            );
            Ok(done(gamma_json(&rec), summary))
        }
        Err(Error::Interrupted(i)) => {
            let lower = i.lower.max(report.best_lower.unwrap_or(0) as usize);
            let witness = i
                .best
                .map(|b| BroadcastSet::new(b, t))
                .transpose()?
                .filter(|s| is_broadcast(&g, s, r).is_ok_and(|v| v.valid));
            let upper = witness.as_ref().map(|s| s.len());
            let coords = witness.as_ref().map(|s| s.coords(&g));
            let runtime_ms = start.elapsed().as_millis() as u64;
            if let (false, Some(w), Some(u)) = (no_cache, &coords, upper) {
                cache.append(&CacheRecord {
                    m,
                    n,
                    t,
                    r,
                    gamma: u,
                    witness: w.clone(),
                    proved: false,
                    runtime_ms,
                })?;
            }
            let body = json!({
                "m": m,
                "n": n,
                "t": t,
                "r": r,
                "status": "timeout",
                "lower": lower,
                "upper": upper,
                "witness": coords,
                "explored": i.explored,
                "runtime_ms": runtime_ms,
            });
            Ok(Outcome {
                body: Body::Json(body),
                summary: format!("timed out: {lower} <= gamma <= {}", fmt_opt(upper)),
                code: 3,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "?".to_string(), |x| x.to_string())
}

fn bounds_cmd(m: u32, n: u32, t: u32, r: u32) -> Result<Outcome> {
    let rep = bounds::report(m, n, t, r)?;
    let summary = format!(
        "bounds for gamma_{{{t},{r}}}(H_{{{m},{n}}}): lower {}, upper {}",
        fmt_opt(rep.best_lower),
        fmt_opt(rep.best_upper)
    );
    Ok(done(serde_json::to_value(&rep)?, summary))
}

fn pattern_json(p: &PeriodicPattern) -> Value {
    json!({
        "t": p.t(),
        "basis": p.basis(),
        "reps": p.reps(),
    })
}

fn pattern_verify(spec: &str, r: Option<u32>, cfg: &Config) -> Result<Outcome> {
    let (p, catalogued) = input::pattern(spec)?;
    let Some(r) = r.or(catalogued) else {
        bail!("--r is required for pattern files");
    };
    let rep = verify_infinite_with(&p, r, cfg.exec)?;
    let density = p.density();
    let deficient: Vec<Value> = rep
        .deficient
        .iter()
        .map(|(v, f)| json!({"vertex": v, "reception": f}))
        .collect();
    let body = json!({
        "valid": rep.valid,
        "t": p.t(),
        "r": r,
        "pattern": pattern_json(&p),
        "density": density.to_string(),
        "min_reception": rep.min_reception,
        "min_nonbroadcaster_reception": rep.min_nonbroadcaster_reception,
        "max_nonbroadcaster_reception": rep.max_nonbroadcaster_reception,
        "deficient": deficient,
    });
    let summary = if rep.valid {
        format!(
            "valid ({},{}) broadcast of the plane, density {density}",
            p.t(),
            r
        )
    } else {
        format!(
            "invalid: {} vertex classes receive less than {r}",
            rep.deficient.len()
        )
    };
    Ok(Outcome {
        body: Body::Json(body),
        summary,
        code: if rep.valid { 0 } else { 1 },
    })
}

fn pattern_density(spec: &str) -> Result<Outcome> {
    let (p, _) = input::pattern(spec)?;
    let d = p.density();
    let body = json!({
        "density": d.to_string(),
        "numerator": d.numer(),
        "denominator": d.denom(),
        "reps": p.reps().len(),
        "classes": p.lattice().class_count(),
    });
    Ok(done(body, format!("density {d}")))
}

fn pattern_search(t: u32, r: u32, max_det: i64, cfg: &Config) -> Result<Outcome> {
    if max_det < 1 {
        bail!("--max-det must be at least 1");
    }
    let rep = density_search(t, r, max_det, Limits::time(cfg.time_limit), cfg.exec)?;
    let body = json!({
        "t": t,
        "r": r,
        "max_det": max_det,
        "complete": rep.complete,
        "best_density": rep.best_density.map(|d| d.to_string()),
        "best": rep.best.as_ref().map(pattern_json),
        "trials": rep.trials,
    });
    let best = fmt_opt(rep.best_density);
    let (summary, code) = if rep.complete {
        (
            format!(
                "best density {best} over {} lattices (upper bound only)",
                rep.trials.len()
            ),
            0,
        )
    } else {
        (format!("time limit reached; best density so far {best}"), 3)
    };
    Ok(Outcome {
        body: Body::Json(body),
        summary,
        code,
    })
}

fn export_catalog(dir: Option<&std::path::Path>) -> Result<Outcome> {
    let mut entries = Vec::new();
    for ((t, r), p) in catalog() {
        if let Some(dir) = dir {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("pattern_t{t}_r{r}.json"));
            std::fs::write(&path, serde_json::to_string_pretty(&p.to_file())? + "\n")?;
        }
        entries.push(json!({
            "t": t,
            "r": r,
            "density": p.density().to_string(),
            "pattern": pattern_json(&p),
        }));
    }
    let summary = format!("{} catalog patterns", entries.len());
    Ok(done(Value::Array(entries), summary))
}

fn radius(m: u32, n: u32) -> Result<Outcome> {
    let g = build_grid(m, n)?;
    let (rad, center) = g.center()?;
    let diam = g.diameter()?;
    let body = json!({
        "m": m,
        "n": n,
        "vertex_count": g.vertex_count(),
        "radius": rad,
        "diameter": diam,
        "center": g.coord(center),
    });
    Ok(done(
        body,
        format!("H_{{{m},{n}}}: radius {rad}, diameter {diam}"),
    ))
}

fn conjecture61(m_max: u32, r_max: u32) -> Result<Outcome> {
    if m_max < 1 || r_max < 1 {
        bail!("--m-max and --r-max must be at least 1");
    }
    let rows = single_tower_report(m_max, r_max)?;
    let agree = rows.iter().filter(|row| row.agree).count();
    let summary = format!(
        "{agree} of {} rows match the conjectured threshold",
        rows.len()
    );
    Ok(done(json!({ "rows": rows }), summary))
}
