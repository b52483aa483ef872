//! Graph, set and pattern specifications given on the command line.

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use truncdom::grid::GraphExport;
use truncdom::patterns::{catalog_pattern, PatternFile};
use truncdom::reception::BroadcastSetFile;
use truncdom::{build_grid, build_torus, BroadcastSet, FiniteGraph, PeriodicPattern};

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(Path::new(src)).with_context(|| format!("reading {src}"))
}

fn read_json<T: DeserializeOwned>(src: &str) -> Result<T> {
    let text = read_source(src)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {src}"))
}

fn ints(list: &str, expect: usize, what: &str) -> Result<Vec<i64>> {
    let v = list
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("bad {what} {list:?}"))?;
    if v.len() != expect {
        bail!("{what} needs {expect} comma-separated integers, got {list:?}");
    }
    Ok(v)
}

fn dim(v: i64, what: &str) -> Result<u32> {
    u32::try_from(v).with_context(|| format!("{what} out of range: {v}"))
}

/// `grid:M,N`, `torus:B1X,B1Y,B2X,B2Y`, a graph JSON file, or `-` for stdin.
pub fn graph(spec: &str) -> Result<FiniteGraph> {
    if let Some(rest) = spec.strip_prefix("grid:") {
        let v = ints(rest, 2, "grid size")?;
        return Ok(build_grid(dim(v[0], "m")?, dim(v[1], "n")?)?);
    }
    if let Some(rest) = spec.strip_prefix("torus:") {
        let v = ints(rest, 4, "torus basis")?;
        return Ok(build_torus([[v[0], v[1]], [v[2], v[3]]])?);
    }
    let export: GraphExport = read_json(spec)?;
    Ok(FiniteGraph::from_export(&export)?)
}

pub fn broadcast_set(src: &str, g: &FiniteGraph) -> Result<BroadcastSet> {
    let file: BroadcastSetFile = read_json(src)?;
    Ok(BroadcastSet::from_file(&file, g)?)
}

/// A pattern and the `r` it is catalogued for, if any.
pub fn pattern(spec: &str) -> Result<(PeriodicPattern, Option<u32>)> {
    if let Some(rest) = spec.strip_prefix("catalog:") {
        let v = ints(rest, 2, "catalog key")?;
        let (t, r) = (dim(v[0], "t")?, dim(v[1], "r")?);
        return match catalog_pattern(t, r) {
            Some(p) => Ok((p, Some(r))),
            None => bail!("no catalog pattern for (t,r)=({t},{r})"),
        };
    }
    let file: PatternFile = read_json(spec)?;
    Ok((PeriodicPattern::from_file(&file)?, None))
}
