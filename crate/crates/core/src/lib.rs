//! `(t,r)` broadcast domination on the truncated square tiling.
//!
//! A set `T` of towers with strength `t` gives every vertex `u` the reception
//! `f(u) = Σ_{v∈T, d(u,v)<t} (t − d(u,v))`; `T` is a `(t,r)` broadcast when
//! `f(u) >= r` everywhere. This crate builds the finite grids `H_{m,n}` and
//! torus quotients of the tiling, computes exact broadcast domination numbers
//! by branch and bound, evaluates closed-form bounds, and verifies periodic
//! broadcasts of the infinite tiling together with their densities.
//!
//! Data-parallel loops (per-class pattern checks, lattice sweeps, solver
//! subtrees) run on rayon behind the default `parallel` feature and fall back
//! to plain loops without it.

pub mod bounds;
pub mod cache;
pub mod grid;
pub mod lattice;
pub mod par;
pub mod patterns;
pub mod period;
pub mod reception;
pub mod solver;

pub use grid::{build_grid, build_torus, FiniteGraph, GraphKind};
pub use lattice::VertexCoord;
pub use par::Exec;
pub use patterns::{catalog, verify_infinite, PeriodicPattern};
pub use reception::{is_broadcast, reception_map, BroadcastSet};
pub use solver::{gamma, SolveResult, SolverConfig};

use period::{Basis, Vec2};

/// State of a search cut short by its limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interrupted {
    /// A lower bound on the optimum known at the time.
    pub lower: usize,
    /// Best verified solution found so far, as vertex indices.
    pub best: Option<Vec<usize>>,
    pub explored: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("singular period basis {0:?}")]
    SingularBasis(Basis),
    #[error("vertex index {index} out of range for {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("vertex {0} is not in the graph")]
    VertexNotInGraph(VertexCoord),
    #[error("graph is disconnected")]
    Disconnected,
    #[error(
        "period lattice too small: translation by {vector:?} moves a vertex only {displacement} steps, need at least {required}"
    )]
    Injectivity {
        vector: Vec2,
        displacement: u32,
        required: u32,
    },
    #[error("search limit reached after {} nodes", .0.explored)]
    Interrupted(Box<Interrupted>),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
