//! Solvers for the Dirichlet problem of the Monge-Ampere equation
//! `det D²u = f` on a convex domain, discretized by monotone finite
//! difference operators (wide stencil, filtered, lattice basis reduction,
//! power diagram, two scale) and by the Oliker-Prussner method, together
//! with the discrete norms and convergence-study harness used to measure
//! their rates on a family of benchmark problems.
//!
//! The crate is organized around a small set of value types:
//!
//! * [`domain::ConvexDomain`] and [`grid::Grid`] describe the geometry,
//! * [`field::NodalField`] holds one real value per node,
//! * [`directions`] generates the integer stencils and direction families
//!   that parametrize the operators,
//! * [`operators`] evaluates each discrete Monge-Ampere operator nodewise,
//! * [`envelope`] builds convex envelopes of nodal functions and their
//!   subdifferentials (the Oliker-Prussner machinery),
//! * [`solvers`] solves the discrete systems,
//! * [`problems`], [`norms`] and [`study`] form the benchmark harness.

pub mod checks;
pub mod directions;
pub mod domain;
pub mod envelope;
pub mod exact;
pub mod field;
pub mod geom;
pub mod grid;
pub mod hull3d;
pub mod norms;
pub mod operators;
pub mod problems;
pub mod solvers;
pub mod study;

use thiserror::Error;

/// Errors surfaced by grid construction, operator evaluation and solvers.
#[derive(Debug, Error)]
pub enum MaError {
    #[error("empty grid: domain contains no interior node at spacing h = {h}")]
    EmptyGrid { h: f64 },
    #[error("point ({0}, {1}) lies outside the domain")]
    OutOfDomain(f64, f64),
    #[error("all nodes are collinear; no envelope exists")]
    CollinearNodes,
    #[error("matrix is not symmetric positive definite")]
    NotSpd,
    #[error("stencil does not span the plane")]
    DegenerateStencil,
    #[error("empty direction family")]
    EmptyFamily,
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("no bracket found for node {node} after {doublings} doublings")]
    NonBracketable { node: usize, doublings: usize },
    #[error("solver did not converge: residual {residual} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("negative input to gamma: {0}")]
    NegativeGammaInput(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, MaError>;
