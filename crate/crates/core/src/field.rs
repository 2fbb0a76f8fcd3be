//! Nodal fields: one real value per grid node, interior nodes first.

use crate::geom::Vec2;
use crate::grid::Grid;

/// Values of a grid function at every node of a [`Grid`] (interior nodes
/// first, then boundary nodes, in the grid's node order).
#[derive(Debug, Clone, PartialEq)]
pub struct NodalField {
    pub values: Vec<f64>,
}

impl NodalField {
    pub fn zeros(grid: &Grid) -> Self {
        Self { values: vec![0.0; grid.n_nodes()] }
    }

    pub fn from_fn(grid: &Grid, f: impl Fn(Vec2) -> f64) -> Self {
        Self { values: grid.nodes.iter().map(|n| f(n.pos)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Applies Dirichlet data at boundary nodes, leaving interior values.
    pub fn set_boundary(&mut self, grid: &Grid, g: impl Fn(Vec2) -> f64) {
        for (i, n) in grid.nodes.iter().enumerate() {
            if n.boundary {
                self.values[i] = g(n.pos);
            }
        }
    }

    pub fn interior<'a>(&'a self, grid: &Grid) -> &'a [f64] {
        &self.values[..grid.n_interior]
    }

    /// Max-norm distance to another field.
    pub fn linf_distance(&self, other: &NodalField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
