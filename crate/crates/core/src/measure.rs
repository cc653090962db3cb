//! Finite quadrature data standing in for a measure space: every weak
//! integral downstream becomes a weighted sum over these nodes.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::Scalar;

/// Quadrature nodes with strictly positive masses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpace {
    node_ids: Vec<String>,
    weights: Vec<f64>,
    description: String,
    /// Real node positions when the space came from an interval rule.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    positions: Option<Vec<f64>>,
}

impl MeasureSpace {
    pub fn new(
        node_ids: Vec<String>,
        weights: Vec<f64>,
        description: impl Into<String>,
    ) -> Result<Self> {
        if node_ids.is_empty() {
            return Err(invalid("a measure space needs at least one node"));
        }
        if node_ids.len() != weights.len() {
            return Err(invalid(format!(
                "{} node ids but {} weights",
                node_ids.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(invalid(format!(
                "weights must be strictly positive, got {w}"
            )));
        }
        let mut sorted = node_ids.clone();
        sorted.sort();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(invalid("node ids must be pairwise distinct"));
        }
        Ok(Self {
            node_ids,
            weights,
            description: description.into(),
            positions: None,
        })
    }

    /// Counting measure on `n` nodes: all weights 1.
    pub fn counting(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("counting measure needs n >= 1"));
        }
        Self::new(
            (0..n).map(|i| format!("n{i}")).collect(),
            vec![1.0; n],
            format!("counting measure on {n} nodes"),
        )
    }

    /// Midpoint rule on `[a, b]` with `n` nodes: positions `a + (i+1/2)(b-a)/n`,
    /// every weight `(b-a)/n`.
    pub fn uniform_interval(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a < b) {
            return Err(invalid(format!("interval needs a < b, got [{a}, {b}]")));
        }
        if n == 0 {
            return Err(invalid("interval rule needs n >= 1"));
        }
        let step = (b - a) / n as f64;
        let positions: Vec<f64> = (0..n).map(|i| a + (i as f64 + 0.5) * step).collect();
        let mut space = Self::new(
            (0..n).map(|i| format!("t{i}")).collect(),
            vec![step; n],
            format!("midpoint rule on [{a}, {b}], N={n}"),
        )?;
        space.positions = Some(positions);
        Ok(space)
    }

    /// Equally spaced angles `2*pi*i/n` on `[0, 2*pi)` with weights `2*pi/n`.
    pub fn circle(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("circle rule needs n >= 1"));
        }
        let step = std::f64::consts::TAU / n as f64;
        let mut space = Self::new(
            (0..n).map(|i| format!("theta{i}")).collect(),
            vec![step; n],
            format!("equally spaced nodes on [0, 2*pi), N={n}"),
        )?;
        space.positions = Some((0..n).map(|i| i as f64 * step).collect());
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.node_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one node
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn positions(&self) -> Option<&[f64]> {
        self.positions.as_deref()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Semantic identity of the quadrature data: same labelled nodes with
    /// the same masses. Descriptions and cached positions do not count.
    pub fn same_quadrature(&self, other: &Self) -> bool {
        self.node_ids == other.node_ids && self.weights == other.weights
    }

    /// `sum_i w_i s_i`, the discretization of every integral in sight.
    pub fn integrate(&self, samples: &[Scalar]) -> Result<Scalar> {
        if samples.len() != self.len() {
            return Err(invalid(format!(
                "expected {} samples, got {}",
                self.len(),
                samples.len()
            )));
        }
        Ok(self.weights.iter().zip(samples).map(|(w, s)| s * *w).sum())
    }

    pub fn integrate_real(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.len() {
            return Err(invalid(format!(
                "expected {} samples, got {}",
                self.len(),
                samples.len()
            )));
        }
        Ok(self.weights.iter().zip(samples).map(|(w, s)| w * s).sum())
    }

    /// The space with the nodes at `removed` indices dropped.
    pub fn without_nodes(&self, removed: &[usize]) -> Result<Self> {
        if let Some(&bad) = removed.iter().find(|&&i| i >= self.len()) {
            return Err(invalid(format!("node index {bad} out of range")));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|i| !removed.contains(i)).collect();
        if keep.is_empty() {
            return Err(invalid("cannot remove every node"));
        }
        let mut space = Self::new(
            keep.iter().map(|&i| self.node_ids[i].clone()).collect(),
            keep.iter().map(|&i| self.weights[i]).collect(),
            format!("{} (restricted)", self.description),
        )?;
        space.positions = self
            .positions
            .as_ref()
            .map(|p| keep.iter().map(|&i| p[i]).collect());
        Ok(space)
    }

    /// Each node duplicated with its weight; used by the complex-to-real split.
    pub fn doubled(&self) -> Self {
        let mut ids = Vec::with_capacity(2 * self.len());
        let mut weights = Vec::with_capacity(2 * self.len());
        for (id, w) in self.node_ids.iter().zip(&self.weights) {
            ids.push(format!("{id}:re"));
            weights.push(*w);
        }
        for (id, w) in self.node_ids.iter().zip(&self.weights) {
            ids.push(format!("{id}:im"));
            weights.push(*w);
        }
        Self {
            node_ids: ids,
            weights,
            description: format!("{} (re/im doubled)", self.description),
            positions: None,
        }
    }
}
