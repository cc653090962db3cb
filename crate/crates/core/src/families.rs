//! Ready-made example families used across tests, benches and the CLI docs.

use crate::error::Result;
use crate::frame::VectorFramePair;
use crate::linalg::{c, CMat};
use crate::measure::MeasureSpace;
use crate::report::Field;

/// Unit vectors at `n` equally spaced angles on `[0, 2*pi)` with weights
/// `2*pi/n` and `tau = x`. For `n >= 3` the frame operator is exactly
/// `pi * I` on R^2, the tight anchor family.
pub fn circle_family(n: usize) -> Result<VectorFramePair> {
    let space = MeasureSpace::circle(n)?;
    let angles: Vec<f64> = space.positions().unwrap().to_vec();
    let x = CMat::from_fn(2, n, |i, j| {
        c(if i == 0 {
            angles[j].cos()
        } else {
            angles[j].sin()
        })
    });
    VectorFramePair::self_dual(space, Field::Real, x)
}

/// The standard orthonormal basis of R^dim as a self-dual pair over counting
/// measure: the identity case `S = I`.
pub fn orthonormal_basis_pair(dim: usize) -> Result<VectorFramePair> {
    let space = MeasureSpace::counting(dim)?;
    let x = CMat::from_fn(dim, dim, |i, j| c(if i == j { 1.0 } else { 0.0 }));
    VectorFramePair::self_dual(space, Field::Real, x)
}

/// Diagonal pair with columns `e_1, sqrt(2) e_2` over counting measure:
/// eigenvalues `{1, 2}`, condition number 2.
pub fn diag_pair() -> Result<VectorFramePair> {
    let space = MeasureSpace::counting(2)?;
    let mut x = CMat::zeros(2, 2);
    x[(0, 0)] = c(1.0);
    x[(1, 1)] = c(2.0f64.sqrt());
    VectorFramePair::self_dual(space, Field::Real, x)
}
