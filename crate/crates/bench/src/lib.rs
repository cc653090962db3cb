//! Shared fixtures for the criterion benches.

use contframe_core::sampling::{random_frame_pair, rng};
use contframe_core::{Field, MeasureSpace, VectorFramePair};

pub fn fixture(dim: usize, nodes: usize) -> VectorFramePair {
    let space = MeasureSpace::counting(nodes).unwrap();
    random_frame_pair(&mut rng(42), &space, dim, Field::Complex, (0.5, 2.0)).unwrap()
}
