//! Shared corpus builders for the integration suites.

use contframe_core::sampling::{random_frame_pair, rng};
use contframe_core::{Field, MeasureSpace, VectorFramePair};
use rand::Rng;

/// Mixed corpus of random frames: real and complex, dims up to 8, node
/// counts up to 64, over counting, interval and circle quadratures.
pub fn frame_corpus(seed: u64, count: usize) -> Vec<VectorFramePair> {
    let mut generator = rng(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let dim = generator.gen_range(1..=8usize);
        let n_nodes = generator.gen_range(dim.max(2)..=64usize);
        let space = match k % 3 {
            0 => MeasureSpace::counting(n_nodes).unwrap(),
            1 => {
                MeasureSpace::uniform_interval(0.0, generator.gen_range(0.5..4.0), n_nodes).unwrap()
            }
            _ => MeasureSpace::circle(n_nodes).unwrap(),
        };
        let field = if k % 2 == 0 {
            Field::Real
        } else {
            Field::Complex
        };
        let pair = random_frame_pair(&mut generator, &space, dim, field, (0.4, 3.0)).unwrap();
        out.push(pair);
    }
    out
}

pub fn max_entry_distance(a: &contframe_core::CMat, b: &contframe_core::CMat) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}
