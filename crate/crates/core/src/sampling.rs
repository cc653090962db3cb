//! Seeded random generators for frames and operator families. Used heavily
//! by the test suites and benches; exposed because randomized frame corpora
//! are useful beyond testing.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::frame::VectorFramePair;
use crate::linalg::{c, pinv, scale_cols, CMat, CVec, Scalar};
use crate::measure::MeasureSpace;
use crate::ovf::OperatorFramePair;
use crate::report::Field;
use nalgebra::Complex;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn entry<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Real => Complex::new(rng.gen_range(-1.0..1.0), 0.0),
        Field::Complex => Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, field: Field) -> CMat {
    CMat::from_fn(rows, cols, |_, _| entry(rng, field))
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, field: Field) -> CVec {
    CVec::from_fn(n, |_, _| entry(rng, field))
}

pub fn random_unit_vector<R: Rng>(rng: &mut R, n: usize, field: Field) -> CVec {
    loop {
        let v = random_vector(rng, n, field);
        let norm = v.norm();
        if norm > 1e-3 {
            return v / c(norm);
        }
    }
}

/// Random unitary (orthogonal over the reals) via QR of a random matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize, field: Field) -> CMat {
    random_matrix(rng, n, n, field).qr().q()
}

/// Hermitian matrix with eigenvalues drawn uniformly from `eig_range`.
pub fn random_hermitian_with_spectrum<R: Rng>(
    rng: &mut R,
    n: usize,
    field: Field,
    eig_range: (f64, f64),
) -> CMat {
    let q = random_unitary(rng, n, field);
    let mut d = CMat::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = c(rng.gen_range(eig_range.0..eig_range.1));
    }
    &q * d * q.adjoint()
}

/// Generic frame pair with a prescribed frame operator: draws a full-rank
/// analysis family `x`, a Hermitian positive `S0` with spectrum inside
/// `eig_range`, and solves `tau W x^H = S0` with a random component in the
/// cokernel, so the corpus covers non-canonical partners too.
pub fn random_frame_pair<R: Rng>(
    rng: &mut R,
    space: &MeasureSpace,
    dim: usize,
    field: Field,
    eig_range: (f64, f64),
) -> Result<VectorFramePair> {
    let n_nodes = space.len();
    assert!(dim <= n_nodes, "need at least as many nodes as dimensions");
    let w = space.weights();
    let x = loop {
        let cand = random_matrix(rng, dim, n_nodes, field);
        if crate::linalg::min_singular_value(&cand) > 1e-3 {
            break cand;
        }
    };
    let s0 = random_hermitian_with_spectrum(rng, dim, field, eig_range);
    // wxh = W x^H (N x n); tau solves tau * wxh = S0.
    let wxh = scale_cols(&x, w).adjoint();
    let wxh_pinv = pinv(&wxh, 1e-12);
    let projector = &wxh * &wxh_pinv; // N x N projector onto range(W x^H)
    let z = random_matrix(rng, dim, n_nodes, field).map(|v| v * 0.3);
    let eye = crate::linalg::identity(n_nodes);
    let tau = &s0 * &wxh_pinv + z * (eye - projector);
    VectorFramePair::new(space.clone(), field, x, tau)
}

/// Frame pair with `S = I`.
pub fn random_parseval_pair<R: Rng>(
    rng: &mut R,
    space: &MeasureSpace,
    dim: usize,
    field: Field,
) -> Result<VectorFramePair> {
    let n_nodes = space.len();
    let w = space.weights();
    let x = loop {
        let cand = random_matrix(rng, dim, n_nodes, field);
        if crate::linalg::min_singular_value(&cand) > 1e-3 {
            break cand;
        }
    };
    let wxh = scale_cols(&x, w).adjoint();
    // tau (W x^H) = I exactly when tau is the left pseudo-inverse.
    let tau = pinv(&wxh, 1e-12);
    debug_assert_eq!(tau.shape(), (dim, n_nodes));
    VectorFramePair::new(space.clone(), field, x, tau)
}

/// Operator family with per-node positive pairing: `psi_i` arbitrary and
/// `a_i = c_i psi_i` for Hermitian positive `c_i`, so `psi_i^H a_i >= 0`
/// holds at every node. This is the natural hypothesis-satisfying corpus for
/// the perturbation theorems.
pub fn random_positive_ovf<R: Rng>(
    rng: &mut R,
    space: &MeasureSpace,
    dim_h: usize,
    dim_h0: usize,
    field: Field,
    factor_range: (f64, f64),
) -> Result<OperatorFramePair> {
    let mut a = Vec::with_capacity(space.len());
    let mut psi = Vec::with_capacity(space.len());
    for _ in 0..space.len() {
        let v = random_matrix(rng, dim_h0, dim_h, field);
        let c_i = random_hermitian_with_spectrum(rng, dim_h0, field, factor_range);
        a.push(&c_i * &v);
        psi.push(v);
    }
    OperatorFramePair::new(space.clone(), field, a, psi)
}

/// Per-node positive scaling factors for perturbing [`random_positive_ovf`]
/// corpora while keeping the positivity hypothesis intact.
pub fn random_positive_factors<R: Rng>(
    rng: &mut R,
    dim_h0: usize,
    field: Field,
    n_nodes: usize,
    range: (f64, f64),
) -> Vec<CMat> {
    (0..n_nodes)
        .map(|_| random_hermitian_with_spectrum(rng, dim_h0, field, range))
        .collect()
}
