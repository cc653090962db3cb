//! Weak continuous frames: classification through the frame operator alone,
//! with Bessel constants demoted to informational output. On a finite node
//! set every family has finite Bessel constants, so the weak and strong
//! verdicts coincide; the report says so explicitly instead of fabricating a
//! numerical difference.

use crate::error::{state, Result};
use crate::frame::{self, pair_relation, RelationReport, VectorFramePair};
use crate::ovf::{self, OperatorFramePair};
use crate::report::FrameReport;

/// Weak-mode classification of a vector pair: `weak_frame` iff the frame
/// operator is Hermitian within tolerance with spectrum bounded away from
/// zero.
pub fn weak_classify(pair: &VectorFramePair, tol: f64) -> Result<FrameReport> {
    Ok(frame::analyze_weak(pair, tol)?.1)
}

/// Weak-mode classification of an operator pair.
pub fn weak_classify_ovf(pair: &OperatorFramePair, tol: f64) -> Result<FrameReport> {
    Ok(ovf::ovf_analyze_weak(pair, tol)?.1)
}

/// Weak duality and orthogonality use the same integral identities as the
/// strong case, so the matrix tests are shared.
pub fn weak_relations(
    p: &VectorFramePair,
    q: &VectorFramePair,
    tol: f64,
) -> Result<RelationReport> {
    pair_relation(p, q, tol)
}

/// Common dual `({S_p^-1 x + S_q^-1 y}, {S_p^-1 tau + S_q^-1 omega})` of two
/// orthogonal weak frames.
pub fn weak_common_dual(
    p: &VectorFramePair,
    q: &VectorFramePair,
    tol: f64,
) -> Result<VectorFramePair> {
    let rel = weak_relations(p, q, tol)?;
    if rel.relation != frame::Relation::Orthogonal {
        return Err(state(format!(
            "common dual construction needs orthogonal frames (cross norms {:.3e}, {:.3e})",
            rel.m1_norm, rel.m2_norm
        )));
    }
    let (bp, rp) = frame::analyze_weak(p, tol)?;
    let (bq, rq) = frame::analyze_weak(q, tol)?;
    if !rp.classification.is_frame() || !rq.classification.is_frame() {
        return Err(state("common dual construction needs two weak frames"));
    }
    let sp_inv = bp.s_inverse().unwrap();
    let sq_inv = bq.s_inverse().unwrap();
    VectorFramePair::new(
        p.space().clone(),
        p.field(),
        sp_inv * p.x() + sq_inv * q.x(),
        sp_inv * p.tau() + sq_inv * q.tau(),
    )
}
