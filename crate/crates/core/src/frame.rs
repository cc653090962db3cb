//! Vector frame pairs: families `{x_a}`, `{tau_a}` in a finite-dimensional
//! Hilbert space with the mixed frame operator `S h = sum_i w_i <h,x_i> tau_i`.
//!
//! Matrix conventions, used verbatim everywhere: `x` and `tau` are `n x N`
//! with one column per node, `W = diag(weights)`, `S = tau W x^H`, the
//! analysis operator applied to `h` yields raw samples `x^H h`, and adjoints
//! against weighted L^2 carry the weights (`theta_x^* f = x W f`). Operators
//! from L^2 into the space (left inverses, the `U` freedom below) are given
//! as `n x N` matrices `M` acting by `f -> M W f`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, state, Result};
use crate::linalg::{
    all_finite, identity, max_eig_hermitian, max_imag, min_singular_value, pairing, scale_cols,
    spectral_norm, weighted_op_norm, CMat, HermitianSpectrum,
};
use crate::measure::MeasureSpace;
use crate::report::{classify, Field, FrameReport};

#[derive(Clone, Debug)]
pub struct VectorFramePair {
    space: MeasureSpace,
    field: Field,
    x: CMat,
    tau: CMat,
}

impl VectorFramePair {
    pub fn new(space: MeasureSpace, field: Field, x: CMat, tau: CMat) -> Result<Self> {
        if x.shape() != tau.shape() {
            return Err(invalid(format!(
                "x is {:?} but tau is {:?}",
                x.shape(),
                tau.shape()
            )));
        }
        if x.ncols() != space.len() {
            return Err(invalid(format!(
                "{} columns for {} nodes",
                x.ncols(),
                space.len()
            )));
        }
        if !all_finite(&x) || !all_finite(&tau) {
            return Err(invalid("family entries must be finite"));
        }
        if field == Field::Real && (max_imag(&x) != 0.0 || max_imag(&tau) != 0.0) {
            return Err(invalid("real field but nonzero imaginary parts"));
        }
        Ok(Self {
            space,
            field,
            x,
            tau,
        })
    }

    /// Pair with `tau = x`.
    pub fn self_dual(space: MeasureSpace, field: Field, x: CMat) -> Result<Self> {
        let tau = x.clone();
        Self::new(space, field, x, tau)
    }

    pub fn dim(&self) -> usize {
        self.x.nrows()
    }

    pub fn node_count(&self) -> usize {
        self.space.len()
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn x(&self) -> &CMat {
        &self.x
    }

    pub fn tau(&self) -> &CMat {
        &self.tau
    }

    pub(crate) fn with_field(&self, field: Field) -> Self {
        Self {
            field,
            ..self.clone()
        }
    }

    pub(crate) fn same_space(&self, other: &Self) -> bool {
        self.space.same_quadrature(&other.space)
    }
}

/// Analysis data of a pair: `theta_x` holds the raw samples `<h, x_i>` row by
/// row (`x^H`), `s = tau W x^H`, and `p` is the cross projection
/// `theta_x S^-1 theta_tau^*` in sample coordinates (`x^H S^-1 tau W`),
/// zero when the pair is not a frame.
#[derive(Clone, Debug)]
pub struct AnalysisBundle {
    pub theta_x: CMat,
    pub theta_tau: CMat,
    pub s: CMat,
    pub p: CMat,
    pub(crate) weights: Vec<f64>,
    pub(crate) s_spectrum: HermitianSpectrum,
    pub(crate) s_inv: Option<CMat>,
}

impl AnalysisBundle {
    pub fn s_inverse(&self) -> Option<&CMat> {
        self.s_inv.as_ref()
    }
}

fn bundle_and_classify(
    pair: &VectorFramePair,
    tol: f64,
    weak: bool,
) -> Result<(AnalysisBundle, FrameReport)> {
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let w = pair.space.weights();
    let n_nodes = pair.node_count();
    let s = pairing(&pair.tau, w, &pair.x);
    let bessel_x = max_eig_hermitian(&pairing(&pair.x, w, &pair.x));
    let bessel_tau = max_eig_hermitian(&pairing(&pair.tau, w, &pair.tau));
    let classified = classify(&s, bessel_x, bessel_tau, tol, weak);
    let mut report = classified.report;

    let (p, s_inv) = if report.classification.is_frame() {
        let s_inv = classified.herm.power(-1.0);
        let p = pair.x.adjoint() * &s_inv * scale_cols(&pair.tau, w);
        (p, Some(s_inv))
    } else {
        (CMat::zeros(n_nodes, n_nodes), None)
    };

    let bundle = AnalysisBundle {
        theta_x: pair.x.adjoint(),
        theta_tau: pair.tau.adjoint(),
        s,
        p,
        weights: w.to_vec(),
        s_spectrum: classified.herm,
        s_inv,
    };
    if report.classification.is_frame() {
        report.is_riesz = riesz_residual(&bundle) <= tol;
    }
    Ok((bundle, report))
}

/// Frame operator, Bessel constants, cross projection and classification of a
/// pair. Never fails on degenerate data; such pairs simply classify
/// `not_frame` (or `bessel_only`).
pub fn analyze(pair: &VectorFramePair, tol: f64) -> Result<(AnalysisBundle, FrameReport)> {
    bundle_and_classify(pair, tol, false)
}

pub(crate) fn analyze_weak(
    pair: &VectorFramePair,
    tol: f64,
) -> Result<(AnalysisBundle, FrameReport)> {
    bundle_and_classify(pair, tol, true)
}

fn require_frame(
    pair: &VectorFramePair,
    tol: f64,
    what: &str,
) -> Result<(AnalysisBundle, FrameReport)> {
    let (bundle, report) = analyze(pair, tol)?;
    if !report.classification.is_frame() {
        return Err(state(format!(
            "{what}: pair classifies as {:?}, not a frame",
            report.classification
        )));
    }
    let _ = &bundle.s_inv; // guaranteed present past this point
    Ok((bundle, report))
}

/// Canonical dual `(S^-1 x, S^-1 tau)` on the same space.
pub fn canonical_dual(pair: &VectorFramePair, tol: f64) -> Result<VectorFramePair> {
    let (bundle, _) = require_frame(pair, tol, "no canonical dual")?;
    let s_inv = bundle.s_inv.as_ref().unwrap();
    VectorFramePair::new(
        pair.space.clone(),
        pair.field,
        s_inv * &pair.x,
        s_inv * &pair.tau,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParsevalMode {
    Left,
    Symmetric,
    Right,
}

/// One of the three Parseval rescalings `(S^-1 x, tau)`, `(S^-1/2 x, S^-1/2 tau)`,
/// `(x, S^-1 tau)`; each is similar to the input with the obvious witness.
pub fn parsevalize(
    pair: &VectorFramePair,
    mode: ParsevalMode,
    tol: f64,
) -> Result<VectorFramePair> {
    let (bundle, _) = require_frame(pair, tol, "parsevalize")?;
    let (new_x, new_tau) = match mode {
        ParsevalMode::Left => (bundle.s_inv.as_ref().unwrap() * &pair.x, pair.tau.clone()),
        ParsevalMode::Symmetric => {
            let half = bundle.s_spectrum.power(-0.5);
            (&half * &pair.x, &half * &pair.tau)
        }
        ParsevalMode::Right => (pair.x.clone(), bundle.s_inv.as_ref().unwrap() * &pair.tau),
    };
    VectorFramePair::new(pair.space.clone(), pair.field, new_x, new_tau)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Dual,
    Orthogonal,
    Neither,
}

/// Residuals of the duality and orthogonality tests between two pairs.
/// `m1 = theta_omega^* theta_x` and `m2 = theta_y^* theta_tau`; dual means
/// both are the identity, orthogonal means both vanish.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: Relation,
    pub m1_identity_residual: f64,
    pub m2_identity_residual: f64,
    pub m1_norm: f64,
    pub m2_norm: f64,
    pub tol: f64,
}

pub fn pair_relation(p: &VectorFramePair, q: &VectorFramePair, tol: f64) -> Result<RelationReport> {
    if !p.same_space(q) || p.dim() != q.dim() || p.field != q.field {
        return Err(invalid(
            "pair_relation needs matching space, dimension and field",
        ));
    }
    let w = p.space.weights();
    let m1 = pairing(&q.tau, w, &p.x);
    let m2 = pairing(&q.x, w, &p.tau);
    let eye = identity(p.dim());
    let d1 = spectral_norm(&(&m1 - &eye));
    let d2 = spectral_norm(&(&m2 - &eye));
    let n1 = spectral_norm(&m1);
    let n2 = spectral_norm(&m2);
    let relation = if d1 <= tol && d2 <= tol {
        Relation::Dual
    } else if n1 <= tol && n2 <= tol {
        Relation::Orthogonal
    } else {
        Relation::Neither
    };
    Ok(RelationReport {
        relation,
        m1_identity_residual: d1,
        m2_identity_residual: d2,
        m1_norm: n1,
        m2_norm: n2,
        tol,
    })
}

/// `||P - I||` against the weighted L^2 operator norm.
pub(crate) fn riesz_residual(bundle: &AnalysisBundle) -> f64 {
    let n = bundle.p.nrows();
    weighted_op_norm(
        &(&bundle.p - identity(n)),
        Some(&bundle.weights),
        Some(&bundle.weights),
    )
}

/// `P = I` test: analysis operators are onto all of L^2, duals are unique.
pub fn is_riesz(bundle: &AnalysisBundle, tol: f64) -> bool {
    bundle.s_inv.is_some() && riesz_residual(bundle) <= tol
}

/// One bounded left inverse of `theta_x` per choice of `u`:
/// `S^-1 theta_tau^* + u (I - theta_x S^-1 theta_tau^*)`. `u` and the result
/// are `n x N` matrices acting on samples by `f -> M W f`; `u = 0` yields the
/// canonical left inverse `S^-1 theta_tau^*`, i.e. the matrix `S^-1 tau`.
pub fn left_inverses(bundle: &AnalysisBundle, u: &CMat) -> Result<CMat> {
    let s_inv = bundle
        .s_inv
        .as_ref()
        .ok_or_else(|| state("left inverses exist only for frames"))?;
    let n = bundle.s.nrows();
    let n_nodes = bundle.weights.len();
    if u.shape() != (n, n_nodes) {
        return Err(invalid(format!(
            "u must be {n} x {n_nodes}, got {:?}",
            u.shape()
        )));
    }
    let tau = bundle.theta_tau.adjoint();
    let canonical = s_inv * &tau;
    // I - W x^H S^-1 tau  (the weighted-pairing matrix of I - P)
    let w_theta = scale_cols(&bundle.theta_x.adjoint(), &bundle.weights).adjoint();
    let gap = identity(n_nodes) - w_theta * &canonical;
    Ok(canonical + u * gap)
}

/// Stacked pair on the direct sum of the two spaces' dimensions. A
/// zero-dimensional side leaves the other pair untouched.
pub fn direct_sum(p: &VectorFramePair, q: &VectorFramePair) -> Result<VectorFramePair> {
    if !p.same_space(q) {
        return Err(invalid("direct_sum needs the same measure space"));
    }
    if p.field != q.field {
        return Err(invalid("direct_sum needs the same field"));
    }
    if p.dim() == 0 {
        return Ok(q.clone());
    }
    if q.dim() == 0 {
        return Ok(p.clone());
    }
    let n = p.dim() + q.dim();
    let n_nodes = p.node_count();
    let stack = |a: &CMat, b: &CMat| {
        CMat::from_fn(n, n_nodes, |i, j| {
            if i < p.dim() {
                a[(i, j)]
            } else {
                b[(i - p.dim(), j)]
            }
        })
    };
    VectorFramePair::new(
        p.space.clone(),
        p.field,
        stack(&p.x, &q.x),
        stack(&p.tau, &q.tau),
    )
}

/// `({A x + B y}, {C tau + D omega})` for orthogonal Parseval pairs; Parseval
/// again whenever `A C^H + B D^H = I`.
pub fn parseval_combine(
    p: &VectorFramePair,
    q: &VectorFramePair,
    a: &CMat,
    b: &CMat,
    c_m: &CMat,
    d: &CMat,
    tol: f64,
) -> Result<VectorFramePair> {
    if !p.same_space(q) || p.dim() != q.dim() {
        return Err(invalid(
            "parseval_combine needs matching space and dimension",
        ));
    }
    let n = p.dim();
    for (name, m) in [("A", a), ("B", b), ("C", c_m), ("D", d)] {
        if m.shape() != (n, n) {
            return Err(invalid(format!("{name} must be {n} x {n}")));
        }
    }
    let (_, rp) = analyze(p, tol)?;
    let (_, rq) = analyze(q, tol)?;
    if !rp.is_parseval || !rq.is_parseval {
        return Err(state("parseval_combine needs two Parseval pairs"));
    }
    let rel = pair_relation(p, q, tol)?;
    if rel.relation != Relation::Orthogonal {
        return Err(state(format!(
            "parseval_combine needs orthogonal pairs (cross norms {:.3e}, {:.3e})",
            rel.m1_norm, rel.m2_norm
        )));
    }
    let residual = spectral_norm(&(a * c_m.adjoint() + b * d.adjoint() - identity(n)));
    if residual > tol {
        return Err(invalid(format!(
            "A C^H + B D^H - I has norm {residual:.3e}, above tolerance {tol:.3e}"
        )));
    }
    VectorFramePair::new(
        p.space.clone(),
        p.field,
        a * &p.x + b * &q.x,
        c_m * &p.tau + d * &q.tau,
    )
}

/// Similarity witnesses `y = T_xy x`, `omega = T_tau_omega tau` when they
/// exist; computed by the closed formulas `T_xy = theta_y^* theta_tau S^-1`,
/// `T_tau_omega = theta_omega^* theta_x S^-1` and then verified.
#[derive(Clone, Debug)]
pub struct VectorSimilarity {
    pub t_xy: CMat,
    pub t_tau_omega: CMat,
}

pub fn similarity_detect(
    p: &VectorFramePair,
    q: &VectorFramePair,
    tol: f64,
) -> Result<Option<VectorSimilarity>> {
    if !p.same_space(q) || p.dim() != q.dim() {
        return Err(invalid(
            "similarity_detect needs matching space and dimension",
        ));
    }
    let (bp, rp) = analyze(p, tol)?;
    let (bq, rq) = analyze(q, tol)?;
    if !rp.classification.is_frame() || !rq.classification.is_frame() {
        return Ok(None);
    }
    let s_inv = bp.s_inv.as_ref().unwrap();
    let w = p.space.weights();
    let t_xy = pairing(&q.x, w, &p.tau) * s_inv;
    let t_tau_omega = pairing(&q.tau, w, &p.x) * s_inv;

    let y_res = spectral_norm(&(&q.x - &t_xy * &p.x));
    let omega_res = spectral_norm(&(&q.tau - &t_tau_omega * &p.tau));
    let y_scale = spectral_norm(&q.x).max(1e-300);
    let omega_scale = spectral_norm(&q.tau).max(1e-300);
    let p_res = weighted_op_norm(&(&bq.p - &bp.p), Some(w), Some(w));
    let p_scale = weighted_op_norm(&bp.p, Some(w), Some(w)).max(1.0);

    let ok = y_res <= tol * y_scale
        && omega_res <= tol * omega_scale
        && min_singular_value(&t_xy) > tol
        && min_singular_value(&t_tau_omega) > tol
        && p_res <= tol * p_scale;
    Ok(ok.then_some(VectorSimilarity { t_xy, t_tau_omega }))
}

/// Decomposition residuals of a dual `d` of `p`: writing `y = S^-1 x + z` and
/// `omega = S^-1 tau + rho`, genuine duals have `theta_tau^* theta_z = 0` and
/// `theta_x^* theta_rho = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualResidualReport {
    pub z_norm: f64,
    pub rho_norm: f64,
    pub tau_z_orthogonality: f64,
    pub x_rho_orthogonality: f64,
}

pub fn dual_residual(
    p: &VectorFramePair,
    d: &VectorFramePair,
    tol: f64,
) -> Result<DualResidualReport> {
    let rel = pair_relation(p, d, tol)?;
    if rel.relation != Relation::Dual {
        return Err(state(format!(
            "dual_residual needs a dual pair (identity residuals {:.3e}, {:.3e})",
            rel.m1_identity_residual, rel.m2_identity_residual
        )));
    }
    let (bundle, _) = require_frame(p, tol, "dual_residual")?;
    let s_inv = bundle.s_inv.as_ref().unwrap();
    let z = &d.x - s_inv * &p.x;
    let rho = &d.tau - s_inv * &p.tau;
    let w = p.space.weights();
    Ok(DualResidualReport {
        z_norm: spectral_norm(&z),
        rho_norm: spectral_norm(&rho),
        tau_z_orthogonality: spectral_norm(&pairing(&p.tau, w, &z)),
        x_rho_orthogonality: spectral_norm(&pairing(&p.x, w, &rho)),
    })
}

/// Apply the frame operator without materializing it: `S h`.
pub fn apply_frame_operator(
    pair: &VectorFramePair,
    h: &crate::linalg::CVec,
) -> crate::linalg::CVec {
    let w = pair.space.weights();
    let samples = pair.x.adjoint() * h;
    let mut out = crate::linalg::CVec::zeros(pair.dim());
    for i in 0..pair.node_count() {
        out += pair.tau.column(i) * (samples[i] * w[i]);
    }
    out
}
