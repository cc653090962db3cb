//! Operator-valued frame pairs: families `{A_a}`, `{Psi_a}` of `d x n`
//! operators with frame operator `S = sum_i w_i Psi_i^H A_i`.
//!
//! The analysis operator is realized as the stacked `(N*d) x n` matrix with
//! one `d x n` block per node; adjoints against weighted L^2 carry the node
//! weight on every row of its block. Similarity and combination act on the
//! right here (the index-independent side), unlike the vector case.

use crate::error::{invalid, state, Result};
use crate::frame::VectorFramePair;
use crate::linalg::{
    all_finite, expand_weights, identity, max_eig_hermitian, max_imag, min_singular_value,
    scale_rows, spectral_norm, weighted_op_norm, CMat, HermitianSpectrum,
};
use crate::measure::MeasureSpace;
use crate::report::{classify, Field, FrameReport};

pub use crate::frame::{ParsevalMode, Relation, RelationReport};

#[derive(Clone, Debug)]
pub struct OperatorFramePair {
    space: MeasureSpace,
    field: Field,
    dim_h: usize,
    dim_h0: usize,
    a: Vec<CMat>,
    psi: Vec<CMat>,
}

impl OperatorFramePair {
    pub fn new(space: MeasureSpace, field: Field, a: Vec<CMat>, psi: Vec<CMat>) -> Result<Self> {
        if a.len() != space.len() || psi.len() != space.len() {
            return Err(invalid(format!(
                "{} nodes but {} / {} operators",
                space.len(),
                a.len(),
                psi.len()
            )));
        }
        let shape = a
            .first()
            .map(|m| m.shape())
            .ok_or_else(|| invalid("empty operator family"))?;
        for m in a.iter().chain(psi.iter()) {
            if m.shape() != shape {
                return Err(invalid(format!(
                    "all operators must share shape {shape:?}, got {:?}",
                    m.shape()
                )));
            }
            if !all_finite(m) {
                return Err(invalid("operator entries must be finite"));
            }
            if field == Field::Real && max_imag(m) != 0.0 {
                return Err(invalid("real field but nonzero imaginary parts"));
            }
        }
        Ok(Self {
            space,
            field,
            dim_h: shape.1,
            dim_h0: shape.0,
            a,
            psi,
        })
    }

    pub fn self_dual(space: MeasureSpace, field: Field, a: Vec<CMat>) -> Result<Self> {
        let psi = a.clone();
        Self::new(space, field, a, psi)
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn dim_h0(&self) -> usize {
        self.dim_h0
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

    pub fn a(&self) -> &[CMat] {
        &self.a
    }

    pub fn psi(&self) -> &[CMat] {
        &self.psi
    }

    /// Stacked `(N*d) x n` analysis matrix of a family.
    pub fn stack(family: &[CMat]) -> CMat {
        let d = family[0].nrows();
        let n = family[0].ncols();
        let mut out = CMat::zeros(family.len() * d, n);
        for (i, m) in family.iter().enumerate() {
            out.view_mut((i * d, 0), (d, n)).copy_from(m);
        }
        out
    }

    fn same_space(&self, other: &Self) -> bool {
        self.space.same_quadrature(&other.space)
    }

    fn map_right(&self, r_a: &CMat, r_psi: &CMat) -> Result<Self> {
        let a = self.a.iter().map(|m| m * r_a).collect();
        let psi = self.psi.iter().map(|m| m * r_psi).collect();
        Self::new(self.space.clone(), self.field, a, psi)
    }
}

/// `S = sum_i w_i psi_i^H a_i`.
pub(crate) fn frame_operator(pair: &OperatorFramePair) -> CMat {
    let w = pair.space.weights();
    let mut s = CMat::zeros(pair.dim_h, pair.dim_h);
    for i in 0..pair.node_count() {
        s += pair.psi[i].adjoint() * &pair.a[i] * crate::linalg::c(w[i]);
    }
    s
}

fn gram(pair_a: &[CMat], w: &[f64], pair_b: &[CMat], n: usize) -> CMat {
    let mut s = CMat::zeros(n, n);
    for i in 0..w.len() {
        s += pair_a[i].adjoint() * &pair_b[i] * crate::linalg::c(w[i]);
    }
    s
}

/// Analysis data of an operator pair: stacked thetas, the frame operator,
/// the `(N*d) x (N*d)` cross projection (zero unless a frame) and the Bessel
/// constants `||theta_A||^2`, `||theta_Psi||^2`.
#[derive(Clone, Debug)]
pub struct OvfBundle {
    pub theta_a: CMat,
    pub theta_psi: CMat,
    pub s: CMat,
    pub p: CMat,
    pub bessel_a: f64,
    pub bessel_psi: f64,
    pub(crate) block_weights: Vec<f64>,
    pub(crate) s_spectrum: HermitianSpectrum,
    pub(crate) s_inv: Option<CMat>,
}

impl OvfBundle {
    pub fn s_inverse(&self) -> Option<&CMat> {
        self.s_inv.as_ref()
    }
}

fn bundle_and_classify(
    pair: &OperatorFramePair,
    tol: f64,
    weak: bool,
) -> Result<(OvfBundle, FrameReport)> {
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let w = pair.space.weights();
    let block_w = expand_weights(w, pair.dim_h0);
    let theta_a = OperatorFramePair::stack(&pair.a);
    let theta_psi = OperatorFramePair::stack(&pair.psi);
    let s = frame_operator(pair);
    let bessel_a = max_eig_hermitian(&gram(&pair.a, w, &pair.a, pair.dim_h));
    let bessel_psi = max_eig_hermitian(&gram(&pair.psi, w, &pair.psi, pair.dim_h));
    let classified = classify(&s, bessel_a, bessel_psi, tol, weak);
    let mut report = classified.report;

    let nd = theta_a.nrows();
    let (p, s_inv) = if report.classification.is_frame() {
        let s_inv = classified.herm.power(-1.0);
        let p = &theta_a * &s_inv * scale_rows(&theta_psi, &block_w).adjoint();
        (p, Some(s_inv))
    } else {
        (CMat::zeros(nd, nd), None)
    };

    let bundle = OvfBundle {
        theta_a,
        theta_psi,
        s,
        p,
        bessel_a,
        bessel_psi,
        block_weights: block_w,
        s_spectrum: classified.herm,
        s_inv,
    };
    if report.classification.is_frame() {
        report.is_riesz = ovf_riesz_residual(&bundle) <= tol;
    }
    Ok((bundle, report))
}

pub fn ovf_analyze(pair: &OperatorFramePair, tol: f64) -> Result<(OvfBundle, FrameReport)> {
    bundle_and_classify(pair, tol, false)
}

pub(crate) fn ovf_analyze_weak(
    pair: &OperatorFramePair,
    tol: f64,
) -> Result<(OvfBundle, FrameReport)> {
    bundle_and_classify(pair, tol, true)
}

fn require_frame(
    pair: &OperatorFramePair,
    tol: f64,
    what: &str,
) -> Result<(OvfBundle, FrameReport)> {
    let (bundle, report) = ovf_analyze(pair, tol)?;
    if !report.classification.is_frame() {
        return Err(state(format!(
            "{what}: pair classifies as {:?}, not a frame",
            report.classification
        )));
    }
    Ok((bundle, report))
}

/// Rank-one operators `A_i = x_i^H` realizing a vector pair as an operator
/// pair with `d = 1`; frame operators and classifications agree exactly.
pub fn vector_to_ovf(pair: &VectorFramePair) -> OperatorFramePair {
    let n = pair.dim();
    let to_rows = |m: &CMat| -> Vec<CMat> {
        (0..pair.node_count())
            .map(|i| {
                let col = m.column(i);
                CMat::from_fn(1, n, |_, j| col[j].conj())
            })
            .collect()
    };
    OperatorFramePair::new(
        pair.space().clone(),
        pair.field(),
        to_rows(pair.x()),
        to_rows(pair.tau()),
    )
    .expect("vector pair shapes are already validated")
}

/// Per-node vector families `u_{i,b} = A_i^H e_b`, `v_{i,b} = Psi_i^H e_b`
/// against an orthonormal basis `e_b` of H0 (columns of `basis`).
#[derive(Clone, Debug)]
pub struct VectorFamilies {
    /// `u[i]` is `n x d` with column `b` equal to `A_i^H e_b`.
    pub u: Vec<CMat>,
    pub v: Vec<CMat>,
}

pub fn ovf_to_vector_families(
    pair: &OperatorFramePair,
    basis: &CMat,
    tol: f64,
) -> Result<VectorFamilies> {
    let d = pair.dim_h0;
    if basis.nrows() != d || basis.ncols() != d {
        return Err(invalid(format!(
            "basis must be {d} x {d} orthonormal columns"
        )));
    }
    let gram_residual = spectral_norm(&(basis.adjoint() * basis - identity(d)));
    if gram_residual > tol {
        return Err(invalid(format!(
            "basis Gram residual {gram_residual:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    Ok(VectorFamilies {
        u: pair.a.iter().map(|m| m.adjoint() * basis).collect(),
        v: pair.psi.iter().map(|m| m.adjoint() * basis).collect(),
    })
}

/// Sandwich criterion `a I <= V U^* <= b I` for synthesis-style operators
/// given as `n x (N*d)` matrices against the weighted pairing.
pub fn sandwich_check(
    space: &MeasureSpace,
    dim_h0: usize,
    u: &CMat,
    v: &CMat,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<bool> {
    if a > b {
        return Err(invalid("sandwich_check needs a <= b"));
    }
    let nd = space.len() * dim_h0;
    if u.ncols() != nd || v.ncols() != nd || u.nrows() != v.nrows() {
        return Err(invalid(format!(
            "expected n x {nd} operators with equal row counts, got {:?} and {:?}",
            u.shape(),
            v.shape()
        )));
    }
    let block_w = expand_weights(space.weights(), dim_h0);
    // M = V W U^H
    let m = v * scale_rows(&u.adjoint(), &block_w);
    let sym = crate::linalg::hermitian_residual(&m);
    if sym > tol {
        return Ok(false);
    }
    let spec = HermitianSpectrum::of(&crate::linalg::hermitian_part(&m));
    Ok(spec.min() >= a - tol && spec.max() <= b + tol)
}

pub fn ovf_canonical_dual(pair: &OperatorFramePair, tol: f64) -> Result<OperatorFramePair> {
    let (bundle, _) = require_frame(pair, tol, "no canonical dual")?;
    let s_inv = bundle.s_inv.as_ref().unwrap();
    pair.map_right(s_inv, s_inv)
}

pub fn ovf_parsevalize(
    pair: &OperatorFramePair,
    mode: ParsevalMode,
    tol: f64,
) -> Result<OperatorFramePair> {
    let (bundle, _) = require_frame(pair, tol, "parsevalize")?;
    let eye = identity(pair.dim_h);
    match mode {
        ParsevalMode::Left => pair.map_right(bundle.s_inv.as_ref().unwrap(), &eye),
        ParsevalMode::Symmetric => {
            let half = bundle.s_spectrum.power(-0.5);
            pair.map_right(&half, &half)
        }
        ParsevalMode::Right => pair.map_right(&eye, bundle.s_inv.as_ref().unwrap()),
    }
}

/// Duality/orthogonality between operator pairs: `m1 = theta_phi^* theta_a`,
/// `m2 = theta_b^* theta_psi`.
pub fn ovf_pair_relation(
    p: &OperatorFramePair,
    q: &OperatorFramePair,
    tol: f64,
) -> Result<RelationReport> {
    if !p.same_space(q) || p.dim_h != q.dim_h || p.dim_h0 != q.dim_h0 {
        return Err(invalid("ovf_pair_relation needs matching space and shapes"));
    }
    let w = p.space.weights();
    let m1 = gram(&q.psi, w, &p.a, p.dim_h);
    let m2 = gram(&q.a, w, &p.psi, p.dim_h);
    let eye = identity(p.dim_h);
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

/// Direct sum `(A_i (+) B_i, Psi_i (+) Phi_i)` acting on the direct sum of
/// the two domains: blocks concatenated horizontally.
pub fn ovf_direct_sum(p: &OperatorFramePair, q: &OperatorFramePair) -> Result<OperatorFramePair> {
    if !p.same_space(q) {
        return Err(invalid("ovf_direct_sum needs the same measure space"));
    }
    if p.field != q.field || p.dim_h0 != q.dim_h0 {
        return Err(invalid("ovf_direct_sum needs the same field and codomain"));
    }
    if p.dim_h == 0 {
        return Ok(q.clone());
    }
    if q.dim_h == 0 {
        return Ok(p.clone());
    }
    let cat = |a: &CMat, b: &CMat| {
        CMat::from_fn(p.dim_h0, p.dim_h + q.dim_h, |i, j| {
            if j < p.dim_h {
                a[(i, j)]
            } else {
                b[(i, j - p.dim_h)]
            }
        })
    };
    let a = p.a.iter().zip(&q.a).map(|(m1, m2)| cat(m1, m2)).collect();
    let psi = p
        .psi
        .iter()
        .zip(&q.psi)
        .map(|(m1, m2)| cat(m1, m2))
        .collect();
    OperatorFramePair::new(p.space.clone(), p.field, a, psi)
}

/// `({A_i C + B_i D}, {Psi_i E + Phi_i F})` for orthogonal Parseval pairs;
/// Parseval again whenever `C^H E + D^H F = I`.
pub fn ovf_parseval_combine(
    p: &OperatorFramePair,
    q: &OperatorFramePair,
    c_m: &CMat,
    d_m: &CMat,
    e_m: &CMat,
    f_m: &CMat,
    tol: f64,
) -> Result<OperatorFramePair> {
    if !p.same_space(q) || p.dim_h != q.dim_h || p.dim_h0 != q.dim_h0 {
        return Err(invalid("ovf_parseval_combine needs matching shapes"));
    }
    let n = p.dim_h;
    for (name, m) in [("C", c_m), ("D", d_m), ("E", e_m), ("F", f_m)] {
        if m.shape() != (n, n) {
            return Err(invalid(format!("{name} must be {n} x {n}")));
        }
    }
    let (_, rp) = ovf_analyze(p, tol)?;
    let (_, rq) = ovf_analyze(q, tol)?;
    if !rp.is_parseval || !rq.is_parseval {
        return Err(state("ovf_parseval_combine needs two Parseval pairs"));
    }
    let rel = ovf_pair_relation(p, q, tol)?;
    if rel.relation != Relation::Orthogonal {
        return Err(state(format!(
            "ovf_parseval_combine needs orthogonal pairs (cross norms {:.3e}, {:.3e})",
            rel.m1_norm, rel.m2_norm
        )));
    }
    let residual = spectral_norm(&(c_m.adjoint() * e_m + d_m.adjoint() * f_m - identity(n)));
    if residual > tol {
        return Err(invalid(format!(
            "C^H E + D^H F - I has norm {residual:.3e}, above tolerance {tol:.3e}"
        )));
    }
    let a =
        p.a.iter()
            .zip(&q.a)
            .map(|(m1, m2)| m1 * c_m + m2 * d_m)
            .collect();
    let psi = p
        .psi
        .iter()
        .zip(&q.psi)
        .map(|(m1, m2)| m1 * e_m + m2 * f_m)
        .collect();
    OperatorFramePair::new(p.space.clone(), p.field, a, psi)
}

/// One bounded left inverse of `theta_A` per choice of `u`:
/// `S^-1 theta_Psi^* + u (I - theta_A S^-1 theta_Psi^*)`, both `u` and the
/// result as `n x (N*d)` matrices acting by `f -> M W f`.
pub fn ovf_left_inverses(bundle: &OvfBundle, u: &CMat) -> Result<CMat> {
    let s_inv = bundle
        .s_inv
        .as_ref()
        .ok_or_else(|| state("left inverses exist only for frames"))?;
    let n = bundle.s.nrows();
    let nd = bundle.theta_a.nrows();
    if u.shape() != (n, nd) {
        return Err(invalid(format!(
            "u must be {n} x {nd}, got {:?}",
            u.shape()
        )));
    }
    let canonical = s_inv * bundle.theta_psi.adjoint();
    let gap = identity(nd) - scale_rows(&bundle.theta_a, &bundle.block_weights) * &canonical;
    Ok(canonical + u * gap)
}

pub(crate) fn ovf_riesz_residual(bundle: &OvfBundle) -> f64 {
    let nd = bundle.p.nrows();
    weighted_op_norm(
        &(&bundle.p - identity(nd)),
        Some(&bundle.block_weights),
        Some(&bundle.block_weights),
    )
}

pub fn ovf_is_riesz(bundle: &OvfBundle, tol: f64) -> bool {
    bundle.s_inv.is_some() && ovf_riesz_residual(bundle) <= tol
}

/// Right-similarity witnesses `B_i = A_i R_ab`, `Phi_i = Psi_i R_psi_phi`
/// when they exist, from the closed formulas `R_ab = S^-1 theta_Psi^* theta_B`
/// and `R_psi_phi = S^-1 theta_A^* theta_Phi`. For a Parseval `p`,
/// `parseval_preserving` reports whether `R_psi_phi^H R_ab = I`.
#[derive(Clone, Debug)]
pub struct OvfSimilarity {
    pub r_ab: CMat,
    pub r_psi_phi: CMat,
    pub parseval_preserving: Option<bool>,
}

pub fn ovf_similarity_detect(
    p: &OperatorFramePair,
    q: &OperatorFramePair,
    tol: f64,
) -> Result<Option<OvfSimilarity>> {
    if !p.same_space(q) || p.dim_h != q.dim_h || p.dim_h0 != q.dim_h0 {
        return Err(invalid("ovf_similarity_detect needs matching shapes"));
    }
    let (bp, rp) = ovf_analyze(p, tol)?;
    let (bq, rq) = ovf_analyze(q, tol)?;
    if !rp.classification.is_frame() || !rq.classification.is_frame() {
        return Ok(None);
    }
    let s_inv = bp.s_inv.as_ref().unwrap();
    let w = p.space.weights();
    let r_ab = s_inv * gram(&p.psi, w, &q.a, p.dim_h);
    let r_psi_phi = s_inv * gram(&p.a, w, &q.psi, p.dim_h);

    let a_stack = &bq.theta_a;
    let psi_stack = &bq.theta_psi;
    let a_res = spectral_norm(&(a_stack - &bp.theta_a * &r_ab));
    let psi_res = spectral_norm(&(psi_stack - &bp.theta_psi * &r_psi_phi));
    let a_scale = spectral_norm(a_stack).max(1e-300);
    let psi_scale = spectral_norm(psi_stack).max(1e-300);
    let p_res = weighted_op_norm(
        &(&bq.p - &bp.p),
        Some(&bp.block_weights),
        Some(&bp.block_weights),
    );
    let p_scale =
        weighted_op_norm(&bp.p, Some(&bp.block_weights), Some(&bp.block_weights)).max(1.0);

    let ok = a_res <= tol * a_scale
        && psi_res <= tol * psi_scale
        && min_singular_value(&r_ab) > tol
        && min_singular_value(&r_psi_phi) > tol
        && p_res <= tol * p_scale;
    if !ok {
        return Ok(None);
    }
    let parseval_preserving = rp
        .is_parseval
        .then(|| spectral_norm(&(r_psi_phi.adjoint() * &r_ab - identity(p.dim_h))) <= tol);
    Ok(Some(OvfSimilarity {
        r_ab,
        r_psi_phi,
        parseval_preserving,
    }))
}
