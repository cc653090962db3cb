//! Frame generators for unitary representations of finite groups, with
//! counting measure as the Haar measure. Covers orbit frames, the shifted
//! Gram invariance test, reconstruction of the representation from a
//! Parseval orbit via `pi_g = theta_tau^* lambda_g theta_x`, and the
//! generator diagnostics for operator-valued families.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, state, Result};
use crate::frame::{analyze, VectorFramePair};
use crate::linalg::{c, identity, max_imag, spectral_norm, CMat, CVec};
use crate::measure::MeasureSpace;
use crate::ovf::{ovf_analyze, OperatorFramePair};
use crate::report::Field;

/// Representation validity checks run at a tighter default than frame
/// classification: permutation and rotation arithmetic is nearly exact.
pub const REP_TOL: f64 = 1e-10;

/// A finite group as a multiplication table over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and full associativity.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(invalid("group table must be nonempty"));
        }
        for row in &mul {
            if row.len() != n {
                return Err(invalid("group table must be square"));
            }
            if row.iter().any(|&v| v >= n) {
                return Err(invalid("group table entry out of range"));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| invalid("group table has no identity element"))?;
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| invalid(format!("element {g} has no inverse")))?;
            inverse[g] = inv;
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if mul[mul[a][b]][d] != mul[a][mul[b][d]] {
                        return Err(invalid(format!("associativity fails at ({a}, {b}, {d})")));
                    }
                }
            }
        }
        Ok(Self {
            order: n,
            mul,
            identity,
            inverse,
        })
    }

    /// Cyclic group Z_n.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("cyclic group needs n >= 1"));
        }
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(mul)
    }

    /// Dihedral group of order `2n`; element `j*n + i` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("dihedral group needs n >= 1"));
        }
        let order = 2 * n;
        let idx = |i: usize, j: usize| j * n + i;
        let mut mul = vec![vec![0usize; order]; order];
        for i1 in 0..n {
            for j1 in 0..2 {
                for i2 in 0..n {
                    for j2 in 0..2 {
                        // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                        let i = if j1 == 0 {
                            (i1 + i2) % n
                        } else {
                            (i1 + n - i2 % n) % n
                        };
                        mul[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2);
                    }
                }
            }
        }
        Self::from_table(mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

/// Unitary representation: one matrix per group element, validated to be a
/// homomorphism into the unitaries.
#[derive(Clone, Debug)]
pub struct Representation {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<CMat>,
}

impl Representation {
    pub fn new(group: FiniteGroup, matrices: Vec<CMat>, tol: f64) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(invalid(format!(
                "{} matrices for group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        for m in &matrices {
            if m.shape() != (dim, dim) {
                return Err(invalid("representation matrices must share a square shape"));
            }
        }
        let rep = Self {
            group,
            dim,
            matrices,
        };
        let (hom, unit) = rep.residuals();
        if hom > tol || unit > tol {
            return Err(invalid(format!(
                "not a unitary representation: homomorphism residual {hom:.3e}, \
                 unitarity residual {unit:.3e} at tolerance {tol:.3e}"
            )));
        }
        Ok(rep)
    }

    /// Max homomorphism residual `||pi_g pi_h - pi_gh||` over all pairs and
    /// max unitarity residual `||pi_g^H pi_g - I||`.
    pub fn residuals(&self) -> (f64, f64) {
        let n = self.group.order();
        let eye = identity(self.dim);
        let mut hom: f64 = 0.0;
        let mut unit: f64 = 0.0;
        for g in 0..n {
            unit = unit.max(spectral_norm(
                &(self.matrices[g].adjoint() * &self.matrices[g] - &eye),
            ));
            for h in 0..n {
                let prod = &self.matrices[g] * &self.matrices[h];
                hom = hom.max(spectral_norm(
                    &(prod - &self.matrices[self.group.mul(g, h)]),
                ));
            }
        }
        (hom, unit)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    /// Rotations of R^2 by `2*pi*k/n` as a representation of Z_n.
    pub fn cyclic_rotations(n: usize) -> Result<Self> {
        let group = FiniteGroup::cyclic(n)?;
        let mats = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                CMat::from_row_slice(2, 2, &[c(t.cos()), c(-t.sin()), c(t.sin()), c(t.cos())])
            })
            .collect();
        Self::new(group, mats, REP_TOL)
    }
}

/// Left regular representation: permutation matrices `lambda_g e_y = e_gy`.
pub fn left_regular(group: &FiniteGroup) -> Representation {
    let n = group.order();
    let mats = (0..n)
        .map(|g| {
            let mut m = CMat::zeros(n, n);
            for y in 0..n {
                m[(group.mul(g, y), y)] = c(1.0);
            }
            m
        })
        .collect();
    Representation::new(group.clone(), mats, REP_TOL)
        .expect("left translations always form a unitary representation")
}

/// Orbit pair `({pi_g x}, {pi_g tau})` over counting measure in group order.
pub fn orbit_frame(rep: &Representation, x: &CVec, tau: &CVec) -> Result<VectorFramePair> {
    if x.len() != rep.dim() || tau.len() != rep.dim() {
        return Err(invalid(format!(
            "generators must live in dimension {}",
            rep.dim()
        )));
    }
    let n = rep.group().order();
    let space = MeasureSpace::counting(n)?;
    let xm = CMat::from_fn(rep.dim(), n, |i, g| (rep.matrix(g) * x)[i]);
    let tm = CMat::from_fn(rep.dim(), n, |i, g| (rep.matrix(g) * tau)[i]);
    let field = if rep.matrices().iter().all(|m| max_imag(m) == 0.0)
        && max_imag(&CMat::from_fn(x.len(), 1, |i, _| x[i])) == 0.0
        && max_imag(&CMat::from_fn(tau.len(), 1, |i, _| tau[i])) == 0.0
    {
        Field::Real
    } else {
        Field::Complex
    };
    VectorFramePair::new(space, field, xm, tm)
}

/// Shifted Gram invariance `<x_gp, x_gq> = <x_p, x_q>` (and the x/tau and
/// tau/tau variants) over all `g, p, q`; the exact orbit criterion.
pub fn gram_invariance_check(
    pair: &VectorFramePair,
    group: &FiniteGroup,
    tol: f64,
) -> Result<(bool, f64)> {
    let n = group.order();
    if pair.node_count() != n {
        return Err(invalid(format!(
            "pair has {} nodes but group has order {n}",
            pair.node_count()
        )));
    }
    let gxx = pair.x().adjoint() * pair.x();
    let gxt = pair.tau().adjoint() * pair.x();
    let gtt = pair.tau().adjoint() * pair.tau();
    let mut max_res: f64 = 0.0;
    for g in 0..n {
        for p in 0..n {
            let gp = group.mul(g, p);
            for q in 0..n {
                let gq = group.mul(g, q);
                // <x_gp, x_gq> = gram[(gq, gp)]
                max_res = max_res.max((gxx[(gq, gp)] - gxx[(q, p)]).norm());
                max_res = max_res.max((gxt[(gq, gp)] - gxt[(q, p)]).norm());
                max_res = max_res.max((gtt[(gq, gp)] - gtt[(q, p)]).norm());
            }
        }
    }
    Ok((max_res <= tol, max_res))
}

/// Outcome of a reconstruction attempt, with every residual that gated it.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub representation: Option<Representation>,
    pub gram_ok: bool,
    pub gram_residual: f64,
    pub homomorphism_residual: f64,
    pub unitarity_residual: f64,
    pub recovery_residual: f64,
}

/// The Haar measure of a finite group is counting measure up to scale, so
/// reconstruction accepts any uniform-weight space and carries the weight
/// through the synthesis operator.
fn uniform_weight(pair: &VectorFramePair) -> Result<f64> {
    let w = pair.space().weights();
    let w0 = w[0];
    if w.iter().any(|wi| (wi - w0).abs() > 1e-12 * w0) {
        return Err(invalid(
            "group reconstruction needs uniform weights (Haar measure up to scale)",
        ));
    }
    Ok(w0)
}

/// Builds `pi_g = theta_tau^* lambda_g theta_x` from a Parseval pair over a
/// uniform-weight space and verifies it is a unitary representation whose
/// orbit of the identity-node columns recovers the input. Refuses (returns
/// no representation, with diagnostics) when any residual exceeds `tol`.
pub fn reconstruct_representation(
    pair: &VectorFramePair,
    group: &FiniteGroup,
    tol: f64,
) -> Result<Reconstruction> {
    let n = group.order();
    if pair.node_count() != n {
        return Err(invalid(format!(
            "pair has {} nodes but group has order {n}",
            pair.node_count()
        )));
    }
    let haar_weight = uniform_weight(pair)?;
    let (_, report) = analyze(pair, tol)?;
    if !report.is_parseval {
        return Err(state(format!(
            "reconstruction needs a Parseval pair; ||S - I|| classification gave {:?}",
            report.classification
        )));
    }
    let (gram_ok, gram_residual) = gram_invariance_check(pair, group, tol)?;

    // pi_g = w tau P_g x^H, the synthesis carrying the uniform weight.
    let theta_x = pair.x().adjoint();
    let mats: Vec<CMat> = (0..n)
        .map(|g| {
            let mut permuted = CMat::zeros(n, pair.dim());
            for y in 0..n {
                // (lambda_g f)(gy) = f(y)
                permuted.set_row(group.mul(g, y), &theta_x.row(y));
            }
            (pair.tau() * permuted).map(|z| z * haar_weight)
        })
        .collect();

    let candidate = Representation {
        group: group.clone(),
        dim: pair.dim(),
        matrices: mats,
    };
    let (hom, unit) = candidate.residuals();

    let e = group.identity_index();
    let xe = pair.x().column(e).clone_owned();
    let te = pair.tau().column(e).clone_owned();
    let mut recovery: f64 = 0.0;
    for g in 0..n {
        recovery = recovery.max((candidate.matrix(g) * &xe - pair.x().column(g)).norm());
        recovery = recovery.max((candidate.matrix(g) * &te - pair.tau().column(g)).norm());
    }

    let ok = gram_ok && hom <= tol && unit <= tol && recovery <= tol;
    Ok(Reconstruction {
        representation: ok.then_some(candidate),
        gram_ok,
        gram_residual,
        homomorphism_residual: hom,
        unitarity_residual: unit,
        recovery_residual: recovery,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationVariant {
    Left,
    Symmetric,
    Right,
}

/// Reconstruction for non-Parseval frames through the rescaled Parseval
/// pair, plus verification of the variant's conjugated recovery relation
/// (e.g. `x_g = S^(1/2) pi_g S^(-1/2) x_e` for the symmetric variant).
#[derive(Clone, Debug)]
pub struct NormalizedReconstruction {
    pub reconstruction: Reconstruction,
    pub conjugated_recovery_residual: f64,
}

pub fn normalized_reconstruction(
    pair: &VectorFramePair,
    group: &FiniteGroup,
    variant: NormalizationVariant,
    tol: f64,
) -> Result<NormalizedReconstruction> {
    let (bundle, report) = analyze(pair, tol)?;
    if !report.classification.is_frame() {
        return Err(state(format!(
            "normalized reconstruction needs a frame, got {:?}",
            report.classification
        )));
    }
    let s_inv = bundle.s_inverse().unwrap().clone();
    let s = &bundle.s;
    let (rescaled_x, rescaled_tau, conj, conj_inv) = match variant {
        NormalizationVariant::Left => (
            &s_inv * pair.x(),
            pair.tau().clone(),
            s.clone(),
            s_inv.clone(),
        ),
        NormalizationVariant::Symmetric => {
            let half = bundle.s_spectrum.power(0.5);
            let half_inv = bundle.s_spectrum.power(-0.5);
            (&half_inv * pair.x(), &half_inv * pair.tau(), half, half_inv)
        }
        NormalizationVariant::Right => (
            pair.x().clone(),
            &s_inv * pair.tau(),
            s.clone(),
            s_inv.clone(),
        ),
    };
    let rescaled =
        VectorFramePair::new(pair.space().clone(), pair.field(), rescaled_x, rescaled_tau)?;
    let reconstruction = reconstruct_representation(&rescaled, group, tol)?;

    let conjugated_recovery_residual = match &reconstruction.representation {
        Some(rep) => {
            let e = group.identity_index();
            let xe = pair.x().column(e).clone_owned();
            let te = pair.tau().column(e).clone_owned();
            let mut res: f64 = 0.0;
            for g in 0..group.order() {
                match variant {
                    NormalizationVariant::Left => {
                        // x_g = S pi_g S^-1 x_e, tau_g = pi_g tau_e
                        res = res.max(
                            (&conj * rep.matrix(g) * &conj_inv * &xe - pair.x().column(g)).norm(),
                        );
                        res = res.max((rep.matrix(g) * &te - pair.tau().column(g)).norm());
                    }
                    NormalizationVariant::Symmetric => {
                        res = res.max(
                            (&conj * rep.matrix(g) * &conj_inv * &xe - pair.x().column(g)).norm(),
                        );
                        res = res.max(
                            (&conj * rep.matrix(g) * &conj_inv * &te - pair.tau().column(g)).norm(),
                        );
                    }
                    NormalizationVariant::Right => {
                        res = res.max((rep.matrix(g) * &xe - pair.x().column(g)).norm());
                        res = res.max(
                            (&conj * rep.matrix(g) * &conj_inv * &te - pair.tau().column(g)).norm(),
                        );
                    }
                }
            }
            res
        }
        None => f64::INFINITY,
    };
    Ok(NormalizedReconstruction {
        reconstruction,
        conjugated_recovery_residual,
    })
}

/// Diagnostics for an operator family intended as a generator orbit
/// `A_g = A_e pi_(g^-1)`: the generator structure itself, the intertwining
/// `theta_A pi_g = lambda_g theta_A`, the commutant relation `S pi_g = pi_g S`,
/// and Parseval status of the `S^(-1/2)`-normalized generator pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub structure_residual_a: f64,
    pub structure_residual_psi: f64,
    pub intertwining_residual_a: f64,
    pub intertwining_residual_psi: f64,
    pub commutant_residual: f64,
    pub normalized_parseval_residual: f64,
    pub all_within_tol: bool,
    pub tol: f64,
}

pub fn ovf_generator_check(
    pair: &OperatorFramePair,
    rep: &Representation,
    tol: f64,
) -> Result<GeneratorReport> {
    let group = rep.group();
    let n = group.order();
    if pair.node_count() != n {
        return Err(invalid(format!(
            "pair has {} nodes but group has order {n}",
            pair.node_count()
        )));
    }
    if pair.dim_h() != rep.dim() {
        return Err(invalid("representation dimension must match the domain"));
    }
    let e = group.identity_index();
    let mut structure_a: f64 = 0.0;
    let mut structure_psi: f64 = 0.0;
    for g in 0..n {
        let pg_inv = rep.matrix(group.inverse(g));
        structure_a = structure_a.max(spectral_norm(&(&pair.a()[g] - &pair.a()[e] * pg_inv)));
        structure_psi =
            structure_psi.max(spectral_norm(&(&pair.psi()[g] - &pair.psi()[e] * pg_inv)));
    }

    let d = pair.dim_h0();
    let stack_a = OperatorFramePair::stack(pair.a());
    let stack_psi = OperatorFramePair::stack(pair.psi());
    let permute_blocks = |stack: &CMat, g: usize| {
        let mut out = CMat::zeros(stack.nrows(), stack.ncols());
        for y in 0..n {
            let dst = group.mul(g, y);
            out.view_mut((dst * d, 0), (d, stack.ncols()))
                .copy_from(&stack.view((y * d, 0), (d, stack.ncols())));
        }
        out
    };
    let mut inter_a: f64 = 0.0;
    let mut inter_psi: f64 = 0.0;
    let (bundle, _) = ovf_analyze(pair, tol)?;
    let s = &bundle.s;
    let mut commutant: f64 = 0.0;
    for g in 0..n {
        let pg = rep.matrix(g);
        inter_a = inter_a.max(spectral_norm(
            &(&stack_a * pg - permute_blocks(&stack_a, g)),
        ));
        inter_psi = inter_psi.max(spectral_norm(
            &(&stack_psi * pg - permute_blocks(&stack_psi, g)),
        ));
        commutant = commutant.max(spectral_norm(&(s * pg - pg * s)));
    }

    let normalized_parseval_residual = if bundle.s_inverse().is_some() {
        let half_inv = bundle.s_spectrum.power(-0.5);
        let norm_pair = OperatorFramePair::new(
            pair.space().clone(),
            pair.field(),
            pair.a().iter().map(|m| m * &half_inv).collect(),
            pair.psi().iter().map(|m| m * &half_inv).collect(),
        )?;
        let s_norm = crate::ovf::frame_operator(&norm_pair);
        spectral_norm(&(s_norm - identity(pair.dim_h())))
    } else {
        f64::INFINITY
    };

    let all = [
        structure_a,
        structure_psi,
        inter_a,
        inter_psi,
        commutant,
        normalized_parseval_residual,
    ];
    Ok(GeneratorReport {
        structure_residual_a: structure_a,
        structure_residual_psi: structure_psi,
        intertwining_residual_a: inter_a,
        intertwining_residual_psi: inter_psi,
        commutant_residual: commutant,
        normalized_parseval_residual,
        all_within_tol: all.iter().all(|r| *r <= tol),
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::analyze;
    use crate::ovf::OperatorFramePair;
    use crate::report::Classification;
    use crate::sampling::{random_matrix, random_vector, rng};

    const TOL: f64 = 1e-8;

    #[test]
    fn trivial_group_left_regular() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let rep = left_regular(&g);
        assert_eq!(rep.dim(), 1);
        assert!((rep.matrix(0)[(0, 0)] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn z2_left_regular_is_swap() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let rep = left_regular(&g);
        let swap = CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        assert!(spectral_norm(&(rep.matrix(1) - swap)) < 1e-15);
    }

    #[test]
    fn z12_left_regular_composition_is_exact() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let rep = left_regular(&g);
        let (hom, unit) = rep.residuals();
        assert!(hom <= 1e-15, "permutation composition is exact, got {hom}");
        assert!(unit <= 1e-15);
    }

    #[test]
    fn dihedral_table_is_a_valid_group() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        // Nonabelian: r s != s r.
        assert_ne!(g.mul(1, 4), g.mul(4, 1));
        let rep = left_regular(&g);
        let (hom, _) = rep.residuals();
        assert!(hom <= 1e-15);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Left translations by a fixed permutation without group structure.
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn rotation_orbit_frame_operator_is_scaled_identity() {
        // Oracle: sum over rotations of c^2 R_g e1 e1^T R_g^T = (N c^2 / 2) I.
        let n = 10;
        let rep = Representation::cyclic_rotations(n).unwrap();
        let g = rep.group().clone();
        let c_val = 1.7;
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { c_val } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let (bundle, report) = analyze(&pair, TOL).unwrap();
        let expected = n as f64 * c_val * c_val / 2.0;
        assert!((report.lower_bound - expected).abs() < 1e-12);
        assert!((report.upper_bound - expected).abs() < 1e-12);
        // Frame operator commutes with every pi_g.
        for k in 0..n {
            let comm = &bundle.s * rep.matrix(k) - rep.matrix(k) * &bundle.s;
            assert!(spectral_norm(&comm) <= 1e-10);
        }
        let _ = g;
    }

    #[test]
    fn parseval_scaling_of_rotation_orbit() {
        let n = 12;
        let rep = Representation::cyclic_rotations(n).unwrap();
        let c_val = (2.0 / n as f64).sqrt();
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { c_val } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let (_, report) = analyze(&pair, TOL).unwrap();
        assert!(report.is_parseval);
    }

    #[test]
    fn zero_generator_is_not_a_frame() {
        let rep = Representation::cyclic_rotations(6).unwrap();
        let x = CVec::zeros(2);
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let (_, report) = analyze(&pair, TOL).unwrap();
        assert!(!report.classification.is_frame());
        assert_eq!(report.classification, Classification::BesselOnly);
    }

    #[test]
    fn orbit_frames_pass_gram_invariance() {
        let rep = Representation::cyclic_rotations(8).unwrap();
        let mut generator = rng(3);
        let x = random_vector(&mut generator, 2, Field::Real);
        let tau = random_vector(&mut generator, 2, Field::Real);
        let pair = orbit_frame(&rep, &x, &tau).unwrap();
        let (ok, res) = gram_invariance_check(&pair, rep.group(), TOL).unwrap();
        assert!(ok, "orbit frames satisfy gram invariance, residual {res}");
    }

    #[test]
    fn rescaled_column_breaks_gram_invariance() {
        let rep = Representation::cyclic_rotations(8).unwrap();
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { 1.0 } else { 0.3 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let mut xm = pair.x().clone();
        for i in 0..2 {
            xm[(i, 3)] *= 2.0;
        }
        let broken =
            VectorFramePair::new(pair.space().clone(), pair.field(), xm, pair.tau().clone())
                .unwrap();
        let (ok, res) = gram_invariance_check(&broken, rep.group(), TOL).unwrap();
        assert!(!ok);
        assert!(res > 0.1);
    }

    #[test]
    fn singleton_group_is_vacuously_invariant() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let space = MeasureSpace::counting(1).unwrap();
        let x = CMat::from_fn(1, 1, |_, _| c(1.0));
        let pair = VectorFramePair::self_dual(space, Field::Real, x).unwrap();
        let (ok, _) = gram_invariance_check(&pair, &g, TOL).unwrap();
        assert!(ok);
    }

    #[test]
    fn reconstruct_recovers_rotation_generators() {
        let n = 12;
        let rep = Representation::cyclic_rotations(n).unwrap();
        let c_val = (2.0 / n as f64).sqrt();
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { c_val } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let rec = reconstruct_representation(&pair, rep.group(), TOL).unwrap();
        let rebuilt = rec.representation.expect("reconstruction succeeds");
        for g in 0..n {
            assert!(
                spectral_norm(&(rebuilt.matrix(g) - rep.matrix(g))) <= 1e-9,
                "reconstructed pi_{g} must match the generating rotation"
            );
        }
        assert!(rec.homomorphism_residual <= 1e-10);
        assert!(rec.unitarity_residual <= 1e-10);
    }

    #[test]
    fn trivial_group_reconstruction_gives_identity() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let space = MeasureSpace::counting(1).unwrap();
        let x = CMat::from_fn(1, 1, |_, _| c(1.0));
        let pair = VectorFramePair::self_dual(space, Field::Real, x).unwrap();
        let rec = reconstruct_representation(&pair, &g, TOL).unwrap();
        let rep = rec.representation.unwrap();
        assert!((rep.matrix(0)[(0, 0)] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn broken_gram_invariance_refuses_reconstruction() {
        let n = 6;
        let rep = Representation::cyclic_rotations(n).unwrap();
        let c_val = (2.0 / n as f64).sqrt();
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { c_val } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        // Rescale one column of x and correct tau to keep S = I, so the
        // Parseval precondition survives but invariance is broken.
        let mut xm = pair.x().clone();
        let mut tm = pair.tau().clone();
        for i in 0..2 {
            xm[(i, 2)] *= 2.0;
            tm[(i, 2)] *= 0.5;
        }
        let broken = VectorFramePair::new(pair.space().clone(), pair.field(), xm, tm).unwrap();
        let (_, report) = analyze(&broken, TOL).unwrap();
        assert!(report.is_parseval, "correction keeps S = I");
        let rec = reconstruct_representation(&broken, rep.group(), TOL).unwrap();
        assert!(rec.representation.is_none());
        assert!(!rec.gram_ok);
    }

    #[test]
    fn non_parseval_input_is_a_state_error() {
        let rep = Representation::cyclic_rotations(5).unwrap();
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { 1.0 } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        assert!(matches!(
            reconstruct_representation(&pair, rep.group(), TOL),
            Err(crate::error::FrameError::State(_))
        ));
    }

    #[test]
    fn normalized_reconstruction_on_tight_orbit() {
        let n = 9;
        let rep = Representation::cyclic_rotations(n).unwrap();
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { 1.0 } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let out =
            normalized_reconstruction(&pair, rep.group(), NormalizationVariant::Symmetric, TOL)
                .unwrap();
        assert!(out.reconstruction.representation.is_some());
        assert!(out.conjugated_recovery_residual <= 1e-9);
    }

    #[test]
    fn normalized_reconstruction_matches_plain_on_parseval() {
        let n = 8;
        let rep = Representation::cyclic_rotations(n).unwrap();
        let c_val = (2.0 / n as f64).sqrt();
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { c_val } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let plain = reconstruct_representation(&pair, rep.group(), TOL).unwrap();
        let normalized =
            normalized_reconstruction(&pair, rep.group(), NormalizationVariant::Symmetric, TOL)
                .unwrap();
        let a = plain.representation.unwrap();
        let b = normalized.reconstruction.representation.unwrap();
        for g in 0..n {
            assert!(spectral_norm(&(a.matrix(g) - b.matrix(g))) <= 1e-10);
        }
    }

    #[test]
    fn normalized_reconstruction_on_generic_orbit() {
        // Orbit of a generic generator: S is in the commutant, so the
        // rescaled pair is again an orbit and reconstruction succeeds.
        let rep = Representation::cyclic_rotations(7).unwrap();
        let mut generator = rng(17);
        let x = random_vector(&mut generator, 2, Field::Real);
        let tau = random_vector(&mut generator, 2, Field::Real);
        let pair = orbit_frame(&rep, &x, &tau).unwrap();
        let (_, report) = analyze(&pair, TOL).unwrap();
        if !report.classification.is_frame() {
            return; // measure-zero degenerate draw
        }
        for variant in [
            NormalizationVariant::Left,
            NormalizationVariant::Symmetric,
            NormalizationVariant::Right,
        ] {
            let out = normalized_reconstruction(&pair, rep.group(), variant, TOL).unwrap();
            assert!(
                out.reconstruction.representation.is_some(),
                "variant {variant:?} must reconstruct"
            );
            assert!(out.conjugated_recovery_residual <= 1e-8);
        }
    }

    #[test]
    fn reconstruction_at_order_24_nonabelian() {
        // Dihedral group of order 24 acting on R^2 by rotations and a
        // reflection; the Parseval orbit of (c, 0) reconstructs the
        // representation with homomorphism residuals at machine precision
        // over all 576 pairs.
        let n = 12;
        let group = FiniteGroup::dihedral(n).unwrap();
        let rot = |k: usize| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            CMat::from_row_slice(2, 2, &[c(t.cos()), c(-t.sin()), c(t.sin()), c(t.cos())])
        };
        let flip = CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
        let mats: Vec<CMat> = (0..2 * n)
            .map(|idx| {
                let (i, j) = (idx % n, idx / n);
                if j == 0 {
                    rot(i)
                } else {
                    rot(i) * &flip
                }
            })
            .collect();
        let rep = Representation::new(group.clone(), mats, REP_TOL).unwrap();

        let c_val = (1.0 / n as f64).sqrt(); // S = 2 (n c^2 / 2) I = I
        let x = CVec::from_fn(2, |i, _| c(if i == 0 { c_val } else { 0.0 }));
        let pair = orbit_frame(&rep, &x, &x).unwrap();
        let (_, report) = analyze(&pair, TOL).unwrap();
        assert!(report.is_parseval);

        let rec = reconstruct_representation(&pair, &group, TOL).unwrap();
        let rebuilt = rec.representation.expect("nonabelian reconstruction succeeds");
        assert!(rec.homomorphism_residual <= 1e-10);
        assert!(rec.unitarity_residual <= 1e-10);
        for g in 0..group.order() {
            assert!(spectral_norm(&(rebuilt.matrix(g) - rep.matrix(g))) <= 1e-10);
        }
    }

    #[test]
    fn generator_check_on_orbit_family() {
        let n = 8;
        let rep = Representation::cyclic_rotations(n).unwrap();
        let group = rep.group().clone();
        let mut generator = rng(19);
        let a_e = random_matrix(&mut generator, 2, 2, Field::Real);
        let a: Vec<CMat> = (0..n)
            .map(|g| &a_e * rep.matrix(group.inverse(g)))
            .collect();
        let pair = OperatorFramePair::self_dual(MeasureSpace::counting(n).unwrap(), Field::Real, a)
            .unwrap();
        let report = ovf_generator_check(&pair, &rep, 1e-9).unwrap();
        assert!(report.structure_residual_a <= 1e-12);
        assert!(report.intertwining_residual_a <= 1e-10);
        assert!(report.commutant_residual <= 1e-10);
        assert!(report.normalized_parseval_residual <= 1e-10);
        assert!(report.all_within_tol);

        // Scrambling the node order destroys the intertwining relation.
        let mut scrambled = pair.a().to_vec();
        scrambled.swap(1, 5);
        let bad = OperatorFramePair::self_dual(
            MeasureSpace::counting(n).unwrap(),
            Field::Real,
            scrambled,
        )
        .unwrap();
        let report = ovf_generator_check(&bad, &rep, 1e-9).unwrap();
        assert!(report.intertwining_residual_a > 1e-3);
        assert!(!report.all_within_tol);
    }
}
