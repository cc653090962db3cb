//! Finite-dimensional spectral and trace identities: eigenvalue bounds,
//! trace/condition/variation/dimension formulas, the exhaustive spanning
//! characterization, subset removal, the real/complex transport theorems and
//! the R^2 tight-design criterion.

use serde::{Deserialize, Serialize};

use crate::error::{gate, invalid, state, FrameError, Result};
use crate::frame::{analyze, VectorFramePair};
use crate::linalg::{c, hermitian_part, spectral_norm, CMat, HermitianSpectrum, Scalar};
use crate::measure::MeasureSpace;
use crate::report::{Field, FrameReport};
use crate::sampling::{random_unit_vector, rng};

/// Spectral data of a frame with the coupled integral identities:
/// `trace_s = int <x, tau> dmu` and the two double-integral forms of
/// `trace(S^2)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralSummary {
    /// Descending, with multiplicity.
    pub eigenvalues: Vec<f64>,
    pub trace_s: f64,
    pub trace_s2: f64,
    pub condition_number: f64,
    pub integral_pairing: (f64, f64),
    pub double_integral_v1: (f64, f64),
    pub double_integral_v2: (f64, f64),
    pub trace_identity_residual: f64,
    pub trace_s2_identity_residual: f64,
    pub double_integral_agreement: f64,
}

fn scalar_pair(v: Scalar) -> (f64, f64) {
    (v.re, v.im)
}

/// `int <x_a, tau_a> dmu`.
fn pairing_integral(pair: &VectorFramePair) -> Scalar {
    let w = pair.space().weights();
    (0..pair.node_count())
        .map(|i| pair.tau().column(i).dotc(&pair.x().column(i)) * c(w[i]))
        .sum()
}

pub fn spectral_summary(pair: &VectorFramePair, tol: f64) -> Result<SpectralSummary> {
    let (bundle, report) = analyze(pair, tol)?;
    if !report.classification.is_frame() {
        return Err(state(format!(
            "spectral summary needs a frame, got {:?}",
            report.classification
        )));
    }
    let mut eigenvalues = bundle.s_spectrum.evals.clone();
    eigenvalues.reverse();
    let trace_s: f64 = eigenvalues.iter().sum();
    let trace_s2: f64 = eigenvalues.iter().map(|l| l * l).sum();
    let condition_number = eigenvalues[0] / eigenvalues[eigenvalues.len() - 1];

    let ip = pairing_integral(pair);
    let w = pair.space().weights();
    let n = pair.node_count();
    // v1 = int int <tau_a, x_b> <tau_b, x_a>; v2 = int int <tau_a, tau_b> <x_b, x_a>.
    let gram_tx = pair.x().adjoint() * pair.tau(); // [(b, a)] = <tau_a, x_b>
    let gram_tt = pair.tau().adjoint() * pair.tau();
    let gram_xx = pair.x().adjoint() * pair.x();
    let mut v1 = Scalar::default();
    let mut v2 = Scalar::default();
    for a in 0..n {
        for b in 0..n {
            let wab = c(w[a] * w[b]);
            v1 += gram_tx[(b, a)] * gram_tx[(a, b)] * wab;
            // <tau_a, tau_b> = gram_tt[(b, a)], <x_b, x_a> = gram_xx[(a, b)]
            v2 += gram_tt[(b, a)] * gram_xx[(a, b)] * wab;
        }
    }

    let scale = trace_s.abs().max(1.0);
    let scale2 = trace_s2.abs().max(1.0);
    Ok(SpectralSummary {
        eigenvalues,
        trace_s,
        trace_s2,
        condition_number,
        integral_pairing: scalar_pair(ip),
        double_integral_v1: scalar_pair(v1),
        double_integral_v2: scalar_pair(v2),
        trace_identity_residual: (ip - c(trace_s)).norm() / scale,
        trace_s2_identity_residual: (v1 - c(trace_s2)).norm() / scale2,
        double_integral_agreement: (v1 - v2).norm() / scale2,
    })
}

/// Identities special to tight frames: `b * m = int <x, tau>`, the variation
/// formula in both double-integral forms, and `(1/b)`-reconstruction checked
/// on random vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TightReport {
    pub bound: f64,
    pub dimension: usize,
    pub bound_identity_residual: f64,
    pub variation_residual_v1: f64,
    pub variation_residual_v2: f64,
    pub reconstruction_residual: f64,
    pub tol: f64,
}

pub fn tight_identities(pair: &VectorFramePair, tol: f64) -> Result<TightReport> {
    let (bundle, report) = analyze(pair, tol)?;
    if !report.is_tight {
        return Err(state(format!(
            "tight identities need a tight frame (bounds {:.6}, {:.6})",
            report.lower_bound, report.upper_bound
        )));
    }
    let b = report.tight_bound.unwrap();
    let m = pair.dim() as f64;
    let summary = spectral_summary(pair, tol)?;
    let ip = summary.integral_pairing.0;
    let bound_identity_residual = (b * m - ip).abs() / ip.abs().max(1.0);

    let target = ip * ip / m;
    let variation_residual_v1 =
        (summary.double_integral_v1.0 - target).abs() / target.abs().max(1.0);
    let variation_residual_v2 =
        (summary.double_integral_v2.0 - target).abs() / target.abs().max(1.0);

    let mut generator = rng(0x71_6874);
    let mut reconstruction_residual: f64 = 0.0;
    let s_inv_scale = c(1.0 / b);
    for _ in 0..16 {
        let h = random_unit_vector(&mut generator, pair.dim(), pair.field());
        let sh = crate::frame::apply_frame_operator(pair, &h);
        reconstruction_residual = reconstruction_residual.max((sh * s_inv_scale - &h).norm());
    }
    let _ = &bundle;
    Ok(TightReport {
        bound: b,
        dimension: pair.dim(),
        bound_identity_residual,
        variation_residual_v1,
        variation_residual_v2,
        reconstruction_residual,
        tol,
    })
}

/// Extended trace formula for Parseval pairs: both integrals
/// `int <T x_a, tau_a> dmu` and `int <T tau_a, x_a> dmu` equal `trace(T)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceFormulaReport {
    pub trace_direct: (f64, f64),
    pub integral_x_tau: (f64, f64),
    pub integral_tau_x: (f64, f64),
    pub residual_x_tau: f64,
    pub residual_tau_x: f64,
}

pub fn trace_formula(pair: &VectorFramePair, t: &CMat, tol: f64) -> Result<TraceFormulaReport> {
    let (_, report) = analyze(pair, tol)?;
    if !report.is_parseval {
        return Err(state("the extended trace formula needs a Parseval pair"));
    }
    let m = pair.dim();
    if t.shape() != (m, m) {
        return Err(invalid(format!("T must be {m} x {m}, got {:?}", t.shape())));
    }
    let w = pair.space().weights();
    let mut int_xt = Scalar::default();
    let mut int_tx = Scalar::default();
    for i in 0..pair.node_count() {
        let x = pair.x().column(i);
        let tau = pair.tau().column(i);
        // <T x, tau> = tau^H (T x)
        int_xt += tau.dotc(&(t * x)) * c(w[i]);
        int_tx += x.dotc(&(t * tau)) * c(w[i]);
    }
    let trace = t.trace();
    Ok(TraceFormulaReport {
        trace_direct: scalar_pair(trace),
        integral_x_tau: scalar_pair(int_xt),
        integral_tau_x: scalar_pair(int_tx),
        residual_x_tau: (int_xt - trace).norm(),
        residual_tau_x: (int_tx - trace).norm(),
    })
}

/// Per-node hypothesis shared by the spanning characterization and subset
/// removal: `x_i` and `tau_i` linearly dependent with nonnegative pairing
/// (zero vectors pass vacuously). Returns the offending node on failure.
fn check_parallel_nonneg(pair: &VectorFramePair, tol: f64) -> Result<()> {
    for i in 0..pair.node_count() {
        let x = pair.x().column(i).clone_owned();
        let tau = pair.tau().column(i).clone_owned();
        let nx = x.norm();
        let nt = tau.norm();
        if nx == 0.0 || nt == 0.0 {
            continue;
        }
        let inner = tau.dotc(&x); // <x, tau>
        let scale = nx * nt;
        // |<x,tau>| = ||x|| ||tau|| iff parallel (Cauchy-Schwarz equality)
        if (scale - inner.norm()).abs() > tol.sqrt() * scale {
            return Err(invalid(format!(
                "node {i}: x and tau are not parallel (Cauchy-Schwarz gap {:.3e})",
                scale - inner.norm()
            )));
        }
        if inner.re < -tol * scale || inner.im.abs() > tol.sqrt() * scale {
            return Err(invalid(format!(
                "node {i}: pairing <x, tau> = {inner} is not nonnegative"
            )));
        }
    }
    Ok(())
}

/// Hard cap on the exhaustive partition enumeration (about a million rank
/// checks); past this the operation refuses rather than samples, because the
/// characterization is a for-all statement.
pub const PARTITION_LIMIT: usize = 20;

/// Exhaustive spanning characterization: over every split of the nodes into
/// `G_x` and its complement `G_tau`, the selected columns
/// `{x_i : i in G_x} U {tau_j : j in G_tau}` must span the space. Rank is
/// tested through the smallest singular value (via the `m x m` Gram matrix).
pub fn spanning_characterization(pair: &VectorFramePair, tol: f64) -> Result<bool> {
    let n = pair.node_count();
    if n > PARTITION_LIMIT {
        return Err(FrameError::Capacity(format!(
            "{n} nodes exceed the partition enumeration cap of {PARTITION_LIMIT}"
        )));
    }
    check_parallel_nonneg(pair, tol)?;
    let m = pair.dim();
    let subsets: u64 = 1 << n;
    for mask in 0..subsets {
        // Gram = sum of selected outer products; sigma_min^2 = lambda_min.
        let mut gram = CMat::zeros(m, m);
        for i in 0..n {
            let v = if mask & (1 << i) != 0 {
                pair.x().column(i)
            } else {
                pair.tau().column(i)
            };
            for r_i in 0..m {
                for c_i in 0..m {
                    gram[(r_i, c_i)] += v[r_i] * v[c_i].conj();
                }
            }
        }
        let min_eig = HermitianSpectrum::of(&hermitian_part(&gram)).min();
        if min_eig.max(0.0).sqrt() <= tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Frame restricted to the complement of `removed`, valid when
/// `sum_{i in removed} w_i ||x_i|| ||tau_i|| < a`; the restricted lower
/// bound is at least `a` minus that mass.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubsetRemovalReport {
    pub removed_mass: f64,
    pub original_lower_bound: f64,
    pub guaranteed_lower_bound: f64,
    pub report: FrameReport,
}

pub fn subset_removal(
    pair: &VectorFramePair,
    removed: &[usize],
    tol: f64,
) -> Result<(VectorFramePair, SubsetRemovalReport)> {
    check_parallel_nonneg(pair, tol)?;
    let (_, report) = analyze(pair, tol)?;
    if !report.classification.is_frame() {
        return Err(state("subset removal needs a frame"));
    }
    let a = report.lower_bound;
    let w = pair.space().weights();
    let mut mass = 0.0;
    for &i in removed {
        if i >= pair.node_count() {
            return Err(invalid(format!("node index {i} out of range")));
        }
        mass += w[i] * pair.x().column(i).norm() * pair.tau().column(i).norm();
    }
    if mass >= a {
        return Err(gate(format!(
            "removed mass {mass:.6} is not below the lower frame bound {a:.6}"
        )));
    }
    let space = pair.space().without_nodes(removed)?;
    let keep: Vec<usize> = (0..pair.node_count())
        .filter(|i| !removed.contains(i))
        .collect();
    let sub = |m: &CMat| CMat::from_fn(pair.dim(), keep.len(), |r, j| m[(r, keep[j])]);
    let restricted = VectorFramePair::new(space, pair.field(), sub(pair.x()), sub(pair.tau()))?;
    let (_, restricted_report) = analyze(&restricted, tol)?;
    Ok((
        restricted,
        SubsetRemovalReport {
            removed_mass: mass,
            original_lower_bound: a,
            guaranteed_lower_bound: a - mass,
            report: restricted_report,
        },
    ))
}

/// Reinterpret a real pair over the complex field. Requires the bilinear
/// symmetry `tau W x^T = x W tau^T`; classification and bounds carry over
/// unchanged because the frame operator matrix is identical.
pub fn real_to_complex(pair: &VectorFramePair, tol: f64) -> Result<VectorFramePair> {
    if pair.field() != Field::Real {
        return Err(invalid("real_to_complex needs a real pair"));
    }
    let w = pair.space().weights();
    let lhs = crate::linalg::scale_cols(pair.tau(), w) * pair.x().transpose();
    let rhs = crate::linalg::scale_cols(pair.x(), w) * pair.tau().transpose();
    let residual = spectral_norm(&(lhs - rhs));
    if residual > tol {
        return Err(gate(format!(
            "bilinear symmetry residual ||tau W x^T - x W tau^T|| = {residual:.3e} exceeds {tol:.3e}"
        )));
    }
    Ok(pair.with_field(Field::Complex))
}

/// Split a complex pair into the doubled real family
/// `({Re x} U {Im x}, {Re tau} U {Im tau})` over the doubled space. Requires
/// the cross-term identity between the real/imaginary parts; frame bounds
/// are contained in the original ones, and tight/Parseval transport exactly.
pub fn complex_to_real(pair: &VectorFramePair, tol: f64) -> Result<VectorFramePair> {
    if pair.field() != Field::Complex {
        return Err(invalid("complex_to_real needs a complex pair"));
    }
    let m = pair.dim();
    let n = pair.node_count();
    let w = pair.space().weights();
    let re = |mat: &CMat| CMat::from_fn(m, n, |i, j| c(mat[(i, j)].re));
    let im = |mat: &CMat| CMat::from_fn(m, n, |i, j| c(mat[(i, j)].im));
    let (re_x, im_x) = (re(pair.x()), im(pair.x()));
    let (re_t, im_t) = (re(pair.tau()), im(pair.tau()));

    // Quadratic-form identity: sym(sum w Im(tau) Re(x)^T) = sym(sum w Re(tau) Im(x)^T).
    let m1 = crate::linalg::scale_cols(&im_t, w) * re_x.transpose();
    let m2 = crate::linalg::scale_cols(&re_t, w) * im_x.transpose();
    let sym = |mat: &CMat| (mat + mat.transpose()).map(|z| z * 0.5);
    let residual = spectral_norm(&(sym(&m1) - sym(&m2)));
    if residual > tol {
        return Err(gate(format!(
            "cross-term residual ||sym(int Im tau Re x^T) - sym(int Re tau Im x^T)|| = \
             {residual:.3e} exceeds {tol:.3e}"
        )));
    }

    let space = pair.space().doubled();
    let cat = |a: &CMat, b: &CMat| {
        CMat::from_fn(
            m,
            2 * n,
            |i, j| if j < n { a[(i, j)] } else { b[(i, j - n)] },
        )
    };
    VectorFramePair::new(space, Field::Real, cat(&re_x, &im_x), cat(&re_t, &im_t))
}

/// Tight-design criterion on R^2 for node profiles
/// `x_i = a_i (cos theta_i, sin theta_i)`, `tau_i = b_i (cos phi_i, sin phi_i)`:
/// tight exactly when the three integrals of `a b cos(theta+phi)`,
/// `a b sin(theta+phi)` and `a b sin(theta-phi)` all vanish, with bound
/// `(1/2) int a b cos(theta-phi) dmu`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct R2DesignReport {
    pub tight: bool,
    pub residuals: [f64; 3],
    pub bound: Option<f64>,
    pub analyze_report: FrameReport,
}

pub fn r2_tight_design(
    radii_x: &[f64],
    radii_tau: &[f64],
    theta: &[f64],
    phi: &[f64],
    space: &MeasureSpace,
    tol: f64,
) -> Result<R2DesignReport> {
    let n = space.len();
    for (name, arr) in [
        ("a", radii_x),
        ("b", radii_tau),
        ("theta", theta),
        ("phi", phi),
    ] {
        if arr.len() != n {
            return Err(invalid(format!(
                "{name} has {} entries for {n} nodes",
                arr.len()
            )));
        }
    }
    if radii_x.iter().chain(radii_tau).any(|r| *r < 0.0) {
        return Err(invalid("radii must be nonnegative"));
    }
    let w = space.weights();
    let mut i1 = 0.0;
    let mut i2 = 0.0;
    let mut i3 = 0.0;
    let mut diag = 0.0;
    for i in 0..n {
        let ab = radii_x[i] * radii_tau[i] * w[i];
        i1 += ab * (theta[i] + phi[i]).cos();
        i2 += ab * (theta[i] + phi[i]).sin();
        i3 += ab * (theta[i] - phi[i]).sin();
        diag += ab * (theta[i] - phi[i]).cos();
    }
    let mass = space.total_mass();
    let residuals = [i1.abs(), i2.abs(), i3.abs()];
    let bound = 0.5 * diag;

    let pair = assemble_r2_pair(radii_x, radii_tau, theta, phi, space)?;
    let (_, analyze_report) = analyze(&pair, tol)?;

    let tight = residuals.iter().all(|r| *r <= tol * mass) && bound > tol;
    Ok(R2DesignReport {
        tight,
        residuals,
        bound: tight.then_some(bound),
        analyze_report,
    })
}

/// The R^2 pair described by per-node radii and angles.
pub fn assemble_r2_pair(
    radii_x: &[f64],
    radii_tau: &[f64],
    theta: &[f64],
    phi: &[f64],
    space: &MeasureSpace,
) -> Result<VectorFramePair> {
    let n = space.len();
    let x = CMat::from_fn(2, n, |i, j| {
        c(radii_x[j]
            * if i == 0 {
                theta[j].cos()
            } else {
                theta[j].sin()
            })
    });
    let tau = CMat::from_fn(2, n, |i, j| {
        c(radii_tau[j] * if i == 0 { phi[j].cos() } else { phi[j].sin() })
    });
    VectorFramePair::new(space.clone(), Field::Real, x, tau)
}

/// Finite-dimension criterion: on finite data the pairing integral is always
/// finite; reports it together with the proof's bound `dim <= (1/a) int <x, tau>`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteDimReport {
    pub pairing_integral: f64,
    pub lower_bound: f64,
    pub dimension_bound: f64,
    pub dimension: usize,
    pub bound_holds: bool,
}

pub fn finite_dim_criterion(pair: &VectorFramePair, tol: f64) -> Result<FiniteDimReport> {
    let (_, report) = analyze(pair, tol)?;
    if !report.classification.is_frame() {
        return Err(state("finite-dimension criterion needs a frame"));
    }
    let ip = pairing_integral(pair).re;
    let bound = ip / report.lower_bound;
    Ok(FiniteDimReport {
        pairing_integral: ip,
        lower_bound: report.lower_bound,
        dimension_bound: bound,
        dimension: pair.dim(),
        bound_holds: (pair.dim() as f64) <= bound + tol * bound.abs().max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{circle_family, diag_pair, orthonormal_basis_pair};
    use crate::frame::{parsevalize, ParsevalMode, VectorFramePair};
    use crate::linalg::identity;
    use crate::sampling::{random_matrix, rng};
    use std::f64::consts::{PI, TAU};

    const TOL: f64 = 1e-8;

    #[test]
    fn circle_spectral_summary() {
        let pair = circle_family(12).unwrap();
        let s = spectral_summary(&pair, TOL).unwrap();
        assert!((s.eigenvalues[0] - PI).abs() < 1e-12);
        assert!((s.eigenvalues[1] - PI).abs() < 1e-12);
        assert!((s.trace_s - TAU).abs() < 1e-12);
        assert!((s.condition_number - 1.0).abs() < 1e-12);
        assert!((s.trace_s2 - 2.0 * PI * PI).abs() < 1e-10);
        assert!(s.trace_identity_residual < 1e-12);
        assert!(s.trace_s2_identity_residual < 1e-10);
        assert!(s.double_integral_agreement < 1e-10);
    }

    #[test]
    fn diag_pair_spectral_summary() {
        let pair = diag_pair().unwrap();
        let s = spectral_summary(&pair, TOL).unwrap();
        assert!((s.eigenvalues[0] - 2.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!((s.condition_number - 2.0).abs() < 1e-14);
        assert!((s.trace_s - 3.0).abs() < 1e-14);
    }

    #[test]
    fn parseval_trace_equals_dimension() {
        for m in [2usize, 3, 5] {
            let pair = orthonormal_basis_pair(m).unwrap();
            let s = spectral_summary(&pair, TOL).unwrap();
            assert!((s.trace_s - m as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn circle_tight_identities() {
        let pair = circle_family(16).unwrap();
        let t = tight_identities(&pair, TOL).unwrap();
        assert!((t.bound - PI).abs() < 1e-12, "b = (1/2)(2 pi)");
        assert!(t.bound_identity_residual < 1e-12);
        assert!(t.variation_residual_v1 < 1e-10);
        assert!(t.variation_residual_v2 < 1e-10);
        assert!(t.reconstruction_residual < 1e-10);
    }

    #[test]
    fn parseval_variation_reduces_to_dimension() {
        let pair = orthonormal_basis_pair(3).unwrap();
        let t = tight_identities(&pair, TOL).unwrap();
        assert!((t.bound - 1.0).abs() < 1e-14);
        assert!(t.variation_residual_v1 < 1e-12);
    }

    #[test]
    fn non_tight_pair_is_rejected_with_visible_variation_gap() {
        let pair = diag_pair().unwrap();
        assert!(tight_identities(&pair, TOL).is_err());
        // Negative control on the variation identity itself: eigenvalues
        // {1, 2} give trace(S^2) = 5 against (1/m) trace(S)^2 = 4.5.
        let s = spectral_summary(&pair, TOL).unwrap();
        let target = s.trace_s * s.trace_s / 2.0;
        assert!((s.trace_s2 - target).abs() / target > 0.01);
    }

    #[test]
    fn trace_formula_identity_and_zero() {
        let pair = orthonormal_basis_pair(3).unwrap();
        let report = trace_formula(&pair, &identity(3), TOL).unwrap();
        assert!((report.integral_x_tau.0 - 3.0).abs() < 1e-13);
        assert!((report.integral_tau_x.0 - 3.0).abs() < 1e-13);
        let zero = CMat::zeros(3, 3);
        let report = trace_formula(&pair, &zero, TOL).unwrap();
        assert!(report.integral_x_tau.0.abs() < 1e-15);
    }

    #[test]
    fn trace_formula_on_parsevalized_circle() {
        let pair = parsevalize(&circle_family(10).unwrap(), ParsevalMode::Symmetric, TOL).unwrap();
        for seed in 0..20u64 {
            let t = random_matrix(&mut rng(seed), 2, 2, Field::Complex);
            let report = trace_formula(&pair, &t, TOL).unwrap();
            assert!(report.residual_x_tau <= 1e-10, "seed {seed}");
            assert!(report.residual_tau_x <= 1e-10);
        }
    }

    #[test]
    fn trace_formula_needs_parseval() {
        let pair = circle_family(10).unwrap();
        assert!(trace_formula(&pair, &identity(2), TOL).is_err());
    }

    #[test]
    fn spanning_holds_for_circle() {
        let pair = circle_family(4).unwrap();
        assert!(spanning_characterization(&pair, 1e-10).unwrap());
    }

    #[test]
    fn spanning_fails_with_zero_partner() {
        // x1 = tau1 = e1, x2 = e2, tau2 = 0: the partition putting node 2 on
        // the tau side selects {e1, 0}.
        let space = MeasureSpace::counting(2).unwrap();
        let mut x = CMat::zeros(2, 2);
        x[(0, 0)] = c(1.0);
        x[(1, 1)] = c(1.0);
        let mut tau = CMat::zeros(2, 2);
        tau[(0, 0)] = c(1.0);
        let pair = VectorFramePair::new(space, Field::Real, x, tau).unwrap();
        assert!(!spanning_characterization(&pair, 1e-10).unwrap());
    }

    #[test]
    fn spanning_trivial_line() {
        let pair = orthonormal_basis_pair(1).unwrap();
        assert!(spanning_characterization(&pair, 1e-10).unwrap());
    }

    #[test]
    fn spanning_rejects_nonparallel_pairs() {
        let space = MeasureSpace::counting(1).unwrap();
        let x = CMat::from_fn(2, 1, |i, _| c(if i == 0 { 1.0 } else { 0.0 }));
        let tau = CMat::from_fn(2, 1, |i, _| c(if i == 1 { 1.0 } else { 0.0 }));
        let pair = VectorFramePair::new(space, Field::Real, x, tau).unwrap();
        assert!(matches!(
            spanning_characterization(&pair, 1e-10),
            Err(FrameError::InvalidArgument(_))
        ));
    }

    #[test]
    fn spanning_caps_enumeration() {
        let pair = circle_family(21).unwrap();
        assert!(matches!(
            spanning_characterization(&pair, 1e-10),
            Err(FrameError::Capacity(_))
        ));
    }

    #[test]
    fn subset_removal_on_circle() {
        let pair = circle_family(8).unwrap();
        let (restricted, report) = subset_removal(&pair, &[3], TOL).unwrap();
        assert_eq!(restricted.node_count(), 7);
        assert!((report.removed_mass - TAU / 8.0).abs() < 1e-14);
        assert!((report.guaranteed_lower_bound - (PI - TAU / 8.0)).abs() < 1e-12);
        // Eigen oracle: S restricted = pi I - w x x^T has eigenvalues
        // {pi - 2 pi / 8, pi}.
        assert!((report.report.lower_bound - (PI - TAU / 8.0)).abs() < 1e-12);
        assert!(report.report.lower_bound >= report.guaranteed_lower_bound - 1e-12);
    }

    #[test]
    fn subset_removal_empty_set_is_identity() {
        let pair = circle_family(6).unwrap();
        let (restricted, report) = subset_removal(&pair, &[], TOL).unwrap();
        assert_eq!(restricted.node_count(), 6);
        assert_eq!(report.removed_mass, 0.0);
    }

    #[test]
    fn subset_removal_gate() {
        let pair = circle_family(8).unwrap();
        let all: Vec<usize> = (0..8).collect();
        assert!(matches!(
            subset_removal(&pair, &all, TOL),
            Err(FrameError::Gate(_)) | Err(FrameError::InvalidArgument(_))
        ));
    }

    #[test]
    fn real_to_complex_preserves_classification() {
        let pair = circle_family(9).unwrap();
        let complexified = real_to_complex(&pair, TOL).unwrap();
        assert_eq!(complexified.field(), Field::Complex);
        let (_, before) = crate::frame::analyze(&pair, TOL).unwrap();
        let (_, after) = crate::frame::analyze(&complexified, TOL).unwrap();
        assert_eq!(before.classification, after.classification);
        assert_eq!(before.lower_bound, after.lower_bound);
        assert_eq!(before.upper_bound, after.upper_bound);
        assert_eq!(before.is_tight, after.is_tight);
        assert_eq!(before.is_parseval, after.is_parseval);
    }

    #[test]
    fn real_to_complex_rejects_asymmetric_pairs() {
        let space = MeasureSpace::counting(2).unwrap();
        let mut x = CMat::zeros(2, 2);
        x[(0, 0)] = c(1.0);
        x[(1, 1)] = c(1.0);
        let mut tau = CMat::zeros(2, 2);
        tau[(1, 0)] = c(1.0); // tau_1 = e2 against x_1 = e1, tau_2 = 0
        let pair = VectorFramePair::new(space, Field::Real, x, tau).unwrap();
        assert!(matches!(
            real_to_complex(&pair, TOL),
            Err(FrameError::Gate(_))
        ));
    }

    #[test]
    fn complex_to_real_on_real_data_doubles_with_zero_columns() {
        let pair = real_to_complex(&circle_family(5).unwrap(), TOL).unwrap();
        let real = complex_to_real(&pair, TOL).unwrap();
        assert_eq!(real.field(), Field::Real);
        assert_eq!(real.node_count(), 10);
        let (_, report) = crate::frame::analyze(&real, TOL).unwrap();
        assert!(report.is_tight);
        assert!((report.tight_bound.unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn complex_phase_line_splits_to_tight_real_pair() {
        // x_i = e^(i alpha_i) over C^1 on circle nodes: tight with bound 2 pi.
        let space = MeasureSpace::circle(8).unwrap();
        let angles = space.positions().unwrap().to_vec();
        let x = CMat::from_fn(1, 8, |_, j| Scalar::new(angles[j].cos(), angles[j].sin()));
        let pair = VectorFramePair::self_dual(space, Field::Complex, x).unwrap();
        let (_, before) = crate::frame::analyze(&pair, TOL).unwrap();
        assert!(before.is_tight);
        let real = complex_to_real(&pair, TOL).unwrap();
        let (_, after) = crate::frame::analyze(&real, TOL).unwrap();
        assert!(after.is_tight);
        assert!((after.tight_bound.unwrap() - before.tight_bound.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn r2_design_full_circle_is_tight() {
        let space = MeasureSpace::uniform_interval(0.0, TAU, 64).unwrap();
        let angles: Vec<f64> = space.positions().unwrap().to_vec();
        let ones = vec![1.0; 64];
        let report = r2_tight_design(&ones, &ones, &angles, &angles, &space, 1e-10).unwrap();
        assert!(report.tight);
        assert!((report.bound.unwrap() - PI).abs() < 1e-12);
        assert!(report.analyze_report.is_tight);
        for r in report.residuals {
            assert!(r <= 1e-10 * space.total_mass());
        }
    }

    #[test]
    fn r2_design_quarter_interval_fails_on_sine_integral() {
        let space = MeasureSpace::uniform_interval(0.0, PI / 2.0, 200).unwrap();
        let angles: Vec<f64> = space.positions().unwrap().to_vec();
        let ones = vec![1.0; 200];
        let report = r2_tight_design(&ones, &ones, &angles, &angles, &space, 1e-10).unwrap();
        assert!(!report.tight);
        // Oracle: int_0^(pi/2) sin(2a) da = [-cos(2a)/2] = 1 (midpoint rule
        // converges quadratically).
        assert!((report.residuals[1] - 1.0).abs() < 1e-3);
        assert!(report.residuals[0] < 1e-12);
        assert!(!report.analyze_report.is_tight);
    }

    #[test]
    fn r2_design_zero_radius_is_degenerate() {
        let space = MeasureSpace::uniform_interval(0.0, TAU, 8).unwrap();
        let angles: Vec<f64> = space.positions().unwrap().to_vec();
        let zeros = vec![0.0; 8];
        let ones = vec![1.0; 8];
        let report = r2_tight_design(&zeros, &ones, &angles, &angles, &space, 1e-10).unwrap();
        assert!(!report.tight, "S = 0 is not a tight frame");
        assert!(!report.analyze_report.classification.is_frame());
    }

    #[test]
    fn r2_design_rejects_negative_radii() {
        let space = MeasureSpace::uniform_interval(0.0, TAU, 4).unwrap();
        let angles: Vec<f64> = space.positions().unwrap().to_vec();
        assert!(r2_tight_design(
            &[-1.0, 1.0, 1.0, 1.0],
            &[1.0; 4],
            &angles,
            &angles,
            &space,
            1e-10
        )
        .is_err());
    }

    #[test]
    fn finite_dim_bound_for_circle_is_sharp() {
        let pair = circle_family(10).unwrap();
        let report = finite_dim_criterion(&pair, TOL).unwrap();
        assert!((report.dimension_bound - 2.0).abs() < 1e-12);
        assert!(report.bound_holds);
    }

    #[test]
    fn finite_dim_bound_parseval_equals_dimension() {
        let pair = orthonormal_basis_pair(4).unwrap();
        let report = finite_dim_criterion(&pair, TOL).unwrap();
        assert!((report.dimension_bound - 4.0).abs() < 1e-12);
    }

    #[test]
    fn finite_dim_bound_diag_pair() {
        let pair = diag_pair().unwrap();
        let report = finite_dim_criterion(&pair, TOL).unwrap();
        assert!((report.dimension_bound - 3.0).abs() < 1e-12);
        assert!(report.bound_holds);
    }
}
