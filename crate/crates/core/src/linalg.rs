//! Dense complex linear algebra helpers shared by all frame modules.
//!
//! Everything downstream works in one convention: families are stored as
//! complex matrices (real inputs carry zero imaginary parts), and the
//! weighted L^2 inner product `<f,g> = sum_i w_i f_i conj(g_i)` is realized
//! by scaling with the quadrature weights explicitly. Operator norms on the
//! weighted space are spectral norms after symmetric `sqrt(w)` scaling.

use nalgebra::{Complex, DMatrix, DVector};

pub type Scalar = Complex<f64>;
pub type CMat = DMatrix<Scalar>;
pub type CVec = DVector<Scalar>;

pub fn c(re: f64) -> Scalar {
    Complex::new(re, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending with
/// matching orthonormal eigenvector columns.
///
/// Cyclic Jacobi with complex rotations. The matrices this crate
/// diagonalizes are small (frame operators, Gram blocks), and Jacobi keeps
/// the reconstruction residual at machine precision, which the certified
/// residual budgets downstream rely on; it is also indifferent to the
/// degenerate spectra tight frames produce.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let mut a = hermitian_part(m);
    let mut v = identity(n);
    let fro = a.norm().max(f64::MIN_POSITIVE);
    let stop = f64::EPSILON * fro;

    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                let r = beta.norm();
                if r <= stop * 1e-3 {
                    continue;
                }
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * r);
                // Small-magnitude root of t^2 - 2 tau t - 1 = 0.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sigma = beta * Complex::new(t * cos / r, 0.0); // t c e^{i phi}

                // A <- U^H A U with U = [[c, -sigma], [conj(sigma), c]]
                // acting on coordinates p, q.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * cos + aiq * sigma.conj();
                    a[(i, q)] = aiq * cos - aip * sigma;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * cos + aqj * sigma;
                    a[(q, j)] = aqj * cos - apj * sigma.conj();
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cos + viq * sigma.conj();
                    v[(i, q)] = viq * cos - vip * sigma;
                }
                // Re-symmetrize the touched pair against rounding drift.
                a[(p, q)] = Complex::new(0.0, 0.0);
                a[(q, p)] = Complex::new(0.0, 0.0);
                a[(p, p)] = Complex::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &v.column(i));
    }
    (vals, vecs)
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Smallest singular value.
pub fn min_singular_value(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().min()
}

/// `||M - M^H||` in spectral norm.
pub fn hermitian_residual(m: &CMat) -> f64 {
    spectral_norm(&(m - m.adjoint()))
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Moore-Penrose pseudo-inverse via SVD.
pub fn pinv(m: &CMat, eps: f64) -> CMat {
    m.clone()
        .svd(true, true)
        .pseudo_inverse(eps)
        .expect("svd requested with u and v_t")
}

/// Scale column `j` by `w[j]`.
pub fn scale_cols(m: &CMat, w: &[f64]) -> CMat {
    assert_eq!(m.ncols(), w.len());
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * w[j])
}

/// Scale row `i` by `w[i]`.
pub fn scale_rows(m: &CMat, w: &[f64]) -> CMat {
    assert_eq!(m.nrows(), w.len());
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * w[i])
}

/// `A W B^H` for `a`, `b` with one column per node: the weighted pairing
/// `sum_i w_i a_i b_i^H` underlying every frame-operator style product.
pub fn pairing(a: &CMat, w: &[f64], b: &CMat) -> CMat {
    scale_cols(a, w) * b.adjoint()
}

/// Operator norm of `m` as a map between weighted spaces:
/// `||W_out^(1/2) m W_in^(-1/2)||_2`. `None` means unit weights.
pub fn weighted_op_norm(m: &CMat, w_out: Option<&[f64]>, w_in: Option<&[f64]>) -> f64 {
    let mut t = m.clone();
    if let Some(w) = w_out {
        let sq: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
        t = scale_rows(&t, &sq);
    }
    if let Some(w) = w_in {
        let isq: Vec<f64> = w.iter().map(|x| 1.0 / x.sqrt()).collect();
        t = scale_cols(&t, &isq);
    }
    spectral_norm(&t)
}

/// Repeat each weight `d` times, matching a stacked block layout.
pub fn expand_weights(w: &[f64], d: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(w.len() * d);
    for &wi in w {
        for _ in 0..d {
            out.push(wi);
        }
    }
    out
}

/// Spectrum of a Hermitian positive matrix together with functional calculus.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    pub evals: Vec<f64>,
    pub evecs: CMat,
}

impl HermitianSpectrum {
    pub fn of(m: &CMat) -> Self {
        let (evals, evecs) = hermitian_eigen(m);
        Self { evals, evecs }
    }

    pub fn min(&self) -> f64 {
        self.evals.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.evals.last().copied().unwrap_or(0.0)
    }

    /// `V diag(lambda^p) V^H`. Requires a strictly positive spectrum for
    /// negative or fractional powers.
    pub fn power(&self, p: f64) -> CMat {
        let n = self.evals.len();
        let mut d = CMat::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = c(self.evals[i].powf(p));
        }
        &self.evecs * d * self.evecs.adjoint()
    }
}

/// Largest eigenvalue of the Hermitian part, used for Bessel constants.
pub fn max_eig_hermitian(m: &CMat) -> f64 {
    HermitianSpectrum::of(&hermitian_part(m)).max()
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// True when every entry is finite.
pub fn all_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest imaginary magnitude, used to validate "real" data.
pub fn max_imag(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.im.abs()))
}
