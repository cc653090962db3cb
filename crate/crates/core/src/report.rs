//! Classification report shared by the vector, operator-valued and weak
//! analysis paths.

use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_part, hermitian_residual, spectral_norm, CMat, HermitianSpectrum};

/// Scalar field a family lives over. Data is stored as complex either way;
/// `Real` additionally asserts vanishing imaginary parts and enables the
/// real-only transport theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Frame,
    BesselOnly,
    WeakFrame,
    NotFrame,
}

impl Classification {
    pub fn is_frame(self) -> bool {
        matches!(self, Classification::Frame | Classification::WeakFrame)
    }
}

/// Everything `analyze` can say about a family in one place. Bounds are the
/// extreme eigenvalues of the Hermitian part of the frame operator and are
/// reported even when the classification fails, for diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub classification: Classification,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `||theta_x||^2`, the optimal Bessel constant of the first family.
    pub bessel_x: f64,
    /// `||theta_tau||^2` for the second family.
    pub bessel_tau: f64,
    pub is_parseval: bool,
    pub is_tight: bool,
    pub tight_bound: Option<f64>,
    pub is_riesz: bool,
    /// `||S - S^H||` in spectral norm.
    pub symmetry_residual: f64,
    /// Tolerance the verdicts were taken at; reports are self-describing.
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Classification machinery: spectral data of the frame operator plus the
/// report skeleton (`is_riesz` is filled in by the caller once the cross
/// projection exists).
pub(crate) struct Classified {
    pub report: FrameReport,
    pub herm: HermitianSpectrum,
}

pub(crate) fn classify(
    s: &CMat,
    bessel_x: f64,
    bessel_tau: f64,
    tol: f64,
    weak: bool,
) -> Classified {
    let s_norm = spectral_norm(s);
    let sym = hermitian_residual(s);
    let herm = HermitianSpectrum::of(&hermitian_part(s));
    let (lo, hi) = (herm.min(), herm.max());

    let sym_ok = sym <= tol * s_norm.max(1e-300);
    let invertible = lo > tol && lo > tol * hi;
    let n = s.nrows();
    let parseval = n > 0 && {
        let mut d = s.clone();
        for i in 0..n {
            d[(i, i)] -= crate::linalg::c(1.0);
        }
        spectral_norm(&d) <= tol
    };

    let classification = if n == 0 {
        Classification::NotFrame
    } else if sym_ok && invertible {
        if weak {
            Classification::WeakFrame
        } else {
            Classification::Frame
        }
    } else if sym_ok && lo >= -tol * s_norm {
        Classification::BesselOnly
    } else {
        Classification::NotFrame
    };

    let is_frame = classification.is_frame();
    let tight = is_frame && (hi - lo) <= tol * hi;
    let tight_bound = if parseval {
        Some(1.0)
    } else if tight {
        Some(0.5 * (lo + hi))
    } else {
        None
    };

    let note = weak.then(|| {
        "weak mode: on a finite node set Bessel constants are always finite, so weak and strong \
         classification coincide; Bessel constants are informational only"
            .to_string()
    });

    let _ = s_norm;
    Classified {
        report: FrameReport {
            classification,
            lower_bound: lo,
            upper_bound: hi,
            bessel_x,
            bessel_tau,
            is_parseval: parseval && is_frame,
            is_tight: tight,
            tight_bound,
            is_riesz: false,
            symmetry_residual: sym,
            tol,
            note,
        },
        herm,
    }
}
