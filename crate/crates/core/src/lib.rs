//! Numerical calculus of continuous and operator-valued frames on
//! discretized measure spaces: frame-operator construction and
//! classification, canonical duality, Parsevalization, similarity and
//! orthogonality detection, group-orbit reconstruction, perturbation
//! certificates, and finite-dimensional spectral identities.
//!
//! All integrals are finite quadrature sums against a [`MeasureSpace`];
//! the weighted L^2 convention `<f,g> = sum_i w_i f_i conj(g_i)` is fixed
//! across the whole crate.
//!
//! ```
//! use contframe_core::{analyze, families, canonical_dual};
//!
//! // Unit vectors at 16 equally spaced angles, weights 2*pi/16: a tight
//! // frame for R^2 with both bounds exactly pi.
//! let pair = families::circle_family(16).unwrap();
//! let (_, report) = analyze(&pair, 1e-8).unwrap();
//! assert!(report.is_tight);
//! assert!((report.lower_bound - std::f64::consts::PI).abs() < 1e-12);
//!
//! // The canonical dual inverts the frame operator.
//! let dual = canonical_dual(&pair, 1e-8).unwrap();
//! let (_, dual_report) = analyze(&dual, 1e-8).unwrap();
//! assert!((dual_report.upper_bound - 1.0 / std::f64::consts::PI).abs() < 1e-12);
//! ```

pub mod error;
pub mod families;
pub mod findim;
pub mod frame;
pub mod group;
pub mod linalg;
pub mod measure;
pub mod ovf;
pub mod perturb;
pub mod report;
pub mod sampling;
pub mod weak;

pub use error::{FrameError, Result};
pub use frame::{
    analyze, canonical_dual, direct_sum, dual_residual, is_riesz, left_inverses, pair_relation,
    parseval_combine, parsevalize, similarity_detect, AnalysisBundle, DualResidualReport,
    ParsevalMode, Relation, RelationReport, VectorFramePair, VectorSimilarity,
};
pub use linalg::{CMat, CVec, Scalar};
pub use measure::MeasureSpace;
pub use ovf::{OperatorFramePair, OvfBundle, OvfSimilarity};
pub use report::{Classification, Field, FrameReport};

/// Default classification tolerance, relative to the frame-operator norm.
pub const DEFAULT_TOL: f64 = 1e-8;
