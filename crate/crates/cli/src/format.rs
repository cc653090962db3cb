//! The frame-family file format: a single JSON document carrying the
//! measure space, the scalar field, named vector/operator families and
//! optional group tables. Complex entries are two-element `[re, im]` arrays;
//! plain numbers are real. Matrices are dense column lists.

use std::collections::BTreeMap;

use serde::Deserialize;

use contframe_core::group::FiniteGroup;
use contframe_core::linalg::Scalar;
use contframe_core::{CMat, Field, MeasureSpace, OperatorFramePair, VectorFramePair};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpecFile {
    pub schema_version: String,
    pub measure: MeasureSpec,
    pub field: Field,
    #[serde(default)]
    pub families: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MeasureSpec {
    /// `"counting:n"`, `"interval:a:b:n"` or `"circle:n"`.
    Constructor(String),
    Inline {
        node_ids: Vec<String>,
        weights: Vec<f64>,
        #[serde(default)]
        description: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Real(f64),
    Complex([f64; 2]),
}

impl ScalarRepr {
    fn to_scalar(&self) -> Scalar {
        match self {
            ScalarRepr::Real(re) => Scalar::new(*re, 0.0),
            ScalarRepr::Complex([re, im]) => Scalar::new(*re, *im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Columns `x[i]` (length `dim`), one per node; `tau` defaults to `x`.
    Vector {
        dim: usize,
        x: Vec<Vec<ScalarRepr>>,
        #[serde(default)]
        tau: Option<Vec<Vec<ScalarRepr>>>,
    },
    /// One `dim_h0 x dim_h` matrix per node, given as row lists; `psi`
    /// defaults to `a`.
    Operator {
        dim_h: usize,
        dim_h0: usize,
        a: Vec<Vec<Vec<ScalarRepr>>>,
        #[serde(default)]
        psi: Option<Vec<Vec<Vec<ScalarRepr>>>>,
    },
    /// Per-node radii and angles for the R^2 tight-design criterion.
    R2Profile {
        a: Vec<f64>,
        b: Vec<f64>,
        theta: Vec<f64>,
        phi: Vec<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `"cyclic:n"` or `"dihedral:n"`.
    Constructor(String),
    Table {
        mul: Vec<Vec<usize>>,
    },
}

pub fn load(path: &str) -> Result<FrameSpecFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    let file: FrameSpecFile =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "{path}: unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
            file.schema_version
        )));
    }
    Ok(file)
}

impl FrameSpecFile {
    pub fn measure(&self) -> Result<MeasureSpace, CliError> {
        match &self.measure {
            MeasureSpec::Inline {
                node_ids,
                weights,
                description,
            } => MeasureSpace::new(node_ids.clone(), weights.clone(), description.clone())
                .map_err(CliError::from),
            MeasureSpec::Constructor(text) => {
                let parts: Vec<&str> = text.split(':').collect();
                let parse_n = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| CliError::Input(format!("bad node count {s:?} in {text:?}")))
                };
                let parse_f = |s: &str| {
                    s.parse::<f64>()
                        .map_err(|_| CliError::Input(format!("bad number {s:?} in {text:?}")))
                };
                match parts.as_slice() {
                    ["counting", n] => MeasureSpace::counting(parse_n(n)?).map_err(CliError::from),
                    ["circle", n] => MeasureSpace::circle(parse_n(n)?).map_err(CliError::from),
                    ["interval", a, b, n] => {
                        MeasureSpace::uniform_interval(parse_f(a)?, parse_f(b)?, parse_n(n)?)
                            .map_err(CliError::from)
                    }
                    _ => Err(CliError::Input(format!(
                        "unknown measure constructor {text:?} (use counting:n, circle:n or \
                         interval:a:b:n)"
                    ))),
                }
            }
        }
    }

    /// Pick a family by name, or the only one when unnamed.
    pub fn family<'a>(&'a self, name: Option<&str>) -> Result<(&'a str, &'a FamilySpec), CliError> {
        match name {
            Some(n) => self
                .families
                .get_key_value(n)
                .map(|(k, v)| (k.as_str(), v))
                .ok_or_else(|| CliError::Input(format!("no family named {n:?} in file"))),
            None => {
                if self.families.len() == 1 {
                    let (k, v) = self.families.iter().next().unwrap();
                    Ok((k.as_str(), v))
                } else {
                    Err(CliError::Input(format!(
                        "file has {} families; pick one with --family",
                        self.families.len()
                    )))
                }
            }
        }
    }

    pub fn vector_pair(&self, name: Option<&str>) -> Result<VectorFramePair, CliError> {
        let space = self.measure()?;
        let (fam_name, spec) = self.family(name)?;
        match spec {
            FamilySpec::Vector { dim, x, tau } => {
                let xm = columns_to_matrix(*dim, x, fam_name)?;
                let tm = match tau {
                    Some(t) => columns_to_matrix(*dim, t, fam_name)?,
                    None => xm.clone(),
                };
                VectorFramePair::new(space, self.field, xm, tm).map_err(CliError::from)
            }
            _ => Err(CliError::Input(format!(
                "family {fam_name:?} is not a vector family"
            ))),
        }
    }

    pub fn operator_pair(&self, name: Option<&str>) -> Result<OperatorFramePair, CliError> {
        let space = self.measure()?;
        let (fam_name, spec) = self.family(name)?;
        match spec {
            FamilySpec::Operator {
                dim_h,
                dim_h0,
                a,
                psi,
            } => {
                let am = matrices(*dim_h0, *dim_h, a, fam_name)?;
                let pm = match psi {
                    Some(p) => matrices(*dim_h0, *dim_h, p, fam_name)?,
                    None => am.clone(),
                };
                OperatorFramePair::new(space, self.field, am, pm).map_err(CliError::from)
            }
            FamilySpec::Vector { .. } => {
                // Vector families are usable wherever operators are expected.
                Ok(contframe_core::ovf::vector_to_ovf(
                    &self.vector_pair(Some(fam_name))?,
                ))
            }
            _ => Err(CliError::Input(format!(
                "family {fam_name:?} is not an operator family"
            ))),
        }
    }

    pub fn r2_profile(
        &self,
        name: Option<&str>,
    ) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>), CliError> {
        let (fam_name, spec) = self.family(name)?;
        match spec {
            FamilySpec::R2Profile { a, b, theta, phi } => {
                Ok((a.clone(), b.clone(), theta.clone(), phi.clone()))
            }
            _ => Err(CliError::Input(format!(
                "family {fam_name:?} is not an r2_profile family"
            ))),
        }
    }

    pub fn group(&self, name: &str) -> Result<FiniteGroup, CliError> {
        let spec = self
            .groups
            .get(name)
            .ok_or_else(|| CliError::Input(format!("no group named {name:?} in file")))?;
        match spec {
            GroupSpec::Table { mul } => {
                FiniteGroup::from_table(mul.clone()).map_err(CliError::from)
            }
            GroupSpec::Constructor(text) => {
                let parts: Vec<&str> = text.split(':').collect();
                match parts.as_slice() {
                    ["cyclic", n] => FiniteGroup::cyclic(
                        n.parse()
                            .map_err(|_| CliError::Input(format!("bad order in {text:?}")))?,
                    )
                    .map_err(CliError::from),
                    ["dihedral", n] => FiniteGroup::dihedral(
                        n.parse()
                            .map_err(|_| CliError::Input(format!("bad order in {text:?}")))?,
                    )
                    .map_err(CliError::from),
                    _ => Err(CliError::Input(format!(
                        "unknown group constructor {text:?} (use cyclic:n or dihedral:n)"
                    ))),
                }
            }
        }
    }
}

fn columns_to_matrix(dim: usize, cols: &[Vec<ScalarRepr>], what: &str) -> Result<CMat, CliError> {
    for (j, col) in cols.iter().enumerate() {
        if col.len() != dim {
            return Err(CliError::Input(format!(
                "family {what:?}: column {j} has {} entries, expected {dim}",
                col.len()
            )));
        }
    }
    Ok(CMat::from_fn(dim, cols.len(), |i, j| {
        cols[j][i].to_scalar()
    }))
}

fn matrices(
    rows: usize,
    cols: usize,
    mats: &[Vec<Vec<ScalarRepr>>],
    what: &str,
) -> Result<Vec<CMat>, CliError> {
    mats.iter()
        .enumerate()
        .map(|(k, m)| {
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(CliError::Input(format!(
                    "family {what:?}: operator {k} is not {rows} x {cols}"
                )));
            }
            Ok(CMat::from_fn(rows, cols, |i, j| m[i][j].to_scalar()))
        })
        .collect()
}

/// A dense square matrix file for `findim trace`.
#[derive(Debug, Deserialize)]
pub struct MatrixFile {
    pub matrix: Vec<Vec<ScalarRepr>>,
}

pub fn load_matrix(path: &str) -> Result<CMat, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    let file: MatrixFile =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    let rows = file.matrix.len();
    if rows == 0 || file.matrix.iter().any(|r| r.len() != rows) {
        return Err(CliError::Input(format!("{path}: matrix must be square")));
    }
    Ok(CMat::from_fn(rows, rows, |i, j| {
        file.matrix[i][j].to_scalar()
    }))
}
