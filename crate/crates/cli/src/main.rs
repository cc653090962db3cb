//! `contframe`: file-driven analysis of continuous (operator-valued) frames
//! on discretized measure spaces.
//!
//! Exit codes: 0 the requested quantity was computed, 1 malformed input,
//! 2 a hypothesis or gate failed (non-frames where frames are required,
//! perturbation certificates that do not certify, refused reconstructions).

mod format;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use contframe_core::{analyze, findim, frame, group, ovf, perturb, weak, FrameError};
use output::{matrix_value, object, operator_pair_value, render_text, vector_pair_value};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit 1.
    Input(String),
    /// Hypothesis or gate failure on valid input: exit 2.
    Gate(String),
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        match e {
            FrameError::InvalidArgument(m) => CliError::Input(m),
            FrameError::Capacity(m) => CliError::Input(m),
            FrameError::Gate(m) => CliError::Gate(m),
            FrameError::State(m) => CliError::Gate(m),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "contframe",
    about = "Continuous and operator-valued frame analysis on finite quadrature data",
    version
)]
struct Cli {
    /// Classification tolerance (default: CONTFRAME_TOL or 1e-8).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit only the JSON report.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit only the aligned-text table.
    #[arg(long, global = true)]
    text: bool,
    /// Classify in weak mode (frame-operator conditions only).
    #[arg(long, global = true)]
    weak: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArg {
    /// Family name inside the file (defaults to the only family).
    #[arg(long)]
    family: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Left,
    Symmetric,
    Right,
}

impl From<ModeArg> for frame::ParsevalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Left => frame::ParsevalMode::Left,
            ModeArg::Symmetric => frame::ParsevalMode::Symmetric,
            ModeArg::Right => frame::ParsevalMode::Right,
        }
    }
}

impl From<ModeArg> for group::NormalizationVariant {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Left => group::NormalizationVariant::Left,
            ModeArg::Symmetric => group::NormalizationVariant::Symmetric,
            ModeArg::Right => group::NormalizationVariant::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    T1,
    T2,
    Quad,
    Cr,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a family: frame operator, bounds, flags.
    Analyze {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Canonical dual of a frame.
    Dual {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Rescale a frame into a Parseval frame.
    Parsevalize {
        file: String,
        #[arg(long, value_enum, default_value = "symmetric")]
        mode: ModeArg,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Duality/orthogonality relation between two families.
    Relate {
        file_p: String,
        file_q: String,
        #[arg(long)]
        family_p: Option<String>,
        #[arg(long)]
        family_q: Option<String>,
    },
    /// Similarity detection with closed-form witnesses.
    Similar {
        file_p: String,
        file_q: String,
        #[arg(long)]
        family_p: Option<String>,
        #[arg(long)]
        family_q: Option<String>,
    },
    /// Riesz test (cross projection equals the identity).
    Riesz {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Reconstruct the unitary representation behind an orbit frame.
    GroupReconstruct {
        file: String,
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        variant: Option<ModeArg>,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Perturbation-stability certificate for a (base, candidate) pair.
    Perturb {
        file_base: String,
        file_cand: String,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        /// Verify the hypothesis by sampling instead of exactly (T1 only;
        /// caps the verdict at certified_sampled).
        #[arg(long)]
        sampled: bool,
        #[arg(long)]
        family_base: Option<String>,
        #[arg(long)]
        family_cand: Option<String>,
    },
    /// Finite-dimensional identities and transports.
    Findim {
        #[command(subcommand)]
        op: FindimOp,
    },
}

#[derive(Subcommand)]
enum FindimOp {
    /// Eigenvalues, traces, condition number and the integral identities.
    Spectral {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Tight-frame identities: optimal bound, variation formula, reconstruction.
    Tight {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Extended trace formula against a matrix file (defaults to identity).
    Trace {
        file: String,
        #[arg(long)]
        matrix: Option<String>,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Exhaustive spanning characterization over all node partitions.
    Span {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Remove nodes and certify the surviving lower frame bound.
    Remove {
        file: String,
        /// Comma-separated node indices.
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<usize>,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// R^2 tight-design criterion for an r2_profile family.
    R2 {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Reinterpret a real frame over the complex field.
    Real2complex {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Split a complex frame into the doubled real family.
    Complex2real {
        file: String,
        #[command(flatten)]
        family: FamilyArg,
    },
}

fn tolerance(cli: &Cli) -> Result<f64, CliError> {
    if let Some(t) = cli.tol {
        if !(t > 0.0) {
            return Err(CliError::Input(format!(
                "tolerance must be positive, got {t}"
            )));
        }
        return Ok(t);
    }
    match std::env::var("CONTFRAME_TOL") {
        Ok(text) => text
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0)
            .ok_or_else(|| CliError::Input(format!("bad CONTFRAME_TOL value {text:?}"))),
        Err(_) => Ok(contframe_core::DEFAULT_TOL),
    }
}

/// Runs a command; the i32 is the exit code for computed-but-negative
/// outcomes (gate failures discovered inside an otherwise valid run).
fn run(cli: &Cli) -> Result<(Value, i32), CliError> {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Analyze { file, family } => {
            let spec = format::load(file)?;
            let (fam_name, fam) = spec.family(family.family.as_deref())?;
            let report = match fam {
                format::FamilySpec::Operator { .. } => {
                    let pair = spec.operator_pair(Some(fam_name))?;
                    if cli.weak {
                        weak::weak_classify_ovf(&pair, tol)?
                    } else {
                        ovf::ovf_analyze(&pair, tol)?.1
                    }
                }
                _ => {
                    let pair = spec.vector_pair(Some(fam_name))?;
                    if cli.weak {
                        weak::weak_classify(&pair, tol)?
                    } else {
                        analyze(&pair, tol)?.1
                    }
                }
            };
            Ok((
                object(vec![
                    ("command", json!("analyze")),
                    ("family", json!(fam_name)),
                    ("report", serde_json::to_value(&report).unwrap()),
                ]),
                0,
            ))
        }
        Command::Dual { file, family } => {
            let spec = format::load(file)?;
            let (fam_name, fam) = spec.family(family.family.as_deref())?;
            let (report, dual_value) = match fam {
                format::FamilySpec::Operator { .. } => {
                    let pair = spec.operator_pair(Some(fam_name))?;
                    let dual = ovf::ovf_canonical_dual(&pair, tol)?;
                    let (_, report) = ovf::ovf_analyze(&dual, tol)?;
                    (report, operator_pair_value(&dual))
                }
                _ => {
                    let pair = spec.vector_pair(Some(fam_name))?;
                    let dual = frame::canonical_dual(&pair, tol)?;
                    let (_, report) = analyze(&dual, tol)?;
                    (report, vector_pair_value(&dual))
                }
            };
            Ok((
                object(vec![
                    ("command", json!("dual")),
                    ("report", serde_json::to_value(&report).unwrap()),
                    ("dual", dual_value),
                ]),
                0,
            ))
        }
        Command::Parsevalize { file, mode, family } => {
            let spec = format::load(file)?;
            let (fam_name, fam) = spec.family(family.family.as_deref())?;
            let (report, result_value) = match fam {
                format::FamilySpec::Operator { .. } => {
                    let pair = spec.operator_pair(Some(fam_name))?;
                    let result = ovf::ovf_parsevalize(&pair, (*mode).into(), tol)?;
                    let (_, report) = ovf::ovf_analyze(&result, tol)?;
                    (report, operator_pair_value(&result))
                }
                _ => {
                    let pair = spec.vector_pair(Some(fam_name))?;
                    let result = frame::parsevalize(&pair, (*mode).into(), tol)?;
                    let (_, report) = analyze(&result, tol)?;
                    (report, vector_pair_value(&result))
                }
            };
            Ok((
                object(vec![
                    ("command", json!("parsevalize")),
                    ("report", serde_json::to_value(&report).unwrap()),
                    ("result", result_value),
                ]),
                0,
            ))
        }
        Command::Relate {
            file_p,
            file_q,
            family_p,
            family_q,
        } => {
            let p = format::load(file_p)?.vector_pair(family_p.as_deref())?;
            let q = format::load(file_q)?.vector_pair(family_q.as_deref())?;
            let report = if cli.weak {
                weak::weak_relations(&p, &q, tol)?
            } else {
                frame::pair_relation(&p, &q, tol)?
            };
            Ok((
                object(vec![
                    ("command", json!("relate")),
                    ("report", serde_json::to_value(&report).unwrap()),
                ]),
                0,
            ))
        }
        Command::Similar {
            file_p,
            file_q,
            family_p,
            family_q,
        } => {
            let p = format::load(file_p)?.vector_pair(family_p.as_deref())?;
            let q = format::load(file_q)?.vector_pair(family_q.as_deref())?;
            let witness = frame::similarity_detect(&p, &q, tol)?;
            let value = match &witness {
                Some(w) => object(vec![
                    ("command", json!("similar")),
                    ("similar", json!(true)),
                    ("t_xy", matrix_value(&w.t_xy, p.field())),
                    ("t_tau_omega", matrix_value(&w.t_tau_omega, p.field())),
                ]),
                None => object(vec![
                    ("command", json!("similar")),
                    ("similar", json!(false)),
                ]),
            };
            Ok((value, 0))
        }
        Command::Riesz { file, family } => {
            let spec = format::load(file)?;
            let pair = spec.vector_pair(family.family.as_deref())?;
            let (bundle, report) = analyze(&pair, tol)?;
            Ok((
                object(vec![
                    ("command", json!("riesz")),
                    ("is_riesz", json!(frame::is_riesz(&bundle, tol))),
                    ("report", serde_json::to_value(&report).unwrap()),
                ]),
                0,
            ))
        }
        Command::GroupReconstruct {
            file,
            group: group_name,
            variant,
            family,
        } => {
            let spec = format::load(file)?;
            let pair = spec.vector_pair(family.family.as_deref())?;
            let g = spec.group(group_name)?;
            let (_, report) = analyze(&pair, tol)?;
            let (rec, conjugated) = if report.is_parseval && variant.is_none() {
                (group::reconstruct_representation(&pair, &g, tol)?, None)
            } else {
                let v: group::NormalizationVariant = variant.unwrap_or(ModeArg::Symmetric).into();
                let out = group::normalized_reconstruction(&pair, &g, v, tol)?;
                let conj = out.conjugated_recovery_residual;
                (out.reconstruction, Some(conj))
            };
            let matrices: Option<Value> = rec.representation.as_ref().map(|rep| {
                Value::Array(
                    rep.matrices()
                        .iter()
                        .map(|m| matrix_value(m, pair.field()))
                        .collect(),
                )
            });
            let ok = rec.representation.is_some();
            let mut entries = vec![
                ("command", json!("group-reconstruct")),
                ("reconstructed", json!(ok)),
                ("gram_ok", json!(rec.gram_ok)),
                ("gram_residual", json!(rec.gram_residual)),
                ("homomorphism_residual", json!(rec.homomorphism_residual)),
                ("unitarity_residual", json!(rec.unitarity_residual)),
                ("recovery_residual", json!(rec.recovery_residual)),
                ("tol", json!(tol)),
            ];
            if let Some(c) = conjugated.filter(|c| c.is_finite()) {
                entries.push(("conjugated_recovery_residual", json!(c)));
            }
            if let Some(m) = matrices {
                entries.push(("representation", m));
            }
            Ok((object(entries), if ok { 0 } else { 2 }))
        }
        Command::Perturb {
            file_base,
            file_cand,
            theorem,
            alpha,
            beta,
            gamma,
            sampled,
            family_base,
            family_cand,
        } => {
            let base = format::load(file_base)?.operator_pair(family_base.as_deref())?;
            let cand_pair = format::load(file_cand)?.operator_pair(family_cand.as_deref())?;
            if cand_pair.dim_h() != base.dim_h() || cand_pair.dim_h0() != base.dim_h0() {
                return Err(CliError::Input(
                    "candidate family shapes do not match the base".into(),
                ));
            }
            let cand = cand_pair.a().to_vec();
            let cert = match theorem {
                TheoremArg::T1 => {
                    let mode = if *sampled {
                        perturb::HypothesisMode::Sampled
                    } else {
                        perturb::HypothesisMode::Exact
                    };
                    perturb::certify_t1(&base, &cand, *alpha, *beta, *gamma, mode, tol)?
                }
                TheoremArg::T2 => perturb::certify_t2(&base, &cand, *alpha, *beta, *gamma, tol)?,
                TheoremArg::Quad => perturb::certify_quadratic(&base, &cand, tol)?,
                TheoremArg::Cr => perturb::certify_cr(&base, &cand, tol)?,
            };
            let exit = match cert.verdict {
                perturb::Verdict::Certified | perturb::Verdict::CertifiedSampled => 0,
                _ => 2,
            };
            Ok((
                object(vec![
                    ("command", json!("perturb")),
                    ("certificate", serde_json::to_value(&cert).unwrap()),
                ]),
                exit,
            ))
        }
        Command::Findim { op } => run_findim(op, tol),
    }
}

fn run_findim(op: &FindimOp, tol: f64) -> Result<(Value, i32), CliError> {
    match op {
        FindimOp::Spectral { file, family } => {
            let pair = format::load(file)?.vector_pair(family.family.as_deref())?;
            let summary = findim::spectral_summary(&pair, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim spectral")),
                    ("summary", serde_json::to_value(&summary).unwrap()),
                ]),
                0,
            ))
        }
        FindimOp::Tight { file, family } => {
            let pair = format::load(file)?.vector_pair(family.family.as_deref())?;
            let report = findim::tight_identities(&pair, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim tight")),
                    ("report", serde_json::to_value(&report).unwrap()),
                ]),
                0,
            ))
        }
        FindimOp::Trace {
            file,
            matrix,
            family,
        } => {
            let pair = format::load(file)?.vector_pair(family.family.as_deref())?;
            let t = match matrix {
                Some(path) => format::load_matrix(path)?,
                None => contframe_core::linalg::identity(pair.dim()),
            };
            let report = findim::trace_formula(&pair, &t, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim trace")),
                    ("report", serde_json::to_value(&report).unwrap()),
                ]),
                0,
            ))
        }
        FindimOp::Span { file, family } => {
            let pair = format::load(file)?.vector_pair(family.family.as_deref())?;
            let spans = findim::spanning_characterization(&pair, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim span")),
                    ("all_partitions_span", json!(spans)),
                    ("tol", json!(tol)),
                ]),
                0,
            ))
        }
        FindimOp::Remove {
            file,
            nodes,
            family,
        } => {
            let pair = format::load(file)?.vector_pair(family.family.as_deref())?;
            let (restricted, report) = findim::subset_removal(&pair, nodes, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim remove")),
                    ("report", serde_json::to_value(&report).unwrap()),
                    ("restricted", vector_pair_value(&restricted)),
                ]),
                0,
            ))
        }
        FindimOp::R2 { file, family } => {
            let spec = format::load(file)?;
            let space = spec.measure()?;
            let (a, b, theta, phi) = spec.r2_profile(family.family.as_deref())?;
            let report = findim::r2_tight_design(&a, &b, &theta, &phi, &space, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim r2")),
                    ("report", serde_json::to_value(&report).unwrap()),
                ]),
                0,
            ))
        }
        FindimOp::Real2complex { file, family } => {
            let pair = format::load(file)?.vector_pair(family.family.as_deref())?;
            let result = findim::real_to_complex(&pair, tol)?;
            let (_, report) = analyze(&result, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim real2complex")),
                    ("report", serde_json::to_value(&report).unwrap()),
                    ("result", vector_pair_value(&result)),
                ]),
                0,
            ))
        }
        FindimOp::Complex2real { file, family } => {
            let pair = format::load(file)?.vector_pair(family.family.as_deref())?;
            let result = findim::complex_to_real(&pair, tol)?;
            let (_, report) = analyze(&result, tol)?;
            Ok((
                object(vec![
                    ("command", json!("findim complex2real")),
                    ("report", serde_json::to_value(&report).unwrap()),
                    ("result", vector_pair_value(&result)),
                ]),
                0,
            ))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, exit)) => {
            if !cli.text {
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            }
            if !cli.json {
                print!("{}", render_text(&value));
            }
            std::process::exit(exit);
        }
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Gate(msg)) => {
            eprintln!("hypothesis/gate failure: {msg}");
            std::process::exit(2);
        }
    }
}
