//! Argument parsing, command dispatch and exit codes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use tcat_core::center::{
    center_simples, invertibility_report, tube_algebra, verify_center_object, SamplingPolicy,
};
use tcat_core::modularity::{muger_center, s_matrix};
use tcat_core::{CategoryData, Engine, Scalar, ToleranceCfg};

use crate::io::{self, IoError};

/// Version of the machine-readable output schema.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "tcat",
    version,
    about = "Premodular category numerics and Drinfeld center factorization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Threshold for axiom residuals.
    #[arg(long, global = true, value_name = "F", allow_hyphen_values = true)]
    pub tolerance_structural: Option<f64>,
    /// Threshold for composite-versus-identity checks.
    #[arg(long, global = true, value_name = "F", allow_hyphen_values = true)]
    pub tolerance_identity: Option<f64>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Exit with status 1 unless the category is modular and factorizable.
    #[arg(long, global = true)]
    pub expect_modular: bool,
    /// Word pairs up to this total length join the factorization test set.
    #[arg(long, global = true, value_name = "N", default_value_t = 2)]
    pub max_word_length: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axiom residuals.
    Validate { category: String },
    /// S-matrix, rank and modularity verdict.
    Smatrix { category: String },
    /// Transparent simple objects.
    Muger { category: String },
    /// Simple objects of the Drinfeld center.
    Center { category: String },
    /// Defect norms of the four composites and the factorization verdict.
    Factorize { category: String },
    /// Known category names.
    CatalogList,
    /// Category document, for fixtures.
    Dump { category: String },
}

/// A finished command: text for the chosen format and whether the
/// mathematical checks passed.
struct Outcome {
    text: String,
    ok: bool,
}

#[derive(Debug, thiserror::Error)]
enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Math(tcat_core::Error),
}

impl RunError {
    fn exit_code(&self) -> u8 {
        match self {
            RunError::Math(_) => 1,
            _ => 2,
        }
    }
}

fn math(e: tcat_core::Error) -> RunError {
    match e {
        tcat_core::Error::Schema { .. }
        | tcat_core::Error::UnknownCategory { .. }
        | tcat_core::Error::Tolerance(_) => RunError::Io(IoError::Category(e)),
        other => RunError::Math(other),
    }
}

fn scalar(z: Scalar) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn fmt_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else {
        format!("{:?}{:+?}i", z.re, z.im)
    }
}

fn load(reference: &str, opts: &Options) -> Result<CategoryData, RunError> {
    let cat = io::resolve_category(reference)?;
    if opts.tolerance_structural.is_none() && opts.tolerance_identity.is_none() {
        return Ok(cat);
    }
    let base = cat.tol();
    let tol = ToleranceCfg {
        eps_structural: opts.tolerance_structural.unwrap_or(base.eps_structural),
        eps_identity: opts.tolerance_identity.unwrap_or(base.eps_identity),
    };
    cat.with_tolerances(tol)
        .map_err(|e| RunError::Usage(format!("{e}")))
}

fn envelope(command: &str, body: Value) -> String {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

fn validate(cat: &CategoryData, opts: &Options) -> Outcome {
    let r = cat.validate();
    let text = match opts.format {
        Format::Machine => envelope(
            "validate",
            json!({
                "category": r.category,
                "eps_structural": r.eps_structural,
                "checks": r.checks.iter().map(|c| json!({
                    "name": c.name, "residual": c.residual, "pass": c.pass
                })).collect::<Vec<_>>(),
                "pass": r.pass,
            }),
        ),
        Format::Human => {
            let mut s = format!(
                "category {}  (eps_structural {:?})\n",
                r.category, r.eps_structural
            );
            for c in &r.checks {
                let tag = if c.pass { "ok" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "  {:<16} {:<24} {tag}",
                    c.name,
                    format!("{:?}", c.residual)
                );
            }
            let _ = writeln!(s, "result: {}", if r.pass { "pass" } else { "fail" });
            s
        }
    };
    Outcome { text, ok: r.pass }
}

fn smatrix(cat: &CategoryData, opts: &Options) -> Result<Outcome, RunError> {
    let s = s_matrix(cat).map_err(math)?;
    let n = cat.n_labels();
    let modular = s.rank == n;
    let ok = modular || !opts.expect_modular;
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| s.entries[(i, j)]).collect())
        .collect();
    let text = match opts.format {
        Format::Machine => envelope(
            "smatrix",
            json!({
                "category": cat.name(),
                "labels": cat.labels().iter().map(|l| l.name.clone()).collect::<Vec<_>>(),
                "entries": rows.iter().map(|r| r.iter().map(|z| scalar(*z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "rank": s.rank,
                "abs_det": s.det.norm(),
                "modular": modular,
            }),
        ),
        Format::Human => {
            let body: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "[{}]",
                        r.iter()
                            .map(|z| fmt_scalar(*z))
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                })
                .collect();
            format!(
                "[{}]\nrank {}  |det| {:?}  modular {}\n",
                body.join(", "),
                s.rank,
                s.det.norm(),
                modular
            )
        }
    };
    Ok(Outcome { text, ok })
}

fn muger(cat: &CategoryData, opts: &Options) -> Result<Outcome, RunError> {
    let m = muger_center(cat).map_err(math)?;
    let trivial = m.transparent == [0];
    let ok = trivial || !opts.expect_modular;
    let names: Vec<String> = m
        .transparent
        .iter()
        .map(|&i| cat.label_name(i).to_string())
        .collect();
    let text = match opts.format {
        Format::Machine => envelope(
            "muger",
            json!({
                "category": cat.name(),
                "transparent": names,
                "monodromy_defects": m.monodromy_defects,
                "trivial": trivial,
            }),
        ),
        Format::Human => {
            let mut s = format!("category {}\n", cat.name());
            for (i, d) in m.monodromy_defects.iter().enumerate() {
                let _ = writeln!(s, "  {:<8} monodromy defect {:?}", cat.label_name(i), d);
            }
            let _ = writeln!(s, "transparent: {{{}}}", names.join(", "));
            s
        }
    };
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct CenterRow {
    multiplicities: Vec<usize>,
    quantum_dim: f64,
    unit: f64,
    tensoriality: f64,
    naturality: f64,
    condition: f64,
    pass: bool,
}

fn center(cat: &CategoryData, opts: &Options) -> Result<Outcome, RunError> {
    let eng = Engine::new(cat);
    let alg = tube_algebra(&eng).map_err(math)?;
    let simples = center_simples(&eng, &alg).map_err(math)?;
    let mut rows = Vec::with_capacity(simples.len());
    for obj in &simples {
        let chk = verify_center_object(&eng, obj).map_err(math)?;
        rows.push(CenterRow {
            multiplicities: (0..cat.n_labels())
                .map(|c| obj.x.sector_dim(cat.ring(), c))
                .collect(),
            quantum_dim: cat.quantum_dim(&obj.x).re,
            unit: chk.unit,
            tensoriality: chk.tensoriality,
            naturality: chk.naturality,
            condition: chk.condition,
            pass: chk.pass,
        });
    }
    let ok = rows.iter().all(|r| r.pass);
    let text = match opts.format {
        Format::Machine => envelope(
            "center",
            json!({
                "category": cat.name(),
                "labels": cat.labels().iter().map(|l| l.name.clone()).collect::<Vec<_>>(),
                "tube_algebra_dim": alg.dim(),
                "simples": rows,
                "pass": ok,
            }),
        ),
        Format::Human => {
            let mut s = format!(
                "category {}  tube algebra dim {}  center simples {}\n",
                cat.name(),
                alg.dim(),
                rows.len()
            );
            for (k, r) in rows.iter().enumerate() {
                let x: Vec<String> = r
                    .multiplicities
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(c, &m)| {
                        if m == 1 {
                            cat.label_name(c).to_string()
                        } else {
                            format!("{m}·{}", cat.label_name(c))
                        }
                    })
                    .collect();
                let _ = writeln!(
                    s,
                    "  Z{k:<3} X = {:<16} dim {:<20} tensoriality {:<24} naturality {:<24} {}",
                    x.join(" + "),
                    format!("{:?}", r.quantum_dim),
                    format!("{:?}", r.tensoriality),
                    format!("{:?}", r.naturality),
                    if r.pass { "ok" } else { "FAIL" }
                );
            }
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn factorize(cat: &CategoryData, opts: &Options) -> Result<Outcome, RunError> {
    let policy = SamplingPolicy {
        max_word_length: opts.max_word_length,
    };
    let r = invertibility_report(cat, policy).map_err(math)?;
    let eps = cat.tol().eps_identity;
    let verdict = if r.factorizable {
        "factorizable"
    } else {
        "not factorizable"
    };
    let consistent = r.triple_equivalence()
        && r.defects.qd < eps
        && r.b_residual < eps
        && r.p_residual < eps
        && r.idempotency < eps;
    let ok = consistent && (r.factorizable || !opts.expect_modular);
    let text = match opts.format {
        Format::Machine => envelope(
            "factorize",
            json!({
                "category": r.category,
                "modular": r.modular,
                "rank_S": r.rank_s,
                "defects": { "qd": r.defects.qd, "dq": r.defects.dq, "pb": r.defects.pb, "bp": r.defects.bp },
                "center_count": r.center_count,
                "square_count": r.square_count,
                "verdict": verdict,
                "muger_trivial": r.muger_trivial,
                "b_residual": r.b_residual,
                "p_residual": r.p_residual,
                "idempotency": r.idempotency,
                "f_hits": r.f_hits,
                "deligne_test_objects": r.deligne_objects,
                "center_test_objects": r.center_objects,
                "eps_identity": eps,
            }),
        ),
        Format::Human => {
            let mut s = format!("category {}  (eps_identity {:?})\n", r.category, eps);
            let _ = writeln!(
                s,
                "  modular            {}  (rank S = {})",
                r.modular, r.rank_s
            );
            let _ = writeln!(s, "  Müger trivial      {}", r.muger_trivial);
            let _ = writeln!(s, "  ‖q∘d − id‖         {:?}", r.defects.qd);
            let _ = writeln!(s, "  ‖d∘q − id‖         {:?}", r.defects.dq);
            let _ = writeln!(s, "  ‖p∘b − id‖         {:?}", r.defects.pb);
            let _ = writeln!(s, "  ‖b∘p − id‖         {:?}", r.defects.bp);
            let _ = writeln!(s, "  b residual         {:?}", r.b_residual);
            let _ = writeln!(s, "  p residual         {:?}", r.p_residual);
            let _ = writeln!(s, "  ‖Γ² − Γ‖           {:?}", r.idempotency);
            let _ = writeln!(
                s,
                "  center simples     {}  (n² = {})",
                r.center_count, r.square_count
            );
            let _ = writeln!(s, "  F hits             {:?}", r.f_hits);
            let _ = writeln!(
                s,
                "  test objects       {} pairs, {} center simples",
                r.deligne_objects, r.center_objects
            );
            let _ = writeln!(s, "verdict: {verdict}");
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn catalog_list(opts: &Options) -> Outcome {
    let names = io::available_names();
    let text = match opts.format {
        Format::Machine => envelope("catalog-list", json!({ "names": names })),
        Format::Human => names.iter().map(|n| format!("{n}\n")).collect(),
    };
    Outcome { text, ok: true }
}

fn execute(cli: &Cli) -> Result<Outcome, RunError> {
    let opts = &cli.opts;
    for (flag, v) in [
        ("--tolerance-structural", opts.tolerance_structural),
        ("--tolerance-identity", opts.tolerance_identity),
    ] {
        if let Some(v) = v {
            if !(v > 0.0 && v.is_finite()) {
                return Err(RunError::Usage(format!("{flag} must be positive, got {v}")));
            }
        }
    }
    match &cli.command {
        Command::Validate { category } => Ok(validate(&load(category, opts)?, opts)),
        Command::Smatrix { category } => smatrix(&load(category, opts)?, opts),
        Command::Muger { category } => muger(&load(category, opts)?, opts),
        Command::Center { category } => center(&load(category, opts)?, opts),
        Command::Factorize { category } => factorize(&load(category, opts)?, opts),
        Command::CatalogList => Ok(catalog_list(opts)),
        Command::Dump { category } => Ok(Outcome {
            text: io::serialize_category(&load(category, opts)?),
            ok: true,
        }),
    }
}

/// Runs a parsed invocation and returns the process exit code:
/// 0 on success, 1 when a mathematical check fails, 2 on misuse or IO errors.
pub fn run(cli: &Cli) -> u8 {
    match execute(cli) {
        Ok(outcome) => {
            let written = match &cli.opts.out {
                Some(path) => io::write_atomic(path, &outcome.text),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => u8::from(!outcome.ok),
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(&cli))
}
