//! Command-line front end: every computation in the crate behind
//! reproducible seeds and machine-readable output.
//!
//! Exit codes: 0 on success, 1 on validation failure, 2 when a check ran
//! and failed (KS rejection, tolerance exceeded, containment violated).
//!
//! Machine formats (`json`, `csv`) are byte-deterministic for a given argv
//! and seed: the `wall_time_s` meta field is a fixed 0.0 placeholder there,
//! and real elapsed time goes to stderr in human mode instead.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::closedform::{
    appendix_interval, asymptote, expected_tvd, per_entry_deviation, twirl_closed_form,
    EnsembleFamily, EnsembleId, Slot,
};
use crate::matrix::ComplexMatrix;
use crate::rng::RngStream;
use crate::sampling::{sample_haar, GroupFamily, GroupSpec};
use crate::sqbound::{lower_bound_q, regime_table, BoundMode, Schedule, SqParams};
use crate::symspace::{sample_space, SpaceFamily, SpaceSpec};
use crate::verify::{
    ks_law_check, mc_ball_fraction, mc_expected_tvd, mc_tail_probability, mc_twirl, EntryClass,
    LawSpec,
};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "symspace",
    version,
    about = "Random-matrix ensembles on compact groups and symmetric spaces: \
             samplers, exact Born statistics, Monte Carlo verification, and \
             statistical-query lower bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Master seed; every trial i derives its own stream (seed, i).
    #[arg(long, global = true, env = "SYMSPACE_SEED", default_value_t = 0)]
    seed: u64,

    /// Rayon worker threads (default: one per core). Output does not
    /// depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnsembleArg {
    Unitary,
    Orthogonal,
    Symplectic,
    Ai,
    Aii,
    Aiii,
    Bdi,
    Diii,
    Ci,
    Cii,
}

impl EnsembleArg {
    fn closed_form_family(self) -> Result<EnsembleFamily> {
        Ok(match self {
            EnsembleArg::Unitary => EnsembleFamily::Unitary,
            EnsembleArg::Orthogonal => EnsembleFamily::Orthogonal,
            EnsembleArg::Symplectic => EnsembleFamily::Symplectic,
            EnsembleArg::Ai => EnsembleFamily::AI,
            EnsembleArg::Aii => EnsembleFamily::AII,
            EnsembleArg::Diii => EnsembleFamily::DIII,
            other => {
                return Err(Error::Unsupported(format!(
                    "no closed forms for {other:?}; supported: unitary, orthogonal, \
                     symplectic, ai, aii, diii"
                )))
            }
        })
    }

    fn name(self) -> &'static str {
        match self {
            EnsembleArg::Unitary => "unitary",
            EnsembleArg::Orthogonal => "orthogonal",
            EnsembleArg::Symplectic => "symplectic",
            EnsembleArg::Ai => "ai",
            EnsembleArg::Aii => "aii",
            EnsembleArg::Aiii => "aiii",
            EnsembleArg::Bdi => "bdi",
            EnsembleArg::Diii => "diii",
            EnsembleArg::Ci => "ci",
            EnsembleArg::Cii => "cii",
        }
    }
}

#[derive(Debug, Args)]
struct DimArg {
    /// Hilbert-space dimension d (at least 4).
    #[arg(long, conflicts_with = "qubits")]
    dim: Option<usize>,

    /// Qubit count n, setting d = 2^n.
    #[arg(long)]
    qubits: Option<u32>,
}

impl DimArg {
    fn dim(&self) -> Result<usize> {
        match (self.dim, self.qubits) {
            (Some(d), None) => Ok(d),
            (None, Some(n)) => {
                if n >= usize::BITS {
                    return Err(Error::InvalidSpec(format!("qubit count {n} overflows")));
                }
                Ok(1usize << n)
            }
            _ => Err(Error::InvalidSpec(
                "provide exactly one of --dim, --qubits".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw matrices from a group or symmetric-space ensemble.
    Sample {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[command(flatten)]
        dim: DimArg,
        /// Block sizes for the split families (aiii, bdi, cii).
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
        /// Number of matrices to draw.
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Also report each sample's Born distribution of the |0⟩ column.
        #[arg(long, default_value_t = false)]
        born: bool,
    },
    /// Exact expected total variation distance to the constant distribution.
    ExpectedTvd {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Monte Carlo estimate of the expected TVD.
    McTvd {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Empirical twirl against the closed form.
    TwirlCheck {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = TwirlTarget::Projector)]
        target: TwirlTarget,
        /// Frobenius tolerance; default 6 ‖A‖_F / √trials.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// One-sample KS test of an entry law from the catalog.
    LawCheck {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        /// Entry class: entry, dot-product, diagonal, generic, partner.
        #[arg(long)]
        entry: String,
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Empirical concentration tails against the Levy-type bounds.
    Concentration {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[command(flatten)]
        dim: DimArg,
        /// Comma-separated deviation thresholds.
        #[arg(long, default_value = "0.05,0.1,0.2,0.4", value_delimiter = ',')]
        t_grid: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Empirical mass of the TVD ball around the constant distribution.
    BallFraction {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[command(flatten)]
        dim: DimArg,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Statistical-query lower bound on the query count.
    SqBound {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[command(flatten)]
        dim: DimArg,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Combined)]
        mode: ModeArg,
    },
    /// Sweep the lower bound over qubit counts under a parameter schedule.
    RegimeTable {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        /// Comma-separated qubit counts.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<u32>,
        /// tau = xi = 2^(-tau_power * n).
        #[arg(long, default_value_t = 0.25)]
        tau_power: f64,
        /// ln beta = -2^(beta_power * n).
        #[arg(long, default_value_t = 0.49)]
        beta_power: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Combined)]
        mode: ModeArg,
    },
    /// Sweep expected TVD against its guaranteed interval over dimensions.
    BoundsTable {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[arg(long, default_value_t = 4)]
        d_min: usize,
        #[arg(long, default_value_t = 1024)]
        d_max: usize,
        #[arg(long, default_value_t = 2)]
        step: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwirlTarget {
    Identity,
    Projector,
    Hermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Combined,
    PerEnsemble,
}

impl From<ModeArg> for BoundMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Combined => BoundMode::Combined,
            ModeArg::PerEnsemble => BoundMode::PerEnsemble,
        }
    }
}

/// A rendered report: one JSON value, a human transcript, and whether a
/// check ran and failed.
struct Outcome {
    payload: Value,
    human: String,
    check_failed: bool,
}

/// Run the CLI on an argv; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage/help text; --help and --version
            // exit successfully.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let started = std::time::Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let outcome = pool.install(|| dispatch(&cli));
    match outcome {
        Ok(outcome) => {
            if cli.format == Format::Human {
                eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            }
            match emit(&cli, &outcome) {
                Ok(()) => {
                    if outcome.check_failed {
                        2
                    } else {
                        0
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let text = match cli.format {
        Format::Human => {
            let mut s = outcome.human.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.payload)
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            s.push('\n');
            s
        }
        Format::Csv => payload_to_csv(&outcome.payload),
    };
    match &cli.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
        }
        None => {
            print!("{text}");
        }
    }
    Ok(())
}

fn meta(seed: u64, trials: Option<u64>) -> Value {
    let mut m = Map::new();
    m.insert("seed".into(), json!(seed));
    if let Some(t) = trials {
        m.insert("trials".into(), json!(t));
    }
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    // Fixed placeholder: machine output must be byte-identical across runs.
    m.insert("wall_time_s".into(), json!(0.0));
    Value::Object(m)
}

/// One CSV cell: strings appear bare, everything else exactly as
/// serde_json renders it, so CSV and JSON carry identical digit strings.
fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn matrix_value(m: &ComplexMatrix) -> Value {
    let d = m.dim();
    Value::Array(
        (0..d)
            .map(|i| {
                Value::Array(
                    (0..d)
                        .map(|j| {
                            let z = m[(i, j)];
                            Value::Array(vec![Value::from(z.re), Value::from(z.im)])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// CSV rendering of the JSON payload. Objects holding a `rows` array become
/// header + rows; matrix samples become one line per matrix row; flat
/// objects become a two-line key/value table. Values are rendered through
/// serde_json so both machine formats agree digit-for-digit.
fn payload_to_csv(payload: &Value) -> String {
    let obj = match payload.as_object() {
        Some(o) => o,
        None => return payload.to_string() + "\n",
    };
    if let Some(rows) = obj.get("rows").and_then(Value::as_array) {
        return rows_to_csv(rows);
    }
    if let Some(samples) = obj.get("samples").and_then(Value::as_array) {
        return samples_to_csv(samples);
    }
    // Flat record: every scalar field except the meta object.
    let mut header = Vec::new();
    let mut row = Vec::new();
    for (k, v) in obj {
        if k == "meta" || v.is_object() || v.is_array() {
            continue;
        }
        header.push(k.clone());
        row.push(cell(v));
    }
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn rows_to_csv(rows: &[Value]) -> String {
    let Some(first) = rows.first().and_then(Value::as_object) else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let mut out = keys
        .iter()
        .map(|k| k.as_str())
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for row in rows {
        let obj = row.as_object().expect("homogeneous rows");
        let line: Vec<String> = keys
            .iter()
            .map(|k| obj.get(*k).map(cell).unwrap_or_default())
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn samples_to_csv(samples: &[Value]) -> String {
    let mut out = String::from("sample,row,entries_re_im\n");
    for (s, m) in samples.iter().enumerate() {
        let rows = m.as_array().expect("matrix rows");
        for (i, r) in rows.iter().enumerate() {
            let cells: Vec<String> = r
                .as_array()
                .expect("matrix row")
                .iter()
                .flat_map(|pair| {
                    let p = pair.as_array().expect("re/im pair");
                    [p[0].to_string(), p[1].to_string()]
                })
                .collect();
            out.push_str(&format!("{s},{i},{}\n", cells.join(",")));
        }
    }
    out
}

fn ensemble_id(arg: EnsembleArg, dim: usize) -> Result<EnsembleId> {
    EnsembleId::new(arg.closed_form_family()?, dim)
}

/// Bitstring label of a basis index when the dimension is a power of two,
/// plain integer otherwise.
fn basis_label(x: usize, d: usize) -> String {
    if d.is_power_of_two() && d > 1 {
        let n = d.trailing_zeros() as usize;
        (0..n)
            .rev()
            .map(|b| if (x >> b) & 1 == 1 { '1' } else { '0' })
            .collect()
    } else {
        x.to_string()
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Sample {
            ensemble,
            dim,
            p,
            q,
            trials,
            born,
        } => cmd_sample(cli, *ensemble, dim.dim()?, *p, *q, *trials, *born),
        Command::ExpectedTvd { ensemble, dim } => cmd_expected_tvd(*ensemble, dim.dim()?),
        Command::McTvd {
            ensemble,
            dim,
            trials,
        } => cmd_mc_tvd(cli, *ensemble, dim.dim()?, *trials),
        Command::TwirlCheck {
            ensemble,
            dim,
            trials,
            target,
            tol,
        } => cmd_twirl_check(cli, *ensemble, dim.dim()?, *trials, *target, *tol),
        Command::LawCheck {
            ensemble,
            entry,
            dim,
            trials,
        } => cmd_law_check(cli, *ensemble, entry, dim.dim()?, *trials),
        Command::Concentration {
            ensemble,
            dim,
            t_grid,
            trials,
        } => cmd_concentration(cli, *ensemble, dim.dim()?, t_grid, *trials),
        Command::BallFraction {
            ensemble,
            dim,
            radius,
            trials,
        } => cmd_ball_fraction(cli, *ensemble, dim.dim()?, *radius, *trials),
        Command::SqBound {
            ensemble,
            dim,
            tau,
            eps,
            beta,
            mode,
        } => cmd_sq_bound(cli, *ensemble, dim.dim()?, *tau, *eps, *beta, *mode),
        Command::RegimeTable {
            ensemble,
            n_list,
            tau_power,
            beta_power,
            mode,
        } => cmd_regime_table(cli, *ensemble, n_list, *tau_power, *beta_power, *mode),
        Command::BoundsTable {
            ensemble,
            d_min,
            d_max,
            step,
        } => cmd_bounds_table(*ensemble, *d_min, *d_max, *step),
    }
}

fn cmd_sample(
    cli: &Cli,
    ensemble: EnsembleArg,
    dim: usize,
    p: Option<usize>,
    q: Option<usize>,
    trials: u64,
    born: bool,
) -> Result<Outcome> {
    enum Kind {
        Group(GroupSpec),
        Space(SpaceSpec),
    }
    let split = match (p, q) {
        (Some(p), Some(q)) => Some((p, q)),
        _ => None,
    };
    let kind = match ensemble {
        EnsembleArg::Unitary => Kind::Group(GroupSpec::new(GroupFamily::Unitary, dim)?),
        EnsembleArg::Orthogonal => Kind::Group(GroupSpec::new(GroupFamily::Orthogonal, dim)?),
        EnsembleArg::Symplectic => {
            return Err(Error::Unsupported(
                "no symplectic-group sampler; its Born statistics coincide with the \
                 unitary ensemble"
                    .into(),
            ))
        }
        EnsembleArg::Ai => Kind::Space(SpaceSpec::new(SpaceFamily::AI, dim, None)?),
        EnsembleArg::Aii => Kind::Space(SpaceSpec::new(SpaceFamily::AII, dim, None)?),
        EnsembleArg::Aiii => Kind::Space(SpaceSpec::new(SpaceFamily::AIII, dim, split)?),
        EnsembleArg::Bdi => Kind::Space(SpaceSpec::new(SpaceFamily::BDI, dim, split)?),
        EnsembleArg::Diii => Kind::Space(SpaceSpec::new(SpaceFamily::DIII, dim, None)?),
        EnsembleArg::Ci => Kind::Space(SpaceSpec::new(SpaceFamily::CI, dim, None)?),
        EnsembleArg::Cii => Kind::Space(SpaceSpec::new(SpaceFamily::CII, dim, split)?),
    };
    if trials == 0 {
        return Err(Error::Domain("at least one sample required".into()));
    }
    let mut samples = Vec::with_capacity(trials as usize);
    for i in 0..trials {
        let mut rng = RngStream::new(cli.seed, i);
        let m = match &kind {
            Kind::Group(spec) => sample_haar(spec, &mut rng),
            Kind::Space(spec) => sample_space(spec, &mut rng)?,
        };
        samples.push(m);
    }
    let mut payload = Map::new();
    payload.insert("meta".into(), meta(cli.seed, Some(trials)));
    payload.insert("ensemble".into(), json!(ensemble.name()));
    payload.insert("dim".into(), json!(dim));
    payload.insert(
        "samples".into(),
        Value::Array(samples.iter().map(matrix_value).collect()),
    );
    let mut human = format!(
        "{} sample(s) from {} at d = {dim}\n",
        trials,
        ensemble.name()
    );
    if born {
        let mut dists = Vec::new();
        for (i, m) in samples.iter().enumerate() {
            let p = crate::born::born_distribution(m, 0)?;
            human.push_str(&format!(
                "sample {i} Born distribution (tvd to uniform {}):\n",
                crate::born::tvd_to_uniform(&p)
            ));
            for (x, &prob) in p.probs().iter().enumerate() {
                human.push_str(&format!("  P({}) = {prob}\n", basis_label(x, dim)));
            }
            dists.push(json!(p.probs()));
        }
        payload.insert("born".into(), Value::Array(dists));
    }
    for (i, m) in samples.iter().enumerate() {
        human.push_str(&format!(
            "sample {i}: unitarity defect {:.3e}\n",
            m.unitarity_defect()
        ));
    }
    Ok(Outcome {
        payload: Value::Object(payload),
        human,
        check_failed: false,
    })
}

fn cmd_expected_tvd(ensemble: EnsembleArg, dim: usize) -> Result<Outcome> {
    let e = ensemble_id(ensemble, dim)?;
    let value = expected_tvd(&e);
    let interval = appendix_interval(&e);
    let mut payload = Map::new();
    payload.insert("ensemble".into(), json!(ensemble.name()));
    payload.insert("dim".into(), json!(dim));
    payload.insert("expected_tvd".into(), json!(value));
    payload.insert("asymptote".into(), json!(asymptote(&e)));
    payload.insert("interval_lower".into(), json!(interval.lower));
    payload.insert("interval_upper".into(), json!(interval.upper));
    for (key, slot) in [
        ("entry_diagonal", Slot::Diagonal),
        ("entry_partner", Slot::Partner),
        ("entry_generic", Slot::Generic),
    ] {
        if let Ok(dev) = per_entry_deviation(&e, slot) {
            payload.insert(key.into(), json!(dev));
        }
    }
    Ok(Outcome {
        payload: Value::Object(payload),
        human: format!("{value}"),
        check_failed: false,
    })
}

fn cmd_mc_tvd(cli: &Cli, ensemble: EnsembleArg, dim: usize, trials: u64) -> Result<Outcome> {
    let e = ensemble_id(ensemble, dim)?;
    let report = mc_expected_tvd(&e, trials, cli.seed)?;
    let exact = expected_tvd(&e);
    let sigmas = (report.estimate - exact).abs() / report.stderr.max(f64::MIN_POSITIVE);
    let payload = json!({
        "meta": meta(cli.seed, Some(trials)),
        "ensemble": ensemble.name(),
        "dim": dim,
        "estimate": report.estimate,
        "stderr": report.stderr,
        "exact": exact,
        "deviation_sigmas": sigmas,
    });
    let human = format!(
        "mc tvd({}, d={dim}) = {} ± {}  [exact {exact}, {:.2}σ]",
        ensemble.name(),
        report.estimate,
        report.stderr,
        sigmas
    );
    Ok(Outcome {
        payload,
        human,
        check_failed: false,
    })
}

fn cmd_twirl_check(
    cli: &Cli,
    ensemble: EnsembleArg,
    dim: usize,
    trials: u64,
    target: TwirlTarget,
    tol: Option<f64>,
) -> Result<Outcome> {
    let e = ensemble_id(ensemble, dim)?;
    let a = match target {
        TwirlTarget::Identity => ComplexMatrix::identity(dim),
        TwirlTarget::Projector => ComplexMatrix::basis_projector(dim, 0),
        TwirlTarget::Hermitian => {
            // Deterministic Hermitian target from a reserved stream, scaled
            // to unit Frobenius norm.
            let mut rng = RngStream::new(cli.seed, u64::MAX);
            let g = ComplexMatrix::from_fn(dim, |_, _| {
                let (re, im) = rng.next_gaussian_pair();
                num_complex::Complex64::new(re, im)
            });
            let h = g.add(&g.adjoint())?.scale(0.5);
            let norm = h.frobenius_norm();
            h.scale(1.0 / norm)
        }
    };
    let a_norm = a.frobenius_norm();
    let report = mc_twirl(&e, &a, trials, cli.seed)?;
    let tol = tol.unwrap_or(6.0 * a_norm / (trials as f64).sqrt());
    let pass = report.frobenius_err <= tol;
    let closed = twirl_closed_form(&e, &a)?;
    let payload = json!({
        "meta": meta(cli.seed, Some(trials)),
        "ensemble": ensemble.name(),
        "dim": dim,
        "target": format!("{target:?}").to_lowercase(),
        "frobenius_err": report.frobenius_err,
        "tolerance": tol,
        "pass": pass,
        "closed_form": matrix_value(&closed),
        "mc_mean": matrix_value(&report.mean),
    });
    let human = format!(
        "twirl({}, d={dim}, target={target:?}): ‖mc − closed‖_F = {} (tol {tol}) → {}",
        ensemble.name(),
        report.frobenius_err,
        if pass { "pass" } else { "FAIL" }
    );
    Ok(Outcome {
        payload,
        human,
        check_failed: !pass,
    })
}

fn parse_entry_class(ensemble: EnsembleArg, entry: &str) -> Result<EntryClass> {
    let class = match (ensemble, entry) {
        (EnsembleArg::Unitary | EnsembleArg::Orthogonal, "entry" | "group-entry") => {
            EntryClass::GroupEntry
        }
        (EnsembleArg::Unitary, "dot-product") => EntryClass::DotProduct,
        (EnsembleArg::Ai, "diagonal") => EntryClass::AiDiagonal,
        (EnsembleArg::Aii, "generic") => EntryClass::AiiGeneric,
        (EnsembleArg::Aii, "partner") => EntryClass::AiiPartner,
        (EnsembleArg::Diii, "generic") => EntryClass::DiiiGeneric,
        (EnsembleArg::Diii, "partner") => EntryClass::DiiiPartner,
        _ => {
            return Err(Error::Domain(format!(
                "no cataloged law for ensemble {} with entry class '{entry}'",
                ensemble.name()
            )))
        }
    };
    Ok(class)
}

fn cmd_law_check(
    cli: &Cli,
    ensemble: EnsembleArg,
    entry: &str,
    dim: usize,
    trials: u64,
) -> Result<Outcome> {
    let e = ensemble_id(ensemble, dim)?;
    let class = parse_entry_class(ensemble, entry)?;
    let spec = LawSpec::catalog(e, class)?;
    let report = ks_law_check(&spec, trials, cli.seed)?;
    let payload = json!({
        "meta": meta(cli.seed, Some(trials)),
        "ensemble": ensemble.name(),
        "dim": dim,
        "entry_class": class.name(),
        "statistic": report.statistic,
        "threshold": report.threshold,
        "pass": report.pass,
    });
    let human = format!(
        "law check ({}, {}, d={dim}): statistic {:.4e} vs threshold {:.4e} → {}",
        ensemble.name(),
        class.name(),
        report.statistic,
        report.threshold,
        if report.pass { "pass" } else { "FAIL" }
    );
    Ok(Outcome {
        payload,
        human,
        check_failed: !report.pass,
    })
}

fn cmd_concentration(
    cli: &Cli,
    ensemble: EnsembleArg,
    dim: usize,
    t_grid: &[f64],
    trials: u64,
) -> Result<Outcome> {
    let e = ensemble_id(ensemble, dim)?;
    let mut rows = Vec::new();
    let mut human = format!("concentration tails ({}, d={dim}):\n", ensemble.name());
    let mut failed = false;
    for &t in t_grid {
        let r = mc_tail_probability(&e, t, trials, cli.seed)?;
        let ok = r.empirical <= r.levy_bound + 3.0 * r.stderr;
        failed |= !ok;
        human.push_str(&format!(
            "  t = {t}: empirical {} ≤ bound {} → {}\n",
            r.empirical,
            r.levy_bound,
            if ok { "pass" } else { "FAIL" }
        ));
        rows.push(json!({
            "t": t,
            "empirical": r.empirical,
            "stderr": r.stderr,
            "levy_bound": r.levy_bound,
            "pass": ok,
        }));
    }
    let payload = json!({
        "meta": meta(cli.seed, Some(trials)),
        "ensemble": ensemble.name(),
        "dim": dim,
        "rows": rows,
    });
    Ok(Outcome {
        payload,
        human,
        check_failed: failed,
    })
}

fn cmd_ball_fraction(
    cli: &Cli,
    ensemble: EnsembleArg,
    dim: usize,
    radius: f64,
    trials: u64,
) -> Result<Outcome> {
    let e = ensemble_id(ensemble, dim)?;
    let report = mc_ball_fraction(&e, radius, trials, cli.seed)?;
    let payload = json!({
        "meta": meta(cli.seed, Some(trials)),
        "ensemble": ensemble.name(),
        "dim": dim,
        "radius": radius,
        "estimate": report.estimate,
        "stderr": report.stderr,
    });
    let human = format!(
        "ball fraction ({}, d={dim}, radius {radius}) = {} ± {}",
        ensemble.name(),
        report.estimate,
        report.stderr
    );
    Ok(Outcome {
        payload,
        human,
        check_failed: false,
    })
}

fn cmd_sq_bound(
    cli: &Cli,
    ensemble: EnsembleArg,
    dim: usize,
    tau: f64,
    eps: f64,
    beta: f64,
    mode: ModeArg,
) -> Result<Outcome> {
    let family = ensemble.closed_form_family()?;
    let params = SqParams::new(family, dim as f64, tau, eps, beta, mode.into())?;
    let r = lower_bound_q(&params)?;
    let payload = json!({
        "meta": meta(cli.seed, None),
        "ensemble": ensemble.name(),
        "dim": dim,
        "tau": tau,
        "eps": eps,
        "beta": beta,
        "mode": format!("{mode:?}").to_lowercase(),
        "log_q_plus_1": r.log_q_plus_1,
        "log10_q_plus_1": r.log_q_plus_1 / std::f64::consts::LN_10,
        "xi": r.xi,
        "u_bound": r.u_bound,
        "f_bound": r.f_bound,
        "ln_u_bound": r.ln_u_bound,
        "ln_f_bound": r.ln_f_bound,
        "vacuous": r.vacuous,
    });
    let human = if r.vacuous {
        format!(
            "sq bound ({}, d={dim}): vacuous (q ≥ 0); u_bound {} dominates beta {beta}",
            ensemble.name(),
            r.u_bound
        )
    } else {
        format!(
            "sq bound ({}, d={dim}): ln(q+1) ≥ {} (log10 {}), xi = {}, u = {}, f = {}",
            ensemble.name(),
            r.log_q_plus_1,
            r.log_q_plus_1 / std::f64::consts::LN_10,
            r.xi,
            r.u_bound,
            r.f_bound
        )
    };
    Ok(Outcome {
        payload,
        human,
        check_failed: false,
    })
}

fn cmd_regime_table(
    cli: &Cli,
    ensemble: EnsembleArg,
    n_list: &[u32],
    tau_power: f64,
    beta_power: f64,
    mode: ModeArg,
) -> Result<Outcome> {
    let family = ensemble.closed_form_family()?;
    if n_list.is_empty() {
        return Err(Error::Domain("empty qubit list".into()));
    }
    let schedule = Schedule {
        tau_power,
        beta_power,
    };
    let rows = regime_table(family, n_list, &schedule, mode.into())?;
    let mut human = format!(
        "regime table ({}, tau = 2^(-{tau_power} n), ln beta = -2^({beta_power} n)):\n",
        ensemble.name()
    );
    for row in &rows {
        human.push_str(&format!(
            "  n = {:>4}: status {:?}, ln(q+1) ≥ {}, ln ln(q+1) = {}\n",
            row.n,
            row.status,
            row.log_q_plus_1,
            row.log_log_q_plus_1
                .map(|x| x.to_string())
                .unwrap_or_else(|| "-".into()),
        ));
    }
    let payload = json!({
        "meta": meta(cli.seed, None),
        "ensemble": ensemble.name(),
        "tau_power": tau_power,
        "beta_power": beta_power,
        "mode": format!("{mode:?}").to_lowercase(),
        "rows": rows.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        payload,
        human,
        check_failed: false,
    })
}

fn cmd_bounds_table(
    ensemble: EnsembleArg,
    d_min: usize,
    d_max: usize,
    step: usize,
) -> Result<Outcome> {
    let family = ensemble.closed_form_family()?;
    if step == 0 || d_min < 4 || d_max < d_min {
        return Err(Error::Domain(
            "need step ≥ 1 and 4 ≤ d_min ≤ d_max for the sweep".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut failed = false;
    let mut d = d_min;
    while d <= d_max {
        if let Ok(e) = EnsembleId::new(family, d) {
            let value = expected_tvd(&e);
            let interval = appendix_interval(&e);
            let contained = interval.contains(value);
            failed |= !contained;
            rows.push(json!({
                "dim": d,
                "expected_tvd": value,
                "lower": interval.lower,
                "upper": interval.upper,
                "contained": contained,
            }));
        }
        d += step;
    }
    if rows.is_empty() {
        return Err(Error::Domain("sweep produced no valid dimensions".into()));
    }
    let human = format!(
        "bounds table ({}): {} dims checked, {}\n",
        ensemble.name(),
        rows.len(),
        if failed {
            "CONTAINMENT VIOLATION"
        } else {
            "all contained"
        }
    );
    let payload = json!({
        "ensemble": ensemble.name(),
        "rows": rows,
    });
    Ok(Outcome {
        payload,
        human,
        check_failed: failed,
    })
}
