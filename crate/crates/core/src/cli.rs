//! The `witnesslab` command-line interface.
//!
//! Exit codes: 0 success, 2 usage, 3 resource cap, 4 input/spec error,
//! 5 verification failure.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::canonical::{canonical_coeffs, CanonicalKind, DEFAULT_NONENTANGLED_TOL};
use crate::concurrence::{convex_roof_upper, optimize_y, tau_matrices, OptimizeStrategy};
use crate::error::Error;
use crate::lie::{represent_with_cap, SystemSpec};
use crate::linalg::{max_abs, DEGENERACY_TOL};
use crate::report::{sig12, sig12_vec, Report};
use crate::statefile::{LoadedState, StateFile};
use crate::witness::{build_witness, projector_appendix, Witness, WitnessKind};
use crate::DEFAULT_DIM_CAP;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "witnesslab",
    version,
    about = "Nonlinear entanglement witnesses, generalized concurrence and mixed-state bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Witness construction.
    Witness {
        #[command(subcommand)]
        action: WitnessAction,
    },
    /// Concurrence of a pure state, or a mixed-state lower bound.
    Concurrence(ConcurrenceArgs),
    /// Canonical coefficients (Schmidt / Slater / Takagi) and the
    /// nonentanglement verdict.
    Canonical(CanonicalArgs),
    /// Consistency checks against closed-form expressions.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum WitnessAction {
    /// Build the witness and report its spectral data and Kraus counts.
    Build(WitnessArgs),
    /// Report the spectrum of L only.
    Spectrum(WitnessArgs),
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// System: `dist:<d1,d2,...>` | `boson:<n>` | `fermion:<n>`
    #[arg(long)]
    pub system: String,
    /// Witness kind: projector | gap
    #[arg(long, default_value = "projector")]
    pub kind: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Serialize the witness (spectrum + Kraus operators) to this path.
    #[arg(long)]
    pub save_witness: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConcurrenceArgs {
    /// Path to a state file.
    #[arg(long)]
    pub state: PathBuf,
    /// Optional system override; must match the state file.
    #[arg(long)]
    pub system: Option<String>,
    /// Witness kind: projector | gap
    #[arg(long, default_value = "projector")]
    pub kind: String,
    /// Weight strategy for mixed states: single | `random:<k>` | ascent
    #[arg(long, default_value = "single")]
    pub strategy: String,
    /// Convex-roof upper-estimate trials for mixed states (0 = skip).
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CanonicalArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyAction {
    /// Compare spectra, Casimir constants and projectors against their
    /// closed forms for N = 2..nmax.
    Appendix(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// System family: dist | boson | fermion
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub nmax: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A command failure carrying its process exit code.
#[derive(Debug)]
pub struct CliFailure {
    pub code: i32,
    pub message: String,
}

impl CliFailure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliFailure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionCap { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        CliFailure::new(code, e.to_string())
    }
}

fn dim_cap() -> usize {
    std::env::var("WITNESSLAB_DIM_CAP")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

fn parse_kind(kind: &str) -> Result<WitnessKind, CliFailure> {
    match kind {
        "projector" => Ok(WitnessKind::Projector),
        "gap" => Ok(WitnessKind::SpectralGap),
        other => Err(CliFailure::new(
            EXIT_USAGE,
            format!("unknown witness kind {other:?} (use projector|gap)"),
        )),
    }
}

fn parse_strategy(s: &str) -> Result<OptimizeStrategy, CliFailure> {
    if s == "single" {
        Ok(OptimizeStrategy::SingleBest)
    } else if s == "ascent" {
        Ok(OptimizeStrategy::CoordinateAscent)
    } else if let Some(k) = s.strip_prefix("random:") {
        let k = k
            .parse::<usize>()
            .map_err(|_| CliFailure::new(EXIT_USAGE, format!("bad random search size in {s:?}")))?;
        Ok(OptimizeStrategy::RandomSearch { k })
    } else {
        Err(CliFailure::new(
            EXIT_USAGE,
            format!("unknown strategy {s:?} (use single|random:<k>|ascent)"),
        ))
    }
}

fn build_for(system: &str, kind: WitnessKind) -> Result<Witness, CliFailure> {
    let spec = SystemSpec::parse(system)?;
    let ra = represent_with_cap(&spec, dim_cap())?;
    Ok(build_witness(&ra, kind)?)
}

fn spectrum_json(w: &Witness) -> serde_json::Value {
    json!(w
        .eigenspaces()
        .iter()
        .map(|e| json!({"value": sig12(e.value), "multiplicity": e.multiplicity}))
        .collect::<Vec<_>>())
}

fn kind_label(kind: WitnessKind) -> &'static str {
    match kind {
        WitnessKind::Projector => "projector",
        WitnessKind::SpectralGap => "gap",
    }
}

fn witness_to_json(w: &Witness) -> serde_json::Value {
    let kraus: Vec<serde_json::Value> = w
        .kraus()
        .iter()
        .map(|t| {
            let d = t.nrows();
            let data: Vec<[f64; 2]> = (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .map(|(i, j)| [sig12(t[(i, j)].re), sig12(t[(i, j)].im)])
                .collect();
            json!({"dim": d, "data": data})
        })
        .collect();
    json!({
        "schema_version": 1,
        "system": w.spec().label(),
        "kind": kind_label(w.kind()),
        "l_max": sig12(w.l_max()),
        "l_spectrum": spectrum_json(w),
        "kraus_symmetric": kraus,
    })
}

fn cmd_witness(action: &WitnessAction) -> Result<Report, CliFailure> {
    let (args, spectrum_only) = match action {
        WitnessAction::Build(a) => (a, false),
        WitnessAction::Spectrum(a) => (a, true),
    };
    let kind = parse_kind(&args.kind)?;
    let w = build_for(&args.system, kind)?;
    let verb = if spectrum_only {
        "witness spectrum"
    } else {
        "witness build"
    };
    let mut report =
        Report::new(verb, &[args.system.as_bytes(), args.kind.as_bytes()]).with_seed(args.seed);
    report.set_tolerance("degeneracy_grouping", DEGENERACY_TOL);
    report.set_output("system", json!(w.spec().label()));
    report.set_output("kind", json!(kind_label(kind)));
    report.set_output("l_spectrum", spectrum_json(&w));
    report.set_output("l_max", json!(sig12(w.l_max())));
    if !spectrum_only {
        let d2: usize = w.eigenspaces().iter().map(|e| e.multiplicity).sum();
        let top = w.eigenspaces().first().map(|e| e.multiplicity).unwrap_or(0);
        report.set_output("kraus_before_filter", json!(d2 - top));
        report.set_output("kraus_after_filter", json!(w.kraus().len()));
        if let Some(path) = &args.save_witness {
            std::fs::write(path, witness_to_json(&w).to_string()).map_err(Error::Io)?;
            report.set_output("witness_saved", json!(path.display().to_string()));
        }
    }
    Ok(report)
}

fn cmd_concurrence(args: &ConcurrenceArgs) -> Result<Report, CliFailure> {
    let bytes = std::fs::read(&args.state).map_err(Error::Io)?;
    let file =
        StateFile::parse(std::str::from_utf8(&bytes).map_err(|e| Error::Parse(e.to_string()))?)?;
    if let Some(system) = &args.system {
        let requested = SystemSpec::parse(system)?;
        if requested != file.system {
            return Err(Error::SpecMismatch {
                state: file.system.label(),
                witness: requested.label(),
            }
            .into());
        }
    }
    let kind = parse_kind(&args.kind)?;
    let strategy = parse_strategy(&args.strategy)?;
    let state = file.to_state()?;
    let spec = state.spec().clone();
    let ra = represent_with_cap(&spec, dim_cap())?;
    let w = build_witness(&ra, kind)?;

    let mut report = Report::new(
        "concurrence",
        &[
            &bytes,
            args.kind.as_bytes(),
            args.strategy.as_bytes(),
            &args.trials.to_le_bytes(),
        ],
    )
    .with_seed(Some(args.seed));
    report.set_tolerance("rank_eps", crate::concurrence::RANK_EPS);
    report.set_output("system", json!(spec.label()));
    report.set_output("kind", json!(kind_label(kind)));

    match state {
        LoadedState::Pure(psi) => {
            let c = crate::concurrence::concurrence_pure(&psi, &w)?;
            report.set_output("state_type", json!("pure"));
            report.set_output("concurrence", json!(sig12(c)));
        }
        LoadedState::Mixed(rho) => {
            let ts = tau_matrices(&rho, &w)?;
            let rep = optimize_y(&ts, strategy, args.seed)?;
            report.set_output("state_type", json!("mixed"));
            report.set_output("rank", json!(ts.rank()));
            report.set_output("bound", json!(sig12(rep.bound)));
            report.set_output("y", json!(sig12_vec(&rep.y)));
            report.set_output("singulars", json!(sig12_vec(&rep.singulars)));
            report.set_output("strategy", json!(args.strategy));
            if args.trials > 0 {
                let k_size = ts.rank() + 2;
                let roof = convex_roof_upper(&rho, &w, args.trials, k_size, args.seed)?;
                report.set_output("roof_upper", json!(sig12(roof)));
                report.set_output("roof_trials", json!(args.trials));
                report.set_output("roof_decomposition_size", json!(k_size));
            }
        }
    }
    Ok(report)
}

fn cmd_canonical(args: &CanonicalArgs) -> Result<Report, CliFailure> {
    let bytes = std::fs::read(&args.state).map_err(Error::Io)?;
    let file =
        StateFile::parse(std::str::from_utf8(&bytes).map_err(|e| Error::Parse(e.to_string()))?)?;
    let state = file.to_state()?;
    let psi = match state {
        LoadedState::Pure(p) => p,
        LoadedState::Mixed(_) => {
            return Err(
                Error::UnsupportedSpec("canonical forms apply to pure states".into()).into(),
            )
        }
    };
    let coeffs = canonical_coeffs(&psi)?;
    let nonent = coeffs.effective_rank(DEFAULT_NONENTANGLED_TOL) == 1;
    let mut report = Report::new("canonical", &[&bytes]);
    report.set_tolerance("nonentangled", DEFAULT_NONENTANGLED_TOL);
    report.set_output("system", json!(psi.spec().label()));
    report.set_output(
        "form",
        json!(match coeffs.kind {
            CanonicalKind::Schmidt => "schmidt",
            CanonicalKind::Slater => "slater",
            CanonicalKind::Takagi => "takagi",
        }),
    );
    report.set_output("coefficients", json!(sig12_vec(&coeffs.values)));
    report.set_output("nonentangled", json!(nonent));
    Ok(report)
}

/// Closed-form spectrum `(value, multiplicity)` descending, plus the Casimir
/// constant, for one member of a supported family.
type FamilyForms = (Vec<(f64, usize)>, f64, SystemSpec);

fn closed_forms(family: &str, n: usize) -> Result<FamilyForms, CliFailure> {
    let nf = n as f64;
    match family {
        "dist" => {
            let lam_a = 2.0 - 4.0 / (nf * nf);
            let spectrum = vec![
                (lam_a + 2.0 / nf, (n * (n + 1) / 2) * (n * (n + 1) / 2)),
                (lam_a, n * n * (n * n - 1) / 2),
                (lam_a - 2.0 / nf, (n * (n - 1) / 2) * (n * (n - 1) / 2)),
            ];
            Ok((
                spectrum,
                1.0 - 1.0 / (nf * nf),
                SystemSpec::distinguishable(&[n, n]),
            ))
        }
        "boson" => {
            let base = 2.0 - 8.0 / (nf * nf);
            let d = n * (n + 1) / 2;
            let spectrum = vec![
                (base + 6.0 / nf, (n + 3) * (n + 2) * (n + 1) * n / 24),
                (base + 2.0 / nf, d * (d - 1) / 2),
                (base, n * n * (n * n - 1) / 12),
            ];
            Ok((
                spectrum,
                1.0 - 2.0 / (nf * nf) + 1.0 / nf,
                SystemSpec::boson(n),
            ))
        }
        "fermion" => {
            let base = 2.0 - 8.0 / (nf * nf);
            let e = n * (n - 1) / 2;
            let spectrum = vec![
                (base, n * n * (n * n - 1) / 12),
                (base - 2.0 / nf, e * (e - 1) / 2),
                (
                    base - 6.0 / nf,
                    if n >= 4 {
                        n * (n - 1) * (n - 2) * (n - 3) / 24
                    } else {
                        0
                    },
                ),
            ];
            Ok((
                spectrum,
                1.0 - 2.0 / (nf * nf) - 1.0 / nf,
                SystemSpec::fermion(n),
            ))
        }
        other => Err(CliFailure::new(
            EXIT_USAGE,
            format!("unknown family {other:?} (use dist|boson|fermion)"),
        )),
    }
}

fn cmd_verify_appendix(args: &VerifyArgs) -> Result<Report, CliFailure> {
    const TOL: f64 = 1e-9;
    if args.nmax < 2 {
        return Err(CliFailure::new(EXIT_USAGE, "--nmax must be at least 2"));
    }
    let mut checks: Vec<serde_json::Value> = Vec::new();
    let fail = |name: String, detail: String| -> CliFailure {
        CliFailure::new(
            EXIT_VERIFY,
            format!("verification failed: {name}: {detail}"),
        )
    };

    for n in 2..=args.nmax {
        let (expected, casimir_const, spec) = closed_forms(&args.system, n)?;
        let expected: Vec<(f64, usize)> = expected.into_iter().filter(|(_, m)| *m > 0).collect();
        let ra = represent_with_cap(&spec, dim_cap())?;

        // Casimir constant.
        let c2 = crate::witness::casimir(&ra);
        let dev = max_abs(&(c2 - crate::linalg::eye(ra.dim()).scale(casimir_const)));
        let name = format!("{}[N={n}] casimir", args.system);
        if dev > TOL {
            return Err(fail(
                name,
                format!("deviation {dev:.3e} from {casimir_const}"),
            ));
        }
        checks.push(json!({"name": name, "status": "pass", "deviation": sig12(dev)}));

        // Spectrum of L.
        let w = build_witness(&ra, WitnessKind::Projector)?;
        let name = format!("{}[N={n}] spectrum", args.system);
        let got: Vec<(f64, usize)> = w
            .eigenspaces()
            .iter()
            .map(|e| (e.value, e.multiplicity))
            .collect();
        if got.len() != expected.len() {
            return Err(fail(
                name,
                format!(
                    "found {} distinct eigenvalues, expected {}",
                    got.len(),
                    expected.len()
                ),
            ));
        }
        for ((gv, gm), (ev, em)) in got.iter().zip(&expected) {
            if (gv - ev).abs() > TOL || gm != em {
                return Err(fail(name, format!("({gv}, {gm}) vs expected ({ev}, {em})")));
            }
        }
        checks.push(json!({"name": name, "status": "pass"}));

        // Explicit projector equals the eigenprojector.
        let name = format!("{}[N={n}] projector", args.system);
        let p = projector_appendix(&spec)?;
        let dev = max_abs(&(w.a_matrix() - &p));
        if dev > TOL {
            return Err(fail(name, format!("projectors differ by {dev:.3e}")));
        }
        checks.push(json!({"name": name, "status": "pass", "deviation": sig12(dev)}));
    }

    let mut report = Report::new(
        "verify appendix",
        &[args.system.as_bytes(), &args.nmax.to_le_bytes()],
    );
    report.set_tolerance("identity", TOL);
    report.set_output("family", json!(args.system));
    report.set_output("nmax", json!(args.nmax));
    report.set_output("checks", json!(checks));
    Ok(report)
}

/// Run a parsed command to a report.
pub fn run(cli: &Cli) -> Result<Report, CliFailure> {
    match &cli.command {
        Command::Witness { action } => cmd_witness(action),
        Command::Concurrence(args) => cmd_concurrence(args),
        Command::Canonical(args) => cmd_canonical(args),
        Command::Verify {
            action: VerifyAction::Appendix(args),
        } => cmd_verify_appendix(args),
    }
}

fn out_path(cli: &Cli) -> Option<PathBuf> {
    match &cli.command {
        Command::Witness {
            action: WitnessAction::Build(a) | WitnessAction::Spectrum(a),
        } => a.out.clone(),
        Command::Concurrence(a) => a.out.clone(),
        Command::Canonical(a) => a.out.clone(),
        Command::Verify {
            action: VerifyAction::Appendix(a),
        } => a.out.clone(),
    }
}

/// Parse-free entry point: runs the command, writes the report, returns the
/// process exit code.
pub fn run_to_completion(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(report) => {
            let text = format!("{}\n", report.to_json());
            match out_path(cli) {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                None => print!("{text}"),
            }
            0
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}
