//! The `qcorr` command line: `state`, `measure`, `sweep`, `verify`.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! 0 success, 1 verification failure, 2 input error, 3 dimension or
//! semantic mismatch.

pub mod files;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::density::{BipartiteState, DensityMatrix, PureVector};
use crate::detector::{sweep, SweepGrid};
use crate::error::Error;
use crate::measures::{
    chsh_max, concurrence_wootters, cq_commutator_defect, discord_d3, discord_given_measurement,
    discord_projective_opt, fidelity, is_classical_quantum, mutual_information, ppt_check, schmidt_decompose,
    shannon_entropy, vn_entropy, ProjectiveMeasurement,
};
use crate::states::{Bell, StateSpec};
use crate::verify::{self, Suite};
use files::{fmt_f64, read_state, write_state, write_sweep_csv, write_sweep_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Tolerance of the CQ test reported by `measure classical-cq`.
const CQ_TOL: f64 = 1e-9;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Self { code: EXIT_MISMATCH, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionMismatch { .. } | Error::Unsupported(_) => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "qcorr", version, about = "Quantum correlation measures and the two-detector X-state")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named state and write it as a JSON state file.
    State(StateArgs),
    /// Evaluate a measure on a state file.
    Measure(MeasureArgs),
    /// Sweep the detector model over (Ωσ, L/σ).
    Sweep(SweepArgs),
    /// Run the seeded invariant checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Classical,
    Bell,
    Singlet,
    Werner,
    PseudoPure,
    Tile,
    TilesBound,
    Cq,
    RandomDensity,
    RandomPure,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BellArg {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl From<BellArg> for Bell {
    fn from(b: BellArg) -> Self {
        match b {
            BellArg::PhiPlus => Bell::PhiPlus,
            BellArg::PhiMinus => Bell::PhiMinus,
            BellArg::PsiPlus => Bell::PsiPlus,
            BellArg::PsiMinus => Bell::PsiMinus,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum StateFormat {
    #[default]
    Json,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    pub family: Family,
    /// Mixing weight for werner and pseudo-pure.
    #[arg(long)]
    pub p: Option<f64>,
    /// Bell vector for bell and pseudo-pure.
    #[arg(long, value_enum, default_value = "psi-minus")]
    pub which: BellArg,
    /// Tile label 1..=9, or 10 for the stopper.
    #[arg(long)]
    pub index: Option<usize>,
    /// Probability table, rows separated by ';', e.g. "0.4,0.1;0.2,0.3".
    #[arg(long)]
    pub probs: Option<String>,
    /// Weights of the A basis states for cq, e.g. "0.7,0.3".
    #[arg(long)]
    pub alphas: Option<String>,
    /// Diagonals of the conditional states for cq, e.g. "1,0;0.5,0.5".
    #[arg(long)]
    pub taus: Option<String>,
    /// Subsystem dimensions for random states, e.g. "2,3".
    #[arg(long, default_value = "2,2")]
    pub dims: String,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: StateFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureName {
    Entropy,
    MutualInfo,
    Fidelity,
    Schmidt,
    Concurrence,
    Ppt,
    Chsh,
    D3,
    DiscordOpt,
    ClassicalCq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum BasisArg {
    Computational,
    #[default]
    Eigen,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub name: MeasureName,
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub state2: Option<PathBuf>,
    /// Measurement basis on A for d3.
    #[arg(long, value_enum, default_value = "eigen")]
    pub basis: BasisArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub eps0: f64,
    #[arg(long)]
    pub omega_sigma_min: f64,
    #[arg(long)]
    pub omega_sigma_max: f64,
    #[arg(long)]
    pub omega_sigma_steps: usize,
    #[arg(long)]
    pub l_min: f64,
    #[arg(long)]
    pub l_max: f64,
    #[arg(long)]
    pub l_steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Multiplies every tolerance; used to exercise the failure path.
    #[arg(long, default_value_t = 1.0, hide = true)]
    pub tolerance_scale: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Core,
    Measures,
    Detector,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Core => Suite::Core,
            SuiteArg::Measures => Suite::Measures,
            SuiteArg::Detector => Suite::Detector,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Parse arguments and run, writing to the given streams. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::State(a) => cmd_state(&a, stdout),
        Command::Measure(a) => cmd_measure(&a, stdout),
        Command::Sweep(a) => cmd_sweep(&a, stdout),
        Command::Verify(a) => cmd_verify(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::input(format!("not a number: {t:?}"))))
        .collect()
}

fn parse_table(s: &str) -> CliResult<Vec<Vec<f64>>> {
    s.split(';').map(parse_list).collect()
}

fn parse_dims(s: &str) -> CliResult<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse =
        |t: &str| t.trim().parse::<usize>().map_err(|_| CliError::input(format!("bad dimension {t:?}")));
    match parts.as_slice() {
        [a, b] => Ok((parse(a)?, parse(b)?)),
        _ => Err(CliError::input(format!("dims must look like \"2,3\", got {s:?}"))),
    }
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::input(format!("missing --{flag}")))
}

fn state_spec(a: &StateArgs) -> CliResult<StateSpec> {
    Ok(match a.family {
        Family::Classical => StateSpec::Classical {
            p: parse_table(a.probs.as_deref().ok_or_else(|| CliError::input("missing --probs"))?)?,
        },
        Family::Bell => StateSpec::Bell { which: a.which.into() },
        Family::Singlet => StateSpec::Bell { which: Bell::PsiMinus },
        Family::Werner => StateSpec::Werner { p: require(a.p, "p")? },
        Family::PseudoPure => StateSpec::PseudoPure { which: a.which.into(), p: require(a.p, "p")? },
        Family::Tile => StateSpec::TileVector { index: require(a.index, "index")? },
        Family::TilesBound => StateSpec::TileBoundEntangled,
        Family::Cq => StateSpec::Cq {
            alphas: parse_list(a.alphas.as_deref().ok_or_else(|| CliError::input("missing --alphas"))?)?,
            tau_diagonals: parse_table(a.taus.as_deref().ok_or_else(|| CliError::input("missing --taus"))?)?,
        },
        Family::RandomDensity => {
            let (dim_a, dim_b) = parse_dims(&a.dims)?;
            StateSpec::RandomDensity { dim_a, dim_b, rank: a.rank.unwrap_or(dim_a * dim_b), seed: a.seed }
        }
        Family::RandomPure => {
            let (dim_a, dim_b) = parse_dims(&a.dims)?;
            StateSpec::RandomPure { dim_a, dim_b, seed: a.seed }
        }
    })
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::input(e.to_string())),
    }
}

fn cmd_state(a: &StateArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let spec = state_spec(a)?;
    let rho = spec.build().map_err(|e| CliError::input(e.to_string()))?;
    log::info!("built {:?} with dims {:?}", a.family, rho.dims());
    match a.format {
        StateFormat::Json => emit(a.out.as_deref(), &write_state(&rho), stdout)?,
    }
    Ok(EXIT_OK)
}

fn load(path: &Path) -> CliResult<BipartiteState> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    read_state(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Named scalar outputs of a measure, in print order.
struct Outcome {
    name: &'static str,
    fields: Vec<(&'static str, serde_json::Value)>,
}

fn num(x: f64) -> serde_json::Value {
    json!(x)
}

fn cmd_measure(a: &MeasureArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let rho = load(&a.state)?;
    let name = measure_label(a.name);
    let fields: Vec<(&'static str, serde_json::Value)> = match a.name {
        MeasureName::Entropy => vec![("value", num(vn_entropy(rho.density())))],
        MeasureName::MutualInfo => vec![("value", num(mutual_information(&rho)))],
        MeasureName::Fidelity => {
            let path = a.state2.as_ref().ok_or_else(|| CliError::input("fidelity needs --state2"))?;
            let sigma = load(path)?;
            if sigma.dims() != rho.dims() {
                return Err(CliError::mismatch(format!(
                    "dimension mismatch: {:?} vs {:?}",
                    rho.dims(),
                    sigma.dims()
                )));
            }
            vec![("value", num(fidelity(rho.density(), sigma.density())?))]
        }
        MeasureName::Schmidt => {
            let psi = dominant_vector(rho.density())?;
            let (da, db) = rho.dims();
            let sd = schmidt_decompose(&psi, da, db)?;
            let weights: Vec<f64> = sd.coefficients.iter().map(|c| c * c).collect();
            vec![("value", num(shannon_entropy(&weights))), ("coefficients", json!(sd.coefficients))]
        }
        MeasureName::Concurrence => vec![("value", num(concurrence_wootters(&rho)?))],
        MeasureName::Ppt => {
            let r = ppt_check(&rho);
            vec![
                ("value", num(r.negativity)),
                ("is_ppt", json!(r.is_ppt)),
                ("min_eigenvalue", num(r.min_eigenvalue)),
            ]
        }
        MeasureName::Chsh => vec![("value", num(chsh_max(&rho)?))],
        MeasureName::D3 => match a.basis {
            BasisArg::Eigen => {
                let r = discord_d3(&rho);
                vec![("value", num(r.value)), ("degenerate", json!(r.degeneracy_flag))]
            }
            BasisArg::Computational => {
                let m = ProjectiveMeasurement::computational(rho.dim_a());
                vec![("value", num(discord_given_measurement(&rho, &m)?))]
            }
        },
        MeasureName::DiscordOpt => vec![("value", num(discord_projective_opt(&rho)?))],
        MeasureName::ClassicalCq => {
            let c = is_classical_quantum(&rho, CQ_TOL);
            let verdict = serde_json::to_value(c.verdict).expect("verdict serializes");
            vec![
                ("value", num(c.d3.value)),
                ("verdict", verdict),
                ("degenerate", json!(c.d3.degeneracy_flag)),
                ("commutator_defect", num(cq_commutator_defect(&rho))),
            ]
        }
    };
    let out = Outcome { name, fields };
    let text = if a.json { render_json(&out) } else { render_text(&out) };
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::input(e.to_string()))?;
    Ok(EXIT_OK)
}

fn measure_label(m: MeasureName) -> &'static str {
    match m {
        MeasureName::Entropy => "entropy",
        MeasureName::MutualInfo => "mutual-info",
        MeasureName::Fidelity => "fidelity",
        MeasureName::Schmidt => "schmidt",
        MeasureName::Concurrence => "concurrence",
        MeasureName::Ppt => "ppt",
        MeasureName::Chsh => "chsh",
        MeasureName::D3 => "d3",
        MeasureName::DiscordOpt => "discord-opt",
        MeasureName::ClassicalCq => "classical-cq",
    }
}

fn text_value(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) => fmt_f64(n.as_f64().unwrap_or(f64::NAN)),
        serde_json::Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(text_value).collect();
            format!("[{}]", parts.join(","))
        }
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(o: &Outcome) -> String {
    let mut line = String::from(o.name);
    for (k, v) in &o.fields {
        if *k == "value" {
            line.push(' ');
            line.push_str(&text_value(v));
        } else {
            line.push_str(&format!(" {k}={}", text_value(v)));
        }
    }
    line.push('\n');
    line
}

fn render_json(o: &Outcome) -> String {
    let mut map = serde_json::Map::new();
    map.insert("measure".into(), json!(o.name));
    for (k, v) in &o.fields {
        map.insert((*k).into(), v.clone());
    }
    let mut s = serde_json::to_string(&serde_json::Value::Object(map)).expect("json");
    s.push('\n');
    s
}

/// The state as a vector, when it is pure to 1e-8.
fn dominant_vector(rho: &DensityMatrix) -> CliResult<PureVector> {
    let spec = rho.spectrum();
    if spec.eigenvalues[0] < 1.0 - 1e-8 {
        return Err(CliError::mismatch(format!(
            "schmidt needs a pure state (largest eigenvalue {})",
            spec.eigenvalues[0]
        )));
    }
    Ok(PureVector::normalized(spec.vector(0))?)
}

fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let grid = SweepGrid::linspace(
        (a.omega_sigma_min, a.omega_sigma_max, a.omega_sigma_steps),
        (a.l_min, a.l_max, a.l_steps),
        a.eps0,
    )
    .map_err(|e| CliError::input(e.to_string()))?;
    let rows = sweep(&grid).map_err(|e| CliError::input(e.to_string()))?;
    let text = match a.format {
        TableFormat::Csv => write_sweep_csv(&rows),
        TableFormat::Json => write_sweep_json(&rows),
    };
    emit(a.out.as_deref(), &text, stdout)?;
    if let Some(path) = &a.svg {
        std::fs::write(path, svg::render_heatmap(&grid, &rows))
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let report = verify::run(a.suite.into(), a.seed, a.tolerance_scale);
    stdout.write_all(report.render().as_bytes()).map_err(|e| CliError::input(e.to_string()))?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_VERIFY })
}
