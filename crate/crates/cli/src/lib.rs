//! Command-line front end for `tripartite-core`.
//!
//! Couplings `g`, `g̃` and the drive `Ω` are angular frequencies in any
//! consistent unit; only ratios and products such as `g·t` matter.
//!
//! Exit codes: 0 success, 1 physics or verification failure (or I/O
//! failure), 2 usage error.

pub mod csv_io;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use tripartite_core::analysis::{
    multiplicities, principal_arg, spectrum_report, sweep_peak, SweepRow,
};
use tripartite_core::hamiltonians::{CouplingParams, Topology, Variant};
use tripartite_core::protocols::{self, phase_alpha, ProtocolName};
use tripartite_core::tolerances::{CLI_PHASE, CLI_SPECTRUM, FIDELITY_DEFICIT};
use tripartite_core::verify::{self, Group, VerifyOptions};
use tripartite_core::{states, Complex, Error as CoreError};

use crate::csv_io::CsvError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tripartite",
    version,
    about = "Single-step GHZ and W state preparation on three exchange-coupled qubits",
    after_help = "Only ratios and products such as g*t are physical; pick any unit for g."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerical vs closed-form spectrum of the coupling Hamiltonian.
    Spectrum(SpectrumArgs),
    /// Run one protocol at its closed-form gate time.
    Run(RunArgs),
    /// Scan the free-evolution time of a protocol and write CSV.
    Sweep(SweepArgs),
    /// Run the full reproduction checklist.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TopologyArg {
    Triangular,
    Linear,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Triangular => Topology::Triangular,
            TopologyArg::Linear => Topology::LinearChain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    GhzTriangular,
    GhzLinear,
    WRabi,
    GhzIsotropic,
    WGeneralized,
}

impl From<ProtocolArg> for ProtocolName {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::GhzTriangular => ProtocolName::GhzTriangular,
            ProtocolArg::GhzLinear => ProtocolName::GhzLinear,
            ProtocolArg::WRabi => ProtocolName::WRabi,
            ProtocolArg::GhzIsotropic => ProtocolName::GhzIsotropic,
            ProtocolArg::WGeneralized => ProtocolName::WGeneralized,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Couplings {
    /// Transverse (XX + YY) coupling.
    #[arg(long)]
    pub g: f64,
    /// Longitudinal (ZZ) coupling [default: 0, or g for ghz-isotropic].
    #[arg(long = "gtilde")]
    pub g_tilde: Option<f64>,
    /// Rabi drive amplitude [default: protocol-determined].
    #[arg(long)]
    pub omega: Option<f64>,
    /// Coupling graph [default: triangular, or linear for ghz-linear].
    #[arg(long, value_enum)]
    pub topology: Option<TopologyArg>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub couplings: Couplings,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    #[command(flatten)]
    pub couplings: Couplings,
    #[arg(long, value_enum)]
    pub protocol: ProtocolArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub couplings: Couplings,
    #[arg(long, value_enum)]
    pub protocol: ProtocolArg,
    #[arg(long = "t-min", default_value_t = 0.0)]
    pub t_min: f64,
    #[arg(long = "t-max")]
    pub t_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub steps: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Format of the table printed to standard output when no --out is given.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Allow ghz-linear with g~ != 0, to measure how far it falls short.
    #[arg(long)]
    pub diagnostic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Spectra,
    Protocols,
    Analytic,
    Nogo,
    Structure,
    Numerics,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Spectra => Group::Spectra,
            GroupArg::Protocols => Group::Protocols,
            GroupArg::Analytic => Group::Analytic,
            GroupArg::Nogo => Group::NoGo,
            GroupArg::Structure => Group::Structure,
            GroupArg::Numerics => Group::Numerics,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Run a single group of criteria.
    #[arg(long, value_enum)]
    pub only: Option<GroupArg>,
    /// Coupling for the injected g~ = g case of the no-go check.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Physics(CoreError),
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Csv(CsvError::Empty) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::WrongTopology { .. }
            | CoreError::UnsupportedVariant
            | CoreError::ConflictingOmega { .. }
            | CoreError::InvalidGrid
            | CoreError::NegativeDuration(_)
            | CoreError::NonFinite(_) => CliError::Usage(e.to_string()),
            other => CliError::Physics(other),
        }
    }
}

type CliResult = Result<u8, CliError>;

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be finite (got {x})"
        )))
    }
}

impl Couplings {
    /// Resolves defaults against the protocol, if any.
    pub fn params(&self, protocol: Option<ProtocolName>) -> Result<CouplingParams, CliError> {
        let g = finite("g", self.g)?;
        let g_tilde = match (self.g_tilde, protocol) {
            (Some(gt), Some(ProtocolName::GhzIsotropic)) if gt != g => {
                return Err(CliError::Usage(format!(
                    "ghz-isotropic requires g~ = g (got g = {g}, g~ = {gt})"
                )))
            }
            (Some(gt), _) => finite("gtilde", gt)?,
            (None, Some(ProtocolName::GhzIsotropic)) => g,
            (None, _) => 0.0,
        };
        let topology = match (self.topology, protocol) {
            (Some(t), _) => t.into(),
            (None, Some(ProtocolName::GhzLinear)) => Topology::LinearChain,
            (None, _) => Topology::Triangular,
        };
        let mut p = CouplingParams::new(g, g_tilde, topology);
        if let Some(om) = self.omega {
            p = p.with_omega(finite("omega", om)?);
        }
        Ok(p)
    }
}

/// Rounding residue below the printed precision shows as 0, not -0.
fn tidy(x: f64) -> f64 {
    if x.abs() < 5e-16 {
        0.0
    } else {
        x
    }
}

pub fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> CliResult {
    let p = args.couplings.params(None)?;
    let variant = if args.couplings.omega.is_some() {
        Variant::Rabi
    } else {
        Variant::Bare
    };
    let report = spectrum_report(&p, variant)?;
    match args.format {
        Format::Csv => {
            writeln!(out, "index,numeric,analytic,difference")?;
            for (k, r) in report.rows.iter().enumerate() {
                writeln!(
                    out,
                    "{k},{:.15e},{:.15e},{:.15e}",
                    r.numeric, r.analytic, r.difference
                )?;
            }
        }
        Format::Text => {
            let omega = if variant == Variant::Rabi {
                format!(", omega = {}", p.omega)
            } else {
                String::new()
            };
            writeln!(
                out,
                "spectrum: {} coupling, g = {}, g~ = {}{omega}",
                p.topology, p.g, p.g_tilde
            )?;
            writeln!(
                out,
                "{:>3}  {:>22}  {:>22}  {:>10}",
                "k", "numeric", "closed form", "|diff|"
            )?;
            for (k, r) in report.rows.iter().enumerate() {
                writeln!(
                    out,
                    "{k:>3}  {:>22.15}  {:>22.15}  {:>10.3e}",
                    tidy(r.numeric),
                    tidy(r.analytic),
                    r.difference
                )?;
            }
            let numeric: Vec<f64> = report.rows.iter().map(|r| tidy(r.numeric)).collect();
            let groups: Vec<String> = multiplicities(&numeric, 1e-8)
                .into_iter()
                .map(|(v, n)| format!("{v:.12} x{n}"))
                .collect();
            writeln!(out, "levels: {}", groups.join(", "))?;
            writeln!(
                out,
                "max difference: {:.3e} (threshold {CLI_SPECTRUM:.0e})",
                report.max_difference
            )?;
        }
    }
    Ok(if report.max_difference < CLI_SPECTRUM {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn phase_text(z: Option<Complex>) -> String {
    match z {
        Some(z) => format!(
            "{:+.12} {:+.12}i (arg {:+.12})",
            z.re,
            z.im,
            principal_arg(z)
        ),
        None => "unspecified".into(),
    }
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> CliResult {
    let name: ProtocolName = args.protocol.into();
    let p = args.couplings.params(Some(name))?;
    let protocol = protocols::build(name, &p)?;
    let result = protocols::execute(&protocol, &states::ground())?;
    let passed = result.passes(FIDELITY_DEFICIT, CLI_PHASE);
    let spec = &protocol.spec;
    let alpha = phase_alpha(spec);
    match args.format {
        Format::Csv => {
            writeln!(
                out,
                "protocol,entangling_time,fidelity,phase_arg,predicted_arg,alpha,phase_error"
            )?;
            let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.15e}"));
            writeln!(
                out,
                "{name},{:.15e},{:.15e},{},{},{},{}",
                spec.entangling_time,
                result.fidelity,
                opt(result.measured_phase.map(principal_arg)),
                opt(result.predicted_phase.map(principal_arg)),
                opt(alpha),
                opt(result.phase_error),
            )?;
        }
        Format::Text => {
            writeln!(out, "protocol:        {name}")?;
            writeln!(
                out,
                "couplings:       {} coupling, g = {}, g~ = {}, omega = {}",
                spec.params.topology, spec.params.g, spec.params.g_tilde, spec.params.omega
            )?;
            writeln!(
                out,
                "gate time:       {:.15}  [{}]",
                spec.entangling_time,
                name.time_formula()
            )?;
            writeln!(out, "fidelity:        {:.15}", result.fidelity)?;
            writeln!(out, "1 - fidelity:    {:.3e}", 1.0 - result.fidelity)?;
            writeln!(
                out,
                "measured phase:  {}",
                phase_text(result.measured_phase)
            )?;
            writeln!(
                out,
                "predicted phase: {}  [{}]",
                phase_text(result.predicted_phase),
                name.phase_formula()
            )?;
            if let Some(a) = alpha {
                writeln!(
                    out,
                    "alpha:           {a:.15} ({:.12} pi)",
                    a / std::f64::consts::PI
                )?;
            }
            if let Some(err) = result.phase_error {
                writeln!(out, "phase error:     {err:.3e}")?;
            }
            writeln!(
                out,
                "result:          {}",
                if passed { "PASS" } else { "FAIL" }
            )?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
}

fn row_text(r: &SweepRow) -> String {
    format!(
        "t = {:.15}, fidelity_target = {:.15}, fidelity_ghz = {:.15}, fidelity_w = {:.15}, phase_arg = {:+.15}",
        r.t, r.fidelity_target, r.fidelity_ghz, r.fidelity_w, r.phase_arg
    )
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let name: ProtocolName = args.protocol.into();
    let t_min = finite("t-min", args.t_min)?;
    let t_max = finite("t-max", args.t_max)?;
    if args.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2 (got {})",
            args.steps
        )));
    }
    if t_max <= t_min {
        return Err(CliError::Usage(format!(
            "--t-max must exceed --t-min (got {t_min} .. {t_max})"
        )));
    }
    if t_min < 0.0 {
        return Err(CliError::Usage(format!(
            "--t-min must be non-negative (got {t_min})"
        )));
    }
    let p = args.couplings.params(Some(name))?;
    let protocol = match (name, args.diagnostic) {
        (ProtocolName::GhzLinear, true) => protocols::ghz_linear_diagnostic(&p)?,
        (_, true) => {
            return Err(CliError::Usage(
                "--diagnostic only applies to ghz-linear".into(),
            ));
        }
        _ => protocols::build(name, &p)?,
    };
    let rows = tripartite_core::analysis::time_sweep(
        &protocol,
        &states::ground(),
        t_min,
        t_max,
        args.steps,
    )?;

    // Keep stdout clean for the table when it carries the data.
    let report: &mut dyn Write = match &args.out {
        Some(path) => {
            csv_io::write_csv(&rows, path)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
            out
        }
        None => {
            match args.format {
                Format::Csv => csv_io::write_rows(&rows, &mut *out, Path::new("<stdout>"))?,
                Format::Text => {
                    for r in &rows {
                        writeln!(out, "{}", row_text(r))?;
                    }
                }
            }
            err
        }
    };
    if let Some(peak) = sweep_peak(&rows) {
        writeln!(
            report,
            "argmax (row {}): {}",
            peak.index,
            row_text(&peak.row)
        )?;
        if let Some(prev) = peak.previous {
            writeln!(report, "  previous: {}", row_text(&prev))?;
        }
        if let Some(next) = peak.next {
            writeln!(report, "  next:     {}", row_text(&next))?;
        }
        writeln!(
            report,
            "closed-form gate time {:.15} [{}], grid step {:.3e}",
            protocol.spec.entangling_time,
            name.time_formula(),
            peak.step
        )?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let opts = VerifyOptions {
        only: args.only.map(Into::into),
        isotropic_g: finite("g", args.g)?,
        ..VerifyOptions::default()
    };
    if opts.isotropic_g == 0.0 {
        return Err(CliError::Usage("--g must be nonzero".into()));
    }
    let results = verify::run(&opts);
    match args.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut *out);
            w.write_record(["id", "group", "title", "passed", "detail"])
                .map_err(io::Error::other)?;
            for c in &results {
                w.write_record([
                    c.id.to_string(),
                    c.group.to_string(),
                    c.title.to_string(),
                    c.passed.to_string(),
                    c.detail.clone(),
                ])
                .map_err(io::Error::other)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for c in &results {
                writeln!(
                    out,
                    "{} [{:>2}] {:<10} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.group,
                    c.title,
                    c.detail
                )?;
            }
            let passed = results.iter().filter(|c| c.passed).count();
            writeln!(out, "{passed}/{} criteria passed", results.len())?;
        }
    }
    Ok(if verify::all_passed(&results) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Run(a) => cmd_run(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn usage(command: &Command) -> String {
    let name = match command {
        Command::Spectrum(_) => "spectrum",
        Command::Run(_) => "run",
        Command::Sweep(_) => "sweep",
        Command::Verify(_) => "verify",
    };
    let mut cmd = Cli::command();
    cmd.build();
    match cmd.find_subcommand_mut(name) {
        Some(sub) => sub.render_usage().to_string(),
        None => cmd.render_usage().to_string(),
    }
}

/// Parses `args` (program name first), runs the command, returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Usage(_) = e {
                let _ = writeln!(err, "{}", usage(&cli.command));
            }
            e.exit_code()
        }
    }
}
