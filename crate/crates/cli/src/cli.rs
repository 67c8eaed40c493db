//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on usage errors (unknown
//! flags, out-of-range numbers), 3 on domain errors raised by the solvers
//! (for example a missing critical point for the axis normalizer).

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

use quasispin_core::sweep::{default_theta_range, theta_normalizer, PhaseMapConfig, SweepConfig};
use quasispin_core::{
    compare_meanfield, coupling_constants, critical_temperatures, transition_amplitude,
    validity_report, Level, MicroscopicLevels, ModelParams, ThermoPoint, Variant,
};

use crate::config;
use crate::format::{thermo_row, Cell, OutputFormat, Table, DEFAULT_PRECISION, THERMO_COLUMNS};
use crate::par;
use crate::plot;

/// Failure of a command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments; nothing was computed.
    #[error("{0}")]
    Usage(String),
    /// The solvers rejected the request.
    #[error(transparent)]
    Model(#[from] quasispin_core::Error),
    /// Reading or writing a file failed.
    #[error("{}: {source}", path.display())]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: io::Error,
    },
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "quasispin",
    version,
    about = "Phase transition of quasi-spins with a temperature-dependent two-photon exchange integral",
    long_about = "Phase transition of quasi-spins with a temperature-dependent two-photon exchange integral.\n\n\
        Units: hbar = 1 and k_B = 1. Temperatures (theta = k_B T) and frequencies share one energy \
        unit; all defaults take omega21 = 1.",
    args_override_self = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Temperature sweep of order parameter, free energy and inversion
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Critical temperatures and validity checks at each root
    #[command(allow_negative_numbers = true)]
    Critical(CriticalArgs),
    /// Ordered/disordered map over (chi/omega21, theta)
    #[command(allow_negative_numbers = true)]
    Phase(PhaseArgs),
    /// Order parameter against theta/theta_cr for several coupling ratios, both models
    #[command(allow_negative_numbers = true)]
    Fig1(Fig1Args),
    /// Inversion from the gap solution and from the Hamiltonian minimum, both models
    #[command(allow_negative_numbers = true)]
    Fig2(Fig2Args),
    /// Exact finite-N Gibbs inversion against the mean-field value
    #[command(name = "exact-compare", allow_negative_numbers = true)]
    ExactCompare(ExactArgs),
    /// Two-photon amplitude and the exchange/decay constants it induces
    #[command(allow_negative_numbers = true)]
    Micro(MicroArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Proposed,
    Traditional,
    Both,
}

impl VariantArg {
    fn variants(self) -> &'static [Variant] {
        match self {
            VariantArg::Proposed => &[Variant::Proposed],
            VariantArg::Traditional => &[Variant::Traditional],
            VariantArg::Both => &[Variant::Proposed, Variant::Traditional],
        }
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("{x} must be a finite number > 0")),
        Err(e) => Err(e.to_string()),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("{x} must be a finite number >= 0")),
        Err(e) => Err(e.to_string()),
    }
}

fn finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(x) => Err(format!("{x} must be finite")),
        Err(e) => Err(e.to_string()),
    }
}

fn unit_ratio(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x < 1.0 => Ok(x),
        Ok(x) => Err(format!("{x} must lie in (0, 1)")),
        Err(e) => Err(e.to_string()),
    }
}

fn tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x <= 1e-3 => Ok(x),
        Ok(x) => Err(format!("{x} must lie in (0, 1e-3]")),
        Err(e) => Err(e.to_string()),
    }
}

fn atom_count(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(n) if (2..=quasispin_core::exact::MAX_ATOMS).contains(&n) => Ok(n),
        Ok(n) => Err(format!("{n} must lie in [2, 1000000]")),
        Err(e) => Err(e.to_string()),
    }
}

fn level(s: &str) -> Result<Level, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| finite(p.trim()))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [proj1, proj2, omega_a1, omega_2a] => Ok(Level {
            proj1,
            proj2,
            omega_a1,
            omega_2a,
        }),
        _ => Err("expected four comma-separated numbers: proj1,proj2,omega_a1,omega_2a".into()),
    }
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Atomic transition frequency omega21 [energy]
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    omega21: f64,
    /// Cavity photon frequency omega_k in the thermal occupation [energy; default omega21/2]
    #[arg(long, value_parser = positive)]
    omega_k: Option<f64>,
    /// Number of atoms N used by validity reports [dimensionless]
    #[arg(long, default_value_t = 100, value_parser = atom_count)]
    n_atoms: u64,
}

impl ModelArgs {
    fn params(&self, chi_ratio: f64, variant: Variant) -> Result<ModelParams, CliError> {
        let n_atoms = u32::try_from(self.n_atoms).map_err(|_| usage("--n-atoms is too large"))?;
        Ok(ModelParams::new(
            self.omega21,
            chi_ratio * self.omega21,
            self.omega_k.unwrap_or(0.5 * self.omega21),
            n_atoms,
            variant,
        )?)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file [path; default standard output]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format [csv|json]
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Significant digits of floats [6..=17]
    #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u8).range(6..=17).map(usize::from))]
    precision: usize,
    /// Worker threads [count; 0 = all cores]
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Flat key = value configuration file; command-line flags override it [path]
    #[arg(long)]
    config: Option<PathBuf>,
}

impl OutputArgs {
    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Coupling ratio chi/omega21 [dimensionless, > 0]
    #[arg(long, value_parser = positive)]
    chi_ratio: f64,
    /// Model to sweep
    #[arg(long, value_enum, default_value = "proposed")]
    variant: VariantArg,
    /// First temperature [energy, >= 0]
    #[arg(long, default_value_t = 0.0, value_parser = non_negative)]
    theta_min: f64,
    /// Last temperature [energy; default max(2 omega21, 3 theta_cr of the constant-coupling model)]
    #[arg(long, value_parser = positive)]
    theta_max: Option<f64>,
    /// Number of temperatures, endpoints included [count, >= 2]
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..).map(|n| n as usize))]
    points: usize,
    /// Gap-equation tolerance [relative, (0, 1e-3]]
    #[arg(long, default_value_t = 1e-10, value_parser = tolerance)]
    tol: f64,
    /// Report theta divided by the proposed-model critical temperature
    #[arg(long)]
    normalize: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CriticalArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Coupling ratio chi/omega21 [dimensionless, > 0]
    #[arg(long, value_parser = positive)]
    chi_ratio: f64,
    /// Models to scan
    #[arg(long, value_enum, default_value = "both")]
    variant: VariantArg,
    /// Lower end of the scan [energy, > 0; default theta_max/1000]
    #[arg(long, value_parser = positive)]
    theta_min: Option<f64>,
    /// Upper end of the scan [energy; default max(2 omega21, 3 theta_cr of the constant-coupling model)]
    #[arg(long, value_parser = positive)]
    theta_max: Option<f64>,
    /// Scan grid points before bisection [count, >= 64]
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(64..).map(|n| n as usize))]
    points: usize,
    /// Root tolerance [relative to theta, (0, 1e-3]]
    #[arg(long, default_value_t = 1e-10, value_parser = tolerance)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct PhaseArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Model to classify [proposed|traditional]
    #[arg(long, value_enum, default_value = "proposed")]
    variant: VariantArg,
    /// Smallest chi/omega21 [dimensionless, > 0]
    #[arg(long, default_value_t = 0.3, value_parser = positive)]
    chi_min: f64,
    /// Largest chi/omega21 [dimensionless, > 0]
    #[arg(long, default_value_t = 0.9, value_parser = positive)]
    chi_max: f64,
    /// Number of chi/omega21 columns [count, >= 1]
    #[arg(long, default_value_t = 61, value_parser = clap::value_parser!(u32).range(1..).map(|n| n as usize))]
    nx: usize,
    /// Number of theta rows [count, >= 1]
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..).map(|n| n as usize))]
    ny: usize,
    /// Lowest temperature [energy, > 0; default 0.005 omega21]
    #[arg(long, value_parser = positive)]
    theta_min: Option<f64>,
    /// Highest temperature [energy, > 0; default omega21]
    #[arg(long, value_parser = positive)]
    theta_max: Option<f64>,
    /// Boundary tolerance [relative to theta, (0, 1e-3]]
    #[arg(long, default_value_t = 1e-10, value_parser = tolerance)]
    tol: f64,
    /// Also write the per-column critical points here [path]
    #[arg(long)]
    boundary_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct Fig1Args {
    #[command(flatten)]
    model: ModelArgs,
    /// Coupling ratios chi/omega21 [comma-separated, each in (0, 1)]
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.51,0.6", value_parser = unit_ratio)]
    ratios: Vec<f64>,
    /// Temperatures per series on theta/theta_cr in [0, 1.05] [count, >= 2]
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u32).range(2..).map(|n| n as usize))]
    points: usize,
    /// Solver tolerance [relative, (0, 1e-3]]
    #[arg(long, default_value_t = 1e-10, value_parser = tolerance)]
    tol: f64,
    /// Write a matplotlib script that plots the CSV written to --out [path]
    #[arg(long, requires = "out")]
    plot_script: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct Fig2Args {
    #[command(flatten)]
    model: ModelArgs,
    /// Coupling ratio chi/omega21 [dimensionless, in (0, 1)]
    #[arg(long, value_parser = unit_ratio)]
    chi_ratio: f64,
    /// Temperatures per series on [0, 2 theta_cr] [count, >= 2]
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u32).range(2..).map(|n| n as usize))]
    points: usize,
    /// Solver tolerance [relative, (0, 1e-3]]
    #[arg(long, default_value_t = 1e-10, value_parser = tolerance)]
    tol: f64,
    /// Report theta divided by the proposed-model critical temperature
    #[arg(long)]
    normalize: bool,
    /// Write a matplotlib script that plots the CSV written to --out [path]
    #[arg(long, requires = "out")]
    plot_script: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Coupling ratio chi/omega21 [dimensionless, > 0]
    #[arg(long, value_parser = positive)]
    chi_ratio: f64,
    /// Model whose couplings feed both calculations [proposed|traditional]
    #[arg(long, value_enum, default_value = "proposed")]
    variant: VariantArg,
    /// Temperature [energy, > 0]
    #[arg(long, value_parser = positive)]
    theta: f64,
    /// System sizes N [comma-separated, each in [2, 1000000]]
    #[arg(long, value_delimiter = ',', default_value = "8,32,128,512", value_parser = atom_count)]
    n_list: Vec<u64>,
    /// Gap-equation tolerance [relative, (0, 1e-3]]
    #[arg(long, default_value_t = 1e-10, value_parser = tolerance)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct MicroArgs {
    /// Virtual level as proj1,proj2,omega_a1,omega_2a [projections: amplitude units; frequencies: energy]; repeatable
    #[arg(long = "level", value_parser = level, allow_hyphen_values = true)]
    levels: Vec<Level>,
    /// Cavity damping rate Gamma [energy, > 0]
    #[arg(long, value_parser = positive)]
    gamma_cav: f64,
    /// Atomic transition frequency omega21 [energy]
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    omega21: f64,
    /// Cavity photon frequency omega_k [energy; default omega21/2]
    #[arg(long, value_parser = positive)]
    omega_k: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

fn single_variant(arg: VariantArg) -> Result<Variant, CliError> {
    match arg {
        VariantArg::Proposed => Ok(Variant::Proposed),
        VariantArg::Traditional => Ok(Variant::Traditional),
        VariantArg::Both => Err(usage("--variant both is not supported by this command")),
    }
}

/// Files and bytes produced by a command.
struct Outputs {
    main: Vec<u8>,
    out: Option<PathBuf>,
    extra: Vec<(PathBuf, Vec<u8>)>,
}

impl Outputs {
    fn single(main: Vec<u8>, output: &OutputArgs) -> Self {
        Outputs {
            main,
            out: output.out.clone(),
            extra: Vec::new(),
        }
    }
}

fn thermo_table_with_ratio(series: &[(f64, f64, &[ThermoPoint])]) -> Table {
    let mut columns: Vec<&str> = THERMO_COLUMNS.to_vec();
    columns.push("chi_ratio");
    let mut table = Table::new(&columns);
    for &(ratio, scale, points) in series {
        for p in points {
            let mut row = thermo_row(&p.normalized(scale));
            row.push(Cell::Num(ratio));
            table.push(row);
        }
    }
    table
}

fn run_sweep(args: &SweepArgs) -> Result<Outputs, CliError> {
    let base = args.model.params(args.chi_ratio, Variant::Proposed)?;
    let theta_max = match args.theta_max {
        Some(t) => t,
        None => default_theta_range(&base)?.1,
    };
    if args.theta_min >= theta_max {
        return Err(usage(format!(
            "--theta-min ({}) must be smaller than --theta-max ({theta_max})",
            args.theta_min
        )));
    }
    let pool = par::pool(args.output.threads);
    let scale = if args.normalize {
        theta_normalizer(&base, args.tol)?
    } else {
        1.0
    };
    let mut records = Vec::new();
    for &variant in args.variant.variants() {
        let mut cfg = SweepConfig::new(
            base.with_variant(variant),
            args.theta_min,
            theta_max,
            args.points,
        );
        cfg.tol = args.tol;
        cfg.normalize_axis = args.normalize;
        records.extend(
            par::temperature_sweep(&pool, &cfg)?
                .into_iter()
                .map(|p| p.normalized(scale)),
        );
    }
    let format = args.output.format_or(OutputFormat::Csv);
    let bytes = crate::format::serialize(&records, format, args.output.precision);
    Ok(Outputs::single(bytes, &args.output))
}

fn run_critical(args: &CriticalArgs) -> Result<Outputs, CliError> {
    let base = args.model.params(args.chi_ratio, Variant::Proposed)?;
    let (default_lo, default_hi) = default_theta_range(&base)?;
    let hi = args.theta_max.unwrap_or(default_hi);
    let lo = args.theta_min.unwrap_or(if args.theta_max.is_some() {
        hi / 1000.0
    } else {
        default_lo
    });
    if lo >= hi {
        return Err(usage(format!(
            "--theta-min ({lo}) must be smaller than --theta-max ({hi})"
        )));
    }
    let mut table = Table::new(&[
        "variant",
        "theta_cr",
        "kind",
        "nbar",
        "omega",
        "lambda",
        "varpi",
        "bloch_ok",
        "window_ok",
        "bloch_margin",
        "window_lower_margin",
        "window_upper_margin",
    ]);
    for &variant in args.variant.variants() {
        let params = base.with_variant(variant);
        for root in critical_temperatures(&params, (lo, hi), args.points, args.tol)? {
            let c = root.couplings_at_cr;
            let v = validity_report(&params, root.theta_cr)?;
            table.push(vec![
                variant.as_str().into(),
                root.theta_cr.into(),
                root.kind.as_str().into(),
                c.nbar.into(),
                c.omega.into(),
                c.lambda.into(),
                c.varpi.into(),
                Cell::Bool(v.bloch_ok),
                Cell::Bool(v.window_ok),
                v.bloch_margin.into(),
                v.window_lower_margin.into(),
                v.window_upper_margin.into(),
            ]);
        }
    }
    let format = args.output.format_or(OutputFormat::Json);
    Ok(Outputs::single(
        table.render(format, args.output.precision),
        &args.output,
    ))
}

fn run_phase(args: &PhaseArgs) -> Result<Outputs, CliError> {
    let variant = single_variant(args.variant)?;
    if args.chi_min > args.chi_max {
        return Err(usage("--chi-min must not exceed --chi-max"));
    }
    let theta_min = args.theta_min.unwrap_or(0.005 * args.model.omega21);
    let theta_max = args.theta_max.unwrap_or(args.model.omega21);
    if theta_min > theta_max {
        return Err(usage("--theta-min must not exceed --theta-max"));
    }
    let cells = args.nx as u64 * args.ny as u64;
    if cells > quasispin_core::sweep::MAX_MAP_CELLS {
        return Err(usage(format!("--nx * --ny = {cells} exceeds 10000000")));
    }
    let cfg = PhaseMapConfig {
        base: args.model.params(args.chi_min, variant)?,
        chi_ratio_range: (args.chi_min, args.chi_max),
        theta_range: (theta_min, theta_max),
        nx: args.nx,
        ny: args.ny,
        tol: args.tol,
    };
    let map = par::phase_map(&par::pool(args.output.threads), &cfg)?;
    let format = args.output.format_or(OutputFormat::Csv);
    let precision = args.output.precision;

    let mut table = Table::new(&["chi_ratio", "theta", "phase"]);
    for (row, &theta) in map.thetas.iter().enumerate() {
        for (col, &chi) in map.chi_ratios.iter().enumerate() {
            table.push(vec![
                chi.into(),
                theta.into(),
                map.cell(col, row).as_str().into(),
            ]);
        }
    }
    let mut outputs = Outputs::single(table.render(format, precision), &args.output);
    if let Some(path) = &args.boundary_out {
        let mut boundary = Table::new(&["chi_ratio", "theta_cr", "kind"]);
        for b in &map.boundary {
            boundary.push(vec![
                b.chi_ratio.into(),
                b.theta.into(),
                b.kind.as_str().into(),
            ]);
        }
        outputs
            .extra
            .push((path.clone(), boundary.render(format, precision)));
    }
    Ok(outputs)
}

fn run_fig1(args: &Fig1Args) -> Result<Outputs, CliError> {
    let base = args.model.params(args.ratios.first().copied().unwrap_or(0.5), Variant::Proposed)?;
    let pool = par::pool(args.output.threads);
    let series = par::figure1_series(&pool, &base, &args.ratios, args.points, args.tol)?;
    let mut blocks = Vec::new();
    for s in &series {
        blocks.push((s.chi_ratio, s.theta_scale, s.proposed.as_slice()));
        blocks.push((s.chi_ratio, s.theta_scale, s.traditional.as_slice()));
    }
    let format = args.output.format_or(OutputFormat::Csv);
    let mut outputs = Outputs::single(
        thermo_table_with_ratio(&blocks).render(format, args.output.precision),
        &args.output,
    );
    if let (Some(script), Some(data)) = (&args.plot_script, &args.output.out) {
        outputs
            .extra
            .push((script.clone(), plot::figure1_script(data).into_bytes()));
    }
    Ok(outputs)
}

fn run_fig2(args: &Fig2Args) -> Result<Outputs, CliError> {
    let base = args.model.params(args.chi_ratio, Variant::Proposed)?;
    let pool = par::pool(args.output.threads);
    let fig = par::figure2_series(&pool, &base, args.chi_ratio, args.points, args.tol)?;
    let scale = if args.normalize { fig.theta_scale } else { 1.0 };
    let records: Vec<ThermoPoint> = fig
        .proposed
        .iter()
        .chain(&fig.traditional)
        .map(|p| p.normalized(scale))
        .collect();
    let format = args.output.format_or(OutputFormat::Csv);
    let mut outputs = Outputs::single(
        crate::format::serialize(&records, format, args.output.precision),
        &args.output,
    );
    if let (Some(script), Some(data)) = (&args.plot_script, &args.output.out) {
        outputs
            .extra
            .push((script.clone(), plot::figure2_script(data).into_bytes()));
    }
    Ok(outputs)
}

fn run_exact(args: &ExactArgs) -> Result<Outputs, CliError> {
    let variant = single_variant(args.variant)?;
    let params = args.model.params(args.chi_ratio, variant)?;
    let rows = compare_meanfield(&params, args.theta, &args.n_list, args.tol)?;
    let mut table = Table::new(&["n_atoms", "rz_exact", "rz_meanfield", "deviation"]);
    for r in rows {
        table.push(vec![
            Cell::Int(r.n_atoms),
            r.rz_exact.into(),
            r.rz_meanfield.into(),
            r.deviation.into(),
        ]);
    }
    let format = args.output.format_or(OutputFormat::Json);
    Ok(Outputs::single(
        table.render(format, args.output.precision),
        &args.output,
    ))
}

fn run_micro(args: &MicroArgs) -> Result<Outputs, CliError> {
    let omega_k = args.omega_k.unwrap_or(0.5 * args.omega21);
    let levels = MicroscopicLevels {
        levels: args.levels.clone(),
        gamma_cav: args.gamma_cav,
    };
    let amplitude = transition_amplitude(&levels, omega_k)?;
    let c = coupling_constants(amplitude, args.gamma_cav, args.omega21, omega_k)?;
    let mut table = Table::new(&["amplitude", "chi", "gamma", "detuning", "chi_ratio"]);
    table.push(vec![
        amplitude.into(),
        c.chi.into(),
        c.gamma.into(),
        c.detuning.into(),
        (c.chi / args.omega21).into(),
    ]);
    let format = args.output.format_or(OutputFormat::Json);
    Ok(Outputs::single(
        table.render(format, args.output.precision),
        &args.output,
    ))
}

/// Inserts the entries of `--config FILE` right after the subcommand so that
/// later command-line flags override them.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut path: Option<PathBuf> = None;
    let mut iter = args.iter().skip(2);
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            path = iter.next().map(PathBuf::from);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let entries = config::parse(&text)
        .and_then(|entries| config::to_args(&entries))
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut expanded = args[..2].to_vec();
    expanded.extend(entries.into_iter().map(OsString::from));
    expanded.extend(args[2..].iter().cloned());
    Ok(expanded)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn execute(cli: &Cli) -> Result<Outputs, CliError> {
    match &cli.command {
        Command::Sweep(a) => run_sweep(a),
        Command::Critical(a) => run_critical(a),
        Command::Phase(a) => run_phase(a),
        Command::Fig1(a) => run_fig1(a),
        Command::Fig2(a) => run_fig2(a),
        Command::ExactCompare(a) => run_exact(a),
        Command::Micro(a) => run_micro(a),
    }
}

/// Runs one invocation and returns the process exit code. Results go to
/// `stdout` unless `--out` names a file; diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = if args.len() > 2 {
        match expand_config(args) {
            Ok(a) => a,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return e.exit_code();
            }
        }
    } else {
        args
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stdout, "{}", e.render());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        2
                    } else {
                        0
                    }
                }
                _ => {
                    // first paragraph only, folded onto one line
                    let rendered = e.render().to_string();
                    let line = rendered
                        .lines()
                        .take_while(|l| !l.trim().is_empty())
                        .map(str::trim)
                        .collect::<Vec<_>>()
                        .join(" ");
                    let _ = writeln!(stderr, "{line}");
                    2
                }
            };
        }
    };
    let result = execute(&cli).and_then(|outputs| {
        match &outputs.out {
            Some(path) => write_file(path, &outputs.main)?,
            None => stdout
                .write_all(&outputs.main)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?,
        }
        for (path, bytes) in &outputs.extra {
            write_file(path, bytes)?;
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
