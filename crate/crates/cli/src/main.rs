//! spindimer: two-qubit spin dimers with DM and KSEA cross-exchange.
//!
//! Subcommands build Hamiltonians from coupling configs, classify matrices
//! into the fifteen symmetry families, compute spectra and thermal
//! correlation reports, and run parameter sweeps to CSV/JSON.
//!
//! Exit codes: 0 success, 2 usage or config error, 3 invalid matrix data.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use spindimer::correlations::{CorrelationReport, MeasureReport};
use spindimer::families::{
    build_hamiltonian, commuting_families, full_hamiltonian, physical_projection, FamilyId,
};
use spindimer::pauli::bloch_decompose;
use spindimer::sweep::{
    parse_config, parse_matrix, preset_sweep, render_csv, render_matrix, run_sweep, Config,
    FileError, ResultRow, SweepSpec, SweepVar, PRESET_GAMMA_Z,
};
use spindimer::thermal::{gibbs, Temperature};
use spindimer::transforms::{canonical_target, canonicalizer_description, family_spectrum};
use spindimer::{hermitian_eig4, Error as CoreError, Mat4};

#[derive(Parser)]
#[command(name = "spindimer", version, about = "Two-qubit XYZ spin dimers with DM/KSEA cross-exchange: symmetry families, spectra, thermal quantum correlations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Hamiltonian from a coupling config and print it with its
    /// Bloch coefficients.
    Hamiltonian {
        /// Coupling config file (`key = value` lines).
        #[arg(long)]
        config: PathBuf,
        /// Restrict to one symmetry family (two characters over 0xyz).
        #[arg(long)]
        family: Option<String>,
        /// Also write the matrix to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the symmetry families of a matrix and the local gates that
    /// reduce it to canonical form.
    Classify {
        /// Matrix file: 4 rows of 4 entries, each `re` or `re,im`.
        matrix: PathBuf,
    },
    /// Eigenvalues of a Hamiltonian, through the family block structure
    /// when one applies.
    Spectrum {
        /// Matrix file to read instead of building from a config.
        matrix: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Thermal-state correlation report: concurrence, both discords, both
    /// work deficits, PPT verdict.
    Correlations {
        /// Hamiltonian matrix file to read instead of a config.
        matrix: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Temperature in energy units; overrides the config's `T`.
        #[arg(long)]
        temp: Option<f64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Sweep one coupling or the temperature and emit one report row per
    /// grid point.
    Sweep {
        /// Variable to sweep: a coupling name (Jx, Dz, ...) or T.
        #[arg(long)]
        var: String,
        /// Start of the grid; temperature sweeps default to the 0.01 floor.
        #[arg(long)]
        from: Option<f64>,
        /// End of the grid; temperature sweeps default to 3.
        #[arg(long)]
        to: Option<f64>,
        #[arg(long, default_value_t = 300)]
        steps: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
        /// Fixed temperature; overrides the config's `T`.
        #[arg(long)]
        temp: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Emit the three preset discord-vs-temperature curves
    /// (Γ_z = 0, 0.3, 0.5) as CSV files.
    Fig1 {
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum SweepFormat {
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn bad_data(message: impl ToString) -> Failure {
    Failure {
        code: 3,
        message: message.to_string(),
    }
}

fn map_core(e: CoreError) -> Failure {
    match e {
        CoreError::NotHermitian { .. }
        | CoreError::NotDensityMatrix { .. }
        | CoreError::NotInFamily { .. } => bad_data(e),
        other => usage(other),
    }
}

fn map_file(e: FileError) -> Failure {
    usage(e)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_config(path: &Path) -> Result<Config, Failure> {
    parse_config(&read_file(path)?).map_err(map_file)
}

fn load_matrix(path: &Path) -> Result<Mat4, Failure> {
    parse_matrix(&read_file(path)?).map_err(map_file)
}

fn parse_family(name: &str) -> Result<FamilyId, Failure> {
    name.parse::<FamilyId>().map_err(usage)
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn print_matrix(m: &Mat4) -> String {
    let mut out = String::from("matrix (basis |00>, |01>, |10>, |11>):\n");
    for i in 0..4 {
        out.push(' ');
        for j in 0..4 {
            let z = m[(i, j)];
            let _ = write!(out, " {:+.6}{:+.6}i", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

fn cmd_hamiltonian(
    config: &Path,
    family: Option<&str>,
    out: Option<&Path>,
) -> Result<String, Failure> {
    let cfg = load_config(config)?;
    let mut text = String::new();
    let h = match family {
        Some(name) => {
            let f = parse_family(name)?;
            let (params, residual) = physical_projection(&cfg.couplings, f);
            if !residual.is_zero(0.0) {
                let _ = writeln!(
                    text,
                    "note: couplings outside family {f} were dropped (residual norm {:.3e})",
                    full_hamiltonian(&residual).norm_fro()
                );
            }
            build_hamiltonian(f, &params).map_err(map_core)?
        }
        None => full_hamiltonian(&cfg.couplings),
    };
    text.push_str(&print_matrix(&h));
    text.push_str("bloch coefficients:\n");
    let bloch = bloch_decompose(&h).map_err(map_core)?;
    let mut any = false;
    for (a, b, v) in bloch.entries() {
        if v.abs() > 1e-12 {
            let _ = writeln!(text, "  {a}{b} = {v}");
            any = true;
        }
    }
    if !any {
        text.push_str("  (all zero)\n");
    }
    if let Some(path) = out {
        fs::write(path, render_matrix(&h))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(text)
}

fn cmd_classify(matrix: &Path) -> Result<String, Failure> {
    let m = load_matrix(matrix)?;
    m.require_hermitian().map_err(map_core)?;
    let families = commuting_families(&m);
    let mut text = String::new();
    if families.is_empty() {
        text.push_str("families: (none)\n");
        return Ok(text);
    }
    let names: Vec<String> = families.iter().map(|f| f.to_string()).collect();
    let _ = writeln!(text, "families: {}", names.join(" "));
    for f in &families {
        if f.is_inner() {
            let _ = writeln!(
                text,
                "reduction {f}: {} -> {}",
                canonicalizer_description(*f),
                canonical_target(*f)
            );
        }
    }
    Ok(text)
}

fn cmd_spectrum(
    matrix: Option<&Path>,
    config: Option<&Path>,
    family: Option<&str>,
) -> Result<String, Failure> {
    let h = match (matrix, config) {
        (Some(path), _) => {
            let m = load_matrix(path)?;
            m.require_hermitian().map_err(map_core)?;
            m
        }
        (None, Some(path)) => full_hamiltonian(&load_config(path)?.couplings),
        (None, None) => return Err(usage("spectrum needs a matrix file or --config")),
    };
    let (eig, method) = match family {
        Some(name) => {
            let f = parse_family(name)?;
            (
                family_spectrum(&h, f).map_err(map_core)?,
                format!("family {f} blocks"),
            )
        }
        None => {
            let detected = commuting_families(&h);
            match detected.first() {
                Some(&f) => (
                    family_spectrum(&h, f).map_err(map_core)?,
                    format!("family {f} blocks"),
                ),
                None => (
                    hermitian_eig4(&h).map_err(map_core)?.eigenvalues,
                    "generic jacobi".to_string(),
                ),
            }
        }
    };
    let mut text = String::from("eigenvalues:");
    for v in eig {
        let _ = write!(text, " {}", fmt12(v));
    }
    text.push('\n');
    let _ = writeln!(text, "method: {method}");
    Ok(text)
}

fn measure_json(m: &MeasureReport) -> serde_json::Value {
    json!({
        "value": m.value,
        "branches": {
            "value_at_zero": m.branches.value_at_zero,
            "value_at_pi_half": m.branches.value_at_pi_half,
            "interior_value": m.branches.interior_value,
            "interior_theta": m.branches.interior_theta,
            "winner": m.branches.winner.to_string(),
        },
    })
}

fn report_json(r: &CorrelationReport) -> serde_json::Value {
    json!({
        "concurrence": r.concurrence,
        "discord_first": measure_json(&r.discord_first),
        "discord_second": measure_json(&r.discord_second),
        "deficit_first": measure_json(&r.deficit_first),
        "deficit_second": measure_json(&r.deficit_second),
        "ppt_separable": r.ppt_separable,
        "min_pt_eigenvalue": r.min_pt_eigenvalue,
    })
}

fn report_text(r: &CorrelationReport) -> String {
    let mut text = String::new();
    let line = |text: &mut String, name: &str, m: &MeasureReport| {
        let _ = writeln!(
            text,
            "{name} = {}  (branch {})",
            fmt12(m.value),
            m.branches.winner
        );
    };
    let _ = writeln!(text, "concurrence       = {}", fmt12(r.concurrence));
    line(&mut text, "discord_first    ", &r.discord_first);
    line(&mut text, "discord_second   ", &r.discord_second);
    line(&mut text, "deficit_first    ", &r.deficit_first);
    line(&mut text, "deficit_second   ", &r.deficit_second);
    let _ = writeln!(text, "ppt_separable     = {}", r.ppt_separable);
    let _ = writeln!(text, "min_pt_eigenvalue = {}", fmt12(r.min_pt_eigenvalue));
    text
}

fn cmd_correlations(
    matrix: Option<&Path>,
    config: Option<&Path>,
    temp: Option<f64>,
    format: ReportFormat,
) -> Result<String, Failure> {
    let (h, config_temp) = match (matrix, config) {
        (Some(path), _) => {
            let m = load_matrix(path)?;
            m.require_hermitian().map_err(map_core)?;
            (m, None)
        }
        (None, Some(path)) => {
            let cfg = load_config(path)?;
            (full_hamiltonian(&cfg.couplings), cfg.temperature)
        }
        (None, None) => return Err(usage("correlations needs a matrix file or --config")),
    };
    let t_value = temp
        .or(config_temp)
        .ok_or_else(|| usage("no temperature given (set T in the config or pass --temp)"))?;
    let t = Temperature::new(t_value).map_err(usage)?;
    let rho = gibbs(&h, t).map_err(map_core)?;
    let report = spindimer::correlations::correlation_report(&rho).map_err(map_core)?;
    Ok(match format {
        ReportFormat::Text => report_text(&report),
        ReportFormat::Json => format!("{:#}\n", report_json(&report)),
    })
}

fn rows_json(rows: &[ResultRow]) -> serde_json::Value {
    let items: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let r = &row.report;
            json!({
                "var": row.value,
                "C": r.concurrence,
                "Q1": r.discord_first.value,
                "Q2": r.discord_second.value,
                "D1": r.deficit_first.value,
                "D2": r.deficit_second.value,
                "branchQ1": r.discord_first.branches.winner.to_string(),
                "branchQ2": r.discord_second.branches.winner.to_string(),
                "branchD1": r.deficit_first.branches.winner.to_string(),
                "branchD2": r.deficit_second.branches.winner.to_string(),
                "ppt": r.ppt_separable,
            })
        })
        .collect();
    json!(items)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    var: &str,
    from: Option<f64>,
    to: Option<f64>,
    steps: usize,
    config: Option<&Path>,
    family: Option<&str>,
    temp: Option<f64>,
    out: Option<&Path>,
    format: SweepFormat,
) -> Result<String, Failure> {
    let variable = SweepVar::parse(var)
        .ok_or_else(|| usage(format!("unknown sweep variable {var:?}")))?;
    let is_temp = variable.name() == "T";
    let from = from
        .or(if is_temp { Some(0.01) } else { None })
        .ok_or_else(|| usage("--from is required for coupling sweeps"))?;
    let to = to
        .or(if is_temp { Some(3.0) } else { None })
        .ok_or_else(|| usage("--to is required for coupling sweeps"))?;
    let mut fixed = match config {
        Some(path) => load_config(path)?,
        None => Config::default(),
    };
    if temp.is_some() {
        fixed.temperature = temp;
    }
    let family = match family {
        Some(name) => Some(parse_family(name)?),
        None => None,
    };
    let spec = SweepSpec {
        variable,
        from,
        to,
        steps,
        fixed,
        family,
    };
    let rows = run_sweep(&spec).map_err(map_core)?;
    let body = match format {
        SweepFormat::Csv => render_csv(&rows, &[]),
        SweepFormat::Json => format!("{:#}\n", rows_json(&rows)),
    };
    match out {
        Some(path) => {
            fs::write(path, &body)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(body),
    }
}

fn cmd_fig1(out_dir: &Path) -> Result<String, Failure> {
    fs::create_dir_all(out_dir)
        .map_err(|e| usage(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut text = String::new();
    for gz in PRESET_GAMMA_Z {
        let spec = preset_sweep(gz);
        let rows = run_sweep(&spec).map_err(map_core)?;
        let comments = vec![
            format!("discord vs temperature: B1z=B2z=0, Jx=-1, Jy=-1.5, Jz=-2, Dz=1.8, Gz={gz}"),
            "temperature grid [0.01, 3] with 300 points; the grid range is a reproduction choice"
                .to_string(),
        ];
        let body = render_csv(&rows, &comments);
        let path = out_dir.join(format!("fig1_Gz{gz}.csv"));
        fs::write(&path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(text)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Hamiltonian {
            config,
            family,
            out,
        } => cmd_hamiltonian(&config, family.as_deref(), out.as_deref()),
        Command::Classify { matrix } => cmd_classify(&matrix),
        Command::Spectrum {
            matrix,
            config,
            family,
        } => cmd_spectrum(matrix.as_deref(), config.as_deref(), family.as_deref()),
        Command::Correlations {
            matrix,
            config,
            temp,
            format,
        } => cmd_correlations(matrix.as_deref(), config.as_deref(), temp, format),
        Command::Sweep {
            var,
            from,
            to,
            steps,
            config,
            family,
            temp,
            out,
            format,
        } => cmd_sweep(
            &var,
            from,
            to,
            steps,
            config.as_deref(),
            family.as_deref(),
            temp,
            out.as_deref(),
            format,
        ),
        Command::Fig1 { out } => cmd_fig1(&out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
