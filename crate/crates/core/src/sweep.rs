//! Parameter sweeps and the plain-text file formats the CLI speaks.
//!
//! Config files are `key = value` lines over the fifteen coupling names
//! plus `T`; unknown keys are hard errors. Matrix files are four lines of
//! four whitespace-separated entries, each `re` or `re,im`. Sweep output
//! is CSV with a fixed column order and is byte-identical across runs and
//! thread counts: rows are computed in parallel but emitted in index
//! order with fixed-width scientific formatting.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::correlations::{correlation_report, CorrelationReport};
use crate::error::{Error, Result};
use crate::families::{build_hamiltonian, full_hamiltonian, physical_projection, CouplingSet, FamilyId};
use crate::matrix::{C64, Mat4};
use crate::thermal::{gibbs, Temperature};

/// A parsed config: the fifteen couplings and an optional temperature.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Config {
    pub couplings: CouplingSet,
    pub temperature: Option<f64>,
}

/// Errors from the plain-text formats, kept separate from the numerical
/// errors so the CLI can map them to its exit codes.
#[derive(Debug, Clone, thiserror::Error)]
pub enum FileError {
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: expected `key = value`")]
    BadSyntax { line: usize },
    #[error("line {line}: cannot parse {text:?} as a number")]
    BadNumber { line: usize, text: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("matrix file must have 4 rows of 4 entries, found {rows} rows")]
    BadMatrixShape { rows: usize },
    #[error("matrix row {line} has {found} entries, expected 4")]
    BadMatrixRow { line: usize, found: usize },
    #[error("matrix entry {text:?} is not `re` or `re,im`")]
    BadMatrixEntry { text: String },
}

/// The recognized config keys, in documentation order.
pub const CONFIG_KEYS: [&str; 16] = [
    "B1x", "B1y", "B1z", "B2x", "B2y", "B2z", "Jx", "Jy", "Jz", "Dx", "Dy", "Dz", "Gx", "Gy",
    "Gz", "T",
];

fn apply_key(config: &mut Config, key: &str, value: f64) -> bool {
    let c = &mut config.couplings;
    match key {
        "B1x" => c.b1[0] = value,
        "B1y" => c.b1[1] = value,
        "B1z" => c.b1[2] = value,
        "B2x" => c.b2[0] = value,
        "B2y" => c.b2[1] = value,
        "B2z" => c.b2[2] = value,
        "Jx" => c.j[0] = value,
        "Jy" => c.j[1] = value,
        "Jz" => c.j[2] = value,
        "Dx" => c.d[0] = value,
        "Dy" => c.d[1] = value,
        "Dz" => c.d[2] = value,
        "Gx" => c.gamma[0] = value,
        "Gy" => c.gamma[1] = value,
        "Gz" => c.gamma[2] = value,
        "T" => config.temperature = Some(value),
        _ => return false,
    }
    true
}

/// Parses `key = value` lines. Blank lines and `#` comments are allowed;
/// unknown and repeated keys are errors.
pub fn parse_config(text: &str) -> std::result::Result<Config, FileError> {
    let mut config = Config::default();
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.splitn(2, '=');
        let key = parts.next().unwrap_or("").trim().to_string();
        let value_text = match parts.next() {
            Some(v) => v.trim(),
            None => return Err(FileError::BadSyntax { line }),
        };
        if key.is_empty() || value_text.is_empty() {
            return Err(FileError::BadSyntax { line });
        }
        let value: f64 = value_text
            .parse()
            .map_err(|_| FileError::BadNumber {
                line,
                text: value_text.to_string(),
            })?;
        if seen.contains(&key) {
            return Err(FileError::DuplicateKey { line, key });
        }
        if !apply_key(&mut config, &key, value) {
            return Err(FileError::UnknownKey { line, key });
        }
        seen.push(key);
    }
    Ok(config)
}

/// Renders a config in the same format `parse_config` reads.
pub fn render_config(config: &Config) -> String {
    let mut out = String::new();
    let mut tmp = *config;
    if tmp.temperature.is_none() {
        tmp.temperature = Some(0.0);
    }
    for key in CONFIG_KEYS {
        let value = read_key(&tmp, key);
        let _ = writeln!(out, "{key} = {value:.17e}");
    }
    out
}

fn read_key(config: &Config, key: &str) -> f64 {
    let c = &config.couplings;
    match key {
        "B1x" => c.b1[0],
        "B1y" => c.b1[1],
        "B1z" => c.b1[2],
        "B2x" => c.b2[0],
        "B2y" => c.b2[1],
        "B2z" => c.b2[2],
        "Jx" => c.j[0],
        "Jy" => c.j[1],
        "Jz" => c.j[2],
        "Dx" => c.d[0],
        "Dy" => c.d[1],
        "Dz" => c.d[2],
        "Gx" => c.gamma[0],
        "Gy" => c.gamma[1],
        "Gz" => c.gamma[2],
        "T" => config.temperature.unwrap_or(0.0),
        _ => unreachable!("read_key called with unknown key"),
    }
}

/// Parses a 4x4 complex matrix: four non-comment lines of four entries,
/// each `re` or `re,im`.
pub fn parse_matrix(text: &str) -> std::result::Result<Mat4, FileError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let entries: Vec<&str> = content.split_whitespace().collect();
        if entries.len() != 4 {
            return Err(FileError::BadMatrixRow {
                line: idx + 1,
                found: entries.len(),
            });
        }
        let mut row = [C64::new(0.0, 0.0); 4];
        for (j, e) in entries.iter().enumerate() {
            row[j] = parse_entry(e)?;
        }
        rows.push(row);
    }
    if rows.len() != 4 {
        return Err(FileError::BadMatrixShape { rows: rows.len() });
    }
    let mut m = Mat4::zero();
    for (i, row) in rows.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

fn parse_entry(text: &str) -> std::result::Result<C64, FileError> {
    let bad = || FileError::BadMatrixEntry {
        text: text.to_string(),
    };
    let mut parts = text.split(',');
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(s) => s.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

/// Renders a matrix in the format `parse_matrix` reads, with 17
/// significant digits per component.
pub fn render_matrix(m: &Mat4) -> String {
    let mut out = String::new();
    for i in 0..4 {
        let mut cells = Vec::with_capacity(4);
        for j in 0..4 {
            let z = m[(i, j)];
            cells.push(format!("{:.16e},{:.16e}", z.re, z.im));
        }
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

/// The quantity a sweep varies: one of the fifteen couplings or the
/// temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepVar(usize);

impl SweepVar {
    pub fn parse(name: &str) -> Option<SweepVar> {
        CONFIG_KEYS.iter().position(|&k| k == name).map(SweepVar)
    }

    pub fn name(&self) -> &'static str {
        CONFIG_KEYS[self.0]
    }
}

/// A sweep over one variable with everything else held fixed.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub fixed: Config,
    /// When set, the couplings are projected onto this family at every
    /// grid point; off-support couplings are dropped.
    pub family: Option<FamilyId>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let ascending = self.from.partial_cmp(&self.to) == Some(std::cmp::Ordering::Less);
        if !ascending || self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "grid from {} to {} in {} steps",
                self.from, self.to, self.steps
            )));
        }
        Ok(())
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone)]
pub struct ResultRow {
    pub value: f64,
    pub report: CorrelationReport,
}

/// Evaluates a state's full correlation report at one coupling/temperature
/// combination.
pub fn evaluate_point(
    couplings: &CouplingSet,
    family: Option<FamilyId>,
    temperature: f64,
) -> Result<CorrelationReport> {
    let h = match family {
        Some(f) => {
            let (params, _residual) = physical_projection(couplings, f);
            build_hamiltonian(f, &params)?
        }
        None => full_hamiltonian(couplings),
    };
    let t = Temperature::new(temperature)?;
    let rho = gibbs(&h, t)?;
    correlation_report(&rho)
}

/// Runs the sweep. Points are evaluated in parallel and returned in
/// ascending order of the swept value.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let n = spec.steps;
    let dv = (spec.to - spec.from) / (n - 1) as f64;
    let is_temp = spec.variable.name() == "T";
    if !is_temp && spec.fixed.temperature.is_none() {
        return Err(Error::NonPositiveTemperature(0.0));
    }

    (0..n)
        .into_par_iter()
        .map(|i| {
            let value = spec.from + dv * i as f64;
            let mut config = spec.fixed;
            apply_key(&mut config, spec.variable.name(), value);
            let temperature = config
                .temperature
                .ok_or(Error::NonPositiveTemperature(0.0))?;
            let report = evaluate_point(&config.couplings, spec.family, temperature)?;
            Ok(ResultRow { value, report })
        })
        .collect()
}

/// CSV column order, fixed by contract.
pub const CSV_HEADER: &str = "var,C,Q1,Q2,D1,D2,branchQ1,branchQ2,branchD1,branchD2,ppt";

fn fmt_num(x: f64) -> String {
    format!("{x:.12e}")
}

/// Renders sweep rows as CSV with a fixed header; deterministic bytes for
/// a given spec.
pub fn render_csv(rows: &[ResultRow], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{CSV_HEADER}");
    for row in rows {
        let r = &row.report;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            fmt_num(row.value),
            fmt_num(r.concurrence),
            fmt_num(r.discord_first.value),
            fmt_num(r.discord_second.value),
            fmt_num(r.deficit_first.value),
            fmt_num(r.deficit_second.value),
            r.discord_first.branches.winner,
            r.discord_second.branches.winner,
            r.deficit_first.branches.winner,
            r.deficit_second.branches.winner,
            r.ppt_separable,
        );
    }
    out
}

/// The preset discord-vs-temperature sweep: zero field,
/// J = (-1, -1.5, -2), D_z = 1.8, with the symmetric cross-exchange Γ_z
/// supplied by the caller. 300 temperatures on [0.01, 3].
pub fn preset_sweep(gamma_z: f64) -> SweepSpec {
    SweepSpec {
        variable: SweepVar::parse("T").unwrap(),
        from: 0.01,
        to: 3.0,
        steps: 300,
        fixed: Config {
            couplings: CouplingSet {
                j: [-1.0, -1.5, -2.0],
                d: [0.0, 0.0, 1.8],
                gamma: [0.0, 0.0, gamma_z],
                ..CouplingSet::zero()
            },
            temperature: None,
        },
        family: None,
    }
}

/// The Γ_z values of the three preset curves.
pub const PRESET_GAMMA_Z: [f64; 3] = [0.0, 0.3, 0.5];
