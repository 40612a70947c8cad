//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{CycScalar, Mode, Scalar, DEFAULT_TOL};
use crate::braided_fock::{build_sector, spectrum, SectorSpec};
use crate::dynamics::{symbolic_check, symmetry_check, symmetry_ops, RK4_TOL};
use crate::error::{Error, Result};
use crate::metasym::{build_algebra, displayed_violation, double_commutator, metaabelian_ordinary};
use crate::qgroup::{cross_check, qgroup_spectrum};
use crate::qubit_core::{convert_param, parse_rational, parse_root, BraidLevel, Level, Param};
use crate::suites::{level_label, run_suite, SuiteParams, SUITES};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "METABRAID_TOL";

#[derive(Parser, Debug)]
#[command(name = "metabraid", version, about = "Braided Majorana qubit sectors, spectra and mixed-bracket algebras")]
pub struct Cli {
    /// Scalar mode.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Comparison tolerance (float mode only).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct LevelArgs {
    /// Level `s` (at least 2) or `inf`.
    #[arg(long = "s", default_value = "3")]
    pub s: String,
    /// Representative `g = r/s`, coprime to `s`.
    #[arg(long = "r")]
    pub r: Option<u32>,
}

impl LevelArgs {
    fn level(&self) -> Result<BraidLevel> {
        let level: Level = self.s.parse()?;
        match (level, self.r) {
            (Level::Finite(s), Some(r)) => BraidLevel::with_representative(s, r),
            (Level::Inf, Some(_)) => Err(Error::Parse("--r needs a finite --s".into())),
            (l, None) => BraidLevel::from_level(l),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Energies of N-particle sectors; `--s` and `--N` accept lists such as `2,3,inf` and `1..8` (inclusive).
    Spectrum {
        #[arg(long = "s", default_value = "3")]
        s: String,
        #[arg(long = "N", default_value = "2")]
        n: String,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Converts one of the f, g, t, eta parametrizations to a level.
    Param {
        #[arg(long, group = "p")]
        g: Option<String>,
        #[arg(long, group = "p")]
        f: Option<String>,
        /// Root of unity: `1`, `-1`, `i`, `-i` or `m:k`.
        #[arg(long, group = "p", allow_hyphen_values = true)]
        t: Option<String>,
        /// `eta / (i pi)` as a rational.
        #[arg(long, group = "p", allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Compares projected quantum-group spectra with braided spectra.
    CrossCheck {
        #[arg(long = "s", default_value = "2,3,4,5")]
        s: String,
        #[arg(long = "N", default_value = "1..5")]
        n: String,
    },
    /// Writes the blocks, Hamiltonian and tower states of a sector.
    ExportSector {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Symmetry operators of the matrix Schrodinger equation.
    Dynamics {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Ordinary metaabelianess violation of the mixed-bracket algebra.
    Witness {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Spectrum from the projected quantum-group coproduct.
    QgroupSpectrum {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Outcome { code: if pass { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn usage(msg: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: msg }
    }
}

/// Parses `2,3,inf`.
pub fn parse_levels(s: &str) -> Result<Vec<BraidLevel>> {
    s.split(',').map(|x| BraidLevel::from_level(x.trim().parse()?)).collect()
}

/// Parses `1..8` (inclusive) or `1,2,5`.
pub fn parse_counts(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad particle count list '{s}'"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

fn resolve_tol(flag: Option<f64>, mode: Mode) -> Result<f64> {
    if mode == Mode::Exact {
        return Ok(0.0);
    }
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v.parse().map_err(|_| Error::Parse(format!("{TOL_ENV}='{v}' is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::OutOfRange(format!("tolerance {tol} must be finite and non-negative")));
    }
    Ok(tol)
}

fn level_order(l: &BraidLevel) -> (u32, u32) {
    (l.s().unwrap_or(u32::MAX), l.r())
}

fn spectrum_cells<S: Scalar + Send + Sync>(cells: &[(BraidLevel, usize)], n_max: Option<usize>, tol: f64) -> Result<Vec<Value>> {
    cells
        .par_iter()
        .map(|&(level, n)| {
            let spec = SectorSpec::new(n, level).with_cutoff(n_max.unwrap_or(n));
            let energies = spectrum::<S>(&spec, tol)?;
            let truncated = energies.len() < spec.n_max + 1;
            Ok(json!({
                "s": level_label(&level),
                "N": n,
                "energies": energies,
                "truncated": truncated,
                "plateau": if truncated { energies.last().copied() } else { None },
            }))
        })
        .collect()
}

fn spectrum_csv(rows: &[Value]) -> String {
    let mut out = String::from("s,N,energies,truncated,plateau\n");
    for r in rows {
        let s = match &r["s"] {
            Value::String(x) => x.clone(),
            other => other.to_string(),
        };
        let e: Vec<String> = r["energies"].as_array().into_iter().flatten().map(|v| v.to_string()).collect();
        let plateau = r["plateau"].as_u64().map(|p| p.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{}\n", s, r["N"], e.join(";"), r["truncated"], plateau));
    }
    out
}

fn export<S: Scalar>(level: BraidLevel, n: usize, tol: f64) -> Result<Value> {
    let sector = build_sector::<S>(&SectorSpec::new(n, level), tol)?;
    let vec_json = |v: &[S]| Value::Array(v.iter().map(Scalar::to_json).collect());
    Ok(json!({
        "level": level.to_json(),
        "N": n,
        "mode": S::MODE,
        "hamiltonian": sector.hamiltonian.to_json(),
        "blocks": sector.blocks.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        "vacuum": vec_json(&sector.vacuum),
        "states": sector.states.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        "energies": sector.energies,
    }))
}

fn dynamics<S: Scalar>(level: BraidLevel, n: usize, tol: f64) -> Result<(Value, bool)> {
    if n == 2 {
        let r = symmetry_check::<S>(level, tol)?;
        let pass = r.pass;
        return Ok((json!({"level": level.to_json(), "N": 2, "rows": r.rows, "solutions": r.solution_checks, "pass": pass}), pass));
    }
    let h = crate::braided_fock::hamiltonian::<S>(n);
    let rows: Vec<Value> = symmetry_ops::<S>(&level, n)?
        .iter()
        .map(|op| json!({"operator": op.name, "symbolic_pass": symbolic_check(&h, op, tol).pass, "numeric_max_err": Value::Null}))
        .collect();
    let pass = rows.iter().all(|r| r["symbolic_pass"] == json!(true));
    Ok((json!({"level": level.to_json(), "N": n, "rows": rows, "rk4_tol": RK4_TOL, "pass": pass}), pass))
}

fn witness<S: Scalar + Send + Sync>(level: BraidLevel, n: usize, tol: f64) -> Result<Value> {
    let alg = build_algebra::<S>(level, n)?;
    let first = metaabelian_ordinary(&alg, tol);
    let mut out = json!({
        "level": level.to_json(),
        "N": n,
        "witness": first.as_ref().map(|w| json!({"labels": [w.labels.0, w.labels.1, w.labels.2], "value": w.value.to_json()})),
    });
    if n == 2 {
        let shown = displayed_violation::<S>(&level);
        let at = double_commutator(&alg, 1, 2, -2)?;
        let alt = double_commutator(&alg, -1, 2, 1)?;
        out["displayed_value"] = shown.to_json();
        out["triple_1_2_m2"] = json!({"value": at.to_json(), "equals_displayed": at.approx_eq(&shown, tol)});
        out["triple_m1_2_1"] = json!({"value": alt.to_json(), "equals_displayed": alt.approx_eq(&shown, tol)});
    }
    Ok(out)
}

fn execute(cli: &Cli) -> Result<(Value, bool, Option<String>)> {
    let mode: Mode = cli.mode.into();
    let tol = resolve_tol(cli.tol, mode)?;
    macro_rules! by_mode {
        ($f:ident ( $($a:expr),* )) => {
            match mode {
                Mode::Exact => $f::<CycScalar>($($a),*),
                Mode::Float => $f::<Complex64>($($a),*),
            }
        };
    }
    match &cli.command {
        Command::Spectrum { s, n, n_max, format } => {
            let mut levels = parse_levels(s)?;
            levels.sort_by_key(level_order);
            let mut ns = parse_counts(n)?;
            ns.sort_unstable();
            for &n in &ns {
                SectorSpec::new(n, BraidLevel::inf()).validate()?;
            }
            let cells: Vec<(BraidLevel, usize)> = levels.iter().flat_map(|&l| ns.iter().map(move |&n| (l, n))).collect();
            let rows = by_mode!(spectrum_cells(&cells, *n_max, tol))?;
            let csv = (*format == Format::Csv).then(|| spectrum_csv(&rows));
            let doc = if rows.len() == 1 { rows[0].clone() } else { Value::Array(rows) };
            Ok((doc, true, csv))
        }
        Command::Param { g, f, t, eta } => {
            let p = match (g, f, t, eta) {
                (Some(g), _, _, _) => Param::G(parse_rational(g)?),
                (_, Some(f), _, _) => Param::F(parse_rational(f)?),
                (_, _, Some(t), _) => Param::T(parse_root(t)?),
                (_, _, _, Some(e)) => Param::Eta(parse_rational(e)?),
                _ => return Err(Error::Parse("one of --g, --f, --t, --eta is required".into())),
            };
            Ok((convert_param(&p)?.to_json(), true, None))
        }
        Command::Verify { suite, level, n } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::Parse(format!("unknown suite '{suite}'; expected one of {}", SUITES.join(", "))));
            }
            let params = SuiteParams { level: level.level()?, n: *n };
            let report = run_suite(suite, mode, &params, tol)?;
            let pass = report.pass;
            let mut doc = serde_json::to_value(&report).expect("report serializes");
            doc["level"] = params.level.to_json();
            doc["N"] = json!(n);
            doc["max_residual"] = json!(report.max_residual());
            Ok((doc, pass, None))
        }
        Command::CrossCheck { s, n } => {
            let mut levels = parse_levels(s)?;
            levels.sort_by_key(level_order);
            let mut ns = parse_counts(n)?;
            ns.sort_unstable();
            let rows: Vec<_> = levels
                .par_iter()
                .map(|l| by_mode!(cross_check(std::slice::from_ref(l), &ns, tol)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            let pass = rows.iter().all(|r| r.matches);
            Ok((json!({"rows": rows, "pass": pass}), pass, None))
        }
        Command::ExportSector { level, n } => Ok((by_mode!(export(level.level()?, *n, tol))?, true, None)),
        Command::Dynamics { level, n } => {
            let (doc, pass) = by_mode!(dynamics(level.level()?, *n, tol))?;
            Ok((doc, pass, None))
        }
        Command::Witness { level, n } => Ok((by_mode!(witness(level.level()?, *n, tol))?, true, None)),
        Command::QgroupSpectrum { level, n, n_max } => {
            let l = level.level()?;
            let energies = by_mode!(qgroup_spectrum(l.eta(), *n, n_max.unwrap_or(*n), tol))?;
            Ok((json!({"s": level_label(&l), "N": n, "energies": energies}), true, None))
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.exit_code() == 0 {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            } else {
                Outcome::usage(text)
            };
        }
    };
    match execute(&cli) {
        Ok((doc, pass, csv)) => {
            let text = csv.unwrap_or_else(|| serde_json::to_string_pretty(&doc).expect("json") + "\n");
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome::ok(String::new(), pass),
                    Err(e) => Outcome::usage(format!("cannot write {}: {e}\n", path.display())),
                },
                None => Outcome::ok(text, pass),
            }
        }
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}
