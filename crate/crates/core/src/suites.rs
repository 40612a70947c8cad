//! Named verification suites producing [`Report`]s in either scalar mode.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::arith::{CycScalar, Mat, Mode, Scalar};
use crate::braided_fock::{build_sector, expected_spectrum, indist_projector, tower_vanishing_rows, SectorSpec};
use crate::compat::{quon_angle, quon_discriminator, ternary_sector, ternary_spectrum_match};
use crate::dynamics::{symbolic_checks_n, symmetry_algebra, symmetry_check, RK4_TOL};
use crate::error::{Error, Result};
use crate::metasym::{build_algebra, dimension_report, metaabelian_mixed, metaabelian_ordinary, parafermion_limit};
use crate::qgroup::{classical_rep, coassociativity_check, cross_check, kill_polynomial, quantum_rep};
use crate::qubit_core::{braid_relation_residual, level_of_root, BraidLevel, Gl11Generators, Level, RootLevel, DEFAULT_K_MAX};
use crate::report::{Check, Report};

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 11] = [
    "qubit",
    "spectrum",
    "superselection",
    "qgroup",
    "mixed-algebra",
    "parafermion",
    "dynamics",
    "quon",
    "ternary",
    "metaabelian",
    "all",
];

/// Largest particle number used by the quantum-group comparison.
const QGROUP_MAX_N: usize = 5;

/// Parameters shared by every suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub level: BraidLevel,
    pub n: usize,
}

fn refs(name: &str) -> &'static [&'static str] {
    match name {
        "qubit" => &["gl(1|1) relations", "braid relation", "level of a root of unity"],
        "spectrum" => &["braided building blocks", "N-particle Hamiltonian", "truncated energies", "tower polynomials"],
        "superselection" => &["indistinguishability projector", "superselected Hilbert space"],
        "qgroup" => &["osp(1|2) relations", "U_q(osp(1|2)) anticommutator", "braided coproduct", "truncation cubic"],
        "mixed-algebra" => &["mixed bracket", "angle formula", "anticommutator brackets", "genuinely mixed brackets"],
        "metaabelian" => &["mixed metaabelianess identity", "metaabelianess condition"],
        "parafermion" => &["untruncated generators", "parafermionic brackets", "Z2xZ2 bracket table", "graded dimensions"],
        "dynamics" => &["matrix Schrodinger equation", "symmetry operators"],
        "quon" => &["quon angle", "ordinary anticommutator of building blocks"],
        "ternary" => &["ternary matrices", "nonminimal building blocks", "ternary truncation identity"],
        _ => &[],
    }
}

fn qubit<S: Scalar>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let mut c = Gl11Generators::<S>::new().relation_checks(tol);
    let t: S = p.level.t();
    c.push(Check::zero("braid relation residual", &braid_relation_residual(&t), tol));
    let found = level_of_root(&t, DEFAULT_K_MAX, tol)?;
    c.push(Check::flag(format!("level of t is {}", p.level.level()), found == RootLevel::Level(p.level.level())));
    Ok(c)
}

fn spectrum_suite<S: Scalar>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let spec = SectorSpec::new(p.n, p.level);
    let sector = build_sector::<S>(&spec, tol)?;
    let mut c = sector.structure_checks(tol);
    let expect = expected_spectrum(p.level.level(), p.n);
    c.push(Check::flag(format!("energies = {expect:?}"), sector.energies == expect));
    for row in tower_vanishing_rows::<S>(&spec, tol)? {
        c.push(Check::flag(format!("|{}> vanishes iff f_{}(t) = 0", row.n, row.n), row.state_vanishes == row.f_vanishes));
    }
    Ok(c)
}

/// The projector displayed for the third root of unity, two particles.
pub fn third_root_projector<S: Scalar>() -> Mat<S> {
    let j = S::root_of_unity(1, 3);
    let half = S::from_ratio(1, 2);
    let mut p = Mat::identity(4);
    p.set(1, 1, half.clone());
    p.set(2, 2, half.clone());
    p.set(1, 2, half.times(&j).negated());
    p.set(2, 1, half.times(&j.times(&j)).negated());
    p
}

fn superselection<S: Scalar>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let sector = build_sector::<S>(&SectorSpec::new(p.n, p.level), tol)?;
    let proj = indist_projector(&sector, tol)?;
    let mut c = vec![
        Check::equal("P^2 = P", &(&proj * &proj), &proj, tol),
        Check::equal("P^dagger = P", &proj.dagger(), &proj, tol),
        Check::zero("[P, H] = 0", &proj.comm(&sector.hamiltonian)?, tol),
    ];
    for &e in &sector.energies {
        let v = &sector.states[e];
        let pv = proj.apply(v)?;
        let diff = Mat::from_vec(v.len(), 1, pv.iter().zip(v).map(|(a, b)| a.minus(b)).collect())?;
        c.push(Check::zero(format!("P v_E = v_E for E = {e}"), &diff, tol));
    }
    c.push(Check::flag("rank P = number of energies", proj.to_float().rank(1e-9) == sector.energies.len()));
    if p.n == 2 {
        let v10 = sector.blocks[0].apply(&sector.vacuum)?;
        let v01 = sector.blocks[1].apply(&sector.vacuum)?;
        let anti: Vec<S> = v10.iter().zip(&v01).map(|(a, b)| a.minus(b)).collect();
        c.push(Check::zero("P (v10 - v01) = 0", &Mat::from_vec(4, 1, proj.apply(&anti)?)?, tol));
        if p.level.g() == Rational64::new(1, 3) {
            c.push(Check::equal("P equals the displayed third-root projector", &proj, &third_root_projector(), tol));
        }
    }
    Ok(c)
}

fn qgroup_suite<S: Scalar>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let mut c = Vec::new();
    for lambda in [Rational64::from_integer(0), Rational64::new(1, 2)] {
        let rep = classical_rep::<S>(8, lambda)?;
        for mut x in rep.relation_checks(tol).into_iter().chain(rep.anti_involution_checks(tol)) {
            x.name = format!("lambda={lambda}: {}", x.name);
            c.push(x);
        }
    }
    let eta = p.level.eta();
    let rep = quantum_rep::<S>(eta, 8)?;
    c.extend(rep.relation_checks(tol)?);
    c.push(rep.conjugation_check(eta, tol)?);
    c.push(coassociativity_check(&quantum_rep::<S>(eta, 3)?, tol)?);
    let ns: Vec<usize> = (1..=p.n.min(QGROUP_MAX_N)).collect();
    for row in cross_check::<S>(&[p.level], &ns, tol)? {
        c.push(Check::flag(format!("projected spectrum = braided spectrum for N = {}", row.n), row.matches));
    }
    let cubic = kill_polynomial(3).map(|k| k.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let want: Vec<String> = ["-1", "2", "-2", "1"].iter().map(|s| s.to_string()).collect();
    c.push(Check::flag("three-particle kill polynomial = t^3 - 2t^2 + 2t - 1", cubic == Some(want)));
    Ok(c)
}

fn mixed_algebra<S: Scalar + Send + Sync>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let alg = build_algebra::<S>(p.level, p.n)?;
    let mut c = alg.closure_checks(tol);
    c.extend(alg.hermiticity_checks(tol));
    c.extend(alg.ledger_checks(tol));
    c.push(Check::flag("theta_JI = -theta_IJ off the central diagonal", alg.angle_antisymmetry()));
    if p.n >= 2 {
        let two = build_algebra::<S>(p.level, 2)?;
        for a in 1..=p.n as i32 {
            for b in a + 1..=p.n as i32 {
                let map = [(0, 0), (a, 1), (-a, -1), (b, 2), (-b, -2)];
                c.push(Check::flag(format!("slots ({a},{b}) reproduce the two-particle algebra"), alg.matches_under(&two, &map, tol)));
            }
        }
    }
    c.push(Check::flag("mixed metaabelianess identity", metaabelian_mixed(&alg, tol)));
    Ok(c)
}

fn metaabelian<S: Scalar + Send + Sync>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let alg = build_algebra::<S>(p.level, p.n.max(2))?;
    let w = metaabelian_ordinary(&alg, tol);
    Ok(vec![
        Check::flag("mixed metaabelianess identity", metaabelian_mixed(&alg, tol)),
        Check::flag("ordinary metaabelianess is violated", w.is_some()),
    ])
}

fn parafermion<S: Scalar>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let mut c = parafermion_limit::<S>(tol).checks;
    for n in 1..=p.n {
        let d = dimension_report::<S>(n, tol)?;
        c.push(Check::flag(format!("N = {n}: C^({}|{}) with bosonic dimension {}", d.even, d.odd, d.bosonic), d.consistent));
    }
    Ok(c)
}

fn dynamics_suite<S: Scalar>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let r = symmetry_check::<S>(p.level, tol)?;
    let mut c = r.solution_checks;
    for row in r.rows {
        c.push(Check::flag(format!("-omega M = [H2, M] for {}", row.operator), row.symbolic_pass));
        c.push(Check {
            name: format!("integrated solution for {}", row.operator),
            pass: row.numeric_max_err < RK4_TOL,
            residual: row.numeric_max_err,
        });
    }
    if p.n >= 3 {
        c.extend(symbolic_checks_n::<S>(p.level, p.n, tol)?);
    }
    c.push(Check::flag("symmetry operators close the two-particle algebra", symmetry_algebra::<S>(p.level, tol)?.1));
    Ok(c)
}

fn quon<S: Scalar>(p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let mut c = quon_discriminator::<S>(p.level, p.n.max(2), tol)?.checks;
    for (q, want) in [(1.0, 0.0), (0.0, std::f64::consts::FRAC_PI_4), (-1.0, std::f64::consts::FRAC_PI_2)] {
        let theta = quon_angle(q)?;
        let back = 1.0 - 2.0 * theta.sin().powi(2);
        let res = (theta - want).abs().max((back - q).abs());
        c.push(Check { name: format!("theta_q at q = {q}"), pass: res < 1e-12, residual: res });
    }
    Ok(c)
}

fn ternary<S: Scalar>(_p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    let mut c = Vec::new();
    let j = S::root_of_unity(1, 3);
    let j2 = j.times(&j);
    for n in [2, 3] {
        let s = ternary_sector::<S>(n)?;
        for (k, b) in s.blocks.iter().enumerate() {
            c.push(Check::zero(format!("N={n}: block {}^2 = 0", k + 1), &(b * b), tol));
        }
        for k in 0..n {
            for l in k + 1..n {
                let ok = s.exchange_factor(k, l, tol).is_some_and(|f| f.minus(&j2).near_zero(tol));
                c.push(Check::flag(format!("N={n}: B{}B{} = j^2 B{}B{}", l + 1, k + 1, k + 1, l + 1), ok));
            }
        }
        c.push(Check::zero(format!("N={n}: (B^dagger)^{}", n + 1), &s.total_creation().pow(n as u32 + 1)?, tol));
        if n == 3 {
            c.push(Check::zero("N=3: (B^dagger)^3 = 0", &s.total_creation().pow(3)?, tol));
        }
        let (t, m, same) = ternary_spectrum_match::<S>(n, tol)?;
        c.push(Check::flag(format!("N={n}: ternary energies {t:?} = minimal energies {m:?}"), same));
        c.extend(s.z3_checks(tol).into_iter().map(|mut x| {
            x.name = format!("N={n}: {}", x.name);
            x
        }));
        let alg = s.bracket_algebra(BraidLevel::with_representative(3, 2)?)?;
        c.extend(alg.closure_checks(tol).into_iter().map(|mut x| {
            x.name = format!("N={n}: {}", x.name);
            x
        }));
    }
    Ok(c)
}

fn dispatch<S: Scalar + Send + Sync>(name: &str, p: &SuiteParams, tol: f64) -> Result<Vec<Check>> {
    match name {
        "qubit" => qubit::<S>(p, tol),
        "spectrum" => spectrum_suite::<S>(p, tol),
        "superselection" => superselection::<S>(p, tol),
        "qgroup" => qgroup_suite::<S>(p, tol),
        "mixed-algebra" => mixed_algebra::<S>(p, tol),
        "metaabelian" => metaabelian::<S>(p, tol),
        "parafermion" => parafermion::<S>(p, tol),
        "dynamics" => dynamics_suite::<S>(p, tol),
        "quon" => quon::<S>(p, tol),
        "ternary" => ternary::<S>(p, tol),
        other => Err(Error::Parse(format!("unknown suite '{other}'; expected one of {}", SUITES.join(", ")))),
    }
}

/// Runs a suite, or every suite for `"all"`, with check names prefixed by the
/// suite name in the latter case.
pub fn run_suite(name: &str, mode: Mode, p: &SuiteParams, tol: f64) -> Result<Report> {
    let run = |n: &str| match mode {
        Mode::Exact => dispatch::<CycScalar>(n, p, tol),
        Mode::Float => dispatch::<Complex64>(n, p, tol),
    };
    if name == "all" {
        let mut checks = Vec::new();
        let mut all_refs = Vec::new();
        for &suite in SUITES.iter().filter(|&&s| s != "all") {
            for mut c in run(suite)? {
                c.name = format!("{suite}: {}", c.name);
                checks.push(c);
            }
            all_refs.extend_from_slice(refs(suite));
        }
        return Ok(Report::new("all", mode, &all_refs, checks));
    }
    let checks = run(name)?;
    Ok(Report::new(name, mode, refs(name), checks))
}

/// Level label used in machine-readable output: the integer `s` or `"inf"`.
pub fn level_label(level: &BraidLevel) -> serde_json::Value {
    match level.level() {
        Level::Finite(s) => serde_json::json!(s),
        Level::Inf => serde_json::json!("inf"),
    }
}
