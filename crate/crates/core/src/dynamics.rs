//! Matrix Schrödinger equation `(i∂_t − H)Ψ = 0` of the braided sectors and
//! its dressed creation/annihilation symmetries.

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{vec_near_zero, Mat, Scalar};
use crate::braided_fock::{creation_block, hamiltonian};
use crate::error::Result;
use crate::metasym::{build_algebra, BracketAlgebra};
use crate::qubit_core::BraidLevel;
use crate::report::Check;

/// Integration step of the numeric propagation.
pub const RK4_STEP: f64 = 1e-3;
/// Largest allowed deviation between the integrated and closed-form states.
pub const RK4_TOL: f64 = 1e-8;

/// Stationary solution `Ψ(t) = e^(−iEt) v`.
#[derive(Clone, Debug)]
pub struct Solution<S> {
    pub label: &'static str,
    pub energy: i64,
    pub vector: Vec<S>,
}

/// Time-dependent operator `S(t) = e^(iωt) M`.
#[derive(Clone, Debug)]
pub struct SymmetryOp<S> {
    pub name: String,
    pub omega: i64,
    pub matrix: Mat<S>,
}

#[derive(Clone, Debug)]
pub struct SchrodingerSystem<S> {
    pub level: BraidLevel,
    pub hamiltonian: Mat<S>,
    pub solutions: Vec<Solution<S>>,
}

/// Two-particle solutions `v_00 = e_1`, `v_10 = e_3`, `v_01 = e^(iπg) e_2`,
/// `v_11 = e^(iπg) e_4` with energies `0, 1, 1, 2`.
pub fn solutions<S: Scalar>(level: &BraidLevel) -> Vec<Solution<S>> {
    let ph = level.phase::<S>(1);
    let v = |k: usize, c: S| {
        let mut out = vec![S::zero(); 4];
        out[k] = c;
        out
    };
    vec![
        Solution { label: "psi00", energy: 0, vector: v(0, S::one()) },
        Solution { label: "psi10", energy: 1, vector: v(2, S::one()) },
        Solution { label: "psi01", energy: 1, vector: v(1, ph.clone()) },
        Solution { label: "psi11", energy: 2, vector: v(3, ph) },
    ]
}

pub fn system<S: Scalar>(level: BraidLevel) -> SchrodingerSystem<S> {
    SchrodingerSystem { level, hamiltonian: hamiltonian(2), solutions: solutions(&level) }
}

/// `e^(−it) A†_k`, `e^(it) A_k` for `k = 1..N`, and the identity `c`.
pub fn symmetry_ops<S: Scalar>(level: &BraidLevel, n: usize) -> Result<Vec<SymmetryOp<S>>> {
    let mut out = Vec::new();
    for k in 1..=n {
        let a = creation_block::<S>(level, k, n)?;
        out.push(SymmetryOp { name: format!("S{k}^dagger"), omega: -1, matrix: a.clone() });
        out.push(SymmetryOp { name: format!("S{k}"), omega: 1, matrix: a.dagger() });
    }
    out.push(SymmetryOp { name: "c".into(), omega: 0, matrix: Mat::identity(1 << n) });
    Ok(out)
}

/// `−ωM = [H, M]`, the exact form of `[S(t), i∂_t − H] = 0`.
pub fn symbolic_check<S: Scalar>(h: &Mat<S>, op: &SymmetryOp<S>, tol: f64) -> Check {
    let lhs = op.matrix.scale(&S::from_int(-op.omega));
    Check::equal(format!("-omega M = [H, M] for {}", op.name), &lhs, &h.comm(&op.matrix).unwrap(), tol)
}

fn rk4_step(h: &Mat<Complex64>, y: &[Complex64], dt: f64) -> Vec<Complex64> {
    let mi = Complex64::new(0.0, -1.0);
    let f = |v: &[Complex64]| -> Vec<Complex64> { h.apply(v).unwrap().into_iter().map(|x| x * mi).collect() };
    let axpy = |v: &[Complex64], k: &[Complex64], a: f64| -> Vec<Complex64> {
        v.iter().zip(k).map(|(x, y)| x + y * a).collect()
    };
    let k1 = f(y);
    let k2 = f(&axpy(y, &k1, dt / 2.0));
    let k3 = f(&axpy(y, &k2, dt / 2.0));
    let k4 = f(&axpy(y, &k3, dt));
    (0..y.len()).map(|i| y[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0)).collect()
}

/// Integrates `iΦ' = HΦ` from `Φ(0) = M v` over `[0, 2π]` and returns the
/// largest deviation from `e^(i(ω−E)t) M v`.
pub fn propagate_deviation<S: Scalar>(h: &Mat<S>, op: &SymmetryOp<S>, sol: &Solution<S>, dt: f64) -> f64 {
    let hf = h.to_float();
    let phi0: Vec<Complex64> = op.matrix.to_float().apply(&sol.vector.iter().map(|x| x.to_complex()).collect::<Vec<_>>()).unwrap();
    let freq = (op.omega - sol.energy) as f64;
    let t_end = 2.0 * std::f64::consts::PI;
    let steps = (t_end / dt).ceil() as usize;
    let mut y = phi0.clone();
    let mut t = 0.0;
    let mut worst: f64 = 0.0;
    for _ in 0..steps {
        let step = dt.min(t_end - t);
        y = rk4_step(&hf, &y, step);
        t += step;
        let phase = Complex64::new(0.0, freq * t).exp();
        let dev = y.iter().zip(&phi0).map(|(a, b)| (a - b * phase).norm()).fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    worst
}

/// One row of the dynamics report.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorRow {
    pub operator: String,
    pub symbolic_pass: bool,
    pub numeric_max_err: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DynamicsReport {
    pub rows: Vec<OperatorRow>,
    pub solution_checks: Vec<Check>,
    pub pass: bool,
}

/// Eigen-equation residuals `H v − E v` of the stationary solutions.
pub fn solution_checks<S: Scalar>(sys: &SchrodingerSystem<S>, tol: f64) -> Vec<Check> {
    sys.solutions
        .iter()
        .map(|s| {
            let hv = sys.hamiltonian.apply(&s.vector).unwrap();
            let r: Vec<S> = hv.iter().zip(&s.vector).map(|(a, b)| a.minus(&b.times(&S::from_int(s.energy)))).collect();
            let res = r.iter().map(|x| x.abs()).fold(0.0, f64::max);
            Check { name: format!("H v = {} v for {}", s.energy, s.label), pass: vec_near_zero(&r, tol), residual: res }
        })
        .collect()
}

/// Symbolic and numeric symmetry checks for the two-particle equation.
pub fn symmetry_check<S: Scalar>(level: BraidLevel, tol: f64) -> Result<DynamicsReport> {
    let sys = system::<S>(level);
    let ops = symmetry_ops::<S>(&level, 2)?;
    let mut rows = Vec::new();
    for op in &ops {
        let sym = symbolic_check(&sys.hamiltonian, op, tol);
        let mut worst: f64 = 0.0;
        for sol in &sys.solutions {
            let image = op.matrix.apply(&sol.vector)?;
            if vec_near_zero(&image, tol) {
                continue;
            }
            worst = worst.max(propagate_deviation(&sys.hamiltonian, op, sol, RK4_STEP));
        }
        rows.push(OperatorRow { operator: op.name.clone(), symbolic_pass: sym.pass, numeric_max_err: worst });
    }
    let solution_checks = solution_checks(&sys, tol);
    let pass = rows.iter().all(|r| r.symbolic_pass && r.numeric_max_err < RK4_TOL) && solution_checks.iter().all(|c| c.pass);
    Ok(DynamicsReport { rows, solution_checks, pass })
}

/// The same symbolic condition for the `N`-particle Hamiltonian and blocks.
pub fn symbolic_checks_n<S: Scalar>(level: BraidLevel, n: usize, tol: f64) -> Result<Vec<Check>> {
    let h = hamiltonian::<S>(n);
    Ok(symmetry_ops::<S>(&level, n)?.iter().map(|op| symbolic_check(&h, op, tol)).collect())
}

/// Algebra of the symmetry operators at `t = 0`, and whether it coincides
/// with the two-particle mixed-bracket algebra generator by generator and
/// bracket by bracket.
pub fn symmetry_algebra<S: Scalar>(level: BraidLevel, tol: f64) -> Result<(BracketAlgebra<S>, bool)> {
    let ops = symmetry_ops::<S>(&level, 2)?;
    let reference = build_algebra::<S>(level, 2)?;
    let mut alg = reference.clone();
    for (k, pair) in ops.chunks(2).enumerate() {
        if let [create, annihilate] = pair {
            alg.gens.insert(k as i32 + 1, create.matrix.clone());
            alg.gens.insert(-(k as i32) - 1, annihilate.matrix.clone());
        }
    }
    alg.gens.insert(0, ops.last().expect("identity operator").matrix.clone());
    let same_gens = alg.gens.iter().all(|(l, g)| g.approx_eq(&reference.gens[l], tol));
    let identity: Vec<(i32, i32)> = alg.labels.iter().map(|&l| (l, l)).collect();
    let same = same_gens && alg.matches_under(&reference, &identity, tol);
    Ok((alg, same))
}
