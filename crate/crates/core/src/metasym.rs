//! Mixed brackets, angle ledgers and the mixed-bracket Heisenberg-Lie algebras
//! of the braided sectors, with their metaabelianess predicates and the
//! untruncated parafermionic limit.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Mat, Scalar};
use crate::braided_fock::{build_sector, creation_block, indist_projector, SectorSpec};
use crate::error::{Error, Result};
use crate::qubit_core::{rat_mod, BraidLevel};
use crate::report::Check;

/// Angle stored as `θ/π`, reduced to `[−1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(pub Rational64);

impl Angle {
    pub fn new(over_pi: Rational64) -> Self {
        let one = Rational64::from_integer(1);
        Angle(rat_mod(over_pi + one, 2) - one)
    }

    pub fn zero() -> Self {
        Angle(Rational64::from_integer(0))
    }

    pub fn half_pi() -> Self {
        Angle::new(Rational64::new(1, 2))
    }

    pub fn over_pi(self) -> Rational64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        std::f64::consts::PI * (*self.0.numer() as f64) / (*self.0.denom() as f64)
    }

    pub fn sin<S: Scalar>(self) -> S {
        S::sin_pi(self.0)
    }

    pub fn cos<S: Scalar>(self) -> S {
        S::cos_pi(self.0)
    }
}

impl std::ops::Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        Angle::new(-self.0)
    }
}

impl Serialize for Angle {
    fn serialize<Z: serde::Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        ser.serialize_str(&self.0.to_string())
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}pi", self.0)
    }
}

/// `(X, Y)_θ = i sin θ [X, Y] + cos θ {X, Y}`.
pub fn mixed_bracket<S: Scalar>(x: &Mat<S>, y: &Mat<S>, theta: Angle) -> Result<Mat<S>> {
    if !x.is_square() || x.shape() != y.shape() {
        return Err(Error::DimensionMismatch { op: "mixed_bracket", lhs: x.shape(), rhs: y.shape() });
    }
    let sin = S::imag_unit().times(&theta.sin::<S>());
    let cos = theta.cos::<S>();
    let mut out = Mat::zeros(x.rows(), x.cols());
    if !sin.is_exact_zero() {
        out = &out + &x.comm(y)?.scale(&sin);
    }
    if !cos.is_exact_zero() {
        out = &out + &x.acomm(y)?.scale(&cos);
    }
    Ok(out)
}

/// Angle bookkeeping for one ordered pair of slots `a < b`.
#[derive(Clone, Debug)]
pub struct AngleLedger<S> {
    pub slots: (usize, usize),
    pub nl: Mat<S>,
    pub nr: Mat<S>,
    pub lambda_l: BTreeMap<i32, i64>,
    pub lambda_r: BTreeMap<i32, i64>,
    pub mu: BTreeMap<i32, i64>,
    pub nu: BTreeMap<i32, i64>,
    /// `k = (2g + 1)π/4`, which is `(s + 2)π/(4s)` at `g = 1/s`.
    pub k: Rational64,
}

fn sign(i: i32) -> i64 {
    if i > 0 {
        1
    } else {
        -1
    }
}

/// `−Z/2` on slot `slot` of `n`, identity elsewhere.
fn number_like<S: Scalar>(slot: usize, n: usize) -> Mat<S> {
    let z = Mat::from_ints(&[&[1, 0], &[0, -1]]).scale(&S::from_ratio(-1, 2));
    let id = Mat::identity(2);
    Mat::kron_all((1..=n).map(|k| if k == slot { &z } else { &id }))
}

impl<S: Scalar> AngleLedger<S> {
    pub fn new(level: &BraidLevel, a: usize, b: usize, n: usize) -> Self {
        let labels = [a as i32, -(a as i32), b as i32, -(b as i32)];
        let mut lambda_l = BTreeMap::new();
        let mut lambda_r = BTreeMap::new();
        let mut mu = BTreeMap::new();
        let mut nu = BTreeMap::new();
        for i in labels {
            let on_left = i.unsigned_abs() as usize == a;
            let ll = if on_left { sign(i) } else { 0 };
            let lr = if on_left { 0 } else { sign(i) };
            lambda_l.insert(i, ll);
            lambda_r.insert(i, lr);
            mu.insert(i, ll + lr);
            nu.insert(i, ll * ll - lr * lr);
        }
        AngleLedger {
            slots: (a, b),
            nl: number_like(a, n),
            nr: number_like(b, n),
            lambda_l,
            lambda_r,
            mu,
            nu,
            k: (level.g() * 2 + 1) / 4,
        }
    }

    /// `θ_IJ = k μ_I μ_J (ν_I − ν_J)` for labels of this ledger.
    pub fn angle(&self, i: i32, j: i32) -> Option<Angle> {
        let (mi, ni) = (self.mu.get(&i)?, self.nu.get(&i)?);
        let (mj, nj) = (self.mu.get(&j)?, self.nu.get(&j)?);
        Some(Angle::new(self.k * (mi * mj * (ni - nj))))
    }

    /// `[N^L, G_I] = λ^L_I G_I` and `[N^R, G_I] = λ^R_I G_I`.
    pub fn eigen_checks(&self, gens: &BTreeMap<i32, Mat<S>>, tol: f64) -> Vec<Check> {
        let mut out = Vec::new();
        for (&i, ll) in &self.lambda_l {
            let g = &gens[&i];
            let lr = self.lambda_r[&i];
            let dl = &self.nl.comm(g).unwrap() - &g.scale(&S::from_int(*ll));
            let dr = &self.nr.comm(g).unwrap() - &g.scale(&S::from_int(lr));
            out.push(Check::zero(format!("[NL,G{i:+}] = {ll} G{i:+}"), &dl, tol));
            out.push(Check::zero(format!("[NR,G{i:+}] = {lr} G{i:+}"), &dr, tol));
        }
        out
    }
}

/// Generators `G_0, G_{±1}, …, G_{±N}` with the mixed-bracket angle function.
#[derive(Clone, Debug)]
pub struct BracketAlgebra<S> {
    pub level: BraidLevel,
    pub particles: usize,
    pub labels: Vec<i32>,
    pub gens: BTreeMap<i32, Mat<S>>,
    pub ledgers: Vec<AngleLedger<S>>,
}

/// Label order `0, +1, −1, +2, −2, …`.
pub fn label_order(n: usize) -> Vec<i32> {
    let mut out = vec![0];
    for k in 1..=n as i32 {
        out.push(k);
        out.push(-k);
    }
    out
}

/// Outcome of one bracket in a closure scan.
#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub i: i32,
    pub j: i32,
    pub angle: Angle,
    /// `Some(q)` when the bracket equals `q·G_0` with `q ∈ {0, 1}`.
    pub central_coeff: Option<u8>,
    pub residual: f64,
}

impl<S: Scalar> BracketAlgebra<S> {
    pub fn dim(&self) -> usize {
        self.gens[&0].rows()
    }

    pub fn gen(&self, i: i32) -> Option<&Mat<S>> {
        self.gens.get(&i)
    }

    pub fn angle(&self, i: i32, j: i32) -> Angle {
        if i == 0 {
            return Angle::half_pi();
        }
        if j == 0 {
            return -Angle::half_pi();
        }
        let (a, b) = (i.unsigned_abs() as usize, j.unsigned_abs() as usize);
        if a == b {
            return Angle::zero();
        }
        let key = (a.min(b), a.max(b));
        self.ledgers
            .iter()
            .find(|l| l.slots == key)
            .and_then(|l| l.angle(i, j))
            .expect("ledger covers every slot pair")
    }

    pub fn bracket(&self, i: i32, j: i32) -> Mat<S> {
        mixed_bracket(&self.gens[&i], &self.gens[&j], self.angle(i, j)).unwrap()
    }

    /// Classifies a matrix as `0`, `G_0` or neither.
    pub fn central_coeff(&self, m: &Mat<S>, tol: f64) -> (Option<u8>, f64) {
        if m.is_zero(tol) {
            return (Some(0), m.max_abs());
        }
        let d = m - &self.gens[&0];
        if d.is_zero(tol) {
            (Some(1), d.max_abs())
        } else {
            (None, m.max_abs().min(d.max_abs()))
        }
    }

    pub fn bracket_table(&self, tol: f64) -> Vec<BracketEntry> {
        let mut out = Vec::new();
        for &i in &self.labels {
            for &j in &self.labels {
                let (c, r) = self.central_coeff(&self.bracket(i, j), tol);
                out.push(BracketEntry { i, j, angle: self.angle(i, j), central_coeff: c, residual: r });
            }
        }
        out
    }

    /// Every bracket is `G_0` for `J = −I ≠ 0` and vanishes otherwise.
    pub fn closure_checks(&self, tol: f64) -> Vec<Check> {
        self.bracket_table(tol)
            .into_iter()
            .map(|e| {
                let want = u8::from(e.i != 0 && e.i + e.j == 0);
                Check {
                    name: format!("(G{:+},G{:+})_{} = {}", e.i, e.j, e.angle, if want == 1 { "G0" } else { "0" }),
                    pass: e.central_coeff == Some(want),
                    residual: if e.central_coeff == Some(want) { e.residual } else { e.residual.max(1.0) },
                }
            })
            .collect()
    }

    pub fn hermiticity_checks(&self, tol: f64) -> Vec<Check> {
        self.labels
            .iter()
            .map(|&i| Check::equal(format!("G{:+}^dagger = G{:+}", i, -i), &self.gens[&i].dagger(), &self.gens[&-i], tol))
            .collect()
    }

    pub fn angle_antisymmetry(&self) -> bool {
        self.labels
            .iter()
            .flat_map(|&i| self.labels.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i != 0 || j != 0)
            .all(|(i, j)| self.angle(j, i) == -self.angle(i, j))
    }

    pub fn ledger_checks(&self, tol: f64) -> Vec<Check> {
        self.ledgers.iter().flat_map(|l| l.eigen_checks(&self.gens, tol)).collect()
    }

    /// Compares brackets with another algebra under a label map `self → other`.
    pub fn matches_under(&self, other: &BracketAlgebra<S>, map: &[(i32, i32)], tol: f64) -> bool {
        map.iter().all(|&(i, oi)| {
            map.iter().all(|&(j, oj)| {
                self.angle(i, j) == other.angle(oi, oj)
                    && self.central_coeff(&self.bracket(i, j), tol).0
                        == other.central_coeff(&other.bracket(oi, oj), tol).0
            })
        })
    }
}

/// Algebra of the `N`-particle braided sector with generators `A†_k`, `A_k`
/// and the identity.
pub fn build_algebra<S: Scalar>(level: BraidLevel, n: usize) -> Result<BracketAlgebra<S>> {
    if n == 0 {
        return Err(Error::OutOfRange("at least one particle is required".into()));
    }
    let spec = SectorSpec::new(n, level);
    spec.validate()?;
    let mut gens = BTreeMap::new();
    gens.insert(0, Mat::identity(1 << n));
    for k in 1..=n {
        let c = creation_block::<S>(&level, k, n)?;
        gens.insert(-(k as i32), c.dagger());
        gens.insert(k as i32, c);
    }
    let mut ledgers = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            ledgers.push(AngleLedger::new(&level, a, b, n));
        }
    }
    Ok(BracketAlgebra { level, particles: n, labels: label_order(n), gens, ledgers })
}

pub fn build_algebra_2p<S: Scalar>(level: BraidLevel) -> BracketAlgebra<S> {
    build_algebra(level, 2).expect("two-particle algebra")
}

pub fn build_algebra_3p<S: Scalar>(level: BraidLevel) -> BracketAlgebra<S> {
    build_algebra(level, 3).expect("three-particle algebra")
}

/// Label maps of the three two-slot subalgebras of the three-particle algebra.
pub fn three_particle_subalgebras() -> [(&'static str, [(i32, i32); 5]); 3] {
    [
        ("S12", [(0, 0), (1, 1), (-1, -1), (2, 2), (-2, -2)]),
        ("S13", [(0, 0), (1, 1), (-1, -1), (3, 2), (-3, -2)]),
        ("S23", [(0, 0), (2, 1), (-2, -1), (3, 2), (-3, -2)]),
    ]
}

/// `(G_I, (G_J, G_K)_θJK)_θ(I,J+K) = 0` for every label triple. A nonzero inner
/// bracket with no generator labelled `J + K` counts as a failure.
pub fn metaabelian_mixed<S: Scalar + Send + Sync>(alg: &BracketAlgebra<S>, tol: f64) -> bool {
    let triples: Vec<(i32, i32, i32)> = alg
        .labels
        .iter()
        .flat_map(|&i| alg.labels.iter().flat_map(move |&j| alg.labels.iter().map(move |&k| (i, j, k))))
        .collect();
    let inner: BTreeMap<(i32, i32), Mat<S>> =
        alg.labels.iter().flat_map(|&j| alg.labels.iter().map(move |&k| (j, k))).map(|(j, k)| ((j, k), alg.bracket(j, k))).collect();
    triples.par_iter().all(|&(i, j, k)| {
        let x = &inner[&(j, k)];
        let sum = j + k;
        if !alg.gens.contains_key(&sum) {
            return x.is_zero(tol);
        }
        mixed_bracket(&alg.gens[&i], x, alg.angle(i, sum)).unwrap().is_zero(tol)
    })
}

/// A label triple with `[G_I, [G_J, G_K]] ≠ 0`.
#[derive(Clone, Debug)]
pub struct Witness<S> {
    pub labels: (i32, i32, i32),
    pub value: Mat<S>,
}

/// `[G_I, [G_J, G_K]]` with ordinary commutators.
pub fn double_commutator<S: Scalar>(alg: &BracketAlgebra<S>, i: i32, j: i32, k: i32) -> Result<Mat<S>> {
    let get = |l: i32| alg.gens.get(&l).ok_or_else(|| Error::OutOfRange(format!("no generator labelled {l}")));
    get(i)?.comm(&get(j)?.comm(get(k)?)?)
}

/// First triple in label order that violates ordinary metaabelianess.
pub fn metaabelian_ordinary<S: Scalar>(alg: &BracketAlgebra<S>, tol: f64) -> Option<Witness<S>> {
    for &i in &alg.labels {
        for &j in &alg.labels {
            for &k in &alg.labels {
                let v = double_commutator(alg, i, j, k).unwrap();
                if !v.is_zero(tol) {
                    return Some(Witness { labels: (i, j, k), value: v });
                }
            }
        }
    }
    None
}

/// `2i sin(π/s)(E_21 − E_43)` in one-based matrix units, for `g = r/s`.
pub fn displayed_violation<S: Scalar>(level: &BraidLevel) -> Mat<S> {
    let c = S::from_int(2).times(&S::imag_unit()).times(&S::sin_pi(level.g()));
    let e = &Mat::unit(4, 4, 1, 0) - &Mat::unit(4, 4, 3, 2);
    e.scale(&c)
}

/// Z2² bidegree of a `2^N`-dimensional matrix: entry `(i, j)` sits in the
/// sector given by the bits of `i XOR j` (two slots). `None` if inhomogeneous
/// or zero.
pub fn z2z2_sector<S: Scalar>(m: &Mat<S>, tol: f64) -> Option<(u8, u8)> {
    if m.shape() != (4, 4) {
        return None;
    }
    let mut found = None;
    for i in 0..4 {
        for j in 0..4 {
            if m.get(i, j).near_zero(tol) {
                continue;
            }
            let x = i ^ j;
            let sec = (((x >> 1) & 1) as u8, (x & 1) as u8);
            match found {
                None => found = Some(sec),
                Some(s) if s != sec => return None,
                _ => {}
            }
        }
    }
    found
}

/// Bracket type for two sectors: `0` commutator, `1` anticommutator.
pub fn z2z2_bracket_kind(a: (u8, u8), b: (u8, u8)) -> u8 {
    (a.0 * b.0 + a.1 * b.1) % 2
}

/// Verification record of the untruncated two-particle limit.
#[derive(Clone, Debug)]
pub struct ParafermionReport<S> {
    pub algebra: BracketAlgebra<S>,
    pub g3: Mat<S>,
    pub sectors: BTreeMap<i32, (u8, u8)>,
    pub checks: Vec<Check>,
}

pub fn parafermion_limit<S: Scalar>(tol: f64) -> ParafermionReport<S> {
    let alg = build_algebra_2p::<S>(BraidLevel::inf());
    let g = |i: i32| &alg.gens[&i];
    let mut checks = Vec::new();
    let zero = Mat::<S>::zeros(4, 4);
    for a in [1, 2] {
        for sgn in [1, -1] {
            let i = sgn * a;
            checks.push(Check::zero(format!("[G0,G{i:+}] = 0"), &g(0).comm(g(i)).unwrap(), tol));
            checks.push(Check::zero(format!("{{G{i:+},G{i:+}}} = 0"), &g(i).acomm(g(i)).unwrap(), tol));
            checks.push(Check::equal(format!("{{G{i:+},G{:+}}} = G0", -i), &g(i).acomm(g(-i)).unwrap(), g(0), tol));
        }
    }
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            checks.push(Check::equal(format!("[G{s1:+},G{:+}] = 0", 2 * s2), &g(s1).comm(g(2 * s2)).unwrap(), &zero, tol));
        }
    }
    let g3 = g(1) * g(2);
    checks.push(Check::equal("G+3 = G+1 G+2 = E41", &g3, &Mat::unit(4, 4, 3, 0), tol));

    let mut sectors = BTreeMap::new();
    for &i in &alg.labels {
        let sec = if i == 0 { Some((0, 0)) } else { z2z2_sector(g(i), tol) };
        let want = match i.abs() {
            0 => (0, 0),
            1 => (1, 0),
            _ => (0, 1),
        };
        checks.push(Check::flag(format!("sector(G{i:+}) = {}{}", want.0, want.1), sec == Some(want)));
        sectors.insert(i, sec.unwrap_or(want));
    }
    checks.push(Check::flag("sector(G+3) = 11", z2z2_sector(&g3, tol) == Some((1, 1))));

    for &i in &alg.labels {
        for &j in &alg.labels {
            let (a, b) = (sectors[&i], sectors[&j]);
            let kind = z2z2_bracket_kind(a, b);
            let br = if kind == 0 { g(i).comm(g(j)).unwrap() } else { g(i).acomm(g(j)).unwrap() };
            let target = ((a.0 + b.0) % 2, (a.1 + b.1) % 2);
            let (coeff, _) = alg.central_coeff(&br, tol);
            let want = u8::from(i != 0 && i + j == 0);
            let graded = coeff == Some(0) || target == (0, 0);
            checks.push(Check::flag(
                format!("[G{i:+},G{j:+}}} with kind {kind} closes in sector {}{}", target.0, target.1),
                coeff == Some(want) && graded,
            ));
        }
    }
    ParafermionReport { algebra: alg, g3, sectors, checks }
}

/// Graded dimensions of the untruncated `N`-particle space against the
/// bosonic count.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub even: usize,
    pub odd: usize,
    pub bosonic: usize,
    pub projector_rank: usize,
    pub consistent: bool,
}

pub fn dimension_report<S: Scalar>(n: usize, tol: f64) -> Result<DimensionReport> {
    if n == 0 {
        return Err(Error::OutOfRange("at least one particle is required".into()));
    }
    let half = n / 2;
    let (even, odd) = if n % 2 == 1 { (half + 1, half + 1) } else { (half + 1, half) };
    let bosonic = n + 1;
    let sector = build_sector::<S>(&SectorSpec::new(n, BraidLevel::inf()), tol)?;
    let p = indist_projector(&sector, tol)?;
    let projector_rank = p.to_float().rank(1e-9);
    let tower_even = sector.energies.iter().filter(|&&e| e % 2 == 0).count();
    let tower_odd = sector.energies.len() - tower_even;
    let consistent =
        even + odd == bosonic && projector_rank == bosonic && tower_even == even && tower_odd == odd;
    Ok(DimensionReport { n, even, odd, bosonic, projector_rank, consistent })
}
