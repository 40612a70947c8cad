//! Single-qubit gl(1|1) data, the braid matrix `B_t`, the truncation
//! polynomials `b_k`, `f_n`, and the level of a root of unity.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{CycScalar, Mat, Ring, Scalar};
use crate::error::{Error, Result};
use crate::report::Check;

/// Default search bound for [`level_of_root`].
pub const DEFAULT_K_MAX: u32 = 64;

/// The four 2×2 matrices `α = E11`, `β = E12`, `γ = E21`, `δ = E22`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl11Generators<S> {
    pub alpha: Mat<S>,
    pub beta: Mat<S>,
    pub gamma: Mat<S>,
    pub delta: Mat<S>,
}

impl<S: Scalar> Default for Gl11Generators<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> Gl11Generators<S> {
    pub fn new() -> Self {
        Gl11Generators {
            alpha: Mat::unit(2, 2, 0, 0),
            beta: Mat::unit(2, 2, 0, 1),
            gamma: Mat::unit(2, 2, 1, 0),
            delta: Mat::unit(2, 2, 1, 1),
        }
    }

    /// Single-particle Hamiltonian `H_1 = δ`.
    pub fn hamiltonian(&self) -> Mat<S> {
        self.delta.clone()
    }

    /// Every graded bracket among the four generators against its expected value.
    ///
    /// Odd-odd pairs use the anticommutator, all others the commutator.
    pub fn relation_checks(&self, tol: f64) -> Vec<Check> {
        let named = [
            ("alpha", &self.alpha, false),
            ("beta", &self.beta, true),
            ("gamma", &self.gamma, true),
            ("delta", &self.delta, false),
        ];
        let zero = Mat::zeros(2, 2);
        let mut checks = Vec::new();
        for (a, (na, x, ox)) in named.iter().enumerate() {
            for (nb, y, oy) in &named[a..] {
                let both_odd = *ox && *oy;
                let got = if both_odd { x.acomm(y) } else { x.comm(y) }.expect("2x2");
                let expect = match (*na, *nb) {
                    ("alpha", "beta") => self.beta.clone(),
                    ("alpha", "gamma") => self.gamma.negated(),
                    ("beta", "delta") => self.beta.clone(),
                    ("gamma", "delta") => self.gamma.negated(),
                    ("beta", "gamma") => &self.alpha + &self.delta,
                    _ => zero.clone(),
                };
                let br = if both_odd { "{,}" } else { "[,]" };
                checks.push(Check::equal(format!("{br}({na},{nb})"), &got, &expect, tol));
            }
        }
        checks.push(Check::zero("gamma^2", &(&self.gamma * &self.gamma), tol));
        checks.push(Check::zero("beta^2", &(&self.beta * &self.beta), tol));
        checks
    }
}

/// The braid matrix `B_t`.
pub fn b_matrix<S: Scalar>(t: &S) -> Mat<S> {
    let mut b = Mat::zeros(4, 4);
    b.set(0, 0, S::one());
    b.set(1, 1, S::one().minus(t));
    b.set(1, 2, t.clone());
    b.set(2, 1, S::one());
    b.set(3, 3, t.negated());
    b
}

/// `(B⊗I)(I⊗B)(B⊗I) − (I⊗B)(B⊗I)(I⊗B)`.
pub fn braid_relation_residual<S: Scalar>(t: &S) -> Mat<S> {
    let b = b_matrix(t);
    let id = Mat::identity(2);
    let left = b.kron(&id);
    let right = id.kron(&b);
    let lhs = &(&left * &right) * &left;
    let rhs = &(&right * &left) * &right;
    &lhs - &rhs
}

/// `b_k(t) = Σ_{j<k} (−t)^j`.
pub fn b_poly<S: Scalar>(k: u32, t: &S) -> S {
    let minus_t = t.negated();
    let mut acc = S::zero();
    let mut p = S::one();
    for _ in 0..k {
        acc = acc.plus(&p);
        p = p.times(&minus_t);
    }
    acc
}

/// `f_n(t) = Π_{k=1..n} b_k(t)`, with `f_0 = 1`.
pub fn f_factor<S: Scalar>(n: u32, t: &S) -> S {
    (1..=n).fold(S::one(), |acc, k| acc.times(&b_poly(k, t)))
}

/// Truncation level: finite `s ≥ 2` or the untruncated point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Finite(u32),
    Inf,
}

impl Level {
    pub fn finite(self) -> Option<u32> {
        match self {
            Level::Finite(s) => Some(s),
            Level::Inf => None,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Level::Finite(s) => json!(s),
            Level::Inf => json!("inf"),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(s) => write!(f, "{s}"),
            Level::Inf => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Level::Inf);
        }
        match s.parse::<u32>() {
            Ok(v) if v >= 2 => Ok(Level::Finite(v)),
            _ => Err(Error::Parse(format!("level must be an integer >= 2 or 'inf', got '{s}'"))),
        }
    }
}

/// Verdict of [`level_of_root`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootLevel {
    Level(Level),
    /// No `b_k` with `k ≤ k_max` vanishes.
    Generic,
}

/// Deformation parameter `η = re + iπ·im_pi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eta {
    pub re: f64,
    pub im_pi: Rational64,
}

impl Eta {
    pub fn real(re: f64) -> Self {
        Eta { re, im_pi: Rational64::zero() }
    }

    pub fn imaginary(im_pi: Rational64) -> Self {
        Eta { re: 0.0, im_pi }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, std::f64::consts::PI * rat_f64(self.im_pi))
    }

    /// `e^(c·η)`; exact mode needs a purely imaginary `η`.
    pub fn exp<S: Scalar>(self, c: Rational64) -> Result<S> {
        let phase = S::exp_i_pi(c * self.im_pi);
        if self.re == 0.0 {
            return Ok(phase);
        }
        let modulus = S::from_complex(Complex64::new((rat_f64(c) * self.re).exp(), 0.0))?;
        Ok(phase.times(&modulus))
    }

    /// Whether `sinh(2η) = 0`, i.e. `η ∈ iπ/2·Z`.
    pub fn sinh_2eta_vanishes(self) -> bool {
        self.re == 0.0 && (self.im_pi * 2).is_integer()
    }
}

pub(crate) fn rat_f64(q: Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Reduce `q` into `[0, m)`.
pub(crate) fn rat_mod(q: Rational64, m: i64) -> Rational64 {
    let m = Rational64::from_integer(m);
    let r = q - (q / m).floor() * m;
    if r < Rational64::zero() {
        r + m
    } else {
        r
    }
}

/// A truncation level with its representative `g = r/s` and derived parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidLevel {
    level: Level,
    r: u32,
}

impl BraidLevel {
    /// `g = 1/s`.
    pub fn finite(s: u32) -> Result<Self> {
        Self::with_representative(s, 1)
    }

    pub fn inf() -> Self {
        BraidLevel { level: Level::Inf, r: 0 }
    }

    pub fn from_level(level: Level) -> Result<Self> {
        match level {
            Level::Finite(s) => Self::finite(s),
            Level::Inf => Ok(Self::inf()),
        }
    }

    /// `g = r/s` with `gcd(r, s) = 1`, `1 ≤ r < s`.
    pub fn with_representative(s: u32, r: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::OutOfRange(format!("level s = {s} must be at least 2")));
        }
        if r == 0 || r >= s || r.gcd(&s) != 1 {
            return Err(Error::OutOfRange(format!("representative r = {r} must be coprime to s = {s} with 0 < r < s")));
        }
        Ok(BraidLevel { level: Level::Finite(s), r })
    }

    /// Any `g ∈ [0, 1)`; `g = 0` is the untruncated level.
    pub fn from_g(g: Rational64) -> Result<Self> {
        if g < Rational64::zero() || g >= Rational64::one() {
            return Err(Error::OutOfRange(format!("g = {g} outside [0, 1)")));
        }
        if g.is_zero() {
            return Ok(Self::inf());
        }
        Self::with_representative(*g.denom() as u32, *g.numer() as u32)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn s(&self) -> Option<u32> {
        self.level.finite()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn g(&self) -> Rational64 {
        match self.level {
            Level::Finite(s) => Rational64::new(self.r as i64, s as i64),
            Level::Inf => Rational64::zero(),
        }
    }

    /// `f = −2g − 1 mod 2`.
    pub fn f(&self) -> Rational64 {
        rat_mod(-self.g() * 2 - 1, 2)
    }

    /// `t = −e^(2πig)`.
    pub fn t<S: Scalar>(&self) -> S {
        S::exp_i_pi(self.g() * 2 + 1)
    }

    /// `e^(iπ·k·g)`.
    pub fn phase<S: Scalar>(&self, k: i64) -> S {
        S::exp_i_pi(self.g() * k)
    }

    /// `η = −2πi(2g − 1)`.
    pub fn eta(&self) -> Eta {
        Eta::imaginary(Rational64::from_integer(2) - self.g() * 4)
    }

    pub fn to_json(&self) -> Value {
        let t: CycScalar = self.t();
        let tc = t.to_complex();
        let eta = self.eta();
        let ec = eta.to_complex();
        json!({
            "s": self.level.to_json(),
            "r": self.r,
            "g": self.g().to_string(),
            "f": self.f().to_string(),
            "t": { "exact": t.to_json(), "float": [tc.re, tc.im] },
            "eta": { "re": eta.re, "im_over_pi": eta.im_pi.to_string(), "float": [ec.re, ec.im] },
        })
    }
}

impl fmt::Display for BraidLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {} (g = {})", self.level, self.g())
    }
}

/// Classifies a unit-modulus `t` by the first vanishing `b_k`, `2 ≤ k ≤ k_max`.
pub fn level_of_root<S: Scalar>(t: &S, k_max: u32, tol: f64) -> Result<RootLevel> {
    let modulus = t.times(&t.conj()).minus(&S::one());
    if !modulus.near_zero(tol) {
        return Err(Error::OutOfRange(format!("|t| = {} is not 1", t.abs())));
    }
    if t.plus(&S::one()).near_zero(tol) {
        return Ok(RootLevel::Level(Level::Inf));
    }
    let minus_t = t.negated();
    let mut b = S::one();
    let mut p = S::one();
    for k in 2..=k_max {
        p = p.times(&minus_t);
        b = b.plus(&p);
        if b.near_zero(tol) {
            return Ok(RootLevel::Level(Level::Finite(k)));
        }
    }
    Ok(RootLevel::Generic)
}

/// A value in one of the four parametrizations.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    /// `t = e^(iπf)`, `f ∈ [0, 2)`.
    F(Rational64),
    /// `t = −e^(2πig)`, `g ∈ [0, 1)`.
    G(Rational64),
    /// `t` itself, an exact root of unity.
    T(CycScalar),
    /// `η = iπ·im_pi`, with `im_pi ∈ (−2, 2]`.
    Eta(Rational64),
}

/// Normalizes any parametrization to a [`BraidLevel`].
///
/// A `t` that is not among the representatives `g = r/s` is reported with the
/// representative of its level found by [`level_of_root`].
pub fn convert_param(p: &Param) -> Result<BraidLevel> {
    match p {
        Param::G(g) => BraidLevel::from_g(*g),
        Param::F(f) => {
            if *f < Rational64::zero() || *f >= Rational64::from_integer(2) {
                return Err(Error::OutOfRange(format!("f = {f} outside [0, 2)")));
            }
            BraidLevel::from_g(rat_mod(-(*f + 1) / 2, 1))
        }
        Param::Eta(im_pi) => {
            let two = Rational64::from_integer(2);
            if *im_pi <= -two || *im_pi > two {
                return Err(Error::OutOfRange(format!("eta/(i pi) = {im_pi} outside (-2, 2]")));
            }
            BraidLevel::from_g(rat_mod((two - im_pi) / 4, 1))
        }
        Param::T(t) => {
            // −t = e^(2πig): read g off the exponent when −t is a root of unity.
            let order = t.order().max(2) as i64 * 2;
            let minus_t = t.negated();
            let k = (0..order).find(|&k| CycScalar::root_of_unity(k, order as u32) == minus_t);
            match k {
                Some(k) => BraidLevel::from_g(Rational64::new(k, order)),
                None => match level_of_root(t, DEFAULT_K_MAX, 0.0)? {
                    RootLevel::Level(l) => BraidLevel::from_level(l),
                    RootLevel::Generic => Err(Error::OutOfRange("t is not a root of unity".into())),
                },
            }
        }
    }
}

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => s.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad()),
    }
}

/// Parses a root of unity: `1`, `-1`, `i`, `-i`, or `m:k` for `ζ_m^k`.
pub fn parse_root(s: &str) -> Result<CycScalar> {
    match s.trim() {
        "1" => Ok(CycScalar::one()),
        "-1" => Ok(CycScalar::from_int(-1)),
        "i" => CycScalar::cyc(4, 1),
        "-i" => CycScalar::cyc(4, 3),
        other => {
            let (m, k) = other
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected 'm:k' for a root of unity, got '{other}'")))?;
            let m: u64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad order '{m}'")))?;
            let k: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("bad power '{k}'")))?;
            CycScalar::cyc(m, k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = CycScalar;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn gl11_relations_hold() {
        let g = Gl11Generators::<C>::new();
        for c in g.relation_checks(0.0) {
            assert!(c.pass, "{}", c.name);
        }
        let gf = Gl11Generators::<Complex64>::new();
        assert!(gf.relation_checks(1e-12).iter().all(|c| c.pass));
    }

    #[test]
    fn b_matrix_at_one() {
        let b = b_matrix(&C::one());
        let expect = Mat::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]]);
        assert_eq!(b, expect);
        assert_eq!(&b * &b, Mat::identity(4));
    }

    #[test]
    fn braid_relation_at_sixth_root() {
        assert!(braid_relation_residual(&C::cyc(6, 1).unwrap()).is_exact_zero());
    }

    #[test]
    fn b_poly_values() {
        assert!(b_poly(2, &C::one()).is_zero());
        assert!(b_poly(3, &C::cyc(6, 1).unwrap()).is_zero());
        for n in 1..=8 {
            assert_eq!(b_poly(n, &C::from_int(-1)), C::from_int(n as i64));
        }
        assert_eq!(f_factor(0, &C::one()), C::one());
    }

    #[test]
    fn level_examples() {
        assert_eq!(level_of_root(&C::one(), 64, 0.0).unwrap(), RootLevel::Level(Level::Finite(2)));
        assert_eq!(level_of_root(&C::cyc(4, 1).unwrap(), 64, 0.0).unwrap(), RootLevel::Level(Level::Finite(4)));
        assert_eq!(level_of_root(&C::from_int(-1), 64, 0.0).unwrap(), RootLevel::Level(Level::Inf));
        assert!(level_of_root(&C::from_int(2), 64, 0.0).is_err());
        // −ζ_7 has order 14, so b_14 is the first to vanish.
        let z7 = C::cyc(7, 1).unwrap();
        assert_eq!(level_of_root(&z7, 10, 0.0).unwrap(), RootLevel::Generic);
        assert_eq!(level_of_root(&z7, 64, 0.0).unwrap(), RootLevel::Level(Level::Finite(14)));
    }

    #[test]
    fn level_of_representatives() {
        for s in 2..=8 {
            let bl = BraidLevel::finite(s).unwrap();
            let t: C = bl.t();
            // t_s = e^(πi(2/s − 1))
            assert_eq!(t, C::exp_i_pi(q(2, s as i64) - 1));
            assert_eq!(level_of_root(&t, 64, 0.0).unwrap(), RootLevel::Level(Level::Finite(s)));
            let tf: Complex64 = bl.t();
            assert_eq!(level_of_root(&tf, 64, 1e-9).unwrap(), RootLevel::Level(Level::Finite(s)));
        }
    }

    #[test]
    fn conversions() {
        let l = convert_param(&Param::G(q(1, 2))).unwrap();
        assert_eq!(l.t::<C>(), C::one());
        assert_eq!(l.eta().im_pi, q(0, 1));
        let l = convert_param(&Param::G(q(1, 3))).unwrap();
        assert_eq!(l.eta().im_pi, q(2, 3));
        assert_eq!(l.t::<C>(), C::exp_i_pi(q(-1, 3)));
        let l = convert_param(&Param::G(q(0, 1))).unwrap();
        assert_eq!(l.t::<C>(), C::from_int(-1));
        assert_eq!(l.eta().im_pi, q(2, 1));
        assert_eq!(l.level(), Level::Inf);
        assert!(convert_param(&Param::G(q(1, 1))).is_err());
        assert!(convert_param(&Param::F(q(2, 1))).is_err());
        for s in 2..=9 {
            let l = BraidLevel::finite(s).unwrap();
            assert_eq!(convert_param(&Param::F(l.f())).unwrap().level(), l.level());
            assert_eq!(convert_param(&Param::Eta(l.eta().im_pi)).unwrap(), l);
            assert_eq!(convert_param(&Param::T(l.t())).unwrap(), l);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/3").unwrap(), q(1, 3));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_root("6:1").unwrap(), C::cyc(6, 1).unwrap());
        assert_eq!("inf".parse::<Level>().unwrap(), Level::Inf);
        assert!("1".parse::<Level>().is_err());
    }
}
