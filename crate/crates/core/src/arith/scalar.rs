use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cyclotomic::CycScalar;
use crate::error::{Error, Result};

/// Which scalar field a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode '{other}'"))),
        }
    }
}

/// Commutative ring operations needed by the matrix layer.
pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Structural zero; for floats this is `== 0.0`.
    fn is_exact_zero(&self) -> bool;
}

/// A field embedded in `C` with conjugation: either exact cyclotomic or `Complex64`.
pub trait Scalar: Ring + PartialEq {
    const MODE: Mode;

    fn from_ratio(num: i64, den: i64) -> Self;
    /// `e^(2πik/n)`.
    fn root_of_unity(k: i64, n: u32) -> Self;
    fn conj(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
    /// Fails in exact mode: arbitrary floats have no exact image.
    fn from_complex(z: Complex64) -> Result<Self>;
    /// Exact mode ignores `tol`.
    fn near_zero(&self, tol: f64) -> bool;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn imag_unit() -> Self {
        Self::root_of_unity(1, 4)
    }

    /// `e^(iπq)`.
    fn exp_i_pi(q: Rational64) -> Self {
        let n = 2 * *q.denom();
        Self::root_of_unity(*q.numer(), n as u32)
    }

    fn cos_pi(q: Rational64) -> Self {
        let e = Self::exp_i_pi(q);
        e.plus(&e.conj()).times(&Self::from_ratio(1, 2))
    }

    fn sin_pi(q: Rational64) -> Self {
        // (e - ē) / 2i = -i (e - ē) / 2
        let e = Self::exp_i_pi(q);
        let minus_half_i = Self::imag_unit().times(&Self::from_ratio(-1, 2));
        e.minus(&e.conj()).times(&minus_half_i)
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }

    fn abs(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Ring for CycScalar {
    fn zero() -> Self {
        CycScalar::zero()
    }
    fn one() -> Self {
        CycScalar::one()
    }
    fn from_int(n: i64) -> Self {
        CycScalar::from_int(n)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for CycScalar {
    const MODE: Mode = Mode::Exact;

    fn from_ratio(num: i64, den: i64) -> Self {
        CycScalar::from_ratio(num, den)
    }
    fn root_of_unity(k: i64, n: u32) -> Self {
        CycScalar::root_of_unity(k, n)
    }
    fn conj(&self) -> Self {
        CycScalar::conj(self)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn to_complex(&self) -> Complex64 {
        CycScalar::to_complex(self)
    }
    fn from_complex(z: Complex64) -> Result<Self> {
        Err(Error::ModeMismatch(format!(
            "float value {z} cannot enter an exact computation"
        )))
    }
    fn near_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs()
            .iter()
            .map(|c| json!([bigint_json(c.numer()), bigint_json(c.denom())]))
            .collect();
        json!({ "order": self.order(), "coeffs": coeffs })
    }
    fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::ModeMismatch(format!("expected exact entry, got {v}")))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("exact entry without integer 'order'".into()))?;
        let raw = obj
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("exact entry without 'coeffs'".into()))?;
        if raw.len() as u64 != order {
            return Err(Error::Parse(format!(
                "expected {order} coefficients, found {}",
                raw.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(raw.len());
        for pair in raw {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {pair}")))?;
            let num = json_bigint(&p[0])?;
            let den = json_bigint(&p[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            coeffs.push(BigRational::new(num, den));
        }
        let value = CycScalar::from_power_coeffs(order, &coeffs)?;
        // Keep the serialized order so that a round trip is bit-exact.
        if value.order() != order as u32 {
            return value.lift(order as u32);
        }
        Ok(value)
    }
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn json_bigint(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("not an integer: {v}")))
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Scalar for Complex64 {
    const MODE: Mode = Mode::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn root_of_unity(k: i64, n: u32) -> Self {
        let k = k.rem_euclid(n as i64);
        // Hit the axis points exactly so that signs and units stay clean.
        if (4 * k) % n as i64 == 0 {
            return match 4 * k / n as i64 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_exact_zero() {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn from_complex(z: Complex64) -> Result<Self> {
        Ok(z)
    }
    fn near_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let p = v
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::ModeMismatch(format!("expected float entry [re, im], got {v}")))?;
        let re = p[0].as_f64().ok_or_else(|| Error::Parse(format!("bad real part {}", p[0])))?;
        let im = p[1].as_f64().ok_or_else(|| Error::Parse(format!("bad imaginary part {}", p[1])))?;
        Ok(Complex64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trig_identity<S: Scalar>() {
        for d in 1..=8i64 {
            for n in -2 * d..2 * d {
                let q = Rational64::new(n, d);
                let c = S::cos_pi(q);
                let s = S::sin_pi(q);
                let one = c.times(&c).plus(&s.times(&s));
                assert!(one.minus(&S::one()).near_zero(1e-12), "{q}");
                let expect = Complex64::from_polar(1.0, std::f64::consts::PI * n as f64 / d as f64);
                assert!((c.to_complex() - Complex64::new(expect.re, 0.0)).norm() < 1e-12);
                assert!((s.to_complex() - Complex64::new(expect.im, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn trig_values_exact_and_float() {
        trig_identity::<CycScalar>();
        trig_identity::<Complex64>();
    }

    #[test]
    fn exact_sin_of_sixth_is_half() {
        assert_eq!(CycScalar::sin_pi(Rational64::new(1, 6)), CycScalar::from_ratio(1, 2));
        assert_eq!(CycScalar::cos_pi(Rational64::new(1, 2)), CycScalar::zero());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let x = CycScalar::root_of_unity(5, 12).plus(&CycScalar::from_ratio(-3, 7));
        let v = x.to_json();
        let y = CycScalar::from_json(&v).unwrap();
        assert_eq!(x, y);
        assert_eq!(v, y.to_json());
    }

    #[test]
    fn json_rejects_other_mode() {
        let v = Complex64::new(1.0, 2.0).to_json();
        assert!(matches!(CycScalar::from_json(&v), Err(Error::ModeMismatch(_))));
        let w = CycScalar::one().to_json();
        assert!(matches!(Complex64::from_json(&w), Err(Error::ModeMismatch(_))));
    }
}
