//! Exact elements of cyclotomic fields `Q(ζ_m)`.
//!
//! An element of order `m` is stored in the power basis `ζ^0 … ζ^(φ(m)−1)`,
//! i.e. reduced modulo the m-th cyclotomic polynomial, as integer numerators
//! over one positive common denominator with `gcd = 1`. Elements of different
//! orders are combined in `Q(ζ_lcm)`. Zero and rationals are kept at order 1,
//! which is what makes zero tests O(1).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Per-order data: `Φ_m` and the reduced form of every power `ζ^k`, `0 ≤ k < m`.
struct FieldTables {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

thread_local! {
    static CYCLOTOMIC_POLYS: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
    static TABLES: RefCell<HashMap<u32, Rc<FieldTables>>> = RefCell::new(HashMap::new());
}

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Rc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = CYCLOTOMIC_POLYS.with(|c| c.borrow().get(&m).cloned()) {
        return p;
    }
    // x^m - 1 divided by every Φ_d with d | m, d < m.
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_monic_division(&poly, &divisor);
        }
    }
    let poly = Rc::new(poly);
    CYCLOTOMIC_POLYS.with(|c| c.borrow_mut().insert(m, poly.clone()));
    poly
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let n = num.len() - 1;
    let d = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; n - d + 1];
    for k in (0..=n - d).rev() {
        let c = rem[k + d];
        quot[k] = c;
        if c != 0 {
            for (i, &dc) in den.iter().enumerate() {
                rem[k + i] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn tables(m: u32) -> Rc<FieldTables> {
    if let Some(t) = TABLES.with(|c| c.borrow().get(&m).cloned()) {
        return t;
    }
    let phi_poly = cyclotomic_polynomial(m);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // cur <- x * cur mod Φ_m
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for (i, n) in next.iter_mut().enumerate() {
                *n -= top * phi_poly[i];
            }
        }
        cur = next;
    }
    let t = Rc::new(FieldTables { phi, powers });
    TABLES.with(|c| c.borrow_mut().insert(m, t.clone()));
    t
}

/// Euler's totient of `m`, read off the degree of `Φ_m`.
pub fn totient(m: u32) -> usize {
    tables(m).phi
}

#[derive(Clone, PartialEq, Eq)]
struct Repr {
    order: u32,
    den: BigInt,
    nums: Vec<BigInt>,
}

/// Exact element of a cyclotomic field.
#[derive(Clone, Default)]
pub struct CycScalar(Option<Box<Repr>>);

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar(None)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_parts(1, vec![BigInt::from(n)], BigInt::one())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_parts(1, vec![BigInt::from(num)], BigInt::from(den))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::from_parts(1, vec![q.numer().clone()], q.denom().clone())
    }

    /// `ζ_m^k`; `k` is taken modulo `m`.
    pub fn cyc(m: u64, k: i64) -> Result<Self> {
        if m == 0 || m > u32::MAX as u64 {
            return Err(Error::InvalidOrder(m));
        }
        Ok(Self::root_of_unity(k, m as u32))
    }

    pub(crate) fn root_of_unity(k: i64, m: u32) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let t = tables(m);
        let nums = t.powers[k].iter().map(|&c| BigInt::from(c)).collect();
        Self::from_parts(m, nums, BigInt::one())
    }

    /// Builds `Σ coeffs[k] ζ_m^k` for any number of coefficients.
    pub fn from_power_coeffs(m: u64, coeffs: &[BigRational]) -> Result<Self> {
        if m == 0 || m > u32::MAX as u64 {
            return Err(Error::InvalidOrder(m));
        }
        let mut acc = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Self::root_of_unity(k as i64, m as u32).mul(&Self::from_rational(c));
                acc = acc.add(&term);
            }
        }
        Ok(acc)
    }

    fn from_parts(order: u32, mut nums: Vec<BigInt>, mut den: BigInt) -> Self {
        if nums.iter().all(Zero::is_zero) {
            return CycScalar(None);
        }
        let (order, mut nums) = if nums[1..].iter().all(Zero::is_zero) {
            nums.truncate(1);
            (1, nums)
        } else {
            (order, nums)
        };
        if den.is_negative() {
            den = -den;
            for n in nums.iter_mut() {
                *n = -std::mem::take(n);
            }
        }
        let mut g = den.clone();
        for n in &nums {
            if !n.is_zero() {
                g = g.gcd(n);
                if g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() {
            den /= &g;
            for n in nums.iter_mut() {
                *n /= &g;
            }
        }
        CycScalar(Some(Box::new(Repr { order, den, nums })))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    /// Order `m` of the field the element is currently expressed in.
    pub fn order(&self) -> u32 {
        self.0.as_ref().map_or(1, |r| r.order)
    }

    /// Whether the element is a rational number.
    pub fn is_rational(&self) -> bool {
        self.order() == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            None => Some(BigRational::zero()),
            Some(r) if r.order == 1 => Some(BigRational::new(r.nums[0].clone(), r.den.clone())),
            _ => None,
        }
    }

    /// Canonical coefficient sequence of length `order()`: power-basis
    /// coefficients padded with zeros up to `ζ^(m−1)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let m = self.order() as usize;
        let mut out = vec![BigRational::zero(); m];
        if let Some(r) = &self.0 {
            for (i, n) in r.nums.iter().enumerate() {
                out[i] = BigRational::new(n.clone(), r.den.clone());
            }
        }
        out
    }

    /// Re-expresses the element in `Q(ζ_m)`; `m` must be a multiple of `order()`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.order()) {
            return Err(Error::InvalidOrder(m as u64));
        }
        Ok(match &self.0 {
            None => CycScalar(None),
            Some(r) => {
                let (den, nums) = lifted(r, m);
                // Keep the requested order even when the value is rational.
                CycScalar(Some(Box::new(Repr { order: m, den, nums })))
            }
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (None, _) => rhs.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => {
                let m = a.order.lcm(&b.order);
                let (da, na) = lifted(a, m);
                let (db, nb) = lifted(b, m);
                let nums = na
                    .iter()
                    .zip(nb.iter())
                    .map(|(x, y)| x * &db + y * &da)
                    .collect();
                Self::from_parts(m, nums, da * db)
            }
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            None => CycScalar(None),
            Some(r) => CycScalar(Some(Box::new(Repr {
                order: r.order,
                den: r.den.clone(),
                nums: r.nums.iter().map(|n| -n).collect(),
            }))),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = match (&self.0, &rhs.0) {
            (Some(a), Some(b)) => (a, b),
            _ => return CycScalar(None),
        };
        if a.order == 1 || b.order == 1 {
            let (scalar, other) = if a.order == 1 { (a, b) } else { (b, a) };
            let s = &scalar.nums[0];
            let nums = other.nums.iter().map(|n| n * s).collect();
            return Self::from_parts(other.order, nums, &scalar.den * &other.den);
        }
        let m = a.order.lcm(&b.order);
        let t = tables(m);
        let (da, na) = lifted(a, m);
        let (db, nb) = lifted(b, m);
        let phi = t.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut nums: Vec<BigInt> = conv.drain(..phi).collect();
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.powers[(k + phi) % m as usize];
            for (n, &p) in nums.iter_mut().zip(row.iter()) {
                if p != 0 {
                    *n += &c * p;
                }
            }
        }
        Self::from_parts(m, nums, da * db)
    }

    /// Complex conjugation under the standard embedding, `ζ ↦ ζ^(−1)`.
    pub fn conj(&self) -> Self {
        match &self.0 {
            None => CycScalar(None),
            Some(r) if r.order == 1 => self.clone(),
            Some(r) => {
                let m = r.order;
                let t = tables(m);
                let mut nums = vec![BigInt::zero(); t.phi];
                for (i, c) in r.nums.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let row = &t.powers[(m as usize - i) % m as usize];
                    for (n, &p) in nums.iter_mut().zip(row.iter()) {
                        if p != 0 {
                            *n += c * p;
                        }
                    }
                }
                Self::from_parts(m, nums, r.den.clone())
            }
        }
    }

    /// Multiplicative inverse, by solving `x · y = 1` over `Q` in the power basis.
    pub fn inv(&self) -> Option<Self> {
        let r = self.0.as_ref()?;
        if r.order == 1 {
            return Some(Self::from_parts(1, vec![r.den.clone()], r.nums[0].clone()));
        }
        let m = r.order;
        let phi = tables(m).phi;
        // Column j holds the coordinates of x·ζ^j.
        let mut system: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul(&Self::root_of_unity(j as i64, m)).lift(m).ok()?;
            let coords = col.coeffs();
            for i in 0..phi {
                system[i][j] = coords[i].clone();
            }
        }
        system[0][phi] = BigRational::one();
        let solution = solve_rational(system, phi)?;
        Self::from_power_coeffs(m as u64, &solution).ok()
    }

    pub fn to_complex(&self) -> Complex64 {
        match &self.0 {
            None => Complex64::new(0.0, 0.0),
            Some(r) => {
                let den = r.den.to_f64().unwrap_or(f64::INFINITY);
                let step = 2.0 * std::f64::consts::PI / r.order as f64;
                r.nums
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| !n.is_zero())
                    .map(|(k, n)| {
                        let c = n.to_f64().unwrap_or(f64::NAN) / den;
                        Complex64::from_polar(c, step * k as f64)
                    })
                    .sum()
            }
        }
    }
}

fn lifted(r: &Repr, m: u32) -> (BigInt, Vec<BigInt>) {
    if r.order == m {
        return (r.den.clone(), r.nums.clone());
    }
    let t = tables(m);
    let stride = (m / r.order) as usize;
    let mut nums = vec![BigInt::zero(); t.phi];
    for (i, c) in r.nums.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let row = &t.powers[(i * stride) % m as usize];
        for (n, &p) in nums.iter_mut().zip(row.iter()) {
            if p != 0 {
                *n += c * p;
            }
        }
    }
    (r.den.clone(), nums)
}

/// Gauss-Jordan on an augmented `n × (n+1)` rational system.
fn solve_rational(mut a: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col].clone();
                for k in col..=n {
                    let delta = &f * &a[col][k];
                    a[row][k] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                if a.order == b.order {
                    return a == b;
                }
                let m = a.order.lcm(&b.order);
                lifted(a, m) == lifted(b, m)
            }
            _ => false,
        }
    }
}

impl Eq for CycScalar {}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match &self.0 {
            None => return write!(f, "0"),
            Some(r) => r,
        };
        let mut first = true;
        for (k, n) in r.nums.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let c = BigRational::new(n.clone(), r.den.clone());
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*z{}^{k}", r.order)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{self}]")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                CycScalar::$inner(self, rhs)
            }
        }
        impl std::ops::$tr for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                CycScalar::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(&self)
    }
}
