use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::Ring;

/// Laurent polynomial in one variable with integer coefficients.
///
/// `coeffs[i]` multiplies `x^(low + i)`; the representation is trimmed so
/// that both end coefficients are nonzero, and zero has no coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn monomial(c: i64, power: i32) -> Self {
        Self::from_coeffs(power, vec![BigInt::from(c)])
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, power: i32) -> BigInt {
        let idx = power - self.low;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Substitutes `x ↦ x^(1/k)` when every exponent is a multiple of `k`.
    pub fn deflate(&self, k: i32) -> Option<Self> {
        if self.coeffs.is_empty() {
            return Some(self.clone());
        }
        let mut out = vec![BigInt::zero(); ((self.high() - self.low) / k + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i32;
            if c.is_zero() {
                continue;
            }
            if e % k != 0 {
                return None;
            }
            out[((e - self.low) / k) as usize] = c.clone();
        }
        if self.low % k != 0 {
            return None;
        }
        Some(Self::from_coeffs(self.low / k, out))
    }

    /// Multiplies by `x^(-low)` and divides by the leading coefficient when it divides
    /// every coefficient, yielding an ordinary polynomial normalized to be monic
    /// up to sign of content.
    pub fn normalized(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let lead = self.coeffs.last().cloned().unwrap();
        let exact = self.coeffs.iter().all(|c| (c % &lead).is_zero());
        let coeffs = if exact {
            self.coeffs.iter().map(|c| c / &lead).collect()
        } else {
            self.coeffs.clone()
        };
        Self::from_coeffs(0, coeffs)
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn one() -> Self {
        Self::monomial(1, 0)
    }
    fn from_int(n: i64) -> Self {
        Self::monomial(n, 0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() {
            return rhs.clone();
        }
        if rhs.coeffs.is_empty() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let coeffs = (low..=high).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        Self::from_coeffs(low, coeffs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.low + rhs.low, out)
    }
    fn negated(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i32;
            terms.push(match e {
                0 => format!("{c}"),
                1 if c.is_one() => "x".to_string(),
                1 => format!("{c}*x"),
                _ if c.is_one() => format!("x^{e}"),
                _ => format!("{c}*x^{e}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[{self}]")
    }
}
