use serde::Serialize;

use crate::arith::{Mat, Mode, Scalar};

/// Outcome of a single identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Max-abs residual under the complex embedding.
    pub residual: f64,
}

impl Check {
    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, residual: if pass { 0.0 } else { 1.0 } }
    }

    pub fn zero<S: Scalar>(name: impl Into<String>, m: &Mat<S>, tol: f64) -> Self {
        Check { name: name.into(), pass: m.is_zero(tol), residual: m.max_abs() }
    }

    /// Compares two matrices; a shape mismatch fails with infinite residual.
    pub fn equal<S: Scalar>(name: impl Into<String>, a: &Mat<S>, b: &Mat<S>, tol: f64) -> Self {
        match a.try_sub(b) {
            Ok(d) => Self::zero(name, &d, tol),
            Err(_) => Check { name: name.into(), pass: false, residual: f64::INFINITY },
        }
    }

    pub fn scalar_zero<S: Scalar>(name: impl Into<String>, x: &S, tol: f64) -> Self {
        Check { name: name.into(), pass: x.near_zero(tol), residual: x.abs() }
    }
}

/// A named group of checks.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub mode: Mode,
    pub refs: Vec<String>,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>, mode: Mode, refs: &[&str], checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            suite: suite.into(),
            mode,
            refs: refs.iter().map(|s| s.to_string()).collect(),
            pass,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}
