use num_complex::Complex64;
use serde_json::{json, Value};

use super::cyclotomic::CycScalar;
use super::matrix::Mat;
use super::scalar::{Mode, Scalar};
use crate::error::{Error, Result};

impl<T: Scalar> Mat<T> {
    /// `{rows, cols, mode, entries}` with entries in row-major order.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.entries().iter().map(Scalar::to_json).collect();
        json!({
            "rows": self.rows(),
            "cols": self.cols(),
            "mode": T::MODE.as_str(),
            "entries": entries,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (rows, cols, mode, entries) = header(v)?;
        if mode != T::MODE {
            return Err(Error::ModeMismatch(format!(
                "matrix is {mode}, computation is {}",
                T::MODE
            )));
        }
        let data = entries.iter().map(T::from_json).collect::<Result<Vec<_>>>()?;
        Mat::from_vec(rows, cols, data)
    }
}

fn header(v: &Value) -> Result<(usize, usize, Mode, &Vec<Value>)> {
    let field = |name: &str| v.get(name).ok_or_else(|| Error::Parse(format!("missing field '{name}'")));
    let rows = field("rows")?.as_u64().ok_or_else(|| Error::Parse("rows".into()))? as usize;
    let cols = field("cols")?.as_u64().ok_or_else(|| Error::Parse("cols".into()))? as usize;
    let mode: Mode = field("mode")?
        .as_str()
        .ok_or_else(|| Error::Parse("mode".into()))?
        .parse()?;
    let entries = field("entries")?.as_array().ok_or_else(|| Error::Parse("entries".into()))?;
    if entries.len() != rows * cols {
        return Err(Error::Parse(format!(
            "{} entries for a {rows}x{cols} matrix",
            entries.len()
        )));
    }
    Ok((rows, cols, mode, entries))
}

/// A matrix whose scalar mode is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum DynMat {
    Exact(Mat<CycScalar>),
    Float(Mat<Complex64>),
}

impl DynMat {
    pub fn mode(&self) -> Mode {
        match self {
            DynMat::Exact(_) => Mode::Exact,
            DynMat::Float(_) => Mode::Float,
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (_, _, mode, _) = header(v)?;
        Ok(match mode {
            Mode::Exact => DynMat::Exact(Mat::from_json(v)?),
            Mode::Float => DynMat::Float(Mat::from_json(v)?),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            DynMat::Exact(m) => m.to_json(),
            DynMat::Float(m) => m.to_json(),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::ModeMismatch(format!("cannot combine {} and {} matrices", self.mode(), other.mode()))
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynMat::Exact(a), DynMat::Exact(b)) => Ok(DynMat::Exact(a.kron(b))),
            (DynMat::Float(a), DynMat::Float(b)) => Ok(DynMat::Float(a.kron(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynMat::Exact(a), DynMat::Exact(b)) => Ok(DynMat::Exact(a.matmul(b)?)),
            (DynMat::Float(a), DynMat::Float(b)) => Ok(DynMat::Float(a.matmul(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn comm(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynMat::Exact(a), DynMat::Exact(b)) => Ok(DynMat::Exact(a.comm(b)?)),
            (DynMat::Float(a), DynMat::Float(b)) => Ok(DynMat::Float(a.comm(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn acomm(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynMat::Exact(a), DynMat::Exact(b)) => Ok(DynMat::Exact(a.acomm(b)?)),
            (DynMat::Float(a), DynMat::Float(b)) => Ok(DynMat::Float(a.acomm(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            DynMat::Exact(m) => m.is_zero(tol),
            DynMat::Float(m) => m.is_zero(tol),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ring;

    #[test]
    fn exact_round_trip() {
        let z = CycScalar::root_of_unity(1, 12);
        let m = Mat::from_fn(3, 2, |i, j| z.pow((i * 2 + j) as u32).plus(&CycScalar::from_ratio(1, 3)));
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back = Mat::<CycScalar>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(m, back);
        assert_eq!(text, serde_json::to_string(&back.to_json()).unwrap());
    }

    #[test]
    fn float_round_trip() {
        let m = Mat::from_fn(2, 2, |i, j| Complex64::new(0.1 * i as f64, -1.0 / (1.0 + j as f64)));
        let back = Mat::<Complex64>::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn mixed_modes_are_rejected() {
        let e = DynMat::Exact(Mat::identity(2));
        let f = DynMat::Float(Mat::identity(2));
        assert!(matches!(e.kron(&f), Err(Error::ModeMismatch(_))));
        assert!(matches!(Mat::<CycScalar>::from_json(&f.to_json()), Err(Error::ModeMismatch(_))));
        assert_eq!(DynMat::from_json(&e.to_json()).unwrap(), e);
    }
}
