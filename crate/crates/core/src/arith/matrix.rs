use std::fmt;

use num_complex::Complex64;

use super::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_vec",
                lhs: (rows, cols),
                rhs: (data.len(), 1),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { op: "from_rows", lhs: (r, c), rhs: (1, bad.len()) });
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer matrix literal.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(|&x| T::from_int(x)).collect()).collect();
        Self::from_rows(data).expect("ragged integer literal")
    }

    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[i * cols + j] = T::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same(&self, rhs: &Self, op: &'static str) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch { op, lhs: self.shape(), rhs: rhs.shape() });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs, "add")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs, "sub")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_exact_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        self.map(|x| if x.is_exact_zero() { x.clone() } else { x.times(c) })
    }

    pub fn negated(&self) -> Self {
        self.map(|x| x.negated())
    }

    /// Matrix product; zero entries of the left factor are skipped.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { op: "matmul", lhs: self.shape(), rhs: rhs.shape() });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_exact_zero() {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_exact_zero() {
                        *o = o.plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_exact_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_exact_zero() {
                            out.data[(i * rhs.rows + k) * c + j * rhs.cols + l] = a.times(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Left-to-right Kronecker product of all factors; `1×1` identity when empty.
    pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Self {
        factors.into_iter().fold(Self::identity(1), |acc, f| acc.kron(f))
    }

    pub fn comm(&self, rhs: &Self) -> Result<Self> {
        self.matmul(rhs)?.try_sub(&rhs.matmul(self)?)
    }

    pub fn acomm(&self, rhs: &Self) -> Result<Self> {
        self.matmul(rhs)?.try_add(&rhs.matmul(self)?)
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { op: "apply", lhs: self.shape(), rhs: (v.len(), 1) });
        }
        let mut out = vec![T::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v) {
                if !a.is_exact_zero() && !x.is_exact_zero() {
                    *o = o.plus(&a.times(x));
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { op: "pow", lhs: self.shape(), rhs: self.shape() });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..n {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.data.iter().all(Ring::is_exact_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_exact_zero()))
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Square sub-block of the leading `n` rows and columns.
    pub fn leading_block(&self, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| self.get(i, j).clone())
    }
}

impl<T: Scalar> Mat<T> {
    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Exact mode tests canonical zero; float mode tests max entry magnitude `≤ tol`.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.near_zero(tol))
    }

    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        self.shape() == rhs.shape() && self.data.iter().zip(&rhs.data).all(|(a, b)| a.minus(b).near_zero(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs).fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> Mat<Complex64> {
        self.map(Scalar::to_complex)
    }

    /// Rank by Gaussian elimination; pivots are taken by largest magnitude.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let pivot = (rank..a.rows)
                .filter(|&r| !a.get(r, col).near_zero(tol))
                .max_by(|&x, &y| a.get(x, col).abs().total_cmp(&a.get(y, col).abs()));
            let Some(p) = pivot else { continue };
            for j in 0..a.cols {
                a.data.swap(rank * a.cols + j, p * a.cols + j);
            }
            let inv = a.get(rank, col).inverse().expect("nonzero pivot");
            for r in rank + 1..a.rows {
                let f = a.get(r, col).times(&inv);
                if f.is_exact_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a.get(r, j).minus(&f.times(a.get(rank, j)));
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<T: Ring> std::ops::$tr<&Mat<T>> for &Mat<T> {
            type Output = Mat<T>;
            fn $method(self, rhs: &Mat<T>) -> Mat<T> {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Mul, mul, matmul);
panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);

impl<T: Ring> std::ops::Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.negated()
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

/// Hermitian inner product `⟨u, v⟩ = Σ conj(u_i) v_i`.
pub fn inner<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_exact_zero() && !b.is_exact_zero())
        .fold(T::zero(), |acc, (a, b)| acc.plus(&a.conj().times(b)))
}

pub fn vec_near_zero<T: Scalar>(v: &[T], tol: f64) -> bool {
    v.iter().all(|x| x.near_zero(tol))
}

pub fn vec_sub<T: Ring>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.minus(b)).collect()
}

pub fn vec_scale<T: Ring>(v: &[T], c: &T) -> Vec<T> {
    v.iter().map(|x| x.times(c)).collect()
}

pub fn basis_vector<T: Ring>(n: usize, k: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[k] = T::one();
    v
}
