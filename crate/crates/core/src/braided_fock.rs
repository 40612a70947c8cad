//! N-particle braided sectors realized on ordinary tensor products through
//! the intertwiner `W_t`.

use serde::Serialize;

use crate::arith::{basis_vector, inner, vec_near_zero, vec_scale, vec_sub, Mat, Scalar};
use crate::error::{Error, Result};
use crate::qubit_core::{f_factor, BraidLevel, Gl11Generators, Level};
use crate::report::Check;

/// Default refusal bound on the particle number (dense `2^N × 2^N` storage).
pub const DEFAULT_MAX_PARTICLES: usize = 10;

/// Environment variable overriding [`DEFAULT_MAX_PARTICLES`].
pub const MAX_PARTICLES_ENV: &str = "METABRAID_MAX_N";

pub fn max_particles() -> usize {
    std::env::var(MAX_PARTICLES_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_PARTICLES)
}

/// Request for an N-particle sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SectorSpec {
    pub n: usize,
    pub level: BraidLevel,
    /// Highest excitation number examined.
    pub n_max: usize,
}

impl SectorSpec {
    /// Sector with the default cutoff `n_max = N`.
    pub fn new(n: usize, level: BraidLevel) -> Self {
        SectorSpec { n, level, n_max: n }
    }

    pub fn with_cutoff(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::OutOfRange("a sector needs at least one particle".into()));
        }
        let bound = max_particles();
        if self.n > bound {
            return Err(Error::TooLarge { what: "braided sector", size: self.n, bound });
        }
        Ok(())
    }
}

/// `W_t = cos(−πg)·I + i·sin(−πg)·X`, `X = diag(1, −1)`.
pub fn intertwiner<S: Scalar>(level: &BraidLevel) -> Mat<S> {
    let minus_g = -level.g();
    let x = Mat::from_ints(&[&[1, 0], &[0, -1]]);
    let cos = Mat::identity(2).scale(&S::cos_pi(minus_g));
    let sin = x.scale(&S::imag_unit().times(&S::sin_pi(minus_g)));
    &cos + &sin
}

/// `A†_{k;N} = W^⊗(k−1) ⊗ γ ⊗ I^⊗(N−k)` for `1 ≤ k ≤ N`.
pub fn creation_block<S: Scalar>(level: &BraidLevel, k: usize, n: usize) -> Result<Mat<S>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("block index {k} outside 1..={n}")));
    }
    let w = intertwiner::<S>(level);
    let gamma = Gl11Generators::<S>::new().gamma;
    let id = Mat::identity(2);
    let factors: Vec<&Mat<S>> = (1..=n)
        .map(|slot| match slot.cmp(&k) {
            std::cmp::Ordering::Less => &w,
            std::cmp::Ordering::Equal => &gamma,
            std::cmp::Ordering::Greater => &id,
        })
        .collect();
    Ok(Mat::kron_all(factors))
}

/// `H_N = Σ_k I ⊗ … ⊗ δ ⊗ … ⊗ I`.
pub fn hamiltonian<S: Scalar>(n: usize) -> Mat<S> {
    let delta = Gl11Generators::<S>::new().hamiltonian();
    let id = Mat::identity(2);
    let dim = 1 << n;
    (0..n).fold(Mat::zeros(dim, dim), |acc, k| {
        let factors: Vec<&Mat<S>> = (0..n).map(|slot| if slot == k { &delta } else { &id }).collect();
        &acc + &Mat::kron_all(factors)
    })
}

/// A fully built N-particle sector.
#[derive(Clone, Debug)]
pub struct BraidedSector<S> {
    pub spec: SectorSpec,
    /// `A†_{k;N}` for `k = 1..N`.
    pub blocks: Vec<Mat<S>>,
    pub hamiltonian: Mat<S>,
    pub vacuum: Vec<S>,
    /// Unnormalized tower states `(Σ_k A†_k)^n |vac⟩`, `n = 0..=n_max`.
    pub states: Vec<Vec<S>>,
    /// Excitation numbers whose tower state is nonzero.
    pub energies: Vec<usize>,
}

pub fn build_sector<S: Scalar>(spec: &SectorSpec, tol: f64) -> Result<BraidedSector<S>> {
    spec.validate()?;
    let n = spec.n;
    let dim = 1usize << n;
    let blocks = (1..=n)
        .map(|k| creation_block::<S>(&spec.level, k, n))
        .collect::<Result<Vec<_>>>()?;
    let total = blocks.iter().fold(Mat::zeros(dim, dim), |acc, b| &acc + b);
    let vacuum = basis_vector::<S>(dim, 0);
    let mut states = vec![vacuum.clone()];
    for _ in 0..spec.n_max {
        let next = total.apply(states.last().unwrap())?;
        states.push(next);
    }
    let energies = states
        .iter()
        .enumerate()
        .filter(|(_, v)| !vec_near_zero(v, tol))
        .map(|(k, _)| k)
        .collect();
    Ok(BraidedSector { spec: *spec, blocks, hamiltonian: hamiltonian(n), vacuum, states, energies })
}

impl<S: Scalar> BraidedSector<S> {
    pub fn dim(&self) -> usize {
        1 << self.spec.n
    }

    /// `Σ_k A†_k`.
    pub fn total_creation(&self) -> Mat<S> {
        self.blocks.iter().fold(Mat::zeros(self.dim(), self.dim()), |acc, b| &acc + b)
    }

    pub fn annihilators(&self) -> Vec<Mat<S>> {
        self.blocks.iter().map(Mat::dagger).collect()
    }

    /// Central element `c = I`.
    pub fn central(&self) -> Mat<S> {
        Mat::identity(self.dim())
    }

    /// Squared norms `⟨n|n⟩` of the tower states.
    pub fn norms(&self) -> Vec<S> {
        self.states.iter().map(|v| inner(v, v)).collect()
    }

    /// Nilpotency, pairwise braiding, Hamiltonian shape and eigenvector checks.
    pub fn structure_checks(&self, tol: f64) -> Vec<Check> {
        let mut checks = Vec::new();
        let q = self.spec.level.phase::<S>(2);
        for (k, b) in self.blocks.iter().enumerate() {
            checks.push(Check::zero(format!("A{}^2", k + 1), &(b * b), tol));
        }
        for k in 0..self.blocks.len() {
            for kp in k + 1..self.blocks.len() {
                let (a, b) = (&self.blocks[k], &self.blocks[kp]);
                let lhs = b * a;
                let rhs = (a * b).scale(&q);
                checks.push(Check::equal(format!("A{}A{} = e^(2 pi i g) A{}A{}", kp + 1, k + 1, k + 1, kp + 1), &lhs, &rhs, tol));
            }
        }
        let popcount = Mat::diag(
            &(0..self.dim()).map(|i| S::from_int(i.count_ones() as i64)).collect::<Vec<_>>(),
        );
        checks.push(Check::equal("H_N = popcount diagonal", &self.hamiltonian, &popcount, tol));
        for &e in &self.energies {
            let v = &self.states[e];
            let hv = self.hamiltonian.apply(v).expect("square");
            let diff = vec_sub(&hv, &vec_scale(v, &S::from_int(e as i64)));
            let res = diff.iter().map(Scalar::abs).fold(0.0, f64::max);
            checks.push(Check { name: format!("H_N |{e}> = {e} |{e}>"), pass: vec_near_zero(&diff, tol), residual: res });
        }
        checks
    }
}

/// Surviving excitation numbers.
pub fn spectrum<S: Scalar>(spec: &SectorSpec, tol: f64) -> Result<Vec<usize>> {
    Ok(build_sector::<S>(spec, tol)?.energies)
}

/// Closed-form spectrum: `0..=min(N, s−1)` at level `s`, `0..=N` untruncated.
pub fn expected_spectrum(level: Level, n: usize) -> Vec<usize> {
    let top = match level {
        Level::Finite(s) => n.min(s as usize - 1),
        Level::Inf => n,
    };
    (0..=top).collect()
}

/// One row of the tower/polynomial comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerRow {
    pub n: usize,
    pub state_vanishes: bool,
    pub f_vanishes: bool,
}

/// Compares vanishing of `|n⟩` with vanishing of `f_n(t)` for `n ≤ n_max`.
pub fn tower_vanishing_rows<S: Scalar>(spec: &SectorSpec, tol: f64) -> Result<Vec<TowerRow>> {
    if spec.n_max > spec.n {
        return Err(Error::OutOfRange(format!("cutoff {} exceeds N = {}", spec.n_max, spec.n)));
    }
    let sector = build_sector::<S>(spec, tol)?;
    let t: S = spec.level.t();
    Ok(sector
        .states
        .iter()
        .enumerate()
        .map(|(n, v)| TowerRow {
            n,
            state_vanishes: vec_near_zero(v, tol),
            f_vanishes: f_factor(n as u32, &t).near_zero(tol),
        })
        .collect())
}

pub fn tower_vanishing_check<S: Scalar>(spec: &SectorSpec, tol: f64) -> Result<bool> {
    Ok(tower_vanishing_rows::<S>(spec, tol)?.iter().all(|r| r.state_vanishes == r.f_vanishes))
}

/// Sector of a matrix under the non-standard Z2 grading of `2^N`-dimensional matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Grading {
    Even,
    Odd,
    None,
}

/// Entry `(i, j)` is even when `popcount(i)` and `popcount(j)` have equal parity.
/// The zero matrix counts as even.
pub fn grading_sector<S: Scalar>(m: &Mat<S>, tol: f64) -> Grading {
    let (mut even, mut odd) = (false, false);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).near_zero(tol) {
                if (i.count_ones() + j.count_ones()) % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
    }
    match (even, odd) {
        (_, false) => Grading::Even,
        (false, true) => Grading::Odd,
        (true, true) => Grading::None,
    }
}

/// Orthogonal projector onto the span of the nonzero tower states (Gram-Schmidt).
pub fn indist_projector<S: Scalar>(sector: &BraidedSector<S>, tol: f64) -> Result<Mat<S>> {
    let dim = sector.dim();
    let mut basis: Vec<(Vec<S>, S)> = Vec::new();
    for v in &sector.states {
        let mut w = v.clone();
        for (b, bb_inv) in &basis {
            let c = inner(b, &w).times(bb_inv);
            w = vec_sub(&w, &vec_scale(b, &c));
        }
        if vec_near_zero(&w, tol) {
            continue;
        }
        let norm = inner(&w, &w);
        let inv = norm
            .inverse()
            .ok_or_else(|| Error::NotInvertible("tower state norm".into()))?;
        basis.push((w, inv));
    }
    let mut p = Mat::<S>::zeros(dim, dim);
    for (b, inv) in &basis {
        for i in 0..dim {
            if b[i].is_exact_zero() {
                continue;
            }
            let bi = b[i].times(inv);
            for j in 0..dim {
                if !b[j].is_exact_zero() {
                    let v = p.get(i, j).plus(&bi.times(&b[j].conj()));
                    p.set(i, j, v);
                }
            }
        }
    }
    Ok(p)
}
