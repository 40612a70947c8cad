//! Comparison with quon oscillators and the nonminimal ternary realization at
//! the third root of unity.

use serde::Serialize;

use crate::arith::{Mat, Scalar};
use crate::braided_fock::{creation_block, spectrum, SectorSpec};
use crate::error::{Error, Result};
use crate::metasym::{build_algebra, mixed_bracket, Angle, BracketAlgebra};
use crate::qubit_core::{BraidLevel, Gl11Generators};
use crate::report::Check;

/// `θ_q = arcsin √((1 − q)/2)`, so that `q = 1 − 2 sin² θ_q`.
pub fn quon_angle(q: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&q) {
        return Err(Error::OutOfRange(format!("q = {q} outside [-1, 1]")));
    }
    Ok(((1.0 - q) / 2.0).sqrt().asin())
}

/// Solves `a a† − q a† a = 1` entrywise. `None` if no single `q` fits.
pub fn fit_quon_q<S: Scalar>(a: &Mat<S>, tol: f64) -> Option<S> {
    let ad = a.dagger();
    let aad = a * &ad;
    let ada = &ad * a;
    let lhs = &aad - &Mat::identity(a.rows());
    let mut q: Option<S> = None;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let (x, y) = (lhs.get(i, j), ada.get(i, j));
            if y.near_zero(tol) {
                if !x.near_zero(tol) {
                    return None;
                }
                continue;
            }
            let cand = x.times(&y.inverse()?);
            match &q {
                None => q = Some(cand),
                Some(prev) if !prev.minus(&cand).near_zero(tol) => return None,
                _ => {}
            }
        }
    }
    q
}

/// Per-block quon analysis of an `N`-particle sector.
#[derive(Clone, Debug, Serialize)]
pub struct QuonRow {
    pub k: usize,
    pub anticommutator_is_identity: bool,
    /// Real part of the fitted `q`, when a unique value exists.
    pub fitted_q: Option<f64>,
    pub q_is_minus_one: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuonReport {
    pub rows: Vec<QuonRow>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn quon_discriminator<S: Scalar>(level: BraidLevel, n: usize, tol: f64) -> Result<QuonReport> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let id = Mat::identity(1 << n);
    for k in 1..=n {
        let ad = creation_block::<S>(&level, k, n)?;
        let a = ad.dagger();
        let ac = a.acomm(&ad)?;
        let anti = Check::equal(format!("A{k} A{k}^dagger + A{k}^dagger A{k} = I"), &ac, &id, tol);
        let q = fit_quon_q(&a, tol);
        let minus_one = q.as_ref().is_some_and(|q| q.plus(&S::one()).near_zero(tol));
        checks.push(anti.clone());
        checks.push(Check::flag(format!("unique quon fit q = -1 for k = {k}"), minus_one));
        rows.push(QuonRow {
            k,
            anticommutator_is_identity: anti.pass,
            fitted_q: q.map(|x| x.to_complex().re),
            q_is_minus_one: minus_one,
        });
    }
    if n >= 2 {
        let a1 = creation_block::<S>(&level, 1, n)?;
        let a2 = creation_block::<S>(&level, 2, n)?;
        let theta = Angle::new((level.g() * 2 + 1) / 2);
        checks.push(Check::zero(format!("(A1^dagger, A2^dagger)_{theta} = 0"), &mixed_bracket(&a1, &a2, theta)?, tol));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(QuonReport { rows, checks, pass })
}

/// `Q_1, Q_2, Q_3` and their adjoints with `j = e^(2πi/3)`.
#[derive(Clone, Debug)]
pub struct TernaryGenerators<S> {
    pub j: S,
    pub q: [Mat<S>; 3],
    pub qd: [Mat<S>; 3],
}

pub fn ternary_generators<S: Scalar>() -> TernaryGenerators<S> {
    let j = S::root_of_unity(1, 3);
    let j2 = j.times(&j);
    let (o, z) = (S::one(), S::zero());
    let m = |rows: [[&S; 3]; 3]| Mat::from_fn(3, 3, |r, c| rows[r][c].clone());
    let q1 = m([[&z, &o, &z], [&z, &z, &j], [&j2, &z, &z]]);
    let q2 = m([[&z, &j, &z], [&z, &z, &o], [&j2, &z, &z]]);
    let q3 = m([[&z, &o, &z], [&z, &z, &o], [&o, &z, &z]]);
    let qd = [q1.dagger(), q2.dagger(), q3.dagger()];
    TernaryGenerators { j, q: [q1, q2, q3], qd }
}

/// Z3 degree of a Kronecker-structured matrix: for every nonzero entry, the sum
/// over ternary factors of `(column digit − row digit) mod 3`. `None` if the
/// degree is not constant or the matrix vanishes.
pub fn z3_degree<S: Scalar>(m: &Mat<S>, factors: &[usize], tol: f64) -> Option<u8> {
    let digits = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for (k, &f) in factors.iter().enumerate().rev() {
            out[k] = idx % f;
            idx /= f;
        }
        out
    };
    let mut found = None;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if m.get(r, c).near_zero(tol) {
                continue;
            }
            let (dr, dc) = (digits(r), digits(c));
            let deg = factors
                .iter()
                .enumerate()
                .filter(|(_, &f)| f == 3)
                .map(|(k, _)| (dc[k] + 3 - dr[k]) % 3)
                .sum::<usize>()
                % 3;
            match found {
                None => found = Some(deg as u8),
                Some(d) if d as usize != deg => return None,
                _ => {}
            }
        }
    }
    found
}

/// Nonminimal sector built from `γ`, `I_2` and the `Q` matrices.
#[derive(Clone, Debug)]
pub struct TernarySector<S> {
    pub n: usize,
    /// Kronecker factor sizes, slot 1 first.
    pub factors: Vec<usize>,
    pub blocks: Vec<Mat<S>>,
    pub hamiltonian: Mat<S>,
    pub vacuum: Vec<S>,
}

/// `N = 2`: `γ⊗I⊗Q_1`, `I⊗γ⊗Q_2`. `N = 3`: `γ⊗I⊗I⊗Q_1⊗I`, `I⊗γ⊗I⊗Q_2⊗Q_1`,
/// `I⊗I⊗γ⊗Q_2⊗Q_2`.
pub fn ternary_sector<S: Scalar>(n: usize) -> Result<TernarySector<S>> {
    let t = ternary_generators::<S>();
    let gamma = Gl11Generators::<S>::new().gamma;
    let delta = Gl11Generators::<S>::new().delta;
    let (i2, i3) = (Mat::<S>::identity(2), Mat::<S>::identity(3));
    let (q1, q2) = (&t.q[0], &t.q[1]);
    let (factors, blocks): (Vec<usize>, Vec<Mat<S>>) = match n {
        2 => (
            vec![2, 2, 3],
            vec![Mat::kron_all([&gamma, &i2, q1]), Mat::kron_all([&i2, &gamma, q2])],
        ),
        3 => (
            vec![2, 2, 2, 3, 3],
            vec![
                Mat::kron_all([&gamma, &i2, &i2, q1, &i3]),
                Mat::kron_all([&i2, &gamma, &i2, q2, q1]),
                Mat::kron_all([&i2, &i2, &gamma, q2, q2]),
            ],
        ),
        _ => return Err(Error::OutOfRange(format!("ternary sector needs N in {{2, 3}}, got {n}"))),
    };
    let ternary_id = Mat::identity(3usize.pow(n as u32 - 1));
    let mut h = Mat::zeros(1 << n, 1 << n);
    for k in 0..n {
        h = &h + &Mat::kron_all((0..n).map(|j| if j == k { &delta } else { &i2 }));
    }
    let hamiltonian = h.kron(&ternary_id);
    let dim = hamiltonian.rows();
    let mut vacuum = vec![S::zero(); dim];
    vacuum[0] = S::one();
    Ok(TernarySector { n, factors, blocks, hamiltonian, vacuum })
}

impl<S: Scalar> TernarySector<S> {
    pub fn dim(&self) -> usize {
        self.hamiltonian.rows()
    }

    pub fn total_creation(&self) -> Mat<S> {
        self.blocks.iter().fold(Mat::zeros(self.dim(), self.dim()), |a, b| &a + b)
    }

    /// `c` with `B_l B_k = c B_k B_l` for `k < l`, if such a scalar exists.
    pub fn exchange_factor(&self, k: usize, l: usize, tol: f64) -> Option<S> {
        let lhs = &self.blocks[l] * &self.blocks[k];
        let rhs = &self.blocks[k] * &self.blocks[l];
        let (i, j) = (0..rhs.rows())
            .flat_map(|i| (0..rhs.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !rhs.get(i, j).near_zero(tol))?;
        let c = lhs.get(i, j).times(&rhs.get(i, j).inverse()?);
        (&lhs - &rhs.scale(&c)).is_zero(tol).then_some(c)
    }

    /// Energies of the nonvanishing tower states `(B†)^n |vac⟩`.
    pub fn tower_energies(&self, tol: f64) -> Result<Vec<usize>> {
        let b = self.total_creation();
        let mut v = self.vacuum.clone();
        let mut out = Vec::new();
        for n in 0..=self.n + 1 {
            if v.iter().all(|x| x.near_zero(tol)) {
                break;
            }
            let hv = self.hamiltonian.apply(&v)?;
            let expect = S::from_int(n as i64);
            let eigen = hv.iter().zip(&v).all(|(a, x)| a.minus(&x.times(&expect)).near_zero(tol));
            if !eigen {
                return Err(Error::Degenerate(format!("tower state {n} is not an energy eigenvector")));
            }
            out.push(n);
            v = b.apply(&v)?;
        }
        Ok(out)
    }

    /// Creation blocks followed by their adjoints.
    pub fn generators(&self) -> Vec<Mat<S>> {
        let mut g = self.blocks.clone();
        g.extend(self.blocks.iter().map(|b| b.dagger()));
        g
    }

    /// Homogeneous degrees of all generators and additivity on nonzero products
    /// of pairs and triples.
    pub fn z3_checks(&self, tol: f64) -> Vec<Check> {
        let gens = self.generators();
        let degs: Vec<Option<u8>> = gens.iter().map(|g| z3_degree(g, &self.factors, tol)).collect();
        let mut out = Vec::new();
        for (k, d) in degs.iter().enumerate() {
            out.push(Check::flag(format!("generator {k} has a Z3 degree"), d.is_some()));
        }
        // adjoints carry the opposite degree
        let nb = self.blocks.len();
        let opposite = (0..nb).all(|k| degs[k].zip(degs[k + nb]).is_some_and(|(a, b)| (a + b) % 3 == 0));
        out.push(Check::flag("deg(B^dagger) + deg(B) = 0", opposite));
        let mut additive = true;
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                let ab = &gens[a] * &gens[b];
                if let Some(d) = z3_degree(&ab, &self.factors, tol) {
                    additive &= degs[a].zip(degs[b]).is_some_and(|(x, y)| (x + y) % 3 == d);
                }
                for c in 0..gens.len() {
                    let abc = &ab * &gens[c];
                    if let Some(d) = z3_degree(&abc, &self.factors, tol) {
                        additive &= matches!((degs[a], degs[b], degs[c]), (Some(x), Some(y), Some(z)) if (x + y + z) % 3 == d);
                    }
                }
            }
        }
        out.push(Check::flag("Z3 degree additive on products", additive));
        out
    }

    /// Mixed-bracket algebra carried by the blocks, with the angle ledger of
    /// `level`.
    pub fn bracket_algebra(&self, level: BraidLevel) -> Result<BracketAlgebra<S>> {
        let mut alg = build_algebra::<S>(level, self.n)?;
        alg.gens.insert(0, Mat::identity(self.dim()));
        for (k, b) in self.blocks.iter().enumerate() {
            alg.gens.insert(k as i32 + 1, b.clone());
            alg.gens.insert(-(k as i32) - 1, b.dagger());
        }
        Ok(alg)
    }
}

/// Ternary tower energies against the minimal sector at level 3.
pub fn ternary_spectrum_match<S: Scalar>(n: usize, tol: f64) -> Result<(Vec<usize>, Vec<usize>, bool)> {
    let t = ternary_sector::<S>(n)?.tower_energies(tol)?;
    let m = spectrum::<S>(&SectorSpec::new(n, BraidLevel::finite(3)?), tol)?;
    let same = t == m;
    Ok((t, m, same))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{CycScalar, Ring};
    use num_complex::Complex64;

    type C = CycScalar;

    #[test]
    fn quon_angles() {
        assert_eq!(quon_angle(1.0).unwrap(), 0.0);
        assert!((quon_angle(0.0).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((quon_angle(-1.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(quon_angle(1.5).is_err());
    }

    #[test]
    fn quon_fit_is_fermionic() {
        for s in 2..=5 {
            let r = quon_discriminator::<C>(BraidLevel::finite(s).unwrap(), 2, 0.0).unwrap();
            assert!(r.pass, "s={s}: {r:?}");
            assert!(r.rows.iter().all(|row| row.fitted_q == Some(-1.0)));
        }
        let r = quon_discriminator::<Complex64>(BraidLevel::finite(3).unwrap(), 3, 1e-12).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn quon_fit_rejects_bosonic_shift() {
        // truncated boson: a a† − a† a is not the identity at the top
        let a = Mat::<C>::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(fit_quon_q(&a, 0.0), Some(C::from_int(-1)));
        let b = Mat::<C>::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(fit_quon_q(&b, 0.0), None);
    }

    #[test]
    fn ternary_matrices() {
        let t = ternary_generators::<C>();
        for k in 0..3 {
            assert_eq!(t.q[k].pow(3).unwrap(), Mat::identity(3));
            assert_eq!(&t.q[k] * &t.qd[k], Mat::identity(3));
            assert_eq!(z3_degree(&t.q[k], &[3], 0.0), Some(1));
            assert_eq!(z3_degree(&t.qd[k], &[3], 0.0), Some(2));
        }
        let j2 = t.j.times(&t.j);
        assert_eq!(&t.q[1] * &t.q[0], (&t.q[0] * &t.q[1]).scale(&j2));
    }

    #[test]
    fn ternary_sectors() {
        let s2 = ternary_sector::<C>(2).unwrap();
        assert_eq!(s2.dim(), 12);
        let s3 = ternary_sector::<C>(3).unwrap();
        assert_eq!(s3.dim(), 72);
        for b in s3.blocks.iter().chain(&s2.blocks) {
            assert!((b * b).is_exact_zero());
        }
        assert!(s3.total_creation().pow(3).unwrap().is_exact_zero());
        let j = ternary_generators::<C>().j;
        let j2 = j.times(&j);
        assert_eq!(s2.exchange_factor(0, 1, 0.0), Some(j2.clone()));
        for (k, l) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(s3.exchange_factor(k, l, 0.0), Some(j2.clone()));
        }
        assert!(ternary_sector::<C>(4).is_err());
    }

    #[test]
    fn ternary_spectra() {
        for n in [2, 3] {
            let (t, m, same) = ternary_spectrum_match::<C>(n, 0.0).unwrap();
            assert!(same, "{t:?} vs {m:?}");
            assert_eq!(t, vec![0, 1, 2]);
        }
    }

    #[test]
    fn ternary_gradings() {
        let degs = |n: usize| {
            let s = ternary_sector::<C>(n).unwrap();
            s.generators().iter().map(|g| z3_degree(g, &s.factors, 0.0).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(degs(2), vec![1, 1, 2, 2]);
        assert_eq!(degs(3), vec![1, 2, 2, 2, 1, 1]);
        for n in [2, 3] {
            let s = ternary_sector::<C>(n).unwrap();
            for c in s.z3_checks(0.0) {
                assert!(c.pass, "N={n}: {}", c.name);
            }
        }
    }

    #[test]
    fn ternary_brackets() {
        let s = ternary_sector::<C>(2).unwrap();
        let conj = s.bracket_algebra(BraidLevel::with_representative(3, 2).unwrap()).unwrap();
        assert!(conj.closure_checks(0.0).iter().all(|c| c.pass));
        let direct = s.bracket_algebra(BraidLevel::finite(3).unwrap()).unwrap();
        assert!(!direct.closure_checks(0.0).iter().all(|c| c.pass));
    }
}
