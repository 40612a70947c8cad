//! Lowest-weight representations of osp(1|2) and U_q(osp(1|2)), graded
//! tensor products, and the projected multi-particle towers.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::arith::{LaurentPoly, Mat, Ring, Scalar};
use crate::braided_fock::{spectrum, SectorSpec};
use crate::error::{Error, Result};
use crate::qubit_core::{BraidLevel, Eta, Level};
use crate::report::Check;

/// Largest `M^N` that [`materialize`] will build densely.
pub const MAX_MATERIALIZED_DIM: usize = 4096;

fn diag_from<S: Scalar>(m: usize, f: impl Fn(usize) -> S) -> Mat<S> {
    Mat::diag(&(0..m).map(f).collect::<Vec<_>>())
}

fn shift_up<S: Scalar>(m: usize) -> Mat<S> {
    Mat::from_fn(m, m, |i, j| if i == j + 1 { S::one() } else { S::zero() })
}

/// Lowering operator `|n⟩ ↦ c_n |n−1⟩`.
fn lowering<S: Scalar>(c: &[S]) -> Mat<S> {
    let m = c.len();
    Mat::from_fn(m, m, |i, j| if j == i + 1 { c[j].clone() } else { S::zero() })
}

fn parity_op<S: Scalar>(m: usize) -> Mat<S> {
    diag_from(m, |n| S::from_int(if n % 2 == 0 { 1 } else { -1 }))
}

/// Checks `X` on the leading block that is unaffected by the top-level truncation.
fn interior_check<S: Scalar>(name: &str, x: &Mat<S>, margin: usize, tol: f64) -> Check {
    let n = x.rows().saturating_sub(margin);
    Check::zero(name, &x.leading_block(n), tol)
}

/// Truncated lowest-weight module of osp(1|2).
#[derive(Clone, Debug)]
pub struct Osp12Rep<S> {
    pub m: usize,
    pub lambda: Rational64,
    pub h: Mat<S>,
    pub f_plus: Mat<S>,
    pub f_minus: Mat<S>,
    pub e_plus: Mat<S>,
    pub e_minus: Mat<S>,
    pub parity: Mat<S>,
}

/// Builds the module with `H = diag(λ + n/2)`, `F_+` the shift and
/// `E_± = ±4 F_±²` (so that `{F_±, F_±} = ±E_±/2`).
pub fn classical_rep<S: Scalar>(m: usize, lambda: Rational64) -> Result<Osp12Rep<S>> {
    if m < 4 {
        return Err(Error::OutOfRange(format!("cutoff M = {m} must be at least 4")));
    }
    let h_val = |n: usize| lambda + Rational64::new(n as i64, 2);
    let h = diag_from(m, |n| {
        let q = h_val(n);
        S::from_ratio(*q.numer(), *q.denom())
    });
    // c_0 = 0, c_n + c_{n+1} = (λ + n/2)/2
    let mut c = vec![Rational64::from_integer(0)];
    for n in 0..m - 1 {
        c.push(h_val(n) / 2 - c[n]);
    }
    let c: Vec<S> = c.iter().map(|q| S::from_ratio(*q.numer(), *q.denom())).collect();
    let f_plus = shift_up::<S>(m);
    let f_minus = lowering(&c);
    let e_plus = (&f_plus * &f_plus).scale(&S::from_int(4));
    let e_minus = (&f_minus * &f_minus).scale(&S::from_int(-4));
    Ok(Osp12Rep { m, lambda, h, f_plus, f_minus, e_plus, e_minus, parity: parity_op(m) })
}

impl<S: Scalar> Osp12Rep<S> {
    /// `C_2 = H² + (E_+E_− + E_−E_+)/2 − (F_+F_− − F_−F_+)`.
    pub fn casimir(&self) -> Mat<S> {
        let h2 = &self.h * &self.h;
        let ee = self.e_plus.acomm(&self.e_minus).unwrap().scale(&S::from_ratio(1, 2));
        let ff = self.f_plus.comm(&self.f_minus).unwrap();
        &(&h2 + &ee) - &ff
    }

    fn gens(&self) -> [(&'static str, &Mat<S>); 5] {
        [
            ("H", &self.h),
            ("F+", &self.f_plus),
            ("F-", &self.f_minus),
            ("E+", &self.e_plus),
            ("E-", &self.e_minus),
        ]
    }

    /// Defining relations (margin 2) and Casimir centrality (margin 4).
    pub fn relation_checks(&self, tol: f64) -> Vec<Check> {
        let half = S::from_ratio(1, 2);
        let (h, fp, fm, ep, em) = (&self.h, &self.f_plus, &self.f_minus, &self.e_plus, &self.e_minus);
        let rel = |name: &str, lhs: Mat<S>, rhs: Mat<S>| interior_check(name, &(&lhs - &rhs), 2, tol);
        let mut out = vec![
            rel("[H,F+] = F+/2", h.comm(fp).unwrap(), fp.scale(&half)),
            rel("[H,F-] = -F-/2", h.comm(fm).unwrap(), fm.scale(&half.negated())),
            rel("[H,E+] = E+", h.comm(ep).unwrap(), ep.clone()),
            rel("[H,E-] = -E-", h.comm(em).unwrap(), em.negated()),
            rel("[E+,E-] = 2H", ep.comm(em).unwrap(), h.scale(&S::from_int(2))),
            rel("[E+,F-] = -F+", ep.comm(fm).unwrap(), fp.negated()),
            rel("[E-,F+] = -F-", em.comm(fp).unwrap(), fm.negated()),
            rel("{F+,F-} = H/2", fp.acomm(fm).unwrap(), h.scale(&half)),
            rel("{F+,F+} = E+/2", fp.acomm(fp).unwrap(), ep.scale(&half)),
            rel("{F-,F-} = -E-/2", fm.acomm(fm).unwrap(), em.scale(&half.negated())),
            rel("[E+,F+] = 0", ep.comm(fp).unwrap(), Mat::zeros(self.m, self.m)),
            rel("[E-,F-] = 0", em.comm(fm).unwrap(), Mat::zeros(self.m, self.m)),
        ];
        let c2 = self.casimir();
        for (name, g) in self.gens() {
            out.push(interior_check(&format!("[C2,{name}] = 0"), &c2.comm(g).unwrap(), 4, tol));
        }
        out
    }

    /// Applies the graded anti-involution `H* = H`, `F_±* = ±F_∓` to both sides
    /// of the relations among `H, F_±` and checks the images.
    pub fn anti_involution_checks(&self, tol: f64) -> Vec<Check> {
        use Gen::*;
        let relations: [(&str, Vec<Term>, Vec<Term>); 5] = [
            ("[H,F+] = F+/2", comm(H, Fp), vec![(Rational64::new(1, 2), vec![Fp])]),
            ("[H,F-] = -F-/2", comm(H, Fm), vec![(Rational64::new(-1, 2), vec![Fm])]),
            ("{F+,F-} = H/2", acomm(Fp, Fm), vec![(Rational64::new(1, 2), vec![H])]),
            ("{F+,F+} = 2F+^2", acomm(Fp, Fp), vec![(Rational64::from_integer(2), vec![Fp, Fp])]),
            ("{F-,F-} = 2F-^2", acomm(Fm, Fm), vec![(Rational64::from_integer(2), vec![Fm, Fm])]),
        ];
        let mut out = Vec::new();
        for (name, lhs, rhs) in relations {
            let l = self.eval(&star(&lhs));
            let r = self.eval(&star(&rhs));
            out.push(interior_check(&format!("*({name})"), &(&l - &r), 2, tol));
        }
        // (z*)* = (−1)^ε z
        for g in [H, Fp, Fm] {
            let twice = star(&star(&[(Rational64::from_integer(1), vec![g])]));
            let sign = if g.odd() { -1 } else { 1 };
            let expect = self.eval(&[(Rational64::from_integer(sign), vec![g])]);
            out.push(Check::equal(format!("**{g:?}"), &self.eval(&twice), &expect, tol));
        }
        out
    }

    fn eval(&self, terms: &[Term]) -> Mat<S> {
        let mut acc = Mat::zeros(self.m, self.m);
        for (c, word) in terms {
            let mut w = Mat::identity(self.m);
            for g in word {
                let gm = match g {
                    Gen::H => &self.h,
                    Gen::Fp => &self.f_plus,
                    Gen::Fm => &self.f_minus,
                };
                w = &w * gm;
            }
            acc = &acc + &w.scale(&S::from_ratio(*c.numer(), *c.denom()));
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    H,
    Fp,
    Fm,
}

impl Gen {
    fn odd(self) -> bool {
        self != Gen::H
    }
}

type Term = (Rational64, Vec<Gen>);

fn comm(a: Gen, b: Gen) -> Vec<Term> {
    vec![(Rational64::from_integer(1), vec![a, b]), (Rational64::from_integer(-1), vec![b, a])]
}

fn acomm(a: Gen, b: Gen) -> Vec<Term> {
    vec![(Rational64::from_integer(1), vec![a, b]), (Rational64::from_integer(1), vec![b, a])]
}

/// Graded anti-automorphism on words: `(xy)* = (−1)^(ε_x ε_y) y* x*`.
fn star(terms: &[Term]) -> Vec<Term> {
    let mut out = Vec::new();
    for (c, word) in terms {
        let mut coef = *c;
        // Reversal sign: one factor −1 per pair of odd letters.
        let odd = word.iter().filter(|g| g.odd()).count() as i64;
        if (odd * (odd - 1) / 2) % 2 == 1 {
            coef = -coef;
        }
        let mut img = Vec::with_capacity(word.len());
        for g in word.iter().rev() {
            img.push(match g {
                Gen::H => Gen::H,
                Gen::Fp => Gen::Fm,
                Gen::Fm => {
                    coef = -coef;
                    Gen::Fp
                }
            });
        }
        out.push((coef, img));
    }
    out
}

/// Truncated lowest-weight module of U_q(osp(1|2)) with `λ = 0`.
#[derive(Clone, Debug)]
pub struct UqRep<S> {
    pub eta: Eta,
    pub m: usize,
    pub h: Mat<S>,
    pub f_plus: Mat<S>,
    /// Absent when `sinh(2η) = 0`.
    pub f_minus: Option<Mat<S>>,
    /// `e^(ηH/2)`.
    pub exp_plus: Mat<S>,
    /// `e^(−ηH/2)`.
    pub exp_minus: Mat<S>,
    pub parity: Mat<S>,
}

fn sinh<S: Scalar>(eta: Eta, c: Rational64) -> Result<S> {
    let p: S = eta.exp(c)?;
    let m: S = eta.exp(-c)?;
    Ok(p.minus(&m).times(&S::from_ratio(1, 2)))
}

pub fn quantum_rep<S: Scalar>(eta: Eta, m: usize) -> Result<UqRep<S>> {
    if m < 3 {
        return Err(Error::OutOfRange(format!("cutoff M = {m} must be at least 3")));
    }
    let h = diag_from(m, |n| S::from_ratio(n as i64, 2));
    let exp_diag = |sign: i64| -> Result<Mat<S>> {
        let d = (0..m)
            .map(|n| eta.exp::<S>(Rational64::new(sign * n as i64, 4)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::diag(&d))
    };
    let exp_plus = exp_diag(1)?;
    let exp_minus = exp_diag(-1)?;
    let f_minus = if eta.sinh_2eta_vanishes() {
        None
    } else {
        let inv = sinh::<S>(eta, Rational64::from_integer(2))?
            .inverse()
            .ok_or_else(|| Error::Degenerate("sinh(2 eta) = 0".into()))?;
        // c_0 = 0, c_n + c_{n+1} = sinh(ηn/2)/sinh(2η)
        let mut c = vec![S::zero()];
        for n in 0..m - 1 {
            let rhs = sinh::<S>(eta, Rational64::new(n as i64, 2))?.times(&inv);
            c.push(rhs.minus(&c[n]));
        }
        Some(lowering(&c))
    };
    Ok(UqRep { eta, m, h, f_plus: shift_up(m), f_minus, exp_plus, exp_minus, parity: parity_op(m) })
}

impl<S: Scalar> UqRep<S> {
    pub fn is_degenerate(&self) -> bool {
        self.f_minus.is_none()
    }

    /// `sinh(ηH)/sinh(2η)`.
    pub fn sinh_ratio(&self) -> Result<Mat<S>> {
        let inv = sinh::<S>(self.eta, Rational64::from_integer(2))?
            .inverse()
            .ok_or_else(|| Error::Degenerate("sinh(2 eta) = 0".into()))?;
        let d = (0..self.m)
            .map(|n| Ok(sinh::<S>(self.eta, Rational64::new(n as i64, 2))?.times(&inv)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::diag(&d))
    }

    /// `[H, F_±] = ±F_±/2` exactly, and the sinh anticommutator on the interior
    /// when `F_−` exists.
    pub fn relation_checks(&self, tol: f64) -> Result<Vec<Check>> {
        let half = S::from_ratio(1, 2);
        let mut out = vec![Check::equal("[H,F+] = F+/2", &self.h.comm(&self.f_plus)?, &self.f_plus.scale(&half), tol)];
        if let Some(fm) = &self.f_minus {
            out.push(Check::equal("[H,F-] = -F-/2", &self.h.comm(fm)?, &fm.scale(&half.negated()), tol));
            let diff = &self.f_plus.acomm(fm)? - &self.sinh_ratio()?;
            out.push(interior_check("{F+,F-} = sinh(eta H)/sinh(2 eta)", &diff, 1, tol));
        }
        Ok(out)
    }

    /// `e^(uH) F_+ e^(−uH) = e^(u/2) F_+`.
    pub fn conjugation_check(&self, u: Eta, tol: f64) -> Result<Check> {
        let d = |sign: i64| -> Result<Mat<S>> {
            let v = (0..self.m)
                .map(|n| u.exp::<S>(Rational64::new(sign * n as i64, 2)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Mat::diag(&v))
        };
        let lhs = &(&d(1)? * &self.f_plus) * &d(-1)?;
        let rhs = self.f_plus.scale(&u.exp::<S>(Rational64::new(1, 2))?);
        Ok(Check::equal("e^(uH) F+ e^(-uH) = e^(u/2) F+", &lhs, &rhs, tol))
    }
}

/// Single-slot factor of a tensor expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotOp {
    Id,
    FPlus,
    /// `e^(ηH/2)`.
    ExpPlus,
    /// `e^(−ηH/2)`.
    ExpMinus,
}

impl SlotOp {
    fn odd(self) -> bool {
        self == SlotOp::FPlus
    }

    /// Coproduct of a single factor.
    fn coproduct(self) -> Vec<[SlotOp; 2]> {
        match self {
            SlotOp::FPlus => vec![[SlotOp::FPlus, SlotOp::ExpPlus], [SlotOp::ExpMinus, SlotOp::FPlus]],
            other => vec![[other, other]],
        }
    }
}

/// Sum of tensor words with unit coefficients.
pub type TensorExpr = Vec<Vec<SlotOp>>;

/// Applies `Δ` to slot `slot` of every word.
pub fn coproduct_at(expr: &TensorExpr, slot: usize) -> TensorExpr {
    let mut out = Vec::new();
    for word in expr {
        for pair in word[slot].coproduct() {
            let mut w = word[..slot].to_vec();
            w.extend_from_slice(&pair);
            w.extend_from_slice(&word[slot + 1..]);
            out.push(w);
        }
    }
    out.sort();
    out
}

/// `Δ^(N−1)(F_+)` obtained by splitting the last slot repeatedly.
pub fn iterated_coproduct(n: usize) -> TensorExpr {
    let mut expr = vec![vec![SlotOp::FPlus]];
    for k in 1..n {
        expr = coproduct_at(&expr, k - 1);
    }
    expr
}

impl<S: Scalar> UqRep<S> {
    fn slot_matrix(&self, op: SlotOp) -> Mat<S> {
        match op {
            SlotOp::Id => Mat::identity(self.m),
            SlotOp::FPlus => self.f_plus.clone(),
            SlotOp::ExpPlus => self.exp_plus.clone(),
            SlotOp::ExpMinus => self.exp_minus.clone(),
        }
    }
}

/// Dense matrix of a tensor expression with Koszul signs realized by parity
/// operators on the slots left of each odd factor.
pub fn materialize<S: Scalar>(rep: &UqRep<S>, expr: &TensorExpr) -> Result<Mat<S>> {
    let n = expr.first().map_or(0, Vec::len);
    let dim = rep.m.checked_pow(n as u32).unwrap_or(usize::MAX);
    if dim > MAX_MATERIALIZED_DIM {
        return Err(Error::TooLarge { what: "graded tensor matrix", size: dim, bound: MAX_MATERIALIZED_DIM });
    }
    let mut acc = Mat::zeros(dim, dim);
    for word in expr {
        let mut factors: Vec<Mat<S>> = word.iter().map(|&op| rep.slot_matrix(op)).collect();
        for (k, op) in word.iter().enumerate() {
            if op.odd() {
                for f in factors.iter_mut().take(k) {
                    *f = &rep.parity * f;
                }
            }
        }
        acc = &acc + &Mat::kron_all(factors.iter());
    }
    Ok(acc)
}

/// Slot-`k` building block of the coproduct: `O` in slot `k`, `e^(−ηH/2)·parity^p`
/// on the slots before it and `e^(ηH/2)` after it.
pub fn graded_block<S: Scalar>(rep: &UqRep<S>, k: usize, n: usize, op: &Mat<S>, parity: u8) -> Result<Mat<S>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("slot {k} outside 1..={n}")));
    }
    if op.shape() != (rep.m, rep.m) {
        return Err(Error::DimensionMismatch { op: "graded_block", lhs: (rep.m, rep.m), rhs: op.shape() });
    }
    let dim = rep.m.checked_pow(n as u32).unwrap_or(usize::MAX);
    if dim > MAX_MATERIALIZED_DIM {
        return Err(Error::TooLarge { what: "graded block", size: dim, bound: MAX_MATERIALIZED_DIM });
    }
    let left = if parity % 2 == 1 { &rep.parity * &rep.exp_minus } else { rep.exp_minus.clone() };
    let factors: Vec<&Mat<S>> = (1..=n)
        .map(|slot| match slot.cmp(&k) {
            std::cmp::Ordering::Less => &left,
            std::cmp::Ordering::Equal => op,
            std::cmp::Ordering::Greater => &rep.exp_plus,
        })
        .collect();
    Ok(Mat::kron_all(factors))
}

/// `(Δ⊗id)Δ(F_+) = (id⊗Δ)Δ(F_+)` as materialized three-slot matrices.
pub fn coassociativity_check<S: Scalar>(rep: &UqRep<S>, tol: f64) -> Result<Check> {
    let delta = coproduct_at(&vec![vec![SlotOp::FPlus]], 0);
    let left = materialize(rep, &coproduct_at(&delta, 0))?;
    let right = materialize(rep, &coproduct_at(&delta, 1))?;
    Ok(Check::equal("(D x id) D(F+) = (id x D) D(F+)", &left, &right, tol))
}

/// Per-level diagonal data of the dressing factors.
struct Dressing<R> {
    up: Vec<R>,
    down: Vec<R>,
    parity: Vec<R>,
}

/// `(Δ^(N−1) F_+)^n |0…0⟩` for `n = 0..=n_max`, as sparse vectors over the
/// base-`M` multi-index (slot 1 most significant).
fn coproduct_tower<R: Ring>(n: usize, m: usize, n_max: usize, d: &Dressing<R>) -> Vec<BTreeMap<usize, R>> {
    let mut place = vec![1usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        place[k] = place[k + 1] * m;
    }
    let digit = |idx: usize, k: usize| (idx / place[k]) % m;
    let mut cur: BTreeMap<usize, R> = BTreeMap::from([(0, R::one())]);
    let mut out = vec![cur.clone()];
    for _ in 0..n_max {
        let mut next: BTreeMap<usize, R> = BTreeMap::new();
        for (&idx, val) in &cur {
            for k in 0..n {
                if digit(idx, k) + 1 >= m {
                    continue;
                }
                let mut coef = val.clone();
                for j in 0..n {
                    let dj = digit(idx, j);
                    match j.cmp(&k) {
                        std::cmp::Ordering::Less => coef = coef.times(&d.down[dj]).times(&d.parity[dj]),
                        std::cmp::Ordering::Greater => coef = coef.times(&d.up[dj]),
                        std::cmp::Ordering::Equal => {}
                    }
                }
                let e = next.entry(idx + place[k]).or_insert_with(R::zero);
                *e = e.plus(&coef);
            }
        }
        next.retain(|_, v| !v.is_exact_zero());
        cur = next;
        out.push(cur.clone());
    }
    out
}

/// Keeps only components with every slot in `{0, 1}`.
fn project<R: Ring>(v: &BTreeMap<usize, R>, n: usize, m: usize) -> BTreeMap<usize, R> {
    v.iter()
        .filter(|(&idx, _)| {
            let mut i = idx;
            (0..n).all(|_| {
                let ok = i % m <= 1;
                i /= m;
                ok
            })
        })
        .map(|(&k, v)| (k, v.clone()))
        .collect()
}

fn digit_sum(mut idx: usize, n: usize, m: usize) -> usize {
    let mut s = 0;
    for _ in 0..n {
        s += idx % m;
        idx /= m;
    }
    s
}

/// Energies `n` whose projected vector `P^⊗N (Δ^(N−1) F_+)^n |0⟩` is nonzero,
/// measured with `H_1 = 2H` per slot.
pub fn qgroup_spectrum<S: Scalar>(eta: Eta, n: usize, n_max: usize, tol: f64) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::OutOfRange("at least one slot is required".into()));
    }
    let m = n_max + 2;
    let rep = quantum_rep::<S>(eta, m)?;
    let d = Dressing {
        up: (0..m).map(|k| rep.exp_plus.get(k, k).clone()).collect(),
        down: (0..m).map(|k| rep.exp_minus.get(k, k).clone()).collect(),
        parity: (0..m).map(|k| rep.parity.get(k, k).clone()).collect(),
    };
    let tower = coproduct_tower(n, m, n_max, &d);
    let mut energies = Vec::new();
    for (level, v) in tower.iter().enumerate() {
        let p = project(v, n, m);
        let alive: Vec<usize> = p.iter().filter(|(_, x)| !x.near_zero(tol)).map(|(&i, _)| i).collect();
        if alive.is_empty() {
            continue;
        }
        // 2H summed over slots; λ = 0.
        let energy = digit_sum(alive[0], n, m);
        debug_assert!(alive.iter().all(|&i| digit_sum(i, n, m) == energy));
        debug_assert_eq!(energy, level);
        energies.push(energy);
    }
    Ok(energies)
}

/// Coefficient of `|1…1⟩` in the projected `(Δ^(N−1) F_+)^N |0⟩`, as a Laurent
/// polynomial in `u = t^(1/2) = e^(−η/4)`.
pub fn top_coefficient(n: usize) -> LaurentPoly {
    let m = n + 2;
    let d = Dressing {
        up: (0..m).map(|k| LaurentPoly::monomial(1, -(k as i32))).collect(),
        down: (0..m).map(|k| LaurentPoly::monomial(1, k as i32)).collect(),
        parity: (0..m).map(|k| LaurentPoly::from_int(if k % 2 == 0 { 1 } else { -1 })).collect(),
    };
    let tower = coproduct_tower(n, m, n, &d);
    let all_ones: usize = (0..n).fold(0, |acc, _| acc * m + 1);
    tower[n].get(&all_ones).cloned().unwrap_or_default()
}

/// The top coefficient rewritten as an ordinary polynomial in `t`, divided by
/// its leading coefficient. `None` if odd powers of `u` survive the shift.
pub fn kill_polynomial(n: usize) -> Option<LaurentPoly> {
    let c = top_coefficient(n);
    let shifted = LaurentPoly::from_coeffs(0, c.coeffs().to_vec());
    shifted.deflate(2).map(|p| p.normalized())
}

/// One `(level, N)` cell of the cross-check.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckRow {
    pub level: String,
    pub n: usize,
    pub qgroup: Vec<usize>,
    pub braided: Vec<usize>,
    pub matches: bool,
}

/// Compares projected quantum-group spectra with braided-sector spectra.
pub fn cross_check<S: Scalar>(levels: &[BraidLevel], ns: &[usize], tol: f64) -> Result<Vec<CrossCheckRow>> {
    let mut rows = Vec::new();
    for level in levels {
        for &n in ns {
            let q = qgroup_spectrum::<S>(level.eta(), n, n, tol)?;
            let b = spectrum::<S>(&SectorSpec::new(n, *level), tol)?;
            rows.push(CrossCheckRow {
                level: match level.level() {
                    Level::Finite(s) => s.to_string(),
                    Level::Inf => "inf".into(),
                },
                n,
                matches: q == b,
                qgroup: q,
                braided: b,
            });
        }
    }
    Ok(rows)
}
