//! Property tests over randomly drawn scalars, matrices, levels and angles.

use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;

use metabraid::arith::{CycScalar, Mat, Ring, Scalar};
use metabraid::braided_fock::{build_sector, grading_sector, indist_projector, spectrum, Grading, SectorSpec};
use metabraid::metasym::{build_algebra, mixed_bracket, Angle};
use metabraid::qgroup::quantum_rep;
use metabraid::qubit_core::{b_poly, level_of_root, BraidLevel, Eta, Level, RootLevel};

type C = CycScalar;

const ORDERS: [u64; 7] = [1, 3, 4, 5, 6, 8, 12];

fn cyc_scalar() -> impl Strategy<Value = C> {
    (prop::sample::select(&ORDERS[..]), prop::collection::vec((0i64..24, -5i64..=5, 1i64..=4), 1..4)).prop_map(|(m, terms)| {
        terms.into_iter().fold(C::zero(), |acc, (k, num, den)| acc.plus(&C::cyc(m, k).unwrap().times(&C::from_ratio(num, den))))
    })
}

fn cyc_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat<C>> {
    prop::collection::vec(cyc_scalar(), rows * cols).prop_map(move |v| Mat::from_vec(rows, cols, v).unwrap())
}

fn float_matrix(n: usize) -> impl Strategy<Value = Mat<Complex64>> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n)
        .prop_map(move |v| Mat::from_vec(n, n, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn level() -> impl Strategy<Value = BraidLevel> {
    prop_oneof![
        4 => (2u32..=8).prop_map(|s| BraidLevel::finite(s).unwrap()),
        1 => Just(BraidLevel::inf()),
    ]
}

fn closed_form(level: &BraidLevel, n: usize) -> Vec<usize> {
    match level.level() {
        Level::Finite(s) if n >= s as usize => (0..s as usize).collect(),
        _ => (0..=n).collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn embedding_is_multiplicative(x in cyc_scalar(), y in cyc_scalar()) {
        let lhs = x.times(&y).to_complex();
        let rhs = x.to_complex() * y.to_complex();
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
        prop_assert!((x.plus(&y).to_complex() - (x.to_complex() + y.to_complex())).norm() < 1e-12);
    }

    #[test]
    fn nonzero_scalars_invert(x in cyc_scalar()) {
        prop_assume!(!x.is_exact_zero());
        prop_assert_eq!(x.times(&x.inverse().unwrap()), C::one());
    }

    #[test]
    fn dagger_reverses_products_exact(a in cyc_matrix(3, 3), b in cyc_matrix(3, 3)) {
        prop_assert_eq!((&a * &b).dagger(), &b.dagger() * &a.dagger());
    }

    #[test]
    fn dagger_reverses_products_float(a in float_matrix(3), b in float_matrix(3)) {
        prop_assert!((&(&a * &b).dagger() - &(&b.dagger() * &a.dagger())).is_zero(1e-12));
    }

    #[test]
    fn kron_entries(a in cyc_matrix(2, 3), b in cyc_matrix(3, 2)) {
        let k = a.kron(&b);
        prop_assert_eq!(k.shape(), (6, 6));
        for i in 0..2 { for j in 0..3 { for r in 0..3 { for c in 0..2 {
            prop_assert_eq!(k.get(i * 3 + r, j * 2 + c), &a.get(i, j).times(b.get(r, c)));
        }}}}
    }

    #[test]
    fn mixed_product(a in cyc_matrix(2, 2), b in cyc_matrix(2, 2), c in cyc_matrix(2, 2), d in cyc_matrix(2, 2)) {
        prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn mixed_bracket_of_hermitian_pair_is_hermitian(a in cyc_matrix(3, 3), b in cyc_matrix(3, 3), num in -12i64..12, den in 1i64..7) {
        let x = &a + &a.dagger();
        let y = &b + &b.dagger();
        let theta = Angle::new(Rational64::new(num, den));
        let br = mixed_bracket(&x, &y, theta).unwrap();
        prop_assert_eq!(br.dagger(), br.clone());
        prop_assert_eq!(mixed_bracket(&y, &x, -theta).unwrap(), br);
    }

    #[test]
    fn angles_are_periodic(num in -40i64..40, den in 1i64..9, k in -3i64..3) {
        let q = Rational64::new(num, den);
        let a = Angle::new(q);
        prop_assert_eq!(Angle::new(q + Rational64::from_integer(2 * k)), a);
        prop_assert!(a.over_pi() >= Rational64::from_integer(-1) && a.over_pi() < Rational64::from_integer(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_matches_closed_form(level in level(), n in 1usize..=8) {
        let spec = SectorSpec::new(n, level);
        prop_assert_eq!(spectrum::<C>(&spec, 0.0).unwrap(), closed_form(&level, n));
    }

    #[test]
    fn tower_states_are_eigenvectors_and_projector_rank(level in level(), n in 1usize..=5) {
        let sector = build_sector::<C>(&SectorSpec::new(n, level), 0.0).unwrap();
        for &e in &sector.energies {
            let v = &sector.states[e];
            let hv = sector.hamiltonian.apply(v).unwrap();
            let ev: Vec<C> = v.iter().map(|x| x.times(&C::from_int(e as i64))).collect();
            prop_assert_eq!(hv, ev);
        }
        let p = indist_projector(&sector, 0.0).unwrap();
        prop_assert_eq!(p.to_float().rank(1e-9), sector.energies.len());
        prop_assert_eq!(&p * &p, p.clone());
    }

    #[test]
    fn level_of_minimal_root(s in 2u32..=8) {
        let t = C::exp_i_pi(Rational64::new(2, s as i64) - Rational64::from_integer(1));
        prop_assert_eq!(level_of_root(&t, 64, 0.0).unwrap(), RootLevel::Level(Level::Finite(s)));
    }

    #[test]
    fn roots_of_b_polynomials_on_the_circle(m in 1u32..=16, k in 2u32..=10) {
        for j in 0..2 * m as i64 {
            let t = C::root_of_unity(j, 2 * m);
            if b_poly(k, &t).is_exact_zero() {
                prop_assert!((t.to_complex().norm() - 1.0).abs() < 1e-12);
                // b_k(t) (1 + t) = 1 − (−t)^k
                let mt = t.negated();
                prop_assert!(C::one().minus(&mt.pow(k)).is_exact_zero());
            }
        }
    }

    #[test]
    fn conjugation_by_exponentials(num in -8i64..8, den in 1i64..6) {
        let rep = quantum_rep::<C>(Eta::imaginary(Rational64::new(2, 3)), 6).unwrap();
        prop_assert!(rep.conjugation_check(Eta::imaginary(Rational64::new(num, den)), 0.0).unwrap().pass);
    }

    #[test]
    fn closure_in_every_algebra(level in level(), n in 1usize..=3) {
        let alg = build_algebra::<C>(level, n).unwrap();
        prop_assert!(alg.closure_checks(0.0).iter().all(|c| c.pass));
        prop_assert!(alg.angle_antisymmetry());
    }

    #[test]
    fn two_particle_angles(s in 2u32..=8) {
        let alg = build_algebra::<C>(BraidLevel::finite(s).unwrap(), 2).unwrap();
        let special = Angle::new(Rational64::new(s as i64 + 2, 2 * s as i64));
        for i in [1, -1, 2, -2] {
            for j in [1, -1, 2, -2] {
                let a = alg.angle(i, j);
                prop_assert!(a == Angle::zero() || a == special || a == -special, "{} {} {}", i, j, a);
            }
        }
    }
}

#[test]
fn second_level_brackets_are_anticommutators() {
    let alg = build_algebra::<C>(BraidLevel::finite(2).unwrap(), 3).unwrap();
    for &i in alg.labels.iter().filter(|&&i| i != 0) {
        for &j in alg.labels.iter().filter(|&&j| j != 0) {
            let a = alg.angle(i, j);
            assert!(a.sin::<C>().is_exact_zero(), "({i},{j}) at {a}");
            let c = a.cos::<C>();
            assert!(c == C::one() || c == C::from_int(-1));
        }
    }
}

#[test]
fn untruncated_brackets_are_pure() {
    for n in 1..=3 {
        let alg = build_algebra::<C>(BraidLevel::inf(), n).unwrap();
        for &i in &alg.labels {
            for &j in &alg.labels {
                let a = alg.angle(i, j);
                assert!(a.sin::<C>().times(&a.cos::<C>()).is_exact_zero(), "({i},{j}) at {a}");
            }
        }
    }
}

#[test]
fn blocks_are_odd_and_central_element_even() {
    for level in [BraidLevel::finite(3).unwrap(), BraidLevel::inf()] {
        let sector = build_sector::<C>(&SectorSpec::new(2, level), 0.0).unwrap();
        for b in &sector.blocks {
            assert_eq!(grading_sector(b, 0.0), Grading::Odd);
            assert_eq!(grading_sector(&b.dagger(), 0.0), Grading::Odd);
        }
        assert_eq!(grading_sector(&sector.central(), 0.0), Grading::Even);
        for a in &sector.blocks {
            for b in &sector.blocks {
                assert_eq!(grading_sector(&(a * &b.dagger()), 0.0), Grading::Even);
            }
        }
    }
}

#[test]
fn third_root_top_state() {
    let level = BraidLevel::from_g(Rational64::new(1, 3)).unwrap();
    let sector = build_sector::<C>(&SectorSpec::new(2, level), 0.0).unwrap();
    let v11 = (&sector.blocks[0] * &sector.blocks[1]).apply(&sector.vacuum).unwrap();
    let j = C::cyc(3, 1).unwrap();
    let minus_j2 = j.times(&j).negated();
    let want: Vec<C> = v11.iter().map(|x| x.times(&minus_j2)).collect();
    assert_eq!(sector.states[2], want);
}

#[test]
fn third_power_of_q3() {
    let q3: C = Eta::imaginary(Rational64::new(2, 3)).exp(Rational64::from_integer(1)).unwrap();
    assert_eq!(q3.pow(3), C::one());
    assert_ne!(q3, C::one());
}
