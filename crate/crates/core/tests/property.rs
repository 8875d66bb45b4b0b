//! Randomized algebraic laws for the exact kernels: cyclotomic field
//! axioms under proptest, and rational linear algebra under a seeded
//! generator.  Everything asserted is an exact identity.

use num::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spindex_core::exactnum::{rat, CycNum, Rat};
use spindex_core::linalg::RatMat;

/// A small cyclotomic number: a short sum of scaled roots of unity.
fn cyc_strategy() -> impl Strategy<Value = CycNum> {
    let term = (1u32..=12, 0i64..24, -4i64..=4, 1i64..=3)
        .prop_map(|(n, k, num, den)| CycNum::root_of_unity(n, k).scale(&rat(num, den)));
    prop::collection::vec(term, 0..3).prop_map(|terms| {
        terms
            .iter()
            .fold(CycNum::zero(), |acc, t| &acc + t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in cyc_strategy(), b in cyc_strategy(), c in cyc_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycNum::zero());
        prop_assert_eq!(&a * &CycNum::one(), a.clone());
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map(a in cyc_strategy(), b in cyc_strategy()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        let n = a.norm_squared();
        prop_assert_eq!(n.clone(), &a * &a.conj());
        prop_assert!(n.is_real());
        prop_assert!(n.float_shadow().0 >= -1e-9);
    }

    #[test]
    fn nonzero_elements_invert_exactly(a in cyc_strategy()) {
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero cyclotomic numbers are units");
            prop_assert_eq!(&a * &inv, CycNum::one());
            prop_assert_eq!(a.checked_div(&a).unwrap(), CycNum::one());
        }
    }

    #[test]
    fn powers_agree_with_repeated_multiplication(a in cyc_strategy()) {
        prop_assert_eq!(a.pow(0), CycNum::one());
        prop_assert_eq!(a.pow(1), a.clone());
        prop_assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn roots_of_unity_have_exact_order(n in 1u32..=16, k in 0i64..16) {
        let z = CycNum::root_of_unity(n, k);
        prop_assert_eq!(z.pow(n), CycNum::one());
        // The same value embeds identically at a doubled conductor.
        prop_assert_eq!(z.clone(), CycNum::root_of_unity(2 * n, 2 * k));
    }

    #[test]
    fn rationals_round_trip(num in -40i64..=40, den in 1i64..=12) {
        let r = rat(num, den);
        let v = CycNum::from_rat(r.clone());
        prop_assert_eq!(v.to_rat(), Some(r));
        prop_assert!(v.is_rational());
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> RatMat {
    let rows: Vec<Vec<Rat>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
                .collect()
        })
        .collect();
    RatMat::from_rows(rows)
}

#[test]
fn determinants_are_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let dim = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, dim);
        let b = random_matrix(&mut rng, dim);
        assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }
}

#[test]
fn characteristic_polynomial_matches_determinant_and_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let dim = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, dim);
        let p = a.charpoly();
        assert_eq!(p.len(), dim + 1);
        assert!(p[dim].is_one(), "characteristic polynomial is monic");
        // Constant term (−1)^dim·det, subleading −trace.
        let sign = if dim % 2 == 0 { Rat::one() } else { -Rat::one() };
        assert_eq!(p[0].clone() * sign, a.det());
        assert_eq!(-p[dim - 1].clone(), a.trace());
        // Evaluation at 1 is det(1 − A).
        let det_one_minus: Rat = p.iter().cloned().sum();
        let id = RatMat::identity(dim);
        let mut one_minus = id.clone();
        for i in 0..dim {
            for j in 0..dim {
                *one_minus.at_mut(i, j) = id.at(i, j) - a.at(i, j);
            }
        }
        assert_eq!(det_one_minus, one_minus.det());
    }
}

#[test]
fn solving_reproduces_the_right_hand_side() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut solved = 0;
    for _ in 0..60 {
        let dim = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, dim);
        let b: Vec<Rat> = (0..dim).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
        match a.solve(&b) {
            Some(x) => {
                assert_eq!(a.mul_vec(&x), b);
                solved += 1;
            }
            None => assert!(a.det().is_zero(), "solve may only fail on singular systems"),
        }
    }
    assert!(solved > 10, "the generator should produce mostly invertible systems");
}
