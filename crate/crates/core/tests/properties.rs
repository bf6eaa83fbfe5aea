//! Randomized algebraic invariants of the exact-arithmetic kernels.

use num_traits::Zero;
use proptest::prelude::*;

use polyknot::construct::{
    augmented_det_by_expansion, det_rational, minimal_norm_solve, rank,
};
use polyknot::laurent::LaurentPoly;
use polyknot::poly::{rat, Polynomial, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(arb_rat(), 0..=max_len).prop_map(Polynomial::from_coeffs)
}

fn arb_matrix_5x4() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(prop::collection::vec(arb_rat(), 4), 5)
}

fn arb_rhs5() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(arb_rat(), 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_round_trips(p in arb_poly(7), q in arb_poly(4)) {
        prop_assume!(!q.is_zero());
        let (quot, rem) = p.div_rem(&q);
        let back = &(&quot * &q) + &rem;
        prop_assert_eq!(back, p.clone());
        prop_assert!(rem.degree() < q.degree() || rem.is_zero());
    }

    #[test]
    fn degrees_add_under_multiplication(p in arb_poly(6), q in arb_poly(6)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let dp = p.degree().as_usize().unwrap();
        let dq = q.degree().as_usize().unwrap();
        prop_assert_eq!((&p * &q).degree().as_usize(), Some(dp + dq));
    }

    #[test]
    fn roots_evaluate_to_zero(roots in prop::collection::vec(arb_rat(), 1..5)) {
        let p = Polynomial::from_roots(&roots);
        for r in &roots {
            prop_assert!(p.eval(r).is_zero());
        }
        prop_assert_eq!(p.degree().as_usize(), Some(roots.len()));
    }

    #[test]
    fn derivative_is_linear(p in arb_poly(6), q in arb_poly(6), c in arb_rat()) {
        let lhs = (&p + &q.scale(&c)).derivative();
        let rhs = &p.derivative() + &q.derivative().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both(p in arb_poly(5), q in arb_poly(5)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let d = p.gcd(&q);
        prop_assert!(p.div_exact(&d).is_ok());
        prop_assert!(q.div_exact(&d).is_ok());
    }

    /// The cofactor expansion along the right-hand-side column agrees with
    /// the direct determinant of the augmented 5x5 matrix and is linear in
    /// the right-hand side.
    #[test]
    fn augmented_determinant_expansion(
        m in arb_matrix_5x4(),
        r1 in arb_rhs5(),
        r2 in arb_rhs5(),
        c in arb_rat(),
    ) {
        let augmented: Vec<Vec<Rat>> = m
            .iter()
            .zip(&r1)
            .map(|(row, b)| {
                let mut row = row.clone();
                row.push(b.clone());
                row
            })
            .collect();
        let direct = det_rational(&augmented);
        prop_assert_eq!(direct, augmented_det_by_expansion(&m, &r1));

        let combo: Vec<Rat> = r1
            .iter()
            .zip(&r2)
            .map(|(a, b)| a + &(&c * b))
            .collect();
        let lhs = augmented_det_by_expansion(&m, &combo);
        let rhs = augmented_det_by_expansion(&m, &r1)
            + &c * &augmented_det_by_expansion(&m, &r2);
        prop_assert_eq!(lhs, rhs);
    }

    /// A right-hand side manufactured inside the column space is solvable,
    /// and the returned solution satisfies the system exactly.
    #[test]
    fn minimal_norm_solution_satisfies_consistent_systems(
        m in arb_matrix_5x4(),
        x in prop::collection::vec(arb_rat(), 4),
    ) {
        let rhs: Vec<Rat> = m
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        let sol = minimal_norm_solve(&m, &rhs).unwrap();
        for (row, b) in m.iter().zip(&rhs) {
            let dot: Rat = row.iter().zip(&sol).map(|(a, v)| a * v).sum();
            prop_assert_eq!(&dot, b);
        }
        prop_assert!(rank(&m) <= 4);
    }

    #[test]
    fn laurent_inversion_is_an_involution(
        terms in prop::collection::vec((-6i64..=6, -9i64..=9), 0..8),
    ) {
        let v = LaurentPoly::from_terms(terms);
        prop_assert_eq!(v.invert_variable().invert_variable(), v.clone());
        prop_assert_eq!(v.invert_variable().eval_at_one(), v.eval_at_one());
    }
}
