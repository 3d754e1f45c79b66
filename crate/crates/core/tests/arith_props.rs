use hcfam::arith::{GaussianRational, LaurentPoly, Matrix, Poly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(|(a, b, c, d)| GaussianRational::complex((a, b), (c, d)))
}

fn nonzero_scalar() -> impl Strategy<Value = GaussianRational> {
    scalar().prop_filter("nonzero", |c| !c.is_zero())
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 0..5).prop_map(Poly::new)
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..=4, prop::collection::vec(scalar(), 0..4)).prop_map(|(o, c)| LaurentPoly::new(o, c))
}

proptest! {
    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, GaussianRational::zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(&a * &a.conj(), GaussianRational::from(a.norm()));
    }

    #[test]
    fn scalar_inverse(a in nonzero_scalar()) {
        prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        prop_assert_eq!(a.pow(-3).unwrap(), a.pow(3).unwrap().inv().unwrap());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<GaussianRational>().unwrap(), a);
    }

    #[test]
    fn poly_evaluation_is_a_ring_map(p in poly(), q in poly(), t in scalar()) {
        prop_assert_eq!((&p * &q).eval_at(&t), &p.eval_at(&t) * &q.eval_at(&t));
        prop_assert_eq!((&p + &q).eval_at(&t), &p.eval_at(&t) + &q.eval_at(&t));
        prop_assert_eq!(p.compose(&q).eval_at(&t), p.eval_at(&q.eval_at(&t)));
    }

    #[test]
    fn poly_degree_of_product(p in poly(), q in poly()) {
        match (p.degree(), q.degree()) {
            (Some(a), Some(b)) => prop_assert_eq!((&p * &q).degree(), Some(a + b)),
            _ => prop_assert!((&p * &q).is_zero()),
        }
    }

    #[test]
    fn poly_derivative_is_a_derivation(p in poly(), q in poly()) {
        prop_assert_eq!((&p * &q).derivative(), &(&p.derivative() * &q) + &(&p * &q.derivative()));
    }

    #[test]
    fn laurent_ring(p in laurent(), q in laurent(), r in laurent()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn inversion_substitution(p in laurent(), q in laurent()) {
        prop_assert_eq!(p.substitute_inverse().substitute_inverse(), p.clone());
        prop_assert_eq!((&p * &q).substitute_inverse(), &p.substitute_inverse() * &q.substitute_inverse());
        if let (Some(lo), Some(hi)) = (p.min_exponent(), p.max_exponent()) {
            let s = p.substitute_inverse();
            prop_assert_eq!(s.min_exponent(), Some(-hi));
            prop_assert_eq!(s.max_exponent(), Some(-lo));
        }
    }

    #[test]
    fn laurent_units_are_monomials(c in nonzero_scalar(), k in -6i64..=6, p in laurent()) {
        let m = LaurentPoly::monomial(c, k);
        prop_assert!(m.is_unit());
        prop_assert_eq!(&m * &m.inv().unwrap(), LaurentPoly::one());
        if p.as_monomial().is_none() {
            prop_assert!(!p.is_unit());
            prop_assert!(p.inv().is_err());
        }
    }

    #[test]
    fn laurent_evaluation(p in laurent(), q in laurent(), t in nonzero_scalar()) {
        prop_assert_eq!((&p * &q).eval_at(&t).unwrap(), &p.eval_at(&t).unwrap() * &q.eval_at(&t).unwrap());
        let inv_t = t.inv().unwrap();
        prop_assert_eq!(p.substitute_inverse().eval_at(&t).unwrap(), p.eval_at(&inv_t).unwrap());
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..5)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect());
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), 4);
        for v in &null {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(GaussianRational::zero().inv().is_err());
    assert!(LaurentPoly::zero().inv().is_err());
    assert!(LaurentPoly::zero().pow(-1).is_err());
    assert!(LaurentPoly::x_pow(-1).eval_at(&GaussianRational::zero()).is_err());
}
