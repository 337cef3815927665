use proptest::prelude::*;
use ramond_core::coeff::{rat, Assignment, Monomial};
use ramond_core::expr::parse_scalar;
use ramond_core::{Param, Scalar};

const PARAMS: [Param; 4] = [Param::Lambda, Param::B, Param::C, Param::H];

fn monomial() -> impl Strategy<Value = Scalar> {
    (proptest::collection::vec(0u32..3, 4), -9i64..10, 1i64..5).prop_map(|(exps, n, d)| {
        let mut s = Scalar::from(rat(n, d));
        for (p, e) in PARAMS.iter().zip(exps) {
            for _ in 0..e {
                s = &s * &Scalar::param(*p);
            }
        }
        s
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    proptest::collection::vec(monomial(), 0..4).prop_map(|ms| ms.iter().fold(Scalar::zero(), |acc, m| &acc + m))
}

fn assignment() -> impl Strategy<Value = Assignment> {
    proptest::collection::vec((-5i64..6, 1i64..4), 4).prop_map(|vals| PARAMS.iter().zip(vals).fold(Assignment::new(), |a, (p, (n, d))| a.with(*p, rat(n, d))))
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar(), sigma in assignment()) {
        let lhs = (&a * &b).evaluate(&sigma);
        let rhs = &a.evaluate(&sigma) * &b.evaluate(&sigma);
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(lhs.to_rational().is_some());
        prop_assert_eq!((&a + &b).evaluate(&sigma), &a.evaluate(&sigma) + &b.evaluate(&sigma));
    }

    #[test]
    fn rendering_reparses_to_the_same_scalar(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(parse_scalar(&text).unwrap(), a, "{}", text);
    }
}

#[test]
fn canonical_forms_drop_cancelled_terms() {
    let lambda = Scalar::lambda();
    let s = &(&lambda + &Scalar::one()) - &lambda;
    assert!(s.is_one());
    assert_eq!(s.num_terms(), 1);
    assert!(Monomial::var(Param::B).degree() == 1);
}

#[test]
fn display_orders_by_degree_then_variable() {
    let s = parse_scalar("3/2 + 3*b + lambda").unwrap();
    assert_eq!(s.to_string(), "lambda + 3*b + 3/2");
    assert_eq!(parse_scalar("-h - 1/24*c").unwrap().to_string(), "-1/24*c - h");
}
