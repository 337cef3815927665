use proptest::prelude::*;
use ramond_core::env::supercommutator;
use ramond_core::expr::{eval_text, Context};
use ramond_core::{EnvElement, EnvFlavor, Generator, Strategy as Rewrite};

fn generator(flavor: EnvFlavor) -> impl Strategy<Value = Generator> {
    let g = (0u8..5, -2i64..3).prop_map(|(k, i)| match k {
        0 => Generator::L(i),
        1 => Generator::G(i),
        2 => Generator::T(i),
        3 => Generator::XiT(i),
        _ => Generator::C,
    });
    g.prop_filter("generator must live in the flavor", move |g| flavor.allows(*g))
}

fn word(flavor: EnvFlavor, max: usize) -> impl Strategy<Value = Vec<Generator>> {
    proptest::collection::vec(generator(flavor), 0..=max)
}

fn flavor() -> impl Strategy<Value = EnvFlavor> {
    prop_oneof![Just(EnvFlavor::S), Just(EnvFlavor::SBar), Just(EnvFlavor::STilde)]
}

fn element(f: EnvFlavor, w: Vec<Generator>) -> EnvElement {
    EnvElement::pbw_normalize(w, f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((f, a, b, c) in flavor().prop_flat_map(|f| (Just(f), word(f, 2), word(f, 2), word(f, 2)))) {
        let (a, b, c) = (element(f, a), element(f, b), element(f, c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rewriting_order_does_not_matter((f, w) in flavor().prop_flat_map(|f| (Just(f), word(f, 5)))) {
        let left = EnvElement::pbw_normalize_with(w.clone(), f, Rewrite::Leftmost).unwrap();
        let right = EnvElement::pbw_normalize_with(w, f, Rewrite::Rightmost).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.renormalize().unwrap(), left);
    }

    #[test]
    fn filtration_degrees((f, a, b) in flavor().prop_flat_map(|f| (Just(f), word(f, 3), word(f, 3)))) {
        let (x, y) = (element(f, a.clone()), element(f, b.clone()));
        let prod = x.mul(&y).unwrap();
        prop_assert!(prod.is_zero() || prod.degree() <= a.len() + b.len());
        // The associated graded algebra is supercommutative.
        let comm = supercommutator(&x, &y).unwrap();
        prop_assert!(comm.is_zero() || comm.degree() < a.len() + b.len());
    }
}

#[test]
fn normal_forms_reject_foreign_generators() {
    assert!(EnvElement::generator(EnvFlavor::S, Generator::T(1)).is_err());
    assert!(EnvElement::generator(EnvFlavor::SBar, Generator::C).is_err());
}

#[test]
fn odd_square_in_ubar() {
    let v = eval_text("G(0)*G(0)", &Context::Algebra(EnvFlavor::UBar), None).unwrap();
    assert_eq!(v.to_string(), "-L(0)");
}

#[test]
fn odd_generators_square_to_half_brackets() {
    let g = EnvElement::generator(EnvFlavor::S, Generator::G(2)).unwrap();
    let sq = g.mul(&g).unwrap();
    let half = eval_text("-L(4)", &Context::Algebra(EnvFlavor::S), None).unwrap();
    assert_eq!(sq.to_string(), half.to_string());
}
