use proptest::prelude::*;
use ramond_core::coeff::rat;
use ramond_core::error::Error;
use ramond_core::expr::{eval_text, Context};
use ramond_core::modules::WeylOp;
use ramond_core::{parse, EnvFlavor, Expr, Generator, Param, TwistKind};

fn leaf() -> impl Strategy<Value = Expr> {
    let nonzero = prop_oneof![-5i64..0, 1i64..6];
    prop_oneof![
        (-7i64..8, 1i64..5).prop_map(|(n, d)| Expr::Num(rat(n, d))),
        prop_oneof![Just(Param::Lambda), Just(Param::B), Just(Param::C), Just(Param::H)].prop_map(Expr::Param),
        (0u8..5, -5i64..6).prop_map(|(k, i)| Expr::Gen(match k {
            0 => Generator::L(i),
            1 => Generator::G(i),
            2 => Generator::T(i),
            3 => Generator::XiT(i),
            _ => Generator::C,
        })),
        (any::<bool>(), nonzero).prop_map(|(x, m)| Expr::Twist(if x { TwistKind::X } else { TwistKind::Y }, m)),
        (-4i64..5, 0u8..2).prop_map(|(i, r)| Expr::Vector(i, r)),
        prop_oneof![Just(WeylOp::Xi), Just(WeylOp::Dt), Just(WeylOp::Dxi), (-3i64..4).prop_map(WeylOp::T)].prop_map(Expr::Weyl),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Bracket(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_parse_render_is_stable(e in expr()) {
        let text = e.to_string();
        let reparsed = parse(&text).unwrap();
        prop_assert_eq!(reparsed.to_string(), text.clone());
        prop_assert_eq!(parse(&reparsed.to_string()).unwrap(), reparsed);
    }
}

#[test]
fn products_are_left_associative() {
    let e = parse("L(1)*L(-1) - 2*L(0)").unwrap();
    match e {
        Expr::Sub(lhs, _) => assert!(matches!(*lhs, Expr::Mul(..))),
        other => panic!("unexpected tree {other:?}"),
    }
    assert!(matches!(parse("[G(1),G(-1)]").unwrap(), Expr::Bracket(..)));
}

#[test]
fn malformed_input_reports_positions() {
    assert!(matches!(parse("X(0)"), Err(Error::Syntax { .. })));
    assert!(matches!(parse("L(1/2)"), Err(Error::Syntax { .. })));
    match parse("L(1) + Q(2)") {
        Err(Error::UnknownSymbol { pos, .. }) => assert_eq!(pos, 7),
        other => panic!("expected unknown symbol, got {other:?}"),
    }
}

#[test]
fn evaluation_examples() {
    let s = Context::Algebra(EnvFlavor::S);
    assert_eq!(eval_text("[L(2),L(-2)]", &s, None).unwrap().to_string(), "-4*L(0) + 1/2*C");
    let gamma = Context::parse("gamma").unwrap();
    assert_eq!(eval_text("L(3)", &gamma, Some("e(0,1)")).unwrap().to_string(), "(lambda + 3*b + 3/2)*e(3,1)");
    assert!(matches!(eval_text("d_t", &s, None), Err(Error::ContextMismatch(_))));
}
