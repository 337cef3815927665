use proptest::prelude::*;
use ramond_core::coeff::rat;
use ramond_core::modules::{verma_basis, verma_weight_dims, window_matrix};
use ramond_core::suite::verma_dims_oracle;
use ramond_core::{Flavor, GammaModule, GammaVector, Generator, LieElement, Scalar, VermaModule, Window};

fn stilde_generator() -> impl Strategy<Value = Generator> {
    (any::<bool>(), -4i64..5, 0u8..2).prop_map(|(odd, n, kind)| match (kind, odd) {
        (0, false) => Generator::L(n),
        (0, true) => Generator::G(n),
        (_, false) => Generator::T(n),
        (_, true) => Generator::XiT(n),
    })
}

fn vector() -> impl Strategy<Value = GammaVector> {
    proptest::collection::vec(((-4i64..5, 0u8..2), -3i64..4), 1..4).prop_map(|ts| GammaVector::from_terms(ts.into_iter().map(|(k, c)| (k, Scalar::from(c)))))
}

fn module() -> impl Strategy<Value = GammaModule> {
    prop_oneof![Just(GammaModule::symbolic()), (-6i64..7, 1i64..5, -6i64..7, 1i64..5).prop_map(|(a, b, c, d)| GammaModule::numeric(rat(a, b), rat(c, d))),]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn gamma_is_a_module(m in module(), x in stilde_generator(), y in stilde_generator(), v in vector()) {
        let x = LieElement::generator(Flavor::STilde, x).unwrap();
        let y = LieElement::generator(Flavor::STilde, y).unwrap();
        let check = m.check_module_axiom(&x, &y, &v).unwrap();
        prop_assert!(check.passed(), "{} on {}: {:?}", check.inputs, v, check.residue);
    }

    #[test]
    fn factored_action_agrees(m in module(), x in stilde_generator(), v in vector()) {
        prop_assert_eq!(m.act_factored(x, &v).unwrap(), m.act_generator(x, &v));
    }

    #[test]
    fn window_matrices_compose_like_the_action(m in module(), x in stilde_generator(), y in stilde_generator()) {
        let w = Window::new(-3, 3).unwrap();
        let big = w.grow(8);
        let xm = window_matrix(&LieElement::generator(Flavor::STilde, x).unwrap(), &m, big).unwrap();
        let ym = window_matrix(&LieElement::generator(Flavor::STilde, y).unwrap(), &m, big).unwrap();
        let xy = xm.compose(&ym);
        for (i, r) in w.basis() {
            let direct = m.act_word(&[x, y], &GammaVector::basis(i, r));
            for ((j, s), c) in direct.terms() {
                prop_assert_eq!(&xy.entry((*j, *s), (i, r)), c);
            }
        }
    }
}

#[test]
fn verma_dimensions_follow_the_generating_function() {
    let dims = verma_weight_dims(8);
    let oracle = verma_dims_oracle(8);
    assert_eq!(dims.iter().map(|d| *d as u64).collect::<Vec<_>>(), oracle);
    assert_eq!(&oracle[..5], &[2, 4, 8, 16, 28]);
    assert_eq!(verma_basis(3).len(), 16);
}

#[test]
fn verma_axiom_holds_on_low_basis_vectors() {
    let m = VermaModule::symbolic();
    let gens = [Generator::L(-1), Generator::L(1), Generator::G(-1), Generator::G(0), Generator::G(2), Generator::L(0), Generator::C];
    for word in verma_basis(2) {
        let v = VermaModule::basis_vector(&word);
        for &x in &gens {
            for &y in &gens {
                let check = m.check_module_axiom(x, y, &v).unwrap();
                assert!(check.passed(), "{}: {:?}", check.inputs, check.residue);
            }
        }
    }
}

#[test]
fn verma_l0_eigenvalues() {
    let m = VermaModule::symbolic();
    for word in verma_basis(4) {
        let v = VermaModule::basis_vector(&word);
        let n = ramond_core::modules::verma::depth(&word);
        assert_eq!(m.act_generator(Generator::L(0), &v).unwrap(), v.scale(&m.l0_eigenvalue(n)));
    }
}
