use locus_core::algebra::*;
use proptest::prelude::*;

fn mode_strategy() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Massive), Just(Mode::Massless)]
}

fn letter(mode: Mode) -> impl Strategy<Value = (Generator, i32)> {
    let prims = Generator::primitives(mode);
    (0..prims.len(), -2i32..=2).prop_map(move |(i, hp)| {
        let g = prims[i];
        if g == Generator::H {
            (g, if hp == 0 { 1 } else { hp })
        } else {
            (g, 1)
        }
    })
}

fn poly(mode: Mode, max_letters: usize) -> impl Strategy<Value = NCPolynomial> {
    let term = (
        prop::collection::vec(letter(mode), 0..=max_letters),
        -3i64..=3,
        -2i64..=2,
        0i32..=1,
    );
    prop::collection::vec(term, 1..=3).prop_map(|terms| {
        let mut out = NCPolynomial::zero();
        for (letters, re, im, t) in terms {
            let w = Word::new(letters).expect("valid powers");
            let c = GaussianRational::from_int(re) + GaussianRational::imag_ratio(im, 1);
            out.add_term(Monomial::new(w, 0, t), &c);
        }
        out
    })
}

fn pair(max_letters: usize) -> impl Strategy<Value = (Mode, NCPolynomial, NCPolynomial)> {
    mode_strategy().prop_flat_map(move |m| (Just(m), poly(m, max_letters), poly(m, max_letters)))
}

fn rel(mode: Mode) -> ModeRelations {
    ModeRelations::for_mode(mode)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent((mode, a, b) in pair(3)) {
        let r = rel(mode);
        let x = &a * &b;
        let once = normal_form(&x, &r).unwrap();
        prop_assert_eq!(normal_form(&once, &r).unwrap(), once);
    }

    #[test]
    fn commutator_is_antisymmetric_and_bilinear((mode, a, b) in pair(3), k in -3i64..=3) {
        let r = rel(mode);
        let ab = commutator(&a, &b, &r).unwrap();
        let ba = commutator(&b, &a, &r).unwrap();
        prop_assert_eq!(&ab, &-ba);
        let ka = a.scale(&GaussianRational::from_int(k));
        prop_assert_eq!(commutator(&ka, &b, &r).unwrap(), ab.scale(&GaussianRational::from_int(k)));
        let sum = commutator(&(&a + &b), &b, &r).unwrap();
        prop_assert_eq!(sum, ab);
    }

    #[test]
    fn adjoint_reverses_products((mode, a, b) in pair(3)) {
        let r = rel(mode);
        let lhs = normal_form(&adjoint(&(&a * &b)), &r).unwrap();
        let rhs = normal_form(&(adjoint(&b) * adjoint(&a)), &r).unwrap();
        prop_assert_eq!(lhs, rhs);
        let twice = normal_form(&adjoint(&adjoint(&a)), &r).unwrap();
        prop_assert_eq!(twice, normal_form(&a, &r).unwrap());
    }

    #[test]
    fn discrete_symmetries_are_involutive_and_multiplicative((mode, a, b) in pair(3)) {
        let r = rel(mode);
        for which in [DiscreteSymmetry::Parity, DiscreteSymmetry::TimeReversal] {
            prop_assert_eq!(apply_discrete_symmetry(&apply_discrete_symmetry(&a, which), which), a.clone());
            let lhs = normal_form(&apply_discrete_symmetry(&(&a * &b), which), &r).unwrap();
            let rhs = normal_form(&(apply_discrete_symmetry(&a, which) * apply_discrete_symmetry(&b, which)), &r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn symmetries_commute_with_normal_form((mode, a, _b) in pair(4)) {
        let r = rel(mode);
        for which in [DiscreteSymmetry::Parity, DiscreteSymmetry::TimeReversal] {
            let lhs = normal_form(&apply_discrete_symmetry(&a, which), &r).unwrap();
            let rhs = apply_discrete_symmetry(&normal_form(&a, &r).unwrap(), which);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn text_form_round_trips((_mode, a, _b) in pair(4)) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<NCPolynomial>().unwrap(), a);
    }

    #[test]
    fn jacobi_identity_for_random_elements(
        (mode, a, b) in pair(2),
    ) {
        let r = rel(mode);
        let c = NCPolynomial::generator(Generator::primitives(mode)[3]);
        let br = |x: &NCPolynomial, y: &NCPolynomial| commutator(x, y, &r).unwrap();
        let sum = br(&br(&a, &b), &c) + br(&br(&b, &c), &a) + br(&br(&c, &a), &b);
        prop_assert!(normal_form(&sum, &r).unwrap().is_zero());
    }

    #[test]
    fn ideal_reduce_is_deterministic(a in poly(Mode::Massless, 2)) {
        let r = ModeRelations::massless();
        let nf = normal_form(&a, &r).unwrap();
        let x = ideal_reduce(&nf, &r, nf.degree() + 2).unwrap();
        let y = ideal_reduce(&nf, &r, nf.degree() + 2).unwrap();
        prop_assert_eq!(x.residual, y.residual);
        prop_assert_eq!(x.status, y.status);
    }

    #[test]
    fn shell_multiples_are_members(a in poly(Mode::Massless, 2), b in poly(Mode::Massless, 1)) {
        let r = ModeRelations::massless();
        let e = normal_form(&(&a * r.shell_relation() * &b), &r).unwrap();
        let red = ideal_reduce(&e, &r, e.degree().max(1) + 4).unwrap();
        prop_assert_eq!(red.status, Membership::Member);
    }
}

#[test]
fn spec_examples() {
    use Generator::*;
    let g = NCPolynomial::generator;
    let ml = ModeRelations::massless();
    let i = GaussianRational::i();
    assert_eq!(commutator(&g(J1), &g(J2), &ml).unwrap(), g(J3).scale(&i));
    assert!(commutator(&g(P1), &g(H), &ml).unwrap().is_zero());
    let adj = normal_form(&adjoint(&(NCPolynomial::h_pow(-1) * g(P1)).scale(&i)), &ml).unwrap();
    assert_eq!(adj, (NCPolynomial::h_pow(-1) * g(P1)).scale(&-i.clone()));
}
