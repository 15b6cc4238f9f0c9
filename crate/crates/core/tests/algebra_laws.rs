mod common;

use common::*;
use pcplab_core::algebra::s_of_opat;
use pcplab_core::{AlgebraElement, Base, Scalar, Session};
use proptest::prelude::*;

fn triple(session: Session) -> impl Strategy<Value = (AlgebraElement, AlgebraElement, AlgebraElement)> {
    (element(session), element(session), element(session))
}

fn with_session() -> impl Strategy<Value = (Session, (AlgebraElement, AlgebraElement, AlgebraElement))> {
    session().prop_flat_map(|s| (Just(s), triple(s)))
}

fn uhf(s: Session) -> impl Strategy<Value = AlgebraElement> {
    element(s).prop_map(move |a| {
        // keep only the k = 0, p = 0 part
        let mut out = AlgebraElement::zero(s);
        for (h, f) in a.terms() {
            if h.g.k == 0 && h.p == 0 {
                out = &out + &AlgebraElement::monomial(s, *h, f.clone()).unwrap();
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn star_algebra_axioms((s, (a, b, c)) in with_session(), z in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(a.scale(z).adjoint(), a.adjoint().scale(z.conj()));
        let i = AlgebraElement::identity(s);
        prop_assert_eq!(&a * &i, a.clone());
        prop_assert_eq!(&i * &a, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn coefficient_invariant_is_preserved((_s, (a, b, c)) in with_session()) {
        for x in [&a * &b, a.adjoint(), &(&a * &b.adjoint()) * &c, &a + &c] {
            prop_assert!(x.coefficient_invariant_holds());
        }
    }

    #[test]
    fn opat_homomorphism((s, phi, psi) in (2u32..=3).prop_flat_map(|n| {
        let b = Base::new(n).unwrap();
        (Just(Session::cuntz(n).unwrap()), partial_map(b), partial_map(b))
    })) {
        let lhs = s_of_opat(s, &phi.compose(&psi)).unwrap();
        let rhs = &s_of_opat(s, &phi).unwrap() * &s_of_opat(s, &psi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn uhf_core_is_a_star_subalgebra((a, b) in session().prop_flat_map(|s| (uhf(s), uhf(s)))) {
        let uhf_terms = |x: &AlgebraElement| x.all_terms(|h| h.g.k == 0 && h.p == 0);
        prop_assert!(uhf_terms(&(&a * &b)));
        prop_assert!(uhf_terms(&a.adjoint()));
        prop_assert!(uhf_terms(&AlgebraElement::linear(Scalar::i(), &a, Scalar::one(), &b).unwrap()));
    }
}
