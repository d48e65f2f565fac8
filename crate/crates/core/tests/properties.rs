use proptest::prelude::*;

use bimac::hecke::{apply_t, apply_t_inv, apply_y, rel_y_check, symmetrize, SymKind};
use bimac::macdonald::{bisym_p, expand_in_p_basis, nonsym_e};
use bimac::pieri::{op_identity_check, Variant};
use bimac::sparts::{Sign, SuperPartition};
use bimac::xpoly::{Exps, XPoly};
use bimac::{Perm, QTScalar};

fn scalar() -> impl Strategy<Value = QTScalar> {
    (-3i64..=3, 0i64..=2, 0i64..=2, -2i64..=2, 0i64..=2, 0i64..=2).prop_filter_map(
        "nonzero denominator",
        |(a, i, j, b, k, l)| {
            let num = &QTScalar::from_int(a) + &QTScalar::monomial(i, j);
            let den = &QTScalar::from_int(b) + &QTScalar::monomial(k, l);
            (!den.is_zero()).then(|| &num / &den)
        },
    )
}

fn poly(n: usize) -> impl Strategy<Value = XPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), scalar()), 1..4).prop_map(move |terms| {
        XPoly::from_terms(n, terms.into_iter().map(|(e, c)| (Exps(e), c)))
    })
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_one_line(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(a.invert_qt().invert_qt(), a);
    }

    #[test]
    fn scalar_json_and_text_round_trip(a in scalar()) {
        prop_assert_eq!(QTScalar::from_json(&a.to_json()).unwrap(), a.clone());
        prop_assert_eq!(QTScalar::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn poly_json_round_trip(f in poly(3)) {
        prop_assert_eq!(XPoly::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn permutation_action_composes(f in poly(3), a in perm(3), b in perm(3)) {
        prop_assert_eq!(f.permute_vars(&a).permute_vars(&b), f.permute_vars(&b.compose(&a)));
        prop_assert_eq!(f.permute_vars(&a).permute_vars(&a.inverse()), f);
    }

    #[test]
    fn hecke_generators_invert_and_are_linear(f in poly(3), g in poly(3), c in scalar(), i in 1usize..3) {
        prop_assert_eq!(apply_t_inv(i, &apply_t(i, &f)), f.clone());
        let lhs = apply_t(i, &(&f + &g.scale(&c)));
        prop_assert_eq!(lhs, &apply_t(i, &f) + &apply_t(i, &g).scale(&c));
    }

    #[test]
    fn cherednik_operators_commute(f in poly(3), i in 1usize..=3, j in 1usize..=3) {
        prop_assert_eq!(apply_y(i, &apply_y(j, &f)), apply_y(j, &apply_y(i, &f)));
    }

    #[test]
    fn t_symmetrizer_output_is_symmetric(f in poly(3)) {
        let s = symmetrize(SymKind::TSym, 1, 3, &f);
        for i in 1..3 {
            prop_assert_eq!(s.permute_vars(&Perm::simple(3, i)), s.clone());
        }
    }

    #[test]
    fn rel_y_on_symmetrized_inputs(f in poly(3), m in 0usize..=1) {
        let f = symmetrize(SymKind::Sym, m + 1, 3, &f);
        for r in 1..=3 - m {
            prop_assert!(rel_y_check(m, r, &f).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn e_is_an_eigenfunction(eta in prop::collection::vec(0u32..=2, 3)) {
        let e = nonsym_e(&eta).unwrap();
        for i in 1..=3 {
            prop_assert_eq!(apply_y(i, &e.poly), e.poly.scale(&e.eigenvalues[i - 1]));
        }
    }

    #[test]
    fn p_basis_expansion_recovers_coefficients(
        a in scalar(),
        b in scalar(),
        pick in 0usize..4,
    ) {
        let lams = SuperPartition::all(1, 3, 2);
        let l1 = &lams[pick % lams.len()];
        let l2 = &lams[(pick + 1) % lams.len()];
        prop_assume!(l1 != l2);
        let f = &bisym_p(l1).unwrap().poly.scale(&a) + &bisym_p(l2).unwrap().poly.scale(&b);
        let got = expand_in_p_basis(&f, 1).unwrap();
        for (lam, c) in got {
            let want = if &lam == l1 { a.clone() } else if &lam == l2 { b.clone() } else { QTScalar::zero() };
            prop_assert_eq!(c, want);
        }
    }

    #[test]
    fn evaluation_is_multiplicative(pick in 0usize..6, f in poly(3), g in poly(3)) {
        let lams: Vec<SuperPartition> = (0..=3).flat_map(|d| SuperPartition::all(1, 3, d)).collect();
        let lam = &lams[pick % lams.len()];
        for sign in [Sign::Plus, Sign::Minus] {
            let u = |h: &XPoly| bimac::evalsym::evaluate(lam, sign, h).unwrap();
            prop_assert_eq!(u(&(&f * &g)), &u(&f) * &u(&g));
        }
    }

    #[test]
    fn operator_expansion_on_random_inputs(f in poly(3), r in 1usize..=2) {
        let f = symmetrize(SymKind::Sym, 2, 3, &f);
        prop_assert!(op_identity_check(1, r, Variant::Upper, &f, 1, 5).unwrap());
        prop_assert!(op_identity_check(1, 1, Variant::Lower, &f, 1, 5).unwrap());
    }
}
