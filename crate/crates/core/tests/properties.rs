mod common;

use hamnf::catalog::{preset_system, unperturbed, CaseId};
use hamnf::euler::{decompose, euler_multiple, ham_field, recompose};
use hamnf::grading::{apply_field, apply_field_qhp, inner, lie_bracket, Monomial, Polynomial, Qhp, Rational, Vqhp, Weight};
use hamnf::linalg::Matrix;
use hamnf::normalizer::push_forward_field;
use hamnf::parse::{parse_polynomial, parse_system};
use hamnf::render::document;
use hamnf::resonance::{
    check_resonant_set, conj_apply, conj_matrix, minimal_resonant_set, reduced_resonant_basis, resonant_basis,
    ResonantBasis, SetOrder,
};
use num_traits::Zero;
use proptest::prelude::*;

use common::{catalog_cases, naive_push_forward};

fn weights() -> impl Strategy<Value = Weight> {
    prop::sample::select(vec![(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (1, 3)])
        .prop_map(|(a, b)| Weight::new(a, b).unwrap())
}

fn rationals(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect())
}

fn vqhp(w: Weight, k: u32) -> impl Strategy<Value = Vqhp> {
    rationals(Vqhp::basis_slots(w, k).len()).prop_map(move |c| Vqhp::from_coords(w, k, &c))
}

fn graded_fields(count: usize, max: u32) -> impl Strategy<Value = (Weight, Vec<Vqhp>)> {
    (weights(), prop::collection::vec(0..=max, count)).prop_flat_map(|(w, ks)| {
        let fields: Vec<_> = ks.into_iter().map(|k| vqhp(w, k)).collect();
        (Just(w), fields)
    })
}

fn graded_ok(f: &Vqhp) -> bool {
    let w = f.weight();
    f.slots().all(|(c, m, v)| !v.is_zero() && w.gdeg(m) == f.gdeg() + w.gamma(c))
}

fn case_ids() -> impl Strategy<Value = CaseId> {
    prop::sample::select(catalog_cases())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_graded((_, fs) in graded_fields(2, 6)) {
        let b = lie_bracket(&fs[0], &fs[1]);
        prop_assert_eq!(b.gdeg(), fs[0].gdeg() + fs[1].gdeg());
        prop_assert!(graded_ok(&b));
    }

    #[test]
    fn field_action_is_graded((w, fs) in graded_fields(1, 6), l in 0u32..8) {
        let g = Qhp::from_coords(w, l, &vec![Rational::from_integer(1.into()); w.dim(l)]);
        let out = apply_field_qhp(&fs[0], &g);
        prop_assert_eq!(out.gdeg(), l + fs[0].gdeg());
        prop_assert!(out.poly().quasi_degree(w).map_or(out.is_zero(), |d| d == out.gdeg()));
    }

    #[test]
    fn jacobi_identity((_, fs) in graded_fields(3, 4)) {
        let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
        let a = lie_bracket(f, &lie_bracket(g, h));
        let b = lie_bracket(g, &lie_bracket(h, f));
        let c = lie_bracket(h, &lie_bracket(f, g));
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        (w, k, l) in (weights(), 0u32..5, 0u32..5),
        seed in any::<u64>(),
        a in -5i64..5,
        b in -5i64..5,
    ) {
        let mut r = common::rng(seed);
        let f = common::random_vqhp(&mut r, w, k, 0.6);
        let g = common::random_vqhp(&mut r, w, k, 0.6);
        let h = common::random_vqhp(&mut r, w, l, 0.6);
        let (a, b) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let lhs = lie_bracket(&f.scale(&a).add(&g.scale(&b)).unwrap(), &h);
        let rhs = lie_bracket(&f, &h).scale(&a).add(&lie_bracket(&g, &h).scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(lie_bracket(&f, &h), lie_bracket(&h, &f).neg());
    }

    #[test]
    fn euler_split_round_trip((_, fs) in graded_fields(1, 12)) {
        let s = decompose(&fs[0]);
        prop_assert_eq!(recompose(&s).unwrap(), fs[0].clone());
    }

    #[test]
    fn euler_split_of_pure_parts((w, k) in (weights(), 0u32..8), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let j = common::random_qhp(&mut r, w, k);
        let s = decompose(&euler_multiple(&j));
        prop_assert!(s.ham_part.is_zero());
        prop_assert_eq!(s.scalar_part, j);
        let h = common::random_qhp(&mut r, w, k + w.delta());
        let s = decompose(&ham_field(&h).unwrap());
        prop_assert!(s.scalar_part.is_zero());
        prop_assert_eq!(ham_field(&s.ham_part).unwrap(), ham_field(&h).unwrap());
    }

    #[test]
    fn conjugate_operator_is_adjoint(
        (w, extra, k) in (weights(), 0u32..4, 0u32..7),
        seed in any::<u64>(),
    ) {
        let mut r = common::rng(seed);
        let h = common::random_qhp(&mut r, w, w.delta() + extra);
        prop_assume!(!h.is_zero());
        let hf = ham_field(&h).unwrap();
        let p = common::random_qhp(&mut r, w, k + extra);
        let q = common::random_qhp(&mut r, w, k);
        prop_assert_eq!(
            inner(&conj_apply(&h, p.poly()), q.poly()),
            inner(p.poly(), &apply_field(&hf, q.poly()))
        );
    }

    #[test]
    fn kernel_and_rank_fill_the_degree(case in case_ids(), k in 0u32..13) {
        let (h, w, _) = unperturbed(case).unwrap();
        let b = resonant_basis(&h, k).unwrap();
        prop_assert_eq!(b.dim() + conj_matrix(&h, k).unwrap().rank(), w.dim(k));
    }

    #[test]
    fn reduced_space_sits_inside_the_resonant_space(case in case_ids(), k in 0u32..13) {
        let (h, w, _) = unperturbed(case).unwrap();
        prop_assume!(k >= w.delta());
        let full = resonant_basis(&h, k).unwrap();
        let reduced = reduced_resonant_basis(&h, k).unwrap();
        let all = w.monomials(k);
        let mut cols: Vec<Vec<Rational>> = full.basis.iter().map(|q| q.poly().coords(&all)).collect();
        cols.extend(reduced.basis.iter().map(|q| q.poly().coords(&all)));
        prop_assert!(cols.is_empty() || Matrix::from_columns(&cols, all.len()).rank() == full.dim());
    }

    #[test]
    fn set_check_ignores_the_choice_of_basis(case in case_ids(), k in 1u32..13, seed in any::<u64>()) {
        let (h, _, _) = unperturbed(case).unwrap();
        let b = resonant_basis(&h, k).unwrap();
        prop_assume!(b.dim() > 0);
        let mut r = common::rng(seed);
        let t = Matrix::from_rows(
            &(0..b.dim()).map(|_| common::random_coords(&mut r, b.dim(), 0.9)).collect::<Vec<_>>(),
            b.dim(),
        );
        prop_assume!(!t.determinant().is_zero());
        let mixed = ResonantBasis {
            basis: (0..b.dim())
                .map(|i| {
                    b.basis.iter().zip(t.row(i)).fold(Qhp::zero(b.basis[0].weight(), k), |acc, (q, c)| {
                        acc.add(&q.scale(c)).unwrap()
                    })
                })
                .collect(),
            ..b.clone()
        };
        for order in [SetOrder::HighFirst, SetOrder::LowFirst] {
            let good = minimal_resonant_set(&b, order).monomials;
            prop_assert!(check_resonant_set(&mixed, &good).is_ok());
        }
        let w = b.basis[0].weight();
        let mut bad: Vec<Monomial> = w.monomials(k).into_iter().filter(|m| b.basis.iter().all(|q| q.coeff(*m).is_zero())).collect();
        bad.truncate(b.dim());
        if bad.len() == b.dim() {
            prop_assert!(check_resonant_set(&b, &bad).is_err());
            prop_assert!(check_resonant_set(&mixed, &bad).is_err());
        }
    }

    #[test]
    fn inner_product_on_monomials(a in 0u32..6, b in 0u32..6, c in 0u32..6, d in 0u32..6) {
        let one = Rational::from_integer(1.into());
        let p = Polynomial::monomial(Monomial::new(a, b), one.clone());
        let q = Polynomial::monomial(Monomial::new(c, d), one);
        prop_assert_eq!(inner(&p, &q), inner(&q, &p));
        if (a, b) == (c, d) {
            prop_assert!(inner(&p, &p) > Rational::zero());
        } else {
            prop_assert!(inner(&p, &q).is_zero());
        }
    }

    #[test]
    fn arithmetic_never_stores_zeros((_, fs) in graded_fields(2, 5)) {
        let same = fs[0].sub(&fs[0]).unwrap();
        prop_assert!(same.is_zero() && same.slots().count() == 0);
        prop_assert!(graded_ok(&lie_bracket(&fs[0], &fs[1])));
        let d = decompose(&fs[0]);
        prop_assert!(d.ham_part.poly().terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn polynomial_text_round_trip(w in weights(), k in 0u32..9, seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let p = common::random_qhp(&mut r, w, k).into_poly();
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn system_document_round_trip(case in case_ids(), extra in 1u32..4, seed in any::<u64>()) {
        let sys = preset_system(case, case.chi() + extra, seed).unwrap();
        prop_assert_eq!(parse_system(&document(&sys)).unwrap(), sys);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pushforward_matches_naive_composition(w in weights(), n in 2u32..6, qk in 1u32..3, seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let z = common::random_series(&mut r, w, n, 0.5);
        let q = common::random_vqhp(&mut r, w, qk, 0.6);
        prop_assert_eq!(push_forward_field(&z, &q).unwrap(), naive_push_forward(&z, &q));
    }
}
