mod common;

use std::collections::BTreeMap;

use hamnf::catalog::{predict_support, preset_system, unperturbed, CaseId};
use hamnf::grading::{Monomial, Rational, VectorSeries, Vqhp};
use hamnf::normalizer::{
    compute_gnf, compute_gnf_with, compute_gphnf, gphnf_step, is_gphnf, push_forward, resonance_equation_count,
    support, verify_conjugacy, HamiltonianSystem, MinimalSets, PairChoice, PairPolicy, SetProvider, Slot,
    Transformation, UserSets,
};
use hamnf::resonance::SetOrder;
use hamnf::Error;

fn case(s: &str) -> CaseId {
    s.parse().unwrap()
}

const CASES: [&str; 7] = ["takens:2", "takens:4", "lm:3,1", "lm:3,2", "diag:2", "binom:3,2,-", "binom:3,3"];

#[test]
fn gnf_support_lies_in_slot_set_and_respects_counts() {
    for name in CASES {
        let c = case(name);
        let sys = preset_system(c, 7, 11).unwrap();
        let out = compute_gnf(&sys, SetOrder::HighFirst, PairPolicy::ZeroFirst).unwrap();
        let slots = out.yset.slot_set();
        let found = support(&out.system);
        assert!(found.is_subset(&slots), "{name}");
        let mut per_degree: BTreeMap<u32, usize> = BTreeMap::new();
        for s in &found {
            *per_degree.entry(s.field_gdeg(sys.weight()).unwrap()).or_default() += 1;
        }
        for (d, count) in per_degree {
            let n_k = resonance_equation_count(sys.hamiltonian(), d - sys.chi()).unwrap();
            assert!(count <= n_k, "{name} degree {d}: {count} > {n_k}");
        }
        assert!(verify_conjugacy(&sys, &out.transformation, &out.system).unwrap().is_success());
    }
}

#[test]
fn gphnf_postcondition_for_both_scan_orders() {
    for name in CASES {
        for order in [SetOrder::HighFirst, SetOrder::LowFirst] {
            let sys = preset_system(case(name), 7, 5).unwrap();
            let provider = MinimalSets::new(order);
            let (out, t) = compute_gphnf(&sys, &provider).unwrap();
            assert!(is_gphnf(&out, &provider).unwrap(), "{name} {order:?}");
            assert!(!is_gphnf(&sys, &provider).unwrap(), "{name}: dense input is not normal");
            assert!(verify_conjugacy(&sys, &t, &out).unwrap().is_success());
        }
    }
}

#[test]
fn each_step_leaves_lower_degrees_untouched() {
    let sys = preset_system(case("lm:2,1"), 7, 3).unwrap();
    let provider = MinimalSets::default();
    let mut cur = sys.clone();
    for m in 1..=sys.truncation() - sys.chi() {
        let step = gphnf_step(&cur, m, &provider.sets(sys.hamiltonian(), m).unwrap()).unwrap();
        let next = push_forward(&cur, &step.generator).unwrap();
        for k in 0..m + sys.chi() {
            assert_eq!(next.term(k), cur.term(k), "step {m} changed degree {k}");
        }
        cur = next;
    }
}

#[test]
fn second_component_policy() {
    for name in ["takens:3", "lm:2,1", "binom:4,2"] {
        let c = case(name);
        let sys = preset_system(c, 7, 2).unwrap();
        let out = compute_gnf(&sys, SetOrder::HighFirst, PairPolicy::ZeroSecond).unwrap();
        let found = support(&out.system);
        assert!(found.is_subset(&out.yset.slot_set()), "{name}");
        let predicted = predict_support(c, 7).unwrap();
        assert!(found.is_subset(&predicted.allowed()), "{name}");
        assert!(verify_conjugacy(&sys, &out.transformation, &out.system).unwrap().is_success());
    }
}

#[test]
fn per_exponent_override_moves_one_pair() {
    let sys = preset_system(case("takens:2"), 5, 4).unwrap();
    let mut choice = PairChoice::from(PairPolicy::ZeroFirst);
    choice.overrides.insert(Monomial::new(2, 0), PairPolicy::ZeroSecond);
    let out = compute_gnf_with(&sys, &MinimalSets::default(), &choice).unwrap();
    let found = support(&out.system);
    assert!(found.contains(&Slot::new(1, 3, 0)));
    assert!(!found.contains(&Slot::new(2, 2, 1)));
    assert!(found.contains(&Slot::new(2, 3, 1)));
    assert!(verify_conjugacy(&sys, &out.transformation, &out.system).unwrap().is_success());
}

#[test]
fn explicit_sets_match_the_minimal_choice() {
    let sys = preset_system(case("binom:3,2"), 7, 9).unwrap();
    let h = sys.hamiltonian();
    let minimal = MinimalSets::new(SetOrder::LowFirst);
    let mut user = UserSets::default();
    for m in 1..=sys.truncation() - sys.chi() {
        let (s, st) = minimal.choices(h, m).unwrap();
        user.resonant.insert(s.gdeg, s.monomials);
        user.reduced.insert(st.gdeg, st.monomials);
    }
    let a = compute_gnf_with(&sys, &minimal, &PairChoice::default()).unwrap();
    let b = compute_gnf_with(&sys, &user, &PairChoice::default()).unwrap();
    assert_eq!(a.system, b.system);
    assert_eq!(a.transformation, b.transformation);
}

#[test]
fn invalid_user_set_is_rejected() {
    let sys = preset_system(case("takens:2"), 4, 1).unwrap();
    let mut user = UserSets::default();
    // the resonant space in degree 2 is spanned by x1^2; x2^2 pairs to zero with it
    user.resonant.insert(2, vec![Monomial::new(0, 2)]);
    assert!(matches!(
        compute_gnf_with(&sys, &user, &PairChoice::default()),
        Err(Error::SingularPairing { gdeg: 2 })
    ));
}

#[test]
fn floor_reading_of_the_lower_bound_is_needed() {
    // with the bound rounded up, Y1^(3,0) would not be allowed for lm:2,1
    let c = case("lm:2,1");
    let sys = preset_system(c, 6, 7).unwrap();
    let out = compute_gnf(&sys, SetOrder::HighFirst, PairPolicy::ZeroFirst).unwrap();
    let slot = Slot::new(1, 3, 0);
    assert!(support(&out.system).contains(&slot));
    assert!(predict_support(c, 6).unwrap().singles.contains(&slot));
}

#[test]
fn normal_input_needs_no_generators() {
    let (h, w, _) = unperturbed(case("takens:3")).unwrap();
    let sys = HamiltonianSystem::new(h, VectorSeries::new(w, 6)).unwrap();
    let out = compute_gnf(&sys, SetOrder::HighFirst, PairPolicy::ZeroFirst).unwrap();
    assert!(out.transformation.is_identity());
    assert_eq!(out.system, sys);
    assert!(verify_conjugacy(&sys, &out.transformation, &out.system).unwrap().is_success());
}

#[test]
fn corrupted_coefficient_is_pinpointed() {
    let sys = preset_system(case("takens:2"), 5, 8).unwrap();
    let out = compute_gnf(&sys, SetOrder::HighFirst, PairPolicy::ZeroFirst).unwrap();
    let w = sys.weight();
    let bump = Vqhp::from_slot(w, 3, (2, Monomial::new(1, 3)), Rational::from_integer(1.into()));
    let bad = out.system.with_term(out.system.term(3).add(&bump).unwrap()).unwrap();
    let report = verify_conjugacy(&sys, &out.transformation, &bad).unwrap();
    let failures: Vec<_> = report.failures().collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].gdeg, 3);
    assert_eq!(failures[0].slots.len(), 1);
    assert_eq!(failures[0].slots[0].0, Slot::new(2, 1, 3));
}

#[test]
fn chi_zero_saddle_has_an_unremovable_integral() {
    // chi = 0: the bracket cannot reach the first integral x1^2 x2^2 in degree 2
    let sys = preset_system(case("diag:1"), 4, 1).unwrap();
    assert!(matches!(
        compute_gphnf(&sys, &MinimalSets::default()),
        Err(Error::InconsistentSolve { m: 2, .. })
    ));
    let h = sys.hamiltonian();
    assert_eq!(resonance_equation_count(h, 2).unwrap(), 2);
    assert_eq!(hamnf::normalizer::resonant_set_count(h, 2).unwrap(), 1);
}

#[test]
fn transformation_apply_matches_stepwise_pushforward() {
    let sys = preset_system(case("binom:3,2"), 6, 6).unwrap();
    let (out, t) = compute_gphnf(&sys, &MinimalSets::default()).unwrap();
    assert_eq!(t.apply(&sys).unwrap(), out);
    let mut manual = Transformation::identity(sys.weight());
    for g in t.generators() {
        manual.push(g.clone()).unwrap();
    }
    assert_eq!(manual, t);
}

#[test]
fn pair_flips_when_the_preferred_member_is_in_the_image() {
    // low-first picks x1*x2^2 in degree 8, whose pair in degree 3 must keep Y1
    let sys = preset_system(case("binom:3,2"), 4, 1).unwrap();
    let provider = MinimalSets::new(SetOrder::LowFirst);
    let y = hamnf::normalizer::build_y_set(sys.hamiltonian(), &provider, 4, &PairChoice::default()).unwrap();
    let at3: Vec<Slot> = y.slots_at(3).iter().map(|s| s.slot).collect();
    assert_eq!(at3, vec![Slot::new(1, 1, 1)]);
    assert_eq!(y.slots_at(3)[0].partner, Some(Slot::new(2, 0, 2)));
}
