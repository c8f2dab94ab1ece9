use std::sync::Arc;

use proptest::prelude::*;
use spectra::spectral::monotone_assignments;
use spectra::theorems::replays;
use spectra::{
    enumerate_monotone_maps, exhaustive_verify_all, random_poset, search_witness, shrink, sweep::posets_up_to,
    verify_many, verify_with, Flag, Goal, PosetFamily, Property, SpectralMap, Statement, SweepConfig, TheoremId,
    VerifyOptions, WitnessSearchSpec,
};

fn instances(max_s: usize, max_r: usize) -> Vec<SpectralMap> {
    let ss = posets_up_to(max_s, PosetFamily::Labeled).unwrap();
    let rs = posets_up_to(max_r, PosetFamily::Labeled).unwrap();
    let mut out = Vec::new();
    for s in &ss {
        for r in &rs {
            out.extend(enumerate_monotone_maps(s.clone(), r.clone(), true));
        }
    }
    out
}

fn waived() -> VerifyOptions {
    VerifyOptions { waive_hypotheses: true }
}

#[test]
fn stored_counterexamples_replay() {
    let cfg = SweepConfig {
        max_s: 2,
        max_r: 3,
        waive_hypotheses: true,
        ..SweepConfig::default()
    };
    let verdicts = exhaustive_verify_all(&TheoremId::ALL, &cfg).unwrap();
    let mut failures = 0;
    for v in &verdicts {
        if let (Statement::Theorem(t), Some(cx)) = (v.statement, &v.counterexample) {
            assert!(replays(t, cx), "{t}");
            failures += 1;
        }
    }
    assert!(failures > 0);
}

#[test]
fn five_properties_agree_with_cardinality_condition() {
    for m in instances(3, 3) {
        let five = [Property::Lo, Property::Inc, Property::Gd, Property::Gu, Property::Sgb]
            .into_iter()
            .all(|p| m.satisfies(p));
        let sizes = m
            .s()
            .chains()
            .iter()
            .all(|&d| m.maximal_d_chains(d).iter().all(|c| c.len() == d.len()));
        assert_eq!(five, sizes, "{m:?}");
    }
}

#[test]
fn failing_conclusion_means_failing_hypothesis() {
    for m in instances(2, 3) {
        let v = verify_with(&m, TheoremId::TCoverMaxchain, waived());
        if !v.holds {
            let hyps = [Property::Unitary, Property::Gu, Property::Gd, Property::Sgb];
            assert!(hyps.iter().any(|&p| !m.satisfies(p)), "{m:?}");
        }
    }
}

#[test]
fn waiving_only_matters_when_hypotheses_fail() {
    for m in instances(2, 3) {
        let plain = verify_many(&m, &TheoremId::ALL, VerifyOptions::default());
        let loose = verify_many(&m, &TheoremId::ALL, waived());
        for ((a, b), t) in plain.iter().zip(&loose).zip(TheoremId::ALL) {
            let hyps_ok = t.hypotheses().iter().all(|&p| m.satisfies(p));
            if hyps_ok {
                assert_eq!(a.holds, b.holds, "{t} {m:?}");
            } else {
                assert!(a.holds, "{t} {m:?}");
            }
        }
    }
}

#[test]
fn sweeps_and_searches_are_deterministic() {
    let base = SweepConfig {
        max_s: 2,
        max_r: 3,
        waive_hypotheses: true,
        ..SweepConfig::default()
    };
    let one = exhaustive_verify_all(&TheoremId::ALL, &SweepConfig { jobs: 1, ..base.clone() }).unwrap();
    let four = exhaustive_verify_all(&TheoremId::ALL, &SweepConfig { jobs: 4, ..base }).unwrap();
    for (a, b) in one.iter().zip(&four) {
        assert!(a.same_outcome(b), "{}", a.statement);
    }

    let mut spec = WitnessSearchSpec::new(vec![Flag::Holds(Property::Gb)], Goal::PropertyFails(Property::Sgb), 4, 4);
    spec.jobs = 1;
    let a = search_witness(&spec).unwrap();
    spec.jobs = 4;
    let b = search_witness(&spec).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shrinking_is_idempotent_and_keeps_the_violation(ns in 1usize..4, nr in 1usize..5, s_seed: u64, r_seed: u64, pick: usize) {
        let s = random_poset(ns, s_seed);
        let r = random_poset(nr, r_seed);
        let maps = monotone_assignments(&s, &r, true);
        let m = SpectralMap::new(Arc::new(s), Arc::new(r), maps[pick % maps.len()].clone()).unwrap();
        let violation = |c: &SpectralMap| !c.s().is_empty() && !c.check_lo();
        if violation(&m) {
            let once = shrink(&m, violation);
            prop_assert!(violation(&once));
            prop_assert!(once.r().len() <= m.r().len() && once.s().len() <= m.s().len());
            prop_assert_eq!(shrink(&once, violation), once);
        }
    }
}

#[test]
fn uncovered_three_chain_needs_six_points() {
    let required = vec![
        Flag::Holds(Property::Unitary),
        Flag::Holds(Property::Gu),
        Flag::Holds(Property::Gd),
        Flag::Holds(Property::Lo),
        Flag::Fails(Property::Sgb),
    ];
    let goal = Goal::NotCover { d_size: Some(3) };
    let five = WitnessSearchSpec::new(required.clone(), goal, 3, 5);
    assert!(search_witness(&five).unwrap().witness.is_none());
    let mut six = WitnessSearchSpec::new(required, goal, 3, 6);
    six.family = PosetFamily::Natural;
    let w = search_witness(&six).unwrap().witness.expect("a witness on six points");
    assert_eq!((w.s().len(), w.r().len()), (3, 6));
    assert!(six.accepts(&w));
    assert!(verify_with(&w, TheoremId::PMiniSgb, VerifyOptions::default()).holds);
}
