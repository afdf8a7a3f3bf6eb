use std::ops::ControlFlow;

use defectont::linker::single_module;
use defectont_oracle::agreement::{check_case, SEARCH_BUDGET};
use defectont_oracle::{bound_for, enumerate_models, oracle_consistent, random_kb, satisfies, GeneratorConfig, OracleError, Verdict};
use defectont::reasoner::Reasoner;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn count(text: &str, max: usize) -> usize {
    let kb = single_module(text).unwrap();
    let mut n = 0;
    enumerate_models(&kb, max, |_| {
        n += 1;
        ControlFlow::Continue(())
    })
    .unwrap();
    n
}

#[test]
fn forced_clash_has_no_models() {
    assert_eq!(count("ontology t\nclass A\nindividual d\nsubclass A bot\ninstance d A", 3), 0);
}

#[test]
fn models_up_to_isomorphism() {
    let text = "ontology t\nclass A\nindividual d\ninstance d A";
    assert_eq!(count(text, 1), 1);
    // size 2: A = {d} or A = everything
    assert_eq!(count(text, 2), 3);
}

#[test]
fn nominals_are_rejected() {
    let kb = single_module("ontology t\nclass A\nindividual d\nsubclass A (one d)").unwrap();
    assert_eq!(oracle_consistent(&kb, 1), Err(OracleError::Nominal));
}

#[test]
fn yielded_models_pass_the_evaluator() {
    let cfg = GeneratorConfig::default();
    for seed in 0..60 {
        let kb = random_kb(&mut ChaCha8Rng::seed_from_u64(seed), &cfg);
        let mut bad = 0;
        enumerate_models(&kb, 2, |m| {
            if !satisfies(&kb, &m) {
                bad += 1;
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(bad, 0, "seed {seed}");
    }
}

#[test]
fn consistent_verdict_carries_a_model() {
    let kb = single_module("ontology t\nclass A\nclass B\nrole r\nindividual d\ninstance d (some r B)").unwrap();
    match oracle_consistent(&kb, 2).unwrap() {
        Verdict::Consistent(m) => assert!(satisfies(&kb, &m)),
        v => panic!("{v:?}"),
    }
}

#[test]
fn agreement_with_tableau() {
    let cfg = GeneratorConfig::default();
    let mut inconsistent = 0;
    for seed in 0..1000 {
        let rep = check_case(seed, &cfg).unwrap();
        assert!(rep.agreed, "seed {seed}: {}", rep.detail);
        if !rep.consistent {
            inconsistent += 1;
        }
    }
    // both verdicts must be exercised
    assert!(inconsistent > 50 && inconsistent < 950, "{inconsistent}");
}

#[test]
fn tableau_models_with_nominals_satisfy_the_kb() {
    let cfg = GeneratorConfig { max_classes: 3, max_roles: 3, max_individuals: 3, max_axioms: 6, max_depth: 3, nominals: true };
    let mut checked = 0;
    for seed in 0..2000 {
        let kb = random_kb(&mut ChaCha8Rng::seed_from_u64(seed), &cfg);
        let model = Reasoner::new(&kb).model().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        if let Some(m) = model {
            assert!(satisfies(&kb, &m), "seed {seed}");
            checked += 1;
        }
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn gci_normal_form_preserves_consistency() {
    let cfg = GeneratorConfig::default();
    let (mut agreed, mut consistent) = (0, 0);
    for seed in 0..300 {
        let kb = random_kb(&mut ChaCha8Rng::seed_from_u64(seed), &cfg);
        let gcis = kb.to_gcis();
        let bound = bound_for(&kb, None, SEARCH_BUDGET, 3).unwrap().min(bound_for(&gcis, None, SEARCH_BUDGET, 3).unwrap());
        let a = matches!(oracle_consistent(&kb, bound).unwrap(), Verdict::Consistent(_));
        let b = matches!(oracle_consistent(&gcis, bound).unwrap(), Verdict::Consistent(_));
        assert_eq!(a, b, "seed {seed} at bound {bound}");
        agreed += 1;
        consistent += a as usize;
    }
    assert!(consistent > 0 && consistent < agreed, "{consistent}/{agreed}");
}
