//! One randomized reasoner-versus-oracle comparison per seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use defectont::model::{Axiom, ConceptExpr};
use defectont::reasoner::{Reasoner, ReasonerError};

use crate::{
    bound_for, extension, oracle_consistent, oracle_satisfiable, random_concept, random_kb, satisfies, GeneratorConfig, OracleError,
    Verdict,
};

/// Interpretations the oracle may visit per question.
pub const SEARCH_BUDGET: f64 = 3.0e5;

#[derive(Debug, thiserror::Error)]
pub enum CaseError {
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub seed: u64,
    pub consistent: bool,
    /// Domain bound used when the tableau found no model.
    pub bound: Option<usize>,
    pub agreed: bool,
    pub detail: String,
}

/// Generates a KB and a concept from `seed` and checks both the consistency
/// verdict and the satisfiability verdict against the oracle. A positive
/// tableau verdict must come with an extracted model the oracle's evaluator
/// accepts; a negative one must leave the exhaustive search empty.
pub fn check_case(seed: u64, cfg: &GeneratorConfig) -> Result<CaseReport, CaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kb = random_kb(&mut rng, cfg);
    let classes: Vec<_> = kb.classes().collect();
    let roles: Vec<_> = kb.roles().collect();
    let concept = random_concept(&mut rng, &classes, &roles, cfg.max_depth);
    let r = Reasoner::new(&kb);
    let mut report = CaseReport { seed, consistent: false, bound: None, agreed: true, detail: String::new() };

    match r.model()? {
        Some(m) => {
            report.consistent = true;
            if !satisfies(&kb, &m) {
                report.agreed = false;
                report.detail = format!("extracted model rejected: {m:?}");
                return Ok(report);
            }
        }
        None => {
            let bound = bound_for(&kb, None, SEARCH_BUDGET, 4)?;
            report.bound = Some(bound);
            if let Verdict::Consistent(m) = oracle_consistent(&kb, bound)? {
                report.agreed = false;
                report.detail = format!("tableau says inconsistent, oracle found {m:?}");
                return Ok(report);
            }
        }
    }
    if !report.consistent {
        return Ok(report);
    }
    match r.satisfiable_model(&concept)? {
        Some(m) => {
            let ok = satisfies(&kb, &m) && m.fresh.is_some_and(|x| extension(&m, &concept).contains(&x));
            if !ok {
                report.agreed = false;
                report.detail = format!("model for concept rejected: {m:?}");
            }
        }
        None => {
            let bound = bound_for(&kb, Some(&concept), SEARCH_BUDGET, 4)?;
            report.bound = Some(bound);
            if let Verdict::Consistent(m) = oracle_satisfiable(&kb, &concept, bound)? {
                report.agreed = false;
                report.detail = format!("tableau says unsatisfiable, oracle found {m:?}");
            }
        }
    }
    if !report.agreed {
        return Ok(report);
    }
    // instance check on a cached model versus a run on the extended KB
    if let Some(a) = kb.individuals().next() {
        let entailed = r.entails_instance(a, &concept)?;
        let mut extended = kb.clone();
        extended
            .add_axiom(Axiom::ClassAssertion(a, ConceptExpr::not(concept.clone())), "agreement")
            .expect("generated names are declared");
        match Reasoner::new(&extended).model()? {
            Some(m) if entailed || !satisfies(&extended, &m) => {
                report.agreed = false;
                report.detail = format!("instance check said entailed: {entailed}, model {m:?}");
            }
            Some(_) => {}
            None if !entailed => {
                report.agreed = false;
                report.detail = "instance check said not entailed, extended KB has no model".into();
            }
            None => {
                let bound = bound_for(&extended, None, SEARCH_BUDGET, 4)?;
                if let Verdict::Consistent(m) = oracle_consistent(&extended, bound)? {
                    report.agreed = false;
                    report.detail = format!("instance check said entailed, oracle found {m:?}");
                }
            }
        }
    }
    Ok(report)
}
