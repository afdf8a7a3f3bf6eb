//! Defect-source diagnosis by elimination over covering ("bridge") axioms
//! `A ⊑ C₁ ⊔ … ⊔ Cₙ`. Ruling a source out asserts its complement for the
//! defect; whatever the reasoner then proves is reported. There is no
//! special rule for the last remaining disjunct.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Axiom, ConceptExpr, KnowledgeBase, ModelError, Sym};
use crate::reasoner::{Reasoner, ReasonerError};

pub const ELIMINATION_ORIGIN: &str = "elimination";

#[derive(Debug, Error)]
pub enum DiagnosisError {
    #[error("no bridge axiom for `{0}`")]
    NoBridge(String),
    #[error("`{individual}` is not entailed to be a `{class}`")]
    NotEntailed { individual: String, class: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnosis {
    pub defect: String,
    pub defect_class: String,
    pub ruled_out: Vec<String>,
    /// Bridge disjuncts not refuted for the defect, in axiom order.
    pub candidates: Vec<String>,
    /// Disjuncts and their named superclasses now entailed for the defect.
    pub entailed: Vec<String>,
    pub consistent: bool,
}

impl Diagnosis {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagnosis serializes")
    }
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "defect: {} ({})", self.defect, self.defect_class)?;
        writeln!(f, "ruled out: {}", if self.ruled_out.is_empty() { "-".into() } else { self.ruled_out.join(", ") })?;
        writeln!(f, "consistent: {}", self.consistent)?;
        for (title, list) in [("candidates", &self.candidates), ("entailed", &self.entailed)] {
            writeln!(f, "{title}:")?;
            for c in list {
                writeln!(f, "  {c}")?;
            }
        }
        Ok(())
    }
}

/// Disjuncts of the first axiom `class ⊑ C₁ ⊔ … ⊔ Cₙ` whose right-hand
/// side is a union of named classes.
pub fn bridge_disjuncts(kb: &KnowledgeBase, class: Sym) -> Result<Vec<Sym>, DiagnosisError> {
    for ax in kb.axioms() {
        if let Axiom::SubClassOf(ConceptExpr::Named(a), ConceptExpr::Or(ds)) = ax {
            if *a != class {
                continue;
            }
            let names: Option<Vec<Sym>> = ds
                .iter()
                .map(|d| match d {
                    ConceptExpr::Named(s) => Some(*s),
                    _ => None,
                })
                .collect();
            if let Some(names) = names {
                return Ok(names);
            }
        }
    }
    Err(DiagnosisError::NoBridge(kb.name(class).to_string()))
}

/// `kb` plus `(¬C)(d)` for every ruled-out class.
pub fn eliminate(kb: &KnowledgeBase, d: Sym, ruled_out: &[Sym]) -> Result<KnowledgeBase, DiagnosisError> {
    let mut out = kb.clone();
    for &c in ruled_out {
        out.add_axiom(Axiom::ClassAssertion(d, ConceptExpr::not(ConceptExpr::Named(c))), ELIMINATION_ORIGIN)?;
    }
    Ok(out)
}

pub fn diagnose(kb: &KnowledgeBase, d: Sym, defect_class: Sym, ruled_out: &[Sym]) -> Result<Diagnosis, DiagnosisError> {
    let name = |s: Sym| kb.name(s).to_string();
    kb.validate_axiom(&Axiom::ClassAssertion(d, ConceptExpr::Named(defect_class)))?;
    let disjuncts = bridge_disjuncts(kb, defect_class)?;
    let base = Reasoner::new(kb);
    if !base.entails_instance(d, &ConceptExpr::Named(defect_class))? {
        return Err(DiagnosisError::NotEntailed { individual: name(d), class: name(defect_class) });
    }
    let tax = base.classify()?;

    let reduced = eliminate(kb, d, ruled_out)?;
    let r = Reasoner::new(&reduced);
    let consistent = r.is_consistent()?;
    let mut candidates = Vec::new();
    let mut entailed = Vec::new();
    if consistent {
        for &c in &disjuncts {
            if !r.entails_instance(d, &ConceptExpr::not(ConceptExpr::Named(c)))? {
                candidates.push(c);
            }
        }
        // disjuncts first, then their superclasses by name
        let mut uppers: Vec<Sym> = disjuncts
            .iter()
            .filter_map(|&c| tax.node_of(c))
            .flat_map(|n| tax.ancestors(n))
            .filter(|&n| n != tax.top())
            .flat_map(|n| tax.node(n).classes.clone())
            .filter(|c| !disjuncts.contains(c))
            .collect();
        uppers.sort_by(|a, b| kb.name(*a).cmp(kb.name(*b)));
        uppers.dedup();
        for c in disjuncts.iter().copied().chain(uppers) {
            if r.entails_instance(d, &ConceptExpr::Named(c))? {
                entailed.push(c);
            }
        }
    }
    Ok(Diagnosis {
        defect: name(d),
        defect_class: name(defect_class),
        ruled_out: ruled_out.iter().map(|&c| name(c)).collect(),
        candidates: candidates.into_iter().map(name).collect(),
        entailed: entailed.into_iter().map(name).collect(),
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linker::single_module;

    const KB: &str = "ontology t
class P
class X
class Y
class Z
class XY
individual d
subclass X XY
subclass Y XY
subclass P (or X Y Z)
instance d P
";

    fn syms(kb: &KnowledgeBase, names: &[&str]) -> Vec<Sym> {
        names.iter().map(|n| kb.class(n).unwrap()).collect()
    }

    #[test]
    fn no_information() {
        let kb = single_module(KB).unwrap();
        let d = kb.individual("d").unwrap();
        let diag = diagnose(&kb, d, kb.class("P").unwrap(), &[]).unwrap();
        assert_eq!(diag.candidates, ["X", "Y", "Z"]);
        assert!(diag.entailed.is_empty());
        assert!(diag.consistent);
    }

    #[test]
    fn last_one_standing_is_entailed() {
        let kb = single_module(KB).unwrap();
        let d = kb.individual("d").unwrap();
        let diag = diagnose(&kb, d, kb.class("P").unwrap(), &syms(&kb, &["X", "Z"])).unwrap();
        assert_eq!(diag.candidates, ["Y"]);
        assert_eq!(diag.entailed, ["Y", "XY"]);
        let diag = diagnose(&kb, d, kb.class("P").unwrap(), &syms(&kb, &["Z"])).unwrap();
        assert_eq!(diag.entailed, ["XY"]);
    }

    #[test]
    fn ruling_out_everything_is_inconsistent() {
        let kb = single_module(KB).unwrap();
        let d = kb.individual("d").unwrap();
        let diag = diagnose(&kb, d, kb.class("P").unwrap(), &syms(&kb, &["X", "Y", "Z"])).unwrap();
        assert!(!diag.consistent);
        assert!(diag.candidates.is_empty());
    }

    #[test]
    fn json_fields() {
        let kb = single_module(KB).unwrap();
        let d = kb.individual("d").unwrap();
        let diag = diagnose(&kb, d, kb.class("P").unwrap(), &[]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&diag.to_json()).unwrap();
        for key in ["defect", "candidates", "entailed", "consistent"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn preconditions() {
        let kb = single_module(KB).unwrap();
        let d = kb.individual("d").unwrap();
        assert!(matches!(diagnose(&kb, d, kb.class("X").unwrap(), &[]), Err(DiagnosisError::NoBridge(_))));
        let kb2 = single_module(&KB.replace("instance d P", "")).unwrap();
        assert!(matches!(diagnose(&kb2, d, kb2.class("P").unwrap(), &[]), Err(DiagnosisError::NotEntailed { .. })));
    }
}
