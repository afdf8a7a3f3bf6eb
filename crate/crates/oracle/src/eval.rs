//! Direct set-based semantics, written independently of both the tableau and
//! the bitmask enumerator.

use std::collections::BTreeSet;

use defectont::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};
use defectont::reasoner::Interpretation;

fn pairs(m: &Interpretation, r: RoleExpr) -> BTreeSet<(usize, usize)> {
    let base = m.roles.get(&r.name()).cloned().unwrap_or_default();
    match r {
        RoleExpr::Named(_) => base,
        RoleExpr::Inverse(_) => base.into_iter().map(|(x, y)| (y, x)).collect(),
    }
}

pub fn extension(m: &Interpretation, c: &ConceptExpr) -> BTreeSet<usize> {
    let all: BTreeSet<usize> = (0..m.size).collect();
    match c {
        ConceptExpr::Top => all,
        ConceptExpr::Bottom => BTreeSet::new(),
        ConceptExpr::Named(s) => m.classes.get(s).cloned().unwrap_or_default(),
        ConceptExpr::Nominal(a) => m.individuals.get(a).into_iter().copied().collect(),
        ConceptExpr::Not(inner) => all.difference(&extension(m, inner)).copied().collect(),
        ConceptExpr::And(cs) => {
            let mut acc = all;
            for child in cs {
                acc = acc.intersection(&extension(m, child)).copied().collect();
            }
            acc
        }
        ConceptExpr::Or(cs) => {
            let mut acc = BTreeSet::new();
            for child in cs {
                acc.extend(extension(m, child));
            }
            acc
        }
        ConceptExpr::Exists(r, inner) => {
            let target = extension(m, inner);
            pairs(m, *r).into_iter().filter(|(_, y)| target.contains(y)).map(|(x, _)| x).collect()
        }
        ConceptExpr::ForAll(r, inner) => {
            let target = extension(m, inner);
            let bad: BTreeSet<usize> = pairs(m, *r).into_iter().filter(|(_, y)| !target.contains(y)).map(|(x, _)| x).collect();
            all.difference(&bad).copied().collect()
        }
    }
}

pub fn holds(m: &Interpretation, axiom: &Axiom) -> bool {
    let ind = |a| m.individuals.get(&a).copied();
    match axiom {
        Axiom::SubClassOf(c, d) => extension(m, c).is_subset(&extension(m, d)),
        Axiom::EquivalentClasses(c, d) => extension(m, c) == extension(m, d),
        Axiom::DisjointClasses(names) => {
            let exts: Vec<BTreeSet<usize>> = names.iter().map(|n| extension(m, &ConceptExpr::Named(*n))).collect();
            exts.iter().enumerate().all(|(i, a)| exts[i + 1..].iter().all(|b| a.is_disjoint(b)))
        }
        Axiom::SubRoleOf(r, s) => pairs(m, *r).is_subset(&pairs(m, *s)),
        Axiom::InverseRoles(p, q) => pairs(m, RoleExpr::Named(*p)) == pairs(m, RoleExpr::Inverse(*q)),
        Axiom::SymmetricRole(r) => pairs(m, RoleExpr::Named(*r)) == pairs(m, RoleExpr::Inverse(*r)),
        Axiom::RoleDomain(r, c) => {
            let ext = extension(m, c);
            pairs(m, *r).iter().all(|(x, _)| ext.contains(x))
        }
        Axiom::RoleRange(r, c) => {
            let ext = extension(m, c);
            pairs(m, *r).iter().all(|(_, y)| ext.contains(y))
        }
        Axiom::ClassAssertion(a, c) => ind(*a).is_some_and(|x| extension(m, c).contains(&x)),
        Axiom::RoleAssertion(a, r, b) => match (ind(*a), ind(*b)) {
            (Some(x), Some(y)) => pairs(m, *r).contains(&(x, y)),
            _ => false,
        },
        // attribute values are not part of the interpretation
        Axiom::DataAssertion { .. } => true,
    }
}

/// Whether `m` is a model of `kb`: non-empty domain, every individual named
/// in `kb` mapped into it, all extensions inside it, every axiom true.
pub fn satisfies(kb: &KnowledgeBase, m: &Interpretation) -> bool {
    if m.size == 0 {
        return false;
    }
    if !kb.individuals().all(|a| m.individuals.get(&a).is_some_and(|&x| x < m.size)) {
        return false;
    }
    let in_domain = m.classes.values().all(|s| s.iter().all(|&x| x < m.size))
        && m.roles.values().all(|s| s.iter().all(|&(x, y)| x < m.size && y < m.size));
    in_domain && kb.axioms().iter().all(|ax| holds(m, ax))
}
