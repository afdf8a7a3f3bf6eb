use defectont::linker::single_module;
use defectont::model::{Axiom, ConceptExpr as C, KnowledgeBase, RoleExpr};
use defectont::reasoner::{Reasoner, ReasonerError};

fn kb(body: &str) -> KnowledgeBase {
    single_module(&format!("ontology t\n{body}")).unwrap()
}

fn named(kb: &KnowledgeBase, n: &str) -> C {
    C::Named(kb.class(n).unwrap())
}

#[test]
fn empty_kb_is_consistent() {
    assert!(Reasoner::new(&KnowledgeBase::new()).is_consistent().unwrap());
}

#[test]
fn forced_clash() {
    let k = kb("class A\nindividual d\ninstance d A\nsubclass A bot");
    assert!(!Reasoner::new(&k).is_consistent().unwrap());
    assert_eq!(Reasoner::new(&k).classify().unwrap_err(), ReasonerError::Inconsistent);
}

#[test]
fn basic_satisfiability() {
    let k = kb("class A");
    let r = Reasoner::new(&k);
    let a = named(&k, "A");
    assert!(r.is_satisfiable(&C::Top).unwrap());
    assert!(!r.is_satisfiable(&C::And(vec![a.clone(), C::not(a.clone())])).unwrap());
    assert!(!r.is_satisfiable(&C::Bottom).unwrap());
    assert!(r.entails_subsumption(&a, &a).unwrap());
}

#[test]
fn told_chain() {
    let k = kb("class A\nclass B\nclass C\nsubclass A B\nsubclass B C");
    let r = Reasoner::new(&k);
    let (a, c) = (named(&k, "A"), named(&k, "C"));
    assert!(r.entails_subsumption(&a, &c).unwrap());
    assert!(!r.entails_subsumption(&c, &a).unwrap());
}

#[test]
fn inverse_roles_propagate_back() {
    let k = kb("class A\nclass B\nclass C\nrole r\nsubclass A (some r B)\nsubclass B (all (inv r) C)");
    let r = Reasoner::new(&k);
    assert!(r.entails_subsumption(&named(&k, "A"), &named(&k, "C")).unwrap());
}

#[test]
fn declared_inverse_and_symmetry() {
    let k = kb("class A\nclass B\nrole affects inverse isAffectedBy\nrole near symmetric\n\
                subclass A (some affects B)\nsubclass B (all isAffectedBy bot)");
    let r = Reasoner::new(&k);
    assert!(!r.is_satisfiable(&named(&k, "A")).unwrap());
    let near = k.role("near").unwrap();
    let a = named(&k, "A");
    let test = C::And(vec![C::exists(RoleExpr::Named(near), a.clone()), C::for_all(RoleExpr::Inverse(near), C::not(a))]);
    assert!(!r.is_satisfiable(&test).unwrap());
    assert!(r.entails(&Axiom::SymmetricRole(near)).unwrap());
}

#[test]
fn role_hierarchy_domain_range() {
    let k = kb("class A\nclass B\nclass D\nrole r\nrole s\nsubrole r s\ndomain s D\nrange s B\nsubclass A (some r top)");
    let r = Reasoner::new(&k);
    let a = named(&k, "A");
    assert!(r.entails_subsumption(&a, &named(&k, "D")).unwrap());
    let (rr, ss) = (k.role("r").unwrap(), k.role("s").unwrap());
    assert!(r.entails_subsumption(&a, &C::exists(RoleExpr::Named(rr), named(&k, "B"))).unwrap());
    assert!(r.entails(&Axiom::SubRoleOf(RoleExpr::Named(rr), RoleExpr::Named(ss))).unwrap());
    assert!(!r.entails(&Axiom::SubRoleOf(RoleExpr::Named(ss), RoleExpr::Named(rr))).unwrap());
}

#[test]
fn disjunction_needs_backtracking() {
    let k = kb("class A\nclass B\nclass C\nsubclass A (or B C)\nsubclass B bot");
    let r = Reasoner::new(&k);
    assert!(r.entails_subsumption(&named(&k, "A"), &named(&k, "C")).unwrap());
    assert!(r.is_satisfiable(&named(&k, "A")).unwrap());
}

#[test]
fn cyclic_definition_terminates() {
    let k = kb("class VoidRegion\nclass PhysicalObject\nrole hasPart\n\
                equiv VoidRegion (and PhysicalObject (all hasPart VoidRegion))\n\
                subclass PhysicalObject (some hasPart PhysicalObject)");
    let r = Reasoner::new(&k).with_node_limit(200);
    assert!(r.is_satisfiable(&named(&k, "VoidRegion")).unwrap());
    let tax = r.classify().unwrap();
    assert!(tax.subsumes(k.class("VoidRegion").unwrap(), k.class("PhysicalObject").unwrap()));
}

#[test]
fn pairwise_blocking_with_inverse() {
    // each node needs an r-successor and sees its predecessor through inv r
    let k = kb("class A\nclass B\nrole r\nsubclass A (some r A)\nsubclass A (all (inv r) B)\nindividual x\ninstance x A");
    let r = Reasoner::new(&k).with_node_limit(100);
    assert!(r.is_consistent().unwrap());
    let m = r.model().unwrap().unwrap();
    assert!(m.size <= 4);
    let x = k.individual("x").unwrap();
    assert!(r.entails_instance(x, &C::exists(RoleExpr::Named(k.role("r").unwrap()), named(&k, "B"))).unwrap());
}

#[test]
fn nominals() {
    let k = kb("class Material\nindividual m\nindividual solidState\nrole hasMaterialState\nrel m hasMaterialState solidState");
    let r = Reasoner::new(&k);
    let (m, s) = (k.individual("m").unwrap(), k.individual("solidState").unwrap());
    let role = RoleExpr::Named(k.role("hasMaterialState").unwrap());
    assert!(r.entails_instance(m, &C::exists(role, C::Nominal(s))).unwrap());
    // no unique names: m and solidState may coincide
    assert!(!r.entails_instance(m, &C::not(C::Nominal(s))).unwrap());
    assert!(r.entails(&Axiom::RoleAssertion(m, role, s)).unwrap());
    assert!(!r.entails(&Axiom::RoleAssertion(s, role, m)).unwrap());
}

#[test]
fn nominal_merging_transfers_labels() {
    let k = kb("class A\nclass B\nrole r\nindividual o\ninstance o B\nsubclass A (some r (one o))");
    let r = Reasoner::new(&k);
    let rr = RoleExpr::Named(k.role("r").unwrap());
    assert!(r.entails_subsumption(&named(&k, "A"), &C::exists(rr, named(&k, "B"))).unwrap());
    let k2 = kb("class A\nclass B\nrole r\nindividual o\ninstance o (not B)\nsubclass A (some r (and (one o) B))");
    assert!(!Reasoner::new(&k2).is_satisfiable(&named(&k2, "A")).unwrap());
}

#[test]
fn classify_small() {
    let k = kb("class A\nclass B\nclass C\nclass X\nsubclass A B\nequiv B C\nsubclass X bot");
    let r = Reasoner::new(&k);
    let tax = r.classify().unwrap();
    let (a, b, c, x) = (k.class("A").unwrap(), k.class("B").unwrap(), k.class("C").unwrap(), k.class("X").unwrap());
    assert_eq!(tax.node_of(b), tax.node_of(c));
    let na = tax.node_of(a).unwrap();
    assert_eq!(tax.node(na).parents, vec![tax.node_of(b).unwrap()]);
    assert_eq!(tax.node(tax.node_of(b).unwrap()).parents, vec![tax.top()]);
    assert!(tax.is_unsatisfiable(x));
    assert!(tax.subsumes(x, a));
}

#[test]
fn top_equivalent_class() {
    let k = kb("class A\nclass B\nsubclass top A\nsubclass B A");
    let r = Reasoner::new(&k);
    let tax = r.classify().unwrap();
    assert_eq!(tax.node_of(k.class("A").unwrap()), Some(tax.top()));
}

#[test]
fn realize_picks_most_specific() {
    let k = kb("class A\nclass B\nclass C\nsubclass A B\nindividual d\nindividual e\ninstance d A");
    let r = Reasoner::new(&k);
    assert_eq!(r.realize(k.individual("d").unwrap()).unwrap(), vec![k.class("A").unwrap()]);
    assert!(r.realize(k.individual("e").unwrap()).unwrap().is_empty());
    assert!(r.entails_instance(k.individual("d").unwrap(), &named(&k, "B")).unwrap());
}

#[test]
fn node_limit_is_reported() {
    let k = kb("class A\nrole r\nrole s\nsubclass A (some r A)\nsubclass A (some s A)\nsubclass A (all (inv r) (some s top))");
    let r = Reasoner::new(&k).with_node_limit(1);
    assert_eq!(r.is_satisfiable(&named(&k, "A")), Err(ReasonerError::ResourceLimit(1)));
}
