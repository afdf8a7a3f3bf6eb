//! Tableau reasoning for ALCHOI with nominals: consistency, satisfiability,
//! entailment, classification and realization.
//!
//! GCIs are internalized: each `C ⊑ D` becomes `nnf(¬C ⊔ D)` at every node,
//! except `⊤ ⊑ D` and domain axioms `∃r.⊤ ⊑ D` (as `∀r⁻.D`), which are added
//! as they are. Blocking is by label equality with a tree ancestor; individuals are
//! roots that are never blocked. Data assertions play no part.

mod concepts;
mod tableau;
mod taxonomy;

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Axiom, ConceptExpr, KnowledgeBase, ModelError, NameKind, RoleExpr, Sym};
use concepts::{lit, CNode, Cid, ConceptTable, RoleHierarchy};
use tableau::{Graph, Problem, Resumed, Tableau};

pub use taxonomy::{TaxNode, Taxonomy};

pub const DEFAULT_NODE_LIMIT: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReasonerError {
    #[error("the knowledge base is inconsistent")]
    Inconsistent,
    #[error("completion graph grew beyond {0} nodes")]
    ResourceLimit(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A finite interpretation read off a complete completion graph. Elements
/// are `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub size: usize,
    pub classes: BTreeMap<Sym, BTreeSet<usize>>,
    pub roles: BTreeMap<Sym, BTreeSet<(usize, usize)>>,
    pub individuals: BTreeMap<Sym, usize>,
    /// Element standing for the tested concept in a satisfiability check.
    pub fresh: Option<usize>,
}

/// Class used internally by role entailment checks; never part of a KB.
fn probe_class() -> ConceptExpr {
    ConceptExpr::Named(Sym::from_raw(u32::MAX))
}

pub struct Reasoner<'kb> {
    kb: &'kb KnowledgeBase,
    table: RefCell<ConceptTable>,
    roles: RoleHierarchy,
    universal: Vec<Cid>,
    global_ors: Vec<Cid>,
    problem: Problem,
    node_limit: usize,
    base: OnceCell<Option<Graph>>,
    taxonomy: OnceCell<Taxonomy>,
    runs: std::cell::Cell<u64>,
}

impl<'kb> Reasoner<'kb> {
    pub fn new(kb: &'kb KnowledgeBase) -> Reasoner<'kb> {
        let mut r = Reasoner {
            kb,
            table: RefCell::new(ConceptTable::default()),
            roles: RoleHierarchy::new(kb),
            universal: Vec::new(),
            global_ors: Vec::new(),
            problem: Problem { individuals: kb.individuals().collect(), ..Problem::default() },
            node_limit: DEFAULT_NODE_LIMIT,
            base: OnceCell::new(),
            taxonomy: OnceCell::new(),
            runs: std::cell::Cell::new(0),
        };
        for ax in kb.to_gcis().axioms() {
            match ax {
                Axiom::SubClassOf(c, d) => r.add_gci(c, d),
                Axiom::ClassAssertion(a, c) => {
                    let id = r.table.get_mut().intern(&c.nnf());
                    r.problem.class_assertions.push((*a, id));
                }
                Axiom::RoleAssertion(a, role, b) => r.problem.role_assertions.push((*a, lit(*role), *b)),
                _ => {}
            }
        }
        r
    }

    pub fn with_node_limit(mut self, limit: usize) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn kb(&self) -> &'kb KnowledgeBase {
        self.kb
    }

    /// Number of tableau runs so far.
    pub fn runs(&self) -> u64 {
        self.runs.get()
    }

    fn add_gci(&mut self, c: &ConceptExpr, d: &ConceptExpr) {
        let u = match c {
            ConceptExpr::Top => d.nnf(),
            ConceptExpr::Exists(r, filler) if **filler == ConceptExpr::Top => ConceptExpr::for_all(r.inverse(), d.nnf()),
            _ => ConceptExpr::Or(vec![c.negated_nnf(), d.nnf()]),
        };
        let id = self.table.get_mut().intern(&u);
        self.add_universal(id);
    }

    fn add_universal(&mut self, id: Cid) {
        match self.table.get_mut().get(id).clone() {
            CNode::Top => {}
            CNode::And(parts) => parts.into_iter().for_each(|p| self.add_universal(p)),
            CNode::Or(_) => {
                if !self.global_ors.contains(&id) {
                    self.global_ors.push(id);
                }
            }
            _ => {
                if !self.universal.contains(&id) {
                    self.universal.push(id);
                }
            }
        }
    }

    fn run(&self, extra: &[(Sym, ConceptExpr)], fresh: Option<&ConceptExpr>) -> Result<Option<Graph>, ReasonerError> {
        if !extra.is_empty() || fresh.is_some() {
            // queries start from the model of the knowledge base
            self.base()?;
        }
        let mut problem = self.problem.clone();
        {
            let mut table = self.table.borrow_mut();
            for (a, c) in extra {
                problem.class_assertions.push((*a, table.intern(c)));
            }
            // the domain is never empty, so there is always one anonymous root
            problem.fresh = Some(vec![table.intern(fresh.unwrap_or(&ConceptExpr::Top))]);
        }
        let table = self.table.borrow();
        let t = Tableau {
            table: &table,
            roles: &self.roles,
            universal: &self.universal,
            global_ors: &self.global_ors,
            node_limit: self.node_limit,
        };
        self.runs.set(self.runs.get() + 1);
        let limit = ReasonerError::ResourceLimit(self.node_limit);
        // start from the cached model of the knowledge base when possible
        if let Some(Some(base)) = self.base.get() {
            let n = self.problem.class_assertions.len();
            let fresh = problem.fresh.as_ref().map(|f| f[0]);
            match t.resume(base, &problem.class_assertions[n..], fresh).map_err(|_| limit.clone())? {
                Resumed::Sat(g) => return Ok(Some(g)),
                Resumed::Unsat => return Ok(None),
                Resumed::Unknown => {}
            }
        }
        let g = t.initial(&problem).map_err(|_| limit.clone())?;
        t.solve(g).map_err(|_| limit)
    }

    fn with_tableau<T>(&self, f: impl FnOnce(&Tableau) -> T) -> T {
        let table = self.table.borrow();
        let t = Tableau {
            table: &table,
            roles: &self.roles,
            universal: &self.universal,
            global_ors: &self.global_ors,
            node_limit: self.node_limit,
        };
        f(&t)
    }

    fn base(&self) -> Result<&Option<Graph>, ReasonerError> {
        if let Some(g) = self.base.get() {
            return Ok(g);
        }
        let g = self.run(&[], None)?;
        Ok(self.base.get_or_init(|| g))
    }

    pub fn is_consistent(&self) -> Result<bool, ReasonerError> {
        Ok(self.base()?.is_some())
    }

    /// A model of the knowledge base, if it has one.
    pub fn model(&self) -> Result<Option<Interpretation>, ReasonerError> {
        Ok(self.base()?.as_ref().map(|g| self.with_tableau(|t| t.extract(g, self.kb.symbols()))))
    }

    fn check_concept(&self, c: &ConceptExpr) -> Result<(), ReasonerError> {
        Ok(self.kb.validate_concept(c)?)
    }

    fn satisfiable_nnf(&self, c: &ConceptExpr) -> Result<bool, ReasonerError> {
        Ok(self.run(&[], Some(c))?.is_some())
    }

    pub fn is_satisfiable(&self, c: &ConceptExpr) -> Result<bool, ReasonerError> {
        self.check_concept(c)?;
        self.satisfiable_nnf(&c.nnf())
    }

    /// A model in which `c` has an instance (the `fresh` element).
    pub fn satisfiable_model(&self, c: &ConceptExpr) -> Result<Option<Interpretation>, ReasonerError> {
        self.check_concept(c)?;
        let g = self.run(&[], Some(&c.nnf()))?;
        Ok(g.map(|g| self.with_tableau(|t| t.extract(&g, self.kb.symbols()))))
    }

    fn subsumed_nnf(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool, ReasonerError> {
        let test = ConceptExpr::And(vec![c.nnf(), d.negated_nnf()]);
        Ok(!self.satisfiable_nnf(&test)?)
    }

    /// `kb ⊨ c ⊑ d`, decided as unsatisfiability of `c ⊓ ¬d`.
    pub fn entails_subsumption(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool, ReasonerError> {
        self.check_concept(c)?;
        self.check_concept(d)?;
        self.subsumed_nnf(c, d)
    }

    fn check_individual(&self, a: Sym) -> Result<(), ReasonerError> {
        if !self.kb.symbols().contains(a) {
            return Err(ModelError::UnknownSymbol(a.index() as u32).into());
        }
        let kind = self.kb.symbols().kind(a);
        if kind != NameKind::Individual {
            let name = self.kb.name(a).to_string();
            return Err(ModelError::KindMismatch { name, expected: NameKind::Individual, found: kind }.into());
        }
        Ok(())
    }

    /// `kb ⊨ c(a)`, decided as inconsistency of `kb ∪ {(¬c)(a)}`.
    pub fn entails_instance(&self, a: Sym, c: &ConceptExpr) -> Result<bool, ReasonerError> {
        self.check_individual(a)?;
        self.check_concept(c)?;
        Ok(self.run(&[(a, c.negated_nnf())], None)?.is_none())
    }

    fn entails_role_inclusion(&self, r: RoleExpr, s: RoleExpr) -> Result<bool, ReasonerError> {
        let m = probe_class();
        let test = ConceptExpr::And(vec![ConceptExpr::exists(r, m.clone()), ConceptExpr::for_all(s, ConceptExpr::not(m))]);
        Ok(!self.satisfiable_nnf(&test.nnf())?)
    }

    /// Whether the axiom follows from the knowledge base. Data assertions
    /// follow only if they are stated.
    pub fn entails(&self, axiom: &Axiom) -> Result<bool, ReasonerError> {
        self.kb.validate_axiom(axiom)?;
        use ConceptExpr as C;
        match axiom {
            Axiom::SubClassOf(c, d) => self.subsumed_nnf(c, d),
            Axiom::EquivalentClasses(c, d) => Ok(self.subsumed_nnf(c, d)? && self.subsumed_nnf(d, c)?),
            Axiom::DisjointClasses(names) => {
                for (i, a) in names.iter().enumerate() {
                    for b in &names[i + 1..] {
                        if !self.subsumed_nnf(&C::Named(*a), &C::not(C::Named(*b)))? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            Axiom::SubRoleOf(r, s) => self.entails_role_inclusion(*r, *s),
            Axiom::InverseRoles(p, q) => {
                let (p, q) = (RoleExpr::Named(*p), RoleExpr::Named(*q));
                Ok(self.entails_role_inclusion(p, q.inverse())? && self.entails_role_inclusion(q.inverse(), p)?)
            }
            Axiom::SymmetricRole(r) => self.entails_role_inclusion(RoleExpr::Named(*r), RoleExpr::Inverse(*r)),
            Axiom::RoleDomain(r, c) => self.subsumed_nnf(&C::exists(*r, C::Top), c),
            Axiom::RoleRange(r, c) => self.subsumed_nnf(&C::Top, &C::for_all(*r, c.clone())),
            Axiom::ClassAssertion(a, c) => self.entails_instance(*a, c),
            Axiom::RoleAssertion(a, r, b) => {
                let none = C::for_all(*r, C::not(C::Nominal(*b)));
                Ok(self.run(&[(*a, none.nnf())], None)?.is_none())
            }
            Axiom::DataAssertion { .. } => Ok(self.kb.axioms().contains(axiom)),
        }
    }

    /// Computes (once) the class hierarchy.
    pub fn classify(&self) -> Result<&Taxonomy, ReasonerError> {
        if let Some(t) = self.taxonomy.get() {
            return Ok(t);
        }
        if !self.is_consistent()? {
            return Err(ReasonerError::Inconsistent);
        }
        let mut classes: Vec<Sym> = self.kb.classes().collect();
        classes.sort_by(|a, b| self.kb.name(*a).cmp(self.kb.name(*b)));

        // Classes equivalent to top: only those the plain model puts on a
        // fresh element can qualify.
        let mut top_equivalent = BTreeSet::new();
        if let Some(g) = self.run(&[], Some(&ConceptExpr::Top))? {
            for b in self.with_tableau(|t| t.fresh_atoms(&g)) {
                if self.kb.symbols().contains(b) && self.subsumed_nnf(&ConceptExpr::Top, &ConceptExpr::Named(b))? {
                    top_equivalent.insert(b);
                }
            }
        }

        let mut unsatisfiable = BTreeSet::new();
        let mut supers: BTreeMap<Sym, BTreeSet<Sym>> = BTreeMap::new();
        let mut candidates: BTreeMap<Sym, Vec<Sym>> = BTreeMap::new();
        for &a in &classes {
            match self.run(&[], Some(&ConceptExpr::Named(a)))? {
                None => {
                    unsatisfiable.insert(a);
                }
                Some(g) => {
                    // A class missing from this model's root is not a subsumer.
                    let atoms = self.with_tableau(|t| t.fresh_atoms(&g));
                    candidates.insert(a, atoms.into_iter().filter(|b| *b != a && self.kb.symbols().contains(*b)).collect());
                }
            }
        }
        for &a in &classes {
            let Some(cands) = candidates.get(&a) else { continue };
            let mut found = BTreeSet::new();
            for &b in cands {
                if top_equivalent.contains(&b) || self.subsumed_nnf(&ConceptExpr::Named(a), &ConceptExpr::Named(b))? {
                    found.insert(b);
                }
            }
            supers.insert(a, found);
        }
        let tax = Taxonomy::build(self.kb, &classes, &supers, &unsatisfiable, &top_equivalent);
        Ok(self.taxonomy.get_or_init(|| tax))
    }

    /// All named classes `C` with `kb ⊨ C(a)`.
    pub fn types(&self, a: Sym) -> Result<BTreeSet<Sym>, ReasonerError> {
        self.check_individual(a)?;
        let Some(g) = self.base()? else { return Err(ReasonerError::Inconsistent) };
        let candidates = self.with_tableau(|t| t.individual_atoms(g, a));
        let mut out = BTreeSet::new();
        for c in candidates {
            if self.kb.symbols().contains(c) && self.run(&[(a, ConceptExpr::not(ConceptExpr::Named(c)))], None)?.is_none() {
                out.insert(c);
            }
        }
        // Classes equivalent to top hold everywhere but need not be in labels.
        let tax = self.classify()?;
        out.extend(tax.node(tax.top()).classes.iter().copied());
        Ok(out)
    }

    /// Most specific named classes of `a`, sorted by name. Equivalent classes
    /// are all reported.
    pub fn realize(&self, a: Sym) -> Result<Vec<Sym>, ReasonerError> {
        let types = self.types(a)?;
        let tax = self.classify()?;
        let mut out: Vec<Sym> = types
            .iter()
            .copied()
            .filter(|&c| !types.iter().any(|&d| tax.node_of(d) != tax.node_of(c) && tax.subsumes(d, c)))
            .collect();
        out.sort_by(|x, y| self.kb.name(*x).cmp(self.kb.name(*y)));
        Ok(out)
    }
}

pub fn is_consistent(kb: &KnowledgeBase) -> Result<bool, ReasonerError> {
    Reasoner::new(kb).is_consistent()
}

pub fn is_satisfiable(kb: &KnowledgeBase, c: &ConceptExpr) -> Result<bool, ReasonerError> {
    Reasoner::new(kb).is_satisfiable(c)
}

pub fn entails_subsumption(kb: &KnowledgeBase, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool, ReasonerError> {
    Reasoner::new(kb).entails_subsumption(c, d)
}

pub fn entails_instance(kb: &KnowledgeBase, a: Sym, c: &ConceptExpr) -> Result<bool, ReasonerError> {
    Reasoner::new(kb).entails_instance(a, c)
}

pub fn classify(kb: &KnowledgeBase) -> Result<Taxonomy, ReasonerError> {
    Reasoner::new(kb).classify().cloned()
}

pub fn realize(kb: &KnowledgeBase, a: Sym) -> Result<Vec<Sym>, ReasonerError> {
    Reasoner::new(kb).realize(a)
}
