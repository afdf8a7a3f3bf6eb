use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::ControlFlow;

use defectont::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr, Sym};
use defectont::reasoner::Interpretation;

use crate::OracleError;

/// Largest domain size the bitmask encoding supports (d² role bits in a u64).
pub const MAX_DOMAIN: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent(Interpretation),
    NoModelUpTo(usize),
}

/// Concepts compiled against dense class/role indices.
enum Cc {
    Top,
    Bottom,
    Class(usize),
    Not(Box<Cc>),
    And(Vec<Cc>),
    Or(Vec<Cc>),
    Some(usize, bool, Box<Cc>),
    All(usize, bool, Box<Cc>),
}

enum Ca {
    Sub(Cc, Cc),
    Equiv(Cc, Cc),
    Disjoint(Vec<usize>),
    SubRole((usize, bool), (usize, bool)),
    Inverse(usize, usize),
    Symmetric(usize),
    Domain((usize, bool), Cc),
    Range((usize, bool), Cc),
    Instance(usize, Cc),
    Related(usize, (usize, bool), usize),
}

struct Space {
    classes: Vec<Sym>,
    roles: Vec<Sym>,
    individuals: Vec<Sym>,
    axioms: Vec<Ca>,
    query: Option<Cc>,
}

fn collect(c: &ConceptExpr, classes: &mut BTreeSet<Sym>, roles: &mut BTreeSet<Sym>) -> Result<(), OracleError> {
    match c {
        ConceptExpr::Top | ConceptExpr::Bottom => {}
        ConceptExpr::Named(s) => {
            classes.insert(*s);
        }
        ConceptExpr::Nominal(_) => return Err(OracleError::Nominal),
        ConceptExpr::Not(inner) => collect(inner, classes, roles)?,
        ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
            for child in cs {
                collect(child, classes, roles)?;
            }
        }
        ConceptExpr::Exists(r, inner) | ConceptExpr::ForAll(r, inner) => {
            roles.insert(r.name());
            collect(inner, classes, roles)?;
        }
    }
    Ok(())
}

impl Space {
    /// Only names that occur in axioms (or the query) get extensions; the
    /// rest can be empty in any model.
    fn new(kb: &KnowledgeBase, query: Option<&ConceptExpr>) -> Result<Space, OracleError> {
        let mut classes = BTreeSet::new();
        let mut roles = BTreeSet::new();
        for ax in kb.axioms() {
            match ax {
                Axiom::SubClassOf(c, d) | Axiom::EquivalentClasses(c, d) => {
                    collect(c, &mut classes, &mut roles)?;
                    collect(d, &mut classes, &mut roles)?;
                }
                Axiom::DisjointClasses(ns) => classes.extend(ns.iter().copied()),
                Axiom::SubRoleOf(r, s) => {
                    roles.insert(r.name());
                    roles.insert(s.name());
                }
                Axiom::InverseRoles(p, q) => {
                    roles.insert(*p);
                    roles.insert(*q);
                }
                Axiom::SymmetricRole(r) => {
                    roles.insert(*r);
                }
                Axiom::RoleDomain(r, c) | Axiom::RoleRange(r, c) => {
                    roles.insert(r.name());
                    collect(c, &mut classes, &mut roles)?;
                }
                Axiom::ClassAssertion(_, c) => collect(c, &mut classes, &mut roles)?,
                Axiom::RoleAssertion(_, r, _) => {
                    roles.insert(r.name());
                }
                Axiom::DataAssertion { .. } => return Err(OracleError::DataAssertion),
            }
        }
        if let Some(q) = query {
            collect(q, &mut classes, &mut roles)?;
        }
        let mut space = Space {
            classes: classes.into_iter().collect(),
            roles: roles.into_iter().collect(),
            individuals: kb.individuals().collect(),
            axioms: Vec::new(),
            query: None,
        };
        let ci: HashMap<Sym, usize> = space.classes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let ri: HashMap<Sym, usize> = space.roles.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let ii: HashMap<Sym, usize> = space.individuals.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let role = |r: RoleExpr| (ri[&r.name()], r.is_inverse());
        fn compile(c: &ConceptExpr, ci: &HashMap<Sym, usize>, ri: &HashMap<Sym, usize>) -> Cc {
            match c {
                ConceptExpr::Top => Cc::Top,
                ConceptExpr::Bottom => Cc::Bottom,
                ConceptExpr::Named(s) => Cc::Class(ci[s]),
                ConceptExpr::Nominal(_) => unreachable!("rejected while collecting"),
                ConceptExpr::Not(inner) => Cc::Not(Box::new(compile(inner, ci, ri))),
                ConceptExpr::And(cs) => Cc::And(cs.iter().map(|x| compile(x, ci, ri)).collect()),
                ConceptExpr::Or(cs) => Cc::Or(cs.iter().map(|x| compile(x, ci, ri)).collect()),
                ConceptExpr::Exists(r, inner) => Cc::Some(ri[&r.name()], r.is_inverse(), Box::new(compile(inner, ci, ri))),
                ConceptExpr::ForAll(r, inner) => Cc::All(ri[&r.name()], r.is_inverse(), Box::new(compile(inner, ci, ri))),
            }
        }
        let cc = |c: &ConceptExpr| compile(c, &ci, &ri);
        for ax in kb.axioms() {
            space.axioms.push(match ax {
                Axiom::SubClassOf(c, d) => Ca::Sub(cc(c), cc(d)),
                Axiom::EquivalentClasses(c, d) => Ca::Equiv(cc(c), cc(d)),
                Axiom::DisjointClasses(ns) => Ca::Disjoint(ns.iter().map(|n| ci[n]).collect()),
                Axiom::SubRoleOf(r, s) => Ca::SubRole(role(*r), role(*s)),
                Axiom::InverseRoles(p, q) => Ca::Inverse(ri[p], ri[q]),
                Axiom::SymmetricRole(r) => Ca::Symmetric(ri[r]),
                Axiom::RoleDomain(r, c) => Ca::Domain(role(*r), cc(c)),
                Axiom::RoleRange(r, c) => Ca::Range(role(*r), cc(c)),
                Axiom::ClassAssertion(a, c) => Ca::Instance(ii[a], cc(c)),
                Axiom::RoleAssertion(a, r, b) => Ca::Related(ii[a], role(*r), ii[b]),
                Axiom::DataAssertion { .. } => unreachable!("rejected while collecting"),
            });
        }
        space.query = query.map(cc);
        Ok(space)
    }
}

/// One candidate interpretation over `0..d`.
struct State {
    d: usize,
    full: u64,
    classes: Vec<u64>,
    /// `rel[r]` bit `x * d + y` means (x, y) ∈ r.
    rel: Vec<u64>,
    ind: Vec<usize>,
}

impl State {
    fn related(&self, r: usize, inverse: bool, x: usize, y: usize) -> bool {
        let (a, b) = if inverse { (y, x) } else { (x, y) };
        self.rel[r] >> (a * self.d + b) & 1 == 1
    }

    fn successors(&self, r: usize, inverse: bool, x: usize) -> u64 {
        (0..self.d).filter(|&y| self.related(r, inverse, x, y)).fold(0, |m, y| m | 1 << y)
    }

    fn ext(&self, c: &Cc) -> u64 {
        match c {
            Cc::Top => self.full,
            Cc::Bottom => 0,
            Cc::Class(i) => self.classes[*i],
            Cc::Not(inner) => !self.ext(inner) & self.full,
            Cc::And(cs) => cs.iter().fold(self.full, |m, x| m & self.ext(x)),
            Cc::Or(cs) => cs.iter().fold(0, |m, x| m | self.ext(x)),
            Cc::Some(r, inv, inner) => {
                let t = self.ext(inner);
                (0..self.d).filter(|&x| self.successors(*r, *inv, x) & t != 0).fold(0, |m, x| m | 1 << x)
            }
            Cc::All(r, inv, inner) => {
                let t = self.ext(inner);
                (0..self.d).filter(|&x| self.successors(*r, *inv, x) & !t == 0).fold(0, |m, x| m | 1 << x)
            }
        }
    }

    fn pairs_of(&self, (r, inv): (usize, bool)) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.d {
            for y in 0..self.d {
                if self.related(r, inv, x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn role_axiom_ok(&self, ax: &Ca) -> bool {
        match ax {
            Ca::SubRole(r, s) => self.pairs_of(*r).iter().all(|&(x, y)| self.related(s.0, s.1, x, y)),
            Ca::Inverse(p, q) => self.pairs_of((*p, false)) == self.pairs_of((*q, true)),
            Ca::Symmetric(r) => self.pairs_of((*r, false)) == self.pairs_of((*r, true)),
            Ca::Related(a, r, b) => self.related(r.0, r.1, self.ind[*a], self.ind[*b]),
            _ => true,
        }
    }

    fn class_axiom_ok(&self, ax: &Ca) -> bool {
        match ax {
            Ca::Sub(c, d) => self.ext(c) & !self.ext(d) == 0,
            Ca::Equiv(c, d) => self.ext(c) == self.ext(d),
            Ca::Disjoint(ns) => ns.iter().enumerate().all(|(i, a)| ns[i + 1..].iter().all(|b| self.classes[*a] & self.classes[*b] == 0)),
            Ca::Domain(r, c) => {
                let e = self.ext(c);
                self.pairs_of(*r).iter().all(|&(x, _)| e >> x & 1 == 1)
            }
            Ca::Range(r, c) => {
                let e = self.ext(c);
                self.pairs_of(*r).iter().all(|&(_, y)| e >> y & 1 == 1)
            }
            Ca::Instance(a, c) => self.ext(c) >> self.ind[*a] & 1 == 1,
            _ => true,
        }
    }

    /// Encoding under a domain permutation, for isomorphism filtering.
    fn encode(&self, perm: &[usize]) -> Vec<u64> {
        let mut out = Vec::new();
        for &m in &self.classes {
            out.push((0..self.d).filter(|&x| m >> x & 1 == 1).fold(0, |acc, x| acc | 1 << perm[x]));
        }
        for &m in &self.rel {
            let mut pm = 0u64;
            for x in 0..self.d {
                for y in 0..self.d {
                    if m >> (x * self.d + y) & 1 == 1 {
                        pm |= 1 << (perm[x] * self.d + perm[y]);
                    }
                }
            }
            out.push(pm);
        }
        out.extend(self.ind.iter().map(|&i| perm[i] as u64));
        out
    }

    fn is_canonical(&self, perms: &[Vec<usize>]) -> bool {
        let mine = self.encode(&perms[0]);
        perms[1..].iter().all(|p| self.encode(p) >= mine)
    }

    fn to_interpretation(&self, space: &Space) -> Interpretation {
        let mut classes = BTreeMap::new();
        for (i, s) in space.classes.iter().enumerate() {
            classes.insert(*s, (0..self.d).filter(|&x| self.classes[i] >> x & 1 == 1).collect());
        }
        let mut roles = BTreeMap::new();
        for (i, s) in space.roles.iter().enumerate() {
            roles.insert(*s, self.pairs_of((i, false)).into_iter().collect());
        }
        let individuals = space.individuals.iter().zip(&self.ind).map(|(a, &x)| (*a, x)).collect();
        let fresh = space.query.as_ref().map(|q| self.ext(q).trailing_zeros() as usize);
        Interpretation { size: self.d, classes, roles, individuals, fresh }
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// Advances a mixed-radix counter; false once it wraps around.
fn step(digits: &mut [u64], radix: u64) -> bool {
    for x in digits.iter_mut() {
        *x += 1;
        if *x < radix {
            return true;
        }
        *x = 0;
    }
    false
}

fn search(
    space: &Space,
    max: usize,
    visit: &mut dyn FnMut(Interpretation) -> ControlFlow<()>,
) -> Result<(), OracleError> {
    if max > MAX_DOMAIN {
        return Err(OracleError::DomainTooLarge(max));
    }
    for d in 1..=max {
        let perms = permutations(d);
        let full = (1u64 << d) - 1;
        let mut st = State { d, full, classes: vec![0; space.classes.len()], rel: vec![0; space.roles.len()], ind: vec![0; space.individuals.len()] };
        let role_radix = 1u64 << (d * d);
        let mut rel = vec![0u64; space.roles.len()];
        loop {
            st.rel.copy_from_slice(&rel);
            let mut ind = vec![0u64; space.individuals.len()];
            loop {
                for (slot, &v) in st.ind.iter_mut().zip(&ind) {
                    *slot = v as usize;
                }
                if space.axioms.iter().all(|a| st.role_axiom_ok(a)) {
                    let mut cls = vec![0u64; space.classes.len()];
                    loop {
                        st.classes.copy_from_slice(&cls);
                        let query_ok = space.query.as_ref().map_or(true, |q| st.ext(q) != 0);
                        if query_ok && space.axioms.iter().all(|a| st.class_axiom_ok(a)) && st.is_canonical(&perms) {
                            if let ControlFlow::Break(()) = visit(st.to_interpretation(space)) {
                                return Ok(());
                            }
                        }
                        if !step(&mut cls, 1u64 << d) {
                            break;
                        }
                    }
                }
                if !step(&mut ind, d as u64) {
                    break;
                }
            }
            if !step(&mut rel, role_radix) {
                break;
            }
        }
    }
    Ok(())
}

/// Calls `visit` for every model of `kb` with at most `max` elements, one
/// per isomorphism class, smallest domains first. Names that occur in no
/// axiom are left out of the returned interpretations.
pub fn enumerate_models(
    kb: &KnowledgeBase,
    max: usize,
    mut visit: impl FnMut(Interpretation) -> ControlFlow<()>,
) -> Result<(), OracleError> {
    let space = Space::new(kb, None)?;
    search(&space, max, &mut visit)
}

fn first_model(kb: &KnowledgeBase, bound: usize, query: Option<&ConceptExpr>) -> Result<Verdict, OracleError> {
    let space = Space::new(kb, query)?;
    let mut found = None;
    search(&space, bound, &mut |m| {
        found = Some(m);
        ControlFlow::Break(())
    })?;
    Ok(match found {
        Some(m) => Verdict::Consistent(m),
        None => Verdict::NoModelUpTo(bound),
    })
}

pub fn oracle_consistent(kb: &KnowledgeBase, bound: usize) -> Result<Verdict, OracleError> {
    first_model(kb, bound, None)
}

/// Searches for a model in which `c` is non-empty; `fresh` marks a witness.
pub fn oracle_satisfiable(kb: &KnowledgeBase, c: &ConceptExpr, bound: usize) -> Result<Verdict, OracleError> {
    first_model(kb, bound, Some(c))
}

/// Number of interpretations of size exactly `d` the search visits.
pub fn search_cost(kb: &KnowledgeBase, query: Option<&ConceptExpr>, d: usize) -> Result<f64, OracleError> {
    let space = Space::new(kb, query)?;
    let (c, r, i) = (space.classes.len() as f64, space.roles.len() as f64, space.individuals.len() as i32);
    let d = d as f64;
    Ok(2f64.powf(c * d) * 2f64.powf(r * d * d) * d.powi(i))
}

/// Largest domain size whose cumulative search cost stays within `budget`
/// (at least 1, at most `cap`).
pub fn bound_for(kb: &KnowledgeBase, query: Option<&ConceptExpr>, budget: f64, cap: usize) -> Result<usize, OracleError> {
    let mut total = 0.0;
    let mut best = 1;
    for d in 1..=cap.min(MAX_DOMAIN) {
        total += search_cost(kb, query, d)?;
        if total > budget {
            break;
        }
        best = d;
    }
    Ok(best)
}
