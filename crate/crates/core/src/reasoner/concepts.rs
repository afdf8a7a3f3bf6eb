use std::collections::HashMap;

use crate::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr, Sym};

pub(crate) type Cid = u32;

/// A role or its inverse: `2 * sym` for the name, `2 * sym + 1` for the inverse.
pub(crate) type Lit = u32;

pub(crate) fn lit(r: RoleExpr) -> Lit {
    let base = r.name().index() as u32 * 2;
    if r.is_inverse() {
        base + 1
    } else {
        base
    }
}

pub(crate) fn inv(l: Lit) -> Lit {
    l ^ 1
}

/// Interned NNF concept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum CNode {
    Top,
    Bottom,
    Atom(Sym),
    NotAtom(Sym),
    Nom(Sym),
    NotNom(Sym),
    And(Vec<Cid>),
    Or(Vec<Cid>),
    Some(Lit, Cid),
    All(Lit, Cid),
}

#[derive(Clone, Debug, Default)]
pub(crate) struct ConceptTable {
    nodes: Vec<CNode>,
    index: HashMap<CNode, Cid>,
    complement: Vec<Option<Cid>>,
}

impl ConceptTable {
    pub fn get(&self, c: Cid) -> &CNode {
        &self.nodes[c as usize]
    }

    pub fn lookup(&self, node: &CNode) -> Option<Cid> {
        self.index.get(node).copied()
    }

    /// The interned complement of an atom or nominal (or its negation).
    pub fn complement(&self, c: Cid) -> Option<Cid> {
        self.complement[c as usize]
    }

    fn intern_node(&mut self, node: CNode) -> Cid {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Cid;
        let partner = match node {
            CNode::Atom(s) => self.index.get(&CNode::NotAtom(s)).copied(),
            CNode::NotAtom(s) => self.index.get(&CNode::Atom(s)).copied(),
            CNode::Nom(s) => self.index.get(&CNode::NotNom(s)).copied(),
            CNode::NotNom(s) => self.index.get(&CNode::Nom(s)).copied(),
            _ => None,
        };
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        self.complement.push(partner);
        if let Some(p) = partner {
            self.complement[p as usize] = Some(id);
        }
        id
    }

    /// Interns an NNF concept, flattening nested `and`/`or` and dropping
    /// neutral operands.
    pub fn intern(&mut self, c: &ConceptExpr) -> Cid {
        match c {
            ConceptExpr::Top => self.intern_node(CNode::Top),
            ConceptExpr::Bottom => self.intern_node(CNode::Bottom),
            ConceptExpr::Named(s) => self.intern_node(CNode::Atom(*s)),
            ConceptExpr::Nominal(s) => self.intern_node(CNode::Nom(*s)),
            ConceptExpr::Not(inner) => match &**inner {
                ConceptExpr::Named(s) => self.intern_node(CNode::NotAtom(*s)),
                ConceptExpr::Nominal(s) => {
                    // roots carry their nominal only if it is interned
                    self.intern_node(CNode::Nom(*s));
                    self.intern_node(CNode::NotNom(*s))
                }
                other => {
                    let n = other.negated_nnf();
                    self.intern(&n)
                }
            },
            ConceptExpr::And(cs) => {
                let mut parts = Vec::new();
                for child in cs {
                    let id = self.intern(child);
                    match self.get(id) {
                        CNode::Top => {}
                        CNode::Bottom => return self.intern_node(CNode::Bottom),
                        CNode::And(inner) => {
                            for &i in inner {
                                if !parts.contains(&i) {
                                    parts.push(i);
                                }
                            }
                        }
                        _ => {
                            if !parts.contains(&id) {
                                parts.push(id);
                            }
                        }
                    }
                }
                match parts.len() {
                    0 => self.intern_node(CNode::Top),
                    1 => parts[0],
                    _ => self.intern_node(CNode::And(parts)),
                }
            }
            ConceptExpr::Or(cs) => {
                let parts = self.or_parts(cs);
                match parts {
                    None => self.intern_node(CNode::Top),
                    Some(p) if p.is_empty() => self.intern_node(CNode::Bottom),
                    Some(p) if p.len() == 1 => p[0],
                    Some(p) => self.intern_node(CNode::Or(p)),
                }
            }
            ConceptExpr::Exists(r, inner) => {
                let f = self.intern(inner);
                if *self.get(f) == CNode::Bottom {
                    return self.intern_node(CNode::Bottom);
                }
                self.intern_node(CNode::Some(lit(*r), f))
            }
            ConceptExpr::ForAll(r, inner) => {
                let f = self.intern(inner);
                if *self.get(f) == CNode::Top {
                    return self.intern_node(CNode::Top);
                }
                self.intern_node(CNode::All(lit(*r), f))
            }
        }
    }

    /// Flattened disjuncts; `None` if one of them is `top`.
    fn or_parts(&mut self, cs: &[ConceptExpr]) -> Option<Vec<Cid>> {
        let mut parts = Vec::new();
        for child in cs {
            let id = self.intern(child);
            match self.get(id) {
                CNode::Top => return None,
                CNode::Bottom => {}
                CNode::Or(inner) => {
                    for &i in inner {
                        if !parts.contains(&i) {
                            parts.push(i);
                        }
                    }
                }
                _ => {
                    if !parts.contains(&id) {
                        parts.push(id);
                    }
                }
            }
        }
        Some(parts)
    }
}

/// Reflexive-transitive closure of role inclusion over role literals.
#[derive(Clone, Debug)]
pub(crate) struct RoleHierarchy {
    width: usize,
    bits: Vec<u64>,
}

impl RoleHierarchy {
    pub fn new(kb: &KnowledgeBase) -> RoleHierarchy {
        let width = kb.symbols().len() * 2;
        let words = width.div_ceil(64);
        let mut h = RoleHierarchy { width, bits: vec![0; width * words] };
        for l in 0..width as Lit {
            h.set(l, l);
        }
        let mut edges: Vec<(Lit, Lit)> = Vec::new();
        let mut both = |a: Lit, b: Lit| {
            edges.push((a, b));
            edges.push((inv(a), inv(b)));
        };
        for ax in kb.axioms() {
            match *ax {
                Axiom::SubRoleOf(r, s) => both(lit(r), lit(s)),
                Axiom::InverseRoles(p, q) => {
                    let (p, q) = (lit(RoleExpr::Named(p)), lit(RoleExpr::Named(q)));
                    both(p, inv(q));
                    both(inv(q), p);
                }
                Axiom::SymmetricRole(r) => {
                    let r = lit(RoleExpr::Named(r));
                    both(r, inv(r));
                }
                _ => {}
            }
        }
        for (a, b) in edges {
            h.set(a, b);
        }
        // Warshall over bit rows
        for k in 0..width {
            for i in 0..width {
                if h.get(i as Lit, k as Lit) {
                    for w in 0..words {
                        let kw = h.bits[k * words + w];
                        h.bits[i * words + w] |= kw;
                    }
                }
            }
        }
        h
    }

    fn words(&self) -> usize {
        self.width.div_ceil(64)
    }

    fn set(&mut self, sub: Lit, sup: Lit) {
        let w = self.words();
        self.bits[sub as usize * w + sup as usize / 64] |= 1 << (sup % 64);
    }

    /// `sub ⊑* sup`
    pub fn get(&self, sub: Lit, sup: Lit) -> bool {
        let (sub, sup) = (sub as usize, sup as usize);
        if sub >= self.width || sup >= self.width {
            return sub == sup;
        }
        self.bits[sub * self.words() + sup / 64] >> (sup % 64) & 1 == 1
    }

    pub fn supers(&self, sub: Lit) -> impl Iterator<Item = Lit> + '_ {
        (0..self.width as Lit).filter(move |&s| self.get(sub, s))
    }
}
