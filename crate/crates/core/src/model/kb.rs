use std::collections::{BTreeSet, HashMap};

use super::{AttrType, Axiom, ConceptExpr, Literal, ModelError, NameKind, RoleExpr, Sym, SymbolTable};
use crate::measures::UnitRegistry;

pub(crate) const RESERVED: &[&str] = &["top", "bot"];

/// Declared names, partitioned by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub classes: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub attributes: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_mut(&mut self, kind: NameKind) -> &mut BTreeSet<String> {
        match kind {
            NameKind::Class => &mut self.classes,
            NameKind::Role => &mut self.roles,
            NameKind::Attribute => &mut self.attributes,
            NameKind::Individual => &mut self.individuals,
        }
    }

    pub fn set(&self, kind: NameKind) -> &BTreeSet<String> {
        match kind {
            NameKind::Class => &self.classes,
            NameKind::Role => &self.roles,
            NameKind::Attribute => &self.attributes,
            NameKind::Individual => &self.individuals,
        }
    }

    pub fn insert(&mut self, kind: NameKind, name: &str) {
        self.set_mut(kind).insert(name.to_string());
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names().any(|n| n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().chain(&self.roles).chain(&self.attributes).chain(&self.individuals).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.classes.len() + self.roles.len() + self.attributes.len() + self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.classes.is_subset(&other.classes)
            && self.roles.is_subset(&other.roles)
            && self.attributes.is_subset(&other.attributes)
            && self.individuals.is_subset(&other.individuals)
    }
}

/// Merged TBox + RBox + ABox. Every axiom carries the name of the module it
/// came from.
///
/// All mutators validate, so a `KnowledgeBase` is well-formed at every point.
#[derive(Clone, Debug, Default)]
pub struct KnowledgeBase {
    symbols: SymbolTable,
    axioms: Vec<Axiom>,
    origins: Vec<String>,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub(crate) fn symbols_mut(&mut self) -> &mut SymbolTable {
        &mut self.symbols
    }

    pub fn declare(&mut self, name: &str, kind: NameKind) -> Result<Sym, ModelError> {
        check_name(name)?;
        self.symbols.declare(name, kind)
    }

    pub fn declare_attribute(&mut self, name: &str, ty: AttrType) -> Result<Sym, ModelError> {
        check_name(name)?;
        self.symbols.declare_attribute(name, ty)
    }

    /// Appends a validated axiom tagged with `origin`.
    pub fn add_axiom(&mut self, axiom: Axiom, origin: &str) -> Result<(), ModelError> {
        self.validate_axiom(&axiom)?;
        self.axioms.push(axiom);
        self.origins.push(origin.to_string());
        Ok(())
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn origin(&self, index: usize) -> &str {
        &self.origins[index]
    }

    pub fn axioms_with_origin(&self) -> impl Iterator<Item = (&Axiom, &str)> {
        self.axioms.iter().zip(self.origins.iter().map(String::as_str))
    }

    pub fn name(&self, sym: Sym) -> &str {
        self.symbols.name(sym)
    }

    pub fn class(&self, name: &str) -> Result<Sym, ModelError> {
        self.symbols.resolve(name, NameKind::Class)
    }

    pub fn role(&self, name: &str) -> Result<Sym, ModelError> {
        self.symbols.resolve(name, NameKind::Role)
    }

    pub fn individual(&self, name: &str) -> Result<Sym, ModelError> {
        self.symbols.resolve(name, NameKind::Individual)
    }

    pub fn attribute(&self, name: &str) -> Result<Sym, ModelError> {
        self.symbols.resolve(name, NameKind::Attribute)
    }

    pub fn classes(&self) -> impl Iterator<Item = Sym> + '_ {
        self.symbols.of_kind(NameKind::Class)
    }

    pub fn roles(&self) -> impl Iterator<Item = Sym> + '_ {
        self.symbols.of_kind(NameKind::Role)
    }

    pub fn individuals(&self) -> impl Iterator<Item = Sym> + '_ {
        self.symbols.of_kind(NameKind::Individual)
    }

    fn expect_kind(&self, sym: Sym, kind: NameKind) -> Result<(), ModelError> {
        if !self.symbols.contains(sym) {
            return Err(ModelError::UnknownSymbol(sym.index() as u32));
        }
        let found = self.symbols.kind(sym);
        if found != kind {
            return Err(ModelError::KindMismatch { name: self.symbols.name(sym).to_string(), expected: kind, found });
        }
        Ok(())
    }

    fn validate_role(&self, r: RoleExpr) -> Result<(), ModelError> {
        self.expect_kind(r.name(), NameKind::Role)
    }

    pub fn validate_concept(&self, c: &ConceptExpr) -> Result<(), ModelError> {
        c.check_arity()?;
        match c {
            ConceptExpr::Top | ConceptExpr::Bottom => Ok(()),
            ConceptExpr::Named(s) => self.expect_kind(*s, NameKind::Class),
            ConceptExpr::Nominal(s) => self.expect_kind(*s, NameKind::Individual),
            ConceptExpr::Not(inner) => self.validate_concept(inner),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => cs.iter().try_for_each(|c| self.validate_concept(c)),
            ConceptExpr::Exists(r, inner) | ConceptExpr::ForAll(r, inner) => {
                self.validate_role(*r)?;
                self.validate_concept(inner)
            }
        }
    }

    pub fn validate_axiom(&self, axiom: &Axiom) -> Result<(), ModelError> {
        match axiom {
            Axiom::SubClassOf(c, d) | Axiom::EquivalentClasses(c, d) => {
                self.validate_concept(c)?;
                self.validate_concept(d)
            }
            Axiom::DisjointClasses(names) => {
                if names.len() < 2 {
                    return Err(ModelError::Arity { constructor: "disjoint", found: names.len() });
                }
                names.iter().try_for_each(|s| self.expect_kind(*s, NameKind::Class))
            }
            Axiom::SubRoleOf(r, s) => {
                self.validate_role(*r)?;
                self.validate_role(*s)
            }
            Axiom::InverseRoles(r, s) => {
                self.expect_kind(*r, NameKind::Role)?;
                self.expect_kind(*s, NameKind::Role)
            }
            Axiom::SymmetricRole(r) => self.expect_kind(*r, NameKind::Role),
            Axiom::RoleDomain(r, c) | Axiom::RoleRange(r, c) => {
                self.validate_role(*r)?;
                self.validate_concept(c)
            }
            Axiom::ClassAssertion(a, c) => {
                self.expect_kind(*a, NameKind::Individual)?;
                self.validate_concept(c)
            }
            Axiom::RoleAssertion(a, r, b) => {
                self.expect_kind(*a, NameKind::Individual)?;
                self.validate_role(*r)?;
                self.expect_kind(*b, NameKind::Individual)
            }
            Axiom::DataAssertion { individual, attribute, value, unit } => {
                self.expect_kind(*individual, NameKind::Individual)?;
                self.expect_kind(*attribute, NameKind::Attribute)?;
                let name = self.symbols.name(*attribute).to_string();
                let ty = self.symbols.attr_type(*attribute).unwrap_or(AttrType::Decimal);
                match (ty, value) {
                    (AttrType::Decimal, Literal::Decimal(_)) => {}
                    (AttrType::String, Literal::Text(_)) => {}
                    (expected, _) => return Err(ModelError::LiteralType { attribute: name, expected }),
                }
                if let Some(u) = unit {
                    if ty == AttrType::String {
                        return Err(ModelError::UnitOnString(name));
                    }
                    UnitRegistry::standard().get(u).map_err(|_| ModelError::UnknownUnit(u.clone()))?;
                }
                Ok(())
            }
        }
    }

    /// Exactly the declared names, partitioned by kind.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (_, name, kind) in self.symbols.iter() {
            sig.insert(kind, name);
        }
        sig
    }

    /// Rewrites the TBox into `SubClassOf` GCIs: equivalences split in two,
    /// disjointness expanded pairwise, domain/range turned into GCIs and
    /// symmetry expressed as self-inverse. ABox and other RBox axioms pass
    /// through unchanged.
    pub fn to_gcis(&self) -> KnowledgeBase {
        let mut out = KnowledgeBase { symbols: self.symbols.clone(), axioms: Vec::new(), origins: Vec::new() };
        let mut push = |ax: Axiom, origin: &str| {
            out.axioms.push(ax);
            out.origins.push(origin.to_string());
        };
        for (ax, origin) in self.axioms_with_origin() {
            match ax {
                Axiom::EquivalentClasses(c, d) => {
                    push(Axiom::SubClassOf(c.clone(), d.clone()), origin);
                    push(Axiom::SubClassOf(d.clone(), c.clone()), origin);
                }
                Axiom::DisjointClasses(names) => {
                    for (i, a) in names.iter().enumerate() {
                        for b in &names[i + 1..] {
                            let both = ConceptExpr::And(vec![ConceptExpr::Named(*a), ConceptExpr::Named(*b)]);
                            push(Axiom::SubClassOf(both, ConceptExpr::Bottom), origin);
                        }
                    }
                }
                Axiom::RoleDomain(r, c) => push(Axiom::SubClassOf(ConceptExpr::exists(*r, ConceptExpr::Top), c.clone()), origin),
                Axiom::RoleRange(r, c) => push(Axiom::SubClassOf(ConceptExpr::Top, ConceptExpr::for_all(*r, c.clone())), origin),
                Axiom::SymmetricRole(r) => push(Axiom::InverseRoles(*r, *r), origin),
                other => push(other.clone(), origin),
            }
        }
        out
    }

    /// Structural equality by name: same declarations (kind and attribute
    /// type) and the same axiom list. With `ordered == false` the axiom lists
    /// are compared as multisets.
    pub fn same_structure(&self, other: &KnowledgeBase, ordered: bool) -> bool {
        if self.symbols.len() != other.symbols.len() {
            return false;
        }
        let mut remap: HashMap<Sym, Sym> = HashMap::new();
        for (sym, name, kind) in other.symbols.iter() {
            match self.symbols.lookup(name) {
                Some(mine) if self.symbols.kind(mine) == kind && self.symbols.attr_type(mine) == other.symbols.attr_type(sym) => {
                    remap.insert(sym, mine);
                }
                _ => return false,
            }
        }
        let theirs: Vec<Axiom> = other.axioms.iter().map(|a| a.map_syms(&mut |s| remap[&s])).collect();
        if ordered {
            return self.axioms == theirs;
        }
        if self.axioms.len() != theirs.len() {
            return false;
        }
        let mut used = vec![false; theirs.len()];
        self.axioms.iter().all(|a| match theirs.iter().enumerate().position(|(i, b)| !used[i] && a == b) {
            Some(i) => {
                used[i] = true;
                true
            }
            None => false,
        })
    }
}

fn check_name(name: &str) -> Result<(), ModelError> {
    if RESERVED.contains(&name) {
        return Err(ModelError::Reserved(name.to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rust_decimal::Decimal;

    fn small() -> (KnowledgeBase, Sym, Sym, Sym, Sym) {
        let mut kb = KnowledgeBase::new();
        let a = kb.declare("A", NameKind::Class).unwrap();
        let b = kb.declare("B", NameKind::Class).unwrap();
        let r = kb.declare("r", NameKind::Role).unwrap();
        let d = kb.declare("d", NameKind::Individual).unwrap();
        (kb, a, b, r, d)
    }

    #[test]
    fn empty_signature() {
        assert!(KnowledgeBase::new().signature().is_empty());
    }

    #[test]
    fn one_class_signature() {
        let mut kb = KnowledgeBase::new();
        kb.declare("Defect", NameKind::Class).unwrap();
        let sig = kb.signature();
        assert_eq!(sig.classes.iter().collect::<Vec<_>>(), vec!["Defect"]);
        assert_eq!(sig.len(), 1);
    }

    #[test]
    fn axioms_are_validated() {
        let (mut kb, a, _, r, d) = small();
        let bad = Axiom::SubClassOf(ConceptExpr::Named(r), ConceptExpr::Named(a));
        assert!(matches!(kb.add_axiom(bad, "m"), Err(ModelError::KindMismatch { .. })));
        let bad = Axiom::ClassAssertion(a, ConceptExpr::Named(a));
        assert!(kb.add_axiom(bad, "m").is_err());
        let bad = Axiom::SubClassOf(ConceptExpr::Named(Sym::from_raw(99)), ConceptExpr::Top);
        assert!(matches!(kb.add_axiom(bad, "m"), Err(ModelError::UnknownSymbol(99))));
        let bad = Axiom::DisjointClasses(vec![a]);
        assert!(kb.add_axiom(bad, "m").is_err());
        assert!(kb.add_axiom(Axiom::ClassAssertion(d, ConceptExpr::Named(a)), "m").is_ok());
    }

    #[test]
    fn data_assertions_are_typed() {
        let (mut kb, _, _, _, d) = small();
        let len = kb.declare_attribute("hasLength", AttrType::Decimal).unwrap();
        let label = kb.declare_attribute("label", AttrType::String).unwrap();
        let ok = Axiom::DataAssertion { individual: d, attribute: len, value: Literal::Decimal(Decimal::new(15, 1)), unit: Some("mm".into()) };
        assert!(kb.add_axiom(ok, "m").is_ok());
        let bad_unit = Axiom::DataAssertion { individual: d, attribute: len, value: Literal::Decimal(Decimal::ONE), unit: Some("ft".into()) };
        assert_eq!(kb.add_axiom(bad_unit, "m"), Err(ModelError::UnknownUnit("ft".into())));
        let bad_type = Axiom::DataAssertion { individual: d, attribute: label, value: Literal::Decimal(Decimal::ONE), unit: None };
        assert!(matches!(kb.add_axiom(bad_type, "m"), Err(ModelError::LiteralType { .. })));
    }

    #[test]
    fn reserved_names() {
        let mut kb = KnowledgeBase::new();
        assert_eq!(kb.declare("top", NameKind::Class), Err(ModelError::Reserved("top".into())));
    }

    #[test]
    fn gci_normalization() {
        let (mut kb, a, b, r, _) = small();
        let c = kb.declare("C", NameKind::Class).unwrap();
        kb.add_axiom(Axiom::EquivalentClasses(ConceptExpr::Named(a), ConceptExpr::Named(b)), "m").unwrap();
        kb.add_axiom(Axiom::DisjointClasses(vec![a, b, c]), "m").unwrap();
        kb.add_axiom(Axiom::RoleDomain(RoleExpr::Named(r), ConceptExpr::Named(a)), "m").unwrap();
        kb.add_axiom(Axiom::RoleRange(RoleExpr::Named(r), ConceptExpr::Named(b)), "m").unwrap();
        kb.add_axiom(Axiom::SymmetricRole(r), "m").unwrap();
        let g = kb.to_gcis();
        let ax = g.axioms();
        assert_eq!(ax.len(), 2 + 3 + 1 + 1 + 1);
        assert_eq!(ax[0], Axiom::SubClassOf(ConceptExpr::Named(a), ConceptExpr::Named(b)));
        assert_eq!(ax[1], Axiom::SubClassOf(ConceptExpr::Named(b), ConceptExpr::Named(a)));
        let bottoms = ax.iter().filter(|x| matches!(x, Axiom::SubClassOf(_, ConceptExpr::Bottom))).count();
        assert_eq!(bottoms, 3);
        assert_eq!(ax[5], Axiom::SubClassOf(ConceptExpr::exists(RoleExpr::Named(r), ConceptExpr::Top), ConceptExpr::Named(a)));
        assert_eq!(ax[6], Axiom::SubClassOf(ConceptExpr::Top, ConceptExpr::for_all(RoleExpr::Named(r), ConceptExpr::Named(b))));
        assert_eq!(ax[7], Axiom::InverseRoles(r, r));
        assert!(g.axioms().iter().all(|x| !matches!(x, Axiom::EquivalentClasses(..) | Axiom::DisjointClasses(_))));
    }

    #[test]
    fn structure_comparison_is_by_name() {
        let mut x = KnowledgeBase::new();
        let a = x.declare("A", NameKind::Class).unwrap();
        let b = x.declare("B", NameKind::Class).unwrap();
        x.add_axiom(Axiom::SubClassOf(ConceptExpr::Named(a), ConceptExpr::Named(b)), "m").unwrap();
        x.add_axiom(Axiom::SubClassOf(ConceptExpr::Named(b), ConceptExpr::Top), "m").unwrap();
        let mut y = KnowledgeBase::new();
        let b2 = y.declare("B", NameKind::Class).unwrap();
        let a2 = y.declare("A", NameKind::Class).unwrap();
        y.add_axiom(Axiom::SubClassOf(ConceptExpr::Named(b2), ConceptExpr::Top), "n").unwrap();
        y.add_axiom(Axiom::SubClassOf(ConceptExpr::Named(a2), ConceptExpr::Named(b2)), "n").unwrap();
        assert!(x.same_structure(&y, false));
        assert!(!x.same_structure(&y, true));
    }
}
