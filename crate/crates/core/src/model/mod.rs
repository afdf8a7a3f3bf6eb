//! Abstract syntax for concepts, roles, axioms and knowledge bases.

mod concept;
mod kb;
mod symbols;

use rust_decimal::Decimal;
use thiserror::Error;

pub use concept::{ConceptExpr, RoleExpr};
pub use kb::{KnowledgeBase, Signature};
pub use symbols::{AttrType, NameKind, Sym, SymbolTable};

pub(crate) use concept::map_role;

pub(crate) fn kb_reserved(name: &str) -> bool {
    kb::RESERVED.contains(&name)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("undeclared {kind} `{name}`")]
    Undeclared { name: String, kind: NameKind },
    #[error("`{name}` is a {found}, expected a {expected}")]
    KindMismatch { name: String, expected: NameKind, found: NameKind },
    #[error("`{name}` is already declared as a {existing}, cannot redeclare as {requested}")]
    KindClash { name: String, existing: NameKind, requested: NameKind },
    #[error("attribute `{name}` is already declared as {existing}, cannot redeclare as {requested}")]
    AttributeTypeClash { name: String, existing: AttrType, requested: AttrType },
    #[error("`{constructor}` needs at least 2 operands, found {found}")]
    Arity { constructor: &'static str, found: usize },
    #[error("unknown symbol id {0}")]
    UnknownSymbol(u32),
    #[error("literal for attribute `{attribute}` must be {expected}")]
    LiteralType { attribute: String, expected: AttrType },
    #[error("unknown unit `{0}`")]
    UnknownUnit(String),
    #[error("unit given for string attribute `{0}`")]
    UnitOnString(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
}

/// Attribute value of a data assertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Decimal(Decimal),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    SubClassOf(ConceptExpr, ConceptExpr),
    EquivalentClasses(ConceptExpr, ConceptExpr),
    DisjointClasses(Vec<Sym>),
    SubRoleOf(RoleExpr, RoleExpr),
    InverseRoles(Sym, Sym),
    SymmetricRole(Sym),
    RoleDomain(RoleExpr, ConceptExpr),
    RoleRange(RoleExpr, ConceptExpr),
    ClassAssertion(Sym, ConceptExpr),
    RoleAssertion(Sym, RoleExpr, Sym),
    DataAssertion { individual: Sym, attribute: Sym, value: Literal, unit: Option<String> },
}

impl Axiom {
    pub fn is_abox(&self) -> bool {
        matches!(self, Axiom::ClassAssertion(..) | Axiom::RoleAssertion(..) | Axiom::DataAssertion { .. })
    }

    pub fn is_rbox(&self) -> bool {
        matches!(self, Axiom::SubRoleOf(..) | Axiom::InverseRoles(..) | Axiom::SymmetricRole(_))
    }

    /// Visits every symbol the axiom mentions.
    pub fn for_each_sym(&self, f: &mut impl FnMut(Sym)) {
        match self {
            Axiom::SubClassOf(c, d) | Axiom::EquivalentClasses(c, d) => {
                c.for_each_sym(f);
                d.for_each_sym(f);
            }
            Axiom::DisjointClasses(names) => names.iter().copied().for_each(f),
            Axiom::SubRoleOf(r, s) => {
                f(r.name());
                f(s.name());
            }
            Axiom::InverseRoles(r, s) => {
                f(*r);
                f(*s);
            }
            Axiom::SymmetricRole(r) => f(*r),
            Axiom::RoleDomain(r, c) | Axiom::RoleRange(r, c) => {
                f(r.name());
                c.for_each_sym(f);
            }
            Axiom::ClassAssertion(a, c) => {
                f(*a);
                c.for_each_sym(f);
            }
            Axiom::RoleAssertion(a, r, b) => {
                f(*a);
                f(r.name());
                f(*b);
            }
            Axiom::DataAssertion { individual, attribute, .. } => {
                f(*individual);
                f(*attribute);
            }
        }
    }

    pub fn syms(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        self.for_each_sym(&mut |s| out.push(s));
        out
    }

    pub fn map_syms(&self, f: &mut impl FnMut(Sym) -> Sym) -> Axiom {
        match self {
            Axiom::SubClassOf(c, d) => Axiom::SubClassOf(c.map_syms(f), d.map_syms(f)),
            Axiom::EquivalentClasses(c, d) => Axiom::EquivalentClasses(c.map_syms(f), d.map_syms(f)),
            Axiom::DisjointClasses(names) => Axiom::DisjointClasses(names.iter().map(|s| f(*s)).collect()),
            Axiom::SubRoleOf(r, s) => Axiom::SubRoleOf(map_role(*r, f), map_role(*s, f)),
            Axiom::InverseRoles(r, s) => Axiom::InverseRoles(f(*r), f(*s)),
            Axiom::SymmetricRole(r) => Axiom::SymmetricRole(f(*r)),
            Axiom::RoleDomain(r, c) => Axiom::RoleDomain(map_role(*r, f), c.map_syms(f)),
            Axiom::RoleRange(r, c) => Axiom::RoleRange(map_role(*r, f), c.map_syms(f)),
            Axiom::ClassAssertion(a, c) => Axiom::ClassAssertion(f(*a), c.map_syms(f)),
            Axiom::RoleAssertion(a, r, b) => Axiom::RoleAssertion(f(*a), map_role(*r, f), f(*b)),
            Axiom::DataAssertion { individual, attribute, value, unit } => Axiom::DataAssertion {
                individual: f(*individual),
                attribute: f(*attribute),
                value: value.clone(),
                unit: unit.clone(),
            },
        }
    }
}
