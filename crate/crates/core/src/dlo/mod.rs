//! The line-oriented `.dlo` ontology format.
//!
//! ```text
//! ontology NAME
//! import NAME
//! class NAME
//! role NAME [inverse NAME] [symmetric]
//! attr NAME : (decimal|string)
//! individual NAME
//! subclass C C | equiv C C | disjoint NAME NAME+
//! subrole R R | domain R C | range R C
//! instance NAME C | rel NAME ROLE NAME | data NAME ATTR LITERAL [UNITCODE]
//!
//! C := top | bot | NAME | (not C) | (and C C+) | (or C C+)
//!    | (some R C) | (all R C) | (one NAME)
//! R := NAME | (inv NAME)
//! ```
//!
//! `#` starts a comment. A statement ends at a newline outside parentheses.
//! Every name used in an axiom must be declared in the same file.

mod lexer;
mod parser;
mod owl;
mod writer;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::model::{AttrType, Axiom, NameKind, Sym, SymbolTable};

pub(crate) use parser::parse_fragment;
pub use parser::{parse_concept, parse_module, parse_role};
pub use owl::{export_interchange, NAMESPACE};
pub use writer::{concept_to_string, render_axiom, role_to_string, serialize_module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Arity,
    /// Undeclared name, wrong kind, or a duplicate declaration.
    Declaration,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Arity => "arity error",
            ParseErrorKind::Declaration => "declaration error",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{span}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned<T> {
    pub item: T,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Declaration {
    Class(Sym),
    /// `role NAME [inverse NAME] [symmetric]`; the inverse name is declared
    /// by the same statement.
    Role { name: Sym, inverse: Option<Sym>, symmetric: bool },
    Attribute(Sym, AttrType),
    Individual(Sym),
}

impl Declaration {
    pub fn kind(&self) -> NameKind {
        match self {
            Declaration::Class(_) => NameKind::Class,
            Declaration::Role { .. } => NameKind::Role,
            Declaration::Attribute(..) => NameKind::Attribute,
            Declaration::Individual(_) => NameKind::Individual,
        }
    }

    pub fn name(&self) -> Sym {
        match self {
            Declaration::Class(s) | Declaration::Attribute(s, _) | Declaration::Individual(s) => *s,
            Declaration::Role { name, .. } => *name,
        }
    }
}

/// One parsed `.dlo` file. Symbols are local to the module.
#[derive(Clone, Debug)]
pub struct SourceModule {
    pub name: String,
    pub imports: Vec<Spanned<String>>,
    pub symbols: SymbolTable,
    pub declarations: Vec<Spanned<Declaration>>,
    pub axioms: Vec<Spanned<Axiom>>,
}

/// Name-level view of a declaration, used to compare modules whose symbol
/// tables differ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum DeclKey {
    Class(String),
    Role(String, Option<String>, bool),
    Attribute(String, AttrType),
    Individual(String),
}

impl SourceModule {
    fn decl_keys(&self) -> BTreeSet<DeclKey> {
        let n = |s: Sym| self.symbols.name(s).to_string();
        self.declarations
            .iter()
            .map(|d| match d.item {
                Declaration::Class(s) => DeclKey::Class(n(s)),
                Declaration::Role { name, inverse, symmetric } => DeclKey::Role(n(name), inverse.map(n), symmetric),
                Declaration::Attribute(s, t) => DeclKey::Attribute(n(s), t),
                Declaration::Individual(s) => DeclKey::Individual(n(s)),
            })
            .collect()
    }

    /// Equality ignoring source positions, declaration order and symbol ids.
    /// Axioms must match in order (with `and`/`or` operands as multisets).
    pub fn same_structure(&self, other: &SourceModule) -> bool {
        if self.name != other.name {
            return false;
        }
        let imports = |m: &SourceModule| m.imports.iter().map(|i| i.item.clone()).collect::<Vec<_>>();
        if imports(self) != imports(other) || self.decl_keys() != other.decl_keys() {
            return false;
        }
        if self.axioms.len() != other.axioms.len() {
            return false;
        }
        let mut remap = HashMap::new();
        for (sym, name, _) in other.symbols.iter() {
            match self.symbols.lookup(name) {
                Some(mine) => {
                    remap.insert(sym, mine);
                }
                None => return false,
            }
        }
        self.axioms.iter().zip(&other.axioms).all(|(a, b)| a.item == b.item.map_syms(&mut |s| remap[&s]))
    }

    pub fn class_count(&self) -> usize {
        self.declarations.iter().filter(|d| matches!(d.item, Declaration::Class(_))).count()
    }
}
