use std::fmt::Write;

use super::{Declaration, SourceModule};
use crate::model::{Axiom, ConceptExpr, Literal, RoleExpr, SymbolTable};

pub fn role_to_string(symbols: &SymbolTable, r: RoleExpr) -> String {
    match r {
        RoleExpr::Named(s) => symbols.name(s).to_string(),
        RoleExpr::Inverse(s) => format!("(inv {})", symbols.name(s)),
    }
}

fn write_concept(out: &mut String, symbols: &SymbolTable, c: &ConceptExpr) {
    match c {
        ConceptExpr::Top => out.push_str("top"),
        ConceptExpr::Bottom => out.push_str("bot"),
        ConceptExpr::Named(s) => out.push_str(symbols.name(*s)),
        ConceptExpr::Nominal(s) => {
            let _ = write!(out, "(one {})", symbols.name(*s));
        }
        ConceptExpr::Not(inner) => {
            out.push_str("(not ");
            write_concept(out, symbols, inner);
            out.push(')');
        }
        ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
            out.push_str(if matches!(c, ConceptExpr::And(_)) { "(and" } else { "(or" });
            for child in cs {
                out.push(' ');
                write_concept(out, symbols, child);
            }
            out.push(')');
        }
        ConceptExpr::Exists(r, inner) | ConceptExpr::ForAll(r, inner) => {
            let kw = if matches!(c, ConceptExpr::Exists(..)) { "some" } else { "all" };
            let _ = write!(out, "({kw} {} ", role_to_string(symbols, *r));
            write_concept(out, symbols, inner);
            out.push(')');
        }
    }
}

pub fn concept_to_string(symbols: &SymbolTable, c: &ConceptExpr) -> String {
    let mut s = String::new();
    write_concept(&mut s, symbols, c);
    s
}

fn literal_to_string(lit: &Literal) -> String {
    match lit {
        Literal::Decimal(d) => d.to_string(),
        Literal::Text(t) => {
            let escaped = t.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n");
            format!("\"{escaped}\"")
        }
    }
}

/// Renders one axiom as a `.dlo` statement (no trailing newline).
///
/// `InverseRoles` and `SymmetricRole` have no statement form of their own and
/// are rendered as a pair of `subrole` statements joined by a newline.
pub fn render_axiom(symbols: &SymbolTable, ax: &Axiom) -> String {
    let c = |x: &ConceptExpr| concept_to_string(symbols, x);
    let r = |x: RoleExpr| role_to_string(symbols, x);
    let n = |s| symbols.name(s);
    match ax {
        Axiom::SubClassOf(a, b) => format!("subclass {} {}", c(a), c(b)),
        Axiom::EquivalentClasses(a, b) => format!("equiv {} {}", c(a), c(b)),
        Axiom::DisjointClasses(names) => {
            let names: Vec<&str> = names.iter().map(|s| n(*s)).collect();
            format!("disjoint {}", names.join(" "))
        }
        Axiom::SubRoleOf(a, b) => format!("subrole {} {}", r(*a), r(*b)),
        Axiom::InverseRoles(a, b) => {
            format!("subrole {} (inv {})\nsubrole (inv {}) {}", n(*a), n(*b), n(*b), n(*a))
        }
        Axiom::SymmetricRole(a) => format!("subrole {} (inv {})", n(*a), n(*a)),
        Axiom::RoleDomain(a, b) => format!("domain {} {}", r(*a), c(b)),
        Axiom::RoleRange(a, b) => format!("range {} {}", r(*a), c(b)),
        Axiom::ClassAssertion(a, b) => format!("instance {} {}", n(*a), c(b)),
        Axiom::RoleAssertion(a, role, b) => format!("rel {} {} {}", n(*a), r(*role), n(*b)),
        Axiom::DataAssertion { individual, attribute, value, unit } => {
            let mut s = format!("data {} {} {}", n(*individual), n(*attribute), literal_to_string(value));
            if let Some(u) = unit {
                s.push(' ');
                s.push_str(u);
            }
            s
        }
    }
}

/// Deterministic text form: header, imports in order, declarations sorted by
/// kind then name, axioms in their original order. Comments are not kept.
pub fn serialize_module(m: &SourceModule) -> String {
    let mut out = format!("ontology {}\n", m.name);
    for imp in &m.imports {
        let _ = writeln!(out, "import {}", imp.item);
    }
    let mut decls: Vec<&Declaration> = m.declarations.iter().map(|d| &d.item).collect();
    decls.sort_by(|a, b| a.kind().cmp(&b.kind()).then_with(|| m.symbols.name(a.name()).cmp(m.symbols.name(b.name()))));
    if !decls.is_empty() {
        out.push('\n');
    }
    for d in decls {
        let line = match *d {
            Declaration::Class(s) => format!("class {}", m.symbols.name(s)),
            Declaration::Individual(s) => format!("individual {}", m.symbols.name(s)),
            Declaration::Attribute(s, ty) => format!("attr {} : {}", m.symbols.name(s), ty),
            Declaration::Role { name, inverse, symmetric } => {
                let mut l = format!("role {}", m.symbols.name(name));
                if let Some(inv) = inverse {
                    let _ = write!(l, " inverse {}", m.symbols.name(inv));
                }
                if symmetric {
                    l.push_str(" symmetric");
                }
                l
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    if !m.axioms.is_empty() {
        out.push('\n');
    }
    for ax in &m.axioms {
        out.push_str(&render_axiom(&m.symbols, &ax.item));
        out.push('\n');
    }
    out
}
