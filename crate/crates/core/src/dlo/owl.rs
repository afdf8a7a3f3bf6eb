//! Export to the OWL 2 functional-style syntax, for cross-checking with
//! off-the-shelf OWL tools. Names become IRIs in one namespace.

use std::fmt::Write;

use crate::model::{AttrType, Axiom, ConceptExpr, KnowledgeBase, Literal, NameKind, RoleExpr, Sym, SymbolTable};

pub const NAMESPACE: &str = "http://example.org/defectont#";

fn iri(symbols: &SymbolTable, s: Sym) -> String {
    format!(":{}", symbols.name(s))
}

fn role(symbols: &SymbolTable, r: RoleExpr) -> String {
    match r {
        RoleExpr::Named(s) => iri(symbols, s),
        RoleExpr::Inverse(s) => format!("ObjectInverseOf({})", iri(symbols, s)),
    }
}

fn concept(symbols: &SymbolTable, c: &ConceptExpr) -> String {
    let list = |cs: &[ConceptExpr]| cs.iter().map(|c| concept(symbols, c)).collect::<Vec<_>>().join(" ");
    match c {
        ConceptExpr::Top => "owl:Thing".into(),
        ConceptExpr::Bottom => "owl:Nothing".into(),
        ConceptExpr::Named(s) => iri(symbols, *s),
        ConceptExpr::Nominal(s) => format!("ObjectOneOf({})", iri(symbols, *s)),
        ConceptExpr::Not(c) => format!("ObjectComplementOf({})", concept(symbols, c)),
        ConceptExpr::And(cs) => format!("ObjectIntersectionOf({})", list(cs)),
        ConceptExpr::Or(cs) => format!("ObjectUnionOf({})", list(cs)),
        ConceptExpr::Exists(r, c) => format!("ObjectSomeValuesFrom({} {})", role(symbols, *r), concept(symbols, c)),
        ConceptExpr::ForAll(r, c) => format!("ObjectAllValuesFrom({} {})", role(symbols, *r), concept(symbols, c)),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn axiom(symbols: &SymbolTable, ax: &Axiom) -> String {
    let c = |x: &ConceptExpr| concept(symbols, x);
    let r = |x: RoleExpr| role(symbols, x);
    let i = |x: Sym| iri(symbols, x);
    match ax {
        Axiom::SubClassOf(a, b) => format!("SubClassOf({} {})", c(a), c(b)),
        Axiom::EquivalentClasses(a, b) => format!("EquivalentClasses({} {})", c(a), c(b)),
        Axiom::DisjointClasses(names) => {
            format!("DisjointClasses({})", names.iter().map(|&n| i(n)).collect::<Vec<_>>().join(" "))
        }
        Axiom::SubRoleOf(a, b) => format!("SubObjectPropertyOf({} {})", r(*a), r(*b)),
        Axiom::InverseRoles(a, b) => format!("InverseObjectProperties({} {})", i(*a), i(*b)),
        Axiom::SymmetricRole(a) => format!("SymmetricObjectProperty({})", i(*a)),
        Axiom::RoleDomain(a, d) => format!("ObjectPropertyDomain({} {})", r(*a), c(d)),
        Axiom::RoleRange(a, d) => format!("ObjectPropertyRange({} {})", r(*a), c(d)),
        Axiom::ClassAssertion(a, d) => format!("ClassAssertion({} {})", c(d), i(*a)),
        Axiom::RoleAssertion(a, p, b) => format!("ObjectPropertyAssertion({} {} {})", r(*p), i(*a), i(*b)),
        Axiom::DataAssertion { individual, attribute, value, unit } => {
            let lit = match value {
                Literal::Decimal(d) => format!("\"{d}\"^^xsd:decimal"),
                Literal::Text(t) => format!("{}^^xsd:string", quote(t)),
            };
            // the unit rides along as an annotation so nothing is lost
            let ann = unit.as_ref().map(|u| format!("Annotation(:unit {}) ", quote(u))).unwrap_or_default();
            format!("DataPropertyAssertion({ann}{} {} {lit})", i(*attribute), i(*individual))
        }
    }
}

/// One declaration per name, then one axiom per line, in knowledge-base
/// order.
pub fn export_interchange(kb: &KnowledgeBase) -> String {
    let symbols = kb.symbols();
    let mut out = String::new();
    writeln!(out, "Prefix(:=<{NAMESPACE}>)").unwrap();
    writeln!(out, "Prefix(owl:=<http://www.w3.org/2002/07/owl#>)").unwrap();
    writeln!(out, "Prefix(xsd:=<http://www.w3.org/2001/XMLSchema#>)").unwrap();
    writeln!(out, "Ontology(<{}>", NAMESPACE.trim_end_matches('#')).unwrap();
    let has_units = kb.axioms().iter().any(|a| matches!(a, Axiom::DataAssertion { unit: Some(_), .. }));
    if has_units {
        writeln!(out, "Declaration(AnnotationProperty(:unit))").unwrap();
    }
    for (sym, name, kind) in symbols.iter() {
        let entity = match kind {
            NameKind::Class => "Class",
            NameKind::Role => "ObjectProperty",
            NameKind::Attribute => "DataProperty",
            NameKind::Individual => "NamedIndividual",
        };
        writeln!(out, "Declaration({entity}(:{name}))").unwrap();
        if let Some(ty) = symbols.attr_type(sym) {
            let range = match ty {
                AttrType::Decimal => "xsd:decimal",
                AttrType::String => "xsd:string",
            };
            writeln!(out, "DataPropertyRange(:{name} {range})").unwrap();
        }
    }
    for ax in kb.axioms() {
        writeln!(out, "{}", axiom(symbols, ax)).unwrap();
    }
    out.push_str(")\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linker::single_module;

    #[test]
    fn some_values_from() {
        let kb = single_module("ontology t\nclass A\nclass B\nrole r\nsubclass A (some r B)").unwrap();
        let out = export_interchange(&kb);
        assert!(out.lines().any(|l| l == "SubClassOf(:A ObjectSomeValuesFrom(:r :B))"), "{out}");
    }

    #[test]
    fn nominal_and_inverse() {
        let kb = single_module(
            "ontology t\nclass M\nrole hasMaterialState\nindividual solidState\n\
             subclass M (some (inv hasMaterialState) (one solidState))",
        )
        .unwrap();
        let out = export_interchange(&kb);
        assert!(out.contains("ObjectSomeValuesFrom(ObjectInverseOf(:hasMaterialState) ObjectOneOf(:solidState))"), "{out}");
    }

    #[test]
    fn data_assertions_keep_their_unit() {
        let kb = single_module("ontology t\nattr len : decimal\nindividual d\ndata d len 1500 mm").unwrap();
        let out = export_interchange(&kb);
        assert!(out.contains("DataPropertyAssertion(Annotation(:unit \"mm\") :len :d \"1500\"^^xsd:decimal)"), "{out}");
        assert!(out.contains("DataPropertyRange(:len xsd:decimal)"));
    }
}
