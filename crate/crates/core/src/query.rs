//! Competency-question answering: instance checks, certain role fillers and
//! unit-converted attribute values. Answers are certain answers over the
//! declared individuals.
//!
//! ```text
//! instance? IND CONCEPT
//! fillers?  IND ROLE
//! value?    IND ATTR UNIT
//! ```

use std::fmt;

use thiserror::Error;

use crate::dlo::{parse_fragment, ParseError, ParseErrorKind, Span};
use crate::measures::{Quantity, UnitError};
use crate::model::{Axiom, ConceptExpr, KnowledgeBase, Literal, NameKind, RoleExpr, Sym};
use crate::reasoner::{Reasoner, ReasonerError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Instance(Sym, ConceptExpr),
    Fillers(Sym, RoleExpr),
    Value(Sym, Sym, String),
}

#[derive(Debug, Error)]
pub enum QueryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
    #[error("no value of `{attribute}` asserted for `{individual}`")]
    NoValue { individual: String, attribute: String },
    #[error("{count} values of `{attribute}` asserted for `{individual}`")]
    Ambiguous { individual: String, attribute: String, count: usize },
    #[error("value of `{attribute}` for `{individual}` is not a decimal with a unit")]
    NotAQuantity { individual: String, attribute: String },
    #[error(transparent)]
    Unit(#[from] UnitError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Bool(bool),
    Individuals(Vec<String>),
    Value(Quantity),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Bool(b) => write!(f, "{b}"),
            Answer::Individuals(names) => {
                for (i, n) in names.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    f.write_str(n)?;
                }
                Ok(())
            }
            Answer::Value(q) => write!(f, "{q}"),
        }
    }
}

pub fn parse_query(text: &str, kb: &KnowledgeBase) -> Result<Query, QueryError> {
    let start = text.len() - text.trim_start().len();
    let rest = &text[start..];
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    let keyword = &rest[..end];
    let offset = text[..start + end].chars().count();
    let tail = &text[start + end..];
    let symbols = kb.symbols();
    let q = match keyword {
        "instance?" => parse_fragment(tail, offset, symbols, |f| {
            let a = f.name(NameKind::Individual)?;
            Ok(Query::Instance(a, f.concept()?))
        })?,
        "fillers?" => parse_fragment(tail, offset, symbols, |f| {
            let a = f.name(NameKind::Individual)?;
            Ok(Query::Fillers(a, f.role()?))
        })?,
        "value?" => parse_fragment(tail, offset, symbols, |f| {
            let a = f.name(NameKind::Individual)?;
            let attr = f.name(NameKind::Attribute)?;
            let (unit, _) = f.word("unit code")?;
            Ok(Query::Value(a, attr, unit))
        })?,
        _ => {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax,
                span: Span { line: 1, column: start + 1 },
                message: format!("expected `instance?`, `fillers?` or `value?`, found `{keyword}`"),
            }
            .into())
        }
    };
    Ok(q)
}

fn require_consistent(r: &Reasoner) -> Result<(), QueryError> {
    if r.is_consistent()? {
        Ok(())
    } else {
        Err(ReasonerError::Inconsistent.into())
    }
}

pub fn ask_instance(r: &Reasoner, a: Sym, c: &ConceptExpr) -> Result<bool, QueryError> {
    require_consistent(r)?;
    Ok(r.entails_instance(a, c)?)
}

/// Individuals `b` with `kb ⊨ role(a, b)`, sorted by name.
pub fn certain_fillers(r: &Reasoner, a: Sym, role: RoleExpr) -> Result<Vec<Sym>, QueryError> {
    require_consistent(r)?;
    let kb = r.kb();
    let mut out = Vec::new();
    for b in kb.individuals() {
        if r.entails(&Axiom::RoleAssertion(a, role, b))? {
            out.push(b);
        }
    }
    out.sort_by(|x, y| kb.name(*x).cmp(kb.name(*y)));
    Ok(out)
}

/// The single asserted value of `attribute` for `a`, converted to `unit`.
pub fn attribute_value(kb: &KnowledgeBase, a: Sym, attribute: Sym, unit: &str) -> Result<Quantity, QueryError> {
    let found: Vec<_> = kb
        .axioms()
        .iter()
        .filter_map(|ax| match ax {
            Axiom::DataAssertion { individual, attribute: at, value, unit } if *individual == a && *at == attribute => {
                Some((value, unit))
            }
            _ => None,
        })
        .collect();
    let individual = kb.name(a).to_string();
    let attribute = kb.name(attribute).to_string();
    match found.as_slice() {
        [] => Err(QueryError::NoValue { individual, attribute }),
        [(Literal::Decimal(v), Some(u))] => Ok(crate::measures::convert(&Quantity::new(*v, u), unit)?),
        [_] => Err(QueryError::NotAQuantity { individual, attribute }),
        many => Err(QueryError::Ambiguous { individual, attribute, count: many.len() }),
    }
}

pub fn answer(r: &Reasoner, q: &Query) -> Result<Answer, QueryError> {
    let kb = r.kb();
    Ok(match q {
        Query::Instance(a, c) => Answer::Bool(ask_instance(r, *a, c)?),
        Query::Fillers(a, role) => {
            Answer::Individuals(certain_fillers(r, *a, *role)?.into_iter().map(|b| kb.name(b).to_string()).collect())
        }
        Query::Value(a, attr, unit) => Answer::Value(attribute_value(kb, *a, *attr, unit)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linker::single_module;

    const KB: &str = "ontology t
class Sensor
class A
class B
role hosts inverse hostedBy
attr len : decimal
individual pl
individual s1
individual s2
individual d
rel pl hosts s1
rel pl hosts s2
subclass A B
instance d A
data d len 1500 mm
";

    #[test]
    fn parses_the_three_forms() {
        let kb = single_module(KB).unwrap();
        assert!(matches!(parse_query("instance? d B", &kb).unwrap(), Query::Instance(..)));
        assert!(matches!(parse_query("fillers? pl hosts", &kb).unwrap(), Query::Fillers(..)));
        assert!(matches!(parse_query("value? d len m", &kb).unwrap(), Query::Value(..)));
    }

    #[test]
    fn parse_errors_carry_columns() {
        let kb = single_module(KB).unwrap();
        let QueryError::Parse(e) = parse_query("instance? d Nope", &kb).unwrap_err() else { panic!() };
        assert_eq!(e.span, Span { line: 1, column: 13 });
        let QueryError::Parse(e) = parse_query("which? d", &kb).unwrap_err() else { panic!() };
        assert_eq!(e.span.column, 1);
        let QueryError::Parse(e) = parse_query("fillers? pl hosts extra", &kb).unwrap_err() else { panic!() };
        assert_eq!(e.span.column, 19);
    }

    #[test]
    fn answers() {
        let kb = single_module(KB).unwrap();
        let r = Reasoner::new(&kb);
        let ask = |q: &str| answer(&r, &parse_query(q, &kb).unwrap()).unwrap().to_string();
        assert_eq!(ask("instance? d B"), "true");
        assert_eq!(ask("instance? d Sensor"), "false");
        assert_eq!(ask("instance? d top"), "true");
        assert_eq!(ask("fillers? pl hosts"), "s1\ns2");
        assert_eq!(ask("fillers? s1 hostedBy"), "pl");
        assert_eq!(ask("fillers? s1 (inv hosts)"), "pl");
        assert_eq!(ask("fillers? d hosts"), "");
        assert_eq!(ask("value? d len m"), "1.5 m");
    }

    #[test]
    fn missing_value() {
        let kb = single_module(KB).unwrap();
        let q = parse_query("value? pl len m", &kb).unwrap();
        assert!(matches!(answer(&Reasoner::new(&kb), &q), Err(QueryError::NoValue { .. })));
    }
}
