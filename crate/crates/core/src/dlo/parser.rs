use std::collections::HashSet;
use std::str::FromStr;

use rust_decimal::Decimal;

use super::lexer::{tokenize, Tok, Token};
use super::{Declaration, ParseError, ParseErrorKind, SourceModule, Span, Spanned};
use crate::measures::UnitRegistry;
use crate::model::{AttrType, Axiom, ConceptExpr, Literal, ModelError, NameKind, RoleExpr, Sym, SymbolTable};

const DECLARATION_KEYWORDS: &[&str] = &["ontology", "import", "class", "role", "attr", "individual"];

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Word(w) => format!("`{w}`"),
        Tok::Number(n) => format!("number `{n}`"),
        Tok::Str(_) => "string literal".into(),
        Tok::End => "end of statement".into(),
    }
}

fn syntax(span: Span, expected: &str, found: &Tok) -> ParseError {
    ParseError { kind: ParseErrorKind::Syntax, span, message: format!("expected {expected}, found {}", describe(found)) }
}

fn decl_error(span: Span, err: ModelError) -> ParseError {
    ParseError { kind: ParseErrorKind::Declaration, span, message: err.to_string() }
}

/// Cursor over the tokens of one statement (the trailing `End` included).
struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &'a Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> &'a Token {
        let t = self.peek();
        if self.pos < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn word(&mut self, expected: &str) -> Result<(&'a str, Span), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) => Ok((w.as_str(), t.span)),
            other => Err(syntax(t.span, expected, other)),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Span, ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t.span)
        } else {
            Err(syntax(t.span, expected, &t.tok))
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::End, "end of statement").map(|_| ())
    }
}

struct Resolver<'a> {
    symbols: &'a SymbolTable,
}

impl Resolver<'_> {
    fn name(&self, name: &str, span: Span, kind: NameKind) -> Result<Sym, ParseError> {
        self.symbols.resolve(name, kind).map_err(|e| decl_error(span, e))
    }

    fn role(&self, cur: &mut Cursor) -> Result<RoleExpr, ParseError> {
        let t = cur.next();
        match &t.tok {
            Tok::Word(w) => Ok(RoleExpr::Named(self.name(w, t.span, NameKind::Role)?)),
            Tok::LParen => {
                let (kw, span) = cur.word("`inv`")?;
                if kw != "inv" {
                    return Err(syntax(span, "`inv`", &Tok::Word(kw.to_string())));
                }
                let (w, span) = cur.word("role name")?;
                let sym = self.name(w, span, NameKind::Role)?;
                cur.expect(Tok::RParen, "`)`")?;
                Ok(RoleExpr::Inverse(sym))
            }
            other => Err(syntax(t.span, "role", other)),
        }
    }

    fn concept(&self, cur: &mut Cursor) -> Result<ConceptExpr, ParseError> {
        let t = cur.next();
        match &t.tok {
            Tok::Word(w) if w == "top" => Ok(ConceptExpr::Top),
            Tok::Word(w) if w == "bot" => Ok(ConceptExpr::Bottom),
            Tok::Word(w) => Ok(ConceptExpr::Named(self.name(w, t.span, NameKind::Class)?)),
            Tok::LParen => {
                let open = t.span;
                let (kw, kw_span) = cur.word("concept constructor")?;
                let c = match kw {
                    "not" => ConceptExpr::not(self.concept(cur)?),
                    "and" | "or" => {
                        let mut children = Vec::new();
                        while cur.peek().tok != Tok::RParen {
                            if cur.peek().tok == Tok::End {
                                return Err(syntax(cur.peek().span, "`)`", &Tok::End));
                            }
                            children.push(self.concept(cur)?);
                        }
                        if children.len() < 2 {
                            return Err(ParseError {
                                kind: ParseErrorKind::Arity,
                                span: open,
                                message: format!("`{kw}` needs at least 2 operands, found {}", children.len()),
                            });
                        }
                        if kw == "and" {
                            ConceptExpr::And(children)
                        } else {
                            ConceptExpr::Or(children)
                        }
                    }
                    "some" | "all" => {
                        let r = self.role(cur)?;
                        let c = self.concept(cur)?;
                        if kw == "some" {
                            ConceptExpr::exists(r, c)
                        } else {
                            ConceptExpr::for_all(r, c)
                        }
                    }
                    "one" => {
                        let (w, span) = cur.word("individual name")?;
                        ConceptExpr::Nominal(self.name(w, span, NameKind::Individual)?)
                    }
                    other => {
                        return Err(syntax(kw_span, "one of `not and or some all one`", &Tok::Word(other.to_string())));
                    }
                };
                cur.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            other => Err(syntax(t.span, "concept", other)),
        }
    }

    fn axiom(&self, keyword: &str, kw_span: Span, cur: &mut Cursor) -> Result<Axiom, ParseError> {
        let ax = match keyword {
            "subclass" => Axiom::SubClassOf(self.concept(cur)?, self.concept(cur)?),
            "equiv" => Axiom::EquivalentClasses(self.concept(cur)?, self.concept(cur)?),
            "disjoint" => {
                let mut names = Vec::new();
                while let Tok::Word(w) = &cur.peek().tok {
                    let span = cur.next().span;
                    names.push(self.name(w, span, NameKind::Class)?);
                }
                if names.len() < 2 {
                    return Err(ParseError {
                        kind: ParseErrorKind::Arity,
                        span: kw_span,
                        message: format!("`disjoint` needs at least 2 classes, found {}", names.len()),
                    });
                }
                Axiom::DisjointClasses(names)
            }
            "subrole" => Axiom::SubRoleOf(self.role(cur)?, self.role(cur)?),
            "domain" => Axiom::RoleDomain(self.role(cur)?, self.concept(cur)?),
            "range" => Axiom::RoleRange(self.role(cur)?, self.concept(cur)?),
            "instance" => {
                let (w, span) = cur.word("individual name")?;
                Axiom::ClassAssertion(self.name(w, span, NameKind::Individual)?, self.concept(cur)?)
            }
            "rel" => {
                let (a, a_span) = cur.word("individual name")?;
                let a = self.name(a, a_span, NameKind::Individual)?;
                let r = self.role(cur)?;
                let (b, b_span) = cur.word("individual name")?;
                Axiom::RoleAssertion(a, r, self.name(b, b_span, NameKind::Individual)?)
            }
            "data" => {
                let (a, a_span) = cur.word("individual name")?;
                let individual = self.name(a, a_span, NameKind::Individual)?;
                let (attr, attr_span) = cur.word("attribute name")?;
                let attribute = self.name(attr, attr_span, NameKind::Attribute)?;
                let ty = self.symbols.attr_type(attribute).unwrap_or(AttrType::Decimal);
                let lit = cur.next();
                let value = match (&lit.tok, ty) {
                    (Tok::Number(n), AttrType::Decimal) => Literal::Decimal(Decimal::from_str(n).map_err(|e| ParseError {
                        kind: ParseErrorKind::Lexical,
                        span: lit.span,
                        message: format!("bad decimal `{n}`: {e}"),
                    })?),
                    (Tok::Str(s), AttrType::String) => Literal::Text(s.clone()),
                    (other, AttrType::Decimal) => return Err(syntax(lit.span, "decimal literal", other)),
                    (other, AttrType::String) => return Err(syntax(lit.span, "string literal", other)),
                };
                let unit = match &cur.peek().tok {
                    Tok::Word(u) => {
                        let span = cur.next().span;
                        if ty == AttrType::String {
                            return Err(decl_error(span, ModelError::UnitOnString(attr.to_string())));
                        }
                        if UnitRegistry::standard().get(u).is_err() {
                            return Err(decl_error(span, ModelError::UnknownUnit(u.clone())));
                        }
                        Some(u.clone())
                    }
                    _ => None,
                };
                Axiom::DataAssertion { individual, attribute, value, unit }
            }
            other => {
                return Err(ParseError { kind: ParseErrorKind::Syntax, span: kw_span, message: format!("unknown statement `{other}`") });
            }
        };
        cur.end()?;
        Ok(ax)
    }
}

fn statements(tokens: &[Token]) -> impl Iterator<Item = &[Token]> {
    tokens.split_inclusive(|t| t.tok == Tok::End)
}

/// Parses one `.dlo` module.
pub fn parse_module(text: &str) -> Result<SourceModule, ParseError> {
    let tokens = tokenize(text)?;
    let mut name: Option<String> = None;
    let mut imports = Vec::new();
    let mut symbols = SymbolTable::new();
    let mut declarations = Vec::new();
    let mut seen: HashSet<(NameKind, String)> = HashSet::new();

    let mut declare = |symbols: &mut SymbolTable, n: &str, span: Span, kind: NameKind| -> Result<Sym, ParseError> {
        if crate::model::kb_reserved(n) {
            return Err(decl_error(span, ModelError::Reserved(n.to_string())));
        }
        if !seen.insert((kind, n.to_string())) {
            return Err(ParseError { kind: ParseErrorKind::Declaration, span, message: format!("duplicate declaration of {kind} `{n}`") });
        }
        symbols.declare(n, kind).map_err(|e| decl_error(span, e))
    };

    // Pass 1: header and declarations.
    for stmt in statements(&tokens) {
        let mut cur = Cursor { toks: stmt, pos: 0 };
        let (kw, kw_span) = cur.word("statement keyword")?;
        if !DECLARATION_KEYWORDS.contains(&kw) {
            continue;
        }
        match kw {
            "ontology" => {
                let (n, span) = cur.word("module name")?;
                if name.is_some() {
                    return Err(ParseError { kind: ParseErrorKind::Syntax, span: kw_span, message: "second `ontology` header".into() });
                }
                let _ = span;
                name = Some(n.to_string());
            }
            "import" => {
                let (n, span) = cur.word("module name")?;
                imports.push(Spanned { item: n.to_string(), span });
            }
            "class" => {
                let (n, span) = cur.word("class name")?;
                let s = declare(&mut symbols, n, span, NameKind::Class)?;
                declarations.push(Spanned { item: Declaration::Class(s), span: kw_span });
            }
            "individual" => {
                let (n, span) = cur.word("individual name")?;
                let s = declare(&mut symbols, n, span, NameKind::Individual)?;
                declarations.push(Spanned { item: Declaration::Individual(s), span: kw_span });
            }
            "attr" => {
                let (n, span) = cur.word("attribute name")?;
                cur.expect(Tok::Colon, "`:`")?;
                let (ty, ty_span) = cur.word("`decimal` or `string`")?;
                let ty = match ty {
                    "decimal" => AttrType::Decimal,
                    "string" => AttrType::String,
                    other => return Err(syntax(ty_span, "`decimal` or `string`", &Tok::Word(other.to_string()))),
                };
                let s = declare(&mut symbols, n, span, NameKind::Attribute)?;
                symbols.declare_attribute(n, ty).map_err(|e| decl_error(span, e))?;
                declarations.push(Spanned { item: Declaration::Attribute(s, ty), span: kw_span });
            }
            "role" => {
                let (n, span) = cur.word("role name")?;
                let s = declare(&mut symbols, n, span, NameKind::Role)?;
                let mut inverse = None;
                let mut symmetric = false;
                if matches!(&cur.peek().tok, Tok::Word(w) if w == "inverse") {
                    cur.next();
                    let (inv, inv_span) = cur.word("inverse role name")?;
                    inverse = Some(declare(&mut symbols, inv, inv_span, NameKind::Role)?);
                }
                if matches!(&cur.peek().tok, Tok::Word(w) if w == "symmetric") {
                    cur.next();
                    symmetric = true;
                }
                declarations.push(Spanned { item: Declaration::Role { name: s, inverse, symmetric }, span: kw_span });
            }
            _ => unreachable!(),
        }
        cur.end()?;
    }

    let name = match name {
        Some(n) => n,
        None => {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax,
                span: tokens.first().map(|t| t.span).unwrap_or(Span { line: 1, column: 1 }),
                message: "missing `ontology NAME` header".into(),
            })
        }
    };

    // Pass 2: axioms, against the complete declaration set.
    let resolver = Resolver { symbols: &symbols };
    let mut axioms = Vec::new();
    for stmt in statements(&tokens) {
        let mut cur = Cursor { toks: stmt, pos: 0 };
        let (kw, kw_span) = cur.word("statement keyword")?;
        if DECLARATION_KEYWORDS.contains(&kw) {
            continue;
        }
        let ax = resolver.axiom(kw, kw_span, &mut cur)?;
        axioms.push(Spanned { item: ax, span: kw_span });
    }

    Ok(SourceModule { name, imports, symbols, declarations, axioms })
}

/// Parser over a single-line fragment (a concept, a role or a query tail),
/// resolved against an existing symbol table.
pub(crate) struct Fragment<'a> {
    cur: Cursor<'a>,
    resolver: Resolver<'a>,
}

impl Fragment<'_> {
    pub(crate) fn concept(&mut self) -> Result<ConceptExpr, ParseError> {
        self.resolver.concept(&mut self.cur)
    }

    pub(crate) fn role(&mut self) -> Result<RoleExpr, ParseError> {
        self.resolver.role(&mut self.cur)
    }

    pub(crate) fn name(&mut self, kind: NameKind) -> Result<Sym, ParseError> {
        let (w, span) = self.cur.word(&format!("{kind} name"))?;
        self.resolver.name(w, span, kind)
    }

    pub(crate) fn word(&mut self, expected: &str) -> Result<(String, Span), ParseError> {
        self.cur.word(expected).map(|(w, s)| (w.to_string(), s))
    }
}

/// Runs `f` over the tokens of `text`, whose first character sits at column
/// `offset + 1`, and requires that it consumes everything.
pub(crate) fn parse_fragment<T>(
    text: &str,
    offset: usize,
    symbols: &SymbolTable,
    f: impl FnOnce(&mut Fragment) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let shift = |mut span: Span| {
        if span.line == 1 {
            span.column += offset;
        }
        span
    };
    let mut tokens = tokenize(text).map_err(|e| ParseError { span: shift(e.span), ..e })?;
    for t in &mut tokens {
        t.span = shift(t.span);
    }
    if tokens.last().map_or(true, |t| t.tok != Tok::End) {
        tokens.push(Token { tok: Tok::End, span: shift(Span { line: 1, column: text.chars().count() + 1 }) });
    }
    let mut frag = Fragment { cur: Cursor { toks: &tokens, pos: 0 }, resolver: Resolver { symbols } };
    let value = f(&mut frag)?;
    frag.cur.end()?;
    if frag.cur.pos < tokens.len() {
        let t = &tokens[frag.cur.pos];
        return Err(syntax(t.span, "end of input", &t.tok));
    }
    Ok(value)
}

/// Parses a concept written in module syntax against `symbols`.
pub fn parse_concept(text: &str, symbols: &SymbolTable) -> Result<ConceptExpr, ParseError> {
    parse_fragment(text, 0, symbols, |f| f.concept())
}

/// Parses a role (`NAME` or `(inv NAME)`) against `symbols`.
pub fn parse_role(text: &str, symbols: &SymbolTable) -> Result<RoleExpr, ParseError> {
    parse_fragment(text, 0, symbols, |f| f.role())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_module() {
        let m = parse_module("ontology m\nclass A\nsubclass A top").unwrap();
        assert_eq!(m.name, "m");
        assert_eq!(m.class_count(), 1);
        assert_eq!(m.axioms.len(), 1);
        assert_eq!(m.axioms[0].span, Span { line: 3, column: 1 });
        let a = m.symbols.lookup("A").unwrap();
        assert_eq!(m.axioms[0].item, Axiom::SubClassOf(ConceptExpr::Named(a), ConceptExpr::Top));
    }

    #[test]
    fn defect_constraint_tree() {
        let text = "ontology mam\nclass Defect\nclass PhysicalObject\nclass PhysicalArtefact\nclass Material\nrole affects inverse isAffectedBy\n\
                    subclass Defect (and PhysicalObject (some affects (or PhysicalArtefact Material)))\n";
        let m = parse_module(text).unwrap();
        let s = |n| m.symbols.lookup(n).unwrap();
        let expected = Axiom::SubClassOf(
            ConceptExpr::Named(s("Defect")),
            ConceptExpr::And(vec![
                ConceptExpr::Named(s("PhysicalObject")),
                ConceptExpr::exists(
                    RoleExpr::Named(s("affects")),
                    ConceptExpr::Or(vec![ConceptExpr::Named(s("PhysicalArtefact")), ConceptExpr::Named(s("Material"))]),
                ),
            ]),
        );
        assert_eq!(m.axioms[0].item, expected);
        assert!(matches!(m.declarations[4].item, Declaration::Role { inverse: Some(_), symmetric: false, .. }));
    }

    #[test]
    fn unary_and_is_an_arity_error() {
        let err = parse_module("ontology m\nclass A\nclass B\nsubclass A (and B)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Arity);
        assert_eq!(err.span.line, 4);
    }

    #[test]
    fn undeclared_names_are_errors() {
        let err = parse_module("ontology m\nclass A\nsubclass A Typo").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Declaration);
        assert_eq!(err.span, Span { line: 3, column: 12 });
    }

    #[test]
    fn declarations_may_follow_use() {
        let m = parse_module("ontology m\nsubclass A B\nclass A\nclass B").unwrap();
        assert_eq!(m.axioms.len(), 1);
    }

    #[test]
    fn duplicate_declaration() {
        let err = parse_module("ontology m\nclass A\nclass A").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Declaration);
        assert_eq!(err.span.line, 3);
        let err = parse_module("ontology m\nrole r inverse s\nrole s").unwrap_err();
        assert_eq!(err.span.line, 3);
    }

    #[test]
    fn kind_clash_in_module() {
        let err = parse_module("ontology m\nclass A\nrole A").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Declaration);
    }

    #[test]
    fn missing_header() {
        assert!(parse_module("class A").is_err());
        assert!(parse_module("ontology a\nontology b").is_err());
    }

    #[test]
    fn data_statements() {
        let m = parse_module(
            "ontology m\nindividual d\nattr hasLength : decimal\nattr label : string\ndata d hasLength 1500 mm\ndata d label \"crack\"",
        )
        .unwrap();
        match &m.axioms[0].item {
            Axiom::DataAssertion { value: Literal::Decimal(v), unit, .. } => {
                assert_eq!(v.to_string(), "1500");
                assert_eq!(unit.as_deref(), Some("mm"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_module("ontology m\nindividual d\nattr x : decimal\ndata d x 1 furlong").is_err());
        assert!(parse_module("ontology m\nindividual d\nattr x : decimal\ndata d x \"s\"").is_err());
        assert!(parse_module("ontology m\nindividual d\nattr x : string\ndata d x \"s\" mm").is_err());
    }

    #[test]
    fn roles_and_nominals() {
        let m = parse_module(
            "ontology m\nclass A\nrole r\nrole s symmetric\nindividual a\nindividual b\n\
             subrole (inv r) s\ndomain r A\nrange (inv r) (one a)\nrel a (inv r) b\ninstance a (all r (not (one b)))",
        )
        .unwrap();
        assert_eq!(m.axioms.len(), 5);
        assert!(matches!(m.axioms[0].item, Axiom::SubRoleOf(RoleExpr::Inverse(_), RoleExpr::Named(_))));
    }

    #[test]
    fn trailing_tokens_rejected() {
        let err = parse_module("ontology m\nclass A\nsubclass A A A").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert_eq!(err.span, Span { line: 3, column: 14 });
    }

    #[test]
    fn reserved_words_cannot_be_declared() {
        assert!(parse_module("ontology m\nclass top").is_err());
    }
}
