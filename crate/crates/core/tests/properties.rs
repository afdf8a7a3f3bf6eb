use std::collections::BTreeSet;

use proptest::prelude::*;
use rust_decimal::Decimal;

use defectont::dlo::{parse_module, render_axiom, serialize_module, ParseErrorKind, SourceModule, Span};
use defectont::linker::{kb_to_module, link, normalize_names, prune_to_signature, LoadError};
use defectont::model::{AttrType, Axiom, ConceptExpr as C, KnowledgeBase, Literal, NameKind, RoleExpr, Signature, Sym};
use defectont::reasoner::Reasoner;

const CLASSES: [&str; 4] = ["A", "B", "Cx", "Dee"];
const ROLES: [&str; 3] = ["r", "s", "t"];
const INDIVIDUALS: [&str; 2] = ["a", "b"];

fn base_kb() -> KnowledgeBase {
    let mut kb = KnowledgeBase::new();
    for n in CLASSES {
        kb.declare(n, NameKind::Class).unwrap();
    }
    for n in ROLES {
        kb.declare(n, NameKind::Role).unwrap();
    }
    for n in INDIVIDUALS {
        kb.declare(n, NameKind::Individual).unwrap();
    }
    kb.declare_attribute("len", AttrType::Decimal).unwrap();
    kb.declare_attribute("label", AttrType::String).unwrap();
    kb
}

fn syms(kb: &KnowledgeBase, kind: NameKind) -> Vec<Sym> {
    kb.symbols().iter().filter(|(_, _, k)| *k == kind).map(|(s, _, _)| s).collect()
}

fn role_expr(roles: Vec<Sym>) -> impl Strategy<Value = RoleExpr> {
    (prop::sample::select(roles), any::<bool>()).prop_map(|(r, inv)| if inv { RoleExpr::Inverse(r) } else { RoleExpr::Named(r) })
}

fn concept(kb: &KnowledgeBase, depth: u32) -> impl Strategy<Value = C> {
    let classes = syms(kb, NameKind::Class);
    let roles = syms(kb, NameKind::Role);
    let inds = syms(kb, NameKind::Individual);
    let leaf = prop_oneof![
        Just(C::Top),
        Just(C::Bottom),
        prop::sample::select(classes).prop_map(C::Named),
        prop::sample::select(inds).prop_map(C::Nominal),
    ];
    leaf.prop_recursive(depth, 64, 3, move |inner| {
        let r = || role_expr(roles.clone());
        prop_oneof![
            inner.clone().prop_map(C::not),
            prop::collection::vec(inner.clone(), 2..4).prop_map(C::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(C::Or),
            (r(), inner.clone()).prop_map(|(r, c)| C::exists(r, c)),
            (r(), inner).prop_map(|(r, c)| C::for_all(r, c)),
        ]
    })
}

fn axiom(kb: &KnowledgeBase) -> impl Strategy<Value = Axiom> {
    let classes = syms(kb, NameKind::Class);
    let roles = syms(kb, NameKind::Role);
    let inds = syms(kb, NameKind::Individual);
    let len = kb.attribute("len").unwrap();
    let label = kb.attribute("label").unwrap();
    let c = || concept(kb, 3);
    let r = || role_expr(roles.clone());
    let ind = || prop::sample::select(inds.clone());
    let role = || prop::sample::select(roles.clone());
    let unit = prop::option::of(prop::sample::select(vec!["mm", "m", "K", "degC"]));
    prop_oneof![
        4 => (c(), c()).prop_map(|(a, b)| Axiom::SubClassOf(a, b)),
        2 => (c(), c()).prop_map(|(a, b)| Axiom::EquivalentClasses(a, b)),
        1 => prop::sample::subsequence(classes, 2..=3).prop_map(Axiom::DisjointClasses),
        1 => (r(), r()).prop_map(|(a, b)| Axiom::SubRoleOf(a, b)),
        1 => (role(), role()).prop_map(|(a, b)| Axiom::InverseRoles(a, b)),
        1 => role().prop_map(Axiom::SymmetricRole),
        1 => (r(), c()).prop_map(|(a, b)| Axiom::RoleDomain(a, b)),
        1 => (r(), c()).prop_map(|(a, b)| Axiom::RoleRange(a, b)),
        2 => (ind(), c()).prop_map(|(a, b)| Axiom::ClassAssertion(a, b)),
        2 => (ind(), r(), ind()).prop_map(|(a, p, b)| Axiom::RoleAssertion(a, p, b)),
        1 => (ind(), -100_000i64..100_000, 0u32..4, unit).prop_map(move |(a, m, scale, unit)| Axiom::DataAssertion {
            individual: a,
            attribute: len,
            value: Literal::Decimal(Decimal::new(m, scale)),
            unit: unit.map(String::from),
        }),
        1 => (ind(), "[a-z \"\\\\#]{0,8}").prop_map(move |(a, text)| Axiom::DataAssertion {
            individual: a,
            attribute: label,
            value: Literal::Text(text),
            unit: None,
        }),
    ]
}

fn generated_kb(max: usize) -> impl Strategy<Value = KnowledgeBase> {
    let kb = base_kb();
    prop::collection::vec(axiom(&kb), 0..max).prop_map(move |axioms| {
        let mut out = kb.clone();
        for ax in axioms {
            out.add_axiom(ax, "generated").unwrap();
        }
        out
    })
}

/// Rendered axioms, one statement per entry (some axioms render as two).
fn rendered(kb: &KnowledgeBase) -> BTreeSet<String> {
    kb.axioms().iter().flat_map(|a| render_axiom(kb.symbols(), a).lines().map(String::from).collect::<Vec<_>>()).collect()
}

fn text_of(kb: &KnowledgeBase, name: &str) -> String {
    serialize_module(&kb_to_module(kb, name))
}

proptest! {
    #[test]
    fn nnf_is_idempotent(c in concept(&base_kb(), 6)) {
        let n = c.nnf();
        prop_assert!(n.is_nnf());
        prop_assert_eq!(n.nnf(), n.clone());
        prop_assert_eq!(C::not(c).nnf(), C::not(n).nnf());
    }

    #[test]
    fn undeclared_name_is_reported_where_it_is(kb in generated_kb(8), at in any::<prop::sample::Index>()) {
        let text = text_of(&kb, "gen");
        let mut lines: Vec<&str> = text.lines().collect();
        // after the header, between whole statements
        let i = 1 + at.index(lines.len());
        lines.insert(i, "subclass Nope A");
        let err = parse_module(&lines.join("\n")).unwrap_err();
        prop_assert_eq!(err.kind, ParseErrorKind::Declaration);
        prop_assert_eq!(err.span, Span { line: i + 1, column: 10 });
    }

    #[test]
    fn bad_character_is_reported_where_it_is(kb in generated_kb(8), at in any::<prop::sample::Index>()) {
        let text = text_of(&kb, "gen");
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let i = at.index(lines.len());
        lines[i].insert(0, '$');
        let err = parse_module(&lines.join("\n")).unwrap_err();
        prop_assert_eq!(err.kind, ParseErrorKind::Lexical);
        prop_assert_eq!(err.span, Span { line: i + 1, column: 1 });
    }

    #[test]
    fn prune_is_idempotent_and_monotone(kb in generated_kb(10), picks in prop::sample::subsequence(CLASSES.to_vec(), 0..=4), extra in prop::sample::select(ROLES.to_vec())) {
        let mut small = Signature::new();
        for n in &picks {
            small.insert(NameKind::Class, n);
        }
        let mut big = small.clone();
        big.insert(NameKind::Role, extra);
        let once = prune_to_signature(&kb, &small).unwrap();
        let twice = prune_to_signature(&once, &small).unwrap();
        prop_assert_eq!(rendered(&once), rendered(&twice));
        let wider = prune_to_signature(&kb, &big).unwrap();
        prop_assert!(rendered(&once).is_subset(&rendered(&wider)));
        prop_assert!(rendered(&wider).is_subset(&rendered(&kb)));
    }

    #[test]
    fn renaming_back_restores_the_module(kb in generated_kb(10)) {
        let there = vec![("A".to_string(), "Zed".to_string()), ("r".to_string(), "q".to_string()), ("a".to_string(), "x".to_string())];
        let back: Vec<_> = there.iter().map(|(o, n)| (n.clone(), o.clone())).collect();
        let renamed = normalize_names(&kb, &there).unwrap();
        prop_assert!(renamed.symbols().lookup("A").is_none());
        let restored = normalize_names(&renamed, &back).unwrap();
        prop_assert!(kb_to_module(&kb, "m").same_structure(&kb_to_module(&restored, "m")));
    }

    #[test]
    fn import_order_does_not_matter(kb in generated_kb(8), split in any::<prop::sample::Index>()) {
        let n = kb.axioms().len();
        let cut = if n == 0 { 0 } else { split.index(n + 1) };
        let part = |range: std::ops::Range<usize>| {
            let mut out = base_kb();
            for ax in &kb.axioms()[range] {
                out.add_axiom(ax.clone(), "part").unwrap();
            }
            out
        };
        let (m1, m2) = (text_of(&part(0..cut), "m1"), text_of(&part(cut..n), "m2"));
        let linked = |order: [&str; 2]| {
            let root = format!("ontology root\nimport {}\nimport {}\n", order[0], order[1]);
            link("root", |name| {
                let text = match name { "root" => &root, "m1" => &m1, "m2" => &m2, _ => return Err(LoadError::NotFound) };
                Ok::<SourceModule, LoadError>(parse_module(text)?)
            })
            .unwrap()
            .kb
        };
        let (ab, ba) = (linked(["m1", "m2"]), linked(["m2", "m1"]));
        prop_assert_eq!(rendered(&ab), rendered(&ba));
        prop_assert_eq!(rendered(&ab), rendered(&kb));
        prop_assert_eq!(Reasoner::new(&ab).is_consistent().unwrap(), Reasoner::new(&ba).is_consistent().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn generated_modules_round_trip(kb in generated_kb(12)) {
        let module = kb_to_module(&kb, "gen");
        let text = serialize_module(&module);
        let again = parse_module(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert!(module.same_structure(&again), "{}", text);
        prop_assert_eq!(serialize_module(&again), text);
    }
}
