use rand::Rng;

use defectont::model::{Axiom, ConceptExpr, KnowledgeBase, NameKind, RoleExpr, Sym};

#[derive(Clone, Copy, Debug)]
pub struct GeneratorConfig {
    pub max_classes: usize,
    pub max_roles: usize,
    pub max_individuals: usize,
    pub max_axioms: usize,
    pub max_depth: usize,
    /// Let concepts mention individuals. The enumerator rejects such
    /// knowledge bases; they are for checking tableau models directly.
    pub nominals: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { max_classes: 3, max_roles: 2, max_individuals: 2, max_axioms: 4, max_depth: 2, nominals: false }
    }
}

const CLASSES: [&str; 4] = ["A", "B", "C", "D"];
const ROLES: [&str; 3] = ["r", "s", "t"];
const INDIVIDUALS: [&str; 3] = ["a", "b", "c"];

fn pick<R: Rng, T: Copy>(rng: &mut R, xs: &[T]) -> T {
    xs[rng.gen_range(0..xs.len())]
}

fn role<R: Rng>(rng: &mut R, roles: &[Sym]) -> RoleExpr {
    let r = pick(rng, roles);
    if rng.gen_bool(0.3) {
        RoleExpr::Inverse(r)
    } else {
        RoleExpr::Named(r)
    }
}

/// Random nominal-free concept of depth at most `depth`.
pub fn random_concept<R: Rng>(rng: &mut R, classes: &[Sym], roles: &[Sym], depth: usize) -> ConceptExpr {
    random_concept_with(rng, classes, roles, &[], depth)
}

/// Like [`random_concept`], with nominals drawn from `individuals`.
pub fn random_concept_with<R: Rng>(rng: &mut R, classes: &[Sym], roles: &[Sym], individuals: &[Sym], depth: usize) -> ConceptExpr {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        return match rng.gen_range(0..20) {
            0 => ConceptExpr::Top,
            1 => ConceptExpr::Bottom,
            2..=4 => ConceptExpr::not(ConceptExpr::Named(pick(rng, classes))),
            5..=7 if !individuals.is_empty() => ConceptExpr::Nominal(pick(rng, individuals)),
            _ => ConceptExpr::Named(pick(rng, classes)),
        };
    }
    let sub = |rng: &mut R| random_concept_with(rng, classes, roles, individuals, depth - 1);
    let choice = if roles.is_empty() { rng.gen_range(0..3) } else { rng.gen_range(0..5) };
    match choice {
        0 => ConceptExpr::not(sub(rng)),
        1 => ConceptExpr::And(vec![sub(rng), sub(rng)]),
        2 => ConceptExpr::Or(vec![sub(rng), sub(rng)]),
        3 => ConceptExpr::exists(role(rng, roles), sub(rng)),
        _ => ConceptExpr::for_all(role(rng, roles), sub(rng)),
    }
}

fn random_axiom<R: Rng>(rng: &mut R, kb: &KnowledgeBase, cfg: &GeneratorConfig) -> Axiom {
    let classes: Vec<Sym> = kb.classes().collect();
    let roles: Vec<Sym> = kb.roles().collect();
    let inds: Vec<Sym> = kb.individuals().collect();
    let noms: &[Sym] = if cfg.nominals { &inds } else { &[] };
    let concept = |rng: &mut R| random_concept_with(rng, &classes, &roles, noms, cfg.max_depth);
    loop {
        let ax = match rng.gen_range(0..20) {
            0..=5 => Axiom::SubClassOf(concept(rng), concept(rng)),
            6..=7 => Axiom::EquivalentClasses(concept(rng), concept(rng)),
            8 if classes.len() >= 2 => Axiom::DisjointClasses(vec![classes[0], classes[1]]),
            9..=11 if !inds.is_empty() => Axiom::ClassAssertion(pick(rng, &inds), concept(rng)),
            12..=13 if !inds.is_empty() && !roles.is_empty() => {
                Axiom::RoleAssertion(pick(rng, &inds), role(rng, &roles), pick(rng, &inds))
            }
            14 if !roles.is_empty() => Axiom::RoleDomain(role(rng, &roles), concept(rng)),
            15 if !roles.is_empty() => Axiom::RoleRange(role(rng, &roles), concept(rng)),
            16 if !roles.is_empty() => Axiom::SubRoleOf(role(rng, &roles), role(rng, &roles)),
            17 if !roles.is_empty() => Axiom::InverseRoles(pick(rng, &roles), pick(rng, &roles)),
            18 if !roles.is_empty() => Axiom::SymmetricRole(pick(rng, &roles)),
            _ => continue,
        };
        return ax;
    }
}

/// A small random knowledge base in the oracle's fragment.
pub fn random_kb<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> KnowledgeBase {
    let mut kb = KnowledgeBase::new();
    let nc = rng.gen_range(1..=cfg.max_classes.clamp(1, CLASSES.len()));
    let nr = rng.gen_range(0..=cfg.max_roles.min(ROLES.len()));
    let ni = rng.gen_range(0..=cfg.max_individuals.min(INDIVIDUALS.len()));
    for name in &CLASSES[..nc] {
        kb.declare(name, NameKind::Class).expect("fresh name");
    }
    for name in &ROLES[..nr] {
        kb.declare(name, NameKind::Role).expect("fresh name");
    }
    for name in &INDIVIDUALS[..ni] {
        kb.declare(name, NameKind::Individual).expect("fresh name");
    }
    let na = rng.gen_range(1..=cfg.max_axioms.max(1));
    for _ in 0..na {
        let ax = random_axiom(rng, &kb, cfg);
        kb.add_axiom(ax, "generated").expect("generated over declared names");
    }
    kb
}
