use super::symbols::Sym;
use super::ModelError;

/// A role reference, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleExpr {
    Named(Sym),
    Inverse(Sym),
}

impl RoleExpr {
    pub fn name(self) -> Sym {
        match self {
            RoleExpr::Named(s) | RoleExpr::Inverse(s) => s,
        }
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, RoleExpr::Inverse(_))
    }

    /// The inverse role. Double inversion collapses back to the named role.
    pub fn inverse(self) -> RoleExpr {
        match self {
            RoleExpr::Named(s) => RoleExpr::Inverse(s),
            RoleExpr::Inverse(s) => RoleExpr::Named(s),
        }
    }
}

/// Class expression abstract syntax.
///
/// `And`/`Or` keep their children in source order, but equality treats them
/// as multisets: `(and A B) == (and B A)`.
#[derive(Clone, Debug)]
pub enum ConceptExpr {
    Top,
    Bottom,
    Named(Sym),
    Not(Box<ConceptExpr>),
    And(Vec<ConceptExpr>),
    Or(Vec<ConceptExpr>),
    Exists(RoleExpr, Box<ConceptExpr>),
    ForAll(RoleExpr, Box<ConceptExpr>),
    Nominal(Sym),
}

impl ConceptExpr {
    pub fn and(children: Vec<ConceptExpr>) -> Result<ConceptExpr, ModelError> {
        if children.len() < 2 {
            return Err(ModelError::Arity { constructor: "and", found: children.len() });
        }
        Ok(ConceptExpr::And(children))
    }

    pub fn or(children: Vec<ConceptExpr>) -> Result<ConceptExpr, ModelError> {
        if children.len() < 2 {
            return Err(ModelError::Arity { constructor: "or", found: children.len() });
        }
        Ok(ConceptExpr::Or(children))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: ConceptExpr) -> ConceptExpr {
        ConceptExpr::Not(Box::new(c))
    }

    pub fn exists(r: RoleExpr, c: ConceptExpr) -> ConceptExpr {
        ConceptExpr::Exists(r, Box::new(c))
    }

    pub fn for_all(r: RoleExpr, c: ConceptExpr) -> ConceptExpr {
        ConceptExpr::ForAll(r, Box::new(c))
    }

    /// Negation normal form: `Not` appears only directly above `Named` or
    /// `Nominal`, and `Not` of `Top`/`Bottom` is folded away.
    pub fn nnf(&self) -> ConceptExpr {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Named(_) | ConceptExpr::Nominal(_) => self.clone(),
            ConceptExpr::And(cs) => ConceptExpr::And(cs.iter().map(|c| c.nnf()).collect()),
            ConceptExpr::Or(cs) => ConceptExpr::Or(cs.iter().map(|c| c.nnf()).collect()),
            ConceptExpr::Exists(r, c) => ConceptExpr::exists(*r, c.nnf()),
            ConceptExpr::ForAll(r, c) => ConceptExpr::for_all(*r, c.nnf()),
            ConceptExpr::Not(inner) => inner.negated_nnf(),
        }
    }

    /// `nnf(Not(self))` without building the intermediate node.
    pub fn negated_nnf(&self) -> ConceptExpr {
        match self {
            ConceptExpr::Top => ConceptExpr::Bottom,
            ConceptExpr::Bottom => ConceptExpr::Top,
            ConceptExpr::Named(_) | ConceptExpr::Nominal(_) => ConceptExpr::not(self.clone()),
            ConceptExpr::Not(inner) => inner.nnf(),
            ConceptExpr::And(cs) => ConceptExpr::Or(cs.iter().map(|c| c.negated_nnf()).collect()),
            ConceptExpr::Or(cs) => ConceptExpr::And(cs.iter().map(|c| c.negated_nnf()).collect()),
            ConceptExpr::Exists(r, c) => ConceptExpr::for_all(*r, c.negated_nnf()),
            ConceptExpr::ForAll(r, c) => ConceptExpr::exists(*r, c.negated_nnf()),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Named(_) | ConceptExpr::Nominal(_) => true,
            ConceptExpr::Not(inner) => matches!(**inner, ConceptExpr::Named(_) | ConceptExpr::Nominal(_)),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => cs.iter().all(|c| c.is_nnf()),
            ConceptExpr::Exists(_, c) | ConceptExpr::ForAll(_, c) => c.is_nnf(),
        }
    }

    /// Nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Named(_) | ConceptExpr::Nominal(_) => 0,
            ConceptExpr::Not(c) | ConceptExpr::Exists(_, c) | ConceptExpr::ForAll(_, c) => 1 + c.depth(),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => 1 + cs.iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    /// Checks constructor arities (`And`/`Or` need at least two children).
    pub fn check_arity(&self) -> Result<(), ModelError> {
        match self {
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
                if cs.len() < 2 {
                    let constructor = if matches!(self, ConceptExpr::And(_)) { "and" } else { "or" };
                    return Err(ModelError::Arity { constructor, found: cs.len() });
                }
                cs.iter().try_for_each(|c| c.check_arity())
            }
            ConceptExpr::Not(c) | ConceptExpr::Exists(_, c) | ConceptExpr::ForAll(_, c) => c.check_arity(),
            _ => Ok(()),
        }
    }

    /// Visits every symbol mentioned in the expression (classes, roles,
    /// nominal individuals).
    pub fn for_each_sym(&self, f: &mut impl FnMut(Sym)) {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom => {}
            ConceptExpr::Named(s) | ConceptExpr::Nominal(s) => f(*s),
            ConceptExpr::Not(c) => c.for_each_sym(f),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => cs.iter().for_each(|c| c.for_each_sym(f)),
            ConceptExpr::Exists(r, c) | ConceptExpr::ForAll(r, c) => {
                f(r.name());
                c.for_each_sym(f);
            }
        }
    }

    /// Rewrites every symbol through `f`.
    pub fn map_syms(&self, f: &mut impl FnMut(Sym) -> Sym) -> ConceptExpr {
        match self {
            ConceptExpr::Top => ConceptExpr::Top,
            ConceptExpr::Bottom => ConceptExpr::Bottom,
            ConceptExpr::Named(s) => ConceptExpr::Named(f(*s)),
            ConceptExpr::Nominal(s) => ConceptExpr::Nominal(f(*s)),
            ConceptExpr::Not(c) => ConceptExpr::not(c.map_syms(f)),
            ConceptExpr::And(cs) => ConceptExpr::And(cs.iter().map(|c| c.map_syms(f)).collect()),
            ConceptExpr::Or(cs) => ConceptExpr::Or(cs.iter().map(|c| c.map_syms(f)).collect()),
            ConceptExpr::Exists(r, c) => ConceptExpr::exists(map_role(*r, f), c.map_syms(f)),
            ConceptExpr::ForAll(r, c) => ConceptExpr::for_all(map_role(*r, f), c.map_syms(f)),
        }
    }
}

pub(crate) fn map_role(r: RoleExpr, f: &mut impl FnMut(Sym) -> Sym) -> RoleExpr {
    match r {
        RoleExpr::Named(s) => RoleExpr::Named(f(s)),
        RoleExpr::Inverse(s) => RoleExpr::Inverse(f(s)),
    }
}

fn multiset_eq(a: &[ConceptExpr], b: &[ConceptExpr]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (i, y) in b.iter().enumerate() {
            if !used[i] && x == y {
                used[i] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl PartialEq for ConceptExpr {
    fn eq(&self, other: &Self) -> bool {
        use ConceptExpr::*;
        match (self, other) {
            (Top, Top) | (Bottom, Bottom) => true,
            (Named(a), Named(b)) | (Nominal(a), Nominal(b)) => a == b,
            (Not(a), Not(b)) => a == b,
            (And(a), And(b)) | (Or(a), Or(b)) => multiset_eq(a, b),
            (Exists(r, a), Exists(s, b)) | (ForAll(r, a), ForAll(s, b)) => r == s && a == b,
            _ => false,
        }
    }
}

impl Eq for ConceptExpr {}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> ConceptExpr {
        ConceptExpr::Named(Sym::from_raw(0))
    }
    fn b() -> ConceptExpr {
        ConceptExpr::Named(Sym::from_raw(1))
    }
    fn r() -> RoleExpr {
        RoleExpr::Named(Sym::from_raw(2))
    }

    #[test]
    fn de_morgan() {
        let c = ConceptExpr::not(ConceptExpr::And(vec![a(), b()]));
        assert_eq!(c.nnf(), ConceptExpr::Or(vec![ConceptExpr::not(a()), ConceptExpr::not(b())]));
    }

    #[test]
    fn quantifier_duality() {
        let c = ConceptExpr::not(ConceptExpr::exists(r(), ConceptExpr::not(a())));
        assert_eq!(c.nnf(), ConceptExpr::for_all(r(), a()));
    }

    #[test]
    fn named_is_fixed_point() {
        assert_eq!(a().nnf(), a());
        assert!(ConceptExpr::not(a()).is_nnf());
        assert!(!ConceptExpr::not(ConceptExpr::not(a())).is_nnf());
    }

    #[test]
    fn and_or_compare_as_multisets() {
        assert_eq!(ConceptExpr::And(vec![a(), b()]), ConceptExpr::And(vec![b(), a()]));
        assert_ne!(ConceptExpr::And(vec![a(), a()]), ConceptExpr::And(vec![a(), b()]));
        assert_ne!(ConceptExpr::And(vec![a(), b()]), ConceptExpr::Or(vec![a(), b()]));
    }

    #[test]
    fn arity_is_checked() {
        assert!(ConceptExpr::and(vec![a()]).is_err());
        assert!(ConceptExpr::or(vec![]).is_err());
        assert!(ConceptExpr::and(vec![a(), b()]).is_ok());
        let nested = ConceptExpr::exists(r(), ConceptExpr::Or(vec![a()]));
        assert!(matches!(nested.check_arity(), Err(ModelError::Arity { constructor: "or", found: 1 })));
    }

    #[test]
    fn inverse_role_collapses() {
        assert_eq!(r().inverse().inverse(), r());
    }
}
