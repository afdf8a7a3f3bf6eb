use std::collections::HashMap;
use std::fmt;

use super::ModelError;

/// Interned name id. Only meaningful relative to the [`SymbolTable`] that
/// issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(u32);

impl Sym {
    pub fn from_raw(raw: u32) -> Sym {
        Sym(raw)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NameKind {
    Class,
    Role,
    Attribute,
    Individual,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Class => "class",
            NameKind::Role => "role",
            NameKind::Attribute => "attribute",
            NameKind::Individual => "individual",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttrType {
    Decimal,
    String,
}

impl fmt::Display for AttrType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttrType::Decimal => "decimal",
            AttrType::String => "string",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry {
    name: String,
    kind: NameKind,
    attr_type: Option<AttrType>,
}

/// Name interner. Each name has exactly one kind.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    entries: Vec<Entry>,
    index: HashMap<String, Sym>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `name` with `kind`. Re-declaring with the same kind returns the
    /// existing id; a different kind is a clash.
    pub fn declare(&mut self, name: &str, kind: NameKind) -> Result<Sym, ModelError> {
        if let Some(&sym) = self.index.get(name) {
            let existing = self.entries[sym.index()].kind;
            if existing != kind {
                return Err(ModelError::KindClash { name: name.to_string(), existing, requested: kind });
            }
            return Ok(sym);
        }
        let sym = Sym(self.entries.len() as u32);
        self.entries.push(Entry { name: name.to_string(), kind, attr_type: None });
        self.index.insert(name.to_string(), sym);
        Ok(sym)
    }

    pub fn declare_attribute(&mut self, name: &str, ty: AttrType) -> Result<Sym, ModelError> {
        let sym = self.declare(name, NameKind::Attribute)?;
        let entry = &mut self.entries[sym.index()];
        match entry.attr_type {
            Some(existing) if existing != ty => Err(ModelError::AttributeTypeClash { name: name.to_string(), existing, requested: ty }),
            _ => {
                entry.attr_type = Some(ty);
                Ok(sym)
            }
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.index.get(name).copied()
    }

    /// Looks up `name` and checks that it has `kind`.
    pub fn resolve(&self, name: &str, kind: NameKind) -> Result<Sym, ModelError> {
        let sym = self.lookup(name).ok_or_else(|| ModelError::Undeclared { name: name.to_string(), kind })?;
        let found = self.kind(sym);
        if found != kind {
            return Err(ModelError::KindMismatch { name: name.to_string(), expected: kind, found });
        }
        Ok(sym)
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.entries[sym.index()].name
    }

    pub fn kind(&self, sym: Sym) -> NameKind {
        self.entries[sym.index()].kind
    }

    pub fn attr_type(&self, sym: Sym) -> Option<AttrType> {
        self.entries[sym.index()].attr_type
    }

    pub fn contains(&self, sym: Sym) -> bool {
        sym.index() < self.entries.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sym, &str, NameKind)> + '_ {
        self.entries.iter().enumerate().map(|(i, e)| (Sym(i as u32), e.name.as_str(), e.kind))
    }

    pub fn of_kind(&self, kind: NameKind) -> impl Iterator<Item = Sym> + '_ {
        self.iter().filter(move |(_, _, k)| *k == kind).map(|(s, _, _)| s)
    }

    /// Renames a symbol in place. The caller guarantees `new` is unused.
    pub(crate) fn rename(&mut self, sym: Sym, new: &str) {
        let old = std::mem::replace(&mut self.entries[sym.index()].name, new.to_string());
        self.index.remove(&old);
        self.index.insert(new.to_string(), sym);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn redeclaration_is_idempotent() {
        let mut t = SymbolTable::new();
        let a = t.declare("Defect", NameKind::Class).unwrap();
        assert_eq!(t.declare("Defect", NameKind::Class).unwrap(), a);
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn kind_clash_is_rejected() {
        let mut t = SymbolTable::new();
        t.declare("affects", NameKind::Role).unwrap();
        let err = t.declare("affects", NameKind::Class).unwrap_err();
        assert!(matches!(err, ModelError::KindClash { existing: NameKind::Role, .. }));
    }

    #[test]
    fn rename_updates_index() {
        let mut t = SymbolTable::new();
        let s = t.declare("influencedBy", NameKind::Role).unwrap();
        t.rename(s, "isInfluencedBy");
        assert_eq!(t.lookup("isInfluencedBy"), Some(s));
        assert_eq!(t.lookup("influencedBy"), None);
        assert_eq!(t.name(s), "isInfluencedBy");
    }
}
