//! Module pipeline: import resolution, signature pruning, renaming and
//! equivalence bridging. Each step produces a new [`KnowledgeBase`].

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::dlo::{Declaration, ParseError, SourceModule};
use crate::model::{Axiom, ConceptExpr, KnowledgeBase, ModelError, NameKind, Signature, Sym};

/// Origin tag for equivalences added by [`bridge_equivalences`].
pub const BRIDGE_ORIGIN: &str = "bridge";

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("not found")]
    NotFound,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("missing module `{name}`{}", importer.as_ref().map(|i| format!(" (imported by `{i}`)")).unwrap_or_default())]
    MissingModule { name: String, importer: Option<String> },
    #[error("module `{module}`: {source}")]
    Load { module: String, source: LoadError },
    #[error("file for module `{expected}` declares `ontology {found}`")]
    NameMismatch { expected: String, found: String },
    #[error("import cycle: {}", path.join(" -> "))]
    ImportCycle { path: Vec<String> },
    #[error("module `{module}`: {source}")]
    Declaration { module: String, source: ModelError },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{0}` is not a class")]
    NotAClass(String),
    #[error("renaming to `{new}` collides with an existing name")]
    Collision { new: String },
    #[error("line {line}: expected two tab-separated columns")]
    BadPairLine { line: usize },
}

/// Result of [`link`]: the merged knowledge base and the modules it was built
/// from, in merge order.
#[derive(Debug, Clone)]
pub struct Linked {
    pub kb: KnowledgeBase,
    pub modules: Vec<String>,
}

struct Linker<F> {
    loader: F,
    kb: KnowledgeBase,
    done: HashSet<String>,
    order: Vec<String>,
    stack: Vec<String>,
}

impl<F: FnMut(&str) -> Result<SourceModule, LoadError>> Linker<F> {
    fn visit(&mut self, name: &str, importer: Option<&str>) -> Result<(), LinkError> {
        if let Some(pos) = self.stack.iter().position(|m| m == name) {
            let mut path = self.stack[pos..].to_vec();
            path.push(name.to_string());
            return Err(LinkError::ImportCycle { path });
        }
        if self.done.contains(name) {
            return Ok(());
        }
        let module = match (self.loader)(name) {
            Ok(m) => m,
            Err(LoadError::NotFound) => {
                return Err(LinkError::MissingModule { name: name.to_string(), importer: importer.map(str::to_string) })
            }
            Err(e) => return Err(LinkError::Load { module: name.to_string(), source: e }),
        };
        if module.name != name {
            return Err(LinkError::NameMismatch { expected: name.to_string(), found: module.name });
        }
        self.stack.push(name.to_string());
        for imp in &module.imports {
            self.visit(&imp.item, Some(name))?;
        }
        self.stack.pop();
        merge_module(&mut self.kb, &module)?;
        self.done.insert(name.to_string());
        self.order.push(name.to_string());
        Ok(())
    }
}

/// Adds one module's declarations and axioms to `kb`. Identical redeclarations
/// merge silently; role flags become `InverseRoles`/`SymmetricRole` axioms
/// (once per distinct flag).
pub fn merge_module(kb: &mut KnowledgeBase, module: &SourceModule) -> Result<(), LinkError> {
    let err = |source| LinkError::Declaration { module: module.name.clone(), source };
    let mut remap: HashMap<Sym, Sym> = HashMap::new();
    for (sym, name, kind) in module.symbols.iter() {
        let mine = match (kind, module.symbols.attr_type(sym)) {
            (NameKind::Attribute, Some(ty)) => kb.declare_attribute(name, ty),
            _ => kb.declare(name, kind),
        }
        .map_err(err)?;
        remap.insert(sym, mine);
    }
    for decl in &module.declarations {
        if let Declaration::Role { name, inverse, symmetric } = decl.item {
            let mut flags = Vec::new();
            if let Some(inv) = inverse {
                flags.push(Axiom::InverseRoles(remap[&name], remap[&inv]));
            }
            if symmetric {
                flags.push(Axiom::SymmetricRole(remap[&name]));
            }
            for f in flags {
                if !kb.axioms().contains(&f) {
                    kb.add_axiom(f, &module.name).map_err(err)?;
                }
            }
        }
    }
    for ax in &module.axioms {
        kb.add_axiom(ax.item.map_syms(&mut |s| remap[&s]), &module.name).map_err(err)?;
    }
    Ok(())
}

/// Loads `root` and everything it transitively imports, depth first, each
/// module once. Imports are merged before their importer.
pub fn link<F>(root: &str, loader: F) -> Result<Linked, LinkError>
where
    F: FnMut(&str) -> Result<SourceModule, LoadError>,
{
    let mut linker = Linker { loader, kb: KnowledgeBase::new(), done: HashSet::new(), order: Vec::new(), stack: Vec::new() };
    linker.visit(root, None)?;
    Ok(Linked { kb: linker.kb, modules: linker.order })
}

pub fn resolve_imports<F>(root: &str, loader: F) -> Result<KnowledgeBase, LinkError>
where
    F: FnMut(&str) -> Result<SourceModule, LoadError>,
{
    link(root, loader).map(|l| l.kb)
}

/// Builds a knowledge base from the text of one module. Imports are
/// reported as missing.
pub fn single_module(text: &str) -> Result<KnowledgeBase, LinkError> {
    let module = crate::dlo::parse_module(text).map_err(|e| LinkError::Load { module: String::new(), source: e.into() })?;
    let name = module.name.clone();
    let mut module = Some(module);
    resolve_imports(&name, move |_| module.take().ok_or(LoadError::NotFound))
}

/// Keeps the axioms reachable from `seed`: an axiom survives if it mentions
/// a kept name, and then all of its names are kept too, until nothing
/// changes. Whole axioms are kept, never rewritten.
pub fn prune_to_signature(kb: &KnowledgeBase, seed: &Signature) -> Result<KnowledgeBase, LinkError> {
    let mut kept: HashSet<Sym> = HashSet::new();
    for name in seed.names() {
        kept.insert(kb.symbols().lookup(name).ok_or_else(|| LinkError::UnknownName(name.to_string()))?);
    }
    let mentions: Vec<Vec<Sym>> = kb.axioms().iter().map(|a| a.syms()).collect();
    let mut keep_axiom = vec![false; mentions.len()];
    loop {
        let mut changed = false;
        for (i, syms) in mentions.iter().enumerate() {
            if !keep_axiom[i] && syms.iter().any(|s| kept.contains(s)) {
                keep_axiom[i] = true;
                kept.extend(syms.iter().copied());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = KnowledgeBase::new();
    let mut remap = HashMap::new();
    for (sym, name, kind) in kb.symbols().iter() {
        if kept.contains(&sym) {
            let new = match kb.symbols().attr_type(sym) {
                Some(ty) => out.declare_attribute(name, ty),
                None => out.declare(name, kind),
            }
            .expect("names from a well-formed KB");
            remap.insert(sym, new);
        }
    }
    for (i, (ax, origin)) in kb.axioms_with_origin().enumerate() {
        if keep_axiom[i] {
            out.add_axiom(ax.map_syms(&mut |s| remap[&s]), origin).expect("axiom over kept names");
        }
    }
    Ok(out)
}

/// Renames names everywhere. Every old name must exist; a new name may not
/// already exist unless it is itself being renamed away.
pub fn normalize_names(kb: &KnowledgeBase, renames: &[(String, String)]) -> Result<KnowledgeBase, LinkError> {
    let mut olds = Vec::with_capacity(renames.len());
    for (old, _) in renames {
        olds.push(kb.symbols().lookup(old).ok_or_else(|| LinkError::UnknownName(old.clone()))?);
    }
    let old_names: HashSet<&str> = renames.iter().map(|(o, _)| o.as_str()).collect();
    let mut new_names = HashSet::new();
    for (_, new) in renames {
        let taken = kb.symbols().lookup(new).is_some() && !old_names.contains(new.as_str());
        if taken || !new_names.insert(new.as_str()) || crate::model::kb_reserved(new) {
            return Err(LinkError::Collision { new: new.clone() });
        }
    }
    let mut out = kb.clone();
    // Two phases so that swaps (a->b, b->a) work.
    for (i, sym) in olds.iter().enumerate() {
        out.symbols_mut().rename(*sym, &format!("\u{0}rename{i}"));
    }
    for (sym, (_, new)) in olds.iter().zip(renames) {
        out.symbols_mut().rename(*sym, new);
    }
    Ok(out)
}

/// Appends `EquivalentClasses(a, b)` for every pair, tagged [`BRIDGE_ORIGIN`].
pub fn bridge_equivalences(kb: &KnowledgeBase, pairs: &[(String, String)]) -> Result<KnowledgeBase, LinkError> {
    let class = |name: &str| -> Result<Sym, LinkError> {
        let sym = kb.symbols().lookup(name).ok_or_else(|| LinkError::UnknownName(name.to_string()))?;
        if kb.symbols().kind(sym) != NameKind::Class {
            return Err(LinkError::NotAClass(name.to_string()));
        }
        Ok(sym)
    };
    let mut out = kb.clone();
    for (a, b) in pairs {
        let ax = Axiom::EquivalentClasses(ConceptExpr::Named(class(a)?), ConceptExpr::Named(class(b)?));
        out.add_axiom(ax, BRIDGE_ORIGIN).expect("validated names");
    }
    Ok(out)
}

/// Parses a two-column tab-separated file (rename maps, bridge pairs).
/// Blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, LinkError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() != 2 || cols.iter().any(|c| c.is_empty()) {
            return Err(LinkError::BadPairLine { line: i + 1 });
        }
        out.push((cols[0].to_string(), cols[1].to_string()));
    }
    Ok(out)
}

/// Reads a whitespace-separated list of names and sorts them into a
/// [`Signature`] by their kind in `kb`.
pub fn parse_signature(text: &str, kb: &KnowledgeBase) -> Result<Signature, LinkError> {
    let mut sig = Signature::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for name in line.split_whitespace() {
            let sym = kb.symbols().lookup(name).ok_or_else(|| LinkError::UnknownName(name.to_string()))?;
            sig.insert(kb.symbols().kind(sym), name);
        }
    }
    Ok(sig)
}

/// Builds a single self-contained module from a knowledge base, e.g. to
/// write out the result of a merge. Inverse and symmetry axioms fold back
/// into role declarations where possible.
pub fn kb_to_module(kb: &KnowledgeBase, name: &str) -> SourceModule {
    use crate::dlo::Spanned;
    let mut module = SourceModule {
        name: name.to_string(),
        imports: Vec::new(),
        symbols: kb.symbols().clone(),
        declarations: Vec::new(),
        axioms: Vec::new(),
    };
    let mut role_decl: HashMap<Sym, (Option<Sym>, bool)> = HashMap::new();
    let mut inverse_of: HashSet<Sym> = HashSet::new();
    let mut leftover = Vec::new();
    for ax in kb.axioms() {
        match *ax {
            Axiom::InverseRoles(r, s)
                if r != s && !inverse_of.contains(&r) && !inverse_of.contains(&s) && !role_decl.contains_key(&s) && role_decl.get(&r).map_or(true, |d| d.0.is_none()) =>
            {
                role_decl.entry(r).or_insert((None, false)).0 = Some(s);
                inverse_of.insert(s);
            }
            Axiom::SymmetricRole(r) if !inverse_of.contains(&r) => {
                role_decl.entry(r).or_insert((None, false)).1 = true;
            }
            _ => leftover.push(ax.clone()),
        }
    }
    // A symmetric flag set before the role turned out to be someone's inverse
    // cannot be expressed on that declaration.
    let mut extra = Vec::new();
    for (sym, info) in role_decl.iter_mut() {
        if inverse_of.contains(sym) {
            if info.1 {
                extra.push(Axiom::SymmetricRole(*sym));
            }
            info.1 = false;
        }
    }
    for (sym, _, kind) in kb.symbols().iter() {
        let decl = match kind {
            NameKind::Class => Declaration::Class(sym),
            NameKind::Individual => Declaration::Individual(sym),
            NameKind::Attribute => Declaration::Attribute(sym, kb.symbols().attr_type(sym).unwrap_or(crate::model::AttrType::Decimal)),
            NameKind::Role => {
                if inverse_of.contains(&sym) {
                    continue;
                }
                let (inverse, symmetric) = role_decl.get(&sym).copied().unwrap_or((None, false));
                Declaration::Role { name: sym, inverse, symmetric }
            }
        };
        module.declarations.push(Spanned { item: decl, span: Default::default() });
    }
    for ax in extra.into_iter().chain(leftover) {
        match ax {
            // No statement form: express via role inclusions.
            Axiom::InverseRoles(r, s) => {
                use crate::model::RoleExpr::{Inverse, Named};
                module.axioms.push(Spanned { item: Axiom::SubRoleOf(Named(r), Inverse(s)), span: Default::default() });
                module.axioms.push(Spanned { item: Axiom::SubRoleOf(Inverse(s), Named(r)), span: Default::default() });
            }
            Axiom::SymmetricRole(r) => {
                use crate::model::RoleExpr::{Inverse, Named};
                module.axioms.push(Spanned { item: Axiom::SubRoleOf(Named(r), Inverse(r)), span: Default::default() });
            }
            other => module.axioms.push(Spanned { item: other, span: Default::default() }),
        }
    }
    module
}
