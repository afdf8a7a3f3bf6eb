use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use crate::model::{KnowledgeBase, Sym};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaxNode {
    /// Mutually equivalent classes, sorted by name.
    pub classes: Vec<Sym>,
    pub names: Vec<String>,
    pub parents: Vec<usize>,
    pub children: Vec<usize>,
}

/// Class hierarchy with equivalent classes sharing a node. Node 0 is `top`
/// and node 1 is `bot`; edges are direct subsumptions only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Taxonomy {
    nodes: Vec<TaxNode>,
    node_of: HashMap<Sym, usize>,
}

const TOP: usize = 0;
const BOTTOM: usize = 1;

impl Taxonomy {
    /// `supers[a]` holds every named class strictly or equivalently above a
    /// satisfiable class `a` (not `a` itself).
    pub(crate) fn build(
        kb: &KnowledgeBase,
        classes: &[Sym],
        supers: &BTreeMap<Sym, BTreeSet<Sym>>,
        unsatisfiable: &BTreeSet<Sym>,
        top_equivalent: &BTreeSet<Sym>,
    ) -> Taxonomy {
        let by_name = |v: &mut Vec<Sym>| v.sort_by(|a, b| kb.name(*a).cmp(kb.name(*b)));
        let empty = BTreeSet::new();
        let sup = |a: Sym| supers.get(&a).unwrap_or(&empty);

        let mut nodes = Vec::new();
        let mut node_of = HashMap::new();
        let mut special = |set: &BTreeSet<Sym>, nodes: &mut Vec<TaxNode>| {
            let mut cs: Vec<Sym> = set.iter().copied().collect();
            by_name(&mut cs);
            for &c in &cs {
                node_of.insert(c, nodes.len());
            }
            nodes.push(TaxNode { names: cs.iter().map(|c| kb.name(*c).to_string()).collect(), classes: cs, parents: Vec::new(), children: Vec::new() });
        };
        special(top_equivalent, &mut nodes);
        special(unsatisfiable, &mut nodes);

        for &a in classes {
            if node_of.contains_key(&a) {
                continue;
            }
            let mut group: Vec<Sym> = sup(a).iter().copied().filter(|&b| !top_equivalent.contains(&b) && sup(b).contains(&a)).collect();
            group.push(a);
            by_name(&mut group);
            let id = nodes.len();
            for &c in &group {
                node_of.insert(c, id);
            }
            nodes.push(TaxNode { names: group.iter().map(|c| kb.name(*c).to_string()).collect(), classes: group, parents: Vec::new(), children: Vec::new() });
        }

        for id in 2..nodes.len() {
            let rep = nodes[id].classes[0];
            let strict: BTreeSet<usize> = sup(rep).iter().map(|b| node_of[b]).filter(|&n| n != id && n != TOP).collect();
            let mut parents: Vec<usize> = strict
                .iter()
                .copied()
                .filter(|&p| {
                    let prep = nodes[p].classes[0];
                    !strict.iter().any(|&q| q != p && sup(nodes[q].classes[0]).contains(&prep))
                })
                .collect();
            if parents.is_empty() {
                parents.push(TOP);
            }
            nodes[id].parents = parents;
        }
        for id in 2..nodes.len() {
            for p in nodes[id].parents.clone() {
                nodes[p].children.push(id);
            }
        }
        let leaves: Vec<usize> = (2..nodes.len()).filter(|&n| nodes[n].children.is_empty()).collect();
        nodes[BOTTOM].parents = if leaves.is_empty() { vec![TOP] } else { leaves };
        for p in nodes[BOTTOM].parents.clone() {
            nodes[p].children.push(BOTTOM);
        }
        Taxonomy { nodes, node_of }
    }

    pub fn top(&self) -> usize {
        TOP
    }

    pub fn bottom(&self) -> usize {
        BOTTOM
    }

    pub fn nodes(&self) -> &[TaxNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TaxNode {
        &self.nodes[id]
    }

    pub fn node_of(&self, class: Sym) -> Option<usize> {
        self.node_of.get(&class).copied()
    }

    /// Nodes reachable upwards from `id`, including `id`.
    pub fn ancestors(&self, id: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([id]);
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            for &p in &self.nodes[n].parents {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        seen
    }

    pub fn descendants(&self, id: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([id]);
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            for &c in &self.nodes[n].children {
                if seen.insert(c) {
                    stack.push(c);
                }
            }
        }
        seen
    }

    /// Whether `sub ⊑ sup` according to the hierarchy.
    pub fn subsumes(&self, sub: Sym, sup: Sym) -> bool {
        match (self.node_of(sub), self.node_of(sup)) {
            (Some(a), Some(b)) => self.ancestors(a).contains(&b),
            _ => false,
        }
    }

    pub fn is_unsatisfiable(&self, class: Sym) -> bool {
        self.node_of(class) == Some(BOTTOM)
    }

    /// Direct edges as (child, parent) node pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (id, n) in self.nodes.iter().enumerate() {
            for &p in &n.parents {
                out.push((id, p));
            }
        }
        out
    }

    fn label(&self, id: usize) -> String {
        let base = match id {
            TOP => "top",
            BOTTOM => "bot",
            _ => return self.nodes[id].names.join(" = "),
        };
        std::iter::once(base.to_string()).chain(self.nodes[id].names.iter().cloned()).collect::<Vec<_>>().join(" = ")
    }

    /// Indented tree from `top`; nodes with several parents appear under each.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_node(TOP, 0, &mut out);
        out
    }

    fn render_node(&self, id: usize, depth: usize, out: &mut String) {
        if id == BOTTOM && depth > 0 {
            return;
        }
        let _ = writeln!(out, "{}{}", "  ".repeat(depth), self.label(id));
        let mut kids = self.nodes[id].children.clone();
        kids.sort_by(|a, b| self.nodes[*a].names.cmp(&self.nodes[*b].names));
        for k in kids {
            self.render_node(k, depth + 1, out);
        }
        if id == TOP && !self.nodes[BOTTOM].classes.is_empty() {
            let _ = writeln!(out, "  {}", self.label(BOTTOM));
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph taxonomy {\n  rankdir=BT;\n");
        for id in 0..self.nodes.len() {
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", self.label(id));
        }
        for (c, p) in self.edges() {
            let _ = writeln!(out, "  n{c} -> n{p};");
        }
        out.push_str("}\n");
        out
    }
}
