//! Completion graph and expansion rules.
//!
//! A negated atom `¬A` counts as satisfied while `A` is absent from a label.
//! Atoms are read off labels when a model is extracted, so this agrees with
//! the extracted interpretation; it lets the axioms `A ⊑ D` stay dormant on
//! nodes that never receive `A`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::concepts::{inv, CNode, Cid, ConceptTable, Lit, RoleHierarchy};
use super::Interpretation;
use crate::model::{NameKind, Sym, SymbolTable};

/// Branch points a label entry depends on, as a bit set over branch depth.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct DepSet(Vec<u64>);

impl DepSet {
    fn single(b: usize) -> DepSet {
        let mut d = DepSet::default();
        d.insert(b);
        d
    }

    fn insert(&mut self, b: usize) {
        if self.0.len() <= b / 64 {
            self.0.resize(b / 64 + 1, 0);
        }
        self.0[b / 64] |= 1 << (b % 64);
    }

    fn remove(&mut self, b: usize) {
        if let Some(w) = self.0.get_mut(b / 64) {
            *w &= !(1 << (b % 64));
        }
    }

    fn contains(&self, b: usize) -> bool {
        self.0.get(b / 64).is_some_and(|w| w >> (b % 64) & 1 == 1)
    }

    fn union_with(&mut self, other: &DepSet) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn any_below(&self, n: usize) -> bool {
        (0..n).any(|b| self.contains(b))
    }

    fn union(&self, other: &DepSet) -> DepSet {
        let mut d = self.clone();
        d.union_with(other);
        d
    }
}

type NodeId = usize;
type EdgeId = usize;

#[derive(Clone, Debug)]
struct Node {
    label: BTreeMap<Cid, DepSet>,
    label_hash: u64,
    /// Parent node and the edge from it; `None` for roots.
    parent: Option<(NodeId, EdgeId)>,
    merged_into: Option<NodeId>,
    /// Pruned with the subtree of a node merged into a root.
    dead: bool,
    adj: Vec<EdgeId>,
    /// No disjunction in the label needs work since the last scan.
    ors_clean: bool,
}

#[derive(Clone, Debug)]
struct Edge {
    from: NodeId,
    to: NodeId,
    roles: BTreeMap<Lit, DepSet>,
}

#[derive(Clone, Copy, Debug)]
enum Work {
    Concept(NodeId, Cid),
    Edge(EdgeId),
}

#[derive(Clone, Debug)]
pub(crate) struct Graph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    individuals: HashMap<Sym, NodeId>,
    fresh: Option<NodeId>,
    work: Vec<Work>,
    /// Branching depth reached when the graph was completed.
    depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Merged,
    Free,
    Direct(NodeId),
    Indirect,
}

/// Initial constraints of one tableau run.
#[derive(Clone, Debug, Default)]
pub(crate) struct Problem {
    pub individuals: Vec<Sym>,
    pub class_assertions: Vec<(Sym, Cid)>,
    pub role_assertions: Vec<(Sym, Lit, Sym)>,
    /// Label of an extra anonymous root, if any.
    pub fresh: Option<Vec<Cid>>,
}

pub(crate) struct LimitExceeded;

pub(crate) enum Resumed {
    Sat(Graph),
    Unsat,
    Unknown,
}

enum Scan {
    Done,
    Clash(DepSet),
    Unit(NodeId, Cid, DepSet),
    Branch(NodeId, Vec<Cid>, DepSet),
}

pub(crate) struct Tableau<'a> {
    pub table: &'a ConceptTable,
    pub roles: &'a RoleHierarchy,
    /// Added to every node.
    pub universal: &'a [Cid],
    /// Disjunctions holding at every node, checked without being stored.
    pub global_ors: &'a [Cid],
    pub node_limit: usize,
}

fn mix(c: Cid) -> u64 {
    let mut z = (c as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Graph {
    fn find(&self, mut x: NodeId) -> NodeId {
        while let Some(y) = self.nodes[x].merged_into {
            x = y;
        }
        x
    }

    /// Role literals of an edge as seen from `x`, paired with the node at the
    /// other end. A self-loop is seen both ways.
    fn view(&self, e: EdgeId, x: NodeId) -> Vec<(Lit, NodeId, DepSet)> {
        let edge = &self.edges[e];
        let mut out = Vec::new();
        for (&l, d) in &edge.roles {
            if edge.from == x {
                out.push((l, edge.to, d.clone()));
            }
            if edge.to == x {
                out.push((inv(l), edge.from, d.clone()));
            }
        }
        out
    }

    fn gone(&self, x: NodeId) -> bool {
        self.nodes[x].merged_into.is_some() || self.nodes[x].dead
    }

    fn same_label(&self, a: NodeId, b: NodeId) -> bool {
        let (na, nb) = (&self.nodes[a], &self.nodes[b]);
        na.label_hash == nb.label_hash && na.label.len() == nb.label.len() && na.label.keys().eq(nb.label.keys())
    }

    /// Blocking status of every node. A tree node is blocked by an earlier
    /// unblocked tree node with the same label, anywhere in the graph.
    fn status(&self) -> Vec<Status> {
        let mut st = Vec::with_capacity(self.nodes.len());
        let mut seen: HashMap<u64, Vec<NodeId>> = HashMap::new();
        for (x, node) in self.nodes.iter().enumerate() {
            let s = if node.merged_into.is_some() || node.dead {
                Status::Merged
            } else if let Some((p, _)) = node.parent {
                if st[p] != Status::Free {
                    Status::Indirect
                } else {
                    let same = seen.get(&node.label_hash).and_then(|ys| ys.iter().copied().find(|&y| self.same_label(x, y)));
                    match same {
                        Some(y) => Status::Direct(y),
                        None => {
                            seen.entry(node.label_hash).or_default().push(x);
                            Status::Free
                        }
                    }
                }
            } else {
                Status::Free
            };
            st.push(s);
        }
        st
    }
}

type Step<T> = Result<T, Fail>;

enum Fail {
    Clash(DepSet),
    Limit,
}

impl<'a> Tableau<'a> {
    fn add_label(&self, g: &mut Graph, x: NodeId, c: Cid, dep: DepSet) {
        let x = g.find(x);
        if matches!(self.table.get(c), CNode::Top) {
            return;
        }
        let node = &mut g.nodes[x];
        if node.label.contains_key(&c) {
            return;
        }
        node.label.insert(c, dep);
        node.label_hash ^= mix(c);
        node.ors_clean = false;
        g.work.push(Work::Concept(x, c));
    }

    fn new_node(&self, g: &mut Graph, parent: Option<(NodeId, EdgeId)>) -> Step<NodeId> {
        if g.nodes.len() >= self.node_limit {
            return Err(Fail::Limit);
        }
        let id = g.nodes.len();
        g.nodes.push(Node {
            label: BTreeMap::new(),
            label_hash: 0,
            parent,
            merged_into: None,
            dead: false,
            adj: Vec::new(),
            ors_clean: false,
        });
        for &u in self.universal {
            self.add_label(g, id, u, DepSet::default());
        }
        Ok(id)
    }

    fn add_edge(&self, g: &mut Graph, from: NodeId, to: NodeId, l: Lit, dep: DepSet) -> EdgeId {
        let e = g.edges.len();
        g.edges.push(Edge { from, to, roles: BTreeMap::from([(l, dep)]) });
        g.nodes[from].adj.push(e);
        if to != from {
            g.nodes[to].adj.push(e);
        }
        g.work.push(Work::Edge(e));
        e
    }

    pub fn initial(&self, p: &Problem) -> Result<Graph, LimitExceeded> {
        let mut g = Graph { nodes: Vec::new(), edges: Vec::new(), individuals: HashMap::new(), fresh: None, work: Vec::new(), depth: 0 };
        let run = |g: &mut Graph| -> Step<()> {
            for &a in &p.individuals {
                let x = self.new_node(g, None)?;
                g.individuals.insert(a, x);
            }
            for &a in &p.individuals {
                if let Some(&nom) = self.table_nominal(a).as_ref() {
                    self.add_label(g, g.individuals[&a], nom, DepSet::default());
                }
            }
            for &(a, c) in &p.class_assertions {
                self.add_label(g, g.individuals[&a], c, DepSet::default());
            }
            for &(a, l, b) in &p.role_assertions {
                let (x, y) = (g.individuals[&a], g.individuals[&b]);
                self.add_edge(g, x, y, l, DepSet::default());
            }
            if let Some(label) = &p.fresh {
                let x = self.new_node(g, None)?;
                g.fresh = Some(x);
                for &c in label {
                    self.add_label(g, x, c, DepSet::default());
                }
            }
            Ok(())
        };
        match run(&mut g) {
            Err(Fail::Limit) => Err(LimitExceeded),
            _ => Ok(g),
        }
    }

    fn table_nominal(&self, a: Sym) -> Option<Cid> {
        self.table.lookup(&CNode::Nom(a))
    }

    fn clash_with_complement(&self, g: &Graph, x: NodeId, c: Cid, dep: &DepSet) -> Step<()> {
        if let Some(comp) = self.table.complement(c) {
            if let Some(d2) = g.nodes[x].label.get(&comp) {
                return Err(Fail::Clash(dep.union(d2)));
            }
        }
        Ok(())
    }

    fn merge(&self, g: &mut Graph, x: NodeId, y: NodeId, dep: &DepSet) {
        let tree = g.nodes[x].parent.is_some();
        if tree {
            self.prune_below(g, x);
        }
        let label = std::mem::take(&mut g.nodes[x].label);
        g.nodes[x].label_hash = 0;
        g.nodes[x].merged_into = Some(y);
        for (c, d) in label {
            self.add_label(g, y, c, d.union(dep));
        }
        for e in std::mem::take(&mut g.nodes[x].adj) {
            let edge = &mut g.edges[e];
            if edge.roles.is_empty() {
                continue;
            }
            if edge.from == x {
                edge.from = y;
            }
            if edge.to == x {
                edge.to = y;
            }
            for d in edge.roles.values_mut() {
                d.union_with(dep);
            }
            if !g.nodes[y].adj.contains(&e) {
                g.nodes[y].adj.push(e);
            }
            g.work.push(Work::Edge(e));
        }
        if !tree {
            for node in g.nodes.iter_mut() {
                if let Some((p, pe)) = node.parent {
                    if p == x {
                        node.parent = Some((y, pe));
                    }
                }
            }
        }
    }

    /// Drops the tree below `x` with its edges; whatever the merged node
    /// still needs is generated again from its new label.
    fn prune_below(&self, g: &mut Graph, x: NodeId) {
        let mut doomed = vec![false; g.nodes.len()];
        doomed[x] = true;
        for z in x + 1..g.nodes.len() {
            if let Some((p, _)) = g.nodes[z].parent {
                if doomed[p] && !g.gone(z) {
                    doomed[z] = true;
                }
            }
        }
        doomed[x] = false;
        for z in x + 1..g.nodes.len() {
            if !doomed[z] {
                continue;
            }
            g.nodes[z].dead = true;
            for e in std::mem::take(&mut g.nodes[z].adj) {
                let (a, b) = (g.edges[e].from, g.edges[e].to);
                g.edges[e].roles.clear();
                for w in [a, b] {
                    if w != z && !doomed[w] {
                        g.nodes[w].adj.retain(|&f| f != e);
                    }
                }
            }
        }
    }

    fn propagate(&self, g: &mut Graph) -> Step<()> {
        while let Some(w) = g.work.pop() {
            match w {
                Work::Concept(x, c) => {
                    if g.gone(x) {
                        continue;
                    }
                    let Some(dep) = g.nodes[x].label.get(&c).cloned() else { continue };
                    match self.table.get(c) {
                        CNode::Bottom => return Err(Fail::Clash(dep)),
                        CNode::Atom(_) | CNode::NotAtom(_) | CNode::NotNom(_) => {
                            self.clash_with_complement(g, x, c, &dep)?
                        }
                        CNode::Nom(o) => {
                            self.clash_with_complement(g, x, c, &dep)?;
                            let target = match g.individuals.get(o) {
                                Some(&t) => g.find(t),
                                None => continue,
                            };
                            if target != x {
                                self.merge(g, x, target, &dep);
                            }
                        }
                        CNode::And(cs) => {
                            for &part in cs {
                                self.add_label(g, x, part, dep.clone());
                            }
                        }
                        CNode::All(r, f) => {
                            for e in g.nodes[x].adj.clone() {
                                for (l, y, ed) in g.view(e, x) {
                                    if self.roles.get(l, *r) {
                                        self.add_label(g, y, *f, dep.union(&ed));
                                    }
                                }
                            }
                        }
                        CNode::Top | CNode::Or(_) | CNode::Some(..) => {}
                    }
                }
                Work::Edge(e) => {
                    let (a, b) = (g.edges[e].from, g.edges[e].to);
                    for x in [a, b] {
                        let alls: Vec<(Lit, Cid, DepSet)> = g.nodes[x]
                            .label
                            .iter()
                            .filter_map(|(&c, d)| match self.table.get(c) {
                                CNode::All(r, f) => Some((*r, *f, d.clone())),
                                _ => None,
                            })
                            .collect();
                        for (l, y, ed) in g.view(e, x) {
                            for (r, f, d) in &alls {
                                if self.roles.get(l, *r) {
                                    self.add_label(g, y, *f, d.union(&ed));
                                }
                            }
                        }
                        if a == b {
                            break;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Negative literals hold while their atom is missing from the label;
    /// a label gaining the atom gets its disjunctions checked again.
    fn holds_by_absence(&self, node: &Node, c: Cid) -> bool {
        match self.table.get(c) {
            CNode::NotAtom(_) | CNode::NotNom(_) => {
                self.table.complement(c).map_or(true, |comp| !node.label.contains_key(&comp))
            }
            CNode::And(parts) => parts.iter().all(|&p| self.holds_by_absence(node, p)),
            _ => false,
        }
    }

    fn check_or(&self, node: &Node, disjuncts: &[Cid], or_dep: &DepSet) -> Option<Scan> {
        let mut live = Vec::new();
        let mut dep = or_dep.clone();
        for &d in disjuncts {
            if node.label.contains_key(&d) {
                return None;
            }
            let blocked_by = self.table.complement(d).and_then(|comp| node.label.get(&comp));
            match self.table.get(d) {
                CNode::Top => return None,
                CNode::Bottom => {}
                CNode::NotAtom(_) | CNode::NotNom(_) => match blocked_by {
                    None => return None,
                    Some(cd) => dep.union_with(cd),
                },
                CNode::And(_) if self.holds_by_absence(node, d) => return None,
                _ => match blocked_by {
                    Some(cd) => dep.union_with(cd),
                    None => live.push(d),
                },
            }
        }
        // cheap disjuncts first, existentials last
        live.sort_by_key(|&d| matches!(self.table.get(d), CNode::Some(..)));
        Some(match live.len() {
            0 => Scan::Clash(dep),
            1 => Scan::Unit(0, live[0], dep),
            _ => Scan::Branch(0, live, dep),
        })
    }

    fn scan_ors(&self, g: &mut Graph) -> Scan {
        let mut branch = None;
        for x in 0..g.nodes.len() {
            let node = &g.nodes[x];
            if node.merged_into.is_some() || node.dead || node.ors_clean {
                continue;
            }
            let mut pending = false;
            let stored = node.label.iter().filter_map(|(&c, d)| match self.table.get(c) {
                CNode::Or(ds) => Some((ds.as_slice(), d.clone())),
                _ => None,
            });
            let global = self.global_ors.iter().map(|&c| match self.table.get(c) {
                CNode::Or(ds) => (ds.as_slice(), DepSet::default()),
                _ => unreachable!("global disjunctions are interned as or"),
            });
            for (ds, dep) in stored.chain(global) {
                match self.check_or(node, ds, &dep) {
                    None => {}
                    Some(Scan::Clash(d)) => return Scan::Clash(d),
                    Some(Scan::Unit(_, c, d)) => return Scan::Unit(x, c, d),
                    Some(Scan::Branch(_, live, d)) => {
                        pending = true;
                        if branch.is_none() {
                            branch = Some(Scan::Branch(x, live, d));
                        }
                    }
                    Some(Scan::Done) => {}
                }
            }
            if !pending {
                g.nodes[x].ors_clean = true;
            }
        }
        branch.unwrap_or(Scan::Done)
    }

    /// Creates successors for the first unblocked node with unsatisfied
    /// existentials. Returns false when there is nothing left to do.
    fn expand_exists(&self, g: &mut Graph) -> Step<bool> {
        let status = g.status();
        for x in 0..g.nodes.len() {
            if status[x] != Status::Free {
                continue;
            }
            let wanted: Vec<(Lit, Cid, DepSet)> = g.nodes[x]
                .label
                .iter()
                .filter_map(|(&c, d)| match self.table.get(c) {
                    CNode::Some(r, f) => Some((*r, *f, d.clone())),
                    _ => None,
                })
                .collect();
            let mut created = false;
            for (r, f, dep) in wanted {
                let any_filler = matches!(self.table.get(f), CNode::Top);
                let satisfied = g.nodes[x].adj.iter().any(|&e| {
                    g.view(e, x)
                        .iter()
                        .any(|(l, y, _)| self.roles.get(*l, r) && (any_filler || g.nodes[*y].label.contains_key(&f)))
                });
                if satisfied {
                    continue;
                }
                let y = g.nodes.len();
                let e = self.add_edge_pending(g, x, y, r, dep.clone());
                self.new_node(g, Some((x, e)))?;
                g.nodes[y].adj.push(e);
                self.add_label(g, y, f, dep);
                created = true;
            }
            if created {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Edge towards a node that is about to be created with index `to`.
    fn add_edge_pending(&self, g: &mut Graph, from: NodeId, to: NodeId, l: Lit, dep: DepSet) -> EdgeId {
        let e = g.edges.len();
        g.edges.push(Edge { from, to, roles: BTreeMap::from([(l, dep)]) });
        g.nodes[from].adj.push(e);
        g.work.push(Work::Edge(e));
        e
    }

    /// Applies deterministic rules until the graph is complete or a choice
    /// is needed.
    fn saturate(&self, g: &mut Graph) -> Step<Option<(NodeId, Vec<Cid>, DepSet)>> {
        loop {
            self.propagate(g)?;
            match self.scan_ors(g) {
                Scan::Clash(d) => return Err(Fail::Clash(d)),
                Scan::Unit(x, c, d) => {
                    self.add_label(g, x, c, d);
                    continue;
                }
                Scan::Branch(x, live, dep) => {
                    // deterministic growth first, so that a bad choice is
                    // found before unrelated ones are stacked on top of it
                    if self.expand_exists(g)? {
                        continue;
                    }
                    return Ok(Some((x, live, dep)));
                }
                Scan::Done => {}
            }
            if !self.expand_exists(g)? {
                return Ok(None);
            }
        }
    }

    /// Depth-first search over choices, with backjumping: a clash that does
    /// not depend on a choice skips its remaining alternatives.
    fn solve_at(&self, g: Graph, start: usize) -> Step<Graph> {
        struct Choice {
            node: NodeId,
            rest: std::vec::IntoIter<Cid>,
            dep: DepSet,
            acc: DepSet,
            depth: usize,
            /// Kept for the alternatives still to try.
            graph: Option<Graph>,
        }
        let mut stack: Vec<Choice> = Vec::new();
        let mut g = g;
        let mut depth = start;
        loop {
            let mut clash = match self.saturate(&mut g) {
                Ok(None) => {
                    g.depth = depth;
                    return Ok(g);
                }
                Ok(Some((node, live, dep))) => {
                    if stack.len() >= self.node_limit {
                        return Err(Fail::Limit);
                    }
                    let acc = dep.clone();
                    stack.push(Choice { node, rest: live.into_iter(), dep, acc, depth, graph: Some(g) });
                    None
                }
                Err(Fail::Limit) => return Err(Fail::Limit),
                Err(Fail::Clash(d)) => Some(d),
            };
            // back up to the latest choice the clash depends on
            while let Some(mut cd) = clash.take() {
                let Some(top) = stack.last_mut() else { return Err(Fail::Clash(cd)) };
                if !cd.contains(top.depth) {
                    stack.pop();
                    clash = Some(cd);
                    continue;
                }
                cd.remove(top.depth);
                top.acc.union_with(&cd);
                if top.rest.len() == 0 {
                    let top = stack.pop().expect("non-empty");
                    clash = Some(top.acc);
                }
            }
            let top = stack.last_mut().expect("a choice with alternatives left");
            let c = top.rest.next().expect("alternatives left");
            let mut next = if top.rest.len() == 0 { top.graph.take() } else { top.graph.clone() }.expect("graph kept");
            next.work.clear();
            self.add_label(&mut next, top.node, c, top.dep.union(&DepSet::single(top.depth)));
            depth = top.depth + 1;
            g = next;
        }
    }

    /// Continues a complete graph with extra labels. A clash that depends on
    /// none of the choices made for `base` is final; otherwise the answer is
    /// unknown and the caller has to start over.
    pub fn resume(&self, base: &Graph, extra: &[(Sym, Cid)], fresh: Option<Cid>) -> Result<Resumed, LimitExceeded> {
        let mut g = base.clone();
        // nominals interned since the base run
        let named: Vec<(Sym, NodeId)> = g.individuals.iter().map(|(&a, &x)| (a, x)).collect();
        for (a, x) in named {
            if let Some(nom) = self.table_nominal(a) {
                self.add_label(&mut g, x, nom, DepSet::default());
            }
        }
        for &(a, c) in extra {
            let x = g.individuals[&a];
            self.add_label(&mut g, x, c, DepSet::default());
        }
        if let (Some(c), Some(x)) = (fresh, g.fresh) {
            self.add_label(&mut g, x, c, DepSet::default());
        }
        match self.solve_at(g, base.depth) {
            Ok(g) => Ok(Resumed::Sat(g)),
            Err(Fail::Limit) => Err(LimitExceeded),
            Err(Fail::Clash(d)) if !d.any_below(base.depth) => Ok(Resumed::Unsat),
            Err(Fail::Clash(_)) => Ok(Resumed::Unknown),
        }
    }

    /// Runs the tableau. `Ok(None)` means every branch clashed.
    pub fn solve(&self, g: Graph) -> Result<Option<Graph>, LimitExceeded> {
        match self.solve_at(g, 0) {
            Ok(g) => Ok(Some(g)),
            Err(Fail::Clash(_)) => Ok(None),
            Err(Fail::Limit) => Err(LimitExceeded),
        }
    }

    /// Reads a model off a complete graph: blocked nodes are replaced by
    /// their blockers, atoms are read from labels, and role edges are closed
    /// under the role hierarchy.
    pub fn extract(&self, g: &Graph, symbols: &SymbolTable) -> Interpretation {
        let status = g.status();
        let mut index = vec![None; g.nodes.len()];
        let mut size = 0;
        for x in 0..g.nodes.len() {
            if status[x] == Status::Free {
                index[x] = Some(size);
                size += 1;
            }
        }
        let element = |x: NodeId| -> Option<usize> {
            let x = g.find(x);
            match status[x] {
                Status::Free => index[x],
                Status::Direct(y) => index[y],
                _ => None,
            }
        };
        let mut classes: BTreeMap<Sym, BTreeSet<usize>> = BTreeMap::new();
        let mut roles: BTreeMap<Sym, BTreeSet<(usize, usize)>> = BTreeMap::new();
        for c in symbols.of_kind(NameKind::Class) {
            classes.insert(c, BTreeSet::new());
        }
        for r in symbols.of_kind(NameKind::Role) {
            roles.insert(r, BTreeSet::new());
        }
        for x in 0..g.nodes.len() {
            let Some(i) = index[x] else { continue };
            for &c in g.nodes[x].label.keys() {
                if let CNode::Atom(s) = self.table.get(c) {
                    if let Some(set) = classes.get_mut(s) {
                        set.insert(i);
                    }
                }
            }
        }
        for edge in &g.edges {
            let (Some(a), Some(b)) = (element(edge.from), element(edge.to)) else { continue };
            for &l in edge.roles.keys() {
                for s in self.roles.supers(l) {
                    let sym = Sym::from_raw(s / 2);
                    if let Some(set) = roles.get_mut(&sym) {
                        set.insert(if s % 2 == 0 { (a, b) } else { (b, a) });
                    }
                }
            }
        }
        let individuals = g.individuals.iter().filter_map(|(&a, &x)| element(x).map(|i| (a, i))).collect();
        Interpretation { size, classes, roles, individuals, fresh: g.fresh.and_then(element) }
    }

    /// Named classes in the label of the anonymous root.
    pub fn fresh_atoms(&self, g: &Graph) -> Vec<Sym> {
        let Some(x) = g.fresh else { return Vec::new() };
        self.atoms_of(g, x)
    }

    pub fn individual_atoms(&self, g: &Graph, a: Sym) -> Vec<Sym> {
        match g.individuals.get(&a) {
            Some(&x) => self.atoms_of(g, g.find(x)),
            None => Vec::new(),
        }
    }

    fn atoms_of(&self, g: &Graph, x: NodeId) -> Vec<Sym> {
        let x = g.find(x);
        g.nodes[x]
            .label
            .keys()
            .filter_map(|&c| match self.table.get(c) {
                CNode::Atom(s) => Some(*s),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::DepSet;

    #[test]
    fn depset_ops() {
        let mut d = DepSet::single(3);
        d.union_with(&DepSet::single(100));
        assert!(d.contains(3) && d.contains(100) && !d.contains(4));
        d.remove(100);
        assert!(!d.contains(100));
        assert!(!DepSet::default().contains(0));
    }
}
