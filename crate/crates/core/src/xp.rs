//! Reconfiguration under k-token jumping through the clique-compressed
//! reconfiguration graph, parameterized by `mu = |V(H)| - k >= 1`.
//!
//! Nodes are all `mu`-subsets of the host. Two nodes `A`, `B` are joined
//! when some pattern copy contains `A ∪ B`; the test for that guesses, for
//! each vertex of `A ∪ B`, the pattern component it lies in and the vertex
//! set of that component, then asks an [`IsisOracle`] to complete the rest
//! of the pattern in the host minus the closed neighborhood of the guess.
//! Source and target are reconfigurable iff any `mu`-subset of the source
//! reaches any `mu`-subset of the target.
//!
//! Candidate component sets are restricted to connected sets inducing the
//! guessed component type, and a vertex already covered by an earlier guess
//! is not guessed again. Both restrictions keep every true pattern copy
//! reachable: its components are connected, pairwise non-adjacent, and the
//! component holding a covered vertex is the one already chosen.

use std::collections::{HashMap, VecDeque};

use crate::analysis::components;
use crate::bits::Bits;
use crate::bruteforce::{for_each_subset, ordered_map, Limits, Solution};
use crate::error::{invalid, Error, Result};
use crate::graph::{induced_subgraph, induced_unlabeled, Graph, Vertex, VertexSet};
use crate::iso::{canonical_form, decompose_assorted, AssortedDecomposition, IsisOracle};
use crate::rules::{ReconfigInstance, ReconfigSequence, RuleKind};

/// Decides whether some copy of `h` in `g` contains `a ∪ b` and returns one.
pub fn edge_test(
    g: &Graph,
    h: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    oracle: &dyn IsisOracle,
) -> Result<Option<VertexSet>> {
    if a.is_empty() || b.is_empty() {
        return invalid("mu must be at least 1");
    }
    if a.len() != b.len() {
        return invalid("clique-node sets must have equal size");
    }
    a.check_in(g)?;
    b.check_in(g)?;
    let dec = decompose_assorted(h);
    Ok(EdgeTester::new(g, &dec).run(&a.union(b), oracle))
}

struct EdgeTester<'a> {
    g: &'a Graph,
    dec: &'a AssortedDecomposition,
    sizes: Vec<usize>,
    used: Vec<usize>,
    members: Bits,
    closed: Bits,
    chosen: Vec<Vec<Vertex>>,
}

impl<'a> EdgeTester<'a> {
    fn new(g: &'a Graph, dec: &'a AssortedDecomposition) -> Self {
        EdgeTester {
            g,
            dec,
            sizes: dec.parts.iter().map(|p| p.graph.n()).collect(),
            used: vec![0; dec.parts.len()],
            members: Bits::new(g.n()),
            closed: Bits::new(g.n()),
            chosen: Vec::new(),
        }
    }

    fn run(mut self, c: &VertexSet, oracle: &dyn IsisOracle) -> Option<VertexSet> {
        if c.len() > self.dec.total_vertices() {
            return None;
        }
        self.assign(c.as_slice(), 0, oracle)
    }

    fn assign(&mut self, c: &[Vertex], idx: usize, oracle: &dyn IsisOracle) -> Option<VertexSet> {
        if idx == c.len() {
            return self.complete(oracle);
        }
        let v = c[idx];
        if self.members.contains(v) {
            return self.assign(c, idx + 1, oracle);
        }
        if self.closed.contains(v) {
            return None;
        }
        for t in 0..self.dec.parts.len() {
            if self.used[t] == self.dec.parts[t].multiplicity {
                continue;
            }
            let mut candidates = Vec::new();
            connected_sets_containing(self.g, v, self.sizes[t], &self.closed, &mut |set| {
                let sub = induced_unlabeled(self.g, set);
                if canonical_form(&sub) == self.dec.parts[t].canon {
                    candidates.push(set.to_vec());
                }
            });
            for set in candidates {
                let saved_closed = self.closed.clone();
                for &x in &set {
                    self.members.insert(x);
                    self.closed.insert(x);
                    self.closed.union_with(self.g.neighbor_bits(x));
                }
                self.used[t] += 1;
                self.chosen.push(set);
                let found = self.assign(c, idx + 1, oracle);
                let set = self.chosen.pop().unwrap();
                self.used[t] -= 1;
                for &x in &set {
                    self.members.remove(x);
                }
                self.closed = saved_closed;
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    /// Confirms the guessed components form a sub-multiset of the pattern's
    /// components and asks the oracle for the remainder.
    fn complete(&self, oracle: &dyn IsisOracle) -> Option<VertexSet> {
        let w: Vec<Vertex> = self.members.iter().collect();
        let gw = induced_unlabeled(self.g, &w);
        let mut counts = vec![0usize; self.dec.parts.len()];
        for comp in components(&gw) {
            let sub = induced_unlabeled(&gw, comp.as_slice());
            let t = self.dec.index_of(&canonical_form(&sub))?;
            counts[t] += 1;
            if counts[t] > self.dec.parts[t].multiplicity {
                return None;
            }
        }
        let remaining: Vec<usize> = self
            .dec
            .parts
            .iter()
            .zip(&counts)
            .map(|(p, c)| p.multiplicity - c)
            .collect();
        let h_rest = self.dec.compose(&remaining);
        let rest = VertexSet::new(self.g.vertices().filter(|&x| !self.closed.contains(x)));
        let (g_rest, map) = induced_subgraph(self.g, &rest).ok()?;
        let found = oracle.find(&g_rest, &h_rest)?;
        Some(VertexSet::new(
            w.into_iter().chain(
                found
                    .iter()
                    .map(|x| map.new_to_old[x].expect("induced vertex")),
            ),
        ))
    }
}

/// Calls `f` on every connected vertex set of size `size` containing `root`
/// and avoiding `forbidden`, each exactly once.
fn connected_sets_containing(
    g: &Graph,
    root: Vertex,
    size: usize,
    forbidden: &Bits,
    f: &mut dyn FnMut(&[Vertex]),
) {
    if size == 0 || forbidden.contains(root) {
        return;
    }
    let mut set = vec![root];
    let mut excluded = forbidden.clone();
    excluded.insert(root);
    let frontier: Vec<Vertex> = g
        .neighbors(root)
        .iter()
        .copied()
        .filter(|&w| !excluded.contains(w))
        .collect();
    for &w in &frontier {
        excluded.insert(w);
    }
    grow_connected(g, size, &mut set, frontier, excluded, f);
}

/// `frontier` lists candidate extensions; `excluded` holds the set, the
/// frontier and every vertex already decided against, so each connected
/// superset is produced by exactly one branch.
fn grow_connected(
    g: &Graph,
    size: usize,
    set: &mut Vec<Vertex>,
    frontier: Vec<Vertex>,
    excluded: Bits,
    f: &mut dyn FnMut(&[Vertex]),
) {
    if set.len() == size {
        f(set);
        return;
    }
    for (i, &u) in frontier.iter().enumerate() {
        let mut next_frontier: Vec<Vertex> = frontier[i + 1..].to_vec();
        let mut next_excluded = excluded.clone();
        for &w in g.neighbors(u) {
            if !next_excluded.contains(w) {
                next_excluded.insert(w);
                next_frontier.push(w);
            }
        }
        set.push(u);
        grow_connected(g, size, set, next_frontier, next_excluded, f);
        set.pop();
    }
}

/// The clique-compressed reconfiguration graph. Every edge stores the
/// pattern copy that witnesses it.
#[derive(Clone, Debug)]
pub struct CompressedGraph {
    mu: usize,
    nodes: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize, VertexSet)>,
}

impl CompressedGraph {
    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn nodes(&self) -> &[VertexSet] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(a, b, witness)` with `a < b` node indices.
    pub fn edges(&self) -> &[(usize, usize, VertexSet)] {
        &self.edges
    }

    pub fn index_of(&self, s: &VertexSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Shortest path as a list of edge indices.
    pub fn edge_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut out = Vec::new();
                let mut cur = to;
                while let Some((prev, e)) = via[cur] {
                    out.push(e);
                    cur = prev;
                }
                out.reverse();
                return Some(out);
            }
            for &(y, e) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Reconfigures `source` into `target` through the clique-nodes `a`
    /// (inside `source`) and `b` (inside `target`). The result lists the
    /// source, the witnesses along a shortest clique-node path, then the
    /// target; neighbors share at least `mu` vertices.
    pub fn reconfigure_via(
        &self,
        source: &VertexSet,
        target: &VertexSet,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<Option<ReconfigSequence>> {
        if !a.is_subset(source) || !b.is_subset(target) {
            return invalid("clique-nodes must lie inside their endpoint sets");
        }
        if source == target {
            return Ok(Some(ReconfigSequence::single(source.clone())));
        }
        let ia = self
            .index_of(a)
            .ok_or_else(|| Error::InvalidInput(format!("{{{a}}} is not a clique-node")))?;
        let ib = self
            .index_of(b)
            .ok_or_else(|| Error::InvalidInput(format!("{{{b}}} is not a clique-node")))?;
        let Some(path) = self.edge_path(ia, ib) else {
            return Ok(None);
        };
        let mut steps = vec![source.clone()];
        for e in path {
            let w = &self.edges[e].2;
            if steps.last() != Some(w) {
                steps.push(w.clone());
            }
        }
        if steps.last() != Some(target) {
            steps.push(target.clone());
        }
        ReconfigSequence::new(steps).map(Some)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

pub fn build_compressed(
    g: &Graph,
    h: &Graph,
    mu: usize,
    oracle: &dyn IsisOracle,
) -> Result<CompressedGraph> {
    build_compressed_with(g, h, mu, oracle, &Limits::default())
}

pub fn build_compressed_with(
    g: &Graph,
    h: &Graph,
    mu: usize,
    oracle: &dyn IsisOracle,
    limits: &Limits,
) -> Result<CompressedGraph> {
    if mu == 0 {
        return invalid("mu must be at least 1");
    }
    if mu > h.n() {
        return invalid(format!("mu = {mu} exceeds the pattern size {}", h.n()));
    }
    let count = binomial(g.n(), mu);
    if count > limits.max_nodes {
        return Err(Error::ResourceLimit {
            what: "clique-nodes",
            count,
            cap: limits.max_nodes,
        });
    }
    let mut nodes = Vec::with_capacity(count);
    let all: Vec<Vertex> = g.vertices().collect();
    for_each_subset(&all, mu, &mut |s| {
        nodes.push(VertexSet::new(s.iter().copied()));
        false
    });
    let dec = decompose_assorted(h);
    let n_nodes = nodes.len();
    let found: Vec<Vec<(usize, VertexSet)>> = ordered_map(n_nodes, limits.workers, |i| {
        (i + 1..n_nodes)
            .filter_map(|j| {
                let c = nodes[i].union(&nodes[j]);
                EdgeTester::new(g, &dec).run(&c, oracle).map(|w| (j, w))
            })
            .collect()
    });
    let mut adj = vec![Vec::new(); n_nodes];
    let mut edges = Vec::new();
    for (i, row) in found.into_iter().enumerate() {
        for (j, w) in row {
            let e = edges.len();
            adj[i].push((j, e));
            adj[j].push((i, e));
            edges.push((i, j, w));
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let index = nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(CompressedGraph {
        mu,
        nodes,
        index,
        adj,
        edges,
    })
}

/// `mu` for an instance, checking that the rule is jumping with
/// `1 <= k < |V(H)|`.
pub fn mu_of(inst: &ReconfigInstance) -> Result<usize> {
    if inst.rule.kind() != RuleKind::Jump {
        return invalid("the XP solver handles token jumping only");
    }
    let p = inst.pattern.n();
    if inst.rule.k() >= p {
        return invalid(format!(
            "k = {} leaves mu = |V(H)| - k below 1 for a pattern on {p} vertices",
            inst.rule.k()
        ));
    }
    Ok(p - inst.rule.k())
}

/// The smallest-identifier `mu`-subset of `s`.
pub fn leading_subset(s: &VertexSet, mu: usize) -> VertexSet {
    VertexSet::new(s.iter().take(mu))
}

pub fn solve_xp(inst: &ReconfigInstance, oracle: &dyn IsisOracle) -> Result<Solution> {
    solve_xp_with(inst, oracle, &Limits::default())
}

pub fn solve_xp_with(
    inst: &ReconfigInstance,
    oracle: &dyn IsisOracle,
    limits: &Limits,
) -> Result<Solution> {
    let mu = mu_of(inst)?;
    inst.check_endpoints()?;
    if inst.source == inst.target {
        return Ok(Solution {
            sequence: Some(ReconfigSequence::single(inst.source.clone())),
            nodes: 0,
            edges: 0,
        });
    }
    let cg = build_compressed_with(&inst.host, &inst.pattern, mu, oracle, limits)?;
    let a = leading_subset(&inst.source, mu);
    let b = leading_subset(&inst.target, mu);
    Ok(Solution {
        sequence: cg.reconfigure_via(&inst.source, &inst.target, &a, &b)?,
        nodes: cg.node_count(),
        edges: cg.edge_count(),
    })
}
