//! Exhaustive ground-truth solvers.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::iso::enumerate_isis;
use crate::rules::{adjacent_unchecked, ReconfigInstance, ReconfigSequence, Rule};

/// Resource caps and parallelism for the exhaustive solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: usize,
    pub max_states: usize,
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: 1_000_000,
            max_states: 1_000_000,
            workers: 1,
        }
    }
}

/// Runs `f` on a dedicated pool when more than one worker is requested.
pub(crate) fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Computes `(0..count).map(f)` in order, in parallel when `workers > 1`.
pub(crate) fn ordered_map<T: Send>(
    count: usize,
    workers: usize,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    if workers <= 1 {
        (0..count).map(f).collect()
    } else {
        with_workers(workers, || (0..count).into_par_iter().map(f).collect())
    }
}

/// Every pattern copy of the host as a node; edges join sets adjacent
/// under the rule. Node `i` is the `i`-th set in enumeration order.
#[derive(Clone, Debug)]
pub struct ReconfigGraph {
    nodes: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    adj: Vec<Vec<usize>>,
    rule: Rule,
}

impl ReconfigGraph {
    pub fn nodes(&self) -> &[VertexSet] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn index_of(&self, s: &VertexSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    /// Shortest node path by breadth-first search; parents are fixed by the
    /// first discovery in node order.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// A shortest sequence between two pattern copies, if they are
    /// connected. Errors when either set is not a node.
    pub fn sequence(&self, s: &VertexSet, t: &VertexSet) -> Result<Option<ReconfigSequence>> {
        let lookup = |x: &VertexSet| {
            self.index_of(x).ok_or_else(|| {
                Error::InvalidInput(format!("{{{x}}} does not induce the pattern graph"))
            })
        };
        let (a, b) = (lookup(s)?, lookup(t)?);
        Ok(self.shortest_path(a, b).map(|p| {
            ReconfigSequence::new(p.into_iter().map(|i| self.nodes[i].clone()).collect())
                .expect("nodes share the pattern size")
        }))
    }

    /// Component id per node, numbered in order of first node.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.nodes.len()];
        let mut next = 0;
        for s in 0..self.nodes.len() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

pub fn build_reconfig_graph(g: &Graph, h: &Graph, rule: Rule) -> Result<ReconfigGraph> {
    build_reconfig_graph_with(g, h, rule, &Limits::default())
}

pub fn build_reconfig_graph_with(
    g: &Graph,
    h: &Graph,
    rule: Rule,
    limits: &Limits,
) -> Result<ReconfigGraph> {
    let mut nodes = Vec::new();
    for s in enumerate_isis(g, h) {
        if nodes.len() == limits.max_nodes {
            return Err(Error::ResourceLimit {
                what: "reconfiguration graph nodes",
                count: nodes.len() + 1,
                cap: limits.max_nodes,
            });
        }
        nodes.push(s);
    }
    let count = nodes.len();
    let forward: Vec<Vec<usize>> = ordered_map(count, limits.workers, |i| {
        (i + 1..count)
            .filter(|&j| adjacent_unchecked(g, &nodes[i], &nodes[j], rule))
            .collect()
    });
    let mut adj = vec![Vec::new(); count];
    for (i, js) in forward.into_iter().enumerate() {
        for j in js {
            adj[i].push(j);
            adj[j].push(i);
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
    Ok(ReconfigGraph {
        nodes,
        index,
        adj,
        rule,
    })
}

/// Outcome of a reachability query; `sequence` is present iff the answer
/// is yes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub sequence: Option<ReconfigSequence>,
    pub nodes: usize,
    pub edges: usize,
}

impl Solution {
    pub fn is_yes(&self) -> bool {
        self.sequence.is_some()
    }
}

pub fn solve_bfs(inst: &ReconfigInstance) -> Result<Solution> {
    solve_bfs_with(inst, &Limits::default())
}

/// Breadth-first search over the explicit reconfiguration graph; a yes
/// answer carries a shortest sequence.
pub fn solve_bfs_with(inst: &ReconfigInstance, limits: &Limits) -> Result<Solution> {
    inst.check_endpoints()?;
    if inst.source == inst.target {
        return Ok(Solution {
            sequence: Some(ReconfigSequence::single(inst.source.clone())),
            nodes: 1,
            edges: 0,
        });
    }
    let rg = build_reconfig_graph_with(&inst.host, &inst.pattern, inst.rule, limits)?;
    Ok(Solution {
        sequence: rg.sequence(&inst.source, &inst.target)?,
        nodes: rg.node_count(),
        edges: rg.edge_count(),
    })
}

/// W-word reachability input: symbols, an allowed-successor relation and
/// two words of equal length given as symbol indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordInstance {
    symbols: Vec<String>,
    allowed: Vec<Vec<bool>>,
    source: Vec<usize>,
    target: Vec<usize>,
}

impl WordInstance {
    pub fn new(
        symbols: Vec<String>,
        relation: impl IntoIterator<Item = (usize, usize)>,
        source: Vec<usize>,
        target: Vec<usize>,
    ) -> Result<Self> {
        let q = symbols.len();
        if q == 0 {
            return invalid("the alphabet is empty");
        }
        let mut allowed = vec![vec![false; q]; q];
        for (a, b) in relation {
            if a >= q || b >= q {
                return invalid("relation mentions an unknown symbol");
            }
            allowed[a][b] = true;
        }
        let w = WordInstance {
            symbols,
            allowed,
            source,
            target,
        };
        if w.source.len() != w.target.len() {
            return invalid("source and target words differ in length");
        }
        for (name, word) in [("source", &w.source), ("target", &w.target)] {
            if word.iter().any(|&c| c >= q) {
                return invalid(format!("{name} word uses an unknown symbol"));
            }
            if !w.is_w_word(word) {
                return invalid(format!("{name} word is not a W-word"));
            }
        }
        Ok(w)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        self.allowed[a][b]
    }

    pub fn relation(&self) -> Vec<(usize, usize)> {
        let q = self.symbols.len();
        (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .filter(|&(a, b)| self.allowed[a][b])
            .collect()
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn is_w_word(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| self.allowed[p[0]][p[1]])
    }

    /// Same alphabet and relation, different endpoints.
    pub fn with_words(&self, source: Vec<usize>, target: Vec<usize>) -> Result<Self> {
        WordInstance::new(self.symbols.clone(), self.relation(), source, target)
    }
}

pub fn word_reachability(w: &WordInstance) -> Result<bool> {
    word_reachability_with(w, &Limits::default())
}

/// Breadth-first search over W-words of the instance length, changing one
/// symbol per step.
pub fn word_reachability_with(w: &WordInstance, limits: &Limits) -> Result<bool> {
    if w.source == w.target {
        return Ok(true);
    }
    let q = w.symbols.len();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::from([(w.source.clone(), ())]);
    let mut queue = VecDeque::from([w.source.clone()]);
    while let Some(word) = queue.pop_front() {
        for i in 0..word.len() {
            for c in 0..q {
                if c == word[i] {
                    continue;
                }
                let ok_left = i == 0 || w.allowed[word[i - 1]][c];
                let ok_right = i + 1 == word.len() || w.allowed[c][word[i + 1]];
                if !(ok_left && ok_right) {
                    continue;
                }
                let mut next = word.clone();
                next[i] = c;
                if next == w.target {
                    return Ok(true);
                }
                if seen.contains_key(&next) {
                    continue;
                }
                if seen.len() >= limits.max_states {
                    return Err(Error::ResourceLimit {
                        what: "word states",
                        count: seen.len() + 1,
                        cap: limits.max_states,
                    });
                }
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// The two sides of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    /// Errors unless the sides partition the vertices and each side is
    /// independent.
    pub fn check(&self, g: &Graph) -> Result<()> {
        self.left.check_in(g)?;
        self.right.check_in(g)?;
        if self.left.intersection_count(&self.right) > 0
            || self.left.len() + self.right.len() != g.n()
        {
            return invalid("sides must partition the vertex set");
        }
        for side in [&self.left, &self.right] {
            let v = side.as_slice();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if g.has_edge(v[i], v[j]) {
                        return invalid(format!(
                            "edge {}-{} inside one side; graph is not bipartite with these sides",
                            v[i] + 1,
                            v[j] + 1
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Searches for `b` vertices on each side that are pairwise adjacent across
/// the sides. Tries every `b`-subset of the smaller side and intersects
/// their neighborhoods. Returns `(left part, right part)`.
pub fn max_balanced_biclique_at_least(
    g: &Graph,
    sides: &Bipartition,
    b: usize,
) -> Result<Option<(VertexSet, VertexSet)>> {
    sides.check(g)?;
    if b == 0 {
        return Ok(Some((VertexSet::empty(), VertexSet::empty())));
    }
    let swap = sides.left.len() > sides.right.len();
    let (small, large) = if swap {
        (&sides.right, &sides.left)
    } else {
        (&sides.left, &sides.right)
    };
    let mut found = None;
    for_each_subset(small.as_slice(), b, &mut |pick| {
        let common: Vec<usize> = large
            .iter()
            .filter(|&v| pick.iter().all(|&u| g.has_edge(u, v)))
            .take(b)
            .collect();
        if common.len() == b {
            found = Some((VertexSet::new(pick.iter().copied()), VertexSet::new(common)));
            true
        } else {
            false
        }
    });
    Ok(found.map(|(s, l)| if swap { (l, s) } else { (s, l) }))
}

/// Calls `f` on each `k`-subset of `items` in lexicographic order until it
/// returns true. Returns whether it was stopped.
pub(crate) fn for_each_subset(
    items: &[usize],
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        let need = k - cur.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            cur.push(items[i]);
            let stop = rec(items, k, i + 1, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}
