//! Simple undirected graphs and the construction operators the gadgets are
//! assembled from.
//!
//! Vertices are dense identifiers `0..n`. Every constructor returns a new
//! value; a [`Graph`] is never mutated after it is built. Constructors that
//! move vertices around also return the map from old to new identifiers so
//! callers can keep track of where things ended up.

use std::fmt;
use std::ops::Range;

use crate::bits::Bits;
use crate::error::{invalid, Result};

pub type Vertex = usize;

/// A sorted, duplicate-free set of vertex identifiers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(items: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from a slice that is already strictly increasing.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.intersection_count(other) == self.len()
    }

    /// Errors unless every member is a vertex of `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= g.n() => invalid(format!(
                "vertex {} out of range for a graph on {} vertices",
                v + 1,
                g.n()
            )),
            _ => Ok(()),
        }
    }

    pub fn to_bits(&self, capacity: usize) -> Bits {
        Bits::from_iter_with(capacity, self.iter())
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl fmt::Display for VertexSet {
    /// 1-indexed, space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// Where each vertex of an input graph went in a constructed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Option<Vertex>>,
}

impl Relabeling {
    fn from_new_to_old(old_n: usize, new_to_old: Vec<Option<Vertex>>) -> Self {
        let mut old_to_new = vec![None; old_n];
        for (new, old) in new_to_old.iter().enumerate() {
            if let Some(old) = *old {
                old_to_new[old] = Some(new);
            }
        }
        Relabeling {
            old_to_new,
            new_to_old,
        }
    }

    pub fn map_set(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.old_to_new[v]).collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Bits>,
    nbrs: Vec<Vec<Vertex>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        let mut adj = vec![Bits::new(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!(
                    "edge {}-{} out of range for {} vertices",
                    u + 1,
                    v + 1,
                    n
                ));
            }
            if u == v {
                return invalid(format!("self-loop on vertex {}", u + 1));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<Bits>) -> Graph {
        let nbrs: Vec<Vec<Vertex>> = adj.iter().map(|b| b.iter().collect()).collect();
        let m = nbrs.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adj,
            nbrs,
            m,
            labels: None,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_adjacency(vec![Bits::new(n); n])
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    /// Sides are `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return invalid(format!("{} labels for {} vertices", labels.len(), self.n()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn neighbor_bits(&self, v: Vertex) -> &Bits {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.nbrs[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> Range<Vertex> {
        0..self.n()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::from_sorted(self.vertices().collect())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.nbrs
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Checks symmetry, absence of loops and label coverage.
    pub fn validate(&self) -> Result<()> {
        for u in self.vertices() {
            if self.adj[u].contains(u) {
                return invalid(format!("self-loop on vertex {}", u + 1));
            }
            for &v in &self.nbrs[u] {
                if v >= self.n() || !self.adj[v].contains(u) {
                    return invalid(format!("asymmetric edge {}-{}", u + 1, v + 1));
                }
            }
        }
        if let Some(l) = &self.labels {
            if l.len() != self.n() {
                return invalid("labels do not cover every vertex");
            }
        }
        Ok(())
    }

    fn label_or_index(&self, v: Vertex) -> String {
        self.label(v)
            .map(str::to_owned)
            .unwrap_or_else(|| (v + 1).to_string())
    }
}

/// The subgraph induced by `s`. Vertex `i` of the result is the `i`-th
/// smallest member of `s`.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Relabeling)> {
    s.check_in(g)?;
    let k = s.len();
    let mut adj = vec![Bits::new(k); k];
    for (i, u) in s.iter().enumerate() {
        for (j, v) in s.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut out = Graph::from_adjacency(adj);
    if let Some(l) = g.labels() {
        out.labels = Some(s.iter().map(|v| l[v].clone()).collect());
    }
    let relabel = Relabeling::from_new_to_old(g.n(), s.iter().map(Some).collect());
    Ok((out, relabel))
}

/// Same as [`induced_subgraph`] without the bookkeeping, for hot loops.
pub(crate) fn induced_unlabeled(g: &Graph, s: &[Vertex]) -> Graph {
    let k = s.len();
    let mut adj = vec![Bits::new(k); k];
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(s[i], s[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    Graph::from_adjacency(adj)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let adj = g
        .adj
        .iter()
        .enumerate()
        .map(|(v, row)| {
            let mut c = Bits::full(n);
            c.difference_with(row);
            c.remove(v);
            c
        })
        .collect();
    let mut out = Graph::from_adjacency(adj);
    out.labels = g.labels.clone();
    out
}

/// Disjoint union. Part `i` occupies the returned range `i`; labels record
/// the part index.
pub fn disjoint_union(gs: &[Graph]) -> (Graph, Vec<Range<Vertex>>) {
    let total: usize = gs.iter().map(Graph::n).sum();
    let mut edges = Vec::new();
    let mut ranges = Vec::with_capacity(gs.len());
    let mut labels = Vec::with_capacity(total);
    let mut offset = 0;
    for (i, g) in gs.iter().enumerate() {
        edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        for v in g.vertices() {
            labels.push(match g.label(v) {
                Some(l) => format!("part{i}/{l}"),
                None => format!("part{i}"),
            });
        }
        ranges.push(offset..offset + g.n());
        offset += g.n();
    }
    let out = Graph::new(total, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("union of valid graphs is valid");
    (out, ranges)
}

/// `t` disjoint copies of `f`, unlabeled.
pub fn copies(f: &Graph, t: usize) -> Graph {
    let parts = vec![f.clone().without_labels(); t];
    disjoint_union(&parts).0.without_labels()
}

/// Duplicates `s` a total of `times` rounds. In every round each `u` in `s`
/// gets a fresh copy adjacent to the original neighbors of `u`; two copies
/// from the same round are adjacent iff their originals are. Copies from
/// different rounds are never adjacent.
///
/// Returns the graph and, per round, the copy of each member of `s` in
/// ascending order of the originals.
pub fn duplicate_set(g: &Graph, s: &VertexSet, times: usize) -> Result<(Graph, Vec<Vec<Vertex>>)> {
    s.check_in(g)?;
    if times == 0 || s.is_empty() {
        return Ok((g.clone(), vec![Vec::new(); times]));
    }
    let n = g.n();
    let total = n + times * s.len();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut rounds = Vec::with_capacity(times);
    let mut labels: Vec<String> = g.vertices().map(|v| g.label_or_index(v)).collect();
    for r in 0..times {
        let base = n + r * s.len();
        let copy: Vec<Vertex> = (0..s.len()).map(|i| base + i).collect();
        for (i, u) in s.iter().enumerate() {
            edges.extend(g.neighbors(u).iter().map(|&w| (copy[i], w)));
            for (j, w) in s.iter().enumerate().skip(i + 1) {
                if g.has_edge(u, w) {
                    edges.push((copy[i], copy[j]));
                }
            }
            labels.push(format!("dup{}/{}", r + 1, g.label_or_index(u)));
        }
        rounds.push(copy);
    }
    let mut out = Graph::new(total, edges)?;
    if g.labels.is_some() {
        out.labels = Some(labels);
    }
    Ok((out, rounds))
}

/// Adds every edge between `a` and `b`.
pub fn join_sets(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Graph> {
    a.check_in(g)?;
    b.check_in(g)?;
    if a.intersection_count(b) > 0 {
        return invalid("cannot join overlapping vertex sets");
    }
    let edges = g
        .edges()
        .chain(a.iter().flat_map(|u| b.iter().map(move |v| (u, v))));
    let mut out = Graph::new(g.n(), edges)?;
    out.labels = g.labels.clone();
    Ok(out)
}

/// Replaces `v` by a copy of `f` whose every vertex inherits the
/// neighborhood of `v`. Remaining vertices of `g` keep their relative order
/// and come first; the vertices of `f` are appended in order.
pub fn replace_vertex(g: &Graph, v: Vertex, f: &Graph) -> Result<(Graph, Relabeling)> {
    if v >= g.n() {
        return invalid(format!("vertex {} out of range", v + 1));
    }
    let keep: Vec<Vertex> = g.vertices().filter(|&u| u != v).collect();
    let mut new_of_old = vec![None; g.n()];
    for (i, &u) in keep.iter().enumerate() {
        new_of_old[u] = Some(i);
    }
    let base = keep.len();
    let total = base + f.n();
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter_map(|(a, b)| Some((new_of_old[a]?, new_of_old[b]?)))
        .collect();
    edges.extend(f.edges().map(|(a, b)| (base + a, base + b)));
    for &w in g.neighbors(v) {
        let w = new_of_old[w].expect("neighbor is kept");
        edges.extend((0..f.n()).map(|x| (w, base + x)));
    }
    let mut out = Graph::new(total, edges)?;
    if g.labels.is_some() || f.labels.is_some() {
        let mut labels: Vec<String> = keep.iter().map(|&u| g.label_or_index(u)).collect();
        labels.extend(
            f.vertices()
                .map(|x| format!("{}/{}", g.label_or_index(v), f.label_or_index(x))),
        );
        out.labels = Some(labels);
    }
    let mut new_to_old: Vec<Option<Vertex>> = keep.into_iter().map(Some).collect();
    new_to_old.resize(total, None);
    Ok((out, Relabeling::from_new_to_old(g.n(), new_to_old)))
}

/// Replaces every vertex `v` of `base` by `parts[v]` at once. Equivalent to
/// calling [`replace_vertex`] on each vertex in turn. Part `v` occupies the
/// returned range `v`.
pub fn substitute(base: &Graph, parts: &[Graph]) -> Result<(Graph, Vec<Range<Vertex>>)> {
    if parts.len() != base.n() {
        return invalid(format!(
            "{} replacement graphs for {} vertices",
            parts.len(),
            base.n()
        ));
    }
    let mut ranges = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for p in parts {
        ranges.push(offset..offset + p.n());
        offset += p.n();
    }
    let mut edges = Vec::new();
    for (v, p) in parts.iter().enumerate() {
        let o = ranges[v].start;
        edges.extend(p.edges().map(|(a, b)| (o + a, o + b)));
    }
    for (u, v) in base.edges() {
        for a in ranges[u].clone() {
            edges.extend(ranges[v].clone().map(|b| (a, b)));
        }
    }
    Ok((Graph::new(offset, edges)?, ranges))
}

/// Open (`closed == false`) or closed neighborhood of a vertex set.
pub fn neighborhood(g: &Graph, x: &VertexSet, closed: bool) -> Result<VertexSet> {
    x.check_in(g)?;
    let mut bits = Bits::new(g.n());
    for v in x.iter() {
        bits.union_with(g.neighbor_bits(v));
    }
    if closed {
        for v in x.iter() {
            bits.insert(v);
        }
    } else {
        for v in x.iter() {
            bits.remove(v);
        }
    }
    Ok(VertexSet::from_sorted(bits.iter().collect()))
}
