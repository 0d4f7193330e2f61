//! Isomorphism and induced subgraph isomorphism on desk-scale graphs.
//!
//! Induced copies of a pattern are enumerated as vertex *sets*: the search
//! grows a set in increasing vertex order and prunes on monotone invariants
//! (edge count, maximum degree, largest component), then settles each full
//! candidate with an exact isomorphism test. Each set is reported once no
//! matter how many automorphisms the pattern has.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::analysis::components;
use crate::bits::Bits;
use crate::graph::{disjoint_union, induced_unlabeled, Graph, Vertex, VertexSet};

/// A bijection from the vertices of one graph onto the vertices of another
/// (or onto a vertex set of a host). `image[u]` is where `u` goes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMapping {
    pub image: Vec<Vertex>,
}

impl IsoMapping {
    /// Checks injectivity and that adjacency and non-adjacency are both
    /// preserved from `from` into `to`.
    pub fn is_valid(&self, from: &Graph, to: &Graph) -> bool {
        if self.image.len() != from.n() || self.image.iter().any(|&v| v >= to.n()) {
            return false;
        }
        let set = VertexSet::new(self.image.iter().copied());
        if set.len() != self.image.len() {
            return false;
        }
        from.vertices().all(|u| {
            (u + 1..from.n())
                .all(|v| from.has_edge(u, v) == to.has_edge(self.image[u], self.image[v]))
        })
    }
}

/// Isomorphism-invariant vertex colors from two rounds of neighborhood
/// refinement, as dense ranks.
fn refined_colors(g: &Graph) -> Vec<usize> {
    let mut colors: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    for _ in 0..2 {
        let sigs: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
    }
    colors
}

/// Returns an isomorphism from `a` onto `b` when one exists.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Option<IsoMapping> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.n();
    let (ja, jb) = joint_colors(a, b);
    let mut hist_a = ja.clone();
    let mut hist_b = jb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    let order = search_order(a);
    let mut image = vec![usize::MAX; n];
    let mut used = Bits::new(n);
    if extend_iso(a, b, &ja, &jb, &order, 0, &mut image, &mut used) {
        Some(IsoMapping { image })
    } else {
        None
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    is_isomorphic(a, b).is_some()
}

/// Color refinement run on both graphs with a shared signature table so the
/// resulting ranks are comparable.
fn joint_colors(a: &Graph, b: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut ca: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut cb: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    for _ in 0..3 {
        let sig = |g: &Graph, c: &[usize]| -> Vec<(usize, Vec<usize>)> {
            g.vertices()
                .map(|v| {
                    let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
                    ns.sort_unstable();
                    (c[v], ns)
                })
                .collect()
        };
        let (sa, sb) = (sig(a, &ca), sig(b, &cb));
        let mut table: Vec<&(usize, Vec<usize>)> = sa.iter().chain(sb.iter()).collect();
        table.sort();
        table.dedup();
        let rank = |s: &(usize, Vec<usize>)| table.binary_search(&s).unwrap();
        ca = sa.iter().map(rank).collect();
        cb = sb.iter().map(rank).collect();
    }
    (ca, cb)
}

/// Vertices ordered so that each one after the first of its component has
/// an earlier neighbor; high degree first within that constraint.
fn search_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut placed = Bits::new(n);
    let mut order = Vec::with_capacity(n);
    let mut frontier_weight = vec![0usize; n];
    while order.len() < n {
        let next = g
            .vertices()
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| (frontier_weight[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed.insert(next);
        order.push(next);
        for &w in g.neighbors(next) {
            frontier_weight[w] += 1;
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    a: &Graph,
    b: &Graph,
    ca: &[usize],
    cb: &[usize],
    order: &[Vertex],
    depth: usize,
    image: &mut [Vertex],
    used: &mut Bits,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    let anchor = order[..depth].iter().find(|&&x| a.has_edge(u, x)).copied();
    let candidates: Vec<Vertex> = match anchor {
        Some(x) => b.neighbors(image[x]).to_vec(),
        None => b.vertices().collect(),
    };
    for c in candidates {
        if used.contains(c) || cb[c] != ca[u] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&x| a.has_edge(u, x) == b.has_edge(c, image[x]));
        if !consistent {
            continue;
        }
        image[u] = c;
        used.insert(c);
        if extend_iso(a, b, ca, cb, order, depth + 1, image, used) {
            return true;
        }
        used.remove(c);
        image[u] = usize::MAX;
    }
    false
}

/// A canonical labeling key: two graphs are isomorphic iff their forms are
/// equal. Computed as the lexicographically smallest column-wise upper
/// triangle of the adjacency matrix over all vertex orders that respect an
/// invariant color partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits[k] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::new(self.n, edges).unwrap()
    }
}

type CanonCache = HashMap<(usize, Vec<(Vertex, Vertex)>), CanonicalForm>;

fn canon_cache() -> &'static Mutex<CanonCache> {
    static CACHE: OnceLock<Mutex<CanonCache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized canonical form. Intended for small graphs (components of a
/// pattern); cost grows factorially on highly symmetric inputs.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let key = (g.n(), g.edges().collect::<Vec<_>>());
    if let Some(c) = canon_cache().lock().unwrap().get(&key) {
        return c.clone();
    }
    let c = compute_canonical(g);
    let mut cache = canon_cache().lock().unwrap();
    if cache.len() > 100_000 {
        cache.clear();
    }
    cache.insert(key, c.clone());
    c
}

fn compute_canonical(g: &Graph) -> CanonicalForm {
    let n = g.n();
    let colors = refined_colors(g);
    // Color classes in rank order; position j must hold a vertex of class
    // slot[j].
    let mut slot: Vec<usize> = colors.clone();
    slot.sort_unstable();
    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut current = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    canon_search(
        g,
        &colors,
        &slot,
        &mut order,
        &mut used,
        &mut current,
        false,
        &mut best,
    );
    CanonicalForm {
        n,
        bits: best.unwrap_or_default(),
    }
}

#[allow(clippy::too_many_arguments)]
fn canon_search(
    g: &Graph,
    colors: &[usize],
    slot: &[usize],
    order: &mut Vec<Vertex>,
    used: &mut [bool],
    current: &mut Vec<bool>,
    already_better: bool,
    best: &mut Option<Vec<bool>>,
) {
    let j = order.len();
    if j == g.n() {
        if best.as_ref().is_none_or(|b| *current < *b) {
            *best = Some(current.clone());
        }
        return;
    }
    let start = current.len();
    for v in g.vertices() {
        if used[v] || colors[v] != slot[j] {
            continue;
        }
        current.extend(order.iter().map(|&u| g.has_edge(u, v)));
        let mut better = already_better;
        let mut prune = false;
        if !better {
            if let Some(b) = best.as_ref() {
                match current[start..].cmp(&b[start..start + j]) {
                    std::cmp::Ordering::Less => better = true,
                    std::cmp::Ordering::Greater => prune = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        if !prune {
            used[v] = true;
            order.push(v);
            canon_search(g, colors, slot, order, used, current, better, best);
            order.pop();
            used[v] = false;
        }
        current.truncate(start);
    }
}

/// Pattern statistics used to prune the set enumeration.
#[derive(Clone, Debug)]
struct PatternProfile {
    p: usize,
    m: usize,
    max_degree: usize,
    max_component: usize,
    degrees: Vec<usize>,
}

impl PatternProfile {
    fn of(h: &Graph) -> Self {
        let mut degrees: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
        degrees.sort_unstable();
        PatternProfile {
            p: h.n(),
            m: h.edge_count(),
            max_degree: h.max_degree(),
            max_component: components(h).iter().map(VertexSet::len).max().unwrap_or(0),
            degrees,
        }
    }
}

/// Iterator over every vertex set of a host inducing a copy of a pattern.
/// Sets come out in lexicographic order.
pub struct IsisIter<'a> {
    g: &'a Graph,
    h: &'a Graph,
    prof: PatternProfile,
    chosen: Vec<Vertex>,
    degs: Vec<usize>,
    edges: usize,
    cursor: Vertex,
    done: bool,
}

impl<'a> IsisIter<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        let prof = PatternProfile::of(h);
        let done = prof.p > g.n();
        IsisIter {
            g,
            h,
            prof,
            chosen: Vec::new(),
            degs: Vec::new(),
            edges: 0,
            cursor: 0,
            done,
        }
    }

    fn try_push(&mut self, w: Vertex) -> bool {
        let g = self.g;
        let hits: Vec<usize> = self
            .chosen
            .iter()
            .enumerate()
            .filter(|&(_, &u)| g.has_edge(u, w))
            .map(|(i, _)| i)
            .collect();
        let d = hits.len();
        if self.edges + d > self.prof.m || d > self.prof.max_degree {
            return false;
        }
        if hits
            .iter()
            .any(|&i| self.degs[i] + 1 > self.prof.max_degree)
        {
            return false;
        }
        if d > 0 && self.component_size_with(w) > self.prof.max_component {
            return false;
        }
        for &i in &hits {
            self.degs[i] += 1;
        }
        self.chosen.push(w);
        self.degs.push(d);
        self.edges += d;
        true
    }

    fn component_size_with(&self, w: Vertex) -> usize {
        let k = self.chosen.len();
        let mut seen = vec![false; k];
        let mut stack: Vec<Vertex> = vec![w];
        let mut size = 1;
        while let Some(x) = stack.pop() {
            for i in 0..k {
                if !seen[i] && self.g.has_edge(x, self.chosen[i]) {
                    seen[i] = true;
                    size += 1;
                    stack.push(self.chosen[i]);
                }
            }
        }
        size
    }

    fn pop(&mut self) -> Option<Vertex> {
        let w = self.chosen.pop()?;
        let d = self.degs.pop().unwrap();
        self.edges -= d;
        for (i, &u) in self.chosen.iter().enumerate() {
            if self.g.has_edge(u, w) {
                self.degs[i] -= 1;
            }
        }
        Some(w)
    }

    fn accept(&self) -> bool {
        if self.edges != self.prof.m {
            return false;
        }
        let mut d = self.degs.clone();
        d.sort_unstable();
        if d != self.prof.degrees {
            return false;
        }
        if self.prof.m == 0 {
            return true;
        }
        let sub = induced_unlabeled(self.g, &self.chosen);
        are_isomorphic(&sub, self.h)
    }
}

impl Iterator for IsisIter<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let n = self.g.n();
        let p = self.prof.p;
        while !self.done {
            if self.chosen.len() == p {
                let found = self
                    .accept()
                    .then(|| VertexSet::from_sorted(self.chosen.clone()));
                match self.pop() {
                    Some(w) => self.cursor = w + 1,
                    None => self.done = true,
                }
                if found.is_some() {
                    return found;
                }
                continue;
            }
            if self.cursor + (p - self.chosen.len()) > n {
                match self.pop() {
                    Some(w) => self.cursor = w + 1,
                    None => self.done = true,
                }
                continue;
            }
            let w = self.cursor;
            self.cursor += 1;
            if self.try_push(w) {
                self.cursor = w + 1;
            }
        }
        None
    }
}

/// Every set `S` with `g[S]` isomorphic to `h`, each exactly once.
pub fn enumerate_isis<'a>(g: &'a Graph, h: &'a Graph) -> IsisIter<'a> {
    IsisIter::new(g, h)
}

pub fn find_isis(g: &Graph, h: &Graph) -> Option<VertexSet> {
    enumerate_isis(g, h).next()
}

pub fn is_isis_set(g: &Graph, h: &Graph, s: &VertexSet) -> bool {
    if s.len() != h.n() || s.check_in(g).is_err() {
        return false;
    }
    let sub = induced_unlabeled(g, s.as_slice());
    are_isomorphic(&sub, h)
}

/// Decides induced subgraph isomorphism and returns a witness set.
/// Implementations may exploit structure of the host or pattern class.
pub trait IsisOracle: Sync {
    fn find(&self, g: &Graph, h: &Graph) -> Option<VertexSet>;
}

/// The default oracle: exhaustive backtracking via [`find_isis`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BacktrackOracle;

impl IsisOracle for BacktrackOracle {
    fn find(&self, g: &Graph, h: &Graph) -> Option<VertexSet> {
        find_isis(g, h)
    }
}

impl<F> IsisOracle for F
where
    F: Fn(&Graph, &Graph) -> Option<VertexSet> + Sync,
{
    fn find(&self, g: &Graph, h: &Graph) -> Option<VertexSet> {
        self(g, h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssortedPart {
    /// Connected representative, in canonical vertex order.
    pub graph: Graph,
    pub multiplicity: usize,
    pub canon: CanonicalForm,
}

/// A pattern written as `t_1 F_1 + ... + t_l F_l` with pairwise
/// non-isomorphic connected `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssortedDecomposition {
    pub parts: Vec<AssortedPart>,
}

impl AssortedDecomposition {
    pub fn total_vertices(&self) -> usize {
        self.parts
            .iter()
            .map(|p| p.multiplicity * p.graph.n())
            .sum()
    }

    /// Largest component size.
    pub fn f_max(&self) -> usize {
        self.parts.iter().map(|p| p.graph.n()).max().unwrap_or(0)
    }

    pub fn index_of(&self, canon: &CanonicalForm) -> Option<usize> {
        self.parts.iter().position(|p| &p.canon == canon)
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.multiplicity).collect()
    }

    /// Disjoint union with `counts[i]` copies of part `i`.
    pub fn compose(&self, counts: &[usize]) -> Graph {
        let pieces: Vec<Graph> = self
            .parts
            .iter()
            .zip(counts)
            .flat_map(|(p, &c)| std::iter::repeat_n(p.graph.clone(), c))
            .collect();
        disjoint_union(&pieces).0.without_labels()
    }

    pub fn recompose(&self) -> Graph {
        self.compose(&self.multiplicities())
    }
}

/// Groups the components of `h` by isomorphism class. Parts are ordered by
/// vertex count, then edge count, then canonical form.
pub fn decompose_assorted(h: &Graph) -> AssortedDecomposition {
    let mut parts: Vec<AssortedPart> = Vec::new();
    for comp in components(h) {
        let sub = induced_unlabeled(h, comp.as_slice());
        let canon = canonical_form(&sub);
        match parts.iter_mut().find(|p| p.canon == canon) {
            Some(p) => p.multiplicity += 1,
            None => parts.push(AssortedPart {
                graph: canon.to_graph(),
                multiplicity: 1,
                canon,
            }),
        }
    }
    parts.sort_by(|a, b| {
        (a.graph.n(), a.graph.edge_count(), &a.canon).cmp(&(
            b.graph.n(),
            b.graph.edge_count(),
            &b.canon,
        ))
    });
    AssortedDecomposition { parts }
}
