//! Graph-class predicates at desk scale: holes, perfectness, bipartiteness,
//! components and diameter.

use std::collections::VecDeque;

use crate::bits::Bits;
use crate::error::{invalid, Error, Result};
use crate::graph::{complement, Graph, Vertex, VertexSet};

/// Default cap on hole-search DFS steps.
pub const DEFAULT_HOLE_STEPS: usize = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Any,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, len: usize) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => len % 2 == 1,
            Parity::Even => len.is_multiple_of(2),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HoleReport {
    /// Each hole starts at its smallest vertex and continues toward the
    /// smaller of that vertex's two cycle neighbors.
    pub holes: Vec<Vec<Vertex>>,
    pub odd: usize,
    pub even: usize,
}

pub fn find_holes(g: &Graph, parity: Parity, stop_at_first: bool) -> Result<HoleReport> {
    find_holes_capped(g, parity, stop_at_first, DEFAULT_HOLE_STEPS)
}

/// Enumerates induced cycles of length at least four. Each cycle is rooted
/// at its minimum vertex and grown as a chordless path through larger
/// vertices; reflections are removed by requiring the second vertex to be
/// smaller than the last.
pub fn find_holes_capped(
    g: &Graph,
    parity: Parity,
    stop_at_first: bool,
    max_steps: usize,
) -> Result<HoleReport> {
    let mut search = HoleSearch {
        g,
        parity,
        stop_at_first,
        max_steps,
        steps: 0,
        report: HoleReport::default(),
        path: Vec::new(),
    };
    for root in g.vertices() {
        let mut below = Bits::new(g.n());
        for v in 0..=root {
            below.insert(v);
        }
        search.path.clear();
        search.path.push(root);
        for &p1 in g.neighbors(root) {
            if p1 < root {
                continue;
            }
            search.path.push(p1);
            if search.grow(&below)? {
                return Ok(search.report);
            }
            search.path.pop();
        }
    }
    Ok(search.report)
}

struct HoleSearch<'a> {
    g: &'a Graph,
    parity: Parity,
    stop_at_first: bool,
    max_steps: usize,
    steps: usize,
    report: HoleReport,
    path: Vec<Vertex>,
}

impl HoleSearch<'_> {
    /// `blocked` holds every vertex that may not extend the current path:
    /// those not above the root plus the closed neighborhoods of all path
    /// vertices but the last. Returns true when the search should stop.
    fn grow(&mut self, blocked: &Bits) -> Result<bool> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(Error::ResourceLimit {
                what: "hole search steps",
                count: self.steps,
                cap: self.max_steps,
            });
        }
        let g = self.g;
        let root = self.path[0];
        let last = *self.path.last().unwrap();
        let mut next_blocked = blocked.clone();
        next_blocked.union_with(g.neighbor_bits(last));
        next_blocked.insert(last);
        for &w in g.neighbors(last) {
            if blocked.contains(w) {
                continue;
            }
            if g.has_edge(w, root) {
                // Closing the cycle; the triangle case has path length 2.
                let len = self.path.len() + 1;
                if self.path.len() >= 3 && self.path[1] < w && self.parity.admits(len) {
                    let mut hole = self.path.clone();
                    hole.push(w);
                    if len % 2 == 1 {
                        self.report.odd += 1;
                    } else {
                        self.report.even += 1;
                    }
                    self.report.holes.push(hole);
                    if self.stop_at_first {
                        return Ok(true);
                    }
                }
                continue;
            }
            self.path.push(w);
            let stop = self.grow(&next_blocked)?;
            self.path.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub fn is_even_hole_free(g: &Graph) -> Result<bool> {
    Ok(find_holes(g, Parity::Even, true)?.holes.is_empty())
}

pub fn is_odd_hole_free(g: &Graph) -> Result<bool> {
    Ok(find_holes(g, Parity::Odd, true)?.holes.is_empty())
}

/// Perfect iff neither the graph nor its complement has an odd hole.
pub fn is_perfect(g: &Graph) -> Result<bool> {
    Ok(is_odd_hole_free(g)? && is_odd_hole_free(&complement(g))?)
}

/// Connected components in order of their smallest vertex.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        out.push(VertexSet::new(comp));
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

/// A proper 2-coloring when one exists; color 0 on the smallest vertex of
/// each component.
pub fn is_bipartite(g: &Graph) -> Option<Vec<u8>> {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    for s in g.vertices() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

pub(crate) fn bfs_distances(g: &Graph, s: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn diameter(g: &Graph) -> Result<usize> {
    if g.n() == 0 {
        return invalid("diameter of the empty graph is undefined");
    }
    let mut best = 0;
    for s in g.vertices() {
        for d in bfs_distances(g, s) {
            match d {
                Some(d) => best = best.max(d),
                None => return invalid("diameter of a disconnected graph is undefined"),
            }
        }
    }
    Ok(best)
}

/// Checks a reported hole independently: a closed walk of distinct
/// vertices, length at least four, with no chords.
pub fn is_chordless_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    if k < 4 || VertexSet::new(cycle.iter().copied()).len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}
