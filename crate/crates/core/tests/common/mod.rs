//! Naive reference implementations used as oracles. Nothing here calls the
//! library's search code; graphs are built through `Graph::new` only.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use isor::{Graph, VertexSet};
use rand::Rng;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over the
/// pairs `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn induced(g: &Graph, s: &[usize]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if g.has_edge(s[i], s[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(s.len(), edges).unwrap()
}

/// Plain backtracking over vertex maps, no refinement.
pub fn naive_iso(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    fn go(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for c in 0..b.n() {
            if used[c] {
                continue;
            }
            if (0..i).all(|j| a.has_edge(i, j) == b.has_edge(c, map[j])) {
                used[c] = true;
                map.push(c);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
        }
        false
    }
    go(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Every `|V(h)|`-subset of `g` that induces a copy of `h`.
pub fn naive_isis(g: &Graph, h: &Graph) -> Vec<VertexSet> {
    subsets(g.n(), h.n())
        .into_iter()
        .filter(|s| naive_iso(&induced(g, s), h))
        .map(VertexSet::new)
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest edge mask over all relabelings.
pub fn naive_canon(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let n = g.n();
    let mut best = u64::MAX;
    for p in perms {
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(p[u], p[v]) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(mask);
    }
    best
}

pub fn naive_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in 0..g.n() {
            if g.has_edge(v, w) && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// One representative per isomorphism class on `n` vertices.
pub fn graphs_up_to_iso(n: usize, connected_only: bool) -> Vec<Graph> {
    let perms = permutations(n);
    let pairs = n * n.saturating_sub(1) / 2;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs {
        let g = graph_from_mask(n, mask);
        if connected_only && !naive_connected(&g) {
            continue;
        }
        if seen.insert(naive_canon(&g, &perms)) {
            out.push(g);
        }
    }
    out
}

/// Counts `(odd, even)` induced cycles of length at least four by checking
/// every vertex subset.
pub fn naive_holes(g: &Graph) -> (usize, usize) {
    let n = g.n();
    let (mut odd, mut even) = (0, 0);
    for mask in 0u64..1 << n {
        let k = mask.count_ones() as usize;
        if k < 4 {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = induced(g, &s);
        if (0..k).all(|v| sub.degree(v) == 2) && naive_connected(&sub) {
            if k % 2 == 1 {
                odd += 1;
            } else {
                even += 1;
            }
        }
    }
    (odd, even)
}

pub fn naive_complement(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(g.n(), edges).unwrap()
}

pub fn naive_perfect(g: &Graph) -> bool {
    naive_holes(g).0 == 0 && naive_holes(&naive_complement(g)).0 == 0
}

pub fn naive_independent(g: &Graph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Jump: at most `k` tokens leave. Slide: additionally some bijection from
/// vacated to newly occupied vertices uses only edges.
pub fn naive_adjacent(g: &Graph, s: &VertexSet, t: &VertexSet, slide: bool, k: usize) -> bool {
    let from: Vec<usize> = s.iter().filter(|&v| !t.contains(v)).collect();
    let to: Vec<usize> = t.iter().filter(|&v| !s.contains(v)).collect();
    if from.len() > k {
        return false;
    }
    if !slide || from.is_empty() {
        return true;
    }
    permutations(to.len()).iter().any(|p| {
        from.iter()
            .enumerate()
            .all(|(i, &u)| g.has_edge(u, to[p[i]]))
    })
}

/// BFS over words, one symbol at a time, staying inside the relation.
pub fn naive_word_reach(
    q: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
    source: &[usize],
    target: &[usize],
) -> bool {
    let ok = |w: &[usize]| w.windows(2).all(|p| allowed(p[0], p[1]));
    let mut seen = BTreeSet::from([source.to_vec()]);
    let mut queue = VecDeque::from([source.to_vec()]);
    while let Some(w) = queue.pop_front() {
        if w == target {
            return true;
        }
        for i in 0..w.len() {
            for c in 0..q {
                let mut x = w.clone();
                x[i] = c;
                if ok(&x) && seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
    }
    false
}

/// Whether some `b` left and `b` right vertices are pairwise adjacent.
pub fn naive_biclique(g: &Graph, left: &[usize], right: &[usize], b: usize) -> bool {
    if b > left.len() || b > right.len() {
        return b == 0;
    }
    subsets(left.len(), b).iter().any(|ls| {
        subsets(right.len(), b).iter().any(|rs| {
            ls.iter()
                .all(|&i| rs.iter().all(|&j| g.has_edge(left[i], right[j])))
        })
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_subset(rng: &mut impl Rng, n: usize, k: usize) -> VertexSet {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    VertexSet::new(all.into_iter().take(k))
}

/// `K1`, `2K1`, `K2`, `3K1`, `K1+K2`.
pub fn small_patterns() -> Vec<(&'static str, Graph)> {
    vec![
        ("K1", graph(1, &[])),
        ("2K1", graph(2, &[])),
        ("K2", graph(2, &[(0, 1)])),
        ("3K1", graph(3, &[])),
        ("K1+K2", graph(3, &[(1, 2)])),
    ]
}
