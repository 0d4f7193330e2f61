//! Gadget constructions that turn word reachability, induced subgraph
//! isomorphism and maximum balanced biclique instances into reconfiguration
//! instances. Every host vertex carries a provenance label naming the gadget
//! part it came from.

use std::collections::BTreeMap;

use crate::analysis::is_connected;
use crate::bruteforce::{Bipartition, WordInstance};
use crate::error::{invalid, Result};
use crate::graph::{
    copies, disjoint_union, duplicate_set, join_sets, substitute, Graph, VertexSet,
};
use crate::rules::{ReconfigInstance, Rule};

#[derive(Clone, Debug)]
pub struct GadgetOutput {
    /// The host carries the provenance as vertex labels.
    pub instance: ReconfigInstance,
    pub provenance: Vec<String>,
    /// Derived quantities such as `t`, `m`, `c`, `k`, `mu`.
    pub parameters: BTreeMap<String, usize>,
}

fn finish(
    host: Graph,
    provenance: Vec<String>,
    pattern: Graph,
    source: VertexSet,
    target: VertexSet,
    rule: Rule,
    parameters: Vec<(&str, usize)>,
) -> Result<GadgetOutput> {
    let host = host.with_labels(provenance.clone())?;
    Ok(GadgetOutput {
        instance: ReconfigInstance {
            host,
            pattern,
            source,
            target,
            rule,
        },
        provenance,
        parameters: parameters
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    })
}

/// Layered gadget: one clique layer per word position, one vertex per
/// symbol, consecutive layers joined on symbol pairs outside the relation,
/// then every vertex blown up into `t` disjoint copies of `f`.
///
/// `rule.k()` must be at least `2|V(f)|`; `t = 2^m` with
/// `2^m |V(f)| <= k < 2^(m+1) |V(f)|`.
pub fn reduce_word_to_isisor(w: &WordInstance, f: &Graph, rule: Rule) -> Result<GadgetOutput> {
    let fsize = f.n();
    if fsize == 0 || !is_connected(f) {
        return invalid("the pattern unit must be a nonempty connected graph");
    }
    let k = rule.k();
    if k < 2 * fsize {
        return invalid(format!("k = {k} is below 2|V(F)| = {}", 2 * fsize));
    }
    let mut m = 0;
    while (fsize << (m + 1)) <= k {
        m += 1;
    }
    let t = 1usize << m;
    let q = w.symbols().len();
    let n = w.len();
    let layer = |i: usize, j: usize| i * q + j;
    let mut edges = Vec::new();
    for i in 0..n {
        for a in 0..q {
            for b in a + 1..q {
                edges.push((layer(i, a), layer(i, b)));
            }
            if i + 1 < n {
                for b in 0..q {
                    if !w.allows(a, b) {
                        edges.push((layer(i, a), layer(i + 1, b)));
                    }
                }
            }
        }
    }
    let skeleton = Graph::new(n * q, edges)?;
    let unit = copies(f, t);
    let (host, ranges) = substitute(&skeleton, &vec![unit; n * q])?;
    let mut provenance = Vec::with_capacity(host.n());
    for i in 0..n {
        for sym in w.symbols() {
            for c in 0..t {
                for v in 0..fsize {
                    provenance.push(format!("L{}/{sym}/copy{}/f{}", i + 1, c + 1, v + 1));
                }
            }
        }
    }
    let place = |word: &[usize]| {
        VertexSet::new(
            word.iter()
                .enumerate()
                .flat_map(|(i, &j)| ranges[layer(i, j)].clone()),
        )
    };
    let source = place(w.source());
    let target = place(w.target());
    finish(
        host,
        provenance,
        copies(f, n * t),
        source,
        target,
        rule,
        vec![("k", k), ("m", m), ("t", t), ("n", n), ("symbols", q)],
    )
}

/// Six-vertex skeleton `g', a, b, h*, x, y` with edges
/// `g'a, g'b, ab, ah*, bh*, ax, by, xy`; `g'` becomes `gp`, `h*` becomes
/// `hp`, the other four become `2hp`. The pattern is `4hp`, the tokens move
/// from `A ∪ Y` to `B ∪ X` by jumping `4|V(hp)| - mu` at a time.
pub fn reduce_isiso_to_isisor(gp: &Graph, hp: &Graph, mu: usize) -> Result<GadgetOutput> {
    let p = hp.n();
    if mu < 1 || mu > 2 * p {
        return invalid(format!("mu = {mu} must lie in 1..=2|V(hp)| = {}", 2 * p));
    }
    const NAMES: [&str; 6] = ["g'", "a", "b", "h*", "x", "y"];
    let skeleton = Graph::new(
        6,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
            (1, 4),
            (2, 5),
            (4, 5),
        ],
    )?;
    let double = copies(hp, 2);
    let parts = vec![
        gp.clone().without_labels(),
        double.clone(),
        double.clone(),
        hp.clone().without_labels(),
        double.clone(),
        double,
    ];
    let (host, ranges) = substitute(&skeleton, &parts)?;
    let mut provenance = Vec::with_capacity(host.n());
    for (part, name) in NAMES.iter().enumerate() {
        for (i, _) in ranges[part].clone().enumerate() {
            provenance.push(if part == 0 {
                format!("{name}/{}", i + 1)
            } else {
                format!("{name}/copy{}/{}", i / p + 1, i % p + 1)
            });
        }
    }
    let source = VertexSet::new(ranges[1].clone().chain(ranges[5].clone()));
    let target = VertexSet::new(ranges[2].clone().chain(ranges[4].clone()));
    let k = 4 * p - mu;
    finish(
        host,
        provenance,
        copies(hp, 4),
        source,
        target,
        Rule::jump(k)?,
        vec![("k", k), ("mu", mu)],
    )
}

/// Host built from the bipartite complement of `g` across `sides`, with the
/// right side duplicated `c = |left| - b` times, plus a biclique on fresh
/// independent sets `S` and `T` of size `(c+2)b`; `S` is joined to every
/// right-side copy and `T` to the left side. The independent set on `S` must
/// reach `T` by jumping `(c+1)b` tokens at a time.
///
/// Host order: left side, right side, its duplicates round by round, `S`,
/// `T`.
pub fn reduce_mbb_to_isr(g: &Graph, sides: &Bipartition, b: usize) -> Result<GadgetOutput> {
    sides.check(g)?;
    if b < 1 {
        return invalid("b must be at least 1");
    }
    let na = sides.left.len();
    if b > na {
        return invalid(format!("b = {b} exceeds the left side size {na}"));
    }
    let nb = sides.right.len();
    let c = na - b;
    let mut star_edges = Vec::new();
    for (i, u) in sides.left.iter().enumerate() {
        for (j, v) in sides.right.iter().enumerate() {
            if !g.has_edge(u, v) {
                star_edges.push((i, na + j));
            }
        }
    }
    let star = Graph::new(na + nb, star_edges)?;
    let right: VertexSet = (na..na + nb).collect();
    let (dup, rounds) = duplicate_set(&star, &right, c)?;
    let s = (c + 2) * b;
    let (with_st, parts) = disjoint_union(&[dup.without_labels(), Graph::complete_bipartite(s, s)]);
    let base = parts[1].start;
    let s_set: VertexSet = (base..base + s).collect();
    let t_set: VertexSet = (base + s..base + 2 * s).collect();
    let left: VertexSet = (0..na).collect();
    let b_prime = right.union(&rounds.iter().flatten().copied().collect());
    let host = join_sets(&join_sets(&with_st, &s_set, &b_prime)?, &t_set, &left)?;

    let mut provenance = Vec::with_capacity(host.n());
    provenance.extend(sides.left.iter().map(|v| format!("A/{}", v + 1)));
    for r in 0..=c {
        provenance.extend(sides.right.iter().map(|v| format!("B{r}/{}", v + 1)));
    }
    provenance.extend((0..s).map(|i| format!("S/{}", i + 1)));
    provenance.extend((0..s).map(|i| format!("T/{}", i + 1)));
    let k = s - b;
    finish(
        host.without_labels(),
        provenance,
        Graph::empty(s),
        s_set,
        t_set,
        Rule::jump(k)?,
        vec![("b", b), ("c", c), ("k", k), ("mu", b)],
    )
}
