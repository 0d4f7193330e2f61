mod common;

use common::*;
use isor::analysis::{find_holes, is_chordless_cycle, is_even_hole_free, is_perfect, Parity};
use isor::bruteforce::{
    build_reconfig_graph, max_balanced_biclique_at_least, solve_bfs, word_reachability,
    Bipartition, WordInstance,
};
use isor::graph::{
    complement, disjoint_union, duplicate_set, induced_subgraph, join_sets, replace_vertex,
    substitute,
};
use isor::io;
use isor::iso::{
    are_isomorphic, canonical_form, decompose_assorted, enumerate_isis, find_isis, is_isomorphic,
};
use isor::rules::{adjacent, kts_step_to_ts, verify_sequence};
use isor::xp::{build_compressed, edge_test, solve_xp};
use isor::{BacktrackOracle, Graph, ReconfigInstance, Rule, VertexSet};
use proptest::prelude::*;

fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, any::<u64>()).prop_map(|(n, mask)| {
        let pairs = n * n.saturating_sub(1) / 2;
        let mask = if pairs >= 64 {
            mask
        } else {
            mask & ((1u64 << pairs) - 1)
        };
        graph_from_mask(n, mask)
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), edges).unwrap()
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn arb_graph_with_perm(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(lo, hi).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_perm(n))
    })
}

fn subset_of(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|bits| {
        bits.iter()
            .enumerate()
            .filter(|p| *p.1)
            .map(|p| p.0)
            .collect()
    })
}

fn arb_pattern() -> impl Strategy<Value = Graph> {
    arb_graph(0, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn induced_subgraph_matches_naive((g, s) in arb_graph(0, 8).prop_flat_map(|g| { let n = g.n(); (Just(g), subset_of(n)) })) {
        let (sub, map) = induced_subgraph(&g, &s).unwrap();
        prop_assert_eq!(sub.without_labels(), induced(&g, s.as_slice()));
        for (i, v) in s.iter().enumerate() {
            prop_assert_eq!(map.new_to_old[i], Some(v));
            prop_assert_eq!(map.old_to_new[v], Some(i));
        }
    }

    #[test]
    fn complement_matches_naive(g in arb_graph(0, 8)) {
        prop_assert_eq!(complement(&g).without_labels(), naive_complement(&g));
        prop_assert_eq!(complement(&complement(&g)).without_labels(), g);
    }

    #[test]
    fn union_and_join_edge_counts(a in arb_graph(0, 5), b in arb_graph(0, 5), bits in any::<u16>()) {
        let (u, ranges) = disjoint_union(&[a.clone(), b.clone()]);
        prop_assert_eq!(u.n(), a.n() + b.n());
        prop_assert_eq!(u.edge_count(), a.edge_count() + b.edge_count());
        for x in ranges[0].clone() {
            for y in ranges[1].clone() {
                prop_assert!(!u.has_edge(x, y));
            }
        }
        let left: VertexSet = u.vertices().filter(|&v| v < 8 && bits >> v & 1 == 1).collect();
        let right: VertexSet = u.vertices().filter(|&v| !left.contains(v) && bits >> (v % 16) & 2 == 2).collect();
        let existing = left.iter().map(|x| right.iter().filter(|&y| u.has_edge(x, y)).count()).sum::<usize>();
        let j = join_sets(&u, &left, &right).unwrap();
        prop_assert_eq!(j.edge_count(), u.edge_count() + left.len() * right.len() - existing);
    }

    #[test]
    fn duplicates_copy_original_neighborhoods((g, s) in arb_graph(1, 6).prop_flat_map(|g| { let n = g.n(); (Just(g), subset_of(n)) }), times in 0usize..3) {
        let (d, rounds) = duplicate_set(&g, &s, times).unwrap();
        prop_assert_eq!(d.n(), g.n() + times * s.len());
        for u in g.vertices() { for v in g.vertices() { prop_assert_eq!(d.has_edge(u, v), g.has_edge(u, v)); } }
        for (r, copy) in rounds.iter().enumerate() {
            for (i, orig) in s.iter().enumerate() {
                for w in g.vertices() {
                    prop_assert_eq!(d.has_edge(copy[i], w), g.has_edge(orig, w));
                }
                for (j, other) in s.iter().enumerate() {
                    if i != j {
                        prop_assert_eq!(d.has_edge(copy[i], copy[j]), g.has_edge(orig, other));
                    }
                }
                for other in rounds.iter().skip(r + 1) {
                    for &c in other { prop_assert!(!d.has_edge(copy[i], c)); }
                }
            }
        }
    }

    #[test]
    fn substitute_adds_all_cross_edges(base in arb_graph(1, 4), f in arb_graph(1, 3)) {
        let parts = vec![f.clone(); base.n()];
        let (g, ranges) = substitute(&base, &parts).unwrap();
        for u in base.vertices() {
            for v in base.vertices() {
                for x in ranges[u].clone() {
                    for y in ranges[v].clone() {
                        let expect = if u == v { f.has_edge(x - ranges[u].start, y - ranges[u].start) } else { base.has_edge(u, v) };
                        prop_assert_eq!(g.has_edge(x, y), expect);
                    }
                }
            }
        }
        let (r, _) = replace_vertex(&base, 0, &f).unwrap();
        prop_assert_eq!(r.n(), base.n() - 1 + f.n());
        prop_assert_eq!(r.edge_count(), base.edge_count() - base.degree(0) + f.edge_count() + base.degree(0) * f.n());
    }

    #[test]
    fn isomorphism_matches_naive(a in arb_graph(0, 7), b in arb_graph(0, 7)) {
        let expect = naive_iso(&a, &b);
        let got = is_isomorphic(&a, &b);
        prop_assert_eq!(got.is_some(), expect);
        if let Some(m) = got { prop_assert!(m.is_valid(&a, &b)); }
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), expect);
    }

    #[test]
    fn relabeled_copies_are_isomorphic((g, perm) in arb_graph_with_perm(0, 8)) {
        let h = relabel(&g, &perm);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(naive_iso(&canonical_form(&g).to_graph(), &g));
    }

    #[test]
    fn isis_enumeration_matches_naive(g in arb_graph(0, 7), h in arb_pattern()) {
        let got: Vec<VertexSet> = enumerate_isis(&g, &h).collect();
        let expect = naive_isis(&g, &h);
        prop_assert_eq!(&got, &expect);
        prop_assert_eq!(find_isis(&g, &h).is_some(), !expect.is_empty());
    }

    #[test]
    fn decomposition_recomposes(h in arb_graph(0, 8)) {
        let d = decompose_assorted(&h);
        prop_assert_eq!(d.total_vertices(), h.n());
        prop_assert!(naive_iso(&d.recompose(), &h));
        for (i, p) in d.parts.iter().enumerate() {
            prop_assert!(naive_connected(&p.graph));
            for q in &d.parts[i + 1..] { prop_assert!(!naive_iso(&p.graph, &q.graph)); }
        }
    }

    #[test]
    fn holes_match_naive(g in arb_graph(0, 8)) {
        let r = find_holes(&g, Parity::Any, false).unwrap();
        prop_assert_eq!((r.odd, r.even), naive_holes(&g));
        prop_assert!(r.holes.iter().all(|c| is_chordless_cycle(&g, c)));
        prop_assert_eq!(is_perfect(&g).unwrap(), naive_perfect(&g));
    }

    #[test]
    fn adjacency_matches_naive((g, s, t) in arb_graph(1, 8).prop_flat_map(|g| { let n = g.n(); (Just(g), subset_of(n), subset_of(n)) }), k in 1usize..4) {
        prop_assume!(s.len() == t.len());
        for slide in [false, true] {
            let rule = if slide { Rule::slide(k) } else { Rule::jump(k) }.unwrap();
            prop_assert_eq!(adjacent(&g, &s, &t, rule).unwrap(), naive_adjacent(&g, &s, &t, slide, k));
        }
    }

    #[test]
    fn verdicts_survive_relabeling((g, perm) in arb_graph_with_perm(2, 7), h in arb_graph(1, 3), k in 1usize..3, pick in any::<(usize, usize)>()) {
        let copies = naive_isis(&g, &h);
        prop_assume!(!copies.is_empty());
        let s = copies[pick.0 % copies.len()].clone();
        let t = copies[pick.1 % copies.len()].clone();
        for rule in [Rule::jump(k).unwrap(), Rule::slide(k).unwrap()] {
            let inst = ReconfigInstance { host: g.clone(), pattern: h.clone(), source: s.clone(), target: t.clone(), rule };
            let sol = solve_bfs(&inst).unwrap();
            let moved = ReconfigInstance {
                host: relabel(&g, &perm),
                source: s.iter().map(|v| perm[v]).collect(),
                target: t.iter().map(|v| perm[v]).collect(),
                ..inst.clone()
            };
            prop_assert_eq!(solve_bfs(&moved).unwrap().is_yes(), sol.is_yes());
            let expect = naive_distance(&g, &h, &s, &t, rule);
            prop_assert_eq!(sol.sequence.as_ref().map(|q| q.len()), expect);
            if let Some(seq) = &sol.sequence { prop_assert!(verify_sequence(&inst, seq).is_valid()); }
        }
    }

    #[test]
    fn edge_test_matches_superset_search(g in arb_graph(1, 7), h in arb_graph(1, 4), pick in any::<(u32, u32)>(), mu in 1usize..3) {
        prop_assume!(mu <= h.n() && mu <= g.n());
        let all = subsets(g.n(), mu);
        let a = VertexSet::new(all[pick.0 as usize % all.len()].clone());
        let b = VertexSet::new(all[pick.1 as usize % all.len()].clone());
        let c = a.union(&b);
        let expect = naive_isis(&g, &h).into_iter().any(|s| c.is_subset(&s));
        let got = edge_test(&g, &h, &a, &b, &BacktrackOracle).unwrap();
        prop_assert_eq!(got.is_some(), expect);
        if let Some(w) = got {
            prop_assert!(c.is_subset(&w));
            prop_assert!(naive_iso(&induced(&g, w.as_slice()), &h));
        }
    }

    #[test]
    fn xp_verdict_ignores_subset_choice(g in arb_graph(2, 6), h in arb_graph(2, 3), pick in any::<(usize, usize)>()) {
        let copies = naive_isis(&g, &h);
        prop_assume!(!copies.is_empty());
        let s = copies[pick.0 % copies.len()].clone();
        let t = copies[pick.1 % copies.len()].clone();
        let cg = build_compressed(&g, &h, 1, &BacktrackOracle).unwrap();
        let inst = ReconfigInstance { host: g.clone(), pattern: h.clone(), source: s.clone(), target: t.clone(), rule: Rule::jump(h.n() - 1).unwrap() };
        let expect = solve_bfs(&inst).unwrap().is_yes();
        prop_assert_eq!(solve_xp(&inst, &BacktrackOracle).unwrap().is_yes(), expect);
        for x in s.iter() {
            for y in t.iter() {
                let seq = cg.reconfigure_via(&s, &t, &VertexSet::new([x]), &VertexSet::new([y])).unwrap();
                prop_assert_eq!(seq.is_some(), expect);
                if let Some(seq) = seq { prop_assert!(verify_sequence(&inst, &seq).is_valid()); }
            }
        }
    }

    #[test]
    fn xp_matches_bfs_on_wider_patterns(g in arb_graph(2, 8), h in arb_graph(2, 4), mu in 1usize..3, pick in any::<(usize, usize)>()) {
        prop_assume!(mu < h.n());
        let copies = naive_isis(&g, &h);
        prop_assume!(!copies.is_empty());
        let inst = ReconfigInstance {
            host: g.clone(),
            pattern: h.clone(),
            source: copies[pick.0 % copies.len()].clone(),
            target: copies[pick.1 % copies.len()].clone(),
            rule: Rule::jump(h.n() - mu).unwrap(),
        };
        let xp = solve_xp(&inst, &BacktrackOracle).unwrap();
        prop_assert_eq!(xp.is_yes(), naive_distance(&g, &h, &inst.source, &inst.target, inst.rule).is_some());
        if let Some(seq) = &xp.sequence { prop_assert!(verify_sequence(&inst, seq).is_valid()); }
        let cg = build_compressed(&g, &h, mu, &BacktrackOracle).unwrap();
        prop_assert_eq!(cg.node_count(), binomial(g.n(), mu));
        for (a, b, w) in cg.edges() {
            prop_assert!(cg.nodes()[*a].union(&cg.nodes()[*b]).is_subset(w));
            prop_assert!(naive_iso(&induced(&g, w.as_slice()), &h));
        }
    }

    #[test]
    fn kts_steps_become_single_slides(g in arb_graph(1, 8), pick in any::<(usize, usize)>(), size in 1usize..4) {
        prop_assume!(is_even_hole_free(&g).unwrap());
        let empty = Graph::empty(size);
        let sets = naive_isis(&g, &empty);
        prop_assume!(!sets.is_empty());
        let i = &sets[pick.0 % sets.len()];
        let j = &sets[pick.1 % sets.len()];
        prop_assume!(naive_adjacent(&g, i, j, true, size));
        let ts = kts_step_to_ts(&g, i, j).unwrap();
        prop_assert_eq!(ts.len(), i.difference(j).len());
        let inst = ReconfigInstance { host: g.clone(), pattern: empty, source: i.clone(), target: j.clone(), rule: Rule::slide(1).unwrap() };
        prop_assert!(verify_sequence(&inst, &ts).is_valid());
        prop_assert!(ts.steps().iter().all(|s| naive_independent(&g, s.as_slice())));
    }

    #[test]
    fn word_reachability_matches_naive(q in 1usize..4, n in 1usize..4, rel in any::<u16>(), picks in any::<(u32, u32)>()) {
        let allowed = |a: usize, b: usize| rel >> (a * 3 + b) & 1 == 1;
        let words: Vec<Vec<usize>> = (0..q.pow(n as u32)).map(|mut x| (0..n).map(|_| { let c = x % q; x /= q; c }).collect())
            .filter(|w: &Vec<usize>| w.windows(2).all(|p| allowed(p[0], p[1]))).collect();
        prop_assume!(!words.is_empty());
        let s = words[picks.0 as usize % words.len()].clone();
        let t = words[picks.1 as usize % words.len()].clone();
        let relation: Vec<(usize, usize)> = (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).filter(|&(a, b)| allowed(a, b)).collect();
        let w = WordInstance::new((0..q).map(|i| format!("s{i}")).collect(), relation, s.clone(), t.clone()).unwrap();
        prop_assert_eq!(word_reachability(&w).unwrap(), naive_word_reach(q, &allowed, &s, &t));
        prop_assert_eq!(io::parse_word_instance(&io::write_word_instance(&w)).unwrap(), w);
    }

    #[test]
    fn biclique_matches_naive(a in 1usize..4, nb in 0usize..4, mask in any::<u16>(), b in 0usize..4) {
        let mut edges = Vec::new();
        for i in 0..a { for j in 0..nb { if mask >> (i * 4 + j) & 1 == 1 { edges.push((i, a + j)); } } }
        let g = Graph::new(a + nb, edges).unwrap();
        let left: Vec<usize> = (0..a).collect();
        let right: Vec<usize> = (a..a + nb).collect();
        let sides = Bipartition { left: VertexSet::new(left.clone()), right: VertexSet::new(right.clone()) };
        let got = max_balanced_biclique_at_least(&g, &sides, b).unwrap();
        prop_assert_eq!(got.is_some(), naive_biclique(&g, &left, &right, b));
        if let Some((l, r)) = got {
            prop_assert_eq!((l.len(), r.len()), (b, b));
            prop_assert!(l.iter().all(|x| r.iter().all(|y| g.has_edge(x, y))));
        }
    }

    #[test]
    fn files_round_trip(g in arb_graph(0, 8), h in arb_graph(0, 3), pick in any::<(usize, usize)>()) {
        prop_assert_eq!(io::parse_graph(&io::write_graph(&g)).unwrap(), g.clone());
        let copies = naive_isis(&g, &h);
        prop_assume!(!copies.is_empty());
        let inst = ReconfigInstance {
            host: g.clone(),
            pattern: h,
            source: copies[pick.0 % copies.len()].clone(),
            target: copies[pick.1 % copies.len()].clone(),
            rule: Rule::slide(1 + pick.0 % 3).unwrap(),
        };
        prop_assert_eq!(io::parse_instance(&io::write_instance(&inst)).unwrap(), inst.clone());
        if let Some(seq) = solve_bfs(&inst).unwrap().sequence {
            let back = io::parse_sequence(&io::write_sequence(&seq)).unwrap();
            prop_assert!(verify_sequence(&inst, &back).is_valid());
        }
    }
}

/// Shortest sequence length by BFS over the naive copy list and the naive
/// adjacency test.
fn naive_distance(g: &Graph, h: &Graph, s: &VertexSet, t: &VertexSet, rule: Rule) -> Option<usize> {
    let nodes = naive_isis(g, h);
    let slide = rule.kind() == isor::RuleKind::Slide;
    let start = nodes.iter().position(|x| x == s)?;
    let mut dist = vec![usize::MAX; nodes.len()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if &nodes[x] == t {
            return Some(dist[x]);
        }
        for y in 0..nodes.len() {
            if dist[y] == usize::MAX && naive_adjacent(g, &nodes[x], &nodes[y], slide, rule.k()) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    None
}

#[test]
fn reconfiguration_graph_examples() {
    let c4 = Graph::cycle(4);
    let e2 = Graph::empty(2);
    let rg = build_reconfig_graph(&c4, &e2, Rule::jump(1).unwrap()).unwrap();
    assert_eq!((rg.node_count(), rg.edge_count()), (2, 0));
    let rg = build_reconfig_graph(&c4, &e2, Rule::jump(2).unwrap()).unwrap();
    assert_eq!((rg.node_count(), rg.edge_count()), (2, 1));
    let rg = build_reconfig_graph(&Graph::path(4), &e2, Rule::jump(1).unwrap()).unwrap();
    assert_eq!(rg.nodes(), &naive_isis(&Graph::path(4), &e2)[..]);
    assert_eq!(rg.edge_count(), 2);
}

#[test]
fn figure_one_stand_in() {
    // C4 with tokens on one diagonal: stuck under single moves, free under
    // two simultaneous moves.
    let inst = |rule| ReconfigInstance {
        host: Graph::cycle(4),
        pattern: Graph::empty(2),
        source: VertexSet::new([0, 2]),
        target: VertexSet::new([1, 3]),
        rule,
    };
    for (rule, yes) in [
        (Rule::jump(1).unwrap(), false),
        (Rule::slide(1).unwrap(), false),
        (Rule::jump(2).unwrap(), true),
        (Rule::slide(2).unwrap(), true),
    ] {
        assert_eq!(solve_bfs(&inst(rule)).unwrap().is_yes(), yes, "{rule}");
    }
}
