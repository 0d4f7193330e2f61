//! Text formats. Vertices are 1-indexed in files and 0-indexed in memory.
//!
//! Graph:
//! ```text
//! p graph <n> <m>
//! e <u> <v>            (m lines)
//! c v <vertex> <label> (optional provenance, one per vertex)
//! c anything else      (ignored)
//! ```
//! Instance: a graph, then the pattern as graph lines prefixed with `h `,
//! then `ss <vertices>`, `tt <vertices>` and `r <tj|ts> <k>`.
//!
//! Sequence: `s reconfig <steps> <set-size>`, then one line per step.
//!
//! Word instance: `w <|Σ|> <n>`, a line of symbol names, one line per
//! allowed pair `<a> <b>`, then the source and target words as the final two
//! lines, symbols separated by spaces.
//!
//! Bipartite graph: a graph plus an optional `side a <vertices>` line naming
//! the left side; without it the 2-coloring from the smallest vertex of each
//! component is used.

use std::fmt::Write as _;

use crate::analysis::is_bipartite;
use crate::bruteforce::{Bipartition, WordInstance};
use crate::error::{Error, Result};
use crate::graph::{copies, disjoint_union, Graph, Vertex, VertexSet};
use crate::rules::{ReconfigInstance, ReconfigSequence, Rule, RuleKind};

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    match tok.map(str::parse::<usize>) {
        Some(Ok(x)) => Ok(x),
        Some(Err(_)) => perr(line, format!("{what} is not a nonnegative integer")),
        None => perr(line, format!("missing {what}")),
    }
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<Vertex> {
    match tok.parse::<usize>() {
        Ok(v) if v >= 1 && v <= n => Ok(v - 1),
        Ok(v) => perr(line, format!("vertex {v} outside 1..={n}")),
        Err(_) => perr(line, format!("{tok:?} is not a vertex number")),
    }
}

fn parse_vertex_list<'a>(
    toks: impl Iterator<Item = &'a str>,
    n: usize,
    line: usize,
) -> Result<VertexSet> {
    let items = toks
        .map(|t| parse_vertex(t, n, line))
        .collect::<Result<Vec<_>>>()?;
    let len = items.len();
    let set = VertexSet::new(items);
    if set.len() != len {
        return perr(line, "repeated vertex");
    }
    Ok(set)
}

/// Accumulates the lines of one graph.
#[derive(Default)]
struct GraphLines {
    header: Option<(usize, usize, usize)>,
    edges: Vec<(Vertex, Vertex)>,
    labels: Vec<(usize, Vertex, String)>,
    last_line: usize,
}

impl GraphLines {
    /// Returns false when the line is not a graph line.
    fn feed(&mut self, body: &str, line: usize) -> Result<bool> {
        self.last_line = line;
        let mut toks = body.split_whitespace();
        match toks.next() {
            Some("p") => {
                if self.header.is_some() {
                    return perr(line, "second `p` line");
                }
                if toks.next() != Some("graph") {
                    return perr(line, "expected `p graph <n> <m>`");
                }
                let n = parse_count(toks.next(), line, "vertex count")?;
                let m = parse_count(toks.next(), line, "edge count")?;
                if toks.next().is_some() {
                    return perr(line, "trailing tokens");
                }
                self.header = Some((n, m, line));
            }
            Some("e") => {
                let Some((n, _, _)) = self.header else {
                    return perr(line, "edge before the `p graph` line");
                };
                let u = parse_vertex(toks.next().unwrap_or(""), n, line)?;
                let v = parse_vertex(toks.next().unwrap_or(""), n, line)?;
                if toks.next().is_some() {
                    return perr(line, "trailing tokens");
                }
                if u == v {
                    return perr(line, format!("self-loop on vertex {}", u + 1));
                }
                self.edges.push((u, v));
            }
            Some("c") => {
                if toks.next() == Some("v") {
                    if let Some(Ok(v)) = toks.next().map(str::parse::<usize>) {
                        let rest = body
                            .trim_start()
                            .splitn(4, char::is_whitespace)
                            .nth(3)
                            .unwrap_or("")
                            .trim();
                        self.labels.push((line, v, rest.to_string()));
                    }
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self, what: &str) -> Result<Graph> {
        let Some((n, m, hline)) = self.header else {
            return perr(self.last_line, format!("{what}: missing `p graph` line"));
        };
        if self.edges.len() != m {
            return perr(
                hline,
                format!(
                    "{what}: header declares {m} edges, found {}",
                    self.edges.len()
                ),
            );
        }
        let g = Graph::new(n, self.edges).map_err(|e| Error::Parse {
            line: hline,
            msg: e.to_string(),
        })?;
        if g.edge_count() != m {
            return perr(hline, format!("{what}: duplicate edge"));
        }
        if self.labels.is_empty() {
            return Ok(g);
        }
        let mut labels: Vec<Option<String>> = vec![None; n];
        for (line, v, l) in self.labels {
            if v < 1 || v > n {
                return perr(line, format!("label for vertex {v} outside 1..={n}"));
            }
            if labels[v - 1].replace(l).is_some() {
                return perr(line, format!("second label for vertex {v}"));
            }
        }
        let labels: Option<Vec<String>> = labels.into_iter().collect();
        match labels {
            Some(l) => g.with_labels(l),
            None => perr(hline, format!("{what}: labels must cover every vertex")),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut g = GraphLines::default();
    for (line, body) in content_lines(text) {
        if !g.feed(body, line)? {
            return perr(line, format!("unexpected line {body:?}"));
        }
    }
    g.finish("graph")
}

fn push_graph(out: &mut String, prefix: &str, g: &Graph) {
    let _ = writeln!(out, "{prefix}p graph {} {}", g.n(), g.edge_count());
    if let Some(labels) = g.labels() {
        for (v, l) in labels.iter().enumerate() {
            let _ = writeln!(
                out,
                "{prefix}c v {} {}",
                v + 1,
                l.replace(['\n', '\r'], " ")
            );
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{prefix}e {} {}", u + 1, v + 1);
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    push_graph(&mut out, "", g);
    out
}

fn write_set(s: &VertexSet) -> String {
    s.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Host and pattern from a file holding a graph plus `h `-prefixed lines.
/// The remaining lines go to `other`, which returns false for lines it does
/// not recognize.
fn parse_host_and_pattern(
    text: &str,
    mut other: impl FnMut(&str, usize, usize) -> Result<bool>,
) -> Result<(Graph, Graph)> {
    let mut host = GraphLines::default();
    let mut pattern = GraphLines::default();
    for (line, body) in content_lines(text) {
        if let Some(rest) = body.strip_prefix("h ") {
            if !pattern.feed(rest, line)? {
                return perr(line, format!("unexpected pattern line {rest:?}"));
            }
            continue;
        }
        if host.feed(body, line)? {
            continue;
        }
        let n = host.header.map_or(0, |h| h.0);
        if !other(body, line, n)? {
            return perr(line, format!("unexpected line {body:?}"));
        }
    }
    Ok((host.finish("host")?, pattern.finish("pattern")?))
}

pub fn parse_instance(text: &str) -> Result<ReconfigInstance> {
    let mut source = None;
    let mut target = None;
    let mut rule = None;
    let mut last = 0;
    let (host, pattern) = parse_host_and_pattern(text, |body, line, n| {
        last = line;
        let mut toks = body.split_whitespace();
        let key = toks.next();
        let slot = match key {
            Some("ss") => &mut source,
            Some("tt") => &mut target,
            Some("r") => {
                if rule.is_some() {
                    return perr(line, "second `r` line");
                }
                let kind: RuleKind =
                    toks.next()
                        .unwrap_or("")
                        .parse()
                        .map_err(|e: Error| Error::Parse {
                            line,
                            msg: e.to_string(),
                        })?;
                let k = parse_count(toks.next(), line, "k")?;
                if toks.next().is_some() {
                    return perr(line, "trailing tokens");
                }
                rule = Some(Rule::new(kind, k).map_err(|e| Error::Parse {
                    line,
                    msg: e.to_string(),
                })?);
                return Ok(true);
            }
            _ => return Ok(false),
        };
        if slot.is_some() {
            return perr(line, format!("second `{}` line", key.unwrap()));
        }
        if n == 0 && toks.clone().next().is_some() {
            return perr(line, "vertex list before the host `p graph` line");
        }
        *slot = Some(parse_vertex_list(toks, n, line)?);
        Ok(true)
    })?;
    let (Some(source), Some(target), Some(rule)) = (source, target, rule) else {
        return perr(last, "instance needs `ss`, `tt` and `r` lines");
    };
    Ok(ReconfigInstance {
        host,
        pattern,
        source,
        target,
        rule,
    })
}

pub fn write_instance(inst: &ReconfigInstance) -> String {
    let mut out = String::new();
    push_graph(&mut out, "", &inst.host);
    push_graph(&mut out, "h ", &inst.pattern);
    let _ = writeln!(out, "ss {}", write_set(&inst.source));
    let _ = writeln!(out, "tt {}", write_set(&inst.target));
    let _ = writeln!(out, "r {}", inst.rule);
    out.lines()
        .map(|l| l.trim_end().to_string() + "\n")
        .collect()
}

/// Host and pattern from a graph file with `h `-prefixed pattern lines.
pub fn parse_graph_pair(text: &str) -> Result<(Graph, Graph)> {
    parse_host_and_pattern(text, |_, _, _| Ok(false))
}

pub fn write_graph_pair(g: &Graph, h: &Graph) -> String {
    let mut out = String::new();
    push_graph(&mut out, "", g);
    push_graph(&mut out, "h ", h);
    out
}

pub fn parse_sequence(text: &str) -> Result<ReconfigSequence> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('c'));
    let (hline, header) = loop {
        match lines.next() {
            Some((_, "")) => continue,
            Some(x) => break x,
            None => return perr(1, "missing `s reconfig` header"),
        }
    };
    let mut toks = header.split_whitespace();
    if toks.next() != Some("s") || toks.next() != Some("reconfig") {
        return perr(hline, "expected `s reconfig <steps> <set-size>`");
    }
    let count = parse_count(toks.next(), hline, "step count")?;
    let size = parse_count(toks.next(), hline, "set size")?;
    if count == 0 {
        return perr(hline, "a sequence has at least one set");
    }
    let mut steps = Vec::with_capacity(count);
    for (line, body) in lines {
        if size > 0 && body.is_empty() {
            continue;
        }
        if steps.len() == count {
            if body.is_empty() {
                continue;
            }
            return perr(line, format!("more than {count} steps"));
        }
        let set = parse_vertex_list(body.split_whitespace(), usize::MAX - 1, line)?;
        if set.len() != size {
            return perr(
                line,
                format!("set has {} vertices, header says {size}", set.len()),
            );
        }
        steps.push(set);
    }
    if size == 0 {
        steps.resize(count, VertexSet::empty());
    }
    if steps.len() != count {
        return perr(
            hline,
            format!("header says {count} steps, found {}", steps.len()),
        );
    }
    ReconfigSequence::new(steps)
}

pub fn write_sequence(seq: &ReconfigSequence) -> String {
    let mut out = format!("s reconfig {} {}\n", seq.steps().len(), seq.set_size());
    for s in seq.steps() {
        out.push_str(&write_set(s));
        out.push('\n');
    }
    out
}

pub fn parse_word_instance(text: &str) -> Result<WordInstance> {
    let lines: Vec<(usize, &str)> = content_lines(text)
        .filter(|(_, l)| !l.starts_with("c ") && *l != "c")
        .collect();
    if lines.len() < 4 {
        return perr(
            lines.last().map_or(1, |l| l.0),
            "word file needs header, symbols, and two words",
        );
    }
    let (hline, header) = lines[0];
    let mut toks = header.split_whitespace();
    if toks.next() != Some("w") {
        return perr(hline, "expected `w <symbols> <length>`");
    }
    let q = parse_count(toks.next(), hline, "symbol count")?;
    let n = parse_count(toks.next(), hline, "word length")?;
    let (sline, sbody) = lines[1];
    let symbols: Vec<String> = sbody.split_whitespace().map(str::to_string).collect();
    if symbols.len() != q {
        return perr(
            sline,
            format!("expected {q} symbols, found {}", symbols.len()),
        );
    }
    let lookup = |tok: &str, line: usize| -> Result<usize> {
        match symbols.iter().position(|s| s == tok) {
            Some(i) => Ok(i),
            None => perr(line, format!("unknown symbol {tok:?}")),
        }
    };
    let mut relation = Vec::new();
    for &(line, body) in &lines[2..lines.len() - 2] {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return perr(line, "relation lines hold two symbols");
        }
        relation.push((lookup(toks[0], line)?, lookup(toks[1], line)?));
    }
    let mut words = Vec::new();
    for &(line, body) in &lines[lines.len() - 2..] {
        let word = body
            .split_whitespace()
            .map(|t| lookup(t, line))
            .collect::<Result<Vec<_>>>()?;
        if word.len() != n {
            return perr(
                line,
                format!("word has {} symbols, header says {n}", word.len()),
            );
        }
        words.push(word);
    }
    let target = words.pop().unwrap();
    let source = words.pop().unwrap();
    WordInstance::new(symbols.clone(), relation, source, target).map_err(|e| Error::Parse {
        line: lines[lines.len() - 1].0,
        msg: e.to_string(),
    })
}

pub fn write_word_instance(w: &WordInstance) -> String {
    let sym = w.symbols();
    let word = |x: &[usize]| {
        x.iter()
            .map(|&i| sym[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!("w {} {}\n{}\n", sym.len(), w.len(), sym.join(" "));
    for (a, b) in w.relation() {
        let _ = writeln!(out, "{} {}", sym[a], sym[b]);
    }
    let _ = writeln!(out, "{}", word(w.source()));
    let _ = writeln!(out, "{}", word(w.target()));
    out
}

pub fn parse_bipartite(text: &str) -> Result<(Graph, Bipartition)> {
    let mut g = GraphLines::default();
    let mut side = None;
    for (line, body) in content_lines(text) {
        if g.feed(body, line)? {
            continue;
        }
        let mut toks = body.split_whitespace();
        if toks.next() == Some("side") && toks.next() == Some("a") {
            let n = g.header.map_or(0, |h| h.0);
            side = Some((line, parse_vertex_list(toks, n, line)?));
            continue;
        }
        return perr(line, format!("unexpected line {body:?}"));
    }
    let g = g.finish("graph")?;
    let side_line = side.as_ref().map_or(1, |s| s.0);
    let left = match side {
        Some((_, left)) => left,
        None => match is_bipartite(&g) {
            Some(colors) => g.vertices().filter(|&v| colors[v] == 0).collect(),
            None => return perr(1, "graph is not bipartite"),
        },
    };
    let right = g.all_vertices().difference(&left);
    let sides = Bipartition { left, right };
    sides.check(&g).map_err(|e| Error::Parse {
        line: side_line,
        msg: e.to_string(),
    })?;
    Ok((g, sides))
}

pub fn write_bipartite(g: &Graph, sides: &Bipartition) -> String {
    let mut out = write_graph(g);
    let _ = writeln!(out, "side a {}", write_set(&sides.left));
    out
}

/// Small named graphs: `K<n>`, `P<n>`, `C<n>`, `E<n>` (edgeless), `K<a>,<b>`,
/// a leading multiplicity as in `3K1`, and sums such as `K1+K2`.
pub fn named_graph(name: &str) -> Result<Graph> {
    let bad = || Error::InvalidInput(format!("unknown graph name {name:?}"));
    let mut parts = Vec::new();
    for term in name.split('+') {
        let term = term.trim();
        let digits = term.chars().take_while(char::is_ascii_digit).count();
        let times: usize = if digits == 0 {
            1
        } else {
            term[..digits].parse().map_err(|_| bad())?
        };
        let body = &term[digits..];
        let mut chars = body.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let base = if kind == 'K' && rest.contains(',') {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            Graph::complete_bipartite(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
        } else {
            let n: usize = rest.parse().map_err(|_| bad())?;
            match kind {
                'K' => Graph::complete(n),
                'P' => Graph::path(n),
                'E' => Graph::empty(n),
                'C' if n >= 3 => Graph::cycle(n),
                _ => return Err(bad()),
            }
        };
        parts.push(copies(&base, times));
    }
    Ok(disjoint_union(&parts).0.without_labels())
}
