//! k-token jumping / k-token sliding adjacency, sequence checking and the
//! conversion of k-TS sequences into single-slide sequences on
//! even-hole-free graphs.

use std::fmt;
use std::str::FromStr;

use crate::analysis::is_even_hole_free;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::iso::is_isis_set;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Jump,
    Slide,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::Jump => "tj",
            RuleKind::Slide => "ts",
        })
    }
}

impl FromStr for RuleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tj" | "jump" => Ok(RuleKind::Jump),
            "ts" | "slide" => Ok(RuleKind::Slide),
            other => invalid(format!("unknown rule kind {other:?}")),
        }
    }
}

/// A reconfiguration rule: move at most `k` tokens per step, anywhere
/// (jump) or each along an edge (slide).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    kind: RuleKind,
    k: usize,
}

impl Rule {
    pub fn new(kind: RuleKind, k: usize) -> Result<Rule> {
        if k == 0 {
            return invalid("move budget k must be at least 1");
        }
        Ok(Rule { kind, k })
    }

    pub fn jump(k: usize) -> Result<Rule> {
        Rule::new(RuleKind::Jump, k)
    }

    pub fn slide(k: usize) -> Result<Rule> {
        Rule::new(RuleKind::Slide, k)
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.k)
    }
}

/// Host, pattern, endpoints and rule. Independent set reconfiguration is
/// the case of an edgeless pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigInstance {
    pub host: Graph,
    pub pattern: Graph,
    pub source: VertexSet,
    pub target: VertexSet,
    pub rule: Rule,
}

impl ReconfigInstance {
    /// Errors unless both endpoints are in range and induce the pattern.
    pub fn check_endpoints(&self) -> Result<()> {
        for (name, s) in [("source", &self.source), ("target", &self.target)] {
            s.check_in(&self.host)?;
            if !is_isis_set(&self.host, &self.pattern, s) {
                return invalid(format!(
                    "{name} set {{{s}}} does not induce the pattern graph"
                ));
            }
        }
        Ok(())
    }
}

/// An ordered, nonempty list of equal-size vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigSequence {
    steps: Vec<VertexSet>,
}

impl ReconfigSequence {
    pub fn new(steps: Vec<VertexSet>) -> Result<Self> {
        let Some(first) = steps.first() else {
            return invalid("a reconfiguration sequence needs at least one set");
        };
        if let Some(i) = steps.iter().position(|s| s.len() != first.len()) {
            return invalid(format!(
                "set {i} has size {} but set 0 has size {}",
                steps[i].len(),
                first.len()
            ));
        }
        Ok(ReconfigSequence { steps })
    }

    pub fn single(s: VertexSet) -> Self {
        ReconfigSequence { steps: vec![s] }
    }

    pub fn steps(&self) -> &[VertexSet] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<VertexSet> {
        self.steps
    }

    /// Number of moves, i.e. sets minus one.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn set_size(&self) -> usize {
        self.steps[0].len()
    }

    pub fn first(&self) -> &VertexSet {
        &self.steps[0]
    }

    pub fn last(&self) -> &VertexSet {
        self.steps.last().unwrap()
    }
}

/// Whether `t` is reachable from `s` in one step under `rule`.
///
/// Sliding is read as simultaneous: the tokens leaving `s \ t` must be
/// matched one-to-one onto `t \ s` along edges, so a token may enter a
/// vertex that another token vacates in the same step.
pub fn adjacent(g: &Graph, s: &VertexSet, t: &VertexSet, rule: Rule) -> Result<bool> {
    if s.len() != t.len() {
        return invalid(format!(
            "cannot compare sets of sizes {} and {}",
            s.len(),
            t.len()
        ));
    }
    s.check_in(g)?;
    t.check_in(g)?;
    Ok(adjacent_unchecked(g, s, t, rule))
}

pub(crate) fn adjacent_unchecked(g: &Graph, s: &VertexSet, t: &VertexSet, rule: Rule) -> bool {
    let moved = s.len() - s.intersection_count(t);
    if moved > rule.k {
        return false;
    }
    match rule.kind {
        RuleKind::Jump => true,
        RuleKind::Slide => {
            moved == 0 || {
                let from = s.difference(t);
                let to = t.difference(s);
                perfect_slide_matching(g, from.as_slice(), to.as_slice()).is_some()
            }
        }
    }
}

/// Kuhn's augmenting-path matching between `from` and `to` over edges of
/// `g`. Returns `matched[i]` = index in `to` for `from[i]` when the
/// matching is perfect.
pub(crate) fn perfect_slide_matching(
    g: &Graph,
    from: &[Vertex],
    to: &[Vertex],
) -> Option<Vec<usize>> {
    if from.len() != to.len() {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; to.len()];
    for i in 0..from.len() {
        let mut seen = vec![false; to.len()];
        if !augment(g, from, to, i, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut matched = vec![0; from.len()];
    for (j, o) in owner.iter().enumerate() {
        matched[o.expect("perfect matching")] = j;
    }
    Some(matched)
}

fn augment(
    g: &Graph,
    from: &[Vertex],
    to: &[Vertex],
    i: usize,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for j in 0..to.len() {
        if seen[j] || !g.has_edge(from[i], to[j]) {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|o| augment(g, from, to, o, seen, owner)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    WrongSource,
    WrongTarget,
    NotPatternCopy,
    NotAdjacent,
    SizeMismatch,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::WrongSource => "first set differs from the source",
            FailureReason::WrongTarget => "last set differs from the target",
            FailureReason::NotPatternCopy => "set does not induce the pattern graph",
            FailureReason::NotAdjacent => "set is not reachable from its predecessor in one step",
            FailureReason::SizeMismatch => "set has the wrong size or an out-of-range vertex",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid { index: usize, reason: FailureReason },
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Checks endpoints, that every set induces the pattern and that
/// consecutive sets obey the rule. Reports the first offending index.
pub fn verify_sequence(inst: &ReconfigInstance, seq: &ReconfigSequence) -> Verification {
    let fail = |index, reason| Verification::Invalid { index, reason };
    if seq.first() != &inst.source {
        return fail(0, FailureReason::WrongSource);
    }
    for (i, s) in seq.steps().iter().enumerate() {
        if s.len() != inst.pattern.n() || s.check_in(&inst.host).is_err() {
            return fail(i, FailureReason::SizeMismatch);
        }
        if !is_isis_set(&inst.host, &inst.pattern, s) {
            return fail(i, FailureReason::NotPatternCopy);
        }
        if i > 0 && !adjacent_unchecked(&inst.host, &seq.steps()[i - 1], s, inst.rule) {
            return fail(i, FailureReason::NotAdjacent);
        }
    }
    if seq.last() != &inst.target {
        return fail(seq.len(), FailureReason::WrongTarget);
    }
    Verification::Valid
}

fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    let v = s.as_slice();
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| !g.has_edge(v[i], v[j])))
}

/// Expands one k-TS step between independent sets into single slides:
/// repeatedly take the smallest `v` in `J \ I` with exactly one neighbor
/// `u` in `I \ J` and slide `u` to `v`. Such a `v` always exists on an
/// even-hole-free host; its absence is reported as a precondition error.
pub fn kts_step_to_ts(g: &Graph, i: &VertexSet, j: &VertexSet) -> Result<ReconfigSequence> {
    if i.len() != j.len() {
        return invalid("independent sets must have equal size");
    }
    i.check_in(g)?;
    j.check_in(g)?;
    if !is_independent(g, i) || !is_independent(g, j) {
        return invalid("both sets must be independent");
    }
    let mut current = i.clone();
    let mut steps = vec![current.clone()];
    loop {
        let leaving = current.difference(j);
        if leaving.is_empty() {
            break;
        }
        let entering = j.difference(&current);
        let pick = entering.iter().find_map(|v| {
            let mut ns = leaving.iter().filter(|&u| g.has_edge(u, v));
            match (ns.next(), ns.next()) {
                (Some(u), None) => Some((u, v)),
                _ => None,
            }
        });
        let Some((u, v)) = pick else {
            return Err(Error::Precondition(format!(
                "no vertex of {{{entering}}} has exactly one neighbor in {{{leaving}}}; \
                 the host has an even hole or the sets are not k-TS adjacent"
            )));
        };
        current = current
            .iter()
            .filter(|&x| x != u)
            .chain(std::iter::once(v))
            .collect();
        steps.push(current.clone());
    }
    ReconfigSequence::new(steps)
}

/// Converts a k-TS sequence of independent sets on an even-hole-free host
/// into a TS sequence with the same endpoints.
pub fn kts_sequence_to_ts(g: &Graph, seq: &ReconfigSequence) -> Result<ReconfigSequence> {
    if !is_even_hole_free(g)? {
        return Err(Error::Precondition(
            "host graph contains an even hole".to_string(),
        ));
    }
    let mut out = vec![seq.first().clone()];
    for pair in seq.steps().windows(2) {
        let expanded = kts_step_to_ts(g, &pair[0], &pair[1])?;
        out.extend(expanded.into_steps().into_iter().skip(1));
    }
    ReconfigSequence::new(out)
}
