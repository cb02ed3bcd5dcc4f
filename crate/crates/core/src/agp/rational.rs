//! Membership of a word in a rational subset given by a finite automaton.

use serde::{Deserialize, Serialize};

use super::{is_free_reducible, solve_agp, AgpInstance, AgpStats};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};
use crate::groups::GroupSpec;
use crate::par::Exec;
use crate::word::Word;

/// A finite automaton over the group alphabet; transitions carry words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonJson", into = "AutomatonJson")]
pub struct Automaton {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub initial: usize,
    pub accepting: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, Word)>,
    pub alpha: usize,
    pub accepting: Vec<usize>,
}

impl TryFrom<AutomatonJson> for Automaton {
    type Error = Error;

    fn try_from(j: AutomatonJson) -> Result<Self> {
        let a = Automaton {
            vertex_count: j.n,
            edges: j
                .edges
                .into_iter()
                .map(|(u, v, label)| Edge::new(u, v, label))
                .collect(),
            initial: j.alpha,
            accepting: j.accepting,
        };
        a.validate()?;
        Ok(a)
    }
}

impl From<Automaton> for AutomatonJson {
    fn from(a: Automaton) -> Self {
        AutomatonJson {
            n: a.vertex_count,
            edges: a.edges.into_iter().map(|e| (e.from, e.to, e.label)).collect(),
            alpha: a.initial,
            accepting: a.accepting,
        }
    }
}

impl Automaton {
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count;
        let ok = n > 0
            && self.initial < n
            && self.accepting.iter().all(|&v| v < n)
            && self.edges.iter().all(|e| e.from < n && e.to < n);
        if ok {
            Ok(())
        } else {
            Err(Error::Malformed("automaton index out of range".into()))
        }
    }

    /// Whether `path` is an accepted run whose label equals `w` in `spec`.
    pub fn accepts_with_value(&self, path: &[usize], w: &Word, spec: &GroupSpec) -> bool {
        let g = LabeledGraph {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
            alpha: self.initial,
            omega: self.initial,
        };
        let Some(end) = walk_end(&g, path, self.initial) else {
            return false;
        };
        self.accepting.contains(&end)
            && spec.check_word(w).is_ok()
            && g.edges.iter().all(|e| spec.check_word(&e.label).is_ok())
            && spec.eval(&g.path_label(path)) == spec.eval(w)
    }
}

fn walk_end(g: &LabeledGraph, path: &[usize], start: usize) -> Option<usize> {
    let mut at = start;
    for &e in path {
        let edge = g.edges.get(e)?;
        if edge.from != at {
            return None;
        }
        at = edge.to;
    }
    Some(at)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOutcome {
    pub answer: bool,
    /// Accepted run (automaton edge positions) whose label equals the word.
    pub path: Option<Vec<usize>>,
    pub stats: AgpStats,
}

fn supported(spec: &GroupSpec) -> bool {
    let factor_ok = |g: &GroupSpec| is_free_reducible(g) || g.is_finite();
    match spec {
        GroupSpec::FreeProduct(l, r) => factor_ok(l) && factor_ok(r),
        GroupSpec::Amalgam(a) => factor_ok(a.left()) && factor_ok(a.right()),
        s => factor_ok(s),
    }
}

/// All accepting states get an ε-edge to a fresh sink; the word is then the
/// target of a graph word problem from the initial state to the sink.
pub fn rational_membership(
    automaton: &Automaton,
    w: &Word,
    spec: &GroupSpec,
    exec: Exec,
) -> Result<RationalOutcome> {
    automaton.validate()?;
    if !supported(spec) {
        return Err(Error::Unsupported(
            "rational membership needs free, ℤ or finite factors".into(),
        ));
    }
    let m = automaton.edges.len();
    let mut graph = LabeledGraph {
        vertex_count: automaton.vertex_count,
        edges: automaton.edges.clone(),
        alpha: automaton.initial,
        omega: 0,
    };
    let sink = graph.add_vertex();
    graph.omega = sink;
    let mut accepting = automaton.accepting.clone();
    accepting.sort_unstable();
    accepting.dedup();
    for &a in &accepting {
        graph.add_edge(a, sink, Word::empty());
    }
    let out = solve_agp(&AgpInstance::new(graph, spec.clone(), w.clone()), exec)?;
    Ok(RationalOutcome {
        answer: out.answer,
        path: out.certificate.map(|c| {
            let mut edges = c.edges;
            let last = edges.pop();
            debug_assert!(last.is_some_and(|e| e >= m));
            edges
        }),
        stats: out.stats,
    })
}
