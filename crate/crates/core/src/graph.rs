//! Directed graphs with word labels and two marked vertices.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use petgraph::graph::NodeIndex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// The empty word stands for an ε-edge.
    pub label: Word,
}

impl Edge {
    pub fn new(from: usize, to: usize, label: Word) -> Self {
        Edge { from, to, label }
    }
}

/// Vertices are `0..vertex_count`. Parallel edges are kept, and paths refer to
/// edges by their position in `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct LabeledGraph {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub alpha: usize,
    pub omega: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, Word)>,
    pub alpha: usize,
    pub omega: usize,
}

impl TryFrom<GraphJson> for LabeledGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let g = LabeledGraph {
            vertex_count: j.n,
            edges: j
                .edges
                .into_iter()
                .map(|(u, v, label)| Edge::new(u, v, label))
                .collect(),
            alpha: j.alpha,
            omega: j.omega,
        };
        g.validate()?;
        Ok(g)
    }
}

impl From<LabeledGraph> for GraphJson {
    fn from(g: LabeledGraph) -> Self {
        GraphJson {
            n: g.vertex_count,
            edges: g.edges.into_iter().map(|e| (e.from, e.to, e.label)).collect(),
            alpha: g.alpha,
            omega: g.omega,
        }
    }
}

/// A graph obtained by splitting edge labels, with the trace back to the
/// original edges.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: LabeledGraph,
    /// For each new edge: (original edge, segment index along it).
    pub origin: Vec<(usize, usize)>,
}

impl Subdivision {
    /// Maps a path of the subdivided graph to the original edges it runs along.
    pub fn lift(&self, path: &[usize]) -> Vec<usize> {
        path.iter()
            .filter(|&&e| self.origin[e].1 == 0)
            .map(|&e| self.origin[e].0)
            .collect()
    }
}

impl LabeledGraph {
    pub fn new(vertex_count: usize, alpha: usize, omega: usize) -> Self {
        LabeledGraph {
            vertex_count,
            edges: Vec::new(),
            alpha,
            omega,
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: Word) -> usize {
        self.edges.push(Edge::new(from, to, label));
        self.edges.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count;
        if n == 0 {
            return Err(Error::Malformed("graph has no vertices".into()));
        }
        if self.alpha >= n || self.omega >= n {
            return Err(Error::Malformed("alpha/omega out of range".into()));
        }
        if let Some(e) = self.edges.iter().find(|e| e.from >= n || e.to >= n) {
            return Err(Error::Malformed(format!(
                "edge {} -> {} out of range",
                e.from, e.to
            )));
        }
        Ok(())
    }

    /// Edges + vertices + total label length.
    pub fn size(&self) -> usize {
        self.edges.len() + self.vertex_count + self.total_label_length()
    }

    pub fn total_label_length(&self) -> usize {
        self.edges.iter().map(|e| e.label.len()).sum()
    }

    /// Edge ids leaving each vertex.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.from].push(i);
        }
        out
    }

    /// Replaces every label by the pieces `split` returns, chaining them through
    /// fresh vertices. An empty piece list keeps the edge as an ε-edge.
    pub fn split_labels(&self, split: impl Fn(&Word) -> Vec<Word>) -> Subdivision {
        let mut graph = LabeledGraph::new(self.vertex_count, self.alpha, self.omega);
        let mut origin = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let pieces = split(&e.label);
            if pieces.len() <= 1 {
                graph.add_edge(e.from, e.to, pieces.into_iter().next().unwrap_or_default());
                origin.push((i, 0));
                continue;
            }
            let last = pieces.len() - 1;
            let mut at = e.from;
            for (k, piece) in pieces.into_iter().enumerate() {
                let next = if k == last { e.to } else { graph.add_vertex() };
                graph.add_edge(at, next, piece);
                origin.push((i, k));
                at = next;
            }
        }
        Subdivision { graph, origin }
    }

    /// Splits every label into single letters.
    pub fn subdivide_traced(&self) -> Subdivision {
        self.split_labels(|w| {
            w.letters()
                .iter()
                .map(|&l| Word(vec![l]))
                .collect()
        })
    }

    pub fn subdivide(&self) -> LabeledGraph {
        self.subdivide_traced().graph
    }

    /// Kahn's algorithm; ties broken by smallest vertex index.
    pub fn topological_sort(&self) -> Result<Vec<usize>> {
        let mut indegree = vec![0usize; self.vertex_count];
        for e in &self.edges {
            indegree[e.to] += 1;
        }
        let out = self.out_edges();
        let mut ready: BinaryHeap<Reverse<usize>> = (0..self.vertex_count)
            .filter(|&v| indegree[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.vertex_count);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &e in &out[v] {
                let t = self.edges[e].to;
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(Reverse(t));
                }
            }
        }
        if order.len() == self.vertex_count {
            Ok(order)
        } else {
            Err(Error::CycleDetected)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_sort().is_ok()
    }

    /// Edge order in which the first edge of any path precedes its last edge:
    /// a topological order of the line graph, obtained by sorting edges by
    /// the topological position of their endpoints.
    pub fn order_edges(&self) -> Result<Vec<usize>> {
        let order = self.topological_sort()?;
        let mut position = vec![0; self.vertex_count];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut edges: Vec<usize> = (0..self.edges.len()).collect();
        edges.sort_by_key(|&e| (position[self.edges[e].from], position[self.edges[e].to], e));
        Ok(edges)
    }

    /// Same vertices; keeps exactly the edges whose letters all lie in `letters`.
    pub fn restrict_subgraph(&self, letters: &HashSet<Letter>) -> LabeledGraph {
        LabeledGraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .filter(|e| e.label.letters().iter().all(|l| letters.contains(l)))
                .cloned()
                .collect(),
            alpha: self.alpha,
            omega: self.omega,
        }
    }

    /// Strongly connected components in topological order. Every edge leads
    /// from a stratum to the same or a later one.
    pub fn check_stratified(&self) -> Result<Vec<Vec<usize>>> {
        if let Some(e) = self
            .edges
            .iter()
            .find(|e| e.from >= self.vertex_count || e.to >= self.vertex_count)
        {
            return Err(Error::Malformed(format!(
                "edge {} -> {} out of range",
                e.from, e.to
            )));
        }
        let mut g = petgraph::graph::DiGraph::<(), ()>::with_capacity(
            self.vertex_count,
            self.edges.len(),
        );
        for _ in 0..self.vertex_count {
            g.add_node(());
        }
        for e in &self.edges {
            g.add_edge(NodeIndex::new(e.from), NodeIndex::new(e.to), ());
        }
        let mut strata: Vec<Vec<usize>> = petgraph::algo::tarjan_scc(&g)
            .into_iter()
            .rev()
            .map(|scc| {
                let mut vs: Vec<usize> = scc.into_iter().map(|n| n.index()).collect();
                vs.sort_unstable();
                vs
            })
            .collect();
        // Tarjan's output is a valid topological order of the condensation;
        // normalize ties so the result does not depend on edge order.
        stable_condensation_order(self, &mut strata);
        Ok(strata)
    }

    /// Vertices reachable from `start`.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let out = self.out_edges();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &e in &out[v] {
                let t = self.edges[e].to;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Vertices from which `target` is reachable.
    pub fn coreachable_to(&self, target: usize) -> Vec<bool> {
        let mut into = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            into[e.to].push(e.from);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![target];
        seen[target] = true;
        while let Some(v) = stack.pop() {
            for &s in &into[v] {
                if !seen[s] {
                    seen[s] = true;
                    stack.push(s);
                }
            }
        }
        seen
    }

    /// Weakly connected component id of each vertex.
    pub fn weak_components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..self.vertex_count).map(|v| find(&mut parent, v)).collect()
    }

    /// Whether `path` is a contiguous walk from `from` to `to`. The empty path
    /// is valid iff `from == to`.
    pub fn is_walk(&self, path: &[usize], from: usize, to: usize) -> bool {
        let mut at = from;
        for &e in path {
            match self.edges.get(e) {
                Some(edge) if edge.from == at => at = edge.to,
                _ => return false,
            }
        }
        at == to
    }

    /// Concatenated labels along a path of edge ids.
    pub fn path_label(&self, path: &[usize]) -> Word {
        let mut out = Word::empty();
        for &e in path {
            out.extend(&self.edges[e].label);
        }
        out
    }
}

fn stable_condensation_order(g: &LabeledGraph, strata: &mut Vec<Vec<usize>>) {
    let mut comp = vec![0; g.vertex_count];
    for (i, s) in strata.iter().enumerate() {
        for &v in s {
            comp[v] = i;
        }
    }
    let k = strata.len();
    let mut dag = LabeledGraph::new(k.max(1), 0, 0);
    dag.vertex_count = k;
    for e in &g.edges {
        if comp[e.from] != comp[e.to] {
            dag.add_edge(comp[e.from], comp[e.to], Word::empty());
        }
    }
    // Relabel components by their smallest vertex, then sort topologically.
    let mut by_min: Vec<usize> = (0..k).collect();
    by_min.sort_by_key(|&c| strata[c][0]);
    let mut rank = vec![0; k];
    for (r, &c) in by_min.iter().enumerate() {
        rank[c] = r;
    }
    for e in &mut dag.edges {
        e.from = rank[e.from];
        e.to = rank[e.to];
    }
    let order = dag.topological_sort().expect("condensation is acyclic");
    let old = std::mem::take(strata);
    *strata = order.into_iter().map(|r| old[by_min[r]].clone()).collect();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn chain(labels: &[&str]) -> LabeledGraph {
        let mut g = LabeledGraph::new(labels.len() + 1, 0, labels.len());
        for (i, l) in labels.iter().enumerate() {
            g.add_edge(i, i + 1, w(l));
        }
        g
    }

    #[test]
    fn size_examples() {
        assert_eq!(chain(&["x0"]).size(), 4);
        assert_eq!(LabeledGraph::new(1, 0, 0).size(), 1);
        assert_eq!(chain(&["x0 x1", ""]).size(), 7);
    }

    #[test]
    fn subdivide_examples() {
        let g = chain(&["x0 x1"]);
        let s = g.subdivide();
        assert_eq!(s.vertex_count, 3);
        assert_eq!(s.edges.len(), 2);
        assert_eq!(s.edges[0].label, w("x0"));
        assert_eq!((s.edges[0].to, s.edges[1].from), (2, 2));

        let g = chain(&["x0", "", "x1^-1"]);
        assert_eq!(g.subdivide(), g);

        let g = chain(&["x0 x0 x1 x0 x1"]);
        assert_eq!(g.subdivide().size(), g.size() + 8);
    }

    #[test]
    fn topological_sort_examples() {
        assert_eq!(chain(&["", ""]).topological_sort().unwrap(), vec![0, 1, 2]);
        let mut cyc = LabeledGraph::new(2, 0, 1);
        cyc.add_edge(0, 1, w(""));
        cyc.add_edge(1, 0, w(""));
        assert_eq!(cyc.topological_sort(), Err(Error::CycleDetected));
        assert_eq!(LabeledGraph::new(1, 0, 0).topological_sort().unwrap(), vec![0]);
    }

    #[test]
    fn order_edges_respects_paths() {
        let mut g = LabeledGraph::new(4, 0, 3);
        let e03 = g.add_edge(1, 3, w(""));
        let e01 = g.add_edge(0, 1, w(""));
        let e23 = g.add_edge(2, 3, w(""));
        let e02 = g.add_edge(0, 2, w(""));
        let order = g.order_edges().unwrap();
        let pos = |e| order.iter().position(|&x| x == e).unwrap();
        assert!(pos(e01) < pos(e03));
        assert!(pos(e02) < pos(e23));
        assert!(pos(e01) < pos(e23) && pos(e02) < pos(e03));
    }

    #[test]
    fn restrict_examples() {
        let g = chain(&["x0", "x1", ""]);
        let xs: HashSet<Letter> = [Letter::new(0), Letter::inv(0)].into();
        assert_eq!(g.restrict_subgraph(&xs).edges.len(), 2);
        let all: HashSet<Letter> = [0, 1]
            .into_iter()
            .flat_map(|i| [Letter::new(i), Letter::inv(i)])
            .collect();
        assert_eq!(g.restrict_subgraph(&all), g);
        let none = g.restrict_subgraph(&HashSet::new());
        assert_eq!(none.edges.len(), 1);
        assert!(none.edges[0].label.is_empty());
    }

    #[test]
    fn stratify_examples() {
        assert_eq!(
            chain(&["", ""]).check_stratified().unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let mut g = LabeledGraph::new(3, 0, 2);
        g.add_edge(0, 1, w(""));
        g.add_edge(1, 0, w(""));
        g.add_edge(1, 2, w(""));
        assert_eq!(g.check_stratified().unwrap(), vec![vec![0, 1], vec![2]]);
        let empty = LabeledGraph {
            vertex_count: 0,
            edges: vec![],
            alpha: 0,
            omega: 0,
        };
        assert!(empty.check_stratified().unwrap().is_empty());
    }

    #[test]
    fn json_shape() {
        let g: LabeledGraph =
            serde_json::from_str(r#"{"n":2,"edges":[[0,1,"x0 x1^-1"]],"alpha":0,"omega":1}"#)
                .unwrap();
        assert_eq!(g.edges[0].label, w("x0 x1^-1"));
        assert!(serde_json::from_str::<LabeledGraph>(r#"{"n":1,"edges":[[0,1,""]],"alpha":0,"omega":0}"#).is_err());
    }
}
