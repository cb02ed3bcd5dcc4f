//! Breadth-first search over (vertex, group element) pairs.

use std::collections::{HashMap, VecDeque};

use super::work::fold_target;
use super::{AgpInstance, AgpOutcome, AgpStats};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::groups::{Elem, GroupSpec};

/// Finite groups; the graph may have cycles.
pub fn finite_group_reachability(inst: &AgpInstance) -> Result<AgpOutcome> {
    inst.validate()?;
    if !inst.spec.is_finite() {
        return Err(Error::Unsupported("product search needs a finite group".into()));
    }
    solve(inst)
}

/// Abelian groups on acyclic graphs. Every reachable exponent vector has
/// ℤ-coordinates within the total label length, so the search is finite.
pub fn agp_abelian(inst: &AgpInstance) -> Result<AgpOutcome> {
    inst.validate()?;
    if !matches!(inst.spec, GroupSpec::Abelian { .. }) {
        return Err(Error::Unsupported("abelian solver needs an abelian group".into()));
    }
    if !inst.spec.is_finite() {
        inst.graph.topological_sort()?;
    }
    solve(inst)
}

fn solve(inst: &AgpInstance) -> Result<AgpOutcome> {
    let folded = fold_target(&inst.graph, &inst.target);
    let path = search(&folded, &inst.spec)?;
    let stats = AgpStats {
        rounds: 1,
        working_vertices: folded.vertex_count,
        ..AgpStats::default()
    };
    Ok(AgpOutcome::from_folded_path(path, stats))
}

/// Path α → ω evaluating to the identity, if any.
pub(crate) fn search(graph: &LabeledGraph, spec: &GroupSpec) -> Result<Option<Vec<usize>>> {
    let values: Vec<Elem> = graph.edges.iter().map(|e| spec.eval(&e.label)).collect();
    let out = graph.out_edges();
    let limit = crate::limits::resource_limit() as usize;
    // state -> (parent state, edge)
    let mut states: Vec<(usize, Elem)> = vec![(graph.alpha, spec.identity())];
    let mut parent: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    let mut index: HashMap<(usize, Elem), usize> = HashMap::new();
    index.insert(states[0].clone(), 0);
    let goal = (graph.omega, spec.identity());
    let mut queue = VecDeque::from([0usize]);
    let mut found = index.get(&goal).copied();
    while found.is_none() {
        let Some(s) = queue.pop_front() else { break };
        let (v, x) = states[s].clone();
        for &e in &out[v] {
            let next = (graph.edges[e].to, spec.mul(&x, &values[e]));
            if index.contains_key(&next) {
                continue;
            }
            if states.len() >= limit {
                return Err(Error::ResourceLimit(format!(
                    "product search exceeded {limit} states"
                )));
            }
            let id = states.len();
            index.insert(next.clone(), id);
            parent.push((s, e));
            let is_goal = next == goal;
            states.push(next);
            if is_goal {
                found = Some(id);
                break;
            }
            queue.push_back(id);
        }
    }
    Ok(found.map(|mut s| {
        let mut path = Vec::new();
        while s != 0 {
            let (p, e) = parent[s];
            path.push(e);
            s = p;
        }
        path.reverse();
        path
    }))
}
