//! Eliminating an abelian-by-finite direct factor: the graph over `G × N`
//! becomes a graph over `G` on vertex set `V × N`, restricted to the part
//! reachable from `(α, 1)`.

use std::collections::{HashMap, VecDeque};

use super::AgpInstance;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::groups::{Elem, GroupSpec, Side};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct Elimination {
    /// Instance over the remaining factor.
    pub instance: AgpInstance,
    /// Original edge for every edge of the new graph.
    pub edge_map: Vec<usize>,
    /// `(ω, ĥ)` was unreachable; `instance` is a canonical negative one.
    pub negative: bool,
}

/// Eliminates the right factor of `Direct(G, N)`.
pub fn eliminate_direct_factor(inst: &AgpInstance) -> Result<Elimination> {
    eliminate_direct_side(inst, Side::Right)
}

pub fn eliminate_direct_side(inst: &AgpInstance, side: Side) -> Result<Elimination> {
    inst.validate()?;
    let GroupSpec::Direct(..) = &inst.spec else {
        return Err(Error::Unsupported("factor elimination needs a direct product".into()));
    };
    let n_group = inst.spec.factor(side).expect("direct");
    let keep = inst.spec.factor(side.other()).expect("direct");
    if !n_group.is_abelian_by_finite() {
        return Err(Error::Unsupported(
            "only abelian-by-finite direct factors can be eliminated".into(),
        ));
    }
    if !n_group.is_finite() && !inst.graph.is_acyclic() {
        return Err(Error::Unsupported(
            "eliminating an infinite factor needs an acyclic graph".into(),
        ));
    }
    let split = |w: &Word| -> (Word, Elem) {
        let mut kept = Word::empty();
        let mut x = n_group.identity();
        for &l in w.letters() {
            let (s, local) = inst.spec.locate(l).expect("direct");
            if s == side {
                n_group.mul_letter(&mut x, local);
            } else {
                kept.0.push(local);
            }
        }
        (kept, x)
    };
    let labels: Vec<(Word, Elem)> = inst.graph.edges.iter().map(|e| split(&e.label)).collect();
    let (g_target, h_target) = split(&inst.target);

    let limit = crate::limits::resource_limit() as usize;
    let out = inst.graph.out_edges();
    let mut ids: HashMap<(usize, Elem), usize> = HashMap::new();
    let mut states: Vec<(usize, Elem)> = Vec::new();
    let start = (inst.graph.alpha, n_group.identity());
    ids.insert(start.clone(), 0);
    states.push(start);
    let mut graph = LabeledGraph::new(1, 0, 0);
    let mut edge_map = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let (v, x) = states[s].clone();
        for &e in &out[v] {
            let next = (inst.graph.edges[e].to, n_group.mul(&x, &labels[e].1));
            let t = match ids.get(&next) {
                Some(&t) => t,
                None => {
                    if states.len() >= limit || graph.edges.len() >= limit {
                        return Err(Error::ResourceLimit(format!(
                            "direct-factor elimination exceeded {limit} states"
                        )));
                    }
                    let t = graph.add_vertex();
                    ids.insert(next.clone(), t);
                    states.push(next);
                    queue.push_back(t);
                    t
                }
            };
            graph.add_edge(s, t, labels[e].0.clone());
            edge_map.push(e);
        }
    }
    let keep = keep.clone();
    match ids.get(&(inst.graph.omega, h_target)) {
        Some(&omega) => {
            graph.omega = omega;
            Ok(Elimination {
                instance: AgpInstance::new(graph, keep, g_target),
                edge_map,
                negative: false,
            })
        }
        None => Ok(Elimination {
            instance: AgpInstance::new(LabeledGraph::new(2, 0, 1), keep, Word::empty()),
            edge_map: Vec::new(),
            negative: true,
        }),
    }
}
