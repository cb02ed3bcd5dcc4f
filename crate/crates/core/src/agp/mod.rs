//! Decision procedures for the graph word problem: is there an α → ω path
//! whose label equals a target element?
//!
//! | group                                   | solver                          |
//! |-----------------------------------------|---------------------------------|
//! | free, ℤ, free products of those         | Dyck closure ([`agp_free`])     |
//! | finite                                  | product-space BFS               |
//! | abelian (acyclic graphs)                | product-space BFS               |
//! | `G × N`, `N` abelian-by-finite          | [`eliminate_direct_factor`]     |
//! | free / amalgamated products             | [`agp_amalgam_saturate`]        |

mod brute;
mod closure;
mod direct;
mod dyck;
mod product;
mod rational;
mod saturate;
mod work;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::groups::GroupSpec;
use crate::par::Exec;
use crate::word::Word;

pub use brute::agp_bruteforce;
pub use direct::{eliminate_direct_factor, eliminate_direct_side, Elimination};
pub use product::{agp_abelian, finite_group_reachability};
pub use rational::{rational_membership, Automaton, RationalOutcome};
pub use saturate::{agp_amalgam_saturate, SaturationState};

use dyck::Dyck;
use work::{fold_target, Piece, Step, Why, Work};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgpInstance {
    pub graph: LabeledGraph,
    pub spec: GroupSpec,
    #[serde(default)]
    pub target: Word,
}

impl AgpInstance {
    pub fn new(graph: LabeledGraph, spec: GroupSpec, target: Word) -> Self {
        AgpInstance {
            graph,
            spec,
            target,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        for e in &self.graph.edges {
            self.spec.check_word(&e.label)?;
        }
        self.spec.check_word(&self.target)
    }

    /// Whether `path` is an α → ω walk whose label equals the target.
    pub fn accepts(&self, path: &[usize]) -> bool {
        if self.validate().is_err()
            || !self.graph.is_walk(path, self.graph.alpha, self.graph.omega)
        {
            return false;
        }
        let label = self.graph.path_label(path);
        self.spec.eval(&label) == self.spec.eval(&self.target)
    }
}

/// Edge positions of an α → ω path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCertificate {
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AgpStats {
    pub rounds: usize,
    pub oracle_calls: usize,
    pub added_edges: usize,
    /// Vertices of the graph the solver actually ran on.
    pub working_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgpOutcome {
    pub answer: bool,
    pub certificate: Option<PathCertificate>,
    pub stats: AgpStats,
}

impl AgpOutcome {
    fn from_folded_path(path: Option<Vec<usize>>, stats: AgpStats) -> Self {
        AgpOutcome {
            answer: path.is_some(),
            certificate: path.map(|mut edges| {
                // The last edge is the hanging target path.
                edges.pop();
                PathCertificate { edges }
            }),
            stats,
        }
    }
}

/// Groups whose word problem is free reduction over the whole alphabet.
pub fn is_free_reducible(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::FreeProduct(l, r) => is_free_reducible(l) && is_free_reducible(r),
        GroupSpec::Abelian { moduli } if moduli.is_empty() => true,
        _ => spec.is_free_like(),
    }
}

/// Dispatches to the solver for the instance's group; see the module table.
pub fn solve_agp(inst: &AgpInstance, exec: Exec) -> Result<AgpOutcome> {
    inst.validate()?;
    match &inst.spec {
        s if is_free_reducible(s) => agp_free(inst),
        s if s.is_finite() => finite_group_reachability(inst),
        GroupSpec::Abelian { .. } => agp_abelian(inst),
        GroupSpec::Direct(l, r) => {
            let side = if r.is_abelian_by_finite() {
                crate::Side::Right
            } else if l.is_abelian_by_finite() {
                crate::Side::Left
            } else {
                return Err(Error::Unsupported(
                    "direct product without an abelian-by-finite factor".into(),
                ));
            };
            let elim = eliminate_direct_side(inst, side)?;
            let mut out = solve_agp(&elim.instance, exec)?;
            if let Some(cert) = &mut out.certificate {
                cert.edges = cert.edges.iter().map(|&e| elim.edge_map[e]).collect();
            }
            Ok(out)
        }
        GroupSpec::FreeProduct(..) | GroupSpec::Amalgam(_) => {
            agp_amalgam_saturate(inst, exec).map(|(out, _)| out)
        }
        _ => Err(Error::Unsupported(format!("no graph solver for {:?}", inst.spec))),
    }
}

/// Free groups and other free-reducible groups; graphs may have cycles.
pub fn agp_free(inst: &AgpInstance) -> Result<AgpOutcome> {
    inst.validate()?;
    if !is_free_reducible(&inst.spec) {
        return Err(Error::Unsupported(
            "Dyck solver needs a free group, ℤ, or a free product of those".into(),
        ));
    }
    let folded = fold_target(&inst.graph, &inst.target);
    let work = Work::letters(&folded);
    let letters: Vec<_> = work
        .pieces
        .iter()
        .enumerate()
        .filter_map(|(e, p)| match p {
            Piece::Letter(_, l) => {
                let (from, to) = work.from_to(e as u32);
                Some((e as u32, from, to, *l))
            }
            _ => None,
        })
        .collect();
    let mut dyck = Dyck::new(work.n(), letters, false)?;
    for (e, p) in work.pieces.iter().enumerate() {
        if *p == Piece::Eps {
            let (from, to) = work.from_to(e as u32);
            dyck.add(from, to, Why::Edge(e as u32));
        }
    }
    let (alpha, omega) = (folded.alpha, folded.omega);
    let stats = AgpStats {
        rounds: 1,
        oracle_calls: 0,
        added_edges: 0,
        working_vertices: work.n(),
    };
    if !dyck.contains(alpha, omega) {
        return Ok(AgpOutcome::from_folded_path(None, stats));
    }
    let mut budget = crate::limits::resource_limit();
    let steps = dyck.witness(alpha, omega, &mut budget)?;
    let path: Vec<usize> = steps
        .into_iter()
        .map(|s| match s {
            Step::Edge(e) => e as usize,
            Step::Fact(..) => unreachable!("standalone closure has no facts"),
        })
        .collect();
    Ok(AgpOutcome::from_folded_path(Some(work.sub.lift(&path)), stats))
}
