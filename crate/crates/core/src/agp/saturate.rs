//! Saturation for free products and amalgams `G ∗_C H` with finite `C`.
//!
//! Facts `E_c(u, v)` record that some path `u → v` evaluates to the image of
//! `c ∈ C`. Each round, every factor reads the graph made of its own letters
//! plus all facts so far and reports the pairs joined by a path equal to an
//! image of `C`. The instance is positive iff `E_1(α, ω)` eventually holds.
//!
//! Each factor keeps a persistent closure and only receives the facts that
//! are new since the previous round, so the rounds together cost about as
//! much as one closure per factor.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::closure::GroupClosure;
use super::dyck::{guard_cells, spend, Dyck};
use super::work::{fold_target, Piece, Step, Why, Work};
use super::{is_free_reducible, AgpInstance, AgpOutcome, AgpStats};
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup, GroupSpec, Side};
use crate::par::{self, Exec};

/// The facts added by saturation.
#[derive(Clone, Debug, Default)]
pub struct SaturationState {
    /// Vertices of the working graph (after the label split and target path).
    pub vertex_count: usize,
    pub c_order: usize,
    /// Completed rounds.
    pub round: usize,
    /// `(origin, terminus, c)` in the order they were added.
    pub added_edges: Vec<(usize, usize, usize)>,
    /// Cumulative `added_edges.len()` after each round.
    pub round_sizes: Vec<usize>,
}

impl SaturationState {
    /// `2·|C|·|V|²`.
    pub fn edge_bound(&self) -> usize {
        2 * self.c_order * self.vertex_count * self.vertex_count
    }
}

enum Engine {
    Dyck(Dyck),
    Group {
        closure: GroupClosure,
        /// Element id of the image of each `c`.
        c_ids: Vec<u32>,
        c_of: HashMap<u32, u32>,
    },
}

impl Engine {
    fn absorb(&mut self, delta: &[(u32, u32, u32)]) -> Result<Vec<(u32, u32, u32)>> {
        match self {
            Engine::Dyck(d) => {
                for &(u, v, c) in delta {
                    d.add(u, v, Why::Fact(c));
                }
                // C is trivial next to a free-reducible factor.
                Ok(d.take_log().into_iter().map(|(u, v)| (u, v, 0)).collect())
            }
            Engine::Group {
                closure,
                c_ids,
                c_of,
            } => {
                for &(u, v, c) in delta {
                    closure.add(u, v, c_ids[c as usize], Why::Fact(c))?;
                }
                Ok(closure
                    .take_log()
                    .into_iter()
                    .filter_map(|(u, v, g)| c_of.get(&g).map(|&c| (u, v, c)))
                    .collect())
            }
        }
    }

    fn witness(&self, u: u32, v: u32, c: u32, budget: &mut u64) -> Result<Vec<Step>> {
        match self {
            Engine::Dyck(d) => d.witness(u as usize, v as usize, budget),
            Engine::Group { closure, c_ids, .. } => {
                closure.witness(u as usize, v as usize, c_ids[c as usize], budget)
            }
        }
    }
}

const REASON_NONE: u32 = 0;
const REASON_EDGE: u32 = 3;

struct Facts {
    n: usize,
    bits: Vec<FixedBitSet>,
    /// 1 = left, 2 = right, `3 + e` = ε-edge `e`.
    reason: Vec<Vec<u32>>,
}

impl Facts {
    fn contains(&self, u: u32, v: u32, c: u32) -> bool {
        self.bits[c as usize].contains(u as usize * self.n + v as usize)
    }

    fn insert(&mut self, u: u32, v: u32, c: u32, reason: u32) -> bool {
        let idx = u as usize * self.n + v as usize;
        if self.bits[c as usize].put(idx) {
            return false;
        }
        let r = &mut self.reason[c as usize];
        if r.is_empty() {
            *r = vec![REASON_NONE; self.n * self.n];
        }
        r[idx] = reason;
        true
    }

    fn reason(&self, u: u32, v: u32, c: u32) -> u32 {
        self.reason[c as usize][u as usize * self.n + v as usize]
    }
}

/// Runs saturation to a fixpoint (or until `E_1(α, ω)` appears).
pub fn agp_amalgam_saturate(
    inst: &AgpInstance,
    exec: Exec,
) -> Result<(AgpOutcome, SaturationState)> {
    inst.validate()?;
    let spec = &inst.spec;
    let (c_group, images): (FiniteGroup, [Vec<Elem>; 2]) = match spec {
        GroupSpec::FreeProduct(l, r) => (FiniteGroup::trivial(), [vec![l.identity()], vec![r.identity()]]),
        GroupSpec::Amalgam(a) => {
            let c = a.c_group().clone();
            let imgs = [Side::Left, Side::Right]
                .map(|s| (0..c.order()).map(|k| a.image(s, k).clone()).collect());
            (c, imgs)
        }
        _ => {
            return Err(Error::Unsupported(
                "saturation needs a free product or an amalgam".into(),
            ))
        }
    };
    for f in spec.factors().into_iter().flat_map(|(l, r)| [l, r]) {
        let nested = matches!(f, GroupSpec::Amalgam(_))
            || (matches!(f, GroupSpec::FreeProduct(..)) && !is_free_reducible(f));
        if nested {
            return Err(Error::Unsupported(
                "no factor solver for nested free or amalgamated products".into(),
            ));
        }
    }
    let q = c_group.order();
    let one = c_group.identity() as u32;
    let folded = fold_target(&inst.graph, &inst.target);
    let acyclic = folded.is_acyclic();
    let factors = [Side::Left, Side::Right].map(|s| spec.factor(s).expect("product").clone());
    let letterwise = [0, 1].map(|i| is_free_reducible(&factors[i]));
    if letterwise.contains(&true) && q > 1 {
        return Err(Error::InvalidSpec(
            "a free factor cannot contain a nontrivial finite subgroup".into(),
        ));
    }
    let work = Work::by_side(&folded, spec, letterwise);
    let n = work.n();
    guard_cells(n, q)?;

    let eps: Vec<(u32, u32, u32)> = work
        .pieces
        .iter()
        .enumerate()
        .filter(|(_, p)| **p == Piece::Eps)
        .map(|(e, _)| {
            let (a, b) = work.from_to(e as u32);
            (e as u32, a, b)
        })
        .collect();

    let mut engines = Vec::with_capacity(2);
    for side in [Side::Left, Side::Right] {
        let i = side.index();
        let engine = if letterwise[i] {
            let letters = work.pieces.iter().enumerate().filter_map(|(e, p)| match p {
                Piece::Letter(s, l) if *s == side => {
                    let (a, b) = work.from_to(e as u32);
                    Some((e as u32, a, b, *l))
                }
                _ => None,
            });
            let mut d = Dyck::new(n, letters, true)?;
            for &(e, a, b) in &eps {
                d.add(a, b, Why::Edge(e));
            }
            Engine::Dyck(d)
        } else {
            let mut closure = GroupClosure::new(n, factors[i].clone(), acyclic)?;
            let c_ids = images[i]
                .iter()
                .map(|x| closure.intern(x.clone()))
                .collect::<Result<Vec<_>>>()?;
            let c_of = c_ids.iter().enumerate().map(|(c, &id)| (id, c as u32)).collect();
            for (e, p) in work.pieces.iter().enumerate() {
                let (a, b) = work.from_to(e as u32);
                match p {
                    Piece::Value(s, x) if *s == side => {
                        let k = closure.intern(x.clone())?;
                        closure.add(a, b, k, Why::Edge(e as u32))?;
                    }
                    Piece::Eps => closure.add(a, b, 0, Why::Edge(e as u32))?,
                    _ => {}
                }
            }
            Engine::Group {
                closure,
                c_ids,
                c_of,
            }
        };
        engines.push(engine);
    }
    let mut right_engine = engines.pop().expect("two engines");
    let mut left_engine = engines.pop().expect("two engines");

    let mut facts = Facts {
        n,
        bits: vec![FixedBitSet::with_capacity(n * n); q],
        reason: vec![Vec::new(); q],
    };
    for &(e, a, b) in &eps {
        if a != b {
            facts.insert(a, b, one, REASON_EDGE + e);
        }
    }
    let (alpha, omega) = (folded.alpha as u32, folded.omega as u32);
    let mut state = SaturationState {
        vertex_count: n,
        c_order: q,
        ..SaturationState::default()
    };
    let mut delta: Vec<(u32, u32, u32)> = Vec::new();
    let mut accepted = facts.contains(alpha, omega, one);
    while !accepted {
        state.round += 1;
        let (l, r) = par::join(
            exec,
            || left_engine.absorb(&delta),
            || right_engine.absorb(&delta),
        );
        let mut next = Vec::new();
        for (side_reason, cands) in [(1u32, l?), (2u32, r?)] {
            for (u, v, c) in cands {
                if u == v && c == one {
                    continue;
                }
                if facts.insert(u, v, c, side_reason) {
                    state.added_edges.push((u as usize, v as usize, c as usize));
                    next.push((u, v, c));
                }
            }
        }
        state.round_sizes.push(state.added_edges.len());
        accepted = facts.contains(alpha, omega, one);
        if next.is_empty() {
            break;
        }
        delta = next;
    }

    let stats = AgpStats {
        rounds: state.round,
        oracle_calls: 2 * state.round,
        added_edges: state.added_edges.len(),
        working_vertices: n,
    };
    if !accepted {
        return Ok((AgpOutcome::from_folded_path(None, stats), state));
    }
    // Expand E_1(α, ω) into working edges.
    let engines = [&left_engine, &right_engine];
    let mut budget = crate::limits::resource_limit();
    let mut path = Vec::new();
    let mut stack = vec![Step::Fact(alpha, omega, one)];
    while let Some(step) = stack.pop() {
        spend(&mut budget)?;
        match step {
            Step::Edge(e) => path.push(e as usize),
            Step::Fact(u, v, c) if u == v && c == one => {}
            Step::Fact(u, v, c) => match facts.reason(u, v, c) {
                REASON_NONE => unreachable!("fact ({u}, {v}, {c}) without a reason"),
                r @ (1 | 2) => {
                    let steps = engines[r as usize - 1].witness(u, v, c, &mut budget)?;
                    stack.extend(steps.into_iter().rev());
                }
                r => path.push((r - REASON_EDGE) as usize),
            },
        }
    }
    Ok((
        AgpOutcome::from_folded_path(Some(work.sub.lift(&path)), stats),
        state,
    ))
}
