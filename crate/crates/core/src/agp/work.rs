//! The working graph the closures run on: the instance graph with the target
//! folded in as a hanging path and labels cut into solver-sized pieces.

use crate::graph::{LabeledGraph, Subdivision};
use crate::groups::{Elem, GroupSpec, Side};
use crate::word::{Letter, Word};

/// Why a generator entered a closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Why {
    /// A working edge (letter, value or ε).
    Edge(u32),
    /// A fact `E_c(u, v)` supplied from outside (saturation).
    Fact(u32),
    /// `e1 · (t ⇝ w) · e2` with cancelling letters.
    Wrap { e1: u32, e2: u32, t: u32, w: u32 },
}

/// One element of a reconstructed path: a working edge, or a fact whose own
/// witness still has to be expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    Edge(u32),
    Fact(u32, u32, u32),
}

/// Appends a hanging path labelled `target⁻¹` at ω. The new ω has no other
/// edges, so every α → ω' path is an α → ω path followed by the new edge.
pub(crate) fn fold_target(graph: &LabeledGraph, target: &Word) -> LabeledGraph {
    let mut g = graph.clone();
    let sink = g.add_vertex();
    g.add_edge(graph.omega, sink, target.inverse());
    g.omega = sink;
    g
}

/// A piece of a working edge label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Piece {
    Eps,
    /// Single letter in the local alphabet of `side` (or of the whole group
    /// when the solver does not split by side).
    Letter(Side, Letter),
    /// Run of letters from one side, evaluated in that factor.
    Value(Side, Elem),
}

pub(crate) struct Work {
    pub(crate) sub: Subdivision,
    pub(crate) pieces: Vec<Piece>,
}

impl Work {
    pub(crate) fn n(&self) -> usize {
        self.sub.graph.vertex_count
    }

    /// Every label split into single letters, all on one side.
    pub(crate) fn letters(graph: &LabeledGraph) -> Work {
        let sub = graph.subdivide_traced();
        let pieces = sub
            .graph
            .edges
            .iter()
            .map(|e| match e.label.letters() {
                [] => Piece::Eps,
                [l] => Piece::Letter(Side::Left, *l),
                _ => unreachable!("subdivided"),
            })
            .collect();
        Work { sub, pieces }
    }

    /// Labels over a binary product split into maximal one-side runs; runs on
    /// a side with `letterwise[side]` are further split into letters.
    pub(crate) fn by_side(graph: &LabeledGraph, spec: &GroupSpec, letterwise: [bool; 2]) -> Work {
        let sub = graph.split_labels(|w| {
            let mut pieces: Vec<Word> = Vec::new();
            let mut current: Option<Side> = None;
            for &l in w.letters() {
                let (side, _) = spec.locate(l).expect("binary product");
                if current == Some(side) && !letterwise[side.index()] {
                    pieces.last_mut().expect("run open").0.push(l);
                } else {
                    pieces.push(Word(vec![l]));
                }
                current = Some(side);
            }
            pieces
        });
        let pieces = sub
            .graph
            .edges
            .iter()
            .map(|e| {
                let letters = e.label.letters();
                let Some(&first) = letters.first() else {
                    return Piece::Eps;
                };
                let (side, local) = spec.locate(first).expect("binary product");
                if letterwise[side.index()] {
                    Piece::Letter(side, local)
                } else {
                    let factor = spec.factor(side).expect("binary product");
                    let offset = spec.offset(side);
                    let mut e = factor.identity();
                    for &l in letters {
                        factor.mul_letter(&mut e, unshift(l, offset));
                    }
                    Piece::Value(side, e)
                }
            })
            .collect();
        Work { sub, pieces }
    }

    pub(crate) fn from_to(&self, e: u32) -> (u32, u32) {
        let edge = &self.sub.graph.edges[e as usize];
        (edge.from as u32, edge.to as u32)
    }
}

pub(crate) fn unshift(l: Letter, offset: usize) -> Letter {
    Letter {
        generator: l.generator - offset,
        inverse: l.inverse,
    }
}
