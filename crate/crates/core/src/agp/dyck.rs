//! Dyck-style ε-reachability closure for free reduction.
//!
//! The relation `R(u, v)` holds when some path `u → v` reads a word that freely
//! reduces to ε. It is kept transitively closed at all times: adding a pair
//! `(u, v)` adds `pre*(u) × post*(v)` with bitset rows, and every new pair is
//! checked against the wrap rule `s —a→ t ⇝ w —a⁻¹→ x ⟹ R(s, x)`.

use fixedbitset::FixedBitSet;

use super::work::{Step, Why};
use crate::error::{Error, Result};
use crate::word::Letter;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Gen {
    u: u32,
    v: u32,
    why: Why,
}

pub(crate) struct Dyck {
    n: usize,
    rows: Vec<FixedBitSet>,
    cols: Vec<FixedBitSet>,
    /// `just[t * n + w]`: generator whose closure step first produced `(t, w)`.
    just: Vec<u32>,
    gens: Vec<Gen>,
    /// Letter edges entering / leaving each vertex: (edge, other end, letter).
    ins: Vec<Vec<(u32, u32, Letter)>>,
    outs: Vec<Vec<(u32, u32, Letter)>>,
    queue: Vec<(u32, u32, Why)>,
    log: Vec<(u32, u32)>,
    logging: bool,
}

impl Dyck {
    /// `letters`: (edge id, from, to, letter) for every single-letter edge this
    /// closure reduces over.
    pub(crate) fn new(
        n: usize,
        letters: impl IntoIterator<Item = (u32, u32, u32, Letter)>,
        logging: bool,
    ) -> Result<Self> {
        guard_cells(n, 1)?;
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for (e, from, to, letter) in letters {
            outs[from as usize].push((e, to, letter));
            ins[to as usize].push((e, from, letter));
        }
        let mut d = Dyck {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
            cols: vec![FixedBitSet::with_capacity(n); n],
            just: vec![NONE; n * n],
            gens: Vec::new(),
            ins,
            outs,
            queue: Vec::new(),
            log: Vec::new(),
            logging,
        };
        for t in 0..n as u32 {
            d.wrap(t, t);
        }
        d.drain();
        Ok(d)
    }

    pub(crate) fn contains(&self, u: usize, v: usize) -> bool {
        u == v || self.rows[u].contains(v)
    }

    pub(crate) fn add(&mut self, u: u32, v: u32, why: Why) {
        self.queue.push((u, v, why));
        self.drain();
    }

    /// Pairs set since the previous call.
    pub(crate) fn take_log(&mut self) -> Vec<(u32, u32)> {
        std::mem::take(&mut self.log)
    }

    fn wrap(&mut self, t: u32, w: u32) {
        for &(e1, s, a) in &self.ins[t as usize] {
            for &(e2, x, b) in &self.outs[w as usize] {
                if b == a.inverted() {
                    self.queue.push((s, x, Why::Wrap { e1, e2, t, w }));
                }
            }
        }
    }

    fn drain(&mut self) {
        while let Some((u, v, why)) = self.queue.pop() {
            let (ui, vi) = (u as usize, v as usize);
            if self.contains(ui, vi) {
                continue;
            }
            let g = self.gens.len() as u32;
            self.gens.push(Gen { u, v, why });
            let left: Vec<usize> = self.cols[ui].ones().chain(std::iter::once(ui)).collect();
            let mut right = self.rows[vi].clone();
            right.insert(vi);
            for t in left {
                if self.contains(t, vi) {
                    continue;
                }
                let mut fresh = right.clone();
                fresh.difference_with(&self.rows[t]);
                fresh.set(t, false);
                for w in fresh.ones() {
                    self.rows[t].insert(w);
                    self.cols[w].insert(t);
                    self.just[t * self.n + w] = g;
                    if self.logging {
                        self.log.push((t as u32, w as u32));
                    }
                    self.wrap(t as u32, w as u32);
                }
            }
        }
    }

    /// Steps of a path `u → v` reducing to ε. Requires `contains(u, v)`.
    pub(crate) fn witness(&self, u: usize, v: usize, budget: &mut u64) -> Result<Vec<Step>> {
        enum Task {
            Pair(u32, u32),
            Gen(u32),
            Edge(u32),
        }
        let mut out = Vec::new();
        let mut stack = vec![Task::Pair(u as u32, v as u32)];
        while let Some(task) = stack.pop() {
            spend(budget)?;
            match task {
                Task::Pair(t, w) if t == w => {}
                Task::Pair(t, w) => {
                    let g = self.just[t as usize * self.n + w as usize];
                    debug_assert_ne!(g, NONE, "pair ({t}, {w}) not in relation");
                    let gen = self.gens[g as usize];
                    stack.push(Task::Pair(gen.v, w));
                    stack.push(Task::Gen(g));
                    stack.push(Task::Pair(t, gen.u));
                }
                Task::Gen(g) => {
                    let gen = self.gens[g as usize];
                    match gen.why {
                        Why::Edge(e) => out.push(Step::Edge(e)),
                        Why::Fact(c) => out.push(Step::Fact(gen.u, gen.v, c)),
                        Why::Wrap { e1, e2, t, w } => {
                            stack.push(Task::Edge(e2));
                            stack.push(Task::Pair(t, w));
                            stack.push(Task::Edge(e1));
                        }
                    }
                }
                Task::Edge(e) => out.push(Step::Edge(e)),
            }
        }
        Ok(out)
    }
}

pub(crate) fn spend(budget: &mut u64) -> Result<()> {
    if *budget == 0 {
        return Err(Error::ResourceLimit("certificate reconstruction".into()));
    }
    *budget -= 1;
    Ok(())
}

/// Dense closures hold `n² · elements` cells.
pub(crate) fn guard_cells(n: usize, elements: usize) -> Result<()> {
    let cells = (n as u128) * (n as u128) * (elements as u128);
    let limit = 4 * crate::limits::resource_limit() as u128;
    if cells > limit {
        return Err(Error::ResourceLimit(format!(
            "closure over {n} vertices and {elements} elements needs {cells} cells"
        )));
    }
    Ok(())
}
