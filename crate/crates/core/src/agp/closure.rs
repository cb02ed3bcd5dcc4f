//! Group-labelled reachability closure: `P(u, v, g)` holds when some path
//! `u → v` evaluates to `g`. Used for finite factors (any graph) and, on
//! acyclic graphs, for any factor with a canonical element representation.
//!
//! Elements are interned; identity is id 0. Rows are bitsets per element.
//! On acyclic graphs one `pre*(u) × post*(v)` step per generator keeps the
//! relation closed. With cycles a generator can compose with itself, so the
//! generators are replayed until nothing changes.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::dyck::{guard_cells, spend};
use super::work::{Step, Why};
use crate::error::{Error, Result};
use crate::groups::{Elem, GroupSpec};

const UNKNOWN: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Gen {
    u: u32,
    v: u32,
    k: u32,
    why: Why,
}

pub(crate) struct GroupClosure {
    n: usize,
    group: GroupSpec,
    acyclic: bool,
    elems: Vec<Elem>,
    ids: HashMap<Elem, u32>,
    table: Vec<Vec<u32>>,
    rows: Vec<Vec<FixedBitSet>>,
    cols: Vec<Vec<FixedBitSet>>,
    /// `just[g][t * n + w]` = (generator, element of the `t → gen.u` part).
    just: Vec<Vec<(u32, u32)>>,
    gens: Vec<Gen>,
    queue: Vec<(u32, u32, u32, Why)>,
    log: Vec<(u32, u32, u32)>,
    size: usize,
}

impl GroupClosure {
    pub(crate) fn new(n: usize, group: GroupSpec, acyclic: bool) -> Result<Self> {
        if !acyclic && !group.is_finite() {
            return Err(Error::Unsupported(
                "graph word problem over an infinite non-free factor on a cyclic graph".into(),
            ));
        }
        let mut c = GroupClosure {
            n,
            acyclic,
            elems: Vec::new(),
            ids: HashMap::new(),
            table: Vec::new(),
            rows: Vec::new(),
            cols: Vec::new(),
            just: Vec::new(),
            gens: Vec::new(),
            queue: Vec::new(),
            log: Vec::new(),
            size: 0,
            group: group.clone(),
        };
        c.intern(group.identity())?;
        Ok(c)
    }

    pub(crate) fn intern(&mut self, e: Elem) -> Result<u32> {
        if let Some(&id) = self.ids.get(&e) {
            return Ok(id);
        }
        guard_cells(self.n, self.elems.len() + 1)?;
        let id = self.elems.len() as u32;
        self.ids.insert(e.clone(), id);
        self.elems.push(e);
        for row in &mut self.table {
            row.push(UNKNOWN);
        }
        self.table.push(vec![UNKNOWN; self.elems.len()]);
        self.rows.push(vec![FixedBitSet::with_capacity(self.n); self.n]);
        self.cols.push(vec![FixedBitSet::with_capacity(self.n); self.n]);
        self.just.push(Vec::new());
        Ok(id)
    }

    pub(crate) fn id_of(&self, e: &Elem) -> Option<u32> {
        self.ids.get(e).copied()
    }

    pub(crate) fn elem(&self, id: u32) -> &Elem {
        &self.elems[id as usize]
    }

    fn mul(&mut self, a: u32, b: u32) -> Result<u32> {
        let cached = self.table[a as usize][b as usize];
        if cached != UNKNOWN {
            return Ok(cached);
        }
        let p = self.group.mul(&self.elems[a as usize], &self.elems[b as usize]);
        let id = self.intern(p)?;
        self.table[a as usize][b as usize] = id;
        Ok(id)
    }

    pub(crate) fn contains(&self, u: usize, v: usize, g: u32) -> bool {
        (u == v && g == 0) || self.rows[g as usize][u].contains(v)
    }

    /// Queues the generator `P(u, v, k)` and closes.
    pub(crate) fn add(&mut self, u: u32, v: u32, k: u32, why: Why) -> Result<()> {
        self.queue.push((u, v, k, why));
        self.drain()
    }

    pub(crate) fn take_log(&mut self) -> Vec<(u32, u32, u32)> {
        std::mem::take(&mut self.log)
    }

    fn drain(&mut self) -> Result<()> {
        while let Some((u, v, k, why)) = self.queue.pop() {
            if self.contains(u as usize, v as usize, k) {
                continue;
            }
            let g = self.gens.len() as u32;
            self.gens.push(Gen { u, v, k, why });
            self.close(g, self.acyclic)?;
        }
        if !self.acyclic {
            loop {
                let before = self.size;
                for g in 0..self.gens.len() as u32 {
                    self.close(g, false)?;
                }
                if self.size == before {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Adds `pre*(u) × {k} × post*(v)` for generator `g`.
    fn close(&mut self, g: u32, skip_known: bool) -> Result<()> {
        let Gen { u, v, k, .. } = self.gens[g as usize];
        let (ui, vi) = (u as usize, v as usize);
        let mut left: Vec<(usize, u32)> = vec![(ui, 0)];
        for h in 0..self.elems.len() {
            left.extend(self.cols[h][ui].ones().map(|t| (t, h as u32)));
        }
        let mut right: Vec<(u32, FixedBitSet)> = Vec::new();
        for h in 0..self.elems.len() {
            let mut bits = self.rows[h][vi].clone();
            if h == 0 {
                bits.insert(vi);
            }
            if !bits.is_clear() {
                right.push((h as u32, bits));
            }
        }
        for (t, h) in left {
            let hk = self.mul(h, k)?;
            if skip_known && self.contains(t, vi, hk) {
                continue;
            }
            for (h2, bits) in &right {
                let target = self.mul(hk, *h2)?;
                let mut fresh = bits.clone();
                fresh.difference_with(&self.rows[target as usize][t]);
                if target == 0 {
                    fresh.set(t, false);
                }
                if fresh.is_clear() {
                    continue;
                }
                let n = self.n;
                let just = &mut self.just[target as usize];
                if just.is_empty() {
                    *just = vec![(UNKNOWN, UNKNOWN); n * n];
                }
                for w in fresh.ones() {
                    self.rows[target as usize][t].insert(w);
                    self.cols[target as usize][w].insert(t);
                    self.just[target as usize][t * n + w] = (g, h);
                    self.log.push((t as u32, w as u32, target));
                    self.size += 1;
                }
            }
        }
        Ok(())
    }

    /// Steps of a path `u → v` evaluating to element `g`.
    pub(crate) fn witness(&self, u: usize, v: usize, g: u32, budget: &mut u64) -> Result<Vec<Step>> {
        enum Task {
            Triple(u32, u32, u32),
            Gen(u32),
        }
        let mut out = Vec::new();
        let mut stack = vec![Task::Triple(u as u32, v as u32, g)];
        while let Some(task) = stack.pop() {
            spend(budget)?;
            match task {
                Task::Triple(t, w, 0) if t == w => {}
                Task::Triple(t, w, x) => {
                    let (gi, h) = self.just[x as usize][t as usize * self.n + w as usize];
                    debug_assert_ne!(gi, UNKNOWN, "triple ({t}, {w}, {x}) not in relation");
                    let gen = self.gens[gi as usize];
                    let group = &self.group;
                    let hk = group.mul(self.elem(h), self.elem(gen.k));
                    let rest = group.mul(&group.inverse(&hk), self.elem(x));
                    let h2 = self.id_of(&rest).expect("interned during closure");
                    stack.push(Task::Triple(gen.v, w, h2));
                    stack.push(Task::Gen(gi));
                    stack.push(Task::Triple(t, gen.u, h));
                }
                Task::Gen(gi) => {
                    let gen = self.gens[gi as usize];
                    match gen.why {
                        Why::Edge(e) => out.push(Step::Edge(e)),
                        Why::Fact(c) => out.push(Step::Fact(gen.u, gen.v, c)),
                        Why::Wrap { .. } => unreachable!("wrap generators are Dyck-only"),
                    }
                }
            }
        }
        Ok(out)
    }
}
