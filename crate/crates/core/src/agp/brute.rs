//! Exhaustive path enumeration, the ground truth for the graph solvers.

use std::sync::atomic::{AtomicU64, Ordering};

use super::{AgpInstance, PathCertificate};
use crate::error::{Error, Result};
use crate::groups::{Elem, GroupSpec};
use crate::par::{self, Exec};

/// Enumerates α → ω paths and returns the first whose label equals the
/// target. On acyclic graphs every path is visited and `path_bound` is
/// ignored; otherwise paths of at most `path_bound` edges are tried.
///
/// More than the resource limit of partial paths is an error.
pub fn agp_bruteforce(
    inst: &AgpInstance,
    path_bound: usize,
    exec: Exec,
) -> Result<Option<PathCertificate>> {
    inst.validate()?;
    let g = &inst.graph;
    let bound = if g.is_acyclic() {
        g.edges.len()
    } else {
        path_bound
    };
    let spec = &inst.spec;
    let target = spec.eval(&inst.target);
    if g.alpha == g.omega && spec.is_identity(&target) {
        return Ok(Some(PathCertificate::default()));
    }
    if bound == 0 {
        return Ok(None);
    }
    let values: Vec<Elem> = g.edges.iter().map(|e| spec.eval(&e.label)).collect();
    let out = g.out_edges();
    let visited = AtomicU64::new(0);
    let limit = crate::limits::resource_limit();
    let ctx = Ctx {
        spec,
        out: &out,
        values: &values,
        omega: g.omega,
        target: &target,
        bound,
        visited: &visited,
        limit,
        to: &g.edges.iter().map(|e| e.to).collect::<Vec<_>>(),
    };
    let first = &out[g.alpha];
    let found = par::find_map_first(exec, first.len(), |i| {
        let e = first[i];
        let mut path = vec![e];
        match ctx.dfs(g.edges[e].to, values[e].clone(), &mut path) {
            Ok(true) => Some(Ok(path)),
            Ok(false) => None,
            Err(err) => Some(Err(err)),
        }
    });
    match found {
        None => Ok(None),
        Some(Ok(edges)) => Ok(Some(PathCertificate { edges })),
        Some(Err(e)) => Err(e),
    }
}

struct Ctx<'a> {
    spec: &'a GroupSpec,
    out: &'a [Vec<usize>],
    values: &'a [Elem],
    to: &'a [usize],
    omega: usize,
    target: &'a Elem,
    bound: usize,
    visited: &'a AtomicU64,
    limit: u64,
}

impl Ctx<'_> {
    /// Extends `path` (ending at `v` with value `x`); true when it completes.
    fn dfs(&self, v: usize, x: Elem, path: &mut Vec<usize>) -> Result<bool> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::ResourceLimit(format!(
                "more than {} partial paths",
                self.limit
            )));
        }
        if v == self.omega && &x == self.target {
            return Ok(true);
        }
        if path.len() >= self.bound {
            return Ok(false);
        }
        for &e in &self.out[v] {
            path.push(e);
            if self.dfs(self.to[e], self.spec.mul(&x, &self.values[e]), path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
}
