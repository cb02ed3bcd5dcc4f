//! Exhaustive searches used as ground truth. They share nothing with the
//! polynomial-time solvers beyond group arithmetic.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::agp::{agp_bruteforce, Automaton};
use crate::error::{Error, Result};
use crate::groups::{Elem, GroupSpec};
use crate::limits::resource_limit;
use crate::par::{self, Exec};
use crate::problems::{
    BkpInstance, BsmpInstance, Certificate, Instance, RationalInstance, SspInstance,
};
use crate::word::Word;

fn too_big(what: &str) -> Error {
    Error::ResourceLimit(format!("{what} exceeds {} candidates", resource_limit()))
}

/// Searches exponent vectors `0 ≤ nᵢ ≤ caps[i]` with `∏ gᵢ^{nᵢ} = target`.
/// The first coordinate is split across workers.
pub fn exponent_search(
    spec: &GroupSpec,
    elements: &[Word],
    caps: &[u64],
    target: &Word,
    exec: Exec,
) -> Result<Option<Vec<u64>>> {
    assert_eq!(elements.len(), caps.len());
    let total = caps
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(c.checked_add(1)?));
    if total.is_none_or(|t| t > resource_limit()) {
        return Err(too_big("exponent grid"));
    }
    let values: Vec<Elem> = elements.iter().map(|g| spec.eval(g)).collect();
    let target = spec.eval(target);
    let Some((&cap0, rest)) = caps.split_first() else {
        return Ok(spec.is_identity(&target).then(Vec::new));
    };
    let search = |n0: usize| {
        let mut exps = vec![0u64; caps.len()];
        exps[0] = n0 as u64;
        let start = spec.pow(&values[0], n0 as u64);
        dfs_exponents(spec, &values[1..], rest, &target, start, &mut exps[1..]).then_some(exps)
    };
    Ok(par::find_map_first(exec, cap0 as usize + 1, search))
}

fn dfs_exponents(
    spec: &GroupSpec,
    values: &[Elem],
    caps: &[u64],
    target: &Elem,
    acc: Elem,
    exps: &mut [u64],
) -> bool {
    let Some((g, rest)) = values.split_first() else {
        return &acc == target;
    };
    let mut x = acc;
    for n in 0..=caps[0] {
        exps[0] = n;
        if dfs_exponents(spec, rest, &caps[1..], target, x.clone(), &mut exps[1..]) {
            return true;
        }
        if n < caps[0] {
            spec.mul_into(&mut x, g);
        }
    }
    false
}

/// Subset enumeration.
pub fn ssp_bruteforce(inst: &SspInstance, exec: Exec) -> Result<Option<Vec<u8>>> {
    Instance::Ssp(inst.clone()).validate()?;
    let caps = vec![1; inst.elements.len()];
    Ok(exponent_search(&inst.spec, &inst.elements, &caps, &inst.target, exec)?
        .map(|e| e.into_iter().map(|n| n as u8).collect()))
}

/// Bounded exponent enumeration.
pub fn bkp_bruteforce(inst: &BkpInstance, exec: Exec) -> Result<Option<Vec<u64>>> {
    Instance::Bkp(inst.clone()).validate()?;
    let caps = vec![inst.bound as u64; inst.elements.len()];
    exponent_search(&inst.spec, &inst.elements, &caps, &inst.target, exec)
}

/// Enumerates generator sequences of length at most the bound.
pub fn bsmp_bruteforce(inst: &BsmpInstance) -> Result<Option<Vec<usize>>> {
    Instance::Bsmp(inst.clone()).validate()?;
    let k = inst.generators.len() as u64;
    let mut total = 1u64;
    let mut layer = 1u64;
    for _ in 0..inst.bound {
        layer = layer.saturating_mul(k);
        total = total.saturating_add(layer);
    }
    if total > resource_limit() {
        return Err(too_big("sequence space"));
    }
    let spec = &inst.spec;
    let values: Vec<Elem> = inst.generators.iter().map(|g| spec.eval(g)).collect();
    let target = spec.eval(&inst.target);
    fn dfs(
        spec: &GroupSpec,
        values: &[Elem],
        target: &Elem,
        left: usize,
        acc: &Elem,
        seq: &mut Vec<usize>,
    ) -> bool {
        if acc == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        for (j, g) in values.iter().enumerate() {
            seq.push(j);
            if dfs(spec, values, target, left - 1, &spec.mul(acc, g), seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
    let mut seq = Vec::new();
    Ok(dfs(spec, &values, &target, inst.bound, &spec.identity(), &mut seq).then_some(seq))
}

/// Enumerates accepted runs of at most `max_len` transitions.
pub fn rational_bruteforce(inst: &RationalInstance, max_len: usize) -> Result<Option<Vec<usize>>> {
    Instance::Rational(inst.clone()).validate()?;
    let a: &Automaton = &inst.automaton;
    let spec = &inst.spec;
    let values: Vec<Elem> = a.edges.iter().map(|e| spec.eval(&e.label)).collect();
    let mut out = vec![Vec::new(); a.vertex_count];
    for (i, e) in a.edges.iter().enumerate() {
        out[e.from].push(i);
    }
    let target = spec.eval(&inst.word);
    let visited = AtomicU64::new(0);
    let limit = resource_limit();
    struct Run<'a> {
        spec: &'a GroupSpec,
        a: &'a Automaton,
        out: &'a [Vec<usize>],
        values: &'a [Elem],
        target: &'a Elem,
        max_len: usize,
        visited: &'a AtomicU64,
        limit: u64,
    }
    impl Run<'_> {
        fn go(&self, v: usize, x: &Elem, path: &mut Vec<usize>) -> Result<bool> {
            if self.visited.fetch_add(1, Ordering::Relaxed) >= self.limit {
                return Err(too_big("run enumeration"));
            }
            if &x == &self.target && self.a.accepting.contains(&v) {
                return Ok(true);
            }
            if path.len() == self.max_len {
                return Ok(false);
            }
            for &e in &self.out[v] {
                path.push(e);
                let y = self.spec.mul(x, &self.values[e]);
                if self.go(self.a.edges[e].to, &y, path)? {
                    return Ok(true);
                }
                path.pop();
            }
            Ok(false)
        }
    }
    let run = Run {
        spec,
        a,
        out: &out,
        values: &values,
        target: &target,
        max_len,
        visited: &visited,
        limit,
    };
    let mut path = Vec::new();
    Ok(run.go(a.initial, &spec.identity(), &mut path)?.then_some(path))
}

/// Ground truth for any instance. `bound` caps knapsack exponents and the
/// path length on cyclic graphs and automata.
pub fn oracle(inst: &Instance, bound: usize, exec: Exec) -> Result<Option<Certificate>> {
    Ok(match inst {
        Instance::Ssp(i) => ssp_bruteforce(i, exec)?.map(|bits| Certificate::Subset { bits }),
        Instance::Bkp(i) => {
            bkp_bruteforce(i, exec)?.map(|exponents| Certificate::Exponents { exponents })
        }
        Instance::Bsmp(i) => {
            bsmp_bruteforce(i)?.map(|indices| Certificate::Sequence { indices })
        }
        Instance::Kp(i) => crate::knapsack::kp_bruteforce(i, bound as u64, exec)?
            .map(|exponents| Certificate::Exponents { exponents }),
        Instance::Agp(i) => {
            agp_bruteforce(i, bound, exec)?.map(|c| Certificate::Path { edges: c.edges })
        }
        Instance::Rational(i) => {
            rational_bruteforce(i, bound)?.map(|edges| Certificate::Path { edges })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::word::w;

    #[test]
    fn subset_examples() {
        let i = SspInstance {
            spec: GroupSpec::free(1),
            elements: vec![w("x0"), w("x0^-1")],
            target: w(""),
        };
        assert_eq!(ssp_bruteforce(&i, Exec::Sequential).unwrap(), Some(vec![0, 0]));
        let i = SspInstance {
            spec: GroupSpec::free(2),
            elements: vec![w("x0"), w("x1")],
            target: w("x0 x1"),
        };
        assert_eq!(ssp_bruteforce(&i, Exec::Parallel).unwrap(), Some(vec![1, 1]));
        let i = SspInstance {
            spec: GroupSpec::free(2),
            elements: vec![w("x0"), w("x1")],
            target: w("x1 x0"),
        };
        assert_eq!(ssp_bruteforce(&i, Exec::Parallel).unwrap(), None);
    }

    #[test]
    fn bounded_examples() {
        let z = GroupSpec::integers();
        let i = BkpInstance {
            spec: z.clone(),
            elements: vec![w("x0")],
            target: w("x0 x0"),
            bound: 2,
        };
        assert_eq!(bkp_bruteforce(&i, Exec::Sequential).unwrap(), Some(vec![2]));
        let i = BkpInstance { target: w("x0 x0 x0"), ..i };
        assert_eq!(bkp_bruteforce(&i, Exec::Sequential).unwrap(), None);

        let ab = BsmpInstance {
            spec: GroupSpec::free(2),
            generators: vec![w("x0"), w("x1")],
            target: w("x0 x1"),
            bound: 2,
        };
        assert_eq!(bsmp_bruteforce(&ab).unwrap(), Some(vec![0, 1]));
        let short = BsmpInstance { bound: 1, ..ab };
        assert_eq!(bsmp_bruteforce(&short).unwrap(), None);
    }

    #[test]
    fn grid_guard() {
        let i = SspInstance {
            spec: GroupSpec::free(1),
            elements: vec![w("x0"); 40],
            target: w("x0^-1"),
        };
        assert!(matches!(ssp_bruteforce(&i, Exec::Sequential), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn rational_runs() {
        let inst = RationalInstance {
            spec: GroupSpec::free(2),
            automaton: Automaton {
                vertex_count: 2,
                edges: vec![Edge::new(0, 1, w("x0")), Edge::new(1, 0, w("x1"))],
                initial: 0,
                accepting: vec![1],
            },
            word: w("x0 x1 x0"),
        };
        assert_eq!(rational_bruteforce(&inst, 3).unwrap(), Some(vec![0, 1, 0]));
        assert_eq!(rational_bruteforce(&inst, 2).unwrap(), None);
    }
}
