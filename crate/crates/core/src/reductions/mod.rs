//! Instance transformations between the knapsack-type problems and the graph
//! word problem, with maps carrying certificates back to the source instance.

mod verify;

#[cfg(test)]
mod tests;

use serde::{Deserialize, Serialize};

use crate::agp::AgpInstance;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::groups::{word_problem, GroupSpec};
use crate::problems::{BkpInstance, BsmpInstance, Instance, KpInstance, RationalInstance, SspInstance};
use crate::word::{Letter, Word};

pub use verify::verify_certificate;

/// At most this many relators are checked by [`embed_instance`].
pub const RELATOR_CHECKS: usize = 10_000;

/// Chain `V₀ … V_k` with parallel edges `wᵢ` and `ε` from `V_{i−1}` to `Vᵢ`,
/// then `V_k → V_{k+1}` labeled `w⁻¹`. Edge `2i` carries `w_{i+1}`, edge
/// `2i + 1` is its ε sibling and edge `2k` is the final one.
pub fn ssp_to_agp(inst: &SspInstance) -> AgpInstance {
    let k = inst.elements.len();
    let mut g = LabeledGraph::new(k + 2, 0, k + 1);
    for (i, wi) in inst.elements.iter().enumerate() {
        g.add_edge(i, i + 1, wi.clone());
        g.add_edge(i, i + 1, Word::empty());
    }
    g.add_edge(k, k + 1, inst.target.inverse());
    AgpInstance::new(g, inst.spec.clone(), Word::empty())
}

/// Subset chosen by a path of [`ssp_to_agp`]'s graph.
pub fn ssp_path_to_subset(k: usize, path: &[usize]) -> Result<Vec<u8>> {
    if path.len() != k + 1 || path.iter().enumerate().any(|(i, &e)| e / 2 != i) {
        return Err(Error::MalformedCertificate("not a path of the subset-sum chain".into()));
    }
    Ok(path[..k].iter().map(|&e| u8::from(e % 2 == 0)).collect())
}

/// Path of [`ssp_to_agp`]'s graph selecting `bits`.
pub fn ssp_subset_to_path(bits: &[u8]) -> Vec<usize> {
    let k = bits.len();
    let mut path: Vec<usize> = bits
        .iter()
        .enumerate()
        .map(|(i, &b)| 2 * i + usize::from(b == 0))
        .collect();
    path.push(2 * k);
    path
}

/// Each element repeated `bound` times in place.
pub fn bkp_to_ssp(inst: &BkpInstance) -> SspInstance {
    SspInstance {
        spec: inst.spec.clone(),
        elements: inst
            .elements
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.clone(), inst.bound))
            .collect(),
        target: inst.target.clone(),
    }
}

/// Exponents from a subset of [`bkp_to_ssp`]'s image: chosen copies per block.
pub fn bkp_subset_to_exponents(bound: usize, bits: &[u8]) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    bits.chunks(bound)
        .map(|block| block.iter().map(|&b| u64::from(b)).sum())
        .collect()
}

/// Layered graph: vertices `v₀ … v_n` and `ω`; layer `i` has one edge per
/// generator and an ε edge, then `v_n → ω` is labeled `w⁻¹`. Generator `j` of
/// layer `i` is edge `i(k+1) + j`, the ε edge is `i(k+1) + k` and the final
/// edge is `n(k+1)`.
pub fn bsmp_to_agp(inst: &BsmpInstance) -> AgpInstance {
    let n = inst.bound;
    let mut g = LabeledGraph::new(n + 2, 0, n + 1);
    for i in 0..n {
        for wj in &inst.generators {
            g.add_edge(i, i + 1, wj.clone());
        }
        g.add_edge(i, i + 1, Word::empty());
    }
    g.add_edge(n, n + 1, inst.target.inverse());
    AgpInstance::new(g, inst.spec.clone(), Word::empty())
}

/// Generator sequence read off a path of [`bsmp_to_agp`]'s graph.
pub fn bsmp_path_to_sequence(k: usize, n: usize, path: &[usize]) -> Result<Vec<usize>> {
    let layer = k + 1;
    if path.len() != n + 1 || path.iter().enumerate().any(|(i, &e)| e / layer != i) {
        return Err(Error::MalformedCertificate("not a path of the layered graph".into()));
    }
    Ok(path[..n]
        .iter()
        .map(|&e| e % layer)
        .filter(|&j| j < k)
        .collect())
}

/// Whether [`agp_to_ssp`] pairs the group with `F₂` freely or directly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMode {
    #[default]
    Free,
    Direct,
}

/// Subset-sum image of a graph instance plus the edge behind each element.
#[derive(Clone, Debug)]
pub struct AgpToSsp {
    pub instance: SspInstance,
    /// Original edge per element; `None` for the folded target edge.
    pub edge_of: Vec<Option<usize>>,
}

impl AgpToSsp {
    /// The path chosen by a subset of the image.
    pub fn lift(&self, bits: &[u8]) -> Vec<usize> {
        bits.iter()
            .zip(&self.edge_of)
            .filter(|(&b, _)| b == 1)
            .filter_map(|(_, e)| *e)
            .collect()
    }
}

/// Over `G ∗ F₂` (or `G × F₂`) with fresh generators `x, y` appended to the
/// alphabet: vertices between α and ω get `v_j = x^j y x^j` in topological
/// order, edge `e: Vᵢ → V_j` becomes `vᵢ u_e v_j⁻¹` and the target is
/// `v₁ v_n⁻¹`. A nontrivial target is first folded into a hanging edge.
pub fn agp_to_ssp(inst: &AgpInstance, mode: CombineMode) -> Result<AgpToSsp> {
    inst.validate()?;
    let mut g = inst.graph.clone();
    let mut edge_of: Vec<Option<usize>> = (0..g.edges.len()).map(Some).collect();
    if !inst.target.is_empty() {
        let sink = g.add_vertex();
        g.add_edge(g.omega, sink, inst.target.inverse());
        g.omega = sink;
        edge_of.push(None);
    }
    let order = g.topological_sort()?;
    let f2 = GroupSpec::free(2);
    let spec = match mode {
        CombineMode::Free => GroupSpec::free_product(inst.spec.clone(), f2),
        CombineMode::Direct => GroupSpec::direct(inst.spec.clone(), f2),
    };
    let x = Letter::new(inst.spec.rank());
    let y = Letter::new(inst.spec.rank() + 1);
    let from_alpha = g.reachable_from(g.alpha);
    let to_omega = g.coreachable_to(g.omega);
    let kept = |v: usize| from_alpha[v] && to_omega[v];
    if !kept(g.alpha) {
        // No α → ω path at all; x ≠ 1 is never an empty-or-otherwise product.
        return Ok(AgpToSsp {
            instance: SspInstance {
                spec,
                elements: Vec::new(),
                target: Word(vec![x]),
            },
            edge_of: Vec::new(),
        });
    }
    let mut index = vec![usize::MAX; g.vertex_count];
    for (j, &v) in order.iter().filter(|&&v| kept(v)).enumerate() {
        index[v] = j + 1;
    }
    let vword = |j: usize| {
        let mut letters = vec![x; j];
        letters.push(y);
        letters.extend(std::iter::repeat_n(x, j));
        Word(letters)
    };
    let mut elements = Vec::new();
    let mut origin = Vec::new();
    for e in g.order_edges()? {
        let edge = &g.edges[e];
        if !(kept(edge.from) && kept(edge.to)) {
            continue;
        }
        let w = vword(index[edge.from])
            .concat(&edge.label)
            .concat(&vword(index[edge.to]).inverse());
        elements.push(w);
        origin.push(edge_of[e]);
    }
    let target = vword(index[g.alpha]).concat(&vword(index[g.omega]).inverse());
    Ok(AgpToSsp {
        instance: SspInstance {
            spec,
            elements,
            target,
        },
        edge_of: origin,
    })
}

/// One subset-sum instance over `G × ℤ` per length `m = 0 … n`: `m` blocks
/// of `(w₁, 1) … (w_k, 1)` with target `(w, m)`. The source instance is
/// positive iff some member is.
pub fn bsmp_to_ssp_direct_z(inst: &BsmpInstance) -> Vec<SspInstance> {
    let spec = GroupSpec::direct(inst.spec.clone(), GroupSpec::integers());
    let z = Letter::new(inst.spec.rank());
    let tagged: Vec<Word> = inst
        .generators
        .iter()
        .map(|g| g.concat(&Word(vec![z])))
        .collect();
    (0..=inst.bound)
        .map(|m| {
            let mut target = inst.target.clone();
            target.0.extend(std::iter::repeat_n(z, m));
            SspInstance {
                spec: spec.clone(),
                elements: tagged.iter().cycle().take(m * tagged.len()).cloned().collect(),
                target,
            }
        })
        .collect()
}

/// Generator sequence from a subset of a [`bsmp_to_ssp_direct_z`] member.
pub fn bsmp_subset_to_sequence(k: usize, bits: &[u8]) -> Vec<usize> {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(i, _)| i % k.max(1))
        .collect()
}

fn substitute(word: &Word, images: &[Word]) -> Word {
    let mut out = Word::empty();
    for &l in word.letters() {
        let img = &images[l.generator];
        if l.inverse {
            out.extend(&img.inverse());
        } else {
            out.extend(img);
        }
    }
    out
}

/// Rewrites an instance over `H` letterwise into `target_spec` through
/// `images[i]` = image of generator `i`. Up to [`RELATOR_CHECKS`] defining
/// relators of `H` are checked to map to the identity.
pub fn embed_instance(inst: &Instance, target_spec: &GroupSpec, images: &[Word]) -> Result<Instance> {
    inst.validate()?;
    let source = inst.spec();
    if images.len() != source.rank() {
        return Err(Error::InvalidMap(format!(
            "{} images for an alphabet of size {}",
            images.len(),
            source.rank()
        )));
    }
    for img in images {
        target_spec
            .check_word(img)
            .map_err(|e| Error::InvalidMap(e.to_string()))?;
    }
    for rel in source.relators().iter().take(RELATOR_CHECKS) {
        if !word_problem(target_spec, &substitute(rel, images))? {
            return Err(Error::InvalidMap(format!("relator `{rel}` is not preserved")));
        }
    }
    let sub = |w: &Word| substitute(w, images);
    let subs = |ws: &[Word]| ws.iter().map(sub).collect::<Vec<_>>();
    let spec = target_spec.clone();
    Ok(match inst {
        Instance::Ssp(i) => Instance::Ssp(SspInstance {
            spec,
            elements: subs(&i.elements),
            target: sub(&i.target),
        }),
        Instance::Bkp(i) => Instance::Bkp(BkpInstance {
            spec,
            elements: subs(&i.elements),
            target: sub(&i.target),
            bound: i.bound,
        }),
        Instance::Bsmp(i) => Instance::Bsmp(BsmpInstance {
            spec,
            generators: subs(&i.generators),
            target: sub(&i.target),
            bound: i.bound,
        }),
        Instance::Kp(i) => Instance::Kp(KpInstance {
            spec,
            elements: subs(&i.elements),
            target: sub(&i.target),
        }),
        Instance::Agp(i) => {
            let mut graph = i.graph.clone();
            for e in &mut graph.edges {
                e.label = sub(&e.label);
            }
            Instance::Agp(AgpInstance::new(graph, spec, sub(&i.target)))
        }
        Instance::Rational(i) => {
            let mut automaton = i.automaton.clone();
            for e in &mut automaton.edges {
                e.label = sub(&e.label);
            }
            Instance::Rational(RationalInstance {
                spec,
                automaton,
                word: sub(&i.word),
            })
        }
    })
}
