//! Named groups and seeded random instances, optionally with a planted
//! positive certificate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agp::{AgpInstance, Automaton};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};
use crate::groups::{FiniteGroup, GroupSpec};
use crate::problems::{
    BkpInstance, BsmpInstance, Certificate, Instance, KpInstance, ProblemKind, RationalInstance,
    SspInstance,
};
use crate::word::{Letter, Word};

/// Names accepted by [`named_spec`].
pub const SPEC_NAMES: &[&str] = &[
    "free1",
    "free2",
    "z",
    "z2",
    "zmod2",
    "zmod3",
    "zmod6",
    "z2xz3",
    "f2xz",
    "zstarz",
    "zstarz2",
    "z4starz6",
    "f2starz2",
    "freeprod_xy",
    "amalgam_z4z6",
    "z2starz3",
    "nested_amalgam",
];

/// `ℤ/4 ∗_{ℤ/2} ℤ/6`, identifying `2 ∈ ℤ/4` with `3 ∈ ℤ/6`.
pub fn amalgam_z4z6() -> GroupSpec {
    GroupSpec::amalgam(
        GroupSpec::cyclic(4),
        GroupSpec::cyclic(6),
        FiniteGroup::cyclic(2),
        vec![Word::empty(), Word(vec![Letter::new(2)])],
        vec![Word::empty(), Word(vec![Letter::new(3)])],
    )
    .expect("valid amalgam")
}

pub fn named_spec(name: &str) -> Result<GroupSpec> {
    let z = GroupSpec::integers;
    Ok(match name {
        "free1" => GroupSpec::free(1),
        "free2" => GroupSpec::free(2),
        "z" => z(),
        "z2" => GroupSpec::abelian(vec![0, 0]),
        "zmod2" => GroupSpec::cyclic(2),
        "zmod3" => GroupSpec::cyclic(3),
        "zmod6" => GroupSpec::cyclic(6),
        "z2xz3" => GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::cyclic(3)),
        "f2xz" => GroupSpec::direct(GroupSpec::free(2), z()),
        "zstarz" => GroupSpec::free_product(z(), z()),
        "zstarz2" => GroupSpec::free_product(z(), GroupSpec::cyclic(2)),
        "z4starz6" => GroupSpec::free_product(GroupSpec::cyclic(4), GroupSpec::cyclic(6)),
        "f2starz2" => GroupSpec::free_product(GroupSpec::free(2), GroupSpec::cyclic(2)),
        "freeprod_xy" => GroupSpec::free_product(GroupSpec::free(1), GroupSpec::free(1)),
        "amalgam_z4z6" => amalgam_z4z6(),
        "z2starz3" => GroupSpec::free_product(GroupSpec::cyclic(2), GroupSpec::cyclic(3)),
        // Products of amalgams have no factor solver; kept to exercise errors.
        "nested_amalgam" => GroupSpec::free_product(amalgam_z4z6(), amalgam_z4z6()),
        _ => {
            return Err(Error::Malformed(format!(
                "unknown group `{name}`; expected one of {}",
                SPEC_NAMES.join(", ")
            )))
        }
    })
}

/// Letters worth drawing from: both signs for infinite-order generators,
/// positive letters for non-identity elements of finite tables.
pub fn spec_letters(spec: &GroupSpec) -> Vec<Letter> {
    match spec {
        GroupSpec::Free { rank } => (0..*rank)
            .flat_map(|i| [Letter::new(i), Letter::inv(i)])
            .collect(),
        GroupSpec::Finite(g) => (0..g.order())
            .filter(|&i| i != g.identity())
            .map(Letter::new)
            .collect(),
        GroupSpec::Abelian { moduli } => moduli
            .iter()
            .enumerate()
            .flat_map(|(i, &q)| {
                if q == 0 {
                    vec![Letter::new(i), Letter::inv(i)]
                } else {
                    vec![Letter::new(i)]
                }
            })
            .collect(),
        _ => {
            let (l, r) = spec.factors().expect("composite");
            let offset = l.rank();
            let mut out = spec_letters(l);
            out.extend(spec_letters(r).into_iter().map(|x| x.shifted(offset)));
            out
        }
    }
}

/// Size knobs; unused ones are ignored by the problem at hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    /// Elements or generators.
    pub k: usize,
    /// Maximal word length of elements and labels.
    pub max_len: usize,
    /// Graph or automaton vertices.
    pub vertices: usize,
    /// Graph or automaton edges.
    pub edges: usize,
    /// BKP/BSMP bound.
    pub bound: usize,
    /// Largest planted KP exponent.
    pub max_exp: u64,
    pub planted: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            k: 4,
            max_len: 3,
            vertices: 6,
            edges: 9,
            bound: 2,
            max_exp: 3,
            planted: false,
        }
    }
}

/// A generated instance and, when planted, a certificate for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub instance: Instance,
    pub certificate: Option<Certificate>,
}

pub fn random_word(rng: &mut impl Rng, letters: &[Letter], max_len: usize) -> Word {
    if letters.is_empty() {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| *letters.choose(rng).expect("nonempty")).collect())
}

fn power_product(elements: &[Word], exps: &[u64]) -> Word {
    let mut out = Word::empty();
    for (g, &n) in elements.iter().zip(exps) {
        out.extend(&g.power(n as usize));
    }
    out
}

/// Random DAG on `0..n` with α = 0, ω = n − 1; edges go from lower to higher
/// index. When `planted`, the first edges form an α → ω path whose position
/// list is returned.
pub fn random_dag(
    rng: &mut impl Rng,
    letters: &[Letter],
    n: usize,
    m: usize,
    max_len: usize,
    planted: bool,
) -> (LabeledGraph, Vec<usize>) {
    let n = n.max(2);
    let mut g = LabeledGraph::new(n, 0, n - 1);
    let mut path = Vec::new();
    if planted {
        let mut v = 0;
        while v < n - 1 {
            let next = rng.gen_range(v + 1..n);
            path.push(g.add_edge(v, next, random_word(rng, letters, max_len)));
            v = next;
        }
    }
    while g.edges.len() < m.max(path.len()) {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        g.add_edge(a, b, random_word(rng, letters, max_len));
    }
    (g, path)
}

/// Random automaton with arbitrary (possibly cyclic) transitions.
pub fn random_automaton(
    rng: &mut impl Rng,
    letters: &[Letter],
    n: usize,
    m: usize,
    max_len: usize,
) -> Automaton {
    let n = n.max(1);
    let edges = (0..m)
        .map(|_| {
            Edge::new(
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                random_word(rng, letters, max_len),
            )
        })
        .collect();
    let mut accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    if accepting.is_empty() {
        accepting.push(rng.gen_range(0..n));
    }
    Automaton {
        vertex_count: n,
        edges,
        initial: 0,
        accepting,
    }
}

/// Deterministic for a fixed `(problem, spec, seed, params)`.
pub fn generate(problem: ProblemKind, spec: &GroupSpec, seed: u64, p: &GenParams) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let letters = spec_letters(spec);
    let words = |rng: &mut ChaCha8Rng, k: usize| -> Vec<Word> {
        (0..k).map(|_| random_word(rng, &letters, p.max_len)).collect()
    };
    let spec = spec.clone();
    match problem {
        ProblemKind::Ssp => {
            let elements = words(rng, p.k);
            let (target, cert) = if p.planted {
                let bits: Vec<u8> = (0..p.k).map(|_| u8::from(rng.gen_bool(0.5))).collect();
                let exps: Vec<u64> = bits.iter().map(|&b| u64::from(b)).collect();
                (power_product(&elements, &exps), Some(Certificate::Subset { bits }))
            } else {
                (random_word(rng, &letters, p.max_len), None)
            };
            Generated {
                instance: Instance::Ssp(SspInstance {
                    spec,
                    elements,
                    target,
                }),
                certificate: cert,
            }
        }
        ProblemKind::Bkp | ProblemKind::Kp => {
            let elements = words(rng, p.k);
            let cap = if problem == ProblemKind::Bkp {
                p.bound.max(1) as u64
            } else {
                p.max_exp
            };
            let (target, cert) = if p.planted {
                let exponents: Vec<u64> = (0..p.k).map(|_| rng.gen_range(0..=cap)).collect();
                (
                    power_product(&elements, &exponents),
                    Some(Certificate::Exponents { exponents }),
                )
            } else {
                (random_word(rng, &letters, p.max_len), None)
            };
            let instance = if problem == ProblemKind::Bkp {
                Instance::Bkp(BkpInstance {
                    spec,
                    elements,
                    target,
                    bound: p.bound.max(1),
                })
            } else {
                Instance::Kp(KpInstance {
                    spec,
                    elements,
                    target,
                })
            };
            Generated {
                instance,
                certificate: cert,
            }
        }
        ProblemKind::Bsmp => {
            let generators = words(rng, p.k.max(1));
            let (target, cert) = if p.planted {
                let s = rng.gen_range(0..=p.bound);
                let indices: Vec<usize> = (0..s).map(|_| rng.gen_range(0..generators.len())).collect();
                let mut t = Word::empty();
                for &j in &indices {
                    t.extend(&generators[j]);
                }
                (t, Some(Certificate::Sequence { indices }))
            } else {
                (random_word(rng, &letters, p.max_len), None)
            };
            Generated {
                instance: Instance::Bsmp(BsmpInstance {
                    spec,
                    generators,
                    target,
                    bound: p.bound,
                }),
                certificate: cert,
            }
        }
        ProblemKind::Agp => {
            let (graph, path) =
                random_dag(rng, &letters, p.vertices, p.edges, p.max_len, p.planted);
            let target = if p.planted {
                graph.path_label(&path)
            } else {
                Word::empty()
            };
            Generated {
                instance: Instance::Agp(AgpInstance::new(graph, spec, target)),
                certificate: p.planted.then_some(Certificate::Path { edges: path }),
            }
        }
        ProblemKind::Rational => {
            let mut automaton = random_automaton(rng, &letters, p.vertices, p.edges, p.max_len);
            let (word, cert) = if p.planted {
                let mut out = vec![Vec::new(); automaton.vertex_count];
                for (i, e) in automaton.edges.iter().enumerate() {
                    out[e.from].push(i);
                }
                let steps = rng.gen_range(0..=p.vertices);
                let mut at = automaton.initial;
                let mut run = Vec::new();
                for _ in 0..steps {
                    let Some(&e) = out[at].choose(rng) else { break };
                    run.push(e);
                    at = automaton.edges[e].to;
                }
                if !automaton.accepting.contains(&at) {
                    automaton.accepting.push(at);
                }
                let mut word = Word::empty();
                for &e in &run {
                    word.extend(&automaton.edges[e].label);
                }
                (word, Some(Certificate::Path { edges: run }))
            } else {
                (random_word(rng, &letters, p.max_len), None)
            };
            Generated {
                instance: Instance::Rational(RationalInstance {
                    spec,
                    automaton,
                    word,
                }),
                certificate: cert,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::verify_certificate;

    #[test]
    fn every_name_builds() {
        for name in SPEC_NAMES {
            let spec = named_spec(name).unwrap();
            assert!(!spec_letters(&spec).is_empty() || spec.rank() == 0, "{name}");
        }
        assert!(named_spec("nope").is_err());
    }

    #[test]
    fn deterministic_and_planted() {
        for problem in ProblemKind::ALL {
            for name in ["free2", "zstarz", "amalgam_z4z6", "z2xz3"] {
                let spec = named_spec(name).unwrap();
                let p = GenParams {
                    planted: true,
                    ..GenParams::default()
                };
                let a = generate(problem, &spec, 7, &p);
                assert_eq!(a, generate(problem, &spec, 7, &p));
                a.instance.validate().unwrap();
                let cert = a.certificate.unwrap();
                assert!(verify_certificate(&a.instance, &cert).unwrap(), "{problem:?} {name}");
            }
        }
    }
}
