//! Knapsack-type instances, the tagged problem file and certificates.
//!
//! Bounds written `1^m` in the literature are stored as integers but count
//! as `m` toward instance size.

use serde::{Deserialize, Serialize};

use crate::agp::{AgpInstance, Automaton};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::word::Word;

/// Is `g` a product of a subset of `g₁ … g_k`, in order?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SspInstance {
    pub spec: GroupSpec,
    pub elements: Vec<Word>,
    #[serde(default)]
    pub target: Word,
}

/// Like SSP with exponents `0 ≤ εᵢ ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BkpInstance {
    pub spec: GroupSpec,
    pub elements: Vec<Word>,
    #[serde(default)]
    pub target: Word,
    pub bound: usize,
}

/// Is `g` a product of at most `bound` generators (with repetition)?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsmpInstance {
    pub spec: GroupSpec,
    pub generators: Vec<Word>,
    #[serde(default)]
    pub target: Word,
    pub bound: usize,
}

/// Knapsack: exponents are unbounded non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpInstance {
    pub spec: GroupSpec,
    pub elements: Vec<Word>,
    #[serde(default)]
    pub target: Word,
}

/// Does the automaton accept a word equal to `word` in the group?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInstance {
    pub spec: GroupSpec,
    pub automaton: Automaton,
    #[serde(default)]
    pub word: Word,
}

/// Any instance, tagged by `"problem"` in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "lowercase")]
pub enum Instance {
    Ssp(SspInstance),
    Bkp(BkpInstance),
    Bsmp(BsmpInstance),
    Kp(KpInstance),
    Agp(AgpInstance),
    Rational(RationalInstance),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Ssp,
    Bkp,
    Bsmp,
    Kp,
    Agp,
    Rational,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::Ssp,
        ProblemKind::Bkp,
        ProblemKind::Bsmp,
        ProblemKind::Kp,
        ProblemKind::Agp,
        ProblemKind::Rational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Ssp => "ssp",
            ProblemKind::Bkp => "bkp",
            ProblemKind::Bsmp => "bsmp",
            ProblemKind::Kp => "kp",
            ProblemKind::Agp => "agp",
            ProblemKind::Rational => "rational",
        }
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown problem `{s}`")))
    }
}

fn check_words<'a>(spec: &GroupSpec, words: impl IntoIterator<Item = &'a Word>) -> Result<()> {
    words.into_iter().try_for_each(|w| spec.check_word(w))
}

impl Instance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::Ssp(_) => ProblemKind::Ssp,
            Instance::Bkp(_) => ProblemKind::Bkp,
            Instance::Bsmp(_) => ProblemKind::Bsmp,
            Instance::Kp(_) => ProblemKind::Kp,
            Instance::Agp(_) => ProblemKind::Agp,
            Instance::Rational(_) => ProblemKind::Rational,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        match self {
            Instance::Ssp(i) => &i.spec,
            Instance::Bkp(i) => &i.spec,
            Instance::Bsmp(i) => &i.spec,
            Instance::Kp(i) => &i.spec,
            Instance::Agp(i) => &i.spec,
            Instance::Rational(i) => &i.spec,
        }
    }

    /// Every word fits the alphabet and every index is in range.
    pub fn validate(&self) -> Result<()> {
        match self {
            Instance::Ssp(i) => check_words(&i.spec, i.elements.iter().chain([&i.target])),
            Instance::Bkp(i) => {
                if i.bound == 0 {
                    return Err(Error::Malformed("bkp bound must be at least 1".into()));
                }
                check_words(&i.spec, i.elements.iter().chain([&i.target]))
            }
            Instance::Bsmp(i) => check_words(&i.spec, i.generators.iter().chain([&i.target])),
            Instance::Kp(i) => check_words(&i.spec, i.elements.iter().chain([&i.target])),
            Instance::Agp(i) => i.validate(),
            Instance::Rational(i) => {
                i.automaton.validate()?;
                check_words(&i.spec, i.automaton.edges.iter().map(|e| &e.label))?;
                i.spec.check_word(&i.word)
            }
        }
    }

    /// Input size with unary bounds counted at face value.
    pub fn size(&self) -> usize {
        let total = |ws: &[Word], t: &Word| ws.iter().map(Word::len).sum::<usize>() + t.len();
        match self {
            Instance::Ssp(i) => total(&i.elements, &i.target),
            Instance::Bkp(i) => total(&i.elements, &i.target) + i.bound,
            Instance::Bsmp(i) => total(&i.generators, &i.target) + i.bound,
            Instance::Kp(i) => total(&i.elements, &i.target),
            Instance::Agp(i) => i.graph.size() + i.target.len(),
            Instance::Rational(i) => {
                i.automaton.vertex_count
                    + i.automaton.edges.iter().map(|e| e.label.len() + 1).sum::<usize>()
                    + i.word.len()
            }
        }
    }
}

/// Machine-checkable witness of a positive answer.
///
/// All positions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    /// Edge positions of a path (AGP) or an accepted run (rational).
    Path { edges: Vec<usize> },
    /// `εᵢ ∈ {0, 1}` per element (SSP).
    Subset { bits: Vec<u8> },
    /// Generator positions `i₁ … i_s` (BSMP).
    Sequence { indices: Vec<usize> },
    /// `nᵢ ≥ 0` per element (BKP, KP).
    Exponents { exponents: Vec<u64> },
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::Path { .. } => "path",
            Certificate::Subset { .. } => "subset",
            Certificate::Sequence { .. } => "sequence",
            Certificate::Exponents { .. } => "exponents",
        }
    }
}
