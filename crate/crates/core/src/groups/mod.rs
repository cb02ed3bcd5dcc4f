//! Group descriptions, element arithmetic and normal forms.
//!
//! Every group has a fixed finite alphabet. Composite groups use the left
//! factor's generators first, followed by the right factor's generators
//! shifted by the left rank. Finite groups use one generator per element.

mod amalgam;
mod element;
mod finite;
mod normal_form;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

pub use amalgam::Amalgam;
pub use element::Elem;
pub use finite::FiniteGroup;
pub use normal_form::{
    amalgam_normal_form, free_product_normal_form, free_reduce, syllable_length, word_problem,
    AmalgamNormalForm, FreeProductNormalForm, Syllable,
};

/// Which factor of a product a letter, syllable or element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

/// Recursive description of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub enum GroupSpec {
    Free { rank: usize },
    Finite(Arc<FiniteGroup>),
    /// Modulus 0 encodes an infinite cyclic coordinate.
    Abelian { moduli: Vec<u64> },
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    FreeProduct(Box<GroupSpec>, Box<GroupSpec>),
    Amalgam(Arc<Amalgam>),
}

impl GroupSpec {
    pub fn free(rank: usize) -> Self {
        GroupSpec::Free { rank }
    }

    pub fn finite(group: FiniteGroup) -> Self {
        GroupSpec::Finite(Arc::new(group))
    }

    pub fn cyclic(n: usize) -> Self {
        GroupSpec::finite(FiniteGroup::cyclic(n))
    }

    pub fn abelian(moduli: Vec<u64>) -> Self {
        GroupSpec::Abelian { moduli }
    }

    /// The infinite cyclic group as a one-coordinate abelian group.
    pub fn integers() -> Self {
        GroupSpec::abelian(vec![0])
    }

    pub fn direct(left: GroupSpec, right: GroupSpec) -> Self {
        GroupSpec::Direct(Box::new(left), Box::new(right))
    }

    pub fn free_product(left: GroupSpec, right: GroupSpec) -> Self {
        GroupSpec::FreeProduct(Box::new(left), Box::new(right))
    }

    /// `left *_C right` where `embed_*[c]` is the image of element `c` of `c_group`.
    pub fn amalgam(
        left: GroupSpec,
        right: GroupSpec,
        c_group: FiniteGroup,
        embed_left: Vec<Word>,
        embed_right: Vec<Word>,
    ) -> Result<Self> {
        Amalgam::new(left, right, c_group, embed_left, embed_right)
            .map(|a| GroupSpec::Amalgam(Arc::new(a)))
    }

    /// Alphabet size.
    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Free { rank } => *rank,
            GroupSpec::Finite(g) => g.order(),
            GroupSpec::Abelian { moduli } => moduli.len(),
            GroupSpec::Direct(l, r) | GroupSpec::FreeProduct(l, r) => l.rank() + r.rank(),
            GroupSpec::Amalgam(a) => a.left().rank() + a.right().rank(),
        }
    }

    /// Left and right factors of a binary construction.
    pub fn factors(&self) -> Option<(&GroupSpec, &GroupSpec)> {
        match self {
            GroupSpec::Direct(l, r) | GroupSpec::FreeProduct(l, r) => Some((l, r)),
            GroupSpec::Amalgam(a) => Some((a.left(), a.right())),
            _ => None,
        }
    }

    pub fn factor(&self, side: Side) -> Option<&GroupSpec> {
        self.factors().map(|(l, r)| match side {
            Side::Left => l,
            Side::Right => r,
        })
    }

    /// Splits a letter of a binary construction into its side and local letter.
    pub fn locate(&self, letter: Letter) -> Option<(Side, Letter)> {
        let (left, _) = self.factors()?;
        let offset = left.rank();
        if letter.generator < offset {
            Some((Side::Left, letter))
        } else {
            Some((
                Side::Right,
                Letter {
                    generator: letter.generator - offset,
                    inverse: letter.inverse,
                },
            ))
        }
    }

    /// Generator offset of a side's letters in this construction's alphabet.
    pub fn offset(&self, side: Side) -> usize {
        match side {
            Side::Left => 0,
            Side::Right => self.factors().map_or(0, |(l, _)| l.rank()),
        }
    }

    pub fn is_basic(&self) -> bool {
        matches!(
            self,
            GroupSpec::Free { .. } | GroupSpec::Finite(_) | GroupSpec::Abelian { .. }
        )
    }

    /// Finite groups: finite tables, torsion abelian groups, trivial free
    /// groups and direct products of those.
    pub fn is_finite(&self) -> bool {
        match self {
            GroupSpec::Free { rank } => *rank == 0,
            GroupSpec::Finite(_) => true,
            GroupSpec::Abelian { moduli } => moduli.iter().all(|&q| q > 0),
            GroupSpec::Direct(l, r) => l.is_finite() && r.is_finite(),
            GroupSpec::FreeProduct(l, r) => {
                (l.is_finite() && r.is_trivial()) || (r.is_finite() && l.is_trivial())
            }
            GroupSpec::Amalgam(_) => false,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            GroupSpec::Free { rank } => *rank == 0,
            GroupSpec::Finite(g) => g.order() == 1,
            GroupSpec::Abelian { moduli } => moduli.iter().all(|&q| q == 1),
            GroupSpec::Direct(l, r) | GroupSpec::FreeProduct(l, r) => {
                l.is_trivial() && r.is_trivial()
            }
            GroupSpec::Amalgam(_) => false,
        }
    }

    /// Abelian, finite, free of rank ≤ 1, or direct products of these. These are
    /// the direct factors that can be eliminated from graph word problems.
    pub fn is_abelian_by_finite(&self) -> bool {
        match self {
            GroupSpec::Free { rank } => *rank <= 1,
            GroupSpec::Finite(_) | GroupSpec::Abelian { .. } => true,
            GroupSpec::Direct(l, r) => l.is_abelian_by_finite() && r.is_abelian_by_finite(),
            _ => self.is_finite(),
        }
    }

    /// Groups whose word problem is free reduction on their own alphabet:
    /// free groups and the one-coordinate group ℤ.
    pub fn is_free_like(&self) -> bool {
        match self {
            GroupSpec::Free { .. } => true,
            GroupSpec::Abelian { moduli } => moduli.as_slice() == [0],
            _ => false,
        }
    }

    /// Number of elements for finite groups.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Free { rank: 0 } => Some(1),
            GroupSpec::Finite(g) => Some(g.order() as u64),
            GroupSpec::Abelian { moduli } if moduli.iter().all(|&q| q > 0) => {
                Some(moduli.iter().product())
            }
            GroupSpec::Direct(l, r) => Some(l.order()? * r.order()?),
            _ => None,
        }
    }

    pub fn check_letter(&self, letter: Letter) -> Result<()> {
        if letter.generator < self.rank() {
            Ok(())
        } else {
            Err(Error::Malformed(format!(
                "letter {letter} outside alphabet of size {}",
                self.rank()
            )))
        }
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        word.letters().iter().try_for_each(|&l| self.check_letter(l))
    }

    /// Validates the word and rewrites inverse letters of finite factors as the
    /// positive letter of the inverse element.
    pub fn normalize_word(&self, word: &Word) -> Result<Word> {
        self.check_word(word)?;
        Ok(Word(
            word.letters()
                .iter()
                .map(|&l| self.normalize_letter(l))
                .collect(),
        ))
    }

    fn normalize_letter(&self, letter: Letter) -> Letter {
        match self {
            GroupSpec::Finite(g) if letter.inverse => Letter::new(g.inv(letter.generator)),
            GroupSpec::Free { .. } | GroupSpec::Finite(_) | GroupSpec::Abelian { .. } => letter,
            _ => {
                let (side, local) = self.locate(letter).expect("composite");
                let factor = self.factor(side).expect("composite");
                factor
                    .normalize_letter(local)
                    .shifted(self.offset(side))
            }
        }
    }

    /// Defining relators of the presentation on this alphabet. Finite tables
    /// contribute one relator per product, so the list can be long.
    pub fn relators(&self) -> Vec<Word> {
        match self {
            GroupSpec::Free { .. } => Vec::new(),
            GroupSpec::Finite(g) => {
                let mut out = Vec::with_capacity(g.order() * g.order());
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        let ab = g.mul(a, b);
                        out.push(Word(vec![
                            Letter::new(a),
                            Letter::new(b),
                            Letter::new(g.inv(ab)),
                        ]));
                    }
                }
                out
            }
            GroupSpec::Abelian { moduli } => {
                let mut out = Vec::new();
                for (i, &q) in moduli.iter().enumerate() {
                    if q > 0 {
                        out.push(Word(vec![Letter::new(i); q as usize]));
                    }
                    for j in i + 1..moduli.len() {
                        out.push(commutator(Letter::new(i), Letter::new(j)));
                    }
                }
                out
            }
            GroupSpec::Direct(l, r) => {
                let offset = l.rank();
                let mut out = l.relators();
                out.extend(r.relators().iter().map(|w| w.shifted(offset)));
                for a in 0..l.rank() {
                    for b in 0..r.rank() {
                        out.push(commutator(Letter::new(a), Letter::new(b + offset)));
                    }
                }
                out
            }
            GroupSpec::FreeProduct(l, r) => {
                let mut out = l.relators();
                out.extend(r.relators().iter().map(|w| w.shifted(l.rank())));
                out
            }
            GroupSpec::Amalgam(a) => {
                let offset = a.left().rank();
                let mut out = a.left().relators();
                out.extend(a.right().relators().iter().map(|w| w.shifted(offset)));
                for c in 0..a.c_group().order() {
                    let lhs = &a.embed_words(Side::Left)[c];
                    let rhs = a.embed_words(Side::Right)[c].shifted(offset);
                    out.push(lhs.concat(&rhs.inverse()));
                }
                out
            }
        }
    }
}

fn commutator(a: Letter, b: Letter) -> Word {
    Word(vec![a, b, a.inverted(), b.inverted()])
}

/// JSON shape of a [`GroupSpec`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecJson {
    Free {
        rank: usize,
    },
    Finite {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default)]
        identity_index: usize,
    },
    Abelian {
        moduli: Vec<u64>,
    },
    Direct {
        left: Box<SpecJson>,
        right: Box<SpecJson>,
    },
    FreeProduct {
        left: Box<SpecJson>,
        right: Box<SpecJson>,
    },
    Amalgam {
        left: Box<SpecJson>,
        right: Box<SpecJson>,
        c_order: usize,
        c_table: Vec<Vec<usize>>,
        #[serde(default)]
        c_identity_index: usize,
        embed_left: Vec<Word>,
        embed_right: Vec<Word>,
    },
}

impl TryFrom<SpecJson> for GroupSpec {
    type Error = Error;

    fn try_from(json: SpecJson) -> Result<Self> {
        Ok(match json {
            SpecJson::Free { rank } => GroupSpec::free(rank),
            SpecJson::Finite {
                order,
                table,
                identity_index,
            } => {
                if table.len() != order {
                    return Err(Error::InvalidSpec(format!(
                        "finite table has {} rows, order is {order}",
                        table.len()
                    )));
                }
                GroupSpec::finite(FiniteGroup::new(table, identity_index)?)
            }
            SpecJson::Abelian { moduli } => GroupSpec::abelian(moduli),
            SpecJson::Direct { left, right } => {
                GroupSpec::direct((*left).try_into()?, (*right).try_into()?)
            }
            SpecJson::FreeProduct { left, right } => {
                GroupSpec::free_product((*left).try_into()?, (*right).try_into()?)
            }
            SpecJson::Amalgam {
                left,
                right,
                c_order,
                c_table,
                c_identity_index,
                embed_left,
                embed_right,
            } => {
                if c_table.len() != c_order {
                    return Err(Error::InvalidSpec(format!(
                        "C table has {} rows, c_order is {c_order}",
                        c_table.len()
                    )));
                }
                GroupSpec::amalgam(
                    (*left).try_into()?,
                    (*right).try_into()?,
                    FiniteGroup::new(c_table, c_identity_index)?,
                    embed_left,
                    embed_right,
                )?
            }
        })
    }
}

impl From<GroupSpec> for SpecJson {
    fn from(spec: GroupSpec) -> Self {
        match spec {
            GroupSpec::Free { rank } => SpecJson::Free { rank },
            GroupSpec::Finite(g) => SpecJson::Finite {
                order: g.order(),
                table: g.rows(),
                identity_index: g.identity(),
            },
            GroupSpec::Abelian { moduli } => SpecJson::Abelian { moduli },
            GroupSpec::Direct(l, r) => SpecJson::Direct {
                left: Box::new((*l).into()),
                right: Box::new((*r).into()),
            },
            GroupSpec::FreeProduct(l, r) => SpecJson::FreeProduct {
                left: Box::new((*l).into()),
                right: Box::new((*r).into()),
            },
            GroupSpec::Amalgam(a) => SpecJson::Amalgam {
                left: Box::new(a.left().clone().into()),
                right: Box::new(a.right().clone().into()),
                c_order: a.c_group().order(),
                c_table: a.c_group().rows(),
                c_identity_index: a.c_group().identity(),
                embed_left: a.embed_words(Side::Left).to_vec(),
                embed_right: a.embed_words(Side::Right).to_vec(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn alphabet_offsets() {
        let spec = GroupSpec::free_product(GroupSpec::free(2), GroupSpec::cyclic(3));
        assert_eq!(spec.rank(), 5);
        assert_eq!(spec.locate(Letter::new(3)), Some((Side::Right, Letter::new(1))));
        assert_eq!(spec.locate(Letter::inv(1)), Some((Side::Left, Letter::inv(1))));
    }

    #[test]
    fn finite_letters_normalize_to_positive() {
        let spec = GroupSpec::direct(GroupSpec::free(1), GroupSpec::cyclic(3));
        assert_eq!(spec.normalize_word(&w("x0^-1 x2^-1")).unwrap(), w("x0^-1 x3"));
        assert!(spec.normalize_word(&w("x4")).is_err());
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"kind":"free_product","left":{"kind":"free","rank":2},
                       "right":{"kind":"finite","order":2,"table":[[0,1],[1,0]]}}"#;
        let spec: GroupSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec.rank(), 4);
        let back: GroupSpec =
            serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn bad_finite_table_rejected_at_load() {
        let json = r#"{"kind":"finite","order":2,"table":[[0,1],[1,1]]}"#;
        assert!(serde_json::from_str::<GroupSpec>(json).is_err());
    }

    #[test]
    fn relators_hold() {
        let specs = [
            GroupSpec::abelian(vec![0, 4]),
            GroupSpec::cyclic(5),
            GroupSpec::direct(GroupSpec::free(2), GroupSpec::cyclic(2)),
        ];
        for spec in specs {
            for r in spec.relators() {
                assert!(word_problem(&spec, &r).unwrap(), "{r}");
            }
        }
    }
}
