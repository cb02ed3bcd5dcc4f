use super::{Elem, GroupSpec, Side};
use crate::error::{Error, Result};
use crate::word::Word;

/// One factor block of a product normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub side: Side,
    pub element: Elem,
}

/// Alternating nontrivial syllables of an element of `G * H`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeProductNormalForm {
    pub syllables: Vec<Syllable>,
}

impl FreeProductNormalForm {
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Each syllable spelled in its factor's own alphabet.
    pub fn words(&self, spec: &GroupSpec) -> Vec<(Side, Word)> {
        self.syllables
            .iter()
            .map(|s| {
                let factor = spec.factor(s.side).expect("product spec");
                (s.side, factor.to_word(&s.element))
            })
            .collect()
    }
}

/// `c · x₁ ⋯ xₙ` for an element of `G *_C H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamNormalForm {
    pub c_prefix: usize,
    pub reps: Vec<Syllable>,
}

fn to_syllables(v: Vec<(Side, Elem)>) -> Vec<Syllable> {
    v.into_iter()
        .map(|(side, element)| Syllable { side, element })
        .collect()
}

/// Freely reduces a word over a free group of the given rank.
pub fn free_reduce(word: &Word, rank: usize) -> Result<Word> {
    let spec = GroupSpec::free(rank);
    spec.check_word(word)?;
    match spec.eval(word) {
        Elem::Free(letters) => Ok(Word(letters)),
        _ => unreachable!(),
    }
}

/// Whether `word` represents the identity.
pub fn word_problem(spec: &GroupSpec, word: &Word) -> Result<bool> {
    spec.check_word(word)?;
    Ok(spec.is_identity(&spec.eval(word)))
}

pub fn free_product_normal_form(spec: &GroupSpec, word: &Word) -> Result<FreeProductNormalForm> {
    if !matches!(spec, GroupSpec::FreeProduct(..)) {
        return Err(Error::Unsupported("free product normal form of a non-free-product".into()));
    }
    spec.check_word(word)?;
    match spec.eval(word) {
        Elem::Syllables(s) => Ok(FreeProductNormalForm {
            syllables: to_syllables(s),
        }),
        _ => unreachable!(),
    }
}

pub fn amalgam_normal_form(spec: &GroupSpec, word: &Word) -> Result<AmalgamNormalForm> {
    if !matches!(spec, GroupSpec::Amalgam(_)) {
        return Err(Error::Unsupported("amalgam normal form of a non-amalgam".into()));
    }
    spec.check_word(word)?;
    match spec.eval(word) {
        Elem::Amalgam { c, reps } => Ok(AmalgamNormalForm {
            c_prefix: c,
            reps: to_syllables(reps),
        }),
        _ => unreachable!(),
    }
}

/// Syllable count of the normal form. A nontrivial element of the amalgamated
/// subgroup has syllable length 1.
pub fn syllable_length(spec: &GroupSpec, word: &Word) -> Result<usize> {
    match spec {
        GroupSpec::FreeProduct(..) => Ok(free_product_normal_form(spec, word)?.len()),
        GroupSpec::Amalgam(a) => {
            let nf = amalgam_normal_form(spec, word)?;
            if nf.reps.is_empty() {
                Ok(usize::from(nf.c_prefix != a.c_group().identity()))
            } else {
                Ok(nf.reps.len())
            }
        }
        _ => Err(Error::Unsupported("syllable length needs a product".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::word::w;

    fn xy() -> GroupSpec {
        GroupSpec::free_product(GroupSpec::free(1), GroupSpec::free(1))
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(free_reduce(&w("x0 x0^-1 x1"), 2).unwrap(), w("x1"));
        assert_eq!(free_reduce(&w(""), 2).unwrap(), w(""));
        assert_eq!(free_reduce(&w("x0 x1 x1^-1 x0^-1"), 2).unwrap(), w(""));
        assert!(matches!(free_reduce(&w("x2"), 2), Err(Error::Malformed(_))));
    }

    #[test]
    fn word_problem_examples() {
        assert!(!word_problem(&GroupSpec::free(2), &w("x0 x1 x0^-1 x1^-1")).unwrap());
        assert!(word_problem(&GroupSpec::abelian(vec![0, 0]), &w("x0 x1 x0^-1 x1^-1")).unwrap());
        assert!(word_problem(&GroupSpec::cyclic(3), &w("x1 x1 x1")).unwrap());
    }

    #[test]
    fn free_product_examples() {
        let g = xy();
        let nf = free_product_normal_form(&g, &w("x0 x0 x1 x0^-1")).unwrap();
        assert_eq!(
            nf.words(&g),
            vec![
                (Side::Left, w("x0 x0")),
                (Side::Right, w("x0")),
                (Side::Left, w("x0^-1"))
            ]
        );
        assert!(free_product_normal_form(&g, &w("x0 x0^-1")).unwrap().is_empty());
        let nf = free_product_normal_form(&g, &w("x0 x1 x1^-1 x0")).unwrap();
        assert_eq!(nf.words(&g), vec![(Side::Left, w("x0 x0"))]);
    }

    #[test]
    fn syllable_length_examples() {
        let g = xy();
        assert_eq!(syllable_length(&g, &w("x0 x1 x0")).unwrap(), 3);
        assert_eq!(syllable_length(&g, &w("")).unwrap(), 0);
        assert_eq!(syllable_length(&g, &w("x0 x0^-1 x1")).unwrap(), 1);
    }

    #[test]
    fn amalgam_examples() {
        let g = GroupSpec::amalgam(
            GroupSpec::cyclic(4),
            GroupSpec::cyclic(6),
            FiniteGroup::cyclic(2),
            vec![w(""), w("x2")],
            vec![w(""), w("x3")],
        )
        .unwrap();
        // a a b b b = a² b³ = c·c = 1.
        let nf = amalgam_normal_form(&g, &w("x1 x1 x5 x5 x5")).unwrap();
        assert_eq!(nf.c_prefix, 0);
        assert!(nf.reps.is_empty());
        let nf = amalgam_normal_form(&g, &w("x1")).unwrap();
        assert_eq!(nf.c_prefix, 0);
        assert_eq!(
            nf.reps,
            vec![Syllable {
                side: Side::Left,
                element: Elem::Finite(1)
            }]
        );
        let nf = amalgam_normal_form(&g, &w("")).unwrap();
        assert_eq!((nf.c_prefix, nf.reps.len()), (0, 0));
        assert_eq!(syllable_length(&g, &w("x2")).unwrap(), 1);
    }
}
