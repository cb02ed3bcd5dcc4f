//! Free products with a finite amalgamated subgroup.
//!
//! Elements are kept in the form `c · x₁ ⋯ xₙ` where `c ∈ C` and each `xᵢ`
//! is the representative of a right coset `C·g` in its factor, alternating
//! between factors. The representative of a coset is its shortest element,
//! ties broken by the element order, so the form is canonical.

use super::{Elem, FiniteGroup, GroupSpec, Side};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    left: GroupSpec,
    right: GroupSpec,
    c: FiniteGroup,
    embed: [Vec<Word>; 2],
    images: [Vec<Elem>; 2],
    inverse_images: [Vec<Elem>; 2],
    /// For finite factors: element index -> (c, representative index).
    finite_cosets: [Option<Vec<(usize, usize)>>; 2],
}

impl Amalgam {
    pub(crate) fn new(
        left: GroupSpec,
        right: GroupSpec,
        c: FiniteGroup,
        embed_left: Vec<Word>,
        embed_right: Vec<Word>,
    ) -> Result<Self> {
        for factor in [&left, &right] {
            if !factor.is_basic() {
                return Err(Error::Unsupported(
                    "amalgam factors must be free, finite or abelian groups".into(),
                ));
            }
        }
        let mut images: [Vec<Elem>; 2] = Default::default();
        let mut inverse_images: [Vec<Elem>; 2] = Default::default();
        for (side, factor, embed) in [
            (Side::Left, &left, &embed_left),
            (Side::Right, &right, &embed_right),
        ] {
            if embed.len() != c.order() {
                return Err(Error::InvalidSpec(format!(
                    "{side:?} embedding has {} images, C has order {}",
                    embed.len(),
                    c.order()
                )));
            }
            let imgs = embed
                .iter()
                .map(|word| {
                    factor.check_word(word)?;
                    Ok(factor.eval(word))
                })
                .collect::<Result<Vec<_>>>()?;
            for a in 0..c.order() {
                for b in 0..c.order() {
                    if factor.mul(&imgs[a], &imgs[b]) != imgs[c.mul(a, b)] {
                        return Err(Error::InvalidSpec(format!(
                            "{side:?} embedding is not a homomorphism at ({a},{b})"
                        )));
                    }
                }
                for b in 0..a {
                    if imgs[a] == imgs[b] {
                        return Err(Error::InvalidSpec(format!(
                            "{side:?} embedding is not injective ({a} and {b})"
                        )));
                    }
                }
            }
            inverse_images[side.index()] = imgs.iter().map(|e| factor.inverse(e)).collect();
            images[side.index()] = imgs;
        }
        let mut amalgam = Amalgam {
            left,
            right,
            c,
            embed: [embed_left, embed_right],
            images,
            inverse_images,
            finite_cosets: [None, None],
        };
        for side in [Side::Left, Side::Right] {
            if let GroupSpec::Finite(g) = amalgam.factor(side) {
                let table = (0..g.order())
                    .map(|x| match amalgam.decompose_search(side, &Elem::Finite(x)) {
                        (c, Elem::Finite(rep)) => (c, rep),
                        _ => unreachable!(),
                    })
                    .collect();
                amalgam.finite_cosets[side.index()] = Some(table);
            }
        }
        Ok(amalgam)
    }

    pub fn left(&self) -> &GroupSpec {
        &self.left
    }

    pub fn right(&self) -> &GroupSpec {
        &self.right
    }

    pub fn factor(&self, side: Side) -> &GroupSpec {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn c_group(&self) -> &FiniteGroup {
        &self.c
    }

    pub fn embed_words(&self, side: Side) -> &[Word] {
        &self.embed[side.index()]
    }

    /// Image of `c ∈ C` in a factor.
    pub fn image(&self, side: Side, c: usize) -> &Elem {
        &self.images[side.index()][c]
    }

    /// Writes a factor element as `φ(c) · rep` with `rep` the coset representative.
    pub fn decompose(&self, side: Side, g: &Elem) -> (usize, Elem) {
        if let (Some(table), Elem::Finite(x)) = (&self.finite_cosets[side.index()], g) {
            let (c, rep) = table[*x];
            return (c, Elem::Finite(rep));
        }
        self.decompose_search(side, g)
    }

    fn decompose_search(&self, side: Side, g: &Elem) -> (usize, Elem) {
        let factor = self.factor(side);
        (0..self.c.order())
            .map(|c| {
                let rep = factor.mul(&self.inverse_images[side.index()][c], g);
                (factor.word_length(&rep), rep, c)
            })
            .min()
            .map(|(_, rep, c)| (c, rep))
            .expect("C is nonempty")
    }

    /// `(c, reps) ← (c, reps) · φ(k)`, pushing `k` leftwards through the representatives.
    pub(crate) fn mul_c(&self, c: &mut usize, reps: &mut [(Side, Elem)], k: usize) {
        let mut carry = k;
        for (side, x) in reps.iter_mut().rev() {
            if carry == self.c.identity() {
                return;
            }
            let factor = self.factor(*side);
            let y = factor.mul(x, self.image(*side, carry));
            let (c2, rep) = self.decompose(*side, &y);
            *x = rep;
            carry = c2;
        }
        *c = self.c.mul(*c, carry);
    }

    /// `(c, reps) ← (c, reps) · g` for `g` in the factor on `side`.
    pub(crate) fn mul_factor(&self, c: &mut usize, reps: &mut Vec<(Side, Elem)>, side: Side, g: &Elem) {
        let factor = self.factor(side);
        let h = match reps.last() {
            Some((s, _)) if *s == side => {
                let (_, x) = reps.pop().expect("nonempty");
                factor.mul(&x, g)
            }
            _ => g.clone(),
        };
        let (k, rep) = self.decompose(side, &h);
        self.mul_c(c, reps, k);
        if !factor.is_identity(&rep) {
            reps.push((side, rep));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    /// Z/4 = <a> *_{Z/2} Z/6 = <b>, with a² = b³.
    fn z4_z6() -> GroupSpec {
        GroupSpec::amalgam(
            GroupSpec::cyclic(4),
            GroupSpec::cyclic(6),
            FiniteGroup::cyclic(2),
            vec![w(""), w("x2")],
            vec![w(""), w("x3")],
        )
        .unwrap()
    }

    #[test]
    fn identifies_amalgamated_elements() {
        let g = z4_z6();
        // a = x1, a² = x2; b = x5 (offset 4 + 1), b³ = x7.
        assert_eq!(g.eval(&w("x7")), g.eval(&w("x2")));
        assert!(g.is_identity(&g.eval(&w("x2 x7"))));
        assert!(!g.is_identity(&g.eval(&w("x1 x5"))));
    }

    #[test]
    fn central_c_moves_freely() {
        let g = z4_z6();
        // a² is central, so a·b·a² = a²·a·b = a³·b.
        assert_eq!(g.eval(&w("x1 x5 x2")), g.eval(&w("x3 x5")));
    }

    #[test]
    fn rejects_non_homomorphism() {
        let bad = GroupSpec::amalgam(
            GroupSpec::cyclic(4),
            GroupSpec::cyclic(6),
            FiniteGroup::cyclic(2),
            vec![w(""), w("x1")],
            vec![w(""), w("x3")],
        );
        assert!(matches!(bad, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn rejects_nested_amalgam() {
        let inner = z4_z6();
        let nested = GroupSpec::amalgam(
            inner,
            GroupSpec::cyclic(2),
            FiniteGroup::trivial(),
            vec![w("")],
            vec![w("")],
        );
        assert!(matches!(nested, Err(Error::Unsupported(_))));
    }

    #[test]
    fn free_factor_needs_trivial_c() {
        let bad = GroupSpec::amalgam(
            GroupSpec::free(1),
            GroupSpec::cyclic(2),
            FiniteGroup::cyclic(2),
            vec![w(""), w("")],
            vec![w(""), w("x1")],
        );
        assert!(bad.is_err());
    }
}
