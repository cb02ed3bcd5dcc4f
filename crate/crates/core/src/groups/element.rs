//! Canonical element representations and group arithmetic.

use super::{GroupSpec, Side};
use crate::word::{Letter, Word};

/// A canonical group element. Two elements of the same group are equal iff
/// their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Freely reduced word.
    Free(Vec<Letter>),
    /// Index into the Cayley table.
    Finite(usize),
    /// Exponent vector, reduced into `0..q` on coordinates with modulus `q > 0`.
    Abelian(Vec<i64>),
    /// Direct product component pair.
    Pair(Box<Elem>, Box<Elem>),
    /// Free product normal form: alternating, nontrivial syllables.
    Syllables(Vec<(Side, Elem)>),
    /// Amalgam normal form `c · x₁ ⋯ xₙ` with transversal representatives.
    Amalgam { c: usize, reps: Vec<(Side, Elem)> },
}

impl GroupSpec {
    pub fn identity(&self) -> Elem {
        match self {
            GroupSpec::Free { .. } => Elem::Free(Vec::new()),
            GroupSpec::Finite(g) => Elem::Finite(g.identity()),
            GroupSpec::Abelian { moduli } => Elem::Abelian(vec![0; moduli.len()]),
            GroupSpec::Direct(l, r) => Elem::Pair(Box::new(l.identity()), Box::new(r.identity())),
            GroupSpec::FreeProduct(..) => Elem::Syllables(Vec::new()),
            GroupSpec::Amalgam(a) => Elem::Amalgam {
                c: a.c_group().identity(),
                reps: Vec::new(),
            },
        }
    }

    pub fn is_identity(&self, e: &Elem) -> bool {
        match (self, e) {
            (GroupSpec::Free { .. }, Elem::Free(v)) => v.is_empty(),
            (GroupSpec::Finite(g), Elem::Finite(i)) => *i == g.identity(),
            (GroupSpec::Abelian { .. }, Elem::Abelian(v)) => v.iter().all(|&x| x == 0),
            (GroupSpec::Direct(l, r), Elem::Pair(a, b)) => l.is_identity(a) && r.is_identity(b),
            (GroupSpec::FreeProduct(..), Elem::Syllables(s)) => s.is_empty(),
            (GroupSpec::Amalgam(a), Elem::Amalgam { c, reps }) => {
                reps.is_empty() && *c == a.c_group().identity()
            }
            _ => panic!("element {e:?} does not belong to {self:?}"),
        }
    }

    /// Element named by a single letter of this group's alphabet.
    pub fn letter_elem(&self, letter: Letter) -> Elem {
        let mut e = self.identity();
        self.mul_letter(&mut e, letter);
        e
    }

    /// `acc ← acc · letter`.
    pub fn mul_letter(&self, acc: &mut Elem, letter: Letter) {
        match (self, acc) {
            (GroupSpec::Free { .. }, Elem::Free(v)) => {
                if v.last() == Some(&letter.inverted()) {
                    v.pop();
                } else {
                    v.push(letter);
                }
            }
            (GroupSpec::Finite(g), Elem::Finite(i)) => {
                let x = if letter.inverse {
                    g.inv(letter.generator)
                } else {
                    letter.generator
                };
                *i = g.mul(*i, x);
            }
            (GroupSpec::Abelian { moduli }, Elem::Abelian(v)) => {
                let k = letter.generator;
                v[k] = reduce_coord(v[k] + letter.sign(), moduli[k]);
            }
            (GroupSpec::Direct(l, r), Elem::Pair(a, b)) => {
                let offset = l.rank();
                if letter.generator < offset {
                    l.mul_letter(a, letter);
                } else {
                    r.mul_letter(b, unshift(letter, offset));
                }
            }
            (GroupSpec::FreeProduct(l, r), Elem::Syllables(syl)) => {
                let offset = l.rank();
                let (side, factor, local) = if letter.generator < offset {
                    (Side::Left, &**l, letter)
                } else {
                    (Side::Right, &**r, unshift(letter, offset))
                };
                match syl.last_mut() {
                    Some((s, last)) if *s == side => {
                        factor.mul_letter(last, local);
                        if factor.is_identity(last) {
                            syl.pop();
                        }
                    }
                    _ => {
                        let e = factor.letter_elem(local);
                        if !factor.is_identity(&e) {
                            syl.push((side, e));
                        }
                    }
                }
            }
            (GroupSpec::Amalgam(a), Elem::Amalgam { c, reps }) => {
                let (side, local) = self.locate(letter).expect("composite");
                let g = a.factor(side).letter_elem(local);
                a.mul_factor(c, reps, side, &g);
            }
            (spec, acc) => panic!("element {acc:?} does not belong to {spec:?}"),
        }
    }

    /// `acc ← acc · rhs`.
    pub fn mul_into(&self, acc: &mut Elem, rhs: &Elem) {
        match (self, acc, rhs) {
            (GroupSpec::Free { .. }, Elem::Free(v), Elem::Free(u)) => {
                for &l in u {
                    if v.last() == Some(&l.inverted()) {
                        v.pop();
                    } else {
                        v.push(l);
                    }
                }
            }
            (GroupSpec::Finite(g), Elem::Finite(i), Elem::Finite(j)) => *i = g.mul(*i, *j),
            (GroupSpec::Abelian { moduli }, Elem::Abelian(v), Elem::Abelian(u)) => {
                for ((x, y), &q) in v.iter_mut().zip(u).zip(moduli) {
                    *x = reduce_coord(*x + *y, q);
                }
            }
            (GroupSpec::Direct(l, r), Elem::Pair(a, b), Elem::Pair(c, d)) => {
                l.mul_into(a, c);
                r.mul_into(b, d);
            }
            (GroupSpec::FreeProduct(l, r), Elem::Syllables(syl), Elem::Syllables(other)) => {
                for (side, e) in other {
                    let factor = if *side == Side::Left { &**l } else { &**r };
                    push_syllable(factor, syl, *side, e);
                }
            }
            (
                GroupSpec::Amalgam(a),
                Elem::Amalgam { c, reps },
                Elem::Amalgam {
                    c: c2,
                    reps: reps2,
                },
            ) => {
                a.mul_c(c, reps, *c2);
                for (side, x) in reps2 {
                    a.mul_factor(c, reps, *side, x);
                }
            }
            (spec, acc, rhs) => {
                panic!("cannot multiply {acc:?} by {rhs:?} in {spec:?}")
            }
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = a.clone();
        self.mul_into(&mut out, b);
        out
    }

    pub fn inverse(&self, e: &Elem) -> Elem {
        match (self, e) {
            (GroupSpec::Free { .. }, Elem::Free(v)) => {
                Elem::Free(v.iter().rev().map(|l| l.inverted()).collect())
            }
            (GroupSpec::Finite(g), Elem::Finite(i)) => Elem::Finite(g.inv(*i)),
            (GroupSpec::Abelian { moduli }, Elem::Abelian(v)) => Elem::Abelian(
                v.iter()
                    .zip(moduli)
                    .map(|(&x, &q)| reduce_coord(-x, q))
                    .collect(),
            ),
            (GroupSpec::Direct(l, r), Elem::Pair(a, b)) => {
                Elem::Pair(Box::new(l.inverse(a)), Box::new(r.inverse(b)))
            }
            (GroupSpec::FreeProduct(l, r), Elem::Syllables(syl)) => Elem::Syllables(
                syl.iter()
                    .rev()
                    .map(|(side, x)| {
                        let factor = if *side == Side::Left { &**l } else { &**r };
                        (*side, factor.inverse(x))
                    })
                    .collect(),
            ),
            (GroupSpec::Amalgam(a), Elem::Amalgam { c, reps }) => {
                let mut out_c = a.c_group().identity();
                let mut out_reps = Vec::with_capacity(reps.len());
                for (side, x) in reps.iter().rev() {
                    let xi = a.factor(*side).inverse(x);
                    a.mul_factor(&mut out_c, &mut out_reps, *side, &xi);
                }
                a.mul_c(&mut out_c, &mut out_reps, a.c_group().inv(*c));
                Elem::Amalgam {
                    c: out_c,
                    reps: out_reps,
                }
            }
            (spec, e) => panic!("element {e:?} does not belong to {spec:?}"),
        }
    }

    /// Value of a word. The word must be valid for this group.
    pub fn eval(&self, word: &Word) -> Elem {
        let mut acc = self.identity();
        for &l in word.letters() {
            self.mul_letter(&mut acc, l);
        }
        acc
    }

    /// `e^n` by repeated squaring.
    pub fn pow(&self, e: &Elem, mut n: u64) -> Elem {
        let mut result = self.identity();
        let mut base = e.clone();
        while n > 0 {
            if n & 1 == 1 {
                self.mul_into(&mut result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// A word spelling the element; canonical for each representation.
    pub fn to_word(&self, e: &Elem) -> Word {
        let mut out = Vec::new();
        self.write_word(e, 0, &mut out);
        Word(out)
    }

    fn write_word(&self, e: &Elem, offset: usize, out: &mut Vec<Letter>) {
        match (self, e) {
            (GroupSpec::Free { .. }, Elem::Free(v)) => {
                out.extend(v.iter().map(|l| l.shifted(offset)));
            }
            (GroupSpec::Finite(g), Elem::Finite(i)) => {
                if *i != g.identity() {
                    out.push(Letter::new(*i + offset));
                }
            }
            (GroupSpec::Abelian { moduli }, Elem::Abelian(v)) => {
                for (k, (&x, &q)) in v.iter().zip(moduli).enumerate() {
                    let (count, inverse) = abelian_spelling(x, q);
                    out.extend(std::iter::repeat_n(
                        Letter {
                            generator: k + offset,
                            inverse,
                        },
                        count,
                    ));
                }
            }
            (GroupSpec::Direct(l, r), Elem::Pair(a, b)) => {
                l.write_word(a, offset, out);
                r.write_word(b, offset + l.rank(), out);
            }
            (GroupSpec::FreeProduct(l, r), Elem::Syllables(syl)) => {
                for (side, x) in syl {
                    match side {
                        Side::Left => l.write_word(x, offset, out),
                        Side::Right => r.write_word(x, offset + l.rank(), out),
                    }
                }
            }
            (GroupSpec::Amalgam(a), Elem::Amalgam { c, reps }) => {
                a.left()
                    .write_word(a.image(Side::Left, *c), offset, out);
                for (side, x) in reps {
                    a.factor(*side)
                        .write_word(x, offset + self.offset(*side), out);
                }
            }
            (spec, e) => panic!("element {e:?} does not belong to {spec:?}"),
        }
    }

    /// Length of [`GroupSpec::to_word`]; the geodesic length for basic groups.
    pub fn word_length(&self, e: &Elem) -> usize {
        match (self, e) {
            (GroupSpec::Free { .. }, Elem::Free(v)) => v.len(),
            (GroupSpec::Finite(g), Elem::Finite(i)) => usize::from(*i != g.identity()),
            (GroupSpec::Abelian { moduli }, Elem::Abelian(v)) => v
                .iter()
                .zip(moduli)
                .map(|(&x, &q)| abelian_spelling(x, q).0)
                .sum(),
            _ => self.to_word(e).len(),
        }
    }
}

/// Right-multiplies a free product normal form by a syllable, merging and
/// cancelling at the junction.
pub(crate) fn push_syllable(factor: &GroupSpec, syl: &mut Vec<(Side, Elem)>, side: Side, e: &Elem) {
    match syl.last_mut() {
        Some((s, last)) if *s == side => {
            factor.mul_into(last, e);
            if factor.is_identity(last) {
                syl.pop();
            }
        }
        _ => {
            if !factor.is_identity(e) {
                syl.push((side, e.clone()));
            }
        }
    }
}

fn unshift(letter: Letter, offset: usize) -> Letter {
    Letter {
        generator: letter.generator - offset,
        inverse: letter.inverse,
    }
}

pub(crate) fn reduce_coord(x: i64, q: u64) -> i64 {
    if q == 0 {
        x
    } else {
        x.rem_euclid(q as i64)
    }
}

/// Shortest spelling of one abelian coordinate: (letter count, uses inverse).
fn abelian_spelling(x: i64, q: u64) -> (usize, bool) {
    if q == 0 {
        (x.unsigned_abs() as usize, x < 0)
    } else {
        let q = q as i64;
        if x <= q - x {
            (x as usize, false)
        } else {
            ((q - x) as usize, true)
        }
    }
}
