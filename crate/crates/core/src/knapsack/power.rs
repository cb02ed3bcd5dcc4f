//! Conjugation into a factor and the shape of normal forms of powers.

use crate::error::{Error, Result};
use crate::groups::{Elem, FreeProductNormalForm, GroupSpec, Side, Syllable};
use crate::word::Word;

/// Outcome of [`classify_dumb`]; in both cases `f = u⁻¹ f′ u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DumbnessReport {
    /// `f′` has at most one syllable.
    Dumb { conjugator: Word, core: Word },
    /// `f′` is cyclically reduced with at least two syllables.
    NonDumb {
        conjugator: Word,
        cyclic: FreeProductNormalForm,
    },
}

impl DumbnessReport {
    pub fn is_dumb(&self) -> bool {
        matches!(self, DumbnessReport::Dumb { .. })
    }
}

fn syllables(e: &Elem) -> &[(Side, Elem)] {
    match e {
        Elem::Syllables(s) => s,
        _ => unreachable!("free product element"),
    }
}

fn to_nf(e: &Elem) -> FreeProductNormalForm {
    FreeProductNormalForm {
        syllables: syllables(e)
            .iter()
            .map(|(side, element)| Syllable {
                side: *side,
                element: element.clone(),
            })
            .collect(),
    }
}

fn from_syllables(s: &[Syllable]) -> Elem {
    Elem::Syllables(s.iter().map(|x| (x.side, x.element.clone())).collect())
}

fn require_free_product(spec: &GroupSpec) -> Result<()> {
    match spec {
        GroupSpec::FreeProduct(..) => Ok(()),
        _ => Err(Error::Unsupported("dumbness is defined for free products".into())),
    }
}

/// `(u, f′)` with `f = u⁻¹ f′ u` and `f′` cyclically reduced: while the first
/// and last syllables share a factor, conjugate the last one to the front.
fn cyclic_reduction(spec: &GroupSpec, f: &Elem) -> (Elem, Elem) {
    let mut core = f.clone();
    let mut u = spec.identity();
    loop {
        let s = syllables(&core);
        if s.len() < 2 || s[0].0 != s[s.len() - 1].0 {
            return (u, core);
        }
        let t = Elem::Syllables(vec![s[s.len() - 1].clone()]);
        core = spec.mul(&spec.mul(&t, &core), &spec.inverse(&t));
        u = spec.mul(&t, &u);
    }
}

/// Decides whether `f` is conjugate into one of the factors.
pub fn classify_dumb(f: &Word, spec: &GroupSpec) -> Result<DumbnessReport> {
    require_free_product(spec)?;
    spec.check_word(f)?;
    let (u, core) = cyclic_reduction(spec, &spec.eval(f));
    let conjugator = spec.to_word(&u);
    Ok(if syllables(&core).len() <= 1 {
        DumbnessReport::Dumb {
            conjugator,
            core: spec.to_word(&core),
        }
    } else {
        DumbnessReport::NonDumb {
            conjugator,
            cyclic: to_nf(&core),
        }
    })
}

/// Normal form of `fⁿ` for all `n ≥ 3` is `a ++ b^{n−2} ++ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerForm {
    pub a: Vec<Syllable>,
    pub b: Vec<Syllable>,
    pub c: Vec<Syllable>,
}

impl PowerForm {
    /// `a ++ b^{n−2} ++ c`.
    pub fn expand(&self, n: usize) -> FreeProductNormalForm {
        assert!(n >= 2);
        let mut syllables = self.a.clone();
        for _ in 0..n - 2 {
            syllables.extend_from_slice(&self.b);
        }
        syllables.extend_from_slice(&self.c);
        FreeProductNormalForm { syllables }
    }
}

/// Splits the powers of a non-dumb `f = u⁻¹ b u` (`b` cyclically reduced):
/// `fⁿ = (u⁻¹b) · b^{n−2} · (bu)` and only the outer factors can cancel.
pub fn power_normal_form(f: &Word, spec: &GroupSpec) -> Result<PowerForm> {
    let DumbnessReport::NonDumb { .. } = classify_dumb(f, spec)? else {
        return Err(Error::Precondition("power normal form of a dumb element".into()));
    };
    let (u, core) = cyclic_reduction(spec, &spec.eval(f));
    let b = to_nf(&core).syllables;
    if spec.is_identity(&u) {
        let mut c = b.clone();
        c.extend_from_slice(&b);
        return Ok(PowerForm { a: Vec::new(), b, c });
    }
    let a = to_nf(&spec.mul(&spec.inverse(&u), &core)).syllables;
    let c = to_nf(&spec.mul(&core, &u)).syllables;
    Ok(PowerForm { a, b, c })
}

/// Whether the syllable list is the normal form of `fⁿ`.
pub fn check_power_form(spec: &GroupSpec, f: &Word, form: &PowerForm, n: usize) -> bool {
    let expected = spec.pow(&spec.eval(f), n as u64);
    from_syllables(&form.expand(n).syllables) == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn xy() -> GroupSpec {
        GroupSpec::free_product(GroupSpec::free(1), GroupSpec::free(1))
    }

    #[test]
    fn dumb_examples() {
        let spec = xy();
        assert_eq!(
            classify_dumb(&w("x0 x1 x0^-1"), &spec).unwrap(),
            DumbnessReport::Dumb {
                conjugator: w("x0^-1"),
                core: w("x1")
            }
        );
        assert_eq!(
            classify_dumb(&w(""), &spec).unwrap(),
            DumbnessReport::Dumb {
                conjugator: w(""),
                core: w("")
            }
        );
        assert!(!classify_dumb(&w("x0 x1"), &spec).unwrap().is_dumb());
        assert!(!classify_dumb(&w("x0 x1 x0"), &spec).unwrap().is_dumb());
        assert!(classify_dumb(&w("x0 x1 x1 x1^-1 x0^-1"), &spec).unwrap().is_dumb());
    }

    #[test]
    fn power_examples() {
        let spec = xy();
        let f = w("x0 x1");
        let form = power_normal_form(&f, &spec).unwrap();
        assert!(form.a.is_empty());
        assert_eq!(form.b.len(), 2);
        assert_eq!(form.c.len(), 4);
        for n in 3..=6 {
            assert!(check_power_form(&spec, &f, &form, n));
        }
        let f = w("x0 x1 x0^-1 x1");
        let form = power_normal_form(&f, &spec).unwrap();
        assert_eq!((form.a.len(), form.b.len(), form.c.len()), (0, 4, 8));
        assert!(matches!(
            power_normal_form(&w("x0 x1 x0^-1"), &spec),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn conjugated_powers() {
        let spec = GroupSpec::free_product(GroupSpec::free(2), GroupSpec::cyclic(2));
        for f in ["x0 x3 x0", "x1 x0 x3 x0^-1 x3 x0 x1^-1", "x3 x0 x3 x1 x3"] {
            let f = w(f);
            let form = power_normal_form(&f, &spec).unwrap();
            let len = crate::groups::syllable_length(&spec, &f).unwrap();
            assert!(form.a.len() + form.c.len() <= 2 * len);
            assert!(form.b.len() <= len);
            for n in 3..=7 {
                assert!(check_power_form(&spec, &f, &form, n), "{f} ^ {n}");
            }
        }
    }
}
