use crate::error::{Error, Result};
use crate::groups::{Elem, GroupSpec};
use crate::problems::{Certificate, Instance};
use crate::word::Word;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

fn dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(malformed(format!("expected {expected} entries, got {got}")))
    }
}

/// `∏ gᵢ^{nᵢ} = g`, evaluated from scratch.
fn power_product_is(spec: &GroupSpec, elements: &[Word], exponents: &[u64], target: &Word) -> bool {
    let mut acc = spec.identity();
    for (g, &n) in elements.iter().zip(exponents) {
        let x: Elem = spec.eval(g);
        spec.mul_into(&mut acc, &spec.pow(&x, n));
    }
    acc == spec.eval(target)
}

/// Checks a certificate against the defining equation of the instance's
/// problem. Wrong kind or dimensions are errors; a well-formed certificate
/// that does not witness the instance is `Ok(false)`.
pub fn verify_certificate(inst: &Instance, cert: &Certificate) -> Result<bool> {
    inst.validate()?;
    let wrong_kind = || {
        malformed(format!(
            "a {} certificate does not fit a {} instance",
            cert.kind_name(),
            inst.kind().name()
        ))
    };
    match (inst, cert) {
        (Instance::Ssp(i), Certificate::Subset { bits }) => {
            dims(i.elements.len(), bits.len())?;
            if bits.iter().any(|&b| b > 1) {
                return Err(malformed("subset bits must be 0 or 1"));
            }
            let exps: Vec<u64> = bits.iter().map(|&b| u64::from(b)).collect();
            Ok(power_product_is(&i.spec, &i.elements, &exps, &i.target))
        }
        (Instance::Bkp(i), Certificate::Exponents { exponents }) => {
            dims(i.elements.len(), exponents.len())?;
            Ok(exponents.iter().all(|&n| n <= i.bound as u64)
                && power_product_is(&i.spec, &i.elements, exponents, &i.target))
        }
        (Instance::Kp(i), Certificate::Exponents { exponents }) => {
            dims(i.elements.len(), exponents.len())?;
            Ok(power_product_is(&i.spec, &i.elements, exponents, &i.target))
        }
        (Instance::Bsmp(i), Certificate::Sequence { indices }) => {
            if let Some(&bad) = indices.iter().find(|&&j| j >= i.generators.len()) {
                return Err(malformed(format!("generator index {bad} out of range")));
            }
            if indices.len() > i.bound {
                return Ok(false);
            }
            let mut word = Word::empty();
            for &j in indices {
                word.extend(&i.generators[j]);
            }
            Ok(i.spec.eval(&word) == i.spec.eval(&i.target))
        }
        (Instance::Agp(i), Certificate::Path { edges }) => Ok(i.accepts(edges)),
        (Instance::Rational(i), Certificate::Path { edges }) => {
            Ok(i.automaton.accepts_with_value(edges, &i.word, &i.spec))
        }
        _ => Err(wrong_kind()),
    }
}
