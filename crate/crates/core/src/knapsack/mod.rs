//! Knapsack in free products: an exponent bound turns KP into bounded
//! knapsack, which reduces to subset sum and then to the graph word problem
//! solved by saturation.

mod power;

use serde::{Deserialize, Serialize};

use crate::agp::{agp_amalgam_saturate, AgpStats};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::oracle::exponent_search;
use crate::par::Exec;
use crate::problems::{KpInstance, SspInstance};
use crate::reductions::{ssp_path_to_subset, ssp_to_agp};
use crate::word::Word;

pub use power::{
    check_power_form, classify_dumb, power_normal_form, DumbnessReport, PowerForm,
};

/// `x² + 4x`.
pub fn p(x: u64) -> u64 {
    x * x + 4 * x
}

/// Per-factor polynomials, coefficients from the constant term up.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundConfig {
    #[serde(rename = "p_G", default)]
    pub p_g: Vec<u64>,
    #[serde(rename = "p_H", default)]
    pub p_h: Vec<u64>,
}

fn eval_poly(coeffs: &[u64], x: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc.saturating_mul(x).saturating_add(c))
}

fn default_poly(factor: &GroupSpec) -> Vec<u64> {
    match factor.order() {
        Some(1) => Vec::new(),
        Some(q) => vec![q],
        None => vec![0, 0, 1],
    }
}

impl BoundConfig {
    /// Finite factors of order `q` get the constant `q`, infinite ones `N²`.
    pub fn default_for(spec: &GroupSpec) -> Self {
        match spec {
            GroupSpec::FreeProduct(l, r) => BoundConfig {
                p_g: default_poly(l),
                p_h: default_poly(r),
            },
            g => BoundConfig {
                p_g: default_poly(g),
                p_h: Vec::new(),
            },
        }
    }

    /// No factor terms: the bound is `p(N)` alone.
    pub fn trivial() -> Self {
        BoundConfig::default()
    }
}

/// Total length of all input words.
pub fn instance_size_n(inst: &KpInstance) -> usize {
    inst.elements.iter().map(Word::len).sum::<usize>() + inst.target.len()
}

/// `p(N) + p_G(N) + p_H(N)`, at least 1.
pub fn exponent_bound(inst: &KpInstance, cfg: &BoundConfig) -> u64 {
    let n = instance_size_n(inst) as u64;
    p(n).saturating_add(eval_poly(&cfg.p_g, n))
        .saturating_add(eval_poly(&cfg.p_h, n))
        .max(1)
}

/// Exhaustive search over exponent tuples in `0..=bound`.
pub fn kp_bruteforce(inst: &KpInstance, bound: u64, exec: Exec) -> Result<Option<Vec<u64>>> {
    crate::problems::Instance::Kp(inst.clone()).validate()?;
    let caps = vec![bound; inst.elements.len()];
    exponent_search(&inst.spec, &inst.elements, &caps, &inst.target, exec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpOutcome {
    pub answer: bool,
    pub exponents: Option<Vec<u64>>,
    /// The exponent bound `B`.
    pub bound: u64,
    /// Copies of each element in the subset-sum image.
    pub caps: Vec<u64>,
    pub stats: AgpStats,
}

/// Groups the pipeline accepts: a free product of free, abelian or finite
/// factors, or one such group alone (treated as a product with `F₀`).
fn product_spec(spec: &GroupSpec) -> Result<GroupSpec> {
    match spec {
        GroupSpec::FreeProduct(l, r) if l.is_basic() && r.is_basic() => Ok(spec.clone()),
        g if g.is_basic() => Ok(GroupSpec::free_product(g.clone(), GroupSpec::free(0))),
        _ => Err(Error::Unsupported(
            "knapsack needs a free product of free, abelian or finite groups".into(),
        )),
    }
}

/// Order of `g` if it is at most `limit`.
fn small_order(spec: &GroupSpec, g: &Word, limit: u64) -> Option<u64> {
    let x = spec.eval(g);
    let mut acc = x.clone();
    for n in 1..=limit {
        if spec.is_identity(&acc) {
            return Some(n);
        }
        spec.mul_into(&mut acc, &x);
    }
    None
}

/// Decides KP: bound the exponents by `B`, unfold every element into `B`
/// copies (fewer for torsion elements, whose exponents only matter modulo
/// their order), build the subset-sum chain graph and saturate it.
pub fn kp_solve(inst: &KpInstance, cfg: Option<&BoundConfig>, exec: Exec) -> Result<KpOutcome> {
    crate::problems::Instance::Kp(inst.clone()).validate()?;
    let spec = product_spec(&inst.spec)?;
    let default_cfg;
    let cfg = match cfg {
        Some(c) => c,
        None => {
            default_cfg = BoundConfig::default_for(&inst.spec);
            &default_cfg
        }
    };
    let bound = exponent_bound(inst, cfg);
    let caps: Vec<u64> = inst
        .elements
        .iter()
        .map(|g| small_order(&spec, g, bound).map_or(bound, |q| q - 1))
        .collect();
    if spec.is_identity(&spec.eval(&inst.target)) {
        // The empty product; no need to build the graph.
        return Ok(KpOutcome {
            answer: true,
            exponents: Some(vec![0; caps.len()]),
            bound,
            caps,
            stats: AgpStats::default(),
        });
    }
    let copies: u64 = caps.iter().sum();
    if copies > crate::limits::resource_limit() {
        return Err(Error::ResourceLimit(format!("{copies} element copies")));
    }
    let ssp = SspInstance {
        spec: spec.clone(),
        elements: inst
            .elements
            .iter()
            .zip(&caps)
            .flat_map(|(g, &c)| std::iter::repeat_n(g.clone(), c as usize))
            .collect(),
        target: inst.target.clone(),
    };
    let (out, _) = agp_amalgam_saturate(&ssp_to_agp(&ssp), exec)?;
    let exponents = match &out.certificate {
        None => None,
        Some(c) => {
            let bits = ssp_path_to_subset(ssp.elements.len(), &c.edges)?;
            let mut at = 0;
            Some(
                caps.iter()
                    .map(|&c| {
                        let block = &bits[at..at + c as usize];
                        at += c as usize;
                        block.iter().map(|&b| u64::from(b)).sum()
                    })
                    .collect(),
            )
        }
    };
    Ok(KpOutcome {
        answer: out.answer,
        exponents,
        bound,
        caps,
        stats: out.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn kp(spec: GroupSpec, elements: &[&str], target: &str) -> KpInstance {
        KpInstance {
            spec,
            elements: elements.iter().map(|s| w(s)).collect(),
            target: w(target),
        }
    }

    fn zz() -> GroupSpec {
        GroupSpec::free_product(GroupSpec::integers(), GroupSpec::integers())
    }

    #[test]
    fn sizes_and_bounds() {
        assert_eq!(instance_size_n(&kp(GroupSpec::integers(), &["x0"], "x0 x0 x0")), 4);
        assert_eq!(instance_size_n(&kp(GroupSpec::integers(), &[""], "")), 0);
        assert_eq!(instance_size_n(&kp(zz(), &["x0 x1", "x1^-1"], "x0")), 4);

        let five = kp(zz(), &["x0 x1", "x1"], "x0 x1");
        assert_eq!(exponent_bound(&five, &BoundConfig::trivial()), 45);
        assert_eq!(exponent_bound(&five, &BoundConfig::default_for(&zz())), 95);
        let one = kp(zz(), &["x0"], "");
        assert_eq!(exponent_bound(&one, &BoundConfig::trivial()), 5);

        let cfg: BoundConfig = serde_json::from_str(r#"{"p_G":[1],"p_H":[0,2]}"#).unwrap();
        assert_eq!(exponent_bound(&one, &cfg), 5 + 1 + 2);
        let z4z6 = GroupSpec::free_product(GroupSpec::cyclic(4), GroupSpec::cyclic(6));
        assert_eq!(BoundConfig::default_for(&z4z6), BoundConfig { p_g: vec![4], p_h: vec![6] });
    }

    #[test]
    fn solve_examples() {
        let out = kp_solve(&kp(zz(), &["x0", "x1"], "x0 x0 x1"), None, Exec::Sequential).unwrap();
        assert!(out.answer);
        assert_eq!(out.exponents, Some(vec![2, 1]));

        let out = kp_solve(&kp(zz(), &["x0 x1"], "x1 x0"), None, Exec::Parallel).unwrap();
        assert!(!out.answer);
        assert!(kp_bruteforce(&kp(zz(), &["x0 x1"], "x1 x0"), 50, Exec::Parallel)
            .unwrap()
            .is_none());

        let out = kp_solve(&kp(zz(), &["x0", "x0^-1"], ""), None, Exec::Sequential).unwrap();
        assert_eq!(out.exponents, Some(vec![0, 0]));

        let out = kp_solve(&kp(GroupSpec::integers(), &["x0"], "x0 x0 x0"), None, Exec::Sequential)
            .unwrap();
        assert_eq!(out.exponents, Some(vec![3]));

        let direct = kp(GroupSpec::direct(GroupSpec::integers(), GroupSpec::integers()), &[], "");
        assert!(matches!(kp_solve(&direct, None, Exec::Sequential), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bruteforce_examples() {
        let z = GroupSpec::integers();
        assert_eq!(
            kp_bruteforce(&kp(z.clone(), &["x0"], "x0 x0 x0"), 5, Exec::Sequential).unwrap(),
            Some(vec![3])
        );
        assert!(kp_bruteforce(&kp(z, &["x0 x0"], "x0 x0 x0"), 10, Exec::Sequential)
            .unwrap()
            .is_none());
        assert!(kp_bruteforce(&kp(GroupSpec::cyclic(2), &["x1"], ""), 2, Exec::Sequential)
            .unwrap()
            .is_some());
    }

    #[test]
    fn torsion_elements_get_short_blocks() {
        let z4z6 = GroupSpec::free_product(GroupSpec::cyclic(4), GroupSpec::cyclic(6));
        let out = kp_solve(&kp(z4z6, &["x1", "x5 x1"], "x3 x5 x1 x5 x1"), None, Exec::Sequential)
            .unwrap();
        assert_eq!(out.caps[0], 3);
        assert!(out.answer);
        assert_eq!(out.exponents, Some(vec![3, 2]));
    }
}
