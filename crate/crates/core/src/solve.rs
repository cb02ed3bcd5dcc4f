//! One entry point per problem: route to the polynomial-time pipeline and
//! translate its witness into the problem's own certificate.

use serde::Serialize;

use crate::agp::{rational_membership, solve_agp, AgpStats};
use crate::error::Result;
use crate::knapsack::{kp_solve, BoundConfig};
use crate::par::Exec;
use crate::problems::{Certificate, Instance};
use crate::reductions::{
    bkp_subset_to_exponents, bkp_to_ssp, bsmp_path_to_sequence, bsmp_to_agp, ssp_path_to_subset,
    ssp_to_agp,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub answer: bool,
    pub certificate: Option<Certificate>,
    pub stats: AgpStats,
}

/// Decides an instance. `kp_bounds` overrides the default factor
/// polynomials for knapsack.
pub fn solve(inst: &Instance, kp_bounds: Option<&BoundConfig>, exec: Exec) -> Result<Solution> {
    inst.validate()?;
    let (answer, certificate, stats) = match inst {
        Instance::Agp(i) => {
            let out = solve_agp(i, exec)?;
            let cert = out.certificate.map(|c| Certificate::Path { edges: c.edges });
            (out.answer, cert, out.stats)
        }
        Instance::Ssp(i) => {
            let out = solve_agp(&ssp_to_agp(i), exec)?;
            let cert = match out.certificate {
                Some(c) => Some(Certificate::Subset {
                    bits: ssp_path_to_subset(i.elements.len(), &c.edges)?,
                }),
                None => None,
            };
            (out.answer, cert, out.stats)
        }
        Instance::Bkp(i) => {
            let ssp = bkp_to_ssp(i);
            let out = solve_agp(&ssp_to_agp(&ssp), exec)?;
            let cert = match out.certificate {
                Some(c) => {
                    let bits = ssp_path_to_subset(ssp.elements.len(), &c.edges)?;
                    Some(Certificate::Exponents {
                        exponents: bkp_subset_to_exponents(i.bound, &bits),
                    })
                }
                None => None,
            };
            (out.answer, cert, out.stats)
        }
        Instance::Bsmp(i) => {
            let out = solve_agp(&bsmp_to_agp(i), exec)?;
            let cert = match out.certificate {
                Some(c) => Some(Certificate::Sequence {
                    indices: bsmp_path_to_sequence(i.generators.len(), i.bound, &c.edges)?,
                }),
                None => None,
            };
            (out.answer, cert, out.stats)
        }
        Instance::Kp(i) => {
            let out = kp_solve(i, kp_bounds, exec)?;
            let cert = out.exponents.map(|exponents| Certificate::Exponents { exponents });
            (out.answer, cert, out.stats)
        }
        Instance::Rational(i) => {
            let out = rational_membership(&i.automaton, &i.word, &i.spec, exec)?;
            let cert = out.path.map(|edges| Certificate::Path { edges });
            (out.answer, cert, out.stats)
        }
    };
    Ok(Solution {
        answer,
        certificate,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, named_spec, GenParams};
    use crate::oracle::oracle;
    use crate::problems::ProblemKind;
    use crate::reductions::verify_certificate;

    #[test]
    fn solver_matches_oracle_on_small_corpus() {
        let pairs = [
            (ProblemKind::Ssp, "free2"),
            (ProblemKind::Ssp, "f2xz"),
            (ProblemKind::Ssp, "amalgam_z4z6"),
            (ProblemKind::Bkp, "z"),
            (ProblemKind::Bkp, "zmod6"),
            (ProblemKind::Bsmp, "z2xz3"),
            (ProblemKind::Bsmp, "zstarz2"),
            (ProblemKind::Kp, "zstarz"),
            (ProblemKind::Kp, "z4starz6"),
            (ProblemKind::Agp, "f2starz2"),
            (ProblemKind::Agp, "z2"),
            (ProblemKind::Rational, "z2starz3"),
        ];
        for (problem, name) in pairs {
            let spec = named_spec(name).unwrap();
            for seed in 0..6 {
                let p = GenParams {
                    k: 2,
                    max_len: 2,
                    planted: seed % 2 == 0,
                    ..GenParams::default()
                };
                let g = generate(problem, &spec, seed, &p);
                let sol = solve(&g.instance, None, Exec::Parallel).unwrap();
                let bound = if problem == ProblemKind::Kp { 12 } else { 8 };
                let truth = oracle(&g.instance, bound, Exec::Parallel).unwrap();
                if problem == ProblemKind::Kp || problem == ProblemKind::Rational {
                    // The oracle is bounded: it may only miss solutions.
                    assert!(sol.answer || truth.is_none(), "{problem:?} {name} {seed}");
                } else {
                    assert_eq!(sol.answer, truth.is_some(), "{problem:?} {name} {seed}");
                }
                if g.certificate.is_some() {
                    assert!(sol.answer);
                }
                if let Some(c) = &sol.certificate {
                    assert!(verify_certificate(&g.instance, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn nested_amalgam_is_unsupported() {
        let spec = named_spec("nested_amalgam").unwrap();
        let g = generate(ProblemKind::Ssp, &spec, 1, &GenParams::default());
        assert!(matches!(
            solve(&g.instance, None, Exec::Sequential),
            Err(crate::Error::Unsupported(_))
        ));
    }
}
