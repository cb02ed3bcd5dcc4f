use super::*;
use crate::agp::{agp_abelian, agp_bruteforce, agp_free, solve_agp};
use crate::oracle::{bsmp_bruteforce, ssp_bruteforce};
use crate::par::Exec;
use crate::problems::Certificate;
use crate::word::w;

fn ssp(spec: GroupSpec, elements: &[&str], target: &str) -> SspInstance {
    SspInstance {
        spec,
        elements: elements.iter().map(|s| w(s)).collect(),
        target: w(target),
    }
}

fn bsmp(spec: GroupSpec, gens: &[&str], target: &str, bound: usize) -> BsmpInstance {
    BsmpInstance {
        spec,
        generators: gens.iter().map(|s| w(s)).collect(),
        target: w(target),
        bound,
    }
}

#[test]
fn ssp_to_agp_examples() {
    let a = ssp_to_agp(&ssp(GroupSpec::free(1), &["x0"], "x0"));
    assert_eq!(a.graph.vertex_count, 3);
    assert_eq!(a.graph.edges.len(), 3);
    assert_eq!(a.graph.edges[2].label, w("x0^-1"));
    let out = agp_free(&a).unwrap();
    assert!(out.answer);
    let path = out.certificate.unwrap().edges;
    assert_eq!(ssp_path_to_subset(1, &path).unwrap(), vec![1]);

    let a = ssp_to_agp(&ssp(GroupSpec::free(1), &["x0"], ""));
    let path = agp_free(&a).unwrap().certificate.unwrap().edges;
    assert_eq!(ssp_path_to_subset(1, &path).unwrap(), vec![0]);

    let i = ssp(GroupSpec::free(2), &["x0", "x1"], "x0 x1");
    let path = agp_free(&ssp_to_agp(&i)).unwrap().certificate.unwrap().edges;
    assert_eq!(ssp_path_to_subset(2, &path).unwrap(), vec![1, 1]);
    assert_eq!(ssp_subset_to_path(&[1, 1]), path);
}

#[test]
fn bkp_examples() {
    let i = BkpInstance {
        spec: GroupSpec::integers(),
        elements: vec![w("x0")],
        target: w("x0 x0"),
        bound: 2,
    };
    let s = bkp_to_ssp(&i);
    assert_eq!(s.elements, vec![w("x0"), w("x0")]);
    let bits = ssp_bruteforce(&s, Exec::Sequential).unwrap().unwrap();
    assert_eq!(bkp_subset_to_exponents(2, &bits), vec![2]);
    let s = bkp_to_ssp(&BkpInstance {
        target: w("x0 x0 x0"),
        ..i
    });
    assert!(ssp_bruteforce(&s, Exec::Sequential).unwrap().is_none());
}

#[test]
fn bsmp_to_agp_examples() {
    let z2 = GroupSpec::cyclic(2);
    for (target, bound, expect) in [("x1", 1, true), ("x1", 2, true), ("", 1, true)] {
        let i = bsmp(z2.clone(), &["x1"], target, bound);
        let a = bsmp_to_agp(&i);
        assert_eq!(a.graph.vertex_count, bound + 2);
        let out = solve_agp(&a, Exec::Sequential).unwrap();
        assert_eq!(out.answer, expect);
        let seq = bsmp_path_to_sequence(1, bound, &out.certificate.unwrap().edges).unwrap();
        let cert = Certificate::Sequence { indices: seq };
        assert!(verify_certificate(&Instance::Bsmp(i), &cert).unwrap());
    }
}

#[test]
fn agp_to_ssp_examples() {
    let mut g = LabeledGraph::new(2, 0, 1);
    g.add_edge(0, 1, w("x0"));
    let r = agp_to_ssp(&AgpInstance::new(g, GroupSpec::free(1), w("")), CombineMode::Free).unwrap();
    // x = x1, y = x2 in G ∗ F₂.
    assert_eq!(r.instance.elements, vec![w("x1 x2 x1 x0 x1^-1 x1^-1 x2^-1 x1^-1 x1^-1")]);
    assert_eq!(r.instance.target, w("x1 x2 x1 x1^-1 x1^-1 x2^-1 x1^-1 x1^-1"));
    assert!(ssp_bruteforce(&r.instance, Exec::Sequential).unwrap().is_none());

    let mut g = LabeledGraph::new(2, 0, 1);
    g.add_edge(0, 1, w(""));
    let inst = AgpInstance::new(g, GroupSpec::free(1), w(""));
    for mode in [CombineMode::Free, CombineMode::Direct] {
        let r = agp_to_ssp(&inst, mode).unwrap();
        let bits = ssp_bruteforce(&r.instance, Exec::Sequential).unwrap().unwrap();
        assert_eq!(r.lift(&bits), vec![0]);
    }

    let mut g = LabeledGraph::new(3, 0, 2);
    g.add_edge(0, 1, w("x0 x0"));
    g.add_edge(1, 2, w("x0^-1 x0^-1"));
    let inst = AgpInstance::new(g, GroupSpec::integers(), w(""));
    let r = agp_to_ssp(&inst, CombineMode::Direct).unwrap();
    let bits = ssp_bruteforce(&r.instance, Exec::Sequential).unwrap().unwrap();
    assert_eq!(bits, vec![1, 1]);
    assert!(inst.accepts(&r.lift(&bits)));

    let mut cyc = LabeledGraph::new(2, 0, 1);
    cyc.add_edge(0, 1, w(""));
    cyc.add_edge(1, 0, w(""));
    let err = agp_to_ssp(&AgpInstance::new(cyc, GroupSpec::free(1), w("")), CombineMode::Free);
    assert!(matches!(err, Err(Error::CycleDetected)));
}

#[test]
fn agp_to_ssp_with_target_and_dead_ends() {
    let mut g = LabeledGraph::new(4, 0, 2);
    g.add_edge(0, 1, w("x0"));
    g.add_edge(1, 2, w("x0"));
    g.add_edge(0, 3, w("x0")); // dead end
    let inst = AgpInstance::new(g, GroupSpec::integers(), w("x0 x0"));
    let r = agp_to_ssp(&inst, CombineMode::Free).unwrap();
    assert_eq!(r.instance.elements.len(), 3);
    let bits = ssp_bruteforce(&r.instance, Exec::Sequential).unwrap().unwrap();
    let path = r.lift(&bits);
    assert_eq!(path, vec![0, 1]);
    assert!(agp_abelian(&inst).unwrap().answer);

    let unreachable = AgpInstance::new(LabeledGraph::new(2, 0, 1), GroupSpec::free(1), w(""));
    let r = agp_to_ssp(&unreachable, CombineMode::Free).unwrap();
    assert!(ssp_bruteforce(&r.instance, Exec::Sequential).unwrap().is_none());
}

#[test]
fn bsmp_to_ssp_z_examples() {
    let z2 = GroupSpec::cyclic(2);
    let family = bsmp_to_ssp_direct_z(&bsmp(z2.clone(), &["x1"], "", 2));
    assert_eq!(family.len(), 3);
    assert!(family[0].elements.is_empty());
    assert_eq!(family[0].target, w(""));
    assert_eq!(family[2].elements, vec![w("x1 x2"), w("x1 x2")]);
    assert_eq!(family[2].target, w("x2 x2"));
    assert_eq!(ssp_bruteforce(&family[2], Exec::Sequential).unwrap(), Some(vec![1, 1]));
    assert_eq!(bsmp_subset_to_sequence(1, &[1, 1]), vec![0, 0]);
    assert!(ssp_bruteforce(&family[1], Exec::Sequential).unwrap().is_none());

    let family = bsmp_to_ssp_direct_z(&bsmp(z2, &["x1"], "x1", 1));
    assert!(ssp_bruteforce(&family[1], Exec::Sequential).unwrap().is_some());
    assert!(ssp_bruteforce(&family[0], Exec::Sequential).unwrap().is_none());
}

#[test]
fn embed_examples() {
    let z = GroupSpec::integers();
    let i = Instance::Ssp(ssp(z.clone(), &["x0"], "x0"));
    let e = embed_instance(&i, &z, &[w("x0 x0")]).unwrap();
    let Instance::Ssp(s) = &e else { panic!() };
    assert_eq!(s.elements, vec![w("x0 x0")]);
    assert_eq!(s.target, w("x0 x0"));
    assert_eq!(embed_instance(&i, &z, &[w("x0")]).unwrap(), i);

    let mut g = LabeledGraph::new(2, 0, 1);
    g.add_edge(0, 1, w("x0 x1"));
    let a = Instance::Agp(AgpInstance::new(g, GroupSpec::free(2), w("x0 x1")));
    let e = embed_instance(&a, &GroupSpec::free(3), &[w("x0"), w("x1")]).unwrap();
    let Instance::Agp(ea) = &e else { panic!() };
    assert!(agp_free(ea).unwrap().answer);

    // ℤ/2 → ℤ by the generator is not a homomorphism.
    let z2 = Instance::Ssp(ssp(GroupSpec::cyclic(2), &["x1"], ""));
    assert!(matches!(
        embed_instance(&z2, &z, &[w(""), w("x0")]),
        Err(Error::InvalidMap(_))
    ));
    // ℤ/2 → ℤ/6 by a ↦ 3 is.
    assert!(embed_instance(&z2, &GroupSpec::cyclic(6), &[w(""), w("x3")]).is_ok());
    assert!(matches!(embed_instance(&i, &z, &[]), Err(Error::InvalidMap(_))));
}

#[test]
fn verify_examples() {
    let s = Instance::Ssp(ssp(GroupSpec::free(1), &["x0", "x0^-1"], ""));
    assert!(verify_certificate(&s, &Certificate::Subset { bits: vec![1, 1] }).unwrap());
    assert!(!verify_certificate(&s, &Certificate::Subset { bits: vec![1, 0] }).unwrap());
    assert!(matches!(
        verify_certificate(&s, &Certificate::Subset { bits: vec![1] }),
        Err(Error::MalformedCertificate(_))
    ));
    assert!(matches!(
        verify_certificate(&s, &Certificate::Path { edges: vec![] }),
        Err(Error::MalformedCertificate(_))
    ));

    let k = Instance::Kp(KpInstance {
        spec: GroupSpec::integers(),
        elements: vec![w("x0")],
        target: w("x0 x0 x0"),
    });
    assert!(verify_certificate(&k, &Certificate::Exponents { exponents: vec![3] }).unwrap());

    let b = Instance::Bsmp(bsmp(GroupSpec::free(2), &["x0", "x1"], "x0 x1", 2));
    assert!(verify_certificate(&b, &Certificate::Sequence { indices: vec![0, 1] }).unwrap());
    assert!(!verify_certificate(&b, &Certificate::Sequence { indices: vec![1, 0] }).unwrap());
    assert!(!verify_certificate(&b, &Certificate::Sequence { indices: vec![0, 1, 1, 1] }).unwrap());

    let mut g = LabeledGraph::new(2, 0, 1);
    g.add_edge(0, 1, w(""));
    let a = Instance::Agp(AgpInstance::new(g, GroupSpec::free(1), w("")));
    assert!(verify_certificate(&a, &Certificate::Path { edges: vec![0] }).unwrap());
    assert!(!verify_certificate(&a, &Certificate::Path { edges: vec![0, 0] }).unwrap());
    assert!(!verify_certificate(&a, &Certificate::Path { edges: vec![7] }).unwrap());
}

#[test]
fn layered_graph_agrees_with_bruteforce() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let spec = GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::cyclic(3));
    let letters = ["x1", "x3", "x4"];
    for _ in 0..100 {
        let k = rng.gen_range(1..4);
        let gens: Vec<String> = (0..k)
            .map(|_| {
                let len = rng.gen_range(0..3);
                (0..len).map(|_| letters[rng.gen_range(0..3)]).collect::<Vec<_>>().join(" ")
            })
            .collect();
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        let target = letters[rng.gen_range(0..3)];
        let i = bsmp(spec.clone(), &gens, target, rng.gen_range(0..4));
        let expect = bsmp_bruteforce(&i).unwrap().is_some();
        let a = bsmp_to_agp(&i);
        assert_eq!(solve_agp(&a, Exec::Sequential).unwrap().answer, expect);
        assert_eq!(agp_bruteforce(&a, 0, Exec::Sequential).unwrap().is_some(), expect);
    }
}
