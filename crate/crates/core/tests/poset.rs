use std::collections::BTreeSet;

use sphq_core::constructions::FinitePoset;
use sphq_core::poset::*;
use sphq_core::{Error, Field};

const Q: Field = Field::Rational;

fn synth(size: usize, less: &[(usize, usize)]) -> SpherelikePoset {
    build_synthesized(Q, &FinitePoset { size, less: less.to_vec() }).unwrap()
}

fn vs(names: &[&str]) -> SubcatSignature {
    SubcatSignature {
        kind: SignatureKind::VertexSupported { vertices: names.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>() },
        provenance: String::new(),
    }
}

#[test]
fn signature_comparison() {
    assert_eq!(compare(&vs(&["1"]), &vs(&["1", "2"])).unwrap(), Comparison::Less);
    assert_eq!(compare(&vs(&["1", "2"]), &vs(&["1"])).unwrap(), Comparison::Greater);
    assert_eq!(compare(&vs(&["1"]), &vs(&["2"])).unwrap(), Comparison::Incomparable);
    assert_eq!(compare(&vs(&["1"]), &vs(&["1"])).unwrap(), Comparison::Equal);
    let whole = SubcatSignature { kind: SignatureKind::WholeCategory, provenance: String::new() };
    assert_eq!(compare(&whole, &vs(&["1"])).unwrap(), Comparison::Greater);
    let classified = SubcatSignature {
        kind: SignatureKind::Classified { components: vec![("X_1".into(), "X".into())] },
        provenance: String::new(),
    };
    assert!(matches!(compare(&classified, &vs(&["1"])), Err(Error::IncompatibleKinds(_))));
}

#[test]
fn synthesized_posets_reproduce_their_input() {
    let chain = synth(3, &[(1, 2), (2, 3), (1, 3)]);
    assert_eq!(stats(&chain), PosetStats { cardinality: 3, height: 3, width: 1 });
    assert_eq!(hasse_edges(&chain), vec![(0, 1), (1, 2)]);
    let anti = synth(3, &[]);
    assert_eq!(stats(&anti), PosetStats { cardinality: 3, height: 1, width: 3 });
    let diamond = synth(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]);
    assert_eq!(stats(&diamond), PosetStats { cardinality: 4, height: 3, width: 2 });
    let mut covers = hasse_edges(&diamond);
    covers.sort();
    assert_eq!(covers, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    for p in [&chain, &anti, &diamond] {
        verify_edges(p).unwrap();
    }
}

#[test]
fn canonical_poset_shape() {
    let p = build_canonical(Q, &[2, 2, 2], &[Q.one()]).unwrap();
    assert_eq!(stats(&p), PosetStats { cardinality: 4, height: 2, width: 3 });
    verify_edges(&p).unwrap();
    let top = p.nodes.iter().position(|n| n.signature.kind == SignatureKind::WholeCategory).unwrap();
    for i in 0..4 {
        assert_eq!(p.less(i, top), i != top);
    }
}

#[test]
fn corrupted_witness_fails_verification() {
    let mut p = synth(2, &[(1, 2)]);
    verify_edges(&p).unwrap();
    assert!(!p.witnesses.is_empty());
    p.witnesses[0].hom_q_to[0] += 1;
    assert!(matches!(verify_edges(&p), Err(Error::WitnessFailed(_))));
}

#[test]
fn reversed_relation_fails_verification() {
    let mut p = synth(2, &[(1, 2)]);
    p.relation = vec![(1, 0)];
    p.witnesses.clear();
    assert!(verify_edges(&p).is_err());
}

#[test]
fn poset_without_objects_cannot_be_verified() {
    let mut p = synth(1, &[]);
    p.data = None;
    assert!(matches!(verify_edges(&p), Err(Error::WitnessFailed(_))));
}

#[test]
fn dot_output_labels_nodes() {
    let p = build_dda(Q, 1, 2, 0).unwrap();
    let dot = hasse_dot(&p);
    assert!(dot.starts_with("digraph P {\n"));
    assert!(dot.contains("label=\"D_"));
    assert!(dot.contains("label=\"D_D(d="), "{dot}");
    assert_eq!(p.nodes.len(), 1);
}

#[test]
fn poset_family_parsing() {
    assert_eq!(parse_poset_family("dda:1,2,0").unwrap(), PosetFamily::Dda { r: 1, n: 2, m: 0 });
    assert!(matches!(parse_poset_family("cb:3"), Err(Error::UnsupportedFamily(_))));
    assert!(parse_poset_family("pipeline:x").is_err());
}

#[test]
fn builds_are_deterministic() {
    let a = serde_json::to_string(&build_dda(Q, 2, 3, 1).unwrap()).unwrap();
    let b = serde_json::to_string(&build_dda(Q, 2, 3, 1).unwrap()).unwrap();
    assert_eq!(a, b);
}
