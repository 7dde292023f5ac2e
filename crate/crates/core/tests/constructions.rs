use std::collections::BTreeMap;

use sphq_core::algebra::Quiver;
use sphq_core::constructions::*;
use sphq_core::derived::{minimal_projective_resolution, Perfect, DEFAULT_BOUND};
use sphq_core::rep::Rep;
use sphq_core::{Error, Field};

const Q: Field = Field::Rational;

fn point(name: &str) -> Quiver {
    let mut q = Quiver::new();
    q.add_vertex(name);
    q
}

#[test]
fn insertion_into_cb2_gives_c3_2() {
    let (big, emb) = insert_an(&cb(Q, 2).unwrap(), "1", 1).unwrap();
    let (c32, _) = circular(Q, 3, &[2]).unwrap();
    assert!(quivers_isomorphic(&big.quiver, &c32.quiver));
    // Path count of C_3(2): 3 trivial, 3 arrows, 2 of length two, 1 of length three.
    assert_eq!(big.dim(), 9);
    assert_eq!(big.dim(), c32.dim());
    emb.verify().unwrap();
}

#[test]
fn dda_insertion_cross_check() {
    // Λ(r, n, m) is Λ(r, r+1, m) with A_{n−r−1} inserted after the trivalent vertex.
    for (r, n, m) in [(1, 3, 0), (1, 4, 0), (1, 4, 2), (2, 4, 1), (2, 5, 1), (3, 5, 2)] {
        let (base, _) = dda(Q, r, r + 1, m).unwrap();
        let (inserted, _) = insert_an(&base, "1", n - r - 1).unwrap();
        let (direct, _) = dda(Q, r, n, m).unwrap();
        assert!(quivers_isomorphic(&inserted.quiver, &direct.quiver), "Λ({r},{n},{m})");
        assert_eq!(inserted.dim(), direct.dim(), "Λ({r},{n},{m})");
    }
}

#[test]
fn dda_tail_attaches_at_trivalent_vertex() {
    let (alg, _) = dda(Q, 2, 3, 1).unwrap();
    let t = alg.vertex("T1").unwrap();
    let target = alg.quiver.arrows.iter().find(|a| a.from == t).unwrap().to;
    assert_eq!(alg.vertex_name(target), "3");
    assert!(dda(Q, 3, 3, 0).is_err());
}

#[test]
fn circular_corner_embedding() {
    let (alg, emb) = circular(Q, 7, &[5]).unwrap();
    emb.verify().unwrap();
    assert_eq!(emb.vertex_map.iter().map(|&v| alg.vertex_name(v)).collect::<Vec<_>>(), vec!["5", "7"]);
    let p = induce(&emb, &Perfect::stalk(&emb.small, 0, 0)).unwrap();
    assert_eq!(p, Perfect::stalk(&alg, alg.vertex("5").unwrap(), 0));
    assert!(circular(Q, 5, &[3, 2]).is_err());
    assert!(circular(Q, 5, &[5]).is_err());
}

#[test]
fn tacking_errors() {
    let k = kronecker(Q, 2).unwrap();
    let mut t = Quiver::new();
    t.add_vertex("u");
    t.add_vertex("v");
    t.add_arrow("e", "u", "v").unwrap();
    assert_eq!(tack(&k, &t, "u", &BTreeMap::new(), "T").unwrap_err(), Error::NotASink("u".into()));
    let mut cyc = t.clone();
    cyc.add_arrow("f", "v", "u").unwrap();
    assert!(tack(&k, &cyc, "v", &BTreeMap::new(), "T").is_err());
    let bad = BTreeMap::from([("9".to_string(), 1)]);
    assert!(matches!(tack(&k, &t, "v", &bad, "T"), Err(Error::UnknownVertex(_))));
    let (big, emb) = tack(&k, &t, "v", &BTreeMap::from([("1".to_string(), 2)]), "T").unwrap();
    assert_eq!(big.quiver.arrows.len(), 2 + 1 + 2);
    emb.verify().unwrap();
}

#[test]
fn tacking_keeps_modules_but_not_always_sphericity() {
    let k = kronecker(Q, 2).unwrap();
    let m = kronecker_module(&k, "a", "b", &Q.int(2)).unwrap();
    let f = minimal_projective_resolution(&m, DEFAULT_BOUND).unwrap();
    for (x, spherical) in [("1", false), ("2", false)] {
        let (_, emb) = tack(&k, &point("t"), "t", &BTreeMap::from([(x.to_string(), 1)]), "").unwrap();
        let r = sphq_core::spherelike::classify_spherelike("jM", &induce(&emb, &f).unwrap()).unwrap();
        assert_eq!(r.verdict == sphq_core::spherelike::Verdict::Spherical, spherical, "tack at {x}");
        assert_eq!(r.d, Some(1));
    }
}

#[test]
fn tensor_requires_relation_free_factors() {
    let k = kronecker(Q, 2).unwrap();
    assert_eq!(tensor_algebra(&cb(Q, 2).unwrap(), &k).unwrap_err(), Error::HasRelations);
    let t = tensor_algebra(&k, &k).unwrap();
    assert_eq!(t.num_vertices(), 4);
    assert_eq!(t.relations.len(), 4);
}

#[test]
fn canonical_algebra_shape() {
    let alg = canonical(Q, &[2, 2, 2], &[Q.one()]).unwrap();
    assert_eq!(alg.num_vertices(), 5);
    assert_eq!(alg.quiver.arrows.len(), 6);
    assert_eq!(alg.relations.len(), 1);
    for i in 1..=3 {
        let f = canonical_arm_module(&alg, i).unwrap();
        // dim P(0) = 1 + 3 + 2 and P(1) is simple.
        assert_eq!(f.total_dim(), 5, "F{i}");
        assert_eq!(canonical_arm_interior(&alg, i).len(), 1);
    }
    assert!(canonical(Q, &[2, 2, 2], &[Q.zero()]).is_err());
    assert!(canonical(Q, &[1, 2, 2], &[Q.int(3)]).is_err());
}

#[test]
fn synthesized_signatures_follow_down_sets() {
    let p = FinitePoset { size: 3, less: vec![(1, 2), (2, 3)] };
    let syn = synthesize_poset_algebra(Q, &p).unwrap();
    assert_eq!(syn.alg.num_vertices(), 9);
    let tails: Vec<Vec<&String>> = syn.signatures.iter().map(|s| s.iter().filter(|v| !v.contains('\'')).collect()).collect();
    assert_eq!(tails, vec![vec!["1"], vec!["1", "2"], vec!["1", "2", "3"]]);
    assert!(FinitePoset { size: 2, less: vec![(1, 2), (2, 1)] }.validate().is_err());
}

#[test]
fn quiver_isomorphism_negative_control() {
    let a = kronecker(Q, 2).unwrap();
    let b = linear_a(Q, 2).unwrap();
    assert!(!quivers_isomorphic(&a.quiver, &b.quiver));
    let (c, _) = circular(Q, 4, &[2]).unwrap();
    let (d, _) = circular(Q, 4, &[1]).unwrap();
    assert!(quivers_isomorphic(&c.quiver, &d.quiver));
}

#[test]
fn family_specs_parse() {
    assert_eq!(parse_family("circular:7:5").unwrap(), FamilySpec::Circular { n: 7, rels: vec![5] });
    assert_eq!(parse_family("dda:2,3,1").unwrap(), FamilySpec::Dda { r: 2, n: 3, m: 1 });
    assert_eq!(
        parse_family("canonical:2,2,2:1").unwrap(),
        FamilySpec::Canonical { p: vec![2, 2, 2], lambda: vec!["1".into()] }
    );
    assert!(matches!(parse_family("pipeline:x"), Err(Error::UnsupportedFamily(_))));
    assert!(parse_family("dda:1,2").is_err());
    let (alg, emb) = family(Q, &parse_family("cb:3").unwrap()).unwrap();
    assert_eq!(alg.dim(), 7);
    assert!(emb.is_none());
}

#[test]
fn induced_simple_from_corner_is_a_string_complex() {
    let (alg, emb) = circular(Q, 7, &[5]).unwrap();
    let s = minimal_projective_resolution(&Rep::simple(&emb.small, 0), DEFAULT_BOUND).unwrap();
    let j = induce(&emb, &s).unwrap();
    let names: Vec<Vec<&str>> = j.terms.values().map(|t| t.iter().map(|&v| alg.vertex_name(v)).collect()).collect();
    assert_eq!(names, vec![vec!["5"], vec!["7"], vec!["5"]]);
}
