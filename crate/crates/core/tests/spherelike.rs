use std::collections::BTreeMap;

use proptest::prelude::*;
use sphq_core::constructions::*;
use sphq_core::derived::{minimal_projective_resolution, Perfect, DEFAULT_BOUND};
use sphq_core::rep::Rep;
use sphq_core::spherelike::*;
use sphq_core::{Error, Field};

const Q: Field = Field::Rational;

fn res(m: &Rep) -> Perfect {
    minimal_projective_resolution(m, DEFAULT_BOUND).unwrap()
}

#[test]
fn cb_simples_are_spherical() {
    for t in 2..=5 {
        let alg = cb(Q, t).unwrap();
        let r = classify_spherelike("S1", &res(&Rep::simple(&alg, 0))).unwrap();
        assert_eq!((r.verdict, r.d), (Verdict::Spherical, Some(t as i32)));
        assert_eq!(r.profile, BTreeMap::from([(0, 1), (t as i32, 1)]));
        assert!(fractional_cy_check(&res(&Rep::simple(&alg, 0)), 1, t as i32).unwrap());
    }
}

#[test]
fn exceptional_objects_are_not_spherelike() {
    let alg = linear_a(Q, 3).unwrap();
    for x in 0..3 {
        let r = classify_spherelike("S", &res(&Rep::simple(&alg, x))).unwrap();
        assert_eq!(r.verdict, Verdict::NotSpherelike);
        assert_eq!(r.profile, BTreeMap::from([(0, 1)]));
    }
}

#[test]
fn decomposable_zero_spherelike() {
    let a2 = linear_a(Q, 2).unwrap();
    let isolated = tack(&a2, &{
        let mut q = sphq_core::algebra::Quiver::new();
        q.add_vertex("x");
        q
    }, "x", &BTreeMap::new(), "").unwrap().0;
    let m = Rep::direct_sum(&[&Rep::simple(&isolated, 0), &Rep::simple(&isolated, 2)]);
    let r = classify_spherelike("S1+Sx", &res(&m)).unwrap();
    assert_eq!(r.verdict, Verdict::Decomposable0Spherelike);
    assert_eq!(asphericality(&res(&m), &r).unwrap_err(), Error::DZeroUnsupported);
}

#[test]
fn spherical_objects_have_acyclic_asphericality() {
    let alg = cb(Q, 3).unwrap();
    let f = res(&Rep::simple(&alg, 0));
    let r = classify_spherelike("S1", &f).unwrap();
    let q = asphericality(&f, &r).unwrap();
    assert!(q.is_acyclic());
    for x in 0..alg.num_vertices() {
        assert!(in_spherical_subcat(&res(&Rep::simple(&alg, x)), &q));
    }
}

#[test]
fn properly_spherelike_after_insertion() {
    let small = cb(Q, 2).unwrap();
    let (big, emb) = insert_an(&small, "1", 1).unwrap();
    let f = induce(&emb, &res(&Rep::simple(&small, 0))).unwrap();
    let r = classify_spherelike("jS1", &f).unwrap();
    assert_eq!((r.verdict, r.d), (Verdict::ProperlySpherelike, Some(2)));
    let q = asphericality(&f, &r).unwrap();
    assert!(!q.is_acyclic());
    // F always lies in its own spherical subcategory.
    assert!(in_spherical_subcat(&f, &q));
    assert_eq!(big.num_vertices(), 3);
}

#[test]
fn interval_and_cointerval_modules() {
    let alg = linear_a(Q, 3).unwrap();
    assert_eq!(interval_module(&alg, 0, 2).dims, vec![1, 1, 0]);
    assert_eq!(cointerval_module(&alg, 2, 2).dims, vec![0, 1, 1]);
    assert!(modules_isomorphic(&interval_module(&alg, 0, 3), &Rep::projective(&alg, 0)).unwrap());
    assert!(modules_isomorphic(&interval_module(&alg, 1, 2), &cointerval_module(&alg, 2, 2)).unwrap());
    assert!(!modules_isomorphic(&interval_module(&alg, 0, 2), &cointerval_module(&alg, 2, 2)).unwrap());
}

#[test]
fn scan_is_deterministic_and_ordered() {
    let (alg, _) = dda(Q, 1, 3, 0).unwrap();
    let a = scan(&alg, &CandidateSet::DimBound(6)).unwrap();
    let b = scan(&alg, &CandidateSet::DimBound(6)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let labels: Vec<&str> = a.iter().map(|e| e.object.as_str()).collect();
    let mut again = labels.clone();
    again.dedup();
    assert_eq!(labels, again);
}

#[test]
fn zero_spherical_interval_module_over_smallest_dda() {
    let (alg, _) = dda(Q, 1, 2, 0).unwrap();
    let hits: Vec<String> = scan(&alg, &CandidateSet::AllIntervalModules)
        .unwrap()
        .into_iter()
        .filter_map(|e| e.report.filter(|r| r.verdict == Verdict::Spherical && r.d == Some(0)).map(|r| r.object))
        .collect();
    assert!(!hits.is_empty());
}

#[test]
fn global_dimension_of_examples() {
    assert_eq!(global_dimension(&linear_a(Q, 3).unwrap(), DEFAULT_BOUND).unwrap(), 1);
    assert_eq!(global_dimension(&cb(Q, 4).unwrap(), DEFAULT_BOUND).unwrap(), 4);
    assert_eq!(global_dimension(&auslander_x3(Q).unwrap(), DEFAULT_BOUND).unwrap(), 2);
    assert!(global_dimension(&ci(Q, 2).unwrap(), 8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn spherical_verdicts_never_have_negative_d(r in 1usize..=3, extra in 1usize..=2, m in 0usize..=2) {
        let n = r + extra;
        let (alg, _) = dda(Q, r, n, m).unwrap();
        for e in scan(&alg, &CandidateSet::DimBound(usize::MAX)).unwrap() {
            if let Some(rep) = e.report {
                if rep.verdict == Verdict::Spherical {
                    prop_assert!(rep.d.unwrap() >= 0);
                }
            }
        }
    }
}
