use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use sphq_core::algebra::Algebra;
use sphq_core::constructions::*;
use sphq_core::derived::*;
use sphq_core::rep::Rep;
use sphq_core::Field;

const Q: Field = Field::Rational;

fn shipped() -> Vec<Arc<Algebra>> {
    sphq_core::corpus::shipped_algebras(Q).unwrap().into_iter().map(|(_, a)| a).collect()
}

fn standard(alg: &Arc<Algebra>, k: usize) -> Rep {
    let n = alg.num_vertices();
    match k % 3 {
        0 => Rep::simple(alg, (k / 3) % n),
        1 => Rep::projective(alg, (k / 3) % n),
        _ => Rep::injective(alg, (k / 3) % n),
    }
}

fn res(m: &Rep) -> Perfect {
    minimal_projective_resolution(m, DEFAULT_BOUND).unwrap()
}

#[test]
fn ext_between_simples_of_a2() {
    // 1 → 2: Ext^1(S1, S2) = k, everything else but End vanishes.
    let alg = linear_a(Q, 2).unwrap();
    let (s1, s2) = (Rep::simple(&alg, 0), Rep::simple(&alg, 1));
    assert_eq!(hom_profile(&res(&s1), &Complex::stalk(&s2, 0)), BTreeMap::from([(1, 1)]));
    assert!(hom_profile(&res(&s2), &Complex::stalk(&s1, 0)).is_empty());
    assert_eq!(hom_profile(&res(&s1), &Complex::stalk(&s1, 0)), BTreeMap::from([(0, 1)]));
}

#[test]
fn projective_dimension_of_cb_simple() {
    // pd S(1) = t over CB_t.
    for t in 2..=5 {
        let alg = cb(Q, t).unwrap();
        let p = res(&Rep::simple(&alg, 0));
        assert_eq!(p.range(), Some((-(t as i32), 0)), "CB_{t}");
    }
}

#[test]
fn nakayama_sends_projectives_to_injectives() {
    for alg in shipped() {
        for x in 0..alg.num_vertices() {
            let nu = nakayama(&Perfect::stalk(&alg, x, 0)).realize();
            assert_eq!(nu.piece(0).dims, Rep::injective(&alg, x).dims);
            assert_eq!(inverse_nakayama(&nakayama(&Perfect::stalk(&alg, x, 0))), Perfect::stalk(&alg, x, 0));
        }
    }
}

#[test]
fn cone_of_identity_is_acyclic() {
    for alg in shipped().into_iter().take(6) {
        let m = Rep::injective(&alg, 0);
        let c = Complex::stalk(&m, 0);
        assert!(cone(&ComplexMap::identity(&c)).unwrap().is_acyclic());
        let p = res(&m);
        let (v, _) = iso_up_to_shift(&p, &c, 0).unwrap();
        assert_eq!(v, IsoVerdict::Iso);
    }
}

#[test]
fn shifts_move_profiles() {
    let alg = cb(Q, 3).unwrap();
    let p = res(&Rep::simple(&alg, 0));
    let base = hom_profile(&p, &p.realize());
    let shifted = hom_profile(&p, &p.shift(2).realize());
    let moved: BTreeMap<i32, usize> = base.iter().map(|(&i, &d)| (i - 2, d)).collect();
    assert_eq!(shifted, moved);
}

#[test]
fn quasi_simple_kronecker_is_tau_periodic() {
    let k = kronecker(Q, 2).unwrap();
    let m = kronecker_module(&k, "a", "b", &Q.int(3)).unwrap();
    let t = tau(&res(&m), DEFAULT_BOUND).unwrap();
    assert_eq!(iso_up_to_shift(&t, &Complex::stalk(&m, 0), 0).unwrap().0, IsoVerdict::Iso);
    let other = kronecker_module(&k, "a", "b", &Q.int(2)).unwrap();
    assert_ne!(iso_up_to_shift(&t, &Complex::stalk(&other, 0), 0).unwrap().0, IsoVerdict::Iso);
}

#[test]
fn resolving_too_deep_reports_the_bound() {
    let alg = ci(Q, 2).unwrap();
    let err = minimal_projective_resolution(&Rep::simple(&alg, 0), 5).unwrap_err();
    assert_eq!(err, sphq_core::Error::GlobalDimensionExceeded(5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]
    #[test]
    fn serre_duality(alg_ix in 0usize..32, a in 0usize..60, b in 0usize..60) {
        let algs = shipped();
        let alg = &algs[alg_ix % algs.len()];
        let (ma, mb) = (standard(alg, a), standard(alg, b));
        let (pa, pb) = (res(&ma), res(&mb));
        let lhs = hom_profile(&pa, &Complex::stalk(&mb, 0));
        let rhs: BTreeMap<i32, usize> = hom_profile(&pb, &nakayama(&pa).realize()).into_iter().map(|(i, d)| (-i, d)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resolutions_are_minimal_and_exact(alg_ix in 0usize..32, a in 0usize..60) {
        let algs = shipped();
        let alg = &algs[alg_ix % algs.len()];
        let m = standard(alg, a);
        let p = res(&m);
        prop_assert!(p.is_complex() && p.is_minimal());
        let r = p.realize();
        prop_assert_eq!(r.cohomology_dims(0), m.dims.clone());
        for i in r.degrees() {
            if i != 0 {
                prop_assert!(r.cohomology_dims(i).iter().all(|&d| d == 0));
            }
        }
    }

    #[test]
    fn direct_sums_add_profiles(alg_ix in 0usize..32, a in 0usize..60, b in 0usize..60, c in 0usize..60) {
        let algs = shipped();
        let alg = &algs[alg_ix % algs.len()];
        let (pa, pb) = (res(&standard(alg, a)), res(&standard(alg, b)));
        let target = Complex::stalk(&standard(alg, c), 0);
        let sum = hom_profile(&Perfect::direct_sum(&pa, &pb), &target);
        let mut parts = hom_profile(&pa, &target);
        for (i, d) in hom_profile(&pb, &target) {
            *parts.entry(i).or_default() += d;
        }
        prop_assert_eq!(sum, parts);
    }
}
