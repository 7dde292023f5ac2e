use std::sync::Arc;

use proptest::prelude::*;
use sphq_core::algebra::Algebra;
use sphq_core::constructions::*;
use sphq_core::rep::*;
use sphq_core::{Field, Matrix};

const Q: Field = Field::Rational;

fn shipped() -> Vec<Arc<Algebra>> {
    sphq_core::corpus::shipped_algebras(Q).unwrap().into_iter().map(|(_, a)| a).collect()
}

#[test]
fn projectives_and_injectives_add_up_to_the_algebra() {
    for alg in shipped() {
        let n = alg.num_vertices();
        let p: usize = (0..n).map(|x| Rep::projective(&alg, x).total_dim()).sum();
        let i: usize = (0..n).map(|x| Rep::injective(&alg, x).total_dim()).sum();
        assert_eq!(p, alg.dim());
        assert_eq!(i, alg.dim());
        for x in 0..n {
            assert!(Rep::projective(&alg, x).satisfies_relations());
            assert!(Rep::injective(&alg, x).satisfies_relations());
        }
    }
}

#[test]
fn homs_between_projectives_of_linear_quiver() {
    // Over 1 → 2 → … → n, Hom(P(i), P(j)) = k exactly when j ≤ i.
    let n = 4;
    let alg = linear_a(Q, n).unwrap();
    for i in 0..n {
        for j in 0..n {
            let d = hom_dim(&Rep::projective(&alg, i), &Rep::projective(&alg, j)).unwrap();
            assert_eq!(d, usize::from(j <= i), "Hom(P{}, P{})", i + 1, j + 1);
        }
    }
}

#[test]
fn hom_from_projective_reads_the_vertex() {
    for alg in shipped() {
        let m = Rep::injective(&alg, 0);
        for x in 0..alg.num_vertices() {
            assert_eq!(hom_dim(&Rep::projective(&alg, x), &m).unwrap(), m.dims[x]);
        }
    }
}

#[test]
fn endomorphism_shapes() {
    let dual = ci(Q, 1).unwrap();
    assert_eq!(end_analysis(&Rep::projective(&dual, 0)).unwrap().shape, EndShape::DualNumbers);
    let a2 = linear_a(Q, 2).unwrap();
    let split = Rep::direct_sum(&[&Rep::simple(&a2, 0), &Rep::simple(&a2, 1)]);
    assert_eq!(end_analysis(&split).unwrap().shape, EndShape::Split);
    assert_eq!(end_analysis(&Rep::simple(&a2, 0)).unwrap().shape, EndShape::Field);
    // k ⇉ k ⊗ k² with a = 1, b = rotation: End ≅ Q(i).
    let k = kronecker(Q, 2).unwrap();
    let rot = Matrix::from_ints(Q, &[&[0, -1], &[1, 0]]);
    let m = Rep::new(&k, vec![2, 2], vec![Matrix::identity(Q, 2), rot]).unwrap();
    assert_eq!(end_analysis(&m).unwrap().shape, EndShape::QuadraticField);
}

#[test]
fn relations_are_enforced() {
    let alg = cb(Q, 2).unwrap();
    let one = Matrix::identity(Q, 1);
    // a1 a2 = 0 is violated by the all-ones representation.
    assert!(Rep::new(&alg, vec![1, 1], vec![one.clone(), one]).is_err());
}

#[test]
fn radical_of_projective_over_linear_quiver() {
    let alg = linear_a(Q, 3).unwrap();
    let (rad, top) = top_and_radical(&Rep::projective(&alg, 0));
    assert_eq!(top.dims, vec![1, 0, 0]);
    assert_eq!(rad.dims, vec![0, 1, 1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn kernel_plus_image_is_source(alg_ix in 0usize..20, x in 0usize..12, y in 0usize..12, coeffs in prop::collection::vec(-2i64..=2, 8)) {
        let algs = shipped();
        let alg = &algs[alg_ix % algs.len()];
        let n = alg.num_vertices();
        let (m, t) = (Rep::projective(alg, x % n), Rep::injective(alg, y % n));
        let basis = hom_basis(&m, &t).unwrap();
        let mut f = Morphism::zero(&m, &t);
        for (b, &c) in basis.iter().zip(&coeffs) {
            f.mats = f.mats.iter().zip(&b.mats).map(|(a, bm)| a.add(&bm.scale(&Q.int(c)))).collect();
        }
        prop_assert!(f.is_valid());
        let kc = kernel_cokernel(&f);
        prop_assert_eq!(kc.kernel.total_dim() + f.rank(), m.total_dim());
        prop_assert_eq!(kc.cokernel.total_dim() + f.rank(), t.total_dim());
        prop_assert!(kc.inclusion.is_valid() && kc.projection.is_valid());
    }
}
