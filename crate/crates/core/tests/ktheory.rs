#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use sphq_core::constructions::*;
use sphq_core::derived::Complex;
use sphq_core::ktheory::*;
use sphq_core::Field;

const Q: Field = Field::Rational;

#[test]
fn cartan_of_cb2() {
    assert_eq!(cartan_matrix(&cb(Q, 2).unwrap()), vec![vec![1, 1], vec![1, 2]]);
}

#[test]
fn euler_form_of_a2() {
    let form = euler_matrix(&linear_a(Q, 2).unwrap()).unwrap();
    assert_eq!(form.gram, vec![vec![1, -1], vec![0, 1]]);
}

#[test]
fn euler_form_inverts_transposed_cartan() {
    // χ(P(x), S(y)) = δ and [P(x)] = column x of C, so Cᵀ G = I.
    for (name, alg) in sphq_core::corpus::shipped_algebras(Q).unwrap() {
        let c = cartan_matrix(&alg);
        let g = euler_matrix(&alg).unwrap().gram;
        let n = c.len();
        for i in 0..n {
            for j in 0..n {
                let v: i64 = (0..n).map(|k| c[k][i] * g[k][j]).sum();
                assert_eq!(v, i64::from(i == j), "{name}");
            }
        }
    }
}

#[test]
fn ncc_orthogonal_lattice() {
    let alg = ncc(Q).unwrap();
    let form = euler_matrix(&alg).unwrap();
    let e = ncc_exceptional(&alg).unwrap();
    let class = k_class(&Complex::stalk(&e, 0));
    assert_eq!(class, vec![1, 1, 1]);
    let perp = perp_lattice(&form, &[class]);
    assert_eq!(perp.basis, vec![vec![0, 1, 1], vec![1, 1, 0]]);
    assert_eq!(perp.gram, vec![vec![0, 1], vec![-1, 0]]);
    assert!(perp.antisymmetric);
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    if rows.is_empty() {
        0
    } else {
        sphq_core::Matrix::from_ints(Q, &refs).rank()
    }
}

proptest! {
    #[test]
    fn integer_kernel_is_a_kernel_basis(rows in (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), 0..=3))) {
        let n = rows.first().map_or(1, Vec::len);
        let k = integer_kernel(&rows, n);
        prop_assert_eq!(k.len(), n - rank_of(&rows));
        for v in &k {
            for r in &rows {
                prop_assert_eq!(r.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
        prop_assert_eq!(rank_of(&k), k.len());
    }

    #[test]
    fn euler_is_additive(a in prop::collection::vec(-3i64..=3, 3), b in prop::collection::vec(-3i64..=3, 3), c in prop::collection::vec(-3i64..=3, 3)) {
        let form = euler_matrix(&ncc(Q).unwrap()).unwrap();
        let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(form.eval(&ab, &c), form.eval(&a, &c) + form.eval(&b, &c));
    }
}
