use proptest::prelude::*;
use sphq_core::{Field, Matrix, Scalar};

fn fields() -> Vec<Field> {
    vec![Field::Rational, Field::prime(5).unwrap(), Field::prime(2_147_483_647).unwrap()]
}

fn matrix(f: Field, rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_ints(f, &refs)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

#[test]
fn scalar_arithmetic() {
    let q = Field::Rational;
    let half = q.frac(1, 2);
    assert_eq!(&half + &half, q.one());
    assert_eq!(q.parse("-3/6").unwrap(), q.frac(-1, 2));
    assert_eq!(half.inv(), q.int(2));
    let f7 = Field::prime(7).unwrap();
    assert_eq!(&f7.int(3) * &f7.int(5), f7.int(1));
    assert_eq!(f7.int(3).inv(), f7.int(5));
    assert_eq!(f7.int(-1), f7.int(6));
    assert!(Field::prime(9).is_err());
    assert!(q.parse("1/0").is_err());
}

#[test]
fn rank_of_known_matrices() {
    let q = Field::Rational;
    assert_eq!(matrix(q, &[vec![1, 2], vec![2, 4]]).rank(), 1);
    assert_eq!(matrix(q, &[vec![1, 2], vec![3, 4]]).rank(), 2);
    // Singular mod 2 only.
    assert_eq!(matrix(Field::prime(2).unwrap(), &[vec![1, 1], vec![1, 3]]).rank(), 1);
    assert_eq!(matrix(q, &[vec![1, 1], vec![1, 3]]).rank(), 2);
}

proptest! {
    #[test]
    fn kernel_is_annihilated_and_complements_rank(rows in small_matrix()) {
        for f in fields() {
            let a = matrix(f, &rows);
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }
    }

    #[test]
    fn rref_is_idempotent(rows in small_matrix()) {
        for f in fields() {
            let (r, pivots) = matrix(f, &rows).rref();
            let (rr, pivots2) = r.rref();
            prop_assert_eq!(&rr, &r);
            prop_assert_eq!(pivots, pivots2);
        }
    }

    #[test]
    fn inverse_when_full_rank(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        for f in fields() {
            let a = matrix(f, &rows);
            match a.inverse() {
                Some(inv) => {
                    prop_assert_eq!(a.rank(), 3);
                    prop_assert_eq!(a.mul(&inv), Matrix::identity(f, 3));
                    prop_assert_eq!(inv.mul(&a), Matrix::identity(f, 3));
                }
                None => prop_assert!(a.rank() < 3),
            }
        }
    }

    #[test]
    fn solve_recovers_a_preimage(rows in small_matrix(), x in prop::collection::vec(-3i64..=3, 4)) {
        let f = Field::Rational;
        let a = matrix(f, &rows);
        let xs: Vec<Scalar> = x.iter().take(a.cols()).map(|&v| f.int(v)).collect();
        let b = a.mul_vec(&xs);
        let sol = a.solve(&b).expect("b lies in the image");
        prop_assert_eq!(a.mul_vec(&sol), b);
    }

    #[test]
    fn transpose_reverses_products(a in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 2),
                                   b in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3)) {
        let f = Field::Rational;
        let (ma, mb) = (matrix(f, &a), matrix(f, &b));
        prop_assert_eq!(ma.mul(&mb).transpose(), mb.transpose().mul(&ma.transpose()));
    }
}
