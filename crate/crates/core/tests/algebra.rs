use std::sync::Arc;

use proptest::prelude::*;
use sphq_core::algebra::{Algebra, Quiver, Relation};
use sphq_core::constructions::*;
use sphq_core::{Error, Field};

const Q: Field = Field::Rational;

/// Counts paths (trivial ones included) that contain no relation path as a
/// contiguous block. Only valid for monomial relations.
fn monomial_path_count(alg: &Algebra, max_len: usize) -> usize {
    let q = &alg.quiver;
    let zero: Vec<Vec<usize>> = alg.relations.iter().map(|r| r.terms[0].1.arrows.clone()).collect();
    let bad = |p: &[usize]| zero.iter().any(|z| p.windows(z.len()).any(|w| w == z.as_slice()));
    let mut count = q.vertices.len();
    let mut frontier: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
    for _ in 0..max_len {
        frontier.retain(|p| !bad(p));
        count += frontier.len();
        let mut next = Vec::new();
        for p in &frontier {
            let end = q.arrows[*p.last().unwrap()].to;
            for (a, ar) in q.arrows.iter().enumerate() {
                if ar.from == end {
                    let mut x = p.clone();
                    x.push(a);
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    assert!(frontier.iter().all(|p| bad(p)), "path count did not stabilize");
    count
}

fn monomial(alg: &Arc<Algebra>) -> usize {
    monomial_path_count(alg, 40)
}

#[test]
fn monomial_dims_match_path_counts() {
    for t in 2..=5 {
        let a = cb(Q, t).unwrap();
        assert_eq!(a.dim(), monomial(&a), "CB_{t}");
        assert_eq!(a.dim(), 2 * t + 1, "CB_{t}");
    }
    for d in 1..=4 {
        let a = ci(Q, d).unwrap();
        assert_eq!(a.dim(), monomial(&a), "CI_{d}");
        assert_eq!(a.dim(), 2 * d, "CI_{d}");
    }
    let (c75, _) = circular(Q, 7, &[5]).unwrap();
    assert_eq!(c75.dim(), monomial(&c75));
    assert_eq!(c75.dim(), 42);
    let n = ncc(Q).unwrap();
    assert_eq!(n.dim(), monomial(&n));
    for (r, nn, m) in [(1, 2, 0), (1, 3, 0), (2, 3, 1), (2, 4, 1), (3, 5, 2)] {
        let (a, _) = dda(Q, r, nn, m).unwrap();
        assert_eq!(a.dim(), monomial(&a), "dda {r},{nn},{m}");
    }
}

#[test]
fn non_monomial_dims() {
    // Auslander algebra of k[x]/x^n has dimension Σ_{i,j} min(i, j).
    let aus = auslander_x3(Q).unwrap();
    let oracle: usize = (1..=3).flat_map(|i| (1..=3).map(move |j| i.min(j))).sum();
    assert_eq!(aus.dim(), oracle);
    // Tensor products of path algebras multiply dimensions.
    let k = kronecker(Q, 2).unwrap();
    assert_eq!(k.dim(), 4);
    assert_eq!(tensor_algebra(&k, &k).unwrap().dim(), 16);
    let a3 = linear_a(Q, 3).unwrap();
    assert_eq!(tensor_algebra(&a3, &k).unwrap().dim(), a3.dim() * 4);
    assert_eq!(relcluster(Q).unwrap().dim(), 28);
    assert_eq!(canonical(Q, &[2, 2, 2], &[Q.one()]).unwrap().dim(), 13);
}

#[test]
fn linear_quiver_has_triangular_number_of_paths() {
    for n in 1..=6 {
        assert_eq!(linear_a(Q, n).unwrap().dim(), n * (n + 1) / 2);
    }
}

#[test]
fn cap_below_relation_length_is_insufficient() {
    let q = ci(Q, 2).unwrap().quiver.clone();
    let rels = vec![
        Relation::parse(&q, Q, &[(1, &["a1", "a2"])]).unwrap(),
        Relation::parse(&q, Q, &[(1, &["a2", "a1"])]).unwrap(),
    ];
    let err = Algebra::build(Q, q, rels, Some(1)).unwrap_err();
    assert!(matches!(err, Error::CapInsufficient { .. }), "{err:?}");
}

#[test]
fn arrow_relation_is_not_admissible() {
    let q = linear_a(Q, 2).unwrap().quiver.clone();
    let rels = vec![Relation::parse(&q, Q, &[(1, &["a1"])]).unwrap()];
    assert!(matches!(Algebra::build(Q, q, rels, None), Err(Error::NotAdmissible(_))));
}

#[test]
fn unbounded_cycle_is_rejected() {
    let q = ci(Q, 2).unwrap().quiver.clone();
    assert!(Algebra::build(Q, q, Vec::new(), None).is_err());
}

#[test]
fn prime_field_matches_rational_dimension() {
    let f = Field::prime(7).unwrap();
    for t in 2..=4 {
        assert_eq!(cb(f, t).unwrap().dim(), cb(Q, t).unwrap().dim());
    }
    assert_eq!(auslander_x3(f).unwrap().dim(), 14);
}

#[test]
fn multiplication_is_associative_on_basis() {
    for alg in [auslander_x3(Q).unwrap(), relcluster(Q).unwrap(), cb(Q, 3).unwrap()] {
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let b = |x| sphq_core::algebra::Element::basis(x, Q.one());
                    let left = alg.then(&alg.then(&b(i), &b(j)), &b(k));
                    let right = alg.then(&b(i), &alg.then(&b(j), &b(k)));
                    assert_eq!(left, right);
                }
            }
        }
    }
}

fn cycle_with_runs() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec((1..=n, 2usize..=3), 1..=n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn random_monomial_cycles_match_path_count((n, runs) in cycle_with_runs()) {
        let mut q = Quiver::new();
        for i in 1..=n {
            q.add_vertex(i.to_string());
        }
        for i in 1..=n {
            q.add_arrow(format!("a{i}"), &i.to_string(), &(i % n + 1).to_string()).unwrap();
        }
        let mut rels = Vec::new();
        for (start, len) in runs {
            let ids: Vec<String> = (0..len).map(|k| format!("a{}", (start - 1 + k) % n + 1)).collect();
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            rels.push(Relation::parse(&q, Q, &[(1, &refs)]).unwrap());
        }
        match Algebra::build(Q, q, rels, None) {
            Ok(alg) => prop_assert_eq!(alg.dim(), monomial_path_count(&alg, 60)),
            Err(e) => {
                let cap = matches!(e, Error::CapInsufficient { .. });
                prop_assert!(cap, "unexpected error {:?}", e);
            }
        }
    }
}
