//! Cartan matrices, Euler forms and orthogonal sublattices of `K_0`.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::derived::{hom_profile, k_class_of, minimal_projective_resolution, Complex, DEFAULT_BOUND};
use crate::error::Result;
use crate::rep::Rep;

pub type IntMatrix = Vec<Vec<i64>>;

/// `C[x][y] = dim Hom(P(x), P(y)) = #paths y → x`.
pub fn cartan_matrix(alg: &Algebra) -> IntMatrix {
    let n = alg.num_vertices();
    (0..n).map(|x| (0..n).map(|y| alg.paths_between(y, x).len() as i64).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerForm {
    pub basis: Vec<String>,
    pub gram: IntMatrix,
}

impl EulerForm {
    pub fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.gram.len();
        (0..n).map(|i| (0..n).map(|j| a[i] * self.gram[i][j] * b[j]).sum::<i64>()).sum()
    }
}

/// `χ(S(x), S(y)) = Σ (−1)^i dim Ext^i(S(x), S(y))`.
pub fn euler_matrix(alg: &Arc<Algebra>) -> Result<EulerForm> {
    let n = alg.num_vertices();
    let mut gram = vec![vec![0i64; n]; n];
    for x in 0..n {
        let p = minimal_projective_resolution(&Rep::simple(alg, x), DEFAULT_BOUND)?;
        for y in 0..n {
            let prof = hom_profile(&p, &Complex::stalk(&Rep::simple(alg, y), 0));
            gram[x][y] = prof.iter().map(|(&i, &d)| if i.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum();
        }
    }
    Ok(EulerForm { basis: alg.quiver.vertices.clone(), gram })
}

/// Class in the simple basis.
pub fn k_class(x: &Complex) -> Vec<i64> {
    k_class_of(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerpLattice {
    pub basis: Vec<Vec<i64>>,
    pub gram: IntMatrix,
    pub antisymmetric: bool,
}

/// `{v : χ(v, c) = 0 for all c}` with the restricted form. The basis is the
/// reduced lattice basis from [`integer_kernel`], sorted lexicographically.
pub fn perp_lattice(form: &EulerForm, classes: &[Vec<i64>]) -> PerpLattice {
    let n = form.gram.len();
    // Row c: v ↦ χ(v, c) = Σ_i v_i (G c)_i.
    let rows: Vec<Vec<i64>> = classes
        .iter()
        .map(|c| (0..n).map(|i| (0..n).map(|j| form.gram[i][j] * c[j]).sum()).collect())
        .collect();
    let mut basis = integer_kernel(&rows, n);
    basis.sort();
    let gram: IntMatrix = basis.iter().map(|a| basis.iter().map(|b| form.eval(a, b)).collect()).collect();
    let k = gram.len();
    let antisymmetric = k > 0 && (0..k).all(|i| (0..k).all(|j| gram[i][j] == -gram[j][i]));
    PerpLattice { basis, gram, antisymmetric }
}

/// Integer basis of `{v ∈ Z^n : A v = 0}` via column-style Hermite reduction
/// of `[A; I]`, followed by a sign and size normalization.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    // Columns of the augmented matrix: (A e_j, e_j).
    let m = rows.len();
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut c: Vec<i64> = rows.iter().map(|r| r[j]).collect();
            c.extend((0..n).map(|i| i64::from(i == j)));
            c
        })
        .collect();
    let mut pivot_col = 0;
    for r in 0..m {
        // Euclid on row r among columns pivot_col.. to gather the gcd in one column.
        loop {
            let nz: Vec<usize> = (pivot_col..n).filter(|&j| cols[j][r] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    cols.swap(pivot_col, j);
                    pivot_col += 1;
                }
                break;
            }
            let jmin = *nz.iter().min_by_key(|&&j| cols[j][r].abs()).unwrap();
            for &j in &nz {
                if j != jmin {
                    let q = Integer::div_floor(&cols[j][r], &cols[jmin][r]);
                    for i in 0..m + n {
                        cols[j][i] -= q * cols[jmin][i];
                    }
                }
            }
        }
    }
    let mut kernel: Vec<Vec<i64>> = cols[pivot_col..].iter().map(|c| c[m..].to_vec()).collect();
    lll_like_reduce(&mut kernel);
    for v in &mut kernel {
        if let Some(&first) = v.iter().find(|&&x| x != 0) {
            if first < 0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    kernel
}

/// Pairwise reduction: replace `v_i` by `v_i ± v_j` while the squared norm
/// drops, or stays and the vector gets fewer mixed signs. Enough to make
/// small kernels readable and sign-coherent where possible.
fn lll_like_reduce(vs: &mut [Vec<i64>]) {
    let norm = |v: &[i64]| {
        let (pos, neg) = (v.iter().filter(|&&x| x > 0).count(), v.iter().filter(|&&x| x < 0).count());
        (v.iter().map(|x| x * x).sum::<i64>(), pos.min(neg))
    };
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i == j {
                    continue;
                }
                for sgn in [1i64, -1] {
                    let cand: Vec<i64> = vs[i].iter().zip(&vs[j]).map(|(a, b)| a - sgn * b).collect();
                    if norm(&cand) < norm(&vs[i]) {
                        vs[i] = cand;
                        changed = true;
                    }
                }
            }
        }
    }
}
