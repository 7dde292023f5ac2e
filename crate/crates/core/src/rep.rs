//! Representations of bound quivers: standard modules, Hom spaces,
//! kernels and cokernels, radicals and endomorphism rings.

use std::sync::Arc;

use crate::algebra::{Algebra, Element, Path};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// A representation: one vector space per vertex and one matrix per arrow
/// (`target dim × source dim`).
#[derive(Clone, Debug)]
pub struct Rep {
    pub alg: Arc<Algebra>,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.maps == other.maps
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub source: Rep,
    pub target: Rep,
    pub mats: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Simple,
    Projective,
    Injective,
}

impl Rep {
    pub fn zero(alg: &Arc<Algebra>) -> Rep {
        let f = alg.field;
        let n = alg.num_vertices();
        Rep {
            alg: alg.clone(),
            dims: vec![0; n],
            maps: alg.quiver.arrows.iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    /// Builds a representation and checks shapes and relations.
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        if dims.len() != alg.num_vertices() || maps.len() != alg.quiver.arrows.len() {
            return Err(Error::Schema("representation does not match the quiver".into()));
        }
        for (a, m) in alg.quiver.arrows.iter().zip(&maps) {
            if m.rows() != dims[a.to] || m.cols() != dims[a.from] {
                return Err(Error::Schema(format!("map for arrow {:?} has the wrong shape", a.id)));
            }
        }
        let rep = Rep { alg: alg.clone(), dims, maps };
        if !rep.satisfies_relations() {
            return Err(Error::Schema("representation violates a relation".into()));
        }
        Ok(rep)
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn simple(alg: &Arc<Algebra>, x: usize) -> Rep {
        let mut r = Rep::zero(alg);
        r.dims[x] = 1;
        r.reshape_zero_maps();
        r
    }

    fn reshape_zero_maps(&mut self) {
        let f = self.field();
        for (i, a) in self.alg.quiver.arrows.iter().enumerate() {
            self.maps[i] = Matrix::zeros(f, self.dims[a.to], self.dims[a.from]);
        }
    }

    /// P(x): paths starting at x; an arrow acts by appending itself.
    pub fn projective(alg: &Arc<Algebra>, x: usize) -> Rep {
        let f = alg.field;
        let n = alg.num_vertices();
        let at: Vec<Vec<usize>> = (0..n).map(|v| alg.paths_between(x, v)).collect();
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(f, dims[a.to], dims[a.from]);
                let arrow = alg.arrow_element(ai);
                for (col, &p) in at[a.from].iter().enumerate() {
                    let img = alg.then(&Element::basis(p, f.one()), &arrow);
                    for (row, &q) in at[a.to].iter().enumerate() {
                        m.set(row, col, img.coeff(q, f));
                    }
                }
                m
            })
            .collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    /// I(x): the dual of paths ending at x.
    pub fn injective(alg: &Arc<Algebra>, x: usize) -> Rep {
        let f = alg.field;
        let n = alg.num_vertices();
        let at: Vec<Vec<usize>> = (0..n).map(|v| alg.paths_between(v, x)).collect();
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(f, dims[a.to], dims[a.from]);
                let arrow = alg.arrow_element(ai);
                for (row, &q) in at[a.to].iter().enumerate() {
                    let img = alg.then(&arrow, &Element::basis(q, f.one()));
                    for (col, &p) in at[a.from].iter().enumerate() {
                        m.set(row, col, img.coeff(p, f));
                    }
                }
                m
            })
            .collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    pub fn standard(alg: &Arc<Algebra>, kind: StandardKind, x: &str) -> Result<Rep> {
        let v = alg.vertex(x)?;
        Ok(match kind {
            StandardKind::Simple => Rep::simple(alg, v),
            StandardKind::Projective => Rep::projective(alg, v),
            StandardKind::Injective => Rep::injective(alg, v),
        })
    }

    /// Matrix of a path acting `M_source → M_target`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let f = self.field();
        let mut m = Matrix::identity(f, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Matrix of an element supported on paths `s → t`, acting `M_s → M_t`.
    pub fn element_matrix(&self, e: &Element, s: usize, t: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dims[t], self.dims[s]);
        for (&i, c) in &e.0 {
            let p = &self.alg.basis[i];
            debug_assert!(p.source == s && p.target == t);
            m = m.add(&self.path_matrix(p).scale(c));
        }
        m
    }

    pub fn satisfies_relations(&self) -> bool {
        self.alg.relations.iter().all(|r| {
            let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
            let mut m = Matrix::zeros(self.field(), self.dims[t], self.dims[s]);
            for (c, p) in &r.terms {
                m = m.add(&self.path_matrix(p).scale(c));
            }
            m.is_zero()
        })
    }

    pub fn direct_sum(parts: &[&Rep]) -> Rep {
        let alg = &parts[0].alg;
        let f = alg.field;
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(f, dims[a.to], dims[a.from]);
                let (mut r0, mut c0) = (0, 0);
                for r in parts {
                    m.set_block(r0, c0, &r.maps[ai]);
                    r0 += r.dims[a.to];
                    c0 += r.dims[a.from];
                }
                m
            })
            .collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    /// Subrepresentation spanned by invariant per-vertex column bases.
    pub fn subrep(&self, bases: &[Matrix]) -> (Rep, Morphism) {
        let f = self.field();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = self
            .alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let img = self.maps[ai].mul(&bases[a.from]);
                if dims[a.to] == 0 || dims[a.from] == 0 {
                    return Matrix::zeros(f, dims[a.to], dims[a.from]);
                }
                bases[a.to].solve_many(&img).expect("subspace is not invariant")
            })
            .collect();
        let sub = Rep { alg: self.alg.clone(), dims, maps };
        let inc = Morphism { source: sub.clone(), target: self.clone(), mats: bases.to_vec() };
        (sub, inc)
    }

    /// Quotient by invariant per-vertex subspaces.
    pub fn quotient(&self, bases: &[Matrix]) -> (Rep, Morphism) {
        let f = self.field();
        let n = self.dims.len();
        let mut comps = Vec::with_capacity(n);
        let mut projs = Vec::with_capacity(n);
        for v in 0..n {
            let b = if bases[v].cols() == 0 { Matrix::zeros(f, self.dims[v], 0) } else { bases[v].clone() };
            let c = b.complement_basis();
            let full = Matrix::hstack(f, self.dims[v], &[&b, &c]);
            let inv = full.inverse().expect("basis and complement span");
            projs.push(inv.block(b.cols(), 0, c.cols(), self.dims[v]));
            comps.push(c);
        }
        let dims: Vec<usize> = comps.iter().map(Matrix::cols).collect();
        let maps = self
            .alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| projs[a.to].mul(&self.maps[ai]).mul(&comps[a.from]))
            .collect();
        let quo = Rep { alg: self.alg.clone(), dims, maps };
        let proj = Morphism { source: self.clone(), target: quo.clone(), mats: projs };
        (quo, proj)
    }

    /// Per-vertex bases of the radical: the span of all arrow images.
    pub fn radical_bases(&self) -> Vec<Matrix> {
        let f = self.field();
        (0..self.dims.len())
            .map(|v| {
                let imgs: Vec<&Matrix> = self
                    .alg
                    .quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.to == v)
                    .map(|(i, _)| &self.maps[i])
                    .collect();
                if imgs.is_empty() {
                    return Matrix::zeros(f, self.dims[v], 0);
                }
                Matrix::hstack(f, self.dims[v], &imgs).column_space()
            })
            .collect()
    }

    /// Vertexwise dimensions of `rad^k M`.
    pub fn radical_power_bases(&self, k: usize) -> Vec<Matrix> {
        let f = self.field();
        let mut cur: Vec<Matrix> = self.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        for _ in 0..k {
            cur = (0..self.dims.len())
                .map(|v| {
                    let imgs: Vec<Matrix> = self
                        .alg
                        .quiver
                        .arrows
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| a.to == v)
                        .map(|(i, a)| self.maps[i].mul(&cur[a.from]))
                        .collect();
                    let refs: Vec<&Matrix> = imgs.iter().collect();
                    if refs.is_empty() {
                        return Matrix::zeros(f, self.dims[v], 0);
                    }
                    Matrix::hstack(f, self.dims[v], &refs).column_space()
                })
                .collect();
        }
        cur
    }
}

impl Morphism {
    pub fn identity(m: &Rep) -> Morphism {
        let f = m.field();
        Morphism { source: m.clone(), target: m.clone(), mats: m.dims.iter().map(|&d| Matrix::identity(f, d)).collect() }
    }

    pub fn zero(m: &Rep, n: &Rep) -> Morphism {
        let f = m.field();
        Morphism {
            source: m.clone(),
            target: n.clone(),
            mats: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(f, b, a)).collect(),
        }
    }

    /// Checks that every arrow square commutes.
    pub fn is_valid(&self) -> bool {
        self.source.alg.quiver.arrows.iter().enumerate().all(|(ai, a)| {
            let l = self.target.maps[ai].mul(&self.mats[a.from]);
            let r = self.mats[a.to].mul(&self.source.maps[ai]);
            l == r
        })
    }

    pub fn rank(&self) -> usize {
        self.mats.iter().map(Matrix::rank).sum()
    }

    pub fn compose(&self, after: &Morphism) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: after.target.clone(),
            mats: self.mats.iter().zip(&after.mats).map(|(a, b)| b.mul(a)).collect(),
        }
    }
}

/// Basis of `Hom(M, N)` as the kernel of the commuting-square system.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<Vec<Morphism>> {
    if !same_algebra(&m.alg, &n.alg) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let nv = m.dims.len();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += m.dims[v] * n.dims[v];
    }
    // Unknown (v, r, c) is entry (r, c) of the N_v × M_v block.
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (ai, a) in m.alg.quiver.arrows.iter().enumerate() {
        let (s, t) = (a.from, a.to);
        // N_a φ_s − φ_t M_a = 0, entry (r, c) in N_t × M_s.
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); total];
                for k in 0..n.dims[s] {
                    let x = n.maps[ai].get(r, k);
                    if !x.is_zero() {
                        let idx = var(s, k, c);
                        row[idx] = &row[idx] + x;
                    }
                }
                for k in 0..m.dims[t] {
                    let x = m.maps[ai].get(k, c);
                    if !x.is_zero() {
                        let idx = var(t, r, k);
                        row[idx] = &row[idx] - x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() { Matrix::zeros(f, 0, total) } else { Matrix::from_rows(f, rows) };
    let k = sys.kernel_basis();
    Ok((0..k.cols())
        .map(|j| {
            let mats = (0..nv)
                .map(|v| {
                    let mut b = Matrix::zeros(f, n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            b.set(r, c, k.get(var(v, r, c), j).clone());
                        }
                    }
                    b
                })
                .collect();
            Morphism { source: m.clone(), target: n.clone(), mats }
        })
        .collect())
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

pub struct KernelCokernel {
    pub kernel: Rep,
    pub cokernel: Rep,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

pub fn kernel_cokernel(f: &Morphism) -> KernelCokernel {
    let kb: Vec<Matrix> = f.mats.iter().map(Matrix::kernel_basis).collect();
    let (kernel, inclusion) = f.source.subrep(&kb);
    let ib: Vec<Matrix> = f.mats.iter().map(Matrix::column_space).collect();
    let (cokernel, projection) = f.target.quotient(&ib);
    KernelCokernel { kernel, cokernel, inclusion, projection }
}

/// `(rad M, M / rad M)`.
pub fn top_and_radical(m: &Rep) -> (Rep, Rep) {
    let rb = m.radical_bases();
    let (rad, _) = m.subrep(&rb);
    let (top, _) = m.quotient(&rb);
    (rad, top)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndShape {
    /// One-dimensional, necessarily k.
    Field,
    /// Two-dimensional local: k[x]/x².
    DualNumbers,
    /// Two-dimensional split semisimple: k × k.
    Split,
    /// Two-dimensional semisimple but a quadratic field over the rationals;
    /// splits over the algebraic closure.
    QuadraticField,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAnalysis {
    pub dim: usize,
    pub radical_dim: usize,
    pub is_local: bool,
    pub semisimple_quotient_dim: usize,
    /// Whether the generator of a one-dimensional radical squares to zero.
    pub square_of_radical_generator_zero: Option<bool>,
    pub shape: EndShape,
}

/// Analyses a finite-dimensional algebra given by structure constants:
/// `products[i][j]` holds the coordinates of `b_i · b_j`, and `unit` the
/// coordinates of 1.
pub fn analyze_algebra(field: Field, products: &[Vec<Vec<Scalar>>], unit: &[Scalar]) -> Result<EndAnalysis> {
    if !field.is_rational() {
        return Err(Error::CharNotZero);
    }
    let n = products.len();
    if n == 0 {
        return Ok(EndAnalysis {
            dim: 0,
            radical_dim: 0,
            is_local: false,
            semisimple_quotient_dim: 0,
            square_of_radical_generator_zero: None,
            shape: EndShape::Other,
        });
    }
    // Left regular representation L_i: x ↦ b_i x, column j = coords(b_i b_j).
    let left: Vec<Matrix> = (0..n).map(|i| Matrix::from_columns(field, n, &products[i])).collect();
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, left[i].mul(&left[j]).trace());
        }
    }
    let rad = gram.kernel_basis();
    let radical_dim = rad.cols();
    let ss = n - radical_dim;
    let square_zero = if radical_dim == 1 {
        let r = rad.column(0);
        let l = left_mult(field, &left, &r);
        Some(l.mul_vec(&r).iter().all(Scalar::is_zero))
    } else {
        None
    };
    let shape = match (n, radical_dim) {
        (1, 0) => EndShape::Field,
        (2, 1) => EndShape::DualNumbers,
        (2, 0) => {
            // Pick a non-scalar element x and read off x² = -b x - c.
            let e0: Vec<Scalar> = (0..n).map(|i| if i == 0 { field.one() } else { field.zero() }).collect();
            let e1: Vec<Scalar> = (0..n).map(|i| if i == 1 { field.one() } else { field.zero() }).collect();
            let x = if independent(field, &e0, unit) { e0 } else { e1 };
            let x2 = left_mult(field, &left, &x).mul_vec(&x);
            let basis = Matrix::from_columns(field, n, &[x.clone(), unit.to_vec()]);
            let coeffs = basis.solve(&x2).expect("x and 1 span a 2-dimensional algebra");
            // x² = p x + q  ⇒ discriminant p² + 4q.
            let disc = &(&coeffs[0] * &coeffs[0]) + &(&field.int(4) * &coeffs[1]);
            if disc.is_square() {
                EndShape::Split
            } else {
                EndShape::QuadraticField
            }
        }
        _ => EndShape::Other,
    };
    Ok(EndAnalysis {
        dim: n,
        radical_dim,
        is_local: ss == 1,
        semisimple_quotient_dim: ss,
        square_of_radical_generator_zero: square_zero,
        shape,
    })
}

fn independent(field: Field, a: &[Scalar], b: &[Scalar]) -> bool {
    Matrix::from_columns(field, a.len(), &[a.to_vec(), b.to_vec()]).rank() == 2
}

fn left_mult(field: Field, left: &[Matrix], x: &[Scalar]) -> Matrix {
    let n = left.len();
    let mut m = Matrix::zeros(field, n, n);
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            m = m.add(&left[i].scale(c));
        }
    }
    m
}

/// End(M) analysed through the trace form of its regular representation.
pub fn end_analysis(m: &Rep) -> Result<EndAnalysis> {
    if !m.field().is_rational() {
        return Err(Error::CharNotZero);
    }
    let basis = hom_basis(m, m)?;
    let f = m.field();
    let flat = |mor: &Morphism| -> Vec<Scalar> { mor.mats.iter().flat_map(|x| x.columns().into_iter().flatten()).collect() };
    let cols: Vec<Vec<Scalar>> = basis.iter().map(flat).collect();
    let len = cols.first().map_or(0, Vec::len);
    let coords_mat = Matrix::from_columns(f, len, &cols);
    let coords = |mor: &Morphism| coords_mat.solve(&flat(mor)).expect("endomorphism in span");
    let products: Vec<Vec<Vec<Scalar>>> = basis
        .iter()
        .map(|bi| basis.iter().map(|bj| coords(&bj.compose(bi))).collect())
        .collect();
    let unit = if basis.is_empty() { Vec::new() } else { coords(&Morphism::identity(m)) };
    analyze_algebra(f, &products, &unit)
}
