//! Bounded complexes of representations, perfect complexes with algebra-valued
//! differentials, derived Hom, cones, resolutions and the Nakayama functor.
//!
//! Degrees are cohomological. A perfect complex stores, for each degree, a
//! list of vertices `x` standing for `P(x)`; the differential entry `[t][s]`
//! is an element supported on paths `y_t → x_s`, acting `P(x_s) → P(y_t)` by
//! prepending itself to a path.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::rep::{same_algebra, Rep};

pub const DEFAULT_BOUND: usize = 50;

fn sign(n: i32) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Bounded complex of representations; `diffs[i]` maps degree `i` to `i+1`,
/// one matrix per vertex.
#[derive(Clone, Debug)]
pub struct Complex {
    pub alg: Arc<Algebra>,
    pub pieces: BTreeMap<i32, Rep>,
    pub diffs: BTreeMap<i32, Vec<Matrix>>,
}

impl Complex {
    pub fn zero(alg: &Arc<Algebra>) -> Complex {
        Complex { alg: alg.clone(), pieces: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn stalk(m: &Rep, deg: i32) -> Complex {
        let mut c = Complex::zero(&m.alg);
        c.pieces.insert(deg, m.clone());
        c
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn piece(&self, i: i32) -> Rep {
        self.pieces.get(&i).cloned().unwrap_or_else(|| Rep::zero(&self.alg))
    }

    pub fn piece_dims(&self, i: i32) -> Vec<usize> {
        match self.pieces.get(&i) {
            Some(r) => r.dims.clone(),
            None => vec![0; self.alg.num_vertices()],
        }
    }

    /// Differential `i → i+1` at vertex `v`.
    pub fn diff_at(&self, i: i32, v: usize) -> Matrix {
        match self.diffs.get(&i) {
            Some(d) => d[v].clone(),
            None => Matrix::zeros(self.field(), self.piece_dims(i + 1)[v], self.piece_dims(i)[v]),
        }
    }

    /// Degrees with nonzero pieces.
    pub fn degrees(&self) -> Vec<i32> {
        self.pieces.iter().filter(|(_, r)| !r.is_zero()).map(|(&i, _)| i).collect()
    }

    pub fn range(&self) -> Option<(i32, i32)> {
        let d = self.degrees();
        Some((*d.first()?, *d.last()?))
    }

    pub fn is_complex(&self) -> bool {
        let Some((lo, hi)) = self.range() else { return true };
        (lo..hi).all(|i| (0..self.alg.num_vertices()).all(|v| self.diff_at(i + 1, v).mul(&self.diff_at(i, v)).is_zero()))
            && self.diffs.iter().all(|(&i, d)| {
                let src = self.piece(i);
                let tgt = self.piece(i + 1);
                self.alg.quiver.arrows.iter().enumerate().all(|(ai, a)| {
                    tgt.maps[ai].mul(&d[a.from]) == d[a.to].mul(&src.maps[ai])
                })
            })
    }

    /// `X[s]^i = X^{i+s}` with differential multiplied by `(−1)^s`.
    pub fn shift(&self, s: i32) -> Complex {
        let sg = self.field().int(sign(s));
        Complex {
            alg: self.alg.clone(),
            pieces: self.pieces.iter().map(|(&i, r)| (i - s, r.clone())).collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (i - s, d.iter().map(|m| m.scale(&sg)).collect())).collect(),
        }
    }

    /// Cohomology dimension vector in degree `i`.
    pub fn cohomology_dims(&self, i: i32) -> Vec<usize> {
        let dims = self.piece_dims(i);
        (0..dims.len())
            .map(|v| dims[v] - self.diff_at(i, v).rank() - self.diff_at(i - 1, v).rank())
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        let Some((lo, hi)) = self.range() else { return true };
        (lo..=hi).all(|i| self.cohomology_dims(i).iter().all(|&d| d == 0))
    }

    pub fn direct_sum(a: &Complex, b: &Complex) -> Complex {
        let mut degs: Vec<i32> = a.pieces.keys().chain(b.pieces.keys()).copied().collect();
        degs.sort();
        degs.dedup();
        let f = a.field();
        let mut out = Complex::zero(&a.alg);
        for &i in &degs {
            out.pieces.insert(i, Rep::direct_sum(&[&a.piece(i), &b.piece(i)]));
        }
        for &i in &degs {
            if !degs.contains(&(i + 1)) {
                continue;
            }
            let (ai, bi, aj, bj) = (a.piece_dims(i), b.piece_dims(i), a.piece_dims(i + 1), b.piece_dims(i + 1));
            let d = (0..a.alg.num_vertices())
                .map(|v| {
                    let mut m = Matrix::zeros(f, aj[v] + bj[v], ai[v] + bi[v]);
                    m.set_block(0, 0, &a.diff_at(i, v));
                    m.set_block(aj[v], ai[v], &b.diff_at(i, v));
                    m
                })
                .collect();
            out.diffs.insert(i, d);
        }
        out
    }
}

/// Degree-0 chain map between bounded complexes, per degree and vertex.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub source: Complex,
    pub target: Complex,
    pub maps: BTreeMap<i32, Vec<Matrix>>,
}

impl ComplexMap {
    pub fn map_at(&self, i: i32, v: usize) -> Matrix {
        match self.maps.get(&i) {
            Some(m) => m[v].clone(),
            None => Matrix::zeros(self.source.field(), self.target.piece_dims(i)[v], self.source.piece_dims(i)[v]),
        }
    }

    pub fn identity(c: &Complex) -> ComplexMap {
        let f = c.field();
        ComplexMap {
            source: c.clone(),
            target: c.clone(),
            maps: c.pieces.iter().map(|(&i, r)| (i, r.dims.iter().map(|&d| Matrix::identity(f, d)).collect())).collect(),
        }
    }

    pub fn zero(a: &Complex, b: &Complex) -> ComplexMap {
        ComplexMap { source: a.clone(), target: b.clone(), maps: BTreeMap::new() }
    }

    pub fn is_chain_map(&self) -> bool {
        let lo = self.source.range().map_or(0, |r| r.0).min(self.target.range().map_or(0, |r| r.0)) - 1;
        let hi = self.source.range().map_or(0, |r| r.1).max(self.target.range().map_or(0, |r| r.1)) + 1;
        (lo..=hi).all(|i| {
            (0..self.source.alg.num_vertices()).all(|v| {
                self.target.diff_at(i, v).mul(&self.map_at(i, v)) == self.map_at(i + 1, v).mul(&self.source.diff_at(i, v))
            })
        })
    }
}

/// `C^i = X^{i+1} ⊕ Y^i`, `d = [[−d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ComplexMap) -> Result<Complex> {
    if !same_algebra(&f.source.alg, &f.target.alg) {
        return Err(Error::AlgebraMismatch);
    }
    if !f.is_chain_map() {
        return Err(Error::NotChainMap("squares do not commute".into()));
    }
    let (x, y) = (&f.source, &f.target);
    let alg = &x.alg;
    let fld = alg.field;
    let mut degs: Vec<i32> = x.pieces.keys().map(|i| i - 1).chain(y.pieces.keys().copied()).collect();
    degs.sort();
    degs.dedup();
    let mut out = Complex::zero(alg);
    for &i in &degs {
        out.pieces.insert(i, Rep::direct_sum(&[&x.piece(i + 1), &y.piece(i)]));
    }
    for &i in &degs {
        if !degs.contains(&(i + 1)) {
            continue;
        }
        let d = (0..alg.num_vertices())
            .map(|v| {
                let (x1, y0) = (x.piece_dims(i + 1)[v], y.piece_dims(i)[v]);
                let (x2, y1) = (x.piece_dims(i + 2)[v], y.piece_dims(i + 1)[v]);
                let mut m = Matrix::zeros(fld, x2 + y1, x1 + y0);
                m.set_block(0, 0, &x.diff_at(i + 1, v).neg());
                m.set_block(x2, 0, &f.map_at(i + 1, v));
                m.set_block(x2, x1, &y.diff_at(i, v));
                m
            })
            .collect();
        out.diffs.insert(i, d);
    }
    Ok(out)
}

pub fn is_derived_iso(f: &ComplexMap) -> Result<bool> {
    Ok(cone(f)?.is_acyclic())
}

/// Complex of projectives (or, after [`nakayama`], injectives) with
/// element-valued differentials.
#[derive(Clone, Debug)]
pub struct Perfect {
    pub alg: Arc<Algebra>,
    pub terms: BTreeMap<i32, Vec<usize>>,
    /// `diffs[i][t][s]`: entry from term `s` of degree `i` to term `t` of degree `i+1`.
    pub diffs: BTreeMap<i32, Vec<Vec<Element>>>,
}

impl PartialEq for Perfect {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms_nonempty() == other.terms_nonempty() && {
            let a: BTreeMap<_, _> = self.diffs.iter().filter(|(_, d)| d.iter().flatten().any(|e| !e.is_zero())).collect();
            let b: BTreeMap<_, _> = other.diffs.iter().filter(|(_, d)| d.iter().flatten().any(|e| !e.is_zero())).collect();
            a == b
        }
    }
}

impl Perfect {
    pub fn zero(alg: &Arc<Algebra>) -> Perfect {
        Perfect { alg: alg.clone(), terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn stalk(alg: &Arc<Algebra>, x: usize, deg: i32) -> Perfect {
        let mut p = Perfect::zero(alg);
        p.terms.insert(deg, vec![x]);
        p
    }

    fn terms_nonempty(&self) -> BTreeMap<i32, Vec<usize>> {
        self.terms.iter().filter(|(_, t)| !t.is_empty()).map(|(&i, t)| (i, t.clone())).collect()
    }

    pub fn term(&self, i: i32) -> &[usize] {
        self.terms.get(&i).map_or(&[], Vec::as_slice)
    }

    /// Entry from term `s` in degree `i` to term `t` in degree `i+1`.
    pub fn entry(&self, i: i32, t: usize, s: usize) -> Element {
        self.diffs.get(&i).map_or_else(Element::zero, |d| d[t][s].clone())
    }

    pub fn range(&self) -> Option<(i32, i32)> {
        let d: Vec<i32> = self.terms.iter().filter(|(_, t)| !t.is_empty()).map(|(&i, _)| i).collect();
        Some((*d.first()?, *d.last()?))
    }

    pub fn is_zero(&self) -> bool {
        self.range().is_none()
    }

    pub fn total_terms(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    /// Checks entry placement and `d ∘ d = 0` in the algebra.
    pub fn is_complex(&self) -> bool {
        let alg = &self.alg;
        for (&i, d) in &self.diffs {
            let (src, tgt) = (self.term(i), self.term(i + 1));
            if d.len() != tgt.len() || d.iter().any(|r| r.len() != src.len()) {
                return false;
            }
            for (t, row) in d.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    if !alg.element_in(e, tgt[t], src[s]) && !e.is_zero() {
                        return false;
                    }
                }
            }
        }
        let Some((lo, hi)) = self.range() else { return true };
        for i in lo..hi {
            let (a, c) = (self.term(i), self.term(i + 2));
            let b = self.term(i + 1);
            for u in 0..c.len() {
                for s in 0..a.len() {
                    let mut acc = Element::zero();
                    for t in 0..b.len() {
                        acc = acc.add(&alg.then(&self.entry(i + 1, u, t), &self.entry(i, t, s)));
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether every differential entry lies in the arrow ideal.
    pub fn is_minimal(&self) -> bool {
        self.diffs.values().flatten().flatten().all(|e| self.alg.in_radical(e))
    }

    pub fn shift(&self, s: i32) -> Perfect {
        let sg = self.alg.field.int(sign(s));
        Perfect {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(&i, t)| (i - s, t.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&i, d)| (i - s, d.iter().map(|r| r.iter().map(|e| e.scale(&sg)).collect()).collect()))
                .collect(),
        }
    }

    pub fn direct_sum(a: &Perfect, b: &Perfect) -> Perfect {
        let mut out = Perfect::zero(&a.alg);
        let mut degs: Vec<i32> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        degs.sort();
        degs.dedup();
        for &i in &degs {
            let mut t = a.term(i).to_vec();
            t.extend_from_slice(b.term(i));
            out.terms.insert(i, t);
        }
        for &i in &degs {
            let (as_, bs, at, bt) = (a.term(i).len(), b.term(i).len(), a.term(i + 1).len(), b.term(i + 1).len());
            if at + bt == 0 || as_ + bs == 0 {
                continue;
            }
            let mut d = vec![vec![Element::zero(); as_ + bs]; at + bt];
            for t in 0..at {
                for s in 0..as_ {
                    d[t][s] = a.entry(i, t, s);
                }
            }
            for t in 0..bt {
                for s in 0..bs {
                    d[at + t][as_ + s] = b.entry(i, t, s);
                }
            }
            out.diffs.insert(i, d);
        }
        out
    }

    /// The complex of modules `⊕ P(x)` with the induced maps.
    pub fn realize(&self) -> Complex {
        self.realize_with(Kind::Projective)
    }

    /// Same labels read as injectives `I(x)`; this is the Nakayama image.
    pub fn realize_injective(&self) -> Complex {
        self.realize_with(Kind::Injective)
    }

    fn realize_with(&self, kind: Kind) -> Complex {
        let alg = &self.alg;
        let mut out = Complex::zero(alg);
        for (&i, t) in &self.terms {
            if t.is_empty() {
                continue;
            }
            let parts: Vec<Rep> = t
                .iter()
                .map(|&x| match kind {
                    Kind::Projective => Rep::projective(alg, x),
                    Kind::Injective => Rep::injective(alg, x),
                })
                .collect();
            let refs: Vec<&Rep> = parts.iter().collect();
            out.pieces.insert(i, Rep::direct_sum(&refs));
        }
        for (&i, d) in &self.diffs {
            let (src, tgt) = (self.term(i), self.term(i + 1));
            if src.is_empty() || tgt.is_empty() {
                continue;
            }
            let mats = (0..alg.num_vertices())
                .map(|v| match kind {
                    Kind::Projective => projective_block(alg, src, tgt, d, v),
                    Kind::Injective => injective_block(alg, src, tgt, d, v),
                })
                .collect();
            out.diffs.insert(i, mats);
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Projective,
    Injective,
}

/// Matrix at vertex `v` of `⊕_s P(x_s) → ⊕_t P(y_t)`.
fn projective_block(alg: &Algebra, src: &[usize], tgt: &[usize], d: &[Vec<Element>], v: usize) -> Matrix {
    let f = alg.field;
    let src_b: Vec<Vec<usize>> = src.iter().map(|&x| alg.paths_between(x, v)).collect();
    let tgt_b: Vec<Vec<usize>> = tgt.iter().map(|&y| alg.paths_between(y, v)).collect();
    let rows: usize = tgt_b.iter().map(Vec::len).sum();
    let cols: usize = src_b.iter().map(Vec::len).sum();
    let mut m = Matrix::zeros(f, rows, cols);
    let mut c0 = 0;
    for (s, sb) in src_b.iter().enumerate() {
        let mut r0 = 0;
        for (t, tb) in tgt_b.iter().enumerate() {
            let lam = &d[t][s];
            if !lam.is_zero() {
                for (cj, &p) in sb.iter().enumerate() {
                    let img = alg.then(lam, &Element::basis(p, f.one()));
                    for (ri, &q) in tb.iter().enumerate() {
                        if let Some(c) = img.0.get(&q) {
                            m.set(r0 + ri, c0 + cj, c.clone());
                        }
                    }
                }
            }
            r0 += tb.len();
        }
        c0 += sb.len();
    }
    m
}

/// Matrix at vertex `v` of `⊕_s I(x_s) → ⊕_t I(y_t)`: entry `[q, p]` is the
/// coefficient of `p` in `q` followed by `λ`.
fn injective_block(alg: &Algebra, src: &[usize], tgt: &[usize], d: &[Vec<Element>], v: usize) -> Matrix {
    let f = alg.field;
    let src_b: Vec<Vec<usize>> = src.iter().map(|&x| alg.paths_between(v, x)).collect();
    let tgt_b: Vec<Vec<usize>> = tgt.iter().map(|&y| alg.paths_between(v, y)).collect();
    let rows: usize = tgt_b.iter().map(Vec::len).sum();
    let cols: usize = src_b.iter().map(Vec::len).sum();
    let mut m = Matrix::zeros(f, rows, cols);
    let mut r0 = 0;
    for (t, tb) in tgt_b.iter().enumerate() {
        let mut c0 = 0;
        for (s, sb) in src_b.iter().enumerate() {
            let lam = &d[t][s];
            if !lam.is_zero() {
                for (ri, &q) in tb.iter().enumerate() {
                    let img = alg.then(&Element::basis(q, f.one()), lam);
                    for (cj, &p) in sb.iter().enumerate() {
                        if let Some(c) = img.0.get(&p) {
                            m.set(r0 + ri, c0 + cj, c.clone());
                        }
                    }
                }
            }
            c0 += sb.len();
        }
        r0 += tb.len();
    }
    m
}

/// Degree-0 chain map between perfect complexes; `maps[i][t][s]` sends term
/// `s` of the source to term `t` of the target in degree `i`.
#[derive(Clone, Debug)]
pub struct PerfectMap {
    pub source: Perfect,
    pub target: Perfect,
    pub maps: BTreeMap<i32, Vec<Vec<Element>>>,
}

impl PerfectMap {
    pub fn entry(&self, i: i32, t: usize, s: usize) -> Element {
        self.maps.get(&i).map_or_else(Element::zero, |m| m[t][s].clone())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PerfectMap) -> PerfectMap {
        let alg = &self.source.alg;
        let mut maps = BTreeMap::new();
        for (&i, src) in &self.source.terms {
            let (mid, tgt) = (self.target.term(i).len(), other.target.term(i).len());
            if src.is_empty() || tgt == 0 {
                continue;
            }
            let mut m = vec![vec![Element::zero(); src.len()]; tgt];
            for u in 0..tgt {
                for s in 0..src.len() {
                    let mut acc = Element::zero();
                    for t in 0..mid {
                        acc = acc.add(&alg.then(&other.entry(i, u, t), &self.entry(i, t, s)));
                    }
                    m[u][s] = acc;
                }
            }
            maps.insert(i, m);
        }
        PerfectMap { source: self.source.clone(), target: other.target.clone(), maps }
    }
}

/// Cone of a map of perfect complexes, again perfect.
pub fn perfect_cone(f: &PerfectMap) -> Perfect {
    let (x, y) = (&f.source, &f.target);
    let alg = &x.alg;
    let mut degs: Vec<i32> = x.terms.keys().map(|i| i - 1).chain(y.terms.keys().copied()).collect();
    degs.sort();
    degs.dedup();
    let mut out = Perfect::zero(alg);
    for &i in &degs {
        let mut t = x.term(i + 1).to_vec();
        t.extend_from_slice(y.term(i));
        out.terms.insert(i, t);
    }
    for &i in &degs {
        let (x1, y0, x2, y1) = (x.term(i + 1).len(), y.term(i).len(), x.term(i + 2).len(), y.term(i + 1).len());
        if x1 + y0 == 0 || x2 + y1 == 0 {
            continue;
        }
        let mut d = vec![vec![Element::zero(); x1 + y0]; x2 + y1];
        for t in 0..x2 {
            for s in 0..x1 {
                d[t][s] = x.entry(i + 1, t, s).neg();
            }
        }
        for t in 0..y1 {
            for s in 0..x1 {
                d[x2 + t][s] = f.entry(i + 1, t, s);
            }
            for s in 0..y0 {
                d[x2 + t][x1 + s] = y.entry(i, t, s);
            }
        }
        out.diffs.insert(i, d);
    }
    out
}

/// Layout of `Hom(F, G)^n = ⊕_{i,s} (G^{i+n})_{x_s}`.
struct CochainLayout {
    blocks: Vec<(i32, usize, usize, usize)>, // (i, s, offset, len)
    total: usize,
}

fn layout(f: &Perfect, g: &Complex, n: i32) -> CochainLayout {
    let mut blocks = Vec::new();
    let mut total = 0;
    for (&i, xs) in &f.terms {
        let dims = g.piece_dims(i + n);
        for (s, &x) in xs.iter().enumerate() {
            let len = dims[x];
            blocks.push((i, s, total, len));
            total += len;
        }
    }
    CochainLayout { blocks, total }
}

/// Total Hom complex of a perfect complex into a bounded complex.
pub struct HomComplex<'a> {
    pub f: &'a Perfect,
    pub g: &'a Complex,
}

impl<'a> HomComplex<'a> {
    pub fn new(f: &'a Perfect, g: &'a Complex) -> Self {
        HomComplex { f, g }
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let (flo, fhi) = self.f.range()?;
        let (glo, ghi) = self.g.range()?;
        Some((glo - fhi, ghi - flo))
    }

    pub fn cochain_dim(&self, n: i32) -> usize {
        layout(self.f, self.g, n).total
    }

    /// `D^n φ = d_G φ − (−1)^n φ d_F`.
    pub fn differential(&self, n: i32) -> Matrix {
        let (f, g) = (self.f, self.g);
        let alg = &f.alg;
        let fld = alg.field;
        let src = layout(f, g, n);
        let tgt = layout(f, g, n + 1);
        let mut m = Matrix::zeros(fld, tgt.total, src.total);
        let find = |l: &CochainLayout, i: i32, s: usize| l.blocks.iter().find(|b| b.0 == i && b.1 == s).map(|b| (b.2, b.3));
        let sg = fld.int(-sign(n));
        for &(i, s, toff, tlen) in &tgt.blocks {
            if tlen == 0 {
                continue;
            }
            let x = f.term(i)[s];
            // d_G on φ_{i,s}
            if let Some((soff, slen)) = find(&src, i, s) {
                if slen > 0 {
                    m.set_block(toff, soff, &g.diff_at(i + n, x));
                }
            }
            // −(−1)^n Σ_t λ_{ts} · φ_{i+1,t}
            let g_next = g.piece(i + n + 1);
            for (t, &y) in f.term(i + 1).iter().enumerate() {
                let lam = f.entry(i, t, s);
                if lam.is_zero() {
                    continue;
                }
                let Some((soff, slen)) = find(&src, i + 1, t) else { continue };
                if slen == 0 {
                    continue;
                }
                let act = g_next.element_matrix(&lam, y, x).scale(&sg);
                let cur = m.block(toff, soff, tlen, slen);
                m.set_block(toff, soff, &cur.add(&act));
            }
        }
        m
    }

    /// `n ↦ dim H^n`, zero entries omitted.
    pub fn profile(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else { return out };
        let ranks: BTreeMap<i32, usize> = (lo - 1..=hi).map(|n| (n, self.differential(n).rank())).collect();
        for n in lo..=hi {
            let h = self.cochain_dim(n) - ranks[&n] - ranks[&(n - 1)];
            if h > 0 {
                out.insert(n, h);
            }
        }
        out
    }

    /// Cocycles representing a basis of `H^n`, as vectors in the cochain layout.
    pub fn cohomology_basis(&self, n: i32) -> Vec<Vec<Scalar>> {
        let z = self.differential(n).kernel_basis();
        let b = self.differential(n - 1).column_space();
        let dim = self.cochain_dim(n);
        let all = Matrix::hstack(self.f.alg.field, dim, &[&b, &z]);
        all.independent_columns()
            .into_iter()
            .filter(|&c| c >= b.cols())
            .map(|c| all.column(c))
            .collect()
    }

    /// Coordinates of a cocycle in a given basis of `H^n`, modulo coboundaries.
    pub fn coordinates(&self, n: i32, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
        let b = self.differential(n - 1).column_space();
        let dim = self.cochain_dim(n);
        let reps = Matrix::from_columns(self.f.alg.field, dim, basis);
        let all = Matrix::hstack(self.f.alg.field, dim, &[&reps, &b]);
        let x = all.solve(v)?;
        Some(x[..basis.len()].to_vec())
    }

    /// The chain map `F → G[n]` realizing a degree-`n` cocycle.
    pub fn realize_cocycle(&self, n: i32, v: &[Scalar]) -> ComplexMap {
        let (f, g) = (self.f, self.g);
        let alg = &f.alg;
        let fld = alg.field;
        let src = f.realize();
        let tgt = g.shift(n);
        let lay = layout(f, g, n);
        let mut maps = BTreeMap::new();
        for (&i, xs) in &f.terms {
            if xs.is_empty() {
                continue;
            }
            let gi = g.piece(i + n);
            let mats = (0..alg.num_vertices())
                .map(|w| {
                    let cols: usize = xs.iter().map(|&x| alg.paths_between(x, w).len()).sum();
                    let mut m = Matrix::zeros(fld, gi.dims[w], cols);
                    let mut c0 = 0;
                    for (s, &x) in xs.iter().enumerate() {
                        let (_, _, off, len) = *lay.blocks.iter().find(|b| b.0 == i && b.1 == s).unwrap();
                        let phi: Vec<Scalar> = v[off..off + len].to_vec();
                        for (cj, &p) in alg.paths_between(x, w).iter().enumerate() {
                            if len == 0 {
                                continue;
                            }
                            let img = gi.path_matrix(&alg.basis[p]).mul_vec(&phi);
                            for (r, val) in img.into_iter().enumerate() {
                                m.set(r, c0 + cj, val);
                            }
                        }
                        c0 += alg.paths_between(x, w).len();
                    }
                    m
                })
                .collect();
            maps.insert(i, mats);
        }
        ComplexMap { source: src, target: tgt, maps }
    }
}

/// Cocycle of `Hom(F, G)` into a perfect `G`, read as a map `F → G[n]` of
/// perfect complexes.
pub fn cocycle_to_perfect_map(f: &Perfect, g: &Perfect, n: i32, v: &[Scalar]) -> PerfectMap {
    let alg = &f.alg;
    let gr = g.realize();
    let lay = layout(f, &gr, n);
    let tgt = g.shift(n);
    let mut maps = BTreeMap::new();
    for (&i, xs) in &f.terms {
        let zs = g.term(i + n);
        if xs.is_empty() || zs.is_empty() {
            continue;
        }
        let mut m = vec![vec![Element::zero(); xs.len()]; zs.len()];
        for (s, &x) in xs.iter().enumerate() {
            let (_, _, mut off, _) = *lay.blocks.iter().find(|b| b.0 == i && b.1 == s).unwrap();
            for (u, &z) in zs.iter().enumerate() {
                let mut e = Element::zero();
                for &p in &alg.paths_between(z, x) {
                    e.add_term(p, &v[off]);
                    off += 1;
                }
                m[u][s] = e;
            }
        }
        maps.insert(i, m);
    }
    PerfectMap { source: f.clone(), target: tgt, maps }
}

/// Inverse of [`cocycle_to_perfect_map`] for degree-0 maps `F → G`.
pub fn perfect_map_to_cochain(m: &PerfectMap) -> Vec<Scalar> {
    let (f, g) = (&m.source, &m.target);
    let alg = &f.alg;
    let gr = g.realize();
    let lay = layout(f, &gr, 0);
    let mut v = vec![alg.field.zero(); lay.total];
    for (&i, xs) in &f.terms {
        let zs = g.term(i);
        for (s, &x) in xs.iter().enumerate() {
            let (_, _, mut off, _) = *lay.blocks.iter().find(|b| b.0 == i && b.1 == s).unwrap();
            for (u, &z) in zs.iter().enumerate() {
                let e = m.entry(i, u, s);
                for &p in &alg.paths_between(z, x) {
                    v[off] = e.coeff(p, alg.field);
                    off += 1;
                }
            }
        }
    }
    v
}

pub fn hom_profile(f: &Perfect, g: &Complex) -> BTreeMap<i32, usize> {
    HomComplex::new(f, g).profile()
}

/// Result of a perfect resolution: the complex and the quasi-isomorphism
/// `P → G`, given by `f[i][s] ∈ (G^i)_{x_s}`.
pub struct Resolution {
    pub complex: Perfect,
    pub quasi_iso: BTreeMap<i32, Vec<Vec<Scalar>>>,
}

/// Perfect resolution of a bounded complex, built top-down. At each degree
/// `m` the new generators span a complement of `rad Z + (0, d G^{m−1})` in
/// the cocycles `Z` of `P^{m+1} ⊕ G^m`.
pub fn resolve(g: &Complex, bound: usize) -> Result<Resolution> {
    let alg = &g.alg;
    let fld = alg.field;
    let nv = alg.num_vertices();
    let mut p = Perfect::zero(alg);
    let mut fmap: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    let Some((lo, hi)) = g.range() else {
        return Ok(Resolution { complex: p, quasi_iso: fmap });
    };
    let floor = lo - bound as i32 - 1;
    let mut m = hi;
    loop {
        let p1: Vec<usize> = p.term(m + 1).to_vec();
        let p2: Vec<usize> = p.term(m + 2).to_vec();
        let gm = g.piece(m);
        let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
        // Per-vertex data of C' = P^{m+1} ⊕ G^m.
        let p1_real: Vec<Rep> = p1.iter().map(|&x| Rep::projective(alg, x)).collect();
        let refs: Vec<&Rep> = p1_real.iter().chain(std::iter::once(&gm)).collect();
        let cprime = Rep::direct_sum(&refs);
        let p1_dims: Vec<usize> = (0..nv).map(|v| p1.iter().map(|&x| alg.paths_between(x, v).len()).sum()).collect();
        let zs: Vec<Matrix> = (0..nv)
            .map(|v| {
                let top = p1_dims[v] + gm.dims[v];
                if top == 0 {
                    return Matrix::zeros(fld, 0, 0);
                }
                let dp = match p.diffs.get(&(m + 1)) {
                    Some(d) if !p1.is_empty() && !p2.is_empty() => projective_block(alg, &p1, &p2, d, v),
                    _ => Matrix::zeros(fld, p2.iter().map(|&x| alg.paths_between(x, v).len()).sum(), p1_dims[v]),
                };
                let fv = quasi_iso_block(alg, g, &p1, fmap.get(&(m + 1)), m + 1, v);
                let dg = g.diff_at(m, v).neg();
                let rows = dp.rows() + fv.rows();
                let mut delta = Matrix::zeros(fld, rows, top);
                delta.set_block(0, 0, &dp);
                delta.set_block(dp.rows(), 0, &fv);
                delta.set_block(dp.rows(), p1_dims[v], &dg);
                delta.kernel_basis()
            })
            .collect();
        for v in 0..nv {
            let z = &zs[v];
            if z.cols() == 0 {
                continue;
            }
            let top = z.rows();
            let mut spans: Vec<Matrix> = Vec::new();
            for (ai, a) in alg.quiver.arrows.iter().enumerate() {
                if a.to == v && zs[a.from].cols() > 0 {
                    spans.push(cprime.maps[ai].mul(&zs[a.from]));
                }
            }
            let dg_prev = g.diff_at(m - 1, v);
            if dg_prev.cols() > 0 && dg_prev.rows() > 0 {
                let mut emb = Matrix::zeros(fld, top, dg_prev.cols());
                emb.set_block(p1_dims[v], 0, &dg_prev);
                spans.push(emb);
            }
            let r = if spans.is_empty() {
                Matrix::zeros(fld, top, 0)
            } else {
                let refs: Vec<&Matrix> = spans.iter().collect();
                Matrix::hstack(fld, top, &refs).column_space()
            };
            let all = Matrix::hstack(fld, top, &[&r, z]);
            for c in all.independent_columns() {
                if c >= r.cols() {
                    gens.push((v, all.column(c)));
                }
            }
        }
        if gens.is_empty() && m < lo {
            break;
        }
        if m <= floor {
            return Err(Error::GlobalDimensionExceeded(bound));
        }
        if !gens.is_empty() {
            let xs: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
            if !p1.is_empty() {
                let mut d = vec![vec![Element::zero(); xs.len()]; p1.len()];
                for (s, (v, z)) in gens.iter().enumerate() {
                    let mut off = 0;
                    for (t, &y) in p1.iter().enumerate() {
                        let mut e = Element::zero();
                        for &q in &alg.paths_between(y, *v) {
                            e.add_term(q, &z[off]);
                            off += 1;
                        }
                        d[t][s] = e;
                    }
                }
                p.diffs.insert(m, d);
            }
            let gv: Vec<Vec<Scalar>> = gens.iter().map(|(v, z)| z[p1_dims[*v]..].to_vec()).collect();
            fmap.insert(m, gv);
            p.terms.insert(m, xs);
        }
        m -= 1;
    }
    Ok(Resolution { complex: p, quasi_iso: fmap })
}

/// Matrix at vertex `v` of the quasi-isomorphism `P^i → G^i`.
fn quasi_iso_block(alg: &Algebra, g: &Complex, xs: &[usize], f: Option<&Vec<Vec<Scalar>>>, i: i32, v: usize) -> Matrix {
    let gi = g.piece(i);
    let cols: usize = xs.iter().map(|&x| alg.paths_between(x, v).len()).sum();
    let mut m = Matrix::zeros(alg.field, gi.dims[v], cols);
    let Some(f) = f else { return m };
    let mut c0 = 0;
    for (s, &x) in xs.iter().enumerate() {
        for &p in &alg.paths_between(x, v) {
            if !f[s].is_empty() {
                let img = gi.path_matrix(&alg.basis[p]).mul_vec(&f[s]);
                for (r, val) in img.into_iter().enumerate() {
                    m.set(r, c0, val);
                }
            }
            c0 += 1;
        }
    }
    m
}

pub fn minimal_projective_resolution(m: &Rep, bound: usize) -> Result<Perfect> {
    Ok(resolve(&Complex::stalk(m, 0), bound)?.complex)
}

pub fn perfect_resolution(g: &Complex, bound: usize) -> Result<Perfect> {
    Ok(resolve(g, bound)?.complex)
}

/// A complex of injectives with element-valued differentials.
#[derive(Clone, Debug)]
pub struct InjectiveComplex {
    pub labels: Perfect,
}

impl InjectiveComplex {
    pub fn realize(&self) -> Complex {
        self.labels.realize_injective()
    }
}

/// `ν = DΛ ⊗ −`: relabels `P(x) ↦ I(x)` and transports each entry.
pub fn nakayama(f: &Perfect) -> InjectiveComplex {
    InjectiveComplex { labels: f.clone() }
}

pub fn inverse_nakayama(g: &InjectiveComplex) -> Perfect {
    g.labels.clone()
}

/// `ν F` re-resolved to a perfect complex.
pub fn nakayama_perfect(f: &Perfect, bound: usize) -> Result<Perfect> {
    perfect_resolution(&nakayama(f).realize(), bound)
}

/// `τ = ν ∘ [−1]`, re-resolved.
pub fn tau(f: &Perfect, bound: usize) -> Result<Perfect> {
    nakayama_perfect(&f.shift(-1), bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Iso,
    NotIso,
    NotWitnessed,
}

/// Deterministic small coefficients for combination trials.
fn trial_coeffs(k: usize, len: usize) -> Vec<i64> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15 ^ (k as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        })
        .collect()
}

/// Looks for a quasi-isomorphism `X → Y[s]` among a basis of `H^s Hom(X, Y)`
/// and, over the rationals, 8 fixed pseudo-random combinations. A failure is
/// conclusive only when the candidate space has dimension at most one.
pub fn iso_up_to_shift(x: &Perfect, y: &Complex, s: i32) -> Result<(IsoVerdict, usize)> {
    if !same_algebra(&x.alg, &y.alg) {
        return Err(Error::AlgebraMismatch);
    }
    let hom = HomComplex::new(x, y);
    let basis = if hom.degree_range().is_some() { hom.cohomology_basis(s) } else { Vec::new() };
    let dim = basis.len();
    let fld = x.alg.field;
    let test = |v: &[Scalar]| -> Result<bool> {
        let f = hom.realize_cocycle(s, v);
        Ok(cone(&f)?.is_acyclic())
    };
    if dim == 0 {
        let xr = x.realize();
        let ok = xr.is_acyclic() && y.is_acyclic();
        return Ok((if ok { IsoVerdict::Iso } else { IsoVerdict::NotIso }, 0));
    }
    for b in &basis {
        if test(b)? {
            return Ok((IsoVerdict::Iso, dim));
        }
    }
    if dim > 1 && fld.is_rational() {
        for k in 0..8 {
            let c = trial_coeffs(k, dim);
            let mut v = vec![fld.zero(); basis[0].len()];
            for (b, &ci) in basis.iter().zip(&c) {
                let cf = fld.int(ci);
                for (acc, x) in v.iter_mut().zip(b) {
                    *acc = &*acc + &(&cf * x);
                }
            }
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            if test(&v)? {
                return Ok((IsoVerdict::Iso, dim));
            }
        }
    }
    Ok((if dim > 1 { IsoVerdict::NotWitnessed } else { IsoVerdict::NotIso }, dim))
}

/// Dimension vector alternating sum over degrees.
pub fn k_class_of(c: &Complex) -> Vec<i64> {
    let mut out = vec![0i64; c.alg.num_vertices()];
    for (&i, r) in &c.pieces {
        for (v, &d) in r.dims.iter().enumerate() {
            out[v] += sign(i) * d as i64;
        }
    }
    out
}
