//! Algebra factories and the two quiver surgeries: A_n-insertion and tacking.
//! Both come with an [`Embedding`] of the small algebra as a corner of the
//! big one, along which perfect complexes are induced.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Arrow, Element, Path, Quiver, Relation};
use crate::derived::Perfect;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::rep::Rep;

/// A corner embedding `small ≅ e·big·e`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub small: Arc<Algebra>,
    pub big: Arc<Algebra>,
    pub vertex_map: Vec<usize>,
    /// Image of each small arrow as a path in the big quiver.
    pub arrow_paths: Vec<Path>,
}

impl Embedding {
    pub fn new(small: &Arc<Algebra>, big: &Arc<Algebra>, vertex_map: Vec<usize>, arrow_paths: Vec<Path>) -> Result<Embedding> {
        let emb = Embedding { small: small.clone(), big: big.clone(), vertex_map, arrow_paths };
        emb.verify()?;
        Ok(emb)
    }

    /// Image of a small path, as a big path.
    pub fn map_path(&self, p: &Path) -> Path {
        let mut out = Path::trivial(self.vertex_map[p.source]);
        for &a in &p.arrows {
            out = out.concat(&self.arrow_paths[a]).expect("arrow images compose");
        }
        out
    }

    pub fn map_element(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (&i, c) in &e.0 {
            let img = self.big.path_element(&self.map_path(&self.small.basis[i]));
            out = out.add(&img.scale(c));
        }
        out
    }

    /// Checks injectivity of the vertex map, endpoint compatibility, that
    /// relations map to zero and that the small basis maps onto a basis of
    /// the corner.
    pub fn verify(&self) -> Result<()> {
        let (s, b) = (&self.small, &self.big);
        let bad = |m: &str| Err(Error::SpecInvariantViolated(format!("embedding: {m}")));
        let mut seen = self.vertex_map.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.vertex_map.len() {
            return bad("vertex map is not injective");
        }
        for (a, p) in s.quiver.arrows.iter().zip(&self.arrow_paths) {
            if p.source != self.vertex_map[a.from] || p.target != self.vertex_map[a.to] {
                return bad("arrow image has wrong endpoints");
            }
        }
        for r in &s.relations {
            let mut e = Element::zero();
            for (c, p) in &r.terms {
                e = e.add(&b.path_element(&self.map_path(p)).scale(c));
            }
            if !e.is_zero() {
                return bad("relation does not vanish");
            }
        }
        let corner: usize = self
            .vertex_map
            .iter()
            .map(|&x| self.vertex_map.iter().map(|&y| b.paths_between(x, y).len()).sum::<usize>())
            .sum();
        if corner != s.dim() {
            return bad("corner dimension differs");
        }
        let images: Vec<Vec<Scalar>> = (0..s.dim())
            .map(|i| {
                let e = self.map_element(&Element::basis(i, s.field.one()));
                (0..b.dim()).map(|k| e.coeff(k, b.field)).collect()
            })
            .collect();
        let m = crate::linalg::Matrix::from_columns(b.field, b.dim(), &images);
        if m.rank() != s.dim() {
            return bad("basis images are dependent");
        }
        Ok(())
    }

    pub fn to_spec(&self) -> EmbeddingSpec {
        let sq = &self.small.quiver;
        let bq = &self.big.quiver;
        EmbeddingSpec {
            vertex_map: sq.vertices.iter().zip(&self.vertex_map).map(|(v, &w)| (v.clone(), bq.vertices[w].clone())).collect(),
            arrow_paths: sq.arrows.iter().zip(&self.arrow_paths).map(|(a, p)| (a.id.clone(), p.ids(bq))).collect(),
        }
    }

    pub fn from_spec(small: &Arc<Algebra>, big: &Arc<Algebra>, spec: &EmbeddingSpec) -> Result<Embedding> {
        let vertex_map = small
            .quiver
            .vertices
            .iter()
            .map(|v| {
                let w = spec.vertex_map.get(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
                big.vertex(w)
            })
            .collect::<Result<Vec<_>>>()?;
        let arrow_paths = small
            .quiver
            .arrows
            .iter()
            .map(|a| {
                let ids = spec.arrow_paths.get(&a.id).ok_or_else(|| Error::Schema(format!("no image for arrow {:?}", a.id)))?;
                let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
                big.quiver.path(&refs)
            })
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(small, big, vertex_map, arrow_paths)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub vertex_map: BTreeMap<String, String>,
    pub arrow_paths: BTreeMap<String, Vec<String>>,
}

/// `j_! = Λe ⊗_{eΛe} −` on perfect complexes: relabel and rewrite entries.
pub fn induce(emb: &Embedding, f: &Perfect) -> Result<Perfect> {
    if !crate::rep::same_algebra(&f.alg, &emb.small) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(Perfect {
        alg: emb.big.clone(),
        terms: f.terms.iter().map(|(&i, t)| (i, t.iter().map(|&x| emb.vertex_map[x]).collect())).collect(),
        diffs: f
            .diffs
            .iter()
            .map(|(&i, d)| (i, d.iter().map(|row| row.iter().map(|e| emb.map_element(e)).collect()).collect()))
            .collect(),
    })
}

fn build(field: Field, q: Quiver, rels: Vec<Relation>) -> Result<Arc<Algebra>> {
    Ok(Arc::new(Algebra::build(field, q, rels, None)?))
}

/// Path algebra of the linear quiver `1 → 2 → … → n`.
pub fn linear_a(field: Field, n: usize) -> Result<Arc<Algebra>> {
    let mut q = Quiver::new();
    for i in 1..=n {
        q.add_vertex(i.to_string());
    }
    for i in 1..n {
        q.add_arrow(format!("a{i}"), &i.to_string(), &(i + 1).to_string())?;
    }
    build(field, q, Vec::new())
}

/// `k` parallel arrows `1 → 2`; two arrows are named `a`, `b`.
pub fn kronecker(field: Field, k: usize) -> Result<Arc<Algebra>> {
    let mut q = Quiver::new();
    q.add_vertex("1");
    q.add_vertex("2");
    for i in 0..k {
        let id = if k == 2 { ["a", "b"][i].to_string() } else { format!("a{}", i + 1) };
        q.add_arrow(id, "1", "2")?;
    }
    build(field, q, Vec::new())
}

/// The quasi-simple `k ⇉ k` with `a ↦ 1`, `b ↦ λ` on a Kronecker-shaped pair
/// of arrows.
pub fn kronecker_module(alg: &Arc<Algebra>, a: &str, b: &str, lambda: &Scalar) -> Result<Rep> {
    let f = alg.field;
    let ia = alg.quiver.arrow(a)?;
    let ib = alg.quiver.arrow(b)?;
    let (s, t) = (alg.quiver.arrows[ia].from, alg.quiver.arrows[ia].to);
    let mut dims = vec![0; alg.num_vertices()];
    dims[s] = 1;
    dims[t] = 1;
    let maps = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(i, ar)| {
            let mut m = crate::linalg::Matrix::zeros(f, dims[ar.to], dims[ar.from]);
            if i == ia {
                m.set(0, 0, f.one());
            } else if i == ib {
                m.set(0, 0, lambda.clone());
            }
            m
        })
        .collect();
    Rep::new(alg, dims, maps)
}

fn cycle_quiver(n: usize) -> Result<Quiver> {
    let mut q = Quiver::new();
    for i in 1..=n {
        q.add_vertex(i.to_string());
    }
    for i in 1..=n {
        q.add_arrow(format!("a{i}"), &i.to_string(), &(i % n + 1).to_string())?;
    }
    Ok(q)
}

/// Zero relation along the cycle from arrow `from` through arrow `to`
/// (indices 1-based, wrapping).
fn cycle_run(q: &Quiver, field: Field, n: usize, from: usize, to: usize) -> Result<Relation> {
    let mut ids = Vec::new();
    let mut k = from;
    loop {
        ids.push(format!("a{k}"));
        if k == to {
            break;
        }
        k = k % n + 1;
    }
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    Relation::parse(q, field, &[(1, &refs)])
}

/// `C_n(r_1, …, r_t) = kQ_n / (a_{r_2}⋯a_{r_1}, …, a_n⋯a_{r_t})`, returned with
/// the corner embedding of `CB_{t+1}` at `e = e_{r_1} + … + e_{r_t} + e_n`.
pub fn circular(field: Field, n: usize, rels: &[usize]) -> Result<(Arc<Algebra>, Embedding)> {
    let t = rels.len();
    if n < 2 || t == 0 || rels.windows(2).any(|w| w[0] >= w[1]) || rels[0] < 1 || rels[t - 1] >= n {
        return Err(Error::SpecInvariantViolated(format!("circular({n}, {rels:?}) needs 1 <= r_1 < … < r_t < n")));
    }
    let q = cycle_quiver(n)?;
    let mut relations = Vec::new();
    for w in rels.windows(2) {
        relations.push(cycle_run(&q, field, n, w[0], w[1])?);
    }
    relations.push(cycle_run(&q, field, n, rels[t - 1], n)?);
    let big = build(field, q, relations)?;
    let small = cb(field, t + 1)?;
    let mut stops: Vec<usize> = rels.to_vec();
    stops.push(n);
    let vertex_map = stops.iter().map(|&r| big.vertex(&r.to_string())).collect::<Result<Vec<_>>>()?;
    let arrow_paths = (0..=t)
        .map(|i| {
            let (from, to) = (stops[i], stops[(i + 1) % (t + 1)]);
            let mut ids = Vec::new();
            let mut k = from;
            loop {
                ids.push(format!("a{k}"));
                k = k % n + 1;
                if k == to {
                    break;
                }
            }
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            big.quiver.path(&refs)
        })
        .collect::<Result<Vec<_>>>()?;
    let emb = Embedding::new(&small, &big, vertex_map, arrow_paths)?;
    Ok((big, emb))
}

/// `CB_n = C_n(1, …, n−1)`: every length-two zero relation but `a_1 a_n`.
pub fn cb(field: Field, n: usize) -> Result<Arc<Algebra>> {
    if n < 2 {
        return Err(Error::SpecInvariantViolated("cb needs n >= 2".into()));
    }
    let q = cycle_quiver(n)?;
    let relations = (1..n).map(|i| cycle_run(&q, field, n, i, i + 1)).collect::<Result<Vec<_>>>()?;
    build(field, q, relations)
}

/// `CI_d`: all length-two zero relations on the d-cycle.
pub fn ci(field: Field, d: usize) -> Result<Arc<Algebra>> {
    if d < 1 {
        return Err(Error::SpecInvariantViolated("ci needs d >= 1".into()));
    }
    let q = cycle_quiver(d)?;
    if d == 1 {
        return build(field, q.clone(), vec![Relation::parse(&q, field, &[(1, &["a1", "a1"])])?]);
    }
    let relations = (1..=d).map(|i| cycle_run(&q, field, d, i, i % d + 1)).collect::<Result<Vec<_>>>()?;
    build(field, q, relations)
}

/// `Λ(r, n, 0)`: n-cycle with zero relations `a_{i+1} a_i`, `i = 1..r`.
pub fn dda_cycle(field: Field, r: usize, n: usize) -> Result<Arc<Algebra>> {
    if n < 2 || r < 1 || r >= n {
        return Err(Error::SpecInvariantViolated(format!("dda needs n >= 2 and 1 <= r < n, got r={r}, n={n}")));
    }
    let q = cycle_quiver(n)?;
    let relations = (1..=r).map(|i| cycle_run(&q, field, n, i, i % n + 1)).collect::<Result<Vec<_>>>()?;
    build(field, q, relations)
}

/// Middle vertex of the last zero relation `a_{r+1} a_r` of `Λ(r, n, 0)`,
/// where the tail is attached.
pub fn dda_terminal(r: usize, n: usize) -> usize {
    r % n + 1
}

/// `Λ(r, n, m)`: `A_m` tacked onto `Λ(r, n, 0)` at [`dda_terminal`] with one
/// arrow. Tail vertices are `T1 → … → Tm`.
pub fn dda(field: Field, r: usize, n: usize, m: usize) -> Result<(Arc<Algebra>, Embedding)> {
    let base = dda_cycle(field, r, n)?;
    let mut t = Quiver::new();
    for i in 1..=m {
        t.add_vertex(i.to_string());
    }
    for i in 1..m {
        t.add_arrow(format!("t{i}"), &i.to_string(), &(i + 1).to_string())?;
    }
    if m == 0 {
        let emb = Embedding::new(&base, &base, (0..base.num_vertices()).collect(), identity_arrows(&base))?;
        return Ok((base, emb));
    }
    let x = dda_terminal(r, n).to_string();
    let mut mult = BTreeMap::new();
    mult.insert(x, 1);
    tack(&base, &t, &m.to_string(), &mult, "T")
}

fn identity_arrows(alg: &Algebra) -> Vec<Path> {
    (0..alg.quiver.arrows.len())
        .map(|a| Path::from_arrows(&alg.quiver, vec![a]).expect("single arrow"))
        .collect()
}

/// Canonical algebra `C(p; λ)`: source `0`, sink `1`, arm `i` with interior
/// vertices `i.1 … i.(p_i−1)` and arrows `x{i}_{k}`; relations
/// `x_i^{p_i} − x_2^{p_2} + λ_i x_1^{p_1}` for `i ≥ 3`.
pub fn canonical(field: Field, p: &[usize], lambdas: &[Scalar]) -> Result<Arc<Algebra>> {
    let t = p.len();
    if t < 2 || p.iter().any(|&x| x < 2) || lambdas.len() + 2 != t {
        return Err(Error::SpecInvariantViolated("canonical needs t >= 2 weights >= 2 and t − 2 parameters".into()));
    }
    for (i, l) in lambdas.iter().enumerate() {
        if l.is_zero() || lambdas[..i].contains(l) {
            return Err(Error::SpecInvariantViolated("canonical parameters must be distinct and nonzero".into()));
        }
    }
    let mut q = Quiver::new();
    q.add_vertex("0");
    q.add_vertex("1");
    for (i, &pi) in p.iter().enumerate() {
        for k in 1..pi {
            q.add_vertex(format!("{}.{}", i + 1, k));
        }
    }
    let arm_vertex = |i: usize, k: usize, pi: usize| -> String {
        if k == 0 {
            "0".into()
        } else if k == pi {
            "1".into()
        } else {
            format!("{}.{}", i + 1, k)
        }
    };
    for (i, &pi) in p.iter().enumerate() {
        for k in 1..=pi {
            q.add_arrow(format!("x{}_{}", i + 1, k), &arm_vertex(i, k - 1, pi), &arm_vertex(i, k, pi))?;
        }
    }
    let arm = |q: &Quiver, i: usize| -> Result<Path> {
        let ids: Vec<String> = (1..=p[i]).map(|k| format!("x{}_{}", i + 1, k)).collect();
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        q.path(&refs)
    };
    let mut relations = Vec::new();
    for i in 2..t {
        relations.push(Relation::new(vec![
            (field.one(), arm(&q, i)?),
            (field.int(-1), arm(&q, 1)?),
            (lambdas[i - 2].clone(), arm(&q, 0)?),
        ]));
    }
    build(field, q, relations)
}

/// Element of the arm path `0 → 1` along arm `i` (1-based).
pub fn canonical_arm(alg: &Algebra, i: usize) -> Result<Element> {
    let mut ids = Vec::new();
    let mut k = 1;
    while let Ok(a) = alg.quiver.arrow(&format!("x{i}_{k}")) {
        ids.push(a);
        k += 1;
    }
    if ids.is_empty() {
        return Err(Error::UnknownVertex(format!("arm {i}")));
    }
    Ok(alg.path_element(&Path::from_arrows(&alg.quiver, ids)?))
}

/// `A_n`-insertion at `x`: `x` becomes `x_0 → … → x_n`, arrows into `x` now
/// end at `x_0`, arrows out of `x` start at `x_n`, and every relation term
/// passing through `x` gets the path `ξ` spliced in.
pub fn insert_an(alg: &Arc<Algebra>, x: &str, n: usize) -> Result<(Arc<Algebra>, Embedding)> {
    let xi = alg.vertex(x)?;
    let oq = &alg.quiver;
    let mut q = Quiver::new();
    let mut vmap = Vec::with_capacity(oq.vertices.len());
    for (v, name) in oq.vertices.iter().enumerate() {
        if v == xi {
            for k in 0..=n {
                q.add_vertex(format!("{x}_{k}"));
            }
            vmap.push(q.vertex(&format!("{x}_{n}"))?);
        } else {
            vmap.push(q.add_vertex(name.clone()));
        }
    }
    let x0 = q.vertex(&format!("{x}_0"))?;
    for a in &oq.arrows {
        let from = if a.from == xi { vmap[xi] } else { vmap[a.from] };
        let to = if a.to == xi { x0 } else { vmap[a.to] };
        q.arrows.push(Arrow { id: a.id.clone(), from, to });
    }
    let n_old = oq.arrows.len();
    for k in 1..=n {
        let id = format!("xi_{x}_{k}");
        if oq.arrows.iter().any(|a| a.id == id) {
            return Err(Error::Schema(format!("arrow id {id:?} already used")));
        }
        q.add_arrow(id, &format!("{x}_{}", k - 1), &format!("{x}_{k}"))?;
    }
    let xi_path: Vec<usize> = (n_old..n_old + n).collect();
    let splice = |p: &Path| -> Path {
        let mut arrows = Vec::new();
        for (k, &a) in p.arrows.iter().enumerate() {
            arrows.push(a);
            if oq.arrows[a].to == xi && k + 1 < p.arrows.len() {
                arrows.extend_from_slice(&xi_path);
            }
        }
        Path::from_arrows(&q, arrows).expect("spliced path composes")
    };
    let relations = alg
        .relations
        .iter()
        .map(|r| Relation::new(r.terms.iter().map(|(c, p)| (c.clone(), splice(p))).collect()))
        .collect();
    let big = build(alg.field, q.clone(), relations)?;
    let arrow_paths = oq
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut arrows = vec![ai];
            if a.to == xi {
                arrows.extend_from_slice(&xi_path);
            }
            Path::from_arrows(&big.quiver, arrows)
        })
        .collect::<Result<Vec<_>>>()?;
    let emb = Embedding::new(alg, &big, vmap, arrow_paths)?;
    Ok((big, emb))
}

/// Tacking `(T, t) ▷_mult Λ`: disjoint union plus `mult(x)` arrows `t → x`.
/// Vertices of `T` are renamed `{prefix}{id}`.
pub fn tack(
    alg: &Arc<Algebra>,
    t: &Quiver,
    sink: &str,
    mult: &BTreeMap<String, usize>,
    prefix: &str,
) -> Result<(Arc<Algebra>, Embedding)> {
    t.validate()?;
    let ts = t.vertex(sink)?;
    if t.arrows.iter().any(|a| a.from == ts) {
        return Err(Error::NotASink(sink.to_string()));
    }
    if !t.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    for x in mult.keys() {
        alg.vertex(x)?;
    }
    let mut q = alg.quiver.clone();
    let base = q.vertices.len();
    for v in &t.vertices {
        let name = format!("{prefix}{v}");
        if q.vertices.contains(&name) {
            return Err(Error::Schema(format!("tacked vertex {name:?} collides")));
        }
        q.add_vertex(name);
    }
    for a in &t.arrows {
        let id = format!("{prefix}{}", a.id);
        if q.arrows.iter().any(|b| b.id == id) {
            return Err(Error::Schema(format!("tacked arrow {id:?} collides")));
        }
        q.arrows.push(Arrow { id, from: base + a.from, to: base + a.to });
    }
    for (x, &k) in mult {
        for j in 1..=k {
            let id = if k == 1 { format!("{prefix}{sink}>{x}") } else { format!("{prefix}{sink}>{x}#{j}") };
            q.add_arrow(id, &format!("{prefix}{sink}"), x)?;
        }
    }
    let big = build(alg.field, q, alg.relations.clone())?;
    let emb = Embedding::new(alg, &big, (0..alg.num_vertices()).collect(), identity_arrows(alg))?;
    Ok((big, emb))
}

/// Tensor product of two relation-free acyclic path algebras, with
/// commutativity squares. Vertices are `i|j`, arrows `a|j` and `i|b`.
pub fn tensor_algebra(a: &Algebra, b: &Algebra) -> Result<Arc<Algebra>> {
    if !a.relations.is_empty() || !b.relations.is_empty() {
        return Err(Error::HasRelations);
    }
    if !a.quiver.is_acyclic() || !b.quiver.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let (qa, qb) = (&a.quiver, &b.quiver);
    let mut q = Quiver::new();
    for i in &qa.vertices {
        for j in &qb.vertices {
            q.add_vertex(format!("{i}|{j}"));
        }
    }
    for al in &qa.arrows {
        for j in &qb.vertices {
            q.add_arrow(format!("{}|{j}", al.id), &format!("{}|{j}", qa.vertices[al.from]), &format!("{}|{j}", qa.vertices[al.to]))?;
        }
    }
    for i in &qa.vertices {
        for be in &qb.arrows {
            q.add_arrow(format!("{i}|{}", be.id), &format!("{i}|{}", qb.vertices[be.from]), &format!("{i}|{}", qb.vertices[be.to]))?;
        }
    }
    let field = a.field;
    let mut relations = Vec::new();
    for al in &qa.arrows {
        for be in &qb.arrows {
            let (i1, i2) = (&qa.vertices[al.from], &qa.vertices[al.to]);
            let (j1, j2) = (&qb.vertices[be.from], &qb.vertices[be.to]);
            let first = [format!("{}|{j1}", al.id), format!("{i2}|{}", be.id)];
            let second = [format!("{i1}|{}", be.id), format!("{}|{j2}", al.id)];
            let f: Vec<&str> = first.iter().map(String::as_str).collect();
            let s: Vec<&str> = second.iter().map(String::as_str).collect();
            relations.push(Relation::parse(&q, field, &[(1, &f), (-1, &s)])?);
        }
    }
    build(field, q, relations)
}

/// Family descriptor, as accepted on the command line and in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Circular { n: usize, rels: Vec<usize> },
    Cb { n: usize },
    Ci { d: usize },
    Canonical { p: Vec<usize>, lambda: Vec<String> },
    Dda { r: usize, n: usize, m: usize },
    Kronecker { arrows: usize },
    Tensor { left: usize, right: usize },
    Linear { n: usize },
}

/// Builds a family member, with its distinguished embedding when the family
/// ships one (circular: `CB_{t+1}` corner; dda: the cycle part).
pub fn family(field: Field, spec: &FamilySpec) -> Result<(Arc<Algebra>, Option<Embedding>)> {
    match spec {
        FamilySpec::Circular { n, rels } => {
            let (a, e) = circular(field, *n, rels)?;
            Ok((a, Some(e)))
        }
        FamilySpec::Cb { n } => Ok((cb(field, *n)?, None)),
        FamilySpec::Ci { d } => Ok((ci(field, *d)?, None)),
        FamilySpec::Canonical { p, lambda } => {
            let l = lambda.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()?;
            Ok((canonical(field, p, &l)?, None))
        }
        FamilySpec::Dda { r, n, m } => {
            let (a, e) = dda(field, *r, *n, *m)?;
            Ok((a, Some(e)))
        }
        FamilySpec::Kronecker { arrows } => Ok((kronecker(field, *arrows)?, None)),
        FamilySpec::Tensor { left, right } => {
            let (l, r) = (kronecker(field, *left)?, kronecker(field, *right)?);
            Ok((tensor_algebra(&l, &r)?, None))
        }
        FamilySpec::Linear { n } => Ok((linear_a(field, *n)?, None)),
    }
}

/// Parses inline specs such as `circular:7:5`, `cb:3`, `ci:2`,
/// `canonical:2,2,2:1`, `dda:1,2,0`, `kronecker:2`, `tensor:2,2`, `linear:3`.
pub fn parse_family(s: &str) -> Result<FamilySpec> {
    let bad = || Error::Schema(format!("malformed family spec {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    let nums = |x: &str| -> Result<Vec<usize>> {
        if x.is_empty() {
            return Ok(Vec::new());
        }
        x.split(',').map(|v| v.trim().parse::<usize>().map_err(|_| bad())).collect()
    };
    let one = |i: usize| -> Result<usize> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
    Ok(match parts[0] {
        "circular" => FamilySpec::Circular { n: one(1)?, rels: nums(parts.get(2).ok_or_else(bad)?)? },
        "cb" => FamilySpec::Cb { n: one(1)? },
        "ci" => FamilySpec::Ci { d: one(1)? },
        "canonical" => FamilySpec::Canonical {
            p: nums(parts.get(1).ok_or_else(bad)?)?,
            lambda: parts.get(2).map_or_else(Vec::new, |x| x.split(',').filter(|v| !v.is_empty()).map(String::from).collect()),
        },
        "dda" => {
            let v = nums(parts.get(1).ok_or_else(bad)?)?;
            if v.len() != 3 {
                return Err(bad());
            }
            FamilySpec::Dda { r: v[0], n: v[1], m: v[2] }
        }
        "kronecker" => FamilySpec::Kronecker { arrows: parts.get(1).map_or(Ok(2), |x| x.parse().map_err(|_| bad()))? },
        "tensor" => {
            let v = nums(parts.get(1).unwrap_or(&"2,2"))?;
            if v.len() != 2 {
                return Err(bad());
            }
            FamilySpec::Tensor { left: v[0], right: v[1] }
        }
        "linear" => FamilySpec::Linear { n: one(1)? },
        _ => return Err(Error::UnsupportedFamily(parts[0].to_string())),
    })
}

/// Brute-force quiver isomorphism on vertices (arrow multiplicities only).
pub fn quivers_isomorphic(a: &Quiver, b: &Quiver) -> bool {
    let n = a.vertices.len();
    if n != b.vertices.len() || a.arrows.len() != b.arrows.len() {
        return false;
    }
    let count = |q: &Quiver| {
        let mut m = vec![vec![0usize; n]; n];
        for ar in &q.arrows {
            m[ar.from][ar.to] += 1;
        }
        m
    };
    let (ma, mb) = (count(a), count(b));
    let degree = |m: &Vec<Vec<usize>>, v: usize| -> (usize, usize, usize) {
        (m[v].iter().sum(), (0..n).map(|u| m[u][v]).sum(), m[v][v])
    };
    let da: Vec<_> = (0..n).map(|v| degree(&ma, v)).collect();
    let db: Vec<_> = (0..n).map(|v| degree(&mb, v)).collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        v: usize,
        n: usize,
        ma: &[Vec<usize>],
        mb: &[Vec<usize>],
        da: &[(usize, usize, usize)],
        db: &[(usize, usize, usize)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || da[v] != db[w] {
                continue;
            }
            let ok = (0..v).all(|u| ma[u][v] == mb[perm[u]][w] && ma[v][u] == mb[w][perm[u]]);
            if !ok {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            if rec(v + 1, n, ma, mb, da, db, perm, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    rec(0, n, &ma, &mb, &da, &db, &mut perm, &mut used)
}

/// Finite poset on `1..=m` given by its strict relation pairs `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitePoset {
    pub size: usize,
    pub less: Vec<(usize, usize)>,
}

impl FinitePoset {
    /// `i ≤ j` in the reflexive-transitive closure.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let mut stack = vec![i];
        let mut seen = vec![false; self.size + 1];
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.less {
                if a == u && !seen[b] {
                    if b == j {
                        return true;
                    }
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        false
    }

    /// `ι(p) = {q : q ≤ p}`.
    pub fn down_set(&self, p: usize) -> Vec<usize> {
        (1..=self.size).filter(|&q| self.leq(q, p)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for &(a, b) in &self.less {
            if a == 0 || b == 0 || a > self.size || b > self.size {
                return Err(Error::Schema("poset element out of range".into()));
            }
        }
        for i in 1..=self.size {
            for j in 1..=self.size {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::Schema("poset relation has a cycle".into()));
                }
            }
        }
        Ok(())
    }
}

/// Output of the poset synthesis: the algebra, one designated object per
/// poset element, and the expected vertex signatures.
pub struct Synthesized {
    pub alg: Arc<Algebra>,
    pub objects: Vec<Rep>,
    /// Vertex ids of the expected spherical subcategory of each object.
    pub signatures: Vec<Vec<String>>,
}

/// `m` Kronecker copies `i'' ⇉ i'` (sink `i'`), then tack vertices `i` added
/// one at a time with one arrow `i → j'` exactly when `i ∉ ι(j)`.
pub fn synthesize_poset_algebra(field: Field, p: &FinitePoset) -> Result<Synthesized> {
    p.validate()?;
    let m = p.size;
    let mut q = Quiver::new();
    for i in 1..=m {
        q.add_vertex(format!("{i}''"));
        q.add_vertex(format!("{i}'"));
        q.add_arrow(format!("a{i}"), &format!("{i}''"), &format!("{i}'"))?;
        q.add_arrow(format!("b{i}"), &format!("{i}''"), &format!("{i}'"))?;
    }
    let mut alg = build(field, q, Vec::new())?;
    let downs: Vec<Vec<usize>> = (1..=m).map(|i| p.down_set(i)).collect();
    for i in 1..=m {
        let mut t = Quiver::new();
        t.add_vertex(i.to_string());
        let mut mult = BTreeMap::new();
        for j in 1..=m {
            if !downs[j - 1].contains(&i) {
                mult.insert(format!("{j}'"), 1);
            }
        }
        alg = tack(&alg, &t, &i.to_string(), &mult, "")?.0;
    }
    let one = field.one();
    let objects = (1..=m)
        .map(|i| kronecker_module(&alg, &format!("a{i}"), &format!("b{i}"), &one))
        .collect::<Result<Vec<_>>>()?;
    let signatures = (1..=m)
        .map(|i| {
            let mut s: Vec<String> = (1..=m).flat_map(|j| [format!("{j}'"), format!("{j}''")]).collect();
            s.extend(downs[i - 1].iter().map(|j| j.to_string()));
            s.sort();
            s
        })
        .collect();
    Ok(Synthesized { alg, objects, signatures })
}

fn quiver_from(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
    let mut q = Quiver::new();
    for v in vertices {
        q.add_vertex(*v);
    }
    for (id, s, t) in arrows {
        q.add_arrow(*id, s, t)?;
    }
    Ok(q)
}

/// Auslander algebra of `k[x]/x³`: `1 ⇄ 2 ⇄ 3` with `c a = 0` and
/// `a c = d b`.
pub fn auslander_x3(field: Field) -> Result<Arc<Algebra>> {
    let q = quiver_from(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "1"), ("d", "3", "2")])?;
    let relations = vec![
        Relation::parse(&q, field, &[(1, &["a", "c"])])?,
        Relation::parse(&q, field, &[(1, &["c", "a"]), (-1, &["b", "d"])])?,
    ];
    build(field, q, relations)
}

/// The six-vertex algebra with relations `da − hgf`, `ed − cb`, `ac`, `ba`,
/// `feh`, `ehg` (composition written right to left).
pub fn relcluster(field: Field) -> Result<Arc<Algebra>> {
    let q = quiver_from(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("a", "3", "4"),
            ("b", "4", "1"),
            ("c", "1", "3"),
            ("d", "4", "5"),
            ("e", "5", "3"),
            ("f", "3", "2"),
            ("g", "2", "6"),
            ("h", "6", "5"),
        ],
    )?;
    let relations = vec![
        Relation::parse(&q, field, &[(1, &["a", "d"]), (-1, &["f", "g", "h"])])?,
        Relation::parse(&q, field, &[(1, &["d", "e"]), (-1, &["b", "c"])])?,
        Relation::parse(&q, field, &[(1, &["c", "a"])])?,
        Relation::parse(&q, field, &[(1, &["a", "b"])])?,
        Relation::parse(&q, field, &[(1, &["h", "e", "f"])])?,
        Relation::parse(&q, field, &[(1, &["g", "h", "e"])])?,
    ];
    build(field, q, relations)
}

/// `1 ⇉ 2 ⇉ 3` with arrows `a1, b1`, `a2, b2` and relations `a2 a1`, `b2 b1`.
pub fn ncc(field: Field) -> Result<Arc<Algebra>> {
    let q = quiver_from(&["1", "2", "3"], &[("a1", "1", "2"), ("b1", "1", "2"), ("a2", "2", "3"), ("b2", "2", "3")])?;
    let relations = vec![
        Relation::parse(&q, field, &[(1, &["a1", "a2"])])?,
        Relation::parse(&q, field, &[(1, &["b1", "b2"])])?,
    ];
    build(field, q, relations)
}

/// The exceptional module `E`: `a1 = 0`, `b1 = 1`, `a2 = 1`, `b2 = 0`.
pub fn ncc_exceptional(alg: &Arc<Algebra>) -> Result<Rep> {
    let f = alg.field;
    let one = |x: i64| crate::linalg::Matrix::from_rows(f, vec![vec![f.int(x)]]);
    Rep::new(alg, vec![1, 1, 1], vec![one(0), one(1), one(1), one(0)])
}

/// `P(y) / Σ_g g·Λ`, the cokernel of `⊕ P(x_g) → P(y)` given by elements
/// `g` in paths `y → x_g`.
pub fn projective_quotient(alg: &Arc<Algebra>, y: usize, gens: &[(usize, Element)]) -> Rep {
    let p = Rep::projective(alg, y);
    let f = alg.field;
    let bases = (0..alg.num_vertices())
        .map(|w| {
            let target = alg.paths_between(y, w);
            let mut cols = Vec::new();
            for (x, g) in gens {
                for &q in &alg.paths_between(*x, w) {
                    let img = alg.then(g, &Element::basis(q, f.one()));
                    cols.push(target.iter().map(|&t| img.coeff(t, f)).collect::<Vec<_>>());
                }
            }
            crate::linalg::Matrix::from_columns(f, target.len(), &cols).column_space()
        })
        .collect::<Vec<_>>();
    p.quotient(&bases).0
}

/// `F_i = coker(P(1) → P(0))` along arm `i` of a canonical algebra.
pub fn canonical_arm_module(alg: &Arc<Algebra>, i: usize) -> Result<Rep> {
    let w = canonical_arm(alg, i)?;
    Ok(projective_quotient(alg, alg.vertex("0")?, &[(alg.vertex("1")?, w)]))
}

/// Homogeneous quasi-simple `coker(x_2^{p_2} − μ x_1^{p_1})`.
pub fn canonical_homogeneous(alg: &Arc<Algebra>, mu: &Scalar) -> Result<Rep> {
    let w = canonical_arm(alg, 2)?.add(&canonical_arm(alg, 1)?.scale(mu).neg());
    Ok(projective_quotient(alg, alg.vertex("0")?, &[(alg.vertex("1")?, w)]))
}

/// Vertices of a canonical algebra lying strictly inside arm `i`.
pub fn canonical_arm_interior(alg: &Algebra, i: usize) -> Vec<usize> {
    let prefix = format!("{i}.");
    (0..alg.num_vertices()).filter(|&v| alg.vertex_name(v).starts_with(&prefix)).collect()
}
