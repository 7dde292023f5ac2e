//! Bound quiver algebras kQ/I with a certified normal-form basis.
//!
//! Paths are stored in traversal order (first arrow first). The algebra
//! product is function composition, so `multiply(a, b)` means "first `b`,
//! then `a`"; internally [`Algebra::then`] takes its arguments in traversal
//! order to keep the bookkeeping readable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> usize {
        self.vertices.push(id.into());
        self.vertices.len() - 1
    }

    /// Adds an arrow between existing vertex ids.
    pub fn add_arrow(&mut self, id: impl Into<String>, from: &str, to: &str) -> Result<usize> {
        let from = self.vertex(from)?;
        let to = self.vertex(to)?;
        self.arrows.push(Arrow { id: id.into(), from, to });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::Schema(format!("unknown arrow {id:?}")))
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::Schema(format!("duplicate vertex {v:?}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.id == a.id) {
                return Err(Error::Schema(format!("duplicate arrow {:?}", a.id)));
            }
            if a.from >= self.vertices.len() || a.to >= self.vertices.len() {
                return Err(Error::Schema(format!("arrow {:?} has a missing endpoint", a.id)));
            }
        }
        Ok(())
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.to] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.from == v) {
                indeg[a.to] -= 1;
                if indeg[a.to] == 0 {
                    stack.push(a.to);
                }
            }
        }
        seen == n
    }

    /// Builds a path from arrow ids in traversal order.
    pub fn path(&self, arrows: &[&str]) -> Result<Path> {
        let idx = arrows.iter().map(|a| self.arrow(a)).collect::<Result<Vec<_>>>()?;
        Path::from_arrows(self, idx)
    }
}

/// A path in traversal order. Trivial paths have no arrows and equal
/// source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Schema("empty path needs a vertex".into()));
        };
        for w in arrows.windows(2) {
            if q.arrows[w[0]].to != q.arrows[w[1]].from {
                return Err(Error::Schema(format!(
                    "arrows {:?} and {:?} do not compose",
                    q.arrows[w[0]].id, q.arrows[w[1]].id
                )));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(Path { source: q.arrows[first].from, target: q.arrows[last].to, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if they meet.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].id.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub fn ids(&self, q: &Quiver) -> Vec<String> {
        self.arrows.iter().map(|&a| q.arrows[a].id.clone()).collect()
    }
}

/// Shorter first, then lexicographic arrow indices, then source.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of paths, used for relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Relation {
        Relation { terms }
    }

    /// Convenience constructor from `(coefficient, arrow ids)` pairs.
    pub fn parse(q: &Quiver, field: Field, terms: &[(i64, &[&str])]) -> Result<Relation> {
        let terms = terms
            .iter()
            .map(|(c, p)| Ok((field.int(*c), q.path(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation { terms })
    }
}

/// Element of the algebra in normal form: basis index → coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Element(pub BTreeMap<usize, Scalar>);

impl Element {
    pub fn zero() -> Element {
        Element(BTreeMap::new())
    }

    pub fn basis(i: usize, one: Scalar) -> Element {
        let mut m = BTreeMap::new();
        m.insert(i, one);
        Element(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize, field: Field) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&i) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.0.remove(&i);
                }
            }
            None => {
                self.0.insert(i, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in &other.0 {
            out.add_term(*i, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn neg(&self) -> Element {
        Element(self.0.iter().map(|(i, x)| (*i, -x)).collect())
    }
}

/// Dense-in-columns sparse row used during saturation.
type SparseRow = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug)]
pub struct Algebra {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub length_cap: usize,
    /// Truncation length that certified finite dimension: all paths of at
    /// least this length vanish.
    pub certified_length: usize,
    pub basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Normal forms of the non-basis paths shorter than `certified_length`.
    reductions: HashMap<Path, Element>,
    /// `table[i * n + j]` = basis i followed by basis j.
    table: Vec<Element>,
    fingerprint: u64,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.quiver == other.quiver
            && self.relations == other.relations
            && self.field == other.field
    }
}

/// Default length cap: `2 + arrows * max relation length`, with the relation
/// length taken as at least 1 so relation-free acyclic quivers certify.
pub fn default_cap(q: &Quiver, relations: &[Relation]) -> usize {
    let longest = relations
        .iter()
        .flat_map(|r| r.terms.iter().map(|(_, p)| p.len()))
        .max()
        .unwrap_or(0)
        .max(1);
    2 + q.arrows.len() * longest
}

fn check_admissible(q: &Quiver, rel: &Relation) -> Result<()> {
    let nonzero: Vec<&(Scalar, Path)> = rel.terms.iter().filter(|(c, _)| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::NotAdmissible("relation has no nonzero terms".into()));
    }
    let (s, t) = (nonzero[0].1.source, nonzero[0].1.target);
    for (_, p) in nonzero {
        if p.len() < 2 {
            return Err(Error::NotAdmissible(format!("term {} has length < 2", p.render(q))));
        }
        if p.source != s || p.target != t {
            return Err(Error::NotAdmissible(format!("term {} is not parallel", p.render(q))));
        }
    }
    Ok(())
}

/// All paths of length at most `max_len`, sorted ascending.
fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.from == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.to, arrows });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

struct Truncated<'a> {
    q: &'a Quiver,
    max_len: usize,
    paths: Vec<Path>,
    ids: HashMap<Path, usize>,
}

impl<'a> Truncated<'a> {
    fn new(q: &'a Quiver, max_len: usize) -> Self {
        let paths = enumerate_paths(q, max_len);
        let ids = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Truncated { q, max_len, paths, ids }
    }

    fn row_of(&self, rel: &Relation) -> SparseRow {
        let mut row = SparseRow::new();
        for (c, p) in &rel.terms {
            if p.len() <= self.max_len {
                add_sparse(&mut row, self.ids[p], c);
            }
        }
        row
    }

    /// Multiplies a row by an arrow on the given side, dropping paths that
    /// exceed the truncation length.
    fn extend(&self, row: &SparseRow, arrow: usize, prepend: bool) -> SparseRow {
        let a = &self.q.arrows[arrow];
        let mut out = SparseRow::new();
        for (&col, c) in row {
            let p = &self.paths[col];
            if p.len() + 1 > self.max_len {
                continue;
            }
            let np = if prepend {
                if a.to != p.source {
                    continue;
                }
                let mut arrows = vec![arrow];
                arrows.extend_from_slice(&p.arrows);
                Path { source: a.from, target: p.target, arrows }
            } else {
                if a.from != p.target {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(arrow);
                Path { source: p.source, target: a.to, arrows }
            };
            add_sparse(&mut out, self.ids[&np], c);
        }
        out
    }
}

fn add_sparse(row: &mut SparseRow, col: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match row.get_mut(&col) {
        Some(x) => {
            *x = &*x + c;
            if x.is_zero() {
                row.remove(&col);
            }
        }
        None => {
            row.insert(col, c.clone());
        }
    }
}

fn axpy(row: &mut SparseRow, f: &Scalar, other: &SparseRow) {
    for (&col, c) in other {
        add_sparse(row, col, &(f * c));
    }
}

/// Echelon basis of the ideal slice: pivot = largest path of each row,
/// leading coefficient 1.
struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((&lead, c)) = row.iter().next_back() {
            let Some(pr) = self.rows.get(&lead) else { break };
            let f = -c;
            axpy(&mut row, &f, pr);
        }
        row
    }

    fn insert(&mut self, row: SparseRow) -> Option<SparseRow> {
        let row = self.reduce(row);
        let (&lead, c) = row.iter().next_back()?;
        let inv = c.inv();
        let row: SparseRow = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
        self.rows.insert(lead, row.clone());
        Some(row)
    }

    /// Back-substitutes so every non-leading term of every row is a non-pivot.
    fn fully_reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for p in pivots {
            let mut row = self.rows.remove(&p).unwrap();
            loop {
                let hit = row
                    .iter()
                    .rev()
                    .find(|(&k, _)| k != p && self.rows.contains_key(&k))
                    .map(|(&k, c)| (k, c.clone()));
                let Some((k, c)) = hit else { break };
                let f = -&c;
                axpy(&mut row, &f, &self.rows[&k]);
            }
            self.rows.insert(p, row);
        }
    }
}

impl Algebra {
    /// Builds kQ/I, certifying that all paths of some length `L <= cap`
    /// lie in the ideal. Relations are assumed to generate an admissible
    /// ideal; under that assumption the certificate is exact.
    pub fn build(field: Field, quiver: Quiver, relations: Vec<Relation>, cap: Option<usize>) -> Result<Algebra> {
        quiver.validate()?;
        for r in &relations {
            check_admissible(&quiver, r)?;
            for (c, _) in &r.terms {
                if c.field() != field {
                    return Err(Error::Schema("relation coefficient over the wrong field".into()));
                }
            }
        }
        let cap = cap.unwrap_or_else(|| default_cap(&quiver, &relations));
        for len in 1..=cap {
            if let Some(alg) = Self::try_build(field, &quiver, &relations, cap, len) {
                return Ok(alg);
            }
        }
        Err(Error::CapInsufficient { cap })
    }

    fn try_build(field: Field, quiver: &Quiver, relations: &[Relation], cap: usize, len: usize) -> Option<Algebra> {
        let tr = Truncated::new(quiver, len);
        let mut ech = Echelon { rows: BTreeMap::new() };
        let mut queue: VecDeque<SparseRow> = relations.iter().map(|r| tr.row_of(r)).collect();
        while let Some(row) = queue.pop_front() {
            if let Some(new_row) = ech.insert(row) {
                for a in 0..quiver.arrows.len() {
                    let l = tr.extend(&new_row, a, true);
                    if !l.is_empty() {
                        queue.push_back(l);
                    }
                    let r = tr.extend(&new_row, a, false);
                    if !r.is_empty() {
                        queue.push_back(r);
                    }
                }
            }
        }
        ech.fully_reduce();
        // Certificate: every path of length `len` reduces to zero.
        for (i, p) in tr.paths.iter().enumerate() {
            if p.len() == len {
                match ech.rows.get(&i) {
                    Some(row) if row.len() == 1 => {}
                    _ => return None,
                }
            }
        }
        let basis: Vec<Path> = tr
            .paths
            .iter()
            .enumerate()
            .filter(|(i, p)| p.len() < len && !ech.rows.contains_key(i))
            .map(|(_, p)| p.clone())
            .collect();
        let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut reductions = HashMap::new();
        for (&pivot, row) in &ech.rows {
            let p = &tr.paths[pivot];
            if p.len() >= len {
                continue;
            }
            let mut e = Element::zero();
            for (&k, c) in row {
                if k != pivot {
                    e.add_term(index[&tr.paths[k]], &-c);
                }
            }
            reductions.insert(p.clone(), e);
        }
        let mut alg = Algebra {
            field,
            quiver: quiver.clone(),
            relations: relations.to_vec(),
            length_cap: cap,
            certified_length: len,
            basis,
            index,
            reductions,
            table: Vec::new(),
            fingerprint: 0,
        };
        alg.fill_table();
        alg.fingerprint = alg.compute_fingerprint();
        Some(alg)
    }

    fn fill_table(&mut self) {
        let n = self.basis.len();
        let mut table = vec![Element::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if let Some(p) = self.basis[i].concat(&self.basis[j]) {
                    table[i * n + j] = self.path_element(&p);
                }
            }
        }
        self.table = table;
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.quiver.vertices.hash(&mut h);
        self.quiver.arrows.hash(&mut h);
        for r in &self.relations {
            for (c, p) in &r.terms {
                c.to_string().hash(&mut h);
                p.hash(&mut h);
            }
        }
        format!("{:?}", self.field).hash(&mut h);
        h.finish()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.quiver.vertex(id)
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Normal form of an arbitrary path.
    pub fn path_element(&self, p: &Path) -> Element {
        if p.len() >= self.certified_length {
            return Element::zero();
        }
        if let Some(&i) = self.index.get(p) {
            return Element::basis(i, self.field.one());
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    pub fn arrow_element(&self, a: usize) -> Element {
        let q = &self.quiver;
        self.path_element(&Path { source: q.arrows[a].from, target: q.arrows[a].to, arrows: vec![a] })
    }

    pub fn idempotent(&self, v: usize) -> Element {
        self.path_element(&Path::trivial(v))
    }

    pub fn relation_element(&self, r: &Relation) -> Element {
        let mut e = Element::zero();
        for (c, p) in &r.terms {
            e = e.add(&self.path_element(p).scale(c));
        }
        e
    }

    /// Basis element `i` followed by basis element `j`.
    pub fn then_basis(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.basis.len() + j]
    }

    /// Product in traversal order: first `a`, then `b`.
    pub fn then(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (&i, x) in &a.0 {
            for (&j, y) in &b.0 {
                let prod = self.then_basis(i, j);
                if prod.is_zero() {
                    continue;
                }
                let c = x * y;
                for (&k, z) in &prod.0 {
                    out.add_term(k, &(&c * z));
                }
            }
        }
        out
    }

    /// The algebra product `a · b`: first `b`, then `a`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.then(b, a)
    }

    /// Basis indices of paths from `s` to `t`.
    pub fn paths_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == s && self.basis[i].target == t).collect()
    }

    /// Basis indices of paths starting at `s`, in basis order.
    pub fn paths_from(&self, s: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == s).collect()
    }

    pub fn paths_to(&self, t: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].target == t).collect()
    }

    /// Whether an element is supported on paths from `s` to `t`.
    pub fn element_in(&self, e: &Element, s: usize, t: usize) -> bool {
        e.0.keys().all(|&i| self.basis[i].source == s && self.basis[i].target == t)
    }

    /// Whether an element lies in the arrow ideal.
    pub fn in_radical(&self, e: &Element) -> bool {
        e.0.keys().all(|&i| !self.basis[i].is_empty())
    }

    pub fn render_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.0.iter()
            .map(|(&i, c)| format!("{}*{}", c, self.basis[i].render(&self.quiver)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn basis_rendered(&self) -> Vec<String> {
        self.basis.iter().map(|p| p.render(&self.quiver)).collect()
    }
}
