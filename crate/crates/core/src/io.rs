//! JSON file formats and the object descriptor mini-language.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Element, Quiver, Relation};
use crate::constructions::{Embedding, EmbeddingSpec};
use crate::derived::{minimal_projective_resolution, Complex, Perfect, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::rep::Rep;
use crate::spherelike::{cointerval_module, interval_module, string_complex};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowFile {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: Value,
    pub path: Vec<String>,
    /// Needed only for a trivial path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub field: Field,
    pub quiver: QuiverFile,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
    #[serde(default)]
    pub length_cap: Option<usize>,
}

fn scalar_from_value(field: Field, v: &Value, ctx: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) if n.is_i64() => Ok(field.int(n.as_i64().unwrap())),
        _ => Err(Error::Schema(format!("{ctx}: coefficient must be an integer or a string \"a/b\""))),
    }
}

fn quiver_from_file(q: &QuiverFile) -> Result<Quiver> {
    let mut out = Quiver::new();
    for v in &q.vertices {
        if out.vertices.contains(v) {
            return Err(Error::Schema(format!("quiver.vertices: duplicate vertex {v:?}")));
        }
        out.add_vertex(v.clone());
    }
    for (i, a) in q.arrows.iter().enumerate() {
        if out.arrows.iter().any(|b| b.id == a.id) {
            return Err(Error::Schema(format!("quiver.arrows[{i}]: duplicate arrow id {:?}", a.id)));
        }
        out.add_arrow(a.id.clone(), &a.from, &a.to)
            .map_err(|e| Error::Schema(format!("quiver.arrows[{i}]: {e}")))?;
    }
    Ok(out)
}

fn path_from_ids(q: &Quiver, ids: &[String], vertex: Option<&str>, ctx: &str) -> Result<crate::algebra::Path> {
    if ids.is_empty() {
        let v = vertex.ok_or_else(|| Error::Schema(format!("{ctx}: trivial path needs \"vertex\"")))?;
        return Ok(crate::algebra::Path::trivial(q.vertex(v)?));
    }
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    q.path(&refs).map_err(|e| Error::Schema(format!("{ctx}: {e}")))
}

impl AlgebraFile {
    pub fn build(&self) -> Result<Arc<Algebra>> {
        let field = match self.field {
            Field::Prime { p } => Field::prime(p)?,
            f => f,
        };
        let q = quiver_from_file(&self.quiver)?;
        let mut relations = Vec::new();
        for (i, r) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (j, t) in r.iter().enumerate() {
                let ctx = format!("relations[{i}][{j}]");
                let c = scalar_from_value(field, &t.coeff, &ctx)?;
                terms.push((c, path_from_ids(&q, &t.path, t.vertex.as_deref(), &ctx)?));
            }
            relations.push(Relation::new(terms));
        }
        Ok(Arc::new(Algebra::build(field, q, relations, self.length_cap)?))
    }

    pub fn from_algebra(alg: &Algebra) -> AlgebraFile {
        let q = &alg.quiver;
        AlgebraFile {
            field: alg.field,
            quiver: QuiverFile {
                vertices: q.vertices.clone(),
                arrows: q
                    .arrows
                    .iter()
                    .map(|a| ArrowFile { id: a.id.clone(), from: q.vertices[a.from].clone(), to: q.vertices[a.to].clone() })
                    .collect(),
            },
            relations: alg
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermFile {
                            coeff: Value::String(c.to_string()),
                            path: p.ids(q),
                            vertex: if p.is_empty() { Some(q.vertices[p.source].clone()) } else { None },
                        })
                        .collect()
                })
                .collect(),
            length_cap: Some(alg.length_cap),
        }
    }
}

pub fn read_text(path: &FsPath) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_algebra_str(s: &str) -> Result<Arc<Algebra>> {
    let f: AlgebraFile = serde_json::from_str(s)?;
    f.build()
}

pub fn parse_algebra_file(path: &FsPath) -> Result<Arc<Algebra>> {
    parse_algebra_str(&read_text(path)?).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn algebra_to_json(alg: &Algebra) -> Value {
    serde_json::to_value(AlgebraFile::from_algebra(alg)).expect("algebra serializes")
}

/// `{"algebra": …, "dims": {v: n}, "maps": {a: rows}}`; `algebra` may be a
/// path (relative to `base`) or an inline algebra object.
pub fn parse_rep_value(v: &Value, alg: Option<&Arc<Algebra>>, base: &FsPath) -> Result<Rep> {
    let embedded = match v.get("algebra") {
        Some(Value::String(p)) => Some(parse_algebra_file(&base.join(p))?),
        Some(obj @ Value::Object(_)) => Some(serde_json::from_value::<AlgebraFile>(obj.clone())?.build()?),
        Some(_) => return Err(Error::Schema("representation.algebra must be a path or an object".into())),
        None => None,
    };
    let alg = match (alg, embedded) {
        (Some(a), Some(b)) => {
            if a.fingerprint() != b.fingerprint() {
                return Err(Error::AlgebraMismatch);
            }
            a.clone()
        }
        (Some(a), None) => a.clone(),
        (None, Some(b)) => b,
        (None, None) => return Err(Error::Schema("representation has no algebra".into())),
    };
    rep_from_parts(&alg, v.get("dims"), v.get("maps"))
}

fn rep_from_parts(alg: &Arc<Algebra>, dims: Option<&Value>, maps: Option<&Value>) -> Result<Rep> {
    let f = alg.field;
    let dims_obj: BTreeMap<String, usize> =
        serde_json::from_value(dims.cloned().unwrap_or(json!({}))).map_err(|e| Error::Schema(format!("dims: {e}")))?;
    let mut dv = vec![0; alg.num_vertices()];
    for (k, n) in &dims_obj {
        dv[alg.vertex(k)?] = *n;
    }
    let maps_obj: BTreeMap<String, Vec<Vec<Value>>> =
        serde_json::from_value(maps.cloned().unwrap_or(json!({}))).map_err(|e| Error::Schema(format!("maps: {e}")))?;
    let mut mats: Vec<Matrix> = alg.quiver.arrows.iter().map(|a| Matrix::zeros(f, dv[a.to], dv[a.from])).collect();
    for (k, rows) in &maps_obj {
        let ai = alg.quiver.arrow(k).map_err(|e| Error::Schema(format!("maps: {e}")))?;
        let ctx = format!("maps.{k}");
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| scalar_from_value(f, x, &ctx)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let a = &alg.quiver.arrows[ai];
        if parsed.len() != dv[a.to] || parsed.iter().any(|r| r.len() != dv[a.from]) {
            return Err(Error::Schema(format!("{ctx}: expected a {}x{} matrix", dv[a.to], dv[a.from])));
        }
        if !parsed.is_empty() {
            mats[ai] = Matrix::from_rows(f, parsed);
        }
    }
    Rep::new(alg, dv, mats)
}

pub fn rep_to_json(m: &Rep) -> Value {
    let alg = &m.alg;
    let dims: BTreeMap<&str, usize> = (0..alg.num_vertices()).map(|v| (alg.vertex_name(v), m.dims[v])).collect();
    let maps: BTreeMap<&str, Value> = alg
        .quiver
        .arrows
        .iter()
        .zip(&m.maps)
        .map(|(a, x)| (a.id.as_str(), serde_json::to_value(x).expect("matrix serializes")))
        .collect();
    json!({"dims": dims, "maps": maps})
}

fn element_from_value(alg: &Algebra, v: &Value, source: usize, ctx: &str) -> Result<Element> {
    let terms: Vec<TermFile> = serde_json::from_value(v.clone()).map_err(|e| Error::Schema(format!("{ctx}: {e}")))?;
    let mut e = Element::zero();
    for t in &terms {
        let c = scalar_from_value(alg.field, &t.coeff, ctx)?;
        let vertex = t.vertex.clone().unwrap_or_else(|| alg.vertex_name(source).to_string());
        let p = path_from_ids(&alg.quiver, &t.path, Some(&vertex), ctx)?;
        e = e.add(&alg.path_element(&p).scale(&c));
    }
    Ok(e)
}

pub fn element_to_json(alg: &Algebra, e: &Element) -> Value {
    Value::Array(
        e.0.iter()
            .map(|(&i, c)| {
                let p = &alg.basis[i];
                let mut t = json!({"coeff": c.to_string(), "path": p.ids(&alg.quiver)});
                if p.is_empty() {
                    t["vertex"] = json!(alg.vertex_name(p.source));
                }
                t
            })
            .collect(),
    )
}

/// A parsed object: a module, a perfect complex or a bounded complex of modules.
#[derive(Clone, Debug)]
pub enum Object {
    Module(Rep),
    Perfect(Perfect),
    Complex(Complex),
}

impl Object {
    /// Perfect model: modules and complexes are resolved.
    pub fn to_perfect(&self) -> Result<Perfect> {
        match self {
            Object::Module(m) => minimal_projective_resolution(m, DEFAULT_BOUND),
            Object::Perfect(p) => Ok(p.clone()),
            Object::Complex(c) => crate::derived::perfect_resolution(c, DEFAULT_BOUND),
        }
    }

    pub fn to_complex(&self) -> Complex {
        match self {
            Object::Module(m) => Complex::stalk(m, 0),
            Object::Perfect(p) => p.realize(),
            Object::Complex(c) => c.clone(),
        }
    }
}

fn degree_key(k: &str) -> Result<i32> {
    k.trim().parse().map_err(|_| Error::Schema(format!("degree key {k:?} is not an integer")))
}

/// Complex file: pieces are projective label lists (perfect) or inline
/// representations (bounded complex of modules).
pub fn parse_complex_value(v: &Value, alg: &Arc<Algebra>) -> Result<Object> {
    let pieces = v.get("pieces").and_then(Value::as_object).ok_or_else(|| Error::Schema("complex needs \"pieces\"".into()))?;
    let empty = serde_json::Map::new();
    let diffs = v.get("differentials").and_then(Value::as_object).unwrap_or(&empty);
    let perfect = pieces.values().all(Value::is_array);
    if perfect {
        let mut p = Perfect::zero(alg);
        for (k, labels) in pieces {
            let labels: Vec<String> = serde_json::from_value(labels.clone()).map_err(|e| Error::Schema(format!("pieces.{k}: {e}")))?;
            p.terms.insert(degree_key(k)?, labels.iter().map(|l| alg.vertex(l)).collect::<Result<Vec<_>>>()?);
        }
        for (k, rows) in diffs {
            let i = degree_key(k)?;
            let (src, tgt) = (p.term(i).to_vec(), p.term(i + 1).to_vec());
            let rows = rows.as_array().ok_or_else(|| Error::Schema(format!("differentials.{k}: expected rows")))?;
            if rows.len() != tgt.len() {
                return Err(Error::Schema(format!("differentials.{k}: expected {} rows", tgt.len())));
            }
            let mut m = Vec::new();
            for (t, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or(Error::NotElementValued)?;
                if row.len() != src.len() {
                    return Err(Error::Schema(format!("differentials.{k}[{t}]: expected {} entries", src.len())));
                }
                let mut out = Vec::new();
                for (s, e) in row.iter().enumerate() {
                    let ctx = format!("differentials.{k}[{t}][{s}]");
                    let el = element_from_value(alg, e, tgt[t], &ctx)?;
                    if !el.is_zero() && !alg.element_in(&el, tgt[t], src[s]) {
                        return Err(Error::Schema(format!("{ctx}: entry must lie in paths {} -> {}", alg.vertex_name(tgt[t]), alg.vertex_name(src[s]))));
                    }
                    out.push(el);
                }
                m.push(out);
            }
            p.diffs.insert(i, m);
        }
        if !p.is_complex() {
            return Err(Error::NotChainMap("differentials do not square to zero".into()));
        }
        return Ok(Object::Perfect(p));
    }
    let mut c = Complex::zero(alg);
    for (k, piece) in pieces {
        let m = rep_from_parts(alg, piece.get("dims"), piece.get("maps"))?;
        c.pieces.insert(degree_key(k)?, m);
    }
    for (k, per_vertex) in diffs {
        let i = degree_key(k)?;
        let (a, b) = (c.piece(i), c.piece(i + 1));
        let obj: BTreeMap<String, Vec<Vec<Value>>> =
            serde_json::from_value(per_vertex.clone()).map_err(|e| Error::Schema(format!("differentials.{k}: {e}")))?;
        let mut mats: Vec<Matrix> = (0..alg.num_vertices()).map(|v| Matrix::zeros(alg.field, b.dims[v], a.dims[v])).collect();
        for (vname, rows) in obj {
            let v = alg.vertex(&vname)?;
            let ctx = format!("differentials.{k}.{vname}");
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(|x| scalar_from_value(alg.field, x, &ctx)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if parsed.len() != b.dims[v] || parsed.iter().any(|r| r.len() != a.dims[v]) {
                return Err(Error::Schema(format!("{ctx}: wrong shape")));
            }
            if !parsed.is_empty() {
                mats[v] = Matrix::from_rows(alg.field, parsed);
            }
        }
        c.diffs.insert(i, mats);
    }
    if !c.is_complex() {
        return Err(Error::NotChainMap("module complex is not a complex or has non-linear differentials".into()));
    }
    Ok(Object::Complex(c))
}

pub fn perfect_to_json(p: &Perfect) -> Value {
    let alg = &p.alg;
    let pieces: BTreeMap<String, Vec<&str>> =
        p.terms.iter().filter(|(_, t)| !t.is_empty()).map(|(i, t)| (i.to_string(), t.iter().map(|&x| alg.vertex_name(x)).collect())).collect();
    let diffs: BTreeMap<String, Vec<Vec<Value>>> = p
        .diffs
        .iter()
        .filter(|(_, d)| d.iter().flatten().any(|e| !e.is_zero()))
        .map(|(i, d)| (i.to_string(), d.iter().map(|row| row.iter().map(|e| element_to_json(alg, e)).collect()).collect()))
        .collect();
    json!({"pieces": pieces, "differentials": diffs})
}

pub fn complex_to_json(c: &Complex) -> Value {
    let alg = &c.alg;
    let pieces: BTreeMap<String, Value> =
        c.pieces.iter().filter(|(_, m)| !m.is_zero()).map(|(i, m)| (i.to_string(), rep_to_json(m))).collect();
    let diffs: BTreeMap<String, BTreeMap<&str, &Matrix>> = c
        .diffs
        .iter()
        .filter(|(_, d)| d.iter().any(|m| !m.is_zero()))
        .map(|(i, d)| (i.to_string(), d.iter().enumerate().map(|(v, m)| (alg.vertex_name(v), m)).collect()))
        .collect();
    json!({"pieces": pieces, "differentials": serde_json::to_value(diffs).expect("matrices serialize")})
}

/// Embedding file: the small algebra (path or inline) plus the maps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub small: Value,
    #[serde(flatten)]
    pub spec: EmbeddingSpec,
}

pub fn parse_embedding_file(path: &FsPath, big: &Arc<Algebra>) -> Result<Embedding> {
    let f: EmbeddingFile = serde_json::from_str(&read_text(path)?)?;
    let base = path.parent().unwrap_or(FsPath::new("."));
    let small = match &f.small {
        Value::String(p) => parse_algebra_file(&base.join(p))?,
        obj => serde_json::from_value::<AlgebraFile>(obj.clone())?.build()?,
    };
    Embedding::from_spec(&small, big, &f.spec)
}

pub fn embedding_to_json(e: &Embedding) -> Value {
    serde_json::to_value(EmbeddingFile { small: algebra_to_json(&e.small), spec: e.to_spec() }).expect("embedding serializes")
}

/// Resolves relative `file:` paths in descriptors.
#[derive(Clone, Debug, Default)]
pub struct DescriptorContext {
    pub base: PathBuf,
}

/// Parses `S:v`, `P:v`, `I:v`, `interval:v,len`, `cointerval:v,len`,
/// `string:x0/path/x1/…`, `file:path` and `induced:emb-file:desc`.
pub fn parse_object(alg: &Arc<Algebra>, desc: &str, ctx: &DescriptorContext) -> Result<Object> {
    let (kind, rest) = desc.split_once(':').ok_or_else(|| Error::Schema(format!("malformed object descriptor {desc:?}")))?;
    let vertex = |s: &str| alg.vertex(s.trim());
    match kind {
        "S" => Ok(Object::Module(Rep::simple(alg, vertex(rest)?))),
        "P" => Ok(Object::Perfect(Perfect::stalk(alg, vertex(rest)?, 0))),
        "I" => Ok(Object::Module(Rep::injective(alg, vertex(rest)?))),
        "interval" | "cointerval" => {
            let (v, k) = rest.rsplit_once(',').ok_or_else(|| Error::Schema(format!("{desc:?}: expected v,len")))?;
            let k: usize = k.trim().parse().map_err(|_| Error::Schema(format!("{desc:?}: bad length")))?;
            if k == 0 {
                return Err(Error::Schema(format!("{desc:?}: length must be positive")));
            }
            let v = vertex(v)?;
            Ok(Object::Module(if kind == "interval" { interval_module(alg, v, k) } else { cointerval_module(alg, v, k) }))
        }
        "string" => {
            let parts: Vec<&str> = rest.split('/').collect();
            if parts.len().is_multiple_of(2) {
                return Err(Error::Schema(format!("{desc:?}: expected x0/path/x1/...")));
            }
            let vs = parts.iter().step_by(2).map(|s| vertex(s)).collect::<Result<Vec<_>>>()?;
            let mut ps = Vec::new();
            for (i, s) in parts.iter().skip(1).step_by(2).enumerate() {
                let ids: Vec<&str> = s.split('*').collect();
                let path = alg.quiver.path(&ids)?;
                if path.source != vs[i + 1] || path.target != vs[i] {
                    return Err(Error::Schema(format!("{desc:?}: path {s} has the wrong endpoints")));
                }
                ps.push(alg.basis_index(&path).ok_or_else(|| Error::Schema(format!("{desc:?}: path {s} is not a basis path")))?);
            }
            let p = string_complex(alg, &vs, &ps);
            if !p.is_complex() {
                return Err(Error::NotChainMap(format!("{desc:?}: consecutive paths compose to a nonzero element")));
            }
            Ok(Object::Perfect(p))
        }
        "file" => {
            let path = ctx.base.join(rest);
            let v: Value = serde_json::from_str(&read_text(&path)?)?;
            if v.get("pieces").is_some() {
                parse_complex_value(&v, alg)
            } else {
                Ok(Object::Module(parse_rep_value(&v, Some(alg), path.parent().unwrap_or(FsPath::new(".")))?))
            }
        }
        "induced" => {
            let (emb, inner) = rest.split_once(':').ok_or_else(|| Error::Schema(format!("{desc:?}: expected induced:emb:desc")))?;
            let e = parse_embedding_file(&ctx.base.join(emb), alg)?;
            let small = parse_object(&e.small, inner, ctx)?;
            Ok(Object::Perfect(crate::constructions::induce(&e, &small.to_perfect()?)?))
        }
        _ => Err(Error::Schema(format!("unknown descriptor kind {kind:?}"))),
    }
}
