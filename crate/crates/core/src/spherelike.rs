//! Spherelike classification, asphericality and spherical subcategories.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::derived::{
    cocycle_to_perfect_map, cone, hom_profile, iso_up_to_shift, minimal_projective_resolution, nakayama, nakayama_perfect,
    perfect_map_to_cochain, Complex, HomComplex, IsoVerdict, Perfect, DEFAULT_BOUND,
};
use crate::error::{Error, Result};
use crate::rep::{analyze_algebra, hom_basis, EndAnalysis, EndShape, Morphism, Rep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotSpherelike,
    Spherical,
    ProperlySpherelike,
    /// `{0:2}` profile with `End ≅ k × k` over the algebraic closure.
    Decomposable0Spherelike,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpherelikeReport {
    pub object: String,
    pub profile: BTreeMap<i32, usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i32>,
    /// Set when the verdict relies on the ground field splitting a
    /// two-dimensional endomorphism algebra.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub field_sensitive: bool,
    /// False when a 0-spherelike iso search found no witness in a space of
    /// dimension above one.
    pub conclusive: bool,
    #[serde(skip)]
    pub asphericality: Option<Complex>,
}

impl SpherelikeReport {
    pub fn is_spherelike(&self) -> bool {
        self.verdict != Verdict::NotSpherelike
    }
}

fn gldim_cache() -> &'static Mutex<HashMap<u64, usize>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, usize>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Maximal projective dimension of a simple, or `GlobalDimensionExceeded`.
pub fn global_dimension(alg: &Arc<Algebra>, bound: usize) -> Result<usize> {
    let key = alg.fingerprint();
    if let Some(&g) = gldim_cache().lock().unwrap().get(&key) {
        return Ok(g);
    }
    let mut g = 0;
    for v in 0..alg.num_vertices() {
        let p = minimal_projective_resolution(&Rep::simple(alg, v), bound)?;
        if let Some((lo, _)) = p.range() {
            g = g.max((-lo) as usize);
        }
    }
    gldim_cache().lock().unwrap().insert(key, g);
    Ok(g)
}

/// Degree-0 part of the derived endomorphism ring of a perfect complex.
pub fn derived_end_analysis(f: &Perfect) -> Result<EndAnalysis> {
    let fr = f.realize();
    let hom = HomComplex::new(f, &fr);
    let basis = if hom.degree_range().is_some() { hom.cohomology_basis(0) } else { Vec::new() };
    let maps: Vec<_> = basis.iter().map(|v| cocycle_to_perfect_map(f, f, 0, v)).collect();
    let coords = |v: &[crate::Scalar]| hom.coordinates(0, &basis, v).expect("composite is a cocycle");
    let products: Vec<Vec<Vec<crate::Scalar>>> = maps
        .iter()
        .map(|mi| maps.iter().map(|mj| coords(&perfect_map_to_cochain(&mj.then(mi)))).collect())
        .collect();
    let identity = crate::derived::PerfectMap {
        source: f.clone(),
        target: f.clone(),
        maps: f
            .terms
            .iter()
            .map(|(&i, xs)| {
                let m = (0..xs.len())
                    .map(|t| {
                        (0..xs.len())
                            .map(|s| if s == t { f.alg.idempotent(xs[s]) } else { crate::algebra::Element::zero() })
                            .collect()
                    })
                    .collect();
                (i, m)
            })
            .collect(),
    };
    let unit = if basis.is_empty() { Vec::new() } else { coords(&perfect_map_to_cochain(&identity)) };
    analyze_algebra(f.alg.field, &products, &unit)
}

/// The cone of the map `F → νF[−d]` spanning `H^{−d} Hom(F, νF)`.
fn serre_cone(f: &Perfect, d: i32) -> Result<Complex> {
    let nu = nakayama(f).realize();
    let hom = HomComplex::new(f, &nu);
    let basis = if hom.degree_range().is_some() { hom.cohomology_basis(-d) } else { Vec::new() };
    if basis.len() != 1 {
        return Err(Error::NonUniqueMap(basis.len()));
    }
    cone(&hom.realize_cocycle(-d, &basis[0]))
}

/// Classifies a perfect complex. `label` is carried into the report.
pub fn classify_spherelike(label: &str, f: &Perfect) -> Result<SpherelikeReport> {
    global_dimension(&f.alg, DEFAULT_BOUND)?;
    let profile = hom_profile(f, &f.realize());
    let total: usize = profile.values().sum();
    let mut report = SpherelikeReport {
        object: label.to_string(),
        profile: profile.clone(),
        verdict: Verdict::NotSpherelike,
        d: None,
        field_sensitive: false,
        conclusive: true,
        asphericality: None,
    };
    if total != 2 || profile.get(&0).copied().unwrap_or(0) == 0 {
        return Ok(report);
    }
    let d = profile.keys().copied().find(|&k| k != 0).unwrap_or(0);
    if d == 0 {
        let end = derived_end_analysis(f)?;
        match end.shape {
            EndShape::Split | EndShape::QuadraticField => {
                report.verdict = Verdict::Decomposable0Spherelike;
                report.d = Some(0);
                report.field_sensitive = end.shape == EndShape::QuadraticField;
                return Ok(report);
            }
            EndShape::DualNumbers => {}
            _ => return Ok(report),
        }
        report.d = Some(0);
        let (iso, _) = iso_up_to_shift(f, &nakayama(f).realize(), 0)?;
        report.verdict = if iso == IsoVerdict::Iso { Verdict::Spherical } else { Verdict::ProperlySpherelike };
        report.conclusive = iso != IsoVerdict::NotWitnessed;
        return Ok(report);
    }
    let q = serre_cone(f, d)?;
    report.d = Some(d);
    report.verdict = if q.is_acyclic() { Verdict::Spherical } else { Verdict::ProperlySpherelike };
    if report.verdict == Verdict::Spherical && d < 0 {
        return Err(Error::SpecInvariantViolated(format!("{label} is spherical with d = {d} < 0")));
    }
    report.asphericality = Some(q);
    Ok(report)
}

/// `Q_F`, the cone of the unique map `F → νF[−d]`.
pub fn asphericality(f: &Perfect, report: &SpherelikeReport) -> Result<Complex> {
    match (report.verdict, report.d) {
        (Verdict::Spherical | Verdict::ProperlySpherelike, Some(0)) | (Verdict::Decomposable0Spherelike, _) => {
            Err(Error::DZeroUnsupported)
        }
        (Verdict::Spherical | Verdict::ProperlySpherelike, Some(d)) => match &report.asphericality {
            Some(q) => Ok(q.clone()),
            None => serre_cone(f, d),
        },
        _ => Err(Error::SpecInvariantViolated(format!("{} is not spherelike", report.object))),
    }
}

/// `A ∈ ^⊥Q`, i.e. `Hom^•(A, Q) = 0`.
pub fn in_spherical_subcat(a: &Perfect, q: &Complex) -> bool {
    hom_profile(a, q).is_empty()
}

/// `ν^r F ≅ F[s]`.
pub fn fractional_cy_check(f: &Perfect, r: usize, s: i32) -> Result<bool> {
    if r == 0 {
        let (v, _) = iso_up_to_shift(f, &f.realize(), -s)?;
        return Ok(v == IsoVerdict::Iso);
    }
    let mut cur = f.clone();
    for _ in 1..r {
        cur = nakayama_perfect(&cur, DEFAULT_BOUND)?;
    }
    let (v, _) = iso_up_to_shift(f, &nakayama(&cur).realize(), -s)?;
    Ok(v == IsoVerdict::Iso)
}

/// A candidate for a scan: a module (resolved on demand) or a perfect complex.
#[derive(Clone, Debug)]
pub enum CandidateObject {
    Module(Rep),
    Complex(Perfect),
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    pub object: CandidateObject,
}

#[derive(Clone, Debug)]
pub enum CandidateSet {
    AllSimples,
    /// `P(v)/rad^k P(v)` for every vertex and every `k` up to the Loewy length.
    AllIntervalModules,
    Explicit(Vec<Candidate>),
    /// Interval and co-interval modules of total dimension at most the bound.
    DimBound(usize),
    /// Complexes `P(x_0) → … → P(x_k)` with one nonzero path per map, at most
    /// the given number of terms (two or three).
    StringComplexes(usize),
}

/// Submodule `soc^k I(v)`, the dual notion of an interval.
pub fn cointerval_module(alg: &Arc<Algebra>, v: usize, k: usize) -> Rep {
    // soc^k I(v) is spanned by the duals of paths into v of length < k.
    let inj = Rep::injective(alg, v);
    let f = alg.field;
    let bases: Vec<crate::Matrix> = (0..alg.num_vertices())
        .map(|w| {
            let ps = alg.paths_between(w, v);
            let keep: Vec<Vec<crate::Scalar>> = ps
                .iter()
                .enumerate()
                .filter(|(_, &p)| alg.basis[p].len() < k)
                .map(|(i, _)| (0..ps.len()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                .collect();
            crate::Matrix::from_columns(f, ps.len(), &keep)
        })
        .collect();
    inj.subrep(&bases).0
}

pub fn interval_module(alg: &Arc<Algebra>, v: usize, k: usize) -> Rep {
    let p = Rep::projective(alg, v);
    let rb = p.radical_power_bases(k);
    p.quotient(&rb).0
}

fn loewy_length(alg: &Algebra, v: usize) -> usize {
    alg.paths_from(v).iter().map(|&p| alg.basis[p].len()).max().unwrap_or(0) + 1
}

/// Two modules are isomorphic when some homomorphism is invertible; tries a
/// basis of `Hom` and a few fixed combinations.
pub fn modules_isomorphic(m: &Rep, n: &Rep) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    let basis = hom_basis(m, n)?;
    let invertible = |f: &Morphism| f.mats.iter().all(|x| x.rows() == 0 || x.inverse().is_some());
    if basis.iter().any(invertible) {
        return Ok(true);
    }
    let fld = m.field();
    for k in 1..=8i64 {
        let mut acc = Morphism::zero(m, n);
        for (i, b) in basis.iter().enumerate() {
            let c = fld.int(((i as i64 + 1) * k * 7919) % 11 - 5);
            acc = Morphism {
                source: acc.source.clone(),
                target: acc.target.clone(),
                mats: acc.mats.iter().zip(&b.mats).map(|(x, y)| x.add(&y.scale(&c))).collect(),
            };
        }
        if invertible(&acc) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Deterministic enumeration of a candidate set.
pub fn enumerate_candidates(alg: &Arc<Algebra>, set: &CandidateSet) -> Result<Vec<Candidate>> {
    let name = |v: usize| alg.vertex_name(v).to_string();
    Ok(match set {
        CandidateSet::AllSimples => (0..alg.num_vertices())
            .map(|v| Candidate { label: format!("S:{}", name(v)), object: CandidateObject::Module(Rep::simple(alg, v)) })
            .collect(),
        CandidateSet::AllIntervalModules => {
            let mut out = Vec::new();
            for v in 0..alg.num_vertices() {
                for k in 1..=loewy_length(alg, v) {
                    out.push(Candidate {
                        label: format!("interval:{},{k}", name(v)),
                        object: CandidateObject::Module(interval_module(alg, v, k)),
                    });
                }
            }
            out
        }
        CandidateSet::Explicit(list) => list.clone(),
        CandidateSet::DimBound(bound) => {
            let mut out: Vec<(String, Rep)> = Vec::new();
            let mut push = |label: String, m: Rep| -> Result<()> {
                if m.total_dim() == 0 || m.total_dim() > *bound {
                    return Ok(());
                }
                for (_, n) in &out {
                    if modules_isomorphic(&m, n)? {
                        return Ok(());
                    }
                }
                out.push((label, m));
                Ok(())
            };
            for v in 0..alg.num_vertices() {
                for k in 1..=loewy_length(alg, v) {
                    push(format!("interval:{},{k}", name(v)), interval_module(alg, v, k))?;
                }
            }
            for v in 0..alg.num_vertices() {
                let depth = alg.paths_to(v).iter().map(|&p| alg.basis[p].len()).max().unwrap_or(0) + 1;
                for k in 1..=depth {
                    push(format!("cointerval:{},{k}", name(v)), cointerval_module(alg, v, k))?;
                }
            }
            out.into_iter().map(|(label, m)| Candidate { label, object: CandidateObject::Module(m) }).collect()
        }
        CandidateSet::StringComplexes(k) => string_complexes(alg, *k)
            .into_iter()
            .map(|(label, p)| Candidate { label, object: CandidateObject::Complex(p) })
            .collect(),
    })
}

/// `P(x_0) → P(x_1) → …` in degrees `1−k … 0`, entry `i` the path `paths[i]`
/// from `x_{i+1}` to `x_i`.
pub fn string_complex(alg: &Arc<Algebra>, vertices: &[usize], paths: &[usize]) -> Perfect {
    let k = vertices.len() as i32;
    let mut p = Perfect::zero(alg);
    for (i, &x) in vertices.iter().enumerate() {
        p.terms.insert(i as i32 + 1 - k, vec![x]);
    }
    for (i, &q) in paths.iter().enumerate() {
        p.diffs.insert(i as i32 + 1 - k, vec![vec![Element::basis(q, alg.field.one())]]);
    }
    p
}

/// Label in the `string:` descriptor syntax.
pub fn string_label(alg: &Algebra, vertices: &[usize], paths: &[usize]) -> String {
    let mut parts = vec![alg.vertex_name(vertices[0]).to_string()];
    for (i, &q) in paths.iter().enumerate() {
        parts.push(alg.basis[q].render(&alg.quiver));
        parts.push(alg.vertex_name(vertices[i + 1]).to_string());
    }
    format!("string:{}", parts.join("/"))
}

fn string_complexes(alg: &Arc<Algebra>, max_terms: usize) -> Vec<(String, Perfect)> {
    let radical: Vec<usize> = (0..alg.dim()).filter(|&i| !alg.basis[i].is_empty()).collect();
    let mut out = Vec::new();
    if max_terms >= 2 {
        for &q in &radical {
            let (y, x) = (alg.basis[q].source, alg.basis[q].target);
            let vs = [x, y];
            out.push((string_label(alg, &vs, &[q]), string_complex(alg, &vs, &[q])));
        }
    }
    if max_terms >= 3 {
        for &q1 in &radical {
            for &q2 in &radical {
                let (y, x) = (alg.basis[q1].source, alg.basis[q1].target);
                if alg.basis[q2].target != y {
                    continue;
                }
                let z = alg.basis[q2].source;
                let one = alg.field.one();
                if !alg.then(&Element::basis(q2, one.clone()), &Element::basis(q1, one)).is_zero() {
                    continue;
                }
                let vs = [x, y, z];
                out.push((string_label(alg, &vs, &[q1, q2]), string_complex(alg, &vs, &[q1, q2])));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub object: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<SpherelikeReport>,
    /// Reason the candidate was not classified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Classifies every candidate; per-candidate failures are reported, not fatal.
pub fn scan(alg: &Arc<Algebra>, set: &CandidateSet) -> Result<Vec<ScanEntry>> {
    let cands = enumerate_candidates(alg, set)?;
    Ok(cands
        .par_iter()
        .map(|c| {
            let res = match &c.object {
                CandidateObject::Module(m) => minimal_projective_resolution(m, DEFAULT_BOUND),
                CandidateObject::Complex(p) => Ok(p.clone()),
            }
            .and_then(|p| classify_spherelike(&c.label, &p));
            match res {
                Ok(r) => ScanEntry { object: c.label.clone(), report: Some(r), skipped: None },
                Err(e) => ScanEntry { object: c.label.clone(), report: None, skipped: Some(e.to_string()) },
            }
        })
        .collect())
}
