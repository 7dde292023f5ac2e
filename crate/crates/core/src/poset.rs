//! Spherelike posets for classification-backed families, verified by
//! membership computations against asphericalities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::constructions::{
    canonical, canonical_arm_interior, canonical_arm_module, canonical_homogeneous, dda, synthesize_poset_algebra,
    FinitePoset,
};
use crate::derived::{hom_profile, minimal_projective_resolution, tau, Complex, Perfect, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::rep::Rep;
use crate::spherelike::{classify_spherelike, scan, CandidateObject, CandidateSet, SpherelikeReport, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignatureKind {
    WholeCategory,
    VertexSupported { vertices: BTreeSet<String> },
    /// Named components from a classification, e.g. `("X_2", "tau^1 X")`.
    Classified { components: Vec<(String, String)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcatSignature {
    #[serde(flatten)]
    pub kind: SignatureKind,
    pub provenance: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

fn set_compare<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> Comparison {
    match (a.is_subset(b), b.is_subset(a)) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    }
}

pub fn compare(a: &SubcatSignature, b: &SubcatSignature) -> Result<Comparison> {
    use SignatureKind::*;
    Ok(match (&a.kind, &b.kind) {
        (WholeCategory, WholeCategory) => Comparison::Equal,
        (WholeCategory, _) => Comparison::Greater,
        (_, WholeCategory) => Comparison::Less,
        (VertexSupported { vertices: x }, VertexSupported { vertices: y }) => set_compare(x, y),
        (Classified { components: x }, Classified { components: y }) => {
            set_compare(&x.iter().collect(), &y.iter().collect())
        }
        _ => return Err(Error::IncompatibleKinds("vertex-supported vs classified".into())),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Node {
    pub label: String,
    /// Representative object, absent for classification-only nodes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i32>,
    pub signature: SubcatSignature,
    pub classification_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `object ∈ D_from` but `object ∉ D_to`, so `D_from ⊄ D_to`.
    NotContained,
    /// Every listed generator of `D_from` lies in `D_to`.
    Contained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub from: usize,
    pub to: usize,
    pub objects: Vec<String>,
    /// Total `dim Hom^•(W, Q_from)` and `dim Hom^•(W, Q_to)` per object.
    pub hom_q_from: Vec<usize>,
    pub hom_q_to: Vec<usize>,
}

/// Objects and asphericalities behind a poset, kept for re-verification.
#[derive(Clone, Debug)]
pub struct PosetData {
    pub alg: Arc<Algebra>,
    /// `None` for nodes that are the whole category or classification-only.
    pub qs: Vec<Option<Complex>>,
    pub probes: Vec<(String, Perfect)>,
    /// Probe index of the vertex object used for vertex-supported signatures.
    pub vertex_probes: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpherelikePoset {
    pub family: String,
    pub nodes: Vec<Node>,
    /// Strict order pairs `(i, j)` meaning `D_i ⊊ D_j`.
    pub relation: Vec<(usize, usize)>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_quotient: Option<Vec<Vec<usize>>>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub data: Option<PosetData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetStats {
    pub cardinality: usize,
    pub height: usize,
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum PosetFamily {
    Dda { r: usize, n: usize, m: usize },
    Canonical { p: Vec<usize>, lambda: Vec<String> },
    Synthesized { poset: FinitePoset },
}

impl SpherelikePoset {
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.relation.contains(&(i, j))
    }
}

fn membership_matrix(qs: &[Option<Complex>], probes: &[(String, Perfect)]) -> Vec<Vec<bool>> {
    qs.par_iter()
        .map(|q| match q {
            None => vec![true; probes.len()],
            Some(q) => probes.iter().map(|(_, p)| hom_profile(p, q).is_empty()).collect(),
        })
        .collect()
}

fn hom_total(p: &Perfect, q: &Option<Complex>) -> usize {
    q.as_ref().map_or(0, |q| hom_profile(p, q).values().sum())
}

/// Strict order from pairwise signature comparison.
fn relation_from_signatures(nodes: &[Node]) -> Result<Vec<(usize, usize)>> {
    let mut rel = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i != j && compare(&nodes[i].signature, &nodes[j].signature)? == Comparison::Less {
                rel.push((i, j));
            }
        }
    }
    Ok(rel)
}

/// Computes witnesses for every pair and checks the signatures against the
/// membership matrix. Any contradiction is a `WitnessFailed`.
fn compute_witnesses(nodes: &[Node], relation: &[(usize, usize)], data: &PosetData) -> Result<(Vec<Witness>, Vec<String>)> {
    let member = membership_matrix(&data.qs, &data.probes);
    let mut notes = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        if let SignatureKind::VertexSupported { vertices } = &node.signature.kind {
            for (v, &p) in &data.vertex_probes {
                if member[i][p] != vertices.contains(v) {
                    return Err(Error::WitnessFailed(format!(
                        "{}: {} is {} D_F but the signature says otherwise",
                        node.label,
                        data.probes[p].0,
                        if member[i][p] { "in" } else { "not in" }
                    )));
                }
            }
        }
    }
    let mut witnesses = Vec::new();
    let record = |kind: WitnessKind, from: usize, to: usize, ps: Vec<usize>| Witness {
        kind,
        from,
        to,
        objects: ps.iter().map(|&p| data.probes[p].0.clone()).collect(),
        hom_q_from: ps.iter().map(|&p| hom_total(&data.probes[p].1, &data.qs[from])).collect(),
        hom_q_to: ps.iter().map(|&p| hom_total(&data.probes[p].1, &data.qs[to])).collect(),
    };
    let refuter = |i: usize, j: usize| (0..data.probes.len()).find(|&p| member[i][p] && !member[j][p]);
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i == j {
                continue;
            }
            let known = !nodes[i].classification_only && !nodes[j].classification_only;
            if relation.contains(&(i, j)) {
                if let Some(p) = refuter(i, j).filter(|_| known) {
                    return Err(Error::WitnessFailed(format!(
                        "{} < {} declared, but {} lies in the first and not the second",
                        nodes[i].label, nodes[j].label, data.probes[p].0
                    )));
                }
                if known {
                    let gens: Vec<usize> = match &nodes[i].signature.kind {
                        SignatureKind::VertexSupported { vertices } => {
                            vertices.iter().filter_map(|v| data.vertex_probes.get(v).copied()).collect()
                        }
                        _ => (0..data.probes.len()).filter(|&p| member[i][p]).collect(),
                    };
                    witnesses.push(record(WitnessKind::Contained, i, j, gens));
                }
            } else if known && i < j && !relation.contains(&(j, i)) {
                match (refuter(i, j), refuter(j, i)) {
                    (Some(p), Some(q)) => {
                        witnesses.push(record(WitnessKind::NotContained, i, j, vec![p]));
                        witnesses.push(record(WitnessKind::NotContained, j, i, vec![q]));
                    }
                    _ => {
                        return Err(Error::WitnessFailed(format!(
                            "{} and {} declared incomparable without a two-sided witness",
                            nodes[i].label, nodes[j].label
                        )))
                    }
                }
            }
            if relation.contains(&(i, j)) && !known {
                notes.push(format!("{} < {} rests on the classification alone", nodes[i].label, nodes[j].label));
            }
        }
    }
    // Strictness of each containment.
    for &(i, j) in relation {
        if nodes[i].classification_only || nodes[j].classification_only {
            continue;
        }
        match refuter(j, i) {
            Some(p) => witnesses.push(record(WitnessKind::NotContained, j, i, vec![p])),
            None => notes.push(format!("strictness of {} < {} unwitnessed by the probes", nodes[i].label, nodes[j].label)),
        }
    }
    Ok((witnesses, notes))
}

fn check_strict_order(n: usize, rel: &[(usize, usize)]) -> Result<()> {
    let has = |i, j| rel.contains(&(i, j));
    for i in 0..n {
        if has(i, i) {
            return Err(Error::WitnessFailed("relation is not irreflexive".into()));
        }
        for j in 0..n {
            for k in 0..n {
                if has(i, j) && has(j, k) && !has(i, k) {
                    return Err(Error::WitnessFailed("relation is not transitive".into()));
                }
            }
        }
    }
    Ok(())
}

fn finish(family: String, nodes: Vec<Node>, relation: Vec<(usize, usize)>, data: PosetData, mut notes: Vec<String>) -> Result<SpherelikePoset> {
    check_strict_order(nodes.len(), &relation)?;
    let (witnesses, extra) = compute_witnesses(&nodes, &relation, &data)?;
    notes.extend(extra);
    Ok(SpherelikePoset { family, nodes, relation, witnesses, stable_quotient: None, notes, data: Some(data) })
}

fn resolved(m: &Rep) -> Result<Perfect> {
    minimal_projective_resolution(m, DEFAULT_BOUND)
}

type Probes = (Vec<(String, Perfect)>, BTreeMap<String, usize>);

fn vertex_probes(alg: &Arc<Algebra>, projective: bool) -> Result<Probes> {
    let mut probes = Vec::new();
    let mut index = BTreeMap::new();
    for v in 0..alg.num_vertices() {
        let name = alg.vertex_name(v).to_string();
        let p = if projective { Perfect::stalk(alg, v, 0) } else { resolved(&Rep::simple(alg, v))? };
        index.insert(name.clone(), probes.len());
        probes.push((format!("{}:{name}", if projective { "P" } else { "S" }), p));
    }
    Ok((probes, index))
}

fn expect_verdict(r: &SpherelikeReport, verdict: Verdict, d: i32) -> Result<()> {
    if r.verdict != verdict || r.d != Some(d) {
        return Err(Error::WitnessFailed(format!(
            "{} classified {:?} with d = {:?}, expected {verdict:?} with d = {d}",
            r.object, r.verdict, r.d
        )));
    }
    Ok(())
}

fn d_label(d: Option<i32>) -> String {
    d.map_or("?".into(), |d| d.to_string())
}

/// Poset from the synthesis construction: one node per poset element.
pub fn build_synthesized(field: Field, p: &FinitePoset) -> Result<SpherelikePoset> {
    let syn = synthesize_poset_algebra(field, p)?;
    let (probes, vindex) = vertex_probes(&syn.alg, false)?;
    let mut nodes = Vec::new();
    let mut qs = Vec::new();
    for (i, m) in syn.objects.iter().enumerate() {
        let label = format!("F{}", i + 1);
        let r = classify_spherelike(&label, &resolved(m)?)?;
        if r.d != Some(1) || !r.is_spherelike() {
            return Err(Error::WitnessFailed(format!("{label} is not 1-spherelike")));
        }
        let whole = r.verdict == Verdict::Spherical;
        nodes.push(Node {
            label: label.clone(),
            object: Some(format!("kronecker:{}'',{}':1", i + 1, i + 1)),
            d: r.d,
            signature: SubcatSignature {
                kind: SignatureKind::VertexSupported { vertices: syn.signatures[i].iter().cloned().collect() },
                provenance: "tacking: all Kronecker vertices and the tack vertices of the down-set".into(),
            },
            classification_only: false,
        });
        qs.push(if whole { None } else { r.asphericality });
    }
    let relation = relation_from_signatures(&nodes)?;
    let data = PosetData { alg: syn.alg, qs, probes, vertex_probes: vindex };
    finish(format!("synth:{}", p.size), nodes, relation, data, Vec::new())
}

/// `C(p; λ)`: the whole category (witnessed by a homogeneous quasi-simple)
/// above one node per arm module `F_i`.
pub fn build_canonical(field: Field, p: &[usize], lambda: &[Scalar]) -> Result<SpherelikePoset> {
    let alg = canonical(field, p, lambda)?;
    let (probes, vindex) = vertex_probes(&alg, true)?;
    let mut mu = field.int(2);
    while lambda.contains(&mu) {
        mu = &mu + &field.one();
    }
    let g = classify_spherelike("G", &resolved(&canonical_homogeneous(&alg, &mu)?)?)?;
    expect_verdict(&g, Verdict::Spherical, 1)?;
    let mut nodes = vec![Node {
        label: "D".into(),
        object: Some(format!("homogeneous:{mu}")),
        d: Some(1),
        signature: SubcatSignature { kind: SignatureKind::WholeCategory, provenance: "spherical homogeneous quasi-simple".into() },
        classification_only: false,
    }];
    let mut qs = vec![None];
    for i in 1..=p.len() {
        let label = format!("F{i}");
        let r = classify_spherelike(&label, &resolved(&canonical_arm_module(&alg, i)?)?)?;
        expect_verdict(&r, Verdict::ProperlySpherelike, 1)?;
        let interior: BTreeSet<usize> = canonical_arm_interior(&alg, i).into_iter().collect();
        let vertices = (0..alg.num_vertices())
            .filter(|v| !interior.contains(v))
            .map(|v| alg.vertex_name(v).to_string())
            .collect();
        nodes.push(Node {
            label,
            object: Some(format!("arm:{i}")),
            d: r.d,
            signature: SubcatSignature {
                kind: SignatureKind::VertexSupported { vertices },
                provenance: "insertion along arm i: projectives away from the arm interior".into(),
            },
            classification_only: false,
        });
        qs.push(r.asphericality);
    }
    let relation = relation_from_signatures(&nodes)?;
    let data = PosetData { alg, qs, probes, vertex_probes: vindex };
    let name = p.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    finish(format!("canonical:{name}"), nodes, relation, data, Vec::new())
}

/// Representatives found by scanning and closing under `τ`.
struct Found {
    label: String,
    object: Perfect,
    report: SpherelikeReport,
}

fn dda_representatives(alg: &Arc<Algebra>, orbit: usize) -> Result<Vec<Found>> {
    let mut found = Vec::new();
    for set in [CandidateSet::DimBound(usize::MAX), CandidateSet::StringComplexes(3)] {
        let cands = crate::spherelike::enumerate_candidates(alg, &set)?;
        let entries = scan(alg, &CandidateSet::Explicit(cands.clone()))?;
        for (c, e) in cands.into_iter().zip(entries) {
            let Some(report) = e.report else { continue };
            if !report.is_spherelike() {
                continue;
            }
            let object = match c.object {
                CandidateObject::Module(m) => resolved(&m)?,
                CandidateObject::Complex(p) => p,
            };
            found.push(Found { label: c.label, object, report });
        }
    }
    // τ-orbits of properly spherelike representatives.
    let seeds: Vec<usize> = (0..found.len()).filter(|&i| found[i].report.verdict == Verdict::ProperlySpherelike).collect();
    for i in seeds {
        let mut cur = found[i].object.clone();
        for k in 1..orbit {
            cur = tau(&cur, DEFAULT_BOUND)?;
            let label = format!("tau{k}:{}", found[i].label);
            let report = classify_spherelike(&label, &cur)?;
            found.push(Found { label, object: cur.clone(), report });
        }
    }
    Ok(found)
}

/// `Λ(r, n, m)`: nodes per the classification table, representatives found
/// by scanning simples, intervals, co-intervals and short string complexes,
/// then closing under `τ`.
pub fn build_dda(field: Field, r: usize, n: usize, m: usize) -> Result<SpherelikePoset> {
    let (alg, _) = dda(field, r, n, m)?;
    let (xd, yd) = (1 - r as i32, 1 + r as i32);
    let (xs, ys) = (m + r, n - r);
    let has_top = (r, n, m) == (1, 2, 0) || (r == n - 1 && m + r > 1) || (r == 1 && m == 0);
    let (nx, ny) = match () {
        _ if (r, n, m) == (1, 2, 0) => (0, 0),
        _ if r == n - 1 && m + r > 1 => (xs, 0),
        _ if r == 1 && m == 0 => (0, ys),
        _ => (xs, ys),
    };
    let found = dda_representatives(&alg, xs.max(ys))?;
    for f in &found {
        if f.report.verdict == Verdict::Spherical && !has_top {
            return Err(Error::WitnessFailed(format!("{} is spherical but the table has no top element", f.label)));
        }
        let d = f.report.d.unwrap_or(0);
        if f.report.verdict == Verdict::ProperlySpherelike && d != xd && d != yd {
            return Err(Error::WitnessFailed(format!("{} is {d}-spherelike, outside the classification", f.label)));
        }
    }
    let (mut probes, _) = vertex_probes(&alg, false)?;
    let proper: Vec<&Found> = found.iter().filter(|f| f.report.verdict == Verdict::ProperlySpherelike).collect();
    for f in &proper {
        probes.push((f.label.clone(), f.object.clone()));
    }
    let qs: Vec<Option<Complex>> = proper.iter().map(|f| f.report.asphericality.clone()).collect();
    let member = membership_matrix(&qs, &probes);
    let mut nodes = Vec::new();
    let mut node_qs = Vec::new();
    let mut notes = vec![
        "X and Y objects live in AR components that are not constructed; nodes without a found representative are classification-only"
            .to_string(),
    ];
    if has_top {
        let top = found.iter().find(|f| f.report.verdict == Verdict::Spherical);
        nodes.push(Node {
            label: "D".into(),
            object: top.map(|f| f.label.clone()),
            d: top.and_then(|f| f.report.d),
            signature: SubcatSignature { kind: SignatureKind::WholeCategory, provenance: "spherical object".into() },
            classification_only: top.is_none(),
        });
        node_qs.push(None);
    }
    for (kind, count, d) in [("X", nx, xd), ("Y", ny, yd)] {
        // Distinct membership vectors give distinct subcategories.
        let mut groups: Vec<(Vec<bool>, usize)> = Vec::new();
        for (k, f) in proper.iter().enumerate() {
            if f.report.d == Some(d) && !groups.iter().any(|(v, _)| *v == member[k]) {
                groups.push((member[k].clone(), k));
            }
        }
        if groups.len() > count {
            return Err(Error::WitnessFailed(format!(
                "{} distinct {d}-spherelike subcategories found, the classification allows {count}",
                groups.len()
            )));
        }
        for i in 0..count {
            let rep = groups.get(i).map(|&(_, k)| proper[k]);
            nodes.push(Node {
                label: format!("{kind}{}", i + 1),
                object: rep.map(|f| f.label.clone()),
                d: Some(d),
                signature: SubcatSignature {
                    kind: SignatureKind::Classified { components: vec![(format!("{kind}{}", i + 1), format!("tau^{i} {kind}"))] },
                    provenance: "discrete derived classification".into(),
                },
                classification_only: rep.is_none(),
            });
            node_qs.push(rep.and_then(|f| f.report.asphericality.clone()));
        }
    }
    for n in &nodes {
        if n.classification_only {
            notes.push(format!("{} is classification-only", n.label));
        }
    }
    let mut relation = relation_from_signatures(&nodes)?;
    relation.sort();
    let data = PosetData { alg, qs: node_qs, probes, vertex_probes: BTreeMap::new() };
    let mut poset = finish(format!("dda:{r},{n},{m}"), nodes, relation, data, notes)?;
    let classes = |kind: char| -> Vec<usize> {
        (0..poset.nodes.len()).filter(|&i| poset.nodes[i].label.starts_with(kind)).collect()
    };
    let quotient: Vec<Vec<usize>> =
        [classes('D'), classes('X'), classes('Y')].into_iter().filter(|c| !c.is_empty()).collect();
    poset.stable_quotient = Some(quotient);
    Ok(poset)
}

pub fn build_poset(field: Field, family: &PosetFamily) -> Result<SpherelikePoset> {
    match family {
        PosetFamily::Dda { r, n, m } => build_dda(field, *r, *n, *m),
        PosetFamily::Canonical { p, lambda } => {
            let l = lambda.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()?;
            build_canonical(field, p, &l)
        }
        PosetFamily::Synthesized { poset } => build_synthesized(field, poset),
    }
}

/// Parses `dda:r,n,m`, `canonical:p1,p2,..:λ3,..` for `poset family:...`.
pub fn parse_poset_family(s: &str) -> Result<PosetFamily> {
    match crate::constructions::parse_family(s)? {
        crate::constructions::FamilySpec::Dda { r, n, m } => Ok(PosetFamily::Dda { r, n, m }),
        crate::constructions::FamilySpec::Canonical { p, lambda } => Ok(PosetFamily::Canonical { p, lambda }),
        other => Err(Error::UnsupportedFamily(format!("{other:?}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub witnesses_checked: usize,
    pub nodes: usize,
    pub pairs: usize,
}

/// Re-runs every stored witness and re-checks signatures and order
/// against a fresh membership computation.
pub fn verify_edges(poset: &SpherelikePoset) -> Result<VerificationReport> {
    let data = poset.data.as_ref().ok_or_else(|| Error::WitnessFailed("poset carries no objects to verify".into()))?;
    check_strict_order(poset.nodes.len(), &poset.relation)?;
    let index: BTreeMap<&str, usize> = data.probes.iter().enumerate().map(|(i, (l, _))| (l.as_str(), i)).collect();
    let failures: Vec<String> = poset
        .witnesses
        .par_iter()
        .filter_map(|w| {
            for (k, o) in w.objects.iter().enumerate() {
                let Some(&p) = index.get(o.as_str()) else { return Some(format!("unknown witness object {o}")) };
                let (a, b) = (hom_total(&data.probes[p].1, &data.qs[w.from]), hom_total(&data.probes[p].1, &data.qs[w.to]));
                let ok = a == w.hom_q_from[k]
                    && b == w.hom_q_to[k]
                    && match w.kind {
                        WitnessKind::NotContained => a == 0 && b > 0,
                        WitnessKind::Contained => b == 0,
                    };
                if !ok {
                    return Some(format!(
                        "witness {o} for ({}, {}) gave ({a}, {b})",
                        poset.nodes[w.from].label, poset.nodes[w.to].label
                    ));
                }
            }
            None
        })
        .collect();
    if let Some(f) = failures.first() {
        return Err(Error::WitnessFailed(f.clone()));
    }
    let (fresh, _) = compute_witnesses(&poset.nodes, &poset.relation, data)?;
    Ok(VerificationReport {
        witnesses_checked: poset.witnesses.len() + fresh.len(),
        nodes: poset.nodes.len(),
        pairs: poset.nodes.len() * poset.nodes.len().saturating_sub(1) / 2,
    })
}

/// Cardinality, longest chain and largest antichain.
pub fn stats(poset: &SpherelikePoset) -> PosetStats {
    let n = poset.nodes.len();
    let mut longest = vec![1usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| poset.relation.iter().filter(|&&(_, j)| j == i).count());
    for &j in &order {
        for &(i, jj) in &poset.relation {
            if jj == j {
                longest[j] = longest[j].max(longest[i] + 1);
            }
        }
    }
    let height = longest.iter().copied().max().unwrap_or(0);
    let comparable = |i: usize, j: usize| poset.less(i, j) || poset.less(j, i);
    let mut width = 0;
    for mask in 0u64..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.len() > width && members.iter().all(|&i| members.iter().all(|&j| i == j || !comparable(i, j))) {
            width = members.len();
        }
    }
    PosetStats { cardinality: n, height, width }
}

/// Covering relations of the strict order.
pub fn hasse_edges(poset: &SpherelikePoset) -> Vec<(usize, usize)> {
    poset
        .relation
        .iter()
        .copied()
        .filter(|&(i, j)| !(0..poset.nodes.len()).any(|k| poset.less(i, k) && poset.less(k, j)))
        .collect()
}

pub fn hasse_dot(poset: &SpherelikePoset) -> String {
    let mut s = String::from("digraph P {\n");
    for (i, n) in poset.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"D_{}(d={})\"];", n.label, d_label(n.d));
    }
    for (i, j) in hasse_edges(poset) {
        let _ = writeln!(s, "  n{i} -> n{j};");
    }
    s.push_str("}\n");
    s
}
