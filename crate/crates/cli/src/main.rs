//! `sphq`: command-line front end. Every command prints one JSON document
//! (or a short text rendering with `--text`); failures print
//! `{"error": {"code", "message"}}` and exit with 2, 3 or 4.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sphq_core::algebra::Algebra;
use sphq_core::constructions::{self, FinitePoset};
use sphq_core::corpus;
use sphq_core::derived::{hom_profile, DEFAULT_BOUND};
use sphq_core::io::{
    algebra_to_json, complex_to_json, embedding_to_json, parse_algebra_file, parse_complex_value,
    parse_embedding_file, parse_object, perfect_to_json, read_text, DescriptorContext, Object,
};
use sphq_core::ktheory::{cartan_matrix, euler_matrix, k_class, perp_lattice};
use sphq_core::poset::{self, PosetFamily};
use sphq_core::spherelike::{self, CandidateSet};
use sphq_core::{Error, Field, Result};

#[derive(Parser)]
#[command(name = "sphq", version, about = "Spherelike objects over bound quiver algebras")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Ground field for generated algebras: `rational` or a prime.
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra file: basis, dimension, global dimension.
    Build { algebra: PathBuf },
    /// Total derived Hom profile between two objects.
    Hom {
        algebra: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Classify an object.
    Spherelike {
        algebra: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Asphericality of a spherelike object; `--out` writes it as a complex file.
    Asphericality {
        algebra: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership of an object in the left orthogonal of a complex.
    Member {
        algebra: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        q: PathBuf,
    },
    /// Classify a candidate set: simples, intervals, dimbound:N or strings:N.
    Scan {
        algebra: PathBuf,
        #[arg(long, default_value = "simples")]
        set: String,
    },
    /// A_n-insertion at a vertex.
    Insert {
        algebra: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        emb_out: Option<PathBuf>,
    },
    /// Tack a quiver (algebra file without relations) onto an algebra.
    Tack {
        algebra: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        sink: String,
        /// Multiplicities as `x=k,y=l`.
        #[arg(long, default_value = "")]
        mult: String,
        #[arg(long, default_value = "T")]
        prefix: String,
        #[arg(long)]
        emb_out: Option<PathBuf>,
    },
    /// Generate a family member, e.g. `circular:7:5`, `cb:3`, `dda:2,3,1`.
    Family {
        spec: String,
        #[arg(long)]
        emb_out: Option<PathBuf>,
    },
    /// Induce an object of the small algebra along an embedding.
    Induce {
        algebra: PathBuf,
        #[arg(long)]
        emb: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Cartan matrix and Euler form in the simple basis.
    Euler { algebra: PathBuf },
    /// Orthogonal sublattice of the given classes.
    Perp {
        algebra: PathBuf,
        #[arg(long = "class", required = true)]
        classes: Vec<String>,
    },
    /// Spherelike poset of `family:dda:r,n,m`, `family:canonical:...` or `synth:poset.json`.
    Poset {
        target: String,
        #[arg(long)]
        verify: bool,
        /// Write DOT to the file, or to stdout when no file is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        dot: Option<String>,
    },
    /// The acceptance corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    Run {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

/// A successful run: a JSON value, its text rendering, and an exit code.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Output {
        Output { json, text: text.into(), code: 0 }
    }
}

fn parse_field(s: &str) -> Result<Field> {
    match s {
        "rational" | "q" | "Q" => Ok(Field::Rational),
        p => Field::prime(p.parse().map_err(|_| Error::Schema(format!("unknown field {p:?}")))?),
    }
}

fn ctx() -> DescriptorContext {
    DescriptorContext { base: PathBuf::from(".") }
}

fn object(alg: &Arc<Algebra>, desc: &str) -> Result<Object> {
    parse_object(alg, desc, &ctx())
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(v)? + "\n")?;
    Ok(())
}

fn profile_text(p: &BTreeMap<i32, usize>) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter().map(|(i, d)| format!("{i}:{d}")).collect::<Vec<_>>().join(" ")
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn algebra_output(alg: &Algebra, emb: Option<&constructions::Embedding>, emb_out: Option<&PathBuf>) -> Result<Output> {
    if let (Some(e), Some(p)) = (emb, emb_out) {
        write_json(p, &embedding_to_json(e))?;
    }
    let text = format!(
        "{} vertices, {} arrows, {} relations, dim {}",
        alg.num_vertices(),
        alg.quiver.arrows.len(),
        alg.relations.len(),
        alg.dim()
    );
    Ok(Output::ok(algebra_to_json(alg), text))
}

fn parse_mult(s: &str) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (x, k) = part.split_once('=').ok_or_else(|| Error::Schema(format!("multiplicity {part:?}: expected x=k")))?;
        let k = k.trim().parse().map_err(|_| Error::Schema(format!("multiplicity {part:?}: bad count")))?;
        out.insert(x.trim().to_string(), k);
    }
    Ok(out)
}

fn candidate_set(s: &str) -> Result<CandidateSet> {
    let bound = |x: &str| x.parse::<usize>().map_err(|_| Error::Schema(format!("bad scan bound in {s:?}")));
    match s.split_once(':') {
        None if s == "simples" => Ok(CandidateSet::AllSimples),
        None if s == "intervals" => Ok(CandidateSet::AllIntervalModules),
        Some(("dimbound", n)) => Ok(CandidateSet::DimBound(bound(n)?)),
        Some(("strings", n)) => Ok(CandidateSet::StringComplexes(bound(n)?)),
        _ => Err(Error::Schema(format!("unknown candidate set {s:?}"))),
    }
}

fn poset_family(target: &str) -> Result<PosetFamily> {
    if let Some(rest) = target.strip_prefix("family:") {
        poset::parse_poset_family(rest)
    } else if let Some(path) = target.strip_prefix("synth:") {
        let p: FinitePoset = serde_json::from_str(&read_text(Path::new(path))?)?;
        Ok(PosetFamily::Synthesized { poset: p })
    } else if target == "pipeline" || target.starts_with("pipeline:") {
        Err(Error::UnsupportedFamily("insertion/tacking pipeline records".into()))
    } else {
        Err(Error::Schema(format!("poset target {target:?}: expected family:... or synth:file")))
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let field = parse_field(&cli.field)?;
    match &cli.command {
        Command::Build { algebra } => {
            let alg = parse_algebra_file(algebra)?;
            let gldim = spherelike::global_dimension(&alg, DEFAULT_BOUND);
            let json = json!({
                "algebra": algebra_to_json(&alg),
                "dim": alg.dim(),
                "basis": alg.basis_rendered(),
                "certified_length": alg.certified_length,
                "gldim": gldim.as_ref().ok(),
                "gldim_error": gldim.as_ref().err().map(|e| e.to_string()),
            });
            let g = gldim.map_or_else(|e| e.to_string(), |g| g.to_string());
            Ok(Output::ok(json, format!("dim {}, gldim {g}, certified at length {}", alg.dim(), alg.certified_length)))
        }
        Command::Hom { algebra, from, to } => {
            let alg = parse_algebra_file(algebra)?;
            let a = object(&alg, from)?.to_perfect()?;
            let b = object(&alg, to)?.to_complex();
            let p = hom_profile(&a, &b);
            Ok(Output::ok(json!({"from": from, "to": to, "profile": p}), profile_text(&p)))
        }
        Command::Spherelike { algebra, object: desc } => {
            let alg = parse_algebra_file(algebra)?;
            let r = spherelike::classify_spherelike(desc, &object(&alg, desc)?.to_perfect()?)?;
            let d = r.d.map_or("-".to_string(), |d| d.to_string());
            let text = format!("{desc}: {:?}, d = {d}, profile {}", r.verdict, profile_text(&r.profile));
            Ok(Output::ok(to_value(&r), text))
        }
        Command::Asphericality { algebra, object: desc, out } => {
            let alg = parse_algebra_file(algebra)?;
            let f = object(&alg, desc)?.to_perfect()?;
            let r = spherelike::classify_spherelike(desc, &f)?;
            let q = spherelike::asphericality(&f, &r)?;
            let qj = complex_to_json(&q);
            if let Some(p) = out {
                write_json(p, &qj)?;
            }
            let text = format!("Q_F: {} (acyclic: {})", desc, q.is_acyclic());
            Ok(Output::ok(json!({"object": desc, "report": to_value(&r), "asphericality": qj}), text))
        }
        Command::Member { algebra, object: desc, q } => {
            let alg = parse_algebra_file(algebra)?;
            let a = object(&alg, desc)?.to_perfect()?;
            let qc = parse_complex_value(&serde_json::from_str(&read_text(q)?)?, &alg)?.to_complex();
            let p = hom_profile(&a, &qc);
            let member = p.is_empty();
            Ok(Output::ok(json!({"object": desc, "member": member, "hom_to_q": p}), format!("{desc} member: {member}")))
        }
        Command::Scan { algebra, set } => {
            let alg = parse_algebra_file(algebra)?;
            let entries = spherelike::scan(&alg, &candidate_set(set)?)?;
            let text = entries
                .iter()
                .map(|e| match (&e.report, &e.skipped) {
                    (Some(r), _) => format!("{}: {:?} d={}", e.object, r.verdict, r.d.map_or("-".to_string(), |d| d.to_string())),
                    (None, s) => format!("{}: skipped ({})", e.object, s.as_deref().unwrap_or("")),
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(to_value(&entries), text))
        }
        Command::Insert { algebra, vertex, n, emb_out } => {
            let alg = parse_algebra_file(algebra)?;
            let (big, emb) = constructions::insert_an(&alg, vertex, *n)?;
            algebra_output(&big, Some(&emb), emb_out.as_ref())
        }
        Command::Tack { algebra, tree, sink, mult, prefix, emb_out } => {
            let alg = parse_algebra_file(algebra)?;
            let t = parse_algebra_file(tree)?;
            if !t.relations.is_empty() {
                return Err(Error::HasRelations);
            }
            let (big, emb) = constructions::tack(&alg, &t.quiver, sink, &parse_mult(mult)?, prefix)?;
            algebra_output(&big, Some(&emb), emb_out.as_ref())
        }
        Command::Family { spec, emb_out } => {
            let (alg, emb) = constructions::family(field, &constructions::parse_family(spec)?)?;
            algebra_output(&alg, emb.as_ref(), emb_out.as_ref())
        }
        Command::Induce { algebra, emb, object: desc } => {
            let big = parse_algebra_file(algebra)?;
            let e = parse_embedding_file(emb, &big)?;
            let f = object(&e.small, desc)?.to_perfect()?;
            let j = constructions::induce(&e, &f)?;
            let text = format!("induced {desc}: {} terms", j.total_terms());
            Ok(Output::ok(perfect_to_json(&j), text))
        }
        Command::Euler { algebra } => {
            let alg = parse_algebra_file(algebra)?;
            let form = euler_matrix(&alg)?;
            let cartan = cartan_matrix(&alg);
            let text = form.gram.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(json!({"basis": form.basis, "euler": form.gram, "cartan": cartan}), text))
        }
        Command::Perp { algebra, classes } => {
            let alg = parse_algebra_file(algebra)?;
            let form = euler_matrix(&alg)?;
            let ks = classes.iter().map(|d| Ok(k_class(&object(&alg, d)?.to_complex()))).collect::<Result<Vec<_>>>()?;
            let lat = perp_lattice(&form, &ks);
            let text = format!("basis {:?}\ngram {:?}\nantisymmetric {}", lat.basis, lat.gram, lat.antisymmetric);
            Ok(Output::ok(json!({"classes": ks, "lattice": to_value(&lat)}), text))
        }
        Command::Poset { target, verify, dot } => {
            let p = poset::build_poset(field, &poset_family(target)?)?;
            let verification = if *verify { Some(poset::verify_edges(&p)?) } else { None };
            let st = poset::stats(&p);
            let dot_text = poset::hasse_dot(&p);
            if let Some(path) = dot.as_deref().filter(|&d| d != "-") {
                fs::write(path, &dot_text)?;
            }
            let json = json!({
                "poset": to_value(&p),
                "stats": to_value(&st),
                "hasse": poset::hasse_edges(&p),
                "verification": verification.as_ref().map(to_value),
            });
            if dot.as_deref() == Some("-") {
                return Ok(Output { json: Value::String(dot_text.clone()), text: dot_text, code: 0 });
            }
            let text = format!(
                "{}: {} nodes, height {}, width {}{}",
                p.family,
                st.cardinality,
                st.height,
                st.width,
                if verification.is_some() { ", verified" } else { "" }
            );
            Ok(Output::ok(json, text))
        }
        Command::Corpus { action: CorpusAction::Run { only } } => {
            let results = match only {
                Some(i) if (1..=corpus::criterion_names().len()).contains(i) => vec![corpus::run_criterion(*i, field)],
                Some(i) => return Err(Error::Schema(format!("no criterion {i}"))),
                None => corpus::run_all(field),
            };
            let passed = results.iter().all(|r| r.passed);
            let text = results
                .iter()
                .map(|r| format!("[{}] {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.detail))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output { json: json!({"passed": passed, "criteria": to_value(&results)}), text, code: if passed { 0 } else { 4 } })
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("SPHQ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({"error": {"code": "UsageError", "message": e.to_string().trim_end()}});
            emit(&format!("{}\n", serde_json::to_string_pretty(&err).expect("error serializes")));
            return ExitCode::from(2);
        }
    };
    configure_threads();
    match run(&cli) {
        Ok(out) => {
            if cli.text {
                emit(&format!("{}\n", out.text.trim_end()));
            } else if let Value::String(s) = &out.json {
                emit(s);
            } else {
                emit(&format!("{}\n", serde_json::to_string_pretty(&out.json).expect("output serializes")));
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let err = json!({"error": {"code": e.code(), "message": e.to_string()}});
            if cli.text {
                eprintln!("error: {e}");
            }
            emit(&format!("{}\n", serde_json::to_string_pretty(&err).expect("error serializes")));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
