//! The shipped fixture files parse back to the algebras the constructions
//! produce. Set `SPHQ_REGEN_FIXTURES=1` to rewrite them.

use std::path::PathBuf;

use serde_json::Value;
use sphq_core::constructions::circular;
use sphq_core::corpus::{cycle_poset, shipped_algebras, tensor_kronecker_corner};
use sphq_core::io::{algebra_to_json, embedding_to_json, parse_algebra_file, parse_embedding_file, parse_rep_value, rep_to_json};
use sphq_core::Field;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn sync(name: &str, v: &Value) {
    let path = dir().join(name);
    if std::env::var("SPHQ_REGEN_FIXTURES").is_ok() {
        std::fs::write(&path, serde_json::to_string_pretty(v).unwrap() + "\n").unwrap();
    }
}

#[test]
fn algebra_fixtures_round_trip() {
    let f = Field::Rational;
    for (name, alg) in shipped_algebras(f).unwrap() {
        sync(&format!("{name}.json"), &algebra_to_json(&alg));
        let parsed = parse_algebra_file(&dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(*parsed, *alg, "{name}");
        assert_eq!(parsed.dim(), alg.dim(), "{name}");
    }
}

#[test]
fn embedding_fixtures_round_trip() {
    let f = Field::Rational;
    let (alg, emb) = circular(f, 7, &[5]).unwrap();
    let (talg, temb) = tensor_kronecker_corner(f).unwrap();
    for (name, big, e) in [("circular_7_5.emb.json", alg, emb), ("tensor_kronecker.emb.json", talg, temb)] {
        sync(name, &embedding_to_json(&e));
        let parsed = parse_embedding_file(&dir().join(name), &big).unwrap();
        assert_eq!(parsed.vertex_map, e.vertex_map, "{name}");
        assert_eq!(parsed.arrow_paths, e.arrow_paths, "{name}");
    }
}

#[test]
fn object_fixtures_round_trip() {
    let f = Field::Rational;
    sync("poset_cycle.poset.json", &serde_json::to_value(cycle_poset()).unwrap());
    let text = std::fs::read_to_string(dir().join("poset_cycle.poset.json")).unwrap();
    assert_eq!(serde_json::from_str::<sphq_core::constructions::FinitePoset>(&text).unwrap(), cycle_poset());

    let alg = sphq_core::constructions::ncc(f).unwrap();
    let e = sphq_core::constructions::ncc_exceptional(&alg).unwrap();
    let mut v = rep_to_json(&e);
    v["algebra"] = Value::String("ncc.json".into());
    sync("ncc_E.json", &v);
    let text = std::fs::read_to_string(dir().join("ncc_E.json")).unwrap();
    let parsed = parse_rep_value(&serde_json::from_str(&text).unwrap(), None, &dir()).unwrap();
    assert_eq!(parsed, e);
}
