use std::path::PathBuf;

use serde_json::json;
use sphq_core::constructions::*;
use sphq_core::derived::Perfect;
use sphq_core::io::*;
use sphq_core::rep::Rep;
use sphq_core::{Error, Field};

const Q: Field = Field::Rational;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ctx() -> DescriptorContext {
    DescriptorContext { base: fixtures() }
}

fn ci2(extra: serde_json::Value) -> serde_json::Value {
    let mut v = json!({
        "quiver": {"vertices": ["1", "2"], "arrows": [
            {"id": "a1", "from": "1", "to": "2"}, {"id": "a2", "from": "2", "to": "1"}]},
        "relations": [[{"coeff": 1, "path": ["a1", "a2"]}], [{"coeff": "1", "path": ["a2", "a1"]}]]
    });
    for (k, x) in extra.as_object().unwrap() {
        v[k] = x.clone();
    }
    v
}

#[test]
fn reads_cb2_fixture() {
    let a = parse_algebra_file(&fixtures().join("cb2.json")).unwrap();
    assert_eq!(a.dim(), 5);
    assert_eq!(a.fingerprint(), cb(Q, 2).unwrap().fingerprint());
}

#[test]
fn minimal_file_defaults_to_rationals() {
    let a = parse_algebra_str(&ci2(json!({})).to_string()).unwrap();
    assert_eq!(a.field, Q);
    assert_eq!(a.dim(), 4);
}

#[test]
fn schema_errors() {
    let bad_path = json!({
        "quiver": {"vertices": ["1", "2"], "arrows": [{"id": "a", "from": "1", "to": "2"}]},
        "relations": [[{"coeff": 1, "path": ["a", "a"]}]]
    });
    assert!(matches!(parse_algebra_str(&bad_path.to_string()), Err(Error::Schema(_))));
    let unknown = ci2(json!({"colour": "red"}));
    assert!(matches!(parse_algebra_str(&unknown.to_string()), Err(Error::Schema(_))));
    let dup = json!({"quiver": {"vertices": ["1", "1"], "arrows": []}});
    assert!(matches!(parse_algebra_str(&dup.to_string()), Err(Error::Schema(_))));
    let coeff = ci2(json!({"relations": [[{"coeff": 1.5, "path": ["a1", "a2"]}]]}));
    assert!(matches!(parse_algebra_str(&coeff.to_string()), Err(Error::Schema(_))));
    assert!(matches!(parse_algebra_str("{"), Err(Error::Schema(_))));
    assert!(matches!(parse_algebra_file(&fixtures().join("missing.json")), Err(Error::Io(_))));
}

#[test]
fn small_cap_is_insufficient() {
    let v = ci2(json!({"length_cap": 1}));
    assert!(matches!(parse_algebra_str(&v.to_string()), Err(Error::CapInsufficient { .. })));
}

#[test]
fn fractional_and_prime_coefficients() {
    let mut v = ci2(json!({}));
    v["relations"] = json!([[{"coeff": "1/2", "path": ["a1", "a2"]}], [{"coeff": -3, "path": ["a2", "a1"]}]]);
    assert_eq!(parse_algebra_str(&v.to_string()).unwrap().dim(), 4);
    v["field"] = json!({"kind": "prime", "p": 5});
    assert_eq!(parse_algebra_str(&v.to_string()).unwrap().field, Field::prime(5).unwrap());
    v["field"] = json!({"kind": "prime", "p": 6});
    assert!(parse_algebra_str(&v.to_string()).is_err());
}

#[test]
fn algebra_round_trip() {
    for a in [auslander_x3(Q).unwrap(), relcluster(Q).unwrap(), canonical(Q, &[2, 2, 3], &[Q.int(2)]).unwrap()] {
        let b = parse_algebra_str(&algebra_to_json(&a).to_string()).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.dim(), b.dim());
    }
}

#[test]
fn representation_with_relative_algebra_path() {
    let v: serde_json::Value = serde_json::from_str(&read_text(&fixtures().join("ncc_E.json")).unwrap()).unwrap();
    let m = parse_rep_value(&v, None, &fixtures()).unwrap();
    assert_eq!(m.dims, vec![1, 1, 1]);
    let other = cb(Q, 3).unwrap();
    assert_eq!(parse_rep_value(&v, Some(&other), &fixtures()).unwrap_err(), Error::AlgebraMismatch);
    let back = rep_to_json(&m);
    let again = parse_rep_value(&back, Some(&m.alg), &fixtures()).unwrap();
    assert_eq!(again, m);
}

#[test]
fn representation_shape_is_checked() {
    let a = ncc(Q).unwrap();
    let v = json!({"dims": {"1": 1, "2": 1}, "maps": {"a1": [[1, 0]]}});
    assert!(matches!(parse_rep_value(&v, Some(&a), &fixtures()), Err(Error::Schema(_))));
    let v = json!({"dims": {"9": 1}});
    assert!(matches!(parse_rep_value(&v, Some(&a), &fixtures()), Err(Error::UnknownVertex(_))));
}

#[test]
fn descriptors() {
    let a = cb(Q, 3).unwrap();
    let v = |s| a.vertex(s).unwrap();
    assert!(matches!(parse_object(&a, "S:1", &ctx()).unwrap(), Object::Module(m) if m == Rep::simple(&a, v("1"))));
    assert!(matches!(parse_object(&a, "P:2", &ctx()).unwrap(), Object::Perfect(p) if p == Perfect::stalk(&a, v("2"), 0)));
    assert!(matches!(parse_object(&a, "I:2", &ctx()).unwrap(), Object::Module(m) if m == Rep::injective(&a, v("2"))));
    let interval = parse_object(&a, "interval:1,2", &ctx()).unwrap();
    assert!(matches!(interval, Object::Module(m) if m.total_dim() == 2));
    assert!(matches!(parse_object(&a, "S:9", &ctx()), Err(Error::UnknownVertex(_))));
    assert!(matches!(parse_object(&a, "S1", &ctx()), Err(Error::Schema(_))));
    assert!(matches!(parse_object(&a, "blob:1", &ctx()), Err(Error::Schema(_))));
    assert!(matches!(parse_object(&a, "interval:1,0", &ctx()), Err(Error::Schema(_))));
}

#[test]
fn string_descriptor_checks_composition() {
    let (a, _) = circular(Q, 7, &[5]).unwrap();
    let ok = parse_object(&a, "string:5/a5*a6/7", &ctx());
    assert!(matches!(ok, Err(Error::Schema(_))), "path endpoints are target/source ordered");
    let ok = parse_object(&a, "string:7/a5*a6/5", &ctx()).unwrap().to_perfect().unwrap();
    assert_eq!(ok.terms.len(), 2);
}

#[test]
fn induced_and_file_descriptors() {
    let big = parse_algebra_file(&fixtures().join("circular_7_5.json")).unwrap();
    let j = parse_object(&big, "induced:circular_7_5.emb.json:S:1", &ctx()).unwrap().to_perfect().unwrap();
    assert_eq!(j.terms.len(), 3);
    let n = parse_algebra_file(&fixtures().join("ncc.json")).unwrap();
    let e = parse_object(&n, "file:ncc_E.json", &ctx()).unwrap();
    assert!(matches!(e, Object::Module(m) if m.total_dim() == 3));
}

#[test]
fn complex_round_trip() {
    let a = cb(Q, 3).unwrap();
    let p = sphq_core::derived::minimal_projective_resolution(&Rep::simple(&a, 0), 10).unwrap();
    let back = parse_complex_value(&perfect_to_json(&p), &a).unwrap();
    assert!(matches!(back, Object::Perfect(q) if q == p));
    let c = p.realize();
    let back = parse_complex_value(&complex_to_json(&c), &a).unwrap();
    let Object::Complex(d) = back else { panic!("expected a complex of modules") };
    assert_eq!(complex_to_json(&d), complex_to_json(&c));
}
