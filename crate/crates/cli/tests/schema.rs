use std::path::Path;

use flagpieces_cli::{run, Command, Format, JobConfig};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).unwrap()
}

fn emitted(cartan: &str, delta: &str, j: Option<&str>, command: Command, w: Option<&str>) -> Value {
    let mut cfg = JobConfig::new(cartan, command);
    cfg.delta = delta.into();
    cfg.j = j.map(Into::into);
    cfg.w = w.map(Into::into);
    cfg.format = Format::Json;
    serde_json::from_str(&run(&cfg).unwrap().output).unwrap()
}

fn assert_valid(schema: &JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
}

#[test]
fn emitted_json_matches_shipped_schemas() {
    let cases = [
        ("poset", Command::Poset, None),
        ("pieces", Command::Pieces, None),
        ("orbits", Command::Orbits, None),
        ("closure", Command::Closure, Some("1,2,1")),
    ];
    for (name, command, w) in cases {
        let s = schema(name);
        for (cartan, delta) in [("A2", "id"), ("A3", "flip"), ("B2", "id"), ("D4", "tri")] {
            for j in ["", "1", "1,2"] {
                let doc = emitted(cartan, delta, Some(j), command, w);
                assert_valid(&s, &doc);
            }
        }
    }
    let s = schema("sequence");
    assert_valid(&s, &emitted("A2", "id", Some("1"), Command::Sequence, Some("1,2")));
    assert_valid(&s, &emitted("D4", "tri", Some("2"), Command::Sequence, Some("e")));
    let s = schema("verify");
    assert_valid(&s, &emitted("A2", "flip", None, Command::Verify, None));
}

#[test]
fn schemas_reject_malformed_documents() {
    let s = schema("poset");
    let mut doc = emitted("A2", "id", Some("1"), Command::Poset, None);
    assert!(s.is_valid(&doc));
    doc["nodes"][0]["word"] = Value::from("1,,2");
    assert!(!s.is_valid(&doc));
    doc = emitted("A2", "id", Some("1"), Command::Poset, None);
    doc["hasse"][0] = serde_json::json!([0]);
    assert!(!s.is_valid(&doc));
}
