use std::fs;
use std::path::PathBuf;

use ltsrb::{fixtures, io, Scalar};

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/{name}.json"))
}

#[test]
fn files_match_builtins() {
    assert_eq!(io::load_algebra(&path("lts3")).unwrap(), fixtures::lts3());
    assert_eq!(io::load_algebra(&path("lts4")).unwrap(), fixtures::lts4());
    assert_eq!(
        io::load_rbo(&path("rbo3_P")).unwrap(),
        fixtures::rbo3_p(Scalar::one())
    );
    assert_eq!(
        io::load_rbo(&path("rbo4_P")).unwrap(),
        fixtures::rbo4_p(Scalar::one())
    );
}

#[test]
fn files_are_serializer_output() {
    for f in fixtures::list() {
        let text = fs::read_to_string(path(f.name)).unwrap();
        assert_eq!(
            io::to_pretty(&fixtures::value(f.name).unwrap()),
            text,
            "{}",
            f.name
        );
    }
}

#[test]
fn every_fixture_verifies() {
    for name in ["lts3", "lts4"] {
        assert!(io::load_algebra(&path(name)).unwrap().verify().is_empty());
    }
    for name in ["rbo3_P", "rbo4_P"] {
        let r = io::load_rbo(&path(name)).unwrap();
        assert!(r.action().verify_all().is_empty());
        assert!(r.check().is_empty());
    }
}

#[test]
fn nested_files_resolve_relative_to_the_referrer() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let sub = dir.join("algebras");
    fs::create_dir_all(&sub).unwrap();
    fs::copy(path("lts3"), sub.join("l.json")).unwrap();
    let rbo = serde_json::json!({
        "action": "action.json",
        "weight": "2",
        "T": [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]],
    });
    let mut action = io::action_to_value(fixtures::rbo3_p(Scalar::one()).action()).unwrap();
    action["algebra"] = "algebras/l.json".into();
    action["target"] = "algebras/l.json".into();
    fs::write(dir.join("action.json"), io::to_pretty(&action)).unwrap();
    fs::write(dir.join("rbo.json"), io::to_pretty(&rbo)).unwrap();
    let r = io::load_rbo(&dir.join("rbo.json")).unwrap();
    assert_eq!(r, fixtures::rbo3_p(Scalar::from_int(2)));
}
