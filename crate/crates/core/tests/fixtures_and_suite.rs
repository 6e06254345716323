use heisrep_core::fixtures::{self, FIXTURES};
use heisrep_core::lawrence::SubgroupCatalog;
use heisrep_core::pairing::Diagram;
use heisrep_core::rep_one::CurveCatalog;
use heisrep_core::suite::{run_check, CHECKS};

#[test]
fn every_fixture_parses_as_its_kind() {
    assert!(!FIXTURES.is_empty());
    for (name, _) in FIXTURES {
        let v = fixtures::json(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(v.get("note").is_some(), "{name} lacks a note");
        let parsed = if v.get("type").is_some() {
            Diagram::from_json(&v).map(|_| ())
        } else if v.get("curves").is_some() {
            CurveCatalog::from_json(&v).map(|_| ())
        } else {
            SubgroupCatalog::from_json(&v).map(|_| ())
        };
        parsed.unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    assert!(fixtures::json("no_such_fixture.json").is_err());
}

#[test]
fn cheap_checks_are_deterministic() {
    for id in [2u8, 3, 4, 6, 9, 13, 14] {
        let a = run_check(id).unwrap().to_json();
        let b = run_check(id).unwrap().to_json();
        assert_eq!(a, b, "check {id}");
    }
}

#[test]
fn check_ids_are_contiguous() {
    let ids: Vec<u8> = CHECKS.iter().map(|(i, _)| *i).collect();
    assert_eq!(ids, (1..=14).collect::<Vec<_>>());
    assert!(run_check(15).is_err());
}
