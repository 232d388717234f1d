use hypgeo_cli::{CliError, SceneDocument};
use proptest::prelude::*;

#[test]
fn duplicate_names_rejected() {
    let text = r#"{"points": {"A": [0, 0, 1], "A": [0.1, 0, 1]}}"#;
    assert!(matches!(SceneDocument::parse(text), Err(CliError::Parse(_))));
    let text = r#"{"points": {"A": [0, 0, 1]}, "cycles": {"A": {"axis": [0, 0, 1], "level": -1.2}}}"#;
    assert!(matches!(SceneDocument::parse(text), Err(CliError::Input(_))));
}

#[test]
fn zero_representatives_rejected() {
    assert!(SceneDocument::parse(r#"{"points": {"A": [0, 0, 0]}}"#).is_err());
    assert!(SceneDocument::parse(r#"{"cycles": {"c": {"axis": [0, 0, 0], "level": 1}}}"#).is_err());
}

#[test]
fn triangle_vertices_must_exist() {
    let text = r#"{"points": {"A": [0, 0, 1], "B": [0.5, 0, 1.2]}, "triangles": {"t": ["A", "B", "C"]}}"#;
    assert!(matches!(SceneDocument::parse(text), Err(CliError::UnknownName(_))));
}

#[test]
fn unknown_fields_rejected() {
    assert!(SceneDocument::parse(r#"{"pionts": {}}"#).is_err());
}

#[test]
fn lookups() {
    let doc = SceneDocument::parse(
        r#"{"points": {"O": [0, 0, 1]}, "lines": {"d": [0, 1, 0]}, "cycles": {"c": {"axis": [0, 0, 1], "level": -1.5}}}"#,
    )
    .unwrap();
    assert!(doc.point("O").unwrap().is_real());
    assert!(doc.line("d").is_ok());
    assert!(doc.cycle("c").is_ok());
    assert!(matches!(doc.point("P"), Err(CliError::UnknownName(_))));
    assert!(matches!(doc.cycle("O"), Err(CliError::UnknownName(_))));
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![any::<f64>().prop_filter("finite", |x| x.is_finite()), -1e3..1e3f64]
}

fn rep() -> impl Strategy<Value = [f64; 3]> {
    [finite(), finite(), finite()].prop_filter("nonzero", |v| v.iter().any(|x| *x != 0.0))
}

proptest! {
    #[test]
    fn json_round_trip_is_exact(
        points in proptest::collection::vec(rep(), 0..5),
        cycles in proptest::collection::vec((rep(), finite()), 0..5),
        tol in proptest::option::of(1e-300..1.0f64),
    ) {
        let mut doc = SceneDocument::default();
        for (i, p) in points.iter().enumerate() {
            doc.points.insert(format!("p{i}"), *p);
        }
        for (i, (axis, level)) in cycles.iter().enumerate() {
            doc.cycles.insert(format!("c{i}"), hypgeo_cli::scene::CycleDoc { axis: *axis, level: *level });
        }
        doc.metadata.tolerance = tol;
        let back = SceneDocument::parse(&doc.to_json()).unwrap();
        for (name, p) in doc.points.iter() {
            let q = back.points.get(name).unwrap();
            prop_assert!(p.iter().zip(q).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
        for (name, c) in doc.cycles.iter() {
            let d = back.cycles.get(name).unwrap();
            prop_assert_eq!(c.level.to_bits(), d.level.to_bits());
            prop_assert!(c.axis.iter().zip(&d.axis).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
        prop_assert_eq!(back, doc);
    }
}
