use std::process::{Command, Output};

use gq42::export::{import_geometry, Geometry};
use gq42::{GramForm, HermitianSurface};

fn gq42(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gq42"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_fans_reports_520() {
    let o = gq42(&["verify", "fans"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.contains("fans=520 PASS")));
}

#[test]
fn verify_by_criterion_id() {
    let o = gq42(&["verify", "a1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("points=45 PASS"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gq42(&["verify", "bogus-name"]).status.code(), Some(2));
    assert_eq!(gq42(&["census", "bogus"]).status.code(), Some(2));
    assert_eq!(
        gq42(&["--gram", "bogus", "verify", "gq"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gq42(&["export", "group", "--format", "dot"]).status.code(),
        Some(2)
    );
    assert_eq!(gq42(&[]).status.code(), Some(2));
}

#[test]
fn geometry_export_round_trips() {
    let dir = std::env::temp_dir().join(format!("gq42-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("geometry.json");
    let o = gq42(&["export", "geometry", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let (g, inc) = import_geometry(&text).unwrap();
    let surface = HermitianSurface::build(GramForm::SymplecticJ).unwrap();
    assert_eq!(g, Geometry::of(&surface));
    assert_eq!(inc, surface.gq);
    assert_eq!(g.points.len(), 45);
    assert_eq!(g.lines.len(), 27);
    assert!(g.lines.iter().all(|l| l.points.len() == 5));
    // byte-identical on a second run
    assert_eq!(stdout(&gq42(&["export", "geometry"])), text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn hyperplane_export_has_245_records() {
    let o = gq42(&["export", "hyperplanes"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 245);
    assert_eq!(records[0]["kind"], "perp");
    assert!(records
        .iter()
        .any(|r| r["kind"] == "plane_ovoid" && r["plane"].is_u64()));
    assert!(records
        .iter()
        .any(|r| r["kind"] == "tripod" && r["triads"].as_array().unwrap().len() == 3));
}

#[test]
fn dot_export_is_the_collinearity_graph() {
    let o = gq42(&["export", "geometry", "--format", "dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("graph collinearity {"));
    assert_eq!(text.matches(" -- ").count(), 270);
    assert_eq!(text.matches("// line ").count(), 27);
}

#[test]
fn witness_fig7_is_a_two_member_vline() {
    let o = gq42(&["witness", "fig7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let members = v["members"].as_array().unwrap();
    assert_eq!(members.len(), 2);
    assert_eq!(v["core"].as_array().unwrap().len(), 6);
    assert!(members
        .iter()
        .all(|m| m["points"].as_array().unwrap().len() == 9));
}

#[test]
fn witness_fig5_reports_the_discrepancy() {
    let o = gq42(&["witness", "fig5"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["search"]["required"], 4);
    assert!(v["discrepancy"]["example"]["contained_in_all"]
        .as_bool()
        .unwrap());
}
