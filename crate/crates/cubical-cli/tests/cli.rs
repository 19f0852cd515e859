//! End-to-end checks of the `cubical` binary: exit-code conventions and the
//! text-format round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

use cubical::constructions::{free_cube, salvetti, SimplicialGraph};
use cubical::io::write_gluing_presentation;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubical"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cubical-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn special_salvetti_k3_exits_zero() {
    let x = salvetti(&SimplicialGraph::complete(3)).unwrap();
    let file = write_temp("salvetti-k3", &write_gluing_presentation(&x.to_presentation()));
    let out = run(&["special", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("special: true"));
}

#[test]
fn npc_fails_on_cube_skeleton() {
    let x = free_cube(3).unwrap().skeleton(2);
    let file = write_temp("skeleton", &write_gluing_presentation(&x.to_presentation()));
    let out = run(&["npc", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("npc: false"));
    assert!(text.contains("empty clique"));
}

#[test]
fn dual_rejects_malformed_input() {
    let file = write_temp("badwalls", "points: a b\nwall: {a} | {a,b}\n");
    let out = run(&["dual", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(!out.stderr.is_empty());
}

#[test]
fn construction_output_compiles_again() {
    let out = run(&["torus", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let file = write_temp("torus3", &String::from_utf8_lossy(&out.stdout));
    let again = run(&["compile", file.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0), "{again:?}");
    assert!(String::from_utf8_lossy(&again.stdout).contains("[1, 3, 3, 1]"));
}

#[test]
fn smallcancel_verdict_drives_exit_code() {
    let file = write_temp("torus-pres", "gens: a b\nrels: abAB\n");
    assert_eq!(run(&["smallcancel", file.to_str().unwrap(), "--n", "3"]).status.code(), Some(0));
    assert_eq!(run(&["smallcancel", file.to_str().unwrap(), "--n", "4"]).status.code(), Some(1));
}

#[test]
fn json_reports_carry_schema_and_command() {
    let out = run(&["surface", "--genus", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "cubical.report/1");
    assert_eq!(v["command"], "surface");
    assert_eq!(v["euler_characteristic"], -2);
}
