mod common;

use std::path::Path;
use std::process::{Command, Output};

use belyi_core::belyi::{Certificate, Status};
use belyi_core::cli::parse_poly_file;
use belyi_core::ffpoly::UniPoly;

const TOY_MAP: &str = "prime 7\npoly q = 1\npoly r = 5 * (X + 6)^2 * (X + 4)\n";
const S3: &str = "degree 3\nperm x = (1,2)\nperm y = (2,3)\n";

fn belyi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_belyi")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn group_info_of_s3() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "s3.triple", S3);
    let o = belyi(&["group-info", &t]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("order 6"), "{s}");
    assert!(s.contains("genus 0"));
    assert!(s.contains("x type 2.1 sign -1"));
}

#[test]
fn toy_map_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "toy.poly", TOY_MAP);
    let o = belyi(&["factor-bivar", &m, "--degrees-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 2");

    let o = belyi(&["expand", &m]);
    assert_eq!(o.status.code(), Some(0));
    let again = parse_poly_file(&stdout(&o)).unwrap();
    let orig = parse_poly_file(TOY_MAP).unwrap();
    for name in ["q", "r"] {
        assert_eq!(again.get(name).unwrap().expand(), orig.get(name).unwrap().expand());
    }
    let k = orig.field;
    assert_eq!(again.get("p").unwrap().expand(), UniPoly::from_i64(k, &[0, 0, 3, 5]));
}

#[test]
fn toy_verification_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "toy.poly", TOY_MAP);
    let t = write(dir.path(), "s3.triple", S3);
    let a = belyi(&["verify-map", &m, "--triple", &t, "--threads", "1"]);
    let b = belyi(&["verify-map", &m, "--triple", &t, "--threads", "3", "--seed", "0"]);
    // S_3 is odd and 2-transitive
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    let c = Certificate::from_json(&stdout(&a)).unwrap();
    assert_eq!(c.verdict, Status::Fail);
    assert!(c.failing().contains(&"even_parity"));
    assert_eq!(c.check("ramification_profile").unwrap().status, Status::Pass);
    assert_eq!(c.context.inputs.len(), 2);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "bad.poly", "prime 5\npoly q = (X +)\n");
    let o = belyi(&["verify-map", &m]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 14"));
    assert_eq!(belyi(&["verify-map", "/nonexistent.poly"]).status.code(), Some(2));
    assert_eq!(belyi(&["no-such-command"]).status.code(), Some(2));
    let strict = write(dir.path(), "big.poly", "prime 5\npoly q = (X + 7)\npoly r = 1\n");
    assert_eq!(belyi(&["expand", &strict]).status.code(), Some(0));
    assert_eq!(belyi(&["expand", &strict, "--strict"]).status.code(), Some(2));
}

#[test]
fn passport_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "s4.triple", "degree 4\nperm x = (1,2)\nperm y = (1,2,3,4)\n");
    let o = belyi(&["passport", &t, "--cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = belyi(&["passport", &t]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("raw orbits 1"), "{}", stdout(&o));
}

#[test]
fn raising_the_degree_of_r_breaks_the_profile() {
    let dir = tempfile::tempdir().unwrap();
    let text = common::map_text().replace("(X + 212)^7", "(X + 212)^14");
    let m = write(dir.path(), "broken.poly", &text);
    let cert = dir.path().join("broken.json");
    let o = belyi(&["verify-map", &m, "--certificate", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let c = Certificate::from_json(&std::fs::read_to_string(cert).unwrap()).unwrap();
    assert_eq!(c.check("ramification_profile").unwrap().status, Status::Fail);
}

#[test]
fn fixture_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = belyi(&[
        "verify-map",
        common::MAP_FIXTURE,
        "--triple",
        common::TRIPLE_FIXTURE,
        "--order",
        "604800",
        "--certificate",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&cert).unwrap();
    let c = Certificate::from_json(&text).unwrap();
    assert_eq!(c.to_json(), text);
    assert_eq!(c.check("subdegrees").unwrap().values["subdegrees"], serde_json::json!([1, 36, 108, 135]));
    assert_eq!(c.check("passport").unwrap().values["raw_orbit_count"], 10);
    assert!(c.checks.iter().all(|r| r.wall_ms.is_none()));
    assert!(c.external_facts.iter().any(|f| f.name == "dedekind_reduction"));
}
