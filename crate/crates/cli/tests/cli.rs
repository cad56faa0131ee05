//! End-to-end runs of the `crformal` binary on the bundled manifests.

use std::path::PathBuf;
use std::process::{Command, Output};

use crformal::{corpus, manifest, mapping::FormalMap, Scalar};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crformal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn data_manifests_match_the_corpus() {
    for name in corpus::HYPERSURFACE_NAMES {
        let text = std::fs::read_to_string(data(&format!("{name}.hsf"))).unwrap();
        let h = manifest::read_hypersurface(&text).unwrap();
        assert_eq!(h, corpus::hypersurface(name, 12).unwrap().unwrap(), "{name}");
    }
    let maps: [(&str, FormalMap); 4] = [
        ("identity2", FormalMap::identity(2, 12)),
        ("dilation2", FormalMap::dilation(2, &Scalar::from_ratio(3, 2), 12)),
        ("heis_aut", corpus::heisenberg_automorphism(12)),
        ("shear2", corpus::shear(12)),
    ];
    for (name, want) in maps {
        let text = std::fs::read_to_string(data(&format!("{name}.fmap"))).unwrap();
        assert_eq!(manifest::read_map(&text).unwrap(), want, "{name}");
    }
}

#[test]
fn parse_output_round_trips() {
    let o = run(&["parse", "--order", "8", "Im(z2) - z1*conj(z1)"]);
    assert_eq!(o.status.code(), Some(0));
    let h = manifest::read_hypersurface(&stdout(&o)).unwrap();
    assert_eq!(h, corpus::heisenberg(8));
}

#[test]
fn parse_errors_exit_with_one() {
    let o = run(&["parse", "Im(z2) - 1/z1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn classify_heisenberg() {
    let o = run(&["classify", "--format", "machine", &path("heis2.hsf")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for c in ["I", "II", "III", "IV", "V"] {
        assert!(out.contains(&format!("cond={c} status=holds")), "{out}");
    }
}

#[test]
fn classify_segre_degenerate_example() {
    let o = run(&["classify", "--order", "12", "--format", "machine", &path("ex110.hsf")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("cond=IV status=fails-to-order"), "{out}");
    assert!(out.contains("cond=V status=holds"), "{out}");
    assert!(out.contains("cross_check iv=true v=true"), "{out}");
}

#[test]
fn non_minimal_classification_exits_with_two() {
    let o = run(&["classify", &path("flat2.hsf")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flows_builds_the_selfmap() {
    let out_path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("degen3_selfmap.fmap");
    let o = run(&[
        "flows",
        "--order",
        "12",
        "--out",
        &out_path.display().to_string(),
        &path("degen3.hsf"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("tangency=ok"), "{out}");
    assert!(out.contains("moving_component=2"), "{out}");
    let map = manifest::read_map(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let h = corpus::degenerate3(12);
    assert!(crformal::mapping::tangency_check(&map, &h, &h, 12).unwrap().tangent);
}

#[test]
fn flows_without_a_field_exits_with_two() {
    let o = run(&["flows", "--order", "8", &path("heis2.hsf")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn map_verbs() {
    let o = run(&["verify-map", &path("heis_aut.fmap"), &path("heis2.hsf")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tangent=true"));
    let o = run(&["verify-map", &path("shear2.fmap"), &path("heis2.hsf")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tangent=false"));
    let o = run(&[
        "identities",
        "--format",
        "machine",
        &path("dilation2.fmap"),
        &path("heis2.hsf"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains("status=fail"), "{out}");
    assert_eq!(out.matches("status=ok").count(), 8, "{out}");
    let o = run(&[
        "chains",
        "--format",
        "machine",
        &path("identity2.fmap"),
        &path("heis2.hsf"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kappa0=0"));
}

#[test]
fn artin_verdicts_set_the_exit_status() {
    let o = run(&["artin", "--format", "machine", &path("quadratic.artin")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("artin=satisfied"));
    let o = run(&["artin", "--format", "machine", &path("double_root.artin")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("artin=inconclusive"));
}

#[test]
fn missing_files_are_errors() {
    let o = run(&["classify", &path("no_such_file.hsf")]);
    assert_eq!(o.status.code(), Some(1));
}
