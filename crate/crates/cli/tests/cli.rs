use std::path::PathBuf;
use std::process::Command as Process;

use clap::Parser;
use liederiv_cli::{run, Cli, Outcome, Workspace};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "dgl"))
        .collect();
    v.sort();
    v
}

fn cli(args: &[&str]) -> Outcome {
    let mut argv = vec!["liederiv"];
    argv.extend(args);
    run(&Cli::try_parse_from(argv).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--format", "json"];
    a.extend(args);
    let out = cli(&a);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("liederiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const CP2_HEAD: &str = "model CP2 {\n  gen x1 : deg 1;\n  gen x3 : deg 3;\n";

#[test]
fn fixture_file_has_two_models_and_one_map() {
    let src = std::fs::read_to_string(fixture("cp2_s4.dgl")).unwrap();
    let ws = Workspace::parse(&src, 10).unwrap();
    assert_eq!(ws.models().len(), 2);
    assert_eq!(ws.maps().len(), 1);
    assert!(ws.is_valid());
}

#[test]
fn empty_file_gives_empty_workspace() {
    let ws = Workspace::parse("", 12).unwrap();
    assert!(ws.models().is_empty() && ws.maps().is_empty());
    let ws = Workspace::parse("# nothing here\n", 12).unwrap();
    assert!(ws.models().is_empty());
}

#[test]
fn degree_inconsistent_differential_names_the_generator() {
    let src = format!("{CP2_HEAD}  d x3 = [x1, x3];\n}}\n");
    let e = Workspace::parse(&src, 10).unwrap_err();
    assert!(e.message.contains("x3"), "{e}");
    assert_eq!((e.line, e.col), (4, 10));
}

#[test]
fn parse_errors_carry_positions() {
    let cases = [
        ("model A {\n  gen x : deg 2;\n  d y = x;\n}\n", (3, 5), "unknown generator `y`"),
        ("model A {\n  gen x : deg 2;\n  gen x : deg 3;\n}\n", (3, 7), "duplicate generator"),
        ("model A { gen x : deg 2; }\nmodel A { gen y : deg 2; }\n", (2, 7), "duplicate name"),
        ("model A { gen x : deg 2; }\nmap f : A -> B { x -> x; }\n", (2, 14), "unknown model `B`"),
        ("model A { gen x : deg 2; gen y : deg 3; }\nmap f : A -> A { x -> x; }\n", (2, 5), "no image for `y`"),
        ("model A { gen x : deg 2; gen y : deg 3; }\nmap f : A -> A {\n  x -> x;\n  y -> x;\n}\n", (4, 8), "image of `y`"),
        ("model A { gen x : deg 2 }\n", (1, 25), "expected `;`"),
        ("model A { gen x : deg 20; }\n", (1, 15), "truncation degree"),
        ("thing A {}\n", (1, 1), "expected `model` or `map`"),
    ];
    for (src, pos, msg) in cases {
        let e = Workspace::parse(src, 12).unwrap_err();
        assert_eq!((e.line, e.col), pos, "{src}: {e}");
        assert!(e.message.contains(msg), "{src}: {e}");
    }
}

#[test]
fn printing_and_reparsing_gives_the_same_workspace() {
    for f in fixtures() {
        let src = std::fs::read_to_string(&f).unwrap();
        let ws = Workspace::parse(&src, 12).unwrap();
        let again = Workspace::parse(&ws.to_text(), 12).unwrap();
        assert_eq!(ws, again, "{}", f.display());
        assert_eq!(ws.to_text(), again.to_text());
    }
}

#[test]
fn every_fixture_validates() {
    for f in fixtures() {
        let out = cli(&["validate", f.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{}: {}", f.display(), out.stdout);
        assert!(out.stdout.contains("ok: true"));
    }
}

#[test]
fn evaluation_subgroup_of_the_collapse_map() {
    let f = fixture("cp2_s4.dgl");
    let f = f.to_str().unwrap();
    let ev = json(&["--max-degree", "10", "evsub", f, "f", "--top-degree", "4"]);
    assert_eq!(ev["degrees"][0]["dimension"], 0);
    assert_eq!(ev["degrees"][0]["topological"], 4);
    assert_eq!(ev["degrees"][0]["internal"], 3);
    let center = json(&["--max-degree", "10", "center", f, "f", "--top-degree", "4"]);
    assert_eq!(center["degrees"][0]["dimension"], 1);
    assert_eq!(center["degrees"][0]["representatives"][0], "u3");
    let gvp = json(&["--max-degree", "10", "gvp", f, "f", "--top-degree", "4"]);
    assert_eq!(gvp["degrees"][0]["dimension"], 1);
    assert_eq!(gvp["degrees"][0]["agree"], true);
}

#[test]
fn internal_degree_flag_shifts_the_request() {
    let f = fixture("cp2_s4.dgl");
    let f = f.to_str().unwrap();
    let a = json(&["--max-degree", "10", "center", f, "f", "--top-degree", "4"]);
    let b = json(&["--max-degree", "10", "--internal-degrees", "center", f, "f", "--degree", "3"]);
    assert_eq!(a, b);
}

#[test]
fn structured_output_is_byte_stable() {
    let f = fixture("factor_inclusion.dgl");
    let f = f.to_str().unwrap();
    for cmd in ["evsub", "center", "gvp", "grel", "gseq", "omega"] {
        let args = ["--format", "json", cmd, f, "incl"];
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(a.code, 0, "{cmd}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        for d in v["degrees"].as_array().unwrap() {
            for key in ["topological", "internal", "dimension", "representatives", "trusted", "caveats"] {
                assert!(d.get(key).is_some(), "{cmd} lacks {key}");
            }
            if d["trusted"] == false {
                assert!(!d["caveats"].as_array().unwrap().is_empty(), "{cmd}: silent untrusted degree");
            }
        }
    }
}

#[test]
fn low_degrees_are_reported_with_a_caveat() {
    let v = json(&["gottlieb", fixture("spheres.dgl").to_str().unwrap(), "S2", "--top-degree", "3"]);
    let d = &v["degrees"][0];
    assert_eq!(d["dimension"], 1);
    assert_eq!(d["representatives"][0], "[x,x]");
    assert!(d["caveats"][0].as_str().unwrap().starts_with("low degree"));
}

#[test]
fn exit_codes() {
    let f = fixture("cp2_s4.dgl");
    let f = f.to_str().unwrap();
    // unknown names and unreadable files
    assert_eq!(cli(&["evsub", f, "g"]).code, 2);
    assert_eq!(cli(&["homology", f, "S5"]).code, 2);
    assert_eq!(cli(&["validate", "/nonexistent/file.dgl"]).code, 2);
    // outside the computable window
    assert_eq!(cli(&["--max-degree", "10", "evsub", f, "f", "--top-degree", "40"]).code, 3);
    // a model with d² ≠ 0 and a map that is not a chain map
    let bad = temp_file(
        "bad.dgl",
        "model A {\n  gen a : deg 1;\n  gen b : deg 2;\n  gen c : deg 3;\n  d b = a;\n  d c = b;\n}\n",
    );
    let out = cli(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert_eq!(cli(&["homology", bad.to_str().unwrap(), "A"]).code, 1);
    let nonchain = temp_file(
        "nonchain.dgl",
        "model A { gen x : deg 2; }\nmodel B { gen u : deg 2; gen t : deg 3; d t = u; }\nmap g : B -> A { u -> x; t -> 0; }\n",
    );
    assert_eq!(cli(&["validate", nonchain.to_str().unwrap()]).code, 1);
    let garbled = temp_file("garbled.dgl", "model A { gen x : deg 2; d x = ; }\n");
    let out = cli(&["validate", garbled.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains(":1:"), "{}", out.stderr);
}

#[test]
fn homology_of_cp2() {
    let v = json(&["--max-degree", "8", "homology", fixture("cp2_s4.dgl").to_str().unwrap(), "CP2"]);
    let dims: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["dimension"].as_u64().unwrap()).collect();
    // pi_*(Omega CP^2) ⊗ Q sits in degrees 1 and 4
    assert_eq!(dims[..6], [1, 0, 0, 1, 0, 0]);
}

#[test]
fn homotopy_verdicts() {
    let f = fixture("homotopy.dgl");
    let f = f.to_str().unwrap();
    let ok = cli(&["verify-homotopy", f, "f0", "f1", "--svalue", "x=t"]);
    assert_eq!(ok.code, 0, "{}{}", ok.stdout, ok.stderr);
    let fail = cli(&["verify-homotopy", f, "f0", "f1"]);
    assert_eq!(fail.code, 1);
    assert!(fail.stdout.contains("expected u"), "{}", fail.stdout);
    assert_eq!(cli(&["verify-homotopy", f, "f0", "f1", "--svalue", "x=u"]).code, 2);
    assert_eq!(cli(&["verify-homotopy", f, "f0", "f1", "--svalue", "q=t"]).code, 2);
}

#[test]
fn constructions_from_the_command_line() {
    let s = fixture("spheres.dgl");
    let v = json(&["product", s.to_str().unwrap(), "S3", "--spheres", "3"]);
    assert!(v["degrees"].as_array().unwrap().iter().all(|d| d["additive"] == true));
    assert!(v["summary"]["model"].as_str().unwrap().contains("d x' = -[x,v];"));
    let c = json(&["--max-degree", "7", "cylinder", fixture("cp2_s4.dgl").to_str().unwrap(), "CP2", "--monomials"]);
    assert_eq!(c["summary"]["ok"], true);
    assert!(c["summary"]["monomials_checked"].as_u64().unwrap() > 0);
}

#[test]
fn long_exact_sequences_from_the_command_line() {
    let f = fixture("s3xs3_attach.dgl");
    for seq in ["morphism", "adjoint", "push-forward"] {
        let v = json(&["--max-degree", "9", "les", f.to_str().unwrap(), "i", "--sequence", seq]);
        assert_eq!(v["summary"]["exact"], true, "{seq}");
    }
}

#[test]
fn binary_forwards_the_exit_code() {
    let bin = env!("CARGO_BIN_EXE_liederiv");
    let f = fixture("cp2_s4.dgl");
    let out = Process::new(bin)
        .args(["--max-degree", "10", "evsub", f.to_str().unwrap(), "f", "--top-degree", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("degree 4 (internal 3): dim 0"));
    let out = Process::new(bin).args(["evsub", f.to_str().unwrap(), "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no map named `nope`"));
}
