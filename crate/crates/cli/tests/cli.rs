use expham::graph::io::{read_cycle, read_graph};
use expham::graph::{verify_hamilton_cycle, Graph};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const PETERSEN: &str = "10 15\n0 1\n1 2\n2 3\n3 4\n0 4\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n6 9\n6 8\n5 8\n";

fn expham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expham")).args(args).env_remove("EXPHAM_THREADS").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn load(p: &Path) -> Graph {
    read_graph(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn cycle_text(n: usize) -> String {
    let mut t = format!("{n} {n}\n");
    for i in 0..n {
        t += &format!("{} {}\n", i.min((i + 1) % n), i.max((i + 1) % n));
    }
    t
}

#[test]
fn gen_regular_writes_an_edge_list() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.txt");
    let r = expham(&["gen", "regular", "--n", "100", "--d", "10", "--seed", "1", "-o", s(&out)]);
    assert_eq!(code(&r), 0);
    let g = load(&out);
    assert_eq!((g.n(), g.regular_degree()), (100, Some(10)));
}

#[test]
fn gen_is_reproducible() {
    let a = expham(&["gen", "gnp", "--n", "60", "--p", "0.2", "--seed", "9"]);
    let b = expham(&["gen", "gnp", "--n", "60", "--p", "0.2", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_cayley_from_basis_vectors() {
    let r = expham(&["gen", "cayley", "--group", "z2^8", "--gens", "e1,e2,e3", "--format", "json"]);
    assert_eq!(code(&r), 0);
    let g = read_graph(&stdout(&r)).unwrap();
    assert_eq!((g.n(), g.regular_degree()), (256, Some(3)));
    assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(0, 4) && !g.has_edge(0, 8));
}

#[test]
fn gen_paley_thirteen() {
    let g = read_graph(&stdout(&expham(&["gen", "paley", "--q", "13"]))).unwrap();
    assert_eq!(g.n(), 13);
    assert!((0..13).all(|v| g.degree(v) == 6));
}

#[test]
fn gen_other_families() {
    for args in [
        &["gen", "random-cayley", "--group", "z2^6", "--d", "8"][..],
        &["gen", "cayley-sum", "--q", "101", "--size", "25", "--induced"],
        &["gen", "factor-union", "--n", "32", "--k", "5"],
    ] {
        let r = expham(args);
        assert_eq!(code(&r), 0, "{args:?}");
        read_graph(&stdout(&r)).unwrap();
    }
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(code(&expham(&["gen", "paley", "--q", "15"])), 2);
    assert_eq!(code(&expham(&["gen", "cayley", "--group", "z7", "--gens", "e1"])), 2);
    assert_eq!(code(&expham(&["gen", "regular", "--n", "10"])), 2);
    assert_eq!(code(&expham(&["frobnicate"])), 2);
}

#[test]
fn certify_small_graphs() {
    let dir = TempDir::new().unwrap();
    let pet = write(&dir, "p.txt", PETERSEN);
    let v: Value = serde_json::from_str(&stdout(&expham(&["certify", s(&pet), "--tol", "1e-9"]))).unwrap();
    assert!((v["lambda"].as_f64().unwrap() - 2.0).abs() <= 1e-9);
    assert_eq!(v["d"], 3);
    let k4 = write(&dir, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let v: Value = serde_json::from_str(&stdout(&expham(&["certify", s(&k4), "--audit", "50"]))).unwrap();
    assert!((v["lambda"].as_f64().unwrap() - 1.0).abs() <= 1e-6);
    assert!(v["audit"].is_object());
}

#[test]
fn certify_rejects_irregular_input() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "path.txt", "3 2\n0 1\n1 2\n");
    let r = expham(&["certify", s(&path)]);
    assert_eq!(code(&r), 3);
    assert!(String::from_utf8_lossy(&r.stderr).contains("not regular"));
    let junk = write(&dir, "junk.txt", "3 2\n0 x\n");
    assert_eq!(code(&expham(&["certify", s(&junk)])), 3);
}

#[test]
fn ham_on_a_hexagon_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.txt", &cycle_text(6));
    let c = dir.path().join("c.txt");
    for strategy in ["rotation", "absorb", "auto"] {
        let r = expham(&["ham", s(&g), "--strategy", strategy, "--cycle-out", s(&c)]);
        assert_eq!(code(&r), 0);
        let v: Value = serde_json::from_str(&stdout(&r)).unwrap();
        assert_eq!(v["success"], true);
        assert_eq!(v["cycle_len"], 6);
        assert_eq!(code(&expham(&["verify", s(&g), s(&c)])), 0);
    }
}

#[test]
fn ham_reports_the_longest_cycle_of_petersen() {
    let dir = TempDir::new().unwrap();
    let pet = write(&dir, "p.txt", PETERSEN);
    for strategy in ["rotation", "absorb", "auto"] {
        let r = expham(&["ham", s(&pet), "--strategy", strategy]);
        assert_eq!(code(&r), 1);
        let v: Value = serde_json::from_str(&stdout(&r)).unwrap();
        assert_eq!(v["success"], false);
        assert!(v["cycle"].is_null());
        assert_eq!(v["longest"].as_array().unwrap().len(), 9);
    }
}

#[test]
fn auto_logs_its_choice() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("paley.txt");
    assert_eq!(code(&expham(&["gen", "paley", "--q", "101", "-o", s(&g)])), 0);
    let r = expham(&["ham", s(&g), "--strategy", "auto"]);
    let v: Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(v["supply"]["passes"], true);
    assert_eq!(v["chosen"], "absorb");
    let c = expham::graph::Cycle::new(v["cycle"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect());
    assert!(verify_hamilton_cycle(&load(&g), &c).ok);
}

#[test]
fn reports_are_reproducible_apart_from_timings() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.txt");
    expham(&["gen", "regular", "--n", "400", "--d", "12", "--seed", "3", "-o", s(&g)]);
    let run = || {
        let mut v: Value = serde_json::from_str(&stdout(&expham(&["ham", s(&g), "--seed", "5"]))).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn verify_rejects_bad_cycles() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.txt", &cycle_text(5));
    let ok = write(&dir, "ok.txt", "0 1 2 3 4\n");
    let order = write(&dir, "order.txt", "0 2 1 3 4\n");
    let short = write(&dir, "short.txt", "[0, 1, 2, 3]");
    assert_eq!(code(&expham(&["verify", s(&g), s(&ok)])), 0);
    let r = expham(&["verify", s(&g), s(&order)]);
    assert_eq!(code(&r), 1);
    assert!(stdout(&r).contains("missing-edge"));
    let r = expham(&["verify", s(&g), s(&short)]);
    assert_eq!(code(&r), 1);
    assert!(stdout(&r).contains("wrong-length"));
    assert_eq!(read_cycle("{\"cycle\": [0, 1, 2]}").unwrap().len(), 3);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn cayley_sum_experiment_validates_the_ordering() {
    let dir = TempDir::new().unwrap();
    let summary = dir.path().join("s.json");
    let r = expham(&["experiment", "--preset", "cayley-sum", "--q", "101", "--size", "25", "--trials", "3", "--summary", s(&summary)]);
    assert_eq!(code(&r), 0);
    let rows = csv_rows(&stdout(&r));
    assert_eq!(rows[0].join(","), "preset,n,d,lambda,strategy,seed,success,cycle_len,wall_ms");
    assert_eq!(rows.len(), 4);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    let subgroup: Vec<u64> = expham::generators::subgroup(101, 25);
    for rec in v["records"].as_array().unwrap() {
        assert_eq!(rec["ordering_valid"], true);
        let order: Vec<u64> = rec["ordering"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        assert_eq!(order.len(), 25);
        for i in 0..25 {
            assert!(subgroup.contains(&((order[i] + order[(i + 1) % 25]) % 101)));
        }
    }
}

#[test]
fn colour_union_reports_colours() {
    let dir = TempDir::new().unwrap();
    let summary = dir.path().join("s.json");
    let r = expham(&["experiment", "--preset", "colour-union", "--n", "64", "--k", "12", "--trials", "3", "--summary", s(&summary)]);
    assert!(code(&r) <= 1);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    for rec in v["records"].as_array().unwrap() {
        if rec["success"] == true {
            let used = rec["colours"].as_u64().unwrap();
            assert!(used <= rec["colours_drawn"].as_u64().unwrap() && used <= 12);
        }
    }
}

#[test]
fn experiment_rows_do_not_depend_on_the_pool_size() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_expham"))
            .args(["experiment", "--preset", "gnp-threshold", "--n", "200", "--c", "8", "--trials", "6", "--seed", "4"])
            .env("EXPHAM_THREADS", threads)
            .output()
            .unwrap();
        // drop the wall-clock column
        csv_rows(&stdout(&out)).into_iter().map(|mut r| {
            r.pop();
            r.join(",")
        }).collect::<Vec<_>>()
    };
    assert_eq!(run("1"), run("4"));
}
