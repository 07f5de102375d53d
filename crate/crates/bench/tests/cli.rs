use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mci_bench::bench::read_records;
use mci_bench::format::parse_instance;
use tempfile::tempdir;

fn mci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mci")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_is_reproducible_across_processes() {
    let dir = tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let o = mci(&["gen", "--n", "14", "--density", "1", "--type", "2", "--count", "3", "--seed", "42", "--out", d.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for i in 0..3 {
        let name = format!("s14_1_2_42_{i}.mci");
        let x = fs::read(a.join(&name)).unwrap();
        assert_eq!(x, fs::read(b.join(&name)).unwrap());
        let h = parse_instance(std::str::from_utf8(&x).unwrap()).unwrap();
        assert_eq!(h.m(), 14);
        assert!(h.hyperedges().iter().all(|s| (2..=7).contains(&s.len())));
    }
    assert_eq!(fs::read_dir(&a).unwrap().count(), 3);
}

#[test]
fn solve_flow_and_enum() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "t.mci", "# triangle\n3 1\n3 1 2 3\n");
    let o = mci(&["solve", "--input", &input]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("cost 2\nedges 1-2 1-3\n"), "{}", stdout(&o));
    for s in 1..=6 {
        let o = mci(&["solve", "--strategy", &s.to_string(), "--input", &input]);
        assert!(stdout(&o).starts_with("cost 2\n"));
    }
    let o = mci(&["flow", "--input", &input, "--time-limit", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("cost 2\n"));
    assert!(stdout(&o).contains("constraints 6\n"));
    for method in ["naive", "chunked"] {
        let o = mci(&["enum", "--method", method, "--input", &input]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "c* 2 count 3\n1-2 1-3\n1-2 2-3\n1-3 2-3\n");
    }
}

#[test]
fn exit_codes() {
    let dir = tempdir().unwrap();
    let good = write(dir.path(), "g.mci", "4 1\n4 1 2 3 4\n");
    let bad = write(dir.path(), "b.mci", "3 1\n4 1 2 3\n");
    assert_eq!(mci(&["--help"]).status.code(), Some(0));
    assert_eq!(mci(&[]).status.code(), Some(1));
    assert_eq!(mci(&["solve"]).status.code(), Some(1));
    assert_eq!(mci(&["solve", "--strategy", "7", "--input", &good]).status.code(), Some(1));
    assert_eq!(mci(&["enum", "--method", "clever", "--input", &good]).status.code(), Some(1));
    assert_eq!(mci(&["solve", "--time-limit", "-1", "--input", &good]).status.code(), Some(1));
    assert_eq!(mci(&["gen", "--n", "5", "--density", "1", "--type", "9", "--out", dir.path().to_str().unwrap()]).status.code(), Some(1));

    let o = mci(&["solve", "--input", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2: size 4 but 3 vertices listed"));
    let missing = dir.path().join("nope.mci");
    assert_eq!(mci(&["flow", "--input", missing.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(mci(&["solve", "--time-limit", "0", "--input", &good]).status.code(), Some(3));
    assert_eq!(mci(&["flow", "--time-limit", "0", "--input", &good]).status.code(), Some(3));
    assert_eq!(mci(&["enum", "--time-limit", "0", "--input", &good]).status.code(), Some(3));
}

#[test]
fn bench_writes_three_tables() {
    let dir = tempdir().unwrap();
    let scen = write(dir.path(), "sc.txt", "# n d type count seed\n6 1 2 3 5\n5 1 5 2 9\n");
    let out = dir.path().join("results.csv");
    let o = mci(&[
        "bench", "--scenarios", &scen, "--algos", "cga-s4,flow,enum-chunked", "--time-limit", "60", "--workers", "2",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "15 runs, 15 solved\n");
    let records = read_records(fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(records.len(), 15);
    assert!(records.iter().all(|r| r.solved && r.cost.is_some()));
    let summary = fs::read_to_string(dir.path().join("results.summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 6);
    assert!(summary.starts_with("n,density,type,count,seed,algorithm,instances,solved,mean_time,mean_constraints\n"));
    let scatter = fs::read_to_string(dir.path().join("results.scatter.csv")).unwrap();
    assert_eq!(scatter.lines().count(), 1 + 5);

    let o = mci(&["bench", "--scenarios", &scen, "--algos", "cga-s9", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let broken = write(dir.path(), "broken.txt", "6 1 2 3\n");
    let o = mci(&["bench", "--scenarios", &broken, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_models() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "t.mci", "3 1\n3 1 2 3\n");
    let cut = dir.path().join("cut.lp");
    let flow = dir.path().join("flow.lp");
    let flow2 = dir.path().join("flow2.lp");
    for (kind, path) in [("cut-initial", &cut), ("flow", &flow), ("flow", &flow2)] {
        let o = mci(&["export", "--kind", kind, "--input", &input, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let cut = fs::read_to_string(cut).unwrap();
    let rows = cut.lines().skip_while(|l| *l != "Subject To").skip(1).take_while(|l| l.starts_with(' '));
    assert_eq!(rows.count(), 4);
    assert_eq!(fs::read(&flow).unwrap(), fs::read(&flow2).unwrap());
    let flow = fs::read_to_string(flow).unwrap();
    let vars: std::collections::BTreeSet<&str> = flow
        .split(|c: char| !(c.is_alphanumeric() || c == '_'))
        .filter(|t| t.starts_with("x_") || t.starts_with("f_"))
        .collect();
    assert_eq!(vars.len(), 9);
}
