use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_causal-subset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

// Six-vertex example shared with the library tests.
const SIX: &str = "6\n0 4\n0 5\n1 2\n1 3\n4 1\n4 2\n4 3\n4 5\n5 2\n";

#[test]
fn verify_and_oracle_agree() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.dag", SIX);
    let v = run(&["verify", "--graph", &g]);
    let o = run(&["oracle", "--graph", &g]);
    assert!(v.status.success() && o.status.success());
    assert!(stdout(&v).contains("size: 2"));
    assert!(stdout(&o).contains("interventions: [{1} {4}]"));
}

#[test]
fn verify_with_targets_and_certificate() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.dag", SIX);
    // 1 -> 2 is already compelled by the v-structure at 2.
    let compelled = write(&dir, "c.tgt", "2 1\n");
    assert!(stdout(&run(&["verify", "--graph", &g, "--targets", &compelled])).contains("size: 0"));
    let t = write(&dir, "t.tgt", "1 3\n");
    let o = run(&["verify", "--graph", &g, "--targets", &t, "--certificate"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("size: 1"));
    assert!(text.contains("1 3 d"));
}

#[test]
fn cost_objective_is_reported() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.dag", SIX);
    let w = write(&dir, "g.wts", "4 10\n");
    let v = run(&["verify", "--graph", &g, "--alpha", "1", "--beta", "1", "--weights", &w]);
    let o = run(&["oracle", "--graph", &g, "--alpha", "1", "--beta", "1", "--weights", &w]);
    let objective = |o: &Output| stdout(o).lines().find(|l| l.starts_with("objective")).unwrap().to_owned();
    assert!(v.status.success() && o.status.success());
    let (a, b): (f64, f64) = (
        objective(&v)["objective: ".len()..].parse().unwrap(),
        objective(&o)["objective: ".len()..].parse().unwrap(),
    );
    assert!(a >= b && a <= b + 2.0, "{a} vs {b}");
}

#[test]
fn budget_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let chain: String = std::iter::once("10\n".to_owned())
        .chain((0..9).map(|i| format!("{i} {}\n", i + 1)))
        .collect();
    let g = write(&dir, "g.dag", &chain);
    let o = run(&["oracle", "--graph", &g]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let cyclic = write(&dir, "c.dag", "3\n0 1\n1 2\n2 0\n");
    assert_eq!(run(&["verify", "--graph", &cyclic]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--graph", &path(&dir, "missing.dag")]).status.code(), Some(1));
    let g = write(&dir, "g.dag", SIX);
    let t = write(&dir, "t.tgt", "0 3\n");
    assert_eq!(run(&["verify", "--graph", &g, "--targets", &t]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["search", "--graph", &g]).status.code(), Some(1));
}

#[test]
fn gen_is_deterministic_and_loadable() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.dag"), path(&dir, "b.dag"));
    let t = path(&dir, "a.tgt");
    for out in [&a, &b] {
        let o = run(&["gen", "--n", "15", "--p", "0.2", "--seed", "9", "--out", out, "--targets-out", &t]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    assert!(run(&["verify", "--graph", &a, "--targets", &t]).status.success());

    let lb = path(&dir, "lb.dag");
    let lt = path(&dir, "lb.tgt");
    assert!(run(&["gen", "--lower-bound", "3", "--out", &lb, "--targets-out", &lt]).status.success());
    assert_eq!(fs::read_to_string(&lt).unwrap(), "0 3\n1 4\n2 5\n");
    let o = run(&["oracle", "--graph", &lb, "--targets", &lt]);
    assert!(stdout(&o).contains("size: 1"));
}

#[test]
fn stab_dp_matches_brute_force() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.stab", "5 0\n1 0\n2 1\n3 0\n4 3\n0 2\n1 1\n3 4 9\n4 4\n");
    let dp = run(&["stab", "--input", &s]);
    let brute = run(&["stab", "--input", &s, "--brute"]);
    assert!(dp.status.success());
    assert!(stdout(&dp).starts_with("cost: 2\n"));
    assert_eq!(stdout(&dp).lines().next(), stdout(&brute).lines().next());
}

#[test]
fn search_writes_per_round_csv() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.dag", SIX);
    let csv = path(&dir, "rounds.csv");
    let o = run(&["search", "--graph", &g, "--hop", "1", "--target-node", "1", "--out", &csv]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("round,interventions,newly_oriented,cumulative_interventions"));
    assert!(lines.count() >= 1);
    assert!(!text.contains('\r'));
    assert!(String::from_utf8_lossy(&o.stderr).contains("recovered = true"));

    let nodes = write(&dir, "h.txt", "1 2 3\n");
    for algo in ["subsetsearch", "random", "fullsearch"] {
        let o = run(&["search", "--graph", &g, "--nodes", &nodes, "--algo", algo, "--seed", "3"]);
        assert!(o.status.success(), "{algo}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("recovered = true"), "{algo}");
    }
}

#[test]
fn experiments_write_csv() {
    let dir = TempDir::new().unwrap();
    let e1 = path(&dir, "e1.csv");
    let e2 = path(&dir, "e2.csv");
    let small = ["--n-list", "8,10", "--p-list", "0.2", "--trials", "2", "--seed", "5"];
    assert!(run(&[&["exp1", "--out", &e1][..], &small].concat()).status.success());
    assert!(run(&[&["exp2", "--out", &e2, "--algos", "subsetsearch,random"][..], &small].concat()).status.success());
    let rows = |p: &str| fs::read_to_string(Path::new(p)).unwrap().lines().map(str::to_owned).collect::<Vec<_>>();
    let r1 = rows(&e1);
    assert_eq!(r1[0], "n,p,seed,m,frac,t_size,nu1_subset,nu1_full");
    assert_eq!(r1.len(), 1 + 2 * 2 * 4);
    let r2 = rows(&e2);
    assert_eq!(r2[0], "n,p,seed,r,target_node,algo,interventions,nu1_full,nu1_subset");
    assert_eq!(r2.len(), 1 + 2 * 2 * 2);
    let again = run(&[&["exp1"][..], &small].concat());
    assert_eq!(stdout(&again), fs::read_to_string(&e1).unwrap());
    assert_eq!(run(&["exp1", "--trials", "0"]).status.code(), Some(1));
}
