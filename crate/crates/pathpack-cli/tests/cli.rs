//! End-to-end runs of the binary, with golden report comparisons.
//! Timing lines are masked before comparing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathpack"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Replaces wall-clock values so reports compare stably.
fn normalize(text: &str) -> String {
    text.lines()
        .map(|line| {
            if line.starts_with("wall_ms:") {
                "wall_ms: X".to_string()
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn tempdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pathpack-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn build_solve_color_verify_round_trip() {
    let dir = tempdir("round-trip");
    let out = run(&dir, &["build", "product", "cycle", "n=4", "l=2", "t=5", "-o", "g.txt"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "command: build\nspec: product cycle n=4 l=2 t=5\nvertices: 20\nedges: 24\nout: g.txt\nstatus: ok\n"
    );

    let out = run(&dir, &["solve", "g.txt", "-o", "w.col"]);
    assert!(out.status.success());
    assert_eq!(
        normalize(&stdout(&out)),
        "command: solve\ninput: g.txt\nvertices: 20\nedges: 24\ndiameter: 11\nlower_bound: 3\nchi_p: 5\nproven_optimal: true\nnodes_expanded: 510\nwitness: w.col\nwall_ms: X\nstatus: ok\n"
    );

    let out = run(&dir, &["color", "product", "cycle", "n=4", "l=2", "t=5", "-o", "c.col"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "command: color\nspec: product cycle n=4 l=2 t=5\nentry: cycle-4s-l2\nclaimed_bound: 5\nexact: false\nk_used: 5\nblocks: a b a c a\nout: c.col\nstatus: ok\n"
    );

    for coloring in ["w.col", "c.col"] {
        let out = run(&dir, &["verify", "g.txt", coloring]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert!(text.contains("violations: 0\n"));
        assert!(text.ends_with("status: ok\n"));
    }
}

#[test]
fn verify_reports_violations_and_fails() {
    let dir = tempdir("verify-fail");
    assert!(run(&dir, &["build", "path:4", "-o", "p4.txt"]).status.success());
    std::fs::write(dir.join("bad.col"), "k 2\nv 1 1\nv 2 2\nv 3 1\nv 4 2\n").unwrap();
    let out = run(&dir, &["verify", "p4.txt", "bad.col"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("violations: 1\n"));
    assert!(text.contains("violation: vertices 2 and 4 share color 2 at distance 2\n"));
    assert!(text.ends_with("status: fail\n"));
}

#[test]
fn solve_honors_node_limit() {
    let dir = tempdir("limit");
    assert!(run(&dir, &["build", "cycle:10", "-o", "c10.txt"]).status.success());
    let out = run(&dir, &["solve", "c10.txt", "--node-limit", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("upper_bound:"));
    assert!(text.contains("proven_optimal: false\n"));
    assert!(text.ends_with("status: limit\n"));
}

#[test]
fn recognize_spec_and_tree_file() {
    let dir = tempdir("recognize");
    let out = run(&dir, &["recognize", "caterpillar", "4:4,1,0,1", "-o", "cert.col"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "command: recognize\ninput: caterpillar 4:4,1,0,1\ncanonical: caterpillar 4:1,0,1,4\nchi_p_class: 3\nfamilies: G1(k=1,reversed)\nexact: 3\ncertificate_k: 3\ncertificate: cert.col\nstatus: ok\n"
    );
    // the emitted certificate verifies against the built graph
    assert!(run(&dir, &["build", "caterpillar", "4:1,0,1,4", "-o", "cat.txt"])
        .status
        .success());
    let out = run(&dir, &["recognize", "caterpillar", "4:1,0,1,4", "-o", "cert2.col"]);
    assert!(out.status.success());
    let out = run(&dir, &["verify", "cat.txt", "cert2.col"]);
    assert!(out.status.success());

    // star via a tree file
    assert!(run(&dir, &["build", "caterpillar", "1:7", "-o", "star.txt"])
        .status
        .success());
    let out = run(&dir, &["recognize", "star.txt"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("chi_p_class: 2\n"));

    // a spider is not a caterpillar: usage-level error
    std::fs::write(
        dir.join("spider.txt"),
        "p 7 6\ne 1 2\ne 2 3\ne 1 4\ne 4 5\ne 1 6\ne 6 7\n",
    )
    .unwrap();
    let out = run(&dir, &["recognize", "spider.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not a caterpillar"), "{err}");
}

#[test]
fn ilp_writes_the_expected_model() {
    let dir = tempdir("ilp");
    assert!(run(&dir, &["build", "path:2", "-o", "p2.txt"]).status.success());
    let out = run(&dir, &["ilp", "p2.txt", "--k", "2", "-o", "p2.lp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("variables: 5\n"));
    assert!(text.contains("constraints_separation: 2\n"));
    let written = std::fs::read_to_string(dir.join("p2.lp")).unwrap();
    let g = pathpack_core::graph::build_path(2).unwrap();
    let dm = pathpack_core::graph::all_pairs_distances(&g).unwrap();
    let model = pathpack_core::ilp::build_model(&dm, 2).unwrap();
    assert_eq!(written, pathpack_core::ilp::lp_to_string(&model));

    // default budget comes from the solver
    let out = run(&dir, &["ilp", "p2.txt", "-o", "p2b.lp"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("k: 2\nk_source: solver-exact\n"));
}

#[test]
fn probe_k6_reports_and_exports() {
    let dir = tempdir("probe");
    let out = run(
        &dir,
        &[
            "probe", "k6", "--t-max", "3", "--max-vertices", "12", "--out-dir", "lps",
        ],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reference_bound: 22\n"));
    assert!(text.contains("row: product complete n=6 l=2 t=2 upper=10 method=solver proven=true\n"));
    assert!(text.contains("method=ilp-export out=lps/complete_n6_l2_t3.lp\n"));
    assert!(text.contains("partial: true\n"));
    assert!(dir.join("lps/complete_n6_l6_t3.lp").exists());
}

#[test]
fn probe_is_deterministic_across_jobs() {
    let dir = tempdir("probe-jobs");
    let args = [
        "probe", "cycles", "--n-min", "5", "--n-max", "8", "--l-min", "4", "--l-max", "8",
        "--t-max", "2",
    ];
    let single = run(&dir, &args);
    let mut with_jobs: Vec<&str> = args.to_vec();
    with_jobs.extend_from_slice(&["--jobs", "4"]);
    let parallel = run(&dir, &with_jobs);
    assert!(single.status.success() && parallel.status.success());
    assert_eq!(
        normalize(&stdout(&single)),
        normalize(&stdout(&parallel))
    );
    assert!(stdout(&single).contains("row: product cycle n=8 l=4 t=2 upper=4 method=solver proven=true\n"));
}

#[test]
fn tables_summary_is_clean() {
    let dir = tempdir("tables");
    let out = run(&dir, &["tables", "--jobs", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("cells_total: 32\n"));
    assert!(text.contains("cells_proven: 20\n"));
    assert!(text.contains("cells_validated: 12\n"));
    assert!(text.contains("cells_skipped: 0\n"));
    assert!(text.contains("cells_failed: 0\n"));
    assert!(text.ends_with("status: ok\n"));
}

#[test]
fn crosscheck_agrees_on_a_small_range() {
    let dir = tempdir("crosscheck");
    let out = run(&dir, &["crosscheck", "--l-max", "5", "--m-max", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("disagreements: 0\n"));
    assert!(text.ends_with("status: ok\n"));
}

#[test]
fn build_warns_on_non_canonical_caterpillars() {
    let dir = tempdir("warn");
    let out = run(&dir, &["build", "caterpillar", "3:0,2,1", "-o", "c.txt"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("warning: non-canonical"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempdir("usage");
    let out = run(&dir, &["build", "torus", "n=3", "-o", "t.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&dir, &["color", "product", "cycle", "n=9", "l=5", "t=2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("no registered coloring"), "{err}");
}
