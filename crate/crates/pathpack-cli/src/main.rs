//! Command-line front end: builders, the exact solver, pattern colorings,
//! caterpillar recognition, ILP export, table reproduction and conjecture
//! probes. Reports are line-oriented `key: value` text with a final
//! `status:` line; the exit code is 0 exactly when no validation failure
//! or disagreement occurred (2 for usage errors).

mod spec;

use clap::{Parser, Subcommand};
use pathpack_core::caterpillar::{classify_chi_p, ClassifyOptions, Orientation};
use pathpack_core::constructions::{tree_to_caterpillar_spec, BaseKind, ProductSpec};
use pathpack_core::graph::{all_pairs_distances, DistanceMatrix, Graph};
use pathpack_core::ilp::{build_model, write_lp};
use pathpack_core::io::{read_coloring, read_graph, write_coloring, write_graph};
use pathpack_core::packing::{exact_chi_p, lower_bound, validate, SolveOptions, SolveOutcome};
use pathpack_core::patterns::{chi_p_upper_for_graph, color_by_theorem, UpperMethod};
use pathpack_core::tables::{check_cell, CellStatus, TABLE_CELLS};
use spec::{parse_build_spec, parse_caterpillar, BuildSpec};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "pathpack",
    version,
    about = "packing colorings of path-aligned products and caterpillars",
    disable_help_subcommand = true
)]
struct Cli {
    /// Reserved for future randomized features; every command is
    /// deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a spec string and write it as an edge list
    Build {
        /// e.g. `product cycle n=4 l=2 t=5`, `caterpillar 3:5,2,1`,
        /// `corona path:5 p=2`, `path:7`
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compute the packing chromatic number of a graph file
    Solve {
        graph: PathBuf,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long, default_value_t = 50_000_000)]
        node_limit: u64,
        /// write the witness coloring here
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Emit the registered pattern coloring for a product spec
    Color {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file against a graph file
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Classify a caterpillar (spec string or tree edge-list file)
    Recognize {
        /// `caterpillar l:m1,...,ml` or a path to a tree file
        #[arg(required = true, num_args = 1..)]
        input: Vec<String>,
        /// write the certificate coloring here when the class is <= 3
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Export the packing-coloring integer program in LP format
    Ilp {
        graph: PathBuf,
        /// color budget; defaults to the best upper bound found
        #[arg(long)]
        k: Option<u32>,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value_t = 5_000_000)]
        node_limit: u64,
    },
    /// Re-derive both summary tables: solver for equality cells, pattern
    /// validation for bound cells
    Tables {
        #[arg(long, default_value_t = 20_000_000)]
        node_limit: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Collect upper-bound evidence for the open conjectures
    Probe {
        /// `cycles` (overlap >= 4) or `k6`
        family: String,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        l_min: Option<usize>,
        #[arg(long)]
        l_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        t_min: usize,
        #[arg(long, default_value_t = 4)]
        t_max: usize,
        #[arg(long, default_value_t = 5_000_000)]
        node_limit: u64,
        /// solver is skipped above this size; such rows go to LP export
        #[arg(long, default_value_t = 40)]
        max_vertices: usize,
        /// write LP files for instances beyond solver reach
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exhaustively compare recognizer and solver on small caterpillars
    Crosscheck {
        #[arg(long, default_value_t = 7)]
        l_max: usize,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        #[arg(long, default_value_t = 20_000_000)]
        node_limit: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn kv(key: &str, value: impl std::fmt::Display) {
    println!("{key}: {value}");
}

fn load_graph(path: &PathBuf) -> Result<(Graph, DistanceMatrix), String> {
    let g = read_graph(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let dm = all_pairs_distances(&g).map_err(|e| e.to_string())?;
    Ok((g, dm))
}

/// Applies `f` to every item on `jobs` workers, returning results in input
/// order whatever the completion order.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.max(1).min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("worker filled every slot"))
        .collect()
}

fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Build { spec, out } => cmd_build(&spec, &out),
        Command::Solve {
            graph,
            k_max,
            node_limit,
            out,
        } => cmd_solve(&graph, k_max, node_limit, out.as_ref()),
        Command::Color { spec, out } => cmd_color(&spec, out.as_ref()),
        Command::Verify { graph, coloring } => cmd_verify(&graph, &coloring),
        Command::Recognize { input, out } => cmd_recognize(&input, out.as_ref()),
        Command::Ilp {
            graph,
            k,
            out,
            node_limit,
        } => cmd_ilp(&graph, k, &out, node_limit),
        Command::Tables { node_limit, jobs } => cmd_tables(node_limit, jobs),
        Command::Probe {
            family,
            n_min,
            n_max,
            l_min,
            l_max,
            t_min,
            t_max,
            node_limit,
            max_vertices,
            out_dir,
            jobs,
        } => cmd_probe(ProbeArgs {
            family,
            n_min,
            n_max,
            l_min,
            l_max,
            t_min,
            t_max,
            node_limit,
            max_vertices,
            out_dir,
            jobs,
        }),
        Command::Crosscheck {
            l_max,
            m_max,
            node_limit,
        } => cmd_crosscheck(l_max, m_max, node_limit),
    }
}

fn cmd_build(tokens: &[String], out: &PathBuf) -> Result<bool, String> {
    let spec = parse_build_spec(tokens)?;
    let g = spec.build()?;
    write_graph(&g, out).map_err(|e| e.to_string())?;
    kv("command", "build");
    kv("spec", spec.describe());
    kv("vertices", g.vertex_count());
    kv("edges", g.edge_count());
    if let BuildSpec::Caterpillar(c) = &spec {
        if !c.has_canonical_endpoints() {
            kv(
                "warning",
                "non-canonical spec: the recognizer expects leaves at both backbone ends",
            );
        }
    }
    kv("out", out.display());
    kv("status", "ok");
    Ok(true)
}

fn cmd_solve(
    path: &PathBuf,
    k_max: Option<u32>,
    node_limit: u64,
    out: Option<&PathBuf>,
) -> Result<bool, String> {
    let (g, dm) = load_graph(path)?;
    let start = Instant::now();
    let outcome = exact_chi_p(&g, &dm, SolveOptions { k_max, node_limit });
    let wall = start.elapsed();
    kv("command", "solve");
    kv("input", path.display());
    kv("vertices", g.vertex_count());
    kv("edges", g.edge_count());
    kv("diameter", dm.diameter());
    kv("lower_bound", lower_bound(&g, &dm));
    match &outcome {
        SolveOutcome::Solved(r) => {
            kv("chi_p", r.chi_p);
            kv("proven_optimal", "true");
        }
        SolveOutcome::LimitHit { upper, .. } => {
            kv("upper_bound", upper);
            kv("proven_optimal", "false");
        }
        SolveOutcome::ExceededKMax { k_max, upper, .. } => {
            kv("k_max_exhausted", k_max);
            kv("upper_bound", upper);
            kv("proven_optimal", "false");
        }
    }
    kv("nodes_expanded", outcome.nodes_expanded());
    if let Some(out) = out {
        write_coloring(outcome.witness(), out).map_err(|e| e.to_string())?;
        kv("witness", out.display());
    }
    kv("wall_ms", wall.as_millis());
    kv(
        "status",
        match &outcome {
            SolveOutcome::Solved(_) => "ok",
            SolveOutcome::LimitHit { .. } => "limit",
            SolveOutcome::ExceededKMax { .. } => "k-max",
        },
    );
    Ok(true)
}

fn cmd_color(tokens: &[String], out: Option<&PathBuf>) -> Result<bool, String> {
    let spec = parse_build_spec(tokens)?;
    let BuildSpec::Product(product) = spec else {
        return Err("color needs a product spec".into());
    };
    let tc = color_by_theorem(&product).map_err(|e| e.to_string())?;
    kv("command", "color");
    kv("spec", product.describe());
    kv("entry", tc.entry_name);
    if let Some(via) = &tc.via {
        kv("via", via.describe());
    }
    kv("claimed_bound", tc.claimed_bound);
    kv("exact", tc.exact);
    kv("k_used", tc.coloring.k_used());
    kv(
        "blocks",
        if tc.trace.is_empty() {
            "(base cycle coloring)".to_string()
        } else {
            tc.trace.join(" ")
        },
    );
    if let Some(out) = out {
        write_coloring(&tc.coloring, out).map_err(|e| e.to_string())?;
        kv("out", out.display());
    }
    kv("status", "ok");
    Ok(true)
}

fn cmd_verify(graph: &PathBuf, coloring: &PathBuf) -> Result<bool, String> {
    let (g, dm) = load_graph(graph)?;
    let c = read_coloring(coloring, g.vertex_count())
        .map_err(|e| format!("{}: {e}", coloring.display()))?;
    let violations = validate(&dm, &c).map_err(|e| e.to_string())?;
    kv("command", "verify");
    kv("graph", graph.display());
    kv("coloring", coloring.display());
    kv("vertices", g.vertex_count());
    kv("k_used", c.k_used());
    kv("violations", violations.len());
    for v in &violations {
        kv(
            "violation",
            format!(
                "vertices {} and {} share color {} at distance {}",
                v.u + 1,
                v.v + 1,
                v.color,
                v.dist
            ),
        );
    }
    let ok = violations.is_empty();
    kv("status", if ok { "ok" } else { "fail" });
    Ok(ok)
}

fn cmd_recognize(input: &[String], out: Option<&PathBuf>) -> Result<bool, String> {
    let (description, spec) = if input[0] == "caterpillar" {
        if input.len() != 2 {
            return Err("usage: recognize caterpillar l:m1,...,ml".into());
        }
        let parsed = parse_caterpillar(&input[1])?;
        (format!("caterpillar {}", input[1]), parsed)
    } else {
        if input.len() != 1 {
            return Err("usage: recognize <tree-file>".into());
        }
        let path = PathBuf::from(&input[0]);
        let g = read_graph(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let spec = tree_to_caterpillar_spec(&g).map_err(|e| e.to_string())?;
        (input[0].clone(), spec)
    };
    kv("command", "recognize");
    kv("input", &description);
    // orientation is normalized here; specs with a bare backbone end are
    // rebuilt from the graph so the backbone is the true pendant-free path
    let spec = if spec.has_canonical_endpoints() {
        spec.canonicalized()
    } else {
        let g = pathpack_core::constructions::caterpillar(&spec);
        tree_to_caterpillar_spec(&g).map_err(|e| e.to_string())?
    };
    kv("canonical", spec.describe());
    let class = classify_chi_p(&spec, ClassifyOptions::default()).map_err(|e| e.to_string())?;
    kv("chi_p_class", class.value.as_str());
    if !class.matches.is_empty() {
        let families: Vec<String> = class
            .matches
            .iter()
            .map(|m| {
                format!(
                    "{}(k={},{})",
                    m.family.name(),
                    m.k,
                    match m.orientation {
                        Orientation::Forward => "forward",
                        Orientation::Reversed => "reversed",
                    }
                )
            })
            .collect();
        kv("families", families.join(" "));
    }
    if let Some(upper) = class.upper_bound_note {
        kv("upper_bound", upper);
    }
    if let Some(exact) = class.exact {
        kv("exact", exact);
    }
    if let Some(cert) = &class.certificate {
        kv("certificate_k", cert.k_used());
        if let Some(out) = out {
            write_coloring(cert, out).map_err(|e| e.to_string())?;
            kv("certificate", out.display());
        }
    }
    kv("status", "ok");
    Ok(true)
}

fn cmd_ilp(
    graph: &PathBuf,
    k: Option<u32>,
    out: &PathBuf,
    node_limit: u64,
) -> Result<bool, String> {
    let (g, dm) = load_graph(graph)?;
    let (k, k_source) = match k {
        Some(k) => (k, "flag"),
        None => {
            let (upper, _, method) = chi_p_upper_for_graph(
                &g,
                &dm,
                SolveOptions {
                    k_max: None,
                    node_limit,
                },
            );
            (
                upper,
                match method {
                    UpperMethod::SolverExact => "solver-exact",
                    _ => "solver-upper-bound",
                },
            )
        }
    };
    let model = build_model(&dm, k).map_err(|e| e.to_string())?;
    write_lp(&model, out).map_err(|e| e.to_string())?;
    kv("command", "ilp");
    kv("graph", graph.display());
    kv("k", k);
    kv("k_source", k_source);
    kv("variables", model.variable_count());
    kv("constraints_assignment", model.assignment_constraint_count());
    kv("constraints_separation", model.separation_constraint_count());
    kv("constraints_bound", model.bound_constraint_count());
    kv("out", out.display());
    kv("status", "ok");
    Ok(true)
}

fn cmd_tables(node_limit: u64, jobs: usize) -> Result<bool, String> {
    let start = Instant::now();
    kv("command", "tables");
    kv("node_limit", node_limit);
    let reports = parallel_map(TABLE_CELLS, jobs, |cell| check_cell(cell, node_limit));
    let mut proven = 0;
    let mut validated = 0;
    let mut skipped = 0;
    let mut failed = 0;
    for report in &reports {
        let mut line = format!(
            "{} -> {} ({} instances)",
            report.cell.describe(),
            report.status.as_str(),
            report.instances
        );
        if let Some(detail) = &report.detail {
            line.push_str(&format!(" [{detail}]"));
        }
        kv("cell", line);
        match report.status {
            CellStatus::Proven => proven += 1,
            CellStatus::Validated => validated += 1,
            CellStatus::Skipped => skipped += 1,
            CellStatus::Failed => failed += 1,
        }
    }
    kv("cells_total", reports.len());
    kv("cells_proven", proven);
    kv("cells_validated", validated);
    kv("cells_skipped", skipped);
    kv("cells_failed", failed);
    kv("wall_ms", start.elapsed().as_millis());
    kv("status", if failed == 0 { "ok" } else { "fail" });
    Ok(failed == 0)
}

struct ProbeArgs {
    family: String,
    n_min: Option<usize>,
    n_max: Option<usize>,
    l_min: Option<usize>,
    l_max: Option<usize>,
    t_min: usize,
    t_max: usize,
    node_limit: u64,
    max_vertices: usize,
    out_dir: Option<PathBuf>,
    jobs: usize,
}

enum ProbeOutcome {
    Pattern { upper: u32, exact: bool },
    Solver { upper: u32, proven: bool },
    Ilp { path: Option<PathBuf> },
}

fn cmd_probe(args: ProbeArgs) -> Result<bool, String> {
    let start = Instant::now();
    let (kind, n_default, l_default, reference): (BaseKind, (usize, usize), (usize, usize), u32) =
        match args.family.as_str() {
            "k6" => (BaseKind::Complete, (6, 6), (2, 6), 22),
            "cycles" => (BaseKind::Cycle, (3, 9), (4, 9), 5),
            other => return Err(format!("unknown probe family '{other}' (use cycles or k6)")),
        };
    let n_range = (
        args.n_min.unwrap_or(n_default.0),
        args.n_max.unwrap_or(n_default.1),
    );
    let l_range = (
        args.l_min.unwrap_or(l_default.0),
        args.l_max.unwrap_or(l_default.1),
    );
    let mut specs = Vec::new();
    for n in n_range.0..=n_range.1 {
        for l in l_range.0..=l_range.1.min(n) {
            for t in args.t_min..=args.t_max {
                if let Ok(spec) = ProductSpec::new(kind, n, l, t) {
                    specs.push(spec);
                }
            }
        }
    }
    kv("command", "probe");
    kv("family", &args.family);
    kv("reference_bound", reference);
    kv("instances", specs.len());
    let outcomes = parallel_map(&specs, args.jobs, |spec| -> Result<ProbeOutcome, String> {
        if let Ok(tc) = color_by_theorem(spec) {
            return Ok(ProbeOutcome::Pattern {
                upper: tc.coloring.k_used(),
                exact: tc.exact,
            });
        }
        let g = pathpack_core::constructions::path_aligned_product(spec);
        if g.vertex_count() > args.max_vertices {
            let path = match &args.out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                    let dm = all_pairs_distances(&g).map_err(|e| e.to_string())?;
                    let model = build_model(&dm, reference).map_err(|e| e.to_string())?;
                    let path = dir.join(format!(
                        "{}_n{}_l{}_t{}.lp",
                        spec.base_kind.name(),
                        spec.base_size,
                        spec.overlap,
                        spec.copies
                    ));
                    write_lp(&model, &path).map_err(|e| e.to_string())?;
                    Some(path)
                }
                None => None,
            };
            return Ok(ProbeOutcome::Ilp { path });
        }
        let dm = all_pairs_distances(&g).map_err(|e| e.to_string())?;
        let outcome = exact_chi_p(
            &g,
            &dm,
            SolveOptions {
                k_max: None,
                node_limit: args.node_limit,
            },
        );
        Ok(ProbeOutcome::Solver {
            upper: outcome.upper(),
            proven: outcome.solved().is_some(),
        })
    });
    let mut partial = false;
    for (spec, outcome) in specs.iter().zip(outcomes) {
        let outcome = outcome?;
        let line = match outcome {
            ProbeOutcome::Pattern { upper, exact } => {
                format!(
                    "{} upper={} method=pattern proven={}",
                    spec.describe(),
                    upper,
                    exact
                )
            }
            ProbeOutcome::Solver { upper, proven } => {
                if !proven {
                    partial = true;
                }
                format!(
                    "{} upper={} method={} proven={}",
                    spec.describe(),
                    upper,
                    if proven { "solver" } else { "solver-limit" },
                    proven
                )
            }
            ProbeOutcome::Ilp { path } => {
                partial = true;
                match path {
                    Some(p) => {
                        format!("{} method=ilp-export out={}", spec.describe(), p.display())
                    }
                    None => format!(
                        "{} method=ilp-export (pass --out-dir to write the model)",
                        spec.describe()
                    ),
                }
            }
        };
        kv("row", line);
    }
    kv("partial", partial);
    kv("wall_ms", start.elapsed().as_millis());
    kv("status", "ok");
    Ok(true)
}

fn cmd_crosscheck(l_max: usize, m_max: usize, node_limit: u64) -> Result<bool, String> {
    let start = Instant::now();
    let report = pathpack_core::caterpillar::enumerate_and_crosscheck(
        l_max,
        m_max,
        ClassifyOptions {
            solver_vertex_budget: 0,
            node_limit,
        },
    );
    kv("command", "crosscheck");
    kv("l_max", l_max);
    kv("m_max", m_max);
    kv("specs", report.specs_checked);
    kv("disagreements", report.disagreements.len());
    for d in &report.disagreements {
        kv("disagreement", d);
    }
    kv("partial", report.partial);
    kv("wall_ms", start.elapsed().as_millis());
    let ok = report.disagreements.is_empty();
    kv("status", if ok { "ok" } else { "fail" });
    Ok(ok)
}
