//! `ksec`: k-sections of trees and tree-decomposed graphs.
//!
//! Exit codes: 0 success, 2 bad input, 3 internal invariant violated,
//! 4 resource guard tripped.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde_json::json;

use ksection::bounds::BoundReport;
use ksection::graph::{longest_path, relative_diameter, Graph, KSection};
use ksection::instances::{generate, GeneratorSpec};
use ksection::io::{parse_gr, parse_td, write_gr, write_td};
use ksection::ksection::{ksection_td_traced, ksection_tree_traced, recursive_bisection_baseline};
use ksection::labeling::{decompose_along_path, p_labeling};
use ksection::oracle::{brute_min_ksection_with, dp_min_size_cut_td_with, dp_min_size_cut_tree_with, Limits};
use ksection::report::{ksection_json, to_sorted_json, write_csv, RunRecord};
use ksection::td_cuts::td_p_labeling;
use ksection::treedec::{heaviest_path, make_nonredundant, validate, TreeDecomposition};
use ksection::Error;

#[derive(Parser)]
#[command(name = "ksec", version, about = "k-sections of bounded cut width")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// k-section of a tree given as a .gr file.
    Tree {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
        /// Also write the result as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also write a one-row CSV run record.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// k-section of a graph with a tree decomposition (.gr and .td files).
    Td {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Writes a generated instance to `<out>.gr` (and `<out>.td`).
    Gen {
        /// Generator spec as JSON, e.g. `{"family":"path","n":9}`.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs a benchmark suite and prints one CSV row per run.
    Bench(BenchArgs),
    /// Exact minimum cut of a given size, or exact minimum k-section.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Decomposition to run the decomposition DP on.
        #[arg(long)]
        td: Option<PathBuf>,
        /// Size of the black side.
        #[arg(short, conflicts_with = "k")]
        m: Option<usize>,
        /// Number of parts, by exhaustive search.
        #[arg(short, required_unless_present = "m")]
        k: Option<usize>,
    },
    /// Prints the path labeling of a tree (along a longest path) or of a
    /// decomposition (along a heaviest path) as JSON.
    Label {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// `adversarial`, `random-trees` or `partial-ktrees`.
    suite: String,
    #[arg(long)]
    seed: u64,
    /// Inclusive height range for `adversarial`, e.g. `4..7`.
    #[arg(long, default_value = "4..7")]
    heights: String,
    /// Inclusive size range for the random suites.
    #[arg(long, default_value = "50..2000")]
    n: String,
    /// Instances per random suite.
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Comma-separated part counts.
    #[arg(short, default_value = "4", value_delimiter = ',')]
    k: Vec<usize>,
    /// Degree cap of `random-trees`; each tree draws its cap from `3..=max`.
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    /// Maximum bag size of `partial-ktrees`.
    #[arg(long, default_value_t = 3)]
    t: usize,
    /// Add the recursive-bisection width (trees, k a power of two).
    #[arg(long)]
    baseline: bool,
    /// Add the exact minimum k-section width (small instances only).
    #[arg(long)]
    oracle: bool,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Internal(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            Error::WidthTooLarge { .. } | Error::TooLarge { .. } | Error::MemoryLimit { .. } => {
                Failure::Resource(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { .. } => Failure::Input(format!("{}: {e}", path.display())),
        e => e.into(),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_gr(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_td(path: &Path, g: &Graph) -> Result<TreeDecomposition, Failure> {
    let (td, n) = parse_td(&read(path)?).map_err(|e| in_file(path, e))?;
    if n != g.n() {
        return Err(Failure::Input(format!("{}: decomposition is for {n} vertices, graph has {}", path.display(), g.n())));
    }
    Ok(td)
}

fn instance_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn print_result(section: &KSection, report: &BoundReport, trace: &[String]) {
    let mut out = format!("n {}  k {}  max degree {}", report.n, report.k, report.max_degree);
    if let Some(d) = report.diam {
        out += &format!("  diam {d}");
    }
    if let (Some(r), Some(t)) = (&report.r, report.t) {
        out += &format!("  r {r}  t {t}");
    }
    println!("{out}");
    println!("width {}", section.width);
    if let Some(b) = report.bound_tree {
        println!("bound (k-1)(2+16n/diam)D = {b:.3}");
    }
    if let Some(b) = report.bound_tree_improved {
        println!("bound (k-1)(L^2+9L+18)D/2 = {b:.3}  (L = log2(n/diam))");
    }
    if let Some(b) = report.bound_td {
        println!("bound (k-1)tD(L^2+11L+24)/2 = {b:.3}  (L = log2(1/r))");
    }
    println!("within bounds {}", if report.within_bounds { "yes" } else { "NO" });
    if !trace.is_empty() {
        println!("cases {}", trace.join(" "));
    }
    for (i, part) in section.parts.iter().enumerate() {
        let ids: Vec<String> = part.iter().map(|v| (v + 1).to_string()).collect();
        println!("part {}: {}", i + 1, ids.join(" "));
    }
}

fn emit(
    section: &KSection,
    report: &BoundReport,
    trace: &[String],
    record: RunRecord,
    json: Option<&Path>,
    csv: Option<&Path>,
) -> CmdResult {
    print_result(section, report, trace);
    if let Some(path) = json {
        write(path, &(to_sorted_json(&ksection_json(section, report, trace)) + "\n"))?;
    }
    if let Some(path) = csv {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[record])?;
        write(path, &String::from_utf8_lossy(&buf))?;
    }
    if !report.within_bounds {
        return Err(Failure::Internal(format!("width {} exceeds a bound", section.width)));
    }
    Ok(())
}

fn cmd_tree(input: &Path, k: usize, json: Option<&Path>, csv: Option<&Path>) -> CmdResult {
    let tree = load_graph(input)?;
    let start = Instant::now();
    let (section, report, traces) = ksection_tree_traced(&tree, k)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let trace: Vec<String> = traces.iter().map(|t| format!("{:?}", t.case)).collect();
    let mut record = RunRecord::from_report(&instance_name(input), "file", &report, ms);
    record.rel_diam = Some(relative_diameter(&tree)?.to_string());
    emit(&section, &report, &trace, record, json, csv)
}

fn cmd_td(graph: &Path, td: &Path, k: usize, json: Option<&Path>, csv: Option<&Path>) -> CmdResult {
    let g = load_graph(graph)?;
    let td = load_td(td, &g)?;
    let start = Instant::now();
    let (section, report, traces) = ksection_td_traced(&g, &td, k)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let trace: Vec<String> = traces.iter().map(|t| format!("{:?}", t.case)).collect();
    let record = RunRecord::from_report(&instance_name(graph), "file", &report, ms);
    emit(&section, &report, &trace, record, json, csv)
}

fn cmd_gen(spec: &str, out: &Path) -> CmdResult {
    let spec: GeneratorSpec = serde_json::from_str(spec).map_err(|e| Failure::Input(format!("generator spec: {e}")))?;
    let inst = generate(&spec)?;
    let gr = out.with_extension("gr");
    write(&gr, &write_gr(&inst.graph))?;
    println!("wrote {}", gr.display());
    if let Some(td) = &inst.td {
        let path = out.with_extension("td");
        write(&path, &write_td(td, inst.graph.n()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Parses an inclusive range `a..b`; `a > b` is empty.
fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Input(format!("expected a range `a..b`, found `{text}`"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn uniform(rng: &mut Xoshiro256StarStar, lo: usize, hi: usize) -> usize {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

fn bench_tree(
    name: String,
    family: &str,
    tree: &Graph,
    args: &BenchArgs,
    limits: &Limits,
    records: &mut Vec<RunRecord>,
) -> CmdResult {
    let rel = relative_diameter(tree)?.to_string();
    for &k in &args.k {
        let start = Instant::now();
        let (_, report, _) = ksection_tree_traced(tree, k)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let mut record = RunRecord::from_report(&name, family, &report, ms);
        record.rel_diam = Some(rel.clone());
        if args.baseline && k.is_power_of_two() && k <= tree.n() {
            record.baseline_width = Some(recursive_bisection_baseline(tree, k)?.width);
        }
        if args.oracle {
            record.oracle_width = Some(brute_min_ksection_with(tree, k, limits)?.1);
        }
        records.push(record);
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> CmdResult {
    let limits = Limits::from_env();
    let mut rng = Xoshiro256StarStar::seed_from_u64(args.seed);
    let mut records = Vec::new();
    match args.suite.as_str() {
        "adversarial" => {
            let (lo, hi) = parse_range(&args.heights)?;
            for h in lo..=hi {
                let tree = generate(&GeneratorSpec::AdversarialTernaryPath { height: h })?.graph;
                bench_tree(format!("adversarial-h{h}"), "adversarial_ternary_path", &tree, args, &limits, &mut records)?;
            }
        }
        "random-trees" => {
            let (lo, hi) = parse_range(&args.n)?;
            if lo <= hi {
                for i in 0..args.count {
                    let n = uniform(&mut rng, lo, hi);
                    let max_degree = uniform(&mut rng, 3.min(args.max_degree), args.max_degree);
                    let seed = rng.next_u64();
                    let tree = generate(&GeneratorSpec::RandomTreeMaxdeg { n, max_degree, seed })?.graph;
                    bench_tree(format!("random-tree-{i}"), "random_tree_maxdeg", &tree, args, &limits, &mut records)?;
                }
            }
        }
        "partial-ktrees" => {
            let (lo, hi) = parse_range(&args.n)?;
            if lo <= hi {
                for i in 0..args.count {
                    let n = uniform(&mut rng, lo, hi);
                    let spec = GeneratorSpec::RandomPartialKtree { n, t: args.t, edge_prob: 0.7, seed: rng.next_u64() };
                    let inst = generate(&spec)?;
                    let td = inst.td.expect("decomposition");
                    for &k in &args.k {
                        let start = Instant::now();
                        let (_, report, _) = ksection_td_traced(&inst.graph, &td, k)?;
                        let ms = start.elapsed().as_secs_f64() * 1e3;
                        let mut record = RunRecord::from_report(&format!("partial-ktree-{i}"), spec.family(), &report, ms);
                        if args.oracle {
                            record.oracle_width = Some(brute_min_ksection_with(&inst.graph, k, &limits)?.1);
                        }
                        records.push(record);
                    }
                }
            }
        }
        other => {
            return Err(Failure::Input(format!(
                "unknown suite `{other}` (expected adversarial, random-trees or partial-ktrees)"
            )))
        }
    }
    let mut buf = Vec::new();
    write_csv(&mut buf, &records)?;
    match &args.out {
        Some(path) => write(path, &String::from_utf8_lossy(&buf))?,
        None => std::io::stdout().write_all(&buf).map_err(|e| Failure::Input(e.to_string()))?,
    }
    if let Some(r) = records.iter().find(|r| !r.within_bounds) {
        return Err(Failure::Internal(format!("{} (k = {}): width {} exceeds a bound", r.instance, r.k, r.width)));
    }
    Ok(())
}

fn cmd_oracle(input: &Path, td: Option<&Path>, m: Option<usize>, k: Option<usize>) -> CmdResult {
    let g = load_graph(input)?;
    let limits = Limits::from_env();
    let one_based = |vs: &[usize]| vs.iter().map(|v| v + 1).collect::<Vec<_>>();
    let value = match (m, k) {
        (Some(m), _) => {
            let (cut, width) = match td {
                Some(path) => dp_min_size_cut_td_with(&g, &load_td(path, &g)?, m, &limits)?,
                None => dp_min_size_cut_tree_with(&g, m, &limits)?,
            };
            json!({ "m": m, "width": width, "black": one_based(&cut.black), "white": one_based(&cut.white) })
        }
        (None, Some(k)) => {
            let (section, width) = brute_min_ksection_with(&g, k, &limits)?;
            let parts: Vec<Vec<usize>> = section.parts.iter().map(|p| one_based(p)).collect();
            json!({ "k": k, "width": width, "parts": parts })
        }
        (None, None) => return Err(Failure::Input("give -m or -k".into())),
    };
    println!("{}", to_sorted_json(&value));
    Ok(())
}

fn cmd_label(input: &Path, td: Option<&Path>) -> CmdResult {
    let g = load_graph(input)?;
    let one_based = |vs: &[usize]| vs.iter().map(|v| v + 1).collect::<Vec<_>>();
    let value = match td {
        None => {
            let path = longest_path(&g)?;
            let lab = p_labeling(&decompose_along_path(&g, &path)?);
            json!({
                "path": one_based(&path),
                "label_of": lab.label_of,
                "vertex_of": one_based(&lab.vertex_of),
            })
        }
        Some(td_path) => {
            let td = load_td(td_path, &g)?;
            validate(&td, &g)?;
            let td = make_nonredundant(&td);
            let path = heaviest_path(&td, g.n()).path;
            let lab = td_p_labeling(&td, g.n(), &path)?;
            let blocks = |sets: &[Vec<usize>]| sets.iter().map(|s| one_based(s)).collect::<Vec<_>>();
            json!({
                "path_nodes": one_based(&path),
                "label_of": lab.label_of,
                "vertex_of": one_based(&lab.vertex_of),
                "r": blocks(&lab.r),
                "s": blocks(&lab.s),
            })
        }
    };
    println!("{}", to_sorted_json(&value));
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Tree { input, k, json, csv } => cmd_tree(input, *k, json.as_deref(), csv.as_deref()),
        Command::Td { graph, td, k, json, csv } => cmd_td(graph, td, *k, json.as_deref(), csv.as_deref()),
        Command::Gen { spec, out } => cmd_gen(spec, out),
        Command::Bench(args) => cmd_bench(args),
        Command::Oracle { input, td, m, k } => cmd_oracle(input, td.as_deref(), *m, *k),
        Command::Label { input, td } => cmd_label(input, td.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(4)
        }
    }
}
