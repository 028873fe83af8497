use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ppcolor::bounds::{
    k_factor, min_feasible_exponent, p_a_bound, p_b_bound, region_csv, region_scan, FeasibilityChecker, Order,
};
use ppcolor::coding::{
    code_from_lengths, entropy, expected_length, kraft_sum, relative_entropy, shannon_lengths, Distribution,
};
use ppcolor::config::SearchConfig;
use ppcolor::dyck::{count_words, DescentSet};
use ppcolor::ecrun::{
    project_record, random_ksat_instance, reconstruct_acyclic, reconstruct_generic, run_acyclic, run_generic, Graph,
    RandomTape, RecordTable, Status,
};
use ppcolor::genfun::{series_coefficients, solve_tau_gamma, table_31};
use ppcolor::legit::{
    brute_force_search, find_bad_pairs, randomized_search, PointColoring, RandomOutcome, SearchOutcome,
};
use ppcolor::lll::{cluster_check, spencer_check, symmetric_check, thresholds, CheckMode, DependencyGraph};
use ppcolor::plane::{build_plane, verify_axioms, ProjectivePlane};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Relative `--out` paths are resolved against this directory when set.
const OUT_DIR_VAR: &str = "PPCOLOR_OUT_DIR";

#[derive(Parser)]
#[command(name = "ppcolor", version, about = "Projective-plane colorings, LLL criteria and entropy compression")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main table or payload here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Plane(PlaneCmd),
    #[command(subcommand)]
    Legit(LegitCmd),
    #[command(subcommand)]
    Bounds(BoundsCmd),
    #[command(subcommand)]
    Lll(LllCmd),
    #[command(subcommand)]
    Dyck(DyckCmd),
    #[command(subcommand)]
    Genfun(GenfunCmd),
    #[command(subcommand)]
    Ec(EcCmd),
    #[command(subcommand)]
    Coding(CodingCmd),
}

#[derive(Subcommand)]
enum PlaneCmd {
    /// Build the plane of prime order `q`; `--out` receives the incidence CSV.
    Build {
        q: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Check the axioms of an incidence matrix given as CSV or JSON.
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum LegitCmd {
    /// Look for a legitimate coloring of the plane of order `q`.
    Search {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = 1 << 24, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Draw random colorings instead of enumerating.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Pairs of lines with equal type, as CSV `line_i,line_j`.
    BadPairs {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c: u32,
        /// JSON array of colors, `0` for uncolored.
        coloring: PathBuf,
    },
}

#[derive(Args)]
struct ConfigArg {
    /// TOML search configuration.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ConfigArg {
    fn load(&self) -> Result<SearchConfig> {
        match &self.config {
            Some(path) => Ok(SearchConfig::from_toml(&read(path)?)?),
            None => Ok(SearchConfig::default()),
        }
    }
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Feasibility over colors `c_min..=c_max` and the configured exponent grid, as CSV.
    Region {
        #[arg(long, default_value_t = 8)]
        c_min: u32,
        #[arg(long, default_value_t = 42)]
        c_max: u32,
        #[command(flatten)]
        cfg: ConfigArg,
    },
    /// Smallest decimal exponent from which `c` colors are feasible.
    MinOrder {
        #[arg(long)]
        c: u32,
        #[command(flatten)]
        cfg: ConfigArg,
    },
    /// `log10` of K, P_a and P_b at `n = 10^exp`.
    Eval {
        #[arg(long)]
        exp: f64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
}

#[derive(Subcommand)]
enum LllCmd {
    /// Run a criterion on a dependency graph in JSON.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Criterion::Cluster)]
        criterion: Criterion,
        /// Comma-separated `μ` for the cluster criterion; defaults to `r/(1 − r)` from the weights.
        #[arg(long, value_delimiter = ',')]
        mu: Vec<f64>,
    },
    /// Constants of the application thresholds.
    Thresholds,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Criterion {
    Symmetric,
    Spencer,
    Cluster,
}

#[derive(Subcommand)]
enum DyckCmd {
    /// Number of words with `t` zeros, `t − r` ones and descents in `E`.
    Count {
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long = "E", default_value = "all")]
        e: DescentSet,
    },
}

#[derive(Subcommand)]
enum GenfunCmd {
    /// Girth table as CSV `g,e_start,tau,gamma`.
    Table31,
    /// First `n + 1` coefficients of the descent series.
    Coeffs {
        #[arg(long = "E")]
        e: DescentSet,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Critical point `τ` and `γ = φ'(τ)`.
    Taugamma {
        #[arg(long = "E")]
        e: DescentSet,
    },
}

#[derive(Subcommand)]
enum EcCmd {
    /// Acyclic edge coloring of a graph; `--out` receives the trace dump.
    RunAcyclic {
        /// Graph as JSON `{n, edges}`; the cube when omitted.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Palette size; `4(Δ − 1)` when omitted.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
    },
    /// Random k-SAT through the variable framework; `--out` receives the trace dump.
    RunSat {
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        max_meets: usize,
        #[arg(long, default_value_t = 60)]
        clauses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
    },
    /// Run and reconstruct many random instances of both runners.
    Roundtrip {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CodingCmd {
    /// Entropy of `--p`, and `D(p‖q)` when `--q` is given.
    Entropy {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
        #[arg(long, default_value_t = 2.0)]
        base: f64,
    },
    /// Exact Kraft sum of the lengths.
    Kraft {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<u32>,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Canonical prefix code from `--lengths`, or a Shannon code from `--p`.
    Code {
        #[arg(long, value_delimiter = ',', conflicts_with = "p")]
        lengths: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
}

struct Output {
    json: bool,
    out: Option<PathBuf>,
}

impl Output {
    fn target(&self) -> Option<PathBuf> {
        let path = self.out.as_ref()?;
        match std::env::var_os(OUT_DIR_VAR) {
            Some(dir) if path.is_relative() => Some(Path::new(&dir).join(path)),
            _ => Some(path.clone()),
        }
    }

    /// Sends `payload` to `--out` when given, else prints it.
    fn emit(&self, payload: &str) -> Result<()> {
        match self.target() {
            Some(path) => {
                if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                }
                std::fs::write(&path, payload).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                print!("{payload}");
                if !payload.ends_with('\n') {
                    println!();
                }
                Ok(())
            }
        }
    }

    /// Text mode prints `text`; JSON mode prints `value`.
    fn report(&self, text: &str, value: serde_json::Value) -> Result<()> {
        if self.json {
            self.emit(&value.to_string())
        } else {
            self.emit(text)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = Output { json: cli.json, out: cli.out };
    match dispatch(cli.command, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// `Ok(false)` reports a negative verdict that is not an error.
fn dispatch(command: Command, out: &Output) -> Result<bool> {
    match command {
        Command::Plane(cmd) => plane(cmd, out),
        Command::Legit(cmd) => legit(cmd, out),
        Command::Bounds(cmd) => bounds(cmd, out),
        Command::Lll(cmd) => lll(cmd, out),
        Command::Dyck(DyckCmd::Count { t, r, e }) => {
            let n = count_words(t, r, &e)?;
            out.report(&n.to_string(), json!({ "t": t, "r": r, "E": e.to_string(), "count": n.to_string() }))?;
            Ok(true)
        }
        Command::Genfun(cmd) => genfun(cmd, out),
        Command::Ec(cmd) => ec(cmd, out),
        Command::Coding(cmd) => coding(cmd, out),
    }
}

fn plane(cmd: PlaneCmd, out: &Output) -> Result<bool> {
    let (plane, check) = match cmd {
        PlaneCmd::Build { q, verify } => (build_plane(q)?, verify),
        PlaneCmd::Verify { file } => {
            let text = read(&file)?;
            let plane = if text.trim_start().starts_with('{') {
                ProjectivePlane::from_json(&text)?
            } else {
                ProjectivePlane::from_csv(&text)?
            };
            (plane, true)
        }
    };
    let report = check.then(|| verify_axioms(&plane));
    let pass = report.as_ref().is_none_or(|r| r.all_pass());
    let summary = format!("{} points, {} lines", plane.num_points(), plane.num_lines());
    if out.json {
        let mut value = json!({ "plane": plane.to_record() });
        if let Some(r) = &report {
            value["axioms"] = serde_json::to_value(r)?;
            value["pass"] = json!(pass);
        }
        out.emit(&value.to_string())?;
    } else {
        println!("{summary}");
        if let Some(r) = &report {
            println!("axioms: {}", if pass { "pass" } else { "FAIL" });
            if !pass {
                println!("{r:?}");
            }
        }
        if out.out.is_some() {
            out.emit(&plane.to_csv())?;
        }
    }
    Ok(pass)
}

fn legit(cmd: LegitCmd, out: &Output) -> Result<bool> {
    match cmd {
        LegitCmd::Search { q, c, budget, random, seed } => {
            let plane = build_plane(q)?;
            let found = if random {
                match randomized_search(&plane, c, seed, budget)? {
                    RandomOutcome::Found { coloring, .. } => Some(coloring),
                    RandomOutcome::GaveUp { .. } => None,
                }
            } else {
                match brute_force_search(&plane, c, budget)? {
                    SearchOutcome::Found(coloring) => Some(coloring),
                    SearchOutcome::Exhausted => None,
                }
            };
            match &found {
                Some(col) if out.json => out.emit(&json!({ "found": true, "coloring": col.colors().iter().map(|x| x.unwrap_or(0)).collect::<Vec<_>>() }).to_string())?,
                Some(col) => out.emit(&col.to_json())?,
                None if random => out.report("none found", json!({ "found": false }))?,
                None => out.report("none exists", json!({ "found": false, "exhausted": true }))?,
            }
            Ok(true)
        }
        LegitCmd::BadPairs { q, c, coloring } => {
            let plane = build_plane(q)?;
            let col = PointColoring::from_json(&read(&coloring)?, c)?;
            let pairs = find_bad_pairs(&plane, &col)?;
            if out.json {
                out.emit(&serde_json::to_string(&pairs)?)?;
            } else {
                let mut text = String::from("line_i,line_j\n");
                for (i, j) in &pairs {
                    writeln!(text, "{i},{j}")?;
                }
                out.emit(&text)?;
            }
            Ok(true)
        }
    }
}

fn bounds(cmd: BoundsCmd, out: &Output) -> Result<bool> {
    match cmd {
        BoundsCmd::Region { c_min, c_max, cfg } => {
            if c_min > c_max {
                bail!("empty color range {c_min}..={c_max}");
            }
            let cfg = cfg.load()?;
            let grid = cfg.grid();
            let rows = region_scan(&FeasibilityChecker::new(cfg), c_min, c_max, &grid);
            if out.json {
                out.emit(&serde_json::to_string(&rows)?)?;
            } else {
                out.emit(&region_csv(&rows))?;
            }
            Ok(true)
        }
        BoundsCmd::MinOrder { c, cfg } => {
            let cfg = cfg.load()?;
            let (lo, hi) = (cfg.exp_lo, cfg.exp_hi);
            let e = min_feasible_exponent(&FeasibilityChecker::new(cfg), c, lo, hi)?;
            out.report(&format!("{e:.1}"), json!({ "c": c, "min_exponent": e }))?;
            Ok(true)
        }
        BoundsCmd::Eval { exp, d, a, b } => {
            let n = Order::from_exp10(exp);
            let (k, pa, pb) = (k_factor(n, d)?, p_a_bound(n, d, a)?, p_b_bound(n, d, b)?);
            let text = format!(
                "log10 K = {:.6}\nlog10 P_a = {:.6}\nlog10 P_b = {:.6}",
                k.log10mag(),
                pa.log10mag(),
                pb.log10mag()
            );
            let value = json!({
                "exp": exp, "d": d, "a": a, "b": b,
                "log10_K": k.log10mag(), "log10_Pa": pa.log10mag(), "log10_Pb": pb.log10mag(),
            });
            out.report(&text, value)?;
            Ok(true)
        }
    }
}

fn lll(cmd: LllCmd, out: &Output) -> Result<bool> {
    match cmd {
        LllCmd::Thresholds => {
            let t = thresholds();
            let text = format!(
                "independent transversal {:.6}\nlatin transversal {:.6}\nacyclic edge {:.6}\nsymmetric 2e {}\nsymmetric 4e {}",
                t.independent_transversal.value, t.latin_transversal.value, t.acyclic_edge.value, t.symmetric_2e, t.symmetric_4e
            );
            out.report(&text, serde_json::to_value(t)?)?;
            Ok(true)
        }
        LllCmd::Check { file, criterion, mu } => {
            let g = DependencyGraph::from_json(&read(&file)?)?;
            match criterion {
                Criterion::Symmetric => {
                    let p = g.probabilities().iter().copied().fold(0.0, f64::max);
                    let ok = symmetric_check(p, g.max_degree() as u64)?;
                    out.report(
                        &format!("symmetric: {}", if ok { "holds" } else { "fails" }),
                        json!({ "ok": ok, "p": p, "delta": g.max_degree() }),
                    )?;
                    Ok(ok)
                }
                Criterion::Spencer | Criterion::Cluster => {
                    let rep = if matches!(criterion, Criterion::Spencer) {
                        spencer_check(&g)?
                    } else {
                        let mu = if mu.is_empty() {
                            let r = g.weights().context("cluster check needs --mu or graph weights")?;
                            r.iter().map(|r| r / (1.0 - r)).collect()
                        } else {
                            mu
                        };
                        cluster_check(&g, &mu, &CheckMode::Exact)?
                    };
                    let text = format!(
                        "{}: {}, worst slack {:.6e}{}",
                        if matches!(criterion, Criterion::Spencer) { "spencer" } else { "cluster" },
                        if rep.ok { "holds" } else { "fails" },
                        rep.worst_slack,
                        rep.failing.map(|x| format!(" (first failing vertex {x})")).unwrap_or_default()
                    );
                    out.report(&text, serde_json::to_value(&rep)?)?;
                    Ok(rep.ok)
                }
            }
        }
    }
}

fn genfun(cmd: GenfunCmd, out: &Output) -> Result<bool> {
    match cmd {
        GenfunCmd::Table31 => {
            let rows = table_31()?;
            if out.json {
                out.emit(&serde_json::to_string(&rows)?)?;
            } else {
                let mut text = String::from("g,e_start,tau,gamma\n");
                for r in &rows {
                    writeln!(text, "{},{},{:.6},{:.6}", r.g, r.e_start, r.tau, r.gamma)?;
                }
                out.emit(&text)?;
            }
        }
        GenfunCmd::Coeffs { e, n } => {
            let coeffs: Vec<String> = series_coefficients(&e, n)?.iter().map(ToString::to_string).collect();
            out.report(&coeffs.join("\n"), json!({ "E": e.to_string(), "coefficients": coeffs }))?;
        }
        GenfunCmd::Taugamma { e } => {
            let tg = solve_tau_gamma(&e)?;
            out.report(&format!("tau = {:.10}\ngamma = {:.10}", tg.tau, tg.gamma), serde_json::to_value(tg)?)?;
        }
    }
    Ok(true)
}

fn ec(cmd: EcCmd, out: &Output) -> Result<bool> {
    match cmd {
        EcCmd::RunAcyclic { graph, k, seed, max_steps } => {
            let g = match graph {
                Some(path) => Graph::from_json(&read(&path)?)?,
                None => Graph::cube(),
            };
            let delta = g.max_degree() as u32;
            if delta < 2 {
                bail!("maximum degree {delta} is below 2");
            }
            let k = k.unwrap_or(4 * (delta - 1));
            let range = k.checked_sub(2 * (delta - 1)).filter(|&r| r > 0).context("palette too small")?;
            let mut tape = RandomTape::from_seed(seed, max_steps as usize, range);
            let run = run_acyclic(&g, k, &mut tape, max_steps as usize)?;
            let projection = project_record(&run.record, &RecordTable::Acyclic { delta })?;
            let fixes = run.record.iter().filter(|e| **e != ppcolor::ecrun::RecordEntry::Empty).count();
            let summary = json!({
                "status": run.status, "steps": run.record.len(), "cycle_fixes": fixes,
                "colors": run.colors.iter().map(|c| c.unwrap_or(0)).collect::<Vec<_>>(),
                "r_circle": projection.r_circle,
            });
            finish_run(out, &run.dump().to_json(), summary, run.status)
        }
        EcCmd::RunSat { n, k, max_meets, clauses, seed, max_steps } => {
            let ks = random_ksat_instance(n, k, max_meets, clauses, seed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let streams: Vec<Vec<u32>> =
                (0..n).map(|_| (0..max_steps.min(10_000)).map(|_| rng.gen_range(1..=2)).collect()).collect();
            let run = run_generic(&ks.instance, &streams, max_steps as usize)?;
            let table = RecordTable::Generic { d: ks.instance.d_table(), m: ks.instance.m_max() };
            let projection = project_record(&run.record, &table)?;
            let summary = json!({
                "status": run.status, "clauses": ks.clauses.len(), "steps": run.steps.len(),
                "resamplings": run.record.iter().filter(|e| **e != ppcolor::ecrun::RecordEntry::Empty).count(),
                "r_circle": projection.r_circle,
            });
            finish_run(out, &run.dump().to_json(), summary, run.status)
        }
        EcCmd::Roundtrip { runs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut exact, mut successes) = (0u64, 0u64);
            for _ in 0..runs {
                let n = rng.gen_range(4..=12);
                let g = Graph::random(n, rng.gen_range(2..=4), rng.gen_range(0.3..0.9), &mut rng);
                let delta = g.max_degree() as u32;
                if delta < 2 {
                    exact += 1;
                    continue;
                }
                let mut tape = RandomTape::from_seed(rng.gen(), 30 * g.num_edges(), 2 * (delta - 1));
                let run = run_acyclic(&g, 4 * (delta - 1), &mut tape, 100 * g.num_edges())?;
                if reconstruct_acyclic(&g, 4 * (delta - 1), &run.record, &run.colors)? == run.consumed {
                    exact += 1;
                }
                successes += u64::from(run.status == Status::Success);
            }
            let (mut sat_exact, mut sat_successes) = (0u64, 0u64);
            for _ in 0..runs {
                let ks = random_ksat_instance(30, 3, 2, 60, rng.gen())?;
                let streams: Vec<Vec<u32>> = (0..30).map(|_| (0..40).map(|_| rng.gen_range(1..=2)).collect()).collect();
                let run = run_generic(&ks.instance, &streams, 10_000)?;
                if reconstruct_generic(&ks.instance, &run.record, &run.state)? == run.consumed {
                    sat_exact += 1;
                }
                sat_successes += u64::from(run.status == Status::Success && ks.satisfies(&run.state));
            }
            let ok = exact == runs && sat_exact == runs;
            let text = format!(
                "acyclic: {exact}/{runs} exact, {successes} colored\n3-SAT: {sat_exact}/{runs} exact, {sat_successes} solved"
            );
            out.report(
                &text,
                json!({
                    "runs": runs, "acyclic_exact": exact, "acyclic_success": successes,
                    "sat_exact": sat_exact, "sat_success": sat_successes,
                }),
            )?;
            Ok(ok)
        }
    }
}

/// Trace goes to `--out`; the summary to standard output.
fn finish_run(out: &Output, trace: &str, summary: serde_json::Value, status: Status) -> Result<bool> {
    if out.out.is_some() {
        out.emit(trace)?;
    }
    if out.json {
        println!("{summary}");
    } else {
        println!("status: {}", if status == Status::Success { "success" } else { "running" });
        for key in ["steps", "cycle_fixes", "resamplings", "clauses"] {
            if let Some(v) = summary.get(key) {
                println!("{}: {v}", key.replace('_', " "));
            }
        }
        println!("R°: {}", summary["r_circle"].as_str().unwrap_or_default());
    }
    Ok(true)
}

fn coding(cmd: CodingCmd, out: &Output) -> Result<bool> {
    match cmd {
        CodingCmd::Entropy { p, q, base } => {
            let p = Distribution::new(p)?;
            let h = entropy(&p, base)?;
            let mut text = format!("H = {h}");
            let mut value = json!({ "base": base, "entropy": h });
            if !q.is_empty() {
                let d = relative_entropy(&p, &Distribution::new(q)?, base)?;
                write!(text, "\nD = {d}")?;
                value["relative_entropy"] = json!(if d.is_finite() { json!(d) } else { json!("inf") });
            }
            out.report(&text, value)?;
        }
        CodingCmd::Kraft { lengths, d } => {
            let s = kraft_sum(&lengths, d)?;
            let fits = s <= num_traits::One::one();
            out.report(
                &format!("{s}{}", if fits { "" } else { " (exceeds 1)" }),
                json!({ "sum": s.to_string(), "prefix_code_exists": fits }),
            )?;
        }
        CodingCmd::Code { lengths, p, d } => {
            let (lengths, dist) = match (lengths.is_empty(), p.is_empty()) {
                (false, _) => (lengths, None),
                (true, false) => {
                    let dist = Distribution::new(p)?;
                    let ls = shannon_lengths(&dist, d)?;
                    (ls.iter().map(|l| l.unwrap_or(0)).filter(|&l| l > 0).collect(), Some((dist, ls)))
                }
                (true, true) => bail!("give --lengths or --p"),
            };
            let code = code_from_lengths(&lengths, d)?;
            if out.json {
                out.emit(&code.to_json())?;
            } else {
                let mut text: String = (0..code.words().len()).map(|i| code.word_string(i) + "\n").collect();
                if let Some((dist, ls)) = dist {
                    writeln!(text, "L = {}, H = {}", expected_length(&dist, &ls)?, entropy(&dist, f64::from(d))?)?;
                }
                out.emit(&text)?;
            }
        }
    }
    Ok(true)
}
