//! Command-line front end. Every subcommand writes to the supplied writer
//! and reports whether all of its internal verifications passed.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::board::Rider;
use crate::counting::{sample_counts_with, Method, NaiveOptions, DEFAULT_NODE_BUDGET};
use crate::exec::Exec;
use crate::geometry::{self, DEFAULT_VERTEX_BOUND};
use crate::quasipoly::{fit_rider, Fit};
use crate::rational;
use crate::sampling;
use crate::signed_graph::{Sign, SignedGraph};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "bishops", version, about = "Exact nonattacking rider counts and the bishops period")]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "BISHOPS_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count nonattacking placements u(q;n).
    Count(CountArgs),
    /// Recover the counting quasipolynomial and validate it on held-out sizes.
    Interpolate(InterpolateArgs),
    /// Check the bishops period both geometrically and by interpolation.
    VerifyPeriod(VerifyArgs),
    /// Enumerate lattice vertices of the bishops inside-out polytope.
    Vertices(VerticesArgs),
    /// Analyse a signed graph given in the text format.
    Graph(GraphArgs),
    /// Run randomized property checks.
    Selfcheck(SelfcheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// `bishop`, `rook`, `queen`, or moves `dx,dy;dx,dy`.
    #[arg(long, default_value = "bishop")]
    pub piece: String,
    #[arg(short)]
    pub q: usize,
    #[arg(short, conflicts_with = "n_range")]
    pub n: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long)]
    pub n_range: Option<String>,
    /// Defaults to `fast` for the bishop and `naive` otherwise.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Search-node budget for the naive counter.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct InterpolateArgs {
    #[arg(long, default_value = "bishop")]
    pub piece: String,
    #[arg(short)]
    pub q: usize,
    /// Period hypothesis used for interpolation.
    #[arg(long, default_value_t = 2)]
    pub period: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(short)]
    pub q: usize,
    #[arg(long, default_value_t = DEFAULT_VERTEX_BOUND)]
    pub vertex_bound: usize,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerticesArgs {
    #[arg(short)]
    pub q: usize,
    #[arg(long, default_value_t = DEFAULT_VERTEX_BOUND)]
    pub vertex_bound: usize,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    Rank,
    Cliques,
    CliqueGraph,
    Reduce,
    OneForest,
    Solve,
    All,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph file; `-` reads standard input.
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Analysis::All)]
    pub analysis: Analysis,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
}

fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected a range like 2..5, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(CliError::Usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

fn write_json(out: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"))
}

impl Cli {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

/// Runs a parsed command line. `Ok(false)` means a verification failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    #[cfg(feature = "parallel")]
    if cli.threads > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let exec = cli.exec();
    match &cli.command {
        Command::Count(a) => cmd_count(a, exec, out),
        Command::Interpolate(a) => cmd_interpolate(a, exec, out),
        Command::VerifyPeriod(a) => cmd_verify_period(a, exec, out),
        Command::Vertices(a) => cmd_vertices(a, exec, out),
        Command::Graph(a) => cmd_graph(a, out),
        Command::Selfcheck(a) => cmd_selfcheck(a, out),
    }
}

pub fn cmd_count(a: &CountArgs, exec: Exec, out: &mut dyn Write) -> Result<bool, CliError> {
    let rider: Rider = a.piece.parse()?;
    let method = match &a.method {
        Some(m) => m.parse()?,
        None if rider.is_bishop() => Method::Fast,
        None => Method::Naive,
    };
    let (from, to) = match (&a.n, &a.n_range) {
        (Some(n), None) => (*n, *n),
        (None, Some(r)) => parse_range(r)?,
        _ => return Err(CliError::Usage("give exactly one of -n or --n-range".into())),
    };
    let opts = NaiveOptions { budget: a.budget, exec };
    let table = sample_counts_with(&rider, a.q, from, to, method, opts)?;
    match a.format {
        Format::Json => write_json(out, &table.to_json())?,
        Format::Csv => write!(out, "{}", table.to_csv())?,
        Format::Pretty if table.entries.len() == 1 => {
            writeln!(out, "{}", table.entries.values().next().expect("one entry"))?
        }
        Format::Pretty => {
            for (n, c) in &table.entries {
                writeln!(out, "{n}: {c}")?;
            }
        }
    }
    Ok(true)
}

fn fit_report(rider: &Rider, period_hypothesis: u64, fit: &Fit) -> serde_json::Value {
    let (lo, hi) = (fit.holdout.keys().next().copied().unwrap_or(0), fit.holdout.keys().last().copied().unwrap_or(0));
    json!({
        "rider": rider.name(),
        "q": fit.q,
        "period_hypothesis": period_hypothesis,
        "period": fit.minimized.period(),
        "quasipolynomial": fit.minimized.to_json(),
        "coefficient_periods": fit.fitted.coefficient_periods(),
        "value_at_minus_one": rational::to_string(&fit.minimized.evaluate(-1)),
        "holdout": {
            "n_from": lo,
            "n_to": hi,
            "pass": fit.holdout_ok,
        },
    })
}

pub fn cmd_interpolate(a: &InterpolateArgs, exec: Exec, out: &mut dyn Write) -> Result<bool, CliError> {
    let rider: Rider = a.piece.parse()?;
    let fit = fit_rider(&rider, a.q, a.period, NaiveOptions { budget: a.budget, exec })?;
    match a.format {
        Format::Json => write_json(out, &fit_report(&rider, a.period, &fit))?,
        Format::Csv => return Err(CliError::Usage("interpolate supports pretty or json".into())),
        Format::Pretty => {
            writeln!(out, "rider: {}  q: {}", rider, a.q)?;
            writeln!(out, "period: {}", fit.minimized.period())?;
            writeln!(out, "{}", fit.minimized)?;
            writeln!(out, "value at n = -1: {}", fit.minimized.evaluate(-1))?;
            let ns: Vec<String> = fit.holdout.keys().map(ToString::to_string).collect();
            let verdict = if fit.holdout_ok { "PASS" } else { "FAIL" };
            writeln!(out, "hold-out n = {}: {verdict}", ns.join(","))?;
        }
    }
    Ok(fit.holdout_ok)
}

pub fn cmd_verify_period(a: &VerifyArgs, exec: Exec, out: &mut dyn Write) -> Result<bool, CliError> {
    let lcm = geometry::period_upper_bound(a.q, a.vertex_bound, exec)?;
    let fit = fit_rider(&Rider::bishop(), a.q, 2, NaiveOptions { exec, ..NaiveOptions::default() })?;
    let expected = if a.q < 3 { 1 } else { 2 };
    let divides = (BigInt::from(2) % &lcm) == BigInt::from(0);
    let period = fit.minimized.period();
    let pass = divides && period == expected && fit.holdout_ok;
    match a.format {
        Format::Json => write_json(
            out,
            &json!({
                "q": a.q,
                "geometric_lcm": lcm.to_string(),
                "interpolated_period": period,
                "expected_period": expected,
                "holdout_pass": fit.holdout_ok,
                "pass": pass,
            }),
        )?,
        _ => {
            writeln!(out, "geometric lcm: {lcm}")?;
            writeln!(out, "interpolated period: {period} (expected {expected})")?;
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(pass)
}

pub fn cmd_vertices(a: &VerticesArgs, exec: Exec, out: &mut dyn Write) -> Result<bool, CliError> {
    let vs = geometry::enumerate_lattice_vertices(a.q, a.vertex_bound, exec)?;
    let ok = geometry::verify_half_integrality(&vs);
    match a.format {
        Format::Json => write_json(out, &geometry::vertices_to_json(&vs))?,
        _ => {
            for v in &vs {
                let p: Vec<String> = v.point.iter().map(ToString::to_string).collect();
                writeln!(out, "({})  <- {}", p.join(", "), v.defining_set())?;
            }
            writeln!(out, "vertices: {}", vs.len())?;
            writeln!(out, "denominator lcm: {}", geometry::denominator_lcm(&vs))?;
            writeln!(out, "half-integral: {}", if ok { "yes" } else { "NO" })?;
        }
    }
    Ok(ok)
}

fn cliques_json(sets: &[Vec<usize>]) -> serde_json::Value {
    json!(sets.iter().map(|s| s.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn cmd_graph(a: &GraphArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let text = if a.file.as_os_str() == "-" { io::read_to_string(io::stdin())? } else { fs::read_to_string(&a.file)? };
    let (g, fixations) = geometry::parse_fixture(&text)?;
    let want = |x: Analysis| a.analysis == x || a.analysis == Analysis::All;
    let mut ok = true;
    let mut report = serde_json::Map::new();
    let pretty = a.format != Format::Json;

    if want(Analysis::Rank) {
        let rank = g.rank();
        let exact = g.incidence_matrix().exact_rank();
        ok &= rank == exact;
        if pretty {
            writeln!(out, "rank: {rank}")?;
            writeln!(out, "incidence rank: {exact}")?;
            writeln!(out, "components: {}  balanced: {}", g.component_count(), g.balanced_count())?;
            writeln!(out, "cyclomatic: {}", g.cyclomatic())?;
        }
        report.insert("rank".into(), json!(rank));
        report.insert("incidence_rank".into(), json!(exact));
        report.insert("components".into(), json!(g.component_count()));
        report.insert("balanced_components".into(), json!(g.balanced_count()));
        report.insert("cyclomatic".into(), json!(g.cyclomatic()));
    }
    if want(Analysis::Cliques) {
        let (pos, neg) = g.signed_cliques();
        if pretty {
            let show = |s: &[Vec<usize>]| {
                s.iter()
                    .map(|c| format!("{{{}}}", c.iter().map(|v| format!("v{}", v + 1)).collect::<Vec<_>>().join(",")))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(out, "positive cliques: {}", show(&pos))?;
            writeln!(out, "negative cliques: {}", show(&neg))?;
            writeln!(out, "cliques total: {}", pos.len() + neg.len())?;
        }
        report.insert("positive_cliques".into(), cliques_json(&pos));
        report.insert("negative_cliques".into(), cliques_json(&neg));
    }
    if want(Analysis::CliqueGraph) {
        let c = g.clique_graph();
        if pretty {
            writeln!(out, "clique graph:")?;
            write!(out, "{c}")?;
        }
        let edges: Vec<_> = c.edges.iter().map(|(k, l)| json!([k + 1, l + 1])).collect();
        report.insert("clique_graph_edges".into(), json!(edges));
    }
    if want(Analysis::Reduce) {
        let r = g.irredundant_reduction();
        ok &= r.signed_cliques() == g.signed_cliques();
        if pretty {
            writeln!(out, "irredundant reduction ({} edges):", r.edge_count())?;
            write!(out, "{r}")?;
        }
        report.insert("reduced".into(), json!(r.to_string()));
        report.insert("reduced_edges".into(), json!(r.edge_count()));
    }
    if want(Analysis::OneForest) {
        let f = g.is_negative_one_forest();
        if pretty {
            writeln!(out, "negative 1-forest: {}", if f { "yes" } else { "no" })?;
        }
        report.insert("negative_one_forest".into(), json!(f));
    }
    if a.analysis == Analysis::Solve || (a.analysis == Analysis::All && !fixations.is_empty()) {
        let s = geometry::solve_via_clique_graph(&g, &fixations)?;
        let half = geometry::point_is_half_integral(&s.point);
        ok &= half;
        let point: Vec<String> = s.point.iter().map(rational::to_string).collect();
        if pretty {
            for (i, z) in s.point.chunks(2).enumerate() {
                writeln!(out, "z_{} = ({}, {})", i + 1, z[0], z[1])?;
            }
            let list = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            writeln!(out, "a (x+y on negative cliques): {}", list(&s.a))?;
            writeln!(out, "b (y-x on positive cliques): {}", list(&s.b))?;
            writeln!(out, "half-integral: {}", if half { "yes" } else { "NO" })?;
        }
        report.insert("point".into(), json!(point));
        report.insert("a".into(), json!(s.a.iter().map(ToString::to_string).collect::<Vec<_>>()));
        report.insert("b".into(), json!(s.b.iter().map(ToString::to_string).collect::<Vec<_>>()));
    }
    if !pretty {
        write_json(out, &serde_json::Value::Object(report))?;
    }
    Ok(ok)
}

pub fn cmd_selfcheck(a: &SelfcheckArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut failures = [0usize; 3];
    for _ in 0..a.trials {
        let q = rand::Rng::gen_range(&mut rng, 1..=8);
        let m = if q > 1 { rand::Rng::gen_range(&mut rng, 0..=20) } else { 0 };
        let g = SignedGraph::random(&mut rng, q, m);
        let (pos, neg) = g.signed_cliques();
        let r = g.irredundant_reduction();
        let rank_ok = g.rank() == g.incidence_matrix().exact_rank()
            && pos.len() + neg.len() == 2 * q - g.part(Sign::Pos).graphic_rank() - g.part(Sign::Neg).graphic_rank()
            && r.signed_cliques() == (pos.clone(), neg.clone())
            && r.edge_count() == 2 * q - pos.len() - neg.len();
        failures[0] += usize::from(!rank_ok);

        let (s, fx) = sampling::random_solve_instance(&mut rng, 8, 20);
        failures[1] += usize::from(!sampling::check_solve_instance(&s, &fx));

        let (h, v) = sampling::random_incidence_system(&mut rng, 8, 20);
        failures[2] += usize::from(!sampling::check_incidence_system(&h, &v));
    }
    let names = ["signed-graph rank and cliques", "clique-graph solve", "incidence half-integrality"];
    for (name, f) in names.iter().zip(failures) {
        let verdict = if f == 0 { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} {name}: {}/{} ok (seed {})", a.trials - f, a.trials, a.seed)?;
    }
    Ok(failures.iter().all(|&f| f == 0))
}
