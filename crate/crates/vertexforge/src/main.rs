//! Command-line surface for the exact amplitude engine.

mod suite;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::Ratio;

use vertexforge_core::amplitudes::{
    c_tilde_framed, f_graph_general, g_three, is_rational, partition_function,
};
use vertexforge_core::ftcy::classes::EffectiveClass;
use vertexforge_core::ftcy::format::parse_graph;
use vertexforge_core::ftcy::FtcyGraph;
use vertexforge_core::hurwitz::{hurwitz_number, phi_q, phi_series};
use vertexforge_core::vertex::VertexCtx;
use vertexforge_core::{ExactScalar, Partition, PartitionTriple};

#[derive(Parser)]
#[command(name = "vertexforge", version, about = "Exact topological vertex amplitudes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print W and Wt for one partition triple and compare them.
    Vertex {
        /// First partition, comma-separated parts ([] or "" for empty).
        #[arg(long)]
        mu: String,
        /// Second partition.
        #[arg(long)]
        nu: String,
        /// Third partition.
        #[arg(long)]
        rho: String,
        /// Optional framing twists n1,n2,n3.
        #[arg(long)]
        frame: Option<String>,
    },
    /// Sweep all triples with |mu_i| <= max comparing W against Wt.
    Check {
        #[arg(long)]
        max: u32,
        /// Worker threads; results are merged in enumeration order.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Double Hurwitz numbers, Burnside values, or the lambda-series.
    Hurwitz {
        /// Euler characteristic for a single Hurwitz number.
        #[arg(long, conflicts_with_all = ["phi_q", "series"])]
        chi: Option<i64>,
        /// Burnside sum with q^(kappa n / 2) at this n.
        #[arg(long = "phi-q", conflicts_with = "series")]
        phi_q: Option<i64>,
        /// Taylor coefficients of the generating function up to this
        /// order.
        #[arg(long)]
        series: Option<usize>,
        #[arg(long)]
        plus: String,
        #[arg(long)]
        minus: String,
    },
    /// One graph amplitude for a chosen effective class.
    Glue {
        file: PathBuf,
        /// Edge degrees, e.g. "e1=2,e2=0"; unlisted edges get 0.
        #[arg(long)]
        degrees: Option<String>,
        /// Boundary partitions, e.g. "u1=[2,1],u2=[]"; unlisted
        /// univalent vertices get the empty partition.
        #[arg(long)]
        boundary: Option<String>,
    },
    /// The truncated partition function of a regular graph.
    Zfun {
        file: PathBuf,
        /// Per-edge degree caps, e.g. "e1=2,e2=1"; unlisted edges cap
        /// at 0.
        #[arg(long)]
        caps: Option<String>,
    },
    /// Three-partition Hodge integral generating function.
    Hodge {
        /// Slash-separated triple, e.g. "2,1/1/[]".
        #[arg(long)]
        mu: String,
        /// Weights w1,w2 (rationals); w3 = -w1-w2.
        #[arg(long)]
        w: String,
    },
    /// Run a fixture file of `name = expression` lines.
    Fixtures { path: PathBuf },
}

pub enum Failure {
    Usage(String),
    Compute(String),
}

type CResult<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn compute(msg: impl std::fmt::Display) -> Failure {
    Failure::Compute(msg.to_string())
}

pub fn new_ctx() -> VertexCtx {
    match std::env::var("VERTEXFORGE_CACHE_LIMIT")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        Some(limit) => VertexCtx::with_cache_limit(limit),
        None => VertexCtx::new(),
    }
}

/// Parses a partition in CLI form: comma-separated parts, with an
/// optional surrounding bracket pair, `[]` or `` for empty.
pub fn parse_partition(s: &str) -> CResult<Partition> {
    let trimmed = s.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(trimmed);
    inner
        .parse()
        .map_err(|e| usage(format!("{e}")))
}

fn parse_triple(mu: &str, nu: &str, rho: &str) -> CResult<PartitionTriple> {
    Ok(PartitionTriple::new(
        parse_partition(mu)?,
        parse_partition(nu)?,
        parse_partition(rho)?,
    ))
}

fn parse_frame(s: &str) -> CResult<[i64; 3]> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("invalid frame {s:?}, expected n1,n2,n3")))?;
    match parts[..] {
        [a, b, c] => Ok([a, b, c]),
        _ => Err(usage(format!("invalid frame {s:?}, expected n1,n2,n3"))),
    }
}

/// Splits on commas that are not nested inside brackets, so partition
/// values like `[2,1]` survive intact.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_assignments(flag: &str, s: &str) -> CResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for piece in split_top_level(s) {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let Some((key, value)) = piece.split_once('=') else {
            return Err(usage(format!("--{flag}: expected key=value, got {piece:?}")));
        };
        out.push((String::from(key.trim()), String::from(value.trim())));
    }
    Ok(out)
}

fn load_graph(path: &PathBuf) -> CResult<FtcyGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| compute(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(compute)
}

fn framed_w_three(ctx: &mut VertexCtx, mu: &PartitionTriple, n: [i64; 3]) -> ExactScalar {
    let twist: i64 = (0..3).map(|i| mu.0[i].kappa() * n[i]).sum();
    &ExactScalar::q_power(Ratio::new(twist, 2)) * &ctx.w_three(mu)
}

fn cmd_vertex(mu: &str, nu: &str, rho: &str, frame: Option<&str>) -> CResult<u8> {
    let triple = parse_triple(mu, nu, rho)?;
    let n = match frame {
        Some(f) => parse_frame(f)?,
        None => [0, 0, 0],
    };
    let mut ctx = new_ctx();
    let w = framed_w_three(&mut ctx, &triple, n);
    let wt = c_tilde_framed(&mut ctx, &triple, n);
    println!("W  = {w}");
    println!("Wt = {wt}");
    println!("{}", if w == wt { "EQUAL" } else { "DIFFER" });
    Ok(0)
}

fn cmd_check(max: u32, jobs: usize) -> u8 {
    let parts = Partition::enumerate_up_to(max);
    let mut triples = Vec::new();
    for a in &parts {
        for b in &parts {
            for c in &parts {
                triples.push(PartitionTriple::new(a.clone(), b.clone(), c.clone()));
            }
        }
    }
    let jobs = jobs.max(1).min(triples.len().max(1));
    let compare = |ctx: &mut VertexCtx, t: &PartitionTriple| {
        let w = ctx.w_three(t);
        let wt = ctx.w_tilde(t);
        (w == wt).then_some(()).ok_or((w, wt))
    };
    let mut results: Vec<Option<(ExactScalar, ExactScalar)>> = vec![None; triples.len()];
    if jobs == 1 {
        let mut ctx = new_ctx();
        for (i, t) in triples.iter().enumerate() {
            results[i] = compare(&mut ctx, t).err();
        }
    } else {
        let chunks: Vec<Vec<(usize, PartitionTriple)>> = (0..jobs)
            .map(|j| {
                triples
                    .iter()
                    .enumerate()
                    .skip(j)
                    .step_by(jobs)
                    .map(|(i, t)| (i, t.clone()))
                    .collect()
            })
            .collect();
        let worker_results: Vec<Vec<(usize, Option<(ExactScalar, ExactScalar)>)>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .into_iter()
                    .map(|chunk| {
                        scope.spawn(move || {
                            let mut ctx = new_ctx();
                            chunk
                                .into_iter()
                                .map(|(i, t)| (i, compare(&mut ctx, &t).err()))
                                .collect()
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
        for chunk in worker_results {
            for (i, r) in chunk {
                results[i] = r;
            }
        }
    }
    let mut mismatches = 0;
    for (t, r) in triples.iter().zip(&results) {
        if let Some((w, wt)) = r {
            mismatches += 1;
            println!("MISMATCH {t:?}: W = {w}, Wt = {wt}");
        }
    }
    println!("checked {} triples, {mismatches} mismatches", triples.len());
    if mismatches > 0 {
        3
    } else {
        0
    }
}

fn cmd_hurwitz(
    chi: Option<i64>,
    phi_q_n: Option<i64>,
    series: Option<usize>,
    plus: &str,
    minus: &str,
) -> CResult<u8> {
    let plus = parse_partition(plus)?;
    let minus = parse_partition(minus)?;
    let mut ctx = new_ctx();
    match (chi, phi_q_n, series) {
        (Some(chi), None, None) => {
            let h = hurwitz_number(&mut ctx.sym, chi, &plus, &minus).map_err(compute)?;
            println!("{h}");
        }
        (None, Some(n), None) => {
            let value = phi_q(&mut ctx.sym, &plus, &minus, n).map_err(compute)?;
            println!("{value}");
        }
        (None, None, Some(order)) => {
            let s = phi_series(&mut ctx.sym, &plus, &minus, order).map_err(compute)?;
            for (k, c) in s.coefficients.iter().enumerate() {
                println!("lambda^{k}: {c}");
            }
        }
        _ => {
            return Err(usage(
                "exactly one of --chi, --phi-q, --series is required".to_string(),
            ))
        }
    }
    Ok(0)
}

fn class_from_flags(
    g: &FtcyGraph,
    degrees: Option<&str>,
    boundary: Option<&str>,
) -> CResult<EffectiveClass> {
    let mut degree_map: BTreeMap<String, u32> = (0..g.edge_count())
        .map(|k| (g.edge_record(k).id.clone(), 0))
        .collect();
    if let Some(spec) = degrees {
        for (key, value) in parse_assignments("degrees", spec)? {
            if !degree_map.contains_key(&key) {
                return Err(usage(format!("--degrees: unknown edge {key:?}")));
            }
            let d = value
                .parse()
                .map_err(|_| usage(format!("--degrees: bad degree {value:?}")))?;
            degree_map.insert(key, d);
        }
    }
    let mut boundary_map: BTreeMap<String, Partition> = g
        .univalent_vertices()
        .into_iter()
        .map(|v| (String::from(g.vertex_id(v)), Partition::empty()))
        .collect();
    if let Some(spec) = boundary {
        for (key, value) in parse_assignments("boundary", spec)? {
            if !boundary_map.contains_key(&key) {
                return Err(usage(format!(
                    "--boundary: {key:?} is not a univalent vertex"
                )));
            }
            boundary_map.insert(key, parse_partition(&value)?);
        }
    }
    Ok(EffectiveClass {
        degrees: degree_map,
        boundary: boundary_map,
    })
}

fn cmd_glue(file: &PathBuf, degrees: Option<&str>, boundary: Option<&str>) -> CResult<u8> {
    let g = load_graph(file)?;
    let class = class_from_flags(&g, degrees, boundary)?;
    let mut ctx = new_ctx();
    let value = f_graph_general(&mut ctx, &g, &class).map_err(compute)?;
    println!("{value}");
    println!("# rational: {}", if is_rational(&value) { "yes" } else { "no" });
    Ok(0)
}

fn cmd_zfun(file: &PathBuf, caps: Option<&str>) -> CResult<u8> {
    let g = load_graph(file)?;
    let mut cap_map: BTreeMap<String, u32> = (0..g.edge_count())
        .map(|k| (g.edge_record(k).id.clone(), 0))
        .collect();
    if let Some(spec) = caps {
        for (key, value) in parse_assignments("caps", spec)? {
            if !cap_map.contains_key(&key) {
                return Err(usage(format!("--caps: unknown edge {key:?}")));
            }
            let d = value
                .parse()
                .map_err(|_| usage(format!("--caps: bad cap {value:?}")))?;
            cap_map.insert(key, d);
        }
    }
    let mut ctx = new_ctx();
    let table = partition_function(&mut ctx, &g, &cap_map).map_err(compute)?;
    print!("{table}");
    Ok(0)
}

fn cmd_hodge(mu: &str, w: &str) -> CResult<u8> {
    let slots: Vec<&str> = mu.split('/').collect();
    if slots.len() != 3 {
        return Err(usage(format!("--mu: expected P/P/P, got {mu:?}")));
    }
    let triple = parse_triple(slots[0], slots[1], slots[2])?;
    let weights: Vec<Ratio<i64>> = w
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--w: expected two rationals a,b, got {w:?}")))?;
    let [w1, w2] = weights[..] else {
        return Err(usage(format!("--w: expected two rationals a,b, got {w:?}")));
    };
    let mut ctx = new_ctx();
    let value = g_three(&mut ctx, &triple, (w1, w2)).map_err(compute)?;
    println!("{value}");
    Ok(0)
}

fn dispatch(cli: Cli) -> CResult<u8> {
    match &cli.command {
        Command::Vertex { mu, nu, rho, frame } => cmd_vertex(mu, nu, rho, frame.as_deref()),
        Command::Check { max, jobs } => Ok(cmd_check(*max, *jobs)),
        Command::Hurwitz {
            chi,
            phi_q,
            series,
            plus,
            minus,
        } => cmd_hurwitz(*chi, *phi_q, *series, plus, minus),
        Command::Glue {
            file,
            degrees,
            boundary,
        } => cmd_glue(file, degrees.as_deref(), boundary.as_deref()),
        Command::Zfun { file, caps } => cmd_zfun(file, caps.as_deref()),
        Command::Hodge { mu, w } => cmd_hodge(mu, w),
        Command::Fixtures { path } => suite::run(path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
