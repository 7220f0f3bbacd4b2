use std::io::{Read, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use residua::dynkin::{
    distinguished_partitions, jordan_partition, jumps_of, partition_to_segment, segment_from_jumps, segment_to_wdd,
    wdd_to_segment, Partition,
};
use residua::intertwine::{classify_case, path_nongeneric, replay, search_path, standard_forms, AppliedMove};
use residua::langlands::{langlands_param, leq_order, minimize, SegmentMultiset};
use residua::orbits::{c1, dominant_rep, enumerate_l, is_residual_point, rank_guard, residual_defect, CuspidalString, OrbitContext};
use residua::projections::{classify_components, length_changes, project_roots, uniqueway_holds, ThetaSubset};
use residua::rootsys::{format_weight, parse_weight};
use residua::segments::{format_values, ResidualSegment};
use residua::sweeps::{bijection_sweep, c1_sweep, path_sweep, projection_sweep, SweepReport};
use residua::{HalfInt, Kind, RootSystemSpec, Weight};

#[derive(Parser)]
#[command(name = "residua", version, about = "Residual points of classical root systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct System {
    /// Root system kind: A, B, C or D.
    #[arg(long = "type")]
    kind: Kind,
    /// Rank; inferred from the input length when omitted.
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List distinguished orbits with their partitions and residual segments.
    Orbits {
        #[command(flatten)]
        sys: System,
    },
    /// Conversions between partitions, residual segments, jumps and diagrams.
    #[command(subcommand)]
    Segment(SegmentCmd),
    /// Check the residual counting identity for a parameter.
    ResidualCheck {
        #[command(flatten)]
        sys: System,
        /// Epsilon; defaults to 1/2 for C and 1 otherwise.
        #[arg(long)]
        eps: Option<HalfInt>,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Langlands parameters and the order on them.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Dominant representative of a Weyl orbit.
    Dominant {
        #[command(flatten)]
        sys: System,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// The number of positive roots pairing negatively with a parameter.
    C1 {
        #[command(flatten)]
        sys: System,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Strings with at most one linear segment in the orbit of a residual segment.
    #[command(name = "enumerate-L")]
    EnumerateL {
        #[command(flatten)]
        sys: System,
        segment: String,
    },
    /// A chain of simple moves with non-generic kernels between two strings.
    Path {
        #[command(flatten)]
        sys: System,
        /// Source string, e.g. "(2,1)|[10]@B".
        src: String,
        /// Target string.
        dst: String,
        /// Fall back to a bounded breadth-first search.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
    },
    /// Classify the standard forms of a parameter, or a single string.
    Classify {
        #[command(flatten)]
        sys: System,
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Projected root system for a set of kept simple roots.
    Project {
        #[command(flatten)]
        sys: System,
        /// Kept simple roots, 1-based Bourbaki indices.
        #[arg(long, value_delimiter = ',')]
        theta: Vec<usize>,
    },
    /// Run every exhaustive sweep up to a rank bound.
    VerifySuite {
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SegmentCmd {
    /// Partition (comma list of parts) to residual segment.
    FromPartition {
        #[command(flatten)]
        sys: System,
        parts: Option<String>,
    },
    ToJumps {
        #[arg(long = "type")]
        kind: Kind,
        segment: Option<String>,
    },
    FromJumps {
        #[arg(long = "type")]
        kind: Kind,
        jumps: Option<String>,
    },
    ToWdd {
        #[arg(long = "type")]
        kind: Kind,
        segment: Option<String>,
    },
    FromWdd {
        #[arg(long = "type")]
        kind: Kind,
        labels: Option<String>,
    },
}

#[derive(Subcommand)]
enum OrderCmd {
    /// Whether the first parameter lies below the second.
    Compare {
        #[command(flatten)]
        sys: System,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        pi: String,
    },
    /// Replace linked pairs until none is left, e.g. "(2,0)|(1,-1)".
    Minimize { multiset: String },
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }
}

type Res = std::result::Result<Output, String>;

fn err(e: residua::Error) -> String {
    e.to_string()
}

fn input_or_stdin(arg: Option<String>) -> std::result::Result<String, String> {
    match arg {
        Some(a) => Ok(a),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            Ok(s.lines().next().unwrap_or("").trim().to_string())
        }
    }
}

/// Comma lists only; a bare "11" is the number eleven here.
fn parse_list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    let t = s.trim().trim_start_matches(['[', '(', '{']).trim_end_matches([']', ')', '}']);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|x| x.trim().parse::<T>().map_err(|e| format!("parse error: {e}"))).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn spec_for(sys: &System, dim: Option<usize>) -> std::result::Result<RootSystemSpec, String> {
    let rank = match (sys.rank, dim) {
        (Some(r), _) => r,
        (None, Some(d)) if sys.kind == Kind::A => d.saturating_sub(1),
        (None, Some(d)) => d,
        (None, None) => {
            Cli::command().error(ErrorKind::MissingRequiredArgument, "--rank is required here").exit()
        }
    };
    RootSystemSpec::new(sys.kind, rank).map_err(err)
}

fn context(sys: &System, w: &Weight) -> std::result::Result<OrbitContext, String> {
    let spec = spec_for(sys, Some(w.len()))?;
    let ctx = OrbitContext::standard(spec.kind, spec.rank).map_err(err)?;
    spec.check_dim(w).map_err(err)?;
    Ok(ctx)
}

fn weight(s: &str) -> std::result::Result<Weight, String> {
    parse_weight(s).map_err(err)
}

fn run(cmd: Command) -> Res {
    match cmd {
        Command::Orbits { sys } => {
            let spec = spec_for(&sys, None)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for p in distinguished_partitions(spec) {
                let s = partition_to_segment(&p);
                lines.push(format!("{p}  {s}"));
                rows.push(json!({ "partition": p.parts, "segment": s.values() }));
            }
            let json = json!({ "type": spec.kind.to_string(), "rank": spec.rank, "orbits": rows });
            Ok(Output::new(lines.join("\n"), json))
        }
        Command::Segment(c) => run_segment(c),
        Command::ResidualCheck { sys, eps, weight: w } => {
            let w = weight(&w)?;
            let spec = spec_for(&sys, Some(w.len()))?;
            let ctx = match eps {
                Some(e) => OrbitContext::new(spec, e).map_err(err)?,
                None => OrbitContext::standard(spec.kind, spec.rank).map_err(err)?,
            };
            let res = is_residual_point(&ctx, &w).map_err(err)?;
            let defect = residual_defect(&ctx, &w).map_err(err)?;
            let json = json!({ "weight": w, "epsilon": ctx.epsilon, "residual": res, "defect": defect });
            Ok(Output::new(format!("residual: {res}\ndefect: {defect}"), json))
        }
        Command::Order(OrderCmd::Compare { sys, mu, pi }) => {
            let (mu, pi) = (weight(&mu)?, weight(&pi)?);
            let spec = spec_for(&sys, Some(mu.len()))?;
            let leq = leq_order(spec, &mu, &pi).map_err(err)?;
            Ok(Output::new(format!("leq: {leq}"), json!({ "mu": mu, "pi": pi, "leq": leq })))
        }
        Command::Order(OrderCmd::Minimize { multiset }) => {
            let m: SegmentMultiset = multiset.parse().map_err(err)?;
            let min = minimize(&m).map_err(err)?;
            let param = langlands_param(&min);
            let text = format!("minimal: {min}\nparameter: {}", format_weight(&param));
            Ok(Output::new(text, json!({ "minimal": min, "parameter": param })))
        }
        Command::Dominant { sys, weight: w } => {
            let w = weight(&w)?;
            let ctx = context(&sys, &w)?;
            let (dom, wit) = dominant_rep(&ctx, &w).map_err(err)?;
            let text = format!("dominant: {}", format_weight(&dom));
            Ok(Output::new(text, json!({ "weight": w, "dominant": dom, "witness": wit })))
        }
        Command::C1 { sys, weight: w } => {
            let w = weight(&w)?;
            let ctx = context(&sys, &w)?;
            let n = c1(&ctx, &w).map_err(err)?;
            Ok(Output::new(format!("c1: {n}"), json!({ "weight": w, "c1": n })))
        }
        Command::EnumerateL { sys, segment } => {
            let s = ResidualSegment::parse(sys.kind, &segment).map_err(err)?;
            let ctx = context(&sys, &s.values().to_vec())?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for x in enumerate_l(&ctx, &s).map_err(err)? {
                let n = c1(&ctx, &x.flatten()).map_err(err)?;
                lines.push(format!("{x}  c1={n}"));
                rows.push(json!({ "string": x, "c1": n }));
            }
            Ok(Output::new(lines.join("\n"), json!({ "segment": s.values(), "strings": rows })))
        }
        Command::Path { sys, src, dst, search, max_states } => {
            let src = CuspidalString::parse(&src).map_err(err)?;
            let dst = CuspidalString::parse(&dst).map_err(err)?;
            let ctx = context(&sys, &src.flatten())?;
            let mut path = path_nongeneric(&ctx, &src, &dst).map_err(err)?;
            let mut method = "constructive";
            if path.is_none() && search {
                path = search_path(&ctx, &src, &dst, max_states).map_err(err)?;
                method = "search";
            }
            let Some(path) = path else {
                let mut out = Output::new("path: none", json!({ "path": Value::Null }));
                out.ok = false;
                return Ok(out);
            };
            let valid = replay(&ctx, &src.flatten(), &dst.flatten(), &path).map_err(err)?;
            let mut lines = vec![format!("path: {} moves ({method})", path.len())];
            lines.extend(path.iter().map(|m: &AppliedMove| format!("{} {}", m.mv, m.status)));
            lines.push(format!("replay: {valid}"));
            let json = json!({ "method": method, "moves": path, "replay": valid });
            Ok(Output::new(lines.join("\n"), json))
        }
        Command::Classify { sys, input } => {
            let strings = if input.contains('@') {
                vec![CuspidalString::parse(&input).map_err(err)?]
            } else {
                let w = weight(&input)?;
                standard_forms(&context(&sys, &w)?, &w).map_err(err)?
            };
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for s in &strings {
                let ctx = context(&sys, &s.flatten())?;
                let t = classify_case(&ctx, s).map_err(err)?;
                lines.push(format!("{s}  {} ({})", t.tag, t.verdict));
                rows.push(json!({ "string": s, "case": t }));
            }
            if let Some(first) = rows.first() {
                lines.push(format!("assumption: {}", first["case"]["assumption"].as_str().unwrap_or("")));
            }
            Ok(Output::new(lines.join("\n"), json!({ "classified": rows })))
        }
        Command::Project { sys, theta } => {
            let spec = spec_for(&sys, None)?;
            let t = ThetaSubset::from_kept(spec, &theta).map_err(err)?;
            let p = classify_components(project_roots(&t)).map_err(err)?;
            let (rank, d) = (p.subsystem_rank(), t.d());
            let relation = if rank == d { format!("rank {rank} = d") } else { format!("rank {rank}, d = {d}") };
            let mut lines = vec![
                format!("removed: {}", join(&t.removed)),
                format!("components: {} ({relation})", p.components_label()),
            ];
            for alt in &p.alternatives {
                let names: Vec<String> = alt.iter().map(ToString::to_string).collect();
                lines.push(format!("alternative: {}", names.join(" + ")));
            }
            let unique = uniqueway_holds(&p);
            lines.push(format!("uniqueway: {unique}"));
            lines.push(format!("length changes: {}", length_changes(&t)));
            let json = json!({
                "removed": t.removed,
                "d": d,
                "components": p.components,
                "alternatives": p.alternatives,
                "rank": rank,
                "uniqueway": unique,
                "length_changes": length_changes(&t),
            });
            Ok(Output::new(lines.join("\n"), json))
        }
        Command::VerifySuite { max_rank, jobs } => {
            let max_rank = max_rank.unwrap_or_else(|| rank_guard(6));
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| e.to_string())?;
            let reports: Vec<SweepReport> = pool.install(|| -> residua::Result<Vec<SweepReport>> {
                let mut out = vec![bijection_sweep(max_rank), c1_sweep(max_rank)?, path_sweep(max_rank)?];
                out.extend(projection_sweep(max_rank)?.reports().into_iter().cloned());
                Ok(out)
            }).map_err(err)?;
            let mut lines: Vec<String> = Vec::new();
            for r in &reports {
                lines.push(r.to_string());
                lines.extend(r.failures.iter().take(5).map(|f| format!("  {f}")));
            }
            let mut out = Output::new(lines.join("\n"), json!({ "max_rank": max_rank, "reports": reports }));
            out.ok = reports.iter().all(SweepReport::passed);
            Ok(out)
        }
    }
}

fn run_segment(c: SegmentCmd) -> Res {
    match c {
        SegmentCmd::FromPartition { sys, parts } => {
            let parts: Vec<u32> = parse_list(&input_or_stdin(parts)?)?;
            let total: u32 = parts.iter().sum();
            let rank = sys.rank.unwrap_or(match sys.kind {
                Kind::A => total.saturating_sub(1),
                Kind::B => total / 2,
                Kind::C | Kind::D => total / 2,
            } as usize);
            let p = Partition::new(sys.kind, rank, parts).map_err(err)?;
            let s = partition_to_segment(&p);
            Ok(Output::new(s.to_string(), json!({ "partition": p.parts, "segment": s.values() })))
        }
        SegmentCmd::ToJumps { kind, segment } => {
            let s = ResidualSegment::parse(kind, &input_or_stdin(segment)?).map_err(err)?;
            let j = jumps_of(&s).map_err(err)?;
            let p = jordan_partition(&s).map_err(err)?;
            Ok(Output::new(join(&j), json!({ "segment": s.values(), "jumps": j, "partition": p.parts })))
        }
        SegmentCmd::FromJumps { kind, jumps } => {
            let j: Vec<HalfInt> = parse_list(&input_or_stdin(jumps)?)?;
            let s = segment_from_jumps(kind, &j).map_err(err)?;
            Ok(Output::new(s.to_string(), json!({ "jumps": j, "segment": s.values() })))
        }
        SegmentCmd::ToWdd { kind, segment } => {
            let s = ResidualSegment::parse(kind, &input_or_stdin(segment)?).map_err(err)?;
            let labels = segment_to_wdd(&s).map_err(err)?;
            Ok(Output::new(join(&labels), json!({ "segment": s.values(), "labels": labels })))
        }
        SegmentCmd::FromWdd { kind, labels } => {
            let labels: Vec<i64> = parse_list(&input_or_stdin(labels)?)?;
            let s = wdd_to_segment(kind, &labels).map_err(err)?;
            Ok(Output::new(format_values(s.values()), json!({ "labels": labels, "segment": s.values() })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
            };
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
