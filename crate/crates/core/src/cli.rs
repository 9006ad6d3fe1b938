//! The `redmax` command line. Every subcommand prints plain text by default
//! and a single JSON document with `--json`.
//!
//! Exit codes: 0 success, 1 I/O failure or a failed reproduction check,
//! 2 usage or input error, 3 resource cap exceeded, 4 internal
//! contradiction (a state the theory rules out; always worth reporting).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arcdiag::{audit_k3_path, build_bicolored, decompose, render_svg, ArcDiagram};
use crate::caps::Caps;
use crate::coxeter::{
    cartan_feasibility, explicit_cartan, verify_cartan, CoxeterSystem, CoxeterType,
};
use crate::error::{invalid, Error, Result};
use crate::gwd::{compute_ck, gwd_to_path, simplify, ExplicitDiagram};
use crate::path::MonotonePath;
use crate::patterns::{PatternFamily, RepeatablePattern};
use crate::reproduce::{self, ReproduceOptions};
use crate::search::{
    max_multiplicity_path_dfs, max_multiplicity_weak_order_dp, BoundReport, DfsOptions, DpMode,
    Method,
};

#[derive(Parser, Debug)]
#[command(
    name = "redmax",
    version,
    about = "Generator multiplicities in reduced words of longest elements",
    after_help = "Resource caps default to dfs_k=5,dfs_n=14,dp_n=9,tk_k=3,tk_nodes=2000000,group_order=50000 \
                  and can be overridden with REDMAX_CAPS or --caps (same key=value syntax).\n\
                  Exit codes: 2 usage, 3 resource cap, 4 internal contradiction."
)]
pub struct Cli {
    /// Worker threads for the path search.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Cap overrides, e.g. `dfs_n=16,dp_n=10`; applied after REDMAX_CAPS.
    #[arg(long, global = true)]
    pub caps: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximum (or minimum) multiplicity of s_k in reduced words of w_0 in S_n.
    Mkn(MknArgs),
    /// The constant c_k from the piece graph of simple diagrams.
    Ck(CkArgs),
    /// Repeatable patterns and witness paths.
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Arc diagrams of monotone paths.
    #[command(subcommand)]
    Arc(ArcCmd),
    /// Generalized wiring diagrams.
    #[command(subcommand)]
    Gwd(GwdCmd),
    /// Finite Coxeter groups.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Recompute every headline value and report pass/fail per check.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    PathDfs,
    WeakOrderDp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Max,
    Min,
    MaxPair,
}

#[derive(Args, Debug)]
pub struct MknArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "path-dfs")]
    pub method: MethodArg,
    /// Objective; only `max` is available for path-dfs.
    #[arg(long, value_enum, default_value = "max")]
    pub mode: ModeArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CkArgs {
    #[arg(long)]
    pub k: usize,
    /// Write the extracted repeatable pattern as pattern JSON.
    #[arg(long)]
    pub emit_pattern: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum PatternCmd {
    /// Check a pattern file `{"k":…, "d":…, "sets":[[…]]}` for repeatability.
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// An optimal path for k ≤ 3 assembled from the built-in pattern.
    Witness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ArcCmd {
    /// Draw a path's arc diagram as SVG.
    Svg {
        /// Path JSON `{"k":…, "n":…, "sets":[[…]]}`.
        #[arg(long)]
        path: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Draw the bicolored diagram (red arcs dashed).
        #[arg(long)]
        bicolored: bool,
    },
    /// Interval decomposition of a complete k = 3 path.
    Decompose {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GwdCmd {
    /// Rewrite a reduced diagram into a simple one with the same level-k count.
    Simplify {
        /// Diagram JSON `{"k":…, "events":[{"t":…, "kind":"cross"|"fall", "level":…}]}`.
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoxeterCmd {
    /// Least multiplicity of each generator in reduced words of w_0.
    Min {
        /// Family letter (A, B, D, E, F, G) or full name such as E8.
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        json: bool,
        /// `generator,value` lines.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Check `Av ≥ 0` for restricted Cartan matrices.
    Cartan {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        rank: Option<usize>,
        /// Comma-separated vector; defaults to the minimum multiplicities.
        #[arg(long, value_delimiter = ',')]
        v: Option<Vec<i64>>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Run only these checks (comma-separated numbers 1..12).
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<usize>>,
    /// Machine-readable report; omits timings so output is deterministic.
    #[arg(long)]
    pub json: bool,
}

/// Parses `argv` (program name first), runs, writes to `out`, and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("redmax: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Unsupported(_) | Error::Json(_) => 2,
        Error::Resource(_) => 3,
        Error::InternalContradiction(_) => 4,
        Error::Io(_) => 1,
    }
}

fn caps_for(cli: &Cli) -> Result<Caps> {
    let caps = Caps::from_env()?;
    match &cli.caps {
        Some(spec) => caps.with_overrides(spec),
        None => Ok(caps),
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn coxeter_type(ty: &str, rank: Option<usize>) -> Result<CoxeterType> {
    match rank {
        Some(_) => CoxeterType::new(ty, rank),
        None => ty.parse(),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if cli.jobs == 0 {
        return Err(invalid("--jobs must be positive"));
    }
    let caps = caps_for(cli)?;
    match &cli.command {
        Command::Mkn(a) => mkn(a, cli.jobs, caps, out)?,
        Command::Ck(a) => ck(a, caps, out)?,
        Command::Pattern(c) => pattern(c, out)?,
        Command::Arc(c) => arc(c, out)?,
        Command::Gwd(GwdCmd::Simplify { input }) => {
            let d: ExplicitDiagram = read_json(input)?;
            let s = simplify(&d)?;
            eprintln!(
                "level-{} crossings: {} -> {}; simple: {}; path {}",
                d.k,
                d.level_k_count(),
                s.level_k_count(),
                s.is_simple()?,
                gwd_to_path(&s)?
            );
            emit_json(out, &s)?;
        }
        Command::Coxeter(c) => coxeter(c, out)?,
        Command::Reproduce(a) => return reproduce_cmd(a, cli, caps, out),
    }
    Ok(0)
}

fn mkn(a: &MknArgs, jobs: usize, caps: Caps, out: &mut dyn Write) -> Result<()> {
    let mode = match a.mode {
        ModeArg::Max => DpMode::Max,
        ModeArg::Min => DpMode::Min,
        ModeArg::MaxPair => DpMode::MaxPair,
    };
    let r = match a.method {
        MethodArg::PathDfs => {
            if !matches!(mode, DpMode::Max) {
                return Err(invalid(
                    "path-dfs computes the maximum only; use --method weak-order-dp",
                ));
            }
            let opts = DfsOptions {
                jobs,
                caps,
                ..DfsOptions::default()
            };
            max_multiplicity_path_dfs(a.k, a.n, &opts)?
        }
        MethodArg::WeakOrderDp => max_multiplicity_weak_order_dp(a.k, a.n, mode, &caps)?,
    };
    if a.json {
        return emit_json(out, &r);
    }
    let method = match r.method {
        Method::PathDfs => "path-dfs",
        Method::WeakOrderDp => "weak-order-dp",
    };
    writeln!(out, "{} = {}  ({method})", label(mode, a.k, a.n), r.value)?;
    if matches!(mode, DpMode::Max) {
        let b = BoundReport::new(a.k, a.n, r.value)?;
        writeln!(
            out,
            "series bound {}, sqrt bound {:.3}",
            b.series_bound, b.sqrt_bound
        )?;
    }
    match &r.witness {
        Some(crate::search::Witness::Path(p)) => writeln!(out, "witness path {p}")?,
        Some(crate::search::Witness::Word(w)) => {
            let letters: Vec<String> = w.letters.iter().map(|i| i.to_string()).collect();
            writeln!(out, "witness word {}", letters.join(" "))?
        }
        None => {}
    }
    Ok(())
}

fn label(mode: DpMode, k: usize, n: usize) -> String {
    match mode {
        DpMode::Max => format!("M({k},{n})"),
        DpMode::Min => format!("min s_{k} count in S_{n}"),
        DpMode::MaxPair => format!("max s_{k}/s_{} count in S_{n}", n - k),
    }
}

fn ck(a: &CkArgs, caps: Caps, out: &mut dyn Write) -> Result<()> {
    let r = compute_ck(a.k, &caps)?;
    if let (Some(path), Some(p)) = (&a.emit_pattern, &r.pattern) {
        std::fs::write(path, serde_json::to_string_pretty(&p.pattern)? + "\n")?;
    }
    if a.json {
        return emit_json(out, &r);
    }
    match r.value {
        Some(v) => writeln!(out, "c_{} = {v}", r.k)?,
        None => writeln!(
            out,
            "c_{} in [{}, {}] (state graph truncated at {} states)",
            r.k, r.lower, r.upper, r.nodes
        )?,
    }
    writeln!(out, "states {}, moves {}", r.nodes, r.edges)?;
    if let Some(p) = &r.pattern {
        writeln!(out, "pattern {} (shift {})", p.pattern.base, p.pattern.d)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PatternReport {
    steps: usize,
    d: u32,
    density: String,
    repeatable: bool,
    reason: Option<String>,
}

fn pattern(c: &PatternCmd, out: &mut dyn Write) -> Result<()> {
    match c {
        PatternCmd::Check { file, json } => {
            let p: RepeatablePattern = read_json(file)?;
            let (repeatable, reason) = match p.is_repeatable() {
                Ok(ok) => (
                    ok,
                    (!ok).then(|| "a repetition is not weakly separated".to_string()),
                ),
                Err(Error::InvalidInput(m)) => (false, Some(m)),
                Err(e) => return Err(e),
            };
            let rep = PatternReport {
                steps: p.steps(),
                d: p.d,
                density: p.density().to_string(),
                repeatable,
                reason,
            };
            if *json {
                return emit_json(out, &rep);
            }
            writeln!(
                out,
                "{} with shift {}: {} steps, density {}",
                p.base, p.d, rep.steps, rep.density
            )?;
            match &rep.reason {
                None => writeln!(out, "repeatable")?,
                Some(r) => writeln!(out, "not repeatable: {r}")?,
            }
        }
        PatternCmd::Witness { k, n, json } => {
            let p = PatternFamily::builtin(*k)?.assemble_witness(*n)?;
            if *json {
                return emit_json(out, &p);
            }
            writeln!(out, "{p}")?;
            writeln!(out, "{} steps", p.steps())?;
        }
    }
    Ok(())
}

fn arc(c: &ArcCmd, out: &mut dyn Write) -> Result<()> {
    match c {
        ArcCmd::Svg {
            path,
            out: target,
            bicolored,
        } => {
            let p: MonotonePath = read_json(path)?;
            let svg = if *bicolored {
                render_svg(&build_bicolored(&p)?)
            } else {
                render_svg(&ArcDiagram::from_path(&p)?)
            };
            std::fs::write(target, svg)?;
            writeln!(out, "wrote {}", target.display())?;
        }
        ArcCmd::Decompose { path, json } => {
            let p: MonotonePath = read_json(path)?;
            let dec = if p.k == 3 {
                audit_k3_path(&p)?
            } else {
                decompose(&ArcDiagram::from_path(&p)?)?
            };
            if *json {
                return emit_json(out, &dec);
            }
            if dec.intervals.is_empty() {
                writeln!(out, "no over-limit units")?;
            }
            for piece in &dec.intervals {
                writeln!(out, "[{}, {}]  case {}", piece.lo, piece.hi, piece.case)?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct MinTable {
    #[serde(rename = "type")]
    ty: String,
    /// Keyed by 1-based generator index.
    values: std::collections::BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct CartanOutput {
    explicit: Option<ExplicitCheck>,
    search: crate::coxeter::FeasibilityReport,
}

#[derive(Serialize)]
struct ExplicitCheck {
    holds: bool,
    av: Vec<crate::coxeter::QuadNum>,
}

fn coxeter(c: &CoxeterCmd, out: &mut dyn Write) -> Result<()> {
    match c {
        CoxeterCmd::Min {
            ty,
            rank,
            json,
            csv,
        } => {
            let ty = coxeter_type(ty, *rank)?;
            let values = CoxeterSystem::new(ty)?.min_multiplicities()?;
            if *json {
                let table = MinTable {
                    ty: ty.to_string(),
                    values: values
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| (i + 1, v))
                        .collect(),
                };
                return emit_json(out, &table);
            }
            if *csv {
                writeln!(out, "generator,value")?;
                for (i, v) in values.iter().enumerate() {
                    writeln!(out, "{},{v}", i + 1)?;
                }
                return Ok(());
            }
            let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{ty}: {}", cells.join(","))?;
        }
        CoxeterCmd::Cartan { ty, rank, v, json } => {
            let ty = coxeter_type(ty, *rank)?;
            let v = match v {
                Some(v) => v.clone(),
                None => CoxeterSystem::new(ty)
                    .map_err(|_| invalid(format!("{ty} needs an explicit --v")))?
                    .min_multiplicities()?
                    .into_iter()
                    .map(|x| x as i64)
                    .collect(),
            };
            let explicit = match explicit_cartan(ty) {
                Ok(a) => {
                    let (holds, av) = verify_cartan(ty, &a, &v)?;
                    Some(ExplicitCheck { holds, av })
                }
                Err(Error::Unsupported(_)) => None,
                Err(e) => return Err(e),
            };
            let search = cartan_feasibility(ty, &v)?;
            let report = CartanOutput { explicit, search };
            if *json {
                return emit_json(out, &report);
            }
            let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{ty}, v = ({})", vs.join(","))?;
            if let Some(e) = &report.explicit {
                let av: Vec<String> = e.av.iter().map(|x| x.to_string()).collect();
                writeln!(
                    out,
                    "standard matrix: Av = ({}), nonnegative: {}",
                    av.join(", "),
                    e.holds
                )?;
            }
            let s = &report.search;
            writeln!(
                out,
                "solver: least worst-row violation {:.6}",
                s.min_max_violation
            )?;
            match &s.witness {
                Some(w) => {
                    writeln!(out, "verified witness:")?;
                    for row in &w.entries {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "  [{}]", cells.join(", "))?;
                    }
                    if let Some(av) = &s.av {
                        let av: Vec<String> = av.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "  Av = ({})", av.join(", "))?;
                    }
                }
                None => writeln!(out, "no exact witness found")?,
            }
        }
    }
    Ok(())
}

fn reproduce_cmd(a: &ReproduceArgs, cli: &Cli, caps: Caps, out: &mut dyn Write) -> Result<i32> {
    let opts = ReproduceOptions {
        // JSON mode is kept bitwise reproducible
        jobs: if a.json { 1 } else { cli.jobs },
        seed: cli.seed,
        caps,
        only: a.only.clone().unwrap_or_default(),
    };
    if let Some(bad) = opts.only.iter().find(|&&i| !(1..=12).contains(&i)) {
        return Err(invalid(format!("no check numbered {bad}")));
    }
    let outcomes = reproduce::run(&opts);
    let all = outcomes.iter().all(|o| o.passed);
    if a.json {
        emit_json(out, &outcomes)?;
    } else {
        for o in &outcomes {
            writeln!(
                out,
                "[{}] {:>2}. {}: {} ({:.2} s of {} s)",
                if o.passed { "pass" } else { "FAIL" },
                o.id,
                o.title,
                o.detail,
                o.elapsed.as_secs_f64(),
                o.budget.as_secs()
            )?;
        }
    }
    Ok(if all { 0 } else { 1 })
}
