use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hallforge::qalg::{bb_relations, qgkm_relations, verify_all, Charge, Family, RelationReport, Status};
use hallforge::reflect::{
    square_generators, verify_braid_rank2, verify_inverse, verify_square, Reflection,
};
use hallforge::{Bounds, HallCtx, Mode, Quiver};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hallforge", version, about = "Exact semi-derived Hall algebra computations over F_q")]
struct Cli {
    #[command(flatten)]
    cfg: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Quiver JSON file: {"vertices": [..], "arrows": [{"src", "tgt"}]}.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    /// nilpotent or full.
    #[arg(long, global = true, default_value = "nilpotent")]
    mode: String,
    #[arg(long, global = true, default_value_t = 3)]
    max_level: u32,
    /// Largest total dimension of an enumerated object.
    #[arg(long, global = true, default_value_t = 6)]
    max_dim: usize,
    /// Comma-separated charge multiplicities, one per vertex.
    #[arg(long, global = true)]
    charge: Option<String>,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the generalized Cartan matrix.
    Cartan,
    /// List isoclasses of a dimension vector.
    Enum {
        #[arg(long)]
        dims: String,
    },
    /// Hall product of two isoclasses in the module Hall algebra.
    Hall {
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        twisted: bool,
    },
    /// Multiply elements of the semi-derived Hall algebra.
    Mul {
        /// Element JSON; repeat for more factors.
        #[arg(long = "elem", required = true)]
        elems: Vec<String>,
    },
    /// Reduce a complex to normal form.
    Reduce {
        #[arg(long)]
        cx: String,
    },
    /// Apply the reflection isomorphism at a sink or source.
    Reflect {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        elem: String,
    },
    /// Check the defining relations of the realized quantum algebra.
    Verify {
        #[arg(long, value_enum)]
        suite: VerifySuite,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Check braid symmetries against reflections.
    Braid {
        #[arg(long, value_enum)]
        suite: BraidSuite,
        #[arg(long)]
        vertex: Option<String>,
        /// Generator family for rank2: bb or qgkm.
        #[arg(long, default_value = "bb")]
        family: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifySuite {
    BbRelations,
    QgkmRelations,
}

#[derive(Clone, Copy, ValueEnum)]
enum BraidSuite {
    Rank2,
    Square,
    Inverse,
}

/// Configuration problems exit with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct ConfigError(String);

enum Outcome {
    Done,
    Failures,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failures) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cfg = &cli.cfg;
    if let Some(j) = cfg.jobs {
        if j == 0 {
            bail!(ConfigError("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().context("thread pool")?;
    }
    if cfg.max_dim == 0 || cfg.max_level == 0 {
        bail!(ConfigError("bounds must be positive".into()));
    }
    let ctx = Arc::new(load_ctx(cfg, &cli.cmd)?);
    let (value, outcome) = match &cli.cmd {
        Cmd::Cartan => (cartan(&ctx), Outcome::Done),
        Cmd::Enum { dims } => (enumerate(&ctx, dims)?, Outcome::Done),
        Cmd::Hall { x, z, twisted } => (hall(&ctx, x, z, *twisted)?, Outcome::Done),
        Cmd::Mul { elems } => (mul(&ctx, elems)?, Outcome::Done),
        Cmd::Reduce { cx } => {
            let m = ctx.cx_from_json(&parse_json(cx, "--cx")?)?;
            (ctx.sdh_to_json(&ctx.reduce(&m)?), Outcome::Done)
        }
        Cmd::Reflect { vertex, elem } => (reflect(&ctx, vertex, elem)?, Outcome::Done),
        Cmd::Verify { suite, max_degree } => verify(&ctx, cfg, *suite, *max_degree)?,
        Cmd::Braid { suite, vertex, family } => braid(&ctx, cfg, *suite, vertex.as_deref(), family)?,
    };
    emit(cfg, &value)?;
    Ok(outcome)
}

fn load_ctx(cfg: &Global, cmd: &Cmd) -> anyhow::Result<HallCtx> {
    let path = cfg.quiver.as_ref().ok_or_else(|| ConfigError("--quiver is required".into()))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let quiver = Quiver::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mode = Mode::parse(&cfg.mode)?;
    // the QGKM realization lives in the full category
    let mode = match cmd {
        Cmd::Verify { suite: VerifySuite::QgkmRelations, .. } => Mode::Full,
        Cmd::Braid { family, .. } if family == "qgkm" => Mode::Full,
        _ => mode,
    };
    let bounds = Bounds { max_total_dim: cfg.max_dim, max_level: cfg.max_level, ..Bounds::default() };
    Ok(HallCtx::with_bounds(quiver, cfg.q, mode, bounds)?)
}

fn parse_json(text: &str, what: &str) -> anyhow::Result<Value> {
    serde_json::from_str(text).map_err(|e| ConfigError(format!("{what}: {e}")).into())
}

fn parse_list(text: &str, what: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| ConfigError(format!("{what}: bad entry '{s}'")).into()))
        .collect()
}

fn emit(cfg: &Global, value: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &cfg.out {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

fn cartan(ctx: &HallCtx) -> Value {
    let c = ctx.cartan();
    let a: Vec<Vec<i64>> = (0..c.n()).map(|i| (0..c.n()).map(|j| c.entry(i, j)).collect()).collect();
    json!({ "a": a })
}

fn enumerate(ctx: &HallCtx, dims: &str) -> anyhow::Result<Value> {
    let dims = parse_list(dims, "--dims")?;
    if dims.len() != ctx.n() {
        bail!(ConfigError(format!("--dims needs {} entries", ctx.n())));
    }
    let mut rows = Vec::new();
    for c in ctx.enumerate_reps(&dims)? {
        rows.push(json!({ "class": ctx.class_id(&c), "aut": ctx.aut_size(&c)?.to_string() }));
    }
    Ok(Value::Array(rows))
}

fn hall(ctx: &HallCtx, x: &str, z: &str, twisted: bool) -> anyhow::Result<Value> {
    let x = ctx.class_elem(ctx.parse_class_id(x)?);
    let z = ctx.class_elem(ctx.parse_class_id(z)?);
    let prod = ctx.module_hall_product(&x, &z, twisted)?;
    let mut rows: Vec<(String, Value)> =
        prod.iter().map(|(c, s)| Ok((ctx.class_id(c), serde_json::to_value(s)?))).collect::<anyhow::Result<_>>()?;
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Value::Array(rows.into_iter().map(|(class, coeff)| json!({ "class": class, "coeff": coeff })).collect()))
}

fn mul(ctx: &HallCtx, elems: &[String]) -> anyhow::Result<Value> {
    let factors = elems
        .iter()
        .map(|e| Ok(ctx.sdh_from_json(&parse_json(e, "--elem")?)?))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(ctx.sdh_to_json(&ctx.sdh_product(&factors)?))
}

fn reflect(ctx: &Arc<HallCtx>, vertex: &str, elem: &str) -> anyhow::Result<Value> {
    let l = ctx.quiver().vertex_index(vertex)?;
    let refl = Reflection::new(ctx.clone(), l)?;
    let x = ctx.sdh_from_json(&parse_json(elem, "--elem")?)?;
    let y = refl.gamma(&x)?;
    Ok(json!({
        "target_quiver": refl.target().quiver().to_json_value(),
        "target_hash": refl.target().quiver_hash(),
        "elem": refl.target().sdh_to_json(&y),
    }))
}

fn charge(ctx: &HallCtx, cfg: &Global) -> anyhow::Result<Charge> {
    match &cfg.charge {
        None => Ok(Charge::trivial(ctx)?),
        Some(s) => {
            let m = parse_list(s, "--charge")?;
            Charge::new(ctx, m).map_err(|e| ConfigError(e.to_string()).into())
        }
    }
}

fn verify(ctx: &HallCtx, cfg: &Global, suite: VerifySuite, max_degree: usize) -> anyhow::Result<(Value, Outcome)> {
    let (name, reports) = match suite {
        VerifySuite::BbRelations => {
            let insts = bb_relations(ctx, cfg.max_level);
            ("bb-relations", verify_all(ctx, &insts, None, max_degree)?)
        }
        VerifySuite::QgkmRelations => {
            let ch = charge(ctx, cfg)?;
            let insts = qgkm_relations(ctx, &ch);
            ("qgkm-relations", verify_all(ctx, &insts, Some(&ch), max_degree)?)
        }
    };
    Ok(report(name, ctx, ctx, &reports))
}

fn braid(
    ctx: &Arc<HallCtx>,
    cfg: &Global,
    suite: BraidSuite,
    vertex: Option<&str>,
    family: &str,
) -> anyhow::Result<(Value, Outcome)> {
    let reflection = || -> anyhow::Result<Reflection> {
        let v = vertex.ok_or_else(|| ConfigError("--vertex is required for this suite".into()))?;
        Ok(Reflection::new(ctx.clone(), ctx.quiver().vertex_index(v)?)?)
    };
    match suite {
        BraidSuite::Rank2 => {
            let (fam, ch) = match family {
                "bb" => (Family::Bozec, None),
                "qgkm" => (Family::Gkm, Some(charge(ctx, cfg)?)),
                other => bail!(ConfigError(format!("unknown family '{other}'"))),
            };
            let reports = verify_braid_rank2(ctx, fam, ch.as_ref())?;
            Ok(report("braid-rank2", ctx, ctx, &reports))
        }
        BraidSuite::Square => {
            let refl = reflection()?;
            let gens = square_generators(ctx, cfg.max_level);
            let reports = verify_square(&refl, &gens, None)?;
            Ok(report("braid-square", ctx, refl.target(), &reports))
        }
        BraidSuite::Inverse => {
            let refl = reflection()?;
            let max_total = cfg.max_dim.min(2);
            let gens = square_generators(ctx, cfg.max_level);
            let reports = verify_inverse(&refl, &gens, max_total)?;
            Ok(report("braid-inverse", ctx, ctx, &reports))
        }
    }
}

fn report(suite: &str, ctx: &HallCtx, witness_ctx: &HallCtx, reports: &[RelationReport]) -> (Value, Outcome) {
    let count = |f: fn(&Status) -> bool| reports.iter().filter(|r| f(&r.status)).count();
    let pass = count(|s| matches!(s, Status::Pass));
    let fail = count(|s| matches!(s, Status::Fail));
    let skipped = count(|s| matches!(s, Status::Skipped(_)));
    for r in reports {
        if let Status::Skipped(why) = &r.status {
            eprintln!("warning: skipped {}: {why}", r.id);
        }
    }
    let value = json!({
        "suite": suite,
        "quiver": ctx.quiver_hash(),
        "q": ctx.q(),
        "mode": ctx.mode().as_str(),
        "summary": { "pass": pass, "fail": fail, "skipped": skipped },
        "checks": reports.iter().map(|r| r.to_json(witness_ctx)).collect::<Vec<_>>(),
    });
    (value, if fail > 0 { Outcome::Failures } else { Outcome::Done })
}
