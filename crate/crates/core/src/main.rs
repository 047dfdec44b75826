use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curve_dlp::curve::{jacobian_order, CurveModel};
use curve_dlp::descent::{full_descent, DescentOptions};
use curve_dlp::error::{Error, Result};
use curve_dlp::heuristics::{consumed_space, heuristic1, heuristic1_descent, heuristic2, random_place, Rate};
use curve_dlp::io;
use curve_dlp::jacobian::Jacobian;
use curve_dlp::linalg::{kernel_vector, snf_mod};
use curve_dlp::pipeline::{self, PipelineConfig, Verification};
use curve_dlp::places::build_factor_base;
use curve_dlp::planner::{
    descent_constants, feasibility, optimize_rectangle, optimize_triangle, PlannerParams, Regime,
};
use curve_dlp::relations::{relation_matrix, Mode};

#[derive(Parser, Debug)]
#[command(name = "curve-dlp", version, about = "Index calculus in Jacobians of C_ab curves")]
struct Cli {
    /// key=value file; command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// key=value lines on standard output
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default, Clone)]
struct CurveArgs {
    /// curve file
    #[arg(long)]
    curve: Option<PathBuf>,
    /// c31_g3 or c5_g2
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args, Debug, Default, Clone)]
struct RunArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// smoothness bound, or "auto"
    #[arg(long)]
    mu: Option<String>,
    /// rectangle or triangle
    #[arg(long)]
    mode: Option<String>,
    /// number of relations to collect
    #[arg(long)]
    want: Option<usize>,
    /// candidate budget for relation collection
    #[arg(long)]
    budget: Option<u64>,
    /// candidate budget per descent step
    #[arg(long)]
    descent_budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Asymptotic constants and feasibility margins
    Plan {
        #[command(flatten)]
        curve: CurveArgs,
        /// κ for the feasibility check (defaults to n·d/g)
        #[arg(long)]
        kappa: Option<f64>,
    },
    /// Point counts, L-polynomial and group order
    Count {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Build the factor base
    Fb {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Collect relations
    Relations {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Kernel vector or Smith form of a matrix file
    Linalg {
        matrix: PathBuf,
        /// invariant factors instead of a kernel vector
        #[arg(long)]
        snf: bool,
    },
    /// Descend a place to the factor base
    Descent {
        #[command(flatten)]
        run: RunArgs,
        /// place as <u>/<v>
        #[arg(long)]
        place: Option<String>,
        /// random place of this degree
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Discrete logarithm of a target class to a base class
    Dlog {
        #[command(flatten)]
        run: RunArgs,
        /// identity, div:<divisor>, ideal rows, or random
        #[arg(long)]
        base: Option<String>,
        /// same forms as --base, or planted:<x> for x·base (default: planted with random x)
        #[arg(long)]
        target: Option<String>,
    },
    /// Invariant factors of the Jacobian
    GroupStructure {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Empirical smoothness and rank statistics
    HeuristicStats {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Re-check a dlog result file
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        result: PathBuf,
    },
}

struct Ctx {
    kv: BTreeMap<String, Vec<String>>,
    seed: u64,
    out_dir: Option<PathBuf>,
    porcelain: bool,
}

impl Ctx {
    fn get(&self, key: &str) -> Option<&str> {
        self.kv.get(key).and_then(|v| v.last()).map(String::as_str)
    }

    fn parsed<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| Error::Config(format!("bad value for '{key}': '{v}'"))),
        }
    }

    fn curve(&self, a: &CurveArgs) -> Result<CurveModel> {
        if let Some(name) = &a.builtin {
            return io::builtin_curve(name);
        }
        let path = a.curve.clone().or_else(|| self.get("curve").map(PathBuf::from));
        if let Some(p) = path {
            return io::parse_curve(&read(&p)?);
        }
        if self.kv.contains_key("builtin") || self.kv.contains_key("equation") {
            return io::curve_from_kv(&self.kv);
        }
        Err(Error::Config("no curve given (use --curve, --builtin or the config file)".into()))
    }

    fn pipeline(&self, r: &RunArgs) -> Result<PipelineConfig> {
        let mut cfg = PipelineConfig { seed: self.seed, ..Default::default() };
        match r.mu.clone().or_else(|| self.get("mu").map(str::to_string)).as_deref() {
            None | Some("auto") => {}
            Some(v) => {
                let mu: usize = v.parse().map_err(|_| Error::Config(format!("bad mu '{v}'")))?;
                if mu == 0 {
                    return Err(Error::Config("mu must be at least 1".into()));
                }
                cfg.mu = Some(mu);
            }
        }
        if let Some(m) = r.mode.clone().or_else(|| self.get("mode").map(str::to_string)) {
            cfg.mode = m.parse::<Mode>()?;
        }
        cfg.want = self.parsed(r.want, "want")?;
        if let Some(b) = self.parsed(r.budget, "budget")? {
            if b == 0 {
                return Err(Error::Config("budget must be positive".into()));
            }
            cfg.collect.max_candidates = b;
        }
        if let Some(b) = self.parsed(r.descent_budget, "descent_budget")? {
            if b == 0 {
                return Err(Error::Config("descent_budget must be positive".into()));
            }
            cfg.descent.budget = b;
        }
        cfg.descent.seed = self.seed;
        Ok(cfg)
    }

    fn emit(&self, file: &str, contents: &str) -> Result<()> {
        if let Some(dir) = &self.out_dir {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(file), contents)?;
        }
        Ok(())
    }

    fn report(&self, pairs: &[(&str, String)]) {
        let mut s = String::new();
        for (k, v) in pairs {
            if self.porcelain {
                let _ = writeln!(s, "{k}={v}");
            } else {
                let _ = writeln!(s, "{k:<18} {v}");
            }
        }
        print!("{s}");
    }
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))
}

fn rate(r: &Rate) -> String {
    format!("{:.5} [{:.5}, {:.5}] ({}/{})", r.value(), r.lo, r.hi, r.hits, r.trials)
}

fn run(cli: Cli) -> Result<()> {
    let kv = match &cli.config {
        Some(p) => io::parse_kv(&read(p)?)?,
        None => BTreeMap::new(),
    };
    let mut ctx = Ctx { kv, seed: 1, out_dir: None, porcelain: cli.porcelain };
    ctx.seed = ctx.parsed(cli.seed, "seed")?.unwrap_or(1);
    ctx.out_dir = cli.out_dir.clone().or_else(|| ctx.get("out_dir").map(PathBuf::from));
    if let Some(t) = ctx.parsed(cli.threads, "threads")? {
        if t == 0 {
            return Err(Error::Config("threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }

    match cli.cmd {
        Cmd::Plan { curve, kappa } => {
            let c = ctx.curve(&curve)?;
            let p = PlannerParams::new(c.q(), c.genus(), c.n(), c.d());
            let f = feasibility(&p, kappa.unwrap_or(p.kappa));
            let r = optimize_rectangle(p.kappa);
            let t = optimize_triangle();
            let dc = descent_constants(p.kappa, r.b);
            let regime = match p.regime() {
                Regime::Rectangle => "rectangle".to_string(),
                Regime::Limit { lambda } => format!("limit(lambda={lambda:.6})"),
                Regime::Subcritical { alpha, exponent } => format!("subcritical(alpha={alpha:.6},exponent={exponent:.6})"),
            };
            ctx.report(&[
                ("q", c.q().to_string()),
                ("g", c.genus().to_string()),
                ("kappa", format!("{:.9}", p.kappa)),
                ("M", format!("{:.9}", p.m)),
                ("lambda", format!("{:.9}", p.lambda())),
                ("regime", regime),
                ("rectangle.b", format!("{:.9}", r.b)),
                ("rectangle.c", format!("{:.9}", r.c)),
                ("rectangle.nu", format!("{:.9}", r.nu)),
                ("rectangle.delta", format!("{:.9}", r.delta)),
                ("triangle.c", format!("{:.9}", t.c)),
                ("triangle.lambda", format!("{:.9}", t.lambda)),
                ("descent.c_inf", format!("{:.9}", dc.c_inf)),
                ("margin.kappa", format!("{:.6}", f.kappa_margin)),
                ("margin.lambda", format!("{:.6}", f.lambda_margin)),
                ("margin.rho", format!("{:.6}", f.rho_margin)),
                ("margin.prop1", format!("{:.6}", f.prop1_margin)),
                ("margin.prop2", format!("{:.6}", f.prop2_margin)),
            ]);
        }
        Cmd::Count { curve } => {
            let c = ctx.curve(&curve)?;
            let z = jacobian_order(&c)?;
            ctx.emit("curve.txt", &io::curve_to_text(&c))?;
            ctx.report(&[
                ("genus", c.genus().to_string()),
                ("points", z.point_counts.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
                ("l_poly", z.l_poly.iter().map(i128::to_string).collect::<Vec<_>>().join(",")),
                ("jacobian_order", z.jacobian_order.to_string()),
            ]);
        }
        Cmd::Fb { run } => {
            let c = ctx.curve(&run.curve)?;
            let cfg = ctx.pipeline(&run)?;
            let fb = match cfg.mu {
                Some(mu) => build_factor_base(&c, mu),
                None => pipeline::auto_mu(&c, jacobian_order(&c)?.jacobian_order).1,
            };
            ctx.emit("fb.txt", &io::factor_base_to_text(&fb))?;
            ctx.report(&[("mu", fb.mu().to_string()), ("fb_size", fb.len().to_string())]);
        }
        Cmd::Relations { run } => {
            let c = ctx.curve(&run.curve)?;
            let cfg = ctx.pipeline(&run)?;
            let setup = pipeline::prepare(&c, &cfg, &mut Default::default())?;
            let m = relation_matrix(&setup.relations, &setup.fb, setup.group_order);
            ctx.emit("fb.txt", &io::factor_base_to_text(&setup.fb))?;
            ctx.emit("relations.txt", &io::relations_to_text(&setup.relations))?;
            ctx.emit("matrix.txt", &io::matrix_to_text(&m))?;
            let s = &setup.collect_stats;
            eprintln!(
                "tested={} smooth={} not_smooth={} rejected={} outside={} duplicates={} escalations={}",
                s.tested, s.smooth, s.not_smooth, s.rejected(), s.outside, s.duplicates, s.escalations
            );
            ctx.report(&[
                ("mu", setup.fb.mu().to_string()),
                ("fb_size", setup.fb.len().to_string()),
                ("relations", setup.relations.len().to_string()),
                ("verified", s.verified.to_string()),
                ("smooth_rate", format!("{:.6}", s.smooth_rate())),
            ]);
        }
        Cmd::Linalg { matrix, snf } => {
            let m = io::parse_matrix(&read(&matrix)?)?;
            if snf {
                let inv = snf_mod(&m.to_dense(), m.ncols(), m.modulus());
                ctx.report(&[("invariants", format!("{inv:?}"))]);
            } else {
                let v = kernel_vector(&m, ctx.seed)?;
                let text = match &v {
                    Some(v) => v.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
                    None => "none".into(),
                };
                ctx.emit("kernel.txt", &format!("{}vector={text}\n", io::header("kernel")))?;
                ctx.report(&[("kernel", text)]);
            }
        }
        Cmd::Descent { run, place, degree } => {
            let c = ctx.curve(&run.curve)?;
            let cfg = ctx.pipeline(&run)?;
            let n = jacobian_order(&c)?.jacobian_order;
            let fb = match cfg.mu {
                Some(mu) => build_factor_base(&c, mu),
                None => pipeline::auto_mu(&c, n).1,
            };
            let q = match (place, degree) {
                (Some(p), _) => io::parse_place(&c, &p)?,
                (None, Some(d)) => random_place(&c, d, &mut ChaCha8Rng::seed_from_u64(ctx.seed))?,
                (None, None) => return Err(Error::Config("descent needs --place or --degree".into())),
            };
            if q.degree() <= fb.mu() {
                return Err(Error::Config(format!("place of degree {} is already in the factor base", q.degree())));
            }
            let opts = DescentOptions { modulus: Some(n), ..cfg.descent.clone() };
            let tree = full_descent(&c, &fb, &q, &opts)?;
            ctx.emit("descent.txt", &io::descent_to_text(&tree))?;
            ctx.report(&[
                ("place", io::place_to_text(&q)),
                ("nodes", tree.nodes.len().to_string()),
                ("depth", tree.depth.to_string()),
                ("candidates", tree.candidates.to_string()),
                ("leaves", tree.leaves.len().to_string()),
            ]);
        }
        Cmd::Dlog { run, base, target } => {
            let c = ctx.curve(&run.curve)?;
            let cfg = ctx.pipeline(&run)?;
            let jac = Jacobian::new(&c);
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0xba5e);
            let mut class = |flag: Option<String>, key: &str| -> Result<_> {
                match flag.or_else(|| ctx.get(key).map(str::to_string)).as_deref() {
                    None | Some("random") => jac.random_class(&mut rng),
                    Some(t) => io::parse_class(&jac, t),
                }
            };
            let b = class(base, "base")?;
            let t_text = target.or_else(|| ctx.get("target").map(str::to_string));
            let t = match t_text.as_deref() {
                None => {
                    let x = rand::Rng::gen_range(&mut rng, 0..jacobian_order(&c)?.jacobian_order.max(1));
                    jac.scalar(&b, x as i128)?
                }
                Some(s) if s.starts_with("planted:") => {
                    let x: i128 = s[8..].parse().map_err(|_| Error::Config(format!("bad planted multiplier '{s}'")))?;
                    jac.scalar(&b, x)?
                }
                Some(_) => class(t_text, "target")?,
            };
            let res = pipeline::run_dlog(&c, &cfg, &b, &t)?;
            let verification = match res.verification {
                Verification::Bsgs => "bsgs",
                Verification::Oracle => "oracle",
            };
            let mut out = io::header("dlog");
            let _ = writeln!(out, "base={}", io::class_to_text(&jac, &b));
            let _ = writeln!(out, "target={}", io::class_to_text(&jac, &t));
            let _ = writeln!(out, "log={}", res.log);
            let _ = writeln!(out, "order={}", res.order);
            let _ = writeln!(out, "group_order={}", res.group_order);
            let _ = writeln!(out, "verification={verification}");
            for w in &res.witnesses {
                let _ = writeln!(out, "witness={}", io::divisor_to_text(w));
            }
            ctx.emit("dlog.txt", &out)?;
            let s = &res.stats;
            let times: Vec<String> = s.times.entries.iter().map(|(k, d)| format!("{k}={:.3}s", d.as_secs_f64())).collect();
            eprintln!(
                "fb={} relations={} tested={} descent_nodes={} descent_candidates={} matrix={}x{} attempts={} {}",
                s.fb_size,
                s.relations,
                s.collect.tested,
                s.descent_nodes,
                s.descent_candidates,
                s.matrix_rows,
                s.matrix_cols,
                s.attempts,
                times.join(" ")
            );
            ctx.report(&[
                ("log", res.log.to_string()),
                ("order", res.order.to_string()),
                ("group_order", res.group_order.to_string()),
                ("verification", verification.into()),
            ]);
        }
        Cmd::GroupStructure { run } => {
            let c = ctx.curve(&run.curve)?;
            let cfg = ctx.pipeline(&run)?;
            let gs = pipeline::run_group_structure(&c, &cfg)?;
            let mut out = io::header("group-structure");
            let _ = writeln!(out, "group_order={}", gs.group_order);
            let _ = writeln!(out, "invariants={}", gs.invariants.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            for g in &gs.generators {
                let _ = writeln!(out, "generator={}", io::place_to_text(g));
            }
            ctx.emit("group.txt", &out)?;
            ctx.report(&[
                ("group_order", gs.group_order.to_string()),
                ("invariants", format!("{:?}", gs.invariants)),
                ("generators", gs.generators.len().to_string()),
            ]);
        }
        Cmd::HeuristicStats { run, samples } => {
            let c = ctx.curve(&run.curve)?;
            let cfg = ctx.pipeline(&run)?;
            let samples = ctx.parsed(samples, "samples")?.unwrap_or(10_000);
            if samples < 1000 {
                return Err(Error::Config("heuristic-stats needs at least 1000 samples".into()));
            }
            let setup = pipeline::prepare(&c, &cfg, &mut Default::default())?;
            let mu = setup.fb.mu();
            let space = consumed_space(&c, &setup.relations, ctx.seed);
            let h1 = heuristic1(&c, &space, mu, samples, ctx.seed)?;
            let k = (c.n() - 1).max(1);
            let h1d = heuristic1_descent(&c, c.genus() + 2, mu, k, samples.min(5000), ctx.seed).ok();
            let h2 = heuristic2(&setup.fb, &setup.relations, setup.group_order, ctx.seed);
            let mut pairs = vec![
                ("h1.space", format!("{} wmax={} kmax={}", space.mode, space.wmax, space.kmax)),
                ("h1.search", rate(&h1.search)),
                ("h1.random", rate(&h1.random)),
                ("h1.ratio", format!("{:.4}", h1.ratio)),
                ("h1.degenerate", rate(&h1.degenerate)),
                ("h1.degrees", format!("{:?}", h1.degrees)),
            ];
            if let Some(d) = &h1d {
                pairs.push(("h1d.place_degree", d.place.degree().to_string()));
                pairs.push(("h1d.target", d.target.to_string()));
                pairs.push(("h1d.cofactor", rate(&d.cofactor)));
                pairs.push(("h1d.random", rate(&d.random)));
                pairs.push(("h1d.ratio", format!("{:.4}", d.ratio)));
            }
            for r in &h2 {
                pairs.push(("h2", format!("l={} shape={}x{} observed={} random={}", r.prime, r.rows, r.cols, r.observed, r.random)));
            }
            let mut out = io::header("heuristic-stats");
            for (k, v) in &pairs {
                let _ = writeln!(out, "{k}={v}");
            }
            ctx.emit("heuristics.txt", &out)?;
            ctx.report(&pairs);
        }
        Cmd::Verify { curve, result } => {
            let c = ctx.curve(&curve)?;
            let jac = Jacobian::new(&c);
            let text = read(&result)?;
            io::check_header(&text)?;
            let kv = io::parse_kv(&text)?;
            let field = |k: &str| {
                kv.get(k).and_then(|v| v.last()).cloned().ok_or_else(|| Error::Parse(format!("result lacks '{k}'")))
            };
            let base = io::parse_class(&jac, &field("base")?)?;
            let target = io::parse_class(&jac, &field("target")?)?;
            let log: u64 = field("log")?.parse().map_err(|_| Error::Parse("bad log".into()))?;
            let witnesses = kv
                .get("witness")
                .map(|ws| ws.iter().map(|w| io::parse_divisor(&c, w)).collect::<Result<Vec<_>>>())
                .transpose()?
                .unwrap_or_default();
            let ok = pipeline::verify_claim(&c, &base, &target, log, &witnesses)?;
            ctx.report(&[("verified", ok.to_string())]);
            if !ok {
                return Err(Error::phase("verify", "the logarithm or a witness does not check out"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Config(_) | Error::Parse(_) | Error::InvalidCurve(_) | Error::Domain(_) | Error::Io(_) => 2,
                Error::Phase { phase: "verify", .. } => 3,
                Error::Phase { .. } | Error::Resource(_) | Error::Internal(_) => {
                    eprintln!("hint: raise --budget/--descent-budget, collect more relations with --want, or try another --seed");
                    3
                }
            };
            ExitCode::from(code)
        }
    }
}
