//! Command-line front end.
//!
//! Every subcommand produces an [`Outcome`]: a line of canonical text, a JSON
//! document carrying the same result plus details, and an exit code
//! (0 verified, 1 refuted, 2 error, 3 indeterminate). Outcomes are cached by
//! their JSON form under `TAUTOCHOW_CACHE_DIR`, so a cache hit prints exactly
//! what a fresh run would.

use crate::algebra::Polynomial;
use crate::bv::BvRing;
use crate::expr::{Cache, CacheKey};
use crate::fano::{fano_normalize, integrate_fano, integrate_grass, verify_theocubic, FanoRing, GrassRing};
use crate::hilbert::{HilbertEngine, HilbertRing, SetPartition};
use crate::k3::{realize, K3Model};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;

pub const CACHE_ENV: &str = "TAUTOCHOW_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "tautochow",
    version,
    about = "Exact calculus for tautological Chow-ring relations"
)]
pub struct Cli {
    /// Print the result as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a class on S^m.
    Normalize {
        #[arg(long)]
        m: u16,
        #[arg(long)]
        model: Option<PathBuf>,
        expr: String,
    },
    /// Image of a class on S^m in the cohomology of a lattice model.
    Realize {
        #[arg(long)]
        m: u16,
        #[arg(long)]
        model: PathBuf,
        expr: String,
    },
    /// Decides whether a class on S^m vanishes in the Chow ring.
    VerifyVanishing {
        #[arg(long)]
        m: u16,
        #[arg(long)]
        model: PathBuf,
        expr: String,
    },
    /// Tautological classes on Hilbert schemes of points.
    #[command(subcommand)]
    Hilbert(HilbertCommand),
    /// The Fano variety of lines of a cubic fourfold.
    #[command(subcommand)]
    Fano(FanoCommand),
    /// The Grassmannian G(2,6).
    #[command(subcommand)]
    Grass(GrassCommand),
}

#[derive(Args, Debug)]
pub struct ModelArg {
    /// Lattice model; only its NS form is used. Defaults to rank 1, degree 2.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum HilbertCommand {
    /// Pullback along the partial diagonal of a set partition.
    Pullback {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        partition: String,
        #[arg(long, default_value_t = 0)]
        l: u16,
        #[command(flatten)]
        model: ModelArg,
        expr: String,
    },
    /// Integral over S^[n] of a class of codimension 2n.
    ChernNumber {
        #[arg(long)]
        n: u16,
        #[command(flatten)]
        model: ModelArg,
        expr: String,
    },
    /// Decides whether a class on S^[n] vanishes in the Chow ring.
    Verify {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        model: PathBuf,
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FanoCommand {
    /// Degree of a codimension-4 polynomial in l and cc.
    Integrate { expr: String },
    /// Normal form under the relation calculus.
    Normalize { expr: String },
    /// Decides whether a class vanishes in the Chow ring.
    Verify { expr: String },
}

#[derive(Subcommand, Debug)]
pub enum GrassCommand {
    /// Degree of a class in the Schubert basis.
    Integrate { expr: String },
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit_code: i32,
}

impl Outcome {
    fn value(text: String, mut json: Value) -> Self {
        json["result"] = Value::String(text.clone());
        json["exit_code"] = json!(0);
        Outcome {
            text,
            json,
            exit_code: 0,
        }
    }

    fn verdict(v: crate::Verdict, text: String, mut json: Value) -> Self {
        json["result"] = Value::String(text.clone());
        json["verdict"] = json!(v.as_str());
        json["exit_code"] = json!(v.exit_code());
        Outcome {
            text,
            json,
            exit_code: v.exit_code(),
        }
    }

    fn from_json(json: Value) -> Option<Self> {
        Some(Outcome {
            text: json.get("result")?.as_str()?.to_string(),
            exit_code: json.get("exit_code")?.as_i64()? as i32,
            json,
        })
    }
}

type Failure = Box<dyn std::error::Error>;

fn load_model(path: &std::path::Path) -> Result<K3Model, Failure> {
    Ok(K3Model::from_file(path)?)
}

fn engine_for(model: &ModelArg) -> Result<(HilbertEngine, Option<K3Model>), Failure> {
    match &model.model {
        Some(p) => {
            let m = load_model(p)?;
            Ok((HilbertEngine::for_model(&m), Some(m)))
        }
        None => Ok((HilbertEngine::default(), None)),
    }
}

fn fingerprint(model: Option<&K3Model>) -> String {
    format!(
        "{}:{}",
        env!("CARGO_PKG_VERSION"),
        model.map_or("-", |m| m.fingerprint())
    )
}

/// A command resolved to its cache key and the computation to run on a miss.
struct Plan<'a> {
    key: CacheKey,
    run: Box<dyn FnOnce() -> Result<Outcome, Failure> + 'a>,
}

fn plan(command: &Command) -> Result<Plan<'_>, Failure> {
    Ok(match command {
        Command::Normalize { m, model, expr } => {
            let model = model.as_deref().map(load_model).transpose()?;
            let ring = match &model {
                Some(md) => BvRing::for_model(*m, md),
                None => BvRing::k3(*m),
            };
            let p = ring.parse(expr)?;
            let mut key = CacheKey::new("normalize", "bv", &ring.print(&p), &fingerprint(model.as_ref()));
            key.n = Some(*m as u32);
            Plan {
                key,
                run: Box::new(move || {
                    let nf = ring.print(&ring.normalize(&p));
                    Ok(Outcome::value(nf, json!({"command": "normalize", "m": m})))
                }),
            }
        }
        Command::Realize { m, model, expr } => {
            let model = load_model(model)?;
            let ring = BvRing::for_model(*m, &model);
            let p = ring.parse(expr)?;
            let mut key = CacheKey::new("realize", "bv", &ring.print(&p), &fingerprint(Some(&model)));
            key.n = Some(*m as u32);
            Plan {
                key,
                run: Box::new(move || {
                    let t = realize(&p, *m as usize, &model)?;
                    Ok(Outcome::value(t.to_string(), json!({"command": "realize", "m": m})))
                }),
            }
        }
        Command::VerifyVanishing { m, model, expr } => {
            let model = load_model(model)?;
            let ring = BvRing::for_model(*m, &model);
            let p = ring.parse(expr)?;
            let mut key = CacheKey::new("verify-vanishing", "bv", &ring.print(&p), &fingerprint(Some(&model)));
            key.n = Some(*m as u32);
            Plan {
                key,
                run: Box::new(move || {
                    let rep = ring.verify_vanishing(&p, &model)?;
                    Ok(Outcome::verdict(
                        rep.verdict,
                        rep.verdict.as_str().to_string(),
                        json!({
                            "command": "verify-vanishing",
                            "m": m,
                            "hypothesis": rep.hypothesis,
                            "normal_form": ring.print(&rep.normal_form),
                        }),
                    ))
                }),
            }
        }
        Command::Hilbert(h) => plan_hilbert(h)?,
        Command::Fano(f) => {
            let (name, expr) = match f {
                FanoCommand::Integrate { expr } => ("fano integrate", expr),
                FanoCommand::Normalize { expr } => ("fano normalize", expr),
                FanoCommand::Verify { expr } => ("fano verify", expr),
            };
            let r = FanoRing;
            let p = r.parse(expr)?;
            let key = CacheKey::new(name, "fano", &r.print(&p), &fingerprint(None));
            Plan {
                key,
                run: Box::new(move || run_fano(f, &p)),
            }
        }
        Command::Grass(GrassCommand::Integrate { expr }) => {
            let r = GrassRing;
            let p = r.parse(expr)?;
            let key = CacheKey::new(
                "grass integrate",
                "grass",
                &crate::expr::print_canonical(&p, &r),
                &fingerprint(None),
            );
            Plan {
                key,
                run: Box::new(move || {
                    let v = integrate_grass(&r.evaluate(&p));
                    Ok(Outcome::value(v.to_string(), json!({"command": "grass integrate"})))
                }),
            }
        }
    })
}

fn plan_hilbert(h: &HilbertCommand) -> Result<Plan<'_>, Failure> {
    Ok(match h {
        HilbertCommand::Pullback {
            n,
            partition,
            l,
            model,
            expr,
        } => {
            let (engine, md) = engine_for(model)?;
            let mu = SetPartition::parse(partition)?;
            if mu.n() != *n {
                return Err(format!("partition {mu} is not a partition of {{1..{n}}}").into());
            }
            let ring = HilbertRing::new(*n, *l, engine.bv().rho());
            let p = ring.parse(expr)?;
            let mut key = CacheKey::new(
                "hilbert pullback",
                "hilbert",
                &ring.print(&p),
                &fingerprint(md.as_ref()),
            );
            key.n = Some(*n as u32);
            key.partition = Some(mu.to_string());
            key.l = Some(*l as u32);
            Plan {
                key,
                run: Box::new(move || {
                    let pulled = engine.pullback(&p, &mu, *l)?;
                    let text = engine.bv().with_m(mu.m() + l).print(&pulled);
                    Ok(Outcome::value(
                        text,
                        json!({"command": "hilbert pullback", "n": n, "partition": mu.to_string(), "l": l}),
                    ))
                }),
            }
        }
        HilbertCommand::ChernNumber { n, model, expr } => {
            let (engine, md) = engine_for(model)?;
            let ring = HilbertRing::new(*n, 0, engine.bv().rho());
            let p = ring.parse(expr)?;
            let mut key = CacheKey::new(
                "hilbert chern-number",
                "hilbert",
                &ring.print(&p),
                &fingerprint(md.as_ref()),
            );
            key.n = Some(*n as u32);
            Plan {
                key,
                run: Box::new(move || {
                    let v = engine.chern_number(&p, *n)?;
                    Ok(Outcome::value(
                        v.to_string(),
                        json!({"command": "hilbert chern-number", "n": n}),
                    ))
                }),
            }
        }
        HilbertCommand::Verify { n, model, expr } => {
            let md = load_model(model)?;
            let engine = HilbertEngine::for_model(&md);
            let ring = HilbertRing::new(*n, 0, engine.bv().rho());
            let p = ring.parse(expr)?;
            let mut key = CacheKey::new("hilbert verify", "hilbert", &ring.print(&p), &fingerprint(Some(&md)));
            key.n = Some(*n as u32);
            Plan {
                key,
                run: Box::new(move || {
                    let rep = engine.verify_chow_zero(&p, *n, &md)?;
                    Ok(Outcome::verdict(
                        rep.verdict,
                        rep.verdict.as_str().to_string(),
                        json!({"command": "hilbert verify", "n": n, "certificates": rep.certificates}),
                    ))
                }),
            }
        }
    })
}

fn run_fano(f: &FanoCommand, p: &Polynomial) -> Result<Outcome, Failure> {
    let r = FanoRing;
    Ok(match f {
        FanoCommand::Integrate { .. } => {
            let v = integrate_fano(p)?;
            Outcome::value(v.to_string(), json!({"command": "fano integrate"}))
        }
        FanoCommand::Normalize { .. } => {
            let rep = fano_normalize(p);
            Outcome::value(
                r.print(&rep.normal_form),
                json!({
                    "command": "fano normalize",
                    "decomposition": rep.decomposition(),
                    "rules": rep.rules,
                }),
            )
        }
        FanoCommand::Verify { .. } => {
            let rep = verify_theocubic(p)?;
            Outcome::verdict(
                rep.verdict,
                rep.verdict.as_str().to_string(),
                json!({
                    "command": "fano verify",
                    "normal_form": rep.normal_form,
                    "decomposition": rep.decomposition,
                    "rules": rep.rules,
                    "cohomology": rep.cohomology,
                }),
            )
        }
    })
}

fn cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("tautochow"),
        None => std::env::temp_dir().join("tautochow-cache"),
    }
}

/// Runs a parsed command line, consulting the cache unless `--no-cache`.
pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let plan = plan(&cli.command)?;
    let cache = if cli.no_cache {
        None
    } else {
        match Cache::open(cache_dir()) {
            Ok(c) => Some(c),
            Err(e) => {
                log::warn!("cache disabled: {e}");
                None
            }
        }
    };
    if let Some(c) = &cache {
        if let Some(hit) = c.get(&plan.key) {
            match serde_json::from_str(&hit).ok().and_then(Outcome::from_json) {
                Some(o) => {
                    log::debug!("cache hit {}", plan.key.digest());
                    return Ok(o);
                }
                None => log::warn!("ignoring unreadable cache record {}", plan.key.digest()),
            }
        }
    }
    let out = (plan.run)()?;
    if let Some(c) = &cache {
        c.put(&plan.key, &serde_json::to_string(&out.json)?)?;
    }
    Ok(out)
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                println!("{}", out.text);
            }
            out.exit_code
        }
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": e.to_string(), "exit_code": 2})).expect("json")
                );
            }
            eprintln!("error: {e}");
            2
        }
    }
}
