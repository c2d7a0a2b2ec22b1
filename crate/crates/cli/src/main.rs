use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gwa_core::cycles::Cycle;
use gwa_core::error::AlgebraError;
use serde_json::{json, Value};

mod commands;
mod io;

use commands::Outcome;
use io::{envelope, RingDesc, Scenario, SpecFile};

const DEFAULT_WINDOW: i64 = 12;

#[derive(Parser)]
#[command(name = "gwa", version, about = "Exact constructions and checks for graded rings of skew-Laurent type")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// `A` for σ(u) = u + 1, `B` for σ(u) = p·u.
    #[arg(long, default_value = "A")]
    ring: String,
    /// Multiplier for kind B: a rational or `symbolic`.
    #[arg(long)]
    p: Option<String>,
    /// Multipliers of the torus variables x2, x3, ...
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    #[arg(long)]
    dim: Option<usize>,
}

impl RingArgs {
    fn desc(&self) -> RingDesc {
        RingDesc {
            kind: self.ring.clone(),
            p: self.p.clone(),
            dim: self.dim,
            params: self.params.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dump the pieces of B(G, H, J), from a spec file or as the ring containing T(σ, f).
    Build {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Run named checks against a spec file.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "closure,comaximality,simplicity,trichotomy")]
        checks: Vec<String>,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Decide whether V(f) is σ-lonely.
    Lonely {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        f: String,
    },
    /// Compare End(L) with B(G, H, J) for G built from the set S.
    Morita {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long = "S", value_delimiter = ',', default_value = "")]
        s: Vec<String>,
        #[arg(long, default_value = "u")]
        orbit: String,
        #[arg(long, default_value = "u")]
        h: String,
        #[arg(long, default_value = "1")]
        j: String,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Embed the generalized Weyl algebra T(σ, f).
    Gwa {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Check the identities of G_n for a given or random cycle.
    Cycles {
        /// Cycle as `[[i, a_i], ...]`.
        #[arg(long = "G")]
        g: Option<String>,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Execute a scenario config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Failure before any check ran: usage and parse errors exit with 2, errors
/// raised by a check itself with 1.
struct Failure {
    code: u8,
    body: Value,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        use AlgebraError::*;
        let code = match e {
            Parse(_) | InvalidRing(_) | InvalidSpec(_) | NotPleasantlyAlternating(_) | DimensionMismatch(_)
            | WindowTooSmall(_) | ZeroInput(_) | ConstantInput(_) | CycleNotEffective(_) | NormalizeFirst => 2,
            _ => 1,
        };
        let mut body = json!({ "error": e.to_string() });
        if let Parse(p) = &e {
            body["position"] = json!(p.pos);
        }
        Failure { code, body }
    }
}

fn usage(msg: String) -> Failure {
    Failure {
        code: 2,
        body: json!({ "error": msg }),
    }
}

fn window(arg: Option<i64>) -> Result<i64, Failure> {
    if let Some(w) = arg {
        return Ok(w);
    }
    match std::env::var("GWA_WINDOW_DEFAULT") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("GWA_WINDOW_DEFAULT must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_WINDOW),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure {
        code: 2,
        body: json!({ "error": format!("{}: {e}", path.display()), "line": e.line(), "column": e.column() }),
    })
}

fn dispatch(command: &Command) -> Result<(&'static str, Outcome), Failure> {
    Ok(match command {
        Command::Build { ring, f, spec, window: w } => {
            let spec = match spec {
                Some(path) => Some(read_json::<SpecFile>(path)?.into_parts()?.0),
                None => None,
            };
            let desc = match (&spec, f) {
                (Some(s), None) => s.ring.clone().unwrap_or_else(|| ring.desc()),
                _ => ring.desc(),
            };
            ("build", commands::build(&desc.line()?, f.as_deref(), spec.as_ref(), window(*w)?)?)
        }
        Command::Verify { spec, checks, window: w } => {
            let (spec, pieces) = read_json::<SpecFile>(spec)?.into_parts()?;
            let desc = spec.ring.clone().unwrap_or_else(|| RingDesc::new("A", None));
            let w = window(*w)?;
            let checks: Vec<(String, i64)> = checks.iter().map(|c| (c.trim().to_string(), w)).collect();
            ("verify", commands::verify(&desc.line()?, &spec, pieces.as_ref(), &checks)?)
        }
        Command::Lonely { ring, f } => ("lonely", commands::lonely(&ring.desc(), f)?),
        Command::Morita { ring, s, orbit, h, j, window: w } => {
            let s: BTreeSet<i64> = s
                .iter()
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse().map_err(|_| usage(format!("--S expects integers, got {x:?}"))))
                .collect::<Result<_, _>>()?;
            if s.iter().any(|&x| x < 0) {
                return Err(usage("--S expects nonnegative offsets".into()));
            }
            ("morita", commands::morita(&ring.desc().line()?, &s, orbit, h, j, window(*w)?)?)
        }
        Command::Gwa { ring, f, window: w } => ("gwa", commands::gwa(&ring.desc().line()?, f, window(*w)?)?),
        Command::Cycles { g, window: w, seed } => {
            let g: Option<Cycle> = match g {
                Some(text) => Some(serde_json::from_str(text).map_err(|e| Failure {
                    code: 2,
                    body: json!({ "error": format!("--G: {e}"), "position": e.column() }),
                })?),
                None => None,
            };
            ("cycles", commands::cycles(g.as_ref(), window(*w)?, *seed)?)
        }
        Command::Run { config } => {
            let sc: Scenario = read_json(config)?;
            let out = commands::run(&sc, window(None)?)?;
            if let Some(path) = &sc.output {
                let text = serde_json::to_string_pretty(&envelope("run", out.body.clone())).expect("json");
                fs::write(path, text).map_err(|e| usage(format!("{path}: {e}")))?;
            }
            ("run", out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match dispatch(&cli.command) {
        Ok((name, out)) => (envelope(name, out.body), u8::from(out.failed)),
        Err(f) => {
            eprintln!("gwa: {}", f.body["error"].as_str().unwrap_or("error"));
            (envelope("error", f.body), f.code)
        }
    };
    let text = serde_json::to_string_pretty(&text).expect("json");
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("gwa: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
