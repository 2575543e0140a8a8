//! Command-line front end: argument parsing, config files and the command
//! implementations behind the `mlab` binary.

mod commands;
mod config;
mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{
    parse_config_file, parse_dim_grid, parse_exponent, parse_float_grid, Format, RunConfig,
    TensorSource,
};

use crate::error::LabError;

/// Exit status of a run.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const GUARD: i32 = 3;
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Parser, Debug)]
#[command(
    name = "mlab",
    version,
    about = "Multilinear form norms and summing inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Best known constants with their power bounds.
    Constants(ConstantsArgs),
    /// Check a catalog inequality on file, witness or random tensors.
    Verify(VerifyArgs),
    /// Sup-norm of a tensor file.
    Norm(NormArgs),
    /// Exponent scan over a witness family.
    Scan(ScanArgs),
    /// Random sign form growth experiment.
    Ksz(KszArgs),
    /// List the catalog instances.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// key=value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// csv, jsonl or table.
    #[arg(long)]
    format: Option<String>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "m-max")]
    m_max: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Catalog name, see `mlab catalog`.
    #[arg(long)]
    instance: Option<String>,
    /// Tensor file in the text format.
    #[arg(long)]
    tensor: Option<String>,
    /// Witness generator (`prop90`), one tensor per N.
    #[arg(long)]
    witness: Option<String>,
    /// Seeded random tensors with entries in {-1, 1}.
    #[arg(long = "random-sign")]
    random_sign: bool,
    /// Seeded random tensors with entries uniform in [-1, 1].
    #[arg(long)]
    uniform: bool,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Dimension or dimension grid.
    #[arg(long = "N")]
    dims: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    field: Option<String>,
    /// exact, ascent or auto.
    #[arg(long)]
    norm: Option<String>,
    /// cantor, box[:side] or diagonal[:side].
    #[arg(long)]
    bijection: Option<String>,
    #[arg(long = "core-dim")]
    core_dim: Option<String>,
    /// Override the instance constant; the override is checked as a claim.
    #[arg(long)]
    constant: Option<String>,
    /// Random tensors per dimension.
    #[arg(long)]
    count: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    restarts: Option<String>,
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long)]
    tol: Option<String>,
}

#[derive(Args, Debug)]
struct NormArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    tensor: Option<String>,
    /// inf or an exponent p >= 1.
    #[arg(long)]
    ball: Option<String>,
    /// exact or ascent.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    restarts: Option<String>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    witness: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    p: Option<String>,
    /// Exponent grid `a:b:step` or list.
    #[arg(long)]
    s: Option<String>,
    /// Dimension grid `a:b`, `a:b:step`, `a:b:xF` or list.
    #[arg(long = "N")]
    dims: Option<String>,
    /// holder, exact or ascent.
    #[arg(long)]
    denom: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    restarts: Option<String>,
}

#[derive(Args, Debug)]
struct KszArgs {
    #[command(flatten)]
    common: Common,
    /// Group sizes, e.g. `2,1`.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long = "N")]
    dims: Option<String>,
    #[arg(long)]
    draws: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long = "c-sub")]
    c_sub: Option<String>,
    /// auto, exact, full or ascent.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[command(flatten)]
    common: Common,
    /// Order at which constants are rendered.
    #[arg(long)]
    m: Option<String>,
}

type Pairs = Vec<(&'static str, Option<String>)>;

fn flag(set: bool) -> Option<String> {
    set.then(|| "true".to_string())
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Constants(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Norm(a) => &a.common,
            Command::Scan(a) => &a.common,
            Command::Ksz(a) => &a.common,
            Command::Catalog(a) => &a.common,
        }
    }

    fn pairs(&self) -> Pairs {
        let c = self.common();
        let mut out: Pairs = vec![("format", c.format.clone()), ("out", c.out.clone())];
        match self {
            Command::Constants(a) => out.push(("m-max", a.m_max.clone())),
            Command::Verify(a) => out.extend([
                ("instance", a.instance.clone()),
                ("tensor", a.tensor.clone()),
                ("witness", a.witness.clone()),
                ("random-sign", flag(a.random_sign)),
                ("uniform", flag(a.uniform)),
                ("m", a.m.clone()),
                ("n", a.n.clone()),
                ("N", a.dims.clone()),
                ("p", a.p.clone()),
                ("field", a.field.clone()),
                ("norm", a.norm.clone()),
                ("bijection", a.bijection.clone()),
                ("core-dim", a.core_dim.clone()),
                ("constant", a.constant.clone()),
                ("count", a.count.clone()),
                ("seed", a.seed.clone()),
                ("restarts", a.restarts.clone()),
                ("pattern", a.pattern.clone()),
                ("tol", a.tol.clone()),
            ]),
            Command::Norm(a) => out.extend([
                ("tensor", a.tensor.clone()),
                ("ball", a.ball.clone()),
                ("method", a.method.clone()),
                ("seed", a.seed.clone()),
                ("restarts", a.restarts.clone()),
            ]),
            Command::Scan(a) => out.extend([
                ("witness", a.witness.clone()),
                ("m", a.m.clone()),
                ("p", a.p.clone()),
                ("s", a.s.clone()),
                ("N", a.dims.clone()),
                ("denom", a.denom.clone()),
                ("seed", a.seed.clone()),
                ("restarts", a.restarts.clone()),
            ]),
            Command::Ksz(a) => out.extend([
                ("pattern", a.pattern.clone()),
                ("N", a.dims.clone()),
                ("draws", a.draws.clone()),
                ("seed", a.seed.clone()),
                ("c-sub", a.c_sub.clone()),
                ("method", a.method.clone()),
            ]),
            Command::Catalog(a) => out.push(("m", a.m.clone())),
        }
        out
    }
}

fn failure(err: &LabError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
        code: if err.is_guard() {
            exit::GUARD
        } else {
            exit::USAGE
        },
    }
}

/// Runs one invocation; `args` starts with the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    let mut settings = BTreeMap::new();
    if let Some(path) = &cli.command.common().config {
        let loaded = std::fs::read_to_string(path)
            .map_err(|e| LabError::Io(format!("{}: {e}", path.display())))
            .and_then(|text| parse_config_file(&text));
        match loaded {
            Ok(map) => settings = map,
            Err(e) => return failure(&e),
        }
    }
    for (key, value) in cli.command.pairs() {
        if let Some(v) = value {
            settings.insert(key.to_string(), v);
        }
    }
    let cfg = match RunConfig::from_map(&settings) {
        Ok(cfg) => cfg,
        Err(e) => return failure(&e),
    };
    let result = match &cli.command {
        Command::Constants(_) => commands::constants(&cfg),
        Command::Verify(_) => commands::verify(&cfg),
        Command::Norm(_) => commands::norm(&cfg),
        Command::Scan(_) => commands::scan(&cfg),
        Command::Ksz(_) => commands::ksz(&cfg),
        Command::Catalog(_) => commands::catalog(&cfg),
    };
    let (text, code) = match result {
        Ok(v) => v,
        Err(e) => return failure(&e),
    };
    match &cfg.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                stdout: String::new(),
                stderr: format!("wrote {}\n", path.display()),
                code,
            },
            Err(e) => failure(&LabError::Io(format!("{}: {e}", path.display()))),
        },
        None => Outcome {
            stdout: text,
            stderr: String::new(),
            code,
        },
    }
}
