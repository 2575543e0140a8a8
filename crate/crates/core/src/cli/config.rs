use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::catalog::Denominator;
use crate::error::{LabError, Result};
use crate::ksz::{default_c_sub, KszNorm, RepetitionPattern};
use crate::tensor::ScalarField;

/// Output rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
    Table,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" | "json" => Ok(Format::JsonLines),
            "table" => Ok(Format::Table),
            other => Err(LabError::invalid(format!("unknown format `{other}`"))),
        }
    }
}

/// Where `verify` takes its tensors from.
#[derive(Debug, Clone, PartialEq)]
pub enum TensorSource {
    File(PathBuf),
    Witness,
    RandomSign,
    RandomUniform,
}

/// Every setting a command may read, after merging the config file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub m_max: usize,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub dims: Vec<usize>,
    pub p: f64,
    pub field: ScalarField,
    pub instance: Option<String>,
    pub source: Option<TensorSource>,
    pub witness: Option<String>,
    pub norm: String,
    pub bijection: Option<String>,
    pub core_dim: Option<usize>,
    pub constant: Option<f64>,
    pub seed: u64,
    pub count: usize,
    pub draws: usize,
    pub restarts: usize,
    pub tol: f64,
    pub s_grid: Vec<f64>,
    pub denom: Denominator,
    pub pattern: Option<RepetitionPattern>,
    pub c_sub: f64,
    pub ksz_method: KszNorm,
    pub out: Option<PathBuf>,
    /// Unset means the command's own default.
    pub format: Option<Format>,
}

/// Recognized keys, shared by flags and config files.
pub const KEYS: &[&str] = &[
    "m-max",
    "m",
    "n",
    "N",
    "p",
    "ball",
    "field",
    "instance",
    "tensor",
    "witness",
    "random-sign",
    "uniform",
    "norm",
    "method",
    "bijection",
    "core-dim",
    "constant",
    "seed",
    "count",
    "draws",
    "restarts",
    "tol",
    "s",
    "denom",
    "pattern",
    "c-sub",
    "out",
    "format",
];

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| LabError::Parse {
            line: no + 1,
            message: format!("expected key=value, found `{line}`"),
        })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(LabError::Parse {
                line: no + 1,
                message: format!("unknown key `{key}`"),
            });
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse::<T>()
        .map_err(|_| LabError::invalid(format!("invalid value `{value}` for `{key}`")))
}

/// `inf`, `infinity` or a number.
pub fn parse_exponent(value: &str) -> Result<f64> {
    match value.trim() {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        v => {
            let p: f64 = parse("p", v)?;
            if p.is_nan() {
                return Err(LabError::invalid("exponent is NaN"));
            }
            Ok(p)
        }
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "" | "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(LabError::invalid(format!(
            "invalid boolean `{other}` for `{key}`"
        ))),
    }
}

/// Integer grid: `a:b`, `a:b:step`, `a:b:xF` (geometric) or `a,b,c`.
pub fn parse_dim_grid(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if !text.contains(':') {
        return text
            .split(',')
            .map(|v| parse::<usize>("N", v.trim()))
            .collect();
    }
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() > 3 {
        return Err(LabError::invalid(format!("invalid grid `{text}`")));
    }
    let lo: usize = parse("N", parts[0])?;
    let hi: usize = parse("N", parts[1])?;
    if lo == 0 || lo > hi {
        return Err(LabError::invalid(format!(
            "invalid grid bounds in `{text}`"
        )));
    }
    let mut out = Vec::new();
    match parts.get(2) {
        Some(step) if step.starts_with('x') => {
            let factor: usize = parse("N", &step[1..])?;
            if factor < 2 {
                return Err(LabError::invalid(format!(
                    "geometric factor must be >= 2 in `{text}`"
                )));
            }
            let mut v = lo;
            while v <= hi {
                out.push(v);
                v *= factor;
            }
        }
        Some(step) => {
            let step: usize = parse("N", step)?;
            if step == 0 {
                return Err(LabError::invalid(format!("zero step in `{text}`")));
            }
            out.extend((lo..=hi).step_by(step));
        }
        None => out.extend(lo..=hi),
    }
    Ok(out)
}

/// Float grid: `a:b:step` (inclusive, rounded to 12 decimals) or `a,b,c`.
pub fn parse_float_grid(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if !text.contains(':') {
        return text
            .split(',')
            .map(|v| parse::<f64>("s", v.trim()))
            .collect();
    }
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(LabError::invalid(format!(
            "float grid needs a:b:step, got `{text}`"
        )));
    }
    let lo: f64 = parse("s", parts[0])?;
    let hi: f64 = parse("s", parts[1])?;
    let step: f64 = parse("s", parts[2])?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi || step.is_nan() || step <= 0.0 {
        return Err(LabError::invalid(format!("invalid float grid `{text}`")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

impl RunConfig {
    /// Builds the configuration from merged `key -> value` settings.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let opt_usize = |k: &str| get(k).map(|v| parse::<usize>(k, v)).transpose();
        let flag = |k: &str| {
            get(k)
                .map(|v| parse_bool(k, v))
                .transpose()
                .map(|b| b.unwrap_or(false))
        };

        let p = match (get("p"), get("ball")) {
            (Some(v), _) | (None, Some(v)) => parse_exponent(v)?,
            (None, None) => f64::INFINITY,
        };
        let source = match (
            get("tensor"),
            get("witness"),
            flag("random-sign")?,
            flag("uniform")?,
        ) {
            (Some(path), None, false, false) => Some(TensorSource::File(PathBuf::from(path))),
            (None, Some(_), false, false) => Some(TensorSource::Witness),
            (None, None, true, false) => Some(TensorSource::RandomSign),
            (None, None, false, true) => Some(TensorSource::RandomUniform),
            (None, None, false, false) => None,
            _ => {
                return Err(LabError::invalid(
                    "choose one tensor source: --tensor, --witness, --random-sign or --uniform",
                ))
            }
        };
        let tol: f64 = get("tol").map_or(Ok(1e-9), |v| parse("tol", v))?;
        if tol.is_nan() || tol < 0.0 {
            return Err(LabError::invalid(format!(
                "tolerance must be nonnegative, got {tol}"
            )));
        }
        let c_sub = get("c-sub").map_or(Ok(default_c_sub()), |v| parse("c-sub", v))?;
        Ok(RunConfig {
            m_max: opt_usize("m-max")?.unwrap_or(20),
            m: opt_usize("m")?,
            n: opt_usize("n")?,
            dims: get("N").map_or(Ok(Vec::new()), parse_dim_grid)?,
            p,
            field: get("field").map_or(Ok(ScalarField::Real), |v| v.parse())?,
            instance: get("instance").map(str::to_string),
            source,
            witness: get("witness").map(str::to_string),
            norm: get("norm").or(get("method")).unwrap_or("exact").to_string(),
            bijection: get("bijection").map(str::to_string),
            core_dim: opt_usize("core-dim")?,
            constant: get("constant").map(|v| parse("constant", v)).transpose()?,
            seed: get("seed").map_or(Ok(0), |v| parse("seed", v))?,
            count: opt_usize("count")?.unwrap_or(1),
            draws: opt_usize("draws")?.unwrap_or(200),
            restarts: opt_usize("restarts")?.unwrap_or(20),
            tol,
            s_grid: get("s").map_or(Ok(Vec::new()), parse_float_grid)?,
            denom: get("denom").map_or(Ok(Denominator::Holder), str::parse)?,
            pattern: get("pattern").map(str::parse).transpose()?,
            c_sub,
            ksz_method: match get("method") {
                Some(v) => KszNorm::parse(v)?,
                None => KszNorm::Auto,
            },
            out: get("out").map(PathBuf::from),
            format: get("format").map(str::parse).transpose()?,
        })
    }
}
