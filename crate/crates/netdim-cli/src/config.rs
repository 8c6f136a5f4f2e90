//! Flag, config-file and environment resolution.
//!
//! Precedence: command-line flag, then config file (`key = value` lines,
//! `#` comments), then `NETDIM_SEED` for the seed, then built-in defaults.

use std::collections::HashMap;
use std::path::PathBuf;

use netdim::centrality::Measure;
use netdim::epidemic::lambda_from_beta;
use netdim::error::Error;
use netdim::parse::Format;
use netdim::Result;

use crate::output::OutFormat;
use crate::CommonArgs;

pub const DEFAULT_SEED: u64 = 42;

/// Fully resolved run settings. Command-specific fields stay optional;
/// each command validates what it needs.
#[derive(Debug, Clone)]
pub struct Settings {
    pub input: PathBuf,
    pub format: Format,
    pub largest_component: bool,
    pub measures: Option<Vec<Measure>>,
    pub k: Option<usize>,
    pub lambdas: Option<Vec<f64>>,
    pub steps: usize,
    pub runs: usize,
    pub t_obs: usize,
    pub seed: u64,
    pub seeds: Option<Vec<String>>,
    pub comparison: Option<Measure>,
    pub output: Option<PathBuf>,
    pub out_format: OutFormat,
    pub workers: Option<usize>,
}

const KNOWN_KEYS: [&str; 16] = [
    "input",
    "format",
    "largest_component",
    "measures",
    "k",
    "lambda",
    "beta",
    "steps",
    "runs",
    "t_obs",
    "seed",
    "seeds",
    "comparison",
    "output",
    "out_format",
    "workers",
];

fn load_config(path: &PathBuf) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))
    })?;
    let mut map = HashMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                line: no + 1,
                msg: format!("expected key = value, got {line:?}"),
            });
        };
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::Parse {
                line: no + 1,
                msg: format!("unknown config key {key:?}"),
            });
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parsed<T: std::str::FromStr>(what: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| {
        Error::InvalidParameter(format!("cannot parse {what} value {raw:?}"))
    })
}

/// Comma list of measures; duplicates collapse, `all` expands.
pub fn parse_measures(raw: &str) -> Result<Vec<Measure>> {
    let mut out = Vec::new();
    for tok in raw.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok.eq_ignore_ascii_case("all") {
            for m in Measure::ALL {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
            continue;
        }
        let m: Measure = tok.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("empty measure list".into()));
    }
    Ok(out)
}

/// A single rate, a comma list, or an inclusive `start:stop:step` range.
pub fn parse_lambdas(raw: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = if raw.contains(':') {
        let parts: Vec<&str> = raw.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "lambda range must be start:stop:step, got {raw:?}"
            )));
        }
        let start: f64 = parsed("lambda", parts[0])?;
        let stop: f64 = parsed("lambda", parts[1])?;
        let step: f64 = parsed("lambda", parts[2])?;
        if step <= 0.0 || stop < start {
            return Err(Error::InvalidParameter(format!(
                "bad lambda range {raw:?}"
            )));
        }
        let mut v = Vec::new();
        let mut i = 0;
        loop {
            let x = start + i as f64 * step;
            if x > stop + step * 1e-9 {
                break;
            }
            v.push(x);
            i += 1;
        }
        v
    } else {
        raw.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| parsed("lambda", t))
            .collect::<Result<_>>()?
    };
    if values.is_empty() {
        return Err(Error::InvalidParameter("empty lambda list".into()));
    }
    for &l in &values {
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::InvalidLambda(l));
        }
    }
    Ok(values)
}

pub fn resolve(args: &CommonArgs) -> Result<Settings> {
    let file = match &args.config {
        Some(path) => load_config(path)?,
        None => HashMap::new(),
    };
    let cfg = |key: &str| file.get(key).map(String::as_str);

    let input = match (&args.input, cfg("input")) {
        (Some(p), _) => p.clone(),
        (None, Some(p)) => PathBuf::from(p),
        (None, None) => {
            return Err(Error::InvalidParameter(
                "no input graph (use --input or an input config line)".into(),
            ))
        }
    };

    let format = match (&args.format, cfg("format")) {
        (Some(f), _) => f.parse()?,
        (None, Some(f)) => f.parse()?,
        (None, None) => Format::Auto,
    };

    let largest_component = match (args.largest_component, cfg("largest_component")) {
        (Some(b), _) => b,
        (None, Some(raw)) => parsed::<bool>("largest_component", raw)?,
        (None, None) => false,
    };

    let measures = match (&args.measures, cfg("measures")) {
        (Some(m), _) => Some(parse_measures(m)?),
        (None, Some(m)) => Some(parse_measures(m)?),
        (None, None) => None,
    };

    let k = match (args.k, cfg("k")) {
        (Some(k), _) => Some(k),
        (None, Some(raw)) => Some(parsed("k", raw)?),
        (None, None) => None,
    };

    // an infection rate can come in directly or as the exponent in
    // lambda = 0.5^beta; the two are mutually exclusive per source
    let lambdas = if let Some(beta) = args.beta {
        Some(vec![lambda_from_beta(beta)])
    } else if let Some(raw) = &args.lambda {
        Some(parse_lambdas(raw)?)
    } else {
        match (cfg("lambda"), cfg("beta")) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParameter(
                    "config sets both lambda and beta".into(),
                ))
            }
            (Some(raw), None) => Some(parse_lambdas(raw)?),
            (None, Some(raw)) => Some(vec![lambda_from_beta(parsed("beta", raw)?)]),
            (None, None) => None,
        }
    };
    if let Some(ls) = &lambdas {
        debug_assert!(!ls.is_empty());
    }

    let steps = match (args.steps, cfg("steps")) {
        (Some(v), _) => v,
        (None, Some(raw)) => parsed("steps", raw)?,
        (None, None) => 30,
    };
    let runs = match (args.runs, cfg("runs")) {
        (Some(v), _) => v,
        (None, Some(raw)) => parsed("runs", raw)?,
        (None, None) => 100,
    };
    let t_obs = match (args.t_obs, cfg("t_obs")) {
        (Some(v), _) => v,
        (None, Some(raw)) => parsed("t_obs", raw)?,
        (None, None) => 10,
    };

    let seed = match (args.seed, cfg("seed")) {
        (Some(v), _) => v,
        (None, Some(raw)) => parsed("seed", raw)?,
        (None, None) => match std::env::var("NETDIM_SEED") {
            Ok(raw) => parsed("NETDIM_SEED", &raw)?,
            Err(_) => DEFAULT_SEED,
        },
    };

    let seeds = match (args.seeds.as_deref(), cfg("seeds")) {
        (Some(raw), _) | (None, Some(raw)) => {
            let list: Vec<String> = raw
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect();
            if list.is_empty() {
                return Err(Error::EmptySeedSet);
            }
            Some(list)
        }
        (None, None) => None,
    };

    let comparison = match (args.comparison.as_deref(), cfg("comparison")) {
        (Some(raw), _) | (None, Some(raw)) => Some(raw.parse()?),
        (None, None) => None,
    };

    let output = match (&args.output, cfg("output")) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(p)) => Some(PathBuf::from(p)),
        (None, None) => None,
    };

    let out_format = match (args.out_format.as_deref(), cfg("out_format")) {
        (Some(raw), _) | (None, Some(raw)) => raw.parse()?,
        (None, None) => OutFormat::Csv,
    };

    let workers = match (args.workers, cfg("workers")) {
        (Some(v), _) => Some(v),
        (None, Some(raw)) => Some(parsed("workers", raw)?),
        (None, None) => None,
    };

    Ok(Settings {
        input,
        format,
        largest_component,
        measures,
        k,
        lambdas,
        steps,
        runs,
        t_obs,
        seed,
        seeds,
        comparison,
        output,
        out_format,
        workers,
    })
}

impl Settings {
    /// The single rate demanded by most simulation commands, defaulting to
    /// 0.05 when none was given.
    pub fn single_lambda(&self) -> Result<f64> {
        match &self.lambdas {
            None => Ok(0.05),
            Some(ls) if ls.len() == 1 => Ok(ls[0]),
            Some(ls) => Err(Error::InvalidParameter(format!(
                "this command takes one lambda, got {}",
                ls.len()
            ))),
        }
    }
}
