//! Plain `key = value` run configuration. Every key has a default; the
//! resolved table is echoed into every JSON report.

use std::collections::BTreeMap;
use std::fmt;

/// `(key, default, meaning)`.
pub const KEYS: &[(&str, &str, &str)] = &[
    ("dim", "1", "spatial dimension, 1 or 2"),
    ("N", "1024", "grid points per axis (even)"),
    ("L", "20", "half width of the spatial box"),
    (
        "data",
        "gaussian",
        "initial datum: gaussian | hermite | polynomial | bump",
    ),
    ("gamma", "0.25", "gaussian datum e^{-gamma |x|^2}"),
    ("hermite_k", "0", "hermite datum index along x"),
    ("hermite_j", "0", "hermite datum index along y (2D)"),
    (
        "poly",
        "0,1",
        "polynomial datum coefficients, ascending, times e^{-x^2/4}",
    ),
    ("bump_radius", "1", "support radius of the bump datum"),
    ("times", "0,0.5,1", "evolution times"),
    (
        "method",
        "all",
        "evolve method: all | spectral | convolution | pseudoconformal",
    ),
    ("t_min", "1e-3", "smallest |t| for kernel-based methods"),
    (
        "alpha",
        "2",
        "weight at time T (interpolation bound) and Fourier-side rate (Hardy)",
    ),
    (
        "beta",
        "2",
        "weight at time 0 (interpolation bound) and space-side rate (Hardy)",
    ),
    (
        "T",
        "1",
        "final time of the interpolation bound and half window of the lambda sweep",
    ),
    (
        "lemma1_steps",
        "51",
        "number of interpolation-bound sample times in [0, T]",
    ),
    ("t_start", "-0.6", "first time of the convexity window"),
    ("t_end", "0.6", "last time of the convexity window"),
    ("dt", "1e-3", "time step of the convexity window"),
    (
        "lambdas",
        "0,1,-1,2",
        "lambda list; components of a 2D lambda joined by ':'",
    ),
    ("epsilon", "1e-6", "regularization of log H"),
    ("commutator_times", "-1,0,0.5,3", "slice times of the commutator check"),
    ("samples", "20", "size of the random Hermite family"),
    ("hermite_max", "5", "largest Hermite index in the random family"),
    ("gamma_min", "0.05", "lower end of the gamma scan"),
    ("gamma_max", "1", "upper end of the gamma scan"),
    ("gamma_count", "50", "number of lattice gammas in the scan"),
    ("eta", "0.5", "frequency of the 2D slice transform"),
    ("cutoff", "8", "Beurling truncation radius"),
    ("seed", "0", "seed of randomized families (overridden by --seed)"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "config line {l}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Data {
    Gaussian,
    Hermite,
    Polynomial,
    Bump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    All,
    Spectral,
    Convolution,
    Pseudoconformal,
}

/// Fully typed configuration; `resolved` keeps the canonical text of each key.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dim: usize,
    pub n: usize,
    pub l: f64,
    pub data: Data,
    pub gamma: f64,
    pub hermite_k: usize,
    pub hermite_j: usize,
    pub poly: Vec<f64>,
    pub bump_radius: f64,
    pub times: Vec<f64>,
    pub method: MethodChoice,
    pub t_min: f64,
    pub alpha: f64,
    pub beta: f64,
    pub t_final: f64,
    pub lemma1_steps: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub dt: f64,
    pub lambdas: Vec<[f64; 2]>,
    pub epsilon: f64,
    pub commutator_times: Vec<f64>,
    pub samples: usize,
    pub hermite_max: usize,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_count: usize,
    pub eta: f64,
    pub cutoff: f64,
    pub seed: u64,
    pub resolved: BTreeMap<String, String>,
}

struct Raw {
    values: BTreeMap<&'static str, (String, Option<usize>)>,
}

impl Raw {
    fn get<T>(&self, key: &str, parse: impl Fn(&str) -> Option<T>, what: &str) -> Result<T, ConfigError> {
        let (text, line) = &self.values[key];
        parse(text).ok_or_else(|| ConfigError {
            line: *line,
            message: format!("`{key}` expects {what}, got `{text}`"),
        })
    }

    fn positive(&self, key: &str) -> Result<f64, ConfigError> {
        self.get(
            key,
            |s| s.parse::<f64>().ok().filter(|v| *v > 0.0 && v.is_finite()),
            "a positive number",
        )
    }

    fn real(&self, key: &str) -> Result<f64, ConfigError> {
        self.get(
            key,
            |s| s.parse::<f64>().ok().filter(|v| v.is_finite()),
            "a finite number",
        )
    }

    fn count(&self, key: &str) -> Result<usize, ConfigError> {
        self.get(key, |s| s.parse::<usize>().ok(), "a nonnegative integer")
    }

    fn list(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        self.get(key, parse_list, "a comma-separated list of numbers")
    }
}

fn parse_list(s: &str) -> Option<Vec<f64>> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect()
}

fn parse_lambdas(s: &str) -> Option<Vec<[f64; 2]>> {
    s.split(',')
        .map(|p| {
            let mut parts = p
                .split(':')
                .map(|c| c.trim().parse::<f64>().ok().filter(|v| v.is_finite()));
            let a = parts.next()??;
            let b = match parts.next() {
                Some(v) => v?,
                None => 0.0,
            };
            parts.next().is_none().then_some([a, b])
        })
        .collect()
}

fn key_index(key: &str) -> Option<&'static str> {
    KEYS.iter().find(|k| k.0 == key).map(|k| k.0)
}

impl RunConfig {
    /// Parses `text`; `seed` overrides the `seed` key when given.
    pub fn parse(text: &str, seed: Option<u64>) -> Result<Self, ConfigError> {
        let mut values: BTreeMap<&'static str, (String, Option<usize>)> =
            KEYS.iter().map(|(k, d, _)| (*k, (d.to_string(), None))).collect();
        let mut seen = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (k, v) = content.split_once('=').ok_or_else(|| ConfigError {
                line: Some(line),
                message: format!("expected `key = value`, got `{content}`"),
            })?;
            let k = k.trim();
            let key = key_index(k).ok_or_else(|| ConfigError {
                line: Some(line),
                message: format!("unknown key `{k}`"),
            })?;
            if let Some(prev) = seen.insert(key, line) {
                return Err(ConfigError {
                    line: Some(line),
                    message: format!("duplicate key `{key}` (first set on line {prev})"),
                });
            }
            values.insert(key, (v.trim().to_string(), Some(line)));
        }
        if let Some(s) = seed {
            values.insert("seed", (s.to_string(), None));
        }
        let raw = Raw { values };
        let dim = raw.get(
            "dim",
            |s| s.parse::<usize>().ok().filter(|d| *d == 1 || *d == 2),
            "1 or 2",
        )?;
        let n = raw.get(
            "N",
            |s| s.parse::<usize>().ok().filter(|n| *n >= 4 && n % 2 == 0),
            "an even integer >= 4",
        )?;
        let data = raw.get(
            "data",
            |s| match s {
                "gaussian" => Some(Data::Gaussian),
                "hermite" => Some(Data::Hermite),
                "polynomial" => Some(Data::Polynomial),
                "bump" => Some(Data::Bump),
                _ => None,
            },
            "gaussian, hermite, polynomial or bump",
        )?;
        let method = raw.get(
            "method",
            |s| match s {
                "all" => Some(MethodChoice::All),
                "spectral" => Some(MethodChoice::Spectral),
                "convolution" => Some(MethodChoice::Convolution),
                "pseudoconformal" => Some(MethodChoice::Pseudoconformal),
                _ => None,
            },
            "all, spectral, convolution or pseudoconformal",
        )?;
        let lambdas = raw.get("lambdas", parse_lambdas, "a comma-separated list of `a` or `a:b`")?;
        let cfg = RunConfig {
            dim,
            n,
            l: raw.positive("L")?,
            data,
            gamma: raw.positive("gamma")?,
            hermite_k: raw.count("hermite_k")?,
            hermite_j: raw.count("hermite_j")?,
            poly: raw.list("poly")?,
            bump_radius: raw.positive("bump_radius")?,
            times: raw.list("times")?,
            method,
            t_min: raw.positive("t_min")?,
            alpha: raw.positive("alpha")?,
            beta: raw.positive("beta")?,
            t_final: raw.positive("T")?,
            lemma1_steps: raw.get(
                "lemma1_steps",
                |s| s.parse::<usize>().ok().filter(|v| *v >= 2),
                "an integer >= 2",
            )?,
            t_start: raw.real("t_start")?,
            t_end: raw.real("t_end")?,
            dt: raw.positive("dt")?,
            lambdas,
            epsilon: raw.positive("epsilon")?,
            commutator_times: raw.list("commutator_times")?,
            samples: raw.count("samples")?,
            hermite_max: raw.count("hermite_max")?,
            gamma_min: raw.positive("gamma_min")?,
            gamma_max: raw.positive("gamma_max")?,
            gamma_count: raw.get(
                "gamma_count",
                |s| s.parse::<usize>().ok().filter(|v| *v >= 2),
                "an integer >= 2",
            )?,
            eta: raw.real("eta")?,
            cutoff: raw.positive("cutoff")?,
            seed: raw.get("seed", |s| s.parse::<u64>().ok(), "an unsigned 64-bit integer")?,
            resolved: raw
                .values
                .iter()
                .map(|(k, (v, _))| (k.to_string(), v.clone()))
                .collect(),
        };
        if cfg.t_end <= cfg.t_start {
            let line = raw.values["t_end"].1.or(raw.values["t_start"].1);
            return Err(ConfigError {
                line,
                message: "`t_end` must exceed `t_start`".into(),
            });
        }
        if cfg.gamma_max < cfg.gamma_min {
            let line = raw.values["gamma_max"].1.or(raw.values["gamma_min"].1);
            return Err(ConfigError {
                line,
                message: "`gamma_max` must be at least `gamma_min`".into(),
            });
        }
        Ok(cfg)
    }

    /// Uniform window `t_start, t_start + dt, ..., t_end`.
    pub fn window(&self) -> Vec<f64> {
        let steps = ((self.t_end - self.t_start) / self.dt).round() as usize;
        hardy_core::numeric::linspace(self.t_start, self.t_end, steps + 1)
    }
}
