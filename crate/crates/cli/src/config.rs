//! Run configuration: defaults per subcommand, a flat `key = value` file,
//! then command-line overrides, in that order.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use casimir_core::{PermittivityModel, SumControl, ZeroFrequencyTe};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Static,
    Dynamic,
    Conductor,
    NarrowSlit,
    Plates,
    Lifshitz,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Static => "static",
            Method::Dynamic => "dynamic",
            Method::Conductor => "conductor",
            Method::NarrowSlit => "narrow-slit",
            Method::Plates => "plates",
            Method::Lifshitz => "lifshitz",
        }
    }
}

impl FromStr for Method {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "static" => Method::Static,
            "dynamic" => Method::Dynamic,
            "conductor" => Method::Conductor,
            "narrow-slit" | "narrow_slit" => Method::NarrowSlit,
            "plates" => Method::Plates,
            "lifshitz" => Method::Lifshitz,
            other => return err(format!("unknown method '{other}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Point,
    Check,
}

impl Figure {
    pub fn default_output(&self) -> Option<&'static str> {
        match self {
            Figure::Fig1 => Some("fig1.csv"),
            Figure::Fig2 => Some("fig2.csv"),
            Figure::Fig3 => Some("fig3.csv"),
            Figure::Point | Figure::Check => None,
        }
    }
}

pub const KEYS: &[&str] = &[
    "gap_ratio",
    "temperature",
    "epsilon",
    "model",
    "omega0",
    "method",
    "tol",
    "lmax",
    "nmax",
    "out",
    "threads",
    "zero_te",
    "timing",
];

/// Raw settings, later entries overriding earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!("line {}: expected key = value", i + 1));
            };
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return err(format!("line {}: unknown key '{key}'", i + 1));
            }
            map.insert(key, value.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }
}

/// Comma-separated list, optionally wrapped in brackets.
pub fn parse_list(s: &str) -> Result<Vec<f64>, ConfigError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| v.parse::<f64>().map_err(|_| ConfigError(format!("not a number: '{v}'"))))
        .collect()
}

fn parse_num<T: FromStr>(key: &str, s: &str) -> Result<T, ConfigError> {
    s.trim()
        .parse()
        .map_err(|_| ConfigError(format!("{key}: cannot parse '{s}'")))
}

/// `inf` (any case) or a number.
pub fn parse_epsilon(s: &str) -> Result<f64, ConfigError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        Ok(f64::INFINITY)
    } else {
        parse_num("epsilon", s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub gap_ratios: Vec<f64>,
    pub temperatures: Vec<f64>,
    pub model: PermittivityModel,
    pub zero_te: ZeroFrequencyTe,
    pub method: Method,
    pub control: SumControl,
    /// `None` or `-` writes to stdout.
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub timing: bool,
}

fn defaults(fig: Figure) -> (Vec<f64>, Vec<f64>) {
    let gaps = vec![0.05, 0.075, 0.1, 0.15, 0.2, 0.3, 0.5, 0.7, 1.0];
    match fig {
        Figure::Fig1 => (gaps, vec![0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0]),
        Figure::Fig2 => (gaps, vec![20.0, 50.0, 100.0, 200.0]),
        Figure::Fig3 => {
            let mut t = vec![0.0];
            t.extend((-4..=12).map(|k| 10f64.powf(k as f64 / 4.0)));
            (vec![0.05, 0.075, 0.1], t)
        }
        Figure::Point | Figure::Check => (vec![0.1], vec![1.0]),
    }
}

impl RunConfig {
    pub fn resolve(fig: Figure, s: &Settings) -> Result<Self, ConfigError> {
        let (mut gap_ratios, mut temperatures) = defaults(fig);
        if let Some(v) = s.get("gap_ratio") {
            gap_ratios = parse_list(v)?;
        }
        if let Some(v) = s.get("temperature") {
            temperatures = parse_list(v)?;
        }
        if gap_ratios.is_empty() || temperatures.is_empty() {
            return err("gap_ratio and temperature lists must not be empty");
        }
        if let Some(bad) = gap_ratios.iter().find(|&&d| !(d > 0.0 && d.is_finite())) {
            return err(format!("every d/a must be positive, got {bad}"));
        }
        if let Some(bad) = temperatures.iter().find(|&&t| !(t >= 0.0 && t.is_finite())) {
            return err(format!("every t must be finite and >= 0, got {bad}"));
        }

        let epsilon = s.get("epsilon").map(parse_epsilon).transpose()?.unwrap_or(f64::INFINITY);
        let kind = s.get("model").unwrap_or(if epsilon.is_infinite() { "conductor" } else { "constant" });
        let model = match kind.trim() {
            "constant" => PermittivityModel::Constant(epsilon),
            "conductor" => PermittivityModel::Conductor,
            "oscillator" => {
                let omega0 = s
                    .get("omega0")
                    .map(|v| parse_num::<f64>("omega0", v))
                    .transpose()?
                    .ok_or_else(|| ConfigError("oscillator model needs omega0".into()))?;
                PermittivityModel::SingleOscillator { eps0: epsilon, omega0 }
            }
            other => return err(format!("unknown model '{other}'")),
        };
        model.validate().map_err(|e| ConfigError(e.to_string()))?;

        let zero_te = match s.get("zero_te").map(str::trim) {
            None | Some("vanishing") => ZeroFrequencyTe::Vanishing,
            Some("conductor-limit") | Some("conductor_limit") => ZeroFrequencyTe::ConductorLimit,
            Some(other) => return err(format!("unknown zero_te '{other}'")),
        };

        let method = s.get("method").map(str::parse).transpose()?.unwrap_or(Method::Conductor);

        let mut control = SumControl::default();
        if let Some(v) = s.get("tol") {
            control.tol = parse_num("tol", v)?;
        }
        if !(control.tol > 0.0 && control.tol <= 1e-2) {
            return err(format!("tolerance must lie in (0, 1e-2], got {}", control.tol));
        }
        if let Some(v) = s.get("lmax") {
            control.l_cap = parse_num("lmax", v)?;
        }
        if let Some(v) = s.get("nmax") {
            control.n_cap = parse_num("nmax", v)?;
        }
        if control.l_cap == 0 || control.n_cap == 0 {
            return err("lmax and nmax must be positive");
        }

        let out = match s.get("out") {
            Some("-") => None,
            Some(p) => Some(PathBuf::from(p)),
            None => fig.default_output().map(PathBuf::from),
        };
        let threads = s.get("threads").map(|v| parse_num::<usize>("threads", v)).transpose()?;
        if threads == Some(0) {
            return err("threads must be positive");
        }
        let timing = match s.get("timing").map(str::trim) {
            None | Some("false") | Some("0") => false,
            Some("true") | Some("1") => true,
            Some(other) => return err(format!("timing: expected true or false, got '{other}'")),
        };

        Ok(Self {
            gap_ratios,
            temperatures,
            model,
            zero_te,
            method,
            control,
            out,
            threads,
            timing,
        })
    }
}
