//! Flat `key = value` configuration.
//!
//! Lines may hold several pairs separated by whitespace; `#` starts a
//! comment. Comma lists may contain spaces after the commas. Later
//! assignments win, so command-line overrides are simply applied last.

use std::fmt;
use std::str::FromStr;

use junction_core::mc::{TailModel, DEFAULT_WINDOW};
use junction_core::scenario::db_to_linear;
use junction_core::{
    placement_from_cartesian, InterferenceComposition, LinkState, OmaConvention, OutageOptions, Scenario, Scheme,
};

use crate::sweep::Recipe;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, found `{token}`")]
    Syntax { line: usize, token: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    BadValue { key: String, value: String, reason: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] junction_core::Error),
}

/// Which schemes a command evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeSelection {
    Noma,
    Oma,
    Both,
}

impl SchemeSelection {
    pub fn schemes(self) -> &'static [Scheme] {
        match self {
            SchemeSelection::Noma => &[Scheme::Noma],
            SchemeSelection::Oma => &[Scheme::Oma],
            SchemeSelection::Both => &[Scheme::Noma, Scheme::Oma],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub scenario: Scenario,
    pub options: OutageOptions,
    pub scheme: SchemeSelection,
    pub window: f64,
    pub tail: TailModel,
    pub recipe: Option<Recipe>,
    pub grid: Option<Vec<f64>>,
    /// Scenario key swept by the `custom` recipe.
    pub sweep_key: Option<String>,
    pub lane_counts: Vec<u32>,
    pub a1_values: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            scenario: Scenario::default(),
            options: OutageOptions::default(),
            scheme: SchemeSelection::Noma,
            window: DEFAULT_WINDOW,
            tail: TailModel::default(),
            recipe: None,
            grid: None,
            sweep_key: None,
            lane_counts: vec![1, 2, 3],
            a1_values: vec![0.9, 0.7],
            trials: 0,
            seed: 1,
        }
    }
}

/// Every key accepted by [`Config::set`], in documentation order.
pub const KEYS: &[&str] = &[
    "source_x",
    "source_y",
    "d1_x",
    "d1_y",
    "d2_x",
    "d2_y",
    "alpha_los",
    "alpha_nlos",
    "m_los",
    "m_nlos",
    "mu",
    "beta",
    "g_max_dbi",
    "g_min_dbi",
    "phi_deg",
    "carrier_freq",
    "lambda",
    "lam_x_los",
    "lam_x_nlos",
    "lam_y_los",
    "lam_y_nlos",
    "p",
    "a1",
    "a2",
    "r1",
    "r2",
    "lanes",
    "lanes_x",
    "lanes_y",
    "lane_width",
    "forced_link",
    "composition",
    "oma",
    "scheme",
    "window",
    "tail",
    "recipe",
    "grid",
    "sweep_key",
    "lane_counts",
    "a1_values",
    "trials",
    "seed",
];

fn bad(key: &str, value: &str, reason: impl fmt::Display) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

fn number(key: &str, value: &str) -> Result<f64, ConfigError> {
    let x: f64 = value.parse().map_err(|e| bad(key, value, e))?;
    if !x.is_finite() {
        return Err(bad(key, value, "must be finite"));
    }
    Ok(x)
}

fn integer<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| bad(key, value, format!("expected an integer ({e})")))
}

fn list<T, F>(key: &str, value: &str, item: F) -> Result<Vec<T>, ConfigError>
where
    F: Fn(&str, &str) -> Result<T, ConfigError>,
{
    let items: Vec<T> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(key, s))
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(bad(key, value, "list is empty"));
    }
    Ok(items)
}

impl Config {
    /// Parses a config file on top of the defaults. The result is not yet
    /// validated; call [`Config::validate`] after applying overrides.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        for (key, value) in tokenize(text)? {
            cfg.set(&key, &value)?;
        }
        Ok(cfg)
    }

    /// Applies a single `key=value` assignment.
    pub fn apply(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let pairs = tokenize(assignment)?;
        if pairs.is_empty() {
            return Err(ConfigError::Syntax {
                line: 1,
                token: assignment.to_string(),
            });
        }
        for (key, value) in pairs {
            self.set(&key, &value)?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let sc = &mut self.scenario;
        let num = || number(key, value);
        match key {
            "source_x" => sc.source = placement_from_cartesian(num()?, sc.source.y()),
            "source_y" => sc.source = placement_from_cartesian(sc.source.x(), num()?),
            "d1_x" => sc.d1 = placement_from_cartesian(num()?, sc.d1.y()),
            "d1_y" => sc.d1 = placement_from_cartesian(sc.d1.x(), num()?),
            "d2_x" => sc.d2 = placement_from_cartesian(num()?, sc.d2.y()),
            "d2_y" => sc.d2 = placement_from_cartesian(sc.d2.x(), num()?),
            "alpha_los" => sc.propagation.alpha_los = num()?,
            "alpha_nlos" => sc.propagation.alpha_nlos = num()?,
            "m_los" => sc.propagation.m_los = integer(key, value)?,
            "m_nlos" => sc.propagation.m_nlos = integer(key, value)?,
            "mu" => sc.propagation.mu = num()?,
            "beta" => sc.propagation.beta = num()?,
            "g_max_dbi" => sc.antenna.g_max = db_to_linear(num()?),
            "g_min_dbi" => sc.antenna.g_min = db_to_linear(num()?),
            "phi_deg" => sc.antenna.phi = num()?.to_radians(),
            "carrier_freq" => sc.antenna.carrier_freq = num()?,
            "lambda" => {
                let lam = num()?;
                sc.traffic.lam_x_los = lam;
                sc.traffic.lam_x_nlos = lam;
                sc.traffic.lam_y_los = lam;
                sc.traffic.lam_y_nlos = lam;
            }
            "lam_x_los" => sc.traffic.lam_x_los = num()?,
            "lam_x_nlos" => sc.traffic.lam_x_nlos = num()?,
            "lam_y_los" => sc.traffic.lam_y_los = num()?,
            "lam_y_nlos" => sc.traffic.lam_y_nlos = num()?,
            "p" => sc.traffic.p = num()?,
            "a1" => sc.noma.a1 = num()?,
            "a2" => sc.noma.a2 = num()?,
            "r1" => sc.noma.r1 = num()?,
            "r2" => sc.noma.r2 = num()?,
            "lanes" => {
                let n = integer(key, value)?;
                sc.layout.lanes_x = n;
                sc.layout.lanes_y = n;
            }
            "lanes_x" => sc.layout.lanes_x = integer(key, value)?,
            "lanes_y" => sc.layout.lanes_y = integer(key, value)?,
            "lane_width" => sc.layout.lane_width = num()?,
            "forced_link" => {
                sc.forced_link = match value {
                    "none" => None,
                    "los" => Some(LinkState::Los),
                    "nlos" => Some(LinkState::Nlos),
                    _ => return Err(bad(key, value, "expected none, los or nlos")),
                }
            }
            "composition" => {
                self.options.composition = match value {
                    "joint" => InterferenceComposition::Joint,
                    "per_class" => InterferenceComposition::PerClass,
                    _ => return Err(bad(key, value, "expected joint or per_class")),
                }
            }
            "oma" => {
                self.options.oma = match value {
                    "same_threshold" => OmaConvention::SameThreshold,
                    "half_rate" => OmaConvention::HalfRate,
                    _ => return Err(bad(key, value, "expected same_threshold or half_rate")),
                }
            }
            "scheme" => {
                self.scheme = match value {
                    "noma" => SchemeSelection::Noma,
                    "oma" => SchemeSelection::Oma,
                    "both" => SchemeSelection::Both,
                    _ => return Err(bad(key, value, "expected noma, oma or both")),
                }
            }
            "window" => self.window = num()?,
            "tail" => {
                self.tail = match value {
                    "mean_field" => TailModel::MeanField,
                    "truncate" => TailModel::Truncate,
                    _ => return Err(bad(key, value, "expected mean_field or truncate")),
                }
            }
            "recipe" => self.recipe = Some(value.parse().map_err(|e| bad(key, value, e))?),
            "grid" => self.grid = Some(list(key, value, number)?),
            "sweep_key" => {
                if !KEYS.contains(&value) || !is_scenario_key(value) {
                    return Err(bad(key, value, "not a numeric scenario key"));
                }
                self.sweep_key = Some(value.to_string());
            }
            "lane_counts" => self.lane_counts = list(key, value, integer)?,
            "a1_values" => self.a1_values = list(key, value, number)?,
            "trials" => self.trials = integer(key, value)?,
            "seed" => self.seed = integer(key, value)?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.scenario.validate()?;
        if !(self.window > 0.0) {
            return Err(bad("window", &self.window.to_string(), "must be > 0"));
        }
        if let Some(grid) = &self.grid {
            let up = grid.windows(2).all(|w| w[1] > w[0]);
            let down = grid.windows(2).all(|w| w[1] < w[0]);
            if !(up || down) {
                return Err(bad("grid", &format!("{grid:?}"), "must be strictly monotone"));
            }
        }
        if self.recipe == Some(Recipe::Custom) {
            if self.sweep_key.is_none() {
                return Err(ConfigError::Missing("sweep_key"));
            }
            if self.grid.is_none() {
                return Err(ConfigError::Missing("grid"));
            }
        }
        if self.lane_counts.contains(&0) {
            return Err(bad("lane_counts", "0", "lane counts must be >= 1"));
        }
        Ok(())
    }
}

/// Keys that take a single number and describe the scenario itself.
pub fn is_scenario_key(key: &str) -> bool {
    !matches!(
        key,
        "forced_link"
            | "composition"
            | "oma"
            | "scheme"
            | "tail"
            | "recipe"
            | "grid"
            | "sweep_key"
            | "lane_counts"
            | "a1_values"
            | "trials"
            | "seed"
    )
}

/// Removes whitespace around every `=` so `key = value` becomes one token.
fn collapse_equals(line: &str) -> String {
    let parts: Vec<&str> = line.split('=').collect();
    let last = parts.len() - 1;
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let p = if i > 0 { p.trim_start() } else { p };
            if i < last {
                p.trim_end()
            } else {
                p
            }
        })
        .collect::<Vec<_>>()
        .join("=")
}

fn tokenize(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = collapse_equals(raw.split('#').next().unwrap_or(""));
        let mut on_line = false;
        for tok in line.split_whitespace() {
            match tok.split_once('=') {
                Some((k, v)) if !k.is_empty() => {
                    pairs.push((k.to_string(), v.to_string()));
                    on_line = true;
                }
                // continuation of a comma list, e.g. `grid = 1, 2, 3`
                None if on_line && pairs.last().is_some_and(|(_, v)| v.ends_with(',')) => {
                    pairs.last_mut().expect("checked above").1.push_str(tok);
                }
                _ => {
                    return Err(ConfigError::Syntax {
                        line: i + 1,
                        token: tok.to_string(),
                    })
                }
            }
        }
    }
    Ok(pairs)
}
