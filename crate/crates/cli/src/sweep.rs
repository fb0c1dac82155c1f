//! Figure recipes and the sweep runner.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use junction_core::{outage_pair, placement_from_cartesian, LinkState, McEstimate, Scenario, Scheme, Simulator};
use rayon::prelude::*;

use crate::config::{Config, ConfigError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recipe {
    /// Translate the whole triplet along the X road so the destinations sit
    /// at `x = d`, sweeping `d`.
    Fig2Distance,
    /// Keep the source fixed and move both destinations along their
    /// bearings to a common link distance.
    Fig3LinkDistance,
    /// Intensity sweep for LOS-forced, NLOS-forced and mixed links.
    Fig4LosSplit,
    /// Intensity sweep for NOMA and OMA at several power splits.
    Fig5NomaOma,
    /// Intensity sweep for several lane counts.
    Fig6Lanes,
    /// Sweep any numeric scenario key.
    Custom,
}

impl Recipe {
    pub const ALL: [Recipe; 6] = [
        Recipe::Fig2Distance,
        Recipe::Fig3LinkDistance,
        Recipe::Fig4LosSplit,
        Recipe::Fig5NomaOma,
        Recipe::Fig6Lanes,
        Recipe::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Fig2Distance => "fig2_distance",
            Recipe::Fig3LinkDistance => "fig3_link_distance",
            Recipe::Fig4LosSplit => "fig4_los_split",
            Recipe::Fig5NomaOma => "fig5_noma_oma",
            Recipe::Fig6Lanes => "fig6_lanes",
            Recipe::Custom => "custom",
        }
    }

    pub fn default_grid(self) -> Vec<f64> {
        match self {
            Recipe::Fig2Distance => (0..=10).rev().map(|i| 20.0 * i as f64).collect(),
            Recipe::Fig3LinkDistance => (1..=20).map(|i| 10.0 * i as f64).collect(),
            Recipe::Custom => Vec::new(),
            _ => vec![1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2],
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Recipe::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| {
            let names: Vec<_> = Recipe::ALL.iter().map(|r| r.name()).collect();
            format!("unknown recipe, expected one of {}", names.join(", "))
        })
    }
}

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub value: f64,
    pub series: String,
    pub scheme: Scheme,
    pub scenario: Scenario,
    pub analytic: (f64, f64),
    pub mc: Option<(McEstimate, McEstimate)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub recipe: Recipe,
    /// Name of the swept quantity; becomes the first CSV column.
    pub variable: String,
    pub rows: Vec<ResultRow>,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{variable} = {value}, series {series}, {scheme}: {source}")]
    Point {
        variable: String,
        value: f64,
        series: String,
        scheme: &'static str,
        source: junction_core::Error,
    },
}

struct Point {
    value: f64,
    series: String,
    scheme: Scheme,
    scenario: Scenario,
}

fn translate(sc: &Scenario, dx: f64) -> Scenario {
    let shift = |p: junction_core::Placement| placement_from_cartesian(p.x() + dx, p.y());
    Scenario {
        source: shift(sc.source),
        d1: shift(sc.d1),
        d2: shift(sc.d2),
        ..*sc
    }
}

fn at_link_distance(sc: &Scenario, r: f64) -> Scenario {
    let (sx, sy) = sc.source.to_cartesian();
    let stretch = |p: junction_core::Placement| {
        let (dx, dy) = (p.x() - sx, p.y() - sy);
        let norm = dx.hypot(dy);
        placement_from_cartesian(sx + r * dx / norm, sy + r * dy / norm)
    };
    Scenario {
        d1: stretch(sc.d1),
        d2: stretch(sc.d2),
        ..*sc
    }
}

fn with_lambda(sc: &Scenario, lambda: f64) -> Scenario {
    let mut sc = *sc;
    sc.traffic.lam_x_los = lambda;
    sc.traffic.lam_x_nlos = lambda;
    sc.traffic.lam_y_los = lambda;
    sc.traffic.lam_y_nlos = lambda;
    sc
}

fn points(cfg: &Config, recipe: Recipe, grid: &[f64]) -> Result<Vec<Point>, ConfigError> {
    let base = &cfg.scenario;
    let schemes = cfg.scheme.schemes();
    let mut out = Vec::new();
    let mut push = |value: f64, series: String, scheme: Scheme, scenario: Scenario| {
        out.push(Point {
            value,
            series,
            scheme,
            scenario,
        })
    };
    for &v in grid {
        match recipe {
            Recipe::Fig2Distance => {
                let sc = translate(base, v - base.d1.x());
                for &scheme in schemes {
                    push(v, "triplet".into(), scheme, sc);
                }
            }
            Recipe::Fig3LinkDistance => {
                let sc = at_link_distance(base, v);
                for &scheme in schemes {
                    push(v, "common_distance".into(), scheme, sc);
                }
            }
            Recipe::Fig4LosSplit => {
                let sc = with_lambda(base, v);
                let families = [
                    ("los_forced", sc.forced(LinkState::Los)),
                    ("nlos_forced", sc.forced(LinkState::Nlos)),
                    ("mixed", sc),
                ];
                for (name, sc) in families {
                    for &scheme in schemes {
                        push(v, name.into(), scheme, sc);
                    }
                }
            }
            Recipe::Fig5NomaOma => {
                for &a1 in &cfg.a1_values {
                    let mut sc = with_lambda(base, v);
                    sc.noma.a1 = a1;
                    sc.noma.a2 = 1.0 - a1;
                    for scheme in [Scheme::Noma, Scheme::Oma] {
                        push(v, format!("a1={a1}"), scheme, sc);
                    }
                }
            }
            Recipe::Fig6Lanes => {
                for &lanes in &cfg.lane_counts {
                    let mut sc = with_lambda(base, v);
                    sc.layout.lanes_x = lanes;
                    sc.layout.lanes_y = lanes;
                    for &scheme in schemes {
                        push(v, format!("lanes={lanes}"), scheme, sc);
                    }
                }
            }
            Recipe::Custom => {
                let key = cfg.sweep_key.as_deref().ok_or(ConfigError::Missing("sweep_key"))?;
                let mut c = cfg.clone();
                c.set(key, &v.to_string())?;
                for &scheme in schemes {
                    push(v, "base".into(), scheme, c.scenario);
                }
            }
        }
    }
    Ok(out)
}

fn variable_name(cfg: &Config, recipe: Recipe) -> String {
    match recipe {
        Recipe::Fig2Distance => "d_triplet".into(),
        Recipe::Fig3LinkDistance => "r_sd".into(),
        Recipe::Custom => cfg.sweep_key.clone().unwrap_or_else(|| "value".into()),
        _ => "lambda".into(),
    }
}

/// Analytic outage and, when `cfg.trials > 0`, the Monte Carlo estimate for
/// one scenario.
pub fn evaluate(cfg: &Config, sc: &Scenario, scheme: Scheme) -> junction_core::Result<ResultRow> {
    let analytic = outage_pair(sc, scheme, &cfg.options)?;
    let mc = if cfg.trials > 0 {
        let sim = Simulator::new(sc)?
            .with_window(cfg.window)?
            .with_tail(cfg.tail)?
            .with_oma(cfg.options.oma);
        Some(sim.run(scheme, cfg.trials, cfg.seed)?)
    } else {
        None
    };
    Ok(ResultRow {
        value: f64::NAN,
        series: "base".into(),
        scheme,
        scenario: *sc,
        analytic,
        mc,
    })
}

/// Runs `recipe` (or the config's own) and returns rows in grid order.
pub fn run_sweep(cfg: &Config, recipe: Option<Recipe>) -> Result<SweepResult, SweepError> {
    let recipe = recipe.or(cfg.recipe).ok_or(ConfigError::Missing("recipe"))?;
    let grid = match &cfg.grid {
        Some(g) => g.clone(),
        None if recipe == Recipe::Custom => return Err(ConfigError::Missing("grid").into()),
        None => recipe.default_grid(),
    };
    let variable = variable_name(cfg, recipe);
    for p in points(cfg, recipe, &grid)? {
        p.scenario.validate().map_err(ConfigError::from)?;
    }
    let rows = points(cfg, recipe, &grid)?
        .into_par_iter()
        .map(|p| {
            evaluate(cfg, &p.scenario, p.scheme)
                .map(|row| ResultRow {
                    value: p.value,
                    series: p.series.clone(),
                    ..row
                })
                .map_err(|source| SweepError::Point {
                    variable: variable.clone(),
                    value: p.value,
                    series: p.series,
                    scheme: p.scheme.name(),
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult { recipe, variable, rows })
}

const SCENARIO_COLUMNS: [&str; 21] = [
    "source_x",
    "source_y",
    "d1_x",
    "d1_y",
    "d2_x",
    "d2_y",
    "r_sd1",
    "r_sd2",
    "lam_x_los",
    "lam_x_nlos",
    "lam_y_los",
    "lam_y_nlos",
    "p",
    "a1",
    "a2",
    "r1",
    "r2",
    "beta",
    "lanes_x",
    "lanes_y",
    "forced_link",
];

const RESULT_COLUMNS: [&str; 8] = [
    "outage_d1_analytic",
    "outage_d2_analytic",
    "outage_d1_mc",
    "outage_d1_stderr",
    "outage_d2_mc",
    "outage_d2_stderr",
    "trials",
    "seed",
];

/// Column names, with the swept variable first when there is one.
pub fn header(variable: Option<&str>) -> Vec<String> {
    variable
        .into_iter()
        .chain(["series", "scheme"])
        .chain(SCENARIO_COLUMNS)
        .chain(RESULT_COLUMNS)
        .map(str::to_string)
        .collect()
}

fn record(row: &ResultRow, with_value: bool) -> Vec<String> {
    let sc = &row.scenario;
    let f = |x: f64| x.to_string();
    let mut rec = Vec::with_capacity(32);
    if with_value {
        rec.push(f(row.value));
    }
    rec.push(row.series.clone());
    rec.push(row.scheme.name().to_string());
    let (sx, sy) = sc.source.to_cartesian();
    let (x1, y1) = sc.d1.to_cartesian();
    let (x2, y2) = sc.d2.to_cartesian();
    let t = &sc.traffic;
    for x in [
        sx,
        sy,
        x1,
        y1,
        x2,
        y2,
        sc.link_distance(junction_core::Destination::D1),
        sc.link_distance(junction_core::Destination::D2),
        t.lam_x_los,
        t.lam_x_nlos,
        t.lam_y_los,
        t.lam_y_nlos,
        t.p,
        sc.noma.a1,
        sc.noma.a2,
        sc.noma.r1,
        sc.noma.r2,
        sc.propagation.beta,
    ] {
        rec.push(f(x));
    }
    rec.push(sc.layout.lanes_x.to_string());
    rec.push(sc.layout.lanes_y.to_string());
    rec.push(match sc.forced_link {
        None => "none".into(),
        Some(s) => s.name().to_lowercase(),
    });
    rec.push(f(row.analytic.0));
    rec.push(f(row.analytic.1));
    match &row.mc {
        Some((m1, m2)) => {
            rec.extend([f(m1.mean), f(m1.std_err), f(m2.mean), f(m2.std_err)]);
            rec.extend([m1.trials.to_string(), m1.seed.to_string()]);
        }
        None => rec.extend(std::iter::repeat_n(String::new(), 4).chain(["0".into(), String::new()])),
    }
    rec
}

/// Writes rows as CSV. Floats use Rust's shortest round-trip formatting.
pub fn write_csv<W: Write>(rows: &[ResultRow], variable: Option<&str>, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(variable))?;
    for row in rows {
        w.write_record(record(row, variable.is_some()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Config {
        let c = Config::parse(text).unwrap();
        c.validate().unwrap();
        c
    }

    #[test]
    fn recipe_names_round_trip() {
        for r in Recipe::ALL {
            assert_eq!(r.name().parse::<Recipe>().unwrap(), r);
        }
        assert!("fig7".parse::<Recipe>().is_err());
    }

    #[test]
    fn fig2_translates_the_triplet() {
        let c = cfg("grid=50");
        let pts = points(&c, Recipe::Fig2Distance, &[50.0]).unwrap();
        let sc = pts[0].scenario;
        assert_eq!(sc.source.to_cartesian(), (-50.0, 0.0));
        assert_eq!(sc.d1.to_cartesian(), (50.0, 10.0));
        assert_eq!(
            sc.link_distance(junction_core::Destination::D1),
            Scenario::default().link_distance(junction_core::Destination::D1)
        );
    }

    #[test]
    fn fig3_sets_common_link_distance() {
        let c = cfg("source_x=5 source_y=-3");
        for p in points(&c, Recipe::Fig3LinkDistance, &[40.0]).unwrap() {
            for d in junction_core::Destination::ALL {
                assert!((p.scenario.link_distance(d) - 40.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_point_matches_direct_call() {
        let c = cfg("grid=0.003");
        let res = run_sweep(&c, Some(Recipe::Fig6Lanes)).unwrap();
        assert_eq!(res.rows.len(), 3);
        let mut sc = Scenario::default();
        sc.traffic = junction_core::Traffic::uniform(0.003, 1.0);
        let direct = outage_pair(&sc, Scheme::Noma, &c.options).unwrap();
        assert_eq!(res.rows[0].analytic, direct);
    }

    #[test]
    fn fig5_emits_both_schemes() {
        let c = cfg("grid=0.001");
        let res = run_sweep(&c, Some(Recipe::Fig5NomaOma)).unwrap();
        let labels: Vec<_> = res.rows.iter().map(|r| (r.series.as_str(), r.scheme)).collect();
        assert_eq!(
            labels,
            [
                ("a1=0.9", Scheme::Noma),
                ("a1=0.9", Scheme::Oma),
                ("a1=0.7", Scheme::Noma),
                ("a1=0.7", Scheme::Oma)
            ]
        );
    }

    #[test]
    fn custom_sweep_uses_key() {
        let c = cfg("recipe=custom sweep_key=p grid=0.2,0.4 lambda=0.002");
        let res = run_sweep(&c, None).unwrap();
        assert_eq!(res.variable, "p");
        assert_eq!(res.rows[1].scenario.traffic.p, 0.4);
        assert!(res.rows[1].analytic.0 >= res.rows[0].analytic.0);
    }

    #[test]
    fn invalid_points_are_rejected() {
        let c = cfg("recipe=custom sweep_key=a1 grid=0.2,0.4");
        assert!(matches!(run_sweep(&c, None), Err(SweepError::Config(_))));
    }

    #[test]
    fn csv_single_row_has_two_lines() {
        let c = cfg("grid=0.001");
        let res = run_sweep(&c, Some(Recipe::Fig2Distance)).unwrap();
        let mut buf = Vec::new();
        write_csv(&res.rows, Some(&res.variable), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("d_triplet,series,scheme,"));
    }
}
