//! Trend self-checks and the analytic-vs-simulation validation grid.

use junction_core::{outage_pair, placement_from_cartesian, Scenario, Scheme, Simulator};

use crate::config::Config;
use crate::sweep::{run_sweep, Recipe, SweepError};

/// Slack allowed when asserting that a curve never goes down.
pub const TREND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

fn first_drop(values: &[f64]) -> Option<usize> {
    values.windows(2).position(|w| w[1] < w[0] - TREND_SLACK)
}

fn monotone_check(name: &str, curves: &[(String, Vec<f64>)]) -> CheckOutcome {
    for (label, values) in curves {
        if let Some(i) = first_drop(values) {
            return CheckOutcome {
                name: name.into(),
                passed: false,
                detail: format!(
                    "{label} drops from {:.6} to {:.6} at grid index {}",
                    values[i],
                    values[i + 1],
                    i + 1
                ),
            };
        }
    }
    CheckOutcome {
        name: name.into(),
        passed: true,
        detail: format!("{} curves non-decreasing", curves.len()),
    }
}

/// Analytic-only curves of one recipe: `(series/scheme/destination, values)`.
fn curves(cfg: &Config, recipe: Recipe) -> Result<Vec<(String, Vec<f64>)>, SweepError> {
    let mut c = cfg.clone();
    c.trials = 0;
    c.grid = None;
    let res = run_sweep(&c, Some(recipe))?;
    let mut out: Vec<(String, Vec<f64>)> = Vec::new();
    for row in &res.rows {
        for (dest, v) in [("D1", row.analytic.0), ("D2", row.analytic.1)] {
            let label = format!("{} {} {dest}", row.series, row.scheme.name());
            match out.iter_mut().find(|(l, _)| *l == label) {
                Some((_, vals)) => vals.push(v),
                None => out.push((label, vec![v])),
            }
        }
    }
    Ok(out)
}

fn ordering_check(
    name: &str,
    upper: &[(String, Vec<f64>)],
    lower: &[(String, Vec<f64>)],
    grid: &[f64],
) -> CheckOutcome {
    let mut violations = Vec::new();
    for ((lu, u), (ll, l)) in upper.iter().zip(lower) {
        for ((a, b), x) in u.iter().zip(l).zip(grid) {
            if *a < *b - TREND_SLACK {
                violations.push(format!("{lu} {a:.4} < {ll} {b:.4} at lambda {x:e}"));
            }
        }
    }
    CheckOutcome {
        name: name.into(),
        passed: violations.is_empty(),
        detail: if violations.is_empty() {
            "holds at every grid point".into()
        } else {
            format!("{} violations; first: {}", violations.len(), violations[0])
        },
    }
}

/// Qualitative trends of the figure recipes, evaluated analytically.
pub fn selfcheck(cfg: &Config) -> Result<Vec<CheckOutcome>, SweepError> {
    let mut out = Vec::new();

    let fig4 = curves(cfg, Recipe::Fig4LosSplit)?;
    out.push(monotone_check("outage non-decreasing in lambda (LOS split)", &fig4));
    let family =
        |name: &str| -> Vec<(String, Vec<f64>)> { fig4.iter().filter(|(l, _)| l.starts_with(name)).cloned().collect() };
    let grid = Recipe::Fig4LosSplit.default_grid();
    out.push(ordering_check(
        "LOS-forced >= mixed",
        &family("los_forced"),
        &family("mixed"),
        &grid,
    ));
    out.push(ordering_check(
        "mixed >= NLOS-forced",
        &family("mixed"),
        &family("nlos_forced"),
        &grid,
    ));

    let fig5 = curves(cfg, Recipe::Fig5NomaOma)?;
    out.push(monotone_check("outage non-decreasing in lambda (NOMA and OMA)", &fig5));

    let fig6 = curves(cfg, Recipe::Fig6Lanes)?;
    out.push(monotone_check("outage non-decreasing in lambda (lanes)", &fig6));
    let mut by_lanes = Vec::new();
    let n_lambda = Recipe::Fig6Lanes.default_grid().len();
    for i in 0..n_lambda {
        for dest in ["D1", "D2"] {
            for &scheme in cfg.scheme.schemes() {
                let values = cfg
                    .lane_counts
                    .iter()
                    .map(|n| {
                        let label = format!("lanes={n} {} {dest}", scheme.name());
                        fig6.iter().find(|(l, _)| *l == label).expect("curve present").1[i]
                    })
                    .collect();
                by_lanes.push((format!("{} {dest} at grid index {i}", scheme.name()), values));
            }
        }
    }
    out.push(monotone_check("outage non-decreasing in lane count", &by_lanes));

    let fig2 = curves(cfg, Recipe::Fig2Distance)?;
    let approach = monotone_check("outage grows as the triplet approaches the intersection", &fig2);
    let strict = fig2.iter().all(|(_, v)| v.last() > v.first());
    out.push(CheckOutcome {
        passed: approach.passed && strict,
        detail: if approach.passed && !strict {
            "curves are flat".into()
        } else {
            approach.detail.clone()
        },
        ..approach
    });
    Ok(out)
}

/// Named geometry used by the validation grid.
#[derive(Debug, Clone, Copy)]
pub struct Geometry {
    pub name: &'static str,
    pub source: (f64, f64),
    pub d1: (f64, f64),
    pub d2: (f64, f64),
}

pub const VALIDATION_GEOMETRIES: [Geometry; 3] = [
    Geometry {
        name: "reference",
        source: (0.0, 0.0),
        d1: (100.0, 10.0),
        d2: (100.0, -10.0),
    },
    Geometry {
        name: "near_intersection",
        source: (-30.0, 0.0),
        d1: (30.0, 5.0),
        d2: (30.0, -5.0),
    },
    Geometry {
        name: "roadside_unit",
        source: (20.0, 20.0),
        d1: (60.0, 3.0),
        d2: (-40.0, 3.0),
    },
];

pub const VALIDATION_LAMBDAS: [f64; 4] = [1e-3, 5e-3, 1e-2, 5e-2];

impl Geometry {
    pub fn apply(&self, sc: &Scenario) -> Scenario {
        Scenario {
            source: placement_from_cartesian(self.source.0, self.source.1),
            d1: placement_from_cartesian(self.d1.0, self.d1.1),
            d2: placement_from_cartesian(self.d2.0, self.d2.1),
            ..*sc
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub geometry: &'static str,
    pub lambda: f64,
    pub scheme: Scheme,
    pub analytic: [f64; 2],
    pub mc: [f64; 2],
    pub std_err: [f64; 2],
    pub tolerance: [f64; 2],
}

impl ValidationRow {
    pub fn passed(&self) -> bool {
        (0..2).all(|i| (self.analytic[i] - self.mc[i]).abs() <= self.tolerance[i])
    }
}

/// Compares analytic and simulated outage on the geometry × intensity grid,
/// with tolerance `max(3·std_err, 0.01)`.
pub fn validation_grid(cfg: &Config, trials: u64) -> junction_core::Result<Vec<ValidationRow>> {
    let mut rows = Vec::new();
    for geom in VALIDATION_GEOMETRIES {
        for lambda in VALIDATION_LAMBDAS {
            let mut sc = geom.apply(&cfg.scenario);
            sc.traffic.lam_x_los = lambda;
            sc.traffic.lam_x_nlos = lambda;
            sc.traffic.lam_y_los = lambda;
            sc.traffic.lam_y_nlos = lambda;
            let sim = Simulator::new(&sc)?
                .with_window(cfg.window)?
                .with_tail(cfg.tail)?
                .with_oma(cfg.options.oma);
            for scheme in [Scheme::Noma, Scheme::Oma] {
                let (a1, a2) = outage_pair(&sc, scheme, &cfg.options)?;
                let (m1, m2) = sim.run(scheme, trials, cfg.seed)?;
                rows.push(ValidationRow {
                    geometry: geom.name,
                    lambda,
                    scheme,
                    analytic: [a1, a2],
                    mc: [m1.mean, m2.mean],
                    std_err: [m1.std_err, m2.std_err],
                    tolerance: [(3.0 * m1.std_err).max(0.01), (3.0 * m2.std_err).max(0.01)],
                });
            }
        }
    }
    Ok(rows)
}
