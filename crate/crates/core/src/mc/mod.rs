//! Monte Carlo simulation of the two-road NOMA scenario.
//!
//! Every trial draws from its own counter-based streams, so a trial's
//! outcome depends only on `(seed, trial)` and never on thread count or
//! scheduling. Interferers are generated shell by shell outwards from the
//! road origin; enlarging the window keeps the inner shells unchanged.
//! By default the field outside the window enters through its mean.

mod realization;
mod sampling;

pub use realization::{aggregate_interference, signal_power, trial_outcomes, Interferer, Realization};
pub use sampling::{sample_nakagami_power, sample_ppp, substream};

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::outage::{OmaConvention, Scheme};
use crate::quadrature::{integrate_half_line, QuadOptions};
use crate::scenario::{Destination, LinkState, RoadAxis, Scenario};

/// Default half-width of the simulated road segment, metres.
pub const DEFAULT_WINDOW: f64 = 1.0e4;
/// Width of one generation shell on each side of the origin, metres.
pub const SHELL_WIDTH: f64 = 1.0e3;

const LINK_STREAM: u64 = 0;
const CHUNK: u64 = 256;

/// Treatment of interferers beyond the simulated window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailModel {
    /// Add the exact mean interference of the field outside the window.
    #[default]
    MeanField,
    /// Ignore everything outside the window.
    Truncate,
}

/// Empirical outage probability with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub trials: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn from_count(outages: u64, trials: u64, seed: u64) -> Self {
        let mean = outages as f64 / trials as f64;
        McEstimate {
            mean,
            std_err: (mean * (1.0 - mean) / trials as f64).sqrt(),
            trials,
            seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Simulator {
    scenario: Scenario,
    window: f64,
    oma: OmaConvention,
    tail: TailModel,
    far_field: [[f64; 2]; 2],
}

impl Simulator {
    pub fn new(scenario: &Scenario) -> Result<Self> {
        scenario.validate()?;
        let mut sim = Simulator {
            scenario: *scenario,
            window: DEFAULT_WINDOW,
            oma: OmaConvention::default(),
            tail: TailModel::default(),
            far_field: [[0.0; 2]; 2],
        };
        sim.far_field = sim.far_field_means()?;
        Ok(sim)
    }

    pub fn with_window(mut self, half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::validation("window", "must be a finite length > 0"));
        }
        self.window = half_width;
        self.far_field = self.far_field_means()?;
        Ok(self)
    }

    pub fn with_tail(mut self, tail: TailModel) -> Result<Self> {
        self.tail = tail;
        self.far_field = self.far_field_means()?;
        Ok(self)
    }

    pub fn with_oma(mut self, oma: OmaConvention) -> Self {
        self.oma = oma;
        self
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    /// Mean interference from beyond the window per destination and road.
    pub fn far_field(&self, dest: Destination) -> [f64; 2] {
        self.far_field[dest.index()]
    }

    fn far_field_means(&self) -> Result<[[f64; 2]; 2]> {
        let mut out = [[0.0; 2]; 2];
        if self.tail == TailModel::Truncate {
            return Ok(out);
        }
        let sc = &self.scenario;
        let opts = QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            ..QuadOptions::default()
        };
        for dest in Destination::ALL {
            let rx = sc.destination(dest);
            for (axis, class) in populations() {
                let density = sc.traffic.intensity(axis, class) * sc.traffic.p;
                if density == 0.0 {
                    continue;
                }
                let alpha = sc.propagation.alpha(class);
                let along = rx.along_road(axis);
                let mut total = 0.0;
                for lane in sc.layout.lane_offsets(axis) {
                    let c = rx.perpendicular_offset(axis) - lane;
                    // both half-lines beyond the window, measured from the receiver's foot
                    for start in [self.window - along, self.window + along] {
                        let f = |u: f64| {
                            let t = start + u;
                            (t * t + c * c).powf(-0.5 * alpha)
                        };
                        let scale = start.abs().max(c.abs()).max(1.0);
                        total += integrate_half_line(f, scale, &opts)?.value;
                    }
                }
                out[dest.index()][axis.index()] += density * total * sc.upsilon();
            }
        }
        Ok(out)
    }

    /// Draws trial `trial` of the run seeded with `seed`.
    pub fn sample(&self, seed: u64, trial: u64) -> Realization {
        let sc = &self.scenario;
        let mut rng = substream(seed, trial, LINK_STREAM);
        let mut link_states = [LinkState::Los; 2];
        let mut link_fades = [0.0; 2];
        for dest in Destination::ALL {
            let u: f64 = rng.random();
            let state = if u < sc.link_los_probability(dest) {
                LinkState::Los
            } else {
                LinkState::Nlos
            };
            link_states[dest.index()] = state;
            link_fades[dest.index()] = sample_nakagami_power(sc.propagation.m(state), sc.propagation.mu, &mut rng);
        }

        let shells = (self.window / SHELL_WIDTH).ceil() as u64;
        let mut interferers = Vec::new();
        for (process, (axis, class)) in populations().enumerate() {
            let intensity = sc.traffic.intensity(axis, class);
            if intensity == 0.0 {
                continue;
            }
            for lane in 0..sc.layout.lanes(axis) {
                let population = (process as u64) << 8 | lane as u64;
                for shell in 0..shells {
                    let tag = 1 + (population << 32 | shell);
                    let mut rng = substream(seed, trial, tag);
                    let inner = shell as f64 * SHELL_WIDTH;
                    let outer = ((shell + 1) as f64 * SHELL_WIDTH).min(self.window);
                    let mut points = sample_ppp(intensity, -outer, -inner, &mut rng);
                    points.extend(sample_ppp(intensity, inner, outer, &mut rng));
                    for position in points {
                        let active = rng.random::<f64>() < sc.traffic.p;
                        let fades = [Exp1.sample(&mut rng), Exp1.sample(&mut rng)];
                        interferers.push(Interferer {
                            axis,
                            lane,
                            class,
                            position,
                            active,
                            fades,
                        });
                    }
                }
            }
        }

        Realization {
            link_states,
            link_fades,
            interferers,
            far_field: self.far_field,
        }
    }

    /// Outage indicators of a single trial.
    pub fn trial(&self, scheme: Scheme, seed: u64, trial: u64) -> (bool, bool) {
        trial_outcomes(&self.sample(seed, trial), &self.scenario, scheme, self.oma)
    }

    /// Estimates `(P_out,D1, P_out,D2)` over `trials` independent trials.
    pub fn run(&self, scheme: Scheme, trials: u64, seed: u64) -> Result<(McEstimate, McEstimate)> {
        if trials == 0 {
            return Err(Error::validation("trials", "must be at least 1"));
        }
        let chunks = trials.div_ceil(CHUNK);
        let (o1, o2) = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut counts = (0u64, 0u64);
                for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                    let (a, b) = self.trial(scheme, seed, t);
                    counts.0 += a as u64;
                    counts.1 += b as u64;
                }
                counts
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        Ok((
            McEstimate::from_count(o1, trials, seed),
            McEstimate::from_count(o2, trials, seed),
        ))
    }
}

fn populations() -> impl Iterator<Item = (RoadAxis, LinkState)> {
    RoadAxis::ALL
        .into_iter()
        .flat_map(|axis| LinkState::ALL.into_iter().map(move |class| (axis, class)))
}

/// Monte Carlo outage estimate with the default window and OMA convention.
pub fn run_mc(sc: &Scenario, scheme: Scheme, trials: u64, seed: u64) -> Result<(McEstimate, McEstimate)> {
    Simulator::new(sc)?.run(scheme, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Traffic;

    #[test]
    fn same_seed_same_result() {
        let sc = Scenario::default();
        let a = run_mc(&sc, Scheme::Noma, 2000, 7).unwrap();
        let b = run_mc(&sc, Scheme::Noma, 2000, 7).unwrap();
        assert_eq!(a, b);
        let c = run_mc(&sc, Scheme::Noma, 2000, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let sim = Simulator::new(&Scenario::default()).unwrap();
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = single.install(|| sim.run(Scheme::Oma, 1500, 11).unwrap());
        let b = many.install(|| sim.run(Scheme::Oma, 1500, 11).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn larger_window_keeps_inner_shells() {
        let sc = Scenario::default();
        let small = Simulator::new(&sc).unwrap().with_window(2e3).unwrap();
        let large = Simulator::new(&sc).unwrap().with_window(4e3).unwrap();
        let a = small.sample(5, 3);
        let b = large.sample(5, 3);
        assert_eq!(a.link_states, b.link_states);
        assert_eq!(a.link_fades, b.link_fades);
        for it in &a.interferers {
            assert!(b.interferers.contains(it));
        }
        assert!(b.interferers.len() > a.interferers.len());
    }

    #[test]
    fn window_bounds_positions() {
        let sim = Simulator::new(&Scenario::default())
            .unwrap()
            .with_window(2500.0)
            .unwrap();
        let real = sim.sample(1, 0);
        assert!(real.interferers.iter().all(|it| it.position.abs() < 2500.0));
    }

    #[test]
    fn forced_links_are_respected() {
        let sc = Scenario::default().forced(LinkState::Nlos);
        let sim = Simulator::new(&sc).unwrap();
        for t in 0..50 {
            let real = sim.sample(2, t);
            assert_eq!(real.link_states, [LinkState::Nlos; 2]);
            assert!(real.interferers.iter().all(|it| it.class == LinkState::Nlos));
        }
    }

    #[test]
    fn empty_road_without_blockage_never_fails_d1() {
        let mut sc = Scenario::default();
        sc.traffic = Traffic::uniform(0.0, 1.0);
        let (d1, _) = run_mc(&sc, Scheme::Noma, 500, 1).unwrap();
        assert_eq!(d1.mean, 0.0);
        assert_eq!(d1.std_err, 0.0);
    }

    #[test]
    fn far_field_mean_at_alpha_2() {
        let mut sc = Scenario::default();
        sc.traffic = Traffic::uniform(0.0, 0.5);
        sc.traffic.set_intensity(RoadAxis::X, LinkState::Los, 0.02);
        sc.d1 = crate::scenario::placement_from_cartesian(0.0, 10.0);
        let sim = Simulator::new(&sc).unwrap();
        let (w, c) = (DEFAULT_WINDOW, 10.0);
        let expected = 0.5 * 0.02 * sc.upsilon() * 2.0 * (std::f64::consts::FRAC_PI_2 - (w / c).atan()) / c;
        let got = sim.far_field(Destination::D1);
        assert!((got[0] - expected).abs() <= 1e-9 * expected, "{} vs {expected}", got[0]);
        assert_eq!(got[1], 0.0);
        let cut = Simulator::new(&sc).unwrap().with_tail(TailModel::Truncate).unwrap();
        assert_eq!(cut.far_field(Destination::D1), [0.0, 0.0]);
        assert_eq!(cut.sample(1, 0).far_field, [[0.0; 2]; 2]);
    }

    #[test]
    fn rejects_zero_trials_and_bad_window() {
        let sc = Scenario::default();
        assert!(run_mc(&sc, Scheme::Noma, 0, 1).is_err());
        assert!(Simulator::new(&sc).unwrap().with_window(0.0).is_err());
    }
}
