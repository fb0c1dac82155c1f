use crate::outage::{thresholds, OmaConvention, Scheme};
use crate::scenario::{Destination, LinkState, RoadAxis, Scenario};

/// One interfering vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interferer {
    pub axis: RoadAxis,
    pub lane: u32,
    pub class: LinkState,
    /// Coordinate along the road, metres.
    pub position: f64,
    /// Aloha mark: transmits in this slot.
    pub active: bool,
    /// Unit-mean exponential power fades towards D1 and D2.
    pub fades: [f64; 2],
}

/// One sampled world: source-link states and fades plus the interferer
/// field shared by both destinations.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub link_states: [LinkState; 2],
    /// `|h_SD|²` for D1 and D2.
    pub link_fades: [f64; 2],
    pub interferers: Vec<Interferer>,
    /// Deterministic interference added per destination and road for the
    /// field outside the simulated window, already scaled by `Υ`.
    pub far_field: [[f64; 2]; 2],
}

impl Realization {
    pub fn link_state(&self, dest: Destination) -> LinkState {
        self.link_states[dest.index()]
    }

    pub fn link_fade(&self, dest: Destination) -> f64 {
        self.link_fades[dest.index()]
    }
}

#[inline]
fn inverse_path_loss(r2: f64, alpha: f64) -> f64 {
    if alpha == 2.0 {
        r2.recip()
    } else if alpha == 4.0 {
        (r2 * r2).recip()
    } else {
        r2.powf(-0.5 * alpha)
    }
}

/// Aggregate received interference `(I_X, I_Y)` at `dest`.
pub fn aggregate_interference(real: &Realization, dest: Destination, sc: &Scenario) -> (f64, f64) {
    let rx = sc.destination(dest);
    let (x, y) = rx.to_cartesian();
    let offsets = [sc.layout.lane_offsets(RoadAxis::X), sc.layout.lane_offsets(RoadAxis::Y)];
    let upsilon = sc.upsilon();
    let mut totals = [0.0; 2];
    for it in real.interferers.iter().filter(|it| it.active) {
        let lane = offsets[it.axis.index()][it.lane as usize];
        let (dx, dy) = match it.axis {
            RoadAxis::X => (it.position - x, lane - y),
            RoadAxis::Y => (lane - x, it.position - y),
        };
        let gain = inverse_path_loss(dx * dx + dy * dy, sc.propagation.alpha(it.class));
        totals[it.axis.index()] += it.fades[dest.index()] * gain;
    }
    let far = real.far_field[dest.index()];
    (totals[0] * upsilon + far[0], totals[1] * upsilon + far[1])
}

/// Received desired power `|h|²·r^{-α}·Υ` at `dest`.
pub fn signal_power(real: &Realization, dest: Destination, sc: &Scenario) -> f64 {
    let alpha = sc.propagation.alpha(real.link_state(dest));
    let r = sc.link_distance(dest);
    real.link_fade(dest) * r.powf(-alpha) * sc.upsilon()
}

/// Outage indicators `(D1, D2)` for one realization.
///
/// SIR comparisons are cross-multiplied so zero interference needs no
/// special case.
pub fn trial_outcomes(real: &Realization, sc: &Scenario, scheme: Scheme, oma: OmaConvention) -> (bool, bool) {
    let interference = |d| {
        let (ix, iy) = aggregate_interference(real, d, sc);
        ix + iy
    };
    let i1 = interference(Destination::D1);
    let i2 = interference(Destination::D2);
    let s1 = signal_power(real, Destination::D1, sc);
    let s2 = signal_power(real, Destination::D2, sc);
    match scheme {
        Scheme::Noma => {
            let th = thresholds(&sc.noma);
            let (a1, a2) = (sc.noma.a1, sc.noma.a2);
            // SIR of D1's message at a receiver: a1·S / (a2·S + I)
            let d1_msg_fails = |s: f64, i: f64| s * a1 < th.theta1 * (s * a2 + i);
            let o1 = d1_msg_fails(s1, i1);
            let o2 = d1_msg_fails(s2, i2) || s2 * a2 < th.theta2 * i2;
            (o1, o2)
        }
        Scheme::Oma => {
            let t1 = oma.threshold(sc.noma.r1);
            let t2 = oma.threshold(sc.noma.r2);
            (s1 < t1 * i1, s2 < t2 * i2)
        }
    }
}
