//! Model parameters and the deterministic geometry shared by the analytic
//! engine and the simulator.
//!
//! Two perpendicular roads cross at the origin: the X road runs along the
//! horizontal axis and the Y road along the vertical one. Nodes are located
//! by their distance to the intersection and their angle to the X road.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Tolerance on `a1 + a2 = 1`.
const POWER_SPLIT_TOL: f64 = 1e-12;

/// Position of a node relative to the intersection. Stored in Cartesian
/// form so positions given that way survive exactly; the polar view
/// `(d, θ)` is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    x: f64,
    y: f64,
}

impl Placement {
    /// `theta` may be any finite angle; it is normalized to `[0, 2π)`.
    pub fn new(d: f64, theta: f64) -> Result<Self> {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::validation(
                "d",
                format!("distance must be finite and >= 0, got {d}"),
            ));
        }
        if !theta.is_finite() {
            return Err(Error::validation("theta", "angle must be finite"));
        }
        let theta = normalize_angle(theta);
        Ok(Placement {
            x: d * theta.cos(),
            y: d * theta.sin(),
        })
    }

    pub fn from_cartesian(x: f64, y: f64) -> Self {
        placement_from_cartesian(x, y)
    }

    pub fn d(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Angle to the X road in `[0, 2π)`; 0 at the origin.
    pub fn theta(&self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            normalize_angle(self.y.atan2(self.x))
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_cartesian(&self) -> (f64, f64) {
        (self.x(), self.y())
    }

    pub fn distance_to(&self, other: &Placement) -> f64 {
        (self.x() - other.x()).hypot(self.y() - other.y())
    }

    /// Signed offset from the road centre line: `d·sinθ` for the X road and
    /// `d·cosθ` for the Y road.
    pub fn perpendicular_offset(&self, axis: RoadAxis) -> f64 {
        match axis {
            RoadAxis::X => self.y(),
            RoadAxis::Y => self.x(),
        }
    }

    /// Coordinate of the foot of the perpendicular along the road.
    pub fn along_road(&self, axis: RoadAxis) -> f64 {
        match axis {
            RoadAxis::X => self.x(),
            RoadAxis::Y => self.y(),
        }
    }
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

pub fn placement_from_cartesian(x: f64, y: f64) -> Placement {
    Placement { x, y }
}

/// Distance from `p` to the point at abscissa `x` on the X road.
pub fn dist_to_x_road_point(p: &Placement, x: f64) -> f64 {
    p.y().hypot(x - p.x())
}

/// Distance from `p` to the point at ordinate `y` on the Y road.
pub fn dist_to_y_road_point(p: &Placement, y: f64) -> f64 {
    p.x().hypot(y - p.y())
}

pub fn los_probability(r: f64, beta: f64) -> f64 {
    (-beta * r).exp()
}

/// Sector antenna gain: `g_max` inside the half-power beamwidth, `g_min`
/// elsewhere. `omega` is folded to `[-π, π]` first.
pub fn antenna_gain(omega: f64, antenna: &Antenna) -> f64 {
    let folded = if omega.abs() <= PI {
        omega
    } else {
        (omega + PI).rem_euclid(TAU) - PI
    };
    if folded.abs() <= antenna.phi / 2.0 {
        antenna.g_max
    } else {
        antenna.g_min
    }
}

pub fn upsilon(antenna: &Antenna) -> f64 {
    antenna.upsilon()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkState {
    Los,
    Nlos,
}

impl LinkState {
    pub const ALL: [LinkState; 2] = [LinkState::Los, LinkState::Nlos];

    pub fn index(self) -> usize {
        match self {
            LinkState::Los => 0,
            LinkState::Nlos => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LinkState::Los => "LOS",
            LinkState::Nlos => "NLOS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoadAxis {
    X,
    Y,
}

impl RoadAxis {
    pub const ALL: [RoadAxis; 2] = [RoadAxis::X, RoadAxis::Y];

    pub fn index(self) -> usize {
        match self {
            RoadAxis::X => 0,
            RoadAxis::Y => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Destination {
    D1,
    D2,
}

impl Destination {
    pub const ALL: [Destination; 2] = [Destination::D1, Destination::D2];

    pub fn index(self) -> usize {
        match self {
            Destination::D1 => 0,
            Destination::D2 => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagation {
    pub alpha_los: f64,
    pub alpha_nlos: f64,
    pub m_los: u32,
    pub m_nlos: u32,
    /// Mean power of the Nakagami source links.
    pub mu: f64,
    /// Blockage rate in 1/m.
    pub beta: f64,
}

impl Default for Propagation {
    fn default() -> Self {
        Propagation {
            alpha_los: 2.0,
            alpha_nlos: 4.0,
            m_los: 2,
            m_nlos: 1,
            mu: 1.0,
            beta: 9.5e-3,
        }
    }
}

impl Propagation {
    pub fn alpha(&self, state: LinkState) -> f64 {
        match state {
            LinkState::Los => self.alpha_los,
            LinkState::Nlos => self.alpha_nlos,
        }
    }

    pub fn m(&self, state: LinkState) -> u32 {
        match state {
            LinkState::Los => self.m_los,
            LinkState::Nlos => self.m_nlos,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, alpha) in [("alpha_los", self.alpha_los), ("alpha_nlos", self.alpha_nlos)] {
            if !(alpha.is_finite() && alpha >= 2.0) {
                return Err(Error::validation(
                    name,
                    format!("path-loss exponent must be >= 2, got {alpha}"),
                ));
            }
        }
        for (name, m) in [("m_los", self.m_los), ("m_nlos", self.m_nlos)] {
            if m < 1 {
                return Err(Error::validation(name, "Nakagami shape must be a positive integer"));
            }
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(Error::validation("mu", format!("must be > 0, got {}", self.mu)));
        }
        if !(self.beta >= 0.0) || self.beta.is_nan() {
            return Err(Error::validation("beta", format!("must be >= 0, got {}", self.beta)));
        }
        Ok(())
    }
}

/// Two-level sector antenna. Gains are linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Antenna {
    pub g_max: f64,
    pub g_min: f64,
    /// Half-power beamwidth in radians.
    pub phi: f64,
    /// Carrier frequency in Hz.
    pub carrier_freq: f64,
}

impl Default for Antenna {
    fn default() -> Self {
        Antenna {
            g_max: db_to_linear(18.0),
            g_min: db_to_linear(-10.0),
            phi: 30f64.to_radians(),
            carrier_freq: 30e9,
        }
    }
}

impl Antenna {
    pub fn from_dbi(g_max_dbi: f64, g_min_dbi: f64, phi: f64, carrier_freq: f64) -> Self {
        Antenna {
            g_max: db_to_linear(g_max_dbi),
            g_min: db_to_linear(g_min_dbi),
            phi,
            carrier_freq,
        }
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq
    }

    /// Equivalent gain under perfect alignment.
    pub fn g_eq(&self) -> f64 {
        self.g_max * self.g_max
    }

    /// Link-budget factor `G_eq·η²/(4π)²`.
    pub fn upsilon(&self) -> f64 {
        let eta = self.wavelength();
        self.g_eq() * eta * eta / (4.0 * PI).powi(2)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g_min.is_finite() && self.g_min > 0.0) {
            return Err(Error::validation("g_min", "gain must be > 0"));
        }
        if !(self.g_max.is_finite() && self.g_max >= self.g_min) {
            return Err(Error::validation("g_max", "must satisfy g_max >= g_min"));
        }
        if !(self.phi.is_finite() && self.phi > 0.0) {
            return Err(Error::validation("phi", "beamwidth must be > 0"));
        }
        if !(self.carrier_freq.is_finite() && self.carrier_freq > 0.0) {
            return Err(Error::validation("carrier_freq", "must be > 0"));
        }
        Ok(())
    }
}

/// Interferer intensities (vehicles/m) and the Aloha access probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Traffic {
    pub lam_x_los: f64,
    pub lam_x_nlos: f64,
    pub lam_y_los: f64,
    pub lam_y_nlos: f64,
    pub p: f64,
}

impl Default for Traffic {
    fn default() -> Self {
        Traffic::uniform(0.01, 1.0)
    }
}

impl Traffic {
    /// Same intensity for all four processes.
    pub fn uniform(lambda: f64, p: f64) -> Self {
        Traffic {
            lam_x_los: lambda,
            lam_x_nlos: lambda,
            lam_y_los: lambda,
            lam_y_nlos: lambda,
            p,
        }
    }

    pub fn intensity(&self, axis: RoadAxis, state: LinkState) -> f64 {
        match (axis, state) {
            (RoadAxis::X, LinkState::Los) => self.lam_x_los,
            (RoadAxis::X, LinkState::Nlos) => self.lam_x_nlos,
            (RoadAxis::Y, LinkState::Los) => self.lam_y_los,
            (RoadAxis::Y, LinkState::Nlos) => self.lam_y_nlos,
        }
    }

    pub fn set_intensity(&mut self, axis: RoadAxis, state: LinkState, value: f64) {
        let slot = match (axis, state) {
            (RoadAxis::X, LinkState::Los) => &mut self.lam_x_los,
            (RoadAxis::X, LinkState::Nlos) => &mut self.lam_x_nlos,
            (RoadAxis::Y, LinkState::Los) => &mut self.lam_y_los,
            (RoadAxis::Y, LinkState::Nlos) => &mut self.lam_y_nlos,
        };
        *slot = value;
    }

    pub fn validate(&self) -> Result<()> {
        for (name, lam) in [
            ("lambda_x_los", self.lam_x_los),
            ("lambda_x_nlos", self.lam_x_nlos),
            ("lambda_y_los", self.lam_y_los),
            ("lambda_y_nlos", self.lam_y_nlos),
        ] {
            if !(lam.is_finite() && lam >= 0.0) {
                return Err(Error::validation(name, format!("intensity must be >= 0, got {lam}")));
            }
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::validation(
                "p",
                format!("access probability must lie in [0, 1], got {}", self.p),
            ));
        }
        Ok(())
    }
}

/// Power split and target rates of the two NOMA users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Noma {
    pub a1: f64,
    pub a2: f64,
    /// Target rates in bits/s/Hz.
    pub r1: f64,
    pub r2: f64,
}

impl Default for Noma {
    fn default() -> Self {
        Noma {
            a1: 0.9,
            a2: 0.1,
            r1: 0.5,
            r2: 0.5,
        }
    }
}

impl Noma {
    /// Builds a split from `a1` alone, with `a2 = 1 - a1`.
    pub fn with_a1(a1: f64, r1: f64, r2: f64) -> Self {
        Noma {
            a1,
            a2: 1.0 - a1,
            r1,
            r2,
        }
    }

    pub fn theta1(&self) -> f64 {
        rate_threshold(self.r1)
    }

    pub fn theta2(&self) -> f64 {
        rate_threshold(self.r2)
    }

    pub fn validate(&self) -> Result<()> {
        if !(((self.a1 + self.a2) - 1.0).abs() <= POWER_SPLIT_TOL) {
            return Err(Error::validation(
                "a1/a2",
                format!(
                    "power coefficients must sum to 1, got {} + {} = {}",
                    self.a1,
                    self.a2,
                    self.a1 + self.a2
                ),
            ));
        }
        if !(self.a2 > 0.0 && self.a1 >= self.a2) {
            return Err(Error::validation("a1/a2", "need a1 >= a2 > 0"));
        }
        for (name, r) in [("r1", self.r1), ("r2", self.r2)] {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::validation(name, format!("rate must be >= 0, got {r}")));
            }
        }
        Ok(())
    }
}

/// SIR threshold `2^(2r) - 1` for a target rate `r`.
pub fn rate_threshold(rate: f64) -> f64 {
    (2.0 * rate * std::f64::consts::LN_2).exp_m1()
}

pub const MAX_LANES: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoadLayout {
    pub lanes_x: u32,
    pub lanes_y: u32,
    /// Lane spacing in metres.
    pub lane_width: f64,
}

impl Default for RoadLayout {
    fn default() -> Self {
        RoadLayout {
            lanes_x: 1,
            lanes_y: 1,
            lane_width: 3.5,
        }
    }
}

impl RoadLayout {
    pub fn lanes(&self, axis: RoadAxis) -> u32 {
        match axis {
            RoadAxis::X => self.lanes_x,
            RoadAxis::Y => self.lanes_y,
        }
    }

    /// Perpendicular lane positions, centred on the road's centre line.
    pub fn lane_offsets(&self, axis: RoadAxis) -> Vec<f64> {
        let n = self.lanes(axis);
        let centre = (n as f64 - 1.0) / 2.0;
        (0..n).map(|i| (i as f64 - centre) * self.lane_width).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.lanes_x < 1 || self.lanes_y < 1 {
            return Err(Error::validation("lanes", "each road needs at least one lane"));
        }
        if self.lanes_x > MAX_LANES || self.lanes_y > MAX_LANES {
            return Err(Error::validation(
                "lanes",
                format!("at most {MAX_LANES} lanes per road"),
            ));
        }
        if !(self.lane_width.is_finite() && self.lane_width > 0.0) {
            return Err(Error::validation("lane_width", "must be > 0"));
        }
        Ok(())
    }
}

/// Complete, immutable description of one experiment point.
///
/// The default reproduces the reference setup: source at the origin,
/// destinations at (100, 10) and (100, -10), LOS/NLOS exponents 2 and 4,
/// Nakagami shapes 2 and 1, 18 dBi antennas at 30 GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub source: Placement,
    pub d1: Placement,
    pub d2: Placement,
    pub propagation: Propagation,
    pub antenna: Antenna,
    pub traffic: Traffic,
    pub noma: Noma,
    pub layout: RoadLayout,
    /// Pins every source link to one state instead of drawing it from the
    /// blockage model.
    pub forced_link: Option<LinkState>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            source: placement_from_cartesian(0.0, 0.0),
            d1: placement_from_cartesian(100.0, 10.0),
            d2: placement_from_cartesian(100.0, -10.0),
            propagation: Propagation::default(),
            antenna: Antenna::default(),
            traffic: Traffic::default(),
            noma: Noma::default(),
            layout: RoadLayout::default(),
            forced_link: None,
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.propagation.validate()?;
        self.antenna.validate()?;
        self.traffic.validate()?;
        self.noma.validate()?;
        self.layout.validate()?;
        for p in [self.source, self.d1, self.d2] {
            if !(p.x().is_finite() && p.y().is_finite()) {
                return Err(Error::validation("placement", "coordinates must be finite"));
            }
        }
        for dest in Destination::ALL {
            let r = self.link_distance(dest);
            if !(r > 0.0) {
                return Err(Error::validation(
                    "placement",
                    format!("source and {dest:?} coincide; link distance must be > 0"),
                ));
            }
        }
        Ok(())
    }

    pub fn destination(&self, dest: Destination) -> Placement {
        match dest {
            Destination::D1 => self.d1,
            Destination::D2 => self.d2,
        }
    }

    /// Source-to-destination distance `r_SD`.
    pub fn link_distance(&self, dest: Destination) -> f64 {
        self.source.distance_to(&self.destination(dest))
    }

    pub fn upsilon(&self) -> f64 {
        self.antenna.upsilon()
    }

    /// LOS probability of the source link to `dest`.
    pub fn link_los_probability(&self, dest: Destination) -> f64 {
        match self.forced_link {
            Some(LinkState::Los) => 1.0,
            Some(LinkState::Nlos) => 0.0,
            None => los_probability(self.link_distance(dest), self.propagation.beta),
        }
    }

    /// Every link, source and interferer alike, in `state`: the source link
    /// is pinned and each road's interferers are moved into that class.
    pub fn forced(&self, state: LinkState) -> Scenario {
        let mut sc = *self;
        sc.forced_link = Some(state);
        let other = match state {
            LinkState::Los => LinkState::Nlos,
            LinkState::Nlos => LinkState::Los,
        };
        for axis in RoadAxis::ALL {
            let total = sc.traffic.intensity(axis, state) + sc.traffic.intensity(axis, other);
            sc.traffic.set_intensity(axis, state, total);
            sc.traffic.set_intensity(axis, other, 0.0);
        }
        sc
    }

    pub fn link_state_probability(&self, dest: Destination, state: LinkState) -> f64 {
        let los = self.link_los_probability(dest);
        match state {
            LinkState::Los => los,
            LinkState::Nlos => 1.0 - los,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn cartesian_examples() {
        let p = placement_from_cartesian(100.0, 10.0);
        assert!(close(p.d(), 100.498_756_211_208_9, 1e-12));
        assert!(close(p.theta(), 0.099_668_652_491_162_04, 1e-12));

        let o = placement_from_cartesian(0.0, 0.0);
        assert_eq!((o.d(), o.theta()), (0.0, 0.0));

        let q = placement_from_cartesian(100.0, -10.0);
        assert!(close(q.d(), p.d(), 1e-14));
        assert!(close(q.theta(), TAU - p.theta(), 1e-12));
    }

    #[test]
    fn road_distances() {
        let p = placement_from_cartesian(100.0, 10.0);
        assert!(close(dist_to_x_road_point(&p, 100.0), 10.0, 1e-12));
        assert!(close(dist_to_x_road_point(&p, 0.0), p.d(), 1e-12));
        let o = placement_from_cartesian(0.0, 0.0);
        assert_eq!(dist_to_x_road_point(&o, 5.0), 5.0);
        assert_eq!(dist_to_y_road_point(&o, 5.0), 5.0);
        // foot of the perpendicular on the Y road is at y = 10, offset 100
        assert!(close(dist_to_y_road_point(&p, 10.0), 100.0, 1e-12));
    }

    #[test]
    fn los_probability_examples() {
        assert_eq!(los_probability(0.0, 9.5e-3), 1.0);
        assert!(close(los_probability(100.0, 9.5e-3), (-0.95f64).exp(), 1e-15));
        assert!(close(los_probability(100.0, 9.5e-3), 0.386_741, 1e-6));
        assert_eq!(los_probability(1234.0, 0.0), 1.0);
    }

    #[test]
    fn gain_pattern() {
        let a = Antenna::default();
        assert_eq!(antenna_gain(0.0, &a), a.g_max);
        assert_eq!(antenna_gain(a.phi / 2.0, &a), a.g_max);
        assert_eq!(antenna_gain(-a.phi / 2.0, &a), a.g_max);
        assert_eq!(antenna_gain(PI, &a), a.g_min);
        assert_eq!(antenna_gain(TAU, &a), a.g_max);
    }

    #[test]
    fn upsilon_reference_setup() {
        let a = Antenna::from_dbi(18.0, -10.0, 0.5, 30e9);
        let g = 10f64.powf(1.8);
        let eta = 2.997_924_58e8 / 30e9;
        let expected = g * g * eta * eta / (16.0 * PI * PI);
        assert!(close(a.upsilon(), expected, 1e-14));
        assert!(close(a.upsilon(), 2.5175e-3, 1e-4));

        let unit = Antenna {
            g_max: 1.0,
            g_min: 1.0,
            phi: 1.0,
            carrier_freq: SPEED_OF_LIGHT / (4.0 * PI),
        };
        assert!(close(unit.upsilon(), 1.0, 1e-14));

        let doubled = Antenna {
            g_max: 2.0 * a.g_max,
            ..a
        };
        assert!(close(doubled.upsilon(), 4.0 * a.upsilon(), 1e-14));
    }

    #[test]
    fn lane_offsets_are_centred() {
        let mut layout = RoadLayout::default();
        assert_eq!(layout.lane_offsets(RoadAxis::X), vec![0.0]);
        layout.lanes_x = 3;
        assert_eq!(layout.lane_offsets(RoadAxis::X), vec![-3.5, 0.0, 3.5]);
        layout.lanes_y = 2;
        assert_eq!(layout.lane_offsets(RoadAxis::Y), vec![-1.75, 1.75]);
    }

    #[test]
    fn validation_errors() {
        let mut sc = Scenario::default();
        assert!(sc.validate().is_ok());
        sc.noma.a1 = 0.6;
        sc.noma.a2 = 0.5;
        assert!(matches!(sc.validate(), Err(Error::Validation { .. })));

        let mut sc = Scenario::default();
        sc.noma = Noma {
            a1: 0.4,
            a2: 0.6,
            ..sc.noma
        };
        assert!(sc.validate().is_err());

        let mut sc = Scenario::default();
        sc.propagation.alpha_los = 1.5;
        assert!(sc.validate().is_err());

        let mut sc = Scenario::default();
        sc.traffic.p = 1.5;
        assert!(sc.validate().is_err());

        let mut sc = Scenario::default();
        sc.d1 = sc.source;
        assert!(sc.validate().is_err());

        assert!(Placement::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn threshold_zero_iff_rate_zero() {
        assert_eq!(rate_threshold(0.0), 0.0);
        assert!(rate_threshold(1e-9) > 0.0);
        assert!(close(rate_threshold(0.5), 1.0, 1e-15));
    }

    proptest! {
        #[test]
        fn cartesian_roundtrip(x in -1e4f64..1e4, y in -1e4f64..1e4) {
            let p = placement_from_cartesian(x, y);
            let (bx, by) = p.to_cartesian();
            let scale = x.abs().max(y.abs()).max(1e-300);
            prop_assert!((bx - x).abs() <= 1e-9 * scale);
            prop_assert!((by - y).abs() <= 1e-9 * scale);
            prop_assert!(p.theta() >= 0.0 && p.theta() < TAU);
        }

        #[test]
        fn perpendicular_foot(d in 0.0f64..1e4, theta in 0.0f64..TAU) {
            let p = Placement::new(d, theta).unwrap();
            prop_assert_eq!(dist_to_x_road_point(&p, p.x()), p.y().abs());
            prop_assert_eq!(dist_to_y_road_point(&p, p.y()), p.x().abs());
            let polar = dist_to_x_road_point(&p, d * theta.cos());
            prop_assert!((polar - (d * theta.sin()).abs()).abs() <= 1e-12 * d.max(1.0));
        }

        #[test]
        fn los_monotone(r in 0.0f64..1e4, dr in 0.0f64..1e3, beta in 0.0f64..0.1, db in 0.0f64..0.1) {
            prop_assert!(los_probability(r + dr, beta) <= los_probability(r, beta));
            prop_assert!(los_probability(r, beta + db) <= los_probability(r, beta));
            let v = los_probability(r, beta);
            prop_assert!(v > 0.0 || r * beta > 700.0);
            prop_assert!(v <= 1.0);
        }
    }
}
