//! Closed-form outage probabilities of the two NOMA destinations and of the
//! orthogonal baseline.
//!
//! Conditioned on the source-link state `Z`, the desired power is Gamma with
//! integer shape `m_Z`, so the success probability is
//! `E[e^{-ΩI} Σ_{k<m} (ΩI)^k / k!]`. Expanding `(I_X + I_Y)^k` and using
//! `E[I^n e^{-ΩI}] = (-1)^n L^{(n)}(Ω)` turns it into a finite double sum
//! over derivatives of the per-road Laplace transforms.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::laplace::{laplace_of_sum, InterferenceSpec, MAX_DERIVATIVE_ORDER};
use crate::scenario::{Destination, LinkState, Noma, RoadAxis, Scenario};

/// Raw probabilities may stray this far outside [0, 1] before it counts as
/// a numerical failure.
pub const INTEGRITY_SLACK: f64 = 1e-9;

/// SIR thresholds and the derived ratios used by the outage formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub theta1: f64,
    pub theta2: f64,
    /// `Θ1 / (a1 - Θ1·a2)`; `None` when `Θ1 >= a1/a2` and D1's message can
    /// never be decoded.
    pub psi1: Option<f64>,
    /// `Θ2 / a2`.
    pub psi2: f64,
}

impl Thresholds {
    pub fn feasible(&self) -> bool {
        self.psi1.is_some()
    }

    pub fn psi_max(&self) -> Option<f64> {
        self.psi1.map(|p1| p1.max(self.psi2))
    }
}

pub fn thresholds(noma: &Noma) -> Thresholds {
    let theta1 = noma.theta1();
    let theta2 = noma.theta2();
    let margin = noma.a1 - theta1 * noma.a2;
    Thresholds {
        theta1,
        theta2,
        psi1: (margin > 0.0).then(|| theta1 / margin),
        psi2: theta2 / noma.a2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Noma,
    Oma,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Noma => "NOMA",
            Scheme::Oma => "OMA",
        }
    }
}

/// Threshold rule for the orthogonal baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmaConvention {
    /// Same `Θ = 2^(2r) - 1` as NOMA, full power, no intra-cell term.
    #[default]
    SameThreshold,
    /// `Θ = 2^r - 1`.
    HalfRate,
}

impl OmaConvention {
    pub fn threshold(self, rate: f64) -> f64 {
        match self {
            OmaConvention::SameThreshold => (2.0 * rate * LN_2).exp_m1(),
            OmaConvention::HalfRate => (rate * LN_2).exp_m1(),
        }
    }
}

/// How LOS and NLOS interferer populations are combined at a receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterferenceComposition {
    /// The Gamma CCDF is evaluated at the total interference. Exact for
    /// every shape `m`.
    #[default]
    Joint,
    /// Product over LOS/NLOS classes of per-class expectations. Coincides
    /// with `Joint` only when `m = 1`.
    PerClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutageOptions {
    pub composition: InterferenceComposition,
    pub oma: OmaConvention,
}

/// Outage probability split by the state of the source link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageBreakdown {
    pub total: f64,
    /// Success mass `P(Z)·E[...]` per source-link state, indexed by
    /// [`LinkState::index`].
    pub contributions: [f64; 2],
}

impl OutageBreakdown {
    fn certain() -> Self {
        OutageBreakdown {
            total: 1.0,
            contributions: [0.0; 2],
        }
    }

    pub fn contribution(&self, state: LinkState) -> f64 {
        self.contributions[state.index()]
    }
}

/// `e^{-x} Σ_{k<m} x^k / k!`, the regularized upper incomplete gamma
/// `Γ(m, x)/Γ(m)` for integer `m`.
pub fn gamma_ccdf_integer(m: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..m {
        term *= x / k as f64;
        sum += term;
    }
    (-x).exp() * sum
}

/// Interference population of one road and one interferer class at `dest`,
/// with interferer powers carrying the scenario's link budget.
pub fn interference_spec(sc: &Scenario, dest: Destination, axis: RoadAxis, class: LinkState) -> InterferenceSpec {
    InterferenceSpec::new(
        axis,
        class,
        sc.destination(dest),
        sc.traffic.intensity(axis, class),
        sc.traffic.p,
        sc.propagation.alpha(class),
    )
    .with_lanes(sc.layout.lane_offsets(axis))
    .with_power_scale(sc.upsilon())
}

/// Laplace argument `Ω = m_Z·Ψ / (μ·r^{-α_Z}·Υ)`, assembled in the log
/// domain so large links with `α = 4` do not overflow.
pub fn laplace_argument(sc: &Scenario, dest: Destination, state: LinkState, psi: f64) -> f64 {
    if psi == 0.0 {
        return 0.0;
    }
    let m = sc.propagation.m(state) as f64;
    let alpha = sc.propagation.alpha(state);
    let r = sc.link_distance(dest);
    ((m * psi / sc.propagation.mu).ln() + alpha * r.ln() - sc.upsilon().ln()).exp()
}

/// `Σ_{k<m} (-Ω)^k/k! Σ_n C(k,n) L_X^{(k-n)}(Ω) L_Y^{(n)}(Ω)`, i.e.
/// `E[Γ(m, Ω(I_X + I_Y))/Γ(m)]` for independent road fields. Each road may
/// hold several populations whose exponents add.
pub fn inner_term(x_road: &[InterferenceSpec], y_road: &[InterferenceSpec], m: u32, omega: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::validation("m", "Nakagami shape must be >= 1"));
    }
    let max_order = (m - 1) as usize;
    if max_order > MAX_DERIVATIVE_ORDER {
        return Err(Error::validation(
            "m",
            format!("shape {m} needs derivatives beyond order {MAX_DERIVATIVE_ORDER}"),
        ));
    }
    if omega == 0.0 {
        return Ok(1.0);
    }
    let lx = laplace_of_sum(x_road, omega, max_order)?;
    let ly = laplace_of_sum(y_road, omega, max_order)?;

    let mut total = 0.0;
    let mut prefactor = 1.0; // (-Ω)^k / k!
    for k in 0..=max_order {
        if k > 0 {
            prefactor *= -omega / k as f64;
        }
        let mut binom = 1.0;
        let mut inner = 0.0;
        for n in 0..=k {
            inner += binom * lx.values[k - n] * ly.values[n];
            binom = binom * (k - n) as f64 / (n + 1) as f64;
        }
        total += prefactor * inner;
    }
    Ok(total)
}

fn conditional_success(
    sc: &Scenario,
    dest: Destination,
    state: LinkState,
    psi: f64,
    composition: InterferenceComposition,
) -> Result<f64> {
    let m = sc.propagation.m(state);
    let omega = laplace_argument(sc, dest, state, psi);
    let road = |axis, class| interference_spec(sc, dest, axis, class);
    match composition {
        InterferenceComposition::Joint => {
            let x: Vec<_> = LinkState::ALL.iter().map(|&k| road(RoadAxis::X, k)).collect();
            let y: Vec<_> = LinkState::ALL.iter().map(|&k| road(RoadAxis::Y, k)).collect();
            inner_term(&x, &y, m, omega)
        }
        InterferenceComposition::PerClass => LinkState::ALL.iter().try_fold(1.0, |acc, &k| {
            Ok(acc * inner_term(&[road(RoadAxis::X, k)], &[road(RoadAxis::Y, k)], m, omega)?)
        }),
    }
}

/// Outage of a receiver that succeeds iff `|h|² ≥ Ψ·I / (r^{-α}Υ)`.
/// `psi = None` means the event is impossible and outage is certain.
pub fn outage_for_ratio(
    sc: &Scenario,
    dest: Destination,
    psi: Option<f64>,
    composition: InterferenceComposition,
) -> Result<OutageBreakdown> {
    sc.validate()?;
    let Some(psi) = psi else {
        return Ok(OutageBreakdown::certain());
    };
    let mut contributions = [0.0; 2];
    for state in LinkState::ALL {
        let weight = sc.link_state_probability(dest, state);
        if weight == 0.0 {
            continue;
        }
        let success = conditional_success(sc, dest, state, psi, composition)?;
        let part = weight * success;
        if !(part >= -INTEGRITY_SLACK && part <= weight + INTEGRITY_SLACK) {
            return Err(Error::NumericalIntegrity {
                context: format!("{dest:?} {} success term", state.name()),
                value: part,
            });
        }
        contributions[state.index()] = part.clamp(0.0, weight);
    }
    let raw = 1.0 - contributions.iter().sum::<f64>();
    if !(-INTEGRITY_SLACK..=1.0 + INTEGRITY_SLACK).contains(&raw) {
        return Err(Error::NumericalIntegrity {
            context: format!("{dest:?} outage"),
            value: raw,
        });
    }
    Ok(OutageBreakdown {
        total: raw.clamp(0.0, 1.0),
        contributions,
    })
}

pub fn outage_d1_with(sc: &Scenario, opts: &OutageOptions) -> Result<OutageBreakdown> {
    let th = thresholds(&sc.noma);
    outage_for_ratio(sc, Destination::D1, th.psi1, opts.composition)
}

pub fn outage_d2_with(sc: &Scenario, opts: &OutageOptions) -> Result<OutageBreakdown> {
    let th = thresholds(&sc.noma);
    outage_for_ratio(sc, Destination::D2, th.psi_max(), opts.composition)
}

/// Outage of D1, which decodes its own message treating D2's as noise.
pub fn outage_d1(sc: &Scenario) -> Result<OutageBreakdown> {
    outage_d1_with(sc, &OutageOptions::default())
}

/// Outage of D2, which must first decode and cancel D1's message.
pub fn outage_d2(sc: &Scenario) -> Result<OutageBreakdown> {
    outage_d2_with(sc, &OutageOptions::default())
}

pub fn outage_oma_with(sc: &Scenario, opts: &OutageOptions) -> Result<(f64, f64)> {
    let psi1 = opts.oma.threshold(sc.noma.r1);
    let psi2 = opts.oma.threshold(sc.noma.r2);
    let o1 = outage_for_ratio(sc, Destination::D1, Some(psi1), opts.composition)?;
    let o2 = outage_for_ratio(sc, Destination::D2, Some(psi2), opts.composition)?;
    Ok((o1.total, o2.total))
}

/// Orthogonal baseline: each destination alone in its slot at full power.
pub fn outage_oma(sc: &Scenario) -> Result<(f64, f64)> {
    outage_oma_with(sc, &OutageOptions::default())
}

/// `(P(O_D1), P(O_D2))` under either scheme.
pub fn outage_pair(sc: &Scenario, scheme: Scheme, opts: &OutageOptions) -> Result<(f64, f64)> {
    match scheme {
        Scheme::Noma => Ok((outage_d1_with(sc, opts)?.total, outage_d2_with(sc, opts)?.total)),
        Scheme::Oma => outage_oma_with(sc, opts),
    }
}
