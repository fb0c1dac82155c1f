//! Laplace transform of the shot-noise interference produced by a thinned
//! Poisson field of vehicles on one road.
//!
//! For a single lane whose centre line is at perpendicular distance `c`
//! from the receiver, unit-mean exponential fading gives
//!
//! ```text
//! L(s) = exp(g(s)),   g(s) = -p·λ · ∫ s / (s + (c² + x²)^(α/2)) dx
//! ```
//!
//! with the integral over the whole road. Lanes contribute additively to
//! `g`. Derivatives of `L` are assembled from derivatives of `g` through
//! complete Bell polynomials, which is exact at every order.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_half_line, QuadOptions};
use crate::scenario::{LinkState, Placement};

pub use crate::scenario::RoadAxis;

/// Highest derivative order accepted by [`laplace_with_derivatives`].
pub const MAX_DERIVATIVE_ORDER: usize = 16;

const QUAD_VALUE: QuadOptions = QuadOptions {
    abs_tol: 1e-12,
    rel_tol: 1e-13,
    max_intervals: 4000,
};

// Derivative integrals can be many orders of magnitude below 1, so only a
// relative target makes sense for them.
const QUAD_DERIVATIVE: QuadOptions = QuadOptions {
    abs_tol: 0.0,
    rel_tol: 1e-13,
    max_intervals: 4000,
};

/// One interfering population seen by one receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceSpec {
    pub axis: RoadAxis,
    pub state: LinkState,
    pub receiver: Placement,
    /// Vehicles per metre, per lane.
    pub intensity: f64,
    /// Aloha access probability.
    pub p: f64,
    pub alpha: f64,
    /// Perpendicular lane positions relative to the road centre line.
    pub lane_offsets: Vec<f64>,
    /// Factor multiplying every interferer's received power (the link
    /// budget `Υ`); 1 for the bare field.
    pub power_scale: f64,
}

impl InterferenceSpec {
    pub fn new(axis: RoadAxis, state: LinkState, receiver: Placement, intensity: f64, p: f64, alpha: f64) -> Self {
        InterferenceSpec {
            axis,
            state,
            receiver,
            intensity,
            p,
            alpha,
            lane_offsets: vec![0.0],
            power_scale: 1.0,
        }
    }

    pub fn with_lanes(mut self, offsets: Vec<f64>) -> Self {
        self.lane_offsets = offsets;
        self
    }

    pub fn with_power_scale(mut self, scale: f64) -> Self {
        self.power_scale = scale;
        self
    }

    /// Effective density of transmitting interferers, `p·λ`.
    pub fn active_density(&self) -> f64 {
        self.p * self.intensity
    }

    /// Perpendicular distance from the receiver to each lane.
    pub fn lane_distances(&self) -> impl Iterator<Item = f64> + '_ {
        let offset = self.receiver.perpendicular_offset(self.axis);
        self.lane_offsets.iter().map(move |lane| (offset - lane).abs())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.intensity.is_finite() && self.intensity >= 0.0) {
            return Err(Error::validation(
                "intensity",
                format!("must be >= 0, got {}", self.intensity),
            ));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::validation("p", format!("must lie in [0, 1], got {}", self.p)));
        }
        if self.lane_offsets.is_empty() {
            return Err(Error::validation("lane_offsets", "at least one lane is required"));
        }
        if !(self.power_scale.is_finite() && self.power_scale > 0.0) {
            return Err(Error::validation("power_scale", "must be > 0"));
        }
        if self.active_density() > 0.0 && !(self.alpha >= 2.0) {
            return Err(Error::Domain(format!(
                "interference integral needs alpha >= 2, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Value and derivatives of a Laplace transform at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceEval {
    pub s: f64,
    /// `values[n]` is the n-th derivative at `s`.
    pub values: Vec<f64>,
}

impl LaplaceEval {
    pub fn value(&self) -> f64 {
        self.values[0]
    }

    pub fn derivative(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }
}

/// How the exponent integral is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentMethod {
    /// Closed form when `alpha == 2`, quadrature otherwise.
    Auto,
    Quadrature,
    /// Only defined for `alpha == 2`.
    ClosedForm,
}

/// `n(n-1)...(n-k+1)` for real `n`.
fn falling_factorial(n: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i as f64))
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `∂ʲ/∂sʲ ∫ s/(s + c² + x²) dx` in closed form.
///
/// Written as `π·s·w^(-1/2)` with `w = c² + s` and differentiated with
/// Leibniz' rule; both resulting terms stay well conditioned for any `c`.
pub fn lane_integral_alpha2(c: f64, s: f64, order: usize) -> f64 {
    let w = c * c + s;
    if order == 0 {
        return PI * s / w.sqrt();
    }
    let j = order as i32;
    let lead = s * falling_factorial(-0.5, order) * w.powf(-0.5 - j as f64);
    let tail = order as f64 * falling_factorial(-0.5, order - 1) * w.powf(0.5 - j as f64);
    PI * (lead + tail)
}

/// `∂ʲ/∂sʲ ∫ s/(s + (c² + x²)^(α/2)) dx` by quadrature of the
/// differentiated integrand.
pub fn lane_integral_quadrature(c: f64, alpha: f64, s: f64, order: usize) -> Result<f64> {
    let half_alpha = alpha / 2.0;
    let kernel = |x: f64| {
        let r2 = c * c + x * x;
        let u = path_loss_inverse(r2, half_alpha);
        let t = s + u;
        if order == 0 {
            s / t
        } else {
            let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
            sign * factorial(order) * (u / t) * t.powi(-(order as i32))
        }
    };
    let scale = (c * c + s.powf(2.0 / alpha)).sqrt();
    let opts = if order == 0 { QUAD_VALUE } else { QUAD_DERIVATIVE };
    let r = integrate_half_line(kernel, scale, &opts)?;
    Ok(2.0 * r.value)
}

/// `r^α` from `r²`, with the common integer exponents done exactly.
fn path_loss_inverse(r2: f64, half_alpha: f64) -> f64 {
    if half_alpha == 1.0 {
        r2
    } else if half_alpha == 2.0 {
        r2 * r2
    } else {
        r2.powf(half_alpha)
    }
}

fn check_argument(s: f64) -> Result<()> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain(format!(
            "Laplace argument must be finite and > 0, got {s}"
        )));
    }
    Ok(())
}

/// Derivative of the exponent `g` of order `order` (0 gives `g` itself).
pub fn exponent_derivative_with(spec: &InterferenceSpec, s: f64, order: usize, method: ExponentMethod) -> Result<f64> {
    check_argument(s)?;
    spec.validate()?;
    let density = spec.active_density();
    if density == 0.0 {
        return Ok(0.0);
    }
    let use_closed = match method {
        ExponentMethod::Auto => spec.alpha == 2.0,
        ExponentMethod::Quadrature => false,
        ExponentMethod::ClosedForm => {
            if spec.alpha != 2.0 {
                return Err(Error::Domain(format!(
                    "closed form needs alpha = 2, got {}",
                    spec.alpha
                )));
            }
            true
        }
    };
    // Interferer powers carry `power_scale`, so g(s) = g_unit(scale·s).
    let scaled = spec.power_scale * s;
    let mut total = 0.0;
    for c in spec.lane_distances() {
        total += if use_closed {
            lane_integral_alpha2(c, scaled, order)
        } else {
            lane_integral_quadrature(c, spec.alpha, scaled, order)?
        };
    }
    Ok(-density * total * spec.power_scale.powi(order as i32))
}

/// Exponent `g(s)` of the Laplace transform, `L(s) = exp(g(s))`.
pub fn exponent_g(spec: &InterferenceSpec, s: f64) -> Result<f64> {
    exponent_derivative_with(spec, s, 0, ExponentMethod::Auto)
}

/// `g⁽ʲ⁾(s)` for `j >= 1`.
pub fn exponent_g_derivative(spec: &InterferenceSpec, s: f64, order: usize) -> Result<f64> {
    if order == 0 {
        return Err(Error::validation("order", "derivative order must be >= 1"));
    }
    exponent_derivative_with(spec, s, order, ExponentMethod::Auto)
}

/// Derivatives `[g, g', ..., g⁽ᴺ⁾]` of the summed exponent of several
/// independent populations.
pub fn exponent_stack(specs: &[InterferenceSpec], s: f64, max_order: usize) -> Result<Vec<f64>> {
    check_order(max_order)?;
    let mut stack = vec![0.0; max_order + 1];
    for spec in specs {
        for (n, slot) in stack.iter_mut().enumerate() {
            *slot += exponent_derivative_with(spec, s, n, ExponentMethod::Auto)?;
        }
    }
    Ok(stack)
}

fn check_order(max_order: usize) -> Result<()> {
    if max_order > MAX_DERIVATIVE_ORDER {
        return Err(Error::validation(
            "max_order",
            format!("derivative order capped at {MAX_DERIVATIVE_ORDER}, got {max_order}"),
        ));
    }
    Ok(())
}

/// Complete Bell polynomials `B_0..B_N` of `x = [x1, ..., xN]`.
///
/// `B_{n+1} = Σ_i C(n, i) B_{n-i} x_{i+1}`; then
/// `dⁿ exp(g) / dsⁿ = exp(g) · B_n(g', ..., g⁽ⁿ⁾)`.
pub fn complete_bell(x: &[f64]) -> Vec<f64> {
    let n_max = x.len();
    let mut bell = Vec::with_capacity(n_max + 1);
    bell.push(1.0);
    for n in 0..n_max {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for i in 0..=n {
            acc += binom * bell[n - i] * x[i];
            binom = binom * (n - i) as f64 / (i + 1) as f64;
        }
        bell.push(acc);
    }
    bell
}

/// Turns an exponent stack `[g, g', ..., g⁽ᴺ⁾]` into `[L, L', ..., L⁽ᴺ⁾]`.
pub fn compose_exp(stack: &[f64]) -> Vec<f64> {
    let value = stack[0].exp();
    complete_bell(&stack[1..]).into_iter().map(|b| value * b).collect()
}

/// Laplace transform and its first `max_order` derivatives at `s`.
pub fn laplace_with_derivatives(spec: &InterferenceSpec, s: f64, max_order: usize) -> Result<LaplaceEval> {
    laplace_of_sum(std::slice::from_ref(spec), s, max_order)
}

/// Laplace transform of the sum of independent interference terms.
pub fn laplace_of_sum(specs: &[InterferenceSpec], s: f64, max_order: usize) -> Result<LaplaceEval> {
    check_argument(s)?;
    let stack = exponent_stack(specs, s, max_order)?;
    Ok(LaplaceEval {
        s,
        values: compose_exp(&stack),
    })
}

/// `[g'(s)]ⁿ · exp(g(s))`, the first-order shortcut for the n-th
/// derivative. Exact only for `n <= 1`; kept for comparison runs.
pub fn paper_derivative_formula(spec: &InterferenceSpec, s: f64, order: usize) -> Result<f64> {
    let g = exponent_g(spec, s)?;
    if order == 0 {
        return Ok(g.exp());
    }
    let g1 = exponent_g_derivative(spec, s, 1)?;
    Ok(g1.powi(order as i32) * g.exp())
}
