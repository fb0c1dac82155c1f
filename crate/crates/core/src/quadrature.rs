//! Adaptive Gauss-Kronrod (7/15) integration on finite intervals, plus a
//! tangent map for integrals over the half line.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights. Values from QUADPACK's qk15.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-13,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        // Gauss nodes sit at odd Kronrod indices
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

/// Integrates `f` over `[a, b]`, bisecting the worst segment until the total
/// error estimate drops below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let (value, error) = kronrod15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut intervals = 1;

    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        // Below this the estimate is dominated by round-off.
        let floor = 50.0 * f64::EPSILON * total.abs();
        if total_err <= target || total_err <= floor {
            break;
        }
        if intervals >= opts.max_intervals {
            return Err(Error::Quadrature {
                estimate: total,
                error: total_err,
                intervals,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further in floating point
            heap.push(worst);
            return Err(Error::Quadrature {
                estimate: total,
                error: total_err,
                intervals,
            });
        }
        let (v1, e1) = kronrod15(&f, worst.a, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.b);
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        intervals += 1;
        // re-summing avoids drift from repeated add/subtract
        total = heap.iter().map(|s| s.value).sum();
        total_err = heap.iter().map(|s| s.error).sum();
    }

    Ok(QuadResult {
        value: total,
        error: total_err,
        intervals,
    })
}

/// Integrates `f` over `[0, ∞)` through `x = scale·tan(u)`, `u ∈ [0, π/2)`.
///
/// `scale` should be the length over which `f` changes appreciably; the
/// mapped integrand is then smooth and bounded whenever `f` decays at least
/// like `x^-2`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, scale: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Domain(format!("half-line scale must be > 0, got {scale}")));
    }
    let mapped = |u: f64| {
        let (s, c) = u.sin_cos();
        if c <= 0.0 {
            return 0.0;
        }
        let x = scale * s / c;
        let v = f(x) * scale / (c * c);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(mapped, 0.0, FRAC_PI_2, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &QuadOptions::default()).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((r.value - exact).abs() < 1e-13);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn peaked_integrand_adapts() {
        let eps = 1e-4;
        let r = integrate(|x| eps / (eps * eps + x * x), -1.0, 1.0, &QuadOptions::default()).unwrap();
        let exact = 2.0 * (1.0 / eps).atan();
        assert!((r.value - exact).abs() < 1e-11, "{} vs {}", r.value, exact);
        assert!(r.intervals > 1);
    }

    #[test]
    fn half_line_lorentzian() {
        for scale in [1e-3, 1.0, 1e3] {
            let b = 7.0;
            let r = integrate_half_line(|x| 1.0 / (b * b + x * x), scale, &QuadOptions::default()).unwrap();
            let exact = FRAC_PI_2 / b;
            assert!((r.value - exact).abs() <= 1e-12 * exact, "scale {scale}: {}", r.value);
        }
    }

    #[test]
    fn half_line_exponential() {
        let r = integrate_half_line(|x| (-x).exp(), 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let opts = QuadOptions {
            max_intervals: 2,
            ..QuadOptions::default()
        };
        let err = integrate(|x| x.abs().sqrt().recip(), -1.0, 1.0, &opts).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }

    #[test]
    fn bad_scale_rejected() {
        assert!(integrate_half_line(|x| x, 0.0, &QuadOptions::default()).is_err());
    }
}
