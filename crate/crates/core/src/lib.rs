//! Outage analysis of a two-user NOMA millimetre-wave downlink at a road
//! intersection, with interferers modelled as thinned Poisson fields on the
//! two roads.
//!
//! The [`outage`] module evaluates the closed-form outage probabilities and
//! [`mc`] estimates the same events by direct simulation.

pub mod error;
pub mod laplace;
pub mod mc;
pub mod outage;
pub mod quadrature;
pub mod scenario;

pub use error::{Error, Result};
pub use laplace::{
    exponent_g, exponent_g_derivative, laplace_of_sum, laplace_with_derivatives, paper_derivative_formula,
    ExponentMethod, InterferenceSpec, LaplaceEval,
};
pub use mc::{run_mc, McEstimate, Realization, Simulator, TailModel};
pub use outage::{
    inner_term, outage_d1, outage_d2, outage_oma, outage_pair, thresholds, InterferenceComposition, OmaConvention,
    OutageBreakdown, OutageOptions, Scheme, Thresholds,
};
pub use scenario::{
    placement_from_cartesian, Antenna, Destination, LinkState, Noma, Placement, Propagation, RoadAxis, RoadLayout,
    Scenario, Traffic,
};
