//! Rearrangement calculus, weight-condition functionals, and weighted
//! convolution/potential operators, with numerical harnesses that verify the
//! two-sided norm inequalities they satisfy.
//!
//! The library is organized around exact closed forms wherever one exists:
//! rearrangements of grids and power weights, running integrals of profiles,
//! the condition functionals 𝒢, 𝒮, ℒ, ℱ, 𝒟, ℬ, 𝒦, and singular-kernel cell
//! integrals are all computed without quadrature error. Quadrature (with
//! tracked error bounds) only enters for bilinear forms with genuinely
//! two-dimensional weighted integrands.
//!
//! All values that can legitimately be `+∞` are reported as a tagged
//! [`ExtReal`], never as an error: divergence is a classification result.

// `!(a > b)`-style guards are deliberate throughout: unlike `a <= b`, they
// stay true for NaN inputs, which the quadrature and validation paths rely on.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conditions;
pub mod error;
pub mod ext;
pub mod families;
pub mod harness;
pub mod kernels;
pub mod operators;
pub mod piecewise;
pub mod quad;
pub mod rearrangement;
pub mod spaces;
pub mod weights;

pub use error::{CoreError, Result};
pub use ext::ExtReal;
pub use kernels::{
    ball_volume, difference_indicator_kernel, riesz_profile, shifted_ball_indicator,
    sinc_kernel_eval, KernelSpec, SetUnion1D,
};
pub use rearrangement::{
    double_star, hardy_littlewood_pair, rearrange_radial_power, rearrange_sampled,
    sup_mean_over_sets, GridFunction1D, Profile, SampledProfile, Tail,
};
pub use weights::RadialWeight;
