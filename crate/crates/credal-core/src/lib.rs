//! Finite probability objects and credal sets (convex sets of joint
//! distributions stored by their extreme points).
//!
//! The central object is [`CredalSet::marginal_family`]: the polytope of all
//! joint distributions over `X × Y` whose `Y`-marginal is fixed. Conditioning
//! this family on an observation of `X` exhibits *dilation* — the posterior
//! probability interval of an event strictly widens no matter which value of
//! `X` was observed — which [`CredalSet::dilation_report`] detects. The
//! family's maximum-entropy element (`X` uniform and independent of `Y`) is
//! produced by [`CredalSet::max_entropy_joint`].
//!
//! All types are immutable after construction and all operations are pure
//! functions, so values can be shared and moved across threads freely.

mod credal;
mod dist;
mod error;

pub use credal::{CredalFamily, CredalSet, DilationReport, ObservationReport, ProbabilityInterval};
pub use dist::{FiniteDistribution, JointDistribution, ParamJoint};
pub use error::CredalError;

/// Tolerance used when validating constructed distributions (mass sums).
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Tolerance used when comparing derived probabilities and values.
pub const COMPARISON_TOL: f64 = 1e-9;

/// Support threshold for conditioning: vertices assigning at most this much
/// mass to the observed value are excluded (regular extension).
pub const SUPPORT_TOL: f64 = 1e-12;
