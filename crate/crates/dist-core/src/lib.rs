//! Exact finite-support probability machinery.
//!
//! Everything here is tabular: joints over (context, dialogue) pairs,
//! per-context attribute kernels, dialogue policies, and finite hypothesis
//! spaces. Expectations are computed by full enumeration rather than
//! estimation, which keeps downstream inequality checks honest to within
//! floating-point tolerances (totals hold within 1e-12; inputs off by at most
//! 1e-9 are renormalized, anything worse is rejected).
//!
//! All values are immutable after construction and safe to share across
//! threads. Seeded operations follow a single RNG contract ([`substream`]):
//! ChaCha8 keyed from the seed, one independent stream per item, so results
//! are bit-identical across platforms, run orders, and thread counts.

mod error;
pub mod fixtures;
pub mod io;
mod joint;
mod kernel;
mod policy;
mod sample;

pub use error::{DistError, Result};
pub use rand_chacha::ChaCha8Rng;
pub use joint::{
    attribute_marginal, expectation, joint_of_policy, TabularJoint, RENORM_TOLERANCE,
    SUM_TOLERANCE,
};
pub use kernel::AttributeKernel;
pub use policy::{DialoguePolicy, HypothesisSpace};
pub use sample::{draw_sample, pick_weighted, substream, Draw, Sample};
