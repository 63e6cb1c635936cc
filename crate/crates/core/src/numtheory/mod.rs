//! Continued fractions, badly approximable vectors and exponential sums.

pub mod alpha;
pub mod cf;
pub mod expsum;

pub use alpha::{AlphaComponent, AlphaVector};
pub use cf::{badness_profile, cf_expand, cf_expand_available, BadnessProfile, CfSource, ContinuedFraction, QuadraticSurd};
pub use expsum::{direct_exp_sum, e, geometric_exp_sum, lemma22_ratio, weyl_sum, FrequencyVector};
