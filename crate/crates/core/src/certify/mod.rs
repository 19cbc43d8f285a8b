//! Certificates for expansion, quasi-randomness and L-family membership.
//!
//! Exact mode enumerates every vertex set in range and is limited by an
//! [`EnumerationCap`]. Sampled mode is one-sided: a failure carries a concrete
//! witness, a pass only means no violation turned up.

mod expander;
mod lfamily;
mod profile;
mod quasirandom;
mod report;
mod sets;

use serde::{Deserialize, Serialize};

pub use expander::{check_expander, check_expander_with};
pub use lfamily::{check_l_membership, check_l_membership_with, no_short_double_path, short_path_bound, LPartition};
pub use profile::{ExpanderProfile, ExpansionFn};
pub use quasirandom::{check_quasirandom, check_quasirandom_with, pair_threshold};
pub use report::{CertReport, Method, PropertyCheck, Verdict, Witness};
pub use sets::EnumerationCap;

use crate::rng::RngSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CheckMode {
    Exact,
    /// `trials` random sets per probed size, plus greedy and structured sets.
    Sampled { trials: usize, rng: RngSpec },
}

impl CheckMode {
    pub fn sampled(trials: usize, seed: u64) -> Self {
        CheckMode::Sampled { trials, rng: RngSpec::new(seed) }
    }
}
