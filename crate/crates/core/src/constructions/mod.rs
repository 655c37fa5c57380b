//! Holomorph powers, the two-prime tower over a group, the nilpotent group
//! with prescribed outer automorphisms, and Cayley color graphs.

mod cayley;
mod cornulier;
mod holomorph;
mod pettet;

pub use cayley::{cayley_color_autos, cayley_color_autos_exhaustive, CayleyAutos};
pub use cornulier::{
    cornulier_construct, cornulier_ideal, cornulier_or_reduction, spanning_letters, CornulierGroup, CornulierOutcome,
    HElement,
};
pub use holomorph::{holomorph_power, outer_of_holomorph_power, HolomorphPower, OuterReport};
pub use pettet::{pettet_construct, pettet_full_check, PettetAutReport, PettetTower};

use alloc::string::String;

/// Outcome of one structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Witness or summary.
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
