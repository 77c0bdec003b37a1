//! Cartan types, root systems and root data.

pub mod cartan;
pub mod datum;
pub mod system;
pub mod weyl;

pub use cartan::{CartanType, Family, SimpleFactor, MAX_SEMISIMPLE_RANK};
pub use datum::{CenterAndPi1, IsogenyClass, RootDatum, TypeSpec};
pub use system::RootSystem;
pub use weyl::{weyl_order, weyl_order_by_orbit, WeylPermutations};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootDatumError {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("semisimple rank {0} exceeds the supported maximum of 8")]
    RankTooLarge(usize),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("inconsistent root datum: {0}")]
    Inconsistent(String),
}

/// Builds the root datum of a split reductive group.
pub fn build_root_datum(t: &CartanType, iso: &IsogenyClass) -> Result<RootDatum, RootDatumError> {
    RootDatum::from_type(t, iso)
}
