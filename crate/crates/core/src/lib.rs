//! Exact algebra for split reductive groups over `p`-adic rings: root data,
//! closed subsystems, good primes, Bala-Carter labels, isotypic
//! decompositions of residual representations and tame Galois lifts.

pub mod balacarter;
pub mod exactint;
pub mod mrlift;
pub mod primes;
pub mod repdecomp;
pub mod rootdatum;
pub mod subsystems;
