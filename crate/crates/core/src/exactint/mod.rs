//! Exact arithmetic: integer matrices with Smith forms, Galois rings
//! `W(F_q)/p^k` and linear algebra over them.

pub mod arith;
pub mod galois;
pub mod intmat;
pub mod ringmat;

pub use galois::{GaloisRing, GrElem, MAX_EXT_DEGREE};
pub use intmat::{
    invariant_factors, quotient_shape, quotient_torsion_primes, smith_normal_form, IntMatrix, LatticeMembership,
    QuotientShape, SmithForm,
};
pub use ringmat::{
    kernel, linear_solve_mod, local_smith, nullspace, HomogeneousGenerator, LinearSolution, LocalSmith, RingMatrix,
    SpanBasis,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported Galois ring p={p}, k={k}, e={e}")]
    UnsupportedRing { p: u64, k: u32, e: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("matrix is singular")]
    Singular,
    #[error("bad ring element: {0}")]
    BadElement(String),
}

/// Teichmüller representative of a unit of a Galois ring.
pub fn teichmuller(ring: &GaloisRing, x: GrElem) -> Result<GrElem, ExactError> {
    ring.teichmuller(x)
}
