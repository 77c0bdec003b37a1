//! Tame lifts of residual Galois representations: given `rho-bar` on
//! `Lambda x <sigma, phi>` with `Lambda` prime to `p`, produce
//! `tau`, `A`, `u`, `n` (and optionally `z`) over `W(k)/p^k`.

mod frobenius;
mod nutame;
mod structure;
mod tau;
mod unipotent;
mod verify;

use thiserror::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactint::{kernel, ExactError, GaloisRing, RingMatrix};
use crate::repdecomp::{all_combinations, random_combination, GroupRep, RepError};

pub use frobenius::{averaged_frobenius, frobenius_lift};
pub use nutame::{nu_tame_extend, permutation_order, sigma_exponent};
pub use structure::{LiftedBlock, LiftedStructure};
pub use tau::{lift_prime_to_p_rep, Tau};
pub use unipotent::{is_unipotent, jordan_rank_profile, pure_unipotent_lift};
pub use verify::{verify_lift, Check, VerifyReport};

/// Residual data plus the permutations of the group induced by conjugation
/// with `sigma` and `phi`.
#[derive(Clone, Debug)]
pub struct ResidualGaloisData {
    pub rep: GroupRep,
    pub sigma_action: Vec<usize>,
    pub phi_action: Vec<usize>,
}

impl ResidualGaloisData {
    pub fn new(rep: GroupRep) -> Result<Self, LiftError> {
        let sigma_action = rep
            .conjugation_action(rep.sigma())
            .ok_or(LiftError::Input(RepError::NotNormalizing("sigma")))?;
        let phi_action = rep
            .conjugation_action(rep.phi())
            .ok_or(LiftError::Input(RepError::NotNormalizing("phi")))?;
        Ok(ResidualGaloisData {
            rep,
            sigma_action,
            phi_action,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    NotGoodForType,
    NoIntertwiner,
    SigmaActionOrder,
    CentralizerNotCenter,
    OmegaNotUnipotent,
    PurityViolation,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::NotGoodForType => "p is not good for the decomposition type",
            Hypothesis::NoIntertwiner => "sigma does not normalise the lifted image",
            Hypothesis::SigmaActionOrder => "sigma acts on the group with order not a power of p",
            Hypothesis::CentralizerNotCenter => "the centraliser of the image in the bicommutant is too large",
            Hypothesis::OmegaNotUnipotent => "the residual wild part is not unipotent",
            Hypothesis::PurityViolation => "the unipotent part admits no pure Frobenius-compatible lift",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum LiftError {
    #[error(transparent)]
    Input(#[from] RepError),
    #[error("{tag}: {detail}")]
    Hypothesis { tag: Hypothesis, detail: String },
    #[error("invalid z: {0}")]
    InvalidZ(String),
    #[error("verification failed: {}", .0.failures().join(", "))]
    Verification(Box<VerifyReport>),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<ExactError> for LiftError {
    fn from(e: ExactError) -> Self {
        LiftError::Input(RepError::Field(e))
    }
}

impl LiftError {
    /// 1 for bad input, 2 for a violated hypothesis, 3 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            LiftError::Input(RepError::Internal(_)) => 3,
            LiftError::Input(_) | LiftError::InvalidZ(_) => 1,
            LiftError::Hypothesis { .. } => 2,
            LiftError::Verification(_) | LiftError::Internal(_) => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MRLift {
    pub precision: u32,
    pub ring: GaloisRing,
    pub tau: Tau,
    /// The tame part of `rho(sigma)`.
    pub a: RingMatrix,
    pub u: RingMatrix,
    pub n: RingMatrix,
    pub z: Option<RingMatrix>,
    /// `A^(p^b) = 1 mod p`.
    pub b: u32,
    pub structure: LiftedStructure,
    pub verification: VerifyReport,
}

impl MRLift {
    pub fn rho_sigma(&self) -> RingMatrix {
        match &self.z {
            Some(z) => self.a.mul(z).mul(&self.u),
            None => self.a.mul(&self.u),
        }
    }

    pub fn rho_phi(&self) -> &RingMatrix {
        &self.n
    }
}

fn central_z(st: &LiftedStructure, values: &[i64]) -> Result<RingMatrix, LiftError> {
    let ring = st.ring;
    let p = ring.p() as i64;
    if values.len() != st.blocks.len() {
        return Err(LiftError::InvalidZ(format!(
            "expected {} block values, got {}",
            st.blocks.len(),
            values.len()
        )));
    }
    let mut z = RingMatrix::zeros(ring, st.n, st.n);
    for (blk, &v) in st.blocks.iter().zip(values) {
        if (v - 1).rem_euclid(p) != 0 {
            return Err(LiftError::InvalidZ(format!("{v} is not 1 mod p")));
        }
        z = z.add(&blk.eps.scale(ring.from_int(v)));
    }
    Ok(z)
}

/// Builds the lift at precision `k` and verifies it. `z` gives one integer
/// per isotypic block; the central element `sum z_i eps_i` is inserted
/// between `A` and `u`.
pub fn assemble_mr_lift(data: &ResidualGaloisData, k: u32, seed: u64, z: Option<&[i64]>) -> Result<MRLift, LiftError> {
    let rep = &data.rep;
    let field = rep.field();
    let ring = GaloisRing::new(field.p(), k, field.degree())?;
    let tau = lift_prime_to_p_rep(rep, ring)?;
    let structure = LiftedStructure::build(data, &tau, seed)?;
    let b = sigma_exponent(data)?;
    let a = nu_tame_extend(data, &tau, &structure, seed)?;
    let a_bar_inv = a
        .residue()
        .inverse()
        .ok_or_else(|| LiftError::Internal("A is singular".into()))?;
    let omega_bar = a_bar_inv.mul(rep.sigma());
    let u = pure_unipotent_lift(&structure, &omega_bar)?;
    let n = frobenius_lift(data, &tau, &structure, &a, &u)?;
    let z = match z {
        None => None,
        Some(vals) => {
            let zm = central_z(&structure, vals)?;
            let q = rep.q() as u128;
            let ninv = n.inverse().expect("n reduces to phi");
            if n.mul(&zm).mul(&ninv) != zm.pow(q) {
                return Err(LiftError::InvalidZ("n z n^-1 != z^q".into()));
            }
            Some(zm)
        }
    };
    let mut lift = MRLift {
        precision: k,
        ring,
        tau,
        a,
        u,
        n,
        z,
        b,
        structure,
        verification: VerifyReport::default(),
    };
    let report = verify_lift(&lift, data);
    if !report.all_passed {
        return Err(LiftError::Verification(Box::new(report)));
    }
    lift.verification = report;
    Ok(lift)
}

const EXHAUSTIVE_LIMIT: f64 = 2.0e5;

/// Full-order generators of `{X : X from_i = to_i X}` over the ring.
fn intertwiners(ring: GaloisRing, from: &[RingMatrix], to: &[RingMatrix]) -> Option<Vec<RingMatrix>> {
    assert_eq!(from.len(), to.len());
    let n = from.first()?.rows();
    let nn = n * n;
    let mut sys = RingMatrix::zeros(ring, nn * from.len(), nn);
    for (t, (f, g)) in from.iter().zip(to).enumerate() {
        for c in 0..nn {
            let mut e = RingMatrix::zeros(ring, n, n);
            e.set(c / n, c % n, ring.one());
            let v = e.mul(f).sub(&g.mul(&e));
            for (i, &x) in v.entries().iter().enumerate() {
                sys.set(t * nn + i, c, x);
            }
        }
    }
    Some(
        kernel(&sys)
            .into_iter()
            .filter(|h| h.order_exponent == ring.k())
            .map(|h| RingMatrix::from_elems(ring, n, n, h.vector))
            .collect(),
    )
}

/// Some invertible `X` over the ring with `X from_i X^-1 = to_i` for all
/// `i`, if one exists.
pub fn transporter(ring: GaloisRing, from: &[RingMatrix], to: &[RingMatrix]) -> Option<RingMatrix> {
    let gens = intertwiners(ring, from, to)?;
    let n = from[0].rows();
    let field = ring.residue_field();
    let res: Vec<RingMatrix> = gens.iter().map(RingMatrix::residue).collect();
    // an invertible combination exists iff one exists mod p
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut x_bar = (0..64)
        .map(|_| random_combination(field, n, &res, &mut rng))
        .find(RingMatrix::is_invertible);
    let space = (field.residue_size() as f64).powi(res.len() as i32);
    if x_bar.is_none() && space <= EXHAUSTIVE_LIMIT {
        x_bar = all_combinations(field, n, &res)
            .into_iter()
            .find(RingMatrix::is_invertible);
    }
    let x = structure::lift_into(&gens, &x_bar?).ok()?;
    x.is_invertible().then_some(x)
}

/// As [`transporter`], but with `X = 1 mod p`.
pub fn transporter_one_unit(ring: GaloisRing, from: &[RingMatrix], to: &[RingMatrix]) -> Option<RingMatrix> {
    let gens = intertwiners(ring, from, to)?;
    let n = from[0].rows();
    let one = RingMatrix::identity(ring.residue_field(), n);
    structure::lift_into(&gens, &one).ok()
}

/// An element `= 1 mod p` conjugating the inertia restriction of `a` to that
/// of `b`, if there is one.
pub fn inertia_conjugate(a: &MRLift, b: &MRLift, rep: &GroupRep) -> Option<RingMatrix> {
    let mut from = a.tau.generator_images(rep);
    from.push(a.rho_sigma());
    let mut to = b.tau.generator_images(rep);
    to.push(b.rho_sigma());
    transporter_one_unit(a.ring, &from, &to)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let h = LiftError::Hypothesis {
            tag: Hypothesis::PurityViolation,
            detail: String::new(),
        };
        assert_eq!(h.exit_code(), 2);
        assert_eq!(LiftError::InvalidZ(String::new()).exit_code(), 1);
        assert_eq!(LiftError::Input(RepError::Shape("x".into())).exit_code(), 1);
        assert_eq!(LiftError::Input(RepError::Internal("x".into())).exit_code(), 3);
        assert_eq!(LiftError::Internal(String::new()).exit_code(), 3);
    }

    #[test]
    fn trivial_character() {
        let f = GaloisRing::prime_field(11).unwrap();
        let i = RingMatrix::identity(f, 1);
        let rep = GroupRep::new(f, 1, vec![], i.clone(), i, 2).unwrap();
        let data = ResidualGaloisData::new(rep).unwrap();
        let l = assemble_mr_lift(&data, 4, 0, None).unwrap();
        assert!(l.rho_sigma().is_identity() && l.n.is_identity());
        assert_eq!(l.ring.p_pow_k(), 11u64.pow(4));
    }
}
