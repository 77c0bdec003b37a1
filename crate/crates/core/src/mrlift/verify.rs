//! Independent re-verification of every relation of a lift.

use serde::Serialize;

use crate::exactint::{GaloisRing, RingMatrix};
use crate::repdecomp::centralizer;

use super::tau::multiplication_table;
use super::unipotent::jordan_rank_profile;
use super::{MRLift, ResidualGaloisData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub precision: u32,
    pub checks: Vec<Check>,
    /// `dim_k` of the matrices commuting with the whole residual image.
    pub residual_h0_dim: usize,
    pub centralizer_rank_residual: usize,
    pub centralizer_rank_lifted: Option<usize>,
    pub jordan_ranks_residual: Vec<usize>,
    pub jordan_ranks_lifted: Vec<Option<usize>>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

fn check(name: &'static str, failures: Vec<String>) -> Check {
    let passed = failures.is_empty();
    let detail = if passed { "ok".into() } else { failures.join("; ") };
    Check { name, passed, detail }
}

/// Free rank of `{X : X M = M X for M in mats}` over the ring, or `None`
/// if that module is not free.
fn free_centralizer_rank(ring: GaloisRing, n: usize, mats: &[RingMatrix]) -> Option<usize> {
    let (b, free) = centralizer(ring, n, mats);
    free.then_some(b.len())
}

pub fn verify_lift(lift: &MRLift, data: &ResidualGaloisData) -> VerifyReport {
    let rep = &data.rep;
    let ring = lift.ring;
    let n = rep.n();
    let k = ring.k();
    let q = rep.q() as u128;
    let tau = &lift.tau;
    let order = rep.order();
    let rho_sigma = lift.rho_sigma();
    let mut checks = Vec::new();

    let table = multiplication_table(rep);
    let mut bad = Vec::new();
    for i in 0..order {
        for j in 0..order {
            if tau.image(i).mul(tau.image(j)) != *tau.image(table[i][j]) {
                bad.push(format!("tau(g{i}) tau(g{j}) != tau(g{i} g{j})"));
            }
        }
    }
    checks.push(check("homomorphism_on_lambda", bad));

    let mut bad = Vec::new();
    match rho_sigma.inverse() {
        None => bad.push("rho(sigma) is not invertible".into()),
        Some(inv) => {
            for g in 0..order {
                if rho_sigma.mul(tau.image(g)).mul(&inv) != *tau.image(data.sigma_action[g]) {
                    bad.push(format!("sigma-conjugation fails at g{g}"));
                }
            }
        }
    }
    checks.push(check("sigma_conjugation", bad));

    let mut bad = Vec::new();
    if !lift.structure.in_delta(&lift.a) {
        bad.push("A is not in the bicommutant".into());
    }
    match lift.structure.is_nu_tame(&lift.a) {
        Ok(true) => {}
        Ok(false) => bad.push("a block determinant of A has order divisible by p".into()),
        Err(e) => bad.push(e.to_string()),
    }
    let pb = (rep.p() as u128).pow(lift.b);
    if !lift.a.pow(pb).residue().is_identity() {
        bad.push("A^(p^b) is not 1 mod p".into());
    }
    checks.push(check("nu_tame", bad));

    let mut bad = Vec::new();
    match lift.n.inverse() {
        None => bad.push("n is not invertible".into()),
        Some(ninv) => {
            let conj = |m: &RingMatrix| lift.n.mul(m).mul(&ninv);
            for g in 0..order {
                if conj(tau.image(g)) != *tau.image(data.phi_action[g]) {
                    bad.push(format!("n tau(g{g}) n^-1 != tau(phi g{g} phi^-1)"));
                }
            }
            if conj(&lift.a) != lift.a.pow(q) {
                bad.push("n A n^-1 != A^q".into());
            }
            if conj(&lift.u) != lift.u.pow(q) {
                bad.push("n u n^-1 != u^q".into());
            }
            if let Some(z) = &lift.z {
                if conj(z) != z.pow(q) {
                    bad.push("n z n^-1 != z^q".into());
                }
            }
            if conj(&rho_sigma) != rho_sigma.pow(q) {
                bad.push("n rho(sigma) n^-1 != rho(sigma)^q".into());
            }
        }
    }
    checks.push(check("frobenius_relations", bad));

    let mut bad = Vec::new();
    for (g, e) in rep.elements().iter().enumerate() {
        if tau.image(g).residue() != *e {
            bad.push(format!("tau(g{g}) does not reduce to g{g}"));
        }
    }
    if rho_sigma.residue() != *rep.sigma() {
        bad.push("rho(sigma) does not reduce to sigma".into());
    }
    if lift.n.residue() != *rep.phi() {
        bad.push("n does not reduce to phi".into());
    }
    if let Some(z) = &lift.z {
        if !z.residue().is_identity() {
            bad.push("z does not reduce to 1".into());
        }
    }
    checks.push(check("reductions", bad));

    let (jr_res, jr_lift) = jordan_rank_profile(&lift.u);
    let mut bad = Vec::new();
    for (j, (a, b)) in jr_res.iter().zip(&jr_lift).enumerate() {
        if Some(*a) != *b {
            bad.push(format!("rank of (u-1)^{}: {a} mod p, {b:?} over the lift", j + 1));
        }
    }
    if !lift.structure.in_commutant(&lift.u) {
        bad.push("u does not commute with tau".into());
    }
    checks.push(check("jordan_purity", bad));

    let mut mats = tau.generator_images(rep);
    mats.push(rho_sigma.clone());
    let lifted_rank = free_centralizer_rank(ring, n, &mats);
    let field = ring.residue_field();
    let res_mats: Vec<RingMatrix> = mats.iter().map(RingMatrix::residue).collect();
    let residual_rank = centralizer(field, n, &res_mats).0.len();
    let mut bad = Vec::new();
    match lifted_rank {
        None => bad.push("centraliser of the inertia image is not free".into()),
        Some(r) if r != residual_rank => bad.push(format!("free rank {r} over the lift, {residual_rank} mod p")),
        _ => {}
    }
    checks.push(check("centralizer_rank", bad));

    let mut all = rep.generators().to_vec();
    all.push(rep.sigma().clone());
    all.push(rep.phi().clone());
    let residual_h0_dim = centralizer(field, n, &all).0.len();

    let all_passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        precision: k,
        checks,
        residual_h0_dim,
        centralizer_rank_residual: residual_rank,
        centralizer_rank_lifted: lifted_rank,
        jordan_ranks_residual: jr_res,
        jordan_ranks_lifted: jr_lift,
        all_passed,
    }
}
