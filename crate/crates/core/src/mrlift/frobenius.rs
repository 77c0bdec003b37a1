//! The Frobenius matrix `n`: an averaged intertwiner for `phi` on the
//! group, corrected inside the commutant so that `n u n^-1 = u^q`.

use crate::exactint::{linear_solve_mod, RingMatrix};
use crate::repdecomp::combine;

use super::structure::{lift_into, LiftedStructure};
use super::tau::Tau;
use super::{Hypothesis, LiftError, ResidualGaloisData};

/// `|G|^-1 sum_g tau(phi g phi^-1) n0 tau(g)^-1` for the naive lift `n0`
/// of `phi`; an exact intertwiner reducing to `phi`.
pub fn averaged_frobenius(data: &ResidualGaloisData, tau: &Tau) -> Result<RingMatrix, LiftError> {
    let ring = tau.ring;
    let n = data.rep.n();
    let n0 = data.rep.phi().to_ring(ring);
    let order = data.rep.order();
    let inv_order = ring
        .inv(ring.from_int(order as i64))
        .ok_or_else(|| LiftError::Internal("order divisible by p".into()))?;
    let mut acc = RingMatrix::zeros(ring, n, n);
    for g in 0..order {
        let ginv = tau.image(g).inverse().expect("group elements are invertible");
        acc = acc.add(&tau.image(data.phi_action[g]).mul(&n0).mul(&ginv));
    }
    Ok(acc.scale(inv_order))
}

pub fn frobenius_lift(
    data: &ResidualGaloisData,
    tau: &Tau,
    st: &LiftedStructure,
    a: &RingMatrix,
    u: &RingMatrix,
) -> Result<RingMatrix, LiftError> {
    let ring = st.ring;
    let field = ring.residue_field();
    let nsz = st.n;
    let q = data.rep.q() as u128;
    let pm = averaged_frobenius(data, tau)?;
    let pm_inv = pm
        .inverse()
        .ok_or_else(|| LiftError::Internal("averaged Frobenius is singular".into()))?;
    if pm.mul(a).mul(&pm_inv) != a.pow(q) {
        return Err(LiftError::Internal("Frobenius does not carry A to A^q".into()));
    }
    let target = u.pow(q);
    let mut cur = pm.mul(u).mul(&pm_inv);
    let mut conj = RingMatrix::identity(ring, nsz);
    let ubar = target.residue();
    let c_bar: Vec<RingMatrix> = st.c_basis.iter().map(RingMatrix::residue).collect();
    let nn = nsz * nsz;
    let mut sys = RingMatrix::zeros(field, nn, c_bar.len());
    for (l, c) in c_bar.iter().enumerate() {
        let v = c.mul(&ubar).sub(&ubar.mul(c));
        for (i, &x) in v.entries().iter().enumerate() {
            sys.set(i, l, x);
        }
    }
    for j in 1..ring.k() {
        let diff = cur.sub(&target);
        if diff.is_zero() {
            break;
        }
        if diff.valuation() < j {
            return Err(LiftError::Internal("Frobenius conjugate of u drifted from u^q".into()));
        }
        let e_bar = diff.div_p_pow(j).residue();
        let rhs = RingMatrix::from_elems(field, nn, 1, e_bar.neg().entries().to_vec());
        let sol = linear_solve_mod(&sys, &rhs).ok_or_else(|| LiftError::Hypothesis {
            tag: Hypothesis::PurityViolation,
            detail: format!("linearised conjugation system unsolvable at precision {}", j + 1),
        })?;
        let x_bar = combine(field, nsz, &c_bar, &sol.particular.column(0));
        let x = if x_bar.is_zero() {
            RingMatrix::zeros(ring, nsz, nsz)
        } else {
            lift_into(&st.c_basis, &x_bar)?
        };
        let c = RingMatrix::identity(ring, nsz).add(&x.mul_p_pow(j));
        let c_inv = c.inverse().expect("one-units are invertible");
        cur = c.mul(&cur).mul(&c_inv);
        conj = c.mul(&conj);
    }
    if cur != target {
        return Err(LiftError::Internal(
            "could not conjugate the Frobenius twist of u to u^q".into(),
        ));
    }
    Ok(conj.mul(&pm))
}
