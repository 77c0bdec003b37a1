//! The value `A = tau(sigma)` of the unique continuous extension of `tau`
//! to tame inertia whose abelianised image has prime-to-`p` order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactint::arith::inv_mod;
use crate::exactint::{kernel, GrElem, RingMatrix};
use crate::repdecomp::{all_combinations, combine, corner_inverse, MatSpan};

use super::structure::{corner_pow, corner_teichmuller, LiftedStructure};
use super::tau::Tau;
use super::{Hypothesis, LiftError, ResidualGaloisData};

const RANDOM_TRIES: usize = 200;
const EXHAUSTIVE_LIMIT: u64 = 50_000;

/// Order of a permutation.
pub fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// `b` with `sigma^(p^b)` acting trivially on the group by conjugation.
pub fn sigma_exponent(data: &ResidualGaloisData) -> Result<u32, LiftError> {
    let p = data.rep.p() as usize;
    let mut m = permutation_order(&data.sigma_action);
    let mut b = 0;
    while m.is_multiple_of(p) {
        m /= p;
        b += 1;
    }
    if m != 1 {
        return Err(LiftError::Hypothesis {
            tag: Hypothesis::SigmaActionOrder,
            detail: format!(
                "conjugation by sigma has order {}",
                permutation_order(&data.sigma_action)
            ),
        });
    }
    Ok(b)
}

/// Invertible solutions `A` in the bicommutant of `A tau(g) = tau(sigma g sigma^-1) A`.
fn intertwiner(data: &ResidualGaloisData, tau: &Tau, st: &LiftedStructure, seed: u64) -> Result<RingMatrix, LiftError> {
    let ring = st.ring;
    let n = st.n;
    let nn = n * n;
    let gens = data.rep.generator_indices();
    let dim = st.delta_basis.len();
    let mut sys = RingMatrix::zeros(ring, nn * gens.len(), dim);
    for (t, &g) in gens.iter().enumerate() {
        let src = tau.image(g);
        let dst = tau.image(data.sigma_action[g]);
        for (l, d) in st.delta_basis.iter().enumerate() {
            let v = d.mul(src).sub(&dst.mul(d));
            for (i, &x) in v.entries().iter().enumerate() {
                sys.set(t * nn + i, l, x);
            }
        }
    }
    let sols: Vec<RingMatrix> = kernel(&sys)
        .into_iter()
        .filter(|h| h.order_exponent == ring.k())
        .map(|h| combine(ring, n, &st.delta_basis, &h.vector))
        .collect();
    let no_intertwiner = || LiftError::Hypothesis {
        tag: Hypothesis::NoIntertwiner,
        detail: "no invertible element of the bicommutant conjugates tau to its sigma-twist".into(),
    };
    if sols.is_empty() {
        return Err(no_intertwiner());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<GrElem> = sols.iter().map(|_| ring.random(&mut rng)).collect();
        let a = combine(ring, n, &sols, &coeffs);
        if a.is_invertible() {
            return Ok(a);
        }
    }
    let field = ring.residue_field();
    let res: Vec<RingMatrix> =
        MatSpan::from_mats(field, n, &sols.iter().map(RingMatrix::residue).collect::<Vec<_>>()).basis();
    if (field.residue_size() as f64).powi(res.len() as i32) <= EXHAUSTIVE_LIMIT as f64 {
        let sols_res: Vec<RingMatrix> = sols.iter().map(RingMatrix::residue).collect();
        for x in all_combinations(field, n, &res) {
            if x.is_invertible() {
                let span = MatSpan::from_mats(field, n, &sols_res);
                let c = span.coordinates(&x).expect("combination of residues");
                let c: Vec<GrElem> = c.into_iter().map(|y| ring.coerce(y)).collect();
                return Ok(combine(ring, n, &sols, &c));
            }
        }
    }
    Err(no_intertwiner())
}

/// Computes `A = tau(sigma)`. The seed only affects the intermediate choice
/// of intertwiner; the result is unique.
pub fn nu_tame_extend(
    data: &ResidualGaloisData,
    tau: &Tau,
    st: &LiftedStructure,
    seed: u64,
) -> Result<RingMatrix, LiftError> {
    let ring = st.ring;
    let p = ring.p();
    let n = st.n;
    if let Some(b) = st.blocks.iter().find(|b| (b.signature.d as u64).is_multiple_of(p)) {
        return Err(LiftError::Hypothesis {
            tag: Hypothesis::NotGoodForType,
            detail: format!("p divides the block dimension {}", b.signature.d),
        });
    }
    let b = sigma_exponent(data)?;
    let a0 = intertwiner(data, tau, st, seed)?;

    // make A^(p^b) reduce to the identity
    let pb = (p as u128).pow(b);
    let c = a0.pow(pb);
    if !st.in_center(&c) {
        return Err(LiftError::Internal("A^(p^b) is not central".into()));
    }
    let mut w = RingMatrix::zeros(ring, n, n);
    for blk in &st.blocks {
        let t = corner_teichmuller(&blk.eps.mul(&c), &blk.eps, blk.field_size);
        let order = blk.field_size as u128 - 1;
        let s = if order == 1 {
            0
        } else {
            inv_mod(pb % order, order).expect("p^b is prime to q - 1")
        };
        let t_inv = corner_inverse(&t, &blk.eps).ok_or_else(|| LiftError::Internal("non-unit central value".into()))?;
        w = w.add(&corner_pow(&t_inv, &blk.eps, s));
    }
    let a1 = a0.mul(&w);

    // make each block determinant a Teichmüller element
    let dets = st.block_determinants(&a1)?;
    let pk = (p as u128).pow(ring.k());
    let mut z = RingMatrix::zeros(ring, n, n);
    for (blk, det) in st.blocks.iter().zip(&dets) {
        let t = corner_teichmuller(det, &blk.eps, blk.field_size);
        let t_inv =
            corner_inverse(&t, &blk.eps).ok_or_else(|| LiftError::Internal("singular block determinant".into()))?;
        let one_unit = det.mul(&t_inv);
        let root = inv_mod(blk.signature.d as u128, pk).expect("p does not divide d");
        let inv = corner_inverse(&one_unit, &blk.eps).expect("one-units are invertible");
        z = z.add(&corner_pow(&inv, &blk.eps, root));
    }
    let a = a1.mul(&z);
    if !st.is_nu_tame(&a)? {
        return Err(LiftError::Internal("corrected A is not nu-tame".into()));
    }
    Ok(a)
}
