//! Lifting a representation of a finite group of order prime to `p` from
//! the residue field to `GR(p^k, e)` by repeated cocycle averaging.

use crate::exactint::{GaloisRing, RingMatrix};
use crate::repdecomp::GroupRep;

use super::LiftError;

/// Images of the enumerated group elements, in the order of
/// `GroupRep::elements`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tau {
    pub ring: GaloisRing,
    pub images: Vec<RingMatrix>,
}

impl Tau {
    pub fn image(&self, i: usize) -> &RingMatrix {
        &self.images[i]
    }

    pub fn generator_images(&self, rep: &GroupRep) -> Vec<RingMatrix> {
        rep.generator_indices()
            .iter()
            .map(|&i| self.images[i].clone())
            .collect()
    }

    /// Reduction to a lower precision.
    pub fn truncate(&self, ring: GaloisRing) -> Tau {
        Tau {
            ring,
            images: self.images.iter().map(|m| m.to_ring(ring)).collect(),
        }
    }
}

pub(crate) fn multiplication_table(rep: &GroupRep) -> Vec<Vec<usize>> {
    let n = rep.order();
    (0..n).map(|i| (0..n).map(|j| rep.product(i, j)).collect()).collect()
}

/// `T'(g) = |G|^-1 sum_h T(gh) T(h)^-1`, iterated to a fixed point. Each
/// step is compatible with reduction, so the result does not depend on the
/// precision it was computed at.
pub fn lift_prime_to_p_rep(rep: &GroupRep, ring: GaloisRing) -> Result<Tau, LiftError> {
    let order = rep.order();
    let inv_order = ring
        .inv(ring.from_int(order as i64))
        .ok_or_else(|| LiftError::Internal("group order divisible by p".into()))?;
    let table = multiplication_table(rep);
    let mut t: Vec<RingMatrix> = rep.elements().iter().map(|g| g.to_ring(ring)).collect();
    let max_iter = 4 * ring.k() as usize + 8;
    for _ in 0..max_iter {
        let inv: Vec<RingMatrix> = t
            .iter()
            .map(|m| m.inverse().expect("lift of an invertible matrix"))
            .collect();
        let next: Vec<RingMatrix> = (0..order)
            .map(|g| {
                let mut acc = RingMatrix::zeros(ring, rep.n(), rep.n());
                for h in 0..order {
                    acc = acc.add(&t[table[g][h]].mul(&inv[h]));
                }
                acc.scale(inv_order)
            })
            .collect();
        if next == t {
            break;
        }
        t = next;
    }
    for i in 0..order {
        for j in 0..order {
            if t[i].mul(&t[j]) != t[table[i][j]] {
                return Err(LiftError::Internal("averaged lift is not a homomorphism".into()));
            }
        }
    }
    Ok(Tau { ring, images: t })
}
