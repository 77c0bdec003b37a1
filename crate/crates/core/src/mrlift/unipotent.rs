//! Pure lifts of residual unipotents in the commutant: within each block the
//! lift acts on a free module over the block centre through integral Jordan
//! chains, so its Jordan type is the same modulo every power of `p`.

use crate::exactint::{linear_solve_mod, nullspace, GaloisRing, GrElem, RingMatrix, SpanBasis};

use super::structure::LiftedStructure;
use super::{Hypothesis, LiftError};

pub fn is_unipotent(m: &RingMatrix) -> bool {
    let n = m.rows();
    let one = RingMatrix::identity(m.ring(), n);
    m.sub(&one).pow(n as u128).is_zero()
}

/// Columns of `m` as vectors.
fn columns(m: &RingMatrix) -> Vec<Vec<GrElem>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn from_columns(field: GaloisRing, n: usize, cols: &[Vec<GrElem>]) -> RingMatrix {
    RingMatrix::from_fn(field, n, cols.len(), |i, j| cols[j][i])
}

/// Jordan chains over the field `K` (acting through `k_basis`) of the
/// nilpotent `nil` on the subspace spanned by `space`. Each chain is listed
/// from the bottom: `nil c[0] = 0`, `nil c[r] = c[r-1]`.
pub fn jordan_chains(nil: &RingMatrix, space: &[Vec<GrElem>], k_basis: &[RingMatrix]) -> Vec<Vec<Vec<GrElem>>> {
    let field = nil.ring();
    let n = nil.rows();
    if space.is_empty() {
        return Vec::new();
    }
    let b = from_columns(field, n, space);
    let kernel_at = |j: usize| -> Vec<Vec<GrElem>> {
        let m = nil.pow(j as u128).mul(&b);
        nullspace(&m).iter().map(|y| b.mul_vec(y)).collect()
    };
    let mut s = 0;
    while !nil.pow(s as u128).mul(&b).is_zero() {
        s += 1;
    }
    let mut tops: Vec<(Vec<GrElem>, usize)> = Vec::new();
    for j in (1..=s).rev() {
        let mut covered = SpanBasis::new(field, n);
        for v in kernel_at(j - 1) {
            covered.insert(&v);
        }
        for (w, t) in &tops {
            let shifted = nil.pow((t - j) as u128).mul_vec(w);
            for z in k_basis {
                covered.insert(&z.mul_vec(&shifted));
            }
        }
        for x in kernel_at(j) {
            if covered.insert(&x) {
                for z in k_basis {
                    covered.insert(&z.mul_vec(&x));
                }
                tops.push((x, j));
            }
        }
    }
    tops.into_iter()
        .map(|(w, t)| {
            let mut chain = vec![w];
            for _ in 1..t {
                let next = nil.mul_vec(chain.last().expect("nonempty"));
                chain.push(next);
            }
            chain.reverse();
            chain
        })
        .collect()
}

/// Lifts the unipotent `omega_bar` of the residual commutant to a pure
/// unipotent of the commutant over the lift ring.
pub fn pure_unipotent_lift(st: &LiftedStructure, omega_bar: &RingMatrix) -> Result<RingMatrix, LiftError> {
    if !is_unipotent(omega_bar) {
        return Err(LiftError::Hypothesis {
            tag: Hypothesis::OmegaNotUnipotent,
            detail: "A^-1 sigma is not unipotent".into(),
        });
    }
    let ring = st.ring;
    let field = ring.residue_field();
    let n = st.n;
    let nil = omega_bar.sub(&RingMatrix::identity(field, n));
    // pairs (lifted chain vector, lifted image under the nilpotent part)
    let mut conditions: Vec<(Vec<GrElem>, Vec<GrElem>)> = Vec::new();
    for blk in &st.blocks {
        let mut span = SpanBasis::new(field, n);
        let space: Vec<Vec<GrElem>> = columns(&blk.g_bar).into_iter().filter(|c| span.insert(c)).collect();
        let chains = jordan_chains(&nil, &space, &blk.center_bar);
        let covered: usize = chains.iter().map(Vec::len).sum::<usize>() * blk.center_bar.len();
        if covered != space.len() {
            return Err(LiftError::Internal("Jordan chains do not span the block".into()));
        }
        for chain in chains {
            let lifted: Vec<Vec<GrElem>> = chain
                .iter()
                .map(|v| {
                    let col = RingMatrix::from_elems(field, n, 1, v.clone()).to_ring(ring);
                    blk.g.mul(&col).column(0)
                })
                .collect();
            for r in 0..lifted.len() {
                let target = if r == 0 {
                    vec![GrElem::ZERO; n]
                } else {
                    lifted[r - 1].clone()
                };
                conditions.push((lifted[r].clone(), target));
            }
        }
    }
    let dim = st.c_basis.len();
    let mut sys = RingMatrix::zeros(ring, n * conditions.len(), dim);
    let mut rhs = RingMatrix::zeros(ring, n * conditions.len(), 1);
    for (t, (v, target)) in conditions.iter().enumerate() {
        for (l, c) in st.c_basis.iter().enumerate() {
            for (i, x) in c.mul_vec(v).into_iter().enumerate() {
                sys.set(t * n + i, l, x);
            }
        }
        for (i, &x) in target.iter().enumerate() {
            rhs.set(t * n + i, 0, x);
        }
    }
    let sol = linear_solve_mod(&sys, &rhs)
        .ok_or_else(|| LiftError::Internal("no commutant element realises the chains".into()))?;
    if !sol.homogeneous.is_empty() {
        return Err(LiftError::Internal(
            "chains do not determine the commutant element".into(),
        ));
    }
    let coeffs = sol.particular.column(0);
    let mut x = RingMatrix::zeros(ring, n, n);
    for (c, &a) in st.c_basis.iter().zip(&coeffs) {
        x = x.add(&c.scale(a));
    }
    let u = RingMatrix::identity(ring, n).add(&x);
    if u.residue() != *omega_bar {
        return Err(LiftError::Internal(
            "pure lift does not reduce to the residual unipotent".into(),
        ));
    }
    Ok(u)
}

/// Ranks of `(u - 1)^j`, `j = 1..=n`, over the residue field and as free
/// ranks of the image over the lift ring (`None` if some image is not a
/// direct summand).
pub fn jordan_rank_profile(u: &RingMatrix) -> (Vec<usize>, Vec<Option<usize>>) {
    let ring = u.ring();
    let n = u.rows();
    let nil = u.sub(&RingMatrix::identity(ring, n));
    let mut residual = Vec::new();
    let mut lifted = Vec::new();
    let mut pw = RingMatrix::identity(ring, n);
    for _ in 0..n {
        pw = pw.mul(&nil);
        residual.push(pw.residue_rank());
        let s = crate::exactint::local_smith(&pw);
        let split = s.valuations.iter().all(|&v| v == 0 || v == ring.k());
        lifted.push(split.then(|| s.valuations.iter().filter(|&&v| v == 0).count()));
    }
    (residual, lifted)
}
