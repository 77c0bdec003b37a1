//! Commutants, bicommutants and isotypic structure of finite matrix groups
//! of order prime to `p` over `F_{p^e}`.
//!
//! For a semisimple representation the commutant `C` and bicommutant `D`
//! are products of matrix algebras over the endomorphism fields of the
//! isotypic blocks. A block with signature `(d, m, e)` is `d`-dimensional
//! over its endomorphism field `F_{q^e}`, occurs with multiplicity `m`, and
//! contributes `m^2 e` to `dim C` and `d^2 e` to `dim D`.

mod algebra;
mod group;
pub mod symplectic;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactint::{arith::factorial, ExactError, GaloisRing, RingMatrix, SpanBasis};

pub use algebra::{
    all_combinations, centralizer, combine, corner_inverse, frobenius_fixed, primitive_idempotent, random_combination,
    rank, refine_idempotent, split_idempotents, MatSpan,
};
pub use group::{GroupRep, MAX_GROUP_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Field(#[from] ExactError),
    #[error("bad matrix shape: {0}")]
    Shape(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("generated group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("group order divisible by p (order {order}, p = {p})")]
    OrderDivisibleByP { order: usize, p: u64 },
    #[error("{0} does not normalize the group")]
    NotNormalizing(&'static str),
    #[error("relation phi*sigma*phi^-1 = sigma^q fails")]
    FrobeniusRelation,
    #[error("q = {q} must be positive and prime to p = {p}")]
    BadQ { q: u64, p: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BlockSignature {
    /// Dimension of the irreducible over its endomorphism field.
    pub d: usize,
    /// Multiplicity.
    pub m: usize,
    /// Degree of the endomorphism field over the coefficient field.
    pub e: usize,
}

#[derive(Clone, Debug)]
pub struct IsotypicData {
    pub blocks: Vec<BlockSignature>,
    /// Central primitive idempotents, aligned with `blocks`.
    pub idempotents: Vec<RingMatrix>,
    /// Columns: bases of the isotypic components, block by block.
    pub change_of_basis: RingMatrix,
}

impl IsotypicData {
    /// Sorted signature multiset.
    pub fn signatures(&self) -> Vec<BlockSignature> {
        let mut s = self.blocks.clone();
        s.sort();
        s
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionType {
    pub isotypic: IsotypicData,
    pub c_basis: Vec<RingMatrix>,
    pub delta_basis: Vec<RingMatrix>,
    pub center_basis: Vec<RingMatrix>,
}

/// Basis of the algebra of matrices commuting with the group.
pub fn commutant(rep: &GroupRep) -> Vec<RingMatrix> {
    centralizer(rep.field(), rep.n(), rep.generators()).0
}

/// Basis of the algebra of matrices commuting with the commutant.
pub fn bicommutant(rep: &GroupRep) -> Vec<RingMatrix> {
    centralizer(rep.field(), rep.n(), &commutant(rep)).0
}

/// Basis of the linear span of the group elements.
pub fn group_algebra_span(rep: &GroupRep) -> Vec<RingMatrix> {
    MatSpan::from_mats(rep.field(), rep.n(), rep.elements()).basis()
}

/// Centre of the commutant: matrices commuting with the group and with the
/// commutant.
fn center_of(rep: &GroupRep, c_basis: &[RingMatrix]) -> Vec<RingMatrix> {
    let mut mats = rep.generators().to_vec();
    mats.extend_from_slice(c_basis);
    centralizer(rep.field(), rep.n(), &mats).0
}

pub fn isotypic_structure(rep: &GroupRep, seed: u64) -> Result<IsotypicData, RepError> {
    let c = commutant(rep);
    let z = center_of(rep, &c);
    structure(rep, &c, &z, seed)
}

/// Central primitive idempotents of the commutant, in a canonical order.
pub fn central_idempotents(
    field: GaloisRing,
    n: usize,
    center: &[RingMatrix],
    seed: u64,
) -> Result<Vec<RingMatrix>, RepError> {
    let one = RingMatrix::identity(field, n);
    let fixed = frobenius_fixed(field, n, center, field.residue_size());
    let scalars = all_combinations(field, n, std::slice::from_ref(&one));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idems =
        split_idempotents(field, n, &fixed, &one, std::slice::from_ref(&one), &scalars, &mut rng).map_err(RepError::Internal)?;
    idems.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(idems)
}

fn structure(rep: &GroupRep, c: &[RingMatrix], z: &[RingMatrix], seed: u64) -> Result<IsotypicData, RepError> {
    let f = rep.field();
    let n = rep.n();
    let idems = central_idempotents(f, n, z, seed)?;
    let mut blocks = Vec::new();
    let mut cols = Vec::new();
    for eps in &idems {
        let span_dim =
            |mats: &[RingMatrix]| MatSpan::from_mats(f, n, &mats.iter().map(|x| eps.mul(x)).collect::<Vec<_>>()).dim();
        let e = span_dim(z);
        let dc = span_dim(c);
        let r = rank(eps);
        let m = exact_sqrt(dc / e.max(1)).filter(|&m| e > 0 && m * m * e == dc);
        let Some(m) = m else {
            return Err(RepError::Internal(format!(
                "commutant block of dimension {dc} over degree {e}"
            )));
        };
        if !r.is_multiple_of(m * e) {
            return Err(RepError::Internal(format!(
                "block rank {r} not divisible by m*e = {}",
                m * e
            )));
        }
        blocks.push(BlockSignature { d: r / (m * e), m, e });
        let mut span = SpanBasis::new(f, n);
        for j in 0..n {
            let col = eps.column(j);
            if span.insert(&col) {
                cols.push(col);
            }
        }
    }
    if cols.len() != n {
        return Err(RepError::Internal("isotypic components do not span".into()));
    }
    let change_of_basis = RingMatrix::from_fn(f, n, n, |i, j| cols[j][i]);
    Ok(IsotypicData {
        blocks,
        idempotents: idems,
        change_of_basis,
    })
}

fn exact_sqrt(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r * r == x).then_some(r)
}

fn spans_equal(f: GaloisRing, n: usize, a: &[RingMatrix], b: &[RingMatrix]) -> bool {
    let sa = MatSpan::from_mats(f, n, a);
    let sb = MatSpan::from_mats(f, n, b);
    sa.dim() == sb.dim() && b.iter().all(|x| sa.contains(x))
}

/// Commutant, bicommutant and isotypic data, with the mutual-centraliser
/// and centre invariants checked.
pub fn decomposition_type(rep: &GroupRep, seed: u64) -> Result<DecompositionType, RepError> {
    let f = rep.field();
    let n = rep.n();
    let c = commutant(rep);
    let delta = centralizer(f, n, &c).0;
    let z = center_of(rep, &c);
    for x in &c {
        if let Some(g) = rep.generators().iter().position(|g| !x.commutes_with(g)) {
            return Err(RepError::Internal(format!(
                "commutant element fails to commute with generator {g}"
            )));
        }
        if delta.iter().any(|y| !x.commutes_with(y)) {
            return Err(RepError::Internal("commutant and bicommutant do not commute".into()));
        }
    }
    let mut cd = c.clone();
    cd.extend_from_slice(&delta);
    let z_delta = centralizer(f, n, &cd).0;
    if !spans_equal(f, n, &z, &z_delta) {
        return Err(RepError::Internal("centres of commutant and bicommutant differ".into()));
    }
    let isotypic = structure(rep, &c, &z, seed)?;
    let sum_c: usize = isotypic.blocks.iter().map(|b| b.m * b.m * b.e).sum();
    let sum_d: usize = isotypic.blocks.iter().map(|b| b.d * b.d * b.e).sum();
    let sum_n: usize = isotypic.blocks.iter().map(|b| b.d * b.m * b.e).sum();
    if sum_c != c.len() || sum_d != delta.len() || sum_n != n {
        return Err(RepError::Internal(format!(
            "dimension identities fail: {sum_c} vs {}, {sum_d} vs {}, {sum_n} vs {n}",
            c.len(),
            delta.len()
        )));
    }
    Ok(DecompositionType {
        isotypic,
        c_basis: c,
        delta_basis: delta,
        center_basis: z,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodForType {
    pub good: bool,
    /// Order of the group permuting blocks of equal signature; bounds the
    /// normaliser quotient.
    pub bound: u128,
    pub p_exceeds_bound: bool,
    pub p_divides_block_dimension: bool,
    pub pretty_good: bool,
    pub method: &'static str,
}

/// Sufficient condition for `p` to be good for the decomposition type.
/// `GL_n` has no pretty bad primes: any set of roots `e_i - e_j` spans a
/// saturated sublattice.
pub fn good_for_type_check(dt: &DecompositionType, p: u64) -> GoodForType {
    let mut counts: BTreeMap<BlockSignature, u64> = BTreeMap::new();
    for b in &dt.isotypic.blocks {
        *counts.entry(*b).or_default() += 1;
    }
    let bound = counts.values().map(|&c| factorial(c)).product::<u128>();
    let p_exceeds_bound = p as u128 > bound && bound % p as u128 != 0;
    let p_divides_block_dimension = dt.isotypic.blocks.iter().any(|b| (b.d as u64).is_multiple_of(p));
    let pretty_good = true;
    GoodForType {
        good: p_exceeds_bound && !p_divides_block_dimension && pretty_good,
        bound,
        p_exceeds_bound,
        p_divides_block_dimension,
        pretty_good,
        method: "sufficient condition via signature bound",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> GaloisRing {
        GaloisRing::prime_field(p).unwrap()
    }

    #[test]
    fn trivial_group() {
        let rep = GroupRep::plain(f(5), 2, vec![]).unwrap();
        assert_eq!(commutant(&rep).len(), 4);
        assert_eq!(bicommutant(&rep).len(), 1);
        let rep3 = GroupRep::plain(f(5), 3, vec![]).unwrap();
        let iso = isotypic_structure(&rep3, 0).unwrap();
        assert_eq!(iso.blocks, vec![BlockSignature { d: 1, m: 3, e: 1 }]);
    }

    #[test]
    fn sign_character() {
        let g = RingMatrix::from_ints(f(5), 2, 2, &[1, 0, 0, -1]);
        let rep = GroupRep::plain(f(5), 2, vec![g]).unwrap();
        assert_eq!(commutant(&rep).len(), 2);
        assert_eq!(bicommutant(&rep).len(), 2);
        let dt = decomposition_type(&rep, 1).unwrap();
        assert_eq!(dt.isotypic.signatures(), vec![BlockSignature { d: 1, m: 1, e: 1 }; 2]);
        let gt = good_for_type_check(&dt, 5);
        assert_eq!(gt.bound, 2);
        assert!(gt.good);
        assert!(!good_for_type_check(&dt, 2).good);
    }

    #[test]
    fn companion_of_cyclotomic() {
        // x^2 + x + 1 is irreducible mod 5
        let c = RingMatrix::from_ints(f(5), 2, 2, &[0, -1, 1, -1]);
        let rep = GroupRep::plain(f(5), 2, vec![c]).unwrap();
        assert_eq!(rep.order(), 3);
        assert_eq!(commutant(&rep).len(), 2);
        assert_eq!(bicommutant(&rep).len(), 2);
        let iso = isotypic_structure(&rep, 3).unwrap();
        assert_eq!(iso.blocks, vec![BlockSignature { d: 1, m: 1, e: 2 }]);
    }

    #[test]
    fn two_characters_with_multiplicity_two() {
        // C3 in GL4(F7): 2 and 4 are the nontrivial cube roots of unity
        let g = RingMatrix::from_ints(f(7), 4, 4, &[2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 2, 0, 0, 0, 0, 4]);
        let rep = GroupRep::plain(f(7), 4, vec![g]).unwrap();
        let dt = decomposition_type(&rep, 5).unwrap();
        assert_eq!(dt.c_basis.len(), 8);
        assert_eq!(dt.delta_basis.len(), 2);
        assert_eq!(dt.isotypic.signatures(), vec![BlockSignature { d: 1, m: 2, e: 1 }; 2]);
    }

    #[test]
    fn distinct_signatures_have_bound_one() {
        // S3 acting on F7^3 by permutations: trivial (1,1,1) + standard (2,1,1)
        let s = RingMatrix::from_ints(f(7), 3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        let t = RingMatrix::from_ints(f(7), 3, 3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        let rep = GroupRep::plain(f(7), 3, vec![s, t]).unwrap();
        let dt = decomposition_type(&rep, 2).unwrap();
        assert_eq!(
            dt.isotypic.signatures(),
            vec![BlockSignature { d: 1, m: 1, e: 1 }, BlockSignature { d: 2, m: 1, e: 1 }]
        );
        assert_eq!(good_for_type_check(&dt, 7).bound, 1);
        assert!(!good_for_type_check(&dt, 2).good);
    }
}
