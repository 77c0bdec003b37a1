//! The decomposition type over `GR(p^k, e)`: commutant, bicommutant and
//! centre of the lifted representation, with block idempotents and the
//! block determinant of the bicommutant.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactint::{GaloisRing, RingMatrix};
use crate::repdecomp::{
    centralizer, combine, corner_inverse, decomposition_type, primitive_idempotent, refine_idempotent, BlockSignature,
    DecompositionType, MatSpan,
};

use super::tau::Tau;
use super::{Hypothesis, LiftError, ResidualGaloisData};

#[derive(Clone, Debug)]
pub struct LiftedBlock {
    pub signature: BlockSignature,
    /// Central idempotent over the lift ring.
    pub eps: RingMatrix,
    /// Basis of the block's centre `eps Z(R)`, a Galois ring.
    pub center: Vec<RingMatrix>,
    pub center_bar: Vec<RingMatrix>,
    /// Size of the residue field of the block's centre.
    pub field_size: u64,
    /// Primitive idempotent of the block of the bicommutant.
    pub g: RingMatrix,
    pub g_bar: RingMatrix,
    /// A basis over the block centre of `eps D(R) g`.
    pub module_basis: Vec<RingMatrix>,
    // R-basis `zeta_l v_s`, s-major
    module_span: MatSpan,
}

#[derive(Clone, Debug)]
pub struct LiftedStructure {
    pub ring: GaloisRing,
    pub n: usize,
    pub c_basis: Vec<RingMatrix>,
    pub delta_basis: Vec<RingMatrix>,
    pub center_basis: Vec<RingMatrix>,
    pub blocks: Vec<LiftedBlock>,
    pub residual: DecompositionType,
}

/// Lifts `x_bar` into the `R`-span of `basis`, whose residues must be
/// independent.
pub(crate) fn lift_into(basis: &[RingMatrix], x_bar: &RingMatrix) -> Result<RingMatrix, LiftError> {
    let ring = basis
        .first()
        .map(RingMatrix::ring)
        .ok_or_else(|| LiftError::Internal("empty basis".into()))?;
    let field = ring.residue_field();
    let n = x_bar.rows();
    let res: Vec<RingMatrix> = basis.iter().map(RingMatrix::residue).collect();
    let span = MatSpan::from_mats(field, n, &res);
    if span.dim() != basis.len() {
        return Err(LiftError::Internal("basis is not independent mod p".into()));
    }
    let c = span
        .coordinates(x_bar)
        .ok_or_else(|| LiftError::Internal("element outside the residual span".into()))?;
    let c: Vec<_> = c.into_iter().map(|x| ring.coerce(x)).collect();
    Ok(combine(ring, n, basis, &c))
}

fn free_centralizer(ring: GaloisRing, n: usize, mats: &[RingMatrix], what: &str) -> Result<Vec<RingMatrix>, LiftError> {
    let (b, free) = centralizer(ring, n, mats);
    if !free {
        return Err(LiftError::Internal(format!("{what} is not a free module")));
    }
    Ok(b)
}

/// Teichmüller representative, inside the corner with identity `unit`, of
/// an element of a block centre with residue field of size `q`.
pub(crate) fn corner_teichmuller(x: &RingMatrix, unit: &RingMatrix, q: u64) -> RingMatrix {
    let ring = x.ring();
    let one = RingMatrix::identity(ring, x.rows());
    let mut y = x.add(&one.sub(unit));
    for _ in 1..ring.k() {
        y = y.pow(q as u128);
    }
    y.mul(unit)
}

/// `x^e` inside the corner with identity `unit`.
pub(crate) fn corner_pow(x: &RingMatrix, unit: &RingMatrix, e: u128) -> RingMatrix {
    let one = RingMatrix::identity(x.ring(), x.rows());
    x.add(&one.sub(unit)).pow(e).mul(unit)
}

/// Determinant of a square matrix whose entries lie in the commutative
/// local ring with identity `unit`.
fn det_over_center(mut m: Vec<Vec<RingMatrix>>, unit: &RingMatrix) -> RingMatrix {
    let d = m.len();
    let mut det = unit.clone();
    let ring = unit.ring();
    for c in 0..d {
        let Some(piv) = (c..d).find(|&i| corner_inverse(&m[i][c], unit).is_some()) else {
            return RingMatrix::zeros(ring, unit.rows(), unit.cols());
        };
        if piv != c {
            m.swap(piv, c);
            det = det.neg();
        }
        let inv = corner_inverse(&m[c][c], unit).expect("unit pivot");
        det = det.mul(&m[c][c]);
        for i in c + 1..d {
            let f = m[i][c].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for j in c..d {
                let t = f.mul(&m[c][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    det
}

impl LiftedStructure {
    pub fn build(data: &ResidualGaloisData, tau: &Tau, seed: u64) -> Result<Self, LiftError> {
        let rep = &data.rep;
        let ring = tau.ring;
        let field = rep.field();
        let n = rep.n();
        let residual = decomposition_type(rep, seed)?;
        let gens = tau.generator_images(rep);
        let c_basis = free_centralizer(ring, n, &gens, "commutant")?;
        let delta_basis = free_centralizer(ring, n, &c_basis, "bicommutant")?;
        let mut tc = gens.clone();
        tc.extend_from_slice(&c_basis);
        let center_basis = free_centralizer(ring, n, &tc, "centre")?;
        if c_basis.len() != residual.c_basis.len()
            || delta_basis.len() != residual.delta_basis.len()
            || center_basis.len() != residual.center_basis.len()
        {
            return Err(LiftError::Internal("lifted algebras have the wrong rank".into()));
        }
        let mut cd = c_basis.clone();
        cd.extend_from_slice(&delta_basis);
        if free_centralizer(ring, n, &cd, "centre of the bicommutant")?.len() != center_basis.len() {
            return Err(LiftError::Hypothesis {
                tag: Hypothesis::CentralizerNotCenter,
                detail: "centralizer of tau in the bicommutant exceeds its centre".into(),
            });
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut blocks = Vec::new();
        for (eps_bar, sig) in residual.isotypic.idempotents.iter().zip(&residual.isotypic.blocks) {
            let eps = refine_idempotent(&lift_into(&center_basis, eps_bar)?);
            let center =
                MatSpan::from_mats(ring, n, &center_basis.iter().map(|z| eps.mul(z)).collect::<Vec<_>>()).basis();
            let center_bar: Vec<RingMatrix> = center.iter().map(RingMatrix::residue).collect();
            let field_size = field.residue_size().pow(sig.e as u32);
            let delta_bar: Vec<RingMatrix> = MatSpan::from_mats(
                field,
                n,
                &residual.delta_basis.iter().map(|d| eps_bar.mul(d)).collect::<Vec<_>>(),
            )
            .basis();
            let g_bar = primitive_idempotent(
                field,
                n,
                &delta_bar,
                eps_bar,
                &center_bar,
                field_size,
                sig.m * sig.e,
                &mut rng,
            )
            .map_err(LiftError::Internal)?;
            let g = refine_idempotent(&eps.mul(&lift_into(&delta_basis, &g_bar)?));

            // a basis over the block centre of eps D(R) g
            let cands = MatSpan::from_mats(
                ring,
                n,
                &delta_basis.iter().map(|d| eps.mul(d).mul(&g)).collect::<Vec<_>>(),
            )
            .basis();
            let mut resid = MatSpan::new(field, n);
            let mut module_basis = Vec::new();
            for v in cands {
                let vb = v.residue();
                if resid.contains(&vb) {
                    continue;
                }
                for z in &center_bar {
                    resid.insert(&z.mul(&vb));
                }
                module_basis.push(v);
            }
            if module_basis.len() != sig.d {
                return Err(LiftError::Internal(format!(
                    "module of rank {} over the block centre, expected {}",
                    module_basis.len(),
                    sig.d
                )));
            }
            let mut module_span = MatSpan::new(ring, n);
            for v in &module_basis {
                for z in &center {
                    if !module_span.insert(&z.mul(v)) {
                        return Err(LiftError::Internal("block module is not free".into()));
                    }
                }
            }
            blocks.push(LiftedBlock {
                signature: *sig,
                eps,
                center,
                center_bar,
                field_size,
                g,
                g_bar,
                module_basis,
                module_span,
            });
        }
        Ok(LiftedStructure {
            ring,
            n,
            c_basis,
            delta_basis,
            center_basis,
            blocks,
            residual,
        })
    }

    pub fn in_delta(&self, x: &RingMatrix) -> bool {
        MatSpan::from_mats(self.ring, self.n, &self.delta_basis).contains(x)
    }

    pub fn in_commutant(&self, x: &RingMatrix) -> bool {
        MatSpan::from_mats(self.ring, self.n, &self.c_basis).contains(x)
    }

    pub fn in_center(&self, x: &RingMatrix) -> bool {
        MatSpan::from_mats(self.ring, self.n, &self.center_basis).contains(x)
    }

    /// Determinant over the block centre of `a` acting on `eps D(R) g`, for
    /// every block; this is the abelianisation of the bicommutant.
    pub fn block_determinants(&self, a: &RingMatrix) -> Result<Vec<RingMatrix>, LiftError> {
        let mut out = Vec::new();
        for b in &self.blocks {
            let d = b.module_basis.len();
            let mut m = vec![Vec::with_capacity(d); d];
            for v in &b.module_basis {
                let c = b
                    .module_span
                    .coordinates(&a.mul(v))
                    .ok_or_else(|| LiftError::Internal("element does not preserve the block module".into()))?;
                for s in 0..d {
                    let coeffs = &c[s * b.center.len()..(s + 1) * b.center.len()];
                    m[s].push(combine(self.ring, self.n, &b.center, coeffs));
                }
            }
            out.push(det_over_center(m, &b.eps));
        }
        Ok(out)
    }

    /// Whether each block determinant has finite order prime to `p`.
    pub fn is_nu_tame(&self, a: &RingMatrix) -> Result<bool, LiftError> {
        let dets = self.block_determinants(a)?;
        Ok(self.blocks.iter().zip(&dets).all(|(b, x)| {
            corner_inverse(x, &b.eps).is_some() && corner_pow(x, &b.eps, b.field_size as u128 - 1) == b.eps
        }))
    }
}
