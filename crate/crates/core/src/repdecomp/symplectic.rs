//! Decomposition types inside `Sp_{2n}` for groups in the Levi
//! `{diag(A, A^*)}`, measured by Lie algebra dimensions.

use crate::exactint::{kernel, GaloisRing, RingMatrix};

use super::algebra::{all_combinations, centralizer};

const MAX_POINTS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticDims {
    /// Dimension of the centraliser of the group in `sp_2n`.
    pub commutant_dim: usize,
    /// Dimension of the centraliser in `sp_2n` of the centraliser group.
    pub delta_dim: usize,
    /// Number of rational points of the centraliser group.
    pub commutant_points: usize,
}

/// `[[0, I], [-I, 0]]`.
pub fn standard_form(field: GaloisRing, n: usize) -> RingMatrix {
    RingMatrix::from_fn(field, 2 * n, 2 * n, |i, j| {
        if j == i + n {
            field.one()
        } else if i == j + n {
            field.from_int(-1)
        } else {
            field.zero()
        }
    })
}

/// `diag(A, (A^t)^-1)`.
pub fn levi_embedding(a: &RingMatrix) -> Option<RingMatrix> {
    let n = a.rows();
    let star = a.transpose().inverse()?;
    Some(RingMatrix::from_fn(a.ring(), 2 * n, 2 * n, |i, j| {
        match (i < n, j < n) {
            (true, true) => a.get(i, j),
            (false, false) => star.get(i - n, j - n),
            _ => a.ring().zero(),
        }
    }))
}

/// Kernel of the linear map `X -> (L_1(X), L_2(X), ...)` on `m x m`
/// matrices, evaluated on matrix units.
fn joint_kernel(field: GaloisRing, m: usize, maps: &[&dyn Fn(&RingMatrix) -> RingMatrix]) -> Vec<RingMatrix> {
    let mm = m * m;
    let mut sys = RingMatrix::zeros(field, mm * maps.len(), mm);
    for col in 0..mm {
        let mut unit = RingMatrix::zeros(field, m, m);
        unit.set(col / m, col % m, field.one());
        for (t, l) in maps.iter().enumerate() {
            let img = l(&unit);
            for (i, &x) in img.entries().iter().enumerate() {
                sys.set(t * mm + i, col, x);
            }
        }
    }
    kernel(&sys)
        .into_iter()
        .map(|g| RingMatrix::from_elems(field, m, m, g.vector))
        .collect()
}

/// Centraliser dimensions in `sp_2n` for a group generated by `generators`,
/// which must preserve the standard form.
pub fn sp_centralizer_dims(field: GaloisRing, generators: &[RingMatrix]) -> Result<SymplecticDims, String> {
    let m = generators.first().map(RingMatrix::rows).ok_or("no generators")?;
    if m % 2 != 0 {
        return Err("matrix size must be even".into());
    }
    let omega = standard_form(field, m / 2);
    for g in generators {
        if g.mul(&omega).mul(&g.transpose()) != omega {
            return Err("generator does not preserve the symplectic form".into());
        }
    }
    let in_sp = |x: &RingMatrix| x.mul(&omega).add(&omega.mul(&x.transpose()));
    let mut maps: Vec<Box<dyn Fn(&RingMatrix) -> RingMatrix>> = vec![Box::new(in_sp)];
    for g in generators {
        let g = g.clone();
        maps.push(Box::new(move |x: &RingMatrix| x.mul(&g).sub(&g.mul(x))));
    }
    let refs: Vec<&dyn Fn(&RingMatrix) -> RingMatrix> = maps.iter().map(|b| b.as_ref()).collect();
    let c_lie = joint_kernel(field, m, &refs);

    let c_alg = centralizer(field, m, generators).0;
    if (field.residue_size() as f64).powi(c_alg.len() as i32) > MAX_POINTS as f64 {
        return Err("commutant too large to enumerate".into());
    }
    let points: Vec<RingMatrix> = all_combinations(field, m, &c_alg)
        .into_iter()
        .filter(|c| c.is_invertible() && c.mul(&omega).mul(&c.transpose()) == omega)
        .collect();

    let mut maps: Vec<Box<dyn Fn(&RingMatrix) -> RingMatrix>> = vec![Box::new(in_sp)];
    for c in points.iter().chain(&c_lie) {
        let c = c.clone();
        maps.push(Box::new(move |x: &RingMatrix| x.mul(&c).sub(&c.mul(x))));
    }
    let refs: Vec<&dyn Fn(&RingMatrix) -> RingMatrix> = maps.iter().map(|b| b.as_ref()).collect();
    let delta_lie = joint_kernel(field, m, &refs);
    Ok(SymplecticDims {
        commutant_dim: c_lie.len(),
        delta_dim: delta_lie.len(),
        commutant_points: points.len(),
    })
}
