//! Matrix subalgebras given by spanning sets: centralisers, Frobenius-fixed
//! parts and idempotent splitting.

use rand::Rng;

use crate::exactint::{kernel, GaloisRing, GrElem, RingMatrix, SpanBasis};

const MAX_SPLIT_ATTEMPTS: usize = 400;

/// A submodule of `M_n(R)` spanned by matrices, kept as an echelon basis.
#[derive(Clone, Debug)]
pub struct MatSpan {
    n: usize,
    ring: GaloisRing,
    span: SpanBasis,
}

impl MatSpan {
    pub fn new(ring: GaloisRing, n: usize) -> Self {
        MatSpan {
            n,
            ring,
            span: SpanBasis::new(ring, n * n),
        }
    }

    pub fn from_mats<'a>(ring: GaloisRing, n: usize, mats: impl IntoIterator<Item = &'a RingMatrix>) -> Self {
        let mut s = Self::new(ring, n);
        for m in mats {
            s.insert(m);
        }
        s
    }

    pub fn insert(&mut self, m: &RingMatrix) -> bool {
        self.span.insert(m.entries())
    }

    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn basis(&self) -> Vec<RingMatrix> {
        self.span
            .basis()
            .iter()
            .map(|v| RingMatrix::from_elems(self.ring, self.n, self.n, v.clone()))
            .collect()
    }

    pub fn contains(&self, m: &RingMatrix) -> bool {
        self.span.contains(m.entries())
    }

    pub fn coordinates(&self, m: &RingMatrix) -> Option<Vec<GrElem>> {
        self.span.coordinates(m.entries())
    }
}

/// Linear combination `sum c_i m_i`.
pub fn combine(ring: GaloisRing, n: usize, mats: &[RingMatrix], coeffs: &[GrElem]) -> RingMatrix {
    let mut out = RingMatrix::zeros(ring, n, n);
    for (m, &c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

pub fn random_combination<R: Rng + ?Sized>(ring: GaloisRing, n: usize, mats: &[RingMatrix], rng: &mut R) -> RingMatrix {
    let coeffs: Vec<GrElem> = mats.iter().map(|_| ring.random(rng)).collect();
    combine(ring, n, mats, &coeffs)
}

/// Generators of `{X : X M = M X for all M in mats}`; the flag says whether
/// this module is free (always true over a field).
pub fn centralizer(ring: GaloisRing, n: usize, mats: &[RingMatrix]) -> (Vec<RingMatrix>, bool) {
    let nn = n * n;
    let mut sys = RingMatrix::zeros(ring, nn * mats.len(), nn);
    for (t, m) in mats.iter().enumerate() {
        for i in 0..n {
            for l in 0..n {
                let row = t * nn + i * n + l;
                for j in 0..n {
                    // (X M)_{il} = sum_j X_ij M_jl ; (M X)_{il} = sum_j M_ij X_jl
                    let a = ring.add(sys.get(row, i * n + j), m.get(j, l));
                    sys.set(row, i * n + j, a);
                    let b = ring.sub(sys.get(row, j * n + l), m.get(i, j));
                    sys.set(row, j * n + l, b);
                }
            }
        }
    }
    let gens = kernel(&sys);
    let free = gens.iter().all(|g| g.order_exponent == ring.k());
    let mats = gens
        .into_iter()
        .filter(|g| g.order_exponent == ring.k())
        .map(|g| RingMatrix::from_elems(ring, n, n, g.vector))
        .collect();
    (mats, free)
}

pub fn rank(m: &RingMatrix) -> usize {
    m.residue_rank()
}

/// The elements `a` of the commutative algebra spanned by `basis` with
/// `a^power = a`. The span must be closed under multiplication.
pub fn frobenius_fixed(field: GaloisRing, n: usize, basis: &[RingMatrix], power: u64) -> Vec<RingMatrix> {
    let span = MatSpan::from_mats(field, n, basis);
    let b = span.basis();
    let dim = b.len();
    let mut sys = RingMatrix::zeros(field, dim, dim);
    for (l, x) in b.iter().enumerate() {
        let c = span
            .coordinates(&x.pow(power as u128))
            .expect("span is closed under products");
        for (i, ci) in c.into_iter().enumerate() {
            let v = if i == l { field.sub(ci, field.one()) } else { ci };
            sys.set(i, l, v);
        }
    }
    kernel(&sys)
        .into_iter()
        .map(|g| combine(field, n, &b, &g.vector))
        .collect()
}

/// All `F`-linear combinations of `basis`.
pub fn all_combinations(field: GaloisRing, n: usize, basis: &[RingMatrix]) -> Vec<RingMatrix> {
    let scalars = field.residue_elements();
    let mut out = vec![RingMatrix::zeros(field, n, n)];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * scalars.len());
        for x in &out {
            for &c in &scalars {
                next.push(x.add(&b.scale(c)));
            }
        }
        out = next;
    }
    out
}

/// Inverse of `x` inside the corner algebra with identity `unit`.
pub fn corner_inverse(x: &RingMatrix, unit: &RingMatrix) -> Option<RingMatrix> {
    let n = x.rows();
    let one = RingMatrix::identity(x.ring(), n);
    let full = x.add(&one.sub(unit));
    Some(unit.mul(&full.inverse()?))
}

/// Splits `unit` into the primitive idempotents of the algebra `fixed`,
/// which must be isomorphic to a power of the field `K`. `k_basis` is an
/// `F`-basis of `K unit` and `k_elems` lists every element of `K`.
pub fn split_idempotents<R: Rng + ?Sized>(
    field: GaloisRing,
    n: usize,
    fixed: &[RingMatrix],
    unit: &RingMatrix,
    k_basis: &[RingMatrix],
    k_elems: &[RingMatrix],
    rng: &mut R,
) -> Result<Vec<RingMatrix>, String> {
    let ek = k_basis.len();
    let is_primitive =
        |e: &RingMatrix| MatSpan::from_mats(field, n, &fixed.iter().map(|f| e.mul(f)).collect::<Vec<_>>()).dim() <= ek;
    let mut todo = vec![unit.clone()];
    let mut done = Vec::new();
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        todo.retain(|e| {
            if is_primitive(e) {
                done.push(e.clone());
                false
            } else {
                true
            }
        });
        if todo.is_empty() {
            return Ok(done);
        }
        let beta = random_combination(field, n, fixed, rng);
        let mut next = Vec::new();
        for e in todo.drain(..) {
            let b = e.mul(&beta);
            let re = rank(&e);
            let roots: Vec<RingMatrix> = k_elems
                .iter()
                .map(|l| l.mul(&e))
                .filter(|le| rank(&b.sub(le)) < re)
                .collect();
            if roots.len() < 2 {
                next.push(e);
                continue;
            }
            for (i, l) in roots.iter().enumerate() {
                let mut f = e.clone();
                for (j, m) in roots.iter().enumerate() {
                    if i != j {
                        let inv = corner_inverse(&l.sub(m), &e).ok_or("eigenvalue difference not invertible")?;
                        f = f.mul(&b.sub(m)).mul(&inv);
                    }
                }
                next.push(f);
            }
        }
        todo = next;
    }
    Err("idempotent splitting did not terminate".into())
}

/// A primitive idempotent of a split simple algebra `B = M_r(K)` given by an
/// `F`-basis, where `K` is the centre with `F`-basis `k_basis` (multiples of
/// `unit`) and `|K| = k_size`. `target_rank` is the rank of a primitive
/// idempotent as a matrix.
#[allow(clippy::too_many_arguments)]
pub fn primitive_idempotent<R: Rng + ?Sized>(
    field: GaloisRing,
    n: usize,
    algebra: &[RingMatrix],
    unit: &RingMatrix,
    k_basis: &[RingMatrix],
    k_size: u64,
    target_rank: usize,
    rng: &mut R,
) -> Result<RingMatrix, String> {
    let k_elems = all_combinations(field, n, k_basis);
    let mut e = unit.clone();
    let mut basis = algebra.to_vec();
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        let re = rank(&e);
        if re == target_rank {
            return Ok(e);
        }
        if target_rank == 0 || re < target_rank || !re.is_multiple_of(target_rank) {
            return Err(format!("idempotent of rank {re} cannot reach rank {target_rank}"));
        }
        let r = re / target_rank;
        let b = random_combination(field, n, &basis, rng);
        let kb: Vec<RingMatrix> = k_basis.iter().map(|z| z.mul(&e)).collect();
        let mut gens = Vec::new();
        let mut pw = e.clone();
        for _ in 0..=r {
            gens.extend(kb.iter().map(|z| z.mul(&pw)));
            pw = pw.mul(&b);
        }
        let alg = MatSpan::from_mats(field, n, &gens).basis();
        let fixed = frobenius_fixed(field, n, &alg, k_size);
        if fixed.len() <= kb.len() {
            continue;
        }
        let ke: Vec<RingMatrix> = k_elems.iter().map(|z| z.mul(&e)).collect();
        let parts = split_idempotents(field, n, &fixed, &e, &kb, &ke, rng)?;
        e = parts.into_iter().min_by_key(rank).expect("at least two parts");
        let corner: Vec<RingMatrix> = basis.iter().map(|x| e.mul(x).mul(&e)).collect();
        basis = MatSpan::from_mats(field, n, &corner).basis();
    }
    Err("primitive idempotent search did not terminate".into())
}

/// Lifts an idempotent `e0` of an algebra over `R` (given modulo `p` or
/// approximately) to an exact idempotent by iterating `3e^2 - 2e^3`.
pub fn refine_idempotent(e0: &RingMatrix) -> RingMatrix {
    let r = e0.ring();
    let three = r.from_int(3);
    let two = r.from_int(2);
    let mut e = e0.clone();
    loop {
        let e2 = e.mul(&e);
        if e2 == e {
            return e;
        }
        e = e2.scale(three).sub(&e2.mul(&e).scale(two));
    }
}
