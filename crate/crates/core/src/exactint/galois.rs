//! Galois rings `W(F_q) / p^k`, realised as `(Z/p^k)[X]/(F)` with `F` the
//! Teichmüller lift of a primitive polynomial over `F_p`.

use std::fmt;

use rand::Rng;

use super::arith::{is_prime_u64, mul_mod, prime_divisors_u128};
use super::ExactError;

pub const MAX_EXT_DEGREE: usize = 8;

/// Coefficient vector of an element, low degree first. Entries past the
/// ring's degree are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GrElem(pub [u64; MAX_EXT_DEGREE]);

impl fmt::Debug for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        if last == 0 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", &self.0[..=last])
        }
    }
}

impl GrElem {
    pub const ZERO: GrElem = GrElem([0; MAX_EXT_DEGREE]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// `GR(p^k, e)`. Cheap to copy; matrices carry their ring by value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisRing {
    p: u64,
    k: u32,
    e: usize,
    pk: u64,
    // X^e = sum_i red[i] X^i
    red: [u64; MAX_EXT_DEGREE],
}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.p, self.k, self.e)
    }
}

impl GaloisRing {
    /// `Z / p^k`.
    pub fn integers_mod(p: u64, k: u32) -> Result<Self, ExactError> {
        Self::new(p, k, 1)
    }

    pub fn prime_field(p: u64) -> Result<Self, ExactError> {
        Self::new(p, 1, 1)
    }

    pub fn new(p: u64, k: u32, e: usize) -> Result<Self, ExactError> {
        if !is_prime_u64(p) {
            return Err(ExactError::NotPrime(p));
        }
        if k == 0 || e == 0 || e > MAX_EXT_DEGREE {
            return Err(ExactError::UnsupportedRing { p, k, e });
        }
        let pk = p.checked_pow(k).filter(|&x| x < 1 << 62);
        let q = p.checked_pow(e as u32).filter(|&x| x < 1 << 62);
        let (Some(pk), Some(_)) = (pk, q) else {
            return Err(ExactError::UnsupportedRing { p, k, e });
        };
        let mut ring = GaloisRing {
            p,
            k,
            e,
            pk,
            red: [0; MAX_EXT_DEGREE],
        };
        if e == 1 {
            return Ok(ring);
        }
        let f = primitive_polynomial(p, e);
        // F_0 = f read over Z/p^k, then replace it by the minimal polynomial
        // of the Teichmüller lift of X so that X itself is Teichmüller.
        for i in 0..e {
            ring.red[i] = (pk - f[i] % pk) % pk;
        }
        if k > 1 {
            let x = ring.gen_x();
            let t = ring.teichmuller_raw(x);
            let mut poly = vec![ring.one()];
            let mut root = t;
            for _ in 0..e {
                // poly *= (Y - root)
                let mut next = vec![GrElem::ZERO; poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] = ring.add(next[i + 1], *c);
                    next[i] = ring.sub(next[i], ring.mul(*c, root));
                }
                poly = next;
                root = ring.pow(root, p as u128);
            }
            let mut red = [0; MAX_EXT_DEGREE];
            for i in 0..e {
                let c = poly[i];
                debug_assert!(c.0[1..].iter().all(|&x| x == 0), "conjugate product is not rational");
                red[i] = (pk - c.0[0]) % pk;
            }
            ring.red = red;
        }
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Precision: the ring is killed by `p^k`.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Degree of the residue field over `F_p`.
    pub fn degree(&self) -> usize {
        self.e
    }

    /// Coefficients `c_0, ..., c_e` (constant term first, monic) of the
    /// polynomial satisfied by the generator `X`.
    pub fn defining_polynomial(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.red[..self.e].iter().map(|&r| (self.pk - r) % self.pk).collect();
        if self.e == 1 {
            out[0] = 0;
        }
        out.push(1);
        out
    }

    pub fn p_pow_k(&self) -> u64 {
        self.pk
    }

    /// Size of the residue field.
    pub fn residue_size(&self) -> u64 {
        q_of(self.p, self.e)
    }

    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    /// Same ring at precision `j`, sharing the defining polynomial reduced
    /// mod `p^j`.
    pub fn with_precision(&self, j: u32) -> Result<GaloisRing, ExactError> {
        if j == 0 {
            return Err(ExactError::UnsupportedRing {
                p: self.p,
                k: j,
                e: self.e,
            });
        }
        if j == self.k {
            return Ok(*self);
        }
        let pk = self
            .p
            .checked_pow(j)
            .filter(|&x| x < 1 << 62)
            .ok_or(ExactError::UnsupportedRing {
                p: self.p,
                k: j,
                e: self.e,
            })?;
        if j > self.k {
            // defining data only known mod p^k; rebuild from scratch
            return GaloisRing::new(self.p, j, self.e);
        }
        let mut red = self.red;
        for r in red.iter_mut() {
            *r %= pk;
        }
        Ok(GaloisRing { pk, k: j, red, ..*self })
    }

    pub fn residue_field(&self) -> GaloisRing {
        self.with_precision(1).expect("precision one always exists")
    }

    pub fn zero(&self) -> GrElem {
        GrElem::ZERO
    }

    pub fn one(&self) -> GrElem {
        self.from_int(1)
    }

    /// The class of `X`, a Teichmüller generator of the residue extension.
    pub fn gen_x(&self) -> GrElem {
        if self.e == 1 {
            // Z/p^k has no extension generator; X behaves as 0
            return GrElem::ZERO;
        }
        let mut c = [0; MAX_EXT_DEGREE];
        c[1] = 1;
        GrElem(c)
    }

    pub fn from_int(&self, x: i64) -> GrElem {
        let mut c = [0; MAX_EXT_DEGREE];
        c[0] = (x as i128).rem_euclid(self.pk as i128) as u64;
        GrElem(c)
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<GrElem, ExactError> {
        if coeffs.len() > self.e {
            return Err(ExactError::BadElement(format!(
                "{} coefficients for an extension of degree {}",
                coeffs.len(),
                self.e
            )));
        }
        let mut c = [0; MAX_EXT_DEGREE];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = (x as i128).rem_euclid(self.pk as i128) as u64;
        }
        Ok(GrElem(c))
    }

    pub fn coeffs(&self, x: GrElem) -> Vec<u64> {
        x.0[..self.e].to_vec()
    }

    pub fn add(&self, a: GrElem, b: GrElem) -> GrElem {
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.e {
            let s = a.0[i] + b.0[i];
            c[i] = if s >= self.pk { s - self.pk } else { s };
        }
        GrElem(c)
    }

    pub fn neg(&self, a: GrElem) -> GrElem {
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.e {
            c[i] = if a.0[i] == 0 { 0 } else { self.pk - a.0[i] };
        }
        GrElem(c)
    }

    pub fn sub(&self, a: GrElem, b: GrElem) -> GrElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GrElem, b: GrElem) -> GrElem {
        let (e, pk) = (self.e, self.pk as u128);
        if e == 1 {
            let mut c = [0; MAX_EXT_DEGREE];
            c[0] = ((a.0[0] as u128 * b.0[0] as u128) % pk) as u64;
            return GrElem(c);
        }
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for d in 0..2 * e - 1 {
            let lo = d.saturating_sub(e - 1);
            let hi = d.min(e - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += (a.0[i] as u128 * b.0[d - i] as u128) % pk;
            }
            prod[d] = (acc % pk) as u64;
        }
        for d in (e..2 * e - 1).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            for i in 0..e {
                let t = mul_mod(top, self.red[i], self.pk);
                let s = prod[d - e + i] + t;
                prod[d - e + i] = if s >= self.pk { s - self.pk } else { s };
            }
        }
        let mut c = [0; MAX_EXT_DEGREE];
        c[..e].copy_from_slice(&prod[..e]);
        GrElem(c)
    }

    pub fn pow(&self, mut base: GrElem, mut exp: u128) -> GrElem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `p`-adic valuation, with `k` standing for zero.
    pub fn valuation(&self, a: GrElem) -> u32 {
        let mut v = self.k;
        for i in 0..self.e {
            let mut c = a.0[i];
            if c == 0 {
                continue;
            }
            let mut w = 0;
            while c.is_multiple_of(self.p) {
                c /= self.p;
                w += 1;
            }
            v = v.min(w);
        }
        v
    }

    pub fn is_unit(&self, a: GrElem) -> bool {
        self.valuation(a) == 0
    }

    /// Exact division by `p^v`; the result is a representative modulo
    /// `p^(k-v)`.
    pub fn div_p_pow(&self, a: GrElem, v: u32) -> GrElem {
        let d = self.p.pow(v);
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.e {
            debug_assert_eq!(a.0[i] % d, 0, "inexact division by p^v");
            c[i] = a.0[i] / d;
        }
        GrElem(c)
    }

    pub fn mul_p_pow(&self, a: GrElem, v: u32) -> GrElem {
        if v >= self.k {
            return GrElem::ZERO;
        }
        let d = self.p.pow(v);
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.e {
            c[i] = mul_mod(a.0[i], d, self.pk);
        }
        GrElem(c)
    }

    /// Reduces coefficients modulo `p^j`; the standard representative in
    /// `[0, p^j)` is kept.
    pub fn truncate(&self, a: GrElem, j: u32) -> GrElem {
        if j >= self.k {
            return a;
        }
        let d = self.p.pow(j);
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.e {
            c[i] = a.0[i] % d;
        }
        GrElem(c)
    }

    /// Inverse of a unit: residue inverse, then Newton iteration.
    pub fn inv(&self, a: GrElem) -> Option<GrElem> {
        if !self.is_unit(a) {
            return None;
        }
        let f = self.residue_field();
        let q = self.residue_size() as u128;
        let ar = self.truncate(a, 1);
        let mut y = f.pow(ar, q - 2);
        let two = self.from_int(2);
        for _ in 0..64 {
            let t = self.mul(a, y);
            if t == self.one() {
                return Some(y);
            }
            y = self.mul(y, self.sub(two, t));
        }
        unreachable!("Newton iteration for an inverse did not converge")
    }

    fn teichmuller_raw(&self, a: GrElem) -> GrElem {
        let q = self.residue_size() as u128;
        let mut t = a;
        for _ in 1..self.k {
            t = self.pow(t, q);
        }
        t
    }

    /// Teichmüller representative `a^(q^(k-1))` of a unit.
    pub fn teichmuller(&self, a: GrElem) -> Result<GrElem, ExactError> {
        if !self.is_unit(a) {
            return Err(ExactError::NotAUnit);
        }
        Ok(self.teichmuller_raw(a))
    }

    /// Uniform random element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GrElem {
        let mut c = [0; MAX_EXT_DEGREE];
        for ci in c.iter_mut().take(self.e) {
            *ci = rng.gen_range(0..self.pk);
        }
        GrElem(c)
    }

    /// Enumerates the residue field, in coefficient order. Only sensible for
    /// small fields.
    pub fn residue_elements(&self) -> Vec<GrElem> {
        let q = self.residue_size();
        (0..q)
            .map(|mut idx| {
                let mut c = [0; MAX_EXT_DEGREE];
                for ci in c.iter_mut().take(self.e) {
                    *ci = idx % self.p;
                    idx /= self.p;
                }
                GrElem(c)
            })
            .collect()
    }

    /// Reinterprets an element of another precision of the same ring via the
    /// standard representative.
    pub fn coerce(&self, a: GrElem) -> GrElem {
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.e {
            c[i] = a.0[i] % self.pk;
        }
        GrElem(c)
    }

    /// True if the two rings differ only in precision.
    pub fn same_tower(&self, other: &GaloisRing) -> bool {
        if self.p != other.p || self.e != other.e {
            return false;
        }
        let j = self.k.min(other.k);
        let d = self.p.pow(j);
        (0..self.e).all(|i| self.red[i] % d == other.red[i] % d)
    }
}

fn q_of(p: u64, e: usize) -> u64 {
    p.pow(e as u32)
}

/// Lexicographically smallest monic primitive polynomial of degree `e` over
/// `F_p`, as its low coefficients `c_0..c_{e-1}`.
fn primitive_polynomial(p: u64, e: usize) -> Vec<u64> {
    let q = q_of(p, e);
    let order = (q - 1) as u128;
    let prime_factors = prime_divisors_u128(order);
    for idx in 0..q {
        let mut low = vec![0u64; e];
        let mut t = idx;
        for c in low.iter_mut() {
            *c = t % p;
            t /= p;
        }
        if low[0] == 0 {
            continue;
        }
        let mut red = [0; MAX_EXT_DEGREE];
        for i in 0..e {
            red[i] = (p - low[i]) % p;
        }
        let f = GaloisRing { p, k: 1, e, pk: p, red };
        let x = f.gen_x();
        // X has order q - 1 only if the quotient is a field and X generates it
        if f.pow(x, order) != f.one() {
            continue;
        }
        if prime_factors.iter().all(|&r| f.pow(x, order / r) != f.one()) {
            return low;
        }
    }
    unreachable!("every finite field has a primitive element")
}
