//! Matrices over a Galois ring, local Smith form and linear systems.

use std::fmt;

use super::galois::{GaloisRing, GrElem};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    ring: GaloisRing,
    rows: usize,
    cols: usize,
    data: Vec<GrElem>,
}

impl RingMatrix {
    pub fn zeros(ring: GaloisRing, rows: usize, cols: usize) -> Self {
        RingMatrix {
            ring,
            rows,
            cols,
            data: vec![GrElem::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: GaloisRing, n: usize) -> Self {
        Self::scalar(ring, n, ring.one())
    }

    pub fn scalar(ring: GaloisRing, n: usize, c: GrElem) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(ring: GaloisRing, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GrElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { ring, rows, cols, data }
    }

    pub fn from_elems(ring: GaloisRing, rows: usize, cols: usize, data: Vec<GrElem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        RingMatrix { ring, rows, cols, data }
    }

    /// Row-major integer entries, reduced into the ring.
    pub fn from_ints(ring: GaloisRing, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self::from_elems(ring, rows, cols, entries.iter().map(|&x| ring.from_int(x)).collect())
    }

    pub fn column_vector(ring: GaloisRing, v: &[GrElem]) -> Self {
        Self::from_elems(ring, v.len(), 1, v.to_vec())
    }

    pub fn ring(&self) -> GaloisRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> GrElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: GrElem) {
        self.data[i * self.cols + j] = x;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[GrElem] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<GrElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn add(&self, o: &RingMatrix) -> RingMatrix {
        self.check_shape(o);
        let r = self.ring;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| r.add(a, b)).collect();
        RingMatrix { data, ..*self }
    }

    pub fn sub(&self, o: &RingMatrix) -> RingMatrix {
        self.check_shape(o);
        let r = self.ring;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| r.sub(a, b)).collect();
        RingMatrix { data, ..*self }
    }

    pub fn neg(&self) -> RingMatrix {
        let r = self.ring;
        RingMatrix {
            data: self.data.iter().map(|&a| r.neg(a)).collect(),
            ..*self
        }
    }

    pub fn scale(&self, c: GrElem) -> RingMatrix {
        let r = self.ring;
        RingMatrix {
            data: self.data.iter().map(|&a| r.mul(c, a)).collect(),
            ..*self
        }
    }

    pub fn mul(&self, o: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        assert!(self.ring == o.ring, "product of matrices over different rings");
        let r = self.ring;
        let mut out = RingMatrix::zeros(r, self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = r.add(out.data[idx], r.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GrElem]) -> Vec<GrElem> {
        assert_eq!(self.cols, v.len());
        let r = self.ring;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(GrElem::ZERO, |acc, j| r.add(acc, r.mul(self.get(i, j), v[j]))))
            .collect()
    }

    pub fn transpose(&self) -> RingMatrix {
        RingMatrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn pow(&self, mut exp: u128) -> RingMatrix {
        assert!(self.is_square());
        let mut acc = RingMatrix::identity(self.ring, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GrElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == RingMatrix::identity(self.ring, self.rows)
    }

    pub fn commutes_with(&self, o: &RingMatrix) -> bool {
        self.mul(o) == o.mul(self)
    }

    /// Minimum valuation of the entries (`k` for the zero matrix).
    pub fn valuation(&self) -> u32 {
        self.data
            .iter()
            .map(|&a| self.ring.valuation(a))
            .min()
            .unwrap_or(self.ring.k())
    }

    /// Moves the matrix to another precision of the same ring, keeping the
    /// standard representatives. Going up is the standard section.
    pub fn to_ring(&self, ring: GaloisRing) -> RingMatrix {
        assert!(self.ring.same_tower(&ring), "rings are not in the same tower");
        RingMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| ring.coerce(a)).collect(),
        }
    }

    pub fn residue(&self) -> RingMatrix {
        self.to_ring(self.ring.residue_field())
    }

    pub fn div_p_pow(&self, v: u32) -> RingMatrix {
        let r = self.ring;
        RingMatrix {
            data: self.data.iter().map(|&a| r.div_p_pow(a, v)).collect(),
            ..*self
        }
    }

    pub fn mul_p_pow(&self, v: u32) -> RingMatrix {
        let r = self.ring;
        RingMatrix {
            data: self.data.iter().map(|&a| r.mul_p_pow(a, v)).collect(),
            ..*self
        }
    }

    pub fn inverse(&self) -> Option<RingMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let r = self.ring;
        let mut a = self.clone();
        let mut inv = RingMatrix::identity(r, n);
        for c in 0..n {
            let piv = (c..n).find(|&i| r.is_unit(a.get(i, c)))?;
            a.swap_rows(c, piv);
            inv.swap_rows(c, piv);
            let s = r.inv(a.get(c, c)).expect("unit pivot");
            a.scale_row(c, s);
            inv.scale_row(c, s);
            for i in 0..n {
                if i != c {
                    let f = a.get(i, c);
                    if !f.is_zero() {
                        let f = r.neg(f);
                        a.add_row_multiple(i, c, f);
                        inv.add_row_multiple(i, c, f);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.residue_rank() == self.rows
    }

    /// Rank of the reduction mod `p`.
    pub fn residue_rank(&self) -> usize {
        local_smith(&self.residue())
            .valuations
            .iter()
            .filter(|&&v| v == 0)
            .count()
    }

    /// Number of unit elementary divisors; the rank of the free part of the
    /// image when the image is a direct summand.
    pub fn unit_divisor_count(&self) -> usize {
        local_smith(self).valuations.iter().filter(|&&v| v == 0).count()
    }

    pub fn hstack(&self, o: &RingMatrix) -> RingMatrix {
        assert_eq!(self.rows, o.rows);
        RingMatrix::from_fn(self.ring, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                o.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, o: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        RingMatrix {
            ring: self.ring,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// Standard representatives as integers, for serialisation. Each entry
    /// is its coefficient vector.
    pub fn coefficient_rows(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.ring.coeffs(self.get(i, j))).collect())
            .collect()
    }

    fn check_shape(&self, o: &RingMatrix) {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        assert!(self.ring == o.ring, "matrices over different rings");
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: GrElem) {
        for j in 0..self.cols {
            let x = self.ring.mul(c, self.get(i, j));
            self.set(i, j, x);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, c: GrElem) {
        for j in 0..self.cols {
            let x = self.ring.add(self.get(dst, j), self.ring.mul(c, self.get(src, j)));
            self.set(dst, j, x);
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, c: GrElem) {
        for i in 0..self.rows {
            let x = self.ring.add(self.get(i, dst), self.ring.mul(c, self.get(i, src)));
            self.set(i, dst, x);
        }
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.ring)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `u * a * v = d` where `d` is diagonal with entries `p^valuations[i]`
/// (valuation `k` meaning zero).
#[derive(Clone, Debug)]
pub struct LocalSmith {
    pub u: RingMatrix,
    pub v: RingMatrix,
    pub valuations: Vec<u32>,
}

pub fn local_smith(a: &RingMatrix) -> LocalSmith {
    let r = a.ring;
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = RingMatrix::identity(r, m);
    let mut v = RingMatrix::identity(r, n);
    let mut vals = Vec::with_capacity(m.min(n));
    for t in 0..m.min(n) {
        let mut best = (r.k(), t, t);
        'search: for i in t..m {
            for j in t..n {
                let w = r.valuation(d.get(i, j));
                if w < best.0 {
                    best = (w, i, j);
                    if w == 0 {
                        break 'search;
                    }
                }
            }
        }
        let (w, pi, pj) = best;
        if w == r.k() {
            vals.resize(m.min(n), r.k());
            break;
        }
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        let unit = r.div_p_pow(d.get(t, t), w);
        let s = r.inv(unit).expect("unit part of pivot");
        d.scale_row(t, s);
        u.scale_row(t, s);
        for i in t + 1..m {
            let x = d.get(i, t);
            if !x.is_zero() {
                let f = r.neg(r.div_p_pow(x, w));
                d.add_row_multiple(i, t, f);
                u.add_row_multiple(i, t, f);
            }
        }
        for j in t + 1..n {
            let x = d.get(t, j);
            if !x.is_zero() {
                let f = r.neg(r.div_p_pow(x, w));
                d.add_col_multiple(j, t, f);
                v.add_col_multiple(j, t, f);
            }
        }
        vals.push(w);
    }
    LocalSmith { u, v, valuations: vals }
}

/// A generator of the solution module of `a x = 0`, of additive order
/// `p^order_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousGenerator {
    pub vector: Vec<GrElem>,
    pub order_exponent: u32,
}

#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// One solution per right-hand column, as columns of an `n x s` matrix.
    pub particular: RingMatrix,
    /// Generators of the homogeneous solutions, shared by every column.
    pub homogeneous: Vec<HomogeneousGenerator>,
}

impl LinearSolution {
    /// `log_p` of the number of solutions of each column.
    pub fn log_count(&self) -> u64 {
        let e = self.particular.ring.degree() as u64;
        self.homogeneous.iter().map(|g| g.order_exponent as u64 * e).sum()
    }

    /// True when the homogeneous solutions form a free module.
    pub fn is_free(&self) -> bool {
        let k = self.particular.ring.k();
        self.homogeneous.iter().all(|g| g.order_exponent == k)
    }

    pub fn free_rank(&self) -> usize {
        let k = self.particular.ring.k();
        self.homogeneous.iter().filter(|g| g.order_exponent == k).count()
    }
}

/// Solves `a x = b` modulo `p^k`. `None` when some column is inconsistent.
pub fn linear_solve_mod(a: &RingMatrix, b: &RingMatrix) -> Option<LinearSolution> {
    assert_eq!(a.rows, b.rows, "right-hand side has the wrong height");
    let r = a.ring;
    let k = r.k();
    let (m, n) = (a.rows, a.cols);
    let s = local_smith(a);
    let c = s.u.mul(b);
    let mut y = RingMatrix::zeros(r, n, b.cols);
    for col in 0..b.cols {
        for i in 0..m {
            let ci = c.get(i, col);
            let w = if i < n {
                s.valuations.get(i).copied().unwrap_or(k)
            } else {
                k
            };
            if w == k {
                if !ci.is_zero() {
                    return None;
                }
            } else {
                if r.valuation(ci) < w {
                    return None;
                }
                y.set(i, col, r.div_p_pow(ci, w));
            }
        }
    }
    let mut homogeneous = Vec::new();
    for i in 0..n {
        let w = if i < m {
            s.valuations.get(i).copied().unwrap_or(k)
        } else {
            k
        };
        if w == 0 {
            continue;
        }
        // y_i may move by multiples of p^(k-w)
        let col = s.v.column(i);
        let vector = col.iter().map(|&x| r.mul_p_pow(x, k - w)).collect();
        homogeneous.push(HomogeneousGenerator {
            vector,
            order_exponent: w,
        });
    }
    Some(LinearSolution {
        particular: s.v.mul(&y),
        homogeneous,
    })
}

/// Generators of `{x : a x = 0}`.
pub fn kernel(a: &RingMatrix) -> Vec<HomogeneousGenerator> {
    let b = RingMatrix::zeros(a.ring, a.rows, 1);
    linear_solve_mod(a, &b)
        .expect("homogeneous systems are consistent")
        .homogeneous
}

/// Basis of the kernel of a matrix over a field.
pub fn nullspace(a: &RingMatrix) -> Vec<Vec<GrElem>> {
    assert!(a.ring.is_field(), "nullspace expects a field");
    kernel(a).into_iter().map(|g| g.vector).collect()
}

/// Incrementally built basis of a free direct summand of `R^n`, kept in
/// echelon form with unit pivots. Over a field this is an ordinary span.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    ring: GaloisRing,
    dim: usize,
    rows: Vec<Vec<GrElem>>,
    pivots: Vec<usize>,
    // rows[j] = sum_l combos[j][l] * originals[l]
    combos: Vec<Vec<GrElem>>,
    originals: Vec<Vec<GrElem>>,
}

impl SpanBasis {
    pub fn new(ring: GaloisRing, dim: usize) -> Self {
        SpanBasis {
            ring,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            originals: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The accepted vectors, in insertion order.
    pub fn basis(&self) -> &[Vec<GrElem>] {
        &self.originals
    }

    /// Returns the remainder of `v` after reduction and the coefficients of
    /// the subtracted combination of accepted vectors.
    pub fn reduce(&self, v: &[GrElem]) -> (Vec<GrElem>, Vec<GrElem>) {
        assert_eq!(v.len(), self.dim);
        let r = self.ring;
        let mut rem = v.to_vec();
        let mut coeffs = vec![GrElem::ZERO; self.originals.len()];
        for (j, row) in self.rows.iter().enumerate() {
            let c = rem[self.pivots[j]];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in rem.iter_mut().zip(row) {
                *x = r.sub(*x, r.mul(c, y));
            }
            for (x, &y) in coeffs.iter_mut().zip(&self.combos[j]) {
                *x = r.add(*x, r.mul(c, y));
            }
        }
        (rem, coeffs)
    }

    pub fn contains(&self, v: &[GrElem]) -> bool {
        self.reduce(v).0.iter().all(GrElem::is_zero)
    }

    /// Coordinates of `v` in the accepted vectors, if `v` is in the span.
    pub fn coordinates(&self, v: &[GrElem]) -> Option<Vec<GrElem>> {
        let (rem, c) = self.reduce(v);
        rem.iter().all(GrElem::is_zero).then_some(c)
    }

    /// Adds `v` if it is independent modulo `p` of the current span.
    /// Returns whether it was accepted.
    pub fn insert(&mut self, v: &[GrElem]) -> bool {
        let r = self.ring;
        let (rem, coeffs) = self.reduce(v);
        let Some(piv) = rem.iter().position(|&x| r.is_unit(x)) else {
            return false;
        };
        let s = r.inv(rem[piv]).expect("unit pivot");
        let row: Vec<GrElem> = rem.iter().map(|&x| r.mul(s, x)).collect();
        let idx = self.originals.len();
        let mut combo: Vec<GrElem> = coeffs.iter().map(|&c| r.mul(s, r.neg(c))).collect();
        combo.push(s);
        for c in self.combos.iter_mut() {
            c.push(GrElem::ZERO);
        }
        debug_assert_eq!(combo.len(), idx + 1);
        self.rows.push(row);
        self.pivots.push(piv);
        self.combos.push(combo);
        self.originals.push(v.to_vec());
        true
    }
}
