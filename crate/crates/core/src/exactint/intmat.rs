//! Dense integer matrices and Smith normal form over `Z`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::factorize;
use super::ExactError;

/// Row-major matrix of arbitrary precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows of machine integers. `cols` is needed so that
    /// a matrix with no rows still has a well defined width.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_i64(&self, i: usize) -> Vec<i64> {
        self.row(i)
            .iter()
            .map(|x| x.to_i64().expect("entry fits in i64"))
            .collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row_i64(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
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

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(src, j)] * c;
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, src)] * c;
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let t = -&self[(i, j)];
            self[(i, j)] = t;
        }
    }

    /// Determinant via the Smith form; only used on small square matrices.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let s = smith_normal_form(self);
        let mut d = BigInt::one();
        for i in 0..self.rows {
            d *= &s.d[(i, i)];
        }
        // U and V are unimodular, so only their signs matter
        d * unimodular_sign(&s.u) * unimodular_sign(&s.v)
    }
}

// Sign of det(M) for a unimodular M, computed by fraction-free elimination.
fn unimodular_sign(m: &IntMatrix) -> BigInt {
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let piv = (k + 1..n).find(|&i| !a[(i, k)].is_zero()).expect("unimodular");
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = t / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = if n == 0 {
        BigInt::one()
    } else {
        a[(n - 1, n - 1)].clone()
    };
    sign * det.signum()
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, each nonzero
/// diagonal entry positive and dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols))
            .take_while(|&i| !self.d[(i, i)].is_zero())
            .count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility fix-up: fold an offending row into the pivot row
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let one = BigInt::one();
                d.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            if pivot.is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    SmithForm { u, d, v }
}

/// Nonzero invariant factors of `m`.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariant_factors()
}

/// Shape of `Z^n / L` where `L` is the row span of a matrix with `n` columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct QuotientShape {
    /// Invariant factors larger than one.
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl QuotientShape {
    pub fn torsion_order(&self) -> u128 {
        self.torsion.iter().map(|&t| t as u128).product()
    }

    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .torsion
            .iter()
            .flat_map(|&t| {
                factorize(&BigUint::from(t))
                    .into_iter()
                    .map(|(p, _)| p.to_u64().unwrap())
            })
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

pub fn quotient_shape(m: &IntMatrix) -> QuotientShape {
    let inv = invariant_factors(m);
    let torsion = inv
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().expect("invariant factor fits in u64"))
        .collect();
    QuotientShape {
        torsion,
        free_rank: m.cols - inv.len(),
    }
}

/// Primes dividing the torsion of `Z^n / rowspan(m)`.
pub fn quotient_torsion_primes(m: &IntMatrix) -> Vec<u64> {
    quotient_shape(m).torsion_primes()
}

/// Membership test for an integer row lattice, built once from a Smith form.
pub struct LatticeMembership {
    smith: SmithForm,
    rank: usize,
}

impl LatticeMembership {
    pub fn new(generators: &IntMatrix) -> Self {
        let smith = smith_normal_form(generators);
        let rank = smith.rank();
        LatticeMembership { smith, rank }
    }

    /// Coordinates `x` with `x * generators = w` if `w` lies in the lattice.
    pub fn solve(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        // x G = w  <=>  (x U^-1) D = w V
        let v = &self.smith.v;
        let n = v.rows;
        assert_eq!(w.len(), n);
        let mut y = vec![BigInt::zero(); self.smith.u.rows];
        for j in 0..n {
            let mut s = BigInt::zero();
            for l in 0..n {
                s += &w[l] * &v[(l, j)];
            }
            if j < self.rank {
                let (q, rem) = s.div_rem(&self.smith.d[(j, j)]);
                if !rem.is_zero() {
                    return None;
                }
                y[j] = q;
            } else if !s.is_zero() {
                return None;
            }
        }
        // x = y U
        let u = &self.smith.u;
        Some(
            (0..u.cols)
                .map(|j| (0..u.rows).fold(BigInt::zero(), |acc, i| acc + &y[i] * &u[(i, j)]))
                .collect(),
        )
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        self.solve(w).is_some()
    }

    pub fn contains_i64(&self, w: &[i64]) -> bool {
        let w: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Rank over `Q`.
pub fn rational_rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Basis of the row span of `m`, as a full-row-rank matrix.
pub fn row_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let r = s.rank();
    let um = s.u.mul(m);
    um.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Solves `x * b = v` over `Q` for square invertible `b`, returning `None`
/// when the unique rational solution is not integral.
pub fn solve_left_integral(b: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, ExactError> {
    if b.rows != b.cols || rational_rank(b) != b.rows {
        return Err(ExactError::Singular);
    }
    Ok(LatticeMembership::new(b).solve(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols)
    }

    #[test]
    fn smith_of_cartan_g2() {
        let a = m(&[&[2, -1], &[-3, 2]]);
        assert_eq!(invariant_factors(&a), vec![BigInt::from(1), BigInt::from(1)]);
        let b2 = m(&[&[2, -2], &[-1, 2]]);
        assert_eq!(invariant_factors(&b2), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = m(&[&[4, 6, 2], &[6, 9, 15], &[2, 3, 8], &[0, 0, 12]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().abs(), BigInt::one());
    }

    #[test]
    fn membership() {
        let l = LatticeMembership::new(&m(&[&[2, 0], &[0, 3]]));
        assert!(l.contains_i64(&[4, 9]));
        assert!(!l.contains_i64(&[1, 0]));
        assert_eq!(quotient_torsion_primes(&m(&[&[2, 0], &[0, 3]])), vec![2, 3]);
        assert_eq!(quotient_shape(&m(&[&[2, 0, 0]])).free_rank, 2);
    }

    #[test]
    fn determinant_signs() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(
            m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]).determinant(),
            BigInt::from(4)
        );
    }
}
