//! Root systems in simple-root coordinates.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;

use super::cartan::CartanType;
use super::RootDatumError;
use crate::exactint::IntMatrix;

/// Roots and coroots of a (possibly reducible) reduced root system plus the
/// rank of a central torus. Roots are stored in simple-root coordinates,
/// coroots in simple-coroot coordinates; index `i < N` is positive and
/// `i + N` is its negative.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n_pos: usize,
}

impl RootSystem {
    pub fn new(cartan_type: &CartanType) -> Result<Self, RootDatumError> {
        Self::from_cartan(cartan_type.clone(), cartan_type.cartan_matrix())
    }

    /// Root system of the dual datum; the Cartan matrix is transposed.
    pub fn dual(&self) -> RootSystem {
        let r = self.rank();
        let t: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| self.cartan[j][i]).collect()).collect();
        Self::from_cartan(self.cartan_type.dual(), t).expect("dual of a valid Cartan matrix")
    }

    fn from_cartan(cartan_type: CartanType, cartan: Vec<Vec<i64>>) -> Result<Self, RootDatumError> {
        let r = cartan.len();
        let lengths = symmetrizer(&cartan)?;
        // positive roots by increasing height, via root strings
        let mut pos: Vec<Vec<i64>> = (0..r).map(|j| unit(r, j)).collect();
        let mut seen: HashSet<Vec<i64>> = pos.iter().cloned().collect();
        let mut layer = pos.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..r {
                    if *beta == unit(r, i) {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if !seen.contains(&down) {
                            break;
                        }
                        p += 1;
                    }
                    let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            pos.extend(next.iter().cloned());
            layer = next;
            if pos.len() > 10_000 {
                return Err(RootDatumError::InvalidType(
                    "Cartan matrix is not of finite type".into(),
                ));
            }
        }
        pos.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        let mut coroots = Vec::with_capacity(roots.len());
        for beta in &roots {
            let mut norm2 = 0; // (beta, beta)
            for i in 0..r {
                for j in 0..r {
                    norm2 += beta[i] * beta[j] * cartan[i][j] * lengths[j];
                }
            }
            let lb = norm2 / 2;
            let mut cv = vec![0; r];
            for j in 0..r {
                let num = beta[j] * lengths[j];
                if num % lb != 0 {
                    return Err(RootDatumError::Inconsistent("non-integral coroot".into()));
                }
                cv[j] = num / lb;
            }
            coroots.push(cv);
        }
        let index = roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let rs = RootSystem {
            cartan_type,
            cartan,
            lengths,
            roots,
            coroots,
            index,
            n_pos,
        };
        for i in 0..rs.num_roots() {
            if rs.pairing(i, i) != 2 {
                return Err(RootDatumError::Inconsistent("<beta, beta^vee> != 2".into()));
            }
        }
        Ok(rs)
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn torus_rank(&self) -> usize {
        self.cartan_type.torus_rank
    }

    /// Rank of the ambient torus: semisimple rank plus central torus.
    pub fn ambient_rank(&self) -> usize {
        self.rank() + self.torus_rank()
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_rows(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.cartan, self.rank())
    }

    /// Identity matrix: simple roots in their own coordinates.
    pub fn simple_roots(&self) -> IntMatrix {
        IntMatrix::identity(self.rank())
    }

    /// Half squared lengths of the simple roots, integral and coprime on
    /// each component.
    pub fn simple_lengths(&self) -> &[i64] {
        &self.lengths
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Index of the `j`-th simple root.
    pub fn simple_index(&self, j: usize) -> usize {
        j
    }

    pub fn negative(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// `<beta_i, beta_j^vee>`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        let (b, c) = (&self.roots[i], &self.coroots[j]);
        let r = self.rank();
        let mut s = 0;
        for a in 0..r {
            if b[a] == 0 {
                continue;
            }
            for l in 0..r {
                s += b[a] * c[l] * self.cartan[a][l];
            }
        }
        s
    }

    /// Index of `s_j(beta_i)`.
    pub fn reflect(&self, i: usize, j: usize) -> usize {
        let c = self.pairing(i, j);
        let v: Vec<i64> = self.roots[i]
            .iter()
            .zip(&self.roots[j])
            .map(|(a, b)| a - c * b)
            .collect();
        self.index[&v]
    }

    /// `(beta_i, beta_i)` in the normalisation of `simple_lengths`, doubled.
    pub fn norm2(&self, i: usize) -> i64 {
        let b = &self.roots[i];
        let r = self.rank();
        let mut s = 0;
        for a in 0..r {
            for l in 0..r {
                s += b[a] * b[l] * self.cartan[a][l] * self.lengths[l];
            }
        }
        s
    }

    /// Support of a root: simple roots with nonzero coefficient.
    pub fn support(&self, i: usize) -> Vec<usize> {
        self.roots[i]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, _)| j)
            .collect()
    }

    /// Roots whose support lies in `subset`.
    pub fn roots_supported_in(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.num_roots())
            .filter(|&i| {
                self.roots[i]
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0 || subset.contains(&j))
            })
            .collect()
    }

    /// Permutation of root indices induced by each simple reflection.
    pub fn simple_reflection_permutations(&self) -> Vec<Vec<u16>> {
        (0..self.rank())
            .map(|j| (0..self.num_roots()).map(|i| self.reflect(i, j) as u16).collect())
            .collect()
    }

    /// Connected components of the Dynkin diagram.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut seen = vec![false; r];
        let mut comps = Vec::new();
        for s in 0..r {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut q = VecDeque::from([s]);
            seen[s] = true;
            while let Some(i) = q.pop_front() {
                comp.push(i);
                for j in 0..r {
                    if !seen[j] && self.cartan[i][j] != 0 {
                        seen[j] = true;
                        q.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

fn unit(r: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[j] = 1;
    v
}

// d_j with A_ij d_j = A_ji d_i; d_j is (alpha_j, alpha_j)/2 up to scale
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>, RootDatumError> {
    let r = a.len();
    let mut d = vec![0i64; r];
    for s in 0..r {
        if d[s] != 0 {
            continue;
        }
        d[s] = 6;
        let mut comp = vec![s];
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return Err(RootDatumError::Inconsistent(
                        "Cartan matrix is not symmetrisable".into(),
                    ));
                }
                let num = a[j][i] * d[i];
                if num % a[i][j] != 0 {
                    return Err(RootDatumError::Inconsistent("unsupported length ratio".into()));
                }
                let dj = num / a[i][j];
                if d[j] == 0 {
                    d[j] = dj;
                    comp.push(j);
                    q.push_back(j);
                } else if d[j] != dj {
                    return Err(RootDatumError::Inconsistent(
                        "Cartan matrix is not symmetrisable".into(),
                    ));
                }
            }
        }
        let g = comp.iter().fold(0i64, |g, &i| g.gcd(&d[i]));
        for &i in &comp {
            d[i] /= g;
        }
    }
    Ok(d)
}
