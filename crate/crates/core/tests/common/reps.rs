//! Seeded semisimple fixtures built from known constituents, so the expected
//! block signatures are known independently of the decomposition code.

use std::collections::BTreeMap;

use mrlift_core::exactint::{GaloisRing, RingMatrix};
use mrlift_core::repdecomp::{BlockSignature, GroupRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub name: String,
    pub rep: GroupRep,
    pub expected: Vec<BlockSignature>,
}

fn block_diag(f: GaloisRing, blocks: &[RingMatrix]) -> RingMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = RingMatrix::zeros(f, n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(off + i, off + j, b.get(i, j));
            }
        }
        off += b.rows();
    }
    out
}

fn random_invertible(f: GaloisRing, n: usize, rng: &mut ChaCha8Rng) -> RingMatrix {
    loop {
        let m = RingMatrix::from_fn(f, n, n, |_, _| f.random(rng));
        if m.is_invertible() {
            return m;
        }
    }
}

fn matrix_order(m: &RingMatrix, cap: usize) -> Option<usize> {
    let mut x = m.clone();
    for k in 1..=cap {
        if x.is_identity() {
            return Some(k);
        }
        x = x.mul(m);
    }
    None
}

/// Monic irreducible quadratics `x^2 + a x + b` over `F_p`, as companion
/// matrices, whose order is at most 24.
fn small_quadratic_companions(f: GaloisRing) -> Vec<(RingMatrix, (i64, i64))> {
    let p = f.p() as i64;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 1..p {
            if (0..p).any(|x| (x * x + a * x + b) % p == 0) {
                continue;
            }
            let c = RingMatrix::from_ints(f, 2, 2, &[0, -b, 1, -a]);
            if matrix_order(&c, 24).is_some() {
                out.push((c, (a, b)));
            }
        }
    }
    out
}

/// A cyclic group generated by a conjugated block-diagonal matrix of
/// characters and irreducible quadratic companions.
pub fn cyclic_fixture(p: u64, seed: u64) -> Fixture {
    let f = GaloisRing::prime_field(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quads = small_quadratic_companions(f);
    loop {
        let n = rng.gen_range(2..=6);
        let mut blocks = Vec::new();
        let mut kinds: BTreeMap<(u8, i64, i64), usize> = BTreeMap::new();
        let mut size = 0;
        while size < n {
            if n - size >= 2 && !quads.is_empty() && rng.gen_bool(0.4) {
                let (c, key) = &quads[rng.gen_range(0..quads.len())];
                blocks.push(c.clone());
                *kinds.entry((2, key.0, key.1)).or_default() += 1;
                size += 2;
            } else {
                let l = rng.gen_range(1..p as i64);
                blocks.push(RingMatrix::from_ints(f, 1, 1, &[l]));
                *kinds.entry((1, l, 0)).or_default() += 1;
                size += 1;
            }
        }
        let g = block_diag(f, &blocks);
        let Some(ord) = matrix_order(&g, 24) else { continue };
        if (ord as u64).is_multiple_of(p) {
            continue;
        }
        let conj = random_invertible(f, n, &mut rng);
        let g = conj.mul(&g).mul(&conj.inverse().unwrap());
        let mut expected: Vec<BlockSignature> = kinds
            .iter()
            .map(|(&(deg, _, _), &m)| BlockSignature {
                d: 1,
                m,
                e: deg as usize,
            })
            .collect();
        expected.sort();
        let rep = GroupRep::plain(f, n, vec![g]).unwrap();
        assert_eq!(rep.order(), ord);
        return Fixture {
            name: format!("C{ord} in GL{n}(F{p}) seed {seed}"),
            rep,
            expected,
        };
    }
}

type Perm = Vec<usize>;

fn sign(p: &Perm) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if !seen[i] {
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
    }
    s
}

/// Permutation action on `{x : sum x = 0}` with basis `e_j - e_{k-1}`.
fn standard(f: GaloisRing, p: &Perm) -> RingMatrix {
    let k = p.len();
    let mut m = RingMatrix::zeros(f, k - 1, k - 1);
    for j in 0..k - 1 {
        // e_{p j} - e_{p (k-1)}
        let (a, b) = (p[j], p[k - 1]);
        if a < k - 1 {
            m.set(a, j, f.add(m.get(a, j), f.one()));
        }
        if b < k - 1 {
            m.set(b, j, f.sub(m.get(b, j), f.one()));
        }
    }
    m
}

/// `S4 -> S3` through the action on the three pairings of `{0,1,2,3}`.
fn to_s3(p: &Perm) -> Perm {
    let pairings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    (0..3)
        .map(|i| {
            let (x, y) = pairings[i][0];
            let img = key(p[x], p[y]);
            pairings.iter().position(|pr| pr[0] == img || pr[1] == img).unwrap()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum SymIrrep {
    Trivial,
    Sign,
    Standard,
    StandardSign,
    Two,
}

impl SymIrrep {
    fn dim(self, k: usize) -> usize {
        match self {
            SymIrrep::Trivial | SymIrrep::Sign => 1,
            SymIrrep::Standard | SymIrrep::StandardSign => k - 1,
            SymIrrep::Two => 2,
        }
    }

    fn image(self, f: GaloisRing, p: &Perm) -> RingMatrix {
        match self {
            SymIrrep::Trivial => RingMatrix::identity(f, 1),
            SymIrrep::Sign => RingMatrix::from_ints(f, 1, 1, &[sign(p)]),
            SymIrrep::Standard => standard(f, p),
            SymIrrep::StandardSign => standard(f, p).scale(f.from_int(sign(p))),
            SymIrrep::Two => standard(f, &to_s3(p)),
        }
    }
}

/// `S3` or `S4` acting through a sum of irreducibles, plus optionally a
/// whole permutation representation, conjugated by a random matrix.
pub fn symmetric_fixture(p: u64, seed: u64) -> Fixture {
    let f = GaloisRing::prime_field(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = if rng.gen_bool(0.5) { 3 } else { 4 };
    let pool: Vec<SymIrrep> = if k == 3 {
        vec![SymIrrep::Trivial, SymIrrep::Sign, SymIrrep::Standard]
    } else {
        vec![
            SymIrrep::Trivial,
            SymIrrep::Sign,
            SymIrrep::Standard,
            SymIrrep::StandardSign,
            SymIrrep::Two,
        ]
    };
    loop {
        let n_target = rng.gen_range(2..=6);
        let mut parts: Vec<SymIrrep> = Vec::new();
        let mut size = 0;
        while size < n_target {
            let c = pool[rng.gen_range(0..pool.len())];
            if size + c.dim(k) <= 6 {
                parts.push(c);
                size += c.dim(k);
            } else {
                break;
            }
        }
        // the representation must be faithful on a generating pair to give
        // S_k itself; require a constituent of dimension k - 1
        if !parts
            .iter()
            .any(|c| matches!(c, SymIrrep::Standard | SymIrrep::StandardSign))
        {
            continue;
        }
        let s: Perm = {
            let mut v: Perm = (0..k).collect();
            v.swap(0, 1);
            v
        };
        let c: Perm = (0..k).map(|i| (i + 1) % k).collect();
        let gens: Vec<RingMatrix> = [s, c]
            .iter()
            .map(|g| block_diag(f, &parts.iter().map(|x| x.image(f, g)).collect::<Vec<_>>()))
            .collect();
        let conj = random_invertible(f, size, &mut rng);
        let ci = conj.inverse().unwrap();
        let gens: Vec<RingMatrix> = gens.iter().map(|g| conj.mul(g).mul(&ci)).collect();
        let rep = GroupRep::plain(f, size, gens).unwrap();
        assert_eq!(rep.order(), if k == 3 { 6 } else { 24 });
        let mut counts: BTreeMap<SymIrrep, usize> = BTreeMap::new();
        for x in &parts {
            *counts.entry(*x).or_default() += 1;
        }
        let mut expected: Vec<BlockSignature> = counts
            .iter()
            .map(|(x, &m)| BlockSignature { d: x.dim(k), m, e: 1 })
            .collect();
        expected.sort();
        return Fixture {
            name: format!("S{k} in GL{size}(F{p}) seed {seed}"),
            rep,
            expected,
        };
    }
}

/// The 25 seeded double-centraliser fixtures.
pub fn double_centralizer_fixtures() -> Vec<Fixture> {
    let primes = [5, 7, 11];
    (0..25u64)
        .map(|i| {
            let p = primes[i as usize % 3];
            if i % 5 < 3 {
                cyclic_fixture(p, 100 + i)
            } else {
                symmetric_fixture(p, 200 + i)
            }
        })
        .collect()
}

/// Quaternion group in `SL_2(F_7)`: `i`, `j` with `i^2 = j^2 = -1`.
pub fn q8_over_f7() -> (GaloisRing, RingMatrix, RingMatrix) {
    let f = GaloisRing::prime_field(7).unwrap();
    let i = RingMatrix::from_ints(f, 2, 2, &[0, -1, 1, 0]);
    let j = RingMatrix::from_ints(f, 2, 2, &[2, 3, 3, -2]);
    (f, i, j)
}
