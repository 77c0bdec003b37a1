use mrlift_core::exactint::{GaloisRing, RingMatrix};
use mrlift_core::mrlift::ResidualGaloisData;
use mrlift_core::repdecomp::GroupRep;

pub struct LiftFixture {
    pub name: &'static str,
    pub data: ResidualGaloisData,
    pub k: u32,
}

pub fn m(f: GaloisRing, n: usize, xs: &[i64]) -> RingMatrix {
    RingMatrix::from_ints(f, n, n, xs)
}

fn fixture(
    name: &'static str,
    f: GaloisRing,
    n: usize,
    gens: Vec<RingMatrix>,
    sigma: RingMatrix,
    phi: RingMatrix,
    q: u64,
    k: u32,
) -> LiftFixture {
    let rep = GroupRep::new(f, n, gens, sigma, phi, q).unwrap_or_else(|e| panic!("{name}: {e}"));
    let data = ResidualGaloisData::new(rep).unwrap();
    LiftFixture { name, data, k }
}

fn conj(x: &RingMatrix, by: &RingMatrix) -> RingMatrix {
    by.mul(x).mul(&by.inverse().unwrap())
}

/// Trivial group, unipotent sigma, q = 4 over F_5.
pub fn q4() -> LiftFixture {
    let f = GaloisRing::prime_field(5).unwrap();
    fixture("q4", f, 2, vec![], m(f, 2, &[1, 1, 0, 1]), m(f, 2, &[4, 0, 0, 1]), 4, 3)
}

pub fn sign_split() -> LiftFixture {
    let f = GaloisRing::prime_field(5).unwrap();
    let i = RingMatrix::identity(f, 2);
    fixture("sign_split", f, 2, vec![m(f, 2, &[1, 0, 0, -1])], i.clone(), i, 2, 3)
}

/// Order-4 companion over F_7; the swap realises the Frobenius of F_49.
pub fn companion() -> LiftFixture {
    let f = GaloisRing::prime_field(7).unwrap();
    let c = m(f, 2, &[0, 1, 6, 0]);
    fixture(
        "companion",
        f,
        2,
        vec![c],
        RingMatrix::identity(f, 2),
        m(f, 2, &[0, 1, 1, 0]),
        11,
        3,
    )
}

/// `Q8` in `SL_2(F_3)`, normalised by a transvection acting with order 3.
pub fn q8_wild() -> LiftFixture {
    let f = GaloisRing::prime_field(3).unwrap();
    let i = m(f, 2, &[0, -1, 1, 0]);
    let j = m(f, 2, &[1, 1, 1, -1]);
    fixture(
        "q8_wild",
        f,
        2,
        vec![i, j],
        m(f, 2, &[1, 1, 0, 1]),
        m(f, 2, &[1, 0, 0, -1]),
        2,
        3,
    )
}

/// Jordan type (2,1), conjugated by a fixed invertible matrix.
pub fn jordan_21() -> LiftFixture {
    let f = GaloisRing::prime_field(7).unwrap();
    let p = m(f, 3, &[1, 2, 0, 0, 1, 3, 1, 0, 2]);
    let sigma = conj(&m(f, 3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]), &p);
    let phi = conj(&m(f, 3, &[6, 0, 0, 0, 1, 0, 0, 0, 1]), &p);
    fixture("jordan_21", f, 3, vec![], sigma, phi, 6, 3)
}

/// Two isotypic blocks of multiplicity 2, each carrying a Jordan block.
pub fn two_blocks() -> LiftFixture {
    let f = GaloisRing::prime_field(5).unwrap();
    let g = m(f, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1]);
    let sigma = m(f, 4, &[1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1]);
    let phi = m(f, 4, &[2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1]);
    fixture("two_blocks", f, 4, vec![g], sigma, phi, 2, 3)
}

/// Coefficients in F_25: `diag(w, w^5)` for a generator `w` of the unit
/// group, with the swap as Frobenius and `q = 29`.
pub fn f25_pair() -> LiftFixture {
    let f = GaloisRing::new(5, 1, 2).unwrap();
    let w = f
        .residue_elements()
        .into_iter()
        .find(|&x| f.is_unit(x) && (1..24u128).all(|d| 24 % d != 0 || f.pow(x, d) != f.one()))
        .unwrap();
    let g = RingMatrix::from_elems(f, 2, 2, vec![w, f.zero(), f.zero(), f.pow(w, 5)]);
    fixture(
        "f25_pair",
        f,
        2,
        vec![g],
        RingMatrix::identity(f, 2),
        m(f, 2, &[0, 1, 1, 0]),
        29,
        2,
    )
}

pub fn all() -> Vec<LiftFixture> {
    vec![
        q4(),
        sign_split(),
        companion(),
        q8_wild(),
        jordan_21(),
        two_blocks(),
        f25_pair(),
    ]
}
