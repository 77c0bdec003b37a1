//! Root data: a root system placed in a character lattice `X` with coroots
//! in the cocharacter lattice `Y = Hom(X, Z)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::cartan::CartanType;
use super::system::RootSystem;
use super::RootDatumError;
use crate::exactint::intmat::{rational_rank, row_lattice_basis, LatticeMembership};
use crate::exactint::{quotient_shape, IntMatrix, QuotientShape};

/// Which lattice between the root and weight lattice `X` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsogenyClass {
    SimplyConnected,
    Adjoint,
    /// Generators of an intermediate lattice, as rows in fundamental-weight
    /// coordinates of the semisimple part. The root lattice is added.
    Custom(IntMatrix),
}

impl FromStr for IsogenyClass {
    type Err = RootDatumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sc" | "simply_connected" | "simply-connected" => Ok(IsogenyClass::SimplyConnected),
            "ad" | "adjoint" => Ok(IsogenyClass::Adjoint),
            _ => Err(RootDatumError::InvalidType(format!("unknown isogeny class '{s}'"))),
        }
    }
}

/// Either a Cartan type or the `GL_n` preset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeSpec {
    Cartan(CartanType),
    GeneralLinear(usize),
}

impl FromStr for TypeSpec {
    type Err = RootDatumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = t.strip_prefix("GL") {
            let inner = rest.strip_prefix('n').unwrap_or(rest);
            let inner = inner
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .unwrap_or(inner);
            let n: usize = inner
                .parse()
                .map_err(|_| RootDatumError::InvalidType(format!("cannot read GL size in '{s}'")))?;
            if n == 0 || n > 9 {
                return Err(RootDatumError::InvalidType(format!("GL_{n} is outside 1..=9")));
            }
            return Ok(TypeSpec::GeneralLinear(n));
        }
        Ok(TypeSpec::Cartan(t.parse()?))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    root_system: RootSystem,
    label: String,
    x_rank: usize,
    // simple roots as rows in X, simple coroots as rows in Y
    simple_roots_x: IntMatrix,
    simple_coroots_y: IntMatrix,
    roots_x: Vec<Vec<i64>>,
    coroots_y: Vec<Vec<i64>>,
}

/// `X / ZPhi` and `Y / ZPhi^vee`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CenterAndPi1 {
    /// Character group of the centre.
    pub center_characters: QuotientShape,
    /// Fundamental group.
    pub pi1: QuotientShape,
}

impl RootDatum {
    pub fn from_type(t: &CartanType, iso: &IsogenyClass) -> Result<Self, RootDatumError> {
        let rs = RootSystem::new(t)?;
        let r = rs.rank();
        let a = rs.cartan_matrix();
        let basis = match iso {
            IsogenyClass::SimplyConnected => IntMatrix::identity(r),
            IsogenyClass::Adjoint => a.clone(),
            IsogenyClass::Custom(gens) => {
                if gens.cols() != r {
                    return Err(RootDatumError::InvalidLattice(format!(
                        "generators have {} columns, expected {r}",
                        gens.cols()
                    )));
                }
                let b = row_lattice_basis(&gens.vstack(&a));
                if b.rows() != r {
                    return Err(RootDatumError::InvalidLattice("lattice does not have full rank".into()));
                }
                b
            }
        };
        // X-coordinates of alpha_i solve x * B = row_i(A)
        let member = LatticeMembership::new(&basis);
        let mut r_mat = IntMatrix::zeros(r, r);
        for i in 0..r {
            let x = member
                .solve(a.row(i))
                .ok_or_else(|| RootDatumError::InvalidLattice("lattice does not contain the root lattice".into()))?;
            for (j, v) in x.into_iter().enumerate() {
                r_mat[(i, j)] = v;
            }
        }
        let c_mat = basis.transpose();
        let n = r + t.torus_rank;
        let pad =
            |m: &IntMatrix| IntMatrix::from_fn(r, n, |i, j| if j < r { m[(i, j)].clone() } else { BigInt::from(0) });
        let iso_label = match iso {
            IsogenyClass::SimplyConnected => "sc",
            IsogenyClass::Adjoint => "ad",
            IsogenyClass::Custom(_) => "custom",
        };
        Self::assemble(rs, format!("{t} ({iso_label})"), n, pad(&r_mat), pad(&c_mat))
    }

    /// `GL_n`: `X = Y = Z^n`, roots and coroots `e_i - e_{i+1}`.
    pub fn general_linear(n: usize) -> Result<Self, RootDatumError> {
        if n == 0 {
            return Err(RootDatumError::InvalidType("GL_0".into()));
        }
        let t: CartanType = if n == 1 {
            "T1".parse()?
        } else {
            format!("A{}+T1", n - 1).parse()?
        };
        let rs = RootSystem::new(&t)?;
        let rows: Vec<Vec<i64>> = (0..n - 1)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        let m = IntMatrix::from_rows(&rows, n);
        Self::assemble(rs, format!("GL{n}"), n, m.clone(), m)
    }

    pub fn from_spec(spec: &TypeSpec, iso: &IsogenyClass) -> Result<Self, RootDatumError> {
        match spec {
            TypeSpec::Cartan(t) => Self::from_type(t, iso),
            TypeSpec::GeneralLinear(n) => Self::general_linear(*n),
        }
    }

    fn assemble(
        rs: RootSystem,
        label: String,
        x_rank: usize,
        simple_roots_x: IntMatrix,
        simple_coroots_y: IntMatrix,
    ) -> Result<Self, RootDatumError> {
        let r = rs.rank();
        // <alpha_i, alpha_j^vee> must reproduce the Cartan matrix
        let pairing = simple_roots_x.mul(&simple_coroots_y.transpose());
        if pairing != rs.cartan_matrix() {
            return Err(RootDatumError::Inconsistent(
                "pairing does not reproduce the Cartan matrix".into(),
            ));
        }
        let sr = simple_roots_x.to_i64_rows();
        let sc = simple_coroots_y.to_i64_rows();
        let combine = |coeffs: &[i64], rows: &[Vec<i64>]| -> Vec<i64> {
            (0..x_rank)
                .map(|j| (0..r).map(|i| coeffs[i] * rows[i][j]).sum())
                .collect()
        };
        let roots_x = rs.roots().iter().map(|c| combine(c, &sr)).collect();
        let coroots_y = (0..rs.num_roots()).map(|i| combine(rs.coroot(i), &sc)).collect();
        Ok(RootDatum {
            root_system: rs,
            label,
            x_rank,
            simple_roots_x,
            simple_coroots_y,
            roots_x,
            coroots_y,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Rank of `X`.
    pub fn rank(&self) -> usize {
        self.x_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn simple_roots_x(&self) -> &IntMatrix {
        &self.simple_roots_x
    }

    pub fn simple_coroots_y(&self) -> &IntMatrix {
        &self.simple_coroots_y
    }

    pub fn root_x(&self, i: usize) -> &[i64] {
        &self.roots_x[i]
    }

    pub fn coroot_y(&self, i: usize) -> &[i64] {
        &self.coroots_y[i]
    }

    /// The perfect pairing `X x Y -> Z` in the chosen bases.
    pub fn pairing_matrix(&self) -> IntMatrix {
        IntMatrix::identity(self.x_rank)
    }

    pub fn center_and_pi1(&self) -> CenterAndPi1 {
        CenterAndPi1 {
            center_characters: quotient_shape(&self.simple_roots_x),
            pi1: quotient_shape(&self.simple_coroots_y),
        }
    }

    /// Swaps the roles of `X` and `Y`.
    pub fn dual(&self) -> RootDatum {
        let rs = self.root_system.dual();
        RootDatum::assemble(
            rs,
            format!("dual of {}", self.label),
            self.x_rank,
            self.simple_coroots_y.clone(),
            self.simple_roots_x.clone(),
        )
        .expect("dual datum is consistent")
    }

    /// `|X / ZPhi|_{tors}` for the sublattice spanned by the given roots.
    pub fn root_sublattice_shape(&self, roots: &[usize]) -> QuotientShape {
        let rows: Vec<Vec<i64>> = roots.iter().map(|&i| self.roots_x[i].clone()).collect();
        quotient_shape(&IntMatrix::from_rows(&rows, self.x_rank))
    }

    pub fn coroot_sublattice_shape(&self, roots: &[usize]) -> QuotientShape {
        let rows: Vec<Vec<i64>> = roots.iter().map(|&i| self.coroots_y[i].clone()).collect();
        quotient_shape(&IntMatrix::from_rows(&rows, self.x_rank))
    }

    pub fn is_semisimple(&self) -> bool {
        rational_rank(&self.simple_roots_x) == self.x_rank
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}
