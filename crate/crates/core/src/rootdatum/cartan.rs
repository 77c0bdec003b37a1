//! Cartan types and their Cartan matrices (Bourbaki numbering).

use std::fmt;
use std::str::FromStr;

use super::RootDatumError;

pub const MAX_SEMISIMPLE_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootDatumError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(RootDatumError::InvalidType(format!(
                "{family:?}{rank} is not a Dynkin type"
            )));
        }
        Ok(SimpleFactor { family, rank })
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// The dual factor (`B_n` and `C_n` swap).
    pub fn dual(&self) -> SimpleFactor {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        SimpleFactor {
            family,
            rank: self.rank,
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        // entries are <alpha_i, alpha_j^vee>; long root against short coroot
        // gives the larger magnitude
        match self.family {
            Family::B => a[n - 2][n - 1] = -2,
            Family::C => a[n - 1][n - 2] = -2,
            Family::F => a[1][2] = -2,
            Family::G => a[1][0] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// A product of simple types and a torus, e.g. `A3xA1+T2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct CartanType {
    pub factors: Vec<SimpleFactor>,
    pub torus_rank: usize,
}

impl CartanType {
    pub fn new(factors: Vec<SimpleFactor>, torus_rank: usize) -> Result<Self, RootDatumError> {
        let t = CartanType { factors, torus_rank };
        if t.semisimple_rank() > MAX_SEMISIMPLE_RANK {
            return Err(RootDatumError::RankTooLarge(t.semisimple_rank()));
        }
        Ok(t)
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self, RootDatumError> {
        Self::new(vec![SimpleFactor::new(family, rank)?], 0)
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.torus_rank
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(SimpleFactor::weyl_order).product()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.torus_rank == 0
    }

    pub fn dual(&self) -> CartanType {
        CartanType {
            factors: self.factors.iter().map(SimpleFactor::dual).collect(),
            torus_rank: self.torus_rank,
        }
    }

    /// Block diagonal Cartan matrix of the semisimple part.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.semisimple_rank();
        let mut a = vec![vec![0i64; r]; r];
        let mut off = 0;
        for f in &self.factors {
            let b = f.cartan_matrix();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    a[off + i][off + j] = b[i][j];
                }
            }
            off += f.rank;
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        match (parts.is_empty(), self.torus_rank) {
            (true, 0) => write!(f, "T0"),
            (true, t) => write!(f, "T{t}"),
            (false, 0) => write!(f, "{}", parts.join("x")),
            (false, t) => write!(f, "{}+T{t}", parts.join("x")),
        }
    }
}

fn parse_rank(s: &str, at: usize, whole: &str) -> Result<usize, RootDatumError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RootDatumError::InvalidType(format!(
            "expected a rank at position {at} in '{whole}'"
        )));
    }
    s.parse()
        .map_err(|_| RootDatumError::InvalidType(format!("rank out of range at position {at} in '{whole}'")))
}

/// Grammar: `T<r>`, or simple factors `<family><rank>` joined by `x` with an
/// optional `+T<r>` suffix. Whitespace is ignored; error positions count
/// characters of the input with whitespace removed.
impl FromStr for CartanType {
    type Err = RootDatumError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(RootDatumError::InvalidType("empty type".into()));
        }
        if !s.is_ascii() {
            let at = s.chars().position(|c| !c.is_ascii()).unwrap_or(0);
            return Err(RootDatumError::InvalidType(format!(
                "unexpected character at position {at} in '{s}'"
            )));
        }
        if let Some(rest) = s.strip_prefix('T') {
            let t = parse_rank(rest, 1, &s)?;
            if t == 0 {
                return Err(RootDatumError::InvalidType("torus of rank 0".into()));
            }
            return CartanType::new(Vec::new(), t);
        }
        let (ss, torus) = match s.split_once("+T") {
            Some((a, b)) => (a, parse_rank(b, a.len() + 2, &s)?),
            None => (s.as_str(), 0),
        };
        let mut factors = Vec::new();
        let mut at = 0;
        for part in ss.split('x') {
            let mut chars = part.chars();
            let fam = chars
                .next()
                .and_then(Family::from_char)
                .ok_or_else(|| RootDatumError::InvalidType(format!("unknown family at position {at} in '{s}'")))?;
            factors.push(SimpleFactor::new(fam, parse_rank(chars.as_str(), at + 1, &s)?)?);
            at += part.len() + 1;
        }
        CartanType::new(factors, torus)
    }
}
