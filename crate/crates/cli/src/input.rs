//! The JSON input format for `lift`.
//!
//! ```json
//! { "p": 5, "e": 1, "n": 2, "q": 4, "k_default": 3,
//!   "generators": [], "sigma": [1, 1, 0, 1], "phi": [4, 0, 0, 1] }
//! ```
//!
//! Matrices are row-major arrays of `n * n` entries. An entry is an integer,
//! or when `e > 1` an array of coefficients (constant term first) in the
//! generator of the residue field. `sigma` and `phi` default to the identity.

use serde::{Deserialize, Serialize};

use mrlift_core::exactint::{GaloisRing, GrElem, RingMatrix};
use mrlift_core::repdecomp::{GroupRep, RepError};

pub const DEFAULT_PRECISION: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Coeffs(Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRepInput {
    pub p: u64,
    #[serde(default = "one")]
    pub e: usize,
    pub n: usize,
    pub q: u64,
    #[serde(default, alias = "k", alias = "k-default", skip_serializing_if = "Option::is_none")]
    pub k_default: Option<u32>,
    #[serde(default)]
    pub generators: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Entry>>,
}

fn one() -> usize {
    1
}

fn entry(f: GaloisRing, x: &Entry) -> Result<GrElem, RepError> {
    match x {
        Entry::Int(v) => Ok(f.from_int(*v)),
        Entry::Coeffs(c) => Ok(f.from_coeffs(c)?),
    }
}

fn matrix(f: GaloisRing, n: usize, what: &str, xs: &[Entry]) -> Result<RingMatrix, RepError> {
    if xs.len() != n * n {
        return Err(RepError::Shape(format!(
            "{what} has {} entries, expected {}",
            xs.len(),
            n * n
        )));
    }
    let elems = xs.iter().map(|x| entry(f, x)).collect::<Result<Vec<_>, _>>()?;
    Ok(RingMatrix::from_elems(f, n, n, elems))
}

impl GroupRepInput {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn precision(&self) -> u32 {
        self.k_default.unwrap_or(DEFAULT_PRECISION)
    }

    pub fn to_rep(&self) -> Result<GroupRep, RepError> {
        let f = GaloisRing::new(self.p, 1, self.e)?;
        let n = self.n;
        if n == 0 {
            return Err(RepError::Shape("n must be positive".into()));
        }
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| matrix(f, n, &format!("generator {i}"), g))
            .collect::<Result<Vec<_>, _>>()?;
        let sigma = match &self.sigma {
            Some(s) => matrix(f, n, "sigma", s)?,
            None => RingMatrix::identity(f, n),
        };
        let phi = match &self.phi {
            Some(s) => matrix(f, n, "phi", s)?,
            None => RingMatrix::identity(f, n),
        };
        GroupRep::new(f, n, gens, sigma, phi, self.q)
    }
}

/// Rows of a matrix, each entry an integer or (for `e > 1`) a coefficient
/// array.
pub fn matrix_rows(m: &RingMatrix) -> Vec<Vec<Entry>> {
    let ring = m.ring();
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let c = ring.coeffs(m.get(i, j));
                    if ring.degree() == 1 {
                        Entry::Int(c[0] as i64)
                    } else {
                        Entry::Coeffs(c.into_iter().map(|x| x as i64).collect())
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_defaults() {
        let s = r#"{"p": 5, "n": 2, "q": 4, "sigma": [1, 1, 0, 1], "phi": [4, 0, 0, 1]}"#;
        let inp = GroupRepInput::parse(s).unwrap();
        assert_eq!(inp.e, 1);
        assert_eq!(inp.precision(), DEFAULT_PRECISION);
        let rep = inp.to_rep().unwrap();
        assert_eq!(rep.order(), 1);
        assert!(GroupRepInput::parse(r#"{"p": 5, "n": 2, "q": 4, "extra": 1}"#).is_err());
    }

    #[test]
    fn coefficient_entries() {
        let s = r#"{"p": 5, "e": 2, "n": 1, "q": 29, "k": 2, "generators": [[[0, 1]]]}"#;
        let inp = GroupRepInput::parse(s).unwrap();
        assert_eq!(inp.precision(), 2);
        let rep = inp.to_rep().unwrap();
        assert_eq!(rep.order(), 24);
        let bad = r#"{"p": 5, "n": 2, "q": 4, "sigma": [1, 1, 0]}"#;
        assert!(matches!(
            GroupRepInput::parse(bad).unwrap().to_rep(),
            Err(RepError::Shape(_))
        ));
    }
}
