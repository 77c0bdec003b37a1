//! Finite matrix groups over `F_{p^e}` together with the tame Galois data
//! `sigma`, `phi`, `q`.

use std::collections::{HashMap, VecDeque};

use crate::exactint::{GaloisRing, RingMatrix};

use super::RepError;

/// Enumeration stops with an error past this many elements.
pub const MAX_GROUP_ORDER: usize = 20_000;

#[derive(Clone, Debug)]
pub struct GroupRep {
    field: GaloisRing,
    n: usize,
    generators: Vec<RingMatrix>,
    generator_indices: Vec<usize>,
    elements: Vec<RingMatrix>,
    index: HashMap<RingMatrix, usize>,
    sigma: RingMatrix,
    phi: RingMatrix,
    q: u64,
}

impl GroupRep {
    /// Validates the data and enumerates the group. `field` must be a finite
    /// field (precision one).
    pub fn new(
        field: GaloisRing,
        n: usize,
        generators: Vec<RingMatrix>,
        sigma: RingMatrix,
        phi: RingMatrix,
        q: u64,
    ) -> Result<Self, RepError> {
        if !field.is_field() {
            return Err(RepError::Shape("coefficients must lie in a finite field".into()));
        }
        if n == 0 {
            return Err(RepError::Shape("matrix size must be positive".into()));
        }
        let check = |name: String, m: &RingMatrix| -> Result<(), RepError> {
            if m.rows() != n || m.cols() != n || m.ring() != field {
                return Err(RepError::Shape(format!("{name} must be {n}x{n} over {field:?}")));
            }
            if !m.is_invertible() {
                return Err(RepError::NotInvertible(name));
            }
            Ok(())
        };
        for (i, g) in generators.iter().enumerate() {
            check(format!("generator {i}"), g)?;
        }
        check("sigma".into(), &sigma)?;
        check("phi".into(), &phi)?;
        let p = field.p();
        if q == 0 {
            return Err(RepError::BadQ { q, p });
        }
        if q.is_multiple_of(p) {
            return Err(RepError::BadQ { q, p });
        }

        let (elements, index) = enumerate(field, n, &generators)?;
        if (elements.len() as u64).is_multiple_of(p) {
            return Err(RepError::OrderDivisibleByP {
                order: elements.len(),
                p,
            });
        }
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        let rep = GroupRep {
            field,
            n,
            generators,
            generator_indices,
            elements,
            index,
            sigma,
            phi,
            q,
        };
        if rep.conjugation_action(&rep.sigma).is_none() {
            return Err(RepError::NotNormalizing("sigma"));
        }
        if rep.conjugation_action(&rep.phi).is_none() {
            return Err(RepError::NotNormalizing("phi"));
        }
        let lhs = rep
            .phi
            .mul(&rep.sigma)
            .mul(&rep.phi.inverse().expect("checked invertible"));
        if lhs != rep.sigma.pow(q as u128) {
            return Err(RepError::FrobeniusRelation);
        }
        Ok(rep)
    }

    /// A group with trivial Galois data (`sigma = phi = 1`, `q = 1`).
    pub fn plain(field: GaloisRing, n: usize, generators: Vec<RingMatrix>) -> Result<Self, RepError> {
        let one = RingMatrix::identity(field, n);
        Self::new(field, n, generators, one.clone(), one, 1)
    }

    pub fn field(&self) -> GaloisRing {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn e(&self) -> usize {
        self.field.degree()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q = 1` does not come from a local field.
    pub fn is_synthetic(&self) -> bool {
        self.q == 1
    }

    pub fn generators(&self) -> &[RingMatrix] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    /// All group elements; index 0 is the identity.
    pub fn elements(&self) -> &[RingMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn sigma(&self) -> &RingMatrix {
        &self.sigma
    }

    pub fn phi(&self) -> &RingMatrix {
        &self.phi
    }

    pub fn index_of(&self, m: &RingMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j])]
    }

    /// The permutation `g -> m g m^-1` of the elements, if `m` normalises
    /// the group.
    pub fn conjugation_action(&self, m: &RingMatrix) -> Option<Vec<usize>> {
        let inv = m.inverse()?;
        self.elements
            .iter()
            .map(|g| self.index_of(&m.mul(g).mul(&inv)))
            .collect()
    }
}

fn enumerate(
    field: GaloisRing,
    n: usize,
    generators: &[RingMatrix],
) -> Result<(Vec<RingMatrix>, HashMap<RingMatrix, usize>), RepError> {
    let id = RingMatrix::identity(field, n);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let h = elements[i].mul(g);
            if !index.contains_key(&h) {
                if elements.len() >= MAX_GROUP_ORDER {
                    return Err(RepError::GroupTooLarge(MAX_GROUP_ORDER));
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    Ok((elements, index))
}
