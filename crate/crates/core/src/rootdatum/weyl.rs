//! Weyl group orders and, for small ranks, the Weyl group as permutations of
//! the roots.

use std::collections::{HashSet, VecDeque};

use super::system::RootSystem;

/// `|W|` from the classification.
pub fn weyl_order(rs: &RootSystem) -> u128 {
    rs.cartan_type().weyl_order()
}

/// `|W|` as the size of the orbit of `rho`, which has trivial stabiliser.
/// Works in fundamental-weight coordinates where `s_i` subtracts
/// `lambda_i` times row `i` of the Cartan matrix.
pub fn weyl_order_by_orbit(rs: &RootSystem, limit: usize) -> Option<u128> {
    let r = rs.rank();
    let start = vec![1i64; r];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(lam) = queue.pop_front() {
        for i in 0..r {
            let c = lam[i];
            let next: Vec<i64> = (0..r).map(|j| lam[j] - c * rs.cartan(i, j)).collect();
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen.len() as u128)
}

/// The Weyl group as permutations of root indices.
#[derive(Clone, Debug)]
pub struct WeylPermutations {
    pub elements: Vec<Vec<u16>>,
}

impl WeylPermutations {
    /// Closure of the simple reflections; `None` if the group exceeds `limit`.
    pub fn generate(rs: &RootSystem, limit: usize) -> Option<Self> {
        let gens = rs.simple_reflection_permutations();
        let id: Vec<u16> = (0..rs.num_roots() as u16).collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let gw: Vec<u16> = w.iter().map(|&i| g[i as usize]).collect();
                if seen.insert(gw.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    elements.push(gw.clone());
                    queue.push_back(gw);
                }
            }
        }
        Some(WeylPermutations { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}
