//! Closed subsystems of a root system, up to Weyl conjugacy.
//!
//! Classes are produced by repeatedly taking Levi subsystems (drop a simple
//! root) and Borel-de Siebenthal subsystems (drop a node of an extended
//! Dynkin diagram) starting from the whole system.

mod classify;
mod rootset;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use classify::{iso_type, iso_type_label};
pub use rootset::RootSet;

use crate::exactint::{quotient_shape, IntMatrix, LatticeMembership, QuotientShape};
use crate::rootdatum::{RootSystem, SimpleFactor, WeylPermutations};

/// Largest Weyl group enumerated for exact conjugacy tests.
pub const EXACT_WEYL_LIMIT: usize = 5_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Levi,
    BorelDeSiebenthal,
    Iterate,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ClosedSubsystem {
    #[serde(skip)]
    pub roots: RootSet,
    pub base: Vec<usize>,
    pub iso_type: String,
    #[serde(skip)]
    pub factors: Vec<SimpleFactor>,
    pub provenance: Provenance,
    /// Shape of `ZPhi / ZSigma`.
    pub signature: QuotientShape,
}

impl ClosedSubsystem {
    pub fn root_indices(&self) -> Vec<usize> {
        self.roots.iter().collect()
    }

    pub fn size(&self) -> usize {
        self.roots.len()
    }
}

/// Simple roots of `Sigma`: the indecomposable elements of `Sigma ∩ Phi+`.
pub fn base_of(rs: &RootSystem, set: &RootSet) -> Vec<usize> {
    let r = rs.rank();
    let pos: Vec<usize> = set.iter().filter(|&i| rs.is_positive(i)).collect();
    let mut base = Vec::new();
    'outer: for &b in &pos {
        for &g in &pos {
            if g == b {
                continue;
            }
            let diff: Vec<i64> = (0..r).map(|j| rs.root(b)[j] - rs.root(g)[j]).collect();
            if let Some(d) = rs.index_of(&diff) {
                if rs.is_positive(d) && set.contains(d) {
                    continue 'outer;
                }
            }
        }
        base.push(b);
    }
    base
}

/// Symmetric and closed under addition inside `Phi`.
pub fn is_closed(rs: &RootSystem, set: &RootSet) -> bool {
    let r = rs.rank();
    let idx: Vec<usize> = set.iter().collect();
    for &i in &idx {
        if !set.contains(rs.negative(i)) {
            return false;
        }
        for &j in &idx {
            if j <= i {
                continue;
            }
            let s: Vec<i64> = (0..r).map(|a| rs.root(i)[a] + rs.root(j)[a]).collect();
            if let Some(k) = rs.index_of(&s) {
                if !set.contains(k) {
                    return false;
                }
            }
        }
    }
    true
}

/// `ZPhi / ZSigma` in simple-root coordinates.
pub fn lattice_signature(rs: &RootSystem, base: &[usize]) -> QuotientShape {
    let rows: Vec<Vec<i64>> = base.iter().map(|&b| rs.root(b).to_vec()).collect();
    quotient_shape(&IntMatrix::from_rows(&rows, rs.rank()))
}

fn describe(rs: &RootSystem, roots: RootSet, provenance: Provenance) -> ClosedSubsystem {
    let base = base_of(rs, &roots);
    let factors = iso_type(rs, &base);
    ClosedSubsystem {
        roots,
        iso_type: iso_type_label(&factors),
        factors,
        signature: lattice_signature(rs, &base),
        base,
        provenance,
    }
}

/// Conjugacy key: exact when the Weyl group is small enough to enumerate,
/// otherwise isomorphism type together with the lattice signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum ClassKey {
    Exact(RootSet),
    Invariant(String, QuotientShape),
}

struct Keyer {
    weyl: Option<WeylPermutations>,
}

impl Keyer {
    fn new(rs: &RootSystem) -> Self {
        Keyer {
            weyl: WeylPermutations::generate(rs, EXACT_WEYL_LIMIT),
        }
    }

    fn key(&self, s: &ClosedSubsystem) -> ClassKey {
        match &self.weyl {
            Some(w) => ClassKey::Exact(w.elements.iter().map(|g| s.roots.map(g)).min().unwrap()),
            None => ClassKey::Invariant(s.iso_type.clone(), s.signature.clone()),
        }
    }

    fn is_exact(&self) -> bool {
        self.weyl.is_some()
    }
}

/// One step of the descent from `sigma`: all Levi and Borel-de Siebenthal
/// children.
fn children(rs: &RootSystem, sigma: &ClosedSubsystem) -> Vec<(RootSet, bool)> {
    let base = &sigma.base;
    if base.is_empty() {
        return Vec::new();
    }
    let r = rs.rank();
    let rows: Vec<Vec<i64>> = base.iter().map(|&b| rs.root(b).to_vec()).collect();
    let member = LatticeMembership::new(&IntMatrix::from_rows(&rows, r));
    let members: Vec<usize> = sigma.roots.iter().collect();
    let coords: Vec<Vec<i64>> = members
        .iter()
        .map(|&i| {
            let v: Vec<BigInt> = rs.root(i).iter().map(|&x| BigInt::from(x)).collect();
            member
                .solve(&v)
                .expect("roots of a closed subsystem lie in the span of its base")
                .iter()
                .map(|x| x.to_i64().unwrap())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for b in 0..base.len() {
        let levi = RootSet::from_indices(members.iter().zip(&coords).filter(|(_, c)| c[b] == 0).map(|(&i, _)| i));
        out.push((levi, true));
    }
    // highest root of each irreducible component: its coefficients are the
    // marks of the extended diagram
    let m = base.len();
    let mut comp_of = vec![usize::MAX; m];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..m {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut comp = vec![s];
        comp_of[s] = id;
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            for j in 0..m {
                if comp_of[j] == usize::MAX && rs.pairing(base[i], base[j]) != 0 {
                    comp_of[j] = id;
                    comp.push(j);
                }
            }
        }
        comps.push(comp);
    }
    for comp in &comps {
        let theta = coords
            .iter()
            .filter(|c| {
                c.iter()
                    .enumerate()
                    .all(|(j, &x)| (x == 0 || comp.contains(&j)) && x >= 0)
            })
            .max_by_key(|c| c.iter().sum::<i64>())
            .expect("component has a highest root");
        for &b in comp {
            let mark = theta[b];
            if mark <= 1 {
                continue;
            }
            let bds = RootSet::from_indices(
                members
                    .iter()
                    .zip(&coords)
                    .filter(|(_, c)| c[b] % mark == 0)
                    .map(|(&i, _)| i),
            );
            out.push((bds, false));
        }
    }
    out
}

/// Representatives of the closed subsystems of `Phi` up to conjugacy,
/// including `Phi` and the empty subsystem.
pub fn enumerate_closed_subsystems(rs: &RootSystem) -> Vec<ClosedSubsystem> {
    let keyer = Keyer::new(rs);
    let full = describe(rs, RootSet::from_indices(0..rs.num_roots()), Provenance::Levi);
    let mut classes: Vec<ClosedSubsystem> = Vec::new();
    let mut by_key: HashMap<ClassKey, usize> = HashMap::new();
    by_key.insert(keyer.key(&full), 0);
    classes.push(full);
    let mut queue = VecDeque::from([0usize]);
    while let Some(ci) = queue.pop_front() {
        let parent = classes[ci].clone();
        let is_full = ci == 0;
        for (roots, via_levi) in children(rs, &parent) {
            let provenance = match (via_levi, parent.provenance, is_full) {
                (true, Provenance::Levi, _) => Provenance::Levi,
                (false, _, true) => Provenance::BorelDeSiebenthal,
                _ => Provenance::Iterate,
            };
            let child = describe(rs, roots, provenance);
            let key = keyer.key(&child);
            match by_key.get(&key) {
                Some(&j) => {
                    if provenance < classes[j].provenance {
                        classes[j].provenance = provenance;
                    }
                }
                None => {
                    by_key.insert(key, classes.len());
                    queue.push_back(classes.len());
                    classes.push(child);
                }
            }
        }
    }
    sort_classes(&mut classes);
    classes
}

/// True when conjugacy classes were separated exactly by the Weyl group.
pub fn dedup_is_exact(rs: &RootSystem) -> bool {
    Keyer::new(rs).is_exact()
}

fn sort_classes(classes: &mut [ClosedSubsystem]) {
    classes.sort_by(|a, b| {
        b.size()
            .cmp(&a.size())
            .then_with(|| a.iso_type.cmp(&b.iso_type))
            .then_with(|| a.signature.cmp(&b.signature))
            .then_with(|| a.roots.cmp(&b.roots))
    });
}

/// Independent enumeration: every symmetric subset closed under addition,
/// up to the Weyl group. Needs at most twelve positive roots.
pub fn brute_force_closed_subsystems(rs: &RootSystem) -> Option<Vec<ClosedSubsystem>> {
    let n = rs.num_positive();
    if n > 12 {
        return None;
    }
    let weyl = WeylPermutations::generate(rs, 1 << 20)?;
    let mut seen: HashMap<RootSet, ()> = HashMap::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let mut s = RootSet::empty();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                s.insert(i);
                s.insert(rs.negative(i));
            }
        }
        if !is_closed(rs, &s) {
            continue;
        }
        let canon = weyl.elements.iter().map(|g| s.map(g)).min().unwrap();
        if seen.insert(canon, ()).is_none() {
            out.push(describe(rs, s, Provenance::Iterate));
        }
    }
    sort_classes(&mut out);
    Some(out)
}
