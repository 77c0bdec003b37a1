//! Levi classes and Bala-Carter labels.
//!
//! Levi subgroups up to conjugacy correspond to subsets of simple roots up
//! to the Weyl group. Two subsets are equivalent exactly when they are joined
//! by a chain of elementary moves `J -> w_0^{J+s} w_0^J (J)`; loops of moves
//! give the action of the normaliser of `W_J` on `J`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::rootdatum::{Family, RootSystem, SimpleFactor};
use crate::subsystems::{iso_type, iso_type_label};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LeviClass {
    /// Representative set of simple roots, sorted.
    pub simple_subset: Vec<usize>,
    pub iso_type: String,
    /// Dimension of the connected centre `Z_L`.
    pub dim_center: usize,
    /// Number of subsets of simple roots in the class.
    pub class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BcLabel {
    pub levi: LeviClass,
    /// Simple roots of the Levi of the distinguished parabolic, a subset of
    /// `levi.simple_subset`.
    pub i_subset: Vec<usize>,
    /// Weight 0 or 2 on each simple root of the Levi.
    pub marking: Vec<u8>,
    pub name: String,
    pub dim_l0: usize,
    pub dim_l2: usize,
}

/// Simple reflections taking `2 rho_K` to `-2 rho_K`; their product, applied
/// in order, is the longest element of `W_K`.
fn longest_word(rs: &RootSystem, k: &[usize]) -> Vec<usize> {
    let r = rs.rank();
    let mut lam = vec![0i64; r];
    for i in rs.roots_supported_in(k) {
        if rs.is_positive(i) {
            for (l, c) in lam.iter_mut().zip(rs.root(i)) {
                *l += c;
            }
        }
    }
    let mut word = Vec::new();
    loop {
        let step = k
            .iter()
            .copied()
            .find(|&i| (0..r).map(|j| lam[j] * rs.cartan(j, i)).sum::<i64>() > 0);
        let Some(i) = step else { break };
        let c: i64 = (0..r).map(|j| lam[j] * rs.cartan(j, i)).sum();
        lam[i] -= c;
        word.push(i);
    }
    word
}

fn apply_word(rs: &RootSystem, word: &[usize], mut root: usize) -> usize {
    for &s in word {
        root = rs.reflect(root, s);
    }
    root
}

fn subset_of(mask: u32, r: usize) -> Vec<usize> {
    (0..r).filter(|&i| mask >> i & 1 == 1).collect()
}

fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// Edges of the move groupoid: from `J`, for each `s` outside `J`, the
/// target subset and where each element of `J` goes.
fn moves(rs: &RootSystem) -> HashMap<u32, Vec<(u32, HashMap<usize, usize>)>> {
    let r = rs.rank();
    let mut w0 = HashMap::new();
    let mut word = |mask: u32| -> Vec<usize> {
        w0.entry(mask)
            .or_insert_with(|| longest_word(rs, &subset_of(mask, r)))
            .clone()
    };
    let mut out: HashMap<u32, Vec<(u32, HashMap<usize, usize>)>> = HashMap::new();
    for mask in 0u32..1 << r {
        let j = subset_of(mask, r);
        for s in 0..r {
            if mask >> s & 1 == 1 {
                continue;
            }
            let kmask = mask | 1 << s;
            let mut w = word(mask);
            w.extend(word(kmask));
            let mut map = HashMap::new();
            for &a in &j {
                let img = apply_word(rs, &w, rs.simple_index(a));
                assert!(img < r, "elementary move did not land on a simple root");
                map.insert(a, img);
            }
            let target = mask_of(&map.values().copied().collect::<Vec<_>>());
            let inverse: HashMap<usize, usize> = map.iter().map(|(&a, &b)| (b, a)).collect();
            out.entry(mask).or_default().push((target, map));
            out.entry(target).or_default().push((mask, inverse));
        }
    }
    out
}

/// A Levi class with the group of permutations of its representative's
/// simple roots induced by the normaliser.
#[derive(Clone, Debug)]
pub struct LeviOrbit {
    pub class: LeviClass,
    /// Permutations of `class.simple_subset`, by position.
    pub symmetries: Vec<Vec<usize>>,
}

pub fn levi_orbits(rs: &RootSystem) -> Vec<LeviOrbit> {
    let r = rs.rank();
    let edges = moves(rs);
    let mut done = vec![false; 1 << r];
    let mut order: Vec<u32> = (0u32..1 << r).collect();
    order.sort_by_key(|&m| (m.count_ones(), subset_of(m, r)));
    let mut out = Vec::new();
    for &start in &order {
        if done[start as usize] {
            continue;
        }
        let j0 = subset_of(start, r);
        // phi[J]: position in J0 -> element of J
        let mut phi: HashMap<u32, Vec<usize>> = HashMap::from([(start, j0.clone())]);
        let mut queue = VecDeque::from([start]);
        done[start as usize] = true;
        let mut loops: BTreeSet<Vec<usize>> = BTreeSet::new();
        while let Some(m) = queue.pop_front() {
            let here = phi[&m].clone();
            for (target, map) in edges.get(&m).map(|v| v.as_slice()).unwrap_or(&[]) {
                let there: Vec<usize> = here.iter().map(|a| map[a]).collect();
                match phi.get(target) {
                    Some(existing) => {
                        let pos: HashMap<usize, usize> = existing.iter().enumerate().map(|(i, &a)| (a, i)).collect();
                        loops.insert(there.iter().map(|a| pos[a]).collect());
                    }
                    None => {
                        done[*target as usize] = true;
                        phi.insert(*target, there);
                        queue.push_back(*target);
                    }
                }
            }
        }
        let symmetries = close_group(loops.into_iter().collect(), j0.len());
        let class = LeviClass {
            iso_type: levi_type_label(rs, &j0),
            dim_center: rs.ambient_rank() - j0.len(),
            class_size: phi.len(),
            simple_subset: j0,
        };
        out.push(LeviOrbit { class, symmetries });
    }
    out
}

/// Type of the Levi spanned by the simple roots `j`; type `A` factors made
/// of short roots are written `Ã`.
fn levi_type_label(rs: &RootSystem, j: &[usize]) -> String {
    if j.is_empty() {
        return "T".to_string();
    }
    let mut longest = vec![0; rs.rank()];
    for comp in rs.components() {
        let m = comp.iter().map(|&a| rs.norm2(a)).max().unwrap_or(0);
        for a in comp {
            longest[a] = m;
        }
    }
    let mut parts: Vec<(SimpleFactor, bool)> = Vec::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &s in j {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let a = comp[head];
            head += 1;
            for &b in j {
                if !seen.contains(&b) && rs.pairing(a, b) != 0 {
                    seen.insert(b);
                    comp.push(b);
                }
            }
        }
        let factor = iso_type(rs, &comp)[0];
        let short = comp.iter().all(|&a| rs.norm2(a) < longest[a]);
        parts.push((factor, short && factor.family == Family::A));
    }
    parts.sort();
    let plain: Vec<SimpleFactor> = parts.iter().map(|p| p.0).collect();
    if parts.iter().all(|p| !p.1) {
        return iso_type_label(&plain);
    }
    parts
        .iter()
        .map(|(f, short)| if *short { format!("Ã{}", f.rank) } else { f.to_string() })
        .collect::<Vec<_>>()
        .join("x")
}

fn close_group(gens: Vec<Vec<usize>>, n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let gh: Vec<usize> = (0..n).map(|i| g[h[i]]).collect();
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
    }
    seen.into_iter().collect()
}

/// Levi subgroups up to conjugacy, including the maximal torus and `G`.
pub fn levi_classes(rs: &RootSystem) -> Vec<LeviClass> {
    levi_orbits(rs).into_iter().map(|o| o.class).collect()
}

/// `(dim l_0, dim l_2, dim Z_L)` for the grading that is 0 on `i_subset`
/// and 2 on the remaining simple roots of the Levi.
pub fn grading_dims(rs: &RootSystem, levi: &[usize], i_subset: &[usize]) -> (usize, usize, usize) {
    let (n0, n2) = grading_counts(rs, levi, i_subset);
    (rs.ambient_rank() + n0, n2, rs.ambient_rank() - levi.len())
}

fn grading_counts(rs: &RootSystem, levi: &[usize], i_subset: &[usize]) -> (usize, usize) {
    let mut n0 = 0;
    let mut n2 = 0;
    for b in rs.roots_supported_in(levi) {
        let f: i64 = levi
            .iter()
            .filter(|j| !i_subset.contains(j))
            .map(|&j| 2 * rs.root(b)[j])
            .sum();
        match f {
            0 => n0 += 1,
            2 | -2 => n2 += 1,
            _ => {}
        }
    }
    // n2 counted both signs; only the positive degree is wanted
    (n0, n2 / 2)
}

/// Whether the parabolic of `L` with Levi `i_subset` is distinguished:
/// `dim l_0 = dim l_2` inside the derived algebra of `L`.
pub fn is_distinguished(rs: &RootSystem, levi: &[usize], i_subset: &[usize]) -> bool {
    let (n0, n2) = grading_counts(rs, levi, i_subset);
    n0 + levi.len() == n2
}

/// All Bala-Carter labels, one per unipotent class in good characteristic.
pub fn bala_carter_data(rs: &RootSystem) -> Vec<BcLabel> {
    let mut out = Vec::new();
    for orbit in levi_orbits(rs) {
        let j = &orbit.class.simple_subset;
        let m = j.len();
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut masks: Vec<u32> = (0u32..1 << m).collect();
        masks.sort_by_key(|&x| (x.count_ones(), x.reverse_bits()));
        for mask in masks {
            let canon = orbit
                .symmetries
                .iter()
                .map(|g| {
                    (0..m)
                        .filter(|&i| mask >> i & 1 == 1)
                        .fold(0u32, |acc, i| acc | 1 << g[i])
                })
                .min()
                .unwrap_or(mask);
            if !seen.insert(canon) {
                continue;
            }
            let i_subset: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| j[i]).collect();
            if !is_distinguished(rs, j, &i_subset) {
                continue;
            }
            let (dim_l0, dim_l2, _) = grading_dims(rs, j, &i_subset);
            let marking = j.iter().map(|a| if i_subset.contains(a) { 0 } else { 2 }).collect();
            let name = label_name(&orbit.class.iso_type, j, &i_subset);
            out.push(BcLabel {
                levi: orbit.class.clone(),
                i_subset,
                marking,
                name,
                dim_l0,
                dim_l2,
            });
        }
    }
    out
}

fn label_name(levi_type: &str, levi: &[usize], i_subset: &[usize]) -> String {
    if levi.is_empty() {
        return "T".to_string();
    }
    let inner = if i_subset.is_empty() {
        "∅".to_string()
    } else {
        let pos: Vec<String> = i_subset
            .iter()
            .map(|a| (levi.iter().position(|b| b == a).unwrap() + 1).to_string())
            .collect();
        format!("{{{}}}", pos.join(","))
    };
    format!("{levi_type}[I={inner}]")
}
