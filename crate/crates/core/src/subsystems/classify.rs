//! Dynkin type of a set of simple roots.

use crate::rootdatum::{Family, RootSystem, SimpleFactor};

/// Irreducible factors of the root system with the given base, sorted.
pub fn iso_type(rs: &RootSystem, base: &[usize]) -> Vec<SimpleFactor> {
    let m = base.len();
    let a: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| rs.pairing(base[i], base[j])).collect())
        .collect();
    let norms: Vec<i64> = base.iter().map(|&b| rs.norm2(b)).collect();
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            for j in 0..m {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
        }
        out.push(classify_component(&a, &norms, &comp));
    }
    out.sort();
    out
}

pub fn iso_type_label(factors: &[SimpleFactor]) -> String {
    if factors.is_empty() {
        return "∅".to_string();
    }
    factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("x")
}

fn classify_component(a: &[Vec<i64>], norms: &[i64], comp: &[usize]) -> SimpleFactor {
    let n = comp.len();
    let f = |family| SimpleFactor { family, rank: n };
    if n == 1 {
        return f(Family::A);
    }
    let mut degree = vec![0usize; n];
    let mut multi: Option<(usize, usize, i64)> = None;
    for x in 0..n {
        for y in 0..n {
            let (i, j) = (comp[x], comp[y]);
            if x != y && a[i][j] != 0 {
                degree[x] += 1;
                let prod = a[i][j] * a[j][i];
                if prod > 1 {
                    multi = Some((x, y, prod));
                }
            }
        }
    }
    if let Some((x, y, prod)) = multi {
        if prod == 3 {
            return f(Family::G);
        }
        if n == 2 {
            return f(Family::B);
        }
        if degree[x] == 2 && degree[y] == 2 {
            return f(Family::F);
        }
        let longest = comp.iter().map(|&i| norms[i]).max().unwrap();
        let long = comp.iter().filter(|&&i| norms[i] == longest).count();
        return if long == 1 { f(Family::C) } else { f(Family::B) };
    }
    let Some(branch) = (0..n).find(|&x| degree[x] == 3) else {
        return f(Family::A);
    };
    // arm lengths from the branch node
    let mut arms = Vec::new();
    for y in 0..n {
        if y == branch || a[comp[branch]][comp[y]] == 0 {
            continue;
        }
        let (mut prev, mut cur, mut len) = (branch, y, 1);
        loop {
            let next = (0..n).find(|&z| z != prev && z != cur && a[comp[cur]][comp[z]] != 0);
            match next {
                Some(z) => {
                    prev = cur;
                    cur = z;
                    len += 1;
                }
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => f(Family::D),
        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => f(Family::E),
        _ => unreachable!("not a Dynkin diagram: arms {arms:?}"),
    }
}
