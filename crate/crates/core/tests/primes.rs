use std::collections::BTreeSet;

use mrlift_core::exactint::{quotient_shape, IntMatrix};
use mrlift_core::primes::{
    center_smooth, effective_p_bound, good_bad_primes, pi1_torsion_primes, pretty_good_bad_primes, PrimeReport,
};
use mrlift_core::rootdatum::{IsogenyClass, RootDatum};

fn datum(t: &str, iso: &str) -> RootDatum {
    RootDatum::from_type(&t.parse().unwrap(), &iso.parse().unwrap()).unwrap()
}

const SMALL_TYPES: [&str; 13] = [
    "A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A2xA1", "B2xA1", "A1xG2", "A1xA1xA1", "A1+T1",
];

fn primes_to_50() -> Vec<u64> {
    (2..=50u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect()
}

#[test]
fn pretty_good_iff_good_and_pi1_and_center() {
    for t in SMALL_TYPES {
        for iso in ["sc", "ad"] {
            let d = datum(t, iso);
            let pretty_bad = pretty_good_bad_primes(&d);
            let good_bad = good_bad_primes(&d);
            let pi1 = pi1_torsion_primes(&d);
            for p in primes_to_50() {
                let lhs = !pretty_bad.contains(&p);
                let rhs = !good_bad.contains(&p) && !pi1.contains(&p) && center_smooth(&d, p);
                assert_eq!(lhs, rhs, "{t} {iso} p={p}");
            }
        }
    }
}

// all subsets of the roots, no appeal to closed subsystems
fn raw_pretty_bad(d: &RootDatum) -> BTreeSet<u64> {
    let rs = d.root_system();
    let n = rs.num_roots();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let xs: Vec<Vec<i64>> = idx.iter().map(|&i| d.root_x(i).to_vec()).collect();
        let ys: Vec<Vec<i64>> = idx.iter().map(|&i| d.coroot_y(i).to_vec()).collect();
        out.extend(quotient_shape(&IntMatrix::from_rows(&xs, d.rank())).torsion_primes());
        out.extend(quotient_shape(&IntMatrix::from_rows(&ys, d.rank())).torsion_primes());
    }
    out
}

#[test]
fn closed_subsystem_reduction_matches_raw_subsets() {
    for t in ["A1", "A2", "A3", "B2", "G2", "A1xA1", "A2xA1", "A1xA1xA1", "B2xA1"] {
        for iso in ["sc", "ad"] {
            let d = datum(t, iso);
            if d.root_system().num_positive() > 6 {
                continue;
            }
            assert_eq!(pretty_good_bad_primes(&d), raw_pretty_bad(&d), "{t} {iso}");
        }
    }
}

#[test]
fn bad_primes_by_type() {
    let cases: [(&str, &[u64]); 9] = [
        ("A4", &[]),
        ("B3", &[2]),
        ("C4", &[2]),
        ("D5", &[2]),
        ("G2", &[2, 3]),
        ("F4", &[2, 3]),
        ("E6", &[2, 3]),
        ("E7", &[2, 3]),
        ("E8", &[2, 3, 5]),
    ];
    for (t, want) in cases {
        assert_eq!(good_bad_primes(&datum(t, "sc")), want.iter().copied().collect(), "{t}");
    }
}

#[test]
fn good_primes_of_products_are_unions() {
    let a = good_bad_primes(&datum("G2xB2", "sc"));
    let b: BTreeSet<u64> = good_bad_primes(&datum("G2", "sc"))
        .union(&good_bad_primes(&datum("B2", "sc")))
        .copied()
        .collect();
    assert_eq!(a, b);
}

#[test]
fn gl_n_is_pretty_good_everywhere() {
    for n in 1..=4 {
        let d = RootDatum::general_linear(n).unwrap();
        assert!(pretty_good_bad_primes(&d).is_empty(), "GL{n}");
    }
}

#[test]
fn effective_bound_rechecked() {
    for t in ["A1", "A2", "B2", "G2", "A1xA1", "A2+T1"] {
        for iso in [IsogenyClass::SimplyConnected, IsogenyClass::Adjoint] {
            let d = RootDatum::from_type(&t.parse().unwrap(), &iso).unwrap();
            let e = effective_p_bound(&d);
            let p = e.p;
            assert!((2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)));
            assert!(!pretty_good_bad_primes(&d).contains(&(p as u64)));
            assert!(p > d.semisimple_rank() as u128 + 1);
            assert_ne!(d.root_system().cartan_type().weyl_order() % p, 0);
            assert!(p > e.constant);
            assert!(e.bullets.iter().all(|b| b.satisfied));
        }
    }
}

#[test]
fn report_invariants_hold() {
    for t in ["A3", "B3", "C3", "G2", "F4", "D4"] {
        for iso in ["sc", "ad"] {
            assert!(PrimeReport::compute(&datum(t, iso)).is_consistent(), "{t} {iso}");
        }
    }
}

#[test]
fn levi_restriction_is_monotone() {
    // Levi subdata of E7 and F4 have no bad primes beyond the ambient ones
    for (big, smalls) in [("E7", vec!["E6", "D6", "A6"]), ("F4", vec!["B3", "C3", "A2xA1"])] {
        let ambient = good_bad_primes(&datum(big, "sc"));
        for s in smalls {
            assert!(good_bad_primes(&datum(s, "sc")).is_subset(&ambient), "{s} in {big}");
        }
    }
}
