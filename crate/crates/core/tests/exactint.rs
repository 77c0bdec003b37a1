use mrlift_core::exactint::{kernel, linear_solve_mod, GaloisRing, RingMatrix};
use proptest::prelude::*;

fn mat(r: GaloisRing, rows: usize, cols: usize, xs: &[i64]) -> RingMatrix {
    RingMatrix::from_ints(r, rows, cols, &xs[..rows * cols])
}

proptest! {
    #[test]
    fn inverse_over_z_mod_p_power(xs in prop::collection::vec(-200i64..200, 9), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let r = GaloisRing::integers_mod(p, 3).unwrap();
        let m = mat(r, 3, 3, &xs);
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
            None => prop_assert!(!m.residue().is_invertible()),
        }
    }

    #[test]
    fn solutions_solve(xs in prop::collection::vec(-50i64..50, 12), ys in prop::collection::vec(-50i64..50, 3)) {
        let r = GaloisRing::integers_mod(5, 3).unwrap();
        let a = mat(r, 3, 4, &xs);
        // scale the right-hand side so that some systems become solvable
        let b = mat(r, 3, 1, &ys).mul_p_pow(1);
        if let Some(sol) = linear_solve_mod(&a, &b) {
            prop_assert_eq!(a.mul(&sol.particular), b);
            for g in &sol.homogeneous {
                let v = RingMatrix::from_elems(r, 4, 1, g.vector.clone());
                prop_assert!(a.mul(&v).is_zero());
            }
        }
        for g in kernel(&a) {
            let v = RingMatrix::from_elems(r, 4, 1, g.vector.clone());
            prop_assert!(a.mul(&v).is_zero());
        }
    }

    #[test]
    fn residue_commutes_with_products(xs in prop::collection::vec(-99i64..99, 8)) {
        let r = GaloisRing::new(3, 2, 2).unwrap();
        let a = mat(r, 2, 2, &xs[..4]);
        let b = mat(r, 2, 2, &xs[4..]);
        prop_assert_eq!(a.mul(&b).residue(), a.residue().mul(&b.residue()));
        let f = r.residue_field();
        prop_assert_eq!(a.residue().to_ring(f), a.residue());
    }
}
