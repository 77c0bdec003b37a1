mod common;

use common::reps::{double_centralizer_fixtures, q8_over_f7};
use mrlift_core::exactint::{GaloisRing, RingMatrix};
use mrlift_core::repdecomp::symplectic::{levi_embedding, sp_centralizer_dims};
use mrlift_core::repdecomp::{
    bicommutant, centralizer, commutant, decomposition_type, group_algebra_span, isotypic_structure, GroupRep, MatSpan,
};

#[test]
fn bicommutant_is_group_algebra_span() {
    for fx in double_centralizer_fixtures() {
        let rep = &fx.rep;
        let f = rep.field();
        let n = rep.n();
        let delta = bicommutant(rep);
        let span = group_algebra_span(rep);
        let ds = MatSpan::from_mats(f, n, &delta);
        assert_eq!(delta.len(), span.len(), "{}", fx.name);
        assert!(span.iter().all(|x| ds.contains(x)), "{}", fx.name);
        // and the centraliser of the span is the commutant again
        let c = commutant(rep);
        assert_eq!(centralizer(f, n, &span).0.len(), c.len(), "{}", fx.name);
    }
}

#[test]
fn signatures_match_constituents_and_dimensions() {
    for fx in double_centralizer_fixtures() {
        let dt = decomposition_type(&fx.rep, 11).unwrap();
        assert_eq!(dt.isotypic.signatures(), fx.expected, "{}", fx.name);
        let sc: usize = dt.isotypic.blocks.iter().map(|b| b.m * b.m * b.e).sum();
        let sd: usize = dt.isotypic.blocks.iter().map(|b| b.d * b.d * b.e).sum();
        assert_eq!(sc, dt.c_basis.len(), "{}", fx.name);
        assert_eq!(sd, dt.delta_basis.len(), "{}", fx.name);
        for x in &dt.c_basis {
            assert!(dt.delta_basis.iter().all(|y| x.commutes_with(y)), "{}", fx.name);
            assert!(fx.rep.generators().iter().all(|g| x.commutes_with(g)), "{}", fx.name);
        }
    }
}

#[test]
fn signatures_do_not_depend_on_seed() {
    for fx in double_centralizer_fixtures().into_iter().take(10) {
        let a = isotypic_structure(&fx.rep, 1).unwrap();
        let b = isotypic_structure(&fx.rep, 987654).unwrap();
        assert_eq!(a.signatures(), b.signatures(), "{}", fx.name);
        assert_eq!(a.idempotents, b.idempotents, "{}", fx.name);
    }
}

#[test]
fn change_of_basis_is_block_diagonal() {
    for fx in double_centralizer_fixtures() {
        let iso = isotypic_structure(&fx.rep, 4).unwrap();
        let pm = &iso.change_of_basis;
        let pi = pm.inverse().expect("change of basis is invertible");
        let sizes: Vec<usize> = iso.blocks.iter().map(|b| b.d * b.m * b.e).collect();
        let mut owner = Vec::new();
        for (i, s) in sizes.iter().enumerate() {
            owner.extend(std::iter::repeat_n(i, *s));
        }
        for g in fx.rep.generators() {
            let h = pi.mul(g).mul(pm);
            for i in 0..h.rows() {
                for j in 0..h.cols() {
                    if owner[i] != owner[j] {
                        assert!(h.get(i, j).is_zero(), "{}", fx.name);
                    }
                }
            }
        }
    }
}

#[test]
fn idempotents_are_central_and_complete() {
    for fx in double_centralizer_fixtures().into_iter().take(12) {
        let dt = decomposition_type(&fx.rep, 8).unwrap();
        let f = fx.rep.field();
        let n = fx.rep.n();
        let mut sum = RingMatrix::zeros(f, n, n);
        for (a, e) in dt.isotypic.idempotents.iter().enumerate() {
            assert_eq!(e.mul(e), *e);
            for (b, o) in dt.isotypic.idempotents.iter().enumerate() {
                if a != b {
                    assert!(e.mul(o).is_zero());
                }
            }
            assert!(dt.c_basis.iter().all(|c| c.commutes_with(e)));
            assert!(dt.delta_basis.iter().all(|d| d.commutes_with(e)));
            sum = sum.add(e);
        }
        assert!(sum.is_identity(), "{}", fx.name);
    }
}

#[test]
fn symplectic_examples() {
    let (f, i, j) = q8_over_f7();
    // tau self-dual: the quaternion group preserves the form on F_7^2
    let g2: Vec<RingMatrix> = [&i, &j].iter().map(|a| levi_embedding(a).unwrap()).collect();
    let d2 = sp_centralizer_dims(f, &g2).unwrap();
    assert_eq!((d2.commutant_dim, d2.delta_dim), (1, 3));
    // twisting by a nontrivial cube root of unity breaks self-duality
    let mut g1 = g2.clone();
    g1.push(levi_embedding(&RingMatrix::scalar(f, 2, f.from_int(2))).unwrap());
    let d1 = sp_centralizer_dims(f, &g1).unwrap();
    assert_eq!((d1.commutant_dim, d1.delta_dim), (1, 4));
    // in GL_4 the commutants are F x F resp. M_2(F)
    let r1 = GroupRep::plain(f, 4, g1).unwrap();
    let r2 = GroupRep::plain(f, 4, g2).unwrap();
    assert_eq!(commutant(&r1).len(), 2);
    assert_eq!(commutant(&r2).len(), 4);
    // the self-dual centraliser has two components of 6 points each
    assert_eq!(d1.commutant_points, 6);
    assert_eq!(d2.commutant_points, 12);
}

#[test]
fn extension_field_coefficients() {
    // diag(w, w^2) for a primitive cube root of unity w in F_25
    let f = GaloisRing::new(5, 1, 2).unwrap();
    let w = f.pow(f.gen_x(), 8);
    assert_eq!(f.pow(w, 3), f.one());
    let g = RingMatrix::from_elems(f, 2, 2, vec![w, f.zero(), f.zero(), f.mul(w, w)]);
    let rep = GroupRep::plain(f, 2, vec![g]).unwrap();
    let dt = decomposition_type(&rep, 0).unwrap();
    assert_eq!(dt.c_basis.len(), 2);
    assert_eq!(dt.isotypic.blocks.len(), 2);
    assert!(dt.isotypic.blocks.iter().all(|b| (b.d, b.m, b.e) == (1, 1, 1)));
}
