mod common;

use common::lifts::{self, m};
use mrlift_core::exactint::{GaloisRing, RingMatrix};
use mrlift_core::mrlift::{
    assemble_mr_lift, inertia_conjugate, jordan_rank_profile, transporter, verify_lift, Hypothesis, LiftError,
    ResidualGaloisData,
};
use mrlift_core::repdecomp::{GroupRep, RepError};

fn ring(p: u64, k: u32) -> GaloisRing {
    GaloisRing::integers_mod(p, k).unwrap()
}

#[test]
fn q4_fixture() {
    let fx = lifts::q4();
    let l = assemble_mr_lift(&fx.data, fx.k, 0, None).unwrap();
    let r = ring(5, 3);
    assert_eq!(l.n, m(r, 2, &[4, 0, 0, 1]));
    assert_eq!(l.u, m(r, 2, &[1, 1, 0, 1]));
    assert!(l.a.is_identity());
    let ninv = l.n.inverse().unwrap();
    assert_eq!(l.n.mul(&l.u).mul(&ninv), l.u.pow(4));
    assert_eq!(l.verification.centralizer_rank_residual, 2);
    assert_eq!(l.verification.centralizer_rank_lifted, Some(2));
    assert!(l.verification.all_passed);
}

#[test]
fn sign_character_lifts_to_teichmuller() {
    let fx = lifts::sign_split();
    let l = assemble_mr_lift(&fx.data, fx.k, 0, None).unwrap();
    let r = ring(5, 3);
    assert_eq!(l.tau.generator_images(&fx.data.rep), vec![m(r, 2, &[1, 0, 0, 124])]);
    assert!(l.a.is_identity() && l.u.is_identity() && l.n.is_identity());
}

#[test]
fn finite_order_matrices_lift_verbatim() {
    // [[0,1],[-1,0]] already has order 4 over the integers
    let fx = lifts::companion();
    let l = assemble_mr_lift(&fx.data, fx.k, 0, None).unwrap();
    let r = ring(7, 3);
    assert_eq!(l.tau.generator_images(&fx.data.rep), vec![m(r, 2, &[0, 1, -1, 0])]);
    assert_eq!(l.n, m(r, 2, &[0, 1, 1, 0]));
}

#[test]
fn every_fixture_verifies() {
    for fx in lifts::all() {
        let l = assemble_mr_lift(&fx.data, fx.k, 3, None).unwrap_or_else(|e| panic!("{}: {e}", fx.name));
        let again = verify_lift(&l, &fx.data);
        assert!(again.all_passed, "{}: {:?}", fx.name, again.failures());
        assert_eq!(again.checks.len(), 7, "{}", fx.name);
    }
}

#[test]
fn tame_part_does_not_depend_on_seed() {
    for fx in lifts::all() {
        let a: Vec<RingMatrix> = (0..4)
            .map(|s| assemble_mr_lift(&fx.data, fx.k, s, None).unwrap().a)
            .collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]), "{}", fx.name);
    }
}

#[test]
fn lifts_for_different_seeds_are_conjugate_by_one_units() {
    for fx in lifts::all() {
        let l0 = assemble_mr_lift(&fx.data, fx.k, 0, None).unwrap();
        let l1 = assemble_mr_lift(&fx.data, fx.k, 17, None).unwrap();
        let x = inertia_conjugate(&l0, &l1, &fx.data.rep).unwrap_or_else(|| panic!("{}", fx.name));
        assert!(x.residue().is_identity(), "{}", fx.name);
        let xinv = x.inverse().unwrap();
        assert_eq!(x.mul(&l0.rho_sigma()).mul(&xinv), l1.rho_sigma(), "{}", fx.name);
    }
}

#[test]
fn jordan_type_is_constant() {
    for fx in lifts::all() {
        let l = assemble_mr_lift(&fx.data, fx.k, 0, None).unwrap();
        let (res, lifted) = jordan_rank_profile(&l.u);
        assert_eq!(res.len(), fx.data.rep.n(), "{}", fx.name);
        for (a, b) in res.iter().zip(&lifted) {
            assert_eq!(Some(*a), *b, "{}", fx.name);
        }
    }
}

#[test]
fn lower_precision_is_a_truncation() {
    for fx in lifts::all() {
        let hi = assemble_mr_lift(&fx.data, 3, 0, None).unwrap();
        let lo = assemble_mr_lift(&fx.data, 2, 0, None).unwrap();
        assert_eq!(hi.tau.truncate(lo.ring).images, lo.tau.images, "{}", fx.name);
        assert_eq!(hi.a.to_ring(lo.ring), lo.a, "{}", fx.name);
        assert_eq!(
            jordan_rank_profile(&hi.u).0,
            jordan_rank_profile(&lo.u).0,
            "{}",
            fx.name
        );
    }
}

#[test]
fn corrupted_lift_fails_verification() {
    let fx = lifts::two_blocks();
    let mut l = assemble_mr_lift(&fx.data, fx.k, 0, None).unwrap();
    let r = l.ring;
    let mut bump = RingMatrix::zeros(r, 4, 4);
    bump.set(1, 0, r.from_int(25));
    l.n = l.n.add(&bump);
    let report = verify_lift(&l, &fx.data);
    assert!(!report.all_passed);
    assert!(report.failures().contains(&"frobenius_relations"));
    assert!(!report.failures().contains(&"reductions"));

    let mut l = assemble_mr_lift(&fx.data, fx.k, 0, None).unwrap();
    l.u = l.u.add(&bump);
    let report = verify_lift(&l, &fx.data);
    assert!(report.failures().contains(&"jordan_purity"));
}

#[test]
fn sigma_inverting_c3_is_rejected() {
    let f = GaloisRing::prime_field(7).unwrap();
    let g = m(f, 2, &[2, 0, 0, 4]);
    let rep = GroupRep::new(f, 2, vec![g], m(f, 2, &[0, 1, 1, 0]), RingMatrix::identity(f, 2), 3).unwrap();
    let data = ResidualGaloisData::new(rep).unwrap();
    let err = assemble_mr_lift(&data, 2, 0, None).unwrap_err();
    assert!(
        matches!(
            err,
            LiftError::Hypothesis {
                tag: Hypothesis::SigmaActionOrder,
                ..
            }
        ),
        "{err}"
    );
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn p_dividing_the_order_is_an_input_error() {
    let f = GaloisRing::prime_field(3).unwrap();
    let g = m(f, 3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
    let i = RingMatrix::identity(f, 3);
    let err = GroupRep::new(f, 3, vec![g], i.clone(), i, 2).unwrap_err();
    assert!(matches!(err, RepError::OrderDivisibleByP { order: 3, p: 3 }));
    assert_eq!(LiftError::from(err).exit_code(), 1);
}

#[test]
fn optional_z_is_validated() {
    // z = 6 has order 5 in (Z/25)^*, so z^6 = z; over Z/125 it does not
    let f = GaloisRing::prime_field(5).unwrap();
    let i = RingMatrix::identity(f, 1);
    let rep = GroupRep::new(f, 1, vec![], i.clone(), i, 6).unwrap();
    let data = ResidualGaloisData::new(rep).unwrap();
    let l = assemble_mr_lift(&data, 2, 0, Some(&[6])).unwrap();
    assert_eq!(l.rho_sigma(), m(ring(5, 2), 1, &[6]));

    for (k, bad) in [(2, &[2][..]), (2, &[6, 1]), (3, &[6])] {
        let err = assemble_mr_lift(&data, k, 0, Some(bad)).unwrap_err();
        assert!(matches!(err, LiftError::InvalidZ(_)), "{bad:?}: {err}");
        assert_eq!(err.exit_code(), 1);
    }
}

#[test]
fn transporter_detects_non_conjugate_pairs() {
    let r = ring(5, 2);
    let j = m(r, 2, &[1, 1, 0, 1]);
    let j5 = m(r, 2, &[1, 5, 0, 1]);
    assert!(transporter(r, std::slice::from_ref(&j), &[j.pow(3)]).is_some());
    // same residue, different Jordan type over the ring
    assert!(transporter(r, &[j], &[j5]).is_none());
}
