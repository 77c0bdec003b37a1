//! Good and pretty good primes, centre smoothness, component-group bounds
//! and the effective lower bound on `p`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::exactint::arith::{is_prime_u128, next_prime_after};
use crate::rootdatum::{Family, RootDatum};
use crate::subsystems::{enumerate_closed_subsystems, ClosedSubsystem};

/// Constant `c` for a Levi with the given simple factors: 16 if all are
/// classical, 8.5 for exactly `G2`, 197 otherwise. Returned as a fraction.
fn levi_constant(families: &[Family]) -> (u128, u128) {
    if families.iter().all(|f| f.is_classical()) {
        (16, 1)
    } else if families == [Family::G] {
        (17, 2)
    } else {
        (197, 1)
    }
}

/// Primes `p` such that `ZPhi / ZSigma` has `p`-torsion for some closed
/// subsystem `Sigma`.
pub fn good_bad_primes(d: &RootDatum) -> BTreeSet<u64> {
    good_bad_primes_from(&enumerate_closed_subsystems(d.root_system()))
}

fn good_bad_primes_from(classes: &[ClosedSubsystem]) -> BTreeSet<u64> {
    classes.iter().flat_map(|c| c.signature.torsion_primes()).collect()
}

/// Torsion primes of `X / ZSigma` over closed `Sigma` in `Phi` together with
/// those of `Y / ZSigma'` over closed `Sigma'` in `Phi^vee`.
///
/// Any subset of `Phi^vee` spans the same lattice as the closed subsystem it
/// generates inside `Phi^vee`, so the second family is taken from the dual
/// root system rather than from coroots of closed subsystems of `Phi`.
pub fn pretty_good_bad_primes(d: &RootDatum) -> BTreeSet<u64> {
    let x_side = enumerate_closed_subsystems(d.root_system());
    let dual = d.dual();
    let y_side = enumerate_closed_subsystems(dual.root_system());
    pretty_good_bad_primes_from(d, &x_side, &dual, &y_side)
}

fn pretty_good_bad_primes_from(
    d: &RootDatum,
    x_side: &[ClosedSubsystem],
    dual: &RootDatum,
    y_side: &[ClosedSubsystem],
) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for c in x_side {
        out.extend(d.root_sublattice_shape(&c.base).torsion_primes());
    }
    for c in y_side {
        out.extend(dual.root_sublattice_shape(&c.base).torsion_primes());
    }
    out
}

pub fn is_pretty_good(d: &RootDatum, p: u64) -> bool {
    !pretty_good_bad_primes(d).contains(&p)
}

/// Primes dividing the torsion of `X / ZPhi`.
pub fn center_nonsmooth_primes(d: &RootDatum) -> BTreeSet<u64> {
    d.center_and_pi1()
        .center_characters
        .torsion_primes()
        .into_iter()
        .collect()
}

/// True iff `p` does not divide the torsion of `X / ZPhi`.
pub fn center_smooth(d: &RootDatum, p: u64) -> bool {
    !center_nonsmooth_primes(d).contains(&p)
}

pub fn pi1_torsion_primes(d: &RootDatum) -> BTreeSet<u64> {
    d.center_and_pi1().pi1.torsion_primes().into_iter().collect()
}

/// `c_G` as an exact fraction, before rounding down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ComponentBound {
    pub numerator: u128,
    pub denominator: u128,
}

impl ComponentBound {
    pub fn floor(&self) -> u128 {
        self.numerator / self.denominator
    }
}

/// `|W| * max_L c_L^{rank L_ad} * |pi_0 Z(L)|` over standard Levi subgroups.
/// Every Levi is conjugate to a standard one, so ranging over subsets of
/// simple roots gives the same maximum as ranging over classes.
pub fn cg_bound_exact(d: &RootDatum) -> ComponentBound {
    let rs = d.root_system();
    let r = rs.rank();
    let mut best = (1u128, 1u128);
    for mask in 0u32..1 << r {
        let subset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        let sub_t = crate::subsystems::iso_type(rs, &subset);
        let families: Vec<Family> = sub_t.iter().map(|f| f.family).collect();
        let (cn, cd) = levi_constant(&families);
        let pi0 = d.root_sublattice_shape(&subset).torsion_order();
        let k = subset.len() as u32;
        let num = cn.pow(k) * pi0;
        let den = cd.pow(k);
        if num * best.1 > best.0 * den {
            best = (num, den);
        }
    }
    let w = rs.cartan_type().weyl_order();
    let (n, dd) = (w * best.0, best.1);
    let g = n.gcd(&dd);
    ComponentBound {
        numerator: n / g,
        denominator: dd / g,
    }
}

pub fn cg_bound(d: &RootDatum) -> u128 {
    cg_bound_exact(d).floor()
}

/// Sharper constants worked out by hand for specific types: for `G2` the
/// non-irreducible subgroups contribute at most `|W| = 12` and the
/// irreducible ones at most `8.5^2`, so 72 suffices.
pub fn improved_constant(d: &RootDatum) -> Option<u128> {
    let t = d.root_system().cartan_type();
    if t.factors.len() == 1 && t.factors[0].family == Family::G {
        let w = t.weyl_order();
        Some(w.max(289 / 4))
    } else {
        None
    }
}

/// `4^{rank D(G)} * n^{dim Z(G)}`.
pub fn lambda_bound(rank_derived: u32, dim_center: u32, n: u64) -> BigUint {
    assert!(n >= 1, "n must be positive");
    BigUint::from(4u32).pow(rank_derived) * BigUint::from(n).pow(dim_center)
}

/// `pi0^2 * c_{G0} * (4^{rank0} * pi0^{rank0})^{ceil(log2 pi0)}`.
pub fn nonconnected_bound(cg0: &BigUint, rank0: u32, pi0_order: u64) -> BigUint {
    assert!(pi0_order >= 1, "component group order must be positive");
    let pi0 = BigUint::from(pi0_order);
    let log = ceil_log2(pi0_order);
    let step = BigUint::from(4u32).pow(rank0) * pi0.pow(rank0);
    &pi0 * &pi0 * cg0 * step.pow(log)
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Bullet {
    pub condition: String,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EffectiveBound {
    pub p: u128,
    /// Constant that `p` must exceed.
    pub constant: u128,
    pub constant_is_improved: bool,
    pub bullets: Vec<Bullet>,
}

fn effective_from(d: &RootDatum, pretty_bad: &BTreeSet<u64>, cg: u128) -> EffectiveBound {
    let improved = improved_constant(d);
    let constant = improved.unwrap_or(cg);
    let rank = d.semisimple_rank() as u128;
    let w = d.root_system().cartan_type().weyl_order();
    let ok =
        |p: u128| is_prime_u128(p) && !pretty_bad.contains(&(p as u64)) && p > rank + 1 && !w.is_multiple_of(p) && p > constant;
    let mut p = next_prime_after(constant.max(rank + 1));
    while !ok(p) {
        p = next_prime_after(p);
    }
    EffectiveBound {
        p,
        constant,
        constant_is_improved: improved.is_some(),
        bullets: bullets_for(d, pretty_bad, p, constant),
    }
}

fn bullets_for(d: &RootDatum, pretty_bad: &BTreeSet<u64>, p: u128, constant: u128) -> Vec<Bullet> {
    let rank = d.semisimple_rank() as u128;
    let w = d.root_system().cartan_type().weyl_order();
    vec![
        Bullet {
            condition: "p is pretty good".into(),
            satisfied: !pretty_bad.iter().any(|&q| q as u128 == p),
        },
        Bullet {
            condition: format!("p > rank D(G) + 1 = {}", rank + 1),
            satisfied: p > rank + 1,
        },
        Bullet {
            condition: format!("p does not divide |W| = {w}"),
            satisfied: !w.is_multiple_of(p),
        },
        Bullet {
            condition: format!("p > {constant}"),
            satisfied: p > constant,
        },
    ]
}

/// Smallest prime meeting every condition of the effective bound.
pub fn effective_p_bound(d: &RootDatum) -> EffectiveBound {
    effective_from(d, &pretty_good_bad_primes(d), cg_bound(d))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PrimeReport {
    pub datum: String,
    pub weyl_order: u128,
    pub bad_primes_good: BTreeSet<u64>,
    pub bad_primes_pretty_good: BTreeSet<u64>,
    pub center_nonsmooth_primes: BTreeSet<u64>,
    pub pi1_torsion_primes: BTreeSet<u64>,
    #[serde(rename = "cG")]
    pub cg: u128,
    #[serde(rename = "cG_exact")]
    pub cg_exact: ComponentBound,
    pub improved_constant: Option<u128>,
    pub effective_min_p: u128,
    pub effective_bullets: Vec<Bullet>,
    pub subsystem_classes: usize,
}

impl PrimeReport {
    pub fn compute(d: &RootDatum) -> PrimeReport {
        let x_side = enumerate_closed_subsystems(d.root_system());
        let dual = d.dual();
        let y_side = enumerate_closed_subsystems(dual.root_system());
        let pretty = pretty_good_bad_primes_from(d, &x_side, &dual, &y_side);
        let cg_exact = cg_bound_exact(d);
        let eff = effective_from(d, &pretty, cg_exact.floor());
        PrimeReport {
            datum: d.label().to_string(),
            weyl_order: d.root_system().cartan_type().weyl_order(),
            bad_primes_good: good_bad_primes_from(&x_side),
            bad_primes_pretty_good: pretty,
            center_nonsmooth_primes: center_nonsmooth_primes(d),
            pi1_torsion_primes: pi1_torsion_primes(d),
            cg: cg_exact.floor(),
            cg_exact,
            improved_constant: improved_constant(d),
            effective_min_p: eff.p,
            effective_bullets: eff.bullets,
            subsystem_classes: x_side.len(),
        }
    }

    /// Every prime that is bad for `good` is accounted for on the pretty
    /// good side.
    pub fn is_consistent(&self) -> bool {
        let covered: BTreeSet<u64> = self
            .bad_primes_pretty_good
            .union(&self.center_nonsmooth_primes)
            .chain(self.pi1_torsion_primes.iter())
            .copied()
            .collect();
        self.bad_primes_good.is_subset(&covered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::IsogenyClass;

    fn datum(t: &str, iso: &str) -> RootDatum {
        RootDatum::from_type(&t.parse().unwrap(), &iso.parse().unwrap()).unwrap()
    }

    #[test]
    fn g2_numbers() {
        let g = datum("G2", "sc");
        let r = PrimeReport::compute(&g);
        assert_eq!(r.weyl_order, 12);
        assert_eq!(r.bad_primes_good, BTreeSet::from([2, 3]));
        assert_eq!(r.cg, 867);
        assert_eq!(r.improved_constant, Some(72));
        assert_eq!(r.effective_min_p, 73);
    }

    #[test]
    fn sl2_and_pgl2() {
        let sl2 = datum("A1", "sc");
        let pgl2 = datum("A1", "ad");
        assert_eq!(pretty_good_bad_primes(&sl2), BTreeSet::from([2]));
        assert_eq!(pretty_good_bad_primes(&pgl2), BTreeSet::from([2]));
        assert!(!center_smooth(&sl2, 2));
        assert!(center_smooth(&sl2, 3));
        assert_eq!(cg_bound(&sl2), 64);
        assert_eq!(effective_p_bound(&sl2).p, 67);
    }

    #[test]
    fn torus_is_trivial() {
        let t = RootDatum::from_type(&"T3".parse().unwrap(), &IsogenyClass::SimplyConnected).unwrap();
        let r = PrimeReport::compute(&t);
        assert!(r.bad_primes_good.is_empty() && r.bad_primes_pretty_good.is_empty());
        assert_eq!(r.cg, 1);
        assert_eq!(r.effective_min_p, 2);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(lambda_bound(3, 0, 7), BigUint::from(64u32));
        assert_eq!(lambda_bound(0, 1, 5), BigUint::from(5u32));
        assert_eq!(nonconnected_bound(&BigUint::from(72u32), 2, 1), BigUint::from(72u32));
        // 2^2 * 1 * (4^0 * 2^0)^1
        assert_eq!(nonconnected_bound(&BigUint::from(1u32), 0, 2), BigUint::from(4u32));
    }
}
