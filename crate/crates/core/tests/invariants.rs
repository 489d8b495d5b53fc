mod common;

use common::{desk, el};
use elastika_core::engine::factor::{max_length, min_length};
use elastika_core::engine::{length_set, Budget};
use elastika_core::invariants::{
    asymptotic_invariants, elasticity_of_element, elasticity_of_monoid, inf_asymptotic_elasticity, power,
    verify_stabilization, verify_stabilization_at,
};
use elastika_core::rational::ratio;
use elastika_core::zoo::numerical::numerical_element;
use elastika_core::zoo::{block_monoid, numerical_monoid, seminormal_fp};
use elastika_core::{FGAbelianGroup, Presentation, Rational};
use num_traits::One;
use proptest::prelude::*;

fn n23() -> elastika_core::ExplicitPresentation {
    numerical_monoid(&[2, 3]).unwrap().presentation
}

#[test]
fn element_elasticities() {
    let p = Presentation::Explicit(n23());
    assert_eq!(elasticity_of_element(&p, &numerical_element(12), Budget::default()).unwrap(), ratio(3, 2));
    assert_eq!(elasticity_of_element(&p, &numerical_element(3), Budget::default()).unwrap(), Rational::one());
    assert_eq!(elasticity_of_element(&p, &numerical_element(0), Budget::default()).unwrap(), Rational::one());
    let s = Presentation::implicit(seminormal_fp(2).unwrap());
    let a = el(&FGAbelianGroup::free(2), &[5, 5], &[]);
    assert_eq!(elasticity_of_element(&s, &a, Budget::default()).unwrap(), ratio(5, 2));
}

#[test]
fn monoid_elasticities() {
    let rep = elasticity_of_monoid(&n23(), Budget::default()).unwrap();
    assert_eq!(rep.value, ratio(3, 2));
    let (w, l) = rep.witness.unwrap();
    assert_eq!(w, numerical_element(6));
    assert_eq!(l.values(), &[2, 3]);
    // cross-check against an element scan
    let p = Presentation::Explicit(n23());
    let scan = (2..=60)
        .map(|n| elasticity_of_element(&p, &numerical_element(n), Budget::default()).unwrap())
        .max()
        .unwrap();
    assert_eq!(scan, rep.value);

    let free = numerical_monoid(&[1]).unwrap().presentation;
    assert_eq!(elasticity_of_monoid(&free, Budget::default()).unwrap().value, Rational::one());
    let b3 = block_monoid(&FGAbelianGroup::cyclic(3).unwrap(), None).unwrap();
    let rep = elasticity_of_monoid(&b3.presentation, Budget::default()).unwrap();
    assert_eq!(rep.value, ratio(3, 2));
    assert_eq!(rep.witness.unwrap().1.values(), &[2, 3]);
    assert_eq!(elasticity_of_monoid(&numerical_monoid(&[3, 5]).unwrap().presentation, Budget::default()).unwrap().value, ratio(5, 3));
}

#[test]
fn asymptotic_examples() {
    let rep = asymptotic_invariants(&n23(), &numerical_element(2), Budget::default()).unwrap();
    assert_eq!((rep.rho_star.clone(), rep.rho_lower_star.clone(), rep.rho_bar.clone()), (ratio(1, 1), ratio(2, 3), ratio(3, 2)));
    assert_eq!(rep.stabilization_n, 3);
    let p = Presentation::Explicit(n23());
    for n in 1..=30u64 {
        let q = elasticity_of_element(&p, &power(&p, &numerical_element(2), n).unwrap(), Budget::default()).unwrap();
        assert!(q <= rep.rho_bar);
    }
    assert!(verify_stabilization(&p, &numerical_element(2), &rep, 4, Budget::default()).unwrap());
    assert!(verify_stabilization_at(&p, &numerical_element(2), 3, 1, Budget::default()).unwrap());
    assert!(!verify_stabilization_at(&p, &numerical_element(2), 1, 4, Budget::default()).unwrap());

    let n35 = numerical_monoid(&[3, 5]).unwrap().presentation;
    assert_eq!(asymptotic_invariants(&n35, &numerical_element(3), Budget::default()).unwrap().rho_bar, ratio(5, 3));
    let free = numerical_monoid(&[1]).unwrap().presentation;
    let rep = asymptotic_invariants(&free, &numerical_element(1), Budget::default()).unwrap();
    assert_eq!(rep.rho_bar, Rational::one());
}

#[test]
fn inf_over_atoms() {
    assert_eq!(inf_asymptotic_elasticity(&n23(), Budget::default()).unwrap().0, ratio(3, 2));
    let (r, i) = inf_asymptotic_elasticity(&desk(), Budget::default()).unwrap();
    assert_eq!(r, Rational::one());
    assert_eq!(desk().atoms()[i].free, vec![0, 1]);
    let b3 = block_monoid(&FGAbelianGroup::cyclic(3).unwrap(), None).unwrap();
    let (r, i) = inf_asymptotic_elasticity(&b3.presentation, Budget::default()).unwrap();
    assert_eq!(r, Rational::one());
    assert!(b3.presentation.atoms()[i].free.iter().filter(|&&c| c > 0).count() == 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn extremes_are_super_and_subadditive(x in 2i64..40, y in 2i64..40, gens in prop::sample::select(vec![vec![2u64, 3], vec![3, 5], vec![3, 4, 5], vec![4, 6, 9]])) {
        let p = Presentation::Explicit(numerical_monoid(&gens).unwrap().presentation);
        let (gx, gy, gs) = (numerical_element(x), numerical_element(y), numerical_element(x + y));
        let b = Budget::default();
        let member = |g| p.is_member(g, b).unwrap();
        prop_assume!(member(&gx) && member(&gy));
        prop_assert!(max_length(&p, &gs, b).unwrap() >= max_length(&p, &gx, b).unwrap() + max_length(&p, &gy, b).unwrap());
        prop_assert!(min_length(&p, &gs, b).unwrap() <= min_length(&p, &gx, b).unwrap() + min_length(&p, &gy, b).unwrap());
        let sum = length_set(&p, &gx, b).unwrap().sumset(&length_set(&p, &gy, b).unwrap());
        let whole = length_set(&p, &gs, b).unwrap();
        prop_assert!(sum.values().iter().all(|&l| whole.contains(l)));
    }

    #[test]
    fn asymptotic_elasticity_bounds_powers(x in 2i64..30, t in 1u64..6) {
        let p = n23();
        let pp = Presentation::Explicit(p.clone());
        let g = numerical_element(x);
        let rep = asymptotic_invariants(&p, &g, Budget::default()).unwrap();
        let gt = power(&pp, &g, t).unwrap();
        let mx = max_length(&pp, &gt, Budget::default()).unwrap();
        let mn = min_length(&pp, &gt, Budget::default()).unwrap();
        let tt = Rational::from_integer((t as i64).into());
        prop_assert!(Rational::from_integer((mx as i64).into()) <= &rep.rho_star * &tt);
        prop_assert!(Rational::from_integer((mn as i64).into()) >= &rep.rho_lower_star * &tt);
        prop_assert_eq!(rep.rho_bar, ratio(3, 2));
    }
}
