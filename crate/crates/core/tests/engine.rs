mod common;

use common::{check_instance, el, random_instance};
use elastika_core::engine::factor::{enumerate_factorizations, max_length, min_length};
use elastika_core::engine::{hilbert_basis, kernel_pairs_basis, length_set, power_fiber_basis, Budget, LinearSystem};
use elastika_core::zoo::{block_monoid, numerical_monoid, seminormal_fp};
use elastika_core::zoo::numerical::numerical_element;
use elastika_core::{Error, FGAbelianGroup, LengthSet, Presentation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn n23() -> Presentation {
    Presentation::Explicit(numerical_monoid(&[2, 3]).unwrap().presentation)
}

#[test]
fn factorizations_of_twelve() {
    let f = enumerate_factorizations(&n23(), &numerical_element(12), Budget::default()).unwrap();
    assert_eq!(f.vectors, vec![vec![0, 4], vec![3, 2], vec![6, 0]]);
    assert_eq!(length_set(&n23(), &numerical_element(12), Budget::default()).unwrap(), LengthSet::new([4, 5, 6]).unwrap());
    let id = enumerate_factorizations(&n23(), &numerical_element(0), Budget::default()).unwrap();
    assert_eq!(id.vectors, vec![vec![0, 0]]);
    assert_eq!(length_set(&n23(), &numerical_element(0), Budget::default()).unwrap(), LengthSet::identity());
    assert!(matches!(enumerate_factorizations(&n23(), &numerical_element(1), Budget::default()), Err(Error::NotMember(_))));
}

#[test]
fn block_sequence_over_z3_has_two_factorizations() {
    let g = FGAbelianGroup::cyclic(3).unwrap();
    let b = block_monoid(&g, None).unwrap();
    let p = Presentation::Explicit(b.presentation.clone());
    // three 1s and three 2s
    let s = b.sequence(&[0, 3, 3]).unwrap();
    let f = enumerate_factorizations(&p, &s, Budget::default()).unwrap();
    assert_eq!(f.vectors.len(), 2);
    assert_eq!(f.lengths(), vec![2, 3]);
}

#[test]
fn extremes() {
    let p = n23();
    assert_eq!(min_length(&p, &numerical_element(14), Budget::default()).unwrap(), 5);
    assert_eq!(max_length(&p, &numerical_element(14), Budget::default()).unwrap(), 7);
    assert_eq!(max_length(&p, &numerical_element(0), Budget::default()).unwrap(), 0);
    let s = Presentation::implicit(seminormal_fp(2).unwrap());
    let a = el(&FGAbelianGroup::free(2), &[4, 7], &[]);
    assert_eq!((min_length(&s, &a, Budget::default()).unwrap(), max_length(&s, &a, Budget::default()).unwrap()), (2, 4));
    let generic = elastika_core::engine::lengths::generic_length_set(&s, &a, Budget::default()).unwrap();
    assert_eq!(generic, LengthSet::interval(2, 4));
    for n in 2..=5 {
        let a = el(&FGAbelianGroup::free(2), &[n, n], &[]);
        assert_eq!(length_set(&s, &a, Budget::default()).unwrap(), LengthSet::interval(2, n as u64));
    }
}

#[test]
fn hilbert_basis_examples() {
    let sys = LinearSystem::new(4, vec![vec![2, 3, -2, -3]], vec![]).unwrap();
    let hb = hilbert_basis(&sys, Budget::default()).unwrap();
    let mut want = vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![3, 0, 0, 2], vec![0, 2, 3, 0]];
    want.sort();
    assert_eq!(hb.solutions, want);
    let diag = hilbert_basis(&LinearSystem::new(2, vec![vec![1, -1]], vec![]).unwrap(), Budget::default()).unwrap();
    assert_eq!(diag.solutions, vec![vec![1, 1]]);
    let cong = hilbert_basis(&LinearSystem::new(2, vec![], vec![(vec![1, 2], 3)]).unwrap(), Budget::default()).unwrap();
    assert_eq!(cong.solutions, vec![vec![0, 3], vec![1, 1], vec![3, 0]]);
}

#[test]
fn kernel_and_power_fiber_examples() {
    let p = numerical_monoid(&[2, 3]).unwrap().presentation;
    assert_eq!(kernel_pairs_basis(&p, Budget::default()).unwrap().solutions.len(), 4);
    let free = numerical_monoid(&[1]).unwrap().presentation;
    assert_eq!(kernel_pairs_basis(&free, Budget::default()).unwrap().solutions, vec![vec![1, 1]]);
    let two = power_fiber_basis(&p, &numerical_element(2), Budget::default()).unwrap();
    assert_eq!(two.solutions, vec![vec![0, 2, 3], vec![1, 0, 1]]);
    let three = power_fiber_basis(&p, &numerical_element(3), Budget::default()).unwrap();
    assert_eq!(three.solutions, vec![vec![0, 1, 1], vec![3, 0, 2]]);

    let g = FGAbelianGroup::cyclic(3).unwrap();
    let b = block_monoid(&g, None).unwrap();
    let kp = kernel_pairs_basis(&b.presentation, Budget::default()).unwrap();
    let m = b.presentation.atoms().len();
    let long_vs_short = kp.solutions.iter().any(|s| {
        let lx: u64 = s[..m].iter().sum();
        let ly: u64 = s[m..].iter().sum();
        (lx, ly) == (2, 3) || (lx, ly) == (3, 2)
    });
    assert!(long_vs_short);
}

#[test]
fn budget_exhaustion_is_reported() {
    let p = numerical_monoid(&[7, 11, 13]).unwrap().presentation;
    let err = max_length(&Presentation::Explicit(p), &numerical_element(5000), Budget::new(10)).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn random_instances_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..60 {
        let p = random_instance(&mut rng);
        if let Err(e) = check_instance(&p, &mut rng) {
            panic!("instance {i} ({:?}): {e}", p.atoms());
        }
    }
}
