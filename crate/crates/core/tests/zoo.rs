mod common;

use common::el;
use elastika_core::engine::{length_set, Budget};
use elastika_core::model::presentation::{validate_implicit, ImplicitMonoid};
use elastika_core::rational::ratio;
use elastika_core::zoo::numerical::numerical_element;
use elastika_core::zoo::{
    block_monoid, coproduct, coproduct_full_elasticity_witness, numerical_monoid, required_components, seminormal_fp,
    tblock_monoid, TBlockSpec,
};
use elastika_core::{Error, FGAbelianGroup, LengthSet, Presentation};

#[test]
fn numerical_generators() {
    let n = numerical_monoid(&[2, 3, 4]).unwrap();
    assert_eq!(n.generators, vec![2, 3]);
    assert_eq!(n.dropped, vec![4]);
    assert!(numerical_monoid(&[2, 4]).is_err());
    assert!(numerical_monoid(&[]).is_err());
}

#[test]
fn block_monoid_atoms() {
    let z3 = FGAbelianGroup::cyclic(3).unwrap();
    let b = block_monoid(&z3, None).unwrap();
    let mut seqs: Vec<Vec<i64>> = b.presentation.atoms().iter().map(|a| a.free.clone()).collect();
    seqs.sort();
    // multiplicities of 0, 1, 2
    assert_eq!(seqs, vec![vec![0, 0, 3], vec![0, 1, 1], vec![0, 3, 0], vec![1, 0, 0]]);
    let trivial = block_monoid(&FGAbelianGroup::cyclic(2).unwrap(), Some(vec![el(&FGAbelianGroup::cyclic(2).unwrap(), &[], &[0])])).unwrap();
    assert_eq!(trivial.presentation.atoms().len(), 1);
    let z2 = block_monoid(&FGAbelianGroup::cyclic(2).unwrap(), None).unwrap();
    assert_eq!(z2.presentation.atoms().len(), 2);
    let z5 = block_monoid(&FGAbelianGroup::cyclic(5).unwrap(), None).unwrap();
    // Davenport constant of Z/5 is 5; longest atom 1^5
    assert_eq!(z5.presentation.atoms().iter().map(|a| a.free.iter().sum::<i64>()).max(), Some(5));
}

#[test]
fn seminormal_lengths() {
    let s = Presentation::implicit(seminormal_fp(2).unwrap());
    let g = FGAbelianGroup::free(2);
    assert_eq!(length_set(&s, &el(&g, &[3, 3], &[]), Budget::default()).unwrap(), LengthSet::new([2, 3]).unwrap());
    assert_eq!(length_set(&s, &el(&g, &[1, 7], &[]), Budget::default()).unwrap(), LengthSet::interval(1, 1));
    assert!(validate_implicit(&seminormal_fp(3).unwrap(), 3).unwrap().is_valid());
    let r1 = Presentation::implicit(seminormal_fp(1).unwrap());
    assert_eq!(length_set(&r1, &el(&FGAbelianGroup::free(1), &[4], &[]), Budget::default()).unwrap(), LengthSet::interval(4, 4));
    let generic = elastika_core::engine::lengths::generic_length_set(&r1, &el(&FGAbelianGroup::free(1), &[4], &[]), Budget::default()).unwrap();
    assert_eq!(generic, LengthSet::interval(4, 4));
}

fn z2_spec() -> TBlockSpec {
    let g = FGAbelianGroup::cyclic(2).unwrap();
    let e = |t: i64| g.element(vec![], vec![t]).unwrap();
    TBlockSpec { group: g.clone(), g0: vec![e(0), e(1)], components: vec![2], iota: vec![vec![e(1), e(0)]] }
}

#[test]
fn tblock_atoms() {
    let m = tblock_monoid(z2_spec()).unwrap();
    assert!(validate_implicit(&m, 3).unwrap().is_valid());
    // p1 p2 (−g) with −g = 1
    assert!(m.is_atom(&[0, 1, 1, 1]));
    assert!(m.is_atom(&[1, 0, 0, 0]));
    assert!(!m.is_atom(&[0, 2, 0, 0]) || m.is_atom(&[0, 2, 0, 0]) == m.contains(&[0, 2, 0, 0]));
    assert_eq!(m.minimal_component_atom(0).unwrap(), vec![2, 1]);
    let trivial = TBlockSpec {
        group: FGAbelianGroup::new(0, vec![]).unwrap(),
        g0: vec![FGAbelianGroup::new(0, vec![]).unwrap().identity()],
        components: vec![],
        iota: vec![],
    };
    let t = tblock_monoid(trivial).unwrap();
    assert_eq!(t.atoms_below(&[3]), vec![vec![1]]);
    let bad = TBlockSpec { components: vec![3], ..z2_spec() };
    assert!(tblock_monoid(bad).is_err());
}

#[test]
fn coproduct_lengths_are_sumsets() {
    let n23 = Presentation::Explicit(numerical_monoid(&[2, 3]).unwrap().presentation);
    let free = Presentation::Explicit(numerical_monoid(&[1]).unwrap().presentation);
    let cp = coproduct(vec![n23.clone(), free]).unwrap();
    let g = cp.combine(&[numerical_element(12), numerical_element(1)]).unwrap();
    assert_eq!(length_set(&cp.presentation, &g, Budget::default()).unwrap(), LengthSet::new([5, 6, 7]).unwrap());
    let sq = coproduct(vec![n23.clone(), n23.clone()]).unwrap();
    let g = sq.combine(&[numerical_element(6), numerical_element(6)]).unwrap();
    let l = length_set(&sq.presentation, &g, Budget::default()).unwrap();
    assert_eq!(l, LengthSet::new([4, 5, 6]).unwrap());
    assert_eq!(sq.split(&g).unwrap(), vec![numerical_element(6), numerical_element(6)]);
    let single = coproduct(vec![n23.clone()]).unwrap();
    assert_eq!(single.presentation.as_explicit(), n23.as_explicit());
    let mixed = coproduct(vec![n23, Presentation::implicit(seminormal_fp(2).unwrap())]);
    assert!(matches!(mixed, Err(Error::Invalid(_))));
    let imp = coproduct(vec![Presentation::implicit(seminormal_fp(2).unwrap()), Presentation::implicit(seminormal_fp(2).unwrap())]).unwrap();
    let g = el(&FGAbelianGroup::free(4), &[3, 3, 2, 5], &[]);
    assert_eq!(length_set(&imp.presentation, &g, Budget::default()).unwrap(), LengthSet::new([4, 5]).unwrap());
}

#[test]
fn coproduct_witnesses_over_block_components() {
    let b3 = block_monoid(&FGAbelianGroup::cyclic(3).unwrap(), None).unwrap().presentation;
    let parts = vec![b3.clone(), b3.clone(), b3.clone(), b3.clone()];
    let w = coproduct_full_elasticity_witness(&parts, &ratio(4, 3), Budget::default()).unwrap();
    assert_eq!(w.lengths, LengthSet::new([3, 4]).unwrap());
    assert_eq!(length_set(&w.coproduct.presentation, &w.element, Budget::default()).unwrap(), w.lengths);
    let w = coproduct_full_elasticity_witness(&parts, &ratio(3, 2), Budget::default()).unwrap();
    assert!(w.padded.is_empty() && w.selected.len() == 1);
    let w = coproduct_full_elasticity_witness(&parts, &ratio(7, 5), Budget::default()).unwrap();
    assert_eq!(w.lengths.elasticity(), ratio(7, 5));
    assert_eq!(length_set(&w.coproduct.presentation, &w.element, Budget::default()).unwrap(), w.lengths);
    assert_eq!(required_components(&b3, &ratio(7, 5), Budget::default()).unwrap(), w.required);
    let few = coproduct_full_elasticity_witness(&parts[..1], &ratio(4, 3), Budget::default());
    assert!(matches!(few, Err(Error::InsufficientComponents { .. })));
}
