use elastika_core::description::Description;
use elastika_core::model::presentation::{validate_explicit, validate_implicit, ImplicitMonoid, Violation};
use elastika_core::model::LengthSet;
use elastika_core::rational::{fmt_rational, parse_rational, ratio, rationals_in};
use elastika_core::zoo::{block_monoid, numerical_monoid, seminormal_fp, SeminormalFP};
use elastika_core::{Error, ExplicitPresentation, FGAbelianGroup, GroupElement, Presentation};
use proptest::prelude::*;

fn group_strategy() -> impl Strategy<Value = FGAbelianGroup> {
    (0usize..3, proptest::collection::vec(2u64..7, 0..3)).prop_map(|(r, t)| FGAbelianGroup::new(r, t).unwrap())
}

fn element_in(g: &FGAbelianGroup) -> impl Strategy<Value = GroupElement> {
    let g = g.clone();
    (proptest::collection::vec(-20i64..20, g.free_rank()), proptest::collection::vec(0i64..50, g.torsion_orders().len()))
        .prop_map(move |(f, t)| g.element(f, t).unwrap())
}

proptest! {
    #[test]
    fn group_laws((g, x, y, z) in group_strategy().prop_flat_map(|g| {
        let e = element_in(&g);
        (Just(g.clone()), e, element_in(&g), element_in(&g))
    })) {
        let xy = g.add(&x, &y).unwrap();
        prop_assert_eq!(&xy, &g.add(&y, &x).unwrap());
        prop_assert_eq!(g.add(&xy, &z).unwrap(), g.add(&x, &g.add(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(g.add(&x, &g.identity()).unwrap(), x.clone());
        prop_assert!(g.add(&x, &g.neg(&x).unwrap()).unwrap().is_identity());
        prop_assert_eq!(g.scale(&x, 3).unwrap(), g.add(&x, &g.add(&x, &x).unwrap()).unwrap());
        prop_assert!(g.contains(&xy));
    }

    #[test]
    fn rational_text_round_trip(a in -500i64..500, b in 1i64..500) {
        let q = ratio(a, b);
        prop_assert_eq!(parse_rational(&fmt_rational(&q)).unwrap(), q);
    }

    #[test]
    fn rationals_in_are_exactly_the_bounded_fractions(lo_n in 1i64..8, hi_extra in 0i64..8, d in 1u64..9) {
        let lo = ratio(lo_n, 3);
        let hi = ratio(lo_n + hi_extra, 2);
        let got = rationals_in(&lo, &hi, d);
        let mut want = Vec::new();
        for den in 1..=d as i64 {
            for num in 0..=200 {
                let q = ratio(num, den);
                if q >= lo && q <= hi && *q.denom() == den.into() {
                    want.push(q);
                }
            }
        }
        want.sort();
        want.dedup();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn sumset_elasticity_is_between(a in proptest::collection::vec(1u64..12, 1..5), b in proptest::collection::vec(1u64..12, 1..5)) {
        let la = LengthSet::new(a).unwrap();
        let lb = LengthSet::new(b).unwrap();
        let s = la.sumset(&lb);
        prop_assert_eq!(s.min(), la.min() + lb.min());
        prop_assert_eq!(s.max(), la.max() + lb.max());
        let (lo, hi) = if la.elasticity() <= lb.elasticity() { (la.elasticity(), lb.elasticity()) } else { (lb.elasticity(), la.elasticity()) };
        prop_assert!(s.elasticity() >= lo && s.elasticity() <= hi);
    }
}

#[test]
fn group_examples() {
    let z = FGAbelianGroup::free(1);
    let one = z.element(vec![1], vec![]).unwrap();
    let two = z.element(vec![2], vec![]).unwrap();
    assert_eq!(z.add(&one, &two).unwrap().free, vec![3]);
    let z3 = FGAbelianGroup::cyclic(3).unwrap();
    let t2 = z3.element(vec![], vec![2]).unwrap();
    assert_eq!(z3.add(&t2, &t2).unwrap().torsion, vec![1]);
    assert_eq!(z3.add(&t2, &z3.identity()).unwrap(), t2);
    assert!(matches!(z3.add(&t2, &one), Err(Error::SignatureMismatch(_))));
}

#[test]
fn explicit_validation() {
    assert!(validate_explicit(&numerical_monoid(&[2, 3]).unwrap().presentation).is_valid());
    let z = FGAbelianGroup::free(1);
    let e = |n: i64| z.element(vec![n], vec![]).unwrap();
    let p = ExplicitPresentation::with_coordinate_sum(z.clone(), vec![e(2), e(3), e(4)]).unwrap();
    let rep = validate_explicit(&p);
    assert_eq!(rep.violations, vec![Violation::NotMinimal { index: 2, combination: vec![2, 0, 0] }]);
    let p = ExplicitPresentation::with_coordinate_sum(z.clone(), vec![e(0), e(3)]).unwrap();
    assert!(validate_explicit(&p).violations.contains(&Violation::ZeroAtom { index: 0 }));
    assert!(validate_explicit(&p).into_result().is_err());
}

#[derive(Debug)]
struct Faulty;

impl ImplicitMonoid for Faulty {
    fn ambient_dim(&self) -> usize {
        2
    }
    fn contains(&self, v: &[u64]) -> bool {
        seminormal_fp(2).unwrap().contains(v)
    }
    fn is_atom(&self, v: &[u64]) -> bool {
        seminormal_fp(2).unwrap().is_atom(v)
    }
    fn atoms_below(&self, v: &[u64]) -> Vec<Vec<u64>> {
        seminormal_fp(2).unwrap().atoms_below(v).into_iter().filter(|a| a != &vec![1, 2]).collect()
    }
    fn name(&self) -> String {
        "faulty".into()
    }
}

#[test]
fn implicit_validation() {
    let s: SeminormalFP = seminormal_fp(2).unwrap();
    assert!(validate_implicit(&s, 5).unwrap().is_valid());
    let rep = validate_implicit(&Faulty, 3).unwrap();
    assert!(rep.violations.iter().any(|v| matches!(v, Violation::EnumeratorMissing { atom, .. } if atom == &vec![1, 2])));
    assert!(matches!(validate_implicit(&s, 0), Err(Error::Precondition(_))));
}

fn round_trip(p: &Presentation) {
    let d = Description::of(p).unwrap();
    let again = Description::from_json(&d.to_json()).unwrap();
    assert_eq!(again, d);
    let q = again.build().unwrap();
    assert_eq!(Description::of(&q).unwrap(), d);
    if let (Some(a), Some(b)) = (p.as_explicit(), q.as_explicit()) {
        assert_eq!(a, b);
    }
}

#[test]
fn descriptions_round_trip() {
    round_trip(&Presentation::Explicit(numerical_monoid(&[3, 5, 7]).unwrap().presentation));
    round_trip(&Presentation::Explicit(block_monoid(&FGAbelianGroup::cyclic(3).unwrap(), None).unwrap().presentation));
    round_trip(&Presentation::implicit(seminormal_fp(3).unwrap()));
    let d = Description::from_json(r#"{"kind":"numerical","gens":[2,3]}"#).unwrap();
    round_trip(&d.build().unwrap());
}

#[test]
fn descriptions_are_strict() {
    assert!(Description::from_json(r#"{"kind":"numerical","gens":[2,3],"extra":1}"#).is_err());
    assert!(Description::from_json(r#"{"kind":"nonsense"}"#).is_err());
    assert!(Description::from_json(r#"{"kind":"numerical","gens":[2,4]}"#).unwrap().build().is_err());
}
