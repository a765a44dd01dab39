use super::*;
use crate::base_rings::{FractionalIdealR, Gauss};
use crate::pic::{construct_class_representative, picent_global, PicClass};
use crate::tiled::{radical, ExponentMatrix, GlobalIdealMatrix};

fn place(ring: BaseRing, g: Gauss) -> MaximalIdeal {
    MaximalIdeal::new(ring, g).unwrap()
}

fn two() -> MaximalIdeal {
    place(BaseRing::RationalIntegers, Gauss::int(2))
}

fn local_order(blocks: &[usize], m: &MaximalIdeal) -> GlobalTiledOrder {
    GlobalTiledOrder::from_local(&ExponentMatrix::hereditary_staircase(blocks, m.clone()).unwrap())
}

fn local_radical(d: &GlobalTiledOrder, m: &MaximalIdeal) -> GlobalIdealMatrix {
    let rad = radical(&d.localize(m));
    GlobalIdealMatrix::new(d.clone(), IdealMatrix::from_exponents(m, rad.matrix())).unwrap()
}

fn gaussian_outer() -> GradedOrder {
    let r = BaseRing::GaussianIntegers;
    let five = FractionalIdealR::principal(r, &Gauss::int(5)).unwrap();
    let d = GlobalTiledOrder::hereditary_staircase(&[1; 5], &five).unwrap();
    let group = picent_global(&d).unwrap();
    let q = place(r, Gauss::new(1, -2));
    let x = construct_class_representative(&d, &PicClass::zero(&group).with(&q, 1).unwrap()).unwrap();
    construct_from_pic(&x, None, Scope::Global).unwrap()
}

#[test]
fn trivial_group_is_just_delta() {
    let d = local_order(&[1, 1], &two());
    let g = construct_from_pic(&GlobalIdealMatrix::identity(&d), None, Scope::Global).unwrap();
    assert_eq!(g.group().order(), 1);
    let v = g.prime_hereditary_verdict().unwrap();
    assert!(v.hereditary && v.breakdown.is_empty());

    let bad = GlobalTiledOrder::from_local(&crate::tiled::validate_order(&[vec![0, 0], vec![2, 0]], two()).unwrap());
    let g = construct_from_pic(&GlobalIdealMatrix::identity(&bad), None, Scope::Global).unwrap();
    let v = g.prime_hereditary_verdict().unwrap();
    assert!(!v.hereditary && !v.delta_hereditary);
    assert_eq!(v.delta_failing, vec![two()]);
}

#[test]
fn scalar_component_is_not_strong() {
    let d = local_order(&[1, 1], &two());
    let m_delta = d.ideals().scale(&FractionalIdealR::prime_power(&two(), 1));
    let group = FiniteGroup::cyclic(2);
    let comps = vec![Component::prime(d.ideals().clone()), Component::prime(m_delta)];
    let err = GradedOrder::new(group.clone(), vec![d], comps, None, Scope::Global, GradingKind::Explicit).unwrap_err();
    let g = group.gens()[0].clone();
    assert_eq!(
        err,
        GradedError::NotStronglyGraded(GradingWitness { g: g.clone(), h: g, block: 0, entry: Some((0, 0)) })
    );
}

#[test]
fn nonbasic_construction() {
    let d = local_order(&[2, 1], &two());
    let x = local_radical(&d, &two());
    let g = construct_from_pic(&x, None, Scope::Local(two())).unwrap();
    assert_eq!(g.group().order(), 2);
    assert_eq!(g.kind(), GradingKind::PicConstruction);
    let gen = g.group().gens()[0].clone();
    assert_eq!(g.component(&gen).unwrap().blocks()[0], *x.ideals());

    let cp = g.is_crossed_product().unwrap();
    assert!(!cp.is_crossed_product);
    assert_eq!(cp.per_element, vec![(Perm::identity(2), true), (gen, false)]);

    let (corner, idx) = g.basic_corner_at(&two()).unwrap();
    assert_eq!(idx, vec![0, 2]);
    assert!(corner.is_crossed_product().unwrap().is_crossed_product);
    assert!(corner.strong_grading_witness().is_none());
}

#[test]
fn requested_order_must_be_scalar() {
    let d = local_order(&[2, 1], &two());
    let x = local_radical(&d, &two());
    assert_eq!(construct_from_pic(&x, Some(3), Scope::Global), Err(GradedError::NotFiniteOrder(3)));
    let g = construct_from_pic(&x, Some(4), Scope::Global).unwrap();
    assert_eq!(g.group().order(), 4);
    assert!(g.warnings()[0].starts_with("NonMinimalOrder"));
}

#[test]
fn outer_globally_inner_locally() {
    let g = gaussian_outer();
    let r = BaseRing::GaussianIntegers;
    let (p, q) = (place(r, Gauss::new(1, 2)), place(r, Gauss::new(1, -2)));
    let whole = g.group().whole();
    let global = g.inner_classification(&whole, &Scope::Global).unwrap();
    assert!(global.is_outer());
    assert!(g.inner_classification(&whole, &Scope::Local(p.clone())).unwrap().is_inner());
    assert!(g.inner_classification(&whole, &Scope::Local(q.clone())).unwrap().is_outer());

    let v = g.prime_hereditary_verdict().unwrap();
    assert!(v.delta_hereditary);
    assert!(!v.hereditary);
    assert_eq!(v.breakdown.len(), 2);
    let at_p = v.breakdown.iter().find(|c| c.place == p).unwrap();
    assert_eq!(at_p.p, 5);
    assert_eq!(at_p.inner.len(), 5);
    assert_eq!(at_p.inner_witness, Some(g.group().elements()[1].clone()));
    assert!(v.breakdown.iter().find(|c| c.place == q).unwrap().inner_witness.is_none());
    assert!(!g.local_verdict_at(&p).unwrap());
    assert!(g.local_verdict_at(&q).unwrap());
    assert!(g.is_crossed_product().unwrap().is_crossed_product);
}

#[test]
fn basic_corner_preserves_inner_classes() {
    let g = gaussian_outer();
    let p = place(BaseRing::GaussianIntegers, Gauss::new(1, 2));
    let (corner, _) = g.basic_corner_at(&p).unwrap();
    let ctx = Scope::Local(p);
    let before = g.inner_classification(&g.group().whole(), &ctx).unwrap();
    let after = corner.inner_classification(&corner.group().whole(), &ctx).unwrap();
    assert_eq!(before.inner, after.inner);
}

#[test]
fn radical_grading_of_basic_staircase_is_hereditary() {
    let d = local_order(&[1, 1], &two());
    let g = construct_from_pic(&local_radical(&d, &two()), None, Scope::Local(two())).unwrap();
    let v = g.prime_hereditary_verdict().unwrap();
    assert!(v.hereditary);
    assert_eq!(v.breakdown.len(), 1);
}

#[test]
fn monomial_crossed_product_matches_pic_construction() {
    let d = local_order(&[1, 1], &two());
    let r = BaseRing::RationalIntegers;
    let w = MonomialAction {
        block_perm: vec![0],
        blocks: vec![MonomialBlock {
            perm: vec![1, 0],
            scalars: vec![Scalar::from_element(r, &Gauss::int(2)).unwrap(), Scalar::one(r)],
        }],
    };
    let datum = CrossedProductDatum { generator_actions: vec![w], cocycle: Cocycle::Trivial };
    let cp = construct_crossed_product(vec![d.clone()], FiniteGroup::cyclic(2), &datum, Scope::Global).unwrap();
    let pic = construct_from_pic(&local_radical(&d, &two()), None, Scope::Global).unwrap();
    assert_eq!(cp.components(), pic.components());
    let gen = cp.group().index_of(&cp.group().gens()[0]).unwrap();
    assert_eq!(cp.multiplier(gen, gen).to_fraction(), (Gauss::ONE, Gauss::int(2)));
}

#[test]
fn group_ring_is_inner() {
    let d = GlobalTiledOrder::maximal(BaseRing::RationalIntegers, 1);
    let group = FiniteGroup::cyclic(2);
    let datum = CrossedProductDatum::trivial(&group, std::slice::from_ref(&d));
    let g = construct_crossed_product(vec![d], group, &datum, Scope::Global).unwrap();
    let v = g.prime_hereditary_verdict().unwrap();
    assert!(!v.hereditary);
    assert_eq!(v.breakdown[0].place, two());
}

#[test]
fn conjugation_by_a_unit_of_delta_is_inner() {
    let d = GlobalTiledOrder::maximal(BaseRing::RationalIntegers, 2);
    let r = BaseRing::RationalIntegers;
    let swap = MonomialAction {
        block_perm: vec![0],
        blocks: vec![MonomialBlock { perm: vec![1, 0], scalars: vec![Scalar::one(r); 2] }],
    };
    let datum = CrossedProductDatum { generator_actions: vec![swap], cocycle: Cocycle::Trivial };
    let g = construct_crossed_product(vec![d], FiniteGroup::cyclic(2), &datum, Scope::Global).unwrap();
    assert!(g.inner_classification(&g.group().whole(), &Scope::Global).unwrap().is_inner());
}

#[test]
fn swapping_staircase_indices_does_not_normalize() {
    let d = local_order(&[1, 1], &two());
    let r = BaseRing::RationalIntegers;
    let swap = MonomialAction {
        block_perm: vec![0],
        blocks: vec![MonomialBlock { perm: vec![1, 0], scalars: vec![Scalar::one(r); 2] }],
    };
    let datum = CrossedProductDatum { generator_actions: vec![swap], cocycle: Cocycle::Trivial };
    let group = FiniteGroup::cyclic(2);
    let gen = group.gens()[0].clone();
    assert_eq!(
        construct_crossed_product(vec![d], group, &datum, Scope::Global),
        Err(GradedError::ActionDoesNotNormalize(gen))
    );
}

#[test]
fn cocycle_identity_enforced() {
    let d = GlobalTiledOrder::maximal(BaseRing::GaussianIntegers, 1);
    let group = FiniteGroup::cyclic(3);
    let g = group.gens()[0].clone();
    let mut datum = CrossedProductDatum::trivial(&group, std::slice::from_ref(&d));
    datum.cocycle = Cocycle::Table(vec![(g.clone(), g.clone(), Gauss::I)]);
    assert!(matches!(
        construct_crossed_product(vec![d.clone()], group.clone(), &datum, Scope::Global),
        Err(GradedError::CocycleViolation(..))
    ));
    // a coboundary-free but valid twist: τ(g^a, g^b) = -1 exactly when a + b wraps
    let e = group.elements();
    let exp = |x: &Perm| (0..3).find(|&k| g.pow(k) == *x).unwrap();
    let table = e
        .iter()
        .flat_map(|x| e.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|(x, y)| exp(x) + exp(y) >= 3)
        .map(|(x, y)| (x, y, Gauss::int(-1)))
        .collect();
    datum.cocycle = Cocycle::Table(table);
    assert!(construct_crossed_product(vec![d], group, &datum, Scope::Global).is_ok());
}

#[test]
fn semiprime_needs_corners() {
    let d = local_order(&[1, 1], &two());
    let group = FiniteGroup::symmetric(3);
    let delta = vec![d.clone(), d.clone(), d];
    let datum = CrossedProductDatum::permuting_blocks(&group, &delta);
    let g = construct_crossed_product(delta, group, &datum, Scope::Local(two())).unwrap();
    assert_eq!(g.prime_hereditary_verdict(), Err(GradedError::NotPrimeContext));
    let sylow = g.group().sylow_subgroup(2).unwrap();
    assert_eq!(g.inner_elements(&sylow, &Scope::Local(two())).len(), 1);
}
