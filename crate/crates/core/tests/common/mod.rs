#![allow(dead_code)]

use hereditary::base_rings::{BaseRing, FractionalIdealR, Gauss, MaximalIdeal};
use hereditary::cli::{semiprime_fixture, NONBASIC_FIXTURE, OUTER_FIXTURE};
use hereditary::graded::{construct_crossed_product, construct_from_pic, CrossedProductDatum, GradedOrder, Scope};
use hereditary::groups::{FiniteGroup, Perm, Subgroup};
use hereditary::io::{build_graded, parse_graded, parse_json};
use hereditary::semiprime::permutation_crossed_product;
use hereditary::tiled::{radical, ExponentMatrix, GlobalIdealMatrix, GlobalTiledOrder, IdealMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn place(ring: BaseRing, g: Gauss) -> MaximalIdeal {
    MaximalIdeal::new(ring, g).unwrap()
}

pub fn z(p: i64) -> MaximalIdeal {
    place(BaseRing::RationalIntegers, Gauss::int(p))
}

pub fn zi(re: i64, im: i64) -> MaximalIdeal {
    place(BaseRing::GaussianIntegers, Gauss::new(re, im))
}

/// Places of each kind: rational, split, inert and ramified Gaussian.
pub fn sample_places() -> Vec<MaximalIdeal> {
    vec![z(2), z(3), z(5), zi(1, 2), zi(3, 0), zi(1, 1)]
}

pub fn staircase(blocks: &[usize], m: &MaximalIdeal) -> GlobalTiledOrder {
    GlobalTiledOrder::from_local(&ExponentMatrix::hereditary_staircase(blocks, m.clone()).unwrap())
}

pub fn rad_bimodule(d: &GlobalTiledOrder, m: &MaximalIdeal) -> GlobalIdealMatrix {
    let rad = radical(&d.localize(m));
    let lambda = d.ideals().localize(m);
    let ideals = IdealMatrix::from_fn(d.ring(), d.n(), d.n(), |i, j| {
        d.ideals().get(i, j).mul(&FractionalIdealR::prime_power(m, rad.matrix().get(i, j) - lambda.get(i, j)))
    });
    GlobalIdealMatrix::new(d.clone(), ideals).unwrap()
}

pub fn trivially_graded(d: &GlobalTiledOrder) -> GradedOrder {
    construct_from_pic(&GlobalIdealMatrix::identity(d), None, Scope::Global).unwrap()
}

pub fn group_ring(d: &GlobalTiledOrder, group: FiniteGroup, scope: Scope) -> GradedOrder {
    let datum = CrossedProductDatum::trivial(&group, std::slice::from_ref(d));
    construct_crossed_product(vec![d.clone()], group, &datum, scope).unwrap()
}

pub fn outer_example() -> GradedOrder {
    parse_graded(&parse_json(OUTER_FIXTURE).unwrap()).unwrap()
}

pub fn nonbasic_example() -> GradedOrder {
    parse_graded(&parse_json(NONBASIC_FIXTURE).unwrap()).unwrap()
}

pub fn semiprime_example(d: usize) -> GradedOrder {
    build_graded(&semiprime_fixture(d).unwrap()).unwrap()
}

/// Calls `visit` on every `n × n` matrix with zero diagonal, off-diagonal
/// entries from `values`, satisfying `λ_ij <= λ_ik + λ_kj`.
pub fn for_each_closed_matrix(n: usize, values: &[i64], mut visit: impl FnMut(&[Vec<i64>])) {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let total = values.len().pow(cells.len() as u32);
    let mut m = vec![vec![0i64; n]; n];
    for code in 0..total {
        let mut c = code;
        for &(i, j) in &cells {
            m[i][j] = values[c % values.len()];
            c /= values.len();
        }
        let closed = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| m[i][j] <= m[i][k] + m[k][j])));
        if closed {
            visit(&m);
        }
    }
}

/// Graded orders with flattened rank at most 64 at every relevant place,
/// covering all three kinds of construction and all kinds of place.
pub fn graded_corpus() -> Vec<(String, GradedOrder)> {
    let mut out = Vec::new();
    for m in sample_places() {
        for blocks in [vec![1, 1], vec![2, 1], vec![1, 1, 1], vec![1, 2]] {
            let d = staircase(&blocks, &m);
            let x = rad_bimodule(&d, &m);
            let l = construct_from_pic(&x, None, Scope::Local(m.clone())).unwrap();
            out.push((format!("rad grading of {blocks:?} at {m}"), l));
        }
        let d = staircase(&[1, 1, 1], &m);
        let x = rad_bimodule(&d, &m).pow(2);
        out.push((
            format!("rad^2 grading of [1,1,1] at {m}"),
            construct_from_pic(&x, None, Scope::Local(m.clone())).unwrap(),
        ));
        let p = m.characteristic() as usize;
        if p <= 3 {
            out.push((
                format!("group ring C_{p} over [1,1] at {m}"),
                group_ring(&staircase(&[1, 1], &m), FiniteGroup::cyclic(p), Scope::Local(m.clone())),
            ));
        }
    }
    let two = z(2);
    out.push((
        "group ring S_3 over Z".into(),
        group_ring(&GlobalTiledOrder::maximal(BaseRing::RationalIntegers, 1), FiniteGroup::symmetric(3), Scope::Global),
    ));
    out.push((
        "group ring C_2 over M_2(Z)".into(),
        group_ring(&GlobalTiledOrder::maximal(BaseRing::RationalIntegers, 2), FiniteGroup::cyclic(2), Scope::Global),
    ));
    out.push((
        "group ring C_4 over Z[i]".into(),
        group_ring(&GlobalTiledOrder::maximal(BaseRing::GaussianIntegers, 1), FiniteGroup::cyclic(4), Scope::Global),
    ));
    out.push((
        "S_2 permuting two staircases at 2".into(),
        permutation_crossed_product(&staircase(&[1, 1], &two), 2, Scope::Local(two.clone())).unwrap(),
    ));
    out.push((
        "S_2 permuting two maximal orders".into(),
        permutation_crossed_product(&GlobalTiledOrder::maximal(BaseRing::RationalIntegers, 2), 2, Scope::Global)
            .unwrap(),
    ));
    out.push(("nonbasic example".into(), nonbasic_example()));
    let six = FractionalIdealR::principal(BaseRing::RationalIntegers, &Gauss::int(6)).unwrap();
    let d6 = GlobalTiledOrder::hereditary_staircase(&[1, 1], &six).unwrap();
    for m in [z(2), z(3)] {
        let x = rad_bimodule(&d6, &m);
        out.push((
            format!("rad grading of the (6) staircase at {m}"),
            construct_from_pic(&x, None, Scope::Global).unwrap(),
        ));
    }
    out
}

/// A random subgroup generated by up to two random elements.
pub fn random_subgroup(g: &FiniteGroup, rng: &mut impl Rng) -> Subgroup {
    let k = rng.gen_range(0..=2);
    let gens: Vec<Perm> = (0..k).map(|_| g.elements().choose(rng).unwrap().clone()).collect();
    g.subgroup(gens).unwrap()
}

/// A random partition-preserving subgroup of `S_d × S_k` on `d + k` points
/// with order at most 24.
fn random_block_group(d: usize, k: usize, rng: &mut impl Rng) -> FiniteGroup {
    loop {
        let count = rng.gen_range(1..=3);
        let gens: Vec<Perm> = (0..count)
            .map(|_| {
                let mut a: Vec<usize> = (0..d).collect();
                a.shuffle(rng);
                let mut b: Vec<usize> = (d..d + k).collect();
                b.shuffle(rng);
                a.extend(b);
                Perm::from_images(a).unwrap()
            })
            .collect();
        if let Ok(g) = FiniteGroup::new(d + k, gens) {
            if g.order() <= 24 {
                return g;
            }
        }
    }
}

/// A random crossed product with `|G| <= 24` and a context to test in.
pub fn random_crossed_product(rng: &mut impl Rng) -> (String, GradedOrder, Scope) {
    let two = z(2);
    match rng.gen_range(0..4) {
        0 => {
            let d = rng.gen_range(2..=4);
            let k = rng.gen_range(0..=(5 - d).min(3));
            let group = random_block_group(d, k, rng);
            let block = if rng.gen_bool(0.5) {
                staircase(&[1, 1], &two)
            } else {
                GlobalTiledOrder::maximal(BaseRing::RationalIntegers, 1)
            };
            let delta = vec![block; d];
            let datum = CrossedProductDatum::permuting_blocks(&group, &delta);
            let l = construct_crossed_product(delta, group, &datum, Scope::Local(two.clone())).unwrap();
            (format!("block permutation, d = {d}, k = {k}"), l, Scope::Local(two))
        }
        1 => {
            let m = sample_places().choose(rng).unwrap().clone();
            let n = rng.gen_range(2..=6);
            let d = staircase(&vec![1; n], &m);
            let k = rng.gen_range(1..n);
            let x = rad_bimodule(&d, &m).pow(k);
            let l = construct_from_pic(&x, None, Scope::Local(m.clone())).unwrap();
            (format!("rad^{k} on {n} blocks at {m}"), l, Scope::Local(m))
        }
        2 => {
            let group = random_block_group(rng.gen_range(1..=4), 0, rng);
            let l = group_ring(&staircase(&[1, 1], &two), group, Scope::Local(two.clone()));
            ("group ring".to_string(), l, Scope::Local(two))
        }
        _ => {
            let l = outer_example();
            let ctx = [Scope::Global, Scope::Local(zi(1, 2)), Scope::Local(zi(1, -2))].choose(rng).unwrap().clone();
            ("outer example".to_string(), l, ctx)
        }
    }
}

/// The inner elements of `g⁻¹Hg` and the conjugates of the inner elements
/// of `H`, both sorted.
pub fn conjugation_sides(l: &GradedOrder, h: &Subgroup, g: &Perm, ctx: &Scope) -> (Vec<Perm>, Vec<Perm>) {
    let mut lhs = l.inner_elements(&h.conjugate(g), ctx);
    let mut rhs: Vec<Perm> = l.inner_elements(h, ctx).iter().map(|x| x.conjugate_by(g)).collect();
    lhs.sort();
    rhs.sort();
    (lhs, rhs)
}

/// Every combination of Sylow indices, one per prime divisor of `|G|`.
pub fn sylow_index_choices(g: &FiniteGroup) -> Vec<Vec<(i64, usize)>> {
    let mut out: Vec<Vec<(i64, usize)>> = vec![Vec::new()];
    for p in g.prime_divisors() {
        let count = g.all_sylow_subgroups(p).unwrap().len();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..count).map(move |k| {
                    let mut v = prefix.clone();
                    v.push((p, k));
                    v
                })
            })
            .collect();
    }
    out
}

/// Picks the Sylow subgroup at the chosen index (modulo the number of them).
pub fn choose_sylow(choice: &[(i64, usize)], g: &FiniteGroup, p: i64) -> Subgroup {
    let all = g.all_sylow_subgroups(p).unwrap();
    let k = choice.iter().find(|(q, _)| *q == p).map_or(0, |(_, k)| *k);
    all[k % all.len()].clone()
}
