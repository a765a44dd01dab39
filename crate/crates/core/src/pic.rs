//! Central Picard groups of hereditary tiled orders.
//!
//! Locally `Picent` is cyclic of order `t` (the number of blocks), generated
//! by the radical. Over a PID the global group is the direct sum of the local
//! groups at the places where the order is not maximal.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::base_rings::{FractionalIdealR, MaximalIdeal};
use crate::tiled::{
    ideal_multiply, is_hereditary_local, radical, ExponentMatrix, FractionalIdealMatrix, GlobalIdealMatrix,
    GlobalTiledOrder, IdealMatrix, TiledError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicError {
    #[error("order is not hereditary at {0}")]
    NotHereditary(MaximalIdeal),
    #[error("bimodule at {0} is not a power of the radical up to a scalar")]
    NoMatchingPower(MaximalIdeal),
    #[error("{0} is not a place where the order is non-maximal")]
    UnsupportedPlace(MaximalIdeal),
    #[error(transparent)]
    Tiled(#[from] TiledError),
}

/// `Picent` of a local hereditary order: `Z/t`, generated by the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPicent {
    pub order: ExponentMatrix,
    pub t: usize,
    pub generator: FractionalIdealMatrix,
}

pub fn picent_local(order: &ExponentMatrix) -> Result<LocalPicent, PicError> {
    if !is_hereditary_local(order) {
        return Err(PicError::NotHereditary(order.place().clone()));
    }
    let rad = radical(order);
    let mut power = rad.clone();
    let mut t = 1;
    while power.scalar_shift().is_none() {
        power = ideal_multiply(&power, &rad)?;
        t += 1;
    }
    debug_assert_eq!(t, order.classes().len());
    debug_assert_eq!(power.scalar_shift(), Some(1));
    Ok(LocalPicent { order: order.clone(), t, generator: rad })
}

/// `Some(s)` iff `X = m^s Δ`, i.e. `X ≅ Δ` as bimodules.
pub fn bimodule_trivial_local(x: &FractionalIdealMatrix) -> Option<i64> {
    x.scalar_shift()
}

/// The `k` in `0..t` and shift `s` with `X = m^s rad^k`.
pub fn local_class_of(x: &FractionalIdealMatrix) -> Result<(usize, i64), PicError> {
    let pic = picent_local(x.order())?;
    let mut power = x.order().as_ideal();
    for k in 0..pic.t {
        if let Some(s) = x.matrix().constant_offset_from(power.matrix()) {
            return Ok((k, s));
        }
        power = ideal_multiply(&power, &pic.generator)?;
    }
    Err(PicError::NoMatchingPower(x.order().place().clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalPicent {
    pub components: Vec<(MaximalIdeal, LocalPicent)>,
}

impl GlobalPicent {
    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    pub fn order(&self) -> usize {
        self.components.iter().map(|(_, c)| c.t).product()
    }

    pub fn modulus_at(&self, m: &MaximalIdeal) -> Option<usize> {
        self.components.iter().find(|(p, _)| p == m).map(|(_, c)| c.t)
    }
}

impl fmt::Display for GlobalPicent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.components.iter().map(|(m, c)| format!("Z/{} at ({})", c.t, m.display_generator())).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

pub fn picent_global(order: &GlobalTiledOrder) -> Result<GlobalPicent, PicError> {
    let mut components = Vec::new();
    for m in order.support() {
        let local = picent_local(&order.localize(&m))?;
        if local.t > 1 {
            components.push((m, local));
        }
    }
    Ok(GlobalPicent { components })
}

/// An element of the global `Picent`, as residues `k_m mod t_m` per place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicClass {
    moduli: BTreeMap<MaximalIdeal, usize>,
    classes: BTreeMap<MaximalIdeal, usize>,
}

impl PicClass {
    pub fn zero(group: &GlobalPicent) -> Self {
        let moduli: BTreeMap<_, _> = group.components.iter().map(|(m, c)| (m.clone(), c.t)).collect();
        let classes = moduli.keys().map(|m| (m.clone(), 0)).collect();
        PicClass { moduli, classes }
    }

    pub fn with(mut self, m: &MaximalIdeal, k: i64) -> Result<Self, PicError> {
        let t = *self.moduli.get(m).ok_or_else(|| PicError::UnsupportedPlace(m.clone()))?;
        self.classes.insert(m.clone(), k.rem_euclid(t as i64) as usize);
        Ok(self)
    }

    pub fn get(&self, m: &MaximalIdeal) -> usize {
        self.classes.get(m).copied().unwrap_or(0)
    }

    pub fn modulus(&self, m: &MaximalIdeal) -> usize {
        self.moduli.get(m).copied().unwrap_or(1)
    }

    pub fn places(&self) -> impl Iterator<Item = (&MaximalIdeal, usize)> {
        self.classes.iter().map(|(m, &k)| (m, k))
    }

    pub fn is_zero(&self) -> bool {
        self.classes.values().all(|&k| k == 0)
    }

    pub fn add(&self, other: &PicClass) -> PicClass {
        assert_eq!(self.moduli, other.moduli, "classes from different groups");
        let classes = self.moduli.iter().map(|(m, &t)| (m.clone(), (self.get(m) + other.get(m)) % t)).collect();
        PicClass { moduli: self.moduli.clone(), classes }
    }

    /// Additive order of the class.
    pub fn order(&self) -> usize {
        self.moduli.iter().map(|(m, &t)| t / gcd(t, self.get(m))).fold(1, lcm)
    }
}

impl Serialize for PicClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.classes.len()))?;
        for (m, k) in &self.classes {
            map.serialize_entry(&format!("({})", m.display_generator()), k)?;
        }
        map.end()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn pic_class_of(x: &GlobalIdealMatrix) -> Result<PicClass, PicError> {
    let group = picent_global(x.order())?;
    let mut class = PicClass::zero(&group);
    let places: std::collections::BTreeSet<MaximalIdeal> = x.order().support().union(&x.support()).cloned().collect();
    for m in places {
        let (k, _) = local_class_of(&x.localize(&m))?;
        if k != 0 {
            class = class.with(&m, k as i64)?;
        }
    }
    Ok(class)
}

/// Glues the pattern `rad_m^{k_m}` at each place of `target` onto `Δ`.
pub fn construct_class_representative(
    order: &GlobalTiledOrder,
    target: &PicClass,
) -> Result<GlobalIdealMatrix, PicError> {
    let group = picent_global(order)?;
    let n = order.n();
    let mut ideals = order.ideals().clone();
    for (m, k) in target.places() {
        let local = group.components.iter().find(|(p, _)| p == m).map(|(_, c)| c);
        let local = local.ok_or_else(|| PicError::UnsupportedPlace(m.clone()))?;
        let pattern = local.generator.pow(k);
        let lambda = local.order.matrix();
        ideals = IdealMatrix::from_fn(order.ring(), n, n, |i, j| {
            ideals.get(i, j).mul(&FractionalIdealR::prime_power(m, pattern.get(i, j) - lambda.get(i, j)))
        });
    }
    Ok(GlobalIdealMatrix::new(order.clone(), ideals)?)
}

/// `Some(c)` iff `X = cΔ`; over a PID every consistent family of local
/// shifts is principal, so this is `X ≅ Δ` as bimodules.
pub fn bimodule_trivial_global(x: &GlobalIdealMatrix) -> Option<FractionalIdealR> {
    x.ideals().scalar_ratio(x.order().ideals())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_rings::{BaseRing, Gauss};

    fn gaussian_order() -> GlobalTiledOrder {
        let r = BaseRing::GaussianIntegers;
        GlobalTiledOrder::hereditary_staircase(&[1; 5], &FractionalIdealR::principal(r, &Gauss::int(5)).unwrap())
            .unwrap()
    }

    fn p() -> MaximalIdeal {
        MaximalIdeal::new(BaseRing::GaussianIntegers, Gauss::new(1, 2)).unwrap()
    }

    fn q() -> MaximalIdeal {
        MaximalIdeal::new(BaseRing::GaussianIntegers, Gauss::new(1, -2)).unwrap()
    }

    #[test]
    fn local_picent_sizes() {
        let m = MaximalIdeal::new(BaseRing::RationalIntegers, Gauss::int(3)).unwrap();
        let t = |b: &[usize]| picent_local(&ExponentMatrix::hereditary_staircase(b, m.clone()).unwrap()).unwrap().t;
        assert_eq!(t(&[1; 5]), 5);
        assert_eq!(t(&[4]), 1);
        assert_eq!(t(&[2, 1]), 2);
        let bad = crate::tiled::validate_order(&[vec![0, 0], vec![2, 0]], m.clone()).unwrap();
        assert!(matches!(picent_local(&bad), Err(PicError::NotHereditary(_))));
    }

    #[test]
    fn gaussian_picent() {
        let g = picent_global(&gaussian_order()).unwrap();
        assert_eq!(g.to_string(), "Z/5 at (1+2i) ⊕ Z/5 at (1-2i)");
        assert_eq!(g.order(), 25);
        assert!(picent_global(&GlobalTiledOrder::maximal(BaseRing::GaussianIntegers, 3)).unwrap().is_trivial());

        let r = BaseRing::RationalIntegers;
        let six = FractionalIdealR::principal(r, &Gauss::int(6)).unwrap();
        let d = GlobalTiledOrder::hereditary_staircase(&[1, 1], &six).unwrap();
        assert_eq!(picent_global(&d).unwrap().to_string(), "Z/2 at (2) ⊕ Z/2 at (3)");
    }

    #[test]
    fn local_triviality() {
        let m = MaximalIdeal::new(BaseRing::RationalIntegers, Gauss::int(5)).unwrap();
        let d = ExponentMatrix::hereditary_staircase(&[1; 5], m).unwrap();
        assert_eq!(bimodule_trivial_local(&d.as_ideal()), Some(0));
        let rad = radical(&d);
        assert_eq!(bimodule_trivial_local(&rad), None);
        assert_eq!(bimodule_trivial_local(&rad.pow(5)), Some(1));
    }

    #[test]
    fn the_outer_bimodule() {
        let d = gaussian_order();
        let group = picent_global(&d).unwrap();
        let target = PicClass::zero(&group).with(&q(), 1).unwrap();
        let x = construct_class_representative(&d, &target).unwrap();
        let five = Gauss::int(5);
        for i in 0..5 {
            for j in 0..5 {
                let expected = match i.cmp(&j) {
                    std::cmp::Ordering::Less => Gauss::int(1),
                    std::cmp::Ordering::Equal => Gauss::new(1, -2),
                    std::cmp::Ordering::Greater => five,
                };
                assert_eq!(
                    x.ideals().get(i, j),
                    &FractionalIdealR::principal(BaseRing::GaussianIntegers, &expected).unwrap()
                );
            }
        }
        let class = pic_class_of(&x).unwrap();
        assert_eq!((class.get(&p()), class.get(&q())), (0, 1));
        assert_eq!(class.order(), 5);
        assert_eq!(bimodule_trivial_local(&x.localize(&p())), Some(0));
        assert!(bimodule_trivial_global(&x).is_none());
        let c = bimodule_trivial_global(&x.pow(5)).unwrap();
        assert_eq!(c, FractionalIdealR::prime_power(&q(), 1));
    }

    #[test]
    fn round_trip_and_group_law() {
        let d = gaussian_order();
        let group = picent_global(&d).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let c = PicClass::zero(&group).with(&p(), a).unwrap().with(&q(), b).unwrap();
                let x = construct_class_representative(&d, &c).unwrap();
                assert_eq!(pic_class_of(&x).unwrap(), c);
                let y = construct_class_representative(&d, &c.add(&c)).unwrap();
                assert_eq!(pic_class_of(&x.mul(&y).unwrap()).unwrap(), c.add(&c).add(&c));
            }
        }
        assert!(pic_class_of(&GlobalIdealMatrix::identity(&d)).unwrap().is_zero());
    }

    #[test]
    fn unsupported_place_rejected() {
        let d = gaussian_order();
        let group = picent_global(&d).unwrap();
        let m = MaximalIdeal::new(BaseRing::GaussianIntegers, Gauss::int(3)).unwrap();
        assert_eq!(PicClass::zero(&group).with(&m, 1), Err(PicError::UnsupportedPlace(m)));
    }
}
