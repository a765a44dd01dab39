//! Exact arithmetic in the two supported Dedekind domains, `Z` and `Z[i]`.
//!
//! Both rings are principal ideal domains, so every fractional ideal is kept
//! as a factorization into maximal ideals and can always produce a generator.
//! Completions are never built: a completed base ring is represented by its
//! maximal ideal, since all downstream code only needs valuations and residue
//! fields.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseRingError {
    #[error("{0} is not a rational prime")]
    NotPrime(i64),
    #[error("zero has no ideal factorization")]
    Zero,
    #[error("cannot parse Gaussian integer from {0:?}")]
    Parse(String),
    #[error("{elem} is not an element of {ring}")]
    NotInRing { elem: Gauss, ring: BaseRing },
    #[error("ideal over {found} used where {expected} was expected")]
    RingMismatch { expected: BaseRing, found: BaseRing },
}

/// A Gaussian integer `re + im*i`. Rational integers are the elements with
/// `im == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gauss {
    pub re: i64,
    pub im: i64,
}

impl Gauss {
    pub const ZERO: Gauss = Gauss { re: 0, im: 0 };
    pub const ONE: Gauss = Gauss { re: 1, im: 0 };
    pub const I: Gauss = Gauss { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        Gauss { re, im }
    }

    pub const fn int(n: i64) -> Self {
        Gauss { re: n, im: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn norm(&self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn conj(&self) -> Self {
        Gauss::new(self.re, -self.im)
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = Gauss::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Gauss) -> Option<Gauss> {
        let n = d.norm();
        if n == 0 {
            return None;
        }
        let t = *self * d.conj();
        if t.re % n == 0 && t.im % n == 0 {
            Some(Gauss::new(t.re / n, t.im / n))
        } else {
            None
        }
    }

    pub fn divides(&self, x: &Gauss) -> bool {
        x.div_exact(self).is_some()
    }

    /// The unique associate with `re > 0, im >= 0` (zero maps to zero).
    pub fn normalized(&self) -> Self {
        let mut z = *self;
        if z.is_zero() {
            return z;
        }
        for _ in 0..4 {
            if z.re > 0 && z.im >= 0 {
                return z;
            }
            z = z * Gauss::I;
        }
        unreachable!("some associate lies in the first quadrant")
    }

    /// The unit `u` with `self = u * self.normalized()`.
    pub fn unit_part(&self) -> Self {
        let n = self.normalized();
        self.div_exact(&n).expect("associates divide each other")
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        Gauss::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re, -self.im)
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |b: i64, lead: bool| match b {
            1 if lead => "i".to_string(),
            1 => "+i".to_string(),
            -1 => "-i".to_string(),
            b if b < 0 || lead => format!("{b}i"),
            b => format!("+{b}i"),
        };
        match (self.re, self.im) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{}", imag(b, true)),
            (a, b) => write!(f, "{a}{}", imag(b, false)),
        }
    }
}

impl FromStr for Gauss {
    type Err = BaseRingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || BaseRingError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return t.parse::<i64>().map(Gauss::int).map_err(|_| err());
        };
        // split at the last sign that is not the leading one
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_str.is_empty() { 0 } else { re_str.parse::<i64>().map_err(|_| err())? };
        let im = match im_str {
            "" | "+" => 1,
            "-" => -1,
            other => other.parse::<i64>().map_err(|_| err())?,
        };
        Ok(Gauss::new(re, im))
    }
}

impl Serialize for Gauss {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gauss {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseRing {
    #[serde(alias = "Z", alias = "integers")]
    RationalIntegers,
    #[serde(alias = "Z[i]", alias = "gaussian")]
    GaussianIntegers,
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::RationalIntegers => write!(f, "Z"),
            BaseRing::GaussianIntegers => write!(f, "Z[i]"),
        }
    }
}

impl BaseRing {
    pub fn contains(&self, x: &Gauss) -> bool {
        match self {
            BaseRing::RationalIntegers => x.im == 0,
            BaseRing::GaussianIntegers => true,
        }
    }

    pub fn normalize(&self, x: &Gauss) -> Gauss {
        match self {
            BaseRing::RationalIntegers => Gauss::int(x.re.abs()),
            BaseRing::GaussianIntegers => x.normalized(),
        }
    }

    pub fn units(&self) -> &'static [Gauss] {
        const Z_UNITS: [Gauss; 2] = [Gauss::ONE, Gauss::int(-1)];
        const ZI_UNITS: [Gauss; 4] = [Gauss::ONE, Gauss::I, Gauss::int(-1), Gauss::new(0, -1)];
        match self {
            BaseRing::RationalIntegers => &Z_UNITS,
            BaseRing::GaussianIntegers => &ZI_UNITS,
        }
    }

    /// Parses an element and checks that it lies in this ring.
    pub fn parse_element(&self, s: &str) -> Result<Gauss, BaseRingError> {
        let x: Gauss = s.parse()?;
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(BaseRingError::NotInRing { elem: x, ring: *self })
        }
    }

    /// Every maximal ideal whose generator appears in a factorization of `x`.
    pub fn prime_divisors(&self, x: &Gauss) -> Result<Vec<MaximalIdeal>, BaseRingError> {
        Ok(FractionalIdealR::principal(*self, x)?.support().cloned().collect())
    }
}

pub fn is_rational_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `|n|` with multiplicity, ascending.
pub fn factor_integer(n: i64) -> Vec<(i64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A maximal ideal of `Z` or `Z[i]`, given by its normalized generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalIdeal {
    ring: BaseRing,
    generator: Gauss,
    characteristic: i64,
    residue_size: i64,
}

/// A completion `R_m` is modelled by the maximal ideal alone.
pub type Place = MaximalIdeal;

impl MaximalIdeal {
    /// Builds the maximal ideal generated by `gen`, which must be prime in `ring`.
    pub fn new(ring: BaseRing, gen: Gauss) -> Result<Self, BaseRingError> {
        if !ring.contains(&gen) {
            return Err(BaseRingError::NotInRing { elem: gen, ring });
        }
        let g = ring.normalize(&gen);
        match ring {
            BaseRing::RationalIntegers => {
                if !is_rational_prime(g.re) {
                    return Err(BaseRingError::NotPrime(g.re));
                }
                Ok(MaximalIdeal { ring, generator: g, characteristic: g.re, residue_size: g.re })
            }
            BaseRing::GaussianIntegers => {
                let n = g.norm();
                if is_rational_prime(n) {
                    Ok(MaximalIdeal { ring, generator: g, characteristic: n, residue_size: n })
                } else if g.im == 0 && is_rational_prime(g.re) && g.re % 4 == 3 {
                    Ok(MaximalIdeal { ring, generator: g, characteristic: g.re, residue_size: n })
                } else {
                    Err(BaseRingError::NotPrime(n))
                }
            }
        }
    }

    pub fn parse(ring: BaseRing, s: &str) -> Result<Self, BaseRingError> {
        Self::new(ring, s.parse()?)
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn generator(&self) -> Gauss {
        self.generator
    }

    pub fn characteristic(&self) -> i64 {
        self.characteristic
    }

    pub fn residue_size(&self) -> i64 {
        self.residue_size
    }

    /// Residue degree `f` with `residue_size = p^f`.
    pub fn residue_degree(&self) -> u32 {
        if self.residue_size == self.characteristic {
            1
        } else {
            2
        }
    }

    /// The generator as usually written by hand: for a split Gaussian prime
    /// `a+bi` this prefers the associate with the smaller positive real part,
    /// so the two primes over 5 print as `1+2i` and `1-2i`.
    pub fn display_generator(&self) -> Gauss {
        let g = self.generator;
        if self.ring == BaseRing::RationalIntegers || g.im == 0 {
            return g;
        }
        let rotated = g * Gauss::new(0, -1);
        if rotated.re < g.re {
            rotated
        } else {
            g
        }
    }

    /// Exponent of this ideal in `(x)`.
    pub fn valuation_of(&self, x: &Gauss) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut y = *x;
        while let Some(q) = y.div_exact(&self.generator) {
            y = q;
            v += 1;
        }
        Some(v)
    }
}

impl fmt::Display for MaximalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.display_generator())
    }
}

/// Splits `(p)` into maximal ideals with ramification indices.
pub fn factor_rational_prime(ring: BaseRing, p: i64) -> Result<Vec<(MaximalIdeal, u32)>, BaseRingError> {
    if !is_rational_prime(p) {
        return Err(BaseRingError::NotPrime(p));
    }
    let mk = |g: Gauss| MaximalIdeal::new(ring, g).expect("constructed prime");
    let mut out = match ring {
        BaseRing::RationalIntegers => vec![(mk(Gauss::int(p)), 1)],
        BaseRing::GaussianIntegers => {
            if p == 2 {
                vec![(mk(Gauss::new(1, 1)), 2)]
            } else if p % 4 == 3 {
                vec![(mk(Gauss::int(p)), 1)]
            } else {
                let a = (1..)
                    .take_while(|a| a * a < p)
                    .find(|a| {
                        let r = p - a * a;
                        let b = (r as f64).sqrt().round() as i64;
                        b * b == r
                    })
                    .expect("Fermat: p = 1 mod 4 is a sum of two squares");
                let b = ((p - a * a) as f64).sqrt().round() as i64;
                vec![(mk(Gauss::new(a, b)), 1), (mk(Gauss::new(a, -b)), 1)]
            }
        }
    };
    out.sort();
    Ok(out)
}

/// A fractional ideal of a PID base ring, stored by its factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalIdealR {
    ring: BaseRing,
    factors: BTreeMap<MaximalIdeal, i64>,
}

/// A generator of a principal fractional ideal, written `numerator / denominator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub numerator: Gauss,
    pub denominator: Gauss,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == Gauss::ONE {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

impl FractionalIdealR {
    /// The unit ideal `R`.
    pub fn unit(ring: BaseRing) -> Self {
        FractionalIdealR { ring, factors: BTreeMap::new() }
    }

    pub fn prime_power(m: &MaximalIdeal, e: i64) -> Self {
        let mut f = Self::unit(m.ring);
        if e != 0 {
            f.factors.insert(m.clone(), e);
        }
        f
    }

    pub fn from_factors(
        ring: BaseRing,
        factors: impl IntoIterator<Item = (MaximalIdeal, i64)>,
    ) -> Result<Self, BaseRingError> {
        let mut out = Self::unit(ring);
        for (m, e) in factors {
            if m.ring != ring {
                return Err(BaseRingError::RingMismatch { expected: ring, found: m.ring });
            }
            *out.factors.entry(m).or_insert(0) += e;
        }
        out.factors.retain(|_, e| *e != 0);
        Ok(out)
    }

    /// The principal ideal `(x)`.
    pub fn principal(ring: BaseRing, x: &Gauss) -> Result<Self, BaseRingError> {
        if x.is_zero() {
            return Err(BaseRingError::Zero);
        }
        if !ring.contains(x) {
            return Err(BaseRingError::NotInRing { elem: *x, ring });
        }
        let norm = match ring {
            BaseRing::RationalIntegers => x.re.abs(),
            BaseRing::GaussianIntegers => x.norm(),
        };
        let mut factors = BTreeMap::new();
        for (p, _) in factor_integer(norm) {
            for (m, _) in factor_rational_prime(ring, p)? {
                let v = m.valuation_of(x).expect("nonzero");
                if v != 0 {
                    factors.insert(m, v);
                }
            }
        }
        Ok(FractionalIdealR { ring, factors })
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &BTreeMap<MaximalIdeal, i64> {
        &self.factors
    }

    pub fn support(&self) -> impl Iterator<Item = &MaximalIdeal> {
        self.factors.keys()
    }

    pub fn valuation(&self, m: &MaximalIdeal) -> i64 {
        self.factors.get(m).copied().unwrap_or(0)
    }

    fn combine(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.ring, other.ring, "ideals over different base rings");
        let mut factors = BTreeMap::new();
        for m in self.factors.keys().chain(other.factors.keys()) {
            let e = op(self.valuation(m), other.valuation(m));
            if e != 0 {
                factors.insert(m.clone(), e);
            }
        }
        FractionalIdealR { ring: self.ring, factors }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    /// `I + J`: the minimum of exponents at every place.
    pub fn sum(&self, other: &Self) -> Self {
        self.combine(other, i64::min)
    }

    /// `I ∩ J`: the maximum of exponents at every place.
    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, i64::max)
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> Self {
        let factors =
            if k == 0 { BTreeMap::new() } else { self.factors.iter().map(|(m, e)| (m.clone(), e * k)).collect() };
        FractionalIdealR { ring: self.ring, factors }
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.factors.keys().chain(other.factors.keys()).all(|m| self.valuation(m) >= other.valuation(m))
    }

    pub fn is_integral(&self) -> bool {
        self.factors.values().all(|e| *e >= 0)
    }

    /// Both supported rings are PIDs, so this always succeeds; the generator
    /// is the product of normalized prime generators.
    pub fn is_principal(&self) -> Option<Generator> {
        let mut numerator = Gauss::ONE;
        let mut denominator = Gauss::ONE;
        for (m, e) in &self.factors {
            let g = m.generator.pow(e.unsigned_abs() as u32);
            if *e > 0 {
                numerator = numerator * g;
            } else {
                denominator = denominator * g;
            }
        }
        Some(Generator { numerator, denominator })
    }

    /// Shorthand for the generator of an integral ideal.
    pub fn integral_generator(&self) -> Option<Gauss> {
        self.is_integral().then(|| self.is_principal().expect("PID").numerator)
    }
}

impl fmt::Display for FractionalIdealR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "R");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|(m, e)| if *e == 1 { m.to_string() } else { format!("{m}^{e}") }).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A nonzero element of the quotient field, stored as a unit of `R` times a
/// product of powers of the normalized prime generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    unit: Gauss,
    ideal: FractionalIdealR,
}

impl Scalar {
    pub fn one(ring: BaseRing) -> Self {
        Scalar { unit: Gauss::ONE, ideal: FractionalIdealR::unit(ring) }
    }

    pub fn from_element(ring: BaseRing, x: &Gauss) -> Result<Self, BaseRingError> {
        let ideal = FractionalIdealR::principal(ring, x)?;
        let g = ideal.integral_generator().expect("principal ideal of an element is integral");
        let unit = x.div_exact(&g).expect("generator divides its element");
        Ok(Scalar { unit, ideal })
    }

    /// The canonical generator of `ideal` (unit part 1).
    pub fn from_ideal(ideal: &FractionalIdealR) -> Self {
        Scalar { unit: Gauss::ONE, ideal: ideal.clone() }
    }

    /// A unit of `R` times the generator of `ideal`.
    pub fn from_parts(unit: Gauss, ideal: FractionalIdealR) -> Result<Self, BaseRingError> {
        if !unit.is_unit() || !ideal.ring().contains(&unit) {
            return Err(BaseRingError::NotInRing { elem: unit, ring: ideal.ring() });
        }
        Ok(Scalar { unit, ideal })
    }

    /// Parses `"x"` or `"x/y"` with `x`, `y` nonzero elements of `R`.
    pub fn parse(ring: BaseRing, s: &str) -> Result<Self, BaseRingError> {
        match s.split_once('/') {
            Some((a, b)) => {
                let a = Self::from_element(ring, &ring.parse_element(a.trim())?)?;
                let b = Self::from_element(ring, &ring.parse_element(b.trim())?)?;
                Ok(a.div(&b))
            }
            None => Self::from_element(ring, &ring.parse_element(s.trim())?),
        }
    }

    pub fn ring(&self) -> BaseRing {
        self.ideal.ring()
    }

    pub fn unit(&self) -> Gauss {
        self.unit
    }

    pub fn ideal(&self) -> &FractionalIdealR {
        &self.ideal
    }

    pub fn is_one(&self) -> bool {
        self.unit == Gauss::ONE && self.ideal.is_unit_ideal()
    }

    pub fn valuation(&self, m: &MaximalIdeal) -> i64 {
        self.ideal.valuation(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Scalar { unit: self.unit * other.unit, ideal: self.ideal.mul(&other.ideal) }
    }

    pub fn inverse(&self) -> Self {
        let unit = Gauss::ONE.div_exact(&self.unit).expect("units are invertible");
        Scalar { unit, ideal: self.ideal.inverse() }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> Self {
        let u = self.unit.pow(k.rem_euclid(4) as u32);
        Scalar { unit: u, ideal: self.ideal.pow(k) }
    }

    /// `(numerator, denominator)` in `R` with coprime supports.
    pub fn to_fraction(&self) -> (Gauss, Gauss) {
        let g = self.ideal.is_principal().expect("PID");
        (self.unit * g.numerator, g.denominator)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_fraction();
        if d == Gauss::ONE {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(re: i64, im: i64) -> Gauss {
        Gauss::new(re, im)
    }

    #[test]
    fn five_splits_in_gaussian_integers() {
        let f = factor_rational_prime(BaseRing::GaussianIntegers, 5).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0.display_generator(), zi(1, 2));
        assert_eq!(f[1].0.display_generator(), zi(1, -2));
        assert!(f.iter().all(|(_, e)| *e == 1));
        assert!(f.iter().all(|(m, _)| m.residue_size() == 5));
    }

    #[test]
    fn five_stays_prime_in_z() {
        let f = factor_rational_prime(BaseRing::RationalIntegers, 5).unwrap();
        assert_eq!(f, vec![(MaximalIdeal::new(BaseRing::RationalIntegers, Gauss::int(5)).unwrap(), 1)]);
    }

    #[test]
    fn two_ramifies() {
        let f = factor_rational_prime(BaseRing::GaussianIntegers, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.generator(), zi(1, 1));
        assert_eq!(f[0].1, 2);
        // (1+i)^2 = 2i, an associate of 2
        assert_eq!(zi(1, 1).pow(2), zi(0, 2));
    }

    #[test]
    fn seven_is_inert() {
        // brute force: no Gaussian integer has norm 7
        let hits = (-3..=3).flat_map(|a| (-3..=3).map(move |b| zi(a, b))).filter(|z| z.norm() == 7).count();
        assert_eq!(hits, 0);
        let f = factor_rational_prime(BaseRing::GaussianIntegers, 7).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.generator(), Gauss::int(7));
        assert_eq!(f[0].0.residue_size(), 49);
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(factor_rational_prime(BaseRing::GaussianIntegers, 15), Err(BaseRingError::NotPrime(15)));
    }

    #[test]
    fn valuations() {
        let r = BaseRing::GaussianIntegers;
        let p = MaximalIdeal::new(r, zi(1, 2)).unwrap();
        let five = FractionalIdealR::principal(r, &Gauss::int(5)).unwrap();
        assert_eq!(five.valuation(&p), 1);
        assert_eq!(FractionalIdealR::unit(r).valuation(&p), 0);
        let ten = FractionalIdealR::principal(r, &Gauss::int(10)).unwrap();
        let two = MaximalIdeal::new(r, zi(1, 1)).unwrap();
        assert_eq!(ten.valuation(&two), 2);
    }

    #[test]
    fn principal_generators() {
        let r = BaseRing::GaussianIntegers;
        let five = FractionalIdealR::principal(r, &Gauss::int(5)).unwrap();
        assert_eq!(five.is_principal().unwrap().numerator.normalized(), Gauss::int(5));
        let p = FractionalIdealR::principal(r, &zi(1, 2)).unwrap();
        let q = FractionalIdealR::principal(r, &zi(1, -2)).unwrap();
        let g = p.mul(&q).is_principal().unwrap();
        assert_eq!(g.denominator, Gauss::ONE);
        assert_eq!(g.numerator.normalized(), Gauss::int(5));
        assert_eq!(p.is_principal().unwrap().numerator, zi(1, 2));
    }

    #[test]
    fn parse_and_print() {
        for (s, z) in [
            ("1+2i", zi(1, 2)),
            ("1-2i", zi(1, -2)),
            ("5", zi(5, 0)),
            ("-i", zi(0, -1)),
            ("i", zi(0, 1)),
            ("2i", zi(0, 2)),
            ("-3+i", zi(-3, 1)),
        ] {
            assert_eq!(s.parse::<Gauss>().unwrap(), z);
            assert_eq!(z.to_string(), s);
        }
        assert!("1+2j".parse::<Gauss>().is_err());
    }

    #[test]
    fn normalization_first_quadrant() {
        for z in [zi(1, -2), zi(-2, -1), zi(0, 3), zi(-4, 0)] {
            let n = z.normalized();
            assert!(n.re > 0 && n.im >= 0);
            assert!(z.unit_part().is_unit());
            assert_eq!(z.unit_part() * n, z);
        }
    }

    #[test]
    fn ideal_sum_and_intersection() {
        let r = BaseRing::RationalIntegers;
        let a = FractionalIdealR::principal(r, &Gauss::int(12)).unwrap();
        let b = FractionalIdealR::principal(r, &Gauss::int(18)).unwrap();
        assert_eq!(a.sum(&b).integral_generator(), Some(Gauss::int(6)));
        assert_eq!(a.intersection(&b).integral_generator(), Some(Gauss::int(36)));
        assert!(a.intersection(&b).is_contained_in(&a));
    }

    #[test]
    fn scalars_round_trip() {
        let r = BaseRing::GaussianIntegers;
        let x = Scalar::parse(r, "3-i").unwrap();
        assert_eq!(x.to_fraction(), (zi(3, -1), Gauss::ONE));
        let y = Scalar::parse(r, "2/1+2i").unwrap();
        assert_eq!(
            y.mul(&Scalar::from_element(r, &zi(1, 2)).unwrap()),
            Scalar::from_element(r, &Gauss::int(2)).unwrap()
        );
        assert!(x.mul(&x.inverse()).is_one());
        assert_eq!(x.pow(3).div(&x.pow(2)), x);
        let z = Scalar::parse(BaseRing::RationalIntegers, "-6/4").unwrap();
        assert_eq!(z.to_fraction(), (Gauss::int(-3), Gauss::int(2)));
        assert_eq!(z.to_string(), "-3/2");
    }
}
