//! The completion `Λ̂_m` of a graded order written out as a `Z_p`-order with
//! structure constants modulo `p^2`.

use super::algebra::StructureConstantOrder;
use super::linalg::inv_mod;
use super::OracleError;
use crate::base_rings::{BaseRing, Gauss, MaximalIdeal, Scalar};
use crate::graded::GradedOrder;

/// Largest rank the oracle will flatten.
pub const RANK_CAP: usize = 200;

/// `Ô_m / p^2` for the completion `Ô_m` of the base ring, with a `Z_p`-basis
/// of rank one (`Z_p`, or a split Gaussian prime where `i` becomes a square
/// root of `-1` in `Z_p`) or two (`{1, i}` at inert and ramified primes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalRing {
    Rational { p: u64 },
    Split { p: u64, root: u64 },
    Quadratic { p: u64 },
}

impl LocalRing {
    pub fn at(m: &MaximalIdeal) -> Self {
        let p = m.characteristic() as u64;
        match m.ring() {
            BaseRing::RationalIntegers => LocalRing::Rational { p },
            BaseRing::GaussianIntegers if p % 4 == 1 => {
                let g = m.generator();
                let (a, b) = (g.re.rem_euclid(p as i64) as u64, g.im.rem_euclid(p as i64) as u64);
                let r0 = (1..p)
                    .find(|&r| (r * r + 1) % p == 0 && (a + b * r) % p == 0)
                    .expect("a split prime has a matching square root of -1");
                // r = r0 + t p with r^2 = -1 mod p^2
                let q = p * p;
                let defect = (r0 * r0 + 1) % q / p;
                let t = (p - defect % p) * inv_mod(2 * r0 % p, p) % p;
                LocalRing::Split { p, root: r0 + t * p }
            }
            BaseRing::GaussianIntegers => LocalRing::Quadratic { p },
        }
    }

    pub fn p(&self) -> u64 {
        match *self {
            LocalRing::Rational { p } | LocalRing::Split { p, .. } | LocalRing::Quadratic { p } => p,
        }
    }

    /// `Z_p`-rank of `Ô_m`.
    pub fn degree(&self) -> usize {
        match self {
            LocalRing::Quadratic { .. } => 2,
            _ => 1,
        }
    }

    fn modulus(&self) -> i64 {
        (self.p() * self.p()) as i64
    }

    /// Image of `x` as `(c_1, c_i)`; the second coordinate is zero in rank one.
    fn image(&self, x: &Gauss) -> (i64, i64) {
        let q = self.modulus();
        match *self {
            LocalRing::Rational { .. } => (x.re.rem_euclid(q), 0),
            LocalRing::Split { root, .. } => {
                let r = root as i64;
                ((x.re.rem_euclid(q) + x.im.rem_euclid(q) * r) % q, 0)
            }
            LocalRing::Quadratic { .. } => (x.re.rem_euclid(q), x.im.rem_euclid(q)),
        }
    }

    fn mul(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let q = self.modulus();
        match self {
            LocalRing::Quadratic { .. } => {
                ((x.0 * y.0 - x.1 * y.1).rem_euclid(q), (x.0 * y.1 + x.1 * y.0).rem_euclid(q))
            }
            _ => (x.0 * y.0 % q, 0),
        }
    }

    fn inverse(&self, x: (i64, i64)) -> (i64, i64) {
        let p = self.p();
        let q = self.modulus();
        let norm = if self.degree() == 1 { x.0 } else { self.mul(x, (x.0, -x.1)).0 };
        // invert mod p, then one Newton step: y = y0 (2 - n y0)
        let y0 = inv_mod(norm.rem_euclid(p as i64) as u64, p) as i64;
        let y = (y0 * (2 - norm * y0 % q)).rem_euclid(q);
        if self.degree() == 1 {
            (y, 0)
        } else {
            self.mul((x.0, -x.1), (y, 0))
        }
    }

    /// `ω^s` for the basis `{1, i}` (only `s = 0` in rank one).
    fn omega(&self, s: usize) -> (i64, i64) {
        if s == 0 {
            (1, 0)
        } else {
            (0, 1)
        }
    }
}

/// `μ = π^{v_m(μ)} · u` with `u` a unit at `m`; returns the image of `u`.
fn unit_part_at(ring: &LocalRing, m: &MaximalIdeal, mu: &Scalar) -> (i64, i64) {
    let (num, den) = mu.to_fraction();
    let strip = |mut x: Gauss| {
        while let Some(q) = x.div_exact(&m.generator()) {
            x = q;
        }
        x
    };
    let n = ring.image(&strip(num));
    let d = ring.image(&strip(den));
    ring.mul(n, ring.inverse(d))
}

struct BasisIndex {
    // offset of (g, a) blocks; entry (i, j, s) follows in row-major order
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    degree: usize,
    blocks: usize,
}

impl BasisIndex {
    fn index(&self, g: usize, a: usize, i: usize, j: usize, s: usize) -> usize {
        let n = self.sizes[a];
        self.offsets[g * self.blocks + a] + (i * n + j) * self.degree + s
    }
}

/// `Λ̂_m` as a `Z_p`-order: basis `π^{x_ij} ω^s E_ij` in block `a` of the
/// component `Λ_g`, where `π` is the generator of `m` and `x_ij` its
/// exponent in that entry.
pub fn flatten(l: &GradedOrder, m: &MaximalIdeal) -> Result<StructureConstantOrder, OracleError> {
    if !l.scope().admits(m) {
        return Err(OracleError::OutOfScope(m.clone()));
    }
    let ring = LocalRing::at(m);
    let group = l.group();
    let order = group.order();
    let sizes: Vec<usize> = l.delta().iter().map(|d| d.n()).collect();
    let t = sizes.len();
    let degree = ring.degree();
    let mut offsets = Vec::with_capacity(order * t);
    let mut labels = Vec::new();
    for (g, elem) in group.elements().iter().enumerate() {
        let comp = &l.components()[g];
        for a in 0..t {
            offsets.push(labels.len());
            let (rows, cols) = (sizes[a], sizes[comp.block_perm()[a]]);
            debug_assert_eq!(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    for s in 0..degree {
                        labels.push(format!("{elem}:{a}:{i},{j}{}", if s == 1 { "i" } else { "" }));
                    }
                }
            }
        }
    }
    if labels.len() > RANK_CAP {
        return Err(OracleError::RankCapExceeded(labels.len()));
    }
    let idx = BasisIndex { offsets, sizes: sizes.clone(), degree, blocks: t };
    let exponents: Vec<crate::tiled::IntMatrix> = (0..order)
        .flat_map(|g| (0..t).map(move |a| (g, a)))
        .map(|(g, a)| l.components()[g].blocks()[a].localize(m))
        .collect();
    let mut coords = Vec::with_capacity(labels.len());
    for g in 0..order {
        for (a, &n) in sizes.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    for s in 0..degree {
                        coords.push((g, a, i, j, s));
                    }
                }
            }
        }
    }
    let exp = |g: usize, a: usize, i: usize, j: usize| exponents[g * t + a].get(i, j);
    let pi = ring.image(&m.generator());
    let pi_pow = |e: i64| (0..e).fold((1, 0), |acc, _| ring.mul(acc, pi));
    let units: Vec<((i64, i64), i64)> = (0..order * order)
        .map(|gh| {
            let mu = l.multiplier(gh / order, gh % order);
            (unit_part_at(&ring, m, mu), mu.valuation(m))
        })
        .collect();
    let table = |s_idx: usize, t_idx: usize| -> Vec<(usize, i64)> {
        let (g, a, i, j, s) = coords[s_idx];
        let (h, b, k, l2, s2) = coords[t_idx];
        if b != l.components()[g].block_perm()[a] || k != j {
            return vec![];
        }
        let gh = group.mul_index(g, h);
        let (u, v) = units[g * order + h];
        let e = exp(g, a, i, j) + exp(h, b, k, l2) + v - exp(gh, a, i, l2);
        assert!(e >= 0, "product leaves the component");
        let mut c = ring.mul(u, pi_pow(e));
        c = ring.mul(c, ring.mul(ring.omega(s), ring.omega(s2)));
        let mut out = vec![(idx.index(gh, a, i, l2, 0), c.0)];
        if degree == 2 {
            out.push((idx.index(gh, a, i, l2, 1), c.1));
        }
        out
    };
    StructureConstantOrder::from_fn(ring.p(), labels, table)
}
