//! Tiled orders over the global base ring: matrices of fractional ideals.

use std::collections::BTreeSet;
use std::fmt;

use crate::base_rings::{BaseRing, FractionalIdealR, MaximalIdeal};

use super::local::{is_hereditary_local, ExponentMatrix, FractionalIdealMatrix, IntMatrix};
use super::TiledError;

/// A rectangular matrix of fractional ideals: the lattice
/// `{(a_ij) : a_ij ∈ I_ij}` in `M_{r×c}(K)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealMatrix {
    ring: BaseRing,
    rows: usize,
    cols: usize,
    entries: Vec<FractionalIdealR>,
}

impl fmt::Debug for IdealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl IdealMatrix {
    pub fn from_rows(ring: BaseRing, rows: Vec<Vec<FractionalIdealR>>) -> Result<Self, TiledError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(TiledError::Ragged);
        }
        let entries: Vec<FractionalIdealR> = rows.into_iter().flatten().collect();
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(TiledError::RingMismatch(e.ring()));
        }
        Ok(IdealMatrix { ring, rows: r, cols: c, entries })
    }

    pub fn from_fn(ring: BaseRing, rows: usize, cols: usize, f: impl Fn(usize, usize) -> FractionalIdealR) -> Self {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        IdealMatrix { ring, rows, cols, entries }
    }

    /// Lifts an exponent matrix at `m` to the ideals `m^{e_ij}`.
    pub fn from_exponents(m: &MaximalIdeal, e: &IntMatrix) -> Self {
        Self::from_fn(m.ring(), e.rows(), e.cols(), |i, j| FractionalIdealR::prime_power(m, e.get(i, j)))
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FractionalIdealR {
        &self.entries[i * self.cols + j]
    }

    /// Maximal ideals where some entry has nonzero valuation.
    pub fn support(&self) -> BTreeSet<MaximalIdeal> {
        self.entries.iter().flat_map(|e| e.support().cloned()).collect()
    }

    pub fn localize(&self, m: &MaximalIdeal) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).valuation(m))
    }

    /// Lattice product: `(XY)_ij = Σ_k X_ik Y_kj`.
    pub fn mul(&self, other: &IdealMatrix) -> IdealMatrix {
        assert_eq!(self.cols, other.rows, "ideal matrix shape mismatch");
        Self::from_fn(self.ring, self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k).mul(other.get(k, j)))
                .reduce(|a, b| a.sum(&b))
                .expect("nonempty inner dimension")
        })
    }

    pub fn scale(&self, c: &FractionalIdealR) -> IdealMatrix {
        IdealMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IdealMatrix {
        Self::from_fn(self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn is_contained_in(&self, other: &IdealMatrix) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a.is_contained_in(b))
    }

    /// `Some(c)` with `self = c · other`, when such a scalar ideal exists.
    pub fn scalar_ratio(&self, other: &IdealMatrix) -> Option<FractionalIdealR> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let c = self.entries.first()?.mul(&other.entries[0].inverse());
        (other.scale(&c) == *self).then_some(c)
    }

    pub fn first_mismatch(&self, other: &IdealMatrix) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

/// A tiled order `(I_ij)` in `M_n(K)` with `I_ii = R` and `I_ik I_kj ⊆ I_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlobalTiledOrder {
    ideals: IdealMatrix,
}

impl GlobalTiledOrder {
    pub fn new(ideals: IdealMatrix) -> Result<Self, TiledError> {
        if ideals.rows != ideals.cols {
            return Err(TiledError::NotSquare);
        }
        let n = ideals.rows;
        if let Some(i) = (0..n).find(|&i| !ideals.get(i, i).is_unit_ideal()) {
            return Err(TiledError::ZeroDiagonalViolation(i));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !ideals.get(i, k).mul(ideals.get(k, j)).is_contained_in(ideals.get(i, j)) {
                        return Err(TiledError::ClosureViolation(i, j, k));
                    }
                }
            }
        }
        Ok(GlobalTiledOrder { ideals })
    }

    pub fn maximal(ring: BaseRing, n: usize) -> Self {
        GlobalTiledOrder { ideals: IdealMatrix::from_fn(ring, n, n, |_, _| FractionalIdealR::unit(ring)) }
    }

    /// Block staircase with `ideal` strictly below the block diagonal and `R`
    /// elsewhere.
    pub fn hereditary_staircase(block_sizes: &[usize], ideal: &FractionalIdealR) -> Result<Self, TiledError> {
        if block_sizes.is_empty() || block_sizes.contains(&0) {
            return Err(TiledError::EmptyBlock);
        }
        let ring = ideal.ring();
        let block_of: Vec<usize> =
            block_sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect();
        let n = block_of.len();
        Self::new(IdealMatrix::from_fn(ring, n, n, |i, j| {
            if block_of[i] > block_of[j] {
                ideal.clone()
            } else {
                FractionalIdealR::unit(ring)
            }
        }))
    }

    /// The global order whose only non-maximal place is that of `local`.
    pub fn from_local(local: &ExponentMatrix) -> Self {
        GlobalTiledOrder { ideals: IdealMatrix::from_exponents(local.place(), local.matrix()) }
    }

    pub fn ring(&self) -> BaseRing {
        self.ideals.ring
    }

    pub fn n(&self) -> usize {
        self.ideals.rows
    }

    pub fn ideals(&self) -> &IdealMatrix {
        &self.ideals
    }

    pub fn support(&self) -> BTreeSet<MaximalIdeal> {
        self.ideals.support()
    }

    /// `Δ_m`: entrywise valuation at `m`.
    pub fn localize(&self, m: &MaximalIdeal) -> ExponentMatrix {
        ExponentMatrix::new(self.ideals.localize(m), m.clone()).expect("localization of a valid order")
    }

    pub fn corner(&self, indices: &[usize]) -> Result<GlobalTiledOrder, TiledError> {
        super::local::check_indices(indices, self.n())?;
        Ok(GlobalTiledOrder { ideals: self.ideals.submatrix(indices, indices) })
    }
}

/// Result of the local-global hereditariness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalHereditary {
    pub hereditary: bool,
    pub checked: Vec<MaximalIdeal>,
    pub failing: Vec<MaximalIdeal>,
}

/// Hereditary iff hereditary at every completion; only places in the support
/// need checking since the order is maximal everywhere else.
pub fn is_hereditary_global(order: &GlobalTiledOrder) -> GlobalHereditary {
    let checked: Vec<MaximalIdeal> = order.support().into_iter().collect();
    let failing: Vec<MaximalIdeal> =
        checked.iter().filter(|m| !is_hereditary_local(&order.localize(m))).cloned().collect();
    GlobalHereditary { hereditary: failing.is_empty(), checked, failing }
}

/// A fractional two-sided ideal of a global tiled order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlobalIdealMatrix {
    order: GlobalTiledOrder,
    ideals: IdealMatrix,
}

impl GlobalIdealMatrix {
    pub fn new(order: GlobalTiledOrder, ideals: IdealMatrix) -> Result<Self, TiledError> {
        if ideals.rows != order.n() || ideals.cols != order.n() {
            return Err(TiledError::NotSquare);
        }
        let d = order.ideals();
        if !d.mul(&ideals).is_contained_in(&ideals) || !ideals.mul(d).is_contained_in(&ideals) {
            return Err(TiledError::NotABimodule);
        }
        Ok(GlobalIdealMatrix { order, ideals })
    }

    pub fn order(&self) -> &GlobalTiledOrder {
        &self.order
    }

    pub fn ideals(&self) -> &IdealMatrix {
        &self.ideals
    }

    pub fn identity(order: &GlobalTiledOrder) -> Self {
        GlobalIdealMatrix { order: order.clone(), ideals: order.ideals.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, TiledError> {
        if self.order != other.order {
            return Err(TiledError::OrderMismatch);
        }
        Ok(GlobalIdealMatrix { order: self.order.clone(), ideals: self.ideals.mul(&other.ideals) })
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(&self.order), |acc, _| acc.mul(self).expect("same order"))
    }

    pub fn scale(&self, c: &FractionalIdealR) -> Self {
        GlobalIdealMatrix { order: self.order.clone(), ideals: self.ideals.scale(c) }
    }

    pub fn support(&self) -> BTreeSet<MaximalIdeal> {
        self.ideals.support()
    }

    pub fn localize(&self, m: &MaximalIdeal) -> FractionalIdealMatrix {
        FractionalIdealMatrix::new(self.order.localize(m), self.ideals.localize(m)).expect("localization of a bimodule")
    }
}
