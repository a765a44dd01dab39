//! Tiled orders at a single maximal ideal, described by exponent matrices.
//!
//! An order `Δ = (m^{λ_ij})` and its fractional ideals `X = (m^{x_ij})` are
//! multiplied in the min-plus semiring: `(XY)_ij = min_k x_ik + y_kj`.

use std::fmt;

use crate::base_rings::MaximalIdeal;

use super::TiledError;

/// A dense integer matrix with min-plus products.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, TiledError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(TiledError::Ragged);
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.concat() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        IntMatrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: i64) -> Self {
        IntMatrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).take(self.rows).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// `(self · other)_ij = min_k self_ik + other_kj`.
    pub fn min_plus(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "min-plus shape mismatch");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) + other.get(k, j)).min().unwrap_or(i64::MAX)
        })
    }

    pub fn shifted(&self, s: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x + s).collect() }
    }

    /// `Some(s)` when `self = other + s` entrywise.
    pub fn constant_offset_from(&self, other: &IntMatrix) -> Option<i64> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let mut diffs = self.data.iter().zip(&other.data).map(|(a, b)| a - b);
        let first = diffs.next().unwrap_or(0);
        diffs.all(|d| d == first).then_some(first)
    }

    /// Entrywise `self >= other`, i.e. the lattice of `self` lies in that of `other`.
    pub fn is_contained_in(&self, other: &IntMatrix) -> bool {
        self.data.iter().zip(&other.data).all(|(a, b)| a >= b)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// A tiled order in `M_n(K)` at one maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    lambda: IntMatrix,
    place: MaximalIdeal,
}

/// Checks that `entries` is the exponent matrix of an order: zero diagonal
/// and `λ_ik + λ_kj >= λ_ij`.
pub fn validate_order(entries: &[Vec<i64>], place: MaximalIdeal) -> Result<ExponentMatrix, TiledError> {
    let lambda = IntMatrix::from_rows(entries)?;
    ExponentMatrix::new(lambda, place)
}

impl ExponentMatrix {
    pub fn new(lambda: IntMatrix, place: MaximalIdeal) -> Result<Self, TiledError> {
        if !lambda.is_square() {
            return Err(TiledError::NotSquare);
        }
        let n = lambda.rows();
        if let Some(i) = (0..n).find(|&i| lambda.get(i, i) != 0) {
            return Err(TiledError::ZeroDiagonalViolation(i));
        }
        if let Some((i, j, k)) = closure_violation(&lambda, &lambda, &lambda) {
            return Err(TiledError::ClosureViolation(i, j, k));
        }
        Ok(ExponentMatrix { lambda, place })
    }

    /// `M_n(R_m)`.
    pub fn maximal(n: usize, place: MaximalIdeal) -> Self {
        ExponentMatrix { lambda: IntMatrix::filled(n, n, 0), place }
    }

    /// The block staircase with the given block sizes: exponent 0 on and
    /// above the block diagonal, 1 below it. This is the standard hereditary
    /// order with that block profile.
    pub fn hereditary_staircase(block_sizes: &[usize], place: MaximalIdeal) -> Result<Self, TiledError> {
        if block_sizes.is_empty() || block_sizes.contains(&0) {
            return Err(TiledError::EmptyBlock);
        }
        let block_of: Vec<usize> =
            block_sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect();
        let n = block_of.len();
        let lambda = IntMatrix::from_fn(n, n, |i, j| i64::from(block_of[i] > block_of[j]));
        Ok(ExponentMatrix { lambda, place })
    }

    pub fn n(&self) -> usize {
        self.lambda.rows()
    }

    pub fn place(&self) -> &MaximalIdeal {
        &self.place
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.lambda
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.lambda.get(i, j)
    }

    /// The order viewed as an ideal of itself.
    pub fn as_ideal(&self) -> FractionalIdealMatrix {
        FractionalIdealMatrix { order: self.clone(), x: self.lambda.clone() }
    }

    /// `m^s Δ`.
    pub fn scalar_ideal(&self, s: i64) -> FractionalIdealMatrix {
        FractionalIdealMatrix { order: self.clone(), x: self.lambda.shifted(s) }
    }

    pub fn is_maximal(&self) -> bool {
        // conjugate of M_n(R) iff a single zero-pair class
        self.classes().len() == 1
    }

    /// Classes of the relation `λ_ij + λ_ji = 0`, ordered by least index.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut class_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (i..n).filter(|&j| self.get(i, j) + self.get(j, i) == 0).collect();
            for &j in &members {
                class_of[j] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// `eΔe` for the idempotent `e` summing the diagonal units at `indices`.
    pub fn corner(&self, indices: &[usize]) -> Result<ExponentMatrix, TiledError> {
        check_indices(indices, self.n())?;
        Ok(ExponentMatrix { lambda: self.lambda.submatrix(indices, indices), place: self.place.clone() })
    }
}

pub(super) fn check_indices(indices: &[usize], n: usize) -> Result<(), TiledError> {
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(TiledError::InvalidIndices);
        }
    }
    if indices.is_empty() {
        return Err(TiledError::InvalidIndices);
    }
    Ok(())
}

/// First `(i, j, k)` with `left_ik + right_kj < target_ij`.
fn closure_violation(left: &IntMatrix, right: &IntMatrix, target: &IntMatrix) -> Option<(usize, usize, usize)> {
    for i in 0..target.rows() {
        for j in 0..target.cols() {
            for k in 0..left.cols() {
                if left.get(i, k) + right.get(k, j) < target.get(i, j) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// A fractional two-sided ideal of a local tiled order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FractionalIdealMatrix {
    order: ExponentMatrix,
    x: IntMatrix,
}

impl FractionalIdealMatrix {
    /// Checks bimodule closure `λ_ik + x_kj >= x_ij` and `x_ik + λ_kj >= x_ij`.
    pub fn new(order: ExponentMatrix, x: IntMatrix) -> Result<Self, TiledError> {
        if x.rows() != order.n() || x.cols() != order.n() {
            return Err(TiledError::NotSquare);
        }
        if let Some((i, j, k)) = closure_violation(order.matrix(), &x, &x) {
            return Err(TiledError::BimoduleViolation(i, j, k));
        }
        if let Some((i, j, k)) = closure_violation(&x, order.matrix(), &x) {
            return Err(TiledError::BimoduleViolation(i, j, k));
        }
        Ok(FractionalIdealMatrix { order, x })
    }

    pub fn from_rows(order: ExponentMatrix, rows: &[Vec<i64>]) -> Result<Self, TiledError> {
        Self::new(order, IntMatrix::from_rows(rows)?)
    }

    pub fn order(&self) -> &ExponentMatrix {
        &self.order
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.x
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.x.get(i, j)
    }

    pub fn is_order(&self) -> bool {
        &self.x == self.order.matrix()
    }

    pub fn shifted(&self, s: i64) -> Self {
        FractionalIdealMatrix { order: self.order.clone(), x: self.x.shifted(s) }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(self.order.as_ideal(), |acc, _| ideal_multiply(&acc, self).expect("same order"))
    }

    /// `Some(s)` when this ideal is `m^s Δ`.
    pub fn scalar_shift(&self) -> Option<i64> {
        self.x.constant_offset_from(self.order.matrix())
    }
}

/// `(XY)_ij = min_k x_ik + y_kj`.
pub fn ideal_multiply(
    x: &FractionalIdealMatrix,
    y: &FractionalIdealMatrix,
) -> Result<FractionalIdealMatrix, TiledError> {
    if x.order != y.order {
        return Err(TiledError::OrderMismatch);
    }
    Ok(FractionalIdealMatrix { order: x.order.clone(), x: x.x.min_plus(&y.x) })
}

/// Jacobson radical: `r_ij = λ_ij + [λ_ij + λ_ji = 0]`.
pub fn radical(order: &ExponentMatrix) -> FractionalIdealMatrix {
    let n = order.n();
    let l = order.matrix();
    let r = IntMatrix::from_fn(n, n, |i, j| l.get(i, j) + i64::from(l.get(i, j) + l.get(j, i) == 0));
    FractionalIdealMatrix { order: order.clone(), x: r }
}

/// Left dual `(Δ : X)_l = {y : yX ⊆ Δ}`, with `y_ik = max_j λ_ij - x_kj`.
pub fn dual_ideal(x: &FractionalIdealMatrix) -> FractionalIdealMatrix {
    let n = x.order.n();
    let l = x.order.matrix();
    let y = IntMatrix::from_fn(n, n, |i, k| (0..n).map(|j| l.get(i, j) - x.get(k, j)).max().unwrap());
    FractionalIdealMatrix { order: x.order.clone(), x: y }
}

/// Right dual `{y : Xy ⊆ Δ}`, with `y_kj = max_i λ_ij - x_ik`.
pub fn right_dual_ideal(x: &FractionalIdealMatrix) -> FractionalIdealMatrix {
    let n = x.order.n();
    let l = x.order.matrix();
    let y = IntMatrix::from_fn(n, n, |k, j| (0..n).map(|i| l.get(i, j) - x.get(i, k)).max().unwrap());
    FractionalIdealMatrix { order: x.order.clone(), x: y }
}

/// The two-sided inverse, if `X` is invertible.
pub fn inverse_ideal(x: &FractionalIdealMatrix) -> Option<FractionalIdealMatrix> {
    let y = dual_ideal(x);
    let delta = x.order.matrix();
    let yx = y.x.min_plus(&x.x);
    let xy = x.x.min_plus(&y.x);
    (&yx == delta && &xy == delta).then_some(y)
}

pub fn is_invertible(x: &FractionalIdealMatrix) -> bool {
    inverse_ideal(x).is_some()
}

/// Hereditary iff the radical is invertible.
pub fn is_hereditary_local(order: &ExponentMatrix) -> bool {
    is_invertible(&radical(order))
}

/// Block sizes of a hereditary order, listed around the radical cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveProfile {
    /// Classes of mutually isomorphic indecomposable projectives (columns),
    /// in radical-cycle order starting from the class of index 0.
    pub classes: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
}

impl ProjectiveProfile {
    pub fn t(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn is_basic(&self) -> bool {
        self.block_sizes.iter().all(|&m| m == 1)
    }
}

/// Index of the class whose order column matches `col` up to a constant shift.
fn column_class(order: &ExponentMatrix, classes: &[Vec<usize>], col: &[i64]) -> Option<usize> {
    let l = order.matrix();
    classes.iter().position(|cls| {
        let rep = l.column(cls[0]);
        let s = col[0] - rep[0];
        col.iter().zip(&rep).all(|(a, b)| a - b == s)
    })
}

pub fn projective_profile(order: &ExponentMatrix) -> Result<ProjectiveProfile, TiledError> {
    if !is_hereditary_local(order) {
        return Err(TiledError::NotHereditary);
    }
    let raw = order.classes();
    let rad = radical(order);
    // the radical column of class d is isomorphic to the order column of its
    // predecessor c; walk c -> d
    let mut successor = vec![usize::MAX; raw.len()];
    for (d, cls) in raw.iter().enumerate() {
        let c = column_class(order, &raw, &rad.matrix().column(cls[0])).ok_or(TiledError::NotHereditary)?;
        successor[c] = d;
    }
    let mut classes = Vec::with_capacity(raw.len());
    let mut c = 0;
    for _ in 0..raw.len() {
        classes.push(raw[c].clone());
        c = successor[c];
    }
    let block_sizes = classes.iter().map(|c| c.len()).collect();
    Ok(ProjectiveProfile { classes, block_sizes })
}

/// Decomposition of an invertible ideal into indecomposable projective left
/// modules: multiplicities indexed like `projective_profile(order).classes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModuleClass {
    pub multiplicities: Vec<usize>,
}

pub fn left_module_class(x: &FractionalIdealMatrix) -> Result<LeftModuleClass, TiledError> {
    if !is_invertible(x) {
        projective_profile(&x.order)?;
        return Err(TiledError::NotInvertible);
    }
    Ok(LeftModuleClass { multiplicities: column_multiplicities(&x.order, &x.x)? })
}

/// Classifies the columns of `x` (an `n × k` exponent matrix whose columns
/// are left `Δ`-lattices) against the indecomposable projectives of `Δ`.
pub fn column_multiplicities(order: &ExponentMatrix, x: &IntMatrix) -> Result<Vec<usize>, TiledError> {
    let profile = projective_profile(order)?;
    if x.rows() != order.n() {
        return Err(TiledError::NotSquare);
    }
    let mut multiplicities = vec![0; profile.t()];
    for j in 0..x.cols() {
        let c = column_class(order, &profile.classes, &x.column(j)).ok_or(TiledError::NotInvertible)?;
        multiplicities[c] += 1;
    }
    Ok(multiplicities)
}

/// `X ≅ Δ` as left `Δ`-modules.
pub fn is_left_isomorphic_to_order(x: &FractionalIdealMatrix) -> Result<bool, TiledError> {
    let profile = projective_profile(&x.order)?;
    Ok(left_module_class(x)?.multiplicities == profile.block_sizes)
}

/// `eΔe` with one index from each class, giving a basic hereditary order.
pub fn basic_idempotent_corner(order: &ExponentMatrix) -> Result<(ExponentMatrix, Vec<usize>), TiledError> {
    if !is_hereditary_local(order) {
        return Err(TiledError::NotHereditary);
    }
    let mut idx: Vec<usize> = order.classes().iter().map(|c| c[0]).collect();
    idx.sort_unstable();
    Ok((order.corner(&idx)?, idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_rings::{BaseRing, Gauss};

    fn place() -> MaximalIdeal {
        MaximalIdeal::new(BaseRing::RationalIntegers, Gauss::int(2)).unwrap()
    }

    fn order(rows: &[Vec<i64>]) -> ExponentMatrix {
        validate_order(rows, place()).unwrap()
    }

    fn staircase(blocks: &[usize]) -> ExponentMatrix {
        ExponentMatrix::hereditary_staircase(blocks, place()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_order(&vec![vec![0; 4]; 4], place()).is_ok());
        let s = staircase(&[1, 1, 1, 1, 1]);
        assert!(validate_order(&s.matrix().to_rows(), place()).is_ok());
        assert_eq!(validate_order(&[vec![0, -1], vec![0, 0]], place()), Err(TiledError::ClosureViolation(0, 0, 1)));
        assert_eq!(validate_order(&[vec![1]], place()), Err(TiledError::ZeroDiagonalViolation(0)));
    }

    #[test]
    fn radical_of_staircase() {
        let d = order(&[vec![0, 0], vec![1, 0]]);
        let r = radical(&d);
        assert_eq!(r.matrix().to_rows(), vec![vec![1, 0], vec![1, 1]]);
        let r2 = ideal_multiply(&r, &r).unwrap();
        assert_eq!(r2.matrix().to_rows(), vec![vec![1, 1], vec![2, 1]]);
        assert_eq!(r2.scalar_shift(), Some(1));
    }

    #[test]
    fn radical_of_maximal_and_rank_one() {
        let m = ExponentMatrix::maximal(3, place());
        assert_eq!(radical(&m).scalar_shift(), Some(1));
        assert_eq!(radical(&ExponentMatrix::maximal(1, place())).matrix().to_rows(), vec![vec![1]]);
    }

    #[test]
    fn duals() {
        let d = staircase(&[1, 1]);
        assert!(dual_ideal(&d.as_ideal()).is_order());
        assert_eq!(dual_ideal(&d.scalar_ideal(1)).scalar_shift(), Some(-1));
        let r = radical(&d);
        let y = dual_ideal(&r);
        // rad⁻¹ of the 2×2 staircase, checked by hand: y_ik = max_j λ_ij - r_kj
        assert_eq!(y.matrix().to_rows(), vec![vec![0, -1], vec![0, 0]]);
        assert!(ideal_multiply(&y, &r).unwrap().is_order());
        assert!(ideal_multiply(&r, &y).unwrap().is_order());
    }

    #[test]
    fn hereditary_examples() {
        assert!(is_hereditary_local(&staircase(&[1, 1, 1, 1, 1])));
        assert!(is_hereditary_local(&ExponentMatrix::maximal(4, place())));
        assert!(!is_hereditary_local(&order(&[vec![0, 0], vec![2, 0]])));
    }

    #[test]
    fn profiles() {
        let p = projective_profile(&staircase(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(p.block_sizes, vec![1; 5]);
        assert_eq!(projective_profile(&ExponentMatrix::maximal(3, place())).unwrap().block_sizes, vec![3]);
        assert_eq!(projective_profile(&staircase(&[2, 1])).unwrap().block_sizes, vec![2, 1]);
        assert_eq!(projective_profile(&order(&[vec![0, 0], vec![2, 0]])), Err(TiledError::NotHereditary));
    }

    #[test]
    fn left_module_classes() {
        let basic = staircase(&[1, 1, 1]);
        assert!(is_left_isomorphic_to_order(&basic.as_ideal()).unwrap());
        assert!(is_left_isomorphic_to_order(&radical(&basic)).unwrap());

        let d = staircase(&[2, 1]);
        let r = radical(&d);
        assert_eq!(left_module_class(&d.as_ideal()).unwrap().multiplicities, vec![2, 1]);
        assert_eq!(left_module_class(&r).unwrap().multiplicities, vec![1, 2]);
        assert!(!is_left_isomorphic_to_order(&r).unwrap());
    }

    #[test]
    fn basic_corners() {
        let (c, idx) = basic_idempotent_corner(&staircase(&[2, 1])).unwrap();
        assert_eq!(idx, vec![0, 2]);
        assert_eq!(c.matrix().to_rows(), vec![vec![0, 0], vec![1, 0]]);
        let (c, idx) = basic_idempotent_corner(&ExponentMatrix::maximal(4, place())).unwrap();
        assert_eq!((c.n(), idx), (1, vec![0]));
        let b = staircase(&[1, 1, 1]);
        assert_eq!(basic_idempotent_corner(&b).unwrap(), (b.clone(), vec![0, 1, 2]));
    }

    #[test]
    fn bimodule_closure_enforced() {
        let d = staircase(&[1, 1]);
        assert!(FractionalIdealMatrix::from_rows(d.clone(), &[vec![0, 0], vec![0, 0]]).is_ok());
        assert!(matches!(
            FractionalIdealMatrix::from_rows(d, &[vec![0, 0], vec![0, 1]]),
            Err(TiledError::BimoduleViolation(..))
        ));
    }
}
