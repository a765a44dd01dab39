//! Finite-rank algebras given by structure constants: the radical of the
//! residue algebra over `F_p`, and the invertibility test for the radical of
//! the `Z_p`-order.

use super::linalg::{mat_pow_mod, nullspace, unit_vector, Subspace};
use super::OracleError;

/// Sparse structure constants: `table[s * n + t]` lists `(k, c)` with
/// `b_s b_t = Σ c b_k`, coefficients reduced modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Table {
    n: usize,
    modulus: u64,
    entries: Vec<Vec<(usize, u64)>>,
}

impl Table {
    fn from_fn(n: usize, modulus: u64, f: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Self {
        let m = modulus as i64;
        let entries = (0..n * n)
            .map(|st| {
                let mut out: Vec<(usize, u64)> = Vec::new();
                for (k, c) in f(st / n, st % n) {
                    let c = c.rem_euclid(m) as u64;
                    match out.iter_mut().find(|(j, _)| *j == k) {
                        Some((_, x)) => *x = (*x + c) % modulus,
                        None => out.push((k, c)),
                    }
                }
                out.retain(|&(_, c)| c != 0);
                out.sort_unstable();
                out
            })
            .collect();
        Table { n, modulus, entries }
    }

    fn get(&self, s: usize, t: usize) -> &[(usize, u64)] {
        &self.entries[s * self.n + t]
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut out = vec![0u64; self.n];
        for (s, &xs) in x.iter().enumerate() {
            if xs % m == 0 {
                continue;
            }
            for (t, &yt) in y.iter().enumerate() {
                if yt % m == 0 {
                    continue;
                }
                let f = xs % m * (yt % m) % m;
                for &(k, c) in self.get(s, t) {
                    out[k] = (out[k] + f * c) % m;
                }
            }
        }
        out
    }

    fn reduced(&self, modulus: u64) -> Table {
        let entries = self
            .entries
            .iter()
            .map(|e| e.iter().map(|&(k, c)| (k, c % modulus)).filter(|&(_, c)| c != 0).collect())
            .collect();
        Table { n: self.n, modulus, entries }
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let m = self.modulus;
        for s in 0..n {
            for t in 0..n {
                let st = self.get(s, t);
                for u in 0..n {
                    let mut lhs = vec![0u64; 0];
                    let mut rhs = vec![0u64; 0];
                    for &(k, c) in st {
                        for &(j, d) in self.get(k, u) {
                            add_sparse(&mut lhs, j, c * d % m, m);
                        }
                    }
                    for &(k, c) in self.get(t, u) {
                        for &(j, d) in self.get(s, k) {
                            add_sparse(&mut rhs, j, c * d % m, m);
                        }
                    }
                    if !same_sparse(&lhs, &rhs) {
                        return Some((s, t, u));
                    }
                }
            }
        }
        None
    }
}

// sparse vectors as flat (index, value) pairs packed into a Vec<u64>
fn add_sparse(v: &mut Vec<u64>, j: usize, c: u64, m: u64) {
    let mut i = 0;
    while i < v.len() {
        if v[i] as usize == j {
            v[i + 1] = (v[i + 1] + c) % m;
            return;
        }
        i += 2;
    }
    v.push(j as u64);
    v.push(c % m);
}

fn same_sparse(a: &[u64], b: &[u64]) -> bool {
    let nonzero = |v: &[u64]| {
        let mut out: Vec<(u64, u64)> = v.chunks(2).map(|c| (c[0], c[1])).filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    };
    nonzero(a) == nonzero(b)
}

/// A finite-dimensional algebra with identity over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    p: u64,
    table: Table,
}

impl FiniteAlgebra {
    pub fn from_fn(p: u64, n: usize, f: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Self {
        FiniteAlgebra { p, table: Table::from_fn(n, p, f) }
    }

    pub fn dim(&self) -> usize {
        self.table.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.table.mul(x, y)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        unit_vector(self.dim(), i)
    }

    /// Matrix of `y ↦ x y`.
    #[allow(clippy::needless_range_loop)]
    pub fn left_matrix(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let n = self.dim();
        let p = self.p;
        let mut m = vec![vec![0u64; n]; n];
        for (s, &xs) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for t in 0..n {
                for &(k, c) in self.table.get(s, t) {
                    m[k][t] = (m[k][t] + xs * c) % p;
                }
            }
        }
        m
    }

    /// Matrix of `y ↦ y x`.
    #[allow(clippy::needless_range_loop)]
    pub fn right_matrix(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let n = self.dim();
        let p = self.p;
        let mut m = vec![vec![0u64; n]; n];
        for (t, &xt) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for s in 0..n {
                for &(k, c) in self.table.get(s, t) {
                    m[k][s] = (m[k][s] + xt * c) % p;
                }
            }
        }
        m
    }

    pub fn is_ideal(&self, i: &Subspace) -> bool {
        i.basis().iter().all(|x| {
            (0..self.dim()).all(|t| {
                let b = self.basis_vector(t);
                i.contains(&self.mul(x, &b)) && i.contains(&self.mul(&b, x))
            })
        })
    }

    /// `A / I` on the non-pivot coordinates of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> FiniteAlgebra {
        let n = self.dim();
        let mut is_pivot = vec![false; n];
        for &c in ideal.pivots() {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let products: Vec<Vec<(usize, i64)>> = free
            .iter()
            .flat_map(|&s| free.iter().map(move |&t| (s, t)))
            .map(|(s, t)| {
                let v = ideal.reduce(&self.mul(&self.basis_vector(s), &self.basis_vector(t)));
                free.iter().enumerate().filter(|(_, &c)| v[c] != 0).map(|(k, &c)| (k, v[c] as i64)).collect()
            })
            .collect();
        let m = free.len();
        FiniteAlgebra::from_fn(self.p, m, |s, t| products[s * m + t].clone())
    }

    /// Least `k` with `I^k = 0`, if any `k <= dim + 1` works.
    pub fn nilpotency_index(&self, ideal: &Subspace) -> Option<usize> {
        let n = self.dim();
        let rights: Vec<Vec<Vec<u64>>> = ideal.basis().iter().map(|r| self.right_matrix(r)).collect();
        let mut power = ideal.clone();
        for k in 1..=n + 1 {
            if power.dim() == 0 {
                return Some(k);
            }
            let mut next = Subspace::zero(self.p, n);
            'outer: for x in power.basis() {
                for r in &rights {
                    let y: Vec<u64> =
                        r.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<u64>() % self.p).collect();
                    next.insert(y);
                    if next.dim() == power.dim() {
                        break 'outer;
                    }
                }
            }
            if next.dim() == power.dim() {
                return None;
            }
            power = next;
        }
        None
    }
}

/// Jacobson radical over `F_p` by iterated `p`-power trace forms: with
/// `I_{-1} = A` and `g_i(a) = Tr(ã^{p^i}) / p^i mod p` for an integer lift
/// `ã` of the left regular matrix, `I_i = {a ∈ I_{i-1} : g_i(ab) = 0 ∀ b}`.
/// `g_i` is linear on `I_{i-1}`, and `rad A = I_l` for `p^l <= dim A`.
pub fn radical(alg: &FiniteAlgebra) -> Subspace {
    let n = alg.dim();
    let p = alg.p;
    let mut ideal = Subspace::full(p, n);
    if n == 0 {
        return ideal;
    }
    let mut l = 0;
    while (p as usize).pow(l + 1) <= n {
        l += 1;
    }
    for i in 0..=l {
        if ideal.dim() == 0 {
            break;
        }
        let pi = p.pow(i);
        let q = pi * p;
        let mut psi = vec![0u64; n];
        for (v, &c) in ideal.basis().iter().zip(ideal.pivots()) {
            let m = mat_pow_mod(&alg.left_matrix(v), pi, q);
            let tr = (0..n).map(|k| m[k][k]).sum::<u64>() % q;
            debug_assert_eq!(tr % pi, 0, "trace of a p^i-th power on I_(i-1) is divisible by p^i");
            psi[c] = tr / pi % p;
        }
        // q_rows[j][s] = ψ(b_s b_j)
        let q_rows: Vec<Vec<u64>> = (0..n)
            .map(|j| (0..n).map(|s| alg.table.get(s, j).iter().map(|&(k, c)| c * psi[k]).sum::<u64>() % p).collect())
            .collect();
        let conditions: Vec<Vec<u64>> = q_rows
            .iter()
            .map(|row| ideal.basis().iter().map(|v| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % p).collect())
            .collect();
        let kernel = nullspace(p, &conditions, ideal.dim());
        let vectors = kernel.into_iter().map(|c| {
            let mut x = vec![0u64; n];
            for (coef, v) in c.iter().zip(ideal.basis()) {
                if *coef != 0 {
                    for (a, b) in x.iter_mut().zip(v) {
                        *a = (*a + coef * b) % p;
                    }
                }
            }
            x
        });
        ideal = Subspace::span(p, n, vectors);
    }
    ideal
}

/// Evidence that a subspace is the radical: a nilpotent two-sided ideal with
/// semisimple quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalCertificate {
    pub is_ideal: bool,
    pub nilpotency_index: Option<usize>,
    pub quotient_radical_dim: usize,
}

impl RadicalCertificate {
    pub fn holds(&self) -> bool {
        self.is_ideal && self.nilpotency_index.is_some() && self.quotient_radical_dim == 0
    }
}

pub fn certify_radical(alg: &FiniteAlgebra, rad: &Subspace) -> RadicalCertificate {
    RadicalCertificate {
        is_ideal: alg.is_ideal(rad),
        nilpotency_index: alg.nilpotency_index(rad),
        quotient_radical_dim: radical(&alg.quotient(rad)).dim(),
    }
}

/// A `Z_p`-order of finite rank, with structure constants modulo `p^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantOrder {
    p: u64,
    labels: Vec<String>,
    table: Table,
}

impl StructureConstantOrder {
    pub fn from_fn(
        p: u64,
        labels: Vec<String>,
        f: impl Fn(usize, usize) -> Vec<(usize, i64)>,
    ) -> Result<Self, OracleError> {
        let n = labels.len();
        let table = Table::from_fn(n, p * p, f);
        if let Some((s, t, u)) = table.associativity_failure() {
            return Err(OracleError::AssociativityFailure(labels[s].clone(), labels[t].clone(), labels[u].clone()));
        }
        Ok(StructureConstantOrder { p, labels, table })
    }

    pub fn rank(&self) -> usize {
        self.table.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `A / pA` over `F_p`.
    pub fn residue(&self) -> FiniteAlgebra {
        FiniteAlgebra { p: self.p, table: self.table.reduced(self.p) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub hereditary: bool,
    pub rank: usize,
    pub radical_dim: usize,
    pub certificate: RadicalCertificate,
}

/// Decides whether `J = rad A` is invertible. With `J ⊇ pA`, the conductors
/// `J^l = {x : xJ ⊆ A}` and `J^r = {x : Jx ⊆ A}` lie in `p⁻¹A`, and `J` is
/// invertible iff `J^l J = A = J J^r`. Both products are computed modulo `p`.
pub fn hereditary_oracle(order: &StructureConstantOrder) -> OracleVerdict {
    let residue = order.residue();
    let rad = radical(&residue);
    let certificate = certify_radical(&residue, &rad);
    let hereditary = conductor_side_is_full(order, &residue, &rad, Side::Left)
        && conductor_side_is_full(order, &residue, &rad, Side::Right);
    OracleVerdict { hereditary, rank: order.rank(), radical_dim: rad.dim(), certificate }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn conductor_side_is_full(order: &StructureConstantOrder, residue: &FiniteAlgebra, rad: &Subspace, side: Side) -> bool {
    let p = order.p;
    let n = order.rank();
    // Y = {y : y r = 0 for all r ∈ rad} (left side) or {y : r y = 0} (right side)
    let mut conditions = Subspace::zero(p, n);
    for r in rad.basis() {
        let m = match side {
            Side::Left => residue.right_matrix(r),
            Side::Right => residue.left_matrix(r),
        };
        for row in m {
            conditions.insert(row);
            if conditions.is_full() {
                break;
            }
        }
    }
    let y_basis = nullspace(p, conditions.basis(), n);
    let mut span = rad.clone();
    let prod = |a: &[u64], b: &[u64]| match side {
        Side::Left => order.table.mul(a, b),
        Side::Right => order.table.mul(b, a),
    };
    for y in &y_basis {
        for r in rad.basis() {
            let z = prod(y, r);
            debug_assert!(z.iter().all(|c| c % p == 0));
            span.insert(z.iter().map(|c| c / p % p).collect());
            if span.is_full() {
                return true;
            }
        }
        for t in 0..n {
            span.insert(prod(y, &unit_vector(n, t)).iter().map(|c| c % p).collect());
        }
        if span.is_full() {
            return true;
        }
    }
    span.is_full()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `M_k(F_p)` on matrix units `E_ij` at index `i * k + j`.
    fn matrix_algebra(p: u64, k: usize) -> FiniteAlgebra {
        FiniteAlgebra::from_fn(p, k * k, |s, t| {
            let (i, j) = (s / k, s % k);
            let (a, b) = (t / k, t % k);
            if j == a {
                vec![(i * k + b, 1)]
            } else {
                vec![]
            }
        })
    }

    /// The group algebra of `S_3`, elements as permutations of `0..3`.
    fn s3_algebra(p: u64) -> FiniteAlgebra {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mul = |a: &[usize; 3], b: &[usize; 3]| [b[a[0]], b[a[1]], b[a[2]]];
        FiniteAlgebra::from_fn(p, 6, |s, t| {
            let c = mul(&perms[s], &perms[t]);
            vec![(perms.iter().position(|x| *x == c).unwrap(), 1)]
        })
    }

    /// Brute force: `a ∈ rad A` iff `ba` is nilpotent for every `b`.
    fn brute_force_radical_size(alg: &FiniteAlgebra) -> usize {
        let n = alg.dim();
        let p = alg.p();
        let all: Vec<Vec<u64>> = (0..p.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let d = code % p;
                        code /= p;
                        d
                    })
                    .collect()
            })
            .collect();
        let nilpotent = |x: &Vec<u64>| {
            let mut y = x.clone();
            for _ in 0..=n {
                if y.iter().all(|&c| c == 0) {
                    return true;
                }
                y = alg.mul(&y, x);
            }
            false
        };
        all.iter().filter(|a| all.iter().all(|b| nilpotent(&alg.mul(b, a)))).count()
    }

    #[test]
    fn semisimple_matrix_algebras() {
        for p in [2, 3, 5] {
            let a = matrix_algebra(p, 2);
            let r = radical(&a);
            assert_eq!(r.dim(), 0);
            assert!(certify_radical(&a, &r).holds());
        }
    }

    #[test]
    fn dual_numbers() {
        for p in [2, 3] {
            let a = FiniteAlgebra::from_fn(p, 2, |s, t| if s + t < 2 { vec![(s + t, 1)] } else { vec![] });
            let r = radical(&a);
            assert_eq!(r.basis(), &[vec![0, 1]]);
            assert_eq!(certify_radical(&a, &r).nilpotency_index, Some(2));
        }
    }

    #[test]
    fn symmetric_group_algebras() {
        let a = s3_algebra(2);
        let r = radical(&a);
        assert_eq!(r.dim(), 1);
        assert!(certify_radical(&a, &r).holds());
        let a = s3_algebra(3);
        let r = radical(&a);
        assert_eq!(r.dim(), 4);
        assert!(certify_radical(&a, &r).holds());
        assert_eq!(radical(&s3_algebra(5)).dim(), 0);
    }

    #[test]
    fn upper_triangular() {
        // basis E11, E12, E22 of upper triangular 2×2 matrices
        let units = [(0, 0), (0, 1), (1, 1)];
        let a = FiniteAlgebra::from_fn(2, 3, |s, t| {
            let (i, j) = units[s];
            let (k, l) = units[t];
            if j == k {
                vec![(units.iter().position(|&u| u == (i, l)).unwrap(), 1)]
            } else {
                vec![]
            }
        });
        let r = radical(&a);
        assert_eq!(r.basis(), &[vec![0, 1, 0]]);
        assert_eq!(brute_force_radical_size(&a), 2);
    }

    #[test]
    fn agrees_with_brute_force_on_tiny_algebras() {
        let dual = FiniteAlgebra::from_fn(3, 2, |s, t| if s + t < 2 { vec![(s + t, 1)] } else { vec![] });
        let c2 = FiniteAlgebra::from_fn(2, 2, |s, t| vec![((s + t) % 2, 1)]);
        let c2_odd = FiniteAlgebra::from_fn(3, 2, |s, t| vec![((s + t) % 2, 1)]);
        let m2 = matrix_algebra(2, 2);
        for a in [dual, c2, c2_odd, m2] {
            let r = radical(&a);
            assert_eq!(a.p().pow(r.dim() as u32) as usize, brute_force_radical_size(&a));
        }
    }

    fn z_order(p: u64, n: usize, f: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> StructureConstantOrder {
        StructureConstantOrder::from_fn(p, (0..n).map(|i| format!("b{i}")).collect(), f).unwrap()
    }

    #[test]
    fn maximal_and_group_ring_orders() {
        let m2 = z_order(2, 4, |s, t| if s % 2 == t / 2 { vec![((s / 2) * 2 + t % 2, 1)] } else { vec![] });
        assert!(hereditary_oracle(&m2).hereditary);
        let z_c2 = z_order(2, 2, |s, t| vec![((s + t) % 2, 1)]);
        assert!(!hereditary_oracle(&z_c2).hereditary);
        let z_c2_at_3 = z_order(3, 2, |s, t| vec![((s + t) % 2, 1)]);
        assert!(hereditary_oracle(&z_c2_at_3).hereditary);
    }

    #[test]
    fn associativity_checked() {
        // b0 b0 = b1, b1 b0 = b2, all else zero: (b0 b0) b0 != b0 (b0 b0)
        let labels = vec!["b0".into(), "b1".into(), "b2".into()];
        let bad = StructureConstantOrder::from_fn(2, labels, |s, t| match (s, t) {
            (0, 0) => vec![(1, 1)],
            (1, 0) => vec![(2, 1)],
            _ => vec![],
        });
        assert!(matches!(bad, Err(OracleError::AssociativityFailure(..))));
    }
}
