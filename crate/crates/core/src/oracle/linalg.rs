//! Dense linear algebra over a prime field `F_p`.

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    acc
}

/// A subspace of `F_p^n` kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    n: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Self {
        Subspace { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u64, n: usize) -> Self {
        let rows = (0..n).map(|i| unit_vector(n, i)).collect();
        Subspace { p, n, rows, pivots: (0..n).collect() }
    }

    pub fn span(p: u64, n: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut s = Self::zero(p, n);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// `v` minus its projection along the pivots; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                let f = p - f;
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + f * r) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        if self.is_full() {
            return false;
        }
        let p = self.p;
        let mut v = self.reduce(&v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv_mod(v[c], p);
        for x in v.iter_mut() {
            *x = *x * s % p;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                let f = p - f;
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + f * y) % p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, v);
        self.pivots.insert(at, c);
        true
    }

    /// Coordinates of `v` (assumed in the span) in the echelon basis.
    pub fn coordinates(&self, v: &[u64]) -> Vec<u64> {
        self.pivots.iter().map(|&c| v[c] % self.p).collect()
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Basis of `{x ∈ F_p^cols : M x = 0}`.
pub fn nullspace(p: u64, rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let echelon = Subspace::span(p, cols, rows.iter().cloned());
    let mut is_pivot = vec![false; cols];
    for &c in echelon.pivots() {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = unit_vector(cols, f);
            for (row, &c) in echelon.basis().iter().zip(echelon.pivots()) {
                x[c] = (p - row[f] % p) % p;
            }
            x
        })
        .collect()
}

/// `A · B` with entries reduced modulo `m`; `A` is `r × k`, `B` is `k × c`.
pub fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let c = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![0u64; c];
            for (k, &x) in row.iter().enumerate() {
                if x != 0 {
                    for (o, &y) in out.iter_mut().zip(&b[k]) {
                        *o += x * y;
                    }
                }
            }
            out.iter().map(|v| v % m).collect()
        })
        .collect()
}

pub fn mat_pow_mod(a: &[Vec<u64>], mut e: u64, m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut acc: Vec<Vec<u64>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_mod(&base, &base, m);
        }
    }
    acc
}
