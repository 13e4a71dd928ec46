//! Exact integer linear algebra: Hermite and Smith normal forms, kernel
//! lattices, adapted bases of sublattices, finite-order tests, and the
//! geometric sums `I + A + ... + A^{m-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::Exponent;
use crate::rat::Rat;

/// Dense integer matrix with arbitrary-precision entries, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut m: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut sq = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&sq);
            }
            m >>= 1;
            if m > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// `A * v` over the integers.
    pub fn apply_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `A * alpha` on an exponent vector; errors if an entry leaves `i64`.
    pub fn apply_exp(&self, e: &Exponent) -> Result<Exponent> {
        if self.cols != e.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a length-{} exponent",
                self.rows,
                self.cols,
                e.len()
            )));
        }
        let big: Vec<BigInt> = e.0.iter().map(|&v| BigInt::from(v)).collect();
        let out = self.apply_vec(&big);
        let mut res = Vec::with_capacity(out.len());
        for v in out {
            res.push(i64::try_from(&v).map_err(|_| Error::ExponentOverflow)?);
        }
        Ok(Exponent(res))
    }

    /// Signed determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> =
            (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
                match swap {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * m[n - 1][n - 1].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Exact inverse of a unimodular matrix, as an integer matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        self.require_square()?;
        let n = self.rows;
        // Gauss-Jordan over Q; integrality of the result is checked at the end.
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = self
                    .row(i)
                    .iter()
                    .map(|v| Rat::from_integer(v.clone()))
                    .collect();
                for j in 0..n {
                    row.push(if i == j { Rat::one() } else { Rat::zero() });
                }
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !aug[i][col].is_zero());
            let pivot = pivot.ok_or(Error::NotUnimodular)?;
            aug.swap(col, pivot);
            let p = aug[col][col].clone();
            for v in aug[col].iter_mut() {
                *v /= p.clone();
            }
            for i in 0..n {
                if i != col && !aug[i][col].is_zero() {
                    let factor = aug[i][col].clone();
                    for j in 0..2 * n {
                        let t = &factor * &aug[col][j];
                        aug[i][j] -= t;
                    }
                }
            }
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &aug[i][n + j];
                if !v.denom().is_one() {
                    return Err(Error::NotUnimodular);
                }
                inv[(i, j)] = v.numer().clone();
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

/// Ordered basis of a sublattice of `Z^n`; the empty basis is the zero
/// lattice. Generators are linearly independent over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient: usize,
    gens: Vec<Exponent>,
}

impl LatticeBasis {
    pub fn new(ambient: usize, gens: Vec<Exponent>) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == ambient));
        LatticeBasis { ambient, gens }
    }

    pub fn zero(ambient: usize) -> Self {
        LatticeBasis { ambient, gens: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        LatticeBasis {
            ambient,
            gens: (0..ambient).map(|i| Exponent::unit(ambient, i)).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.gens
    }

    /// Matrix whose rows are the generators.
    pub fn row_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.gens.iter().map(|g| g.0.clone()).collect())
    }

    /// Matrix whose columns are the generators (n x rank).
    pub fn col_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.ambient, self.gens.len());
        for (j, g) in self.gens.iter().enumerate() {
            for (i, &v) in g.0.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    /// Replace the generators by the nonzero rows of their Hermite normal
    /// form. The lattice is unchanged and the result is a canonical basis.
    pub fn hermite_normalized(&self) -> LatticeBasis {
        if self.gens.is_empty() {
            return self.clone();
        }
        let (h, _) = hnf(&self.row_matrix());
        let mut gens = Vec::new();
        for i in 0..h.rows() {
            if h.row(i).iter().any(|v| !v.is_zero()) {
                let row: Vec<i64> = h
                    .row(i)
                    .iter()
                    .map(|v| i64::try_from(v).expect("desk-scale entries"))
                    .collect();
                gens.push(Exponent(row));
            }
        }
        LatticeBasis { ambient: self.ambient, gens }
    }

    /// Exact membership: is `v` an integer combination of the generators?
    pub fn contains(&self, v: &Exponent) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.is_zero() {
            return true;
        }
        if self.gens.is_empty() {
            return false;
        }
        // Reduce v against the HNF rows of the generator matrix.
        let (h, _) = hnf(&self.row_matrix());
        let mut rem: Vec<BigInt> = v.0.iter().map(|&x| BigInt::from(x)).collect();
        for i in 0..h.rows() {
            let pivot_col = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
            let Some(j) = pivot_col else { continue };
            if rem[j].is_zero() {
                continue;
            }
            let (q, r) = rem[j].div_rem(&h[(i, j)]);
            if !r.is_zero() {
                return false;
            }
            for col in 0..h.cols() {
                let t = &q * &h[(i, col)];
                rem[col] -= t;
            }
        }
        rem.iter().all(|x| x.is_zero())
    }
}

/// Row Hermite normal form: returns `(H, U)` with `H = U * A`, `U`
/// unimodular, pivots positive, and entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // Smallest nonzero |entry| in column c at or below row r.
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[(i, c)].is_zero()
                    && best.map_or(true, |b| h[(i, c)].abs() < h[(b, c)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            if p != r {
                swap_rows(&mut h, &mut u, p, r);
            }
            if h[(r, c)].is_negative() {
                negate_row(&mut h, &mut u, r);
            }
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = floor_div(&h[(i, c)], &h[(r, c)]);
                row_sub(&mut h, &mut u, i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = floor_div(&h[(i, c)], &h[(r, c)]);
            if !q.is_zero() {
                row_sub(&mut h, &mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

fn swap_rows(h: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    for j in 0..h.cols() {
        let t = h[(a, j)].clone();
        h[(a, j)] = h[(b, j)].clone();
        h[(b, j)] = t;
    }
    for j in 0..u.cols() {
        let t = u[(a, j)].clone();
        u[(a, j)] = u[(b, j)].clone();
        u[(b, j)] = t;
    }
}

fn negate_row(h: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for j in 0..h.cols() {
        let v = -h[(i, j)].clone();
        h[(i, j)] = v;
    }
    for j in 0..u.cols() {
        let v = -u[(i, j)].clone();
        u[(i, j)] = v;
    }
}

/// row_i -= q * row_k, mirrored on the transform.
fn row_sub(h: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..h.cols() {
        let t = q * &h[(k, j)];
        h[(i, j)] -= t;
    }
    for j in 0..u.cols() {
        let t = q * &u[(k, j)];
        u[(i, j)] -= t;
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Smith normal form: `(D, U, V)` with `D = U * A * V`, `U`, `V` unimodular,
/// `D` diagonal with `d_1 | d_2 | ...` and nonnegative diagonal entries.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let n = a.rows().min(a.cols());
    let mut t = 0usize;
    while t < n {
        // Find a nonzero pivot in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..a.rows() {
            for j in t..a.cols() {
                if !d[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            swap_rows(&mut d, &mut u, pi, t);
        }
        if pj != t {
            swap_cols(&mut d, &mut v, pj, t);
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, &mut u, t);
        }
        // Clear the pivot row and column; restart whenever a remainder
        // replaces the pivot with a smaller value.
        let mut clean = true;
        for i in t + 1..a.rows() {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = floor_div(&d[(i, t)], &d[(t, t)]);
            row_sub(&mut d, &mut u, i, t, &q);
            if !d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..a.cols() {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = floor_div(&d[(t, j)], &d[(t, t)]);
            col_sub(&mut d, &mut v, j, t, &q);
            if !d[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of every remaining entry by the pivot.
        let mut fixed = true;
        'scan: for i in t + 1..a.rows() {
            for j in t + 1..a.cols() {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    // Fold row i into row t, then continue the outer loop.
                    let one = BigInt::one();
                    for col in 0..d.cols() {
                        let t2 = &one * &d[(i, col)];
                        d[(t, col)] += t2;
                    }
                    for col in 0..u.cols() {
                        let t2 = &one * &u[(i, col)];
                        u[(t, col)] += t2;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }
    (d, u, v)
}

fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    for i in 0..d.rows() {
        let t = d[(i, a)].clone();
        d[(i, a)] = d[(i, b)].clone();
        d[(i, b)] = t;
    }
    for i in 0..v.rows() {
        let t = v[(i, a)].clone();
        v[(i, a)] = v[(i, b)].clone();
        v[(i, b)] = t;
    }
}

/// col_j -= q * col_k, mirrored on the column transform.
fn col_sub(d: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..d.rows() {
        let t = q * &d[(i, k)];
        d[(i, j)] -= t;
    }
    for i in 0..v.rows() {
        let t = q * &v[(i, k)];
        v[(i, j)] -= t;
    }
}

/// Basis of `{alpha in Z^cols : A alpha = 0}`. The kernel of an integer
/// matrix is saturated, so the basis spans it exactly.
pub fn kernel_basis(a: &IntMatrix) -> LatticeBasis {
    let (h, u) = hnf(&a.transpose());
    // Rows of U mapping to zero rows of H satisfy row * A^T = 0, i.e.
    // A * row^T = 0.
    let mut gens = Vec::new();
    for i in 0..h.rows() {
        if h.row(i).iter().all(|x| x.is_zero()) {
            let row: Vec<i64> = u
                .row(i)
                .iter()
                .map(|x| i64::try_from(x).expect("desk-scale entries"))
                .collect();
            gens.push(Exponent(row));
        }
    }
    LatticeBasis::new(a.cols(), gens).hermite_normalized()
}

/// Least common multiple of all k with Euler phi(k) <= n. A finite-order
/// n x n integer matrix has order dividing this bound, because its minimal
/// polynomial is a product of distinct cyclotomics of degree <= n.
pub fn order_bound(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut l: u64 = 1;
    // phi(k) >= sqrt(k/2), so k <= 2n^2 suffices.
    for k in 1..=(2 * (n as u64) * (n as u64) + 1) {
        if euler_phi(k) <= n as u64 {
            l = num_integer::lcm(l, k);
        }
    }
    l
}

fn euler_phi(mut k: u64) -> u64 {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= k {
        if k % p == 0 {
            let mut pe = 1;
            while k % p == 0 {
                k /= p;
                pe *= p;
            }
            phi *= pe - pe / p;
        }
        p += 1;
    }
    if k > 1 {
        phi *= k - 1;
    }
    phi
}

fn divisors_sorted(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            ds.push(i);
            if i != n / i {
                ds.push(n / i);
            }
        }
        i += 1;
    }
    ds.sort_unstable();
    ds
}

/// Smallest `r >= 1` with `A^r = I`, if any. Candidate orders are the
/// divisors of [`order_bound`]; a matrix of finite order must satisfy
/// `A^R = I` for `R` the bound, so checking `A^R` first is a complete test.
pub fn finite_order(a: &IntMatrix) -> Result<Option<u64>> {
    a.require_square()?;
    let n = a.rows();
    if n == 0 {
        return Ok(Some(1));
    }
    if !a.det()?.abs().is_one() {
        return Ok(None);
    }
    let bound = order_bound(n);
    if !a.pow(bound).is_identity() {
        return Ok(None);
    }
    for r in divisors_sorted(bound) {
        if a.pow(r).is_identity() {
            return Ok(Some(r));
        }
    }
    unreachable!("A^bound = I, so some divisor matches");
}

/// The normal form of a locally finite exponent matrix: `S^{-1} A S =
/// blockdiag(0_k, B)` with `B` invertible of minimal finite order `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfNormalForm {
    /// Unimodular change of basis; its first `k` columns span `ker A^r` and
    /// the rest span the image lattice `A^r Z^n`.
    pub s: IntMatrix,
    /// Rank of the kernel block.
    pub k: usize,
    /// Invertible block of size `n - k` with `B^r = I`.
    pub b: IntMatrix,
    /// Minimal `r >= 1` with `A^{r+1} = A`; equals the order of `B`.
    pub r: u64,
}

impl LfNormalForm {
    /// `S * blockdiag(0_k, B) * S^{-1}`, which must reproduce `A`.
    pub fn reconstruct(&self) -> IntMatrix {
        let n = self.s.rows();
        let mut block = IntMatrix::zeros(n, n);
        for i in 0..n - self.k {
            for j in 0..n - self.k {
                block[(self.k + i, self.k + j)] = self.b[(i, j)].clone();
            }
        }
        let sinv = self.s.inverse_unimodular().expect("S unimodular");
        self.s.mul(&block).mul(&sinv)
    }
}

/// Present iff `A^{r+1} = A` for some `r >= 1`, i.e. iff `A` is
/// `GL_n(Z)`-conjugate to `blockdiag(0, B)` with `B` of finite order.
pub fn lf_normal_form(a: &IntMatrix) -> Result<Option<LfNormalForm>> {
    a.require_square()?;
    let n = a.rows();
    if n == 0 {
        return Ok(Some(LfNormalForm {
            s: IntMatrix::identity(0),
            k: 0,
            b: IntMatrix::identity(0),
            r: 1,
        }));
    }
    let bound = order_bound(n);
    let mut order = None;
    for r in divisors_sorted(bound) {
        if a.pow(r + 1) == *a {
            order = Some(r);
            break;
        }
    }
    let Some(r) = order else { return Ok(None) };
    // P = A^r is idempotent; Z^n = ker P (+) P Z^n as lattices.
    let p = a.pow(r);
    let ker = kernel_basis(&p);
    let k = ker.rank();
    // Basis of the image lattice: nonzero rows of the HNF of P's rows span
    // the row lattice of P^T = column lattice of P.
    let (h, _) = hnf(&p.transpose());
    let mut img: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..h.rows() {
        if h.row(i).iter().any(|x| !x.is_zero()) {
            img.push(h.row(i).to_vec());
        }
    }
    debug_assert_eq!(k + img.len(), n);
    let mut s = IntMatrix::zeros(n, n);
    for (j, g) in ker.generators().iter().enumerate() {
        for i in 0..n {
            s[(i, j)] = BigInt::from(g.0[i]);
        }
    }
    for (j, col) in img.iter().enumerate() {
        for i in 0..n {
            s[(i, k + j)] = col[i].clone();
        }
    }
    let sinv = s.inverse_unimodular()?;
    let m = sinv.mul(a).mul(&s);
    // The conjugated matrix must be exactly blockdiag(0_k, B).
    let mut b = IntMatrix::zeros(n - k, n - k);
    for i in 0..n {
        for j in 0..n {
            if i >= k && j >= k {
                b[(i - k, j - k)] = m[(i, j)].clone();
            } else {
                assert!(m[(i, j)].is_zero(), "kernel/image split failed");
            }
        }
    }
    debug_assert!(b.pow(r).is_identity());
    Ok(Some(LfNormalForm { s, k, b, r }))
}

/// `I + A + A^2 + ... + A^{m-1}` exactly.
pub fn geometric_sum(a: &IntMatrix, m: u64) -> IntMatrix {
    assert!(a.is_square());
    assert!(m >= 1);
    let n = a.rows();
    let mut acc = IntMatrix::identity(n);
    let mut power = IntMatrix::identity(n);
    for _ in 1..m {
        power = power.mul(a);
        acc = acc.add(&power);
    }
    acc
}

/// Adapted basis of `Z^n` for a sublattice `L`: a basis `beta` of `Z^n` and
/// positive invariant factors `d_1 | d_2 | ... | d_k` with `L` spanned by
/// `(d_1 beta_1, ..., d_k beta_k)`. Computed from the Smith normal form of
/// the generator matrix.
pub fn adapted_basis(l: &LatticeBasis) -> Result<(Vec<Exponent>, Vec<BigInt>)> {
    let n = l.ambient();
    if l.rank() == 0 {
        return Ok((LatticeBasis::full(n).generators().to_vec(), Vec::new()));
    }
    let g = l.col_matrix();
    let (d, u, _v) = snf(&g);
    let uinv = u.inverse_unimodular()?;
    let mut ds = Vec::new();
    for i in 0..l.rank() {
        let di = d[(i, i)].clone();
        if di.is_zero() {
            return Err(Error::DependentGenerators);
        }
        ds.push(di);
    }
    let mut beta = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<i64> = (0..n)
            .map(|i| i64::try_from(&uinv[(i, j)]).expect("desk-scale entries"))
            .collect();
        beta.push(Exponent(col));
    }
    Ok((beta, ds))
}
