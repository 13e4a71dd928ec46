//! Multiplicative relation lattices among nonzero rationals and the lattice
//! `W = {alpha : q^{A~ alpha} = 1}` attached to a finite-order exponent
//! matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlat::{finite_order, geometric_sum, kernel_basis, IntMatrix, LatticeBasis};
use crate::laurent::Exponent;
use crate::rat::{rat_pow, Rat};

/// `q = sign * prod p^{e_p}` with distinct primes and nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedFactorization {
    pub negative: bool,
    pub exponents: BTreeMap<BigInt, i64>,
}

/// The lattice `W` of Eq-style relations `q^{A~ alpha} = 1`, with its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WLattice {
    pub basis: LatticeBasis,
    pub rank: usize,
}

fn factor_nat(n: &BigInt, out: &mut BTreeMap<BigInt, i64>, sign: i64) {
    let mut n = n.clone();
    debug_assert!(n.is_positive());
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0i64;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            *out.entry(p.clone()).or_insert(0) += sign * e;
        }
        p += 1;
    }
    if n > BigInt::one() {
        *out.entry(n).or_insert(0) += sign;
    }
}

/// Exact signed prime factorization of a nonzero rational.
pub fn factor_signed(q: &Rat) -> Result<SignedFactorization> {
    if q.is_zero() {
        return Err(Error::ZeroValue("factor_signed"));
    }
    let mut exponents = BTreeMap::new();
    let num = q.numer().abs();
    if !num.is_one() {
        factor_nat(&num, &mut exponents, 1);
    }
    if !q.denom().is_one() {
        factor_nat(q.denom(), &mut exponents, -1);
    }
    exponents.retain(|_, e| *e != 0);
    Ok(SignedFactorization { negative: q.is_negative(), exponents })
}

/// `prod q_i^{beta_i}` exactly.
pub fn power_product(q: &[Rat], beta: &Exponent) -> Rat {
    assert_eq!(q.len(), beta.len(), "power_product length mismatch");
    let mut acc = Rat::one();
    for (qi, &e) in q.iter().zip(&beta.0) {
        if e != 0 {
            acc *= rat_pow(qi, &BigInt::from(e));
        }
    }
    acc
}

/// Same product with arbitrary-precision exponents.
pub fn power_product_big(q: &[Rat], beta: &[BigInt]) -> Rat {
    assert_eq!(q.len(), beta.len(), "power_product length mismatch");
    let mut acc = Rat::one();
    for (qi, e) in q.iter().zip(beta) {
        if !e.is_zero() {
            acc *= rat_pow(qi, e);
        }
    }
    acc
}

/// Basis of `{beta in Z^n : prod q_i^{beta_i} = 1}`.
///
/// One integer row per prime appearing in any `q_i` pins the prime-exponent
/// balance; sign parity is folded in as an extra row with a slack column of
/// modulus 2, and the slack coordinate is projected away. The projection is
/// a bijection on the kernel because the slack value is determined by beta.
pub fn relation_lattice(q: &[Rat]) -> Result<LatticeBasis> {
    let n = q.len();
    let facts: Vec<SignedFactorization> =
        q.iter().map(factor_signed).collect::<Result<_>>()?;
    let mut primes: Vec<BigInt> = Vec::new();
    for f in &facts {
        for p in f.exponents.keys() {
            if !primes.contains(p) {
                primes.push(p.clone());
            }
        }
    }
    primes.sort();
    let has_sign = facts.iter().any(|f| f.negative);
    let cols = n + usize::from(has_sign);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for p in &primes {
        let mut row = vec![BigInt::zero(); cols];
        for (i, f) in facts.iter().enumerate() {
            if let Some(&e) = f.exponents.get(p) {
                row[i] = BigInt::from(e);
            }
        }
        rows.push(row);
    }
    if has_sign {
        let mut row = vec![BigInt::zero(); cols];
        for (i, f) in facts.iter().enumerate() {
            if f.negative {
                row[i] = BigInt::one();
            }
        }
        row[n] = BigInt::from(2);
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(LatticeBasis::full(n));
    }
    let m = IntMatrix::from_bigint_rows(rows);
    let ker = kernel_basis(&m);
    let gens: Vec<Exponent> = ker
        .generators()
        .iter()
        .map(|g| Exponent(g.0[..n].to_vec()))
        .collect();
    Ok(LatticeBasis::new(n, gens).hermite_normalized())
}

/// `W = {alpha : q^{A~ alpha} = 1}` where `A~ = I + A + ... + A^{r-1}` and
/// `r` is the (finite) order of `A`.
pub fn compute_w(q: &[Rat], a: &IntMatrix) -> Result<WLattice> {
    let n = q.len();
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} exponent matrix with {} scalars",
            a.rows(),
            a.cols(),
            n
        )));
    }
    let r = finite_order(a)?.ok_or(Error::NotFiniteOrder)?;
    let atilde = geometric_sum(a, r);
    let lam = relation_lattice(q)?;
    // alpha in W  <=>  A~ alpha lies in the relation lattice: stack
    // [A~ | -L] and project its kernel onto the alpha block. The projection
    // is a bijection because the columns of L are independent.
    let m = lam.rank();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let lcols = lam.col_matrix();
    for i in 0..n {
        let mut row: Vec<BigInt> = atilde.row(i).to_vec();
        for j in 0..m {
            row.push(-lcols[(i, j)].clone());
        }
        rows.push(row);
    }
    let ker = kernel_basis(&IntMatrix::from_bigint_rows(rows));
    let gens: Vec<Exponent> = ker
        .generators()
        .iter()
        .map(|g| Exponent(g.0[..n].to_vec()))
        .collect();
    let basis = LatticeBasis::new(n, gens).hermite_normalized();
    let rank = basis.rank();
    Ok(WLattice { basis, rank })
}

/// A rational is a root of unity exactly when it is 1 or -1.
pub fn is_root_of_unity(q: &Rat) -> bool {
    let one = Rat::one();
    *q == one || *q == -one
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn factor_examples() {
        let f = factor_signed(&rat(4, 9)).unwrap();
        assert!(!f.negative);
        assert_eq!(f.exponents[&BigInt::from(2)], 2);
        assert_eq!(f.exponents[&BigInt::from(3)], -2);
        assert_eq!(f.exponents.len(), 2);

        let f = factor_signed(&rat_int(-1)).unwrap();
        assert!(f.negative);
        assert!(f.exponents.is_empty());

        let f = factor_signed(&rat_int(1)).unwrap();
        assert!(!f.negative);
        assert!(f.exponents.is_empty());

        assert!(factor_signed(&rat_int(0)).is_err());
    }

    #[test]
    fn power_product_examples() {
        let q = vec![rat_int(2), rat_int(3)];
        assert_eq!(power_product(&q, &Exponent(vec![1, -1])), rat(2, 3));
        assert_eq!(power_product(&q, &Exponent(vec![0, 0])), rat_int(1));
        let q = vec![rat_int(-1), rat_int(2)];
        assert_eq!(power_product(&q, &Exponent(vec![2, 0])), rat_int(1));
    }

    #[test]
    fn relation_lattice_examples() {
        // 4^1 * 2^-2 = 1
        let l = relation_lattice(&[rat_int(4), rat_int(2)]).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&Exponent(vec![1, -2])));
        for g in l.generators() {
            assert_eq!(power_product(&[rat_int(4), rat_int(2)], g), rat_int(1));
        }

        let l = relation_lattice(&[rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(l.rank(), 0);

        let l = relation_lattice(&[rat_int(-1), rat_int(1)]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&Exponent(vec![2, 0])));
        assert!(l.contains(&Exponent(vec![0, 1])));
        assert!(!l.contains(&Exponent(vec![1, 0])));
    }

    #[test]
    fn compute_w_examples() {
        let i2 = IntMatrix::identity(2);
        let w = compute_w(&[rat_int(2), rat_int(3)], &i2).unwrap();
        assert_eq!(w.rank, 0);

        let w = compute_w(&[rat_int(-1), rat_int(2)], &i2).unwrap();
        assert_eq!(w.rank, 1);
        assert!(w.basis.contains(&Exponent(vec![2, 0])));
        assert!(!w.basis.contains(&Exponent(vec![1, 0])));
        assert!(!w.basis.contains(&Exponent(vec![0, 1])));

        let neg = IntMatrix::from_rows(vec![vec![-1]]);
        let w = compute_w(&[rat_int(1)], &neg).unwrap();
        assert_eq!(w.rank, 1);
        assert!(w.basis.contains(&Exponent(vec![1])));

        let shear = IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert!(matches!(
            compute_w(&[rat_int(1), rat_int(1)], &shear),
            Err(Error::NotFiniteOrder)
        ));
    }

    #[test]
    fn root_of_unity_examples() {
        assert!(is_root_of_unity(&rat_int(-1)));
        assert!(is_root_of_unity(&rat_int(1)));
        assert!(!is_root_of_unity(&rat(2, 3)));
    }
}
