//! Sparse Laurent polynomials in `n` commuting variables over Q.
//!
//! A polynomial is a finite map from integer exponent vectors to nonzero
//! rational coefficients; the zero polynomial is the empty map. Terms are
//! kept in a `BTreeMap` so iteration order (lexicographic on the exponent
//! vector) is canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{rat_pow_i64, Rat};

/// A point of `Z^n`: the exponent of one monomial `x^alpha`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total degree `sum_i alpha_i`, the generalized degree of `x^alpha`.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// Sparse Laurent polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::from_integer(1.into()))
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponent::zero(nvars), c);
        }
        p
    }

    /// The single variable `x_{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, i), Rat::from_integer(1.into()))
    }

    pub fn monomial(exp: Exponent, c: Rat) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent of length {} in a {}-variable polynomial",
                    e.len(),
                    nvars
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Exponent, Rat> {
        self.terms.iter()
    }

    /// Exactly the stored exponents (the support of the polynomial).
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &Exponent) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient at exponent 0, or 0 if absent.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Exponent::zero(self.nvars))
    }

    fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &LaurentPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the single term `c * x^e`.
    pub fn mul_term(&self, e: &Exponent, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, k)| (a.add(e), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dims(other)?;
        let mut out = Self::zero(self.nvars);
        // Convolve with the smaller factor outermost.
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (e, c) in &small.terms {
            for (e2, c2) in &big.terms {
                out.add_term(e.add(e2), c * c2);
            }
        }
        Ok(out)
    }

    /// `f^m` by repeated squaring; `f^0 = 1`.
    pub fn pow(&self, m: u64) -> LaurentPoly {
        let mut acc = Self::one(self.nvars);
        let mut sq = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&sq).expect("same nvars");
            }
            m >>= 1;
            if m > 0 {
                sq = sq.mul(&sq).expect("same nvars");
            }
        }
        acc
    }

    /// Partition of the terms by total degree; the values sum back to `self`.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.total_degree())
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    /// Substitute `x_i := v_i` for every `(i, v_i)` in the assignment, which
    /// must be nonzero because exponents may be negative. Assigned positions
    /// drop to exponent zero; the variable count is unchanged.
    pub fn evaluate_partial(&self, assignment: &BTreeMap<usize, Rat>) -> Result<LaurentPoly> {
        for (i, v) in assignment {
            if *i >= self.nvars {
                return Err(Error::VarOutOfRange { index: i + 1, nvars: self.nvars });
            }
            if v.is_zero() {
                return Err(Error::ZeroValue("assignment in evaluate_partial"));
            }
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exp = e.clone();
            for (&i, v) in assignment {
                let k = exp.0[i];
                if k != 0 {
                    coeff *= rat_pow_i64(v, k);
                    exp.0[i] = 0;
                }
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }

    /// Map every exponent through `alpha -> m(alpha)`. Used for monomial
    /// changes of variables `x^alpha -> x^{M alpha}`; injective maps never
    /// merge terms but collisions are accumulated regardless.
    pub fn map_exponents<F>(&self, mut m: F) -> Result<LaurentPoly>
    where
        F: FnMut(&Exponent) -> Result<Exponent>,
    {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let e2 = m(e)?;
            if e2.len() != self.nvars {
                return Err(Error::DimensionMismatch(
                    "exponent map changed the ambient dimension".into(),
                ));
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Keep only terms whose exponent satisfies the predicate.
    pub fn filter_terms<F>(&self, mut keep: F) -> LaurentPoly
    where
        F: FnMut(&Exponent) -> bool,
    {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restrict an n-variable polynomial supported on the last `n - k` axes
    /// to a polynomial in those variables.
    pub fn project_tail(&self, k: usize) -> Result<LaurentPoly> {
        let mut out = Self::zero(self.nvars - k);
        for (e, c) in &self.terms {
            if e.0[..k].iter().any(|&v| v != 0) {
                return Err(Error::DimensionMismatch(
                    "term uses a variable outside the tail block".into(),
                ));
            }
            out.add_term(Exponent(e.0[k..].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`project_tail`]: pad `k` zero entries in front of every
    /// exponent, producing an `k + nvars` variable polynomial.
    pub fn embed_tail(&self, k: usize) -> LaurentPoly {
        let n = self.nvars + k;
        LaurentPoly {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = vec![0i64; k];
                    v.extend_from_slice(&e.0);
                    (Exponent(v), c.clone())
                })
                .collect(),
        }
    }

    /// Canonical-form audit: no stored zero coefficient, every exponent of
    /// the right length.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| e.len() == self.nvars && !c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn x1(n: usize) -> LaurentPoly {
        LaurentPoly::var(n, 0)
    }

    fn xpow(n: usize, i: usize, k: i64) -> LaurentPoly {
        let mut e = vec![0; n];
        e[i] = k;
        LaurentPoly::monomial(Exponent(e), rat_int(1))
    }

    #[test]
    fn add_cancellation_and_identity() {
        let f = x1(1).add(&LaurentPoly::one(1)).unwrap();
        let g = LaurentPoly::constant(1, rat_int(-1));
        assert_eq!(f.add(&g).unwrap(), x1(1));

        let z = LaurentPoly::zero(1);
        assert_eq!(f.add(&z).unwrap(), f);

        let inv = xpow(1, 0, -1);
        let twice = inv.add(&inv).unwrap();
        assert_eq!(twice, inv.scale(&rat_int(2)));
    }

    #[test]
    fn add_dimension_mismatch() {
        let f = x1(1);
        let g = x1(2);
        assert!(matches!(f.add(&g), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn mul_examples() {
        // (x1 + x1^-1)(x1 - x1^-1) = x1^2 - x1^-2
        let a = x1(1).add(&xpow(1, 0, -1)).unwrap();
        let b = x1(1).sub(&xpow(1, 0, -1)).unwrap();
        let expected = xpow(1, 0, 2).sub(&xpow(1, 0, -2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);

        let f = a.clone();
        assert_eq!(f.mul(&LaurentPoly::one(1)).unwrap(), f);
        assert_eq!(
            xpow(1, 0, 2).mul(&xpow(1, 0, -2)).unwrap(),
            LaurentPoly::one(1)
        );
    }

    #[test]
    fn pow_examples() {
        // (x1 + x1^-1)^2 = x1^2 + 2 + x1^-2
        let f = x1(1).add(&xpow(1, 0, -1)).unwrap();
        let sq = f.pow(2);
        let expected = xpow(1, 0, 2)
            .add(&LaurentPoly::constant(1, rat_int(2)))
            .unwrap()
            .add(&xpow(1, 0, -2))
            .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(f.pow(1), f);
        assert_eq!(f.pow(0), LaurentPoly::one(1));
    }

    #[test]
    fn pow_matches_naive_product() {
        // (x1 + x2)^3 expanded by repeated naive multiplication; its constant
        // term is 0 because no exponent cancels to the origin.
        let f = LaurentPoly::var(2, 0).add(&LaurentPoly::var(2, 1)).unwrap();
        let mut naive = LaurentPoly::one(2);
        for _ in 0..3 {
            naive = naive.mul(&f).unwrap();
        }
        assert_eq!(f.pow(3), naive);
        assert_eq!(naive.constant_term(), rat_int(0));
        assert_eq!(naive.num_terms(), 4);
    }

    #[test]
    fn constant_term_examples() {
        let f = xpow(1, 0, 2)
            .add(&LaurentPoly::constant(1, rat_int(2)))
            .unwrap()
            .add(&xpow(1, 0, -2))
            .unwrap();
        assert_eq!(f.constant_term(), rat_int(2));
        let g = LaurentPoly::var(2, 0).add(&LaurentPoly::var(2, 1)).unwrap();
        assert_eq!(g.constant_term(), rat_int(0));
        assert_eq!(LaurentPoly::zero(3).constant_term(), rat_int(0));
    }

    #[test]
    fn support_examples() {
        let f = x1(1).sub(&xpow(1, 0, -1)).unwrap();
        assert_eq!(f.support(), vec![Exponent(vec![-1]), Exponent(vec![1])]);
        assert!(LaurentPoly::zero(2).support().is_empty());
        let c = LaurentPoly::constant(2, rat_int(5));
        assert_eq!(c.support(), vec![Exponent(vec![0, 0])]);
    }

    #[test]
    fn homogeneous_components_examples() {
        // x1*x2 + x1*x2^-1 + 3 -> {2: x1*x2, 0: x1*x2^-1 + 3}
        let f = LaurentPoly::monomial(Exponent(vec![1, 1]), rat_int(1))
            .add(&LaurentPoly::monomial(Exponent(vec![1, -1]), rat_int(1)))
            .unwrap()
            .add(&LaurentPoly::constant(2, rat_int(3)))
            .unwrap();
        let comps = f.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(
            comps[&2],
            LaurentPoly::monomial(Exponent(vec![1, 1]), rat_int(1))
        );
        assert_eq!(
            comps[&0],
            LaurentPoly::monomial(Exponent(vec![1, -1]), rat_int(1))
                .add(&LaurentPoly::constant(2, rat_int(3)))
                .unwrap()
        );
        let mut sum = LaurentPoly::zero(2);
        for p in comps.values() {
            sum = sum.add(p).unwrap();
        }
        assert_eq!(sum, f);

        assert!(LaurentPoly::zero(2).homogeneous_components().is_empty());
        let g = xpow(1, 0, -1);
        let comps = g.homogeneous_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&-1], g);
    }

    #[test]
    fn evaluate_partial_examples() {
        // f = x1*x2 + x1^-1, x1 := 2  -> 2*x2 + 1/2
        let f = LaurentPoly::monomial(Exponent(vec![1, 1]), rat_int(1))
            .add(&LaurentPoly::monomial(Exponent(vec![-1, 0]), rat_int(1)))
            .unwrap();
        let mut assign = BTreeMap::new();
        assign.insert(0usize, rat_int(2));
        let got = f.evaluate_partial(&assign).unwrap();
        let expected = LaurentPoly::monomial(Exponent(vec![0, 1]), rat_int(2))
            .add(&LaurentPoly::constant(2, rat(1, 2)))
            .unwrap();
        assert_eq!(got, expected);

        // f = x1 - 5, x1 := 5 -> 0
        let f = x1(1).sub(&LaurentPoly::constant(1, rat_int(5))).unwrap();
        let mut assign = BTreeMap::new();
        assign.insert(0usize, rat_int(5));
        assert!(f.evaluate_partial(&assign).unwrap().is_zero());

        // untouched variable
        let f = LaurentPoly::var(2, 1);
        let mut assign = BTreeMap::new();
        assign.insert(0usize, rat_int(7));
        assert_eq!(f.evaluate_partial(&assign).unwrap(), f);

        // zero assignment rejected
        let mut assign = BTreeMap::new();
        assign.insert(0usize, rat_int(0));
        assert!(matches!(
            f.evaluate_partial(&assign),
            Err(Error::ZeroValue(_))
        ));
    }

    #[test]
    fn project_and_embed_tail() {
        let f = LaurentPoly::monomial(Exponent(vec![0, 2, -1]), rat(3, 2));
        let tail = f.project_tail(1).unwrap();
        assert_eq!(tail.nvars(), 2);
        assert_eq!(tail.embed_tail(1), f);
        let bad = LaurentPoly::monomial(Exponent(vec![1, 0, 0]), rat_int(1));
        assert!(bad.project_tail(1).is_err());
    }
}
