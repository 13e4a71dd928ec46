//! Derivations and monomial algebra endomorphisms of the Laurent algebra,
//! with locally-finite / locally-nilpotent classification and closed-form
//! power evaluation.
//!
//! A derivation is `D = sum a_i d/dx_i` acting by
//! `D(x^alpha) = sum alpha_i a_i x^{alpha - e_i}`. A nonzero endomorphism is
//! determined by scalars `q in (Q*)^n` and an exponent matrix `A`, acting by
//! `phi(x^alpha) = q^alpha x^{A alpha}`; the zero map is kept as an explicit
//! case with the convention `A = 0`, `q = 0`.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlat::{geometric_sum, lf_normal_form, IntMatrix, LfNormalForm};
use crate::laurent::{Exponent, LaurentPoly};
use crate::rat::Rat;
use crate::relations::{power_product, power_product_big};

/// `D = sum a_i d/dx_i` with arbitrary Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    nvars: usize,
    coeffs: Vec<LaurentPoly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<LaurentPoly>) -> Result<Self> {
        let nvars = coeffs.len();
        for c in &coeffs {
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient in {} variables for a {}-variable derivation",
                    c.nvars(),
                    nvars
                )));
            }
        }
        Ok(Derivation { nvars, coeffs })
    }

    /// The diagonal derivation `sum q_i x_i d/dx_i`.
    pub fn diagonal(q: &[Rat]) -> Self {
        let n = q.len();
        let coeffs = q
            .iter()
            .enumerate()
            .map(|(i, qi)| LaurentPoly::monomial(Exponent::unit(n, i), qi.clone()))
            .collect();
        Derivation { nvars: n, coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Monomial endomorphism `phi(x^alpha) = q^alpha x^{A alpha}`, or the zero
/// map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialEndo {
    Zero { nvars: usize },
    Map { q: Vec<Rat>, a: IntMatrix },
}

impl MonomialEndo {
    pub fn new(q: Vec<Rat>, a: IntMatrix) -> Result<Self> {
        let n = q.len();
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} exponent matrix with {} scalars",
                a.rows(),
                a.cols(),
                n
            )));
        }
        if q.iter().any(|qi| qi.is_zero()) {
            return Err(Error::ZeroValue("endomorphism scalar q_i"));
        }
        Ok(MonomialEndo::Map { q, a })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialEndo::Zero { nvars }
    }

    pub fn identity(nvars: usize) -> Self {
        MonomialEndo::Map {
            q: vec![Rat::one(); nvars],
            a: IntMatrix::identity(nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            MonomialEndo::Zero { nvars } => *nvars,
            MonomialEndo::Map { q, .. } => q.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MonomialEndo::Zero { .. })
    }

    pub fn is_identity(&self) -> bool {
        match self {
            MonomialEndo::Zero { .. } => false,
            MonomialEndo::Map { q, a } => a.is_identity() && q.iter().all(|v| v.is_one()),
        }
    }

    pub fn scalars(&self) -> Option<&[Rat]> {
        match self {
            MonomialEndo::Zero { .. } => None,
            MonomialEndo::Map { q, .. } => Some(q),
        }
    }

    pub fn exponent_matrix(&self) -> IntMatrix {
        match self {
            MonomialEndo::Zero { nvars } => IntMatrix::zeros(*nvars, *nvars),
            MonomialEndo::Map { a, .. } => a.clone(),
        }
    }
}

fn check_nvars(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} variables",
            expected, got
        )));
    }
    Ok(())
}

/// Apply `D` by the Leibniz rule extended linearly from
/// `D(x^alpha) = sum alpha_i a_i x^{alpha - e_i}`.
pub fn derive(d: &Derivation, f: &LaurentPoly) -> Result<LaurentPoly> {
    check_nvars(d.nvars(), f.nvars())?;
    let n = d.nvars();
    let mut out = LaurentPoly::zero(n);
    for (alpha, c) in f.terms() {
        for i in 0..n {
            let k = alpha.0[i];
            if k == 0 || d.coeffs[i].is_zero() {
                continue;
            }
            let shifted = alpha.sub(&Exponent::unit(n, i));
            let scale = c * Rat::from_integer(k.into());
            out = out.add(&d.coeffs[i].mul_term(&shifted, &scale))?;
        }
    }
    Ok(out)
}

/// Apply a monomial endomorphism term by term.
pub fn endo_apply(phi: &MonomialEndo, f: &LaurentPoly) -> Result<LaurentPoly> {
    check_nvars(phi.nvars(), f.nvars())?;
    match phi {
        MonomialEndo::Zero { nvars } => Ok(LaurentPoly::zero(*nvars)),
        MonomialEndo::Map { q, a } => {
            let mut out = LaurentPoly::zero(f.nvars());
            for (alpha, c) in f.terms() {
                let coeff = c * power_product(q, alpha);
                let exp = a.apply_exp(alpha)?;
                out = out.add(&LaurentPoly::monomial(exp, coeff))?;
            }
            Ok(out)
        }
    }
}

/// Composition `phi . psi`, again a monomial endomorphism:
/// `A'' = A_phi A_psi` and `q''_i = q_psi_i * q_phi^(A_psi e_i)`.
pub fn endo_compose(phi: &MonomialEndo, psi: &MonomialEndo) -> Result<MonomialEndo> {
    check_nvars(phi.nvars(), psi.nvars())?;
    let n = phi.nvars();
    match (phi, psi) {
        (MonomialEndo::Zero { .. }, _) | (_, MonomialEndo::Zero { .. }) => {
            Ok(MonomialEndo::zero(n))
        }
        (MonomialEndo::Map { q: qp, a: ap }, MonomialEndo::Map { q: qs, a: as_ }) => {
            let a = ap.mul(as_);
            let mut q = Vec::with_capacity(n);
            for i in 0..n {
                let col = as_.col(i);
                q.push(&qs[i] * power_product_big(qp, &col));
            }
            MonomialEndo::new(q, a)
        }
    }
}

/// Closed form for `phi^m(x^alpha) = q^{A~_m alpha} x^{A^m alpha}` with
/// `A~_m = I + A + ... + A^{m-1}`.
pub fn endo_power_monomial(
    phi: &MonomialEndo,
    m: u64,
    alpha: &Exponent,
) -> Result<(Rat, Exponent)> {
    assert!(m >= 1, "endo_power_monomial needs m >= 1");
    check_nvars(phi.nvars(), alpha.len())?;
    match phi {
        MonomialEndo::Zero { .. } => Err(Error::ZeroEndo),
        MonomialEndo::Map { q, a } => {
            let atilde = geometric_sum(a, m);
            let coeff_exp: Vec<_> = atilde
                .apply_vec(&alpha.0.iter().map(|&v| v.into()).collect::<Vec<_>>());
            let coeff = power_product_big(q, &coeff_exp);
            let exp = a.pow(m).apply_exp(alpha)?;
            Ok((coeff, exp))
        }
    }
}

/// Conjugate by the monomial automorphism `x^alpha -> x^{S alpha}`:
/// `A' = S^{-1} A S` and `q'_i = q^{S e_i}`.
pub fn endo_conjugate(phi: &MonomialEndo, s: &IntMatrix) -> Result<MonomialEndo> {
    check_nvars(phi.nvars(), s.rows())?;
    if !s.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    match phi {
        MonomialEndo::Zero { nvars } => Ok(MonomialEndo::zero(*nvars)),
        MonomialEndo::Map { q, a } => {
            let sinv = s.inverse_unimodular()?;
            let a2 = sinv.mul(a).mul(s);
            let n = q.len();
            let mut q2 = Vec::with_capacity(n);
            for i in 0..n {
                q2.push(power_product_big(q, &s.col(i)));
            }
            MonomialEndo::new(q2, a2)
        }
    }
}

/// Outcome of classifying a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationClass {
    /// `D = 0`; the algebra has no other locally nilpotent derivation.
    LocallyNilpotent,
    /// `D = sum q_i x_i d/dx_i`; acts diagonally on monomials.
    LocallyFinite { q: Vec<Rat> },
    Neither,
}

/// Outcome of classifying `I - phi` for a monomial endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndoClass {
    /// `phi = I`; the only locally nilpotent case.
    LocallyNilpotent,
    /// The exponent matrix is conjugate to `blockdiag(0, B)` with `B` of
    /// finite order. `I - phi` is locally finite exactly when `phi` is.
    LocallyFinite { nf: LfNormalForm },
    Neither,
}

/// A derivation is locally finite iff every coefficient is `q_i x_i`, and
/// locally nilpotent only when zero.
pub fn classify_derivation(d: &Derivation) -> DerivationClass {
    if d.is_zero() {
        return DerivationClass::LocallyNilpotent;
    }
    let n = d.nvars();
    let mut q = Vec::with_capacity(n);
    for (i, a) in d.coeffs().iter().enumerate() {
        if a.is_zero() {
            q.push(Rat::zero());
            continue;
        }
        if a.num_terms() != 1 {
            return DerivationClass::Neither;
        }
        let (e, c) = a.terms().next().expect("one term");
        if *e != Exponent::unit(n, i) {
            return DerivationClass::Neither;
        }
        q.push(c.clone());
    }
    DerivationClass::LocallyFinite { q }
}

/// `I - phi` is locally finite iff the exponent matrix has an
/// [`lf_normal_form`]; locally nilpotent only for `phi = I`. The zero map is
/// locally finite with a full kernel block.
pub fn classify_endo(phi: &MonomialEndo) -> Result<EndoClass> {
    if phi.is_identity() {
        return Ok(EndoClass::LocallyNilpotent);
    }
    match lf_normal_form(&phi.exponent_matrix())? {
        Some(nf) => Ok(EndoClass::LocallyFinite { nf }),
        None => Ok(EndoClass::Neither),
    }
}

/// Result of enumerating the exponent orbit `alpha, A alpha, A^2 alpha, ...`
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitResult {
    /// Orbit listed up to (excluding) the first repeated vector.
    Finite(Vec<Exponent>),
    /// More than `cap` distinct vectors were seen.
    Overflow { cap: usize },
}

/// Forward exponent orbit of `x^alpha` under a nonzero endomorphism.
pub fn orbit(phi: &MonomialEndo, alpha: &Exponent, cap: usize) -> Result<OrbitResult> {
    check_nvars(phi.nvars(), alpha.len())?;
    let a = match phi {
        MonomialEndo::Zero { .. } => return Err(Error::ZeroEndo),
        MonomialEndo::Map { a, .. } => a,
    };
    let mut seen: HashSet<Exponent> = HashSet::new();
    let mut seq = Vec::new();
    let mut cur = alpha.clone();
    loop {
        if !seen.insert(cur.clone()) {
            return Ok(OrbitResult::Finite(seq));
        }
        seq.push(cur.clone());
        if seq.len() > cap {
            return Ok(OrbitResult::Overflow { cap });
        }
        cur = match a.apply_exp(&cur) {
            Ok(next) => next,
            Err(Error::ExponentOverflow) => return Ok(OrbitResult::Overflow { cap }),
            Err(e) => return Err(e),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::rat::{rat, rat_int};

    fn p(text: &str, n: usize) -> LaurentPoly {
        parse_poly(text, n).unwrap()
    }

    #[test]
    fn derive_examples() {
        // D = x1 d1 on x1^5 -> 5 x1^5
        let d = Derivation::new(vec![p("x1", 1)]).unwrap();
        assert_eq!(derive(&d, &p("x1^5", 1)).unwrap(), p("5*x1^5", 1));

        // D = x2 d1 on x1^-1 -> -x1^-2 x2
        let d = Derivation::new(vec![p("x2", 2), LaurentPoly::zero(2)]).unwrap();
        assert_eq!(
            derive(&d, &p("x1^-1", 2)).unwrap(),
            p("-1*x1^-2*x2", 2)
        );

        // derivations kill constants
        let d = Derivation::new(vec![p("x1^3 - x2", 2), p("7", 2)]).unwrap();
        assert!(derive(&d, &p("42", 2)).unwrap().is_zero());
    }

    #[test]
    fn endo_apply_examples() {
        let phi = MonomialEndo::new(
            vec![rat_int(2)],
            IntMatrix::from_rows(vec![vec![-1]]),
        )
        .unwrap();
        assert_eq!(endo_apply(&phi, &p("x1", 1)).unwrap(), p("2*x1^-1", 1));

        let id = MonomialEndo::identity(2);
        let f = p("x1*x2^-3 + 5", 2);
        assert_eq!(endo_apply(&id, &f).unwrap(), f);

        // A = 0 evaluates monomials at q
        let phi = MonomialEndo::new(
            vec![rat_int(2), rat_int(3)],
            IntMatrix::zeros(2, 2),
        )
        .unwrap();
        assert_eq!(endo_apply(&phi, &p("x1*x2", 2)).unwrap(), p("6", 2));

        // the zero endomorphism annihilates everything
        let z = MonomialEndo::zero(2);
        assert!(endo_apply(&z, &p("x1 + 1", 2)).unwrap().is_zero());
    }

    #[test]
    fn endo_compose_examples() {
        let phi = MonomialEndo::new(
            vec![rat_int(2)],
            IntMatrix::from_rows(vec![vec![-1]]),
        )
        .unwrap();
        let id = MonomialEndo::identity(1);
        assert_eq!(endo_compose(&phi, &id).unwrap(), phi);
        assert_eq!(endo_compose(&id, &phi).unwrap(), phi);

        let sq = endo_compose(&phi, &phi).unwrap();
        assert_eq!(sq, MonomialEndo::identity(1));

        let z = MonomialEndo::zero(1);
        assert!(endo_compose(&phi, &z).unwrap().is_zero());
        assert!(endo_compose(&z, &phi).unwrap().is_zero());
    }

    #[test]
    fn compose_agrees_with_apply() {
        let phi = MonomialEndo::new(
            vec![rat_int(2), rat(1, 3)],
            IntMatrix::from_rows(vec![vec![0, 1], vec![1, 1]]),
        )
        .unwrap();
        let psi = MonomialEndo::new(
            vec![rat_int(-1), rat_int(5)],
            IntMatrix::from_rows(vec![vec![1, -1], vec![0, 2]]),
        )
        .unwrap();
        let comp = endo_compose(&phi, &psi).unwrap();
        for f in [p("x1", 2), p("x2^-1", 2), p("x1^2*x2", 2)] {
            let lhs = endo_apply(&comp, &f).unwrap();
            let rhs = endo_apply(&phi, &endo_apply(&psi, &f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn endo_power_examples() {
        let phi = MonomialEndo::new(
            vec![rat_int(2)],
            IntMatrix::from_rows(vec![vec![-1]]),
        )
        .unwrap();
        let (c, e) = endo_power_monomial(&phi, 2, &Exponent(vec![1])).unwrap();
        assert_eq!(c, rat_int(1));
        assert_eq!(e, Exponent(vec![1]));

        let (c, e) = endo_power_monomial(&phi, 1, &Exponent(vec![3])).unwrap();
        assert_eq!(c, rat_int(8));
        assert_eq!(e, Exponent(vec![-3]));

        let id = MonomialEndo::identity(2);
        for m in 1..=4 {
            let (c, e) = endo_power_monomial(&id, m, &Exponent(vec![2, -1])).unwrap();
            assert_eq!(c, rat_int(1));
            assert_eq!(e, Exponent(vec![2, -1]));
        }

        let z = MonomialEndo::zero(1);
        assert!(matches!(
            endo_power_monomial(&z, 1, &Exponent(vec![1])),
            Err(Error::ZeroEndo)
        ));
    }

    #[test]
    fn endo_conjugate_examples() {
        let phi = MonomialEndo::new(
            vec![rat_int(2), rat_int(3)],
            IntMatrix::identity(2),
        )
        .unwrap();
        let i = IntMatrix::identity(2);
        assert_eq!(endo_conjugate(&phi, &i).unwrap(), phi);

        let s = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        let conj = endo_conjugate(&phi, &s).unwrap();
        assert_eq!(
            conj,
            MonomialEndo::new(vec![rat_int(3), rat_int(2)], IntMatrix::identity(2)).unwrap()
        );
        // conjugating back restores phi
        let sinv = s.inverse_unimodular().unwrap();
        assert_eq!(endo_conjugate(&conj, &sinv).unwrap(), phi);

        let not_uni = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]);
        assert!(matches!(
            endo_conjugate(&phi, &not_uni),
            Err(Error::NotUnimodular)
        ));
    }

    #[test]
    fn classify_derivation_examples() {
        let d = Derivation::new(vec![p("2*x1", 2), p("3*x2", 2)]).unwrap();
        assert_eq!(
            classify_derivation(&d),
            DerivationClass::LocallyFinite { q: vec![rat_int(2), rat_int(3)] }
        );

        let d = Derivation::new(vec![p("x2", 2), LaurentPoly::zero(2)]).unwrap();
        assert_eq!(classify_derivation(&d), DerivationClass::Neither);

        let d = Derivation::new(vec![LaurentPoly::zero(1)]).unwrap();
        assert_eq!(classify_derivation(&d), DerivationClass::LocallyNilpotent);
    }

    #[test]
    fn classify_endo_examples() {
        let swap = MonomialEndo::new(
            vec![rat_int(1), rat_int(1)],
            IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        match classify_endo(&swap).unwrap() {
            EndoClass::LocallyFinite { nf } => {
                assert_eq!(nf.k, 0);
                assert_eq!(nf.r, 2);
            }
            other => panic!("expected LF, got {other:?}"),
        }

        let shear = MonomialEndo::new(
            vec![rat_int(1), rat_int(1)],
            IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]),
        )
        .unwrap();
        assert_eq!(classify_endo(&shear).unwrap(), EndoClass::Neither);

        assert_eq!(
            classify_endo(&MonomialEndo::identity(3)).unwrap(),
            EndoClass::LocallyNilpotent
        );

        match classify_endo(&MonomialEndo::zero(2)).unwrap() {
            EndoClass::LocallyFinite { nf } => {
                assert_eq!(nf.k, 2);
                assert_eq!(nf.r, 1);
            }
            other => panic!("expected LF, got {other:?}"),
        }
    }

    #[test]
    fn orbit_examples() {
        let swap = MonomialEndo::new(
            vec![rat_int(1), rat_int(1)],
            IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        assert_eq!(
            orbit(&swap, &Exponent(vec![1, 0]), 10).unwrap(),
            OrbitResult::Finite(vec![Exponent(vec![1, 0]), Exponent(vec![0, 1])])
        );

        let id = MonomialEndo::identity(2);
        assert_eq!(
            orbit(&id, &Exponent(vec![3, -1]), 10).unwrap(),
            OrbitResult::Finite(vec![Exponent(vec![3, -1])])
        );

        let shear = MonomialEndo::new(
            vec![rat_int(1), rat_int(1)],
            IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]),
        )
        .unwrap();
        assert_eq!(
            orbit(&shear, &Exponent(vec![0, 1]), 5).unwrap(),
            OrbitResult::Overflow { cap: 5 }
        );
    }
}
