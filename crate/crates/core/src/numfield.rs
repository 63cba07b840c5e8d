//! Arithmetic in ℚ[t]/(m(t)) for a monic modulus `m` that need not be
//! irreducible. Inversion reports the obstructing gcd instead of assuming a
//! field.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::UniPoly;
use crate::form::bareiss_det;
use crate::ring::Field;

#[derive(Clone)]
pub struct NFElem {
    modulus: Arc<UniPoly>,
    rep: UniPoly,
}

/// Monic version of `m`, shared between elements.
pub fn modulus(m: &UniPoly) -> Result<Arc<UniPoly>> {
    match m.degree() {
        Some(d) if d >= 1 => Ok(Arc::new(m.monic())),
        _ => Err(Error::InvalidArgument(format!("modulus `{m}` must have degree >= 1"))),
    }
}

impl NFElem {
    pub fn new(modulus: &Arc<UniPoly>, rep: &UniPoly) -> Result<Self> {
        if !modulus.is_monic() || modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("modulus must be monic of degree >= 1".into()));
        }
        Ok(NFElem { modulus: modulus.clone(), rep: rep.rem(modulus)? })
    }

    pub fn from_rational(modulus: &Arc<UniPoly>, r: BigRational) -> Self {
        NFElem { modulus: modulus.clone(), rep: UniPoly::constant(r) }
    }

    /// The class of `t`.
    pub fn generator(modulus: &Arc<UniPoly>) -> Result<Self> {
        Self::new(modulus, &UniPoly::monomial(BigRational::one(), 1))
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &Arc<UniPoly> {
        &self.modulus
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.rep.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn check(&self, o: &NFElem) -> Result<()> {
        if Arc::ptr_eq(&self.modulus, &o.modulus) || self.modulus == o.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    fn with_rep(&self, rep: UniPoly) -> NFElem {
        NFElem { modulus: self.modulus.clone(), rep }
    }

    pub fn add(&self, o: &NFElem) -> Result<NFElem> {
        self.check(o)?;
        Ok(self.with_rep(&self.rep + &o.rep))
    }

    pub fn sub(&self, o: &NFElem) -> Result<NFElem> {
        self.check(o)?;
        Ok(self.with_rep(&self.rep - &o.rep))
    }

    pub fn mul(&self, o: &NFElem) -> Result<NFElem> {
        self.check(o)?;
        Ok(self.with_rep((&self.rep * &o.rep).rem(&self.modulus)?))
    }

    pub fn neg(&self) -> NFElem {
        self.with_rep(-&self.rep)
    }

    /// Matrix of multiplication by `self` on the basis 1, t, …, t^(n−1).
    fn mult_matrix(&self) -> Vec<Vec<BigRational>> {
        let n = self.modulus.degree().unwrap();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.rep.clone();
        let t = UniPoly::monomial(BigRational::one(), 1);
        for _ in 0..n {
            cols.push(cur.clone());
            cur = (&cur * &t).rem(&self.modulus).expect("nonzero modulus");
        }
        (0..n).map(|i| (0..n).map(|j| cols[j].coeff(i)).collect()).collect()
    }

    /// Trace of multiplication by `self` (sum over the roots of `m`, with multiplicity).
    pub fn trace(&self) -> BigRational {
        let m = self.mult_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).fold(BigRational::zero(), |a, b| a + b)
    }

    /// Determinant of multiplication by `self`.
    pub fn norm(&self) -> BigRational {
        bareiss_det(self.mult_matrix()).expect("exact division over a field")
    }
}

/// Inverse by extended Euclid; fails with the gcd when it is nontrivial.
pub fn nf_invert(x: &NFElem) -> Result<NFElem> {
    let (g, s, _) = x.rep.ext_gcd(&x.modulus);
    if g.degree() != Some(0) {
        return Err(Error::NotInvertible { gcd: g.to_string_in("t") });
    }
    let inv = x.with_rep(s.rem(&x.modulus)?);
    debug_assert!(inv.mul(x).map(|p| p.rep == UniPoly::one()).unwrap_or(false));
    Ok(inv)
}

/// Smallest `r <= bound` with `x^r = 1`.
pub fn root_of_unity_order<F: Field>(x: &F, bound: u64) -> Result<Option<u64>> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    if x.is_zero() {
        return Err(Error::InvalidArgument("zero is not a root of unity".into()));
    }
    let mut p = x.clone();
    for r in 1..=bound {
        if p.is_one() {
            return Ok(Some(r));
        }
        p = p.times(x)?;
    }
    Ok(None)
}

impl PartialEq for NFElem {
    fn eq(&self, o: &Self) -> bool {
        self.modulus == o.modulus && self.rep == o.rep
    }
}

impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.rep.to_string_in("t"), self.modulus.to_string_in("t"))
    }
}

impl fmt::Debug for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElem({self})")
    }
}

impl Field for NFElem {
    fn zero_like(&self) -> Self {
        self.with_rep(UniPoly::zero())
    }
    fn one_like(&self) -> Self {
        self.with_rep(UniPoly::one())
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        self.with_rep(UniPoly::constant(r.clone()))
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn plus(&self, o: &Self) -> Result<Self> {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Result<Self> {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Result<Self> {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Result<Self> {
        nf_invert(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn field(c: &[i64]) -> Arc<UniPoly> {
        modulus(&UniPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn inversion() {
        let m = field(&[1, -1, 1]);
        let t = NFElem::generator(&m).unwrap();
        let inv = nf_invert(&t).unwrap();
        // t^2 = t - 1, so t·(1 − t) = 1
        assert_eq!(inv.rep(), &UniPoly::from_ints(&[1, -1]));
        assert!(t.mul(&inv).unwrap().is_one());

        let i = field(&[1, 0, 1]);
        let two = NFElem::from_rational(&i, int(2));
        assert_eq!(nf_invert(&two).unwrap().as_rational(), Some(rat(1, 2)));

        let sq = field(&[0, 0, 1]);
        let t = NFElem::generator(&sq).unwrap();
        match nf_invert(&t) {
            Err(Error::NotInvertible { gcd }) => assert_eq!(gcd, "t"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn root_of_unity_orders() {
        assert_eq!(root_of_unity_order(&int(-1), 10).unwrap(), Some(2));
        let t = NFElem::generator(&field(&[1, -1, 1])).unwrap();
        assert_eq!(root_of_unity_order(&t, 10).unwrap(), Some(6));
        assert_eq!(root_of_unity_order(&int(2), 100).unwrap(), None);
        assert!(root_of_unity_order(&int(1), 0).is_err());
    }

    #[test]
    fn mixing_moduli_is_an_error() {
        let a = NFElem::generator(&field(&[1, 0, 1])).unwrap();
        let b = NFElem::generator(&field(&[-2, 0, 1])).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::ModulusMismatch);
    }

    #[test]
    fn trace_and_norm() {
        // t^2 − t + 1: roots are primitive sixth roots of unity
        let t = NFElem::generator(&field(&[1, -1, 1])).unwrap();
        assert_eq!(t.trace(), int(1));
        assert_eq!(t.norm(), int(1));
        assert_eq!(t.to_string(), "t mod t^2 - t + 1");
    }
}
