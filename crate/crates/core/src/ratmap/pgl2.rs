use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{BinaryForm, QForm};
use crate::mpoly::MPoly;

/// Element of PGL₂(ℚ) acting by `[x : y] ↦ [αx + βy : γx + δy]`, stored as
/// the integer matrix with content 1 whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pgl2 {
    m: [BigInt; 4],
}

impl Pgl2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Pgl2> {
        let l = [&a, &b, &c, &d].iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let ints: Vec<BigInt> = [a, b, c, d].iter().map(|r| r.numer() * (&l / r.denom())).collect();
        Self::from_ints(ints[0].clone(), ints[1].clone(), ints[2].clone(), ints[3].clone())
    }

    pub fn from_ints(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Pgl2> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::InvalidArgument("singular matrix: αδ − βγ = 0".into()));
        }
        let mut m = [a, b, c, d];
        let g = m.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        let lead_neg = m.iter().find(|v| !v.is_zero()).unwrap().is_negative();
        for v in m.iter_mut() {
            *v /= &g;
            if lead_neg {
                *v = -&*v;
            }
        }
        Ok(Pgl2 { m })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Pgl2> {
        Self::from_ints(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Pgl2 {
        Self::from_i64(1, 0, 0, 1).unwrap()
    }

    /// `[y : x]`, i.e. z ↦ 1/z.
    pub fn swap() -> Pgl2 {
        Self::from_i64(0, 1, 1, 0).unwrap()
    }

    /// `[x + k·y : y]`, i.e. z ↦ z + k.
    pub fn translation(k: i64) -> Pgl2 {
        Self::from_i64(1, k, 0, 1).unwrap()
    }

    /// Parse `"αx + βy, γx + δy"`.
    pub fn parse(s: &str) -> Result<Pgl2> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("expected two linear forms separated by a comma, got `{s}`")));
        }
        let mut coeffs = Vec::new();
        for p in parts {
            let poly = MPoly::parse(p)?;
            if let Some(v) = poly.used_vars().into_iter().find(|v| v != "x" && v != "y") {
                return Err(Error::UnknownVariable(v));
            }
            let f = BinaryForm::<MPoly>::from_mpoly_deg(&poly, 1)
                .map_err(|_| Error::Parse(format!("`{p}` is not a linear form in x, y")))?
                .to_qform()?;
            coeffs.push(f.coeff(0).clone());
            coeffs.push(f.coeff(1).clone());
        }
        let [a, b, c, d]: [BigRational; 4] = coeffs.try_into().unwrap();
        Self::new(a, b, c, d)
    }

    /// `(α, β, γ, δ)`.
    pub fn entries(&self) -> &[BigInt; 4] {
        &self.m
    }

    fn rat(&self, i: usize) -> BigRational {
        BigRational::from_integer(self.m[i].clone())
    }

    pub fn det(&self) -> BigInt {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Pgl2) -> Pgl2 {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Self::from_ints(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h).expect("product of invertibles")
    }

    pub fn inverse(&self) -> Pgl2 {
        let [a, b, c, d] = &self.m;
        Self::from_ints(d.clone(), -b, -c, a.clone()).expect("adjugate of invertible")
    }

    pub fn pow(&self, j: u32) -> Pgl2 {
        (0..j).fold(Pgl2::identity(), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero() && self.m[0] == self.m[3]
    }

    /// Smallest `k <= bound` with `self^k` the identity.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// The linear forms `(αx + βy, γx + δy)`.
    pub fn forms(&self) -> (QForm, QForm) {
        (
            QForm::linear(self.rat(0), self.rat(1)),
            QForm::linear(self.rat(2), self.rat(3)),
        )
    }

    /// `y·(αx + βy) − x·(γx + δy)`.
    pub fn fixed_point_form(&self) -> QForm {
        let [a, b, c, d] = &self.m;
        QForm::new(vec![
            BigRational::from_integer(-c),
            BigRational::from_integer(a - d),
            BigRational::from_integer(b.clone()),
        ])
    }

    pub fn apply(&self, x: &BigRational, y: &BigRational) -> (BigRational, BigRational) {
        (self.rat(0) * x + self.rat(1) * y, self.rat(2) * x + self.rat(3) * y)
    }
}

impl fmt::Display for Pgl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.forms();
        write!(f, "[{u} : {v}]")
    }
}

impl fmt::Debug for Pgl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pgl2{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_normalization() {
        assert_eq!(Pgl2::swap().order(10), Some(2));
        assert_eq!(Pgl2::parse("x - y, x").unwrap().order(10), Some(3));
        assert_eq!(Pgl2::identity().order(10), Some(1));
        assert_eq!(Pgl2::translation(1).order(50), None);
        let g = Pgl2::parse("x - y, x").unwrap();
        // g^2 = [y : −x + y] with the first nonzero entry made positive
        assert_eq!(g.pow(2), Pgl2::from_i64(0, 1, -1, 1).unwrap());
        assert_eq!(Pgl2::parse("-2*x, -2*y").unwrap(), Pgl2::identity());
        assert!(Pgl2::parse("x, x").is_err());
        assert!(Pgl2::parse("x^2, y").is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let h = Pgl2::from_i64(2, 3, -1, 5).unwrap();
        assert!(h.compose(&h.inverse()).is_identity());
    }
}
