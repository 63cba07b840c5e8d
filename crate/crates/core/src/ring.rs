//! Coefficient-domain abstractions.
//!
//! [`Ring`] is what binary forms need from their coefficients (ℚ for concrete
//! maps, ℚ[a, b, …] for families). [`Field`] is the smaller interface used
//! for point evaluation, where the scalars are ℚ or a number field element
//! whose zero/one depend on the modulus, hence the `*_like` constructors.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dense;
use crate::error::Result;
use crate::mpoly::MPoly;

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `Some(q)` with `q * o == self`, or `None` when no such `q` exists.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
    /// Size measure for resource ceilings.
    fn term_count(&self) -> usize;
    fn as_mpoly(&self) -> MPoly;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, u) in a.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in b.iter().enumerate() {
                if !v.is_zero() {
                    out[i + j] = out[i + j].add_ref(&u.mul_ref(v));
                }
            }
        }
        out
    }

    /// Exact quotient of coefficient sequences with `den[0] != 0`; certified
    /// by multiplying back.
    fn div_seq(num: &[Self], den: &[Self]) -> Option<Vec<Self>> {
        if num.len() < den.len() {
            return num.iter().all(Ring::is_zero).then(Vec::new);
        }
        let qlen = num.len() - den.len() + 1;
        let mut q: Vec<Self> = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let mut acc = num[i].clone();
            for j in 1..den.len().min(i + 1) {
                if !den[j].is_zero() && !q[i - j].is_zero() {
                    acc = acc.sub_ref(&q[i - j].mul_ref(&den[j]));
                }
            }
            q.push(acc.div_exact(&den[0])?);
        }
        let back = Self::convolve(&q, den);
        (back.len() == num.len() && back.iter().zip(num).all(|(a, b)| a == b)).then_some(q)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn term_count(&self) -> usize {
        usize::from(!Zero::is_zero(self))
    }
    fn as_mpoly(&self) -> MPoly {
        MPoly::constant(self.clone())
    }
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        dense::conv_rat(a, b)
    }
    fn div_seq(num: &[Self], den: &[Self]) -> Option<Vec<Self>> {
        if num.len() < den.len() {
            return num.iter().all(Zero::is_zero).then(Vec::new);
        }
        dense::div_rat_exact(num, den)
    }
}

/// Scalars usable for evaluating maps at points.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Result<Self>;
    fn minus(&self, o: &Self) -> Result<Self>;
    fn times(&self, o: &Self) -> Result<Self>;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;

    fn divided(&self, o: &Self) -> Result<Self> {
        self.times(&o.inverse()?)
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base)?;
            }
            base = base.times(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        Zero::zero()
    }
    fn one_like(&self) -> Self {
        One::one()
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn minus(&self, o: &Self) -> Result<Self> {
        Ok(self - o)
    }
    fn times(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(crate::Error::NotInvertible { gcd: "0".into() });
        }
        Ok(self.recip())
    }
}
