//! Dense binary forms `Σ c_i x^(d−i) y^i` over a coefficient ring.
//!
//! `C = BigRational` is the concrete-map fast path (Kronecker products,
//! integer exact division); `C = MPoly` carries parameterized families.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dense;
use crate::error::{Error, Result};
use crate::exactalg::UniPoly;
use crate::mpoly::MPoly;
use crate::ring::Ring;

#[derive(Clone, PartialEq)]
pub struct BinaryForm<C> {
    coeffs: Vec<C>,
}

pub type QForm = BinaryForm<BigRational>;

impl<C: Ring> BinaryForm<C> {
    /// `coeffs[i]` multiplies `x^(d−i) y^i`; the degree is `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn zero(deg: usize) -> Self {
        BinaryForm { coeffs: vec![C::zero(); deg + 1] }
    }

    pub fn constant(c: C) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn x() -> Self {
        BinaryForm { coeffs: vec![C::one(), C::zero()] }
    }

    pub fn y() -> Self {
        BinaryForm { coeffs: vec![C::zero(), C::one()] }
    }

    /// `a·x + b·y`.
    pub fn linear(a: C, b: C) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^(d−i) y^i`.
    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(Ring::term_count).sum()
    }

    /// Exponent of the largest power of `y` dividing the form (`None` for 0).
    pub fn y_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exponent of the largest power of `x` dividing the form.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().rev().position(|c| !c.is_zero())
    }

    fn same_degree(&self, o: &Self, op: &str) {
        assert_eq!(self.degree(), o.degree(), "{op} of binary forms of different degrees");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_degree(o, "sum");
        BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_degree(o, "difference");
        BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(Ring::neg_ref).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BinaryForm { coeffs: C::convolve(&self.coeffs, &o.coeffs) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Self>>(it: I) -> Self
    where
        C: 'a,
    {
        it.into_iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    /// Multiply by `y^k`.
    pub fn shift_y(&self, k: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.extend(std::iter::repeat_n(C::zero(), k));
        BinaryForm { coeffs: c }
    }

    /// Certified exact quotient.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let Some(s) = den.y_valuation() else {
            return Err(Error::ZeroPolynomial);
        };
        if self.degree() < den.degree() {
            return if self.is_zero() {
                Err(Error::DegreeMismatch("zero form of lower degree than divisor".into()))
            } else {
                Err(Error::NonDivisible(format!("degree {} < {}", self.degree(), den.degree())))
            };
        }
        let qdeg = self.degree() - den.degree();
        if self.is_zero() {
            return Ok(Self::zero(qdeg));
        }
        // den = y^s · D with D(1, 0) ≠ 0
        let d_core = &den.coeffs[s..];
        if self.coeffs[..s].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonDivisible(format!("y^{s} does not divide the dividend")));
        }
        let q = C::div_seq(&self.coeffs[s..], d_core)
            .ok_or_else(|| Error::NonDivisible("nonzero remainder".into()))?;
        debug_assert_eq!(q.len(), qdeg + 1);
        Ok(BinaryForm { coeffs: q })
    }

    /// Largest `k` with `den^k | self` (`self` nonzero, `den` nonconstant).
    pub fn multiplicity(&self, den: &Self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if den.degree() == 0 {
            return Err(Error::InvalidArgument("multiplicity of a constant".into()));
        }
        let mut k = 0;
        let mut cur = self.clone();
        while cur.degree() >= den.degree() {
            match cur.exact_div(den) {
                Ok(q) => {
                    cur = q;
                    k += 1;
                }
                Err(Error::NonDivisible(_)) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(k)
    }

    /// Divide out `den` exactly `k` times.
    pub fn strip(&self, den: &Self, k: u32) -> Result<Self> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.exact_div(den)?;
        }
        Ok(cur)
    }

    /// `self(a, b)` for forms `a`, `b` of a common degree.
    pub fn compose(&self, a: &Self, b: &Self) -> Self {
        a.same_degree(b, "substitution");
        let d = self.degree();
        let mut pa = vec![Self::one()];
        let mut pb = vec![Self::one()];
        for i in 1..=d {
            pa.push(pa[i - 1].mul(a));
            pb.push(pb[i - 1].mul(b));
        }
        let mut acc = Self::zero(d * a.degree());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match (d - i, i) {
                (0, j) => pb[j].clone(),
                (k, 0) => pa[k].clone(),
                (k, j) => pa[k].mul(&pb[j]),
            };
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    pub fn eval(&self, x0: &C, y0: &C) -> C {
        let d = self.degree();
        let mut xpows = vec![C::one()];
        for i in 1..=d {
            xpows.push(xpows[i - 1].mul_ref(x0));
        }
        let mut acc = C::zero();
        let mut ypow = C::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add_ref(&c.mul_ref(&xpows[d - i]).mul_ref(&ypow));
            }
            ypow = ypow.mul_ref(y0);
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> BinaryForm<D> {
        BinaryForm { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// The form as a polynomial in `x, y` (and the coefficient variables).
    pub fn to_mpoly(&self) -> MPoly {
        let d = self.degree() as u32;
        let vars = ["x".to_string(), "y".to_string()];
        let mut acc = MPoly::zero_in(&["x", "y"]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = MPoly::from_terms(&vars, [(vec![d - i as u32, i as u32], <BigRational as One>::one())]).unwrap();
            acc = &acc + &(&mono * &c.as_mpoly());
        }
        acc
    }
}

impl BinaryForm<MPoly> {
    /// Read a form homogeneous in `x, y` out of a polynomial; other variables
    /// stay in the coefficients.
    pub fn from_mpoly(p: &MPoly) -> Result<Self> {
        let Some(d) = p.homogeneous_degree_in(&["x", "y"]) else {
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            return Err(Error::DegreeMismatch(format!("`{p}` is not homogeneous in x, y")));
        };
        Ok(BinaryForm {
            coeffs: (0..=d).map(|i| p.coeff_of("x", d - i).coeff_of("y", i).drop_unused_vars()).collect(),
        })
    }

    /// Same as [`Self::from_mpoly`] for a zero-capable input of known degree.
    pub fn from_mpoly_deg(p: &MPoly, d: usize) -> Result<Self> {
        if p.is_zero() {
            return Ok(Self::zero(d));
        }
        let f = Self::from_mpoly(p)?;
        if f.degree() != d {
            return Err(Error::DegreeMismatch(format!("expected degree {d}, got {}", f.degree())));
        }
        Ok(f)
    }

    /// Substitute parameter values in every coefficient.
    pub fn specialize(&self, bindings: &[(&str, MPoly)]) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let used: Vec<(&str, MPoly)> = bindings
                .iter()
                .filter(|(v, _)| c.vars().iter().any(|w| w == v))
                .map(|(v, p)| (*v, p.clone()))
                .collect();
            out.push(c.specialize(&used)?.drop_unused_vars());
        }
        Ok(BinaryForm { coeffs: out })
    }

    /// Coefficients must all be constants.
    pub fn to_qform(&self) -> Result<QForm> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.as_constant().ok_or_else(|| {
                Error::InvalidArgument(format!("coefficient `{c}` still depends on parameters"))
            })?);
        }
        Ok(BinaryForm { coeffs: out })
    }
}

impl QForm {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        BinaryForm::<MPoly>::from_mpoly(&MPoly::parse(s)?)?.to_qform()
    }

    pub fn lift(&self) -> BinaryForm<MPoly> {
        self.map_coeffs(|c| MPoly::constant(c.clone()))
    }

    /// `(content, primitive)`: integer primitive part with the first nonzero
    /// coefficient (x-heaviest term) positive.
    pub fn content_primitive(&self) -> Result<(BigRational, QForm)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (ints, l) = dense::integerize(&self.coeffs);
        let g = dense::content_int(&ints);
        let mut content = BigRational::new(g, l);
        if self.coeffs.iter().find(|c| !Zero::is_zero(*c)).unwrap().is_negative() {
            content = -content;
        }
        Ok((content.clone(), self.scale(&content.recip())))
    }

    pub fn primitive(&self) -> Result<QForm> {
        Ok(self.content_primitive()?.1)
    }

    /// Integer scaling by a positive factor to content 1; signs untouched.
    pub fn positive_primitive(&self) -> Result<QForm> {
        let (c, p) = self.content_primitive()?;
        Ok(if c.is_negative() { p.neg() } else { p })
    }

    /// Integer coefficients if all are integral.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.numer().clone())).collect()
    }

    /// `F(z, 1)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `y^d · p(x/y)`; `d` must be at least `deg p`.
    pub fn homogenize(p: &UniPoly, d: usize) -> Result<QForm> {
        if p.degree().is_some_and(|e| e > d) {
            return Err(Error::DegreeMismatch(format!("degree {} exceeds {d}", p.degree().unwrap())));
        }
        Ok(BinaryForm { coeffs: (0..=d).map(|i| p.coeff(d - i)).collect() })
    }

    /// Equal up to a nonzero rational scalar.
    pub fn proportional(&self, o: &QForm) -> bool {
        if self.degree() != o.degree() || self.is_zero() || o.is_zero() {
            return self.degree() == o.degree() && self.is_zero() && o.is_zero();
        }
        match (self.primitive(), o.primitive()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        // a repeated root at infinity is invisible after dehomogenizing
        if self.y_valuation().unwrap() > 1 {
            return false;
        }
        let f = self.dehomogenize();
        f.gcd(&f.derivative()).degree().unwrap_or(0) == 0
    }
}

impl<C: Ring> fmt::Display for BinaryForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

impl<C: Ring> fmt::Debug for BinaryForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.degree(), self.to_mpoly())
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det<C: Ring>(mut m: Vec<Vec<C>>) -> Result<C> {
    let n = m.len();
    if n == 0 {
        return Ok(C::one());
    }
    let mut sign_neg = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(C::zero());
            };
            m.swap(k, r);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul_ref(&m[k][k]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = v
                    .div_exact(&prev)
                    .ok_or_else(|| Error::NonDivisible("Bareiss step".into()))?;
            }
            m[i][k] = C::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign_neg { d.neg_ref() } else { d })
}

/// Sylvester-matrix resultant of two binary forms (homogeneous resultant).
pub fn resultant2<C: Ring>(f: &BinaryForm<C>, g: &BinaryForm<C>) -> Result<C> {
    let (m, n) = (f.degree(), g.degree());
    if m == 0 && n == 0 {
        return Err(Error::DegreeMismatch("resultant of two constants".into()));
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![C::zero(); size];
        for (j, c) in f.coeffs.iter().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![C::zero(); size];
        for (j, c) in g.coeffs.iter().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    bareiss_det(rows)
}

/// Resultant of two forms of the same degree, as required for maps.
pub fn map_resultant<C: Ring>(f: &BinaryForm<C>, g: &BinaryForm<C>) -> Result<C> {
    if f.degree() != g.degree() || f.degree() == 0 {
        return Err(Error::DegreeMismatch(format!(
            "forms of degrees {} and {}",
            f.degree(),
            g.degree()
        )));
    }
    resultant2(f, g)
}
