//! Local data at points: Taylor coefficients, multipliers and the fixed-point
//! multiplier invariants of quadratic maps.
//!
//! Everything is computed in an affine chart. When ∞ gets in the way the map
//! is conjugated by the first of identity, `[y : x]`, `[x + y : y]∘[y : x]`,
//! `[x + 2y : y]∘[y : x]`, … whose image of ∞ avoids the relevant points.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{KPoint, Pgl2, ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::exactalg::UniPoly;
use crate::numfield::{modulus, NFElem};
use crate::ring::Field;

/// A value in ℚ or in the number field of an algebraic point.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Algebraic(NFElem),
}

impl Scalar {
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Algebraic(a) => a.as_rational(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => Zero::is_zero(r),
            Scalar::Algebraic(a) => Field::is_zero(a),
        }
    }

    /// Smallest `r <= bound` with `self^r = 1`.
    pub fn root_of_unity_order(&self, bound: u64) -> Result<Option<u64>> {
        match self {
            Scalar::Rational(r) => crate::numfield::root_of_unity_order(r, bound),
            Scalar::Algebraic(a) => crate::numfield::root_of_unity_order(a, bound),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

/// Elementary symmetric functions of the three fixed-point multipliers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sigma {
    pub s1: BigRational,
    pub s2: BigRational,
    pub s3: BigRational,
}

/// `c(∞)` for the k-th chart change.
fn chart(k: u32) -> Pgl2 {
    match k {
        0 => Pgl2::identity(),
        1 => Pgl2::swap(),
        _ => Pgl2::translation(i64::from(k) - 1).compose(&Pgl2::swap()),
    }
}

fn kconst<F: Field>(like: &F, r: &BigRational) -> F {
    like.from_rational_like(r)
}

/// `h(p)` for a point with coordinates in `F`.
pub fn apply_pgl2<F: Field>(h: &Pgl2, p: &KPoint<F>) -> Result<KPoint<F>> {
    let [a, b, c, d] = h.entries().clone().map(BigRational::from_integer);
    let u = kconst(&p.x, &a).times(&p.x)?.plus(&kconst(&p.x, &b).times(&p.y)?)?;
    let v = kconst(&p.x, &c).times(&p.x)?.plus(&kconst(&p.x, &d).times(&p.y)?)?;
    KPoint::normalized(u, v)
}

/// First chart change whose image of ∞ is none of `avoid`; returns the
/// conjugated map and the change.
fn working_chart<F: Field>(m: &RationalMap, avoid: &[KPoint<F>]) -> Result<(RationalMap, Pgl2)> {
    let like = &avoid[0].x;
    for k in 0..=(avoid.len() as u32 + 1) {
        let c = chart(k);
        let inf = KPoint { x: like.one_like(), y: like.zero_like() };
        let at_inf = apply_pgl2(&c, &inf)?;
        if !avoid.contains(&at_inf) {
            return Ok((m.conjugate(&c), c));
        }
    }
    unreachable!("more chart changes than points to avoid")
}

/// `(f(q), f'(q))` for `f ∈ ℚ[z]` and `q ∈ F`.
fn eval_with_derivative<F: Field>(f: &UniPoly, q: &F) -> Result<(F, F)> {
    let mut v = q.zero_like();
    let mut dv = q.zero_like();
    for c in f.coeffs().iter().rev() {
        dv = dv.times(q)?.plus(&v)?;
        v = v.times(q)?.plus(&kconst(q, c))?;
    }
    Ok((v, dv))
}

/// `λ₁(φ, q)` for finite `q` with finite image, in the chart of `m`.
fn derivative_at<F: Field>(m: &RationalMap, q: &F) -> Result<F> {
    let (f, df) = eval_with_derivative(&m.f().dehomogenize(), q)?;
    let (g, dg) = eval_with_derivative(&m.g().dehomogenize(), q)?;
    if g.is_zero() {
        return Err(Error::PoleAtPoint(format!("denominator vanishes at {q}")));
    }
    df.times(&g)?.minus(&f.times(&dg)?)?.divided(&g.times(&g)?)
}

/// Coefficients of `p(q + u)` in `u`.
fn shifted<F: Field>(p: &UniPoly, q: &F) -> Result<Vec<F>> {
    let mut acc: Vec<F> = Vec::new();
    for c in p.coeffs().iter().rev() {
        // acc ← acc·(q + u) + c
        let mut next = vec![q.zero_like(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] = next[i].plus(&a.times(q)?)?;
            next[i + 1] = next[i + 1].plus(a)?;
        }
        next[0] = next[0].plus(&kconst(q, c))?;
        acc = next;
    }
    if acc.is_empty() {
        acc.push(q.zero_like());
    }
    Ok(acc)
}

impl RationalMap {
    /// `λ₀, …, λ_n` at a point with coordinates in `F`.
    pub fn taylor_at<F: Field>(&self, q: &KPoint<F>, n: usize) -> Result<Vec<F>> {
        let image = self.apply_k(q)?;
        let (m, c) = working_chart(self, &[q.clone(), image])?;
        let q = apply_pgl2(&c.inverse(), q)?;
        let z = q.affine().expect("chart avoids ∞");
        let num = shifted(&m.f().dehomogenize(), z)?;
        let den = shifted(&m.g().dehomogenize(), z)?;
        if den[0].is_zero() {
            return Err(Error::PoleAtPoint(format!("denominator vanishes at {z}")));
        }
        let inv0 = den[0].inverse()?;
        let zero = z.zero_like();
        let mut out: Vec<F> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = num.get(i).cloned().unwrap_or_else(|| zero.clone());
            for j in 1..=i.min(den.len() - 1) {
                acc = acc.minus(&out[i - j].times(&den[j])?)?;
            }
            out.push(acc.times(&inv0)?);
        }
        Ok(out)
    }

    pub fn taylor_coeffs(&self, q: &ProjPoint, n: usize) -> Result<Vec<Scalar>> {
        match q.nf_point()? {
            None => {
                let (x, y) = q.coords().unwrap();
                let p = KPoint::normalized(x, y)?;
                Ok(self.taylor_at(&p, n)?.into_iter().map(Scalar::Rational).collect())
            }
            Some(t) => {
                let p = KPoint { y: t.one_like(), x: t };
                Ok(self.taylor_at(&p, n)?.into_iter().map(Scalar::Algebraic).collect())
            }
        }
    }

    /// The forward orbit `q, φ(q), …, φ^(n−1)(q)`; `NotPeriodic(n)` unless `φ^n(q) = q`.
    pub fn cycle<F: Field>(&self, q: &KPoint<F>, n: u32) -> Result<Vec<KPoint<F>>> {
        if n == 0 {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        let mut orbit = vec![q.clone()];
        let mut cur = q.clone();
        for _ in 0..n {
            cur = self.apply_k(&cur)?;
            orbit.push(cur.clone());
        }
        if orbit.pop().as_ref() != Some(q) {
            return Err(Error::NotPeriodic(n));
        }
        Ok(orbit)
    }

    /// `λ₁(φ^n, q)` by the chain rule along the orbit.
    pub fn multiplier_at<F: Field>(&self, q: &KPoint<F>, n: u32) -> Result<F> {
        let orbit = self.cycle(q, n)?;
        let (m, c) = working_chart(self, &orbit)?;
        let cinv = c.inverse();
        let mut acc = q.x.one_like();
        for p in &orbit {
            let p = apply_pgl2(&cinv, p)?;
            acc = acc.times(&derivative_at(&m, p.affine().expect("chart avoids ∞"))?)?;
        }
        Ok(acc)
    }

    pub fn multiplier(&self, q: &ProjPoint, n: u32) -> Result<Scalar> {
        match q.nf_point()? {
            None => {
                let (x, y) = q.coords().unwrap();
                Ok(Scalar::Rational(self.multiplier_at(&KPoint::normalized(x, y)?, n)?))
            }
            Some(t) => {
                let p = KPoint { y: t.one_like(), x: t };
                Ok(Scalar::Algebraic(self.multiplier_at(&p, n)?))
            }
        }
    }

    /// `λ₁(φ^m, q) / λ₁(h, q)` where `φ^m(q) = h(q)`, both taken in one chart.
    pub fn derivative_ratio<F: Field>(&self, q: &KPoint<F>, m: u32, h: &Pgl2) -> Result<F> {
        let mut pts = vec![q.clone()];
        for _ in 0..m {
            let next = self.apply_k(pts.last().unwrap())?;
            pts.push(next);
        }
        if &apply_pgl2(h, q)? != pts.last().unwrap() {
            return Err(Error::InvalidArgument(format!("φ^{m}(Q) ≠ h(Q)")));
        }
        let (mc, c) = working_chart(self, &pts)?;
        let cinv = c.inverse();
        let hc = cinv.compose(h).compose(&c).as_map();
        let mut acc = q.x.one_like();
        for p in &pts[..m as usize] {
            let p = apply_pgl2(&cinv, p)?;
            acc = acc.times(&derivative_at(&mc, p.affine().expect("chart avoids ∞"))?)?;
        }
        let q0 = apply_pgl2(&cinv, q)?;
        acc.divided(&derivative_at(&hc, q0.affine().expect("chart avoids ∞"))?)
    }

    /// The fixed-point multipliers as the class of `φ'(z)` in
    /// `ℚ[z]/(fixed-point polynomial)`, in a chart where ∞ is not fixed.
    pub fn fixed_point_multipliers(&self) -> Result<NFElem> {
        let d = self.degree();
        let mut k = 0;
        let m = loop {
            let c = chart(k);
            let (x, y) = c.apply(&BigRational::one(), &BigRational::zero());
            if !Zero::is_zero(&self.fixed_point_form().eval(&x, &y)) {
                break self.conjugate(&c);
            }
            k += 1;
            if k as usize > d + 2 {
                unreachable!("a map of degree d has d + 1 fixed points");
            }
        };
        let p = m.fixed_point_form().dehomogenize();
        debug_assert_eq!(p.degree(), Some(d + 1));
        let ring: Arc<UniPoly> = modulus(&p)?;
        let f = m.f().dehomogenize();
        let g = m.g().dehomogenize();
        let num = &(&f.derivative() * &g) - &(&f * &g.derivative());
        let den = NFElem::new(&ring, &(&g * &g))?;
        NFElem::new(&ring, &num)?.divided(&den)
    }

    pub fn sigma_invariants(&self) -> Result<Sigma> {
        sigma_invariants(self)
    }
}

/// `(σ₁, σ₂, σ₃)` of a quadratic map, with multiplicity.
pub fn sigma_invariants(m: &RationalMap) -> Result<Sigma> {
    if m.degree() != 2 {
        return Err(Error::DegreeNot2(m.degree() as u32));
    }
    let lam = m.fixed_point_multipliers()?;
    let t1 = lam.trace();
    let t2 = lam.mul(&lam)?.trace();
    let half = BigRational::new(1.into(), 2.into());
    Ok(Sigma { s2: (&t1 * &t1 - t2) * half, s1: t1, s3: lam.norm() })
}

impl Pgl2 {
    /// The degree-one map `[αx + βy : γx + δy]`.
    pub fn as_map(&self) -> RationalMap {
        let (u, v) = self.forms();
        RationalMap::new(u, v).expect("invertible matrix")
    }
}
