use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::UniPoly;
use crate::form::QForm;
use crate::numfield::{modulus, NFElem};
use crate::ring::Field;

/// A point of ℙ¹: rational coordinates, or a Galois orbit of algebraic points
/// given by its irreducible defining form.
#[derive(Clone, PartialEq)]
pub enum ProjPoint {
    /// Coprime integers with `y > 0`, or `[1 : 0]`.
    Rational { x: BigInt, y: BigInt },
    /// Primitive, sign-normalized, squarefree form of degree ≥ 2 not divisible by `y`.
    Orbit { form: QForm },
}

impl ProjPoint {
    pub fn new(x: BigRational, y: BigRational) -> Result<ProjPoint> {
        if Zero::is_zero(&x) && Zero::is_zero(&y) {
            return Err(Error::InvalidArgument("[0 : 0] is not a point".into()));
        }
        let l = x.denom().lcm(y.denom());
        let (mut xi, mut yi) = (x.numer() * (&l / x.denom()), y.numer() * (&l / y.denom()));
        let g = xi.gcd(&yi);
        xi /= &g;
        yi /= &g;
        if yi.is_negative() || (yi.is_zero() && xi.is_negative()) {
            xi = -xi;
            yi = -yi;
        }
        Ok(ProjPoint::Rational { x: xi, y: yi })
    }

    pub fn affine(z: BigRational) -> ProjPoint {
        Self::new(z, BigRational::one()).unwrap()
    }

    pub fn int(z: i64) -> ProjPoint {
        Self::affine(BigRational::from_integer(z.into()))
    }

    pub fn infinity() -> ProjPoint {
        ProjPoint::Rational { x: BigInt::one(), y: BigInt::zero() }
    }

    /// `inf`, `[x:y]`, or a rational `z`.
    pub fn parse(s: &str) -> Result<ProjPoint> {
        let s = s.trim();
        let num = |t: &str| -> Result<BigRational> {
            let t = t.trim();
            t.parse::<BigRational>().map_err(|_| Error::Parse(format!("bad coordinate `{t}`")))
        };
        if s == "inf" || s == "∞" {
            return Ok(Self::infinity());
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let (a, b) = inner.split_once(':').ok_or_else(|| Error::Parse(format!("expected [x:y], got `{s}`")))?;
            return Self::new(num(a)?, num(b)?);
        }
        Ok(Self::affine(num(s)?))
    }

    /// An orbit given by a form; linear forms yield the rational point.
    pub fn from_form(form: &QForm) -> Result<ProjPoint> {
        let f = form.primitive()?;
        match f.degree() {
            0 => Err(Error::InvalidArgument("constant form has no roots".into())),
            1 => {
                // y0·x − x0·y
                let (y0, x0) = (f.coeff(0).clone(), -f.coeff(1).clone());
                Self::new(x0, y0)
            }
            2 => {
                let disc = f.coeff(1) * f.coeff(1) - BigRational::from_integer(4.into()) * f.coeff(0) * f.coeff(2);
                if is_rational_square(&disc) {
                    return Err(Error::InvalidArgument(format!("`{f}` splits over ℚ")));
                }
                Ok(ProjPoint::Orbit { form: f })
            }
            _ => {
                if f.y_valuation() != Some(0) || !f.is_squarefree() || f.x_valuation() != Some(0) {
                    return Err(Error::InvalidArgument(format!("`{f}` is not an irreducible orbit form")));
                }
                Ok(ProjPoint::Orbit { form: f })
            }
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Rational { y, .. } if y.is_zero())
    }

    /// Defining form: `y0·x − x0·y` or the orbit form.
    pub fn form(&self) -> QForm {
        match self {
            ProjPoint::Rational { x, y } => QForm::linear(
                BigRational::from_integer(y.clone()),
                BigRational::from_integer(-x),
            ),
            ProjPoint::Orbit { form } => form.clone(),
        }
    }

    pub fn coords(&self) -> Option<(BigRational, BigRational)> {
        match self {
            ProjPoint::Rational { x, y } => Some((
                BigRational::from_integer(x.clone()),
                BigRational::from_integer(y.clone()),
            )),
            ProjPoint::Orbit { .. } => None,
        }
    }

    /// For an orbit: the number field ℚ[t]/(F(t, 1)) and the point `t`.
    pub fn nf_point(&self) -> Result<Option<NFElem>> {
        match self {
            ProjPoint::Rational { .. } => Ok(None),
            ProjPoint::Orbit { form } => {
                let m: Arc<UniPoly> = modulus(&form.dehomogenize())?;
                Ok(Some(NFElem::generator(&m)?))
            }
        }
    }
}

fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    &(&n * &n) == r.numer() && &(&d * &d) == r.denom()
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Rational { x, y } => write!(f, "[{x} : {y}]"),
            ProjPoint::Orbit { form } => write!(f, "{{{form} = 0}}"),
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint{self}")
    }
}

/// A single point with coordinates in a field `F`, kept as `[z : 1]` or `[1 : 0]`.
#[derive(Clone, PartialEq, Debug)]
pub struct KPoint<F> {
    pub x: F,
    pub y: F,
}

impl<F: Field> KPoint<F> {
    pub fn normalized(x: F, y: F) -> Result<Self> {
        if y.is_zero() {
            if x.is_zero() {
                return Err(Error::InvalidArgument("[0 : 0] is not a point".into()));
            }
            let one = x.one_like();
            return Ok(KPoint { x: one, y: x.zero_like() });
        }
        let z = x.divided(&y)?;
        let one = y.one_like();
        Ok(KPoint { x: z, y: one })
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// `Some(z)` for a finite point `[z : 1]`.
    pub fn affine(&self) -> Option<&F> {
        (!self.y.is_zero()).then_some(&self.x)
    }
}

/// `form(x, y)` for field-valued coordinates.
pub fn eval_form<F: Field>(form: &QForm, x: &F, y: &F) -> Result<F> {
    let d = form.degree();
    let mut xp = vec![x.one_like()];
    for i in 1..=d {
        xp.push(xp[i - 1].times(x)?);
    }
    let mut acc = x.zero_like();
    let mut yp = x.one_like();
    for (i, c) in form.coeffs().iter().enumerate() {
        if !Zero::is_zero(c) {
            acc = acc.plus(&xp[d - i].times(&yp)?.times(&x.from_rational_like(c))?)?;
        }
        yp = yp.times(y)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn canonical_coordinates() {
        let p = ProjPoint::new(rat(-2, 3), int(-2)).unwrap();
        assert_eq!(p, ProjPoint::new(int(1), int(3)).unwrap());
        assert_eq!(ProjPoint::new(int(-5), int(0)).unwrap(), ProjPoint::infinity());
        assert!(ProjPoint::new(int(0), int(0)).is_err());
        assert_eq!(ProjPoint::infinity().form(), QForm::parse("-y").unwrap());
    }

    #[test]
    fn orbit_forms() {
        let q = ProjPoint::from_form(&QForm::parse("-x^2 + x*y - y^2").unwrap()).unwrap();
        assert_eq!(q.form(), QForm::parse("x^2 - x*y + y^2").unwrap());
        assert!(ProjPoint::from_form(&QForm::parse("x^2 - y^2").unwrap()).is_err());
        assert_eq!(ProjPoint::from_form(&QForm::parse("2*x - y").unwrap()).unwrap(), ProjPoint::new(int(1), int(2)).unwrap());
    }
}
