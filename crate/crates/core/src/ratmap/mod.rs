//! Rational self-maps of ℙ¹ over ℚ in homogeneous coordinates.

mod local;
mod pgl2;
mod point;

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::dense;
use crate::error::{Error, Result};
use crate::exactalg::UniPoly;
use crate::form::{map_resultant, BinaryForm, QForm};
use crate::mpoly::{parse_rational_expr, MPoly};

pub use local::{apply_pgl2, sigma_invariants, Scalar, Sigma};
pub use pgl2::Pgl2;
pub use point::{eval_form, KPoint, ProjPoint};

#[derive(Clone, PartialEq)]
pub struct RationalMap {
    f: QForm,
    g: QForm,
}

/// How a map was written on input; affine input is echoed back dehomogenized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapSyntax {
    Pair,
    Affine,
}

impl RationalMap {
    /// Validates only: equal positive degree and nonzero resultant. The
    /// coefficients are kept exactly as given.
    pub fn new(f: QForm, g: QForm) -> Result<RationalMap> {
        if f.degree() != g.degree() || f.degree() == 0 {
            return Err(Error::DegreeMismatch(format!(
                "map components of degrees {} and {}",
                f.degree(),
                g.degree()
            )));
        }
        if map_resultant(&f, &g)?.is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(RationalMap { f, g })
    }

    pub fn from_strs(f: &str, g: &str) -> Result<RationalMap> {
        let (pf, pg) = (MPoly::parse(f)?, MPoly::parse(g)?);
        let d = pf.total_degree().or(pg.total_degree()).unwrap_or(0) as usize;
        let ff = BinaryForm::<MPoly>::from_mpoly_deg(&pf, d)?.to_qform()?;
        let gg = BinaryForm::<MPoly>::from_mpoly_deg(&pg, d)?.to_qform()?;
        RationalMap::new(ff, gg)
    }

    /// Scale both components by one positive rational so the coefficients are
    /// integers with content 1. Signs are never changed.
    pub fn normalize(&self) -> RationalMap {
        let all: Vec<BigRational> = self.f.coeffs().iter().chain(self.g.coeffs()).cloned().collect();
        let (ints, l) = dense::integerize(&all);
        let g = dense::content_int(&ints);
        let s = BigRational::new(l, g);
        RationalMap { f: self.f.scale(&s), g: self.g.scale(&s) }
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn f(&self) -> &QForm {
        &self.f
    }

    pub fn g(&self) -> &QForm {
        &self.g
    }

    /// Parse `"F, G"` in x, y or a rational expression in z.
    pub fn parse(s: &str) -> Result<(RationalMap, MapSyntax)> {
        if s.contains(',') {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::Parse("a map is a pair `F, G`".into()));
            }
            let (pf, pg) = (MPoly::parse(parts[0])?, MPoly::parse(parts[1])?);
            for p in [&pf, &pg] {
                if let Some(v) = p.used_vars().into_iter().find(|v| v != "x" && v != "y") {
                    return Err(Error::Parse(format!("unexpected variable `{v}` in map")));
                }
            }
            let d = match (pf.homogeneous_degree_in(&["x", "y"]), pg.homogeneous_degree_in(&["x", "y"])) {
                (Some(a), Some(b)) if a == b => a,
                (Some(a), None) if pg.is_zero() => a,
                (None, Some(b)) if pf.is_zero() => b,
                _ => return Err(Error::Parse("map components must be homogeneous of equal degree".into())),
            } as usize;
            let ff = BinaryForm::<MPoly>::from_mpoly_deg(&pf, d)?.to_qform()?;
            let gg = BinaryForm::<MPoly>::from_mpoly_deg(&pg, d)?.to_qform()?;
            if d == 0 {
                return Err(Error::Parse("constant map".into()));
            }
            return Ok((RationalMap::new(ff, gg)?.normalize(), MapSyntax::Pair));
        }
        let e = parse_rational_expr(s)?;
        for p in [&e.num, &e.den] {
            if let Some(v) = p.used_vars().into_iter().find(|v| v != "z") {
                return Err(Error::Parse(format!("unexpected variable `{v}` in affine map (use z)")));
            }
        }
        let to_uni = |p: &MPoly| -> UniPoly {
            let d = p.degree_in("z");
            UniPoly::new((0..=d).map(|i| p.coeff_of("z", i).as_constant().unwrap()).collect())
        };
        let (mut n, mut dn) = (to_uni(&e.num), to_uni(&e.den));
        let g = n.gcd(&dn);
        if g.degree().unwrap_or(0) > 0 {
            n = n.exact_div(&g)?;
            dn = dn.exact_div(&g)?;
        }
        let d = n.degree().unwrap_or(0).max(dn.degree().unwrap_or(0));
        if d == 0 {
            return Err(Error::Parse("constant map".into()));
        }
        let map = RationalMap::new(QForm::homogenize(&n, d)?, QForm::homogenize(&dn, d)?)?;
        Ok((map.normalize(), MapSyntax::Affine))
    }

    /// `(F_k, G_k)` for `k = 1..=n`.
    pub fn iterates(&self, n: u32) -> Vec<(QForm, QForm)> {
        iterate_forms(&self.f, &self.g, n, usize::MAX).expect("no ceiling")
    }

    pub fn iterate(&self, n: u32) -> Result<(QForm, QForm)> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterate count must be positive".into()));
        }
        Ok(self.iterates(n).pop().unwrap())
    }

    /// `f⁻¹ ∘ φ ∘ f`, normalized.
    pub fn conjugate(&self, h: &Pgl2) -> RationalMap {
        let (lx, ly) = h.forms();
        let [a, b, c, d] = h.entries().clone().map(BigRational::from_integer);
        let fs = self.f.compose(&lx, &ly);
        let gs = self.g.compose(&lx, &ly);
        let f2 = fs.scale(&d).sub(&gs.scale(&b));
        let g2 = gs.scale(&a).sub(&fs.scale(&c));
        RationalMap { f: f2, g: g2 }.normalize()
    }

    /// Same point of ℙ^(2d+1): one common scalar relates the coefficients.
    pub fn proportional(&self, o: &RationalMap) -> bool {
        if self.degree() != o.degree() {
            return false;
        }
        let a: Vec<&BigRational> = self.f.coeffs().iter().chain(self.g.coeffs()).collect();
        let b: Vec<&BigRational> = o.f.coeffs().iter().chain(o.g.coeffs()).collect();
        let Some(i) = a.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        if b[i].is_zero() {
            return false;
        }
        let s = b[i] / a[i];
        a.iter().zip(&b).all(|(x, y)| &(*x * &s) == *y)
    }

    pub fn is_automorphism(&self, h: &Pgl2) -> bool {
        self.conjugate(h).proportional(self)
    }

    /// `y·F − x·G`.
    pub fn fixed_point_form(&self) -> QForm {
        self.f.mul(&QForm::y()).sub(&self.g.mul(&QForm::x()))
    }

    /// Image of a rational point.
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        match p.coords() {
            Some((x, y)) => ProjPoint::new(self.f.eval(&x, &y), self.g.eval(&x, &y)),
            None => Err(Error::InvalidArgument("orbit points have no single image".into())),
        }
    }

    pub fn apply_k<F: crate::ring::Field>(&self, p: &KPoint<F>) -> Result<KPoint<F>> {
        KPoint::normalized(eval_form(&self.f, &p.x, &p.y)?, eval_form(&self.g, &p.x, &p.y)?)
    }

    /// The forms as polynomials over the parameter ring.
    pub fn lift(&self) -> (BinaryForm<MPoly>, BinaryForm<MPoly>) {
        (self.f.lift(), self.g.lift())
    }

    /// `[F(z,1) / G(z,1)]` as text in z.
    pub fn affine_string(&self) -> String {
        let n = self.f.dehomogenize().to_string_in("z");
        let d = self.g.dehomogenize();
        if d == UniPoly::one() {
            return n;
        }
        format!("({n})/({})", d.to_string_in("z"))
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.f, self.g)
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMap{self}")
    }
}

/// `(F_k, G_k)` for `k = 1..=n` via `F_k = F(F_{k−1}, G_{k−1})`, aborting with
/// `ResourceLimit` once an iterate exceeds `max_terms` stored terms.
pub fn iterate_forms<C: crate::ring::Ring>(
    f: &BinaryForm<C>,
    g: &BinaryForm<C>,
    n: u32,
    max_terms: usize,
) -> Result<Vec<(BinaryForm<C>, BinaryForm<C>)>> {
    let mut out = vec![(f.clone(), g.clone())];
    for _ in 1..n {
        let (a, b) = out.last().unwrap();
        let next = compose_pair(f, g, a, b);
        let terms = next.0.term_count() + next.1.term_count();
        if terms > max_terms {
            return Err(Error::ResourceLimit { terms, limit: max_terms });
        }
        out.push(next);
    }
    out.truncate(n as usize);
    Ok(out)
}

/// `(F(A, B), G(A, B))` sharing the monomials `A^(d−i) B^i`.
pub fn compose_pair<C: crate::ring::Ring>(
    f: &BinaryForm<C>,
    g: &BinaryForm<C>,
    a: &BinaryForm<C>,
    b: &BinaryForm<C>,
) -> (BinaryForm<C>, BinaryForm<C>) {
    let d = f.degree();
    let mut pa = vec![BinaryForm::one()];
    let mut pb = vec![BinaryForm::one()];
    for i in 1..=d {
        pa.push(pa[i - 1].mul(a));
        pb.push(pb[i - 1].mul(b));
    }
    let mut rf = BinaryForm::zero(d * a.degree());
    let mut rg = BinaryForm::zero(d * a.degree());
    for i in 0..=d {
        let (cf, cg) = (f.coeff(i), g.coeff(i));
        if cf.is_zero() && cg.is_zero() {
            continue;
        }
        let mono = match (d - i, i) {
            (0, j) => pb[j].clone(),
            (k, 0) => pa[k].clone(),
            (k, j) => pa[k].mul(&pb[j]),
        };
        if !cf.is_zero() {
            rf = rf.add(&scale_unit(&mono, cf));
        }
        if !cg.is_zero() {
            rg = rg.add(&scale_unit(&mono, cg));
        }
    }
    (rf, rg)
}

fn scale_unit<C: crate::ring::Ring>(f: &BinaryForm<C>, c: &C) -> BinaryForm<C> {
    if c.is_one() {
        f.clone()
    } else if c.neg_ref().is_one() {
        f.neg()
    } else {
        f.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn map(s: &str) -> RationalMap {
        RationalMap::parse(s).unwrap().0
    }

    fn q(s: &str) -> QForm {
        QForm::parse(s).unwrap()
    }

    #[test]
    fn parsing_both_syntaxes() {
        let (m, syn) = RationalMap::parse("z^2").unwrap();
        assert_eq!((m.f().clone(), m.g().clone(), syn), (q("x^2"), q("y^2"), MapSyntax::Affine));
        let (m, _) = RationalMap::parse("z + 1/z").unwrap();
        assert_eq!((m.f().clone(), m.g().clone()), (q("x^2 + y^2"), q("x*y")));
        let (m, _) = RationalMap::parse("1/2*z^2 - 3/2").unwrap();
        assert_eq!((m.f().clone(), m.g().clone()), (q("x^2 - 3*y^2"), q("2*y^2")));
        assert_eq!(RationalMap::parse("x*y, y^2").unwrap_err(), Error::DegenerateMap);
        assert!(matches!(RationalMap::parse("x^2, y"), Err(Error::Parse(_))));
        assert!(matches!(RationalMap::parse("z^2 + a"), Err(Error::Parse(_))));
        assert!(matches!(RationalMap::parse("3"), Err(Error::Parse(_))));
        // signs are kept; only a positive content is removed
        let m = map("-2*x^2 + 2*y^2, 2*x*y");
        assert_eq!(m.f(), &q("-x^2 + y^2"));
    }

    #[test]
    fn iteration_examples() {
        assert_eq!(map("z^2").iterate(2).unwrap(), (q("x^4"), q("y^4")));
        let (f2, g2) = map("-x^2 + y^2, x*y").iterate(2).unwrap();
        assert_eq!(f2, q("-(x^2 + x*y - y^2)*(x^2 - x*y - y^2)"));
        assert_eq!(g2, q("-x*y*(x + y)*(x - y)"));
        assert_eq!(map("y, x").iterate(2).unwrap(), (q("x"), q("y")));
    }

    #[test]
    fn conjugation_examples() {
        let m = map("x^2 - 2*x*y, -2*x*y + y^2");
        assert_eq!(m.conjugate(&Pgl2::identity()), m);
        // 1/z ∘ z² ∘ 1/z = z²; the sign of the representative is kept
        let c = map("z^2").conjugate(&Pgl2::swap());
        assert_eq!((c.f().clone(), c.g().clone()), (q("-x^2"), q("-y^2")));
        assert!(c.proportional(&map("z^2")));
        let f = Pgl2::from_i64(2, -1, 3, 1).unwrap();
        assert_eq!(m.conjugate(&f).conjugate(&f.inverse()), m);
        assert!(m.is_automorphism(&Pgl2::swap()));
        assert!(m.is_automorphism(&Pgl2::parse("x - y, x").unwrap()));
        assert!(!map("z^2").is_automorphism(&Pgl2::parse("x - y, x").unwrap()));
    }

    #[test]
    fn fixed_point_forms() {
        assert_eq!(map("-x^2 + y^2, x*y").fixed_point_form(), q("-y*(2*x^2 - y^2)"));
        let h = map("y, x").fixed_point_form();
        assert_eq!(h, q("y^2 - x^2"));
        assert!(h.is_squarefree());
        assert_eq!(Pgl2::swap().fixed_point_form(), h);
        let p = map("z^2").apply(&ProjPoint::int(3)).unwrap();
        assert_eq!(p, ProjPoint::int(9));
        assert_eq!(map("z^2").apply(&ProjPoint::infinity()).unwrap(), ProjPoint::infinity());
        let _ = int(0);
    }
}
