//! One- and two-parameter families of quadratic maps, with Φ*_N computed
//! over the parameter ring ℚ[a, b, …].

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dynatomic::{phi_star_generic, DEFAULT_MAX_TERMS};
use crate::error::{Error, Result};
use crate::form::{map_resultant, BinaryForm, QForm};
use crate::mpoly::MPoly;
use crate::ratmap::{RationalMap, Sigma};

type PForm = BinaryForm<MPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `[x² + a·xy : b·xy + y²]`
    MilnorAb,
    /// `[x² + a·xy : a·xy + y²]`
    MilnorAa,
    /// `[x² + c·y² : y²]`
    QuadraticPoly,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::MilnorAb => "milnor_ab",
            FamilyKind::MilnorAa => "milnor_aa",
            FamilyKind::QuadraticPoly => "quadratic_poly",
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "milnor_ab" => Ok(FamilyKind::MilnorAb),
            "milnor_aa" => Ok(FamilyKind::MilnorAa),
            "quadratic_poly" => Ok(FamilyKind::QuadraticPoly),
            _ => Err(Error::Parse(format!("unknown family `{s}` (milnor_ab, milnor_aa, quadratic_poly)"))),
        }
    }
}

/// A map over a parameter ring, with its resultant (the excluded locus is
/// where it vanishes).
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMap {
    kind: FamilyKind,
    f: PForm,
    g: PForm,
    resultant: MPoly,
}

impl FamilyMap {
    pub fn new(kind: FamilyKind) -> FamilyMap {
        let (f, g) = match kind {
            FamilyKind::MilnorAb => ("x^2 + a*x*y", "b*x*y + y^2"),
            FamilyKind::MilnorAa => ("x^2 + a*x*y", "a*x*y + y^2"),
            FamilyKind::QuadraticPoly => ("x^2 + c*y^2", "y^2"),
        };
        let form = |s: &str| PForm::from_mpoly_deg(&MPoly::parse(s).unwrap(), 2).unwrap();
        let (f, g) = (form(f), form(g));
        let resultant = map_resultant(&f, &g).expect("equal degrees").drop_unused_vars();
        debug_assert!(!resultant.is_zero());
        FamilyMap { kind, f, g, resultant }
    }

    pub fn milnor_ab() -> FamilyMap {
        Self::new(FamilyKind::MilnorAb)
    }

    pub fn milnor_aa() -> FamilyMap {
        Self::new(FamilyKind::MilnorAa)
    }

    pub fn quadratic_poly() -> FamilyMap {
        Self::new(FamilyKind::QuadraticPoly)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn forms(&self) -> (&PForm, &PForm) {
        (&self.f, &self.g)
    }

    pub fn resultant(&self) -> &MPoly {
        &self.resultant
    }

    pub fn params(&self) -> Vec<String> {
        let mut v: Vec<String> = self.f.to_mpoly().used_vars().into_iter().chain(self.g.to_mpoly().used_vars()).collect();
        v.retain(|s| s != "x" && s != "y");
        v.sort();
        v.dedup();
        v
    }

    fn bind<'s>(bindings: &[(&'s str, BigRational)]) -> Vec<(&'s str, MPoly)> {
        bindings.iter().map(|(v, c)| (*v, MPoly::constant(c.clone()))).collect()
    }

    /// Substitute values; fails with `ExcludedLocus` when the resultant vanishes.
    pub fn specialize(&self, bindings: &[(&str, BigRational)]) -> Result<FamilyMap> {
        let b = Self::bind(bindings);
        for (v, _) in bindings {
            if !self.params().iter().any(|p| p == v) {
                return Err(Error::UnknownVariable(v.to_string()));
            }
        }
        let used: Vec<(&str, MPoly)> =
            b.iter().filter(|(v, _)| self.resultant.vars().iter().any(|w| w == v)).cloned().collect();
        let res = self.resultant.specialize(&used)?.drop_unused_vars();
        if res.is_zero() {
            let shown: Vec<String> = bindings.iter().map(|(v, c)| format!("{v}={c}")).collect();
            return Err(Error::ExcludedLocus(format!("resultant {} vanishes at {}", self.resultant, shown.join(", "))));
        }
        Ok(FamilyMap { kind: self.kind, f: self.f.specialize(&b)?, g: self.g.specialize(&b)?, resultant: res })
    }

    /// The concrete map once every parameter is bound.
    pub fn at(&self, bindings: &[(&str, BigRational)]) -> Result<RationalMap> {
        let s = self.specialize(bindings)?;
        RationalMap::new(s.f.to_qform()?, s.g.to_qform()?)
    }

    pub fn phi_star(&self, n: u32, max_terms: usize) -> Result<MPoly> {
        Ok(phi_star_generic(&self.f, &self.g, n, max_terms)?.to_mpoly())
    }
}

impl fmt::Display for FamilyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.f.to_mpoly(), self.g.to_mpoly())
    }
}

pub fn family_phi_star(fam: &FamilyMap, n: u32) -> Result<MPoly> {
    fam.phi_star(n, DEFAULT_MAX_TERMS)
}

fn lead_coeff(p: &MPoly, nu: u32, var: &str, other: &str) -> Result<MPoly> {
    match p.homogeneous_degree_in(&["x", "y"]) {
        Some(d) if d == nu => Ok(p.coeff_of(var, nu).coeff_of(other, 0).drop_unused_vars()),
        Some(d) => Err(Error::DegreeMismatch(format!("form has degree {d} in x, y, not {nu}"))),
        None => Err(Error::DegreeMismatch("not homogeneous in x, y".into())),
    }
}

/// Coefficient of `x^nu`.
pub fn lead_coeff_in_x(p: &MPoly, nu: u32) -> Result<MPoly> {
    lead_coeff(p, nu, "x", "y")
}

/// Coefficient of `y^nu`.
pub fn lead_coeff_in_y(p: &MPoly, nu: u32) -> Result<MPoly> {
    lead_coeff(p, nu, "y", "x")
}

/// Gcd of all integer coefficients (`p` must have integer coefficients).
pub fn integer_content(p: &MPoly) -> Result<num_bigint::BigInt> {
    if !p.has_integer_coeffs() {
        return Err(Error::InvalidArgument("integer content of a non-integral polynomial".into()));
    }
    Ok(p.terms().fold(num_bigint::BigInt::zero(), |g, (_, c)| g.gcd(c.numer())))
}

/// Two coefficients of `p` (as a form in x, y) whose parameter variables are
/// disjoint and whose integer contents are coprime. Any common factor in
/// ℤ[params] would have to be a constant dividing both contents, so such a
/// pair certifies that the content over ℤ[params] is 1.
pub fn content_one_certificate(p: &MPoly) -> Result<Option<(MPoly, MPoly)>> {
    let f = PForm::from_mpoly(p)?;
    let cs: Vec<&MPoly> = f.coeffs().iter().filter(|c| !c.is_zero()).collect();
    for (i, u) in cs.iter().enumerate() {
        for v in &cs[i..] {
            let (uv, vv) = (u.used_vars(), v.used_vars());
            if uv.iter().any(|w| vv.contains(w)) {
                continue;
            }
            if integer_content(u)?.gcd(&integer_content(v)?).is_one() {
                return Ok(Some(((*u).clone(), (*v).clone())));
            }
        }
    }
    Ok(None)
}

/// Does specializing the family's Φ*_N agree with Φ*_N of the specialized family?
pub fn specialization_check(fam: &FamilyMap, bindings: &[(&str, BigRational)], n: u32) -> Result<bool> {
    let spec = fam.specialize(bindings)?;
    let generic = family_phi_star(fam, n)?;
    let b = FamilyMap::bind(bindings);
    let used: Vec<(&str, MPoly)> = b.iter().filter(|(v, _)| generic.vars().iter().any(|w| w == v)).cloned().collect();
    let down = generic.specialize(&used)?;
    let direct = family_phi_star(&spec, n)?;
    Ok(down == direct)
}

/// σ invariants of φ_{a,a} at a rational `a` with `a² ≠ 1`.
pub fn milnor_aa_sigma(a: &BigRational) -> Result<Sigma> {
    FamilyMap::milnor_aa().at(&[("a", a.clone())])?.sigma_invariants()
}

/// The parameter-free form of a fully specialized family Φ*.
pub fn to_form(p: &MPoly) -> Result<QForm> {
    PForm::from_mpoly(p)?.to_qform()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{cyclotomic, int, rat};

    fn mp(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn resultants_and_fixed_points() {
        assert_eq!(FamilyMap::milnor_ab().resultant(), &mp("1 - a*b"));
        assert_eq!(FamilyMap::quadratic_poly().resultant(), &mp("1"));
        let p = family_phi_star(&FamilyMap::milnor_ab(), 1).unwrap();
        assert_eq!(p, mp("x*y*(x*(1 - b) - y*(1 - a))"));
        // the often-quoted form with `+ y(1 − a)` is not y·F − x·G
        assert_ne!(p, mp("x*y*(x*(1 - b) + y*(1 - a))"));
        // third fixed point z = (1 − a)/(1 − b)
        let m = FamilyMap::milnor_ab().at(&[("a", int(3)), ("b", int(5))]).unwrap();
        let z = crate::ratmap::ProjPoint::affine(rat(1, 2));
        assert_eq!(m.apply(&z).unwrap(), z);
    }

    #[test]
    fn lead_coefficients() {
        let fam = FamilyMap::milnor_ab();
        let c2 = cyclotomic(2).unwrap();
        let p2 = family_phi_star(&fam, 2).unwrap();
        assert_eq!(lead_coeff_in_x(&p2, 2).unwrap(), mp(&c2.to_string_in("b")));
        assert_eq!(lead_coeff_in_y(&p2, 2).unwrap(), mp("a + 1"));
        let p3 = family_phi_star(&fam, 3).unwrap();
        assert_eq!(lead_coeff_in_x(&p3, 6).unwrap(), mp("b^2 + b + 1"));
        assert!(content_one_certificate(&p3).unwrap().is_some());
        assert!(lead_coeff_in_x(&p3, 5).is_err());
    }

    #[test]
    fn specializations() {
        let ab = FamilyMap::milnor_ab();
        assert!(specialization_check(&ab, &[("b", int(0))], 2).unwrap());
        let spec = ab.specialize(&[("b", int(0))]).unwrap();
        assert_eq!(spec.to_string(), "[x*y*a + x^2 : y^2]");
        let aa = FamilyMap::milnor_aa();
        assert!(specialization_check(&aa, &[("a", int(0))], 3).unwrap());
        assert_eq!(aa.at(&[("a", int(0))]).unwrap(), RationalMap::parse("z^2").unwrap().0);
        assert!(matches!(ab.specialize(&[("a", int(1)), ("b", int(1))]), Err(Error::ExcludedLocus(_))));
        assert!(matches!(aa.specialize(&[("a", int(-1))]), Err(Error::ExcludedLocus(_))));
        for a in [int(2), int(5), rat(-1, 3)] {
            let m = aa.at(&[("a", a.clone())]).unwrap();
            let direct = crate::dynatomic::phi_star(&m, 2).unwrap();
            let down = to_form(&family_phi_star(&aa, 2).unwrap().specialize(&[("a", MPoly::constant(a))]).unwrap()).unwrap();
            assert_eq!(direct, down);
        }
    }

    #[test]
    fn quadratic_polynomial_period_two() {
        let p = family_phi_star(&FamilyMap::quadratic_poly(), 2).unwrap();
        let z = to_form_dehom(&p);
        assert_eq!(z, mp("z^2 + z + c + 1"));
    }

    fn to_form_dehom(p: &MPoly) -> MPoly {
        p.specialize(&[("x", mp("z")), ("y", mp("1"))]).unwrap().drop_unused_vars()
    }

    #[test]
    fn symmetric_family_avoids_three_three() {
        let s = milnor_aa_sigma(&int(0)).unwrap();
        assert_eq!((s.s1, s.s2), (int(2), int(0)));
        for n in -12i64..=12 {
            for d in 1i64..=4 {
                let a = rat(n, d);
                if a.clone() * a.clone() == int(1) {
                    continue;
                }
                let s = milnor_aa_sigma(&a).unwrap();
                assert!((s.s1, s.s2) != (int(3), int(3)), "a = {a}");
            }
        }
    }
}
