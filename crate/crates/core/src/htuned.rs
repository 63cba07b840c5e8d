//! h-tuned dynatomic polynomials for a map with an automorphism `h` of prime
//! order `p`: the cross-form products Ψ_{pN}, their Möbius refinement Ψ*_{pN},
//! and Ψ̃*_{pN} with the fixed points of `h` divided out.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::dynatomic::{is_power_multiple, moebius_quotient, phi_star_limited, Period, DEFAULT_MAX_TERMS};
use crate::error::{Error, Result};
use crate::exactalg::{is_prime_u64, nu};
use crate::form::QForm;
use crate::ratmap::{apply_pgl2, iterate_forms, KPoint, Pgl2, ProjPoint, RationalMap};
use crate::ring::Field;

/// Fix(h): two rational points or one quadratic Galois orbit.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedPoints {
    Rational(ProjPoint, ProjPoint),
    Orbit(ProjPoint),
}

impl FixedPoints {
    pub fn forms(&self) -> Vec<QForm> {
        match self {
            FixedPoints::Rational(a, b) => vec![a.form(), b.form()],
            FixedPoints::Orbit(q) => vec![q.form()],
        }
    }

    pub fn contains(&self, q: &ProjPoint) -> bool {
        let f = q.form();
        self.forms().iter().any(|g| g.proportional(&f))
    }
}

#[derive(Clone, Debug)]
pub struct TunedContext {
    map: RationalMap,
    h: Pgl2,
    p: u32,
    fix: FixedPoints,
    max_terms: usize,
}

/// Rational points or the orbit cut out by a squarefree quadratic form.
fn split_quadratic(form: &QForm) -> Result<FixedPoints> {
    let f = form.primitive()?;
    if f.degree() != 2 || !f.is_squarefree() {
        return Err(Error::InvalidArgument(format!("`{f}` is not a squarefree quadratic")));
    }
    if let Ok(q) = ProjPoint::from_form(&f) {
        return Ok(FixedPoints::Orbit(q));
    }
    // splits over ℚ: peel off one linear factor through a root
    if Zero::is_zero(f.coeff(0)) {
        let lin = QForm::linear(f.coeff(1).clone(), f.coeff(2).clone());
        return Ok(FixedPoints::Rational(ProjPoint::infinity(), ProjPoint::from_form(&lin)?));
    }
    let (a, b, c) = (f.coeff(0), f.coeff(1), f.coeff(2));
    let disc = b * b - crate::exactalg::int(4) * a * c;
    let s = rational_sqrt(&disc).expect("split quadratic has a square discriminant");
    let two_a = crate::exactalg::int(2) * a;
    let r1 = (-b + &s) / &two_a;
    let r2 = (-b - &s) / &two_a;
    Ok(FixedPoints::Rational(ProjPoint::affine(r1), ProjPoint::affine(r2)))
}

fn rational_sqrt(r: &num_rational::BigRational) -> Option<num_rational::BigRational> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&(&n * &n) == r.numer() && &(&d * &d) == r.denom()).then(|| num_rational::BigRational::new(n, d))
}

impl TunedContext {
    /// Checks that `h` has prime order and is an automorphism of `map`.
    pub fn new(map: &RationalMap, h: &Pgl2) -> Result<TunedContext> {
        let p = match h.order(12) {
            Some(1) => return Err(Error::NonPrimeOrder("the identity has order 1".into())),
            Some(k) if is_prime_u64(u64::from(k)) => k,
            Some(k) => return Err(Error::NonPrimeOrder(format!("`{h}` has order {k}"))),
            None => return Err(Error::NonPrimeOrder(format!("`{h}` has infinite order"))),
        };
        if !map.is_automorphism(h) {
            return Err(Error::NotAnAutomorphism);
        }
        let fix = split_quadratic(&h.fixed_point_form())?;
        Ok(TunedContext { map: map.clone(), h: h.clone(), p, fix, max_terms: DEFAULT_MAX_TERMS })
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn map(&self) -> &RationalMap {
        &self.map
    }

    pub fn h(&self) -> &Pgl2 {
        &self.h
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn fixed_points(&self) -> &FixedPoints {
        &self.fix
    }

    /// `(γx + δy)·F − (αx + βy)·G` for `k = h^j`.
    fn cross(k: &Pgl2, f: &QForm, g: &QForm) -> QForm {
        let (u, v) = k.forms();
        v.mul(f).sub(&u.mul(g))
    }

    /// Ψ_{pk} for `k = 1..=n`.
    pub fn psi_all(&self, n: u32) -> Result<Vec<QForm>> {
        let its = iterate_forms(self.map.f(), self.map.g(), n, self.max_terms)?;
        let powers: Vec<Pgl2> = (1..self.p).map(|j| self.h.pow(j)).collect();
        Ok(its
            .iter()
            .map(|(f, g)| QForm::product(&powers.iter().map(|k| Self::cross(k, f, g)).collect::<Vec<_>>()))
            .collect())
    }

    pub fn psi(&self, n: u32) -> Result<QForm> {
        check_n(n)?;
        Ok(self.psi_all(n)?.pop().unwrap())
    }

    fn star_from(&self, psis: &[QForm], n: u32) -> Result<QForm> {
        let p = u64::from(self.p);
        let nn = u64::from(n);
        moebius_quotient(psis, n, |k| nn % (p * k) != 0)
    }

    pub fn psi_star(&self, n: u32) -> Result<QForm> {
        check_n(n)?;
        self.star_from(&self.psi_all(n)?, n)
    }

    /// Divide each Fix(h) form out of Ψ* to its exact multiplicity. For an
    /// irrational pair the quadratic orbit form is divided out; the loop ends
    /// on a failed extra division, so a leftover conjugate factor is impossible.
    pub fn psi_tilde(&self, n: u32) -> Result<TunedResult> {
        check_n(n)?;
        let psis = self.psi_all(n)?;
        let star = self.star_from(&psis, n)?;
        let mut tilde = star.clone();
        let mut deltas = Vec::new();
        for form in self.fix.forms() {
            let k = tilde.multiplicity(&form)?;
            tilde = tilde.strip(&form, k)?;
            deltas.push((form, k));
        }
        Ok(TunedResult { n, psi: psis[n as usize - 1].clone(), psi_star: star, psi_tilde: tilde, deltas })
    }

    pub fn divides_phi_star(&self, n: u32) -> Result<QForm> {
        let t = self.psi_tilde(n)?;
        let phi = phi_star_limited(&self.map, self.p * n, self.max_terms)?;
        phi.exact_div(&t.psi_tilde)
    }

    /// `deg Φ*_{pN} − deg Ψ̃*_{pN}`.
    pub fn degree_gap(&self, n: u32) -> Result<i64> {
        let t = self.psi_tilde(n)?;
        let deg = nu(self.map.degree() as u64, u64::from(self.p * n))?;
        let deg: i64 = deg.try_into().map_err(|_| Error::OutOfFormulaRange(format!("ν({})", self.p * n)))?;
        Ok(deg - t.psi_tilde.degree() as i64)
    }

    /// `(b_Q(pN), b*_Q(pN), b̃*_Q(pN))`.
    pub fn b_orders(&self, n: u32, q: &ProjPoint) -> Result<(u32, u32, u32)> {
        let t = self.psi_tilde(n)?;
        t.b_orders(q, &self.fix)
    }

    /// Primitive h-period `m` of `q` (up to `bound`) and the multiplicative
    /// order `r` of `λ₁(φ^m, q)/λ₁(h^j, q)` where `φ^m(q) = h^j(q)`.
    pub fn h_period_data<F: Field>(&self, q: &KPoint<F>, bound: u32, r_bound: u64) -> Result<(Period, Period)> {
        let powers: Vec<Pgl2> = (1..self.p).map(|j| self.h.pow(j)).collect();
        let images: Vec<KPoint<F>> = powers.iter().map(|k| apply_pgl2(k, q)).collect::<Result<_>>()?;
        let mut cur = q.clone();
        for m in 1..=bound {
            cur = self.map.apply_k(&cur)?;
            if let Some(j) = images.iter().position(|im| im == &cur) {
                let ratio = self.map.derivative_ratio(q, m, &powers[j])?;
                let r = if ratio.is_zero() { None } else { crate::numfield::root_of_unity_order(&ratio, r_bound)? };
                return Ok((Some(u64::from(m)), r));
            }
        }
        Ok((None, None))
    }

    pub fn point_h_period_data(&self, q: &ProjPoint, bound: u32, r_bound: u64) -> Result<(Period, Period)> {
        match q.nf_point()? {
            None => {
                let (x, y) = q.coords().unwrap();
                self.h_period_data(&KPoint::normalized(x, y)?, bound, r_bound)
            }
            Some(t) => self.h_period_data(&KPoint { y: t.one_like(), x: t }, bound, r_bound),
        }
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TunedResult {
    pub n: u32,
    pub psi: QForm,
    pub psi_star: QForm,
    pub psi_tilde: QForm,
    /// Each Fix(h) form with the multiplicity removed from Ψ*.
    pub deltas: Vec<(QForm, u32)>,
}

impl TunedResult {
    pub fn b_orders(&self, q: &ProjPoint, fix: &FixedPoints) -> Result<(u32, u32, u32)> {
        let f = q.form();
        let b = self.psi.multiplicity(&f)?;
        let bs = self.psi_star.multiplicity(&f)?;
        let bt = if fix.contains(q) { 0 } else { bs };
        debug_assert!(fix.contains(q) || bt == self.psi_tilde.multiplicity(&f)?);
        Ok((b, bs, bt))
    }

    /// `Ψ̃* · ∏ forms^δ`.
    pub fn reconstruct(&self) -> QForm {
        let mut acc = self.psi_tilde.clone();
        for (f, k) in &self.deltas {
            acc = acc.mul(&f.pow(*k));
        }
        acc
    }

    pub fn to_json(&self, p: u32, divides: bool, degree_gap: i64) -> Value {
        json!({
            "p": p,
            "N": self.n,
            "psi": self.psi.to_mpoly().to_json(),
            "psi_star": self.psi_star.to_mpoly().to_json(),
            "psi_tilde": self.psi_tilde.to_mpoly().to_json(),
            "deltas": self.deltas.iter().map(|(f, k)| json!({"form": f.to_string(), "delta": k})).collect::<Vec<_>>(),
            "divides_phi_star": divides,
            "degree_gap": degree_gap,
        })
    }
}

/// Predicted support of b̃*_Q(pN) for Q ∉ Fix(h): `N = m`, or `p ∤ r` and
/// `N = m·r` or `N = m·r·q^s` with `s ≥ 1` (no such branch when `q = 0`).
pub fn bstar_support_predicate(m: Period, r: Period, q: u64, p: u64, n: u64) -> bool {
    let Some(m) = m else { return false };
    if n == m {
        return true;
    }
    let Some(r) = r else { return false };
    if r % p == 0 {
        return false;
    }
    let Some(mr) = m.checked_mul(r) else { return false };
    n == mr || (q >= 2 && is_power_multiple(n, mr, q))
}

/// Predicted support of b*_Q(pN) for Q ∈ Fix(h) with primitive period `m`
/// (1 or 2): `N = m·p^t`, `N = m·r·p^t`, or `N = m·r·q^s·p^t` with `s ≥ 1`.
pub fn bstar_fixed_predicate(m: u64, r: Period, q: u64, p: u64, n: u64) -> bool {
    // every case allows an extra factor p^t; try each p-power cofactor
    let mut core = n;
    loop {
        let hit = core == m
            || r.and_then(|r| m.checked_mul(r))
                .is_some_and(|mr| core == mr || (q >= 2 && is_power_multiple(core, mr, q)));
        if hit {
            return true;
        }
        if core % p != 0 {
            return false;
        }
        core /= p;
    }
}

/// The six-case list for Q ∈ Fix(h) when the period of Q is not pinned down.
pub fn bstar_fixed_predicate_any(r: Period, q: u64, p: u64, n: u64) -> bool {
    bstar_fixed_predicate(1, r, q, p, n) || bstar_fixed_predicate(2, r, q, p, n)
}
