//! Dynatomic polynomials Φ_N = y·F_N − x·G_N and their Möbius refinements Φ*_N.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{divisors, moebius};
use crate::form::{BinaryForm, QForm};
use crate::ratmap::{iterate_forms, KPoint, ProjPoint, RationalMap};
use crate::ring::{Field, Ring};

pub use crate::exactalg::nu as nu_degree;

/// Default ceiling on stored terms for a single iterate.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// `y·F − x·G`.
pub fn cross_form<C: Ring>(f: &BinaryForm<C>, g: &BinaryForm<C>) -> BinaryForm<C> {
    f.mul(&BinaryForm::y()).sub(&g.mul(&BinaryForm::x()))
}

/// `Φ_k` for every `k ≤ n`, from one pass of iteration.
pub fn phi_all<C: Ring>(f: &BinaryForm<C>, g: &BinaryForm<C>, n: u32, max_terms: usize) -> Result<Vec<BinaryForm<C>>> {
    Ok(iterate_forms(f, g, n, max_terms)?.iter().map(|(a, b)| cross_form(a, b)).collect())
}

/// `∏_{k | n} P_k^{μ(n/k)}` as a single certified division; `phis[k−1] = P_k`.
pub fn moebius_quotient<C: Ring>(phis: &[BinaryForm<C>], n: u32, keep: impl Fn(u64) -> bool) -> Result<BinaryForm<C>> {
    let mut num: Vec<&BinaryForm<C>> = Vec::new();
    let mut den: Vec<&BinaryForm<C>> = Vec::new();
    for k in divisors(u64::from(n)) {
        if !keep(k) {
            continue;
        }
        match moebius(u64::from(n) / k)? {
            1 => num.push(&phis[k as usize - 1]),
            -1 => den.push(&phis[k as usize - 1]),
            _ => {}
        }
    }
    let top = BinaryForm::product(num);
    if den.is_empty() {
        return Ok(top);
    }
    top.exact_div(&BinaryForm::product(den))
}

pub fn phi_star_generic<C: Ring>(f: &BinaryForm<C>, g: &BinaryForm<C>, n: u32, max_terms: usize) -> Result<BinaryForm<C>> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let phis = phi_all(f, g, n, max_terms)?;
    moebius_quotient(&phis, n, |_| true)
}

pub fn phi_n(map: &RationalMap, n: u32) -> Result<QForm> {
    let (f, g) = map.iterate(n)?;
    Ok(cross_form(&f, &g))
}

/// Φ*_N exactly as the Möbius quotient produces it (no sign or content change).
pub fn phi_star(map: &RationalMap, n: u32) -> Result<QForm> {
    phi_star_generic(map.f(), map.g(), n, DEFAULT_MAX_TERMS)
}

pub fn phi_star_limited(map: &RationalMap, n: u32, max_terms: usize) -> Result<QForm> {
    phi_star_generic(map.f(), map.g(), n, max_terms)
}

/// Primitive integer form with positive leading coefficient.
pub fn normalized(p: &QForm) -> Result<QForm> {
    p.primitive()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynatomicResult {
    pub n: u32,
    pub phi_n: QForm,
    pub phi_star_n: QForm,
    /// ν_d(N) for N > 1, d + 1 for N = 1.
    pub degree_check: BigInt,
}

pub fn dynatomic(map: &RationalMap, n: u32, max_terms: usize) -> Result<DynatomicResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let phis = phi_all(map.f(), map.g(), n, max_terms)?;
    let star = moebius_quotient(&phis, n, |_| true)?;
    let d = map.degree() as u64;
    let expected = if n == 1 { BigInt::from(d + 1) } else { nu_degree(d, u64::from(n))? };
    if BigInt::from(star.degree()) != expected {
        return Err(Error::Mismatch(format!("deg Φ*_{n} = {} but expected {expected}", star.degree())));
    }
    Ok(DynatomicResult { n, phi_n: phis[n as usize - 1].clone(), phi_star_n: star, degree_check: expected })
}

impl DynatomicResult {
    pub fn to_json(&self, map: &RationalMap) -> Value {
        json!({
            "map": map.to_string(),
            "N": self.n,
            "phi_star": self.phi_star_n.to_mpoly().to_json(),
            "degree": self.phi_star_n.degree(),
        })
    }
}

/// Order of vanishing of `p` at `q` (multiplicity of the point's form).
pub fn ord_at(p: &QForm, q: &ProjPoint) -> Result<u32> {
    p.multiplicity(&q.form())
}

/// An effective divisor on ℙ¹ as irreducible point-forms with multiplicities.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DivisorOnP1 {
    parts: Vec<(QForm, u32)>,
}

impl DivisorOnP1 {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `k·[form]`, merging with a proportional form already present.
    pub fn add(&mut self, form: &QForm, k: u32) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let f = form.primitive()?;
        match self.parts.iter_mut().find(|(g, _)| g.proportional(&f)) {
            Some((_, m)) => *m += k,
            None => self.parts.push((f, k)),
        }
        Ok(())
    }

    pub fn multiplicity(&self, form: &QForm) -> u32 {
        self.parts.iter().find(|(g, _)| g.proportional(form)).map_or(0, |(_, m)| *m)
    }

    /// Number of geometric points with multiplicity.
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(g, m)| g.degree() * *m as usize).sum()
    }

    pub fn parts(&self) -> &[(QForm, u32)] {
        &self.parts
    }

    /// The multiplicities of `p` at each of `points`, dropping zeros.
    pub fn restricted(p: &QForm, points: &[ProjPoint]) -> Result<Self> {
        let mut d = Self::new();
        for q in points {
            d.add(&q.form(), ord_at(p, q)?)?;
        }
        Ok(d)
    }
}

/// `∞` is `None`.
pub type Period = Option<u64>;

/// True iff `a*_Q(N) ≥ 1` is predicted: `N = m`, `N = m·r`, or `N = q^s·m·r`
/// for some `s ≥ 1` (no such branch when `q = 0`).
pub fn astar_support_predicate(m: Period, r: Period, q: u64, n: u64) -> bool {
    let Some(m) = m else { return false };
    if n == m {
        return true;
    }
    let Some(r) = r else { return false };
    let Some(mr) = m.checked_mul(r) else { return false };
    if n == mr {
        return true;
    }
    q >= 2 && is_power_multiple(n, mr, q)
}

/// `n = base·q^s` for some `s ≥ 1`.
pub(crate) fn is_power_multiple(n: u64, base: u64, q: u64) -> bool {
    let mut cur = base;
    while let Some(next) = cur.checked_mul(q) {
        if next > n {
            return false;
        }
        if next == n {
            return true;
        }
        cur = next;
    }
    false
}

/// Primitive period `m` (up to `bound`) and the root-of-unity order `r` of
/// `(φ^m)'(Q)` (up to `r_bound`).
pub fn period_data<F: Field>(map: &RationalMap, q: &KPoint<F>, bound: u32, r_bound: u64) -> Result<(Period, Period)> {
    let mut cur = q.clone();
    for m in 1..=bound {
        cur = map.apply_k(&cur)?;
        if &cur == q {
            let lam = map.multiplier_at(q, m)?;
            let r = if lam.is_zero() { None } else { crate::numfield::root_of_unity_order(&lam, r_bound)? };
            return Ok((Some(u64::from(m)), r));
        }
    }
    Ok((None, None))
}

/// `period_data` for a rational point or a Galois orbit.
pub fn point_period_data(map: &RationalMap, q: &ProjPoint, bound: u32, r_bound: u64) -> Result<(Period, Period)> {
    match q.nf_point()? {
        None => {
            let (x, y) = q.coords().unwrap();
            period_data(map, &KPoint::normalized(x, y)?, bound, r_bound)
        }
        Some(t) => period_data(map, &KPoint { y: t.one_like(), x: t }, bound, r_bound),
    }
}
