//! Cyclotomic factorizations of Φ*_N for z^d and 1/z^d.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::dynatomic::phi_star;
use crate::error::{Error, Result};
use crate::exactalg::{cyclotomic, divisors, lucas_lehmer, UniPoly};
use crate::form::QForm;
use crate::ratmap::RationalMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    /// z^d
    Power,
    /// 1/z^d
    Reciprocal,
}

impl PowerKind {
    pub fn name(self) -> &'static str {
        match self {
            PowerKind::Power => "power",
            PowerKind::Reciprocal => "reciprocal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Reducible,
    Irreducible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reducible => "reducible",
            Verdict::Irreducible => "irreducible",
        })
    }
}

/// `±z^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialUnit {
    pub negative: bool,
    pub exponent: usize,
}

impl MonomialUnit {
    pub const ONE: MonomialUnit = MonomialUnit { negative: false, exponent: 0 };

    pub fn to_poly(self) -> UniPoly {
        let c = if self.negative { -BigRational::one() } else { BigRational::one() };
        UniPoly::monomial(c, self.exponent)
    }

    fn from_poly(p: &UniPoly) -> Option<MonomialUnit> {
        let e = p.degree()?;
        if p.coeffs()[..e].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let c = p.leading();
        if c.is_one() {
            Some(MonomialUnit { negative: false, exponent: e })
        } else if (-c).is_one() {
            Some(MonomialUnit { negative: true, exponent: e })
        } else {
            None
        }
    }
}

impl fmt::Display for MonomialUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly().to_string_in("z"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycloFactorization {
    pub kind: PowerKind,
    pub d: u32,
    pub n: u32,
    /// Increasing; each index occurs once.
    pub indices: Vec<u64>,
    pub unit: MonomialUnit,
    pub verified: bool,
}

impl CycloFactorization {
    /// Irreducible factors over ℚ, counting the power of z.
    pub fn factor_count(&self) -> usize {
        self.indices.len() + self.unit.exponent
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "d": self.d,
            "N": self.n,
            "cyclotomic_indices": self.indices,
            "unit": self.unit.to_string(),
            "verified": self.verified,
            "verdict": reducibility_verdict(self.d, self.n, self.kind).map(|v| v.to_string()).unwrap_or_default(),
        })
    }
}

fn check(d: u32, n: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d must be at least 2, got {d}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    Ok(())
}

fn pow_pm(d: u32, e: u64, plus: bool) -> Result<u64> {
    let p = u32::try_from(e)
        .ok()
        .and_then(|e| u64::from(d).checked_pow(e))
        .ok_or_else(|| Error::OutOfFormulaRange(format!("{d}^{e} exceeds 64 bits")))?;
    if plus {
        p.checked_add(1).ok_or_else(|| Error::OutOfFormulaRange(format!("{d}^{e} + 1 exceeds 64 bits")))
    } else {
        Ok(p - 1)
    }
}

fn proper_divisors(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&m| m != n).collect()
}

/// Divisors of `top` dividing none of `excluded`.
fn sieve(top: u64, excluded: &[u64]) -> Vec<u64> {
    divisors(top).into_iter().filter(|k| excluded.iter().all(|e| e % k != 0)).collect()
}

fn power_rule(d: u32, n: u64) -> Result<Vec<u64>> {
    let excl = proper_divisors(n).into_iter().map(|m| pow_pm(d, m, false)).collect::<Result<Vec<_>>>()?;
    Ok(sieve(pow_pm(d, n, false)?, &excl))
}

/// The index set of the closed-form factorization: for z^d with N > 1,
/// divisors of d^N − 1 dividing no d^m − 1 (m a proper divisor of N); for
/// 1/z^d with N > 2, the odd / twice-odd / multiple-of-4 rules.
pub fn power_factor_indices(d: u32, n: u32, kind: PowerKind) -> Result<Vec<u64>> {
    check(d, n)?;
    let nn = u64::from(n);
    match kind {
        PowerKind::Power if n > 1 => power_rule(d, nn),
        PowerKind::Reciprocal if n > 2 => {
            if nn % 2 == 1 {
                let excl = proper_divisors(nn).into_iter().map(|m| pow_pm(d, m, true)).collect::<Result<Vec<_>>>()?;
                Ok(sieve(pow_pm(d, nn, true)?, &excl))
            } else if nn % 4 == 2 {
                let half = nn / 2;
                let mut excl = proper_divisors(half)
                    .into_iter()
                    .map(|m| pow_pm(d, 2 * m, false))
                    .collect::<Result<Vec<_>>>()?;
                excl.push(pow_pm(d, half, true)?);
                Ok(sieve(pow_pm(d, nn, false)?, &excl))
            } else {
                power_rule(d, nn)
            }
        }
        _ => Err(Error::OutOfFormulaRange(format!(
            "{} formula needs N > {}, got {n}",
            kind.name(),
            if kind == PowerKind::Power { 1 } else { 2 }
        ))),
    }
}

/// Indices and unit for every N, using hard tables below the formula range:
/// z^d − z = z·∏_{k|d−1} C_k; 1 − z^{d+1} = −∏_{k|d+1} C_k;
/// Φ*₂(1/z^d) = −z·∏_{k | d²−1, k ∤ d+1} C_k.
pub fn factor_indices(d: u32, n: u32, kind: PowerKind) -> Result<(Vec<u64>, MonomialUnit)> {
    check(d, n)?;
    match (kind, n) {
        (PowerKind::Power, 1) => Ok((divisors(u64::from(d) - 1), MonomialUnit { negative: false, exponent: 1 })),
        (PowerKind::Reciprocal, 1) => Ok((divisors(u64::from(d) + 1), MonomialUnit { negative: true, exponent: 0 })),
        (PowerKind::Reciprocal, 2) => {
            let plus = u64::from(d) + 1;
            let ks = sieve(pow_pm(d, 2, false)?, &[plus]);
            Ok((ks, MonomialUnit { negative: true, exponent: 1 }))
        }
        _ => Ok((power_factor_indices(d, n, kind)?, MonomialUnit::ONE)),
    }
}

pub fn power_map(d: u32, kind: PowerKind) -> RationalMap {
    let d = d as usize;
    let (xd, yd) = (QForm::x().pow(d as u32), QForm::y().pow(d as u32));
    match kind {
        PowerKind::Power => RationalMap::new(xd, yd),
        PowerKind::Reciprocal => RationalMap::new(yd, xd),
    }
    .expect("power maps are valid")
}

/// Φ*_N(z, 1) of the power map, computed by the dynatomic machinery.
pub fn dehomogenized_phi_star(d: u32, n: u32, kind: PowerKind) -> Result<UniPoly> {
    check(d, n)?;
    Ok(phi_star(&power_map(d, kind), n)?.dehomogenize())
}

/// Multiply out `∏ C_k` and compare with the independently computed Φ*_N;
/// the quotient must be `±z^e` and agree with the predicted unit.
pub fn verify_factorization(d: u32, n: u32, kind: PowerKind) -> Result<CycloFactorization> {
    let (indices, unit) = factor_indices(d, n, kind)?;
    let direct = dehomogenized_phi_star(d, n, kind)?;
    let mut prod = UniPoly::one();
    for &k in &indices {
        prod = &prod * &cyclotomic(k)?;
    }
    let q = direct
        .exact_div(&prod)
        .map_err(|_| Error::Mismatch(format!("∏ C_k does not divide Φ*_{n} for {} d={d}", kind.name())))?;
    let found = MonomialUnit::from_poly(&q)
        .ok_or_else(|| Error::Mismatch(format!("Φ*_{n} / ∏ C_k = {} is not ±z^e", q.to_string_in("z"))))?;
    if found != unit {
        return Err(Error::Mismatch(format!("unit {found} differs from the predicted {unit}")));
    }
    Ok(CycloFactorization { kind, d, n, indices, unit, verified: true })
}

/// Reducibility over ℚ of Φ*_N for z^d or 1/z^d.
pub fn reducibility_verdict(d: u32, n: u32, kind: PowerKind) -> Result<Verdict> {
    check(d, n)?;
    let irreducible = match (kind, d) {
        (_, d) if d > 2 => false,
        (PowerKind::Power, _) => n >= 2 && lucas_lehmer(n)?,
        (PowerKind::Reciprocal, _) => n == 2 || n == 3,
    };
    Ok(if irreducible { Verdict::Irreducible } else { Verdict::Reducible })
}

/// The value `2^N − 1` used by the Mersenne criterion, for display.
pub fn mersenne(n: u32) -> BigInt {
    (BigInt::one() << n) - 1
}
