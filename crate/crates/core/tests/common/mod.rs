#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use dynatomic_core::dynatomic::{moebius_quotient, nu_degree, phi_all, phi_star, DEFAULT_MAX_TERMS};
use dynatomic_core::exactalg::{divisors, int};
use dynatomic_core::form::QForm;
use dynatomic_core::numfield::{nf_invert, NFElem};
use dynatomic_core::ratmap::{KPoint, Pgl2, RationalMap};

pub type Check = Result<(), String>;

/// A map with integer coefficients in `[-b, b]`, or `None` if degenerate.
pub fn map_from(d: usize, coeffs: &[i64]) -> Option<RationalMap> {
    let f = QForm::new(coeffs[..=d].iter().map(|&c| int(c)).collect());
    let g = QForm::new(coeffs[d + 1..2 * d + 2].iter().map(|&c| int(c)).collect());
    RationalMap::new(f, g).ok()
}

pub fn random_map(rng: &mut impl Rng, d: usize, b: i64) -> RationalMap {
    loop {
        let c: Vec<i64> = (0..2 * d + 2).map(|_| rng.gen_range(-b..=b)).collect();
        if let Some(m) = map_from(d, &c) {
            return m;
        }
    }
}

pub fn pgl2_from(e: [i64; 4]) -> Option<Pgl2> {
    if e[0] * e[3] - e[1] * e[2] == 0 {
        return None;
    }
    Pgl2::from_i64(e[0], e[1], e[2], e[3]).ok()
}

pub fn random_pgl2(rng: &mut impl Rng, b: i64) -> Pgl2 {
    loop {
        if let Some(h) = pgl2_from([0; 4].map(|_| rng.gen_range(-b..=b))) {
            return h;
        }
    }
}

/// `∏_{k|N} Φ*_k = Φ_N`.
pub fn moebius_inversion(m: &RationalMap, n: u32) -> Check {
    let phis = phi_all(m.f(), m.g(), n, DEFAULT_MAX_TERMS).map_err(|e| e.to_string())?;
    let mut prod = QForm::one();
    for k in divisors(u64::from(n)) {
        let star = moebius_quotient(&phis, k as u32, |_| true).map_err(|e| format!("{m}, Φ*_{k}: {e}"))?;
        prod = prod.mul(&star);
    }
    if prod == phis[n as usize - 1] {
        Ok(())
    } else {
        Err(format!("{m}: ∏ Φ*_k ≠ Φ_{n}"))
    }
}

pub fn degree_law(m: &RationalMap, n: u32) -> Check {
    let star = phi_star(m, n).map_err(|e| e.to_string())?;
    let d = m.degree() as u64;
    let want = if n == 1 { (d + 1).into() } else { nu_degree(d, u64::from(n)).unwrap() };
    if num_bigint::BigInt::from(star.degree()) == want {
        Ok(())
    } else {
        Err(format!("{m}: deg Φ*_{n} = {} ≠ {want}", star.degree()))
    }
}

/// Φ*_N(h⁻¹∘φ∘h) ∝ Φ*_N(φ)∘h.
pub fn conjugation_covariance(m: &RationalMap, h: &Pgl2, n: u32) -> Check {
    let lhs = phi_star(&m.conjugate(h), n).map_err(|e| e.to_string())?;
    let (a, b) = h.forms();
    let rhs = phi_star(m, n).map_err(|e| e.to_string())?.compose(&a, &b);
    if lhs.proportional(&rhs) {
        Ok(())
    } else {
        Err(format!("{m} conjugated by {h:?}: Φ*_{n} not covariant"))
    }
}

pub fn sigma_invariance(m: &RationalMap, h: &Pgl2) -> Check {
    let a = m.sigma_invariants().map_err(|e| e.to_string())?;
    let b = m.conjugate(h).sigma_invariants().map_err(|e| e.to_string())?;
    if a == b {
        Ok(())
    } else {
        Err(format!("{m}: σ changes under conjugation"))
    }
}

/// For distinct fixed points: `Σ 1/(1 − λ_i) = 1` (brute force) and `σ₃ = σ₁ − 2`.
/// Maps with a repeated fixed point are skipped (`Ok(false)`).
pub fn fixed_point_identity(m: &RationalMap) -> Result<bool, String> {
    if !m.fixed_point_form().is_squarefree() {
        return Ok(false);
    }
    let lam = m.fixed_point_multipliers().map_err(|e| e.to_string())?;
    let one = NFElem::from_rational(lam.modulus(), BigRational::one());
    let inv = nf_invert(&one.sub(&lam).unwrap()).map_err(|e| format!("{m}: 1 − λ not invertible: {e}"))?;
    if inv.trace() != BigRational::one() {
        return Err(format!("{m}: Σ 1/(1 − λ) = {}", inv.trace()));
    }
    let s = m.sigma_invariants().map_err(|e| e.to_string())?;
    if s.s3 != &s.s1 - int(2) {
        return Err(format!("{m}: σ₃ = {} but σ₁ − 2 = {}", s.s3, &s.s1 - int(2)));
    }
    Ok(true)
}

/// `∏ λ₁(h, Q_i) = 1` over the orbit of `q` under the order-3 map `[x − y : x]`.
pub fn orbit_derivative_product(q: BigRational) -> Check {
    let h = Pgl2::parse("x - y, x").unwrap().as_map();
    let start = KPoint::normalized(q.clone(), BigRational::one()).unwrap();
    let orbit = h.cycle(&start, 3).map_err(|e| e.to_string())?;
    let mut prod = BigRational::one();
    for p in &orbit {
        prod *= h.taylor_at(p, 1).map_err(|e| e.to_string())?[1].clone();
    }
    if prod.is_one() {
        Ok(())
    } else {
        Err(format!("orbit of {q}: product {prod}"))
    }
}
