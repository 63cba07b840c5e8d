//! Number-theoretic utilities and dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::dense;
use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// μ(n).
pub fn moebius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidArgument("moebius(0) is undefined".into()));
    }
    let mut sign = 1i8;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

/// Positive divisors of `n` in increasing order (`n >= 1`).
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0");
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs; `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
    }
    let mut stack = vec![m];
    while let Some(k) = stack.pop() {
        if k == 1 {
            continue;
        }
        if is_prime_u64(k) {
            primes.push(k);
            continue;
        }
        let d = pollard_rho(k);
        stack.push(d);
        stack.push(k / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// k-th cyclotomic polynomial, as the Möbius product of binomials t^d − 1
/// evaluated by certified exact division.
pub fn cyclotomic(k: u64) -> Result<UniPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("cyclotomic(0)".into()));
    }
    let mut num = UniPoly::one();
    let mut dens = Vec::new();
    for d in divisors(k) {
        let binom = UniPoly::binomial(d as usize);
        match moebius(k / d)? {
            1 => num = &num * &binom,
            -1 => dens.push(binom),
            _ => {}
        }
    }
    for den in dens {
        num = num.exact_div(&den)?;
    }
    Ok(num)
}

/// True iff 2^n − 1 is prime.
pub fn lucas_lehmer(n: u32) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("lucas_lehmer needs N >= 2, got {n}")));
    }
    if n == 2 {
        return Ok(true);
    }
    if !is_prime_u64(n as u64) {
        return Ok(false);
    }
    let m = (BigInt::one() << n) - 1;
    let mut s = BigInt::from(4);
    for _ in 0..n - 2 {
        s = (&s * &s - BigInt::from(2)).mod_floor(&m);
    }
    Ok(s.is_zero())
}

/// Σ_{k|n} μ(n/k)·a^{pk} − p·Σ_{k|n} μ(n/k)·a^k.
pub fn mucalc_gap(a: u64, p: u64, n: u64) -> Result<BigInt> {
    if n <= 1 || a < 2 || p < 2 {
        return Err(Error::InvalidArgument(format!(
            "mucalc_gap needs n > 1, a >= 2, p >= 2; got a={a}, p={p}, n={n}"
        )));
    }
    let a = BigInt::from(a);
    let mut left = BigInt::zero();
    let mut right = BigInt::zero();
    for k in divisors(n) {
        let mu = moebius(n / k)?;
        if mu == 0 {
            continue;
        }
        let big = Pow::pow(&a, p * k);
        let small = Pow::pow(&a, k);
        if mu > 0 {
            left += big;
            right += small;
        } else {
            left -= big;
            right -= small;
        }
    }
    Ok(left - BigInt::from(p) * right)
}

/// ν_d(N) = Σ_{k|N} μ(N/k)·d^k.
pub fn nu(d: u64, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let mut acc = BigInt::zero();
    for k in divisors(n) {
        let mu = moebius(n / k)?;
        acc += BigInt::from(mu) * Pow::pow(&BigInt::from(d), k);
    }
    Ok(acc)
}

/// Dense univariate polynomial over ℚ, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// t^d − 1.
    pub fn binomial(d: usize) -> Self {
        let mut v = vec![BigRational::zero(); d + 1];
        v[0] = -BigRational::one();
        v[d] += BigRational::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|v| v * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder of long division by a nonzero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Certified exact quotient.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let rn: Vec<BigRational> = self.coeffs.iter().rev().cloned().collect();
        let rd: Vec<BigRational> = d.coeffs.iter().rev().cloned().collect();
        match dense::div_rat_exact(&rn, &rd) {
            Some(q) => Ok(Self::new(q.into_iter().rev().collect())),
            None => {
                let (_, r) = self.div_rem(d)?;
                Err(Error::NonDivisible(format!("remainder {r}")))
            }
        }
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·other = g monic gcd.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Text in the given variable, descending degree, e.g. `t^2 - t + 1`.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Integer coefficients as i64 where they fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.numer().to_i64() } else { None })
            .collect()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(dense::conv_rat(&self.coeffs, &o.coeffs))
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, o: UniPoly) -> UniPoly {
        &self + &o
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, o: UniPoly) -> UniPoly {
        &self - &o
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, o: UniPoly) -> UniPoly {
        &self * &o
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn moebius_sums_vanish() {
        for n in 1..=10_000u64 {
            let s: i64 = divisors(n).iter().map(|&d| moebius(d).unwrap() as i64).sum();
            assert_eq!(s, (n == 1) as i64, "n = {n}");
        }
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), UniPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), UniPoly::from_ints(&[1, -1, 1]));
        assert!(cyclotomic(0).is_err());
        // first cyclotomic polynomial with a coefficient outside {-1,0,1}
        let c105 = cyclotomic(105).unwrap();
        assert!(c105.coeffs().iter().any(|c| c == &int(-2)));
    }

    #[test]
    fn binomials_split_into_cyclotomics() {
        for k in 1..=200u64 {
            let prod = divisors(k)
                .into_iter()
                .fold(UniPoly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
            assert_eq!(prod, UniPoly::binomial(k as usize), "k = {k}");
            let c = cyclotomic(k).unwrap();
            assert!(c.is_monic() && c.has_integer_coeffs());
            assert_eq!(c.degree().unwrap() as u64, euler_phi(k));
        }
    }

    #[test]
    fn lucas_lehmer_matches_trial_division() {
        assert!(lucas_lehmer(1).is_err());
        assert!(lucas_lehmer(3).unwrap());
        assert!(!lucas_lehmer(11).unwrap());
        assert!(lucas_lehmer(13).unwrap());
        for n in 2..=31u32 {
            let m = (1u64 << n) - 1;
            let mut prime = true;
            let mut f = 2u64;
            while f * f <= m {
                if m % f == 0 {
                    prime = false;
                    break;
                }
                f += 1;
            }
            assert_eq!(lucas_lehmer(n).unwrap(), prime, "N = {n}");
        }
    }

    #[test]
    fn mucalc_examples() {
        assert_eq!(mucalc_gap(2, 2, 2).unwrap(), BigInt::from(8));
        // oracle: independent divisor-sum evaluation in Python
        assert_eq!(mucalc_gap(2, 2, 6).unwrap(), BigInt::from(3912));
        assert_eq!(mucalc_gap(3, 2, 4).unwrap(), BigInt::from(6336));
        assert!(mucalc_gap(2, 2, 1).is_err());
        for a in 2..=5 {
            for p in 2..=5 {
                for n in 2..=12 {
                    assert!(mucalc_gap(a, p, n).unwrap() > BigInt::zero(), "{a} {p} {n}");
                }
            }
        }
    }

    #[test]
    fn factorization_round_trips() {
        for n in [1u64, 2, 97, 1 << 40, 600851475143, 18446744073709551557, 4611686014132420609] {
            let f = factorize(n);
            let back = f.iter().fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e));
            assert_eq!(back, n as u128);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn gcd_and_division() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert!(UniPoly::from_ints(&[1, 0, 1]).exact_div(&UniPoly::from_ints(&[-1, 1])).is_err());
    }
}
