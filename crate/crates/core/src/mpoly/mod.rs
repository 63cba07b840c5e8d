//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are kept in a `BTreeMap` under graded-lex order. The variable roster
//! is always sorted by a fixed rank (x, y, a, b, c, t, z, then the rest
//! alphabetically), so any two rosters merge without reordering surprises and
//! the canonical text/JSON forms are stable.

mod json;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_rational_expr, RatExpr};

fn var_rank(name: &str) -> (u8, &str) {
    let r = match name {
        "x" => 0,
        "y" => 1,
        "a" => 2,
        "b" => 3,
        "c" => 4,
        "t" => 5,
        "z" => 6,
        _ => 7,
    };
    (r, name)
}

pub(crate) fn sort_roster(v: &mut Vec<String>) {
    v.sort_by(|a, b| var_rank(a).cmp(&var_rank(b)));
    v.dedup();
}

fn merged_roster(a: &[String], b: &[String]) -> Vec<String> {
    if a == b {
        return a.to_vec();
    }
    let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
    sort_roster(&mut v);
    v
}

/// Exponent vector under graded-lex order: total degree first, then the
/// first variable in the roster dominates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero_in(vars: &[&str]) -> Self {
        let mut v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        sort_roster(&mut v);
        MPoly { vars: v, terms: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(Vec::new()), c);
        }
        MPoly { vars: Vec::new(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), BigRational::one());
        MPoly { vars: vec![name.to_string()], terms }
    }

    /// Build from `(exponents, coefficient)` pairs over a roster; zero
    /// coefficients are dropped and repeated exponents summed.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut sorted = vars.to_vec();
        sort_roster(&mut sorted);
        if sorted.len() != vars.len() {
            return Err(Error::InvalidArgument("duplicate variable in roster".into()));
        }
        let perm: Vec<usize> = vars.iter().map(|v| sorted.iter().position(|s| s == v).unwrap()).collect();
        let mut map: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} for roster of length {}",
                    e.len(),
                    vars.len()
                )));
            }
            let mut ex = vec![0u32; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ex[perm[i]] = k;
            }
            let slot = map.entry(Mono(ex)).or_insert_with(BigRational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MPoly { vars: sorted, terms: map })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-express over a roster that contains every used variable.
    pub fn with_vars(&self, roster: &[String]) -> Result<MPoly> {
        let mut target = roster.to_vec();
        sort_roster(&mut target);
        if target == self.vars {
            return Ok(self.clone());
        }
        let mut idx = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == v) {
                Some(j) => idx.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m.0[i] > 0) {
                        return Err(Error::UnknownVariable(v.clone()));
                    }
                    idx.push(None);
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (i, j) in idx.iter().enumerate() {
                    if let Some(j) = j {
                        e[*j] = m.0[i];
                    }
                }
                (Mono(e), c.clone())
            })
            .collect();
        Ok(MPoly { vars: target, terms })
    }

    pub fn drop_unused_vars(&self) -> MPoly {
        self.with_vars(&self.used_vars()).expect("used vars are kept")
    }

    fn aligned(&self, o: &MPoly) -> (MPoly, MPoly) {
        let r = merged_roster(&self.vars, &o.vars);
        (
            self.with_vars(&r).expect("superset roster"),
            o.with_vars(&r).expect("superset roster"),
        )
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(BigRational::one()).with_vars(&self.vars).unwrap();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn mul_term(&self, m: &Mono, c: &BigRational) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Certified exact division; the error names the first leading term of
    /// the running remainder that the divisor's leading term cannot reach.
    pub fn exact_div(&self, den: &MPoly) -> Result<MPoly> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (num, den) = self.aligned(den);
        let (dl_m, dl_c) = den.lead().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = num.terms.clone();
        let mut q: BTreeMap<Mono, BigRational> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !dl_m.divides(&m) {
                let t = MPoly { vars: num.vars.clone(), terms: BTreeMap::from([(m, c)]) };
                return Err(Error::NonDivisible(t.to_string()));
            }
            let qm = m.div(&dl_m);
            let qc = &c / &dl_c;
            for (dm, dc) in den.terms.iter() {
                let key = dm.mul(&qm);
                let v = dc * &qc;
                match rem.get_mut(&key) {
                    Some(slot) => {
                        *slot -= v;
                        if slot.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -v);
                    }
                }
            }
            q.insert(qm, qc);
        }
        let quot = MPoly { vars: num.vars.clone(), terms: q };
        if &quot * &den != num {
            return Err(Error::NonDivisible("multiply-back check failed".into()));
        }
        Ok(quot)
    }

    /// Substitute polynomials (or constants) for variables.
    pub fn specialize(&self, bindings: &[(&str, MPoly)]) -> Result<MPoly> {
        let mut bound: Vec<(usize, &MPoly)> = Vec::new();
        for (name, val) in bindings {
            match self.var_index(name) {
                Some(i) => bound.push((i, val)),
                None => return Err(Error::UnknownVariable(name.to_string())),
            }
        }
        let mut roster: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !bound.iter().any(|(j, _)| j == i))
            .map(|(_, v)| v.clone())
            .collect();
        for (_, val) in &bound {
            roster.extend(val.vars.iter().cloned());
        }
        sort_roster(&mut roster);
        let free: Vec<(usize, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !bound.iter().any(|(j, _)| j == i))
            .map(|(i, v)| (i, roster.iter().position(|r| r == v).unwrap()))
            .collect();
        let vals: Vec<MPoly> = bound.iter().map(|(_, v)| v.with_vars(&roster).unwrap()).collect();
        let mut powers: Vec<HashMap<u32, MPoly>> = vec![HashMap::new(); bound.len()];
        let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; roster.len()];
            for &(i, j) in &free {
                e[j] = m.0[i];
            }
            let mut piece = MPoly { vars: roster.clone(), terms: BTreeMap::from([(Mono(e), c.clone())]) };
            for (k, (i, _)) in bound.iter().enumerate() {
                let ex = m.0[*i];
                if ex == 0 {
                    continue;
                }
                let p = powers[k].entry(ex).or_insert_with(|| vals[k].pow(ex));
                piece = &piece * p;
            }
            for (pm, pc) in piece.terms {
                let slot = acc.entry(pm).or_insert_with(BigRational::zero);
                *slot += pc;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MPoly { vars: roster, terms: acc })
    }

    /// `(content, primitive)` with integer primitive part of gcd 1 whose
    /// leading graded-lex coefficient is positive.
    pub fn content_primitive(&self) -> Result<(BigRational, MPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let mut content = BigRational::new(g, l);
        if self.lead().unwrap().1.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        Ok((content, prim))
    }

    /// Coefficient of `name^e`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, name: &str, e: u32) -> MPoly {
        let Some(i) = self.var_index(name) else {
            return if e == 0 { self.clone() } else { MPoly { vars: self.vars.clone(), terms: BTreeMap::new() } };
        };
        let vars: Vec<String> = self.vars.iter().filter(|v| *v != name).cloned().collect();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] == e)
            .map(|(m, c)| {
                let mut ex = m.0.clone();
                ex.remove(i);
                (Mono(ex), c.clone())
            })
            .collect();
        MPoly { vars, terms }
    }

    /// Every term has the same total degree in the named variables.
    pub fn homogeneous_degree_in(&self, names: &[&str]) -> Option<u32> {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.var_index(n)).collect();
        let mut deg = None;
        for m in self.terms.keys() {
            let d: u32 = idx.iter().map(|&i| m.0[i]).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn fmt_term(out: &mut String, vars: &[String], m: &Mono, c: &BigRational, first: bool) {
        let neg = c.is_negative();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (v, &e) in vars.iter().zip(&m.0) {
            match e {
                0 => {}
                1 => factors.push(v.clone()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            MPoly::fmt_term(&mut s, &self.vars, m, c, i == 0);
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({self})", self.vars.join(","))
    }
}

impl PartialEq for MPoly {
    fn eq(&self, o: &Self) -> bool {
        if self.vars == o.vars {
            return self.terms == o.terms;
        }
        if self.terms.len() != o.terms.len() {
            return false;
        }
        let (a, b) = self.aligned(o);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let (mut a, b) = self.aligned(o);
        for (m, c) in b.terms {
            match a.terms.get_mut(&m) {
                Some(slot) => {
                    *slot += c;
                    if slot.is_zero() {
                        a.terms.remove(&m);
                    }
                }
                None => {
                    a.terms.insert(m, c);
                }
            }
        }
        a
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self + &(-o)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let (a, b) = self.aligned(o);
        if a.terms.len() == 1 {
            let (m, c) = a.terms.iter().next().unwrap();
            return b.mul_term(m, c);
        }
        let mut acc: HashMap<Mono, BigRational> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero);
                *slot += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { vars: a.vars, terms }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl crate::ring::Ring for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }
    fn one() -> Self {
        MPoly::constant(<BigRational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        self.exact_div(o).ok()
    }
    fn from_rational(r: &BigRational) -> Self {
        MPoly::constant(r.clone())
    }
    fn term_count(&self) -> usize {
        self.terms.len()
    }
    fn as_mpoly(&self) -> MPoly {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn canonical_text_is_descending_grlex() {
        assert_eq!(p("-y^2 + x*y - x^2").to_string(), "-x^2 + x*y - y^2");
        assert_eq!(p("a*x*y + x^2 + 3/2").to_string(), "x*y*a + x^2 + 3/2");
        assert_eq!(p("x^3*y^2*a").to_string(), "x^3*y^2*a");
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p("x^2 - y^2").exact_div(&p("x - y")).unwrap(), p("x + y"));
        assert_eq!(p("-y*(2*x^2 - y^2)").exact_div(&p("y")).unwrap(), p("-(2*x^2 - y^2)"));
        assert!(matches!(p("x^2 + y^2").exact_div(&p("x - y")), Err(Error::NonDivisible(_))));
    }

    #[test]
    fn specialization() {
        let s = p("x^2 + a*x*y").specialize(&[("a", MPoly::from_int(0))]).unwrap();
        assert_eq!(s, p("x^2"));
        assert!(p("x").specialize(&[("q", MPoly::from_int(1))]).is_err());
        let s = p("a*x + b").specialize(&[("a", p("b + 1"))]).unwrap();
        assert_eq!(s, p("b*x + x + b"));
    }

    #[test]
    fn content_and_primitive_part() {
        let (c, q) = p("2*x + 4*y").content_primitive().unwrap();
        assert_eq!((c, q), (crate::exactalg::int(2), p("x + 2*y")));
        let (c, q) = p("3/2*x").content_primitive().unwrap();
        assert_eq!((c, q), (crate::exactalg::rat(3, 2), p("x")));
        let (c, q) = p("-6*x^2 + 4").content_primitive().unwrap();
        assert_eq!((c, q), (crate::exactalg::int(-2), p("3*x^2 - 2")));
        assert!(MPoly::default().content_primitive().is_err());
    }

    #[test]
    fn equality_across_rosters() {
        let a = p("x + 1");
        let b = a.with_vars(&["x".into(), "y".into(), "b".into()]).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.vars(), ["x", "y", "b"]);
    }
}
