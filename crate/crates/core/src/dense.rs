//! Dense coefficient-sequence kernels shared by univariate polynomials and
//! binary forms: integer convolution (machine-word, schoolbook and Kronecker
//! paths) and certified exact division.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Below this length the schoolbook product beats packing.
const KRONECKER_MIN_LEN: usize = 24;

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.bits()).max().unwrap_or(0)
}

fn bit_len(n: usize) -> u64 {
    (usize::BITS - n.leading_zeros()) as u64
}

fn nonzero_count(v: &[BigInt]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

/// Product of two coefficient sequences (index = exponent offset).
pub(crate) fn conv_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    let short = a.len().min(b.len());
    let (ba, bb) = (max_bits(a), max_bits(b));
    if ba == 0 || bb == 0 {
        return vec![BigInt::zero(); n];
    }
    if ba + bb + bit_len(short) <= 126 {
        return conv_i128(a, b);
    }
    let (na, nb) = (nonzero_count(a), nonzero_count(b));
    if na.min(nb) <= 8 || short < KRONECKER_MIN_LEN {
        return conv_sparse(a, b);
    }
    kronecker(a, b, ba, bb)
}

fn conv_i128(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let to = |v: &[BigInt]| -> Vec<i128> {
        v.iter()
            .map(|c| i128::try_from(c).expect("bit bound checked"))
            .collect()
    };
    let (x, y) = (to(a), to(b));
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &u) in x.iter().enumerate() {
        if u == 0 {
            continue;
        }
        for (j, &v) in y.iter().enumerate() {
            out[i + j] += u * v;
        }
    }
    out.into_iter().map(BigInt::from).collect()
}

fn conv_sparse(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    let bnz: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for (i, u) in a.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for &(j, v) in &bnz {
            out[i + j] += u * v;
        }
    }
    out
}

/// Kronecker substitution: evaluate both sequences at 2^slot, multiply the
/// two big integers, read the product back in signed base-2^slot digits.
fn kronecker(a: &[BigInt], b: &[BigInt], ba: u64, bb: u64) -> Vec<BigInt> {
    let short = a.len().min(b.len());
    // |c_k| < short * 2^ba * 2^bb <= 2^(slot-1)
    let slot = ba + bb + bit_len(short) + 1;
    let pa = pack(a, slot);
    let pb = pack(b, slot);
    unpack(pa * pb, slot, a.len() + b.len() - 1)
}

fn or_shifted(dst: &mut [u32], src: &[u32], offset: u64) {
    let w = (offset / 32) as usize;
    let s = (offset % 32) as u32;
    for (k, &d) in src.iter().enumerate() {
        let v = (d as u64) << s;
        dst[w + k] |= v as u32;
        if (v >> 32) != 0 {
            dst[w + k + 1] |= (v >> 32) as u32;
        }
    }
}

fn pack(v: &[BigInt], slot: u64) -> BigInt {
    let words = (slot * v.len() as u64 / 32 + 2) as usize;
    let mut pos = vec![0u32; words];
    let mut neg = vec![0u32; words];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let digits = c.magnitude().to_u32_digits();
        let target = if c.sign() == Sign::Minus { &mut neg } else { &mut pos };
        or_shifted(target, &digits, slot * i as u64);
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos)) - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

fn unpack(p: BigInt, slot: u64, count: usize) -> Vec<BigInt> {
    let half = slot - 1;
    let words = (slot * count as u64 / 32 + 2) as usize;
    let mut offset = vec![0u32; words];
    for k in 0..count as u64 {
        let bit = slot * k + half;
        offset[(bit / 32) as usize] |= 1 << (bit % 32);
    }
    let q = p + BigInt::from_biguint(Sign::Plus, BigUint::new(offset));
    debug_assert!(q.sign() != Sign::Minus);
    let digits = q.magnitude().to_u32_digits();
    let bias = BigInt::one() << half;
    (0..count as u64)
        .map(|k| BigInt::from_biguint(Sign::Plus, extract(&digits, slot * k, slot)) - &bias)
        .collect()
}

fn extract(digits: &[u32], start: u64, len: u64) -> BigUint {
    let w = (start / 32) as usize;
    let s = start % 32;
    let nwords = ((len + 31) / 32) as usize;
    let mut out = Vec::with_capacity(nwords);
    for i in 0..nwords {
        let lo = *digits.get(w + i).unwrap_or(&0) as u64;
        let hi = *digits.get(w + i + 1).unwrap_or(&0) as u64;
        out.push((((hi << 32) | lo) >> s) as u32);
    }
    let extra = (nwords as u64) * 32 - len;
    if extra > 0 {
        if let Some(top) = out.last_mut() {
            *top &= u32::MAX >> extra;
        }
    }
    BigUint::new(out)
}

/// Least common multiple of the denominators and the integer sequence
/// `v * lcm`.
pub(crate) fn integerize(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in v {
        if !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    if l.is_one() {
        return (v.iter().map(|c| c.numer().clone()).collect(), l);
    }
    let ints = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    (ints, l)
}

pub(crate) fn content_int(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

pub(crate) fn conv_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (ia, la) = integerize(a);
    let (ib, lb) = integerize(b);
    let prod = conv_int(&ia, &ib);
    let l = la * lb;
    if l.is_one() {
        prod.into_iter().map(BigRational::from_integer).collect()
    } else {
        prod.into_iter().map(|c| BigRational::new(c, l.clone())).collect()
    }
}

/// Exact quotient `num / den` of coefficient sequences, both indexed from the
/// same end, with `den[0] != 0`. Returns `None` when `den` does not divide
/// `num`; success is always certified by multiplying back.
pub(crate) fn div_int_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!den.is_empty() && !den[0].is_zero(), "leading divisor coefficient must be nonzero");
    if num.iter().all(Zero::is_zero) {
        let len = num.len().checked_sub(den.len())? + 1;
        return Some(vec![BigInt::zero(); len]);
    }
    if num.len() < den.len() {
        return None;
    }
    let qlen = num.len() - den.len() + 1;
    let lead = &den[0];
    let tail: Vec<(usize, &BigInt)> = den.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
    let mut q: Vec<BigInt> = Vec::with_capacity(qlen);
    for i in 0..qlen {
        let mut acc = num[i].clone();
        for &(j, d) in &tail {
            if j > i {
                break;
            }
            let qc = &q[i - j];
            if !qc.is_zero() {
                acc -= qc * d;
            }
        }
        let (qi, r) = acc.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        q.push(qi);
    }
    if conv_int(&q, den) == num {
        Some(q)
    } else {
        None
    }
}

/// Rational version of [`div_int_exact`]: the divisor is made primitive so the
/// integer quotient is forced (Gauss's lemma), then rescaled.
pub(crate) fn div_rat_exact(num: &[BigRational], den: &[BigRational]) -> Option<Vec<BigRational>> {
    let (n_int, ln) = integerize(num);
    let (d_int, ld) = integerize(den);
    let mut g = content_int(&d_int);
    if d_int[0].is_negative() {
        g = -g;
    }
    let d_prim: Vec<BigInt> = d_int.iter().map(|c| c / &g).collect();
    let q = div_int_exact(&n_int, &d_prim)?;
    // num = n_int / ln, den = g * d_prim / ld
    let scale_num = ld;
    let scale_den = ln * g;
    Some(
        q.into_iter()
            .map(|c| BigRational::new(c * &scale_num, scale_den.clone()))
            .collect(),
    )
}
