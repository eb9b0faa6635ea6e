//! Polynomials and rational functions over a prime field `F_p`.
//!
//! Coefficients are stored low-to-high as `u64` residues; products go through
//! `u128`, so any prime below `2^63` works. Factorization is square-free
//! decomposition, distinct-degree splitting and Cantor-Zassenhaus.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) && p < (1 << 63) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{p} is not a supported prime")))
    }
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `a^e mod p`.
pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a, p);
        }
        a = mulp(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Smallest generator of `F_p^*`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("primes have primitive roots")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    /// Reduces the coefficients mod `p` and trims; `p` is assumed prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = Self { p, c: coeffs.into_iter().map(|x| x % p).collect() };
        f.trim();
        f
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The variable `t`.
    pub fn t(p: u64) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(p, v)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| mulp(x, k, self.p)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (mulp(acc, x, self.p) + a) % self.p)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| mulp(a, i as u64 % p, p)).collect())
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = d.c.len() - 1;
        let li = inv_mod(d.leading(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mulp(r[k + dd], li, p);
            q[k] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulp(coef, b, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only if both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = inv_mod(r0.leading(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        r
    }

    /// `self^(p^k) mod m`.
    pub fn frobenius_mod(&self, k: usize, m: &Self) -> Self {
        let mut r = self.rem(m);
        for _ in 0..k {
            r = r.powmod(self.p, m);
        }
        r
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let x = Self::t(self.p);
        if !(&x.frobenius_mod(n, &f) - &x).rem(&f).is_zero() {
            return false;
        }
        prime_divisors(n).into_iter().all(|q| (&x.frobenius_mod(n / q, &f) - &x).gcd(&f).is_one())
    }

    /// Leading coefficient and sorted monic irreducible factors with multiplicities.
    pub fn factor(&self) -> Result<(u64, Vec<(FpPoly, usize)>)> {
        if self.is_zero() {
            return Err(Error::invalid("cannot factor the zero polynomial"));
        }
        let lc = self.leading();
        let mut out: Vec<(FpPoly, usize)> = Vec::new();
        for (g, m) in squarefree(&self.monic()) {
            for (h, d) in distinct_degree(&g) {
                for f in equal_degree(&h, d) {
                    out.push((f, m));
                }
            }
        }
        out.sort();
        let mut merged: Vec<(FpPoly, usize)> = Vec::new();
        for (f, m) in out {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += m,
                _ => merged.push((f, m)),
            }
        }
        Ok((lc, merged))
    }

    /// Multiplicity of the monic irreducible `q` in `self` (nonzero).
    pub fn valuation(&self, q: &Self) -> usize {
        let mut f = self.clone();
        let mut k = 0;
        while let Some(g) = f.div_exact(q) {
            f = g;
            k += 1;
        }
        k
    }

    /// All monic polynomials of degree `d`, in lexicographic order of the lower coefficients.
    pub fn monic_of_degree(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
        let count = p.checked_pow(d as u32).expect("too many polynomials");
        (0..count).map(move |mut k| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(k % p);
                k /= p;
            }
            c.push(1);
            FpPoly { p, c }
        })
    }

    /// All polynomials of degree at most `d` (including zero).
    pub fn all_up_to_degree(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
        let count = p.checked_pow(d as u32 + 1).expect("too many polynomials");
        (0..count).map(move |mut k| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                c.push(k % p);
                k /= p;
            }
            FpPoly::new(p, c)
        })
    }

    pub fn irreducibles_of_degree(p: u64, d: usize) -> Vec<FpPoly> {
        Self::monic_of_degree(p, d).filter(|f| f.is_irreducible()).collect()
    }
}

/// `Tr_{F_p[t]/(m) / F_p}(a mod m)` for irreducible `m`.
pub fn trace_mod(a: &FpPoly, m: &FpPoly) -> u64 {
    let n = m.degree().unwrap_or(0);
    let mut x = a.rem(m);
    let mut s = FpPoly::zero(a.p);
    for _ in 0..n {
        s = &s + &x;
        x = x.powmod(a.p, m);
    }
    debug_assert!(s.is_constant());
    s.coeff(0)
}

/// `N_{F_p[t]/(m) / F_p}(a mod m)` for irreducible `m`.
pub fn norm_mod(a: &FpPoly, m: &FpPoly) -> u64 {
    let n = m.degree().unwrap_or(0);
    let mut x = a.rem(m);
    let mut s = FpPoly::one(a.p);
    for _ in 0..n {
        s = s.mulmod(&x, m);
        x = x.powmod(a.p, m);
    }
    debug_assert!(s.is_constant());
    s.coeff(0)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn squarefree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power; a^(1/p) = a on F_p
        let root = FpPoly::new(p, c.c.iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree(&root) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let x = FpPoly::t(f.p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(f.p, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_one() {
        let d = rest.degree().unwrap_or(0);
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &FpPoly, d: usize) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let p = f.p;
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00d ^ (n as u64) << 8 ^ d as u64);
    loop {
        let r = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if r.is_constant() {
            continue;
        }
        let candidate = if p == 2 {
            let mut s = FpPoly::zero(p);
            let mut x = r.rem(f);
            for _ in 0..d {
                s = &s + &x;
                x = x.mulmod(&x, f);
            }
            s
        } else {
            // r^((p^d - 1)/2) = (r^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut prod = FpPoly::one(p);
            let mut x = r.rem(f);
            for _ in 0..d {
                prod = prod.mulmod(&x, f);
                x = x.powmod(p, f);
            }
            &prod.powmod((p - 1) / 2, f) - &FpPoly::one(p)
        };
        let g = candidate.gcd(f);
        if !g.is_one() && g.degree() != f.degree() {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&h, d));
            return out;
        }
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top.
impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&x| (self.p - x) % self.p).collect())
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + mulp(a, b, p)) % p;
            }
        }
        FpPoly::new(p, r)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

/// A nonzero-denominator fraction in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl RatFunc {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        if num.p != den.p {
            return Err(Error::invalid("mixed characteristics"));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let k = inv_mod(den.leading(), den.p);
        Ok(Self { num: num.scale(k), den: den.scale(k) })
    }

    pub fn from_poly(f: FpPoly) -> Self {
        let p = f.p;
        Self { num: f, den: FpPoly::one(p) }
    }

    pub fn p(&self) -> u64 {
        self.num.p
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order at the monic irreducible `q`.
    pub fn ord_at(&self, q: &FpPoly) -> i64 {
        self.num.valuation(q) as i64 - self.den.valuation(q) as i64
    }

    /// Order at infinity, `deg den - deg num`.
    pub fn ord_infinity(&self) -> i64 {
        self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("zero has no inverse"));
        }
        Self::new(self.den.clone(), self.num.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 3;
        let f = FpPoly::from_i64(p, &[-1, 0, 1]);
        let (q, r) = f.divrem(&FpPoly::from_i64(p, &[-1, 1]));
        assert_eq!(q, FpPoly::from_i64(p, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.derivative(), FpPoly::from_i64(p, &[0, 2]));
        assert_eq!(FpPoly::t(p).pow(3).derivative(), FpPoly::zero(p));
        let g = FpPoly::from_i64(p, &[1, 1, 1]);
        let inv = g.inv_mod(&FpPoly::from_i64(p, &[2, 0, 0, 1, 1])).unwrap();
        assert!(g.mulmod(&inv, &FpPoly::from_i64(p, &[2, 0, 0, 1, 1])).is_one());
    }

    #[test]
    fn irreducible_counts() {
        // necklace formula: 2, 1, 2, 3, 6 for p = 2 and 3, 3, 8, 18 for p = 3
        let c2: Vec<usize> = (1..=5).map(|d| FpPoly::irreducibles_of_degree(2, d).len()).collect();
        assert_eq!(c2, [2, 1, 2, 3, 6]);
        let c3: Vec<usize> = (1..=4).map(|d| FpPoly::irreducibles_of_degree(3, d).len()).collect();
        assert_eq!(c3, [3, 3, 8, 18]);
    }

    #[test]
    fn factorization_roundtrip() {
        for p in [2u64, 3, 5] {
            for f in FpPoly::all_up_to_degree(p, if p == 5 { 4 } else { 6 }) {
                if f.is_zero() {
                    continue;
                }
                let (lc, fs) = f.factor().unwrap();
                let mut prod = FpPoly::constant(p, lc);
                for (g, m) in &fs {
                    assert!(g.is_irreducible() && g.is_monic(), "{g:?}");
                    prod = &prod * &g.pow(*m as u64);
                }
                assert_eq!(prod, f);
            }
        }
    }

    #[test]
    fn trace_and_roots() {
        // x^p - x - a has a root mod m iff the trace vanishes
        let p = 3;
        for m in FpPoly::irreducibles_of_degree(p, 2) {
            for a in FpPoly::all_up_to_degree(p, 1) {
                let q = p.pow(2);
                let roots = (0..q)
                    .filter(|&k| {
                        let x = FpPoly::new(p, vec![k % p, k / p]);
                        (&(&x.powmod(p, &m) - &x) - &a).rem(&m).is_zero()
                    })
                    .count();
                assert_eq!(roots == p as usize, trace_mod(&a, &m) == 0);
            }
        }
    }

    #[test]
    fn rational_orders() {
        let p = 3;
        let f = RatFunc::new(FpPoly::from_i64(p, &[1, 1]), FpPoly::t(p).pow(3)).unwrap();
        assert_eq!(f.ord_infinity(), 2);
        assert_eq!(f.ord_at(&FpPoly::t(p)), -3);
        assert_eq!(primitive_root(7), 3);
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(1));
    }
}
