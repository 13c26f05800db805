//! Elements of cyclotomic fields Q(zeta_n) with exact rational coordinates.

use num::{BigInt, BigRational, One, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};

/// Exact rational scalar.
pub type Rat = BigRational;

pub(crate) fn rat_int(k: i64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Dense rational polynomial helpers (coefficient index = exponent).

fn poly_trim(p: &mut Vec<Rat>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Returns (quotient, remainder) of a by b; b must be nonzero.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    let mut quo = vec![Rat::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem[dr].clone() / lead.clone();
        for j in 0..=db {
            let v = &b[j] * &c;
            rem[dr - db + j] -= v;
        }
        quo[dr - db] = c;
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quo);
    (quo, rem)
}

/// Extended Euclid in Q[x]: returns (g, s, t) with s*a + t*b = g, g monic gcd.
fn poly_xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0: Vec<Rat> = a.to_vec();
    let mut r1: Vec<Rat> = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::one()];
    let mut s1: Vec<Rat> = Vec::new();
    let mut t0: Vec<Rat> = Vec::new();
    let mut t1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let ns = poly_sub(&s0, &poly_mul(&q, &s1));
        let nt = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    // normalize to monic gcd
    if let Some(l) = r0.last().cloned() {
        let inv = Rat::one() / l;
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c *= &inv;
        }
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u64, Arc<Vec<Rat>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial as a dense rational polynomial,
/// computed by dividing x^n - 1 by the cyclotomic polynomials of the
/// proper divisors of n.
pub(crate) fn cyclotomic_polynomial(n: u64) -> Arc<Vec<Rat>> {
    assert!(n >= 1);
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![-Rat::one(), Rat::one()]
    } else {
        let mut num = vec![Rat::zero(); (n + 1) as usize];
        num[0] = -Rat::one();
        num[n as usize] = Rat::one();
        let mut den = vec![Rat::one()];
        for d in 1..n {
            if n % d == 0 {
                den = poly_mul(&den, &cyclotomic_polynomial(d));
            }
        }
        let (q, r) = poly_divmod(&num, &den);
        assert!(r.is_empty(), "cyclotomic division must be exact");
        q
    };
    let arc = Arc::new(result);
    CYCLO_CACHE.lock().unwrap().insert(n, arc.clone());
    arc
}

/// An element of Q(zeta_n), stored in canonical form: exponents are in
/// 0..phi(n) after reduction modulo the n-th cyclotomic polynomial, and
/// no zero coefficients are kept.
#[derive(Debug, Clone)]
pub struct CycloNum {
    conductor: u64,
    coeffs: BTreeMap<u64, Rat>,
}

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum {
            conductor: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        CycloNum {
            conductor: 1,
            coeffs,
        }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(rat_int(k))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rat(Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    /// zeta_n, a primitive n-th root of unity.
    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// zeta_n^k in canonical form.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let kk = k.rem_euclid(n as i64) as u64;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(kk, Rat::one());
        let mut x = CycloNum {
            conductor: n,
            coeffs,
        };
        x.canonicalize();
        x
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Reduce modulo the conductor's cyclotomic polynomial and drop zeros.
    pub fn canonicalize(&mut self) {
        let n = self.conductor;
        // exponents mod n first (zeta^n = 1)
        let mut dense: Vec<Rat> = vec![Rat::zero(); n as usize];
        for (e, c) in std::mem::take(&mut self.coeffs) {
            dense[(e % n) as usize] += c;
        }
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        // reduce degree-by-degree from the top
        for e in (deg..n as usize).rev() {
            if dense[e].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[e], Rat::zero());
            for j in 0..deg {
                let v = &phi[j] * &c;
                dense[e - deg + j] -= v;
            }
        }
        for (e, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                self.coeffs.insert(e as u64, c);
            }
        }
    }

    /// The canonical coordinates (exponent, coefficient).
    pub fn coords(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Image in Q(zeta_m) for conductor m divisible by self.conductor.
    pub fn embed(&self, m: u64) -> CycloNum {
        assert!(m % self.conductor == 0, "embedding needs divisibility");
        let k = m / self.conductor;
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            coeffs.insert(e * k, c.clone());
        }
        let mut x = CycloNum {
            conductor: m,
            coeffs,
        };
        x.canonicalize();
        x
    }

    fn common(&self, other: &CycloNum) -> (CycloNum, CycloNum) {
        let m = lcm(self.conductor, other.conductor);
        (self.embed(m), other.embed(m))
    }

    /// Complex conjugation, zeta |-> zeta^{-1}.
    pub fn conj(&self) -> CycloNum {
        let n = self.conductor;
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let ne = (n - e % n) % n;
            *coeffs.entry(ne).or_insert_with(Rat::zero) += c.clone();
        }
        let mut x = CycloNum {
            conductor: n,
            coeffs,
        };
        x.canonicalize();
        x
    }

    /// Returns Some(r) if the element is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.is_empty() {
            return Some(Rat::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(c) = self.coeffs.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Multiplicative inverse via extended Euclid against the cyclotomic
    /// polynomial.
    pub fn inv(&self) -> Result<CycloNum, super::ExactError> {
        if self.is_zero() {
            return Err(super::ExactError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycloNum::from_rat(Rat::one() / r));
        }
        let n = self.conductor;
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut dense = vec![Rat::zero(); deg];
        for (e, c) in &self.coeffs {
            dense[*e as usize] = c.clone();
        }
        poly_trim(&mut dense);
        let (g, _s, t) = poly_xgcd(&phi, &dense);
        assert!(g.len() == 1, "element must be a unit modulo Phi_n");
        // t * self = g = 1 (after monic normalization g = 1)
        let mut coeffs = BTreeMap::new();
        for (e, c) in t.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(e as u64, c);
            }
        }
        let mut x = CycloNum {
            conductor: n,
            coeffs,
        };
        x.canonicalize();
        Ok(x)
    }

    pub fn pow(&self, mut k: u64) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> CycloNum {
        if r.is_zero() {
            return CycloNum::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, c * r))
            .collect();
        CycloNum {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// |x|^2 = x * conj(x); rational for the uses in this crate only when
    /// the element lies in a CM field over Q, which always holds here.
    pub fn norm_sq(&self) -> CycloNum {
        self * &self.conj()
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        let (mut a, b) = self.common(rhs);
        for (e, c) in b.coeffs {
            let entry = a.coeffs.entry(e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                a.coeffs.remove(&e);
            }
        }
        a
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c)).collect();
        CycloNum {
            conductor: self.conductor,
            coeffs,
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        if self.is_zero() || rhs.is_zero() {
            return CycloNum::zero();
        }
        // fast path: rational scalar
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        let (a, b) = self.common(rhs);
        let mut coeffs: BTreeMap<u64, Rat> = BTreeMap::new();
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in &b.coeffs {
                let e = ea + eb;
                *coeffs.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        let mut x = CycloNum {
            conductor: a.conductor,
            coeffs,
        };
        x.canonicalize();
        x
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum { $trait::$m(&self, &rhs) }
        }
        impl $trait<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum { $trait::$m(&self, rhs) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloNum {
    /// Text format "c0 + c1*z(n)^1 + ...", reused by all JSON output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in &self.coeffs {
            if *e == 0 {
                parts.push(fmt_rat(c));
            } else if c.is_one() {
                parts.push(format!("z({})^{}", self.conductor, e));
            } else {
                parts.push(format!("{}*z({})^{}", fmt_rat(c), self.conductor, e));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = CycloNum::zeta(4);
        assert_eq!(&i * &i, CycloNum::from_int(-1));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let w = CycloNum::zeta(3);
        let sum = &w + &w.pow(2);
        assert_eq!(sum, CycloNum::from_int(-1));
    }

    #[test]
    fn zeta6_minimal_polynomial() {
        // x^2 - x + 1 vanishes at zeta_6, checked by brute-force expansion
        let z = CycloNum::zeta(6);
        let val = &(&z.pow(2) - &z) + &CycloNum::one();
        assert!(val.is_zero());
    }

    #[test]
    fn cross_conductor_arithmetic() {
        // zeta_6 = -zeta_3^2
        let z6 = CycloNum::zeta(6);
        let z3 = CycloNum::zeta(3);
        assert_eq!(z6, -z3.pow(2));
        // zeta_2 = -1 embeds into any conductor
        assert_eq!(CycloNum::zeta(2), CycloNum::from_int(-1));
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = CycloNum::zeta(5);
        let zi = z.inv().unwrap();
        assert_eq!(&z * &zi, CycloNum::one());
        assert_eq!(z.conj(), CycloNum::zeta_pow(5, -1));
        // a nontrivial element
        let x = &CycloNum::zeta(8) + &CycloNum::from_int(3);
        assert_eq!(&x * &x.inv().unwrap(), CycloNum::one());
    }

    #[test]
    fn canonicalize_idempotent() {
        let mut x = &CycloNum::zeta(12).pow(7) + &CycloNum::ratio(2, 3);
        let before = x.clone();
        x.canonicalize();
        assert_eq!(before, x);
    }

    #[test]
    fn display_format() {
        let x = &CycloNum::from_rat(Rat::new(1.into(), 2.into())) + &CycloNum::zeta(4);
        assert_eq!(x.to_string(), "1/2 + z(4)^1");
        assert_eq!(CycloNum::zero().to_string(), "0");
    }
}
