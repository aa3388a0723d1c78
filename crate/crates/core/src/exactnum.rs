//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! `N`-th cyclotomic polynomial, with one shared positive denominator. Two
//! elements at the same conductor are equal iff their stored data is equal.
//! Mixed-conductor operands are lifted to the lcm conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Largest conductor accepted from external input.
pub const MAX_CONDUCTOR: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor {0} exceeds the supported maximum {MAX_CONDUCTOR}")]
    ConductorTooLarge(u32),
    #[error("malformed rational literal `{0}`")]
    BadRational(String),
    #[error(
        "cyclotomic encoding for conductor {conductor} needs {expected} coefficients, got {got}"
    )]
    BadLength {
        conductor: u32,
        expected: usize,
        got: usize,
    },
}

/// Per-conductor tables: the cyclotomic polynomial and the reduced form of
/// every power `ζ^k`, `0 <= k < N`.
#[derive(Debug)]
struct CycloTable {
    phi: usize,
    /// Monic cyclotomic polynomial, low degree first, length `phi + 1`.
    poly: Vec<i64>,
    /// `powers[k]` = coordinates of `ζ^k` in the power basis.
    powers: Vec<Vec<i64>>,
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both monic, integer; exact division.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Φ_d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_poly(d, cache);
            p = poly_divexact(&p, &q);
        }
    }
    cache.insert(n, p.clone());
    p
}

impl CycloTable {
    fn build(n: u32) -> CycloTable {
        let mut cache = HashMap::new();
        let poly = cyclotomic_poly(n, &mut cache);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            if top != 0 {
                for (j, nj) in next.iter_mut().enumerate() {
                    *nj -= top * poly[j];
                }
            }
            cur = next;
        }
        CycloTable { phi, poly, powers }
    }
}

fn table(n: u32) -> Arc<CycloTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let lock = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = lock.lock().expect("cyclotomic table cache poisoned");
    map.entry(n)
        .or_insert_with(|| Arc::new(CycloTable::build(n)))
        .clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    table(n).phi
}

/// Exact element of `Q(ζ_N)` with `ζ_N = exp(2πi/N)`.
#[derive(Clone)]
pub struct Cyc {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyc {
    fn from_parts(n: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Cyc {
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        if num.iter().all(|x| x.is_zero()) {
            return Cyc {
                n,
                num,
                den: BigInt::one(),
            };
        }
        if !den.is_one() {
            let mut g = den.clone();
            for x in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(x);
            }
            if !g.is_one() {
                for x in num.iter_mut() {
                    *x = &*x / &g;
                }
                den /= g;
            }
        }
        Cyc { n, num, den }
    }

    /// Reduce an accumulator indexed by exponent mod `n`.
    fn from_exponents(n: u32, acc: Vec<BigInt>, den: BigInt) -> Cyc {
        let t = table(n);
        let mut num = vec![BigInt::zero(); t.phi];
        for (k, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < t.phi {
                num[k] += c;
            } else {
                for (j, &p) in t.powers[k].iter().enumerate() {
                    if p != 0 {
                        num[j] += &c * p;
                    }
                }
            }
        }
        Cyc::from_parts(n, num, den)
    }

    pub fn zero() -> Cyc {
        Cyc::from_int(0)
    }

    pub fn one() -> Cyc {
        Cyc::from_int(1)
    }

    pub fn from_int(v: i64) -> Cyc {
        Cyc {
            n: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &Rational) -> Cyc {
        Cyc::from_parts(1, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_frac(p: i64, q: i64) -> Cyc {
        Cyc::from_rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `ζ_N^k` at conductor `N`.
    pub fn root_of_unity(n: u32, k: i64) -> Cyc {
        assert!(n >= 1, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut acc = vec![BigInt::zero(); n as usize];
        acc[e] = BigInt::one();
        Cyc::from_exponents(n, acc, BigInt::one())
    }

    /// Build from power-basis rationals at conductor `n`.
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Result<Cyc, ExactError> {
        if n == 0 {
            return Err(ExactError::ZeroConductor);
        }
        if n > MAX_CONDUCTOR {
            return Err(ExactError::ConductorTooLarge(n));
        }
        let phi = euler_phi(n);
        if coeffs.len() != phi {
            return Err(ExactError::BadLength {
                conductor: n,
                expected: phi,
                got: coeffs.len(),
            });
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Cyc::from_parts(n, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coordinates as reduced rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|x| Rational::new(x.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|x| x.is_zero())
    }

    /// `Some(q)` when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|x| x.is_zero()) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// `Some(k)` when the element is an ordinary integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Lift to conductor `m`, which must be a multiple of the current one.
    pub fn lift(&self, m: u32) -> Cyc {
        assert!(
            m.is_multiple_of(self.n),
            "cannot lift conductor {} to {}",
            self.n,
            m
        );
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut acc = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc[(i * step) % m as usize] += c;
            }
        }
        Cyc::from_exponents(m, acc, self.den.clone())
    }

    fn common(a: &Cyc, b: &Cyc) -> (Cyc, Cyc) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = (a.n as u64).lcm(&(b.n as u64)) as u32;
            (a.lift(m), b.lift(m))
        }
    }

    fn add_same(a: &Cyc, b: &Cyc, negate_b: bool) -> Cyc {
        debug_assert_eq!(a.n, b.n);
        if a.den == b.den {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate_b { x - y } else { x + y })
                .collect();
            return Cyc::from_parts(a.n, num, a.den.clone());
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if negate_b {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Cyc::from_parts(a.n, num, &a.den * &b.den)
    }

    fn mul_same(a: &Cyc, b: &Cyc) -> Cyc {
        debug_assert_eq!(a.n, b.n);
        let n = a.n as usize;
        let mut acc = vec![BigInt::zero(); n];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % n] += x * y;
            }
        }
        Cyc::from_exponents(a.n, acc, &a.den * &b.den)
    }

    fn scalar_mul(&self, q: &Rational) -> Cyc {
        let num = self.num.iter().map(|x| x * q.numer()).collect();
        Cyc::from_parts(self.n, num, &self.den * q.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Result<Cyc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyc::from_rational(&q.recip()).lift(self.n));
        }
        let t = table(self.n);
        let modulus: Vec<Rational> = t
            .poly
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<Rational> = self.coeffs();
        let s = poly_inverse_mod(&a, &modulus);
        Cyc::from_coeffs(self.n, &s)
    }

    pub fn checked_div(&self, other: &Cyc) -> Result<Cyc, ExactError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Cyc, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyc::one().lift(self.n);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Image under `ζ_N ↦ ζ_N^{-1}` (complex conjugation for the fixed embedding).
    pub fn conj(&self) -> Cyc {
        let n = self.n as usize;
        let mut acc = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc[(n - i) % n] += c;
            }
        }
        Cyc::from_exponents(self.n, acc, self.den.clone())
    }

    /// Image under the Galois automorphism `ζ_N ↦ ζ_N^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Cyc {
        let n = self.n as usize;
        let k = k.rem_euclid(n as i64) as usize;
        assert_eq!(k.gcd(&n), 1, "exponent must be a unit mod N");
        let mut acc = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc[(i * k) % n] += c;
            }
        }
        Cyc::from_exponents(self.n, acc, self.den.clone())
    }

    /// Numerical value under `ζ_N = exp(2πi/N)`.
    pub fn embed(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / (self.n as f64);
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Textual record `{"N": .., "c": [..]}`.
    pub fn to_json(&self) -> CycJson {
        CycJson {
            n: self.n,
            c: self.coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(j: &CycJson) -> Result<Cyc, ExactError> {
        let coeffs =
            j.c.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
        Cyc::from_coeffs(j.n, &coeffs)
    }
}

/// Serialized form of a [`Cyc`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycJson {
    #[serde(rename = "N")]
    pub n: u32,
    pub c: Vec<String>,
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRational(s.to_string());
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(p, true) || !valid(q, false) {
        return Err(bad());
    }
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn poly_trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub_scaled_shift(a: &mut [Rational], b: &[Rational], c: &Rational, shift: usize) {
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            a[i + shift] -= c * bi;
        }
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            poly_sub_scaled_shift(&mut rem, b, &c, i);
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    poly_trim(&mut rem);
    (quot, rem)
}

/// Inverse of `a` modulo the irreducible `m` (extended Euclid).
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let deg = m.len() - 1;
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r1);
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let mut s2 = vec![Rational::zero(); s0.len().max(qs.len())];
        for (i, v) in s0.iter().enumerate() {
            s2[i] += v;
        }
        for (i, v) in qs.iter().enumerate() {
            s2[i] -= v;
        }
        poly_trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant
    let c = r0[0].clone();
    let (_, mut s) = poly_divmod(&s0, m);
    for x in s.iter_mut() {
        *x = &*x / &c;
    }
    s.resize(deg, Rational::zero());
    s
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Cyc) -> bool {
        if self.n == other.n {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Cyc::common(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for Cyc {}

impl Default for Cyc {
    fn default() -> Cyc {
        Cyc::zero()
    }
}

impl From<i64> for Cyc {
    fn from(v: i64) -> Cyc {
        Cyc::from_int(v)
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.n == rhs.n {
            Cyc::add_same(self, rhs, false)
        } else {
            let (a, b) = Cyc::common(self, rhs);
            Cyc::add_same(&a, &b, false)
        }
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.n == rhs.n {
            Cyc::add_same(self, rhs, true)
        } else {
            let (a, b) = Cyc::common(self, rhs);
            Cyc::add_same(&a, &b, true)
        }
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        if self.is_zero() || rhs.is_zero() {
            let n = if self.n == rhs.n {
                self.n
            } else {
                (self.n as u64).lcm(&(rhs.n as u64)) as u32
            };
            return Cyc::zero().lift(n);
        }
        if let Some(q) = rhs.as_rational() {
            let out = self.scalar_mul(&q);
            return if self.n.is_multiple_of(rhs.n) {
                out
            } else {
                out.lift((self.n as u64).lcm(&(rhs.n as u64)) as u32)
            };
        }
        if let Some(q) = self.as_rational() {
            let out = rhs.scalar_mul(&q);
            return if rhs.n.is_multiple_of(self.n) {
                out
            } else {
                out.lift((self.n as u64).lcm(&(rhs.n as u64)) as u32)
            };
        }
        if self.n == rhs.n {
            Cyc::mul_same(self, rhs)
        } else {
            let (a, b) = Cyc::common(self, rhs);
            Cyc::mul_same(&a, &b)
        }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            n: self.n,
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyc> for &'a Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl AddAssign<&Cyc> for Cyc {
    fn add_assign(&mut self, rhs: &Cyc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyc> for Cyc {
    fn sub_assign(&mut self, rhs: &Cyc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyc> for Cyc {
    fn mul_assign(&mut self, rhs: &Cyc) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in self.coeffs().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", format_rational(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_rational(&a))?;
                }
                if i == 1 {
                    write!(f, "z{}", self.n)?;
                } else {
                    write!(f, "z{}^{}", self.n, i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.n, self)
    }
}

/// `√5 = 1 + 2(ζ_5 + ζ_5^4)` at conductor 5.
pub fn sqrt5() -> Cyc {
    let z = Cyc::root_of_unity(5, 1);
    let z4 = Cyc::root_of_unity(5, 4);
    Cyc::one() + Cyc::from_int(2) * (z + z4)
}

/// `√2 = ζ_8 + ζ_8^{-1}` at conductor 8.
pub fn sqrt2() -> Cyc {
    Cyc::root_of_unity(8, 1) + Cyc::root_of_unity(8, -1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_basics() {
        assert!(Cyc::root_of_unity(1, 0).is_one());
        assert_eq!(Cyc::root_of_unity(4, 2), Cyc::from_int(-1));
        let s = (0..5).fold(Cyc::zero(), |acc, k| acc + Cyc::root_of_unity(5, k));
        assert!(s.is_zero());
    }

    #[test]
    fn field_ops() {
        let z8 = Cyc::root_of_unity(8, 1);
        let z87 = Cyc::root_of_unity(8, 7);
        assert!((&z8 * &z87).is_one());
        let z3 = Cyc::root_of_unity(3, 1);
        assert_eq!(&z3 + &(&z3 * &z3), Cyc::from_int(-1));
        let i = Cyc::root_of_unity(4, 1);
        let half = Cyc::from_frac(1, 2);
        let a = &half + &(&i * &half);
        let b = &half - &(&i * &half);
        assert_eq!(&a * &b, half);
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(
            Cyc::one().checked_div(&Cyc::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(Cyc::root_of_unity(3, 1).conj(), Cyc::root_of_unity(3, 2));
        let q = Cyc::from_frac(7, 3);
        assert_eq!(q.conj(), q);
        let a = Cyc::root_of_unity(8, 1) + Cyc::from_int(2);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn embedding_examples() {
        let (re, im) = Cyc::root_of_unity(6, 1).embed();
        assert!((re - 0.5).abs() < 1e-15 && (im - 0.8660254037844386).abs() < 1e-15);
        assert_eq!(Cyc::from_int(-1).embed(), (-1.0, 0.0));
        let g = Cyc::root_of_unity(5, 1) + Cyc::root_of_unity(5, 4);
        let (re, im) = g.embed();
        // golden-ratio identity: 2cos(72°) = (√5 - 1)/2
        let oracle = (5f64.sqrt() - 1.0) / 2.0;
        assert!((re - oracle).abs() < 1e-12 && im.abs() < 1e-12);
        assert!((re - 0.6180339887498949).abs() < 1e-12);
    }

    #[test]
    fn square_roots() {
        assert_eq!(&sqrt5() * &sqrt5(), Cyc::from_int(5));
        assert_eq!(&sqrt2() * &sqrt2(), Cyc::from_int(2));
    }

    #[test]
    fn inverse_in_extension() {
        let a = Cyc::root_of_unity(7, 1) + Cyc::from_int(3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn mixed_conductor_coercion() {
        let a = Cyc::root_of_unity(3, 1);
        let b = Cyc::root_of_unity(4, 1);
        let p = &a * &b;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, Cyc::root_of_unity(12, 7));
        assert_eq!(Cyc::root_of_unity(6, 2), Cyc::root_of_unity(3, 1));
    }

    #[test]
    fn json_encoding() {
        let a = Cyc::from_frac(1, 2) + Cyc::root_of_unity(5, 2);
        let j = a.to_json();
        assert_eq!(j.n, 5);
        assert_eq!(Cyc::from_json(&j).unwrap(), a);
        assert!(parse_rational("3/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
    }
}
