use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::field::Rational;
use crate::{Error, Result};

/// Largest `r` with `p^r < 2^63`.
pub fn max_relative_precision(p: u64) -> i64 {
    let mut r = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(p) {
        if next >= 1 << 63 {
            break;
        }
        acc = next;
        r += 1;
    }
    r
}

pub(crate) fn pow_u64(p: u64, e: i64) -> u64 {
    debug_assert!(e >= 0);
    p.pow(e as u32)
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "unit expected");
    t0.rem_euclid(m as i128) as u64
}

/// `v_p(n)` for `n ≠ 0`.
fn val_u64(mut n: u64, p: u64) -> i64 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn val_big(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(r)`, `None` for zero.
pub fn valuation(r: &Rational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(val_big(r.numer(), p).0 - val_big(r.denom(), p).0)
}

/// A p-adic number `p^val · unit` known modulo `p^prec`.
///
/// Precision is absolute and may be negative only through valuation, e.g.
/// `4/105` in `Q_3` has valuation `-1`. Zero to precision `prec` is stored
/// as `val = prec`, `unit = 0`. Arithmetic tracks precision:
///
/// * add/sub: `min(prec_a, prec_b)`
/// * mul: `min(val_a + prec_b, val_b + prec_a)`
/// * div: `min(val_a + prec_b - 2 val_b, prec_a - val_b)`
///
/// Residues are `u64`; constructors reject relative precisions with
/// `p^r ≥ 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
    val: i64,
    unit: u64,
    prec: i64,
}

impl Padic {
    pub fn zero(p: u64, prec: i64) -> Self {
        Padic { p, val: prec, unit: 0, prec }
    }

    /// Builds from `p^val · raw` with `raw` known modulo `p^{prec - val}`;
    /// `raw` may carry further factors of `p`.
    fn normalized(p: u64, val: i64, raw: u64, prec: i64) -> Self {
        let rel = prec - val;
        if rel <= 0 || raw == 0 {
            return Self::zero(p, prec);
        }
        let raw = raw % pow_u64(p, rel);
        if raw == 0 {
            return Self::zero(p, prec);
        }
        let t = val_u64(raw, p);
        if t >= rel {
            return Self::zero(p, prec);
        }
        Padic {
            p,
            val: val + t,
            unit: raw / pow_u64(p, t),
            prec,
        }
    }

    fn check_modulus(p: u64, rel: i64) -> Result<()> {
        if rel > max_relative_precision(p) {
            return Err(Error::ModulusTooLarge { p, k: rel });
        }
        Ok(())
    }

    /// The integer `r` modulo `p^prec`.
    pub fn from_residue(p: u64, r: u64, prec: i64) -> Result<Self> {
        Self::check_modulus(p, prec)?;
        Ok(Self::normalized(p, 0, r, prec))
    }

    pub fn from_int(p: u64, n: i64, prec: i64) -> Result<Self> {
        Self::from_rational(p, &Rational::from_integer(BigInt::from(n)), prec)
    }

    pub fn from_rational(p: u64, r: &Rational, prec: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("{p} is not a prime")));
        }
        if r.is_zero() {
            return Ok(Self::zero(p, prec));
        }
        let (a, num) = val_big(r.numer(), p);
        let (b, den) = val_big(r.denom(), p);
        let val = a - b;
        let rel = prec - val;
        if rel <= 0 {
            return Ok(Self::zero(p, prec));
        }
        Self::check_modulus(p, rel)?;
        let m = pow_u64(p, rel);
        let mb = BigInt::from(m);
        let n = num.mod_floor(&mb).to_u64().unwrap();
        let d = den.mod_floor(&mb).to_u64().unwrap();
        Ok(Padic {
            p,
            val,
            unit: mulmod(n, invmod(d, m), m),
            prec,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    /// `None` when zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn relative_precision(&self) -> i64 {
        self.prec - self.val
    }

    /// Representative in `[0, p^prec)`; requires a p-integral value.
    pub fn residue(&self) -> Result<u64> {
        if self.val < 0 {
            return Err(Error::InvalidParameter(format!(
                "valuation {} is negative, no integer residue",
                self.val
            )));
        }
        if self.prec <= 0 {
            return Ok(0);
        }
        Self::check_modulus(self.p, self.prec)?;
        if self.is_zero() {
            return Ok(0);
        }
        Ok(pow_u64(self.p, self.val) * self.unit)
    }

    /// Forgets digits beyond `prec`; never raises precision.
    pub fn with_precision(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return *self;
        }
        Self::normalized(self.p, self.val, self.unit, prec)
    }

    /// `min(v_p(self - r), prec)`: the number of digits on which `self`
    /// agrees with the exact value `r`.
    pub fn agreement(&self, r: &Rational) -> Result<i64> {
        let exact = Self::from_rational(self.p, r, self.prec)?;
        let diff = self.try_sub(&exact)?;
        Ok(diff.valuation().unwrap_or(diff.prec).min(self.prec))
    }

    /// As [`Padic::agreement`] between two approximations.
    pub fn agreement_with(&self, other: &Padic) -> Result<i64> {
        let diff = self.try_sub(other)?;
        Ok(diff.valuation().unwrap_or(diff.prec))
    }

    fn same_prime(&self, rhs: &Padic) -> Result<()> {
        if self.p != rhs.p {
            return Err(Error::PrimeMismatch(self.p, rhs.p));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Padic) -> Result<Padic> {
        self.same_prime(rhs)?;
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() {
            return Ok(rhs.with_precision(prec));
        }
        if rhs.is_zero() {
            return Ok(self.with_precision(prec));
        }
        let m = self.val.min(rhs.val);
        let rel = prec - m;
        if rel <= 0 {
            return Ok(Self::zero(self.p, prec));
        }
        let modulus = pow_u64(self.p, rel);
        let lift = |x: &Padic| {
            let s = x.val - m;
            if s >= rel {
                0
            } else {
                mulmod(x.unit % modulus, pow_u64(x.p, s), modulus)
            }
        };
        let sum = (lift(self) as u128 + lift(rhs) as u128) % modulus as u128;
        Ok(Self::normalized(self.p, m, sum as u64, prec))
    }

    pub fn try_sub(&self, rhs: &Padic) -> Result<Padic> {
        self.try_add(&-*rhs)
    }

    pub fn try_mul(&self, rhs: &Padic) -> Result<Padic> {
        self.same_prime(rhs)?;
        let prec = (self.val + rhs.prec).min(rhs.val + self.prec);
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.p, prec));
        }
        let val = self.val + rhs.val;
        let modulus = pow_u64(self.p, prec - val);
        let unit = mulmod(self.unit % modulus, rhs.unit % modulus, modulus);
        Ok(Self::normalized(self.p, val, unit, prec))
    }

    pub fn try_div(&self, rhs: &Padic) -> Result<Padic> {
        self.same_prime(rhs)?;
        if rhs.is_zero() {
            return Err(Error::PrecisionExhausted);
        }
        let prec = (self.val + rhs.prec - 2 * rhs.val).min(self.prec - rhs.val);
        if self.is_zero() {
            return Ok(Self::zero(self.p, prec));
        }
        let val = self.val - rhs.val;
        let rel = prec - val;
        if rel <= 0 {
            return Ok(Self::zero(self.p, prec));
        }
        let modulus = pow_u64(self.p, rel);
        let unit = mulmod(self.unit % modulus, invmod(rhs.unit % modulus, modulus), modulus);
        Ok(Self::normalized(self.p, val, unit, prec))
    }

    /// Exact division by a nonzero integer.
    pub fn div_int(&self, k: u64) -> Padic {
        assert!(k > 0);
        let t = val_u64(k, self.p);
        let rest = k / pow_u64(self.p, t);
        if self.is_zero() {
            return Self::zero(self.p, self.prec - t);
        }
        let modulus = pow_u64(self.p, self.prec - self.val);
        let unit = mulmod(self.unit, invmod(rest % modulus, modulus), modulus);
        Self::normalized(self.p, self.val - t, unit, self.prec - t)
    }

    /// `self^e`; `self^0` is `1` at the relative precision of `self`.
    pub fn pow(&self, e: u32) -> Padic {
        if e == 0 {
            return Self::normalized(self.p, 0, 1, self.relative_precision());
        }
        let mut acc = *self;
        for _ in 1..e {
            acc = acc * *self;
        }
        acc
    }
}

impl Add for Padic {
    type Output = Padic;
    /// Panics on mixed primes; see [`Padic::try_add`].
    fn add(self, rhs: Padic) -> Padic {
        self.try_add(&rhs).expect("prime mismatch")
    }
}

impl Sub for Padic {
    type Output = Padic;
    fn sub(self, rhs: Padic) -> Padic {
        self.try_sub(&rhs).expect("prime mismatch")
    }
}

impl Mul for Padic {
    type Output = Padic;
    fn mul(self, rhs: Padic) -> Padic {
        self.try_mul(&rhs).expect("prime mismatch")
    }
}

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        if self.is_zero() {
            return self;
        }
        let modulus = pow_u64(self.p, self.prec - self.val);
        Padic {
            unit: modulus - self.unit % modulus,
            ..self
        }
    }
}

/// `residue + O(p^prec)`, or `unit/p^k + O(p^prec)` for negative valuation.
impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.val < 0 && !self.is_zero() {
            write!(f, "{}/{}^{} + O({}^{})", self.unit, self.p, -self.val, self.p, self.prec)
        } else {
            let r = BigInt::from(self.p).pow(self.val.max(0) as u32) * self.unit;
            write!(f, "{} + O({}^{})", r, self.p, self.prec)
        }
    }
}

/// Largest `t` with `p^t ≤ k`.
fn ilog(k: u64, p: u64) -> i64 {
    let mut t = 0;
    let mut acc = p;
    while acc <= k {
        t += 1;
        match acc.checked_mul(p) {
            Some(a) => acc = a,
            None => break,
        }
    }
    t
}

/// Iwasawa logarithm `Σ_{k≥1} (-1)^{k+1} (u-1)^k / k` for `u ≡ 1 (mod p)`,
/// `p` odd.
///
/// With `v = v_p(u - 1) ≥ 1` the `k`-th term is known to precision
/// `K + (k-1)v - v_p(k) ≥ K`, so the result keeps the input precision `K`.
/// Summation stops once `k v - ⌊log_p k⌋ ≥ K`, a lower bound for every
/// remaining term's valuation.
pub fn padic_log(u: &Padic) -> Result<Padic> {
    let p = u.p;
    if p == 2 {
        return Err(Error::InvalidParameter("logarithm implemented for odd p".into()));
    }
    if u.is_zero() || u.val != 0 || u.unit % p != 1 % p {
        return Err(Error::LogDomain);
    }
    let prec = u.prec;
    let x = *u - Padic::normalized(p, 0, 1, prec + 1);
    let Some(v) = x.valuation() else {
        return Ok(Padic::zero(p, prec));
    };
    let mut acc = Padic::zero(p, prec);
    let mut xk = x;
    let mut k: u64 = 1;
    while (k as i64) * v - ilog(k, p) < prec {
        let term = xk.div_int(k);
        acc = if k % 2 == 1 { acc + term } else { acc - term };
        xk = xk * x;
        k += 1;
    }
    Ok(acc.with_precision(prec))
}

/// `Σ_{k≥0} x^k / k!` for `v_p(x) ≥ 1`, `p` odd.
pub fn padic_exp(x: &Padic) -> Result<Padic> {
    let p = x.p;
    if p == 2 {
        return Err(Error::InvalidParameter("exponential implemented for odd p".into()));
    }
    let prec = x.prec;
    let one = Padic::normalized(p, 0, 1, prec);
    let Some(v) = x.valuation() else {
        return Ok(one);
    };
    if v < 1 {
        return Err(Error::ExpDomain);
    }
    let mut acc = one;
    let mut term = one;
    let mut k: u64 = 1;
    // v_p(k!) ≤ (k-1)/(p-1)
    while (k as i64) * v - ((k as i64 - 1) / (p as i64 - 1)) < prec {
        term = (term * *x).div_int(k);
        acc = acc + term;
        k += 1;
    }
    Ok(acc)
}

/// Residue of a p-integral rational modulo `p^prec`.
pub(crate) fn residue_of(r: &Rational, p: u64, prec: i64) -> Result<u64> {
    Padic::from_rational(p, r, prec)?.residue()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rational};

    fn z(r: u64, k: i64) -> Padic {
        Padic::from_residue(3, r, k).unwrap()
    }

    #[test]
    fn residue_arithmetic() {
        assert_eq!((z(2, 4) + z(1, 4)).residue().unwrap(), 3);
        let q = z(1, 4).try_div(&z(5, 4)).unwrap();
        assert_eq!((q.residue().unwrap(), q.precision()), (65, 4));
        let q = z(3, 4).try_div(&z(3, 4)).unwrap();
        assert_eq!((q.residue().unwrap(), q.precision()), (1, 3));
        let m = Padic::from_rational(3, &rational(-1, 5), 4).unwrap();
        assert_eq!(m.residue().unwrap(), 16);
    }

    #[test]
    fn precision_rules() {
        let a = Padic::from_rational(3, &rational(9, 2), 6).unwrap();
        let b = Padic::from_rational(3, &rational(1, 3), 4).unwrap();
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(b.valuation(), Some(-1));
        assert_eq!((a + b).precision(), 4);
        assert_eq!((a * b).precision(), 5);
        let q = a.try_div(&b).unwrap();
        assert_eq!(q.precision(), 6 + 1);
        assert_eq!(q.agreement(&rational(27, 2)).unwrap(), q.precision());
        assert!(z(0, 4).try_div(&z(0, 4)).is_err());
        let other = Padic::from_residue(5, 1, 3).unwrap();
        assert!(matches!(z(1, 4).try_add(&other), Err(Error::PrimeMismatch(3, 5))));
        assert!(Padic::from_residue(3, 1, 40).is_err());
    }

    #[test]
    fn negative_valuation_roundtrip() {
        let r = rational(4, 105);
        let x = Padic::from_rational(3, &r, 8).unwrap();
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.agreement(&r).unwrap(), 8);
        assert!(x.residue().is_err());
    }

    #[test]
    fn logarithm() {
        assert!(padic_log(&z(1, 4)).unwrap().is_zero());
        assert_eq!(padic_log(&z(4, 3)).unwrap().residue().unwrap(), 21);
        assert!(matches!(padic_log(&z(2, 4)), Err(Error::LogDomain)));
        // log(ab) = log a + log b
        let a = z(4, 10);
        let b = z(7, 10);
        let lhs = padic_log(&(a * b)).unwrap();
        let rhs = padic_log(&a).unwrap() + padic_log(&b).unwrap();
        assert_eq!(lhs.agreement_with(&rhs).unwrap(), 10);
    }

    #[test]
    fn exp_log_roundtrip() {
        for t in 0..40u64 {
            let u = z(1 + 3 * t, 12);
            let back = padic_exp(&padic_log(&u).unwrap()).unwrap();
            assert!(back.agreement_with(&u).unwrap() >= back.precision().min(12));
            assert!(back.precision() >= 10);
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rational(4, 105), 3), Some(-1));
        assert_eq!(valuation(&int(0), 3), None);
        assert_eq!(valuation(&int(162), 3), Some(4));
    }
}
