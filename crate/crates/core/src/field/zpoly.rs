//! Dense univariate polynomials over the integers.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Polynomial in `q` with integer coefficients, stored by ascending exponent.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty vector and `degree()` is the index of the last entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Gcd of the coefficients (non-negative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits `self = c * p` with `p` primitive and `lc(p) > 0`. The zero
    /// polynomial splits as `0 * 0`.
    pub fn primitive_split(&self) -> (BigInt, ZPoly) {
        let Some(lc) = self.leading() else {
            return (BigInt::zero(), ZPoly::zero());
        };
        let mut c = self.content();
        if lc.is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let coeffs = self.coeffs.iter().map(|x| x / &c).collect();
        (c, ZPoly { coeffs })
    }

    pub fn primitive_part(&self) -> ZPoly {
        self.primitive_split().1
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> ZPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> ZPoly {
        let mut base = self.clone();
        let mut acc = ZPoly::one();
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

    /// `p(q^d)`.
    pub fn substitute_power(&self, d: usize) -> ZPoly {
        assert!(d >= 1, "substitution exponent must be positive");
        if d == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        ZPoly { coeffs }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Residues modulo a word-sized prime, trimmed.
    pub(crate) fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[q]`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        if let (Some(a), Some(b)) = (to_i64_vec(&self.coeffs), to_i64_vec(&d.coeffs)) {
            if let Some(res) = div_exact_small(&a, &b) {
                return res.map(|q| ZPoly::from_coeffs(q.into_iter().map(BigInt::from).collect()));
            }
        }
        let lc = d.leading().unwrap();
        let lc_is_unit = lc.is_one() || (-lc).is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let c = if lc_is_unit {
                if lc.is_one() {
                    top
                } else {
                    -top
                }
            } else {
                let (c, r) = top.div_rem(lc);
                if !r.is_zero() {
                    return None;
                }
                c
            };
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(quot))
    }
}

fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|c| c.to_i64()).collect()
}

/// Exact division on machine words. Returns `None` when intermediate values
/// leave the `i128` range so the caller can retry with big integers, and
/// `Some(None)` when the division is not exact.
fn div_exact_small(a: &[i64], d: &[i64]) -> Option<Option<Vec<i128>>> {
    let dd = d.len() - 1;
    let n = a.len() - 1;
    let lc = d[dd] as i128;
    let mut rem: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut quot = vec![0i128; n - dd + 1];
    const LIMIT: i128 = 1 << 100;
    for i in (0..=n - dd).rev() {
        let top = rem[i + dd];
        rem[i + dd] = 0;
        if top == 0 {
            continue;
        }
        if top % lc != 0 {
            return Some(None);
        }
        let c = top / lc;
        if c.abs() > (1 << 60) {
            return None;
        }
        for j in 0..dd {
            if d[j] != 0 {
                let v = rem[i + j] - c * d[j] as i128;
                if v.abs() > LIMIT {
                    return None;
                }
                rem[i + j] = v;
            }
        }
        quot[i] = c;
    }
    if rem.iter().any(|&c| c != 0) {
        return Some(None);
    }
    Some(Some(quot))
}

fn bits_i64(x: i64) -> u32 {
    64 - x.unsigned_abs().leading_zeros()
}

fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if let (Some(sa), Some(sb)) = (to_i64_vec(a), to_i64_vec(b)) {
        let ba = sa.iter().map(|&x| bits_i64(x)).max().unwrap_or(0);
        let bb = sb.iter().map(|&x| bits_i64(x)).max().unwrap_or(0);
        let terms = a.len().min(b.len()) as u64;
        let bt = 64 - terms.leading_zeros();
        if ba + bb + bt < 126 {
            let mut out = vec![0i128; a.len() + b.len() - 1];
            for (i, &x) in sa.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = x as i128;
                for (o, &y) in out[i..].iter_mut().zip(sb.iter()) {
                    *o += x * y as i128;
                }
            }
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.sign() != Sign::NoSign {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ZPoly {
    type Output = ZPoly;
    fn add(mut self, rhs: ZPoly) -> ZPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&ZPoly> for ZPoly {
    fn add_assign(&mut self, rhs: &ZPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&ZPoly> for ZPoly {
    fn sub_assign(&mut self, rhs: &ZPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ZPoly {
    type Output = ZPoly;
    fn sub(mut self, rhs: ZPoly) -> ZPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        -&self
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        ZPoly::from_coeffs(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl Mul for ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: ZPoly) -> ZPoly {
        &self * &rhs
    }
}
