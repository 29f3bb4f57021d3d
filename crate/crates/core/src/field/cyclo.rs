//! Fractions whose denominators are products of cyclotomic polynomials.
//!
//! Every denominator produced by the q-Bernoulli families factors into
//! `Φ_k(q)`: `q^d - 1 = ∏_{k | d} Φ_k` and
//! `[m]_{q^d} = ∏_{k | md, k ∤ d} Φ_k`. Keeping the denominator as an
//! exponent vector turns lcm into a componentwise max, and canonical
//! reduction into trial division by each irreducible `Φ_k`, with no general
//! polynomial gcd.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{RatFunc, Rational, ZPoly};

/// The cyclotomic polynomial `Φ_k`, cached.
pub fn cyclotomic(k: u32) -> ZPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<RwLock<HashMap<u32, ZPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&k) {
        return p.clone();
    }
    // Φ_k = (q^k - 1) / ∏_{d | k, d < k} Φ_d
    let mut p = &ZPoly::q_pow(k as usize) - &ZPoly::one();
    for d in divisors(k) {
        if d < k {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic division is exact");
        }
    }
    cache.write().unwrap().insert(k, p.clone());
    p
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `num / ∏ Φ_k^{exps[k]}`; not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloFrac {
    num: ZPoly,
    exps: Vec<u32>,
}

impl CycloFrac {
    pub fn zero() -> Self {
        CycloFrac {
            num: ZPoly::zero(),
            exps: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ZPoly::one())
    }

    pub fn from_poly(num: ZPoly) -> Self {
        CycloFrac {
            num,
            exps: Vec::new(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(ZPoly::constant(BigInt::from(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    fn exp(&self, k: usize) -> u32 {
        self.exps.get(k).copied().unwrap_or(0)
    }

    fn bump(&mut self, k: u32, by: u32) {
        let k = k as usize;
        if self.exps.len() <= k {
            self.exps.resize(k + 1, 0);
        }
        self.exps[k] += by;
    }

    /// Divides by `Φ_k^e`.
    pub fn div_cyclotomic(mut self, k: u32, e: u32) -> Self {
        if e > 0 && !self.is_zero() {
            self.bump(k, e);
        }
        self
    }

    /// Divides by `(q^d - 1)^e`.
    pub fn div_q_pow_minus_one(mut self, d: u32, e: u32) -> Self {
        if e == 0 || self.is_zero() {
            return self;
        }
        for k in divisors(d) {
            self.bump(k, e);
        }
        self
    }

    /// Divides by `(1 - q^d)^e`.
    pub fn div_one_minus_q_pow(self, d: u32, e: u32) -> Self {
        let out = self.div_q_pow_minus_one(d, e);
        if e % 2 == 1 {
            -out
        } else {
            out
        }
    }

    /// Divides by the q-integer `[m]_{q^d}`, `m ≥ 1`.
    pub fn div_q_int(mut self, m: u32, d: u32) -> Self {
        assert!(m >= 1, "[0] is not invertible");
        if self.is_zero() {
            return self;
        }
        for k in divisors(m * d) {
            if !d.is_multiple_of(k) {
                self.bump(k, 1);
            }
        }
        self
    }

    pub fn mul_poly(&self, p: &ZPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        CycloFrac {
            num: &self.num * p,
            exps: self.exps.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CycloFrac {
            num: self.num.scale(c),
            exps: self.exps.clone(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        CycloFrac {
            num: self.num.shift(k),
            exps: self.exps.clone(),
        }
    }

    /// `∏ Φ_k^{e_k}` for the given exponent vector.
    fn cyclotomic_product(exps: &[u32]) -> ZPoly {
        let mut acc = ZPoly::one();
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = &acc * &cyclotomic(k as u32).pow(e);
            }
        }
        acc
    }

    /// Cancels every `Φ_k` dividing the numerator.
    pub fn reduced(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut exps = self.exps.clone();
        for (k, e) in exps.iter_mut().enumerate() {
            while *e > 0 {
                match num.div_exact(&cyclotomic(k as u32)) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        while exps.last() == Some(&0) {
            exps.pop();
        }
        CycloFrac { num, exps }
    }

    /// Canonical [`RatFunc`]. Cyclotomic polynomials are monic and
    /// irreducible, so after [`CycloFrac::reduced`] the pair is coprime and
    /// the denominator is already primitive.
    pub fn to_ratfunc(&self) -> RatFunc {
        let r = self.reduced();
        if r.is_zero() {
            return RatFunc::zero();
        }
        let (c, num) = r.num.primitive_split();
        let den = Self::cyclotomic_product(&r.exps);
        RatFunc::from_coprime_parts(Rational::from_integer(c), num, den)
    }

    /// Exact value at an integer or rational point away from roots of unity.
    pub fn eval(&self, q0: &Rational) -> Option<Rational> {
        let mut den = Rational::one();
        for (k, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                let v = cyclotomic(k as u32).eval(q0);
                if v.is_zero() {
                    return None;
                }
                den *= num_traits::pow(v, e as usize);
            }
        }
        Some(self.num.eval(q0) / den)
    }

    fn add_impl(&self, rhs: &CycloFrac) -> CycloFrac {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let n = self.exps.len().max(rhs.exps.len());
        let mut exps = vec![0; n];
        let mut lift_a = vec![0; n];
        let mut lift_b = vec![0; n];
        for k in 0..n {
            let (a, b) = (self.exp(k), rhs.exp(k));
            exps[k] = a.max(b);
            lift_a[k] = exps[k] - a;
            lift_b[k] = exps[k] - b;
        }
        let lhs_num = if lift_a.iter().all(|&e| e == 0) {
            self.num.clone()
        } else {
            &self.num * &Self::cyclotomic_product(&lift_a)
        };
        let rhs_num = if lift_b.iter().all(|&e| e == 0) {
            rhs.num.clone()
        } else {
            &rhs.num * &Self::cyclotomic_product(&lift_b)
        };
        let num = lhs_num + rhs_num;
        if num.is_zero() {
            return Self::zero();
        }
        CycloFrac { num, exps }
    }
}

impl Add for &CycloFrac {
    type Output = CycloFrac;
    fn add(self, rhs: &CycloFrac) -> CycloFrac {
        self.add_impl(rhs)
    }
}

impl Add for CycloFrac {
    type Output = CycloFrac;
    fn add(self, rhs: CycloFrac) -> CycloFrac {
        self.add_impl(&rhs)
    }
}

impl Neg for CycloFrac {
    type Output = CycloFrac;
    fn neg(self) -> CycloFrac {
        CycloFrac {
            num: -self.num,
            exps: self.exps,
        }
    }
}

impl Mul for &CycloFrac {
    type Output = CycloFrac;
    fn mul(self, rhs: &CycloFrac) -> CycloFrac {
        if self.is_zero() || rhs.is_zero() {
            return CycloFrac::zero();
        }
        let n = self.exps.len().max(rhs.exps.len());
        let exps = (0..n).map(|k| self.exp(k) + rhs.exp(k)).collect();
        CycloFrac {
            num: &self.num * &rhs.num,
            exps,
        }
    }
}

impl Mul for CycloFrac {
    type Output = CycloFrac;
    fn mul(self, rhs: CycloFrac) -> CycloFrac {
        &self * &rhs
    }
}

impl std::iter::Sum for CycloFrac {
    fn sum<I: Iterator<Item = CycloFrac>>(iter: I) -> CycloFrac {
        iter.fold(CycloFrac::zero(), |a, b| a + b)
    }
}
