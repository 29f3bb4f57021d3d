//! Classical Bernoulli numbers and the Carlitz q-Bernoulli families.
//!
//! All closed forms share one shape,
//!
//! ```text
//! β^{(h,k)}_{n,Q}(x) = (1 - Q)^{-n} Σ_j C(n,j) (-1)^j Q^{jx} (j+h)_k / [j+h]_{Q,k}
//! ```
//!
//! with `Q = q^d`, `(a)_k = a(a-1)…(a-k+1)` and
//! `[a]_{Q,k} = [a]_Q [a-1]_Q … [a-k+1]_Q`. `β_{n,Q}(x)` is `h = k = 1`,
//! `β_{n,Q}` is additionally `x = 0`. Every denominator is a product of
//! cyclotomic polynomials, so these are built as [`CycloFrac`] values and
//! memoised.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::{CycloFrac, RatFunc, Rational, ZPoly};
use crate::qcore::{binomial, q_int, QArg};
use crate::{Error, Result};

/// `B_0 … B_{n_max}` from `(B + 1)^n - B_n = δ_{1,n}`, which gives
/// `B_1 = -1/2`.
pub fn bernoulli_classical_table(n_max: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n_max as usize + 1);
    b.push(Rational::one());
    for n in 1..=n_max {
        // index n+1 of the recurrence: Σ_{l ≤ n} C(n+1, l) B_l = 0
        let mut s = Rational::zero();
        for (l, bl) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(n + 1, l as u32)) * bl;
        }
        b.push(-s / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

pub fn bernoulli_classical(n: u32) -> Rational {
    bernoulli_classical_table(n).pop().unwrap()
}

/// `B_n(x) = Σ_l C(n,l) B_l x^{n-l}`.
pub fn bernoulli_poly_classical(n: u32, x: &Rational) -> Rational {
    let b = bernoulli_classical_table(n);
    let mut acc = Rational::zero();
    for (l, bl) in b.iter().enumerate() {
        let xp = num_traits::pow(x.clone(), (n as usize) - l);
        acc += Rational::from_integer(binomial(n, l as u32)) * bl * xp;
    }
    acc
}

/// `β_{0,Q} … β_{N,Q}` for `Q = q^d`, from the Carlitz recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable {
    pub d: u32,
    pub values: Vec<RatFunc>,
}

impl BetaTable {
    pub fn get(&self, n: usize) -> Option<&RatFunc> {
        self.values.get(n)
    }
}

/// Solves `Q(Qβ + 1)^n - β_n = δ_{1,n}` for `β_n` one index at a time in
/// general `Q(q)` arithmetic, independent of the closed form.
pub fn beta_number_recurrence(n_max: u32, d: u32) -> BetaTable {
    assert!(d >= 1, "base exponent must be positive");
    let big_q = |k: u32| RatFunc::q_pow((k * d) as usize);
    let mut values = vec![RatFunc::one()];
    for n in 1..=n_max {
        let mut rhs = if n == 1 { RatFunc::one() } else { RatFunc::zero() };
        for (l, bl) in values.iter().enumerate() {
            let c = Rational::from_integer(binomial(n, l as u32));
            rhs = rhs - (&big_q(l as u32 + 1) * bl).scale_by(&c);
        }
        let coeff = &big_q(n + 1) - &RatFunc::one();
        values.push(rhs.try_div(&coeff).expect("Q^{n+1} - 1 is nonzero"));
    }
    BetaTable { d, values }
}

type Key = (u32, u32, u32, u64, u32);

fn cache() -> &'static RwLock<HashMap<Key, Arc<CycloFrac>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<CycloFrac>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `β^{(h,k)}_{n,q^d}(x)` as a reduced cyclotomic fraction, memoised.
/// Requires `h ≥ k ≥ 1`.
pub(crate) fn beta_frac(n: u32, h: u32, k: u32, x: QArg) -> Arc<CycloFrac> {
    debug_assert!(k >= 1 && h >= k);
    let key = (n, h, k, x.e, x.d);
    if let Some(v) = cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(beta_frac_uncached(n, h, k, x));
    cache().write().unwrap().entry(key).or_insert(v).clone()
}

fn beta_frac_uncached(n: u32, h: u32, k: u32, x: QArg) -> CycloFrac {
    let d = x.d;
    let mut sum = CycloFrac::zero();
    for j in 0..=n {
        let a = j + h;
        let falling: BigInt = (0..k).map(|i| BigInt::from(a - i)).product();
        let mut c = binomial(n, j) * falling;
        if j % 2 == 1 {
            c = -c;
        }
        let mut term = CycloFrac::from_poly(ZPoly::monomial(c, (x.e * j as u64) as usize));
        for i in 0..k {
            term = term.div_q_int(a - i, d);
        }
        sum = sum + term;
    }
    sum.div_one_minus_q_pow(d, n).reduced()
}

fn check_base(d: u32, x: QArg) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("base exponent must be positive".into()));
    }
    if x.d != d {
        return Err(Error::BaseMismatch { expected: d, got: x.d });
    }
    Ok(())
}

/// `β_{n,q^d}` from the closed form.
pub fn beta_number(n: u32, d: u32) -> RatFunc {
    assert!(d >= 1, "base exponent must be positive");
    beta_frac(n, 1, 1, QArg::integer(0, d)).to_ratfunc()
}

/// `β_{n,q^d}(x)`; `x` must be expressed in base `q^d`.
pub fn beta_poly(n: u32, d: u32, x: QArg) -> Result<RatFunc> {
    check_base(d, x)?;
    Ok(beta_frac(n, 1, 1, x).to_ratfunc())
}

/// `Σ_l C(n,l) Q^{lx} β_{l,Q} [x]_Q^{n-l}` for integer `x`, built on the
/// recurrence table.
pub fn beta_poly_expansion(n: u32, d: u32, x: QArg) -> Result<RatFunc> {
    check_base(d, x)?;
    let xi = x.as_integer().ok_or(Error::NonIntegerArgument { e: x.e, d: x.d })?;
    let table = beta_number_recurrence(n, d);
    let bracket = q_int(xi, d);
    let mut acc = RatFunc::zero();
    for (l, bl) in table.values.iter().enumerate() {
        let c = Rational::from_integer(binomial(n, l as u32));
        let term = &(&RatFunc::q_pow(l * x.e as usize) * bl) * &bracket.pow(n - l as u32);
        acc = acc + term.scale_by(&c);
    }
    Ok(acc)
}

/// `β^{(h)}_{n,q^d}(x)`, `h ≥ 1`.
pub fn beta_h(n: u32, h: i64, d: u32, x: QArg) -> Result<RatFunc> {
    check_base(d, x)?;
    if h <= 0 {
        return Err(Error::NonPositiveTwist(h));
    }
    Ok(beta_frac(n, h as u32, 1, x).to_ratfunc())
}

/// `β^{(h,k)}_{n,q^d}(x)`, `h ≥ k ≥ 1`.
pub fn beta_hk(n: u32, h: i64, k: u32, d: u32, x: QArg) -> Result<RatFunc> {
    check_base(d, x)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if h < k as i64 {
        return Err(Error::DegenerateFalling { h, k });
    }
    Ok(beta_frac(n, h as u32, k, x).to_ratfunc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rational};

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::from_zpolys(&zp(n), &zp(d)).unwrap()
    }

    fn x(e: u64, d: u32) -> QArg {
        QArg::new(e, d).unwrap()
    }

    #[test]
    fn classical_numbers() {
        let b = bernoulli_classical_table(8);
        assert_eq!(b[0], int(1));
        assert_eq!(b[1], rational(-1, 2));
        assert_eq!(b[2], rational(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], rational(-1, 30));
        assert_eq!(b[8], rational(-1, 30));
        assert_eq!(bernoulli_poly_classical(0, &rational(7, 3)), int(1));
        assert_eq!(bernoulli_poly_classical(5, &int(0)), b[5]);
        assert_eq!(bernoulli_poly_classical(2, &int(1)), rational(1, 6));
    }

    #[test]
    fn beta_examples() {
        assert!(beta_number(0, 1).is_one());
        assert_eq!(beta_number(1, 1), rf(&[-1], &[1, 1]));
        assert_eq!(beta_number(2, 1), rf(&[0, 1], &[1, 2, 2, 1]));
        assert_eq!(beta_number(2, 1).to_string(), "q/(1+2*q+2*q^2+q^3)");
        let t = beta_number_recurrence(2, 1);
        assert!(t.values[0].is_one());
        assert_eq!(t.values[1], rf(&[-1], &[1, 1]));
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for d in 1..=3 {
            let t = beta_number_recurrence(8, d);
            for n in 0..=8 {
                assert_eq!(t.values[n as usize], beta_number(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn poly_examples() {
        for n in 0..5 {
            assert_eq!(beta_poly(n, 2, x(0, 2)).unwrap(), beta_number(n, 2));
        }
        assert_eq!(beta_poly(1, 1, x(1, 1)).unwrap(), rf(&[1], &[1, 1]));
        let at_one = beta_poly(2, 1, x(1, 1)).unwrap().eval(&int(1)).unwrap();
        assert_eq!(at_one, bernoulli_poly_classical(2, &int(1)));
        assert!(matches!(beta_poly(1, 2, x(1, 1)), Err(Error::BaseMismatch { .. })));
    }

    #[test]
    fn expansion_matches_closed_form() {
        assert_eq!(beta_poly_expansion(1, 1, x(1, 1)).unwrap(), rf(&[1], &[1, 1]));
        assert_eq!(
            beta_poly_expansion(3, 2, x(4, 2)).unwrap(),
            beta_poly(3, 2, x(4, 2)).unwrap()
        );
        for n in 0..5 {
            assert_eq!(beta_poly_expansion(n, 1, x(0, 1)).unwrap(), beta_number(n, 1));
        }
        assert!(matches!(
            beta_poly_expansion(2, 2, x(3, 2)),
            Err(Error::NonIntegerArgument { .. })
        ));
    }

    #[test]
    fn boundary_relation() {
        for d in 1..=3u32 {
            for n in 0..=8 {
                let lhs = &(&RatFunc::q_pow(d as usize) * &beta_poly(n, d, x(d as u64, d)).unwrap())
                    - &beta_number(n, d);
                // β_0 = 1 is the initial value, not a solution: n = 0 leaves Q - 1
                let delta = match n {
                    0 => &RatFunc::q_pow(d as usize) - &RatFunc::one(),
                    1 => RatFunc::one(),
                    _ => RatFunc::zero(),
                };
                assert_eq!(lhs, delta, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn classical_limit() {
        let b = bernoulli_classical_table(8);
        for n in 0..=8 {
            assert_eq!(beta_number(n, 1).eval(&int(1)).unwrap(), b[n as usize]);
        }
    }

    #[test]
    fn twisted_families() {
        for n in 0..=6 {
            for e in 0..3 {
                assert_eq!(beta_h(n, 1, 1, x(e, 1)).unwrap(), beta_poly(n, 1, x(e, 1)).unwrap());
            }
        }
        for n in 0..=5 {
            assert_eq!(
                beta_hk(n, 3, 1, 2, x(2, 2)).unwrap(),
                beta_h(n, 3, 2, x(2, 2)).unwrap()
            );
        }
        // n = 0: h/[h]_q
        assert_eq!(beta_h(0, 2, 1, x(5, 1)).unwrap(), rf(&[2], &[1, 1]));
        // n = 1, h = 2: (2/[2] - 3/[3]) / (1 - q)
        let two = RatFunc::from_int(2).try_div(&q_int(2, 1)).unwrap();
        let three = RatFunc::from_int(3).try_div(&q_int(3, 1)).unwrap();
        let expected = (&two - &three).try_div(&rf(&[1, -1], &[1])).unwrap();
        assert_eq!(beta_h(1, 2, 1, x(0, 1)).unwrap(), expected);
        // n = 0: (h)_k / [h]_{q,k}
        let hk0 = RatFunc::from_int(6).try_div(&(&q_int(3, 1) * &q_int(2, 1))).unwrap();
        assert_eq!(beta_hk(0, 3, 2, 1, x(0, 1)).unwrap(), hk0);
        // n = 1, h = k = 2
        let a = RatFunc::from_int(2).try_div(&(&q_int(2, 1) * &q_int(1, 1))).unwrap();
        let b = RatFunc::from_int(6).try_div(&(&q_int(3, 1) * &q_int(2, 1))).unwrap();
        let expected = (&a - &b).try_div(&rf(&[1, -1], &[1])).unwrap();
        assert_eq!(beta_hk(1, 2, 2, 1, x(0, 1)).unwrap(), expected);

        assert!(matches!(beta_h(1, 0, 1, x(0, 1)), Err(Error::NonPositiveTwist(0))));
        assert!(matches!(
            beta_hk(1, 1, 2, 1, x(0, 1)),
            Err(Error::DegenerateFalling { h: 1, k: 2 })
        ));
    }

    #[test]
    fn addition_theorem() {
        for n in 0..=5u32 {
            for xi in 0..=3u64 {
                for yi in 0..=3u64 {
                    let lhs = beta_poly(n, 1, x(xi + yi, 1)).unwrap();
                    let mut fwd = RatFunc::zero();
                    let mut rev = RatFunc::zero();
                    for l in 0..=n {
                        let c = Rational::from_integer(binomial(n, l));
                        let t = &(&RatFunc::q_pow((l as u64 * xi) as usize)
                            * &beta_poly(l, 1, x(yi, 1)).unwrap())
                            * &q_int(xi, 1).pow(n - l);
                        fwd = fwd + t.scale_by(&c);
                        let t = &(&RatFunc::q_pow((l as u64 * yi) as usize)
                            * &beta_poly(l, 1, x(xi, 1)).unwrap())
                            * &q_int(yi, 1).pow(n - l);
                        rev = rev + t.scale_by(&c);
                    }
                    assert_eq!(lhs, fwd, "n={n} x={xi} y={yi}");
                    assert_eq!(lhs, rev, "n={n} x={xi} y={yi}");
                }
            }
        }
    }
}
