use num_bigint::BigInt;

use super::{Fault, IdentityParams, Permutation3};
use crate::carlitz::beta_frac;
use crate::field::{CycloFrac, RatFunc, ZPoly};
use crate::qcore::{binomial, multinomial, power_sum_t_poly, q_int_poly, QArg};
use crate::{Error, Result};

/// `{(k, l, m) : k + l + m = n}` in lexicographic order.
fn lattice(n: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=n).flat_map(move |k| (0..=n - k).map(move |l| (k, l, n - k - l)))
}

/// `β^{(h)}_{n, q^d}` at the argument `q^e`.
fn beta(n: u32, h: u32, d: u32, e: u64) -> CycloFrac {
    (*beta_frac(n, h, 1, QArg { e, d })).clone()
}

fn bracket_pow(x: u64, e: u32) -> ZPoly {
    q_int_poly(x, 1).pow(e)
}

fn validate(params: &IdentityParams, positive_n: bool) -> Result<()> {
    if params.w.contains(&0) {
        return Err(Error::InvalidParameter(format!("weights {:?} must be positive", params.w)));
    }
    if positive_n && params.n == 0 {
        return Err(Error::NonPositiveOrder);
    }
    Ok(())
}

/// Weights after `σ`, the product `w₁w₂w₃` and the three pair products
/// `(w_{σ(2)}w_{σ(3)}, w_{σ(1)}w_{σ(3)}, w_{σ(1)}w_{σ(2)})`.
struct Frame {
    w: [u64; 3],
    prod: u64,
    b23: u64,
    b13: u64,
    b12: u64,
}

impl Frame {
    fn new(params: &IdentityParams, sigma: Permutation3) -> Self {
        let w = sigma.apply(params.w).map(u64::from);
        Frame {
            prod: w[0] * w[1] * w[2],
            b23: w[1] * w[2],
            b13: w[0] * w[2],
            b12: w[0] * w[1],
            w,
        }
    }
}

fn negate_if(term: CycloFrac, flip: bool) -> CycloFrac {
    if flip {
        -term
    } else {
        term
    }
}

/// Theorem 1 summand sum for one `σ`.
pub fn thm1_expr(params: &IdentityParams, sigma: Permutation3) -> Result<RatFunc> {
    thm1_faulty(params, sigma, None)
}

pub(super) fn thm1_faulty(params: &IdentityParams, sigma: Permutation3, fault: Option<Fault>) -> Result<RatFunc> {
    validate(params, false)?;
    let f = Frame::new(params, sigma);
    let [y1, y2, y3] = params.y;
    let n = params.n;
    let last = (n, 0, 0);
    let mut acc = CycloFrac::zero();
    for (k, l, m) in lattice(n) {
        let c = multinomial(n, k, l, m)?;
        let poly = &(&bracket_pow(f.b23, k) * &bracket_pow(f.b13, l)) * &bracket_pow(f.b12, m);
        let shift = f.prod * ((l + m) as u64 * y1 + m as u64 * y2);
        let b1 = negate_if(
            beta(k, l + m + 1, f.b23 as u32, f.prod * y1),
            fault.is_some() && (k, l, m) == last,
        );
        let b2 = beta(l, m + 1, f.b13 as u32, f.prod * y2);
        let b3 = beta(m, 1, f.b12 as u32, f.prod * y3);
        acc = acc + (&(&b1 * &b2) * &b3).mul_poly(&poly.shift(shift as usize)).scale(&c);
    }
    Ok(acc.to_ratfunc())
}

/// Theorem 3 two-part sum for one `σ`; `n ≥ 1`.
pub fn thm3_expr(params: &IdentityParams, sigma: Permutation3) -> Result<RatFunc> {
    thm3_faulty(params, sigma, None)
}

pub(super) fn thm3_faulty(params: &IdentityParams, sigma: Permutation3, fault: Option<Fault>) -> Result<RatFunc> {
    validate(params, true)?;
    let f = Frame::new(params, sigma);
    let [y1, y2, _] = params.y;
    let n = params.n;
    let w3 = f.w[2];
    let mut acc = CycloFrac::zero();
    // n!/(k! l! m!) over k + l + m = n - 1
    for (k, l, m) in lattice(n - 1) {
        let c = multinomial(n - 1, k, l, m)? * n;
        let poly = &(&(&bracket_pow(f.b23, k) * &bracket_pow(f.b13, l)) * &bracket_pow(f.b12, m + 1))
            * &power_sum_t_poly(2, m, w3 - 1, f.b12 as u32);
        let shift = f.prod * ((l + m + 1) as u64 * y1 + (m + 1) as u64 * y2);
        let b1 = beta(k, l + m + 2, f.b23 as u32, f.prod * y1);
        let b2 = beta(l, m + 2, f.b13 as u32, f.prod * y2);
        acc = acc + (&b1 * &b2).mul_poly(&poly.shift(shift as usize)).scale(&c);
    }
    let last = (n, 0, 0);
    let mut second = CycloFrac::zero();
    for (k, l, m) in lattice(n) {
        let c = multinomial(n, k, l, m)?;
        let poly = &(&(&bracket_pow(f.b23, k) * &bracket_pow(f.b13, l)) * &bracket_pow(f.b12, m + 1))
            * &power_sum_t_poly(1, m, w3 - 1, f.b12 as u32);
        let shift = f.prod * ((l + m) as u64 * y1 + m as u64 * y2);
        let b1 = negate_if(
            beta(k, l + m + 1, f.b23 as u32, f.prod * y1),
            fault.is_some() && (k, l, m) == last,
        );
        let b2 = beta(l, m + 1, f.b13 as u32, f.prod * y2);
        second = second + (&b1 * &b2).mul_poly(&poly.shift(shift as usize)).scale(&c);
    }
    acc = acc + second.mul_poly(&ZPoly::from_i64s(&[-1, 1]));
    Ok(acc.to_ratfunc())
}

/// Theorem 4 form for one `σ`; `n ≥ 1`. The inner arguments
/// `w_{σ(2)}y₂ + (w_{σ(2)}/w_{σ(3)}) i` in base `q^{w_{σ(1)}w_{σ(3)}}` are
/// the monomials `q^{w₁w₂w₃y₂ + w_{σ(1)}w_{σ(2)} i}`.
pub fn thm4_expr(params: &IdentityParams, sigma: Permutation3) -> Result<RatFunc> {
    thm4_faulty(params, sigma, None)
}

pub(super) fn thm4_faulty(params: &IdentityParams, sigma: Permutation3, fault: Option<Fault>) -> Result<RatFunc> {
    validate(params, true)?;
    let f = Frame::new(params, sigma);
    let [y1, y2, _] = params.y;
    let n = params.n;
    let w3 = f.w[2];
    let inner = |order: u32, h: u32, twist: u64| -> CycloFrac {
        (0..w3)
            .map(|i| {
                let arg = f.prod * y2 + f.b12 * i;
                beta(order, h, f.b13 as u32, arg).shift((twist * f.b12 * i) as usize)
            })
            .sum()
    };
    let mut acc = CycloFrac::zero();
    for k in 0..n {
        let c = binomial(n - 1, k) * n;
        let poly = &(&bracket_pow(f.b12, 1) * &bracket_pow(f.b23, k)) * &bracket_pow(f.b13, n - 1 - k);
        let shift = f.prod * ((n - k) as u64 * y1 + y2);
        let b1 = beta(k, n - k + 1, f.b23 as u32, f.prod * y1);
        acc = acc + (&b1 * &inner(n - 1 - k, 2, 2)).mul_poly(&poly.shift(shift as usize)).scale(&c);
    }
    let mut second = CycloFrac::zero();
    for k in 0..=n {
        let c: BigInt = binomial(n, k);
        let poly = &(&bracket_pow(f.b12, 1) * &bracket_pow(f.b23, k)) * &bracket_pow(f.b13, n - k);
        let shift = f.prod * (n - k) as u64 * y1;
        let b1 = negate_if(beta(k, n - k + 1, f.b23 as u32, f.prod * y1), fault.is_some() && k == n);
        second = second + (&b1 * &inner(n - k, 1, 1)).mul_poly(&poly.shift(shift as usize)).scale(&c);
    }
    acc = acc + second.mul_poly(&ZPoly::from_i64s(&[-1, 1]));
    Ok(acc.to_ratfunc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{cross34_check, thm1_check, thm3_check, thm4_check, Checker};
    use crate::Exec;

    fn p(n: u32, w: [u32; 3], y: [u64; 3]) -> IdentityParams {
        IdentityParams::new(n, w, y)
    }

    #[test]
    fn thm1_degenerate_cases() {
        for s in Permutation3::all() {
            assert!(thm1_expr(&p(0, [2, 3, 1], [1, 2, 0]), s).unwrap().is_one());
        }
        let r = thm1_check(&p(2, [1, 1, 1], [1, 0, 2])).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn thm1_small_instances() {
        for params in [p(1, [1, 2, 1], [1, 0, 0]), p(3, [2, 2, 2], [0, 0, 0]), p(2, [1, 2, 3], [1, 1, 0])] {
            let r = thm1_check(&params).unwrap();
            assert!(r.verdict, "{params:?}");
            assert_eq!(r.per_sigma.len(), 6);
        }
    }

    #[test]
    fn thm3_and_thm4_instances() {
        for params in [p(1, [1, 1, 2], [0, 0, 0]), p(1, [2, 1, 1], [0, 0, 0]), p(2, [1, 2, 3], [1, 1, 0])] {
            assert!(thm3_check(&params).unwrap().verdict, "{params:?}");
            assert!(thm4_check(&params).unwrap().verdict, "{params:?}");
            assert!(cross34_check(&params).unwrap().verdict, "{params:?}");
        }
        assert!(matches!(thm3_expr(&p(0, [1, 1, 1], [0; 3]), Permutation3::IDENTITY), Err(Error::NonPositiveOrder)));
        assert!(matches!(thm4_expr(&p(0, [1, 1, 1], [0; 3]), Permutation3::IDENTITY), Err(Error::NonPositiveOrder)));
    }

    #[test]
    fn fault_is_detected() {
        let params = p(2, [1, 2, 3], [1, 1, 0]);
        let c = Checker::new(Exec::Sequential).with_fault(Fault::BetaSign);
        for r in [c.thm1(&params).unwrap(), c.thm3(&params).unwrap(), c.thm4(&params).unwrap()] {
            assert!(!r.verdict, "{}", r.name);
            assert_eq!(r.witness.as_ref().unwrap().0, "123");
        }
        let zero = Checker::new(Exec::Sequential).with_fault(Fault::BetaSign).thm1(&p(0, [1, 1, 1], [0; 3])).unwrap();
        assert!(!zero.verdict);
    }

    #[test]
    fn strategies_agree() {
        let params = p(2, [3, 1, 2], [2, 0, 1]);
        let a = Checker::new(Exec::Sequential).thm4(&params).unwrap();
        let b = Checker::new(Exec::Parallel).thm4(&params).unwrap();
        assert_eq!(a, b);
    }
}
