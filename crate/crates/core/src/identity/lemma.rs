//! The coefficient form of the `T`-sum lemma. With `Q = q^d` (`d = w₁w₂`):
//!
//! ```text
//! Q^{w₃} β_{n,Q}(w₃) - β_{n,Q} = n T_{2,n-1}(w₃-1 | Q) + (Q-1) T_{1,n}(w₃-1 | Q)
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::{CheckParams, Entry, IdentityReport};
use crate::carlitz::{beta_number, beta_poly};
use crate::field::{RatFunc, Rational};
use crate::qcore::{binomial, power_sum_t, q_int, QArg};
use crate::{Error, Result};

fn check_args(d: u32, w3: u32) -> Result<()> {
    if d == 0 || w3 == 0 {
        return Err(Error::InvalidParameter("lemma requires d, w3 >= 1".into()));
    }
    Ok(())
}

/// Both sides of the coefficient identity. At `n = 0` the `n T_{2,n-1}` term
/// is absent.
pub fn lemma2_sides(n: u32, d: u32, w3: u32) -> Result<(RatFunc, RatFunc)> {
    check_args(d, w3)?;
    let big_q_w3 = RatFunc::q_pow((d * w3) as usize);
    let lhs = &(&big_q_w3 * &beta_poly(n, d, QArg::integer(w3 as u64, d))?) - &beta_number(n, d);
    let tail = (w3 - 1) as u64;
    let qm1 = &RatFunc::q_pow(d as usize) - &RatFunc::one();
    let mut rhs = &qm1 * &power_sum_t(1, n, tail, d);
    if n > 0 {
        rhs = rhs + power_sum_t(2, n - 1, tail, d).scale_by(&Rational::from_integer(n.into()));
    }
    Ok((lhs, rhs))
}

pub fn lemma2_coeff_check(n: u32, d: u32, w3: u32) -> Result<IdentityReport> {
    super::Checker::default().lemma2(n, d, w3)
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |a, i| a * i))
}

/// Expands the lemma in `t` up to `t^order` from its outer forms, without
/// the coefficient identity:
///
/// * integral side: `q^{w₁w₂w₃} ∫ e^{[d(x+w₃)]_q t} dμ_Q - ∫ e^{[dx]_q t} dμ_Q`,
///   expanding `[d y]_q^m = (1-q)^{-m} Σ_j C(m,j)(-1)^j Q^{jy}` and using
///   the moments `∫ Q^{jx} dμ_Q = (j+1)/[j+1]_Q`;
/// * exponential side: `t[d]_q Σ_{i<w₃} Q^{2i} e^{[di]_q t}
///   + (q-1)[d]_q Σ_{i<w₃} Q^i e^{[di]_q t}`.
///
/// Entries come in pairs that must agree: (integral, exponential) and
/// (integral, `[d]_q^m/m!` times the coefficient-identity side) per power
/// of `t`.
pub fn lemma2_series_oracle(order: u32, d: u32, w3: u32) -> Result<IdentityReport> {
    check_args(d, w3)?;
    let one = RatFunc::one();
    let bd = q_int(d as u64, 1);
    let big_q = |k: u64| RatFunc::q_pow((d as u64 * k) as usize);
    let one_minus_q = &one - &RatFunc::q_pow(1);
    let mut entries = Vec::new();
    for m in 0..=order {
        let mut integral = RatFunc::zero();
        for j in 0..=m {
            let moment = RatFunc::from_int(j as i64 + 1).try_div(&q_int(j as u64 + 1, d))?;
            let shift = &big_q((j + 1) as u64 * w3 as u64) - &one;
            let c = Rational::from_integer(binomial(m, j)) * if j % 2 == 1 { -Rational::one() } else { Rational::one() };
            integral = integral + (&moment * &shift).scale_by(&c);
        }
        integral = integral
            .try_div(&one_minus_q.pow(m))?
            .scale_by(&(Rational::one() / factorial(m)));

        let mut exponential = RatFunc::zero();
        for i in 0..w3 as u64 {
            let bdi = q_int(d as u64 * i, 1);
            if m >= 1 {
                let t = &big_q(2 * i) * &bdi.pow(m - 1);
                exponential = exponential + t.scale_by(&(Rational::one() / factorial(m - 1)));
            }
            let t = &(&big_q(i) * &bdi.pow(m)) * &(&RatFunc::q_pow(1) - &one);
            exponential = exponential + t.scale_by(&(Rational::one() / factorial(m)));
        }
        exponential = &exponential * &bd;

        let (_, rhs) = lemma2_sides(m, d, w3)?;
        let coeff = (&bd.pow(m) * &rhs).scale_by(&(Rational::one() / factorial(m)));

        let label = |s: &str| format!("{s} t^{m}");
        entries.push(Entry { label: label("integral"), value: integral.clone() });
        entries.push(Entry { label: label("exponential"), value: exponential });
        entries.push(Entry { label: label("integral"), value: integral });
        entries.push(Entry { label: label("coefficient"), value: coeff });
    }
    Ok(IdentityReport::pairwise(
        "lemma2-series",
        CheckParams::Lemma2 { n: order, d, w3 },
        entries,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ZPoly;

    #[test]
    fn known_instances() {
        let (l, r) = lemma2_sides(1, 1, 1).unwrap();
        assert!(l.is_one() && r.is_one());
        let (l, r) = lemma2_sides(1, 1, 2).unwrap();
        let expected = RatFunc::from_zpoly(&ZPoly::from_i64s(&[1, -1, 2]));
        assert_eq!(l, expected);
        assert_eq!(r, expected);
        let (l, r) = lemma2_sides(0, 2, 3).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn series_oracle_confirms_extraction() {
        for d in [1, 2, 6] {
            for w3 in 1..=3 {
                let r = lemma2_series_oracle(3, d, w3).unwrap();
                assert!(r.verdict, "d={d} w3={w3}: {:?}", r.witness);
            }
        }
    }

    #[test]
    fn desk_grid() {
        for n in 0..=6 {
            for d in [1, 2, 6] {
                for w3 in 1..=3 {
                    assert!(lemma2_coeff_check(n, d, w3).unwrap().verdict, "n={n} d={d} w3={w3}");
                }
            }
        }
    }
}
