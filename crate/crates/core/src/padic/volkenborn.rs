//! Finite-level q-Volkenborn sums
//! `A_N(f) = [p^N]_q^{-1} Σ_{x<p^N} f(x) q^x` and the checks built on them.
//!
//! The sums run over residues modulo `p^K`; only the final division by
//! `[p^N]_q` (valuation `N`) is done with tracked precision, which certifies
//! `K - N` digits of `A_N`. How close `A_N` is to its limit is a separate,
//! measured quantity ([`PadicCheck::limit_agreement`]).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::number::{max_relative_precision, mulmod, padic_log, powmod, residue_of, valuation, Padic};
use crate::carlitz::beta_hk;
use crate::field::Rational;
use crate::qcore::{binomial, QArg};
use crate::{Error, Exec, Result};

/// `f(x) = q^{c x} [x + s]_q^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntegrandSpec {
    pub c: u32,
    pub m: u32,
    pub s: u64,
}

impl IntegrandSpec {
    /// `[x]_q^m`.
    pub fn power(m: u32) -> Self {
        IntegrandSpec { c: 0, m, s: 0 }
    }

    /// `f_n(x) = f(x + n)` as a spec, up to the factor `q^{c n}`.
    fn shifted(self, n: u64) -> Self {
        IntegrandSpec { s: self.s + n, ..self }
    }

    /// Exact value of `f` at an integer point.
    pub fn eval(&self, q0: &Rational, x: u64) -> Rational {
        let qx = |e: u64| num_traits::pow(q0.clone(), e as usize);
        let bracket: Rational = (0..x + self.s).map(qx).sum();
        qx(self.c as u64 * x) * num_traits::pow(bracket, self.m as usize)
    }
}

/// Prime, deformation parameter, level and working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicSetup {
    pub p: u64,
    pub q0: Rational,
    /// Level `N`: sums run over `0 ≤ x < p^N`.
    pub level: u32,
    /// Working precision `K` of the sums.
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolkenbornJob {
    pub setup: PadicSetup,
    pub f: IntegrandSpec,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PadicSetup {
    pub fn new(p: u64, q0: Rational, level: u32, precision: u32) -> Result<Self> {
        let s = PadicSetup { p, q0, level, precision };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) || self.p == 2 {
            return Err(Error::InvalidParameter(format!("p = {} must be an odd prime", self.p)));
        }
        let dist = &self.q0 - Rational::one();
        match valuation(&dist, self.p) {
            Some(v) if v >= 1 => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "q0 = {} must satisfy |1 - q0|_p < p^(-1/(p-1))",
                    self.q0
                )))
            }
        }
        if self.precision <= self.level {
            return Err(Error::PrecisionUnderflow {
                have: self.precision,
                need: self.level + 1,
            });
        }
        Ok(())
    }

    /// Certified digits of a `k`-fold level-`N` sum: `K - kN`.
    pub fn certified(&self, k: u32) -> i64 {
        self.precision as i64 - (k * self.level) as i64
    }

    pub fn points(&self) -> u64 {
        self.p.pow(self.level)
    }

    fn with_level(&self, level: u32) -> Self {
        PadicSetup { level, ..self.clone() }
    }

    /// `q0 mod p^e` and `p^e`.
    fn q_mod(&self, e: i64) -> Result<(u64, u64)> {
        if e > max_relative_precision(self.p) {
            return Err(Error::ModulusTooLarge { p: self.p, k: e });
        }
        Ok((residue_of(&self.q0, self.p, e)?, self.p.pow(e as u32)))
    }

    /// `[p^N]_q^k` at precision `K + kN`, valuation `kN`.
    fn divisor(&self, k: u32) -> Result<Padic> {
        let extra = (k * self.level) as i64;
        let exp = self.precision as i64 + extra;
        let (q, modulus) = self.q_mod(exp)?;
        let d = Padic::from_residue(self.p, bracket_mod(self.points(), q, modulus), exp)?;
        let mut acc = d;
        for _ in 1..k {
            acc = acc * d;
        }
        Ok(acc)
    }
}

/// `[y]_q mod m` by doubling: `[2a] = [a](1 + q^a)`, `[a+1] = 1 + q[a]`.
fn bracket_mod(y: u64, q: u64, m: u64) -> u64 {
    let mut b = 0u64;
    let mut qa = 1 % m;
    for bit in (0..64 - y.leading_zeros()).rev() {
        b = mulmod(b, (1 + qa) % m, m);
        qa = mulmod(qa, qa, m);
        if (y >> bit) & 1 == 1 {
            b = (1 + mulmod(q, b, m)) % m;
            qa = mulmod(qa, q, m);
        }
    }
    b
}

const CHUNK: u64 = 512;

/// `Σ_{x<P} q^{(c+1)x} [x+s]^m mod m`, chunked for the executor.
fn level_sum_mod(points: u64, f: IntegrandSpec, q: u64, m: u64, exec: Exec) -> u64 {
    let chunks = points.div_ceil(CHUNK);
    let step = powmod(q, f.c as u64 + 1, m);
    exec.map_reduce(
        chunks,
        0u64,
        |ci| {
            let x0 = ci * CHUNK;
            let x1 = (x0 + CHUNK).min(points);
            let mut w = powmod(step, x0, m);
            let mut br = bracket_mod(x0 + f.s, q, m);
            let mut acc = 0u64;
            for _ in x0..x1 {
                acc = (acc + mulmod(w, powmod(br, f.m as u64, m), m)) % m;
                w = mulmod(w, step, m);
                br = (1 + mulmod(q, br, m)) % m;
            }
            acc
        },
        |a, b| ((a as u128 + b as u128) % m as u128) as u64,
    )
}

/// `A_N(f)` to the certified precision `K - N`.
pub fn volkenborn_approx(job: &VolkenbornJob, exec: Exec) -> Result<Padic> {
    let setup = &job.setup;
    setup.validate()?;
    let k = setup.precision as i64;
    let divisor = setup.divisor(1)?;
    let (q, m) = setup.q_mod(k)?;
    let sum = level_sum_mod(setup.points(), job.f, q, m, exec);
    let sum = Padic::from_residue(setup.p, sum, k)?;
    Ok(sum.try_div(&divisor)?.with_precision(setup.certified(1)))
}

/// Unreduced fraction for long exact sums; reduced once at the end.
#[derive(Clone)]
struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    fn new(r: &Rational) -> Self {
        Frac { n: r.numer().clone(), d: r.denom().clone() }
    }

    fn zero() -> Self {
        Frac { n: BigInt::zero(), d: BigInt::one() }
    }

    fn one() -> Self {
        Frac { n: BigInt::one(), d: BigInt::one() }
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.d == o.d {
            Frac { n: &self.n + &o.n, d: self.d.clone() }
        } else {
            Frac { n: &self.n * &o.d + &o.n * &self.d, d: &self.d * &o.d }
        }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac { n: &self.n * &o.n, d: &self.d * &o.d }
    }

    fn pow(&self, e: u32) -> Frac {
        Frac { n: self.n.pow(e), d: self.d.pow(e) }
    }

    fn finish(self) -> Rational {
        Rational::new(self.n, self.d)
    }
}

/// `Σ_{x<P} w0 step^x [s+x]^m` with `[s+x+1] = 1 + q[s+x]`.
fn twisted_sum(q0: &Rational, points: u64, w0: Frac, step: &Frac, s: u64, m: u32) -> Frac {
    let q = Frac::new(q0);
    let mut w = w0;
    let mut br = Frac::new(&bracket_exact(q0, s));
    let mut sum = Frac::zero();
    for _ in 0..points {
        sum = sum.add(&w.mul(&br.pow(m)));
        w = w.mul(step);
        br = Frac::one().add(&q.mul(&br));
    }
    sum
}

/// `A_N(f)` as an exact rational.
pub fn volkenborn_level_exact(job: &VolkenbornJob) -> Rational {
    let q0 = &job.setup.q0;
    let f = job.f;
    let step = Frac::new(q0).pow(f.c + 1);
    let sum = twisted_sum(q0, job.setup.points(), Frac::one(), &step, f.s, f.m).finish();
    sum / bracket_exact(q0, job.setup.points())
}

fn bracket_exact(q0: &Rational, y: u64) -> Rational {
    (num_traits::pow(q0.clone(), y as usize) - Rational::one()) / (q0 - Rational::one())
}

/// Exact limit `∫ q^{cx}[x+s]^m dμ_q = β^{(c+1)}_{m,q}(s)` at `q0`.
pub fn integral_limit(f: IntegrandSpec, q0: &Rational) -> Result<Rational> {
    beta_hk(f.m, f.c as i64 + 1, 1, 1, QArg::integer(f.s, 1))?.eval(q0)
}

/// Outcome of comparing a p-adic approximation with exact values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicCheck {
    pub label: String,
    /// Digits certified by precision tracking.
    pub certified: i64,
    /// Agreement with the exact level-`N` value.
    pub level_agreement: i64,
    /// Agreement with the exact limit.
    pub limit_agreement: i64,
}

impl PadicCheck {
    /// The approximation is correct to its certified precision.
    pub fn sound(&self) -> bool {
        self.level_agreement >= self.certified
    }

    /// The level-`N` value already matches the limit to the certified
    /// precision.
    pub fn limit_ok(&self) -> bool {
        self.limit_agreement >= self.certified
    }
}

fn check(label: String, approx: &Padic, level: &Rational, limit: &Rational) -> Result<PadicCheck> {
    Ok(PadicCheck {
        label,
        certified: approx.precision(),
        level_agreement: approx.agreement(level)?,
        limit_agreement: approx.agreement(limit)?,
    })
}

/// `A_N(f)` against `β^{(c+1)}_{m}(s)` at `q0`.
pub fn integral_check(job: &VolkenbornJob, exec: Exec) -> Result<PadicCheck> {
    let approx = volkenborn_approx(job, exec)?;
    let level = volkenborn_level_exact(job);
    let limit = integral_limit(job.f, &job.setup.q0)?;
    let f = job.f;
    let label = format!(
        "integral c={} m={} s={} N={} K={}",
        f.c, f.m, f.s, job.setup.level, job.setup.precision
    );
    check(label, &approx, &level, &limit)
}

/// `v_p(A_N - A_{N+1})` for `N` in `levels`, from exact level values.
pub fn discrepancy_profile(setup: &PadicSetup, f: IntegrandSpec, levels: std::ops::RangeInclusive<u32>) -> Vec<Option<i64>> {
    levels
        .map(|n| {
            let a = volkenborn_level_exact(&VolkenbornJob { setup: setup.with_level(n), f });
            let b = volkenborn_level_exact(&VolkenbornJob { setup: setup.with_level(n + 1), f });
            valuation(&(a - b), setup.p)
        })
        .collect()
}

/// Right side of `q^n I_q(f_n) - I_q(f) = ((q-1)/log q) Σ_{l<n} f'(l) q^l
/// + (q-1) Σ_{l<n} f(l) q^l` for `f = q^{cx}[x+s]^m`, using
/// `((q-1)/log q) f'(l) = (q-1) c q^{cl}[l+s]^m + m q^{cl}[l+s]^{m-1} q^{l+s}`.
pub fn shift_rhs(f: IntegrandSpec, q0: &Rational, n: u64) -> Rational {
    let qp = |e: u64| num_traits::pow(q0.clone(), e as usize);
    let qm1 = q0 - Rational::one();
    let mut acc = Rational::zero();
    for l in 0..n {
        let br: Rational = (0..l + f.s).map(qp).sum();
        let twist = qp(f.c as u64 * l);
        let mut deriv = &qm1 * Rational::from_integer(f.c.into()) * &twist * num_traits::pow(br.clone(), f.m as usize);
        if f.m > 0 {
            deriv += Rational::from_integer(f.m.into())
                * &twist
                * num_traits::pow(br.clone(), f.m as usize - 1)
                * qp(l + f.s);
        }
        acc += (deriv + &qm1 * f.eval(q0, l)) * qp(l);
    }
    acc
}

/// The shift relation: `q^n A_N(f_n) - A_N(f)` against its exact right
/// side.
pub fn verify_eq3(job: &VolkenbornJob, n_shift: u64, exec: Exec) -> Result<PadicCheck> {
    let setup = &job.setup;
    let f = job.f;
    let q0 = &setup.q0;
    let k = setup.certified(1);
    // f_n(x) = q^{cn} q^{cx}[x+s+n]^m
    let lift = num_traits::pow(q0.clone(), (n_shift * (f.c as u64 + 1)) as usize);
    let shifted = VolkenbornJob { setup: setup.clone(), f: f.shifted(n_shift) };
    let a_n = volkenborn_approx(&shifted, exec)?;
    let a = volkenborn_approx(job, exec)?;
    let lhs = Padic::from_rational(setup.p, &lift, k)?.try_mul(&a_n)?.try_sub(&a)?;
    let level = lift * volkenborn_level_exact(&shifted) - volkenborn_level_exact(job);
    let limit = shift_rhs(f, q0, n_shift);
    let label = format!("shift c={} m={} s={} shift={} N={}", f.c, f.m, f.s, n_shift, setup.level);
    check(label, &lhs, &level, &limit)
}

/// `q I_q(f_1) - I_q(f) = ((q-1)/log q) f'(0) + (q-1) f(0)` for `f(x) = q^x`.
///
/// `f'(0) = log q` is genuine here, so the right side is evaluated p-adically
/// with the Iwasawa logarithm and used as the limit target.
pub fn log_spot_check(setup: &PadicSetup, exec: Exec) -> Result<PadicCheck> {
    let f = IntegrandSpec { c: 1, m: 0, s: 0 };
    let job = VolkenbornJob { setup: setup.clone(), f };
    let p = setup.p;
    let k = setup.certified(1);
    let q0 = &setup.q0;
    let work = setup.precision as i64 + 1;
    let q = Padic::from_rational(p, q0, work)?;
    let qm1 = Padic::from_rational(p, &(q0 - Rational::one()), work)?;
    let log_q = padic_log(&q)?;
    let fprime = log_q;
    let rhs = qm1.try_div(&log_q)?.try_mul(&fprime)?.try_add(&qm1)?;

    let lift = q0.clone();
    let shifted = VolkenbornJob { setup: setup.clone(), f: f.shifted(1) };
    let lift_p = Padic::from_rational(p, &num_traits::pow(lift.clone(), 2), k)?;
    let lhs = lift_p
        .try_mul(&volkenborn_approx(&shifted, exec)?)?
        .try_sub(&volkenborn_approx(&job, exec)?)?;
    let level = num_traits::pow(lift, 2) * volkenborn_level_exact(&shifted) - volkenborn_level_exact(&job);
    Ok(PadicCheck {
        label: format!("log f=q^x N={}", setup.level),
        certified: lhs.precision(),
        level_agreement: lhs.agreement(&level)?,
        limit_agreement: lhs.agreement_with(&rhs)?.min(lhs.precision()),
    })
}

/// `(q, m)`: `q0` reduced mod `m`.
fn witt_sum_mod(setup: &PadicSetup, n: u32, h: u32, k: u32, x: u64, (q, m): (u64, u64), exec: Exec) -> u64 {
    let points = setup.points();
    match k {
        1 => level_sum_mod(points, IntegrandSpec { c: h - 1, m: n, s: x }, q, m, exec),
        _ => {
            // Σ_{y1,y2} q^{(h-1)y1 + (h-2)y2} [x+y1+y2]^n q^{y1+y2}
            let step1 = powmod(q, h as u64, m);
            let step2 = powmod(q, h as u64 - 1, m);
            exec.map_reduce(
                points,
                0u64,
                |y1| {
                    let mut w = powmod(step1, y1, m);
                    let mut br = bracket_mod(x + y1, q, m);
                    let mut acc = 0u64;
                    for _ in 0..points {
                        acc = (acc + mulmod(w, powmod(br, n as u64, m), m)) % m;
                        w = mulmod(w, step2, m);
                        br = (1 + mulmod(q, br, m)) % m;
                    }
                    acc
                },
                |a, b| ((a as u128 + b as u128) % m as u128) as u64,
            )
        }
    }
}

fn witt_level_exact(setup: &PadicSetup, n: u32, h: u32, k: u32, x: u64) -> Rational {
    let q0 = &setup.q0;
    let points = setup.points();
    if k == 1 {
        let f = IntegrandSpec { c: h - 1, m: n, s: x };
        return volkenborn_level_exact(&VolkenbornJob { setup: setup.clone(), f });
    }
    // Σ_{y1} q^{h y1} Σ_{y2} q^{(h-1) y2} [x + y1 + y2]^n
    let q = Frac::new(q0);
    let step1 = q.pow(h);
    let step2 = q.pow(h - 1);
    let mut w1 = Frac::one();
    let mut sum = Frac::zero();
    for y1 in 0..points {
        sum = sum.add(&twisted_sum(q0, points, w1.clone(), &step2, x + y1, n));
        w1 = w1.mul(&step1);
    }
    sum.finish() / num_traits::pow(bracket_exact(q0, points), 2)
}

/// `k`-fold level-`N` sum of `q^{Σ_l (h-l) y_l} [x + y_1 + … + y_k]^n`
/// against `β^{(h,k)}_{n,q}(x)`; `k ∈ {1, 2}`, `h ≥ k`.
pub fn witt_check(n: u32, h: u32, k: u32, x: u64, setup: &PadicSetup, exec: Exec) -> Result<PadicCheck> {
    setup.validate()?;
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParameter(format!("k = {k} not in {{1, 2}}")));
    }
    if h < k {
        return Err(Error::DegenerateFalling { h: h as i64, k });
    }
    let prec = setup.precision as i64;
    let divisor = setup.divisor(k)?;
    let (q, m) = setup.q_mod(prec)?;
    let sum = Padic::from_residue(setup.p, witt_sum_mod(setup, n, h, k, x, (q, m), exec), prec)?;
    let approx = sum.try_div(&divisor)?.with_precision(setup.certified(k));
    let level = witt_level_exact(setup, n, h, k, x);
    let limit = beta_hk(n, h as i64, k, 1, QArg::integer(x, 1))?.eval(&setup.q0)?;
    let label = format!("witt n={n} h={h} k={k} x={x} N={}", setup.level);
    check(label, &approx, &level, &limit)
}

/// `Σ_j C(m,j) (-1)^j q^{js} [a_j]_{q^P} / [a_j]_q / (1-q)^m`, `a_j = c+j+1`,
/// `P = p^N`: the level sum in closed form.
pub fn level_closed_form(job: &VolkenbornJob) -> Rational {
    let q0 = &job.setup.q0;
    let f = job.f;
    let big = num_traits::pow(q0.clone(), job.setup.points() as usize);
    let mut acc = Rational::zero();
    for j in 0..=f.m {
        let a = (f.c + j + 1) as u64;
        let mut t = Rational::from_integer(binomial(f.m, j))
            * num_traits::pow(q0.clone(), (j as u64 * f.s) as usize)
            * bracket_exact(&big, a)
            / bracket_exact(q0, a);
        if j % 2 == 1 {
            t = -t;
        }
        acc += t;
    }
    acc / num_traits::pow(Rational::one() - q0, f.m as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rational};

    fn setup(level: u32, precision: u32) -> PadicSetup {
        PadicSetup::new(3, int(4), level, precision).unwrap()
    }

    fn job(level: u32, precision: u32, f: IntegrandSpec) -> VolkenbornJob {
        VolkenbornJob { setup: setup(level, precision), f }
    }

    #[test]
    fn constant_integrand_is_exact() {
        for n in 1..=5 {
            let a = volkenborn_approx(&job(n, 10, IntegrandSpec::power(0)), Exec::Sequential).unwrap();
            assert_eq!(a.precision(), 10 - n as i64);
            assert_eq!(a.agreement(&int(1)).unwrap(), a.precision());
        }
    }

    #[test]
    fn first_moment_reduces_to_sixteen() {
        // ∫[x] dμ = -1/(1+q) = -1/5 at q0 = 4; level 4 is within 3^4 of it
        let a = volkenborn_approx(&job(4, 8, IntegrandSpec::power(1)), Exec::Parallel).unwrap();
        assert_eq!(a.with_precision(4).residue().unwrap(), 16);
        assert_eq!(integral_limit(IntegrandSpec::power(1), &int(4)).unwrap(), rational(-1, 5));
    }

    #[test]
    fn level_sum_closed_form() {
        for c in 0..3 {
            for m in 0..4 {
                for s in 0..3 {
                    let j = job(2, 10, IntegrandSpec { c, m, s });
                    assert_eq!(volkenborn_level_exact(&j), level_closed_form(&j), "c={c} m={m} s={s}");
                }
            }
        }
    }

    #[test]
    fn approximation_is_sound() {
        for m in 0..=3 {
            for n in 2..=4 {
                let c = integral_check(&job(n, 10, IntegrandSpec::power(m)), Exec::Parallel).unwrap();
                assert!(c.sound(), "{c:?}");
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let j = job(7, 12, IntegrandSpec { c: 1, m: 3, s: 2 });
        assert_eq!(
            volkenborn_approx(&j, Exec::Sequential).unwrap(),
            volkenborn_approx(&j, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn precision_is_stable_under_recomputation() {
        for m in 0..=3 {
            let lo = volkenborn_approx(&job(3, 8, IntegrandSpec::power(m)), Exec::Parallel).unwrap();
            let hi = volkenborn_approx(&job(3, 14, IntegrandSpec::power(m)), Exec::Parallel).unwrap();
            assert_eq!(hi.with_precision(lo.precision()), lo);
        }
    }

    #[test]
    fn discrepancies_grow() {
        for m in 0..=3 {
            let prof = discrepancy_profile(&setup(2, 10), IntegrandSpec::power(m), 2..=5);
            let vals: Vec<i64> = prof.iter().map(|v| v.unwrap_or(i64::MAX)).collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "m={m}: {vals:?}");
        }
    }

    #[test]
    fn shift_constant_family_exact() {
        for shift in 1..=3 {
            let c = verify_eq3(&job(3, 10, IntegrandSpec::power(0)), shift, Exec::Parallel).unwrap();
            assert!(c.sound() && c.limit_ok(), "{c:?}");
        }
        assert_eq!(shift_rhs(IntegrandSpec::power(0), &int(4), 3), int(3 * 21));
    }

    #[test]
    fn log_route() {
        let c = log_spot_check(&setup(4, 10), Exec::Parallel).unwrap();
        assert!(c.sound());
        assert!(c.limit_agreement >= 4, "{c:?}");
    }

    #[test]
    fn witt_sums() {
        let s = setup(3, 10);
        let c = witt_check(0, 2, 1, 0, &s, Exec::Parallel).unwrap();
        assert!(c.sound());
        assert!(c.limit_agreement >= 3);
        let c = witt_check(1, 2, 2, 0, &s, Exec::Parallel).unwrap();
        assert_eq!(c.certified, 4);
        assert!(c.sound(), "{c:?}");
        assert!(matches!(witt_check(1, 1, 2, 0, &s, Exec::Parallel), Err(Error::DegenerateFalling { .. })));
    }

    #[test]
    fn job_validation() {
        assert!(PadicSetup::new(3, int(5), 2, 10).is_err());
        assert!(PadicSetup::new(4, int(5), 2, 10).is_err());
        assert!(matches!(
            PadicSetup::new(3, int(4), 5, 5),
            Err(Error::PrecisionUnderflow { have: 5, need: 6 })
        ));
        let big = PadicSetup::new(3, int(4), 10, 35).unwrap();
        assert!(matches!(
            volkenborn_approx(&VolkenbornJob { setup: big, f: IntegrandSpec::power(1) }, Exec::Sequential),
            Err(Error::ModulusTooLarge { .. })
        ));
    }
}
