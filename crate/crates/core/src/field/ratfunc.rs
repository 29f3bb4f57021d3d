use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::{Poly, Rational, ZPoly};
use crate::{Error, Result};

/// Element of the rational function field `Q(q)` in canonical form.
///
/// Internally `value = scale * num / den` where `num` and `den` are primitive
/// integer polynomials with positive leading coefficients and
/// `gcd(num, den) = 1`; zero is `0 * 0 / 1`. That triple is unique for every
/// field element, so derived equality is field equality. The accessors
/// [`RatFunc::num`] / [`RatFunc::den`] expose the equivalent form over `Q`
/// with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    scale: Rational,
    num: ZPoly,
    den: ZPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            scale: Rational::zero(),
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            scale: c,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(Rational::from_integer(c.into()))
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        Self::from_zpoly(&ZPoly::q_pow(k))
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        let (c, prim) = p.primitive_split();
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            scale: Rational::from_integer(c),
            num: prim,
            den: ZPoly::one(),
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        let (s, prim) = p.to_primitive();
        if s.is_zero() {
            return Self::zero();
        }
        RatFunc {
            scale: s,
            num: prim,
            den: ZPoly::one(),
        }
    }

    /// Canonical reduced form of `num / den`.
    pub fn new(num: &Poly, den: &Poly) -> Result<Self> {
        let (sn, n) = num.to_primitive();
        let (sd, d) = den.to_primitive();
        if sd.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(sn / sd, n, d))
    }

    /// Canonical reduced form of `num / den` for integer polynomials.
    pub fn from_zpolys(num: &ZPoly, den: &ZPoly) -> Result<Self> {
        let (cn, n) = num.primitive_split();
        let (cd, d) = den.primitive_split();
        if cd.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(Rational::new(cn, cd), n, d))
    }

    /// `scale * num / den` with `num`, `den` primitive, positive leading
    /// coefficients, not yet coprime.
    fn reduce(scale: Rational, num: ZPoly, den: ZPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) || num.degree() == Some(0) {
            return RatFunc { scale, num, den };
        }
        let g = poly_gcd(&num, &den);
        if g.is_one() {
            return RatFunc { scale, num, den };
        }
        RatFunc {
            scale,
            num: num.div_exact(&g).expect("gcd divides numerator"),
            den: den.div_exact(&g).expect("gcd divides denominator"),
        }
    }

    /// Assembles an already-coprime triple; used by the cyclotomic path.
    pub(crate) fn from_coprime_parts(scale: Rational, num: ZPoly, den: ZPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero();
        }
        debug_assert!(num.leading().is_some_and(|c| c > &BigInt::zero()));
        debug_assert!(den.leading().is_some_and(|c| c > &BigInt::zero()));
        RatFunc { scale, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Numerator over `Q`, paired with the monic [`RatFunc::den`].
    pub fn num(&self) -> Poly {
        let lc = Rational::from_integer(self.den.leading().unwrap().clone());
        Poly::from_zpoly(&self.num, &(&self.scale / lc))
    }

    /// Monic denominator over `Q`.
    pub fn den(&self) -> Poly {
        let lc = Rational::from_integer(self.den.leading().unwrap().clone());
        Poly::from_zpoly(&self.den, &lc.recip())
    }

    /// Scalar factor of the integer representation.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Primitive integer numerator of the integer representation.
    pub fn num_z(&self) -> &ZPoly {
        &self.num
    }

    /// Primitive integer denominator of the integer representation.
    pub fn den_z(&self) -> &ZPoly {
        &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc {
            scale: self.scale.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn try_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        RatFunc {
            scale: num_traits::pow(self.scale.clone(), e as usize),
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale_by(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            scale: &self.scale * c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// `a(q^d)`. Coprimality survives the substitution (a Bezout relation
    /// `u n + v d = 1` maps to one for the substituted pair), so no gcd is
    /// needed.
    pub fn substitute_power(&self, d: u32) -> Self {
        assert!(d >= 1, "substitution exponent must be positive");
        RatFunc {
            scale: self.scale.clone(),
            num: self.num.substitute_power(d as usize),
            den: self.den.substitute_power(d as usize),
        }
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(&self.scale * self.num.eval(q0) / d)
    }

    fn add_impl(&self, rhs: &RatFunc, negate: bool) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs } else { rhs.clone() };
        }
        let s2 = if negate { -&rhs.scale } else { rhs.scale.clone() };
        // Integer weights a1/m, a2/m for the two scalars.
        let m = self.scale.denom().lcm(s2.denom());
        let a1 = self.scale.numer() * (&m / self.scale.denom());
        let a2 = s2.numer() * (&m / s2.denom());

        if self.den == rhs.den {
            let sum = &self.num.scale(&a1) + &rhs.num.scale(&a2);
            let (c, n) = sum.primitive_split();
            return Self::reduce(Rational::new(c, m), n, self.den.clone());
        }
        let g = poly_gcd(&self.den, &rhs.den);
        let (d1, d2) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                rhs.den.div_exact(&g).unwrap(),
            )
        };
        let sum = &(&self.num * &d2).scale(&a1) + &(&rhs.num * &d1).scale(&a2);
        let (c, n) = sum.primitive_split();
        if c.is_zero() {
            return Self::zero();
        }
        // Only factors of g can cancel against the new numerator.
        let (n, g) = if g.is_one() {
            (n, g)
        } else {
            let h = poly_gcd(&n, &g);
            if h.is_one() {
                (n, g)
            } else {
                (n.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
            }
        };
        let den = &(&d1 * &d2) * &g;
        RatFunc {
            scale: Rational::new(c, m),
            num: n,
            den,
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.add_impl(&rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self.add_impl(&rhs, true)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            scale: -&self.scale,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(mut self) -> RatFunc {
        self.scale = -self.scale;
        self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let cross = |n: &ZPoly, d: &ZPoly| -> (ZPoly, ZPoly) {
            if n.degree() == Some(0) || d.degree() == Some(0) {
                return (n.clone(), d.clone());
            }
            let g = poly_gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cross(&self.num, &rhs.den);
        let (n2, d1) = cross(&rhs.num, &self.den);
        // Products of primitive polynomials with positive leading
        // coefficients keep both properties.
        RatFunc {
            scale: &self.scale * &rhs.scale,
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

/// `-1/(1+q)`, `(1+q^2)/(1+q)`, `q+q^2+q^3`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num();
        let den = self.den();
        let wrap = |p: &Poly| {
            let s = p.to_string();
            let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if terms > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if den.degree() == Some(0) {
            write!(f, "{num}")
        } else {
            write!(f, "{}/{}", wrap(&num), wrap(&den))
        }
    }
}
