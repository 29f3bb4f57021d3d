//! Polynomial gcd over `Q` via a dense modular algorithm.
//!
//! For primitive `a, b ∈ Z[q]` the gcd is computed modulo a sequence of
//! 31-bit primes, scaled by `gcd(lc(a), lc(b))`, combined by CRT and lifted
//! to symmetric residues. Once the lifted candidate repeats it is verified by
//! exact trial division, which certifies it: a common divisor can never have
//! larger degree than the true gcd, and a modular image never smaller.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ZPoly;

const PRIME_COUNT: usize = 2048;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let small = small_primes(46_341);
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if small.iter().take_while(|&&s| s * s <= n).all(|&s| !n.is_multiple_of(s)) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn small_primes(limit: usize) -> Vec<u64> {
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= limit {
        if sieve[i] {
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// In-place remainder of `a` by `b` over `F_p`; `b` must be nonzero.
fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if top != 0 {
            let c = top * inv % p;
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    let t = &mut a[shift + j];
                    *t = (*t + p - c * bj % p) % p;
                }
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Monic gcd over `F_p`.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        rem_mod(&mut x, &y, p);
        std::mem::swap(&mut x, &mut y);
    }
    let inv = inv_mod(*x.last().unwrap(), p);
    x.iter().map(|&c| c * inv % p).collect()
}

/// Monic-normalised gcd in `Q[q]`, returned as a primitive integer polynomial
/// with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let a = a.primitive_part();
    let b = b.primitive_part();
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return ZPoly::one();
    }
    if a == b {
        return a;
    }
    let lead_a = a.leading().unwrap().clone();
    let lead_b = b.leading().unwrap().clone();
    let g = lead_a.gcd(&lead_b);

    let mut degree = usize::MAX;
    let mut image: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<ZPoly> = None;

    for &p in primes() {
        let pb = BigInt::from(p);
        if (&lead_a % &pb).is_zero() || (&lead_b % &pb).is_zero() {
            continue;
        }
        let ap = a.reduce_mod(p);
        let bp = b.reduce_mod(p);
        let gp = gcd_mod(&ap, &bp, p);
        let dg = gp.len() - 1;
        if dg == 0 {
            return ZPoly::one();
        }
        if dg > degree {
            continue;
        }
        let scale = g.mod_floor(&pb).to_u64().unwrap();
        let scaled: Vec<u64> = gp.iter().map(|&c| c * scale % p).collect();
        if dg < degree {
            degree = dg;
            image = scaled.iter().map(|&c| BigInt::from(c)).collect();
            modulus = pb;
            previous = None;
        } else {
            let m_inv = inv_mod(modulus.mod_floor(&BigInt::from(p)).to_u64().unwrap(), p);
            for (h, &r) in image.iter_mut().zip(scaled.iter()) {
                let h_mod = h.mod_floor(&pb).to_u64().unwrap();
                let t = (r + p - h_mod) % p * m_inv % p;
                *h += &modulus * BigInt::from(t);
            }
            modulus *= &pb;
        }
        let half = &modulus >> 1;
        let lifted: Vec<BigInt> = image
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        let candidate = ZPoly::from_coeffs(lifted).primitive_part();
        if previous.as_ref() == Some(&candidate)
            && a.div_exact(&candidate).is_some()
            && b.div_exact(&candidate).is_some()
        {
            return candidate;
        }
        previous = Some(candidate);
    }
    panic!("modular gcd ran out of primes");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    #[test]
    fn gcd_basics() {
        // (q-1)(q+1) and (q-1)
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[1, 1]), &p(&[-1, 1])), ZPoly::one());
        assert_eq!(poly_gcd(&p(&[0, 0, 0, 1]), &p(&[0, 0, 2])), p(&[0, 0, 1]));
        assert_eq!(poly_gcd(&ZPoly::zero(), &p(&[2, 4])), p(&[1, 2]));
    }

    #[test]
    fn gcd_with_nonmonic_factor() {
        let f = p(&[3, 0, 7]); // 7q^2 + 3
        let a = &f * &p(&[5, 11, -2]);
        let b = &f * &p(&[-4, 9]);
        assert_eq!(poly_gcd(&a, &b), f);
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let big = BigInt::from(3).pow(90u32);
        let f = ZPoly::from_coeffs(vec![big.clone(), BigInt::from(1), big.clone() + 1]);
        let a = &f.pow(2) * &p(&[1, 1, 1]);
        let b = &f * &p(&[-1, 0, 0, 1]).pow(3);
        assert_eq!(poly_gcd(&a, &b), &f * &p(&[1, 1, 1]));
    }

    #[test]
    fn prime_table() {
        let ps = primes();
        assert_eq!(ps[0], 2_147_483_647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }
}
