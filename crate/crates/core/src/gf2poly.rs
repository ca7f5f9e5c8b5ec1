//! Polynomials over GF(2) packed into a `u64` coefficient word.
//!
//! Bit `i` holds the coefficient of `X^i`, so `X^4 + X + 1` is `0x13`. Degrees
//! up to 63 are representable; products are formed in `u128` before reduction.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree accepted by [`enumerate_primitive`].
pub const MAX_ENUM_DEGREE: u32 = 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Poly(u64);

impl Gf2Poly {
    pub const ZERO: Gf2Poly = Gf2Poly(0);
    pub const ONE: Gf2Poly = Gf2Poly(1);
    pub const X: Gf2Poly = Gf2Poly(2);

    pub const fn from_coeffs(coeffs: u64) -> Self {
        Gf2Poly(coeffs)
    }

    pub const fn coeffs(self) -> u64 {
        self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    pub fn coeff(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn plus(self, other: Gf2Poly) -> Gf2Poly {
        Gf2Poly(self.0 ^ other.0)
    }

    /// Remainder of `self` modulo `m`.
    pub fn modulo(self, m: Gf2Poly) -> Gf2Poly {
        Gf2Poly(reduce(self.0 as u128, m))
    }

    /// `a * b mod m`.
    pub fn mul_mod(self, b: Gf2Poly, m: Gf2Poly) -> Gf2Poly {
        let a = self.modulo(m).0;
        let b = b.modulo(m).0;
        Gf2Poly(reduce(clmul(a, b), m))
    }

    pub fn pow_mod(self, mut exp: u64, m: Gf2Poly) -> Gf2Poly {
        let mut base = self.modulo(m);
        let mut acc = Gf2Poly::ONE.modulo(m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(base, m);
            }
            base = base.mul_mod(base, m);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(self, other: Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let r = a.modulo(b);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `X^(2^n) = X mod p` and `gcd(X^(2^(n/q)) - X, p) = 1`
    /// for every prime `q | n`.
    pub fn is_irreducible(self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let frob = |k: u32| {
            let mut x = Gf2Poly::X.modulo(self);
            for _ in 0..k {
                x = x.mul_mod(x, self);
            }
            x
        };
        if frob(n) != Gf2Poly::X.modulo(self) {
            return false;
        }
        let n_factors = factor_by_trial_division(n as u64).map(|f| f.primes()).unwrap_or_default();
        n_factors.into_iter().all(|q| {
            let h = frob(n / q as u32).plus(Gf2Poly::X).modulo(self);
            h.gcd(self) == Gf2Poly::ONE
        })
    }

    /// Irreducible, and `X` has multiplicative order `2^n - 1` modulo `self`.
    pub fn is_primitive(self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 || n > 62 {
            return false;
        }
        let order = (1u64 << n) - 1;
        if order == 1 {
            return self == Gf2Poly(0b11);
        }
        let Ok(factors) = factor_by_trial_division(order) else {
            return false;
        };
        self.is_primitive_given(&factors)
    }

    /// Primitivity test with a precomputed factorization of `2^n - 1`.
    fn is_primitive_given(self, order_factors: &Factorization) -> bool {
        if !self.coeff(0) || !self.is_irreducible() {
            return false;
        }
        let order = order_factors.value;
        if Gf2Poly::X.pow_mod(order, self) != Gf2Poly::ONE {
            return false;
        }
        order_factors
            .primes()
            .into_iter()
            .all(|q| Gf2Poly::X.pow_mod(order / q, self) != Gf2Poly::ONE)
    }

    /// Multiplicative order of `X` modulo `self`, or `None` when `X` is not a
    /// unit (constant term zero) or the degree is out of range.
    pub fn x_order(self) -> Option<u64> {
        let n = self.degree()?;
        if n == 0 || n > 62 || !self.coeff(0) {
            return None;
        }
        // X^k for k up to 2^n - 1 suffices for irreducible moduli; in general
        // the order divides the exponent of the unit group, so walk it directly.
        let mut x = Gf2Poly::X.modulo(self);
        let one = Gf2Poly::ONE.modulo(self);
        for k in 1..=(1u64 << n) {
            if x == one {
                return Some(k);
            }
            x = x.mul_mod(Gf2Poly::X, self);
        }
        None
    }

    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    /// Monomial form, highest degree first: `x^4+x+1`.
    pub fn to_monomial(self) -> String {
        if self.0 == 0 {
            return "0".to_string();
        }
        (0..64u32)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let a = a as u128;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    acc
}

fn reduce(mut v: u128, m: Gf2Poly) -> u64 {
    let dm = m.degree().expect("modulus must be nonzero");
    while v != 0 {
        let dv = 127 - v.leading_zeros();
        if dv < dm {
            break;
        }
        v ^= (m.0 as u128) << (dv - dm);
    }
    v as u64
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_monomial())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({} = {})", self.to_hex(), self.to_monomial())
    }
}

impl Serialize for Gf2Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

/// Accepts `0x13` (hex coefficient integer) or `x^4+x+1` (any term order,
/// case-insensitive, whitespace ignored). Repeated terms add mod 2.
impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::PolyParse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if compact.is_empty() {
            return Err(err());
        }
        if let Some(hex) = compact.strip_prefix("0x") {
            let v = u64::from_str_radix(hex, 16).map_err(|_| err())?;
            return Ok(Gf2Poly(v));
        }
        let mut coeffs = 0u64;
        for term in compact.split('+') {
            let exp: u32 = match term {
                "1" => 0,
                "0" => continue,
                "x" => 1,
                t => {
                    let e = t.strip_prefix("x^").ok_or_else(err)?;
                    e.parse().map_err(|_| err())?
                }
            };
            if exp > 63 {
                return Err(err());
            }
            coeffs ^= 1 << exp;
        }
        Ok(Gf2Poly(coeffs))
    }
}

/// Prime factorization `value = prod p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub prime_factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> Vec<u64> {
        self.prime_factors.iter().map(|&(p, _)| p).collect()
    }

    pub fn euler_phi(&self) -> u64 {
        self.prime_factors
            .iter()
            .fold(self.value, |acc, &(p, _)| acc / p * (p - 1))
    }
}

/// Complete factorization by trial division, for `2 <= v < 2^63`.
pub fn factor_by_trial_division(v: u64) -> Result<Factorization> {
    if !(2..1u64 << 63).contains(&v) {
        return Err(Error::FactorOutOfRange(v));
    }
    let mut rest = v;
    let mut prime_factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            prime_factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut d = 3u64;
    while d.saturating_mul(d) <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        prime_factors.push((rest, 1));
    }
    Ok(Factorization {
        value: v,
        prime_factors,
    })
}

/// All primitive polynomials of degree `n` (2 <= n <= 20), ascending by
/// coefficient encoding.
pub fn enumerate_primitive(n: u32) -> Result<Vec<Gf2Poly>> {
    if !(2..=MAX_ENUM_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            min: 2,
            max: MAX_ENUM_DEGREE,
        });
    }
    let order = factor_by_trial_division((1u64 << n) - 1)?;
    let top = 1u64 << n;
    let found: Vec<Gf2Poly> = (0..1u64 << (n - 1))
        .into_par_iter()
        .map(|k| Gf2Poly(top | (k << 1) | 1))
        .filter(|p| p.is_primitive_given(&order))
        .collect();
    Ok(found)
}
