//! Exact coefficient arithmetic: arbitrary-precision rationals and prime
//! fields of odd characteristic.
//!
//! Every computation in this crate is exact. Rationals are kept in lowest
//! terms with positive denominator (the representation `num_rational`
//! guarantees), and `F_p` residues live in `[0, p)`. Characteristic 2 is
//! rejected at field construction; none of the verified models make sense
//! there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::AlgebraError;

/// The coefficient domain of a polynomial: `Q` or `F_p` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Rational,
    Fp(u64),
}

impl Domain {
    /// Constructs the prime field `F_p`, rejecting `p = 2` and composites.
    pub fn fp(p: u64) -> Result<Domain, AlgebraError> {
        if p == 2 {
            return Err(AlgebraError::CharacteristicTwo);
        }
        if p < 3 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Domain::Fp(p))
    }

    pub fn is_fp(&self) -> bool {
        matches!(self, Domain::Fp(_))
    }

    pub fn zero(&self) -> Coefficient {
        match self {
            Domain::Rational => Coefficient::Rational(BigRational::zero()),
            Domain::Fp(p) => Coefficient::Fp { p: *p, val: 0 },
        }
    }

    pub fn one(&self) -> Coefficient {
        match self {
            Domain::Rational => Coefficient::Rational(BigRational::one()),
            Domain::Fp(p) => Coefficient::Fp { p: *p, val: 1 },
        }
    }

    /// Embeds a machine integer.
    pub fn from_i64(&self, n: i64) -> Coefficient {
        match self {
            Domain::Rational => Coefficient::Rational(BigRational::from(BigInt::from(n))),
            Domain::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Coefficient::Fp { p: *p, val: m }
            }
        }
    }

    /// Embeds a big integer.
    pub fn from_bigint(&self, n: &BigInt) -> Coefficient {
        match self {
            Domain::Rational => Coefficient::Rational(BigRational::from(n.clone())),
            Domain::Fp(p) => {
                let p_big = BigInt::from(*p);
                let mut m = n % &p_big;
                if m.is_negative() {
                    m += &p_big;
                }
                let digits = m.to_u64_digits().1;
                let val = if digits.is_empty() { 0 } else { digits[0] };
                Coefficient::Fp { p: *p, val }
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Fp(p) => write!(f, "F{}", p),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact scalar: a reduced rational or an `F_p` residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    Rational(BigRational),
    Fp { p: u64, val: u64 },
}

impl Coefficient {
    pub fn domain(&self) -> Domain {
        match self {
            Coefficient::Rational(_) => Domain::Rational,
            Coefficient::Fp { p, .. } => Domain::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::Fp { p, val: a }, Coefficient::Fp { p: q, val: b }) => {
                debug_assert_eq!(p, q, "mixed-characteristic arithmetic");
                Coefficient::Fp {
                    p: *p,
                    val: addmod(*a, *b, *p),
                }
            }
            _ => panic!("mixed-domain coefficient arithmetic"),
        }
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::Fp { p, val: a }, Coefficient::Fp { p: q, val: b }) => {
                debug_assert_eq!(p, q, "mixed-characteristic arithmetic");
                Coefficient::Fp {
                    p: *p,
                    val: mulmod(*a, *b, *p),
                }
            }
            _ => panic!("mixed-domain coefficient arithmetic"),
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Fp { p, val } => Coefficient::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    /// Multiplicative inverse. Panics on zero (caller checks).
    pub fn inv(&self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Coefficient::Rational(a.recip())
            }
            Coefficient::Fp { p, val } => {
                assert!(*val != 0, "inverse of zero");
                Coefficient::Fp {
                    p: *p,
                    val: invmod(*val, *p),
                }
            }
        }
    }

    pub fn div(&self, other: &Coefficient) -> Coefficient {
        self.mul(&other.inv())
    }

    /// Reduces a rational coefficient mod `p`.
    ///
    /// Fails when the denominator is divisible by `p` (the reduction does not
    /// exist), which callers surface as a reduction-failure error.
    pub fn reduce_mod(&self, p: u64) -> Result<Coefficient, AlgebraError> {
        match self {
            Coefficient::Fp { p: q, val } => {
                if *q == p {
                    Ok(Coefficient::Fp { p, val: *val })
                } else {
                    Err(AlgebraError::DomainMismatch {
                        left: self.domain().to_string(),
                        right: Domain::Fp(p).to_string(),
                    })
                }
            }
            Coefficient::Rational(r) => {
                let p_big = BigInt::from(p);
                let den = r.denom();
                if (den % &p_big).is_zero() {
                    return Err(AlgebraError::ReductionFailure { prime: p });
                }
                let num = Domain::Fp(p).from_bigint(r.numer());
                let den = Domain::Fp(p).from_bigint(den);
                Ok(num.div(&den))
            }
        }
    }

    /// The underlying rational, if this is a `Q` coefficient.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            Coefficient::Fp { .. } => None,
        }
    }

    /// True when the value is an integer (always true over `F_p`).
    pub fn is_integer(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_integer(),
            Coefficient::Fp { .. } => true,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => write!(f, "{}", r),
            Coefficient::Fp { val, .. } => write!(f, "{}", val),
        }
    }
}

#[inline]
fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid on signed accumulators
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible mod p");
    (t.rem_euclid(p as i128)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_construction_rejects_two_and_composites() {
        assert!(matches!(
            Domain::fp(2),
            Err(AlgebraError::CharacteristicTwo)
        ));
        assert!(matches!(Domain::fp(9), Err(AlgebraError::NotPrime(9))));
        assert!(Domain::fp(3).is_ok());
        assert!(Domain::fp(31).is_ok());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let half = Coefficient::Rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        // 1/2 = 3 mod 5
        assert_eq!(
            half.reduce_mod(5).unwrap(),
            Coefficient::Fp { p: 5, val: 3 }
        );
        let third = Coefficient::Rational(BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(third.reduce_mod(3).is_err());
    }

    #[test]
    fn fp_inverse() {
        for p in [3u64, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mulmod(a, invmod(a, p), p), 1);
            }
        }
    }
}
