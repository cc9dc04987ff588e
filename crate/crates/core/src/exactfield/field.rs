use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported prime modulus.
pub const MAX_PRIME: u64 = 1 << 31;

/// An exact field: a prime field `F_p` or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

/// A field element. Prime-field values are kept reduced in `0..p`; rationals
/// are kept in lowest terms with a positive denominator (guaranteed by
/// `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(BigRational),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::Usage(format!("prime {p} exceeds 2^31")));
        }
        Ok(Field::Prime(p))
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p),
            Field::Rational => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rational => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(1),
            Field::Rational => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Usage("zero denominator".into()));
        }
        match self {
            Field::Prime(_) => {
                let d = self
                    .inv(&self.from_i64(den))
                    .ok_or_else(|| Error::Usage("denominator vanishes mod p".into()))?;
                Ok(self.mul(&self.from_i64(num), &d))
            }
            Field::Rational => Ok(Scalar::Q(BigRational::new(num.into(), den.into()))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Q(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 1,
            Scalar::Q(x) => x.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + p - y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x - y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Some(Scalar::Fp(pow_mod(*x, p - 2, *p))),
            (Field::Rational, Scalar::Q(x)) => Some(Scalar::Q(x.recip())),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Uniform element of `F_p`; for the rationals a small random integer.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(rng.gen_range(0..*p)),
            Field::Rational => self.from_i64(rng.gen_range(-9..=9)),
        }
    }

    /// A random element drawn from a wide range, used where genericity matters
    /// (random endomorphisms, isomorphism search).
    pub fn random_wide<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Prime(_) => self.random(rng),
            Field::Rational => self.from_i64(rng.gen_range(-(1 << 20)..=(1 << 20))),
        }
    }

    /// All elements of a prime field, in the order `0, 1, …, p−1`.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Scalar::Fp)),
            Field::Rational => None,
        }
    }

    /// Parse a JSON-style entry: an integer for `F_p`, `"num/den"` or an integer for ℚ.
    pub fn parse_entry(&self, v: &serde_json::Value) -> Result<Scalar> {
        match self {
            Field::Prime(p) => {
                let n = v
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("expected integer entry, got {v}")))?;
                if n < 0 || n as u64 >= *p {
                    return Err(Error::Parse(format!("entry {n} outside 0..{p}")));
                }
                Ok(Scalar::Fp(n as u64))
            }
            Field::Rational => {
                if let Some(n) = v.as_i64() {
                    return Ok(self.from_i64(n));
                }
                let s = v
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("expected \"num/den\" entry, got {v}")))?;
                parse_rational(s).map(Scalar::Q)
            }
        }
    }

    pub fn entry_to_json(&self, a: &Scalar) -> serde_json::Value {
        match a {
            Scalar::Fp(x) => serde_json::Value::from(*x),
            Scalar::Q(x) => serde_json::Value::from(format!("{}/{}", x.numer(), x.denom())),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Q(x) => write!(f, "{x}"),
        }
    }
}

impl Scalar {
    /// The residue as an integer, for prime-field elements.
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Scalar::Fp(x) => Some(*x),
            Scalar::Q(x) if x.is_integer() && !x.is_negative() => x.to_integer().to_u64(),
            Scalar::Q(_) => None,
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(17) && is_prime(2_147_483_647));
        assert!(!is_prime(1) && !is_prime(15) && !is_prime(4));
        assert!(Field::prime(12).is_err());
    }

    #[test]
    fn inverses_in_fp() {
        let f = Field::prime(17).unwrap();
        for a in f.elements().unwrap().skip(1) {
            let b = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &b)));
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn rational_parsing_is_canonical() {
        let f = Field::Rational;
        let a = f.parse_entry(&serde_json::json!("2/-4")).unwrap();
        assert_eq!(a, f.from_ratio(-1, 2).unwrap());
        assert_eq!(f.entry_to_json(&a), serde_json::json!("-1/2"));
        assert!(f.parse_entry(&serde_json::json!("1/0")).is_err());
    }

    #[test]
    fn fp_entry_range_checked() {
        let f = Field::prime(5).unwrap();
        assert!(f.parse_entry(&serde_json::json!(5)).is_err());
        assert_eq!(f.parse_entry(&serde_json::json!(4)).unwrap(), Scalar::Fp(4));
    }
}
