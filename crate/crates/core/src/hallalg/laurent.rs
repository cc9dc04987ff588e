use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::QuadraticScalar;
use crate::error::{usage, Result};

/// An element of `ℤ[v, v⁻¹]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(e: i64, c: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(e, BigInt::from(c));
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `v ↦ v⁻¹`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `v = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Value at `v = √q`.
    pub fn eval_sqrt(&self, q: u64) -> QuadraticScalar {
        self.coeffs.iter().fold(QuadraticScalar::zero(q), |acc, (e, c)| {
            acc.add(&QuadraticScalar::v_pow(q, *e).scale_int(c))
        })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let sign = if c < &BigInt::zero() { "-" } else { "+" };
            let abs = if c < &BigInt::zero() { -c } else { c.clone() };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = if abs.is_one() && *e != 0 { String::new() } else { abs.to_string() };
            match e {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{coeff}v")?,
                _ => write!(f, "{coeff}v^{e}")?,
            }
        }
        Ok(())
    }
}

/// `[n] = (vⁿ − v⁻ⁿ)/(v − v⁻¹) = v^{n−1} + v^{n−3} + ⋯ + v^{1−n}`.
pub fn quantum_integer(n: usize) -> LaurentPoly {
    let n = n as i64;
    (0..n).fold(LaurentPoly::zero(), |acc, k| {
        acc.add(&LaurentPoly::monomial(n - 1 - 2 * k, 1))
    })
}

/// The Gaussian binomial `[n]!/([m]![n−m]!)`, computed by the recursion
/// `bin(n,m) = v^m bin(n−1,m) + v^{m−n} bin(n−1,m−1)`.
pub fn gaussian(n: usize, m: usize) -> Result<LaurentPoly> {
    if m > n {
        return usage(format!("binomial ({n} choose {m}) needs m ≤ n"));
    }
    let mut row = vec![LaurentPoly::one()];
    for k in 1..=n {
        let mut next = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut cur = LaurentPoly::zero();
            if j < k {
                cur = cur.add(&row[j].shift(j as i64));
            }
            if j > 0 {
                cur = cur.add(&row[j - 1].shift(j as i64 - k as i64));
            }
            next.push(cur);
        }
        row = next;
    }
    Ok(row.swap_remove(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        assert_eq!(gaussian(5, 0).unwrap(), LaurentPoly::one());
        let two = LaurentPoly::monomial(1, 1).add(&LaurentPoly::monomial(-1, 1));
        assert_eq!(quantum_integer(2), two);
        let b31 = gaussian(3, 1).unwrap();
        assert_eq!(b31.to_string(), "v^2 + 1 + v^-2");
        assert!(gaussian(1, 2).is_err());
    }

    #[test]
    fn factorial_definition_and_symmetry() {
        fn fact(n: usize) -> LaurentPoly {
            (1..=n).fold(LaurentPoly::one(), |acc, k| acc.mul(&quantum_integer(k)))
        }
        for n in 0..7 {
            for m in 0..=n {
                let b = gaussian(n, m).unwrap();
                assert_eq!(b.mul(&fact(m)).mul(&fact(n - m)), fact(n));
                assert_eq!(b.bar(), b);
                let ordinary: u64 = (0..m as u64).fold(1, |acc, k| acc * (n as u64 - k) / (k + 1));
                assert_eq!(b.at_one(), BigInt::from(ordinary));
            }
        }
    }
}
