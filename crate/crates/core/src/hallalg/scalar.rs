use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactfield::parse_rational;

/// `a + b√q` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticScalar {
    pub a: BigRational,
    pub b: BigRational,
    pub q: u64,
}

impl QuadraticScalar {
    pub fn zero(q: u64) -> QuadraticScalar {
        QuadraticScalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            q,
        }
    }

    pub fn one(q: u64) -> QuadraticScalar {
        QuadraticScalar::from_int(q, 1)
    }

    pub fn from_int(q: u64, n: i64) -> QuadraticScalar {
        QuadraticScalar {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
            q,
        }
    }

    /// `v^e` at `v = √q`.
    pub fn v_pow(q: u64, e: i64) -> QuadraticScalar {
        let half = e.div_euclid(2);
        let qq = BigRational::from_integer(BigInt::from(q));
        let base = if half >= 0 {
            num_traits::pow(qq, half as usize)
        } else {
            num_traits::pow(qq.recip(), (-half) as usize)
        };
        if e.rem_euclid(2) == 0 {
            QuadraticScalar {
                a: base,
                b: BigRational::zero(),
                q,
            }
        } else {
            QuadraticScalar {
                a: BigRational::zero(),
                b: base,
                q,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &QuadraticScalar) -> QuadraticScalar {
        debug_assert_eq!(self.q, o.q);
        QuadraticScalar {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            q: self.q,
        }
    }

    pub fn neg(&self) -> QuadraticScalar {
        QuadraticScalar {
            a: -&self.a,
            b: -&self.b,
            q: self.q,
        }
    }

    pub fn sub(&self, o: &QuadraticScalar) -> QuadraticScalar {
        self.add(&o.neg())
    }

    /// `(a+b√q)(c+d√q) = (ac+bdq) + (ad+bc)√q`.
    pub fn mul(&self, o: &QuadraticScalar) -> QuadraticScalar {
        debug_assert_eq!(self.q, o.q);
        let q = BigRational::from_integer(BigInt::from(self.q));
        QuadraticScalar {
            a: &self.a * &o.a + &self.b * &o.b * q,
            b: &self.a * &o.b + &self.b * &o.a,
            q: self.q,
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> QuadraticScalar {
        let c = BigRational::from_integer(c.clone());
        QuadraticScalar {
            a: &self.a * &c,
            b: &self.b * &c,
            q: self.q,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"a": fmt_rat(&self.a), "b": fmt_rat(&self.b)})
    }

    pub fn from_json(q: u64, v: &Value) -> Result<QuadraticScalar> {
        let get = |k: &str| -> Result<BigRational> {
            match v.get(k) {
                None => Ok(BigRational::zero()),
                Some(Value::String(s)) => parse_rational(s),
                Some(Value::Number(n)) => n
                    .as_i64()
                    .map(|x| BigRational::from_integer(BigInt::from(x)))
                    .ok_or_else(|| Error::Parse(format!("coefficient `{k}` is not an integer"))),
                Some(_) => Err(Error::Parse(format!("coefficient `{k}` must be a string"))),
            }
        };
        Ok(QuadraticScalar {
            a: get("a")?,
            b: get("b")?,
            q,
        })
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.a)),
            (true, false) => write!(f, "{}√{}", fmt_rat(&self.b), self.q),
            _ => write!(f, "{} + {}√{}", fmt_rat(&self.a), fmt_rat(&self.b), self.q),
        }
    }
}
