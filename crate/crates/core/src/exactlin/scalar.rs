use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Validates `p` and returns the prime field of order `p`.
    pub fn prime(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("prime {p} is too large (max 2^32-1)")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::InvalidScalar(format!("{num}/{den}: zero denominator")));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue fits in u64")
                };
                let d = Scalar::Residue { value: reduce(den), modulus: *p };
                let inv = d.inverse().ok_or_else(|| {
                    Error::InvalidScalar(format!("{num}/{den}: denominator vanishes mod {p}"))
                })?;
                Ok(&Scalar::Residue { value: reduce(num), modulus: *p } * &inv)
            }
        }
    }

    /// Parses a coefficient written as an integer or `a/b`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(format!("cannot parse coefficient `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (
                BigInt::from_str(a.trim()).map_err(|_| bad())?,
                BigInt::from_str(b.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s.trim()).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_fraction(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("cannot parse prime in `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!("expected `q` or `fp:<p>`, got `{s}`")))
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[track_caller]
fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalars from different prime fields");
    a
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: ((*a as u128 + *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: mul_mod(*a, *b, p), modulus: p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(3).is_ok());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!("fp:9".parse::<Field>().is_err());
        assert_eq!("fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse_scalar("2/4").unwrap();
        assert_eq!(a.to_string(), "1/2");
        let b = q.parse_scalar("-3/-6").unwrap();
        assert_eq!(b.to_string(), "1/2");
        let c = q.parse_scalar("1/-3").unwrap();
        assert_eq!(c.to_string(), "-1/3");
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::Prime(5);
        let a = f.from_i64(3);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(f.from_i64(-1).to_string(), "4");
        assert_eq!(f.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(f.parse_scalar("1/5").is_err());
        assert!((&f.from_i64(2) + &f.from_i64(3)).is_zero());
    }
}
