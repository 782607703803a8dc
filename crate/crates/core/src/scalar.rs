//! Exact coefficients: the integers, the rationals and the residue rings `Z/m`.
//!
//! A [`Scalar`] always carries its [`RingSpec`] and is kept in canonical form,
//! so structural equality is ring equality. Small values stay on an `i64`
//! fast path; anything larger spills into `num-bigint` / `num-rational`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient ring `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// `Z/m` with `m >= 2`. Composite moduli are allowed.
    Mod(u64),
}

impl RingSpec {
    /// Checked constructor for `Z/m`.
    pub fn modulo(m: u64) -> Result<Self> {
        if m < 2 || m > i64::MAX as u64 {
            return Err(Error::InvalidModulus(m.to_string()));
        }
        Ok(RingSpec::Mod(m))
    }

    /// The non-negative generator of the kernel of `Z -> K`.
    pub fn characteristic(self) -> u64 {
        match self {
            RingSpec::Integers | RingSpec::Rationals => 0,
            RingSpec::Mod(m) => m,
        }
    }

    pub fn is_field(self) -> bool {
        match self {
            RingSpec::Integers => false,
            RingSpec::Rationals => true,
            RingSpec::Mod(m) => is_prime(m),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar { ring: self, value: Value::Small(0) }
    }

    pub fn one(self) -> Scalar {
        Scalar { ring: self, value: Value::Small(1) }
    }

    /// The unit-induced map `Z -> K`.
    pub fn from_i64(self, k: i64) -> Scalar {
        match self {
            RingSpec::Mod(m) => Scalar {
                ring: self,
                value: Value::Small((k as i128).rem_euclid(m as i128) as i64),
            },
            _ => Scalar { ring: self, value: Value::Small(k) },
        }
    }

    pub fn from_bigint(self, k: BigInt) -> Scalar {
        Scalar::from_big(self, k)
    }

    /// Embeds a rational. Fails for non-integral values outside `Q`, except in
    /// `Z/m` where the denominator is inverted when possible.
    pub fn from_rational(self, r: BigRational) -> Result<Scalar> {
        match self {
            RingSpec::Rationals => Ok(Scalar::from_frac(r)),
            RingSpec::Integers => {
                if r.is_integer() {
                    Ok(Scalar::from_big(self, r.to_integer()))
                } else {
                    Err(Error::NotInvertible(format!("{} in Z", r)))
                }
            }
            RingSpec::Mod(_) => {
                let num = self.from_bigint(r.numer().clone());
                let den = self.from_bigint(r.denom().clone());
                Ok(num.mul(&den.inverse()?))
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Grammar: `Z | Q | Z/<m>` with `m >= 2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" => Ok(RingSpec::Integers),
            "Q" => Ok(RingSpec::Rationals),
            _ => {
                let Some(rest) = t.strip_prefix("Z/") else {
                    return Err(Error::parse(0, format!("expected `Z`, `Q` or `Z/<m>`, got `{t}`")));
                };
                if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::parse(2, format!("bad modulus `{rest}`")));
                }
                match rest.parse::<u64>() {
                    Ok(m) => RingSpec::modulo(m),
                    Err(_) => Err(Error::InvalidModulus(rest.to_string())),
                }
            }
        }
    }
}

/// Convenience wrapper for `s.parse::<RingSpec>()`.
pub fn ring_from_string(s: &str) -> Result<RingSpec> {
    s.parse()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Small(i64),
    /// Only for integers that do not fit in `i64`.
    Big(BigInt),
    /// Only for non-integral rationals (denominator > 1).
    Frac(BigRational),
}

/// An element of `K` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: RingSpec,
    value: Value,
}

impl Scalar {
    fn from_big(ring: RingSpec, k: BigInt) -> Scalar {
        let k = match ring {
            RingSpec::Mod(m) => k.mod_floor(&BigInt::from(m)),
            _ => k,
        };
        let value = match k.to_i64() {
            Some(v) => Value::Small(v),
            None => Value::Big(k),
        };
        Scalar { ring, value }
    }

    fn from_frac(r: BigRational) -> Scalar {
        if r.is_integer() {
            Scalar::from_big(RingSpec::Rationals, r.to_integer())
        } else {
            Scalar { ring: RingSpec::Rationals, value: Value::Frac(r) }
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.value, Value::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.value, Value::Small(1))
    }

    /// Integer value if the element is (the image of) an integer. For `Z/m`
    /// this is the representative in `[0, m)`.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.value {
            Value::Small(v) => Some(BigInt::from(*v)),
            Value::Big(v) => Some(v.clone()),
            Value::Frac(_) => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.value {
            Value::Small(v) => Some(*v),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match &self.value {
            Value::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Value::Big(v) => BigRational::from_integer(v.clone()),
            Value::Frac(r) => r.clone(),
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Panics on mismatched rings; use [`Scalar::try_add`] for untrusted operands.
    pub fn add(&self, other: &Scalar) -> Scalar {
        self.try_add(other).expect("scalar ring mismatch")
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.try_sub(other).expect("scalar ring mismatch")
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.try_mul(other).expect("scalar ring mismatch")
    }

    pub fn neg(&self) -> Scalar {
        match (&self.value, self.ring) {
            (Value::Small(v), RingSpec::Mod(m)) => {
                let r = if *v == 0 { 0 } else { m as i64 - v };
                Scalar { ring: self.ring, value: Value::Small(r) }
            }
            (Value::Small(v), ring) => match v.checked_neg() {
                Some(r) => Scalar { ring, value: Value::Small(r) },
                None => Scalar::from_big(ring, -BigInt::from(*v)),
            },
            (Value::Big(v), ring) => Scalar::from_big(ring, -v.clone()),
            (Value::Frac(r), _) => Scalar::from_frac(-r.clone()),
        }
    }

    /// Multiplication by an integer through the unit map.
    pub fn scale_i64(&self, k: i64) -> Scalar {
        self.mul(&self.ring.from_i64(k))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let ring = self.ring;
        if let (Value::Small(a), Value::Small(b)) = (&self.value, &other.value) {
            match ring {
                RingSpec::Mod(m) => {
                    let s = (*a as i128 + *b as i128) % m as i128;
                    return Scalar { ring, value: Value::Small(s as i64) };
                }
                _ => {
                    if let Some(s) = a.checked_add(*b) {
                        return Scalar { ring, value: Value::Small(s) };
                    }
                }
            }
        }
        match ring {
            RingSpec::Rationals => Scalar::from_frac(self.to_rational() + other.to_rational()),
            _ => Scalar::from_big(ring, self.to_bigint().unwrap() + other.to_bigint().unwrap()),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let ring = self.ring;
        if let (Value::Small(a), Value::Small(b)) = (&self.value, &other.value) {
            match ring {
                RingSpec::Mod(m) => {
                    let s = (*a as i128 * *b as i128) % m as i128;
                    return Scalar { ring, value: Value::Small(s as i64) };
                }
                _ => {
                    if let Some(s) = a.checked_mul(*b) {
                        return Scalar { ring, value: Value::Small(s) };
                    }
                }
            }
        }
        match ring {
            RingSpec::Rationals => Scalar::from_frac(self.to_rational() * other.to_rational()),
            _ => Scalar::from_big(ring, self.to_bigint().unwrap() * other.to_bigint().unwrap()),
        }
    }

    pub fn is_invertible(&self) -> bool {
        match self.ring {
            RingSpec::Integers => matches!(self.value, Value::Small(1) | Value::Small(-1)),
            RingSpec::Rationals => !self.is_zero(),
            RingSpec::Mod(m) => {
                let v = self.to_i64().unwrap();
                v.gcd(&(m as i64)) == 1
            }
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible(format!("{} in {}", self, self.ring)));
        }
        Ok(match self.ring {
            RingSpec::Integers => self.clone(),
            RingSpec::Rationals => Scalar::from_frac(self.to_rational().recip()),
            RingSpec::Mod(m) => {
                let v = self.to_i64().unwrap();
                let e = v.extended_gcd(&(m as i64));
                self.ring.from_i64(e.x)
            }
        })
    }

    /// Parses a ring element: an integer, or `p/q` over `Q`.
    pub fn parse(ring: RingSpec, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::parse(0, format!("bad {ring} element `{t}`"));
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return ring.from_rational(BigRational::new(p, q));
        }
        let k: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Scalar::from_big(ring, k))
    }

    pub fn is_negative(&self) -> bool {
        match &self.value {
            Value::Small(v) => *v < 0,
            Value::Big(v) => v.is_negative(),
            Value::Frac(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Small(v) => write!(f, "{v}"),
            Value::Big(v) => write!(f, "{v}"),
            Value::Frac(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.ring != other.ring {
            return None;
        }
        Some(self.to_rational().cmp(&other.to_rational()))
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<&Scalar> for BigRational {
    fn from(s: &Scalar) -> Self {
        s.to_rational()
    }
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
