//! Mixed exact/floating scalar type.
//!
//! Boundary classification (holonomy distance exactly 1, half-integral cube
//! centers, integral defects) is semantically meaningful, so exact rational
//! arithmetic is the default. Floats are accepted everywhere and carry
//! tolerance semantics at classification boundaries. Any arithmetic mixing
//! an exact value with a float degrades to a float.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Default tolerance used when classifying float inputs against exact
/// boundaries.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A scalar that is either an exact rational or an `f64`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational `p/q`. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(x) => *x,
        }
    }

    /// Lossless conversion to a rational. Every finite `f64` is a rational,
    /// so this never loses information; it errors only on NaN or infinity.
    pub fn to_exact(&self) -> Option<BigRational> {
        match self {
            Scalar::Exact(r) => Some(r.clone()),
            Scalar::Approx(x) => BigRational::from_float(*x),
        }
    }

    /// Promote to the exact representation (identity for exact scalars).
    pub fn promoted(&self) -> Option<Scalar> {
        self.to_exact().map(Scalar::Exact)
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Approx(x) => *x < 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Approx(x) => *x > 0.0,
        }
    }

    /// Is this an integer? Exact scalars are tested exactly; floats within
    /// `tol` of the nearest integer count as integral.
    pub fn is_integer(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(r) => r.is_integer(),
            Scalar::Approx(x) => (x - x.round()).abs() <= tol,
        }
    }

    /// Is `self - 1/2` an integer (strictly half-integral)?
    pub fn is_half_integral(&self, tol: f64) -> bool {
        (self - &Scalar::ratio(1, 2)).is_integer(tol)
    }

    pub fn floor_i64(&self) -> i64 {
        match self {
            Scalar::Exact(r) => r.floor().to_integer().to_i64().expect("floor fits i64"),
            Scalar::Approx(x) => x.floor() as i64,
        }
    }

    /// Nearest integer, ties to even. The tie rule makes half-integral
    /// inputs reproducible and leaves the attained distance unchanged.
    pub fn round_ties_even_i64(&self) -> i64 {
        match self {
            Scalar::Exact(r) => {
                let two = BigRational::from_integer(BigInt::from(2));
                let fl = r.floor().to_integer();
                let frac = r - BigRational::from_integer(fl.clone());
                let half = BigRational::new(BigInt::from(1), BigInt::from(2));
                let fl = fl.to_i64().expect("round fits i64");
                match frac.cmp(&half) {
                    Ordering::Less => fl,
                    Ordering::Greater => fl + 1,
                    Ordering::Equal => {
                        if (BigRational::from_integer(BigInt::from(fl)) / &two).is_integer() {
                            fl
                        } else {
                            fl + 1
                        }
                    }
                }
            }
            Scalar::Approx(x) => x.round_ties_even() as i64,
        }
    }

    /// Representative of `self` mod 2Z inside `[-1, 1)`.
    pub fn reduce_mod2(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                let one = BigRational::one();
                let two = BigRational::from_integer(BigInt::from(2));
                let k = ((r + &one) / &two).floor();
                Scalar::Exact(r - k * two)
            }
            Scalar::Approx(x) => {
                let k = ((x + 1.0) / 2.0).floor();
                Scalar::Approx(x - 2.0 * k)
            }
        }
    }

    /// Total-order comparison; mixed representations compare as floats.
    pub fn cmp_val(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_val(other) == Ordering::Equal
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_val(other))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Approx(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
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
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse scalar from {0:?}")]
pub struct ParseScalarError(String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `p/q`, plain integers, and decimal literals; all parse to
    /// exact rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let fail = || ParseScalarError(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| fail())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| fail())?;
            if q.is_zero() {
                return Err(fail());
            }
            return Ok(Scalar::Exact(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.trim_start().starts_with('-');
            let int = BigInt::from_str(if int.is_empty() { "0" } else { int }).map_err(|_| fail())?;
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail());
            }
            let num = BigInt::from_str(frac).map_err(|_| fail())?;
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            let frac_part = BigRational::new(num, den);
            let int_part = BigRational::from_integer(int);
            let v = if neg { int_part - frac_part } else { int_part + frac_part };
            return Ok(Scalar::Exact(v));
        }
        let n = BigInt::from_str(s).map_err(|_| fail())?;
        Ok(Scalar::Exact(BigRational::from_integer(n)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => serializer.serialize_str(&r.to_string()),
            Scalar::Approx(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(x) => Ok(Scalar::Approx(x)),
            Raw::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3/2".parse::<Scalar>().unwrap(), Scalar::ratio(3, 2));
        assert_eq!("-7".parse::<Scalar>().unwrap(), Scalar::from_int(-7));
        assert_eq!("0.25".parse::<Scalar>().unwrap(), Scalar::ratio(1, 4));
        assert_eq!("-1.5".parse::<Scalar>().unwrap(), Scalar::ratio(-3, 2));
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn round_ties_even() {
        assert_eq!(Scalar::ratio(1, 2).round_ties_even_i64(), 0);
        assert_eq!(Scalar::ratio(3, 2).round_ties_even_i64(), 2);
        assert_eq!(Scalar::ratio(-1, 2).round_ties_even_i64(), 0);
        assert_eq!(Scalar::ratio(-3, 2).round_ties_even_i64(), -2);
        assert_eq!(Scalar::ratio(7, 10).round_ties_even_i64(), 1);
        assert_eq!(Scalar::Approx(2.5).round_ties_even_i64(), 2);
    }

    #[test]
    fn reduce_mod2_range() {
        let cases = [(23, 10, 3, 10), (-14, 10, 6, 10), (-10, 10, -10, 10), (10, 10, -10, 10)];
        for (p, q, rp, rq) in cases {
            assert_eq!(Scalar::ratio(p, q).reduce_mod2(), Scalar::ratio(rp, rq));
        }
    }

    #[test]
    fn mixed_arithmetic_degrades() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::Approx(0.5);
        assert!(!(&a + &b).is_exact());
        assert!((&a + &a).is_exact());
    }

    #[test]
    fn json_round_trip() {
        let v: Vec<Scalar> = serde_json::from_str(r#"["3/2", 0.5, "2"]"#).unwrap();
        assert_eq!(v[0], Scalar::ratio(3, 2));
        assert!(!v[1].is_exact());
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["3/2",0.5,"2"]"#);
    }
}
