//! Exact symbolic values for plan bookkeeping.
//!
//! Plan angles and areas are affine expressions over a set of formal
//! symbols (the small deformation fees and width budgets of the gluing
//! constructions) with exact rational coefficients. The symbols are never
//! numerically instantiated; a valid plan cancels them exactly in the
//! target comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact rational with string-based JSON form (`"p/q"`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    pub fn floor_i64(&self) -> i64 {
        num_traits::ToPrimitive::to_i64(&self.0.floor().to_integer()).expect("fits i64")
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let parsed = if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p).map_err(D::Error::custom)?;
            let q = BigInt::from_str(q).map_err(D::Error::custom)?;
            if q.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            BigRational::new(p, q)
        } else {
            BigRational::from_integer(BigInt::from_str(&s).map_err(D::Error::custom)?)
        };
        Ok(Rat(parsed))
    }
}

/// Affine expression `constant + sum coeff_k * symbol_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sym {
    pub constant: Rat,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub terms: BTreeMap<String, Rat>,
}

impl Sym {
    pub fn rat(r: Rat) -> Self {
        Sym {
            constant: r,
            terms: BTreeMap::new(),
        }
    }

    pub fn int(n: i64) -> Self {
        Sym::rat(Rat::int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Sym::rat(Rat::ratio(p, q))
    }

    pub fn symbol(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.to_string(), Rat::int(1));
        Sym {
            constant: Rat::int(0),
            terms,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant part, valid as the full value only if `is_constant`.
    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    pub fn scale(&self, k: &Rat) -> Sym {
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            let v = Rat(&c.0 * &k.0);
            if !v.0.is_zero() {
                terms.insert(s.clone(), v);
            }
        }
        Sym {
            constant: Rat(&self.constant.0 * &k.0),
            terms,
        }
    }
}

impl Add for &Sym {
    type Output = Sym;
    fn add(self, rhs: &Sym) -> Sym {
        let mut terms = self.terms.clone();
        for (s, c) in &rhs.terms {
            let entry = terms.entry(s.clone()).or_insert_with(|| Rat::int(0));
            entry.0 = &entry.0 + &c.0;
        }
        terms.retain(|_, c| !c.0.is_zero());
        Sym {
            constant: Rat(&self.constant.0 + &rhs.constant.0),
            terms,
        }
    }
}

impl Sub for &Sym {
    type Output = Sym;
    fn sub(self, rhs: &Sym) -> Sym {
        self + &(-rhs)
    }
}

impl Neg for &Sym {
    type Output = Sym;
    fn neg(self) -> Sym {
        self.scale(&Rat::int(-1))
    }
}

impl Mul<&Rat> for &Sym {
    type Output = Sym;
    fn mul(self, k: &Rat) -> Sym {
        self.scale(k)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (s, c) in &self.terms {
            if c.0.is_negative() {
                write!(f, " - {}*{}", Rat((-&c.0).clone()), s)?;
            } else {
                write!(f, " + {}*{}", c, s)?;
            }
        }
        Ok(())
    }
}

/// Sum of a slice of symbolic values.
pub fn sym_sum(values: &[Sym]) -> Sym {
    values.iter().fold(Sym::int(0), |acc, v| &acc + v)
}
