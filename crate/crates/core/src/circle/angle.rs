use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::quadratic::QuadNum;
use crate::error::{Error, Result};
use crate::rational::{frac, Rational};

/// Rotation angle reduced into `[0, 1)`: either a rational `p/q` or a
/// quadratic irrational `a + b√d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Angle(QuadNum);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleKind {
    Rational,
    Quadratic,
}

impl Angle {
    pub fn rational(r: Rational) -> Angle {
        Angle(QuadNum::from_rational(&frac(&r)))
    }

    pub fn from_ratio(p: i128, q: i128) -> Angle {
        Self::rational(Rational::new(p, q))
    }

    pub fn quadratic(a: Rational, b: Rational, d: i64) -> Result<Angle> {
        if b.numer() == &0 {
            return Err(Error::InvalidAngle("quadratic angle needs a nonzero surd part".into()));
        }
        Ok(Angle(QuadNum::new(&a, &b, d)?.fract()))
    }

    pub fn from_quad(x: QuadNum) -> Angle {
        Angle(x.fract())
    }

    pub fn kind(&self) -> AngleKind {
        if self.0.is_rational() {
            AngleKind::Rational
        } else {
            AngleKind::Quadratic
        }
    }

    pub fn value(&self) -> QuadNum {
        self.0
    }

    pub fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    /// Denominator `q` of a rational angle, i.e. the orbit period.
    pub fn period(&self) -> Option<i64> {
        self.0.as_rational().map(|r| *r.denom() as i64)
    }

    /// `g·α mod 1`.
    pub fn times(&self, g: i64) -> QuadNum {
        self.0.mul_int(g as i128).fract()
    }
}

impl FromStr for Angle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Angle> {
        Ok(Angle::from_quad(QuadNum::parse(s)?))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Angle, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
