//! Exact rationals used throughout the crate, with the `"p/q"` text form used
//! in configs and reports.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p/q"`, `"p"`, or a terminating decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty string".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let d: i128 = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {s}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_abs = whole.trim().trim_start_matches(['-', '+']);
        let whole_v: i128 = if whole_abs.is_empty() {
            0
        } else {
            whole_abs.parse().map_err(|_| Error::Parse(s.to_string()))?
        };
        if frac.is_empty() || frac.len() > 30 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(s.to_string()));
        }
        let den = 10i128.pow(frac.len() as u32);
        let num: i128 = frac.parse().map_err(|_| Error::Parse(s.to_string()))?;
        let v = Rational::new(whole_v * den + num, den);
        return Ok(if negative { -v } else { v });
    }
    let n: i128 = s.parse().map_err(|_| Error::Parse(s.to_string()))?;
    Ok(Rational::from_integer(n))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Reduces into `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    let fl = lo.floor();
    if fl == *lo || fl + Rational::one() <= *hi {
        return if fl == *lo { fl } else { fl + Rational::one() };
    }
    // lo and hi share the integer part; recurse on reciprocals of the fractional parts.
    let lo_f = lo - fl;
    let hi_f = hi - fl;
    let inner = simplest_between(&hi_f.recip(), &lo_f.recip());
    fl + inner.recip()
}

pub fn lcm_den(values: impl IntoIterator<Item = Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, r| acc.lcm(r.denom()))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Serde adapter: a rational as its `"p/q"` string.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        format_rational(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Exact rational paired with a decimal rendering, for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    #[serde(with = "serde_str")]
    pub exact: Rational,
    pub decimal: f64,
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue { decimal: to_f64(&r), exact: r }
    }
}
