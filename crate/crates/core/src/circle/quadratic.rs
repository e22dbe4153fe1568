//! Exact numbers `(p + q√d) / den` with integer `p, q, den` and a fixed
//! non-square radicand `d`.
//!
//! Signs are decided by case analysis on the signs of the rational and surd
//! parts, squaring only when they disagree. Squares that overflow `i128`
//! fall back to big integers, so comparisons never lose exactness.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    p: i128,
    q: i128,
    den: i128,
    /// Radicand; 0 when `q == 0`.
    d: i64,
}

pub fn is_square(d: i64) -> bool {
    d >= 0 && {
        let r = d.sqrt();
        r * r == d
    }
}

fn sign_of(x: i128, y: i128, d: i64) -> Ordering {
    match (x.cmp(&0), y.cmp(&0)) {
        (ox, Ordering::Equal) => ox,
        (Ordering::Equal, oy) => oy,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (ox, _) => {
            // x and y√d have opposite signs: compare x² with y²d.
            let lhs = x.checked_mul(x);
            let rhs = y.checked_mul(y).and_then(|v| v.checked_mul(d as i128));
            let by_magnitude = match (lhs, rhs) {
                (Some(l), Some(r)) => l.cmp(&r),
                _ => {
                    let (bx, by) = (BigInt::from(x), BigInt::from(y));
                    (&bx * &bx).cmp(&(&by * &by * BigInt::from(d)))
                }
            };
            match by_magnitude {
                Ordering::Equal => unreachable!("non-square radicand"),
                Ordering::Greater => ox,
                Ordering::Less => ox.reverse(),
            }
        }
    }
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("quadratic arithmetic overflow")
}

fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("quadratic arithmetic overflow")
}

impl QuadNum {
    pub const ZERO: QuadNum = QuadNum { p: 0, q: 0, den: 1, d: 0 };
    pub const ONE: QuadNum = QuadNum { p: 1, q: 0, den: 1, d: 0 };

    fn normalized(mut p: i128, mut q: i128, mut den: i128, d: i64) -> QuadNum {
        debug_assert!(den != 0);
        if den < 0 {
            p = -p;
            q = -q;
            den = -den;
        }
        let g = p.gcd(&q).gcd(&den);
        if g > 1 {
            p /= g;
            q /= g;
            den /= g;
        }
        QuadNum { p, q, den, d: if q == 0 { 0 } else { d } }
    }

    pub fn from_rational(r: &Rational) -> QuadNum {
        QuadNum { p: *r.numer(), q: 0, den: *r.denom(), d: 0 }
    }

    pub fn from_int(n: i128) -> QuadNum {
        QuadNum { p: n, q: 0, den: 1, d: 0 }
    }

    /// `a + b√d`; requires `d` positive and not a perfect square unless `b = 0`.
    pub fn new(a: &Rational, b: &Rational, d: i64) -> Result<QuadNum> {
        if b.numer() == &0 {
            return Ok(Self::from_rational(a));
        }
        if d <= 1 || is_square(d) {
            return Err(Error::InvalidAngle(format!("radicand {d} must be a positive non-square")));
        }
        let den = a.denom().lcm(b.denom());
        Ok(Self::normalized(mul(*a.numer(), den / a.denom()), mul(*b.numer(), den / b.denom()), den, d))
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn radicand(&self) -> Option<i64> {
        (self.q != 0).then_some(self.d)
    }

    pub fn rational_part(&self) -> Rational {
        Rational::new(self.p, self.den)
    }

    pub fn surd_coefficient(&self) -> Rational {
        Rational::new(self.q, self.den)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational_part())
    }

    fn radicand_with(&self, other: &QuadNum) -> i64 {
        match (self.q, other.q) {
            (0, _) => other.d,
            (_, 0) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "incompatible radicands");
                self.d
            }
        }
    }

    pub fn signum(&self) -> Ordering {
        sign_of(self.p, self.q, self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn mul_int(&self, k: i128) -> QuadNum {
        Self::normalized(mul(self.p, k), mul(self.q, k), self.den, self.d)
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let (rn, rd) = (*r.numer(), *r.denom());
        sign_of(add(mul(self.p, rd), -mul(rn, self.den)), mul(self.q, rd), self.d)
    }

    pub fn cmp_int(&self, k: i128) -> Ordering {
        sign_of(add(self.p, -mul(k, self.den)), self.q, self.d)
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.den as f64
    }

    pub fn floor(&self) -> i128 {
        if self.q == 0 {
            return num_integer::Integer::div_floor(&self.p, &self.den);
        }
        let mut k = self.to_f64().floor() as i128;
        while self.cmp_int(k) == Ordering::Less {
            k -= 1;
        }
        while self.cmp_int(k + 1) != Ordering::Less {
            k += 1;
        }
        k
    }

    /// Representative in `[0, 1)`.
    pub fn fract(&self) -> QuadNum {
        let k = self.floor();
        if k == 0 {
            *self
        } else {
            QuadNum { p: add(self.p, -mul(k, self.den)), ..*self }
        }
    }

    pub fn parse(s: &str) -> Result<QuadNum> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let cleaned = cleaned.replace("sqrt(", "√").replace(')', "").replace("sqrt", "√");
        if cleaned.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes: Vec<char> = cleaned.chars().collect();
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '/' && bytes[i - 1] != '*' {
                terms.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        terms.push(bytes[start..].iter().collect::<String>());

        let mut a = Rational::from_integer(0);
        let mut b = Rational::from_integer(0);
        let mut radicand: Option<i64> = None;
        for term in terms {
            if let Some((coef, rad)) = term.split_once('√') {
                let d: i64 = rad.parse().map_err(|_| Error::Parse(s.to_string()))?;
                if radicand.is_some_and(|r| r != d) {
                    return Err(Error::Parse(format!("mixed radicands in {s}")));
                }
                radicand = Some(d);
                let coef = coef.trim_end_matches('*');
                let c = match coef {
                    "" | "+" => Rational::from_integer(1),
                    "-" => Rational::from_integer(-1),
                    c => parse_rational(c.trim_start_matches('+'))?,
                };
                b += c;
            } else {
                a += parse_rational(term.trim_start_matches('+'))?;
            }
        }
        match radicand {
            Some(d) => QuadNum::new(&a, &b, d),
            None => Ok(QuadNum::from_rational(&a)),
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = format_rational(&self.rational_part());
        if self.q == 0 {
            return write!(f, "{a}");
        }
        let b = self.surd_coefficient();
        if b.is_negative() {
            write!(f, "{a}-{}√{}", format_rational(&-b), self.d)
        } else {
            write!(f, "{a}+{}√{}", format_rational(&b), self.d)
        }
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, o: QuadNum) -> QuadNum {
        let d = self.radicand_with(&o);
        if self.den == o.den {
            return Self::normalized(add(self.p, o.p), add(self.q, o.q), self.den, d);
        }
        Self::normalized(
            add(mul(self.p, o.den), mul(o.p, self.den)),
            add(mul(self.q, o.den), mul(o.q, self.den)),
            mul(self.den, o.den),
            d,
        )
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { p: -self.p, q: -self.q, ..self }
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: QuadNum) -> QuadNum {
        self + (-o)
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
