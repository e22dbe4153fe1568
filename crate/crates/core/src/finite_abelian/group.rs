use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: u64 = 1 << 20;

/// Element of a [`FiniteAbelianGroup`], given by its mixed-radix index.
pub type Element = usize;

/// `Z/n_1 × … × Z/n_k`, elements indexed by mixed-radix encoding with the
/// first factor least significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor must be positive".into()));
        }
        let mut order: u64 = 1;
        for &n in &factors {
            order = order
                .checked_mul(n)
                .filter(|&o| o <= MAX_ORDER)
                .ok_or(Error::GroupOrderLimit { order: order.saturating_mul(n), limit: MAX_ORDER })?;
        }
        Ok(FiniteAbelianGroup { factors, order: order as usize })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new(), order: 1 }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.factors.iter().filter(|&&n| n > 1).count() <= 1
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn check(&self, x: u64) -> Result<Element> {
        if (x as u128) < self.order as u128 {
            Ok(x as Element)
        } else {
            Err(Error::ElementOutOfRange(x, self.order))
        }
    }

    pub fn decode(&self, mut x: Element) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&n| {
                let c = x as u64 % n;
                x /= n as usize;
                c
            })
            .collect()
    }

    /// Coordinates are reduced modulo their factor.
    pub fn encode(&self, coords: &[i128]) -> Element {
        assert_eq!(coords.len(), self.factors.len(), "coordinate arity");
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (&c, &n) in coords.iter().zip(&self.factors) {
            idx += c.rem_euclid(n as i128) as usize * stride;
            stride *= n as usize;
        }
        idx
    }

    pub fn add(&self, mut x: Element, mut y: Element) -> Element {
        if self.factors.len() == 1 {
            return (x + y) % self.order;
        }
        let mut r = 0;
        let mut stride = 1;
        for &n in &self.factors {
            let n = n as usize;
            r += ((x % n + y % n) % n) * stride;
            x /= n;
            y /= n;
            stride *= n;
        }
        r
    }

    pub fn neg(&self, mut x: Element) -> Element {
        let mut r = 0;
        let mut stride = 1;
        for &n in &self.factors {
            let n = n as usize;
            r += ((n - x % n) % n) * stride;
            x /= n;
            stride *= n;
        }
        r
    }

    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    pub fn scale(&self, k: i64, x: Element) -> Element {
        let coords: Vec<i128> = self.decode(x).iter().map(|&c| c as i128 * k as i128).collect();
        self.encode(&coords)
    }

    pub fn element_order(&self, x: Element) -> u64 {
        self.decode(x)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| n / num_integer::gcd(c, n))
            .fold(1, num_integer::lcm)
    }
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.factors
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
