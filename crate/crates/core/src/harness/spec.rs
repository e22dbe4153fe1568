//! JSON system descriptions and their validated, built forms.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::circle::{Angle, RotationSystem, TorusSet};
use crate::error::{Error, Result};
use crate::finite_abelian::{FiniteAbelianGroup, GroupSubset};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::window::IntegerWindowSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// `Z` acting on `Z/N` by `+1`.
    #[default]
    Shift,
    /// `G` acting on itself by translation.
    Regular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteSpec {
    pub factors: Vec<u64>,
    #[serde(default)]
    pub action: Action,
    /// Elements in mixed-radix encoding, first factor least significant.
    pub a: Vec<u64>,
    /// Defaults to `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationSpec {
    /// `"p/q"` or a quadratic irrational such as `"-1+1√2"` / `"sqrt(2)-1"`.
    pub alpha: String,
    /// Half-open intervals `[lo, hi)` with rational endpoints.
    pub a: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeMixtureSpec {
    pub primes: Vec<u64>,
    pub eta: String,
    pub delta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemSpec {
    FiniteTranslation(FiniteSpec),
    Rotation(RotationSpec),
    PrimeMixture(PrimeMixtureSpec),
}

/// Parses JSON, reporting the path of the offending field.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::config(if path.is_empty() { ".".to_string() } else { path }, e.into_inner().to_string())
    })
}

fn variant<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        Error::config(if path.is_empty() { ".".to_string() } else { path }, e.into_inner().to_string())
    })
}

// Internally tagged enums lose field paths, so dispatch on `kind` by hand.
impl<'de> Deserialize<'de> for SystemSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SystemSpec::from_value(Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl SystemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::config(".", e.to_string()))?;
        Self::from_value(v)
    }

    pub fn from_value(mut v: Value) -> Result<Self> {
        let obj = v.as_object_mut().ok_or_else(|| Error::config(".", "expected an object"))?;
        let kind = match obj.remove("kind") {
            Some(Value::String(k)) => k,
            Some(_) => return Err(Error::config("kind", "expected a string")),
            None => return Err(Error::config("kind", "missing field")),
        };
        match kind.as_str() {
            "finite_translation" => variant(v).map(SystemSpec::FiniteTranslation),
            "rotation" => variant(v).map(SystemSpec::Rotation),
            "prime_mixture" => variant(v).map(SystemSpec::PrimeMixture),
            other => Err(Error::config(
                "kind",
                format!("unknown kind {other:?}, expected finite_translation, rotation or prime_mixture"),
            )),
        }
    }

    pub fn build(&self) -> Result<System> {
        match self {
            SystemSpec::FiniteTranslation(s) => s.build().map(System::Finite),
            SystemSpec::Rotation(s) => s.build().map(System::Rotation),
            SystemSpec::PrimeMixture(s) => s.build().map(System::PrimeMixture),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SystemSpec::FiniteTranslation(_) => "finite_translation",
            SystemSpec::Rotation(_) => "rotation",
            SystemSpec::PrimeMixture(_) => "prime_mixture",
        }
    }
}

#[derive(Clone, Debug)]
pub enum System {
    Finite(FiniteSystem),
    Rotation(RotationSystem),
    PrimeMixture(PrimeMixture),
}

#[derive(Clone, Debug)]
pub struct FiniteSystem {
    pub group: FiniteAbelianGroup,
    pub action: Action,
    pub a: GroupSubset,
    pub b: GroupSubset,
}

fn subset(group: &FiniteAbelianGroup, elems: &[u64], path: &str) -> Result<GroupSubset> {
    if elems.is_empty() {
        return Err(Error::config(path, "set must be nonempty"));
    }
    for (i, &x) in elems.iter().enumerate() {
        if x as u128 >= group.order() as u128 {
            return Err(Error::config(format!("{path}[{i}]"), format!("element {x} outside a group of order {}", group.order())));
        }
    }
    GroupSubset::from_elements(group, elems.iter().copied())
}

impl FiniteSpec {
    pub fn build(&self) -> Result<FiniteSystem> {
        let group = FiniteAbelianGroup::new(self.factors.clone()).map_err(|e| Error::config("factors", e.to_string()))?;
        if self.action == Action::Shift && self.factors.len() != 1 {
            return Err(Error::config("action", "shift action needs a single cyclic factor"));
        }
        let a = subset(&group, &self.a, "a")?;
        let b = match &self.b {
            Some(b) => subset(&group, b, "b")?,
            None => a.clone(),
        };
        Ok(FiniteSystem { group, action: self.action, a, b })
    }
}

fn torus(parts: &[[String; 2]], path: &str) -> Result<TorusSet> {
    if parts.is_empty() {
        return Err(Error::config(path, "set must be nonempty"));
    }
    let mut ivs = Vec::with_capacity(parts.len());
    for (i, [lo, hi]) in parts.iter().enumerate() {
        let lo_r = parse_rational(lo).map_err(|e| Error::config(format!("{path}[{i}][0]"), e.to_string()))?;
        let hi_r = parse_rational(hi).map_err(|e| Error::config(format!("{path}[{i}][1]"), e.to_string()))?;
        if !(Rational::zero() <= lo_r && lo_r < hi_r && hi_r <= Rational::one()) {
            return Err(Error::config(format!("{path}[{i}]"), "need 0 <= lo < hi <= 1"));
        }
        ivs.push((lo_r, hi_r));
    }
    TorusSet::from_intervals(ivs).map_err(|e| Error::config(path, e.to_string()))
}

impl RotationSpec {
    pub fn build(&self) -> Result<RotationSystem> {
        let alpha: Angle = self.alpha.parse().map_err(|e: Error| Error::config("alpha", e.to_string()))?;
        let a = torus(&self.a, "a")?;
        let b = match &self.b {
            Some(b) => torus(b, "b")?,
            None => a.clone(),
        };
        RotationSystem::new(alpha, a, b)
    }

    /// Spec for two intervals `[lo, hi)`.
    pub fn intervals(alpha: &str, a: (Rational, Rational), b: (Rational, Rational)) -> Self {
        let iv = |(lo, hi): (Rational, Rational)| vec![[format_rational(&lo), format_rational(&hi)]];
        RotationSpec { alpha: alpha.to_string(), a: iv(a), b: Some(iv(b)) }
    }

    pub fn from_system(alpha: &str, a: &TorusSet, b: &TorusSet) -> Self {
        let iv = |s: &TorusSet| s.intervals().iter().map(|(lo, hi)| [format_rational(lo), format_rational(hi)]).collect();
        RotationSpec { alpha: alpha.to_string(), a: iv(a), b: Some(iv(b)) }
    }
}

/// The shift on `2^Z` averaged over the orbits of `p_k Z`, with weights
/// `1 − η` on `p_1` and `η / 2^{k−1}` on `p_k` for `k ≥ 2`; the last prime
/// carries the remaining tail weight.  `A` is the cylinder `{x : x_0 = 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeMixture {
    pub primes: Vec<u64>,
    #[serde(with = "crate::rational::serde_str")]
    pub eta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
}

/// Largest product of configured primes; keeps every density exact in `i128`.
pub const PRIME_PRODUCT_LIMIT: u128 = 1_000_000_000_000_000_000_000_000_000_000;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeMixtureSpec {
    pub fn build(&self) -> Result<PrimeMixture> {
        let eta = parse_rational(&self.eta).map_err(|e| Error::config("eta", e.to_string()))?;
        let delta = parse_rational(&self.delta).map_err(|e| Error::config("delta", e.to_string()))?;
        if !(eta > Rational::zero() && eta < Rational::one()) {
            return Err(Error::config("eta", "need 0 < eta < 1"));
        }
        if !(delta > Rational::zero() && delta <= Rational::one()) {
            return Err(Error::config("delta", "need 0 < delta <= 1"));
        }
        if self.primes.len() < 2 {
            return Err(Error::config("primes", "need at least two primes"));
        }
        let mut product: u128 = 1;
        for (i, &p) in self.primes.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::config(format!("primes[{i}]"), format!("{p} is not prime")));
            }
            if i > 0 && p <= self.primes[i - 1] {
                return Err(Error::config(format!("primes[{i}]"), "primes must be strictly increasing"));
            }
            product = product.saturating_mul(p as u128);
            if product > PRIME_PRODUCT_LIMIT {
                return Err(Error::config("primes", "product of primes exceeds 10^30"));
            }
        }
        let m = PrimeMixture { primes: self.primes.clone(), eta, delta };
        let (lhs, rhs) = m.tail_condition();
        if m.inverse_first() >= delta {
            return Err(Error::config("primes[0]", format!("need 1/p_1 < delta = {}", format_rational(&delta))));
        }
        if lhs > rhs {
            return Err(Error::config(
                "primes",
                format!("tail sum {} exceeds eta/p_1 = {}", format_rational(&lhs), format_rational(&rhs)),
            ));
        }
        Ok(m)
    }
}

impl PrimeMixture {
    fn inv(p: u64) -> Rational {
        Rational::new(1, p as i128)
    }

    pub fn inverse_first(&self) -> Rational {
        Self::inv(self.primes[0])
    }

    /// `(Σ_{k≥2} 1/p_k, η/p_1)`.
    pub fn tail_condition(&self) -> (Rational, Rational) {
        let tail = self.primes[1..].iter().map(|&p| Self::inv(p)).fold(Rational::zero(), |s, x| s + x);
        (tail, self.eta * self.inverse_first())
    }

    /// Mixture weights, summing to 1.
    pub fn weights(&self) -> Vec<Rational> {
        let k = self.primes.len();
        let mut w = vec![Rational::one() - self.eta];
        for i in 2..=k {
            let exp = if i == k { i - 2 } else { i - 1 };
            w.push(self.eta / Rational::from_integer(1i128 << exp));
        }
        w
    }

    pub fn measure_a(&self) -> Rational {
        self.weights().iter().zip(&self.primes).fold(Rational::zero(), |s, (w, &p)| s + w * Self::inv(p))
    }

    /// Natural density of `⋃ p_k Z`, which is `1 − Π (1 − 1/p_k)`.
    pub fn transfer_density(&self) -> Rational {
        Rational::one() - self.primes.iter().fold(Rational::one(), |s, &p| s * (Rational::one() - Self::inv(p)))
    }

    /// `(1 + η) / (1 − η)`.
    pub fn ratio_bound(&self) -> Rational {
        (Rational::one() + self.eta) / (Rational::one() - self.eta)
    }

    pub fn transfer_set(&self, window: i64) -> IntegerWindowSet {
        IntegerWindowSet::from_predicate(window, |g| self.primes.iter().any(|&p| g % p as i64 == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parses_each_kind() {
        let f = SystemSpec::from_json(r#"{"kind":"finite_translation","factors":[5],"a":[0,1]}"#).unwrap();
        let System::Finite(f) = f.build().unwrap() else { panic!() };
        assert_eq!(f.b.to_vec(), vec![0, 1]);
        assert_eq!(f.action, Action::Shift);

        let r = SystemSpec::from_json(r#"{"kind":"rotation","alpha":"sqrt(2)-1","a":[["0","3/10"]],"b":[["1/2","4/5"]]}"#)
            .unwrap();
        assert!(matches!(r.build().unwrap(), System::Rotation(_)));
    }

    #[test]
    fn errors_carry_field_paths() {
        let path = |text: &str| match SystemSpec::from_json(text).and_then(|s| s.build().map(|_| ())) {
            Err(Error::Config { path, .. }) => path,
            other => panic!("{other:?}"),
        };
        assert_eq!(path(r#"{"kind":"finite_translation","factors":[5],"a":[0,7]}"#), "a[1]");
        assert_eq!(path(r#"{"kind":"finite_translation","factors":[5],"a":["x"]}"#), "a[0]");
        assert_eq!(path(r#"{"kind":"finite_translation","factors":[2,3],"a":[0]}"#), "action");
        assert_eq!(path(r#"{"kind":"rotation","alpha":"1/3","a":[["0","2"]]}"#), "a[0]");
        assert_eq!(path(r#"{"kind":"rotation","alpha":"zz","a":[["0","1/2"]]}"#), "alpha");
        assert_eq!(path(r#"{"kind":"prime_mixture","primes":[5,11,23],"eta":"1/5","delta":"1/4"}"#), "primes");
        assert_eq!(path(r#"{"kind":"prime_mixture","primes":[5,9],"eta":"1/5","delta":"1/4"}"#), "primes[1]");
        assert_eq!(path(r#"{"kind":"prime_mixture","primes":[5,53],"eta":"1/5","delta":"1/5"}"#), "primes[0]");
        assert_eq!(path(r#"{"kind":"rotation","alpha":"1/3","a":[["0","1/2"]],"extra":1}"#), "extra");
        assert_eq!(path(r#"{"kind":"torus"}"#), "kind");
        assert_eq!(path(r#"{"factors":[2]}"#), "kind");
    }

    #[test]
    fn prime_mixture_closed_forms() {
        let spec = PrimeMixtureSpec { primes: vec![5, 53, 107, 211, 421, 853], eta: "1/5".into(), delta: "1/4".into() };
        let m = spec.build().unwrap();
        let w = m.weights();
        assert_eq!(w.iter().fold(Rational::zero(), |s, x| s + x), Rational::one());
        assert_eq!(w[1], rat(1, 10));
        assert_eq!(w[5], rat(1, 80));
        assert_eq!(w[4], rat(1, 80));
        assert!(m.measure_a() < m.delta);
        assert!(m.transfer_density() <= m.ratio_bound() * m.measure_a());
        let two = PrimeMixture { primes: vec![2, 3], eta: rat(1, 2), delta: Rational::one() };
        assert_eq!(two.transfer_density(), rat(2, 3));
        assert_eq!(two.measure_a(), rat(1, 4) + rat(1, 6));
    }
}
