use serde::Serialize;

use crate::error::{Error, Result};

/// A set of integers observed on the symmetric window `[−radius, radius]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerWindowSet {
    radius: i64,
    members: Vec<bool>,
}

impl IntegerWindowSet {
    pub fn empty(radius: i64) -> Self {
        assert!(radius >= 0);
        IntegerWindowSet { radius, members: vec![false; (2 * radius + 1) as usize] }
    }

    pub fn from_predicate(radius: i64, mut f: impl FnMut(i64) -> bool) -> Self {
        IntegerWindowSet { radius, members: (-radius..=radius).map(&mut f).collect() }
    }

    /// Members outside the window are rejected.
    pub fn from_members(radius: i64, members: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut s = Self::empty(radius);
        for g in members {
            if g.abs() > radius {
                return Err(Error::WindowExhausted { needed: g.abs(), window: radius });
            }
            s.insert(g);
        }
        Ok(s)
    }

    /// Parses the membership-file format: one integer per line, `#` comments
    /// and blank lines ignored. Without an explicit radius the window is the
    /// smallest one containing every member.
    pub fn parse_membership(text: &str, radius: Option<i64>) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: i64 = line
                .parse()
                .map_err(|_| Error::config(format!("line {}", lineno + 1), format!("not an integer: {line:?}")))?;
            values.push(v);
        }
        let radius = radius.unwrap_or_else(|| values.iter().map(|v| v.abs()).max().unwrap_or(0));
        Self::from_members(radius, values)
    }

    pub fn to_membership_lines(&self) -> String {
        let mut s = String::new();
        for g in self.iter() {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn insert(&mut self, g: i64) {
        let i = self.slot(g).expect("inside window");
        self.members[i] = true;
    }

    fn slot(&self, g: i64) -> Option<usize> {
        (g.abs() <= self.radius).then(|| (g + self.radius) as usize)
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Number of integers in the window.
    pub fn window_len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: i64) -> bool {
        self.slot(g).is_some_and(|i| self.members[i])
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        let r = self.radius;
        self.members.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| i as i64 - r)
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn restrict(&self, radius: i64) -> Self {
        let radius = radius.min(self.radius);
        IntegerWindowSet::from_predicate(radius, |g| self.contains(g))
    }

    /// Elements of the common window where the two sets disagree.
    pub fn symmetric_difference(&self, other: &IntegerWindowSet) -> Vec<i64> {
        let r = self.radius.min(other.radius);
        (-r..=r).filter(|&g| self.contains(g) != other.contains(g)).collect()
    }

    /// Translate by `t`, keeping the window.
    pub fn shifted(&self, t: i64) -> Self {
        IntegerWindowSet::from_predicate(self.radius, |g| self.contains(g - t))
    }

    pub fn is_subset(&self, other: &IntegerWindowSet) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn summary(&self, sample_radius: i64) -> WindowSummary {
        let r = sample_radius.min(self.radius);
        WindowSummary {
            radius: self.radius,
            count: self.count(),
            sample_radius: r,
            sample: (-r..=r).filter(|&g| self.contains(g)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowSummary {
    pub radius: i64,
    pub count: usize,
    pub sample_radius: i64,
    pub sample: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_file() {
        let s = IntegerWindowSet::parse_membership("3\n-2\n\n# note\n0\n", None).unwrap();
        assert_eq!(s.radius(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![-2, 0, 3]);
        assert_eq!(s.to_membership_lines(), "-2\n0\n3\n");
        assert!(IntegerWindowSet::parse_membership("5\n", Some(4)).is_err());
        assert!(IntegerWindowSet::parse_membership("x\n", None).is_err());
    }

    #[test]
    fn window_ops() {
        let s = IntegerWindowSet::from_predicate(5, |g| g % 2 == 0);
        assert_eq!(s.count(), 5);
        assert!(!s.contains(6));
        let t = s.shifted(1);
        assert_eq!(s.symmetric_difference(&t).len(), 10);
        assert_eq!(s.restrict(2).iter().collect::<Vec<_>>(), vec![-2, 0, 2]);
    }
}
