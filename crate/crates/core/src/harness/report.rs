//! Named checks with exact sides, and the report documents built from them.

use serde::Serialize;

use crate::rational::{abs, format_rational, ExactValue, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CheckDetail {
    Inequality {
        relation: Relation,
        lhs: ExactValue,
        rhs: ExactValue,
        /// `rhs − lhs` for `<=`/`<`, `lhs − rhs` for `>=`, `|lhs − rhs|` for `==`.
        slack: ExactValue,
        /// Both sides are exact values of the quantities named; false when
        /// one side is a finite-window proxy.
        exact: bool,
    },
    /// `|value − target| ≤ tolerance`, used where only a proxy is available.
    Tolerance { value: ExactValue, target: ExactValue, tolerance: ExactValue, deviation: ExactValue },
    Property { statement: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(flatten)]
    pub detail: CheckDetail,
}

impl Check {
    pub fn compare(name: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Check {
        let (holds, slack) = match relation {
            Relation::Le => (lhs <= rhs, rhs - lhs),
            Relation::Lt => (lhs < rhs, rhs - lhs),
            Relation::Ge => (lhs >= rhs, lhs - rhs),
            Relation::Eq => (lhs == rhs, abs(&(lhs - rhs))),
        };
        Check {
            name: name.into(),
            holds,
            detail: CheckDetail::Inequality { relation, lhs: lhs.into(), rhs: rhs.into(), slack: slack.into(), exact: true },
        }
    }

    pub fn ge(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Check {
        Self::compare(name, lhs, Relation::Ge, rhs)
    }

    pub fn le(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Check {
        Self::compare(name, lhs, Relation::Le, rhs)
    }

    pub fn lt(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Check {
        Self::compare(name, lhs, Relation::Lt, rhs)
    }

    pub fn eq(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Check {
        Self::compare(name, lhs, Relation::Eq, rhs)
    }

    pub fn eq_int(name: impl Into<String>, lhs: usize, rhs: usize) -> Check {
        Self::eq(name, Rational::from_integer(lhs as i128), Rational::from_integer(rhs as i128))
    }

    /// Marks an inequality whose sides involve a finite-window proxy.
    pub fn proxied(mut self) -> Check {
        if let CheckDetail::Inequality { exact, .. } = &mut self.detail {
            *exact = false;
        }
        self
    }

    pub fn within(name: impl Into<String>, value: Rational, target: Rational, tolerance: Rational) -> Check {
        let deviation = abs(&(value - target));
        Check {
            name: name.into(),
            holds: deviation <= tolerance,
            detail: CheckDetail::Tolerance {
                value: value.into(),
                target: target.into(),
                tolerance: tolerance.into(),
                deviation: deviation.into(),
            },
        }
    }

    pub fn property(name: impl Into<String>, holds: bool, statement: impl Into<String>) -> Check {
        Check { name: name.into(), holds, detail: CheckDetail::Property { statement: statement.into() } }
    }

    pub fn describe(&self) -> String {
        let mark = if self.holds { "ok" } else { "FAIL" };
        match &self.detail {
            CheckDetail::Inequality { relation, lhs, rhs, .. } => {
                let rel = serde_json::to_value(relation).unwrap();
                format!(
                    "[{mark}] {}: {} {} {}",
                    self.name,
                    format_rational(&lhs.exact),
                    rel.as_str().unwrap(),
                    format_rational(&rhs.exact)
                )
            }
            CheckDetail::Tolerance { value, target, tolerance, .. } => format!(
                "[{mark}] {}: |{} - {}| <= {}",
                self.name,
                format_rational(&value.exact),
                format_rational(&target.exact),
                format_rational(&tolerance.exact)
            ),
            CheckDetail::Property { statement } => format!("[{mark}] {}: {statement}", self.name),
        }
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}

/// Stable pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn slack_signs() {
        let c = Check::ge("x", rat(3, 5), rat(2, 5));
        assert!(c.holds);
        let CheckDetail::Inequality { slack, .. } = &c.detail else { panic!() };
        assert_eq!(slack.exact, rat(1, 5));
        assert!(!Check::lt("y", rat(3, 5), rat(3, 5)).holds);
        assert!(Check::within("z", rat(59, 100), rat(3, 5), rat(1, 50)).holds);
        assert_eq!(Check::ge("x", rat(3, 5), rat(2, 5)).describe(), "[ok] x: 3/5 >= 2/5");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(Check::le("m", rat(1, 2), rat(1, 1))).unwrap();
        assert_eq!(v["type"], "inequality");
        assert_eq!(v["relation"], "<=");
        assert_eq!(v["lhs"]["exact"], "1/2");
    }
}
