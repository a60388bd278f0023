//! One record per checked inequality.

use alloc::string::String;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Relation {
    /// lhs ≤ rhs
    Le,
    /// lhs ≥ rhs
    Ge,
    /// lhs = rhs
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub check: String,
    /// NaN when unused.
    pub param1: f64,
    pub param2: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// Signed slack: positive when the inequality holds strictly.
    pub margin: f64,
    pub tolerance: f64,
    pub holds: bool,
    /// Reported-only checks never count as failures.
    pub asserted: bool,
    /// Citation key of the inequality being checked.
    pub key: String,
    pub note: String,
}

impl BoundReport {
    pub fn new(check: impl Into<String>, key: &str, relation: Relation, lhs: f64, rhs: f64) -> Self {
        let mut r = Self {
            check: check.into(),
            param1: f64::NAN,
            param2: f64::NAN,
            lhs,
            rhs,
            relation,
            margin: 0.0,
            tolerance: 0.0,
            holds: false,
            asserted: true,
            key: key.into(),
            note: String::new(),
        };
        r.evaluate();
        r
    }

    pub fn le(check: impl Into<String>, key: &str, lhs: f64, rhs: f64) -> Self {
        Self::new(check, key, Relation::Le, lhs, rhs)
    }

    pub fn ge(check: impl Into<String>, key: &str, lhs: f64, rhs: f64) -> Self {
        Self::new(check, key, Relation::Ge, lhs, rhs)
    }

    pub fn eq(check: impl Into<String>, key: &str, lhs: f64, rhs: f64) -> Self {
        Self::new(check, key, Relation::Eq, lhs, rhs)
    }

    /// A plain true/false property (lhs = rhs = 1 or 0).
    pub fn flag(check: impl Into<String>, key: &str, ok: bool) -> Self {
        Self::ge(check, key, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    fn evaluate(&mut self) {
        self.margin = match self.relation {
            Relation::Le => self.rhs - self.lhs,
            Relation::Ge => self.lhs - self.rhs,
            Relation::Eq => -(self.lhs - self.rhs).abs(),
        };
        self.holds = self.margin >= -self.tolerance;
    }

    pub fn params(mut self, p1: f64, p2: f64) -> Self {
        self.param1 = p1;
        self.param2 = p2;
        self
    }

    /// Absolute slack granted to the margin (numerical tolerance band).
    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self.evaluate();
        self
    }

    pub fn reported_only(mut self) -> Self {
        self.asserted = false;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// An asserted check that does not hold.
    pub fn is_failure(&self) -> bool {
        self.asserted && !self.holds
    }
}
