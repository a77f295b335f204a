use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of applying one congruence battery to one input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    /// Violates a congruence; no curve with this data exists.
    Prohibited,
    /// Only a type I curve can have this data.
    TypeIOnly,
    /// Not prohibited by the implemented battery. Says nothing about realizability.
    NoConstraint,
    /// The statement's hypothesis does not hold, so it says nothing.
    HypothesisNotSatisfied,
}

impl Status {
    /// Strength used when several statuses are merged into one row.
    fn rank(self) -> u8 {
        match self {
            Status::Prohibited => 3,
            Status::TypeIOnly => 2,
            Status::NoConstraint => 1,
            Status::HypothesisNotSatisfied => 0,
        }
    }

    /// The stronger of two statuses.
    pub fn merge(self, other: Status) -> Status {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Prohibited => "Prohibited",
            Status::TypeIOnly => "TypeIOnly",
            Status::NoConstraint => "NoConstraint",
            Status::HypothesisNotSatisfied => "HypothesisNotSatisfied",
        };
        f.write_str(s)
    }
}

/// One congruence `value ≡ allowed (mod modulus)` with both sides reduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub clause: String,
    pub quantity: String,
    pub value: i64,
    pub modulus: i64,
    /// Reduced residue of `value`.
    pub residue: i64,
    /// Allowed residues, reduced and sorted.
    pub allowed: Vec<i64>,
    pub holds: bool,
}

impl ResidueCheck {
    pub fn new(
        clause: impl Into<String>,
        quantity: impl Into<String>,
        value: i64,
        modulus: i64,
        allowed: impl IntoIterator<Item = i64>,
    ) -> Self {
        let mut allowed: Vec<i64> = allowed.into_iter().map(|a| a.rem_euclid(modulus)).collect();
        allowed.sort_unstable();
        allowed.dedup();
        let residue = value.rem_euclid(modulus);
        let holds = allowed.contains(&residue);
        ResidueCheck { clause: clause.into(), quantity: quantity.into(), value, modulus, residue, allowed, holds }
    }
}

impl fmt::Display for ResidueCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let allowed: Vec<String> = self.allowed.iter().map(i64::to_string).collect();
        write!(
            f,
            "[{}] {} = {} ≡ {} mod {}, need {{{}}}: {}",
            self.clause,
            self.quantity,
            self.value,
            self.residue,
            self.modulus,
            allowed.join(","),
            if self.holds { "ok" } else { "violated" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<ResidueCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(status: Status) -> Self {
        Verdict { status, reasons: Vec::new(), notes: Vec::new() }
    }

    pub fn hypothesis_not_satisfied(note: impl Into<String>) -> Self {
        Verdict { status: Status::HypothesisNotSatisfied, reasons: Vec::new(), notes: vec![note.into()] }
    }

    pub fn is_prohibited(&self) -> bool {
        self.status == Status::Prohibited
    }
}

