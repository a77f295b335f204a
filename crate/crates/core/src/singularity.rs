//! Even singular points and plane curves of even degree `m = 2k` whose
//! singular points are imaginary and come in conjugate pairs.
//!
//! A singular point is described by its multiplicity sequence: the sums
//! `s_j` of multiplicities of infinitely near points in round `j` of the
//! resolution. The point is even when every `s_j` is odd, and then its Arf
//! invariant is `Σ (s_j² − 1)/8 mod 2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scheme::{plane_euler_parts, PlaneScheme, SchemeError};
use crate::verdict::{ResidueCheck, Status, Verdict};

/// Arf invariant of an ordinary cusp.
pub const CUSP_ARF: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("multiplicity sequence has an even entry {value} at position {position}")]
    EvenSequence { position: usize, value: u64 },
    #[error("multiplicities must be positive (position {0})")]
    ZeroMultiplicity(usize),
    #[error("bad multiplicity sequence `{0}`")]
    Syntax(String),
    #[error("the chosen half of the plane is not orientable")]
    NonOrientablePlus,
    #[error("Ar must be 0 or 1, got {0}")]
    BadArf(u8),
    #[error("k must be positive")]
    ZeroK,
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MultiplicitySequence(pub Vec<u64>);

impl MultiplicitySequence {
    pub fn new(s: Vec<u64>) -> Result<Self, SingularityError> {
        if let Some(p) = s.iter().position(|&v| v == 0) {
            return Err(SingularityError::ZeroMultiplicity(p));
        }
        Ok(MultiplicitySequence(s))
    }
}

impl FromStr for MultiplicitySequence {
    type Err = SingularityError;

    /// Comma separated, e.g. `"3,5"`. The empty string is a smooth point.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(MultiplicitySequence::default());
        }
        let values = text
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| SingularityError::Syntax(text.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        MultiplicitySequence::new(values)
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn is_odd_sequence(ms: &MultiplicitySequence) -> bool {
    ms.0.iter().all(|s| s % 2 == 1)
}

pub fn arf_of_sequence(ms: &MultiplicitySequence) -> Result<u8, SingularityError> {
    let mut total = 0u64;
    for (position, &s) in ms.0.iter().enumerate() {
        if s % 2 == 0 {
            return Err(SingularityError::EvenSequence { position, value: s });
        }
        // (s² − 1)/8 = (s−1)(s+1)/8; mod 2 only its parity matters
        let term = ((s - 1) / 2) * ((s + 1) / 2) / 2;
        total ^= term & 1;
    }
    Ok(total as u8)
}

/// Deficiency and type data accepted by the plane congruences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlaneCurveClass {
    M,
    MMinus1,
    MMinus2TypeII,
    TypeI,
}

impl FromStr for PlaneCurveClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['−', ' '], "-").as_str() {
            "m" => Ok(PlaneCurveClass::M),
            "m-1" => Ok(PlaneCurveClass::MMinus1),
            "m-2" | "m-2-typeii" | "m-2-ii" => Ok(PlaneCurveClass::MMinus2TypeII),
            "i" | "typei" | "type-i" => Ok(PlaneCurveClass::TypeI),
            other => Err(format!("unknown curve class `{other}` (expected M, M-1, M-2, I)")),
        }
    }
}

impl PlaneCurveClass {
    fn clause(self) -> &'static str {
        match self {
            PlaneCurveClass::M => "a",
            PlaneCurveClass::MMinus1 => "b",
            PlaneCurveClass::MMinus2TypeII => "c",
            PlaneCurveClass::TypeI => "d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct A1Input {
    /// Half the degree.
    pub k: u64,
    pub chi_plus: i64,
    pub plus_orientable: bool,
    pub curve_class: PlaneCurveClass,
    /// Sum of Arf invariants, one point from each conjugate pair, mod 2.
    pub ar: u8,
}

/// Residue sets, before any β̃ or b̃ correction: `(modulus, residues)`.
fn residues(k: u64, ar: u8, class: PlaneCurveClass, shift: i64) -> (i64, Vec<i64>) {
    let k2 = (k as i64) * (k as i64);
    let base = k2 + 4 * i64::from(ar) + shift;
    match class {
        PlaneCurveClass::M => (8, vec![base]),
        PlaneCurveClass::MMinus1 => (8, vec![base + 1, base - 1]),
        PlaneCurveClass::MMinus2TypeII => (8, vec![base, base + 2, base - 2]),
        PlaneCurveClass::TypeI => (4, vec![k2 + shift]),
    }
}

fn check_common(k: u64, ar: u8) -> Result<(), SingularityError> {
    if k == 0 {
        return Err(SingularityError::ZeroK);
    }
    if ar > 1 {
        return Err(SingularityError::BadArf(ar));
    }
    Ok(())
}

pub fn prop_a1_verdict(input: &A1Input) -> Result<Verdict, SingularityError> {
    check_common(input.k, input.ar)?;
    if !input.plus_orientable {
        return Err(SingularityError::NonOrientablePlus);
    }
    let (modulus, allowed) = residues(input.k, input.ar, input.curve_class, 0);
    let c = ResidueCheck::new(format!("A1{}", input.curve_class.clause()), "chi(RP2+)", input.chi_plus, modulus, allowed);
    let status = if c.holds { Status::NoConstraint } else { Status::Prohibited };
    Ok(Verdict { status, reasons: vec![c], notes: Vec::new() })
}

/// Allowed residues of `χ(ℝP²₊)` once the Brown invariant `β̃` of the
/// auxiliary form and the correction `b̃` are known: `(modulus, residues)`.
/// The type I clause is mod 4 and has no Arf term.
pub fn prop_a2_required_residues(
    k: u64,
    beta_tilde: u8,
    b_tilde: i64,
    ar: u8,
    class: PlaneCurveClass,
) -> Result<(i64, Vec<i64>), SingularityError> {
    check_common(k, ar)?;
    let (m, mut r) = residues(k, ar, class, i64::from(beta_tilde % 8) + b_tilde);
    for v in &mut r {
        *v = v.rem_euclid(m);
    }
    r.sort_unstable();
    r.dedup();
    Ok((m, r))
}

/// Harnack bound `(m−1)(m−2)/2 + 1` for nonsingular plane curves of degree `m`.
pub fn plane_harnack_bound(m: u64) -> u64 {
    (m - 1) * (m - 2) / 2 + 1
}

/// Plane check on a scheme: the orientable half is `ℝP²₊`. Oval counts
/// above the nonsingular Harnack bound are noted, not rejected.
pub fn plane_check(scheme: &PlaneScheme, k: u64, class: PlaneCurveClass, ar: u8) -> Result<Verdict, SingularityError> {
    check_common(k, ar)?;
    let m = 2 * k;
    let bound = plane_harnack_bound(m);
    let l = scheme.oval_count();
    let [_, orientable] = plane_euler_parts(scheme);
    let mut v = prop_a1_verdict(&A1Input {
        k,
        chi_plus: orientable.chi,
        plus_orientable: orientable.orientable,
        curve_class: class,
        ar,
    })?;
    v.notes.push(format!("RP2+ is the orientable half, chi = {}", orientable.chi));
    if l as u64 > bound {
        v.notes.push(format!("{l} ovals exceed the Harnack bound {bound} for degree {m}"));
    }
    Ok(v)
}
