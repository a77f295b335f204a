//! Congruences for nonsingular real curves of bidegree `(d, d)` on an
//! ellipsoid, evaluated on sphere schemes.
//!
//! Odd `d`: residues of `χ(B0)`, `χ(B1)` mod 8 by deficiency `k` (M, M-1, M-2)
//! and mod 4 for type I curves. Even `d`: residues mod 16 for M-curves whose
//! B1 components all have even Euler characteristic, and mod 8 for type I
//! curves admitting a B0 orientation with `x(C) = 0` on every disorienting oval.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::harnack_bound;
use crate::scheme::{euler_parts, x_of_oval, Labeling, OrientedScheme, PartLabeling, SchemeError, SphereScheme};
use crate::verdict::{ResidueCheck, Status, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("bidegree ({0}, {0}) is even; this statement needs odd d")]
    EvenDegree(u32),
    #[error("bidegree ({0}, {0}) is odd; this statement needs even d")]
    OddDegree(u32),
    #[error("d must be positive")]
    ZeroDegree,
    #[error("{l} ovals exceed the Harnack bound {bound}")]
    ExceedsHarnack { l: usize, bound: usize },
    #[error("not an M-curve: {l} ovals, M = {bound}")]
    NotMCurve { l: usize, bound: usize },
    #[error("the number of ovals is odd (l = {0})")]
    OddOvalCount(usize),
    #[error("Brown invariant must be a residue mod 8, got {0}")]
    BadBrown(u8),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveType {
    I,
    II,
    Unknown,
}

/// Deficiency `k` (an (M-k)-curve) and the claimed Klein type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    pub k: usize,
    pub claimed_type: CurveType,
}

impl CurveClass {
    pub fn of(l: usize, d: u32, claimed_type: CurveType) -> Result<Self, CongruenceError> {
        let bound = harnack_bound(d);
        if l > bound {
            return Err(CongruenceError::ExceedsHarnack { l, bound });
        }
        Ok(CurveClass { k: bound - l, claimed_type })
    }
}

/// Self-intersections `W∘W = d² − 2χ(B0)` and `W1∘W1 = d² − χ(B1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicNumbers {
    pub w_self: i64,
    pub w1_self: i64,
}

pub fn characteristic_numbers(d: u32, labeling: &Labeling) -> CharacteristicNumbers {
    let d2 = i64::from(d) * i64::from(d);
    CharacteristicNumbers { w_self: d2 - 2 * labeling.chi0, w1_self: d2 - labeling.chi1 }
}

fn check_degree(d: u32) -> Result<i64, CongruenceError> {
    if d == 0 {
        return Err(CongruenceError::ZeroDegree);
    }
    Ok(i64::from(d) * i64::from(d))
}

fn labeling_tag(parts: &PartLabeling, lab: &Labeling) -> String {
    if parts.is_ambiguous() {
        format!(" (B0 = color {})", lab.b0_color)
    } else {
        String::new()
    }
}

/// Verdict for odd `d` from the oval count and the Euler characteristics of
/// the two halves. For odd `l` the labeling is free and clauses are checked
/// for both.
pub fn theorem1_verdict(s: &SphereScheme, d: u32, claimed: CurveType) -> Result<Verdict, CongruenceError> {
    let d2 = check_degree(d)?;
    if d % 2 == 0 {
        return Err(CongruenceError::EvenDegree(d));
    }
    let class = CurveClass::of(s.oval_count(), d, claimed)?;
    let parts = euler_parts(s);
    let labelings = parts.labelings();
    let mut v = Verdict::new(Status::NoConstraint);

    match class.k {
        0 => {
            // l odd; both halves must satisfy the same residue, so this is label-free
            let target = (d2 + 1) / 2;
            let lab = labelings[0];
            let c0 = ResidueCheck::new("1a", "chi(B0)", lab.chi0, 8, [target]);
            let c1 = ResidueCheck::new("1a", "chi(B1)", lab.chi1, 8, [target]);
            if !(c0.holds && c1.holds) {
                v.status = Status::Prohibited;
            }
            v.reasons.extend([c0, c1]);
        }
        1 => {
            let lab = labelings[0];
            let c0 = ResidueCheck::new("1b", "chi(B0)", lab.chi0, 8, [(d2 - 1) / 2]);
            let c1 = ResidueCheck::new("1b", "chi(B1)", lab.chi1, 8, [(d2 + 3) / 2]);
            if !(c0.holds && c1.holds) {
                v.status = Status::Prohibited;
            }
            v.reasons.extend([c0, c1]);
        }
        2 => {
            let mut forced = false;
            for lab in &labelings {
                let c = ResidueCheck::new(
                    "1c",
                    format!("chi(B0){}", labeling_tag(&parts, lab)),
                    lab.chi0,
                    8,
                    [(d2 - 7) / 2],
                );
                forced |= c.holds;
                v.reasons.push(c);
            }
            if forced {
                v.status = Status::TypeIOnly;
                if claimed == CurveType::II {
                    v.status = Status::Prohibited;
                    v.notes.push("clause 1c forces type I but type II was claimed".into());
                }
            }
        }
        k => v.notes.push(format!("no clause for an (M-{k})-curve")),
    }

    if claimed == CurveType::I {
        let mut ok = false;
        let mut checks = Vec::new();
        for lab in &labelings {
            let tag = labeling_tag(&parts, lab);
            let c0 = ResidueCheck::new("1d", format!("chi(B0){tag}"), lab.chi0, 4, [1]);
            let c1 = ResidueCheck::new("1d", format!("chi(B1){tag}"), lab.chi1, 4, [1]);
            ok |= c0.holds && c1.holds;
            checks.extend([c0, c1]);
        }
        v.reasons.extend(checks);
        if !ok {
            v.status = Status::Prohibited;
        }
    }
    Ok(v)
}

/// Exploration mode: `χ(B0) ≡ (d²+1)/2 + β (mod 8)` for a supplied Brown
/// invariant `β` of the quadratic form on the characteristic surface.
pub fn theorem1_with_brown(s: &SphereScheme, d: u32, beta: u8) -> Result<Verdict, CongruenceError> {
    let d2 = check_degree(d)?;
    if d % 2 == 0 {
        return Err(CongruenceError::EvenDegree(d));
    }
    if beta >= 8 {
        return Err(CongruenceError::BadBrown(beta));
    }
    let parts = euler_parts(s);
    let mut v = Verdict::new(Status::Prohibited);
    for lab in parts.labelings() {
        let c = ResidueCheck::new(
            "brown",
            format!("chi(B0){}", labeling_tag(&parts, &lab)),
            lab.chi0,
            8,
            [(d2 + 1) / 2 + i64::from(beta)],
        );
        if c.holds {
            v.status = Status::NoConstraint;
        }
        v.reasons.push(c);
    }
    Ok(v)
}

/// Even `d`, M-curve, every B1 component of even Euler characteristic:
/// `χ(B0) ≡ d²` and `χ(B1) ≡ 2 − d² (mod 16)`.
pub fn theorem2a_verdict(s: &SphereScheme, d: u32) -> Result<Verdict, CongruenceError> {
    let d2 = check_degree(d)?;
    if d % 2 == 1 {
        return Err(CongruenceError::OddDegree(d));
    }
    let bound = harnack_bound(d);
    if s.oval_count() != bound {
        return Err(CongruenceError::NotMCurve { l: s.oval_count(), bound });
    }
    let parts = euler_parts(s);
    let b1 = parts.b1_components().expect("M-curves of even degree have an even number of ovals");
    if let Some(odd) = b1.iter().find(|c| *c % 2 != 0) {
        return Ok(Verdict::hypothesis_not_satisfied(format!("B1 has a component with odd Euler characteristic {odd}")));
    }
    let lab = parts.labelings()[0];
    let c0 = ResidueCheck::new("2a", "chi(B0)", lab.chi0, 16, [d2]);
    let c1 = ResidueCheck::new("2a", "chi(B1)", lab.chi1, 16, [2 - d2]);
    let status = if c0.holds && c1.holds { Status::NoConstraint } else { Status::Prohibited };
    Ok(Verdict { status, reasons: vec![c0, c1], notes: Vec::new() })
}

/// An orientation of the B0 components under which every disorienting oval
/// has `x(C) = 0`, if one exists.
///
/// An oval's disorienting status depends only on the sign of its single B0
/// neighbour, so the search over all `2^c` assignments splits into one
/// two-way choice per component.
pub fn b0_orientation_witness(o: &OrientedScheme) -> Result<Option<BTreeMap<usize, i8>>, CongruenceError> {
    let s = &o.base;
    let parts = euler_parts(s);
    let b0 = parts.b0.ok_or(CongruenceError::OddOvalCount(s.oval_count()))?;
    let x: Vec<u8> = (0..s.oval_count()).map(|e| x_of_oval(s, e)).collect::<Result<_, _>>()?;
    let mut witness = BTreeMap::new();
    for &region in &parts.regions[b0 as usize] {
        let choice = [1i8, -1].into_iter().find(|&eps| {
            s.neighbours(region).iter().all(|&(_, e)| {
                let (a, _) = s.ovals()[e];
                let induced = if a == region { eps } else { -eps };
                induced == o.orientation()[e] || x[e] == 0
            })
        });
        match choice {
            Some(eps) => {
                witness.insert(region, eps);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(witness))
}

/// Even `d`, type I with the given complex orientation: if some orientation
/// of B0 has `x(C) = 0` on all disorienting ovals then `χ(B0) ≡ d² (mod 8)`.
pub fn theorem2b_verdict(o: &OrientedScheme, d: u32) -> Result<Verdict, CongruenceError> {
    let d2 = check_degree(d)?;
    if d % 2 == 1 {
        return Err(CongruenceError::OddDegree(d));
    }
    let s = &o.base;
    if s.oval_count() % 2 == 1 {
        return Err(CongruenceError::OddOvalCount(s.oval_count()));
    }
    let Some(witness) = b0_orientation_witness(o)? else {
        return Ok(Verdict::hypothesis_not_satisfied(
            "every orientation of B0 leaves a disorienting oval with x(C) = 1",
        ));
    };
    let parts = euler_parts(s);
    let lab = parts.labelings()[0];
    let c0 = ResidueCheck::new("2b", "chi(B0)", lab.chi0, 8, [d2]);
    let c1 = ResidueCheck::new("2b", "chi(B1)", lab.chi1, 8, [2 - d2]);
    let status = if c0.holds && c1.holds { Status::NoConstraint } else { Status::Prohibited };
    let mut v = Verdict { status, reasons: vec![c0, c1], notes: Vec::new() };
    if s.oval_count() == 0 {
        v.notes.push("hypothesis holds vacuously: no ovals".into());
    } else {
        let signs: Vec<String> = witness.iter().map(|(r, e)| format!("region {r}: {e:+}")).collect();
        v.notes.push(format!("B0 orientation witness: {}", signs.join(", ")));
    }
    Ok(v)
}
