//! Oriented curves on the torus `ℝH` of a hyperboloid, the ℤ₄ index
//! function of their complement, `∫ ind² dχ`, and congruences on it.
//!
//! An arrangement has `n` parallel nonshrinking components, each of class
//! `±(s, t)`, cutting the torus into `n` annuli; annulus `i` lies between
//! components `i` and `i + 1` (mod `n`). Each annulus carries a forest of
//! null-homotopic ovals written in signed bracket notation. With `n = 0`
//! there is one toral region.
//!
//! Region ids: `a{i}` is what is left of annulus `i` after removing its top
//! level ovals; `a{i}.{j}` is the inside of its `j`-th top-level oval
//! (0-based, after expanding counts), `a{i}.{j}.{k}` one level deeper, etc.
//!
//! Crossing a curve from its right to its left raises `ind` by one. A
//! positive oval has its inside on the left; crossing component `i` with
//! sign `+1` goes from annulus `i − 1` to annulus `i`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::{self, Oval, ParseError};
use crate::verdict::{ResidueCheck, Status, Verdict};

pub const ARRANGEMENT_SCHEMA_VERSION: u32 = 1;

/// JSON schema of the arrangement file, version 1.
pub const ARRANGEMENT_SCHEMA: &str = include_str!("../schema/arrangement.v1.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperboloidError {
    #[error("malformed arrangement: {0}")]
    Json(String),
    #[error("unsupported arrangement schema version {0}")]
    SchemaVersion(u32),
    #[error("annulus {annulus}: {error}")]
    Notation { annulus: usize, error: ParseError },
    #[error("component orientations must be +1 or -1 (component {0})")]
    BadSign(usize),
    #[error("{components} nonshrinking components but {annuli} annuli")]
    AnnulusCount { components: usize, annuli: usize },
    #[error("`ovals_notation` is only allowed without nonshrinking components, and not together with `annuli`")]
    OvalsNotation,
    #[error("class ({s}, {t}) is invalid: {reason}")]
    BadClass { s: u32, t: u32, reason: &'static str },
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("index function is inconsistent: going around the torus changes ind by l' = {l_prime} ≢ 0 (mod 4) along {cycle:?}")]
    IndexInconsistent { l_prime: i64, cycle: Vec<String> },
    #[error("bidegree ({d}, {r}) is not even")]
    OddBidegree { d: u32, r: u32 },
    #[error("the region graph is not bipartite: {0} nonshrinking components")]
    NonBipartite(usize),
    #[error("labeling choice must be 0 or 1, got {0}")]
    BadLabeling(u8),
    #[error("no curve class given")]
    MissingCurveClass,
    #[error("missing input `{0}`")]
    MissingField(&'static str),
    #[error("{quantity} = {value} is not divisible by {divisor}")]
    DivisibilityViolated { quantity: &'static str, value: i64, divisor: i64 },
    #[error("Brown invariant must be a residue mod 8, got {0}")]
    BadBrown(u8),
    #[error("degree list is empty")]
    NoDegrees,
    #[error("degrees must be positive")]
    ZeroDegree,
    #[error("the last degree m_s = {0} must be even")]
    OddLastDegree(u64),
    #[error("not spin: sum of (m_j - 1) = {0} is even")]
    NotSpin(u64),
}

/// Deficiency or type data for the B₊ congruences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorusCurveClass {
    #[serde(rename = "M")]
    M,
    #[serde(rename = "M-1")]
    MMinus1,
    #[serde(rename = "M-2")]
    MMinus2,
    #[serde(rename = "I")]
    TypeI,
}

impl FromStr for TorusCurveClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('−', "-").as_str() {
            "m" => Ok(TorusCurveClass::M),
            "m-1" => Ok(TorusCurveClass::MMinus1),
            "m-2" => Ok(TorusCurveClass::MMinus2),
            "i" | "typei" | "type-i" => Ok(TorusCurveClass::TypeI),
            other => Err(format!("unknown curve class `{other}` (expected M, M-1, M-2, I)")),
        }
    }
}

/// Integer representatives used when squaring ℤ₄ values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representatives {
    /// `{0, 1, 2, 3}`
    #[default]
    Standard,
    /// `{-1, 0, 1, 2}`
    Symmetric,
}

impl Representatives {
    pub fn lift(self, v: u8) -> i64 {
        let v = i64::from(v % 4);
        match self {
            Representatives::Standard => v,
            Representatives::Symmetric if v == 3 => -1,
            Representatives::Symmetric => v,
        }
    }
}

/// On-disk form of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub schema_version: u32,
    pub bidegree: [u32; 2],
    #[serde(default)]
    pub class: [u32; 2],
    #[serde(default)]
    pub components: Vec<i8>,
    #[serde(default)]
    pub annuli: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ovals_notation: Option<String>,
    #[serde(default = "default_base")]
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_class: Option<TorusCurveClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_representatives: Option<Representatives>,
}

fn default_base() -> String {
    "a0".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: String,
    pub chi: i64,
    /// Bipartition color; `a0` has color 0. `None` when `n` is odd.
    pub color: Option<u8>,
}

/// Oriented arrangement on the torus with its region graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusArrangement {
    pub d: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub components: Vec<i8>,
    pub annuli: Vec<Vec<Oval>>,
    pub base: usize,
    pub curve_class: Option<TorusCurveClass>,
    pub representatives: Representatives,
    regions: Vec<Region>,
    /// `(from, to, jump)`: `ind(to) = ind(from) + jump`.
    edges: Vec<(usize, usize, i8)>,
    oval_count: usize,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TorusArrangement {
    /// Builds the arrangement. `annuli` has one forest per annulus, or a
    /// single forest when there are no nonshrinking components.
    pub fn new(
        (d, r): (u32, u32),
        (s, t): (u32, u32),
        components: Vec<i8>,
        annuli: Vec<Vec<Oval>>,
    ) -> Result<Self, HyperboloidError> {
        let n = components.len();
        if let Some(i) = components.iter().position(|&c| c != 1 && c != -1) {
            return Err(HyperboloidError::BadSign(i));
        }
        if n == 0 && (s, t) != (0, 0) {
            return Err(HyperboloidError::BadClass { s, t, reason: "must be (0, 0) without nonshrinking components" });
        }
        if n > 0 && (s, t) == (0, 0) {
            return Err(HyperboloidError::BadClass { s, t, reason: "nonshrinking components need a nonzero class" });
        }
        if n > 0 && gcd(s, t) != 1 {
            return Err(HyperboloidError::BadClass { s, t, reason: "coordinates must be coprime" });
        }
        let expected = n.max(1);
        let annuli = if annuli.is_empty() { vec![Vec::new(); expected] } else { annuli };
        if annuli.len() != expected {
            return Err(HyperboloidError::AnnulusCount { components: n, annuli: annuli.len() });
        }
        let mut arr = TorusArrangement {
            d,
            r,
            s,
            t,
            components,
            annuli,
            base: 0,
            curve_class: None,
            representatives: Representatives::Standard,
            regions: Vec::new(),
            edges: Vec::new(),
            oval_count: 0,
        };
        arr.build();
        Ok(arr)
    }

    fn build(&mut self) {
        let n = self.components.len();
        let bipartite = n % 2 == 0;
        let mut annulus_ids = Vec::new();
        for (i, forest) in self.annuli.iter().enumerate() {
            let id = self.regions.len();
            annulus_ids.push(id);
            let color = bipartite.then_some((i % 2) as u8);
            self.regions.push(Region { id: format!("a{i}"), chi: -(forest.len() as i64), color });
            let mut stack: Vec<(usize, &Oval, String)> =
                forest.iter().enumerate().rev().map(|(j, o)| (id, o, format!("a{i}.{j}"))).collect();
            while let Some((parent, oval, name)) = stack.pop() {
                let me = self.regions.len();
                let color = self.regions[parent].color.map(|c| c ^ 1);
                self.regions.push(Region { id: name.clone(), chi: 1 - oval.inner.len() as i64, color });
                self.edges.push((parent, me, oval.sign));
                self.oval_count += 1;
                for (j, child) in oval.inner.iter().enumerate().rev() {
                    stack.push((me, child, format!("{name}.{j}")));
                }
            }
        }
        for (i, &sign) in self.components.iter().enumerate() {
            let below = annulus_ids[(i + n - 1) % n];
            self.edges.push((below, annulus_ids[i], sign));
        }
    }

    pub fn from_file(file: &ArrangementFile) -> Result<Self, HyperboloidError> {
        if file.schema_version != ARRANGEMENT_SCHEMA_VERSION {
            return Err(HyperboloidError::SchemaVersion(file.schema_version));
        }
        let texts: Vec<&str> = match &file.ovals_notation {
            Some(text) if file.components.is_empty() && file.annuli.is_empty() => vec![text.as_str()],
            Some(_) => return Err(HyperboloidError::OvalsNotation),
            None => file.annuli.iter().map(String::as_str).collect(),
        };
        let annuli = texts
            .iter()
            .enumerate()
            .map(|(annulus, t)| notation::parse_signed(t).map_err(|error| HyperboloidError::Notation { annulus, error }))
            .collect::<Result<Vec<_>, _>>()?;
        let mut arr = TorusArrangement::new(
            (file.bidegree[0], file.bidegree[1]),
            (file.class[0], file.class[1]),
            file.components.clone(),
            annuli,
        )?;
        arr.base = arr.region_index(&file.base)?;
        arr.curve_class = file.curve_class;
        arr.representatives = file.index_representatives.unwrap_or_default();
        Ok(arr)
    }

    pub fn from_json(text: &str) -> Result<Self, HyperboloidError> {
        let file: ArrangementFile = serde_json::from_str(text).map_err(|e| HyperboloidError::Json(e.to_string()))?;
        TorusArrangement::from_file(&file)
    }

    pub fn to_file(&self) -> ArrangementFile {
        ArrangementFile {
            schema_version: ARRANGEMENT_SCHEMA_VERSION,
            bidegree: [self.d, self.r],
            class: [self.s, self.t],
            components: self.components.clone(),
            annuli: self.annuli.iter().map(|f| notation::render(f, true)).collect(),
            ovals_notation: None,
            base: self.regions[self.base].id.clone(),
            curve_class: self.curve_class,
            index_representatives: Some(self.representatives),
        }
    }

    pub fn with_base(mut self, id: &str) -> Result<Self, HyperboloidError> {
        self.base = self.region_index(id)?;
        Ok(self)
    }

    pub fn region_index(&self, id: &str) -> Result<usize, HyperboloidError> {
        self.regions.iter().position(|r| r.id == id).ok_or_else(|| HyperboloidError::UnknownRegion(id.into()))
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn oval_count(&self) -> usize {
        self.oval_count
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Signed number of components: the oriented curve realizes `l′(s, t)`.
    pub fn l_prime(&self) -> i64 {
        self.components.iter().map(|&c| i64::from(c)).sum()
    }

    /// `χ` of the two color classes; `None` when `n` is odd.
    pub fn parts_chi(&self) -> Option<[i64; 2]> {
        let mut chi = [0i64; 2];
        for r in &self.regions {
            chi[r.color? as usize] += r.chi;
        }
        Some(chi)
    }
}

impl FromStr for TorusArrangement {
    type Err = HyperboloidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TorusArrangement::from_json(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexAssignment {
    /// ℤ₄ value per region, in region order.
    pub ind: Vec<u8>,
    pub l_prime: i64,
}

impl IndexAssignment {
    pub fn by_id<'a>(&self, arr: &'a TorusArrangement) -> BTreeMap<&'a str, u8> {
        arr.regions.iter().zip(&self.ind).map(|(r, &v)| (r.id.as_str(), v)).collect()
    }
}

pub fn index_function(arr: &TorusArrangement) -> Result<IndexAssignment, HyperboloidError> {
    let m = arr.regions.len();
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); m];
    for &(a, b, j) in &arr.edges {
        adj[a].push((b, j));
        adj[b].push((a, -j));
    }
    let mut ind: Vec<Option<u8>> = vec![None; m];
    ind[arr.base] = Some(0);
    let mut queue = VecDeque::from([arr.base]);
    while let Some(u) = queue.pop_front() {
        let here = ind[u].expect("queued regions are assigned");
        for &(v, j) in &adj[u] {
            let want = (i16::from(here) + i16::from(j)).rem_euclid(4) as u8;
            match ind[v] {
                None => {
                    ind[v] = Some(want);
                    queue.push_back(v);
                }
                Some(got) if got != want => {
                    let n = arr.components.len();
                    let cycle = (0..n).map(|i| format!("a{i}")).collect();
                    return Err(HyperboloidError::IndexInconsistent { l_prime: arr.l_prime(), cycle });
                }
                Some(_) => {}
            }
        }
    }
    Ok(IndexAssignment { ind: ind.into_iter().map(|v| v.expect("region graph is connected")).collect(), l_prime: arr.l_prime() })
}

/// `Σ_R ind(R)² χ(R)`, lifting ℤ₄ values with the arrangement's
/// representatives.
pub fn euler_integral(arr: &TorusArrangement, ia: &IndexAssignment) -> i64 {
    arr.regions
        .iter()
        .zip(&ia.ind)
        .map(|(r, &v)| {
            let x = arr.representatives.lift(v);
            x * x * r.chi
        })
        .sum()
}

/// One of the index-integral congruences with its hypotheses evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropCheck {
    pub prop: &'static str,
    pub hypothesis: String,
    pub applicable: bool,
    pub check: Option<ResidueCheck>,
}

impl PropCheck {
    pub fn holds(&self) -> Option<bool> {
        self.check.as_ref().map(|c| c.holds)
    }
}

impl fmt::Display for PropCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.check {
            Some(c) => write!(f, "{}: {} -> {}", self.prop, self.hypothesis, c),
            None => write!(f, "{}: {} -> not applicable", self.prop, self.hypothesis),
        }
    }
}

/// Evaluates the four `∫ ind² dχ` congruences.
pub fn check_b4_b7(arr: &TorusArrangement) -> Result<(i64, Vec<PropCheck>), HyperboloidError> {
    let ia = index_function(arr)?;
    let integral = euler_integral(arr, &ia);
    let lp = ia.l_prime;
    let (d, r) = (i64::from(arr.d), i64::from(arr.r));
    let q = d * i64::from(arr.s) + r * i64::from(arr.t);
    let dr = d * r;
    let rows: [(&'static str, i64, i64, Option<i64>, i64, i64); 4] = [
        ("B4", 4, 0, Some(0), 8, 0),
        ("B5", 8, 4, Some(2), 8, 4),
        ("B6", 8, 0, None, 8, 0),
        ("B7", 8, 0, Some(0), 16, 0),
    ];
    let mut out = Vec::new();
    for (prop, lp_mod, lp_res, q_res, modulus, shift) in rows {
        let mut hypothesis = format!("l'={lp} ≡ {} mod {lp_mod}", lp.rem_euclid(lp_mod));
        let mut applicable = lp.rem_euclid(lp_mod) == lp_res;
        if let Some(qr) = q_res {
            hypothesis.push_str(&format!(", ds+rt={q} ≡ {} mod 4", q.rem_euclid(4)));
            applicable &= q.rem_euclid(4) == qr;
        }
        if dr % 2 != 0 {
            hypothesis.push_str(", dr odd");
            applicable = false;
        }
        let check = applicable.then(|| ResidueCheck::new(prop, "∫ind²dχ", integral, modulus, [dr / 2 + shift]));
        out.push(PropCheck { prop, hypothesis, applicable, check });
    }
    Ok((integral, out))
}

/// Congruences for `χ(B₊)` when `d` and `r` are even. `labeling` picks B₊
/// as color 0 (the part containing `a0`) or color 1; `None` accepts either.
pub fn check_b10(arr: &TorusArrangement, labeling: Option<u8>) -> Result<Verdict, HyperboloidError> {
    let (d, r) = (arr.d, arr.r);
    if d % 2 != 0 || r % 2 != 0 {
        return Err(HyperboloidError::OddBidegree { d, r });
    }
    if matches!(labeling, Some(c) if c > 1) {
        return Err(HyperboloidError::BadLabeling(labeling.unwrap()));
    }
    let parts = arr.parts_chi().ok_or(HyperboloidError::NonBipartite(arr.component_count()))?;
    let class = arr.curve_class.ok_or(HyperboloidError::MissingCurveClass)?;
    let (d, r, s, t) = (i64::from(d), i64::from(r), i64::from(arr.s), i64::from(arr.t));
    let parity = (d / 2 * t + r / 2 * s + s + t).rem_euclid(2);
    if parity != 1 {
        return Ok(Verdict::hypothesis_not_satisfied(format!("(d/2)t + (r/2)s + s + t ≡ {parity} (mod 2)")));
    }
    let half = d * r / 2;
    let (clause, modulus, allowed): (&str, i64, Vec<i64>) = match class {
        TorusCurveClass::M => ("B10a", 8, vec![half]),
        TorusCurveClass::MMinus1 => ("B10b", 8, vec![half + 1, half - 1]),
        TorusCurveClass::MMinus2 => ("B10c", 8, vec![half + 4]),
        TorusCurveClass::TypeI => ("B10d", 4, vec![0]),
    };
    let colors: Vec<u8> = match labeling {
        Some(c) => vec![c],
        None => vec![0, 1],
    };
    let checks: Vec<ResidueCheck> = colors
        .iter()
        .map(|&c| ResidueCheck::new(clause, format!("chi(B+ = color {c})"), parts[c as usize], modulus, allowed.clone()))
        .collect();
    let any = checks.iter().any(|c| c.holds);
    let status = match (class, any) {
        (TorusCurveClass::MMinus2, true) => Status::TypeIOnly,
        (TorusCurveClass::MMinus2, false) => Status::NoConstraint,
        (_, true) => Status::NoConstraint,
        (_, false) => Status::Prohibited,
    };
    let mut v = Verdict { status, reasons: checks, notes: Vec::new() };
    if v.reasons.len() == 2 && v.reasons[0].holds != v.reasons[1].holds {
        v.notes.push("the two choices of B+ disagree; either one suffices".into());
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparationMode {
    B1,
    B2,
    B3,
    B8,
}

impl FromStr for SeparationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "B1" => Ok(SeparationMode::B1),
            "B2" => Ok(SeparationMode::B2),
            "B3" => Ok(SeparationMode::B3),
            "B8" => Ok(SeparationMode::B8),
            other => Err(format!("unknown mode `{other}` (expected B1, B2, B3, B8)")),
        }
    }
}

/// Hypotheses of the complete-intersection congruence. The tool takes
/// them on trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct B11Hypotheses {
    /// Type I abs or rel, whichever the parity case asks for.
    pub surface_type_i: bool,
    pub b_plus_in_one_separation_surface: bool,
    pub inclusion_zero_on_h1: bool,
    /// Only needed when `m_s ≡ 2 (mod 4)`.
    pub b_minus_contractible: bool,
}

/// Inputs of the separation congruences. Fields a statement does not use
/// may be left out.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct SeparationInput {
    pub chi_rb: i64,
    pub sigma_cb: i64,
    pub connected: bool,
    /// `χ(B_j)` of the separation surface being checked.
    pub chi_part: Option<i64>,
    pub beta: Option<u8>,
    pub e_a: Option<i64>,
    pub m: Vec<u64>,
    pub k: u64,
    pub d_rank: u64,
    pub hypotheses: B11Hypotheses,
    pub curve_type_i: bool,
    pub b_plus_orientable: bool,
}

fn quarter(quantity: &'static str, value: i64) -> Result<i64, HyperboloidError> {
    if value % 4 != 0 {
        return Err(HyperboloidError::DivisibilityViolated { quantity, value, divisor: 4 });
    }
    Ok(value / 4)
}

fn single(check: ResidueCheck) -> Verdict {
    let status = if check.holds { Status::NoConstraint } else { Status::Prohibited };
    Verdict { status, reasons: vec![check], notes: Vec::new() }
}

pub fn eval_separation(input: &SeparationInput, mode: SeparationMode) -> Result<Verdict, HyperboloidError> {
    let diff = input.chi_rb - input.sigma_cb;
    let beta = |input: &SeparationInput| -> Result<i64, HyperboloidError> {
        let b = input.beta.ok_or(HyperboloidError::MissingField("beta"))?;
        if b >= 8 {
            return Err(HyperboloidError::BadBrown(b));
        }
        Ok(i64::from(b))
    };
    match mode {
        SeparationMode::B1 => {
            let q = quarter("chi(RB) - sigma(CB)", diff)?;
            let chi = input.chi_part.ok_or(HyperboloidError::MissingField("chi_part"))?;
            Ok(single(ResidueCheck::new("B1", "chi(B_j)", chi, 8, [q + beta(input)?])))
        }
        SeparationMode::B2 => {
            if !input.connected {
                return Ok(Verdict::hypothesis_not_satisfied("RB is not connected"));
            }
            Ok(single(ResidueCheck::new("B2", "chi(RB) - sigma(CB)", diff, 32, [0])))
        }
        SeparationMode::B3 => Ok(single(ResidueCheck::new("B3", "chi(RB) - sigma(CB)", diff, 8, [0]))),
        SeparationMode::B8 => {
            let q = quarter("chi(RB) - sigma(CB)", diff)?;
            let e = quarter("e_A", input.e_a.ok_or(HyperboloidError::MissingField("e_a"))?)?;
            let chi = input.chi_part.ok_or(HyperboloidError::MissingField("chi_part"))?;
            Ok(single(ResidueCheck::new("B8", "chi(B_j)", chi, 8, [e + q + beta(input)?])))
        }
    }
}

/// Congruence for `χ(B₊)` on a complete intersection of degrees
/// `m_1, …, m_s` (the curve cut by the last one).
pub fn eval_b11(input: &SeparationInput, chi_plus: i64) -> Result<Verdict, HyperboloidError> {
    let m = &input.m;
    let &last = m.last().ok_or(HyperboloidError::NoDegrees)?;
    if m.contains(&0) {
        return Err(HyperboloidError::ZeroDegree);
    }
    if last % 2 != 0 {
        return Err(HyperboloidError::OddLastDegree(last));
    }
    let h = input.hypotheses;
    let missing = [
        (h.surface_type_i, "surface of type I (abs/rel)"),
        (h.b_plus_in_one_separation_surface, "B+ in one surface of complex separation"),
        (h.inclusion_zero_on_h1, "inclusion zero on H1(RA; Z2)"),
        (last % 4 == 0 || h.b_minus_contractible, "B- contractible (m_s ≡ 2 mod 4)"),
    ];
    if let Some((_, name)) = missing.iter().find(|(ok, _)| !ok) {
        return Ok(Verdict::hypothesis_not_satisfied(format!("hypothesis not supplied: {name}")));
    }
    let product: i128 = m[..m.len() - 1].iter().map(|&x| i128::from(x)).product::<i128>() * i128::from(last) * i128::from(last);
    // m_s even makes m_s² divisible by 4
    let f = ((product / 4) % 16) as i64;
    let j = input.d_rank + input.k;
    let mut v = Verdict::new(Status::NoConstraint);
    match j {
        0 => v = single(ResidueCheck::new("B11a", "chi(B+)", chi_plus, 8, [f])),
        1 => v = single(ResidueCheck::new("B11b", "chi(B+)", chi_plus, 8, [f + 1, f - 1])),
        2 => {
            let c = ResidueCheck::new("B11c", "chi(B+)", chi_plus, 8, [f + 4]);
            if c.holds {
                v.status = Status::TypeIOnly;
                v.notes.push("A is of type I and B+ is orientable".into());
            }
            v.reasons.push(c);
        }
        _ => v.notes.push(format!("no clause for d + k = {j}")),
    }
    if input.curve_type_i && input.b_plus_orientable {
        let c = ResidueCheck::new("B11d", "chi(B+)", chi_plus, 4, [f]);
        if !c.holds {
            v.status = Status::Prohibited;
        }
        v.reasons.push(c);
    }
    Ok(v)
}

/// Coefficient of `α` in the ℤ₂-Netsvetaev class of a complete intersection
/// of degrees `m`.
pub fn netsvetaev_b12(m: &[u64]) -> Result<u8, HyperboloidError> {
    if m.contains(&0) {
        return Err(HyperboloidError::ZeroDegree);
    }
    let sum: u64 = m.iter().map(|x| x - 1).sum();
    if sum % 2 == 0 {
        return Err(HyperboloidError::NotSpin(sum));
    }
    Ok((((1 + sum) / 2) % 2) as u8)
}
