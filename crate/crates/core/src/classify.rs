//! End-to-end classification: enumerate (or sweep a family), filter, apply
//! the congruences and collect one row per scheme.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::{theorem1_verdict, theorem2a_verdict, CongruenceError, CurveType};
use crate::enumerate::{
    apply_filters, enumerate_canonical_cached, harnack_bound, EnumerateError, FilterConfig, FilterFailure,
    DEFAULT_OVAL_CAP,
};
use crate::family::Family;
use crate::scheme::{euler_parts, SchemeError, SphereScheme};
use crate::verdict::{ResidueCheck, Status};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("d must be positive")]
    ZeroDegree,
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub filters: FilterConfig,
    pub ovals: Vec<usize>,
    pub cap: usize,
    pub cache_dir: Option<PathBuf>,
    pub family: Option<Family>,
    pub claimed_type: CurveType,
    /// `None` uses rayon's global pool.
    pub workers: Option<usize>,
}

impl ClassifyOptions {
    /// Defaults for bidegree `(d, d)`: Harnack and Bézout filters on, only
    /// M-curves.
    pub fn new(d: u32) -> Self {
        ClassifyOptions {
            filters: FilterConfig::new(d),
            ovals: vec![harnack_bound(d.max(1))],
            cap: DEFAULT_OVAL_CAP,
            cache_dir: None,
            family: None,
            claimed_type: CurveType::Unknown,
            workers: None,
        }
    }
}

/// Result of one statement on one scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseVerdict {
    pub clause: String,
    pub status: Status,
    pub residues: Vec<ResidueCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub scheme: String,
    pub l: usize,
    /// For odd `l` the smaller half.
    pub chi0: i64,
    pub chi1: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<String, u64>>,
    pub status: Status,
    pub filter_failures: Vec<FilterFailure>,
    pub verdicts: Vec<ClauseVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub d: u32,
    pub claimed_type: CurveType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("malformed report: {0}")]
    Json(String),
}

/// Row status from filter failures and per-statement verdicts. A statement
/// whose hypothesis fails contributes nothing.
pub fn row_status(filter_failures: &[FilterFailure], verdicts: &[ClauseVerdict]) -> Status {
    if !filter_failures.is_empty() {
        return Status::Prohibited;
    }
    verdicts
        .iter()
        .map(|v| match v.status {
            Status::HypothesisNotSatisfied => Status::NoConstraint,
            s => s,
        })
        .fold(Status::NoConstraint, Status::merge)
}

/// Classifies a single scheme for bidegree `(d, d)`.
pub fn classify_scheme(s: &SphereScheme, filters: &FilterConfig, claimed: CurveType) -> ReportRow {
    let d = filters.d;
    let l = s.oval_count();
    let report = apply_filters(s, filters);
    let parts = euler_parts(s);
    let (chi0, chi1) = match parts.b0 {
        Some(b) => (parts.chi[b as usize], parts.chi[1 - b as usize]),
        None => (parts.chi[0].min(parts.chi[1]), parts.chi[0].max(parts.chi[1])),
    };
    let mut verdicts = Vec::new();
    let bound = harnack_bound(d);
    if d % 2 == 1 && l <= bound {
        if let Ok(v) = theorem1_verdict(s, d, claimed) {
            verdicts.push(ClauseVerdict { clause: "theorem1".into(), status: v.status, residues: v.reasons, notes: v.notes });
        }
    } else if d % 2 == 0 && l == bound {
        if let Ok(v) = theorem2a_verdict(s, d) {
            verdicts.push(ClauseVerdict { clause: "theorem2a".into(), status: v.status, residues: v.reasons, notes: v.notes });
        }
    }
    let status = row_status(&report.failures, &verdicts);
    ReportRow {
        scheme: report.scheme,
        l,
        chi0,
        chi1,
        assignment: None,
        status,
        filter_failures: report.failures,
        verdicts,
    }
}

/// Runs the pipeline. Rows come out sorted by `l`, then canonical scheme
/// (or family assignment order), independent of the worker count.
pub fn classify(opts: &ClassifyOptions) -> Result<ClassificationReport, ClassifyError> {
    if opts.filters.d == 0 {
        return Err(ClassifyError::ZeroDegree);
    }
    let run = || -> Result<Vec<ReportRow>, ClassifyError> {
        let mut rows = Vec::new();
        for &l in &opts.ovals {
            let batch: Vec<ReportRow> = match &opts.family {
                Some(family) => family
                    .members(l)
                    .into_par_iter()
                    .map(|m| {
                        let s = SphereScheme::parse(&m.notation)?;
                        let mut row = classify_scheme(&s, &opts.filters, opts.claimed_type);
                        row.assignment = Some(m.assignment);
                        Ok(row)
                    })
                    .collect::<Result<_, ClassifyError>>()?,
                None => {
                    let texts = enumerate_canonical_cached(l, opts.cap, opts.cache_dir.as_deref())?;
                    texts
                        .into_par_iter()
                        .map(|t| Ok(classify_scheme(&SphereScheme::parse(&t)?, &opts.filters, opts.claimed_type)))
                        .collect::<Result<_, ClassifyError>>()?
                }
            };
            rows.extend(batch);
        }
        Ok(rows)
    };
    let rows = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ClassifyError::Pool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION,
        d: opts.filters.d,
        claimed_type: opts.claimed_type,
        family: opts.family.as_ref().map(ToString::to_string),
        rows,
    })
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Parses and validates a JSON report.
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let r: ClassificationReport = serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    /// Checks internal consistency of every row.
    pub fn validate(&self) -> Result<(), ReportError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ReportError::SchemaVersion(self.schema_version));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let err = |message: String| ReportError::Row { row: i, message };
            let s = SphereScheme::parse(&row.scheme).map_err(|e| err(e.to_string()))?;
            if s.oval_count() != row.l {
                return Err(err(format!("scheme has {} ovals, row says {}", s.oval_count(), row.l)));
            }
            if row.chi0 + row.chi1 != 2 {
                return Err(err("chi0 + chi1 != 2".into()));
            }
            if row_status(&row.filter_failures, &row.verdicts) != row.status {
                return Err(err("status does not follow from filters and verdicts".into()));
            }
            for v in &row.verdicts {
                for c in &v.residues {
                    let again = ResidueCheck::new(c.clause.clone(), c.quantity.clone(), c.value, c.modulus, c.allowed.clone());
                    if again != *c {
                        return Err(err(format!("residue check {c} is inconsistent")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("scheme\tl\tchi0\tchi1\tassignment\tstatus\tfilters\tverdicts\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.scheme,
                r.l,
                r.chi0,
                r.chi1,
                assignment_text(r),
                r.status,
                filters_text(r),
                verdicts_text(r)
            );
        }
        out
    }

    pub fn to_table(&self) -> String {
        let header = ["scheme", "l", "chi0", "chi1", "status", "filters", "verdicts"];
        let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        let with_family = self.family.is_some();
        if with_family {
            cells[0].insert(1, "assignment".into());
        }
        for r in &self.rows {
            let mut line = vec![
                r.scheme.clone(),
                r.l.to_string(),
                r.chi0.to_string(),
                r.chi1.to_string(),
                r.status.to_string(),
                filters_text(r),
                verdicts_text(r),
            ];
            if with_family {
                line.insert(1, assignment_text(r));
            }
            cells.push(line);
        }
        let widths: Vec<usize> =
            (0..cells[0].len()).map(|c| cells.iter().map(|l| l[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for line in &cells {
            let padded: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell}{}", " ".repeat(w - cell.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        }
        out
    }
}

fn assignment_text(r: &ReportRow) -> String {
    match &r.assignment {
        Some(a) => a.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(","),
        None => "-".into(),
    }
}

fn filters_text(r: &ReportRow) -> String {
    if r.filter_failures.is_empty() {
        return "-".into();
    }
    r.filter_failures.iter().map(|f| format!("{:?}:{}", f.filter, f.witness).to_lowercase()).collect::<Vec<_>>().join(";")
}

fn verdicts_text(r: &ReportRow) -> String {
    if r.verdicts.is_empty() {
        return "-".into();
    }
    r.verdicts
        .iter()
        .map(|v| {
            let residues: Vec<String> = v
                .residues
                .iter()
                .map(|c| format!("{}={}≡{}mod{}{}", c.quantity, c.value, c.residue, c.modulus, if c.holds { "" } else { "!" }))
                .collect();
            format!("{}:{}[{}]", v.clause, v.status, residues.join(","))
        })
        .collect::<Vec<_>>()
        .join(";")
}
