//! Scheme families: templates such as `"a+1<b>+1<c>"` whose letters stand
//! for non-negative counts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("template has no variables")]
    NoVariables,
    #[error("unknown variable `{0}` in minimum list")]
    UnknownVariable(String),
    #[error("bad minimum `{0}`, expected name=value")]
    BadMinimum(String),
    #[error("template does not parse: {0}")]
    Template(ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    Text(char),
    Var(usize),
}

/// A parsed family template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    template: String,
    pieces: Vec<Piece>,
    vars: Vec<String>,
    minimums: Vec<u64>,
}

/// One member of a family: variable values and the instantiated notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub assignment: BTreeMap<String, u64>,
    pub notation: String,
}

fn is_var(c: char) -> bool {
    c.is_alphabetic() && c != '⊔'
}

impl Family {
    pub fn new(template: &str) -> Result<Self, FamilyError> {
        let mut vars: Vec<String> = Vec::new();
        let mut pieces = Vec::new();
        for c in template.chars() {
            if is_var(c) {
                let name = c.to_string();
                let idx = match vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => {
                        vars.push(name);
                        vars.len() - 1
                    }
                };
                pieces.push(Piece::Var(idx));
            } else {
                pieces.push(Piece::Text(c));
            }
        }
        if vars.is_empty() {
            return Err(FamilyError::NoVariables);
        }
        let minimums = vec![0; vars.len()];
        let f = Family { template: template.to_string(), pieces, vars, minimums };
        notation::parse(&f.instantiate(&f.minimums)).map_err(FamilyError::Template)?;
        Ok(f)
    }

    /// Sets per-variable lower bounds from `"b=1,c=1"`.
    pub fn with_minimums(mut self, spec: &str) -> Result<Self, FamilyError> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| FamilyError::BadMinimum(item.into()))?;
            let value: u64 = value.trim().parse().map_err(|_| FamilyError::BadMinimum(item.into()))?;
            let idx = self
                .vars
                .iter()
                .position(|v| v == name.trim())
                .ok_or_else(|| FamilyError::UnknownVariable(name.trim().into()))?;
            self.minimums[idx] = value;
        }
        Ok(self)
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn instantiate(&self, values: &[u64]) -> String {
        self.pieces
            .iter()
            .map(|p| match *p {
                Piece::Text(c) => c.to_string(),
                Piece::Var(i) => values[i].to_string(),
            })
            .collect()
    }

    fn oval_count(&self, values: &[u64]) -> Option<usize> {
        notation::parse(&self.instantiate(values)).ok().map(|f| notation::count_ovals(&f))
    }

    /// All assignments at or above the minimums whose instantiation has
    /// exactly `l` ovals, in lexicographic order of the values.
    pub fn members(&self, l: usize) -> Vec<FamilyMember> {
        let mut out = Vec::new();
        let mut values = self.minimums.clone();
        self.sweep(0, l, &mut values, &mut out);
        out
    }

    fn sweep(&self, i: usize, l: usize, values: &mut Vec<u64>, out: &mut Vec<FamilyMember>) {
        if i == values.len() {
            if self.oval_count(values) == Some(l) {
                let notation = self.instantiate(values);
                let assignment = self.vars.iter().cloned().zip(values.iter().copied()).collect();
                out.push(FamilyMember { assignment, notation });
            }
            return;
        }
        // the oval count is monotone in every variable; later ones sit at their minimum
        let mut v = self.minimums[i];
        while v <= l as u64 {
            values[i] = v;
            match self.oval_count(values) {
                Some(n) if n <= l => self.sweep(i + 1, l, values, out),
                _ => break,
            }
            v += 1;
        }
        values[i] = self.minimums[i];
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::new(s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.template)
    }
}
