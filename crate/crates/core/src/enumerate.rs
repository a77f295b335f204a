//! Enumeration of sphere schemes up to isomorphism, and structural filters.
//!
//! Rooted trees are generated as canonical level sequences (each rooted tree
//! exactly once); a sequence is kept when its root is a center of the free
//! tree, with a tie-break between the two halves of a bicentral tree.

use std::collections::VecDeque;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scheme::SphereScheme;

/// Default cap on the oval count for enumeration.
pub const DEFAULT_OVAL_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("oval count {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("cache: {0}")]
    Cache(#[from] io::Error),
    #[error("cache file {path}: {reason}")]
    CorruptCache { path: PathBuf, reason: String },
}

/// Iterator over canonical level sequences of rooted trees on `n` vertices
/// (root at level 0), in decreasing lexicographic order.
pub struct LevelSequences {
    current: Option<Vec<usize>>,
}

impl LevelSequences {
    pub fn new(n: usize) -> Self {
        LevelSequences { current: if n == 0 { None } else { Some((0..n).collect()) } }
    }
}

impl Iterator for LevelSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let seq = self.current.take()?;
        // successor: last p with level > 1, q = last before p at level L[p]-1,
        // then copy the block [q, p) periodically over [p, n)
        if let Some(p) = seq.iter().rposition(|&x| x > 1) {
            let q = seq[..p].iter().rposition(|&x| x == seq[p] - 1).expect("parent level exists");
            let mut next = seq.clone();
            let period = p - q;
            for i in p..next.len() {
                next[i] = next[i - period];
            }
            self.current = Some(next);
        }
        Some(seq)
    }
}

/// Height (maximum level) of each root-child subtree, paired with its start.
fn root_branches(seq: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &lvl) in seq.iter().enumerate().skip(1) {
        if lvl == 1 {
            out.push((i, 1));
        } else if let Some(last) = out.last_mut() {
            last.1 = last.1.max(lvl);
        }
    }
    out
}

/// Level sequence of a rooted subtree, re-based to level 0.
fn rebase(seq: &[usize]) -> Vec<usize> {
    let base = seq[0];
    seq.iter().map(|&x| x - base).collect()
}

/// Whether this rooted tree is the chosen representative of its free tree.
fn is_center_representative(seq: &[usize]) -> bool {
    let branches = root_branches(seq);
    let mut heights: Vec<usize> = branches.iter().map(|b| b.1).collect();
    heights.sort_unstable_by(|a, b| b.cmp(a));
    let top1 = heights.first().copied().unwrap_or(0);
    let top2 = heights.get(1).copied().unwrap_or(0);
    if top1 == top2 {
        return true;
    }
    if top1 != top2 + 1 {
        return false;
    }
    // bicentral: the other center roots the unique branch of height top1
    let idx = branches.iter().position(|b| b.1 == top1).unwrap();
    let start = branches[idx].0;
    let end = branches.get(idx + 1).map_or(seq.len(), |b| b.0);
    let hanging = rebase(&seq[start..end]);
    let mut root_side = Vec::with_capacity(seq.len() - (end - start));
    root_side.extend_from_slice(&seq[..start]);
    root_side.extend_from_slice(&seq[end..]);
    // canonical sequences compare as rooted-tree codes; keep the rooting whose
    // root side is not smaller than the hanging side
    root_side >= hanging
}

fn scheme_from_levels(seq: &[usize]) -> SphereScheme {
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
    for (v, &lvl) in seq.iter().enumerate() {
        stack.truncate(lvl);
        if let Some(&parent) = stack.last() {
            edges.push((parent, v));
        }
        stack.push(v);
    }
    SphereScheme::from_edges(edges).expect("level sequence encodes a tree")
}

/// A scheme together with its canonical notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalScheme {
    pub text: String,
    pub scheme: SphereScheme,
}

/// All sphere schemes with `l` ovals, one per isomorphism class, sorted by
/// canonical string.
pub fn enumerate_schemes(l: usize) -> Result<Vec<CanonicalScheme>, EnumerateError> {
    enumerate_schemes_capped(l, DEFAULT_OVAL_CAP)
}

pub fn enumerate_schemes_capped(l: usize, cap: usize) -> Result<Vec<CanonicalScheme>, EnumerateError> {
    if l > cap {
        return Err(EnumerateError::CapExceeded { requested: l, cap });
    }
    let reps: Vec<Vec<usize>> = LevelSequences::new(l + 1).filter(|s| is_center_representative(s)).collect();
    let mut out: Vec<CanonicalScheme> = reps
        .par_iter()
        .map(|seq| {
            let scheme = scheme_from_levels(seq);
            CanonicalScheme { text: scheme.canonical(), scheme }
        })
        .collect();
    out.par_sort_unstable_by(|a, b| a.text.cmp(&b.text));
    Ok(out)
}

/// Canonical strings only, optionally served from an on-disk cache
/// (`<dir>/schemes-l<l>.txt`, one canonical string per line, sorted).
pub fn enumerate_canonical_cached(l: usize, cap: usize, cache_dir: Option<&Path>) -> Result<Vec<String>, EnumerateError> {
    if l > cap {
        return Err(EnumerateError::CapExceeded { requested: l, cap });
    }
    let Some(dir) = cache_dir else {
        return Ok(enumerate_schemes_capped(l, cap)?.into_iter().map(|c| c.text).collect());
    };
    let path = dir.join(format!("schemes-l{l}.txt"));
    if path.exists() {
        let body = fs::read_to_string(&path)?;
        let lines: Vec<String> = body.lines().map(str::to_owned).collect();
        validate_cache(&path, l, &lines)?;
        return Ok(lines);
    }
    let lines: Vec<String> = enumerate_schemes_capped(l, cap)?.into_iter().map(|c| c.text).collect();
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".schemes-l{l}.txt.tmp"));
    {
        let mut f = io::BufWriter::new(fs::File::create(&tmp)?);
        for line in &lines {
            writeln!(f, "{line}")?;
        }
        f.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(lines)
}

fn validate_cache(path: &Path, l: usize, lines: &[String]) -> Result<(), EnumerateError> {
    let corrupt = |reason: String| EnumerateError::CorruptCache { path: path.to_owned(), reason };
    if lines.windows(2).any(|w| w[0] >= w[1]) {
        return Err(corrupt("lines not strictly sorted".into()));
    }
    for line in lines {
        let s = SphereScheme::parse(line).map_err(|e| corrupt(format!("{line:?}: {e}")))?;
        if s.oval_count() != l || s.canonical() != *line {
            return Err(corrupt(format!("{line:?} is not a canonical {l}-oval scheme")));
        }
    }
    Ok(())
}

/// Structural admissibility filters for bidegree `(d, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub d: u32,
    pub use_harnack: bool,
    pub use_bezout_triple: bool,
    pub max_depth: Option<usize>,
    pub max_nests: Option<usize>,
}

impl FilterConfig {
    /// Harnack and Bézout on, no depth or nest bounds.
    pub fn new(d: u32) -> Self {
        assert!(d >= 1, "bidegree must be positive");
        FilterConfig { d, use_harnack: true, use_bezout_triple: true, max_depth: None, max_nests: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Harnack,
    Bezout,
    Depth,
    Nests,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterFailure {
    pub filter: FilterKind,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub scheme: String,
    pub passed: bool,
    pub failures: Vec<FilterFailure>,
}

/// Largest number of ovals separating some triple of regions (a 1|2 split),
/// with a witness triple. Zero when there are fewer than three regions.
///
/// In a tree the separating edges of a triple are exactly the edges of the
/// subtree spanning it, so the maximum is taken over branch points `m` of the
/// sum of the three deepest branches hanging off `m`.
pub fn bezout_triple_bound_with_witness(s: &SphereScheme) -> (usize, Option<[usize; 3]>) {
    let n = s.region_count();
    if n < 3 {
        return (0, None);
    }
    let mut best: (usize, Option<[usize; 3]>) = (0, None);
    for m in 0..n {
        // BFS from m, tagging every region with the branch it hangs off
        let mut dist = vec![usize::MAX; n];
        let mut branch = vec![usize::MAX; n];
        dist[m] = 0;
        let mut queue = VecDeque::from([m]);
        let mut far: Vec<(usize, usize)> = Vec::new();
        while let Some(r) = queue.pop_front() {
            for &(nb, _) in s.neighbours(r) {
                if dist[nb] == usize::MAX {
                    dist[nb] = dist[r] + 1;
                    branch[nb] = if r == m {
                        far.push((1, nb));
                        far.len() - 1
                    } else {
                        branch[r]
                    };
                    let b = &mut far[branch[nb]];
                    if dist[nb] > b.0 {
                        *b = (dist[nb], nb);
                    }
                    queue.push_back(nb);
                }
            }
        }
        far.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        far.truncate(3);
        let total: usize = far.iter().map(|b| b.0).sum();
        if best.1.is_none() || total > best.0 {
            let mut triple: Vec<usize> = far.iter().map(|b| b.1).collect();
            // fewer than three directions: m itself, then a region on the
            // first branch, complete the triple without enlarging its span
            if triple.len() < 3 {
                triple.push(m);
            }
            if triple.len() < 3 {
                let (first, _) = s.neighbours(m)[0];
                triple.push(first);
            }
            triple.sort_unstable();
            best = (total, Some([triple[0], triple[1], triple[2]]));
        }
    }
    best
}

pub fn bezout_triple_bound(s: &SphereScheme) -> usize {
    bezout_triple_bound_with_witness(s).0
}

/// Ovals separating two non-empty families of ovals: tree edges whose
/// endpoints both have degree at least two.
pub fn nest_count(s: &SphereScheme) -> usize {
    s.ovals().iter().filter(|&&(a, b)| s.degree(a) >= 2 && s.degree(b) >= 2).count()
}

/// Harnack bound `(d-1)^2 + 1` for bidegree `(d, d)`.
pub fn harnack_bound(d: u32) -> usize {
    let d = d as usize;
    (d - 1) * (d - 1) + 1
}

pub fn apply_filters(s: &SphereScheme, cfg: &FilterConfig) -> FilterReport {
    let mut failures = Vec::new();
    let l = s.oval_count();
    if cfg.use_harnack {
        let bound = harnack_bound(cfg.d);
        if l > bound {
            failures.push(FilterFailure { filter: FilterKind::Harnack, witness: format!("l = {l} > {bound}") });
        }
    }
    if cfg.use_bezout_triple {
        let (bound, triple) = bezout_triple_bound_with_witness(s);
        if bound > cfg.d as usize {
            let [a, b, c] = triple.expect("positive bound has a witness");
            failures.push(FilterFailure {
                filter: FilterKind::Bezout,
                witness: format!("regions {a}, {b}, {c} separated by {bound} ovals > d = {}", cfg.d),
            });
        }
    }
    if let Some(max) = cfg.max_depth {
        let depth = s.radius();
        if depth > max {
            failures.push(FilterFailure { filter: FilterKind::Depth, witness: format!("depth {depth} > {max}") });
        }
    }
    if let Some(max) = cfg.max_nests {
        let nests = nest_count(s);
        if nests > max {
            failures.push(FilterFailure { filter: FilterKind::Nests, witness: format!("{nests} nests > {max}") });
        }
    }
    FilterReport { scheme: s.canonical(), passed: failures.is_empty(), failures }
}
