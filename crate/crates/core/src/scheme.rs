//! Real schemes on the sphere and on the projective plane.
//!
//! A sphere scheme is stored as its region tree: vertices are the connected
//! components of the complement of the curve, edges are ovals. There is no
//! outer region on a sphere, so isomorphism is free-tree isomorphism and the
//! canonical notation is rooted at a tree center.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::{self, Oval, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("x(C) is undefined for an odd number of ovals (l = {0})")]
    OddOvalCount(usize),
    #[error("no oval with index {0}")]
    NoSuchOval(usize),
    #[error("no orientation sign supplied for B0 component (region {0})")]
    MissingComponentSign(usize),
    #[error("orientation list has {got} entries, scheme has {expected} ovals")]
    OrientationLength { expected: usize, got: usize },
    #[error("orientation signs must be +1 or -1")]
    BadSign,
    #[error("not a tree: {0}")]
    NotATree(String),
}

/// Arrangement of disjoint circles on the sphere, as a region tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereScheme {
    /// `adj[r]` lists `(neighbour region, oval)` pairs.
    adj: Vec<Vec<(usize, usize)>>,
    /// Oval `e` joins `ovals[e].0` and `ovals[e].1`.
    ovals: Vec<(usize, usize)>,
}

impl SphereScheme {
    /// Builds a scheme from an edge list on regions `0..=edges.len()`.
    pub fn from_edges(edges: Vec<(usize, usize)>) -> Result<Self, SchemeError> {
        let n = edges.len() + 1;
        let mut adj = vec![Vec::new(); n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return Err(SchemeError::NotATree(format!("bad edge ({a}, {b})")));
            }
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let s = SphereScheme { adj, ovals: edges };
        if s.bfs_order(0).len() != n {
            return Err(SchemeError::NotATree("disconnected".into()));
        }
        Ok(s)
    }

    /// Reads plane notation rooted at an auxiliary outer region (region 0),
    /// then forgets the root.
    pub fn from_forest(forest: &[Oval]) -> Self {
        let mut edges = Vec::with_capacity(notation::count_ovals(forest));
        fn walk(forest: &[Oval], parent: usize, edges: &mut Vec<(usize, usize)>) {
            for o in forest {
                let child = edges.len() + 1;
                edges.push((parent, child));
                walk(&o.inner, child, edges);
            }
        }
        walk(forest, 0, &mut edges);
        Self::from_edges(edges).expect("forest always yields a tree")
    }

    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        Ok(Self::from_forest(&notation::parse(text)?))
    }

    /// Number of ovals `l`.
    pub fn oval_count(&self) -> usize {
        self.ovals.len()
    }

    pub fn region_count(&self) -> usize {
        self.adj.len()
    }

    pub fn ovals(&self) -> &[(usize, usize)] {
        &self.ovals
    }

    pub fn neighbours(&self, region: usize) -> &[(usize, usize)] {
        &self.adj[region]
    }

    pub fn degree(&self, region: usize) -> usize {
        self.adj[region].len()
    }

    /// Euler characteristic of the closed region: a sphere with `degree` holes.
    pub fn region_chi(&self, region: usize) -> i64 {
        2 - self.degree(region) as i64
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.adj.len()];
        let mut order = Vec::with_capacity(self.adj.len());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(r) = queue.pop_front() {
            order.push(r);
            for &(nb, _) in &self.adj[r] {
                if !seen[nb] {
                    seen[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
        order
    }

    /// Distances (in ovals crossed) from `root` to every region.
    pub fn distances_from(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(r) = queue.pop_front() {
            for &(nb, _) in &self.adj[r] {
                if dist[nb] == usize::MAX {
                    dist[nb] = dist[r] + 1;
                    queue.push_back(nb);
                }
            }
        }
        dist
    }

    /// The one or two center regions of the tree.
    pub fn centers(&self) -> Vec<usize> {
        let n = self.adj.len();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&r| deg[r] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for &(nb, _) in &self.adj[leaf] {
                    deg[nb] -= 1;
                    if deg[nb] == 1 {
                        next.push(nb);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// Eccentricity of a center region, i.e. the deepest nesting seen from it.
    pub fn radius(&self) -> usize {
        let c = self.centers()[0];
        self.distances_from(c).into_iter().max().unwrap_or(0)
    }

    /// Rooted forest representation with the given region as the outside.
    pub fn rooted_forest(&self, root: usize) -> Vec<Oval> {
        fn build(s: &SphereScheme, r: usize, parent: usize) -> Vec<Oval> {
            s.adj[r]
                .iter()
                .filter(|&&(nb, _)| nb != parent)
                .map(|&(nb, _)| Oval { sign: 1, inner: build(s, nb, r) })
                .collect()
        }
        build(self, root, usize::MAX)
    }

    /// Canonical notation. Isomorphic schemes, and only those, share it.
    pub fn canonical(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| canonical_rooted(&self.rooted_forest(c)))
            .min_by(compare_encodings)
            .expect("a tree has at least one center")
            .text
    }

    /// Per-region 2-coloring of the tree (region 0 gets color 0).
    pub fn two_coloring(&self) -> Vec<u8> {
        let mut color = vec![u8::MAX; self.adj.len()];
        color[0] = 0;
        for r in self.bfs_order(0) {
            for &(nb, _) in &self.adj[r] {
                if color[nb] == u8::MAX {
                    color[nb] = 1 - color[r];
                }
            }
        }
        color
    }

    /// Regions on the side of `oval` containing its first endpoint.
    pub fn side_of(&self, oval: usize) -> Vec<usize> {
        let (a, _) = self.ovals[oval];
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![a];
        seen[a] = true;
        let mut out = Vec::new();
        while let Some(r) = stack.pop() {
            out.push(r);
            for &(nb, e) in &self.adj[r] {
                if e != oval && !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
        out
    }
}

impl FromStr for SphereScheme {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for SphereScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Parses notation into a sphere scheme.
pub fn parse_scheme(text: &str) -> Result<SphereScheme, SchemeError> {
    SphereScheme::parse(text)
}

/// Canonical notation of a sphere scheme.
pub fn render_canonical(s: &SphereScheme) -> String {
    s.canonical()
}

/// Rooted canonical form: empty ovals collapse into a leading count, nested
/// terms follow sorted by (oval count, encoding).
#[derive(Debug, Clone)]
struct Encoding {
    text: String,
    ovals: usize,
    key: Vec<Key>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Close,
    Plus,
    Int(usize),
    Open,
}

fn compare_encodings(a: &Encoding, b: &Encoding) -> Ordering {
    a.ovals.cmp(&b.ovals).then_with(|| a.key.cmp(&b.key))
}

fn canonical_rooted(forest: &[Oval]) -> Encoding {
    let leaves = forest.iter().filter(|o| o.inner.is_empty()).count();
    let mut nested: Vec<Encoding> = forest
        .iter()
        .filter(|o| !o.inner.is_empty())
        .map(|o| canonical_rooted(&o.inner))
        .collect();
    nested.sort_by(compare_encodings);

    let mut text = String::new();
    let mut key = Vec::new();
    let mut ovals = leaves;
    if leaves > 0 || nested.is_empty() {
        text.push_str(&leaves.to_string());
        key.push(Key::Int(leaves));
    }
    for inner in nested {
        if !key.is_empty() {
            text.push('+');
            key.push(Key::Plus);
        }
        text.push_str("1<");
        text.push_str(&inner.text);
        text.push('>');
        key.push(Key::Int(1));
        key.push(Key::Open);
        key.extend(inner.key);
        key.push(Key::Close);
        ovals += inner.ovals + 1;
    }
    Encoding { text, ovals, key }
}

/// Which of the two color classes is B0, when that is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub b0_color: u8,
    pub chi0: i64,
    pub chi1: i64,
}

/// Two-coloring of the regions into the halves B0 and B1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartLabeling {
    pub color: Vec<u8>,
    /// Euler characteristic of each color class.
    pub chi: [i64; 2],
    /// Per-region Euler characteristics within each color class.
    pub components: [Vec<i64>; 2],
    /// Regions of each color class, parallel to `components`.
    pub regions: [Vec<usize>; 2],
    /// Color of B0; `None` when `l` is odd and either labeling is admissible.
    pub b0: Option<u8>,
}

impl PartLabeling {
    /// All admissible labelings: one when `l` is even, both when odd.
    pub fn labelings(&self) -> Vec<Labeling> {
        let make = |c: u8| Labeling { b0_color: c, chi0: self.chi[c as usize], chi1: self.chi[1 - c as usize] };
        match self.b0 {
            Some(c) => vec![make(c)],
            None => vec![make(0), make(1)],
        }
    }

    pub fn chi_b0(&self) -> Option<i64> {
        self.b0.map(|c| self.chi[c as usize])
    }

    pub fn chi_b1(&self) -> Option<i64> {
        self.b0.map(|c| self.chi[1 - c as usize])
    }

    pub fn is_ambiguous(&self) -> bool {
        self.b0.is_none()
    }

    /// Component Euler characteristics of the part labeled B0 / B1.
    pub fn b0_components(&self) -> Option<&[i64]> {
        self.b0.map(|c| self.components[c as usize].as_slice())
    }

    pub fn b1_components(&self) -> Option<&[i64]> {
        self.b0.map(|c| self.components[1 - c as usize].as_slice())
    }
}

/// Splits the sphere into the two halves bounded by the curve.
pub fn euler_parts(s: &SphereScheme) -> PartLabeling {
    let color = s.two_coloring();
    let mut chi = [0i64; 2];
    let mut components: [Vec<i64>; 2] = [Vec::new(), Vec::new()];
    let mut regions: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (r, &c) in color.iter().enumerate() {
        let x = s.region_chi(r);
        chi[c as usize] += x;
        components[c as usize].push(x);
        regions[c as usize].push(r);
    }
    let b0 = if s.oval_count() % 2 == 0 {
        // chi0 + chi1 = 2 with both even: exactly one is 0 mod 4
        Some(if chi[0].rem_euclid(4) == 0 { 0 } else { 1 })
    } else {
        None
    };
    PartLabeling { color, chi, components, regions, b0 }
}

/// Both sides of `χ(B1 ∩ D)` for the two disks bounded by `oval`.
pub fn x_sides(s: &SphereScheme, parts: &PartLabeling, oval: usize) -> Result<(i64, i64), SchemeError> {
    let b0 = parts.b0.ok_or(SchemeError::OddOvalCount(s.oval_count()))?;
    if oval >= s.oval_count() {
        return Err(SchemeError::NoSuchOval(oval));
    }
    let side = s.side_of(oval);
    let mut in_side = vec![false; s.region_count()];
    for &r in &side {
        in_side[r] = true;
    }
    let mut sums = (0, 0);
    for r in 0..s.region_count() {
        if parts.color[r] != b0 {
            if in_side[r] {
                sums.0 += s.region_chi(r);
            } else {
                sums.1 += s.region_chi(r);
            }
        }
    }
    Ok(sums)
}

/// `x(C) = χ(B1 ∩ D) mod 2`; defined only when `l` is even.
pub fn x_of_oval(s: &SphereScheme, oval: usize) -> Result<u8, SchemeError> {
    let parts = euler_parts(s);
    let (a, b) = x_sides(s, &parts, oval)?;
    debug_assert_eq!(a.rem_euclid(2), b.rem_euclid(2));
    Ok(a.rem_euclid(2) as u8)
}

/// A sphere scheme with a candidate complex orientation on every oval.
///
/// Sign `+1` on oval `e` means it is oriented as the boundary of region
/// `ovals()[e].0` (for parsed schemes: the region outside it in the notation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedScheme {
    pub base: SphereScheme,
    orientation: Vec<i8>,
}

impl OrientedScheme {
    pub fn new(base: SphereScheme, orientation: Vec<i8>) -> Result<Self, SchemeError> {
        if orientation.len() != base.oval_count() {
            return Err(SchemeError::OrientationLength { expected: base.oval_count(), got: orientation.len() });
        }
        if orientation.iter().any(|&s| s != 1 && s != -1) {
            return Err(SchemeError::BadSign);
        }
        Ok(OrientedScheme { base, orientation })
    }

    /// Reads signed notation: `^+` orients an oval as the boundary of the
    /// region outside it, `^-` as the boundary of the region inside.
    pub fn parse_signed(text: &str) -> Result<Self, SchemeError> {
        let forest = notation::parse_signed(text)?;
        let mut signs = Vec::with_capacity(notation::count_ovals(&forest));
        fn walk(forest: &[Oval], signs: &mut Vec<i8>) {
            for o in forest {
                signs.push(o.sign);
                walk(&o.inner, signs);
            }
        }
        walk(&forest, &mut signs);
        OrientedScheme::new(SphereScheme::from_forest(&forest), signs)
    }

    /// Every oval oriented as the boundary of its first endpoint.
    pub fn coherent(base: SphereScheme) -> Self {
        let l = base.oval_count();
        OrientedScheme { base, orientation: vec![1; l] }
    }

    pub fn orientation(&self) -> &[i8] {
        &self.orientation
    }

    /// The opposite complex orientation.
    pub fn reversed(&self) -> Self {
        OrientedScheme { base: self.base.clone(), orientation: self.orientation.iter().map(|s| -s).collect() }
    }
}

/// Ovals whose assigned orientation disagrees with the one induced from their
/// B0 side, given an orientation sign per B0 component (keyed by region).
pub fn disorienting_set(o: &OrientedScheme, b0_orient: &BTreeMap<usize, i8>) -> Result<Vec<usize>, SchemeError> {
    let s = &o.base;
    let parts = euler_parts(s);
    let b0 = parts.b0.ok_or(SchemeError::OddOvalCount(s.oval_count()))?;
    let mut out = Vec::new();
    for (e, &(a, b)) in s.ovals().iter().enumerate() {
        let (region, sign_if_plus) = if parts.color[a] == b0 { (a, 1) } else { (b, -1) };
        let eps = *b0_orient.get(&region).ok_or(SchemeError::MissingComponentSign(region))?;
        if eps != 1 && eps != -1 {
            return Err(SchemeError::BadSign);
        }
        let induced = eps * sign_if_plus;
        if induced != o.orientation[e] {
            out.push(e);
        }
    }
    Ok(out)
}

/// Scheme of ovals in the projective plane, rooted at the non-orientable
/// outer region (region 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneScheme {
    /// Parent region of each region; `None` for the outer region.
    parent: Vec<Option<usize>>,
    children: Vec<usize>,
}

impl PlaneScheme {
    pub fn from_forest(forest: &[Oval]) -> Self {
        let mut parent = vec![None];
        fn walk(forest: &[Oval], p: usize, parent: &mut Vec<Option<usize>>) {
            for o in forest {
                let id = parent.len();
                parent.push(Some(p));
                walk(&o.inner, id, parent);
            }
        }
        walk(forest, 0, &mut parent);
        let mut children = vec![0; parent.len()];
        for p in parent.iter().flatten() {
            children[*p] += 1;
        }
        PlaneScheme { parent, children }
    }

    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        Ok(Self::from_forest(&notation::parse(text)?))
    }

    pub fn oval_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn region_chi(&self, region: usize) -> i64 {
        1 - self.children[region] as i64
    }

    /// Nesting depth parity of each region; the outer region has depth 0.
    fn depth_parity(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.parent.len()];
        for r in 1..self.parent.len() {
            // parents precede children in construction order
            out[r] = 1 - out[self.parent[r].unwrap()];
        }
        out
    }
}

/// One half of the projective plane cut along the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanePart {
    pub chi: i64,
    pub orientable: bool,
}

pub fn parse_plane_scheme(text: &str) -> Result<PlaneScheme, SchemeError> {
    PlaneScheme::parse(text)
}

/// The two halves: index 0 contains the outer region and is non-orientable.
pub fn plane_euler_parts(p: &PlaneScheme) -> [PlanePart; 2] {
    let parity = p.depth_parity();
    let mut chi = [0i64; 2];
    for (r, &c) in parity.iter().enumerate() {
        chi[c as usize] += p.region_chi(r);
    }
    [PlanePart { chi: chi[0], orientable: false }, PlanePart { chi: chi[1], orientable: true }]
}
