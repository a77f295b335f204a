//! Slow, obviously-correct reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use ovalsieve::scheme::SphereScheme;
use ovalsieve::z4form::Z4Form;

/// Rooted AHU string of the tree hanging from `v`.
fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| ahu(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Isomorphism key of a free tree: smallest AHU string over every root.
pub fn free_tree_key(n: usize, edges: &[(usize, usize)]) -> String {
    let adj = adjacency(n, edges);
    (0..n).map(|r| ahu(&adj, r, usize::MAX)).min().unwrap()
}

/// All free trees on `n` vertices up to isomorphism, grown by attaching a
/// leaf to every vertex of every tree on `n - 1` vertices.
pub fn brute_free_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut e = t.clone();
                e.push((v, size - 1));
                if seen.insert(free_tree_key(size, &e)) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    if n == 0 {
        Vec::new()
    } else {
        level
    }
}

pub fn scheme_key(s: &SphereScheme) -> String {
    free_tree_key(s.region_count(), s.ovals())
}

/// Triple bound by definition: for each triple of regions, the ovals whose
/// removal splits it 1|2.
pub fn brute_bezout(s: &SphereScheme) -> usize {
    let n = s.region_count();
    let sides: Vec<Vec<bool>> = (0..s.oval_count())
        .map(|e| {
            let (a, b) = s.ovals()[e];
            let adj = adjacency(n, s.ovals());
            let mut mark = vec![false; n];
            let mut stack = vec![a];
            mark[a] = true;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !mark[w] && !(u == a && w == b) {
                        mark[w] = true;
                        stack.push(w);
                    }
                }
            }
            mark
        })
        .collect();
    let mut best = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = sides
                    .iter()
                    .filter(|side| {
                        let m = [side[i], side[j], side[k]].iter().filter(|&&x| x).count();
                        m == 1 || m == 2
                    })
                    .count();
                best = best.max(c);
            }
        }
    }
    best
}

/// `q(x)` straight from the polarization formula on coordinates.
pub fn naive_value(f: &Z4Form, x: u32) -> u8 {
    let n = f.dim();
    let mut total = 0u32;
    for i in 0..n {
        if x >> i & 1 == 1 {
            total += u32::from(f.q_basis()[i]);
            for j in i + 1..n {
                if x >> j & 1 == 1 {
                    total += 2 * (f.rows()[i] >> j & 1);
                }
            }
        }
    }
    (total % 4) as u8
}

/// Gauss sum by direct summation of `i^{q(x)}`.
pub fn naive_gauss(f: &Z4Form) -> (i64, i64) {
    let mut re = 0;
    let mut im = 0;
    for x in 0..(1u32 << f.dim()) {
        match naive_value(f, x) {
            0 => re += 1,
            1 => im += 1,
            2 => re -= 1,
            _ => im -= 1,
        }
    }
    (re, im)
}

/// Every form of dimension `n`: all symmetric matrices and all compatible
/// basis values.
pub fn all_forms(n: usize) -> Vec<Z4Form> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells.len()) {
        let mut rows = vec![0u32; n];
        for (b, &(i, j)) in cells.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        for hi in 0u32..(1 << n) {
            let q: Vec<u8> = (0..n).map(|i| ((rows[i] >> i & 1) as u8) + 2 * ((hi >> i & 1) as u8)).collect();
            out.push(Z4Form::from_rows(rows.clone(), q).unwrap());
        }
    }
    out
}

fn span(vectors: &[u32]) -> BTreeSet<u32> {
    let mut s = BTreeSet::from([0u32]);
    for &v in vectors {
        let shifted: Vec<u32> = s.iter().map(|x| x ^ v).collect();
        s.extend(shifted);
    }
    s
}

/// All maximal subspaces on which `q` vanishes, each as a list of spanning
/// vectors.
pub fn maximal_isotropic_subspaces(f: &Z4Form) -> Vec<Vec<u32>> {
    let n = f.dim();
    let isotropic: Vec<u32> = (1..(1u32 << n)).filter(|&v| f.value(v) == 0).collect();
    let mut seen: HashSet<BTreeSet<u32>> = HashSet::new();
    let mut maximal = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    seen.insert(span(&[]));
    while let Some(basis) = stack.pop() {
        let current = span(&basis);
        let mut extended = false;
        for &v in &isotropic {
            if current.contains(&v) || basis.iter().any(|&b| f.bilinear(b, v) != 0) {
                continue;
            }
            extended = true;
            let mut next = basis.clone();
            next.push(v);
            if seen.insert(span(&next)) {
                stack.push(next);
            }
        }
        if !extended {
            maximal.push(basis);
        }
    }
    maximal
}

/// The same form in the basis `f_i = Σ_j m[i]_j e_j`; `m` must be invertible.
pub fn change_basis(f: &Z4Form, m: &[u32]) -> Z4Form {
    let n = m.len();
    let rows: Vec<u32> = (0..n).map(|i| (0..n).fold(0, |acc, j| acc | (f.bilinear(m[i], m[j]) << j))).collect();
    let q: Vec<u8> = m.iter().map(|&v| f.value(v)).collect();
    Z4Form::from_rows(rows, q).unwrap()
}

pub fn is_invertible(m: &[u32]) -> bool {
    ovalsieve::z4form::echelon(m).len() == m.len()
}
