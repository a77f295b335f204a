//! Z/4-valued quadratic forms on finite Z/2 vector spaces.
//!
//! A form is given by a symmetric Z/2 bilinear form `B` and the values of `q`
//! on a basis; the remaining values follow from
//! `q(x + y) = q(x) + q(y) + 2 B(x, y)`. Vectors are bit masks (bit `i` is the
//! coordinate on `e_i`), which caps the dimension at [`MAX_DIM`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest dimension accepted for exhaustive Gauss sums.
pub const MAX_DIM: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("dimension {0} exceeds the cap {MAX_DIM}")]
    DimensionCap(usize),
    #[error("vector has dimension {got}, form has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bilinear matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("q(e_{0}) must agree with B(e_{0}, e_{0}) mod 2")]
    DiagonalMismatch(usize),
    #[error("q value {0} is not in 0..=3")]
    ValueOutOfRange(u8),
    #[error("subspace is not totally isotropic; witness vector {0:#b}")]
    NotIsotropic(u32),
    #[error("induced form is not constant on the coset of {0:#b}")]
    InconsistentInduced(u32),
    #[error("form takes odd values")]
    NotEven,
    #[error("form is degenerate")]
    Degenerate,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A Z/4 quadratic form refining a symmetric Z/2 bilinear form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z4Form {
    /// `rows[i]` has bit `j` set iff `B(e_i, e_j) = 1`.
    rows: Vec<u32>,
    q: Vec<u8>,
}

impl Z4Form {
    pub fn new(bilinear: Vec<Vec<u8>>, q_basis: Vec<u8>) -> Result<Self, FormError> {
        let n = q_basis.len();
        if n > MAX_DIM {
            return Err(FormError::DimensionCap(n));
        }
        if bilinear.len() != n {
            return Err(FormError::DimensionMismatch { expected: n, got: bilinear.len() });
        }
        let mut rows = vec![0u32; n];
        for (i, row) in bilinear.iter().enumerate() {
            if row.len() != n {
                return Err(FormError::DimensionMismatch { expected: n, got: row.len() });
            }
            for (j, &b) in row.iter().enumerate() {
                if b > 1 {
                    return Err(FormError::ValueOutOfRange(b));
                }
                if b != bilinear[j][i] {
                    return Err(FormError::NotSymmetric(i, j));
                }
                if b == 1 {
                    rows[i] |= 1 << j;
                }
            }
        }
        Self::from_rows(rows, q_basis)
    }

    /// Builds a form from bit-mask rows of the bilinear matrix.
    pub fn from_rows(rows: Vec<u32>, q_basis: Vec<u8>) -> Result<Self, FormError> {
        let n = q_basis.len();
        if n > MAX_DIM {
            return Err(FormError::DimensionCap(n));
        }
        if rows.len() != n {
            return Err(FormError::DimensionMismatch { expected: n, got: rows.len() });
        }
        for i in 0..n {
            if rows[i] >> n != 0 {
                return Err(FormError::DimensionMismatch { expected: n, got: 32 - rows[i].leading_zeros() as usize });
            }
            for j in 0..n {
                if (rows[i] >> j) & 1 != (rows[j] >> i) & 1 {
                    return Err(FormError::NotSymmetric(i, j));
                }
            }
            if q_basis[i] > 3 {
                return Err(FormError::ValueOutOfRange(q_basis[i]));
            }
            if u32::from(q_basis[i] & 1) != (rows[i] >> i) & 1 {
                return Err(FormError::DiagonalMismatch(i));
            }
        }
        Ok(Z4Form { rows, q: q_basis })
    }

    /// The zero-dimensional form.
    pub fn empty() -> Self {
        Z4Form { rows: Vec::new(), q: Vec::new() }
    }

    /// Rank-one form `P(v)` with `q(e) = v`, `v` odd.
    pub fn rank_one(v: u8) -> Self {
        assert!(v % 2 == 1 && v < 4, "rank-one forms take an odd value");
        Z4Form { rows: vec![1], q: vec![v] }
    }

    /// Hyperbolic plane: `q(e1) = q(e2) = 0`, `e1·e2 = 1`.
    pub fn hyperbolic() -> Self {
        Z4Form { rows: vec![0b10, 0b01], q: vec![0, 0] }
    }

    /// Even plane with Arf invariant one: `q(e1) = q(e2) = 2`, `e1·e2 = 1`.
    pub fn even_anisotropic() -> Self {
        Z4Form { rows: vec![0b10, 0b01], q: vec![2, 2] }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn q_basis(&self) -> &[u8] {
        &self.q
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `B(x, y)` as 0 or 1.
    pub fn bilinear(&self, x: u32, y: u32) -> u32 {
        let mut acc = 0;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= (self.rows[i] & y).count_ones() & 1;
            bits &= bits - 1;
        }
        acc
    }

    /// `q(x)` for a bit-mask vector.
    pub fn value(&self, x: u32) -> u8 {
        let mut total: u32 = 0;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            total += u32::from(self.q[i]);
            // pairs i < j
            total += 2 * ((self.rows[i] & bits).count_ones() & 1);
        }
        (total % 4) as u8
    }

    /// `q(x)` for a coordinate vector of 0/1 entries.
    pub fn evaluate(&self, x: &[u8]) -> Result<u8, FormError> {
        if x.len() != self.dim() {
            return Err(FormError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        let mut mask = 0u32;
        for (i, &b) in x.iter().enumerate() {
            match b {
                0 => {}
                1 => mask |= 1 << i,
                other => return Err(FormError::ValueOutOfRange(other)),
            }
        }
        Ok(self.value(mask))
    }

    /// The form `-q` on the same bilinear form.
    pub fn negated(&self) -> Self {
        Z4Form { rows: self.rows.clone(), q: self.q.iter().map(|v| (4 - v) % 4).collect() }
    }

    pub fn rank(&self) -> usize {
        echelon(&self.rows).len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Vector whose `j`-th bit is `B(e_j, x)`; `B(y, x)` is then the parity of `y & w`.
    fn dual(&self, x: u32) -> u32 {
        let mut w = 0;
        for (j, row) in self.rows.iter().enumerate() {
            w |= ((row & x).count_ones() & 1) << j;
        }
        w
    }

    /// Serializes in the text file format accepted by [`FromStr`].
    pub fn to_file_string(&self) -> String {
        let n = self.dim();
        let mut s = format!("dim {n}\n");
        for row in &self.rows {
            let bits: Vec<String> = (0..n).map(|j| ((row >> j) & 1).to_string()).collect();
            s.push_str(&bits.join(" "));
            s.push('\n');
        }
        let vals: Vec<String> = self.q.iter().map(u8::to_string).collect();
        s.push_str("q:");
        for v in vals {
            s.push(' ');
            s.push_str(&v);
        }
        s.push('\n');
        s
    }
}

impl fmt::Display for Z4Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}

/// Form file: `dim n`, then `n` rows of space-separated bits, then
/// `q: v1 ... vn`. Blank lines and `#` comments are skipped.
impl FromStr for Z4Form {
    type Err = FormError;

    fn from_str(text: &str) -> Result<Self, FormError> {
        let syntax = |line: usize, message: &str| FormError::Syntax { line, message: message.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());

        let (ln, header) = lines.next().ok_or_else(|| syntax(1, "missing `dim n` header"))?;
        let n: usize = header
            .strip_prefix("dim")
            .map(str::trim)
            .ok_or_else(|| syntax(ln, "expected `dim n`"))?
            .parse()
            .map_err(|_| syntax(ln, "dimension is not a non-negative integer"))?;
        if n > MAX_DIM {
            return Err(FormError::DimensionCap(n));
        }
        let mut matrix = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, row) = lines.next().ok_or_else(|| syntax(ln, "missing matrix row"))?;
            if row.starts_with("q:") {
                return Err(syntax(ln, "missing matrix row"));
            }
            let bits = row
                .split_whitespace()
                .map(|t| match t {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    _ => Err(syntax(ln, &format!("{t:?} is not a bit"))),
                })
                .collect::<Result<Vec<u8>, _>>()?;
            if bits.len() != n {
                return Err(syntax(ln, &format!("expected {n} entries, found {}", bits.len())));
            }
            matrix.push(bits);
        }
        let (ln, qline) = lines.next().ok_or_else(|| syntax(ln, "missing `q:` line"))?;
        let values = qline.strip_prefix("q:").ok_or_else(|| syntax(ln, "expected `q: v1 ... vn`"))?;
        let q = values
            .split_whitespace()
            .map(|t| match t.parse::<u8>() {
                Ok(v) if v < 4 => Ok(v),
                _ => Err(syntax(ln, &format!("{t:?} is not in 0..=3"))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if q.len() != n {
            return Err(syntax(ln, &format!("expected {n} values, found {}", q.len())));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(syntax(ln, "trailing input"));
        }
        Z4Form::new(matrix, q).map_err(|e| match e {
            FormError::NotSymmetric(i, j) => syntax(i + 2, &format!("matrix is not symmetric at ({i}, {j})")),
            FormError::DiagonalMismatch(i) => syntax(ln, &format!("q(e_{i}) disagrees with B(e_{i}, e_{i}) mod 2")),
            other => other,
        })
    }
}

/// Gauss sum `Σ_x i^{q(x)}` as an exact Gaussian integer `(re, im)`.
pub fn gauss_sum(f: &Z4Form) -> Result<(i64, i64), FormError> {
    let n = f.dim();
    if n > MAX_DIM {
        return Err(FormError::DimensionCap(n));
    }
    let mut counts = [0i64; 4];
    let mut x = 0u32;
    let mut qx = 0u8;
    counts[0] += 1;
    // Gray-code walk: flipping e_i changes q by q(e_i) + 2 B(x, e_i)
    for step in 1u64..(1u64 << n) {
        let i = step.trailing_zeros() as usize;
        let b = (f.rows[i] & x & !(1 << i)).count_ones() & 1;
        let delta = u32::from(f.q[i]) + 2 * b;
        qx = if x & (1 << i) == 0 {
            ((u32::from(qx) + delta) % 4) as u8
        } else {
            ((u32::from(qx) + 4 * 4 - delta) % 4) as u8
        };
        x ^= 1 << i;
        counts[qx as usize] += 1;
    }
    Ok((counts[0] - counts[2], counts[1] - counts[3]))
}

/// Brown invariant: a residue mod 8, or `Degenerate` when the Gauss sum does
/// not have modulus `2^{n/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BrownValue {
    Residue(u8),
    Degenerate,
}

impl BrownValue {
    pub fn residue(self) -> Option<u8> {
        match self {
            BrownValue::Residue(r) => Some(r),
            BrownValue::Degenerate => None,
        }
    }
}

impl fmt::Display for BrownValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrownValue::Residue(r) => write!(f, "{r}"),
            BrownValue::Degenerate => f.write_str("degenerate"),
        }
    }
}

/// Reads `β` off the exact Gauss sum `2^{n/2} e^{2πiβ/8}`.
pub fn brown_from_gauss(n: usize, (a, b): (i64, i64)) -> BrownValue {
    let norm = (a as i128) * (a as i128) + (b as i128) * (b as i128);
    if norm != 1i128 << n {
        return BrownValue::Degenerate;
    }
    let r = match (a.signum(), b.signum()) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => return BrownValue::Degenerate,
    };
    // off-axis octants need |a| = |b|
    if a != 0 && b != 0 && a.abs() != b.abs() {
        return BrownValue::Degenerate;
    }
    BrownValue::Residue(r)
}

pub fn brown_invariant(f: &Z4Form) -> BrownValue {
    match gauss_sum(f) {
        Ok(g) => brown_from_gauss(f.dim(), g),
        Err(_) => BrownValue::Degenerate,
    }
}

/// Orthogonal direct sum.
pub fn direct_sum(f: &Z4Form, g: &Z4Form) -> Result<Z4Form, FormError> {
    let n = f.dim();
    let total = n + g.dim();
    if total > MAX_DIM {
        return Err(FormError::DimensionCap(total));
    }
    let mut rows = f.rows.clone();
    rows.extend(g.rows.iter().map(|r| r << n));
    let mut q = f.q.clone();
    q.extend_from_slice(&g.q);
    Ok(Z4Form { rows, q })
}

/// Reduced echelon basis of the span, pivots on the lowest set bit, sorted by pivot.
pub fn echelon(vectors: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let pivot = v & v.wrapping_neg();
            for b in basis.iter_mut() {
                if *b & pivot != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis.sort_by_key(|b| b.trailing_zeros());
    basis
}

fn reduce(v: u32, basis: &[u32]) -> u32 {
    let mut v = v;
    for &b in basis {
        if v & (b & b.wrapping_neg()) != 0 {
            v ^= b;
        }
    }
    v
}

/// Basis of `{x in F_2^n : parity(x & w) = 0 for all w}`.
fn nullspace(functionals: &[u32], n: usize) -> Vec<u32> {
    let rref = echelon(functionals);
    let pivots: u32 = rref.iter().fold(0, |acc, b| acc | (b & b.wrapping_neg()));
    let mut out = Vec::new();
    for free in 0..n {
        if pivots & (1 << free) != 0 {
            continue;
        }
        let mut x = 1u32 << free;
        for &row in &rref {
            if row & (1 << free) != 0 {
                x |= row & row.wrapping_neg();
            }
        }
        out.push(x);
    }
    out
}

/// Induced form on `L^⊥ / L` for a totally isotropic `L` (given by spanning
/// vectors). `β` is preserved by this reduction.
pub fn isotropic_reduce(f: &Z4Form, spanning: &[u32]) -> Result<Z4Form, FormError> {
    let n = f.dim();
    if let Some(&v) = spanning.iter().find(|&&v| n < 32 && v >> n != 0) {
        return Err(FormError::DimensionMismatch { expected: n, got: 32 - v.leading_zeros() as usize });
    }
    let basis = echelon(spanning);
    for (i, &u) in basis.iter().enumerate() {
        if f.value(u) != 0 {
            return Err(FormError::NotIsotropic(u));
        }
        for &v in &basis[i + 1..] {
            if f.bilinear(u, v) != 0 {
                return Err(FormError::NotIsotropic(u ^ v));
            }
        }
    }
    let functionals: Vec<u32> = basis.iter().map(|&b| f.dual(b)).collect();
    let perp = nullspace(&functionals, n);
    let mut span = basis.clone();
    let mut reps = Vec::new();
    for v in perp {
        let r = reduce(v, &span);
        if r != 0 {
            reps.push(v);
            span = echelon(&[span.as_slice(), &[r]].concat());
        }
    }
    for &c in &reps {
        for &b in &basis {
            if f.value(c ^ b) != f.value(c) {
                return Err(FormError::InconsistentInduced(c));
            }
        }
    }
    let m = reps.len();
    let rows: Vec<u32> = (0..m)
        .map(|i| (0..m).fold(0u32, |acc, j| acc | (f.bilinear(reps[i], reps[j]) << j)))
        .collect();
    let q: Vec<u8> = reps.iter().map(|&c| f.value(c)).collect();
    Z4Form::from_rows(rows, q)
}

/// Every value of `q` lies in `{0, 2}`.
pub fn is_even(f: &Z4Form) -> bool {
    f.q.iter().all(|v| v % 2 == 0)
}

/// Arf invariant of `q/2` for an even nondegenerate form; `β = 4·Arf`.
pub fn arf_of_even(f: &Z4Form) -> Result<u8, FormError> {
    if !is_even(f) {
        return Err(FormError::NotEven);
    }
    if !f.is_nondegenerate() {
        return Err(FormError::Degenerate);
    }
    let n = f.dim();
    let twos = (0u32..(1u32 << n)).filter(|&x| f.value(x) == 2).count();
    Ok(u8::from(twos > (1usize << n) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let h = Z4Form::hyperbolic();
        assert_eq!(h.evaluate(&[0, 0]).unwrap(), 0);
        assert_eq!(h.evaluate(&[1, 1]).unwrap(), 2);
        let f = Z4Form::new(vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap();
        assert_eq!(f.evaluate(&[1, 1]).unwrap(), 2);
        assert!(matches!(h.evaluate(&[1]), Err(FormError::DimensionMismatch { .. })));
    }

    #[test]
    fn gauss_sum_examples() {
        assert_eq!(gauss_sum(&Z4Form::empty()).unwrap(), (1, 0));
        assert_eq!(gauss_sum(&Z4Form::rank_one(1)).unwrap(), (1, 1));
        assert_eq!(gauss_sum(&Z4Form::hyperbolic()).unwrap(), (2, 0));
        assert_eq!(gauss_sum(&Z4Form::even_anisotropic()).unwrap(), (-2, 0));
    }

    #[test]
    fn brown_examples() {
        assert_eq!(brown_invariant(&Z4Form::rank_one(1)), BrownValue::Residue(1));
        assert_eq!(brown_invariant(&Z4Form::rank_one(3)), BrownValue::Residue(7));
        assert_eq!(brown_invariant(&Z4Form::even_anisotropic()), BrownValue::Residue(4));
        assert_eq!(brown_invariant(&Z4Form::hyperbolic()), BrownValue::Residue(0));
        assert_eq!(brown_invariant(&Z4Form::empty()), BrownValue::Residue(0));
        let zero = Z4Form::new(vec![vec![0]], vec![0]).unwrap();
        assert_eq!(brown_invariant(&zero), BrownValue::Degenerate);
        let cancel = Z4Form::new(vec![vec![0]], vec![2]).unwrap();
        assert_eq!(gauss_sum(&cancel).unwrap(), (0, 0));
        assert_eq!(brown_invariant(&cancel), BrownValue::Degenerate);
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&Z4Form::rank_one(1), &Z4Form::rank_one(3)).unwrap();
        assert_eq!(brown_invariant(&s), BrownValue::Residue(0));
        let f = Z4Form::even_anisotropic();
        assert_eq!(direct_sum(&f, &Z4Form::empty()).unwrap(), f);
    }

    #[test]
    fn isotropic_reduce_examples() {
        let h = Z4Form::hyperbolic();
        let r = isotropic_reduce(&h, &[0b01]).unwrap();
        assert_eq!(r.dim(), 0);
        assert_eq!(brown_invariant(&r), BrownValue::Residue(0));
        let same = isotropic_reduce(&h, &[]).unwrap();
        assert_eq!(same.dim(), 2);
        assert_eq!(brown_invariant(&same), brown_invariant(&h));
        assert_eq!(isotropic_reduce(&h, &[0b11]), Err(FormError::NotIsotropic(0b11)));
        let p = Z4Form::rank_one(1);
        assert_eq!(isotropic_reduce(&p, &[0b1]), Err(FormError::NotIsotropic(0b1)));
    }

    #[test]
    fn even_and_arf() {
        assert!(is_even(&Z4Form::hyperbolic()));
        assert_eq!(arf_of_even(&Z4Form::hyperbolic()).unwrap(), 0);
        assert_eq!(arf_of_even(&Z4Form::even_anisotropic()).unwrap(), 1);
        assert_eq!(arf_of_even(&Z4Form::rank_one(1)), Err(FormError::NotEven));
        let deg = Z4Form::new(vec![vec![0]], vec![0]).unwrap();
        assert_eq!(arf_of_even(&deg), Err(FormError::Degenerate));
    }

    #[test]
    fn construction_is_validated() {
        assert_eq!(Z4Form::new(vec![vec![0, 1], vec![0, 0]], vec![0, 0]), Err(FormError::NotSymmetric(0, 1)));
        assert_eq!(Z4Form::new(vec![vec![1]], vec![2]), Err(FormError::DiagonalMismatch(0)));
        assert_eq!(Z4Form::new(vec![vec![0]], vec![4]), Err(FormError::ValueOutOfRange(4)));
    }

    #[test]
    fn file_format() {
        let f: Z4Form = "dim 2\n0 1\n1 0\nq: 2 2\n".parse().unwrap();
        assert_eq!(f, Z4Form::even_anisotropic());
        assert_eq!(f.to_file_string().parse::<Z4Form>().unwrap(), f);
        let p: Z4Form = "# P(1)\ndim 1\n1\nq: 1\n".parse().unwrap();
        assert_eq!(p, Z4Form::rank_one(1));
        let e: Z4Form = "dim 0\nq:\n".parse().unwrap();
        assert_eq!(e.dim(), 0);
        let bad = "dim 2\n0 1\n0 0\nq: 0 0\n".parse::<Z4Form>().unwrap_err();
        assert!(matches!(bad, FormError::Syntax { line: 2, .. }), "{bad:?}");
        let bad = "dim 1\n1\nq: 2\n".parse::<Z4Form>().unwrap_err();
        assert!(matches!(bad, FormError::Syntax { line: 3, .. }), "{bad:?}");
        let bad = "dim 1\n1 0\nq: 1\n".parse::<Z4Form>().unwrap_err();
        assert!(matches!(bad, FormError::Syntax { line: 2, .. }), "{bad:?}");
        assert!(matches!("dime 1".parse::<Z4Form>(), Err(FormError::Syntax { line: 1, .. })));
    }
}
