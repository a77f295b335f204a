mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ovalsieve::z4form::{brown_invariant, direct_sum, gauss_sum, is_even, isotropic_reduce, BrownValue, Z4Form};

fn nondegenerate(n: usize) -> Vec<Z4Form> {
    common::all_forms(n).into_iter().filter(Z4Form::is_nondegenerate).collect()
}

/// Gauss sums of every lift `q + 2ℓ` of one symmetric matrix at once: they
/// are the Walsh-Hadamard transform of `x ↦ i^{q(x)}`.
fn all_lifts(f: &Z4Form) -> Vec<(i64, i64)> {
    let n = f.dim();
    let mut g: Vec<(i64, i64)> = (0..1u32 << n)
        .map(|x| match f.value(x) {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        })
        .collect();
    let mut h = 1;
    while h < g.len() {
        for i in (0..g.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (g[j], g[j + h]);
                g[j] = (a.0 + b.0, a.1 + b.1);
                g[j + h] = (a.0 - b.0, a.1 - b.1);
            }
        }
        h *= 2;
    }
    g
}

#[test]
fn gauss_sum_has_full_modulus_through_dimension_six() {
    for n in 0..=6usize {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let mut checked = 0u64;
        for mask in 0u64..(1 << cells.len()) {
            let mut rows = vec![0u32; n];
            for (b, &(i, j)) in cells.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            let q = (0..n).map(|i| (rows[i] >> i & 1) as u8).collect();
            let f = Z4Form::from_rows(rows, q).unwrap();
            if !f.is_nondegenerate() {
                continue;
            }
            for (a, b) in all_lifts(&f) {
                assert_eq!(a * a + b * b, 1 << n, "n = {n}, matrix {mask:#x}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn gauss_sum_agrees_with_lift_transform() {
    for n in 0..=4 {
        for f in common::all_forms(n) {
            let direct = gauss_sum(&f).unwrap();
            assert_eq!(direct, common::naive_gauss(&f));
            // entry 0 of the transform is ℓ = 0
            assert_eq!(all_lifts(&f)[0], direct);
        }
    }
}

#[test]
fn brown_is_additive_on_all_small_pairs() {
    let forms: Vec<Z4Form> = (0..=3).flat_map(nondegenerate).collect();
    for f in &forms {
        let a = brown_invariant(f).residue().unwrap();
        for g in &forms {
            let b = brown_invariant(g).residue().unwrap();
            let s = direct_sum(f, g).unwrap();
            assert_eq!(brown_invariant(&s), BrownValue::Residue((a + b) % 8), "{f:?} + {g:?}");
        }
    }
}

#[test]
fn isotropic_reduction_preserves_brown_exhaustively() {
    for n in 0..=4 {
        for f in nondegenerate(n) {
            let beta = brown_invariant(&f);
            for l in common::maximal_isotropic_subspaces(&f) {
                let r = isotropic_reduce(&f, &l).unwrap();
                assert_eq!(r.dim(), n - 2 * l.len());
                // anisotropic quotients have dimension at most 3 (e.g. three copies of q = 1)
                assert!(r.dim() <= 3, "{f:?} reduced by {l:?}");
                assert_eq!(brown_invariant(&r), beta, "{f:?} reduced by {l:?}");
            }
        }
    }
}

#[test]
fn brown_is_a_basis_invariant_for_small_dimensions() {
    for n in 1..=3usize {
        let mats: Vec<Vec<u32>> = (0u32..1 << (n * n))
            .map(|bits| (0..n).map(|i| (bits >> (i * n)) & ((1 << n) - 1)).collect())
            .filter(|m: &Vec<u32>| common::is_invertible(m))
            .collect();
        for f in nondegenerate(n) {
            let beta = brown_invariant(&f);
            for m in &mats {
                assert_eq!(brown_invariant(&common::change_basis(&f, m)), beta);
            }
        }
    }
}

#[test]
fn brown_of_sampled_forms_in_dimensions_five_and_six() {
    let blocks = [Z4Form::rank_one(1), Z4Form::rank_one(3), Z4Form::hyperbolic(), Z4Form::even_anisotropic()];
    let beta = [1u8, 7, 0, 4];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..400 {
        let mut f = Z4Form::empty();
        let mut expect = 0u8;
        while f.dim() < 5 {
            let i = rng.gen_range(0..blocks.len());
            if f.dim() + blocks[i].dim() > 6 {
                continue;
            }
            f = direct_sum(&f, &blocks[i]).unwrap();
            expect = (expect + beta[i]) % 8;
        }
        let n = f.dim();
        let m = loop {
            let m: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect();
            if common::is_invertible(&m) {
                break m;
            }
        };
        let g = common::change_basis(&f, &m);
        assert_eq!(brown_invariant(&g), BrownValue::Residue(expect));
        if is_even(&g) {
            assert!(expect == 0 || expect == 4);
        }
    }
}
