//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ovalsieve::classify::{classify, classify_scheme, ClassifyOptions};
use ovalsieve::congruence::{theorem1_verdict, theorem2a_verdict, CurveType};
use ovalsieve::enumerate::{apply_filters, enumerate_schemes, FilterConfig};
use ovalsieve::family::Family;
use ovalsieve::hyperboloid::{check_b10, check_b4_b7, euler_integral, index_function, netsvetaev_b12, TorusArrangement};
use ovalsieve::scheme::{euler_parts, plane_euler_parts, x_sides, PlaneScheme, SphereScheme};
use ovalsieve::singularity::{arf_of_sequence, plane_check, MultiplicitySequence, PlaneCurveClass};
use ovalsieve::verdict::Status;
use ovalsieve::z4form::{brown_invariant, direct_sum, is_even, isotropic_reduce, BrownValue, Z4Form};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scheme(text: &str) -> SphereScheme {
    SphereScheme::parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn passes_t1(text: &str, d: u32) -> Status {
    theorem1_verdict(&scheme(text), d, CurveType::Unknown).unwrap().status
}

fn family_sweep() -> Outcome {
    let two = Family::new("a+1<b>").unwrap().with_minimums("b=1").unwrap();
    let mut passing = Vec::new();
    for m in two.members(17) {
        if passes_t1(&m.notation, 5) != Status::Prohibited {
            passing.push(m.assignment["b"]);
        }
    }
    passing.sort_unstable();
    ensure(passing == [2, 6, 10, 14], || format!("alpha+1<beta>: passing beta {passing:?}"))?;

    let three = Family::new("a+1<b>+1<c>").unwrap().with_minimums("b=1,c=1").unwrap();
    let members = three.members(17);
    ensure(members.len() == (1..=14).map(|b| 15 - b).sum::<usize>(), || format!("{} members", members.len()))?;
    for m in &members {
        let a = m.assignment["a"];
        let ok = passes_t1(&m.notation, 5) != Status::Prohibited;
        ensure(ok == (a % 4 == 1), || format!("{}: passes = {ok}", m.notation))?;
    }
    for t in ["1+1<6>+1<8>", "1+1<5>+1<9>"] {
        let st = passes_t1(t, 5);
        ensure(st == Status::NoConstraint, || format!("{t}: {st}"))?;
    }
    Ok(format!("{} + {} family members", two.members(17).len(), members.len()))
}

fn cubic_m_curves() -> Outcome {
    // oracle: every tree on 6 vertices from the brute-force generator
    let trees = common::brute_free_trees(6);
    ensure(trees.len() == 6, || format!("{} trees", trees.len()))?;
    let mut passing = Vec::new();
    for t in trees {
        let s = SphereScheme::from_edges(t).unwrap();
        if theorem1_verdict(&s, 3, CurveType::Unknown).unwrap().status != Status::Prohibited {
            passing.push(s.canonical());
        }
    }
    ensure(passing == ["5"], || format!("passing {passing:?}"))?;
    let enumerated: Vec<String> = enumerate_schemes(5)
        .unwrap()
        .iter()
        .map(|c| c.text.clone())
        .filter(|t| passes_t1(t, 3) != Status::Prohibited)
        .collect();
    ensure(enumerated == ["5"], || format!("enumerated passing {enumerated:?}"))?;
    let v = theorem1_verdict(&scheme("1+1<1>"), 3, CurveType::Unknown).unwrap();
    ensure(v.status == Status::TypeIOnly, || format!("1+1<1>: {}", v.status))?;
    ensure(v.reasons.iter().any(|r| r.clause == "1c" && r.holds && r.residue == 1), || format!("{v:?}"))?;
    Ok("only \"5\" survives; 1+1<1> is type I only".into())
}

fn soundness() -> Outcome {
    let mut lists: Vec<(u32, String)> = (0..=5).map(|a| (3, a.to_string())).collect();
    lists.push((3, "1+1<1>".into()));
    lists.extend((0..=10).map(|a| (4, a.to_string())));
    for a in 0..=9u32 {
        for b in 0..=9 - a {
            lists.push((4, format!("{a}+1<{b}>")));
        }
    }
    for (d, text) in &lists {
        let s = scheme(text);
        let filters = apply_filters(&s, &FilterConfig::new(*d));
        ensure(filters.passed, || format!("d={d} {text}: filter {:?}", filters.failures))?;
        let row = classify_scheme(&s, &FilterConfig::new(*d), CurveType::Unknown);
        ensure(row.status != Status::Prohibited, || format!("d={d} {text}: {:?}", row.verdicts))?;
    }
    Ok(format!("{} realizable schemes never prohibited", lists.len()))
}

fn even_schemes() -> Vec<SphereScheme> {
    (0..=12).step_by(2).flat_map(|l| enumerate_schemes(l).unwrap()).map(|c| c.scheme).collect()
}

fn parity() -> Outcome {
    let all = even_schemes();
    for s in &all {
        // region χ from the degree: a sphere with deg(R) holes
        let colors = s.two_coloring();
        let mut chi = [0i64; 2];
        for r in 0..s.region_count() {
            chi[colors[r] as usize] += 2 - s.degree(r) as i64;
        }
        let b0 = chi.iter().position(|c| c.rem_euclid(4) == 0).unwrap();
        let (c0, c1) = (chi[b0], chi[1 - b0]);
        ensure(c0 % 2 == 0 && (c0 - c1 - 2).rem_euclid(4) == 0, || format!("{}: chi {c0}, {c1}", s.canonical()))?;
        ensure(euler_parts(s).chi_b0() == Some(c0), || s.canonical())?;
    }
    Ok(format!("{} schemes", all.len()))
}

fn x_well_defined() -> Outcome {
    let all = even_schemes();
    let mut ovals = 0;
    for s in &all {
        let p = euler_parts(s);
        for e in 0..s.oval_count() {
            let (a, b) = x_sides(s, &p, e).unwrap();
            ensure((a - b).rem_euclid(2) == 0, || format!("{} oval {e}: {a} vs {b}", s.canonical()))?;
            ovals += 1;
        }
    }
    Ok(format!("{} schemes, {ovals} ovals", all.len()))
}

fn counts() -> Outcome {
    for (l, want) in [(5, 6usize), (10, 235)] {
        let brute = common::brute_free_trees(l + 1).len();
        let got = enumerate_schemes(l).unwrap().len();
        ensure(brute == want && got == want, || format!("l={l}: enumerated {got}, brute force {brute}"))?;
    }
    let got = enumerate_schemes(17).unwrap().len();
    ensure(got == 123_867, || format!("l=17: {got}"))?;
    let t = Instant::now();
    let report = classify(&ClassifyOptions::new(5)).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    ensure(report.rows.len() == 123_867, || format!("classified {} rows", report.rows.len()))?;
    ensure(took < Duration::from_secs(60), || format!("l=17 classification took {took:.1?}"))?;
    let survivors = report.rows.iter().filter(|r| r.status != Status::Prohibited).count();
    Ok(format!("6 / 235 / 123867; l=17 classification {took:.1?}, {survivors} not prohibited"))
}

/// Raw `q(v)` from matrix rows and basis values.
fn raw_q(rows: &[u32], q: &[u8], v: u32) -> u32 {
    let mut s = 0u32;
    let mut diag = 0u32;
    let mut qsum = 0u32;
    for i in 0..rows.len() {
        if v >> i & 1 == 1 {
            s += (rows[i] & v).count_ones();
            diag += rows[i] >> i & 1;
            qsum += u32::from(q[i]);
        }
    }
    (qsum + (s - diag)) % 4
}

/// Every pair (form, maximal isotropic L) of dimension `n` up to change of
/// basis, with L moved onto the first `k` basis vectors. Returns the number
/// of pairs checked.
fn reduction_pairs(n: usize) -> Result<u64, String> {
    let mut checked = 0;
    for k in 0..=n / 2 {
        let l_mask = (1u32 << k) - 1;
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(_, j)| j >= k).collect();
        for mask in 0u64..(1 << cells.len()) {
            let mut rows = vec![0u32; n];
            for (b, &(i, j)) in cells.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            if ovalsieve::z4form::echelon(&rows).len() != n {
                continue;
            }
            for hi in 0u32..1 << (n - k) {
                let q: Vec<u8> = (0..n).map(|i| (rows[i] >> i & 1) as u8 + if i >= k { 2 * (hi >> (i - k) & 1) as u8 } else { 0 }).collect();
                let maximal = (1u32..1 << n).all(|v| {
                    v & !l_mask == 0 || (0..k).any(|i| (rows[i] & v).count_ones() % 2 == 1) || raw_q(&rows, &q, v) != 0
                });
                if !maximal {
                    continue;
                }
                let f = Z4Form::from_rows(rows.clone(), q).unwrap();
                let l: Vec<u32> = (0..k).map(|i| 1 << i).collect();
                let r = isotropic_reduce(&f, &l).map_err(|e| e.to_string())?;
                let (a, b) = (brown_invariant(&f), brown_invariant(&r));
                ensure(a == b && r.dim() == n - 2 * k, || format!("{f:?} by {l:?}: {a} vs {b}"))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn brown_suite() -> Outcome {
    ensure(brown_invariant(&Z4Form::rank_one(1)) == BrownValue::Residue(1), || "P(1)".into())?;
    ensure(brown_invariant(&Z4Form::hyperbolic()) == BrownValue::Residue(0), || "hyperbolic".into())?;
    ensure(brown_invariant(&Z4Form::even_anisotropic()) == BrownValue::Residue(4), || "even (2,2)".into())?;

    let small: Vec<Z4Form> = (0..=3).flat_map(common::all_forms).filter(Z4Form::is_nondegenerate).collect();
    let mut pairs = 0;
    for f in &small {
        let a = brown_invariant(f).residue().unwrap();
        for g in &small {
            let b = brown_invariant(g).residue().unwrap();
            let s = brown_invariant(&direct_sum(f, g).unwrap());
            ensure(s == BrownValue::Residue((a + b) % 8), || format!("{f:?} + {g:?}: {s}"))?;
            pairs += 1;
        }
    }

    // direct check against every maximal isotropic subspace for n <= 4
    let mut direct = 0;
    for n in 0..=4 {
        for f in common::all_forms(n).into_iter().filter(Z4Form::is_nondegenerate) {
            let beta = brown_invariant(&f);
            for l in common::maximal_isotropic_subspaces(&f) {
                let r = isotropic_reduce(&f, &l).map_err(|e| e.to_string())?;
                ensure(brown_invariant(&r) == beta, || format!("{f:?} by {l:?}"))?;
                direct += 1;
            }
        }
    }
    let mut orbit = 0;
    for n in 0..=6 {
        orbit += reduction_pairs(n)?;
    }

    let mut even = 0;
    for n in 0..=6 {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u64..(1 << cells.len()) {
            let mut rows = vec![0u32; n];
            for (b, &(i, j)) in cells.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            for hi in 0u32..1 << n {
                let q = (0..n).map(|i| 2 * (hi >> i & 1) as u8).collect();
                let f = Z4Form::from_rows(rows.clone(), q).unwrap();
                if f.is_nondegenerate() {
                    debug_assert!(is_even(&f));
                    let b = brown_invariant(&f).residue().unwrap();
                    ensure(b == 0 || b == 4, || format!("{f:?}: {b}"))?;
                    even += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} sums, {direct} direct + {orbit} orbit reductions, {even} even forms"))
}

fn appendix_a() -> Outcome {
    for (s, want) in [(vec![3u64], 1u8), (vec![5], 1), (vec![3, 5], 0)] {
        let got = arf_of_sequence(&MultiplicitySequence(s.clone())).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("arf {s:?} = {got}"))?;
    }
    // ℝP²₊ of "3+1<1>" is three disks and an annulus (χ = 3); of "4" four disks (χ = 4).
    // A nonsingular quartic M-curve needs χ ≡ k² = 4 (mod 8).
    let quartic = PlaneScheme::parse("3+1<1>").unwrap();
    ensure(plane_euler_parts(&quartic)[1].chi == 3, || format!("{:?}", plane_euler_parts(&quartic)))?;
    let v = plane_check(&quartic, 2, PlaneCurveClass::M, 0).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Prohibited, || format!("3+1<1>: {}", v.status))?;
    let four = PlaneScheme::parse("4").unwrap();
    let v = plane_check(&four, 2, PlaneCurveClass::M, 0).map_err(|e| e.to_string())?;
    ensure(v.status == Status::NoConstraint, || format!("4: {}", v.status))?;
    Ok("Arf values and quartic plane example".into())
}

fn torus(json: &str) -> TorusArrangement {
    TorusArrangement::from_json(json).unwrap_or_else(|e| panic!("{json}: {e}"))
}

fn ovals(text: &str) -> TorusArrangement {
    torus(&format!(r#"{{"schema_version":1,"bidegree":[2,2],"ovals_notation":"{text}"}}"#))
}

fn hyperboloid_suite() -> Outcome {
    let integral = |a: &TorusArrangement| euler_integral(a, &index_function(a).unwrap());
    // (ind, χ) per region: torus minus h disks has χ = -h, disks 1, annuli 0
    let cases: [(&str, &[(i64, i64)], i64); 4] = [
        ("0", &[(0, 0)], 0),
        ("1^+", &[(0, -1), (1, 1)], 1),
        ("1^+<1^+>", &[(0, -1), (1, 0), (2, 1)], 4),
        ("2^+", &[(0, -2), (1, 1), (1, 1)], 2),
    ];
    for (text, regions, want) in cases {
        let hand: i64 = regions.iter().map(|(i, c)| i * i * c).sum();
        let got = integral(&ovals(text));
        ensure(hand == want && got == want, || format!("{text}: {got}, by hand {hand}"))?;
    }

    let by_prop = |text: &str| -> BTreeMap<&'static str, Option<bool>> {
        check_b4_b7(&ovals(text)).unwrap().1.into_iter().map(|c| (c.prop, c.holds())).collect()
    };
    let disjoint = by_prop("2^+");
    ensure(disjoint["B4"] == Some(true), || format!("two disjoint: {disjoint:?}"))?;
    let nested = by_prop("1^+<1^+>");
    ensure(nested["B4"] == Some(false), || format!("nested pair: {nested:?}"))?;

    let b10 = torus(
        r#"{"schema_version":1,"bidegree":[2,4],"class":[1,0],"components":[1,-1],"annuli":["2","0"],"curve_class":"M"}"#,
    );
    ensure(b10.parts_chi() == Some([-2, 2]), || format!("{:?}", b10.parts_chi()))?;
    let st = check_b10(&b10, None).map_err(|e| e.to_string())?.status;
    ensure(st == Status::Prohibited, || format!("B.10 example: {st}"))?;

    ensure(netsvetaev_b12(&[2]) == Ok(1), || "b12 [2]".into())?;
    ensure(netsvetaev_b12(&[2, 3]) == Ok(0), || "b12 [2,3]".into())?;
    Ok("integrals 0/1/4/2, B.4, B.10, B.12".into())
}

fn theorem2() -> Outcome {
    let s = scheme("1<1<1<1>>+1<1<1>>+1<1<1>>>");
    ensure(s.oval_count() == 10, || format!("{} ovals", s.oval_count()))?;
    let p = euler_parts(&s);
    ensure(p.chi_b0() == Some(4), || format!("{:?}", p.chi_b0()))?;
    ensure(p.b1_components().unwrap().iter().all(|c| c % 2 == 0), || "B1 parity".into())?;
    let v = theorem2a_verdict(&s, 4).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Prohibited, || format!("nest: {}", v.status))?;
    let v = theorem2a_verdict(&scheme("10"), 4).map_err(|e| e.to_string())?;
    ensure(v.status == Status::HypothesisNotSatisfied, || format!("<10>: {}", v.status))?;
    Ok("nest prohibited, <10> outside the hypothesis".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 10] = [
        (1, "(5,5) family sweeps", 1, family_sweep),
        (2, "(3,3) M-curves", 1, cubic_m_curves),
        (3, "soundness on realizable lists", 1, soundness),
        (4, "parity of the halves, even l <= 12", 5, parity),
        (5, "x well defined, even l <= 12", 5, x_well_defined),
        (6, "enumeration counts and l=17 classification", 120, counts),
        (7, "Brown invariant suite", 30, brown_suite),
        (8, "singular plane curves", 1, appendix_a),
        (9, "hyperboloid suite", 1, hyperboloid_suite),
        (10, "even-degree sphere examples", 1, theorem2),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = t.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(limit) => Err(format!("took {took:.2?}, limit {limit} s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} ({took:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
