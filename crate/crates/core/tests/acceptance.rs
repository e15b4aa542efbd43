//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::collections::HashMap;
use std::hint::black_box;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use levgraph::graph::UNREACHABLE;
use levgraph::resolving::{
    build_rka, construction_size, construction_size_bound, permutation_resolver,
};
use levgraph::strings::lit;
use levgraph::symmetry::is_determining;
use levgraph::*;

type Outcome = Result<String, String>;

/// Last row of the edit-distance table of `u` against `v`: entry `j` is
/// `ℓ(u, v[..j])`. Independent of the library kernels.
fn dp_last_row(u: &[Symbol], v: &[Symbol]) -> Vec<usize> {
    let mut prev: Vec<usize> = (0..=v.len()).collect();
    for (i, &x) in u.iter().enumerate() {
        let mut cur = vec![i + 1; v.len() + 1];
        for (j, &y) in v.iter().enumerate() {
            cur[j + 1] = (prev[j] + usize::from(x != y))
                .min(prev[j + 1] + 1)
                .min(cur[j] + 1);
        }
        prev = cur;
    }
    prev
}

fn strings_up_to(max_len: usize, a: u32) -> impl Iterator<Item = LevString> {
    GraphSpec::new(0, max_len, a)
        .unwrap()
        .strings()
        .collect::<Vec<_>>()
        .into_iter()
}

fn graph(k1: usize, k2: usize, a: u32) -> LevGraph {
    LevGraph::build(GraphSpec::new(k1, k2, a).unwrap()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_two_run_kernel() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    for a in [2u32, 3] {
        for w in strings_up_to(9, a) {
            for alpha in 0..a {
                for beta in (0..a).filter(|&b| b != alpha) {
                    for l in 0..=9usize {
                        // One table against alpha^l beta^(9-l) yields every r <= 9 - l.
                        let target = LevString::two_runs(alpha, l, beta, 9 - l);
                        let row = dp_last_row(&w, &target);
                        for r in 0..=(9 - l) {
                            let p = TwoRunPattern::new(alpha, l, beta, r).unwrap();
                            let got = dist_two_run_linear(&w, &p);
                            ensure(got == row[l + r], || {
                                format!("w={w} pattern={p}: kernel {got}, DP {}", row[l + r])
                            })?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{checked} (w, pattern) pairs, 0 mismatches, {elapsed:.2?}"
    ))
}

fn ac2_one_run_closed_form() -> Outcome {
    let mut checked = 0u64;
    for a in 2u32..=4 {
        for w in strings_up_to(10, a) {
            for alpha in 0..a {
                let row = dp_last_row(&w, &[alpha; 12]);
                for (l, &expect) in row.iter().enumerate() {
                    let got = dist_one_run(&w, alpha, l);
                    ensure(got == expect, || {
                        format!("w={w} {alpha}^{l}: {got} vs DP {expect}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} cases, 0 mismatches"))
}

fn ac3_equal_length_hamming() -> Outcome {
    let mut checked = 0u64;
    for a in 2u32..=3 {
        for k in 0..=8 {
            let spec = GraphSpec::new(k, k, a).unwrap();
            let all: Vec<LevString> = spec.strings().collect();
            let targets: Vec<&LevString> = all.iter().filter(|v| v.runs() <= 2).collect();
            for u in &all {
                for v in &targets {
                    let l = edit_distance_dp(u, v);
                    let h = hamming_distance(u, v).unwrap();
                    ensure(l == h, || format!("ℓ({u},{v}) = {l} but h = {h}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} pairs, 0 exceptions"))
}

fn ac4_geodesics() -> Outcome {
    let mut pairs = 0usize;
    let cases = [
        ((0, 4, 2), false),
        ((1, 4, 2), false),
        ((0, 3, 3), false),
        ((4, 4, 2), true),
    ];
    for ((k1, k2, a), hamming) in cases {
        let g = graph(k1, k2, a);
        let strings: Vec<LevString> = g.spec().strings().collect();
        for (s, u) in strings.iter().enumerate() {
            let dist = g.geodesic_bfs(u).unwrap();
            ensure(g.bfs_from_rank(s) == dist, || {
                "BFS by rank and by string differ".into()
            })?;
            for (t, v) in strings.iter().enumerate() {
                let expect = if hamming {
                    hamming_distance(u, v).unwrap()
                } else {
                    edit_distance_dp(u, v)
                };
                ensure(dist[t] as usize == expect, || {
                    format!("L_{{{k1},{k2};{a}}} d({u},{v}) = {} vs {expect}", dist[t])
                })?;
                pairs += 1;
            }
        }
    }

    let g = graph(3, 3, 2);
    let (u, v) = (lit("010"), lit("101"));
    let d = g.geodesic_bfs(&u).unwrap()[g.rank_of(&v).unwrap()];
    ensure(edit_distance_dp(&u, &v) == 2 && d == 3, || {
        format!("L_{{3,3;2}}: d = {d}")
    })?;
    let g = graph(0, 3, 2);
    let d = g.geodesic_bfs(&u).unwrap()[g.rank_of(&v).unwrap()];
    ensure(d == 2, || format!("L_{{0,3;2}}: d = {d}"))?;
    Ok(format!(
        "{pairs} pairs; ℓ(010,101)=2, d=3 in L_{{3,3;2}}, d=2 in L_{{0,3;2}}"
    ))
}

fn ac5_connectivity() -> Outcome {
    let mut graphs = 0;
    for a in 2u32..=3 {
        for k2 in 0..=5 {
            for k1 in 0..=k2 {
                let g = graph(k1, k2, a);
                let dist = g.bfs_from_rank(0);
                ensure(dist.iter().all(|&d| d != UNREACHABLE), || {
                    format!("{} is disconnected", g.spec())
                })?;
                graphs += 1;
            }
        }
    }
    Ok(format!("{graphs} graphs connected"))
}

fn ac6_resolving_construction() -> Outcome {
    let mut graphs = 0;
    for a in 2u32..=4 {
        for k2 in 1..=5 {
            for k1 in 0..k2 {
                let spec = GraphSpec::new(k1, k2, a).unwrap();
                let g = LevGraph::build(spec).unwrap();
                let r = build_resolving_set(&spec);
                if let Resolution::Unresolved { first, second } =
                    is_resolving(&g, r.nodes()).unwrap()
                {
                    return Err(format!("{spec}: {first} and {second} unresolved"));
                }
                ensure(r.raw_len() == construction_size(&spec), || {
                    format!(
                        "{spec}: emitted {} expected {}",
                        r.raw_len(),
                        construction_size(&spec)
                    )
                })?;
                ensure(r.raw_len() <= construction_size_bound(&spec), || {
                    format!("{spec}: {} exceeds bound", r.raw_len())
                })?;
                graphs += 1;
            }
        }
    }
    Ok(format!(
        "{graphs} graphs resolved; sizes match the construction count"
    ))
}

fn ac7_lemma_resolvers() -> Outcome {
    let mut same_length = 0u64;
    let mut perm_pairs = 0u64;
    let mut odd_first_diff_a3 = 0u64;
    for a in 2u32..=4 {
        let alphabet = Alphabet::new(a).unwrap();
        for k in 0..=5usize {
            let strings: Vec<LevString> = GraphSpec::new(k, k, a).unwrap().strings().collect();

            let r = build_rka(k, alphabet);
            let mut seen: HashMap<Vec<usize>, &LevString> = HashMap::new();
            for w in &strings {
                let profile: Vec<usize> = r.iter().map(|x| edit_distance_dp(w, x)).collect();
                if let Some(other) = seen.insert(profile, w) {
                    return Err(format!("R_{{{k},{a}}} leaves {other} and {w} unresolved"));
                }
                same_length += 1;
            }

            if k == 0 {
                continue;
            }
            let resolver = permutation_resolver(k, alphabet).unwrap();
            let mut by_counts: HashMap<Vec<usize>, Vec<&LevString>> = HashMap::new();
            for w in &strings {
                let counts: Vec<usize> = (0..a).map(|s| w.count(s)).collect();
                by_counts.entry(counts).or_default().push(w);
            }
            for class in by_counts.values() {
                let profiles: Vec<Vec<usize>> = class
                    .iter()
                    .map(|w| resolver.iter().map(|x| edit_distance_dp(w, x)).collect())
                    .collect();
                for i in 0..class.len() {
                    for j in i + 1..class.len() {
                        ensure(profiles[i] != profiles[j], || {
                            format!(
                                "a={a} k={k}: permutations {} and {} unresolved",
                                class[i], class[j]
                            )
                        })?;
                        perm_pairs += 1;
                        if a == 3 {
                            let pos = (0..k).find(|&p| class[i][p] != class[j][p]).unwrap();
                            if class[i][pos] % 2 == 1 || class[j][pos] % 2 == 1 {
                                odd_first_diff_a3 += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(odd_first_diff_a3 > 0, || {
        "no a=3 odd-character pairs exercised".into()
    })?;
    Ok(format!(
        "{same_length} same-length strings, {perm_pairs} permutation pairs \
         ({odd_first_diff_a3} with an odd first-differing symbol at a=3)"
    ))
}

fn ac8_degree_formula() -> Outcome {
    let mut vertices = 0;
    for (k1, k2, a) in [(0, 5, 2), (0, 4, 3)] {
        let g = graph(k1, k2, a);
        for rank in 0..g.vertex_count() {
            let w = g.string_at(rank);
            if w.len() <= k1 || w.len() >= k2 {
                continue;
            }
            let expect = degree_formula(&w, g.spec().a);
            let got = g.degree_split(rank);
            ensure(got == expect, || format!("{w}: {got:?} vs {expect:?}"))?;
            vertices += 1;
        }
    }
    Ok(format!(
        "{vertices} interior vertices match (r(u), |u|(a-1), a+|u|(a-1))"
    ))
}

fn ac9_automorphism_counts() -> Outcome {
    let mut parts = Vec::new();
    for ((k1, k2, a), expect) in [
        ((0, 3, 2), 4),
        ((1, 3, 3), 12),
        ((0, 1, 2), 6),
        ((2, 2, 2), 8),
    ] {
        let g = graph(k1, k2, a);
        let n = enumerate_automorphisms(&g).unwrap().len();
        ensure(n == expect, || {
            format!("{}: |Aut| = {n}, expected {expect}", g.spec())
        })?;
        parts.push(format!("{}={n}", g.spec()));
    }
    for (k1, k2, a) in [(0, 3, 2), (1, 3, 3), (2, 3, 2)] {
        let g = graph(k1, k2, a);
        ensure(match_groups(&g).unwrap(), || {
            format!("{}: groups differ", g.spec())
        })?;
    }
    Ok(format!("{}; match_groups holds", parts.join(", ")))
}

fn ac10_determining_numbers() -> Outcome {
    let mut parts = Vec::new();
    for ((k1, k2, a), expect) in [
        ((0, 3, 2), 1),
        ((0, 2, 2), 2),
        ((0, 1, 2), 2),
        ((0, 1, 3), 3),
    ] {
        let g = graph(k1, k2, a);
        let d = exact_determining_number(&g).unwrap().det;
        ensure(d == expect, || {
            format!("{}: Det = {d}, expected {expect}", g.spec())
        })?;
        parts.push(format!("{}={d}", g.spec()));
    }
    let g = graph(0, 2, 2);
    ensure(is_determining(&g, &[lit("01"), lit("00")]).unwrap(), || {
        "{01,00} is not determining on L_{0,2;2}".into()
    })?;
    Ok(format!(
        "{}; {{01,00}} determining on L_{{0,2;2}}",
        parts.join(", ")
    ))
}

fn ac11_dimension_bounds() -> Outcome {
    let mut parts = Vec::new();
    for (k1, k2, a) in [(0, 2, 2), (0, 1, 2)] {
        let g = graph(k1, k2, a);
        let spec = *g.spec();
        let r = build_resolving_set(&spec);
        let beta = exact_metric_dimension(&g, g.vertex_count())
            .unwrap()
            .unwrap()
            .beta;
        let lower = (a as u64).pow(k2 as u32) <= (k2 as u64 + 1).pow(beta as u32);
        ensure(lower && beta <= r.len(), || {
            format!("{spec}: beta = {beta}, |R| = {}", r.len())
        })?;
        ensure(check_dimension_bounds(&spec, beta), || {
            format!("{spec}: bound check false")
        })?;
        parts.push(format!("beta({spec}) = {beta} <= |R| = {}", r.len()));
    }
    Ok(parts.join(", "))
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

/// Median per-call times over two batches of inputs. Each sample runs the
/// kernel once on every input of a batch, so no single input repeats back to
/// back; the two batches are sampled alternately.
fn time_linear_pair(
    a: &[(Vec<Symbol>, TwoRunPattern)],
    b: &[(Vec<Symbol>, TwoRunPattern)],
) -> (Duration, Duration) {
    let sample = |batch: &[(Vec<Symbol>, TwoRunPattern)]| {
        let t = Instant::now();
        for (w, p) in batch {
            black_box(dist_two_run_linear(black_box(w), black_box(p)));
        }
        t.elapsed() / batch.len() as u32
    };
    for _ in 0..4 {
        sample(a);
        sample(b);
    }
    let (mut ta, mut tb) = (Vec::new(), Vec::new());
    for _ in 0..41 {
        ta.push(sample(a));
        tb.push(sample(b));
    }
    (median(ta), median(tb))
}

fn time_dp(w: &[Symbol], v: &[Symbol]) -> Duration {
    let samples = (0..3)
        .map(|_| {
            let t = Instant::now();
            black_box(edit_distance_dp(black_box(w), black_box(v)));
            t.elapsed()
        })
        .collect();
    median(samples)
}

fn ac12_linear_time() -> Outcome {
    const BATCH: usize = 32;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut batch = |len: usize| -> Vec<(Vec<Symbol>, TwoRunPattern)> {
        let p = TwoRunPattern::new(0, len / 4, 1, len / 4).unwrap();
        (0..BATCH)
            .map(|_| ((0..len).map(|_| rng.gen_range(0..4)).collect(), p))
            .collect()
    };
    let b14 = batch(1 << 14);
    let b15 = batch(1 << 15);
    let (w14, v14) = (&b14[0].0, b14[0].1.to_string_value().into_vec());
    let (w15, v15) = (&b15[0].0, b15[0].1.to_string_value().into_vec());
    ensure(
        dist_two_run_linear(w15, &b15[0].1) == edit_distance_dp(w15, &v15),
        || "kernel and DP disagree at 2^15".into(),
    )?;

    let (lin14, lin15) = time_linear_pair(&b14, &b15);
    let lin_ratio = lin15.as_secs_f64() / lin14.as_secs_f64();
    let dp14 = time_dp(w14, &v14);
    let dp15 = time_dp(w15, &v15);
    let dp_ratio = dp15.as_secs_f64() / dp14.as_secs_f64();

    let summary = format!(
        "linear {lin14:.2?} -> {lin15:.2?} (x{lin_ratio:.2}); DP {dp14:.2?} -> {dp15:.2?} (x{dp_ratio:.2})"
    );
    ensure(lin_ratio < 3.0, || {
        format!("linear kernel ratio too high: {summary}")
    })?;
    ensure(dp_ratio > 3.0 && dp_ratio > lin_ratio, || {
        format!("DP not superlinear: {summary}")
    })?;
    Ok(summary)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        (
            "AC1 two-run kernel equals DP (|w| <= 9, a in {2,3}, l+r <= 9)",
            ac1_two_run_kernel,
        ),
        (
            "AC2 one-run closed form equals DP (|w| <= 10, a <= 4, l <= 12)",
            ac2_one_run_closed_form,
        ),
        (
            "AC3 equal lengths with r(v) <= 2 give ℓ = h (|u| <= 8, a <= 3)",
            ac3_equal_length_hamming,
        ),
        (
            "AC4 geodesic is ℓ for k1 < k2 and h for k1 = k2 > 2",
            ac4_geodesics,
        ),
        ("AC5 connectivity for a <= 3, k2 <= 5", ac5_connectivity),
        (
            "AC6 explicit resolving sets for k1 < k2, a <= 4, k2 <= 5",
            ac6_resolving_construction,
        ),
        (
            "AC7 per-length and permutation resolvers, a in {2,3,4}, k <= 5",
            ac7_lemma_resolvers,
        ),
        (
            "AC8 degree split formula on L_{0,5;2} and L_{0,4;3}",
            ac8_degree_formula,
        ),
        (
            "AC9 automorphism counts and group structure",
            ac9_automorphism_counts,
        ),
        ("AC10 determining numbers", ac10_determining_numbers),
        ("AC11 metric dimension bounds", ac11_dimension_bounds),
        ("AC12 two-run kernel runs in linear time", ac12_linear_time),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("[PASS] {name} :: {detail} ({:.2?})", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name} :: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
