//! Exit criteria. Each test writes one `PASS`/`FAIL` line straight to
//! stderr (bypassing output capture) and then asserts.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hypcover_core::bounds::{counting_bounds, tau_bounds, BoundConstants};
use hypcover_core::census::{enumerate_transitive_pairs, hall_subgroup_count};
use hypcover_core::experiments::{diameter_growth_scan, expander_diameter_experiment};
use hypcover_core::family::{
    coset_rep_word, family_members, length_bound, lower_bound_count, sigma1,
    verify_representatives, ConstraintMode, FamilySpec,
};
use hypcover_core::hyperbolic::{
    ball_volume, degree_bound_constant, sample_hyperbolic_ball, HyperbolicPoint,
};
use hypcover_core::nerve::{build_nerve, greedy_net, is_maximal, is_separated};
use hypcover_core::rng::stream_rng;
use hypcover_core::PermutationPair;

fn verdict(id: u32, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "acceptance {id:02} {name}: {status} ({detail})"
    );
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() <= limit
}

#[test]
fn c01_subgroup_census_matches_hall_recurrence() {
    let start = Instant::now();
    let hall = [1u64, 3, 13, 71, 461];
    let mut failures = Vec::new();
    for r in 1..=5usize {
        let row = enumerate_transitive_pairs(r).unwrap();
        let expected = hall[r - 1];
        let fact: u64 = (1..r as u64).product();
        if hall_subgroup_count(r).unwrap().to_string() != expected.to_string() {
            failures.push(format!("recurrence at r={r}"));
        }
        if row.classes != expected {
            failures.push(format!("classes at r={r}: {}", row.classes));
        }
        if row.transitive_pairs != expected * fact {
            failures.push(format!(
                "transitive pairs at r={r}: {}",
                row.transitive_pairs
            ));
        }
    }
    let fast = within(start, Duration::from_secs(60));
    let pass = failures.is_empty() && fast;
    verdict(
        1,
        "subgroup census",
        pass,
        &format!("{:?}, {:.2?}, {failures:?}", hall, start.elapsed()),
    );
    assert!(pass);
}

#[test]
fn c02_family_size_by_exhaustion() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for r in [6usize, 8, 10] {
        let spec = FamilySpec::new(r, ConstraintMode::AllBelowHalf).unwrap();
        let expected: u64 = (1..=(r as u64 / 2 + 1)).product();
        let mut seen = HashSet::new();
        for sigma2 in family_members(&spec, usize::MAX, 0) {
            let pinned_ok = (1..r as u32)
                .filter(|&i| 2 * i < r as u32)
                .all(|i| sigma2.apply(i) == 2 * i);
            if !pinned_ok {
                failures.push(format!("constraint broken at r={r}"));
            }
            seen.insert(sigma2.images().to_vec());
        }
        if seen.len() as u64 != expected {
            failures.push(format!(
                "r={r}: {} members, expected {expected}",
                seen.len()
            ));
        }
    }
    let fast = within(start, Duration::from_secs(10));
    let pass = failures.is_empty() && fast;
    verdict(
        2,
        "family size",
        pass,
        &format!("{:.2?}, {failures:?}", start.elapsed()),
    );
    assert!(pass);
}

#[test]
fn c03_representative_words_for_every_member() {
    let start = Instant::now();
    let mut violations = 0usize;
    let mut words = 0usize;
    for log_r in 3..=16u32 {
        let r = 1usize << log_r;
        for mode in [ConstraintMode::AllBelowHalf, ConstraintMode::EvenOnly] {
            let spec = FamilySpec::new(r, mode).unwrap();
            let reps: Vec<_> = (0..r / 2).map(|i| coset_rep_word(i, r).unwrap()).collect();
            for (i, rep) in reps.iter().enumerate().skip(1) {
                let cap = length_bound(i);
                if rep.even.word.len() as f64 > cap || rep.odd.word.len() as f64 > cap {
                    violations += 1;
                }
            }
            if !verify_representatives(&spec).all_valid() {
                violations += 1;
            }
            let shift = sigma1(r).unwrap();
            let mut samples = 0;
            for sigma2 in family_members(&spec, 100, u64::from(log_r)) {
                samples += 1;
                let pair = PermutationPair::new(shift.clone(), sigma2).unwrap();
                if !pair.is_transitive() {
                    violations += 1;
                    continue;
                }
                for rep in reps.iter().skip(1) {
                    words += 2;
                    if pair.apply_word(&rep.even.word, 0).unwrap() != rep.even.coset
                        || pair.apply_word(&rep.odd.word, 0).unwrap() != rep.odd.coset
                    {
                        violations += 1;
                    }
                }
            }
            if samples != 100 {
                violations += 1;
            }
        }
    }
    let fast = within(start, Duration::from_secs(300));
    let pass = violations == 0 && fast;
    verdict(
        3,
        "representative words",
        pass,
        &format!(
            "{words} word evaluations, {violations} violations, {:.2?}",
            start.elapsed()
        ),
    );
    assert!(pass);
}

#[test]
fn c04_diameter_growth_is_logarithmic() {
    let start = Instant::now();
    let grid: Vec<usize> = (4..=12).map(|e| 1usize << e).collect();
    let scan = diameter_growth_scan(&grid, 10, 2024, ConstraintMode::AllBelowHalf).unwrap();
    let over_cap = scan
        .records
        .iter()
        .filter(|rec| rec.diameter.value as usize > 2 * (rec.max_even_rep_length + 1))
        .count();
    let inexact = scan
        .records
        .iter()
        .filter(|rec| !rec.diameter.exact)
        .count();
    let full = scan.fitted_d();
    let small = scan.fitted_d_where(|r| r <= 1 << 8);
    let stable = full <= 2.0 * small && small <= 2.0 * full;
    let fast = within(start, Duration::from_secs(300));
    let pass = scan.records.len() == 90 && over_cap == 0 && inexact == 0 && stable && fast;
    verdict(
        4,
        "diameter growth",
        pass,
        &format!(
            "D = {full:.4} on 2^4..2^12, {small:.4} on 2^4..2^8, {over_cap} over cap, {:.2?}",
            start.elapsed()
        ),
    );
    assert!(pass);
}

#[test]
fn c05_lower_bound_count_dominates_exponential() {
    let k = 100u64;
    let grid: Vec<usize> = (4..=9).map(|e| 1usize << e).collect();
    let mut excess = Vec::new();
    let mut worst_gap = 0.0f64;
    for &r in &grid {
        let count = lower_bound_count(r, k).unwrap();
        // independent oracle: sum of logs
        let oracle: f64 = (2..=(r / 2 + 1)).map(|j| (j as f64).ln()).sum::<f64>()
            - (r as f64).ln()
            - (k as f64).ln();
        worst_gap = worst_gap
            .max((count.ln - count.ln_from_exact()).abs())
            .max((count.ln - oracle).abs());
        excess.push(count.ln - r as f64);
    }
    let positive = excess.iter().all(|&e| e > 0.0);
    let increasing = excess.windows(2).all(|w| w[1] > w[0]);
    let agree = worst_gap <= 1e-8;
    let pass = positive && increasing && agree;
    let shown: Vec<String> = grid
        .iter()
        .zip(&excess)
        .map(|(r, e)| format!("r={r}: {e:.4}"))
        .collect();
    verdict(
        5,
        "lower-bound dominance",
        pass,
        &format!(
            "positive={positive} increasing={increasing} exact/lgamma gap {worst_gap:.2e}; ln(count) - r: {}",
            shown.join(", ")
        ),
    );
    assert!(agree, "exact and log-gamma disagree by {worst_gap}");
    assert!(increasing, "excess not increasing: {shown:?}");
    assert!(positive, "excess not positive: {shown:?}");
}

#[test]
fn c06_random_cover_diameters() {
    let start = Instant::now();
    let grid: Vec<usize> = (8..=13).map(|e| 1usize << e).collect();
    let rows = expander_diameter_experiment(&grid, 5, 20, 99).unwrap();
    let regular = rows.iter().all(|row| row.all_regular);
    let above_moore = rows
        .iter()
        .all(|row| row.min().is_none_or(|m| m >= row.moore_bound));
    let ratios: Vec<f64> = rows.iter().filter_map(|row| row.median_ratio()).collect();
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let spread = hi / lo;
    let fast = within(start, Duration::from_secs(600));
    let pass = rows.len() == 6
        && ratios.len() == 6
        && rows.iter().all(|row| row.trials == 20)
        && regular
        && above_moore
        && spread < 2.0
        && fast;
    verdict(
        6,
        "random covers",
        pass,
        &format!("median ratio spread {spread:.4}, {:.2?}", start.elapsed()),
    );
    assert!(pass);
}

#[test]
fn c07_ball_volumes_and_degree_constant() {
    let pi = std::f64::consts::PI;
    let mut worst = 0.0f64;
    for radius in [0.1f64, 0.5, 1.0, 2.0, 5.0] {
        let v3 = pi * ((2.0 * radius).sinh() - 2.0 * radius);
        let v2 = 2.0 * pi * (radius.cosh() - 1.0);
        worst = worst.max((ball_volume(3, radius).unwrap() - v3).abs() / v3);
        worst = worst.max((ball_volume(2, radius).unwrap() - v2).abs() / v2);
    }
    let k = degree_bound_constant(1e-3).unwrap();
    let k_err = (k - 729.0).abs() / 729.0;
    let pass = worst <= 1e-9 && k_err <= 1e-3;
    verdict(
        7,
        "ball volumes",
        pass,
        &format!("worst relative error {worst:.2e}, degree constant {k:.6}"),
    );
    assert!(pass);
}

#[test]
fn c08_nerve_of_greedy_net() {
    let start = Instant::now();
    let sep = 0.05;
    let radius = 4.0 * sep;
    let bound = degree_bound_constant(radius).unwrap();
    let mut details = Vec::new();
    let mut pass = true;
    for seed in [1u64, 2, 3] {
        let mut rng = stream_rng(seed, 0);
        let pts = sample_hyperbolic_ball(3, 2.0, 10_000, &mut rng).unwrap();
        let idx = greedy_net(&pts, sep);
        let net: Vec<HyperbolicPoint> = idx.iter().map(|&i| pts[i].clone()).collect();
        let nerve = build_nerve(&net, radius);
        let ok = is_separated(&pts, &idx, sep)
            && is_maximal(&pts, &idx, sep)
            && nerve.max_degree() as f64 <= bound
            && nerve.triangle_count() as u64 <= nerve.triangle_cap();
        pass &= ok;
        details.push(format!(
            "seed {seed}: s={} Δ={} triangles={}",
            net.len(),
            nerve.max_degree(),
            nerve.triangle_count()
        ));
    }
    pass &= within(start, Duration::from_secs(300));
    verdict(
        8,
        "nerve",
        pass,
        &format!(
            "degree bound {bound:.3}; {}; {:.2?}",
            details.join("; "),
            start.elapsed()
        ),
    );
    assert!(pass);
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

#[test]
fn c09_bound_evaluators() {
    let ln2 = std::f64::consts::LN_2;
    let ln10 = std::f64::consts::LN_10;
    let mut worst = 0.0f64;
    let tau = |n: u32, d: f64, a: f64, b: f64| {
        let mut c = BoundConstants::new(n, d);
        c.a = a;
        c.b = b;
        tau_bounds(&c).unwrap()
    };
    let t = tau(4, 1.0, 1.0, 1.0);
    worst = worst.max(rel(t.ln_upper, 20.085_536_923_187_668));
    let t = tau(3, 1.0, 1.0, 1.0);
    worst = worst.max(rel(t.ln_upper, 148.413_159_102_576_6));
    let t = tau(3, 10.0, 1.0, 1.0);
    worst = worst.max(rel(t.lnln_lower, 10.0));
    worst = worst.max(rel(t.ln_upper, 10.0 * 50f64.exp()));
    worst = worst.max(rel(t.ln_upper, 5.184_705_528_587_072e22));
    // d → 0⁺: ln ln(lower) = a·d → 0
    let t = tau(3, 1e-12, 1.0, 1.0);
    worst = worst.max(rel(t.lnln_lower, 1e-12));
    let lower_at_zero_ok = t.lnln_lower.abs() <= 1e-12;

    let c = counting_bounds(1.0, 1.0).unwrap();
    worst = worst
        .max(rel(c.ln_graphs, 0.0))
        .max(rel(c.ln_two_skeleta, ln2));
    let c = counting_bounds(10.0, 2.0).unwrap();
    worst = worst
        .max(rel(c.ln_graphs, 20.0 * ln10))
        .max(rel(c.ln_two_skeleta, 20.0 * ln10 + 40.0 * ln2))
        .max(rel(c.ln_graphs, 46.051_701_859_880_91))
        .max(rel(c.ln_two_skeleta, 73.777_589_082_278_73));
    let pass = worst <= 1e-12 && lower_at_zero_ok;
    verdict(
        9,
        "bound evaluators",
        pass,
        &format!("worst relative error {worst:.2e}"),
    );
    assert!(pass);
}

const REPRO_RUNS: &[&[&str]] = &[
    &["census", "--max-index", "5"],
    &[
        "family",
        "--r",
        "32",
        "--mode",
        "even-only",
        "--verify-reps",
        "--budget",
        "20",
        "--seed",
        "5",
    ],
    &[
        "diameter-scan",
        "--r-grid",
        "16,32,64,128",
        "--samples",
        "5",
        "--seed",
        "11",
    ],
    &[
        "random-graph",
        "--n-grid",
        "256,512",
        "--k",
        "5",
        "--trials",
        "5",
        "--seed",
        "12",
    ],
    &["bounds", "--n", "3", "--d", "10", "--a", "1", "--b", "1"],
    &[
        "nerve", "--points", "2000", "--radius", "0.2", "--seed", "13",
    ],
    &[
        "nerve",
        "--points",
        "2000",
        "--radius",
        "0.02",
        "--seed",
        "13",
        "--euclidean",
        "--ball-radius",
        "0.1",
    ],
];

fn run_into(dir: &Path, args: &[&str]) -> Vec<(String, Vec<u8>)> {
    let status = Command::new(env!("CARGO_BIN_EXE_hypcover"))
        .arg("--quiet")
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .status()
        .unwrap();
    assert!(status.success(), "{args:?} exited with {status}");
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn sidecar_without_duration(dir: &Path, command: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(format!("{command}.json"))).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("duration_ms");
    v
}

#[test]
fn c10_subcommands_are_byte_reproducible() {
    let mut differing = Vec::new();
    for args in REPRO_RUNS {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let first = run_into(a.path(), args);
        let second = run_into(b.path(), args);
        if first.is_empty() || first != second {
            differing.push(args[0]);
        }
        if sidecar_without_duration(a.path(), args[0])
            != sidecar_without_duration(b.path(), args[0])
        {
            differing.push(args[0]);
        }
    }
    let pass = differing.is_empty();
    verdict(
        10,
        "reproducibility",
        pass,
        &format!(
            "{} invocations run twice, differing: {differing:?}",
            REPRO_RUNS.len()
        ),
    );
    assert!(pass);
}
