//! One function per subcommand. Each returns its tables and a JSON summary;
//! nothing here touches the filesystem or the clock, so outputs depend on
//! parameters alone.

use hypcover_core::bounds::{chained_caps, counting_bounds, tau_bounds, BoundConstants};
use hypcover_core::census::{enumerate_transitive_pairs, hall_subgroup_counts, ENUMERATION_CUTOFF};
use hypcover_core::experiments::{diameter_growth_scan, expander_diameter_experiment};
use hypcover_core::family::{
    coset_rep_word, family_members, family_size, family_size_ln, length_bound, sigma1,
    trace_on_family, verify_representatives, ConstraintMode, FamilySpec,
};
use hypcover_core::hyperbolic::{
    degree_bound_constant, euclidean_degree_bound, injectivity_floor, net_size_bound,
    sample_euclidean_ball, sample_hyperbolic_ball, MetricPoint,
};
use hypcover_core::nerve::{build_nerve, greedy_net, is_maximal, is_separated};
use hypcover_core::numeric::factorial;
use hypcover_core::rng::stream_rng;
use hypcover_core::PermutationPair;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{Cell, Table};

/// Exact factorials are printed only below this many decimal digits.
pub const EXACT_DIGIT_LIMIT: f64 = 1e6;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub summary: Value,
    /// Human-readable lines for stdout.
    pub report: Vec<String>,
    /// Set when a checked invariant failed; outputs are still written.
    pub violation: Option<String>,
}

impl Outcome {
    fn new(tables: Vec<Table>, summary: Value) -> Self {
        Outcome {
            tables,
            summary,
            report: Vec::new(),
            violation: None,
        }
    }

    fn violate(&mut self, msg: String) {
        if self.violation.is_none() {
            self.violation = Some(msg);
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub const CENSUS_COLUMNS: &[&str] = &[
    "r",
    "hall_count",
    "classes",
    "transitive_pairs",
    "expected_transitive_pairs",
    "oracle_match",
];

pub fn census(max_index: usize) -> Result<Outcome, CliError> {
    if !(1..=ENUMERATION_CUTOFF).contains(&max_index) {
        return Err(invalid(format!(
            "--max-index must lie in 1..={ENUMERATION_CUTOFF}, got {max_index}"
        )));
    }
    let hall = hall_subgroup_counts(max_index);
    let mut table = Table::new("census", CENSUS_COLUMNS);
    let mut all_match = true;
    for r in 1..=max_index {
        let row = enumerate_transitive_pairs(r)?;
        let expected = &hall[r - 1] * factorial(r as u64 - 1);
        let matches = hall[r - 1] == row.classes.into()
            && expected == row.transitive_pairs.into()
            && row.uniform_class_size;
        all_match &= matches;
        table.push(vec![
            r.into(),
            hall[r - 1].to_string().into(),
            row.classes.into(),
            row.transitive_pairs.into(),
            expected.to_string().into(),
            matches.into(),
        ]);
    }
    let mut out = Outcome::new(vec![table], json!({ "all_match": all_match }));
    out.report.push(format!(
        "census r = 1..{max_index}: {}",
        if all_match {
            "all rows match the Hall recurrence"
        } else {
            "MISMATCH"
        }
    ));
    if !all_match {
        out.violate("brute-force classes disagree with the Hall recurrence".into());
    }
    Ok(out)
}

pub const FAMILY_COLUMNS: &[&str] = &["coset", "i", "word", "length", "length_bound", "valid"];

pub const FAMILY_MEMBER_COLUMNS: &[&str] = &["index", "sigma2"];

pub struct FamilyParams {
    pub r: usize,
    pub mode: ConstraintMode,
    pub verify_reps: bool,
    pub budget: Option<usize>,
    pub seed: Option<u64>,
}

pub fn family(p: &FamilyParams) -> Result<Outcome, CliError> {
    let spec = FamilySpec::new(p.r, p.mode)?;
    let r = p.r;
    let ln_size = family_size_ln(&spec);
    let exact_size = (ln_size / std::f64::consts::LN_10 < EXACT_DIGIT_LIMIT)
        .then(|| family_size(&spec).to_string());

    let mut reps = Table::new("family", FAMILY_COLUMNS);
    for i in 0..r.div_ceil(2) {
        let pair = coset_rep_word(i, r)?;
        let bound = (i >= 1).then(|| length_bound(i));
        for rep in [&pair.even, &pair.odd] {
            let lands = trace_on_family(&spec, &rep.word).is_ok_and(|t| t.landing == rep.coset);
            let short = bound.is_none_or(|b| rep.word.len() as f64 <= b);
            reps.push(vec![
                rep.coset.into(),
                i.into(),
                rep.word.to_string().into(),
                rep.word.len().into(),
                bound.into(),
                (lands && short).into(),
            ]);
        }
    }
    let report = verify_representatives(&spec);

    let mut tables = vec![reps];
    let mut members_summary = Value::Null;
    let mut member_failures = 0usize;
    if let Some(budget) = p.budget {
        if budget == 0 {
            return Err(invalid("--budget must be positive"));
        }
        // the log test keeps huge families away from exact factorials
        let exhaustive =
            ln_size <= (budget as f64).ln() + 1.0 && family_size(&spec) <= budget.into();
        let seed = match (exhaustive, p.seed) {
            (true, s) => s.unwrap_or(0),
            (false, Some(s)) => s,
            (false, None) => {
                return Err(invalid(
                    "--seed is required when --budget is below the family size",
                ))
            }
        };
        let mut members = Table::new("family-members", FAMILY_MEMBER_COLUMNS);
        let shift = sigma1(r)?;
        for (index, sigma2) in family_members(&spec, budget, seed).enumerate() {
            let mut ok = spec.contains(&sigma2);
            if p.verify_reps {
                let pair = PermutationPair::new(shift.clone(), sigma2.clone())?;
                ok &= pair.is_transitive();
                for i in 0..r.div_ceil(2) {
                    let rep = coset_rep_word(i, r)?;
                    ok &= pair.apply_word(&rep.even.word, 0)? == rep.even.coset
                        && pair.apply_word(&rep.odd.word, 0)? == rep.odd.coset;
                }
            }
            if !ok {
                member_failures += 1;
            }
            members.push(vec![index.into(), sigma2.to_string().into()]);
        }
        members_summary = json!({
            "count": members.rows.len(),
            "exhaustive": exhaustive,
            "failures": member_failures,
        });
        tables.push(members);
    }

    let summary = json!({
        "r": r,
        "mode": mode_name(p.mode),
        "family_size": exact_size,
        "family_size_ln": ln_size,
        "words_checked": report.words_checked,
        "failures": report.failures,
        "length_violations": report.length_violations,
        "max_even_length": report.max_even_length,
        "max_length": report.max_length,
        "members": members_summary,
    });
    let mut out = Outcome::new(tables, summary);
    match &exact_size {
        Some(s) => out
            .report
            .push(format!("family size = {s} (ln = {ln_size:.12})")),
        None => out.report.push(format!("family size: ln = {ln_size:.12}")),
    }
    if p.verify_reps {
        let top = r.div_ceil(2) - 1;
        if report.all_valid() {
            out.report.push(format!(
                "all representatives valid, max length ≤ 3(1+log₂ {top})"
            ));
            out.report.push(format!(
                "longest representative: {} letters ({} for even cosets)",
                report.max_length, report.max_even_length
            ));
        } else {
            out.violate(format!(
                "representatives failed for cosets {:?}, length violations at i = {:?}",
                report.failures, report.length_violations
            ));
        }
        if member_failures > 0 {
            out.violate(format!(
                "{member_failures} sampled members failed a constraint or representative"
            ));
        }
    }
    Ok(out)
}

pub fn mode_name(mode: ConstraintMode) -> &'static str {
    match mode {
        ConstraintMode::AllBelowHalf => "all-below-half",
        ConstraintMode::EvenOnly => "even-only",
    }
}

pub const SCAN_COLUMNS: &[&str] = &[
    "r",
    "sample",
    "diameter",
    "exact",
    "max_rep_length",
    "diameter_cap",
    "ratio",
];

pub fn diameter_scan(
    r_grid: &[usize],
    samples: usize,
    seed: u64,
    mode: ConstraintMode,
) -> Result<Outcome, CliError> {
    if r_grid.is_empty() {
        return Err(invalid("--r-grid must not be empty"));
    }
    if samples == 0 {
        return Err(invalid("--samples must be positive"));
    }
    let scan = diameter_growth_scan(r_grid, samples, seed, mode)?;
    let mut table = Table::new("diameter-scan", SCAN_COLUMNS);
    let mut over_cap = Vec::new();
    for rec in &scan.records {
        let cap = 2 * (rec.max_even_rep_length + 1);
        if rec.diameter.value as usize > cap {
            over_cap.push((rec.degree, rec.sample));
        }
        table.push(vec![
            rec.degree.into(),
            rec.sample.into(),
            rec.diameter.value.into(),
            rec.diameter.exact.into(),
            rec.max_even_rep_length.into(),
            cap.into(),
            rec.ratio().into(),
        ]);
    }
    let fitted = scan.fitted_d();
    let mut out = Outcome::new(
        vec![table],
        json!({
            "mode": mode_name(mode),
            "fitted_d": fitted,
            "records": scan.records.len(),
            "over_cap": over_cap.len(),
            "all_exact": scan.records.iter().all(|r| r.diameter.exact),
        }),
    );
    out.report
        .push(format!("fitted D = max diameter/log₂ r = {fitted:.6}"));
    if !over_cap.is_empty() {
        out.violate(format!(
            "diameter above 2(max rep length + 1) at (r, sample) {over_cap:?}"
        ));
    }
    Ok(out)
}

pub const RANDOM_GRAPH_COLUMNS: &[&str] = &[
    "n",
    "k",
    "trials",
    "connected",
    "connected_fraction",
    "diameter_min",
    "diameter_median",
    "diameter_max",
    "moore_bound",
    "median_ratio",
    "exact",
    "regular",
];

pub fn random_graph(
    n_grid: &[usize],
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    if n_grid.is_empty() {
        return Err(invalid("--n-grid must not be empty"));
    }
    let rows = expander_diameter_experiment(n_grid, k, trials, seed)?;
    let mut table = Table::new("random-graph", RANDOM_GRAPH_COLUMNS);
    let mut problems = Vec::new();
    for row in &rows {
        if !row.all_regular {
            problems.push(format!(
                "n = {}: a vertex degree differs from {}",
                row.n,
                2 * k
            ));
        }
        if row.min().is_some_and(|m| m < row.moore_bound) {
            problems.push(format!("n = {}: diameter below the Moore bound", row.n));
        }
        table.push(vec![
            row.n.into(),
            row.k.into(),
            row.trials.into(),
            row.connected().into(),
            row.connected_fraction().into(),
            row.min().into(),
            row.median().into(),
            row.max().into(),
            row.moore_bound.into(),
            row.median_ratio().into(),
            row.all_exact.into(),
            row.all_regular.into(),
        ]);
    }
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.median_ratio()).collect();
    let spread = if ratios.is_empty() {
        None
    } else {
        let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
        Some(hi / lo)
    };
    let mut out = Outcome::new(
        vec![table],
        json!({ "k": k, "trials": trials, "median_ratio_spread": spread }),
    );
    if let Some(s) = spread {
        out.report
            .push(format!("median diameter/log₂ n varies by a factor {s:.4}"));
    }
    if !problems.is_empty() {
        out.violate(problems.join("; "));
    }
    Ok(out)
}

pub const BOUNDS_COLUMNS: &[&str] = &["quantity", "value"];

pub struct BoundsParams {
    pub consts: BoundConstants,
    /// Names of constants left at their conventional defaults.
    pub defaulted: Vec<&'static str>,
}

pub fn bounds(p: &BoundsParams) -> Result<Outcome, CliError> {
    let c = &p.consts;
    let tau = tau_bounds(c)?;
    let caps = chained_caps(c)?;
    let eps = injectivity_floor(c.d, c.c)?;
    let net = net_size_bound(c.d, c.c)?;
    let degree = degree_bound_constant(eps)?;
    let counts = counting_bounds(net.value().max(1.0), c.k)?;

    let quantities: Vec<(&str, f64)> = vec![
        ("lnln_lower", tau.lnln_lower),
        ("ln_upper", tau.ln_upper),
        ("lnln_upper", tau.lnln_upper()),
        ("injectivity_floor", eps),
        ("ln_net_size", net.ln),
        ("degree_bound_at_floor", degree),
        ("ln_graph_count", counts.ln_graphs),
        ("ln_two_skeleton_count", counts.ln_two_skeleta),
        ("ln_volume_cap", caps.ln_volume),
        ("ln_net_cap", caps.ln_net),
        ("lnln_graph_cap", caps.lnln_graphs),
        ("lnln_two_skeleton_cap", caps.lnln_two_skeleta),
    ];
    let mut table = Table::new("bounds", BOUNDS_COLUMNS);
    let mut summary = serde_json::Map::new();
    for (name, value) in &quantities {
        table.push(vec![(*name).into(), Cell::Real(*value)]);
        summary.insert((*name).into(), finite_or_string(*value));
    }
    summary.insert("defaulted_constants".into(), json!(p.defaulted));
    let mut out = Outcome::new(vec![table], Value::Object(summary));
    out.report.push(format!(
        "ln ln(lower) = {}, ln(upper) = {}",
        crate::output::format_real(tau.lnln_lower),
        crate::output::format_real(tau.ln_upper)
    ));
    if !(tau.lnln_upper() >= tau.lnln_lower) && c.a <= c.n as f64 - 1.0 && c.b * c.d >= 1.0 {
        out.violate("upper bound below lower bound".into());
    }
    Ok(out)
}

/// JSON has no infinities; those become strings matching the CSV spelling.
fn finite_or_string(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(crate::output::format_real(x))
    }
}

pub const NERVE_COLUMNS: &[&str] = &[
    "geometry",
    "dimension",
    "points",
    "ball_radius",
    "radius",
    "separation",
    "net_size",
    "edges",
    "triangles",
    "max_degree",
    "degree_bound",
    "triangle_cap",
    "separated",
    "maximal",
];

pub struct NerveParams {
    pub points: usize,
    pub radius: f64,
    pub seed: u64,
    pub euclidean: bool,
    pub ball_radius: f64,
    pub dimension: usize,
}

pub fn nerve(p: &NerveParams) -> Result<Outcome, CliError> {
    if p.points == 0 {
        return Err(invalid("--points must be positive"));
    }
    if !(p.radius > 0.0 && p.radius.is_finite()) {
        return Err(invalid(format!(
            "--radius must be positive, got {}",
            p.radius
        )));
    }
    if !(p.ball_radius > 0.0 && p.ball_radius.is_finite()) {
        return Err(invalid(format!(
            "--ball-radius must be positive, got {}",
            p.ball_radius
        )));
    }
    if !p.euclidean && p.dimension != 3 {
        return Err(invalid("the hyperbolic packing bound is for dimension 3"));
    }
    let mut rng = stream_rng(p.seed, 0);
    let (geometry, row) = if p.euclidean {
        let pts = sample_euclidean_ball(p.dimension, p.ball_radius, p.points, &mut rng)?;
        (
            "euclidean",
            measure(&pts, p, euclidean_degree_bound(p.dimension)),
        )
    } else {
        let pts = sample_hyperbolic_ball(p.dimension, p.ball_radius, p.points, &mut rng)?;
        (
            "hyperbolic",
            measure(&pts, p, degree_bound_constant(p.radius)?),
        )
    };
    let mut table = Table::new("nerve", NERVE_COLUMNS);
    table.push(vec![
        geometry.into(),
        p.dimension.into(),
        p.points.into(),
        p.ball_radius.into(),
        p.radius.into(),
        row.separation.into(),
        row.net_size.into(),
        row.edges.into(),
        row.triangles.into(),
        row.max_degree.into(),
        row.degree_bound.into(),
        row.triangle_cap.into(),
        row.separated.into(),
        row.maximal.into(),
    ]);
    let mut out = Outcome::new(
        vec![table],
        json!({
            "geometry": geometry,
            "net_size": row.net_size,
            "max_degree": row.max_degree,
            "degree_bound": row.degree_bound,
            "triangles": row.triangles,
            "triangle_cap": row.triangle_cap,
            "separated": row.separated,
            "maximal": row.maximal,
        }),
    );
    out.report.push(format!(
        "net of {} points, max degree {} (bound {:.3}), {} triangles (cap {})",
        row.net_size, row.max_degree, row.degree_bound, row.triangles, row.triangle_cap
    ));
    let mut failed = Vec::new();
    if !row.separated {
        failed.push("net not separated");
    }
    if !row.maximal {
        failed.push("net not maximal");
    }
    if row.max_degree as f64 > row.degree_bound {
        failed.push("degree above packing bound");
    }
    if row.triangles as u64 > row.triangle_cap {
        failed.push("triangles above s·Δ²");
    }
    if !failed.is_empty() {
        out.violate(failed.join(", "));
    }
    Ok(out)
}

struct NerveRow {
    separation: f64,
    net_size: usize,
    edges: usize,
    triangles: usize,
    max_degree: usize,
    degree_bound: f64,
    triangle_cap: u64,
    separated: bool,
    maximal: bool,
}

/// Net at separation `radius/4`, nerve at `radius`.
fn measure<P: MetricPoint + Clone>(pts: &[P], p: &NerveParams, degree_bound: f64) -> NerveRow {
    let separation = p.radius / 4.0;
    let idx = greedy_net(pts, separation);
    let net: Vec<P> = idx.iter().map(|&i| pts[i].clone()).collect();
    let nerve = build_nerve(&net, p.radius);
    NerveRow {
        separation,
        net_size: net.len(),
        edges: nerve.edges.len(),
        triangles: nerve.triangle_count(),
        max_degree: nerve.max_degree(),
        degree_bound,
        triangle_cap: nerve.triangle_cap(),
        separated: is_separated(pts, &idx, separation),
        maximal: is_maximal(pts, &idx, separation),
    }
}
