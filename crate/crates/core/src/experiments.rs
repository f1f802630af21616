//! Seeded diameter experiments over the doubling family and over random
//! covers of a bouquet of circles.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::family::{family_members, sigma1, verify_representatives, ConstraintMode, FamilySpec};
use crate::graph::{
    build_schreier, graph_diameter, moore_bound, random_regular_graph_with, Diameter,
};
use crate::pair::PermutationPair;
use crate::rng::stream_rng;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub degree: usize,
    pub sample: usize,
    pub diameter: Diameter,
    /// Longest representative word for an even coset.
    pub max_even_rep_length: usize,
    /// Longest representative word overall (odd cosets add one letter).
    pub max_rep_length: usize,
}

impl ScanRecord {
    /// `diameter / log₂ r`.
    pub fn ratio(&self) -> f64 {
        self.diameter.value as f64 / libm::log2(self.degree as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterScan {
    pub records: Vec<ScanRecord>,
}

impl DiameterScan {
    /// Empirical `D`: the largest `diameter / log₂ r` in the table.
    pub fn fitted_d(&self) -> f64 {
        self.fitted_d_where(|_| true)
    }

    /// Empirical `D` restricted to degrees accepted by `keep`.
    pub fn fitted_d_where(&self, keep: impl Fn(usize) -> bool) -> f64 {
        self.records
            .iter()
            .filter(|rec| keep(rec.degree))
            .map(ScanRecord::ratio)
            .fold(0.0, f64::max)
    }
}

/// For each degree, samples family members (stream `(seed, r)`), builds their
/// Schreier graphs and records the diameters.
pub fn diameter_growth_scan(
    r_grid: &[usize],
    samples_per_r: usize,
    seed: u64,
    mode: ConstraintMode,
) -> Result<DiameterScan> {
    let mut records = Vec::new();
    for &r in r_grid {
        let spec = FamilySpec::new(r, mode)?;
        let reps = verify_representatives(&spec);
        let shift = sigma1(r)?;
        for (sample, sigma2) in family_members(&spec, samples_per_r, seed).enumerate() {
            let pair = PermutationPair::new(shift.clone(), sigma2)?;
            let diameter = graph_diameter(&build_schreier(&pair)?)?;
            records.push(ScanRecord {
                degree: r,
                sample,
                diameter,
                max_even_rep_length: reps.max_even_length,
                max_rep_length: reps.max_length,
            });
        }
    }
    Ok(DiameterScan { records })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    /// `None` for a disconnected sample.
    pub diameter: Option<Diameter>,
    /// Every vertex had exactly `2k` edge endpoints.
    pub regular: bool,
}

/// One random `2k`-regular graph on `n` vertices, from stream
/// `(seed, n·2³² + trial)`.
pub fn expander_trial(n: usize, k: usize, seed: u64, trial: u64) -> Result<TrialOutcome> {
    let mut rng = stream_rng(seed, ((n as u64) << 32) | (trial & 0xffff_ffff));
    let g = random_regular_graph_with(n, k, &mut rng)?;
    let regular = g.endpoint_degrees().iter().all(|&d| d == 2 * k);
    let diameter = if g.is_connected() {
        Some(graph_diameter(&g)?)
    } else {
        None
    };
    Ok(TrialOutcome { diameter, regular })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpanderRow {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    /// Diameters of the connected samples, ascending.
    pub diameters: Vec<u32>,
    pub all_exact: bool,
    pub all_regular: bool,
    pub moore_bound: u32,
}

impl ExpanderRow {
    pub fn from_outcomes(n: usize, k: usize, outcomes: &[TrialOutcome]) -> Self {
        let mut diameters: Vec<u32> = outcomes
            .iter()
            .filter_map(|o| o.diameter.map(|d| d.value))
            .collect();
        diameters.sort_unstable();
        ExpanderRow {
            n,
            k,
            trials: outcomes.len(),
            all_exact: outcomes.iter().all(|o| o.diameter.is_none_or(|d| d.exact)),
            all_regular: outcomes.iter().all(|o| o.regular),
            moore_bound: moore_bound(n, 2 * k),
            diameters,
        }
    }

    pub fn connected(&self) -> usize {
        self.diameters.len()
    }

    pub fn connected_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.connected() as f64 / self.trials as f64
        }
    }

    pub fn min(&self) -> Option<u32> {
        self.diameters.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.diameters.last().copied()
    }

    pub fn median(&self) -> Option<f64> {
        let m = self.diameters.len();
        match m {
            0 => None,
            _ if m % 2 == 1 => Some(self.diameters[m / 2] as f64),
            _ => Some((self.diameters[m / 2 - 1] + self.diameters[m / 2]) as f64 / 2.0),
        }
    }

    /// Median diameter over `log₂ n`.
    pub fn median_ratio(&self) -> Option<f64> {
        self.median().map(|m| m / libm::log2(self.n as f64))
    }
}

/// Random-cover diameters over a grid of sizes. Disconnected samples are
/// counted in `trials` but excluded from `diameters`. `trials = 0` yields an
/// empty table.
pub fn expander_diameter_experiment(
    n_grid: &[usize],
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<ExpanderRow>> {
    if k < 5 {
        return Err(domain(format!("k must be at least 5, got {k}")));
    }
    if let Some(&bad) = n_grid.iter().find(|&&n| n < 2) {
        return Err(domain(format!("graph sizes must be at least 2, got {bad}")));
    }
    if trials == 0 {
        return Ok(Vec::new());
    }
    n_grid
        .iter()
        .map(|&n| {
            let outcomes = (0..trials as u64)
                .map(|t| expander_trial(n, k, seed, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(ExpanderRow::from_outcomes(n, k, &outcomes))
        })
        .collect()
}
