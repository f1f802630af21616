//! Exact counts, their logarithms, and adaptive quadrature.

use alloc::vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `ln(n!)` through the log-gamma function.
pub fn ln_factorial(n: u64) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// Natural log of an arbitrarily large positive integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("at most 64 bits remain");
    libm::log(top as f64) + shift as f64 * core::f64::consts::LN_2
}

/// Natural log of a positive rational; `None` when it is not positive.
pub fn ln_rational(x: &BigRational) -> Option<f64> {
    if !x.is_positive() {
        return None;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    Some(ln_biguint(num) - ln_biguint(den))
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1]; index 7 is the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, libm::fabs((kronrod - gauss) * half))
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Intervals are bisected until the summed error estimate is below
/// `max(rel_tol·|I|, abs_tol)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    const MAX_INTERVALS: usize = 4096;
    let (whole, err) = gk15(&f, a, b);
    // (value, error, lo, hi), largest error bisected first
    let mut intervals = vec![(whole, err, a, b)];
    loop {
        let total: f64 = intervals.iter().map(|iv| iv.0).sum();
        let total_err: f64 = intervals.iter().map(|iv| iv.1).sum();
        if total_err <= (rel_tol * libm::fabs(total)).max(abs_tol)
            || intervals.len() >= MAX_INTERVALS
        {
            return total;
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
            .map(|(i, _)| i)
            .expect("non-empty");
        let (_, _, lo, hi) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (l, le) = gk15(&f, lo, mid);
        let (r, re) = gk15(&f, mid, hi);
        intervals.push((l, le, lo, mid));
        intervals.push((r, re, mid, hi));
    }
}
