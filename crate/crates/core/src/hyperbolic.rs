//! Hyperbolic space in the hyperboloid model, ball volumes and the packing
//! estimates built from them.
//!
//! `ℍⁿ` is the sheet `x₀² − x₁² − … − x_n² = 1`, `x₀ > 0`, of Minkowski space;
//! the distance between two points is the arccosh of their Minkowski pairing
//! `x₀y₀ − x₁y₁ − … − x_ny_n`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Result};
use crate::numeric::integrate;

/// Allowed drift of `x₀² − Σxᵢ²` from `1`, relative to `x₀²`.
pub const HYPERBOLOID_TOLERANCE: f64 = 1e-9;
/// Pairings below `1 − PAIRING_FLAG_TOLERANCE` are reported, not just clamped.
pub const PAIRING_FLAG_TOLERANCE: f64 = 1e-6;
/// Relative tolerance of the volume quadrature.
pub const VOLUME_REL_TOL: f64 = 1e-12;

/// A point of a metric space with a cheap monotone stand-in for distance,
/// so threshold tests avoid transcendental calls.
pub trait MetricPoint {
    fn distance(&self, other: &Self) -> f64;
    /// Strictly increasing function of [`MetricPoint::distance`].
    fn proximity(&self, other: &Self) -> f64;
    /// `proximity` value at distance `radius`.
    fn proximity_at(radius: f64) -> f64;
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicPoint {
    coords: Vec<f64>,
}

impl HyperbolicPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(domain("a point of H^n needs at least two coordinates"));
        }
        let x0 = coords[0];
        let norm = x0 * x0 - coords[1..].iter().map(|x| x * x).sum::<f64>();
        if !(x0 > 0.0) || !((norm - 1.0).abs() <= HYPERBOLOID_TOLERANCE * (x0 * x0).max(1.0)) {
            return Err(domain(format!(
                "not on the upper hyperboloid sheet: x0 = {x0}, Minkowski norm = {norm}"
            )));
        }
        Ok(HyperbolicPoint { coords })
    }

    /// `(1, 0, …, 0)` in `ℍⁿ`.
    pub fn origin(n: usize) -> Self {
        let mut coords = alloc::vec![0.0; n + 1];
        coords[0] = 1.0;
        HyperbolicPoint { coords }
    }

    /// The point at distance `t` from the origin along `direction`
    /// (normalized here; must be nonzero).
    pub fn from_polar(direction: &[f64], t: f64) -> Result<Self> {
        let len = libm::sqrt(direction.iter().map(|x| x * x).sum::<f64>());
        if !(len > 0.0) || !t.is_finite() {
            return Err(domain("direction must be nonzero and t finite"));
        }
        let s = libm::sinh(t) / len;
        let mut coords = Vec::with_capacity(direction.len() + 1);
        coords.push(libm::cosh(t));
        coords.extend(direction.iter().map(|x| x * s));
        Ok(HyperbolicPoint { coords })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn minkowski_pairing(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        let spatial: f64 = self.coords[1..]
            .iter()
            .zip(&other.coords[1..])
            .map(|(x, y)| x * y)
            .sum();
        self.coords[0] * other.coords[0] - spatial
    }

    /// Distance plus whether the pairing fell below `1` by more than
    /// [`PAIRING_FLAG_TOLERANCE`] (it is clamped either way).
    ///
    /// Evaluated as `2·asinh(‖p − q‖/2)` with `‖·‖` the Minkowski length of
    /// the chord, which equals `arccosh` of the pairing on the hyperboloid
    /// and keeps full precision for nearby points.
    pub fn distance_checked(&self, other: &Self) -> DistanceReading {
        let flagged = self.minkowski_pairing(other) < 1.0 - PAIRING_FLAG_TOLERANCE;
        let d0 = self.coords[0] - other.coords[0];
        let spatial: f64 = self.coords[1..]
            .iter()
            .zip(&other.coords[1..])
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        let chord_sq = (spatial - d0 * d0).max(0.0);
        DistanceReading {
            value: 2.0 * libm::asinh(0.5 * libm::sqrt(chord_sq)),
            flagged,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReading {
    pub value: f64,
    pub flagged: bool,
}

impl MetricPoint for HyperbolicPoint {
    fn distance(&self, other: &Self) -> f64 {
        self.distance_checked(other).value
    }

    fn proximity(&self, other: &Self) -> f64 {
        self.minkowski_pairing(other)
    }

    fn proximity_at(radius: f64) -> f64 {
        libm::cosh(radius)
    }
}

pub fn hyperbolic_distance(p: &HyperbolicPoint, q: &HyperbolicPoint) -> Result<f64> {
    if p.dimension() != q.dimension() {
        return Err(crate::Error::DegreeMismatch {
            left: p.dimension(),
            right: q.dimension(),
        });
    }
    Ok(p.distance(q))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanPoint {
    coords: Vec<f64>,
}

impl EuclideanPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        EuclideanPoint { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

impl MetricPoint for EuclideanPoint {
    fn distance(&self, other: &Self) -> f64 {
        libm::sqrt(self.proximity(other))
    }

    fn proximity(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| (x - y) * (x - y))
            .sum()
    }

    fn proximity_at(radius: f64) -> f64 {
        radius * radius
    }
}

/// Area of the unit sphere `Sⁿ⁻¹ ⊂ ℝⁿ`.
pub fn unit_sphere_area(n: usize) -> f64 {
    2.0 * libm::pow(PI, n as f64 / 2.0) / libm::tgamma(n as f64 / 2.0)
}

fn check_ball(n: usize, radius: f64) -> Result<()> {
    if n < 2 {
        return Err(domain(format!("dimension must be at least 2, got {n}")));
    }
    if !(radius >= 0.0) || radius.is_infinite() {
        return Err(domain(format!(
            "radius must be finite and nonnegative, got {radius}"
        )));
    }
    Ok(())
}

/// Volume of a radius-`radius` ball in `ℍⁿ`:
/// `Vol(Sⁿ⁻¹)·∫₀^R sinhⁿ⁻¹(t) dt`, by adaptive quadrature.
pub fn ball_volume(n: usize, radius: f64) -> Result<f64> {
    check_ball(n, radius)?;
    let power = (n - 1) as i32;
    let integral = integrate(
        |t| libm::pow(libm::sinh(t), power as f64),
        0.0,
        radius,
        VOLUME_REL_TOL,
        f64::MIN_POSITIVE,
    );
    Ok(unit_sphere_area(n) * integral)
}

// Below this radius the integrand underflows; above (n-1)·R > LARGE_EXPONENT
// it overflows. Both ends use asymptotics whose relative error is far below
// double precision there.
const SMALL_LN_RADIUS: f64 = -230.0;
const LARGE_EXPONENT: f64 = 600.0;

/// `ln` of [`ball_volume`], valid for radii whose volume under- or overflows.
pub fn ln_ball_volume(n: usize, radius: f64) -> Result<f64> {
    check_ball(n, radius)?;
    if radius == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(ln_ball_volume_unchecked(n, libm::log(radius), radius))
}

fn ln_ball_volume_unchecked(n: usize, ln_radius: f64, radius: f64) -> f64 {
    let nf = n as f64;
    if ln_radius < SMALL_LN_RADIUS {
        // ∫ t^{n-1} dt = R^n / n
        libm::log(unit_sphere_area(n)) - libm::log(nf) + nf * ln_radius
    } else if (nf - 1.0) * radius > LARGE_EXPONENT {
        // ∫ sinh^{n-1} ≈ e^{(n-1)R} / ((n-1) 2^{n-1})
        libm::log(unit_sphere_area(n)) + (nf - 1.0) * radius
            - libm::log(nf - 1.0)
            - (nf - 1.0) * core::f64::consts::LN_2
    } else {
        libm::log(ball_volume(n, radius).expect("checked"))
    }
}

/// `ln` of the volume of a ball given `ln` of its radius.
pub fn ln_ball_volume_from_ln_radius(n: usize, ln_radius: f64) -> Result<f64> {
    if ln_radius.is_nan() || ln_radius == f64::INFINITY {
        return Err(domain("ln radius must be a number below +inf"));
    }
    if ln_radius == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let radius = libm::exp(ln_radius);
    check_ball(n, radius)?;
    Ok(ln_ball_volume_unchecked(n, ln_radius, radius))
}

/// Lower bound `e^{−d/c}` on the injectivity radius of a closed hyperbolic
/// 3-manifold of diameter at most `d`.
pub fn injectivity_floor(d: f64, c: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(domain(format!("diameter must be nonnegative, got {d}")));
    }
    if !(c > 0.0) {
        return Err(domain(format!("c must be positive, got {c}")));
    }
    Ok(libm::exp(-d / c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetSizeBound {
    /// Natural log of the bound.
    pub ln: f64,
    /// The injectivity floor `r` the net was built for.
    pub injectivity_radius: f64,
}

impl NetSizeBound {
    /// The bound itself; `inf` once it leaves double range.
    pub fn value(&self) -> f64 {
        libm::exp(self.ln)
    }
}

/// `Vol B(d) / Vol B(r/4)` in `ℍ³` with `r = e^{−d/c}`: how many points
/// pairwise `r/4` apart fit in a 3-manifold of diameter `d`.
pub fn net_size_bound(d: f64, c: f64) -> Result<NetSizeBound> {
    if !(d > 0.0) || d.is_infinite() {
        return Err(domain(format!(
            "diameter must be positive and finite, got {d}"
        )));
    }
    let r = injectivity_floor(d, c)?;
    let ln_quarter = -d / c - libm::log(4.0);
    let ln = ln_ball_volume(3, d)? - ln_ball_volume_from_ln_radius(3, ln_quarter)?;
    Ok(NetSizeBound {
        ln,
        injectivity_radius: r,
    })
}

/// `Vol B(r + r/8) / Vol B(r/8)` in `ℍ³`: disjoint `r/8` balls around the
/// neighbors of a net point fit inside the `r + r/8` ball around it, so this
/// caps the nerve's vertex degree. Tends to `9³ = 729` as `r → 0`.
pub fn degree_bound_constant(r: f64) -> Result<f64> {
    if !(r > 0.0) || r.is_infinite() {
        return Err(domain(format!(
            "radius must be positive and finite, got {r}"
        )));
    }
    let ln_r = libm::log(r);
    let ln_outer = ln_ball_volume_from_ln_radius(3, ln_r + libm::log(9.0 / 8.0))?;
    let ln_inner = ln_ball_volume_from_ln_radius(3, ln_r - libm::log(8.0))?;
    Ok(libm::exp(ln_outer - ln_inner))
}

/// The Euclidean packing ratio `9ⁿ` for the same argument in `ℝⁿ`.
pub fn euclidean_degree_bound(n: usize) -> f64 {
    libm::pow(9.0, n as f64)
}

fn random_direction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        if v.iter().any(|x| *x != 0.0) {
            return v;
        }
    }
}

/// `count` volume-uniform points of the radius-`radius` ball about the
/// origin of `ℍⁿ`: uniform direction, radial density `∝ sinhⁿ⁻¹(t)`.
pub fn sample_hyperbolic_ball<R: Rng + ?Sized>(
    n: usize,
    radius: f64,
    count: usize,
    rng: &mut R,
) -> Result<Vec<HyperbolicPoint>> {
    check_ball(n, radius)?;
    let peak = libm::sinh(radius);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = radius * rng.random::<f64>();
        let accept = libm::pow(libm::sinh(t) / peak, (n - 1) as f64);
        if radius == 0.0 || rng.random::<f64>() < accept {
            out.push(HyperbolicPoint::from_polar(&random_direction(n, rng), t)?);
        }
    }
    Ok(out)
}

/// `count` uniform points of the radius-`radius` ball about the origin of `ℝⁿ`.
pub fn sample_euclidean_ball<R: Rng + ?Sized>(
    n: usize,
    radius: f64,
    count: usize,
    rng: &mut R,
) -> Result<Vec<EuclideanPoint>> {
    if n < 1 || !(radius >= 0.0) {
        return Err(domain("need n >= 1 and a nonnegative radius"));
    }
    Ok((0..count)
        .map(|_| {
            let dir = random_direction(n, rng);
            let len = libm::sqrt(dir.iter().map(|x| x * x).sum::<f64>());
            let t = radius * libm::pow(rng.random::<f64>(), 1.0 / n as f64);
            EuclideanPoint::new(dir.into_iter().map(|x| x / len * t).collect())
        })
        .collect())
}
