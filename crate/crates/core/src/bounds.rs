//! Log-space evaluation of the counting bounds.
//!
//! Every quantity here overflows a double long before it is interesting, so
//! bounds are returned as natural logs (or logs of logs).

use alloc::format;

use crate::error::{domain, Result};

/// Free constants of the counting argument. Only their composition is
/// checked; none of them is known explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    /// Dimension.
    pub n: u32,
    /// Diameter bound.
    pub d: f64,
    /// Lower-bound rate: `τ_n(d) > e^{e^{ad}}`.
    pub a: f64,
    /// Upper-bound rate: `τ_n(d) < e^{b d e^{(n−1)d}}` (`e^{5d}` for `n = 3`).
    pub b: f64,
    /// Thin-part constant: injectivity radius `≥ e^{−d/c}`.
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    /// Nerve degree bound.
    pub k: f64,
}

impl BoundConstants {
    /// Defaults: `a = b = 1`, `c = 3`, `k = 729`, `c₁ … c₄ = 1`.
    pub fn new(n: u32, d: f64) -> Self {
        BoundConstants {
            n,
            d,
            a: 1.0,
            b: 1.0,
            c: 3.0,
            c1: 1.0,
            c2: 1.0,
            c3: 1.0,
            c4: 1.0,
            k: 729.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("d", self.d),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("c1", self.c1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("c4", self.c4),
            ("k", self.k),
        ];
        for (name, v) in named {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.n < 2 {
            return Err(domain(format!(
                "dimension must be at least 2, got {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Exponent of `d` growth in the upper bound: `n − 1`, or `5` in
    /// dimension 3 where the thin part forces the cruder net estimate.
    pub fn upper_growth_rate(&self) -> f64 {
        if self.n == 3 {
            5.0
        } else {
            self.n as f64 - 1.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauBounds {
    /// `ln ln` of the lower bound: `a·d`.
    pub lnln_lower: f64,
    /// `ln` of the upper bound: `b·d·e^{(n−1)d}` or `b·d·e^{5d}`.
    pub ln_upper: f64,
}

impl TauBounds {
    pub fn lnln_upper(&self) -> f64 {
        libm::log(self.ln_upper)
    }
}

/// Bounds on the number of closed hyperbolic `n`-manifolds of diameter
/// `≤ d`, for `n ≥ 3`.
pub fn tau_bounds(consts: &BoundConstants) -> Result<TauBounds> {
    consts.validate()?;
    if consts.n < 3 {
        return Err(domain(format!(
            "the diameter count covers dimension 3 and up, got {}",
            consts.n
        )));
    }
    let d = consts.d;
    Ok(TauBounds {
        lnln_lower: consts.a * d,
        ln_upper: consts.b * d * libm::exp(consts.upper_growth_rate() * d),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingBounds {
    /// `ln(s^{k s}) = k·s·ln s`: degree-`≤ k` graphs on `s` vertices.
    pub ln_graphs: f64,
    /// `ln(s^{k s}·2^{s k²})`: their 2-skeleta.
    pub ln_two_skeleta: f64,
}

/// Counts of nerve 1- and 2-skeleta on a net of size `s` with degree `≤ k`.
/// `s` is real so that net-size bounds beyond integer range can be fed in.
pub fn counting_bounds(s: f64, k: f64) -> Result<CountingBounds> {
    if !(s >= 1.0) || !(k >= 1.0) {
        return Err(domain(format!(
            "need s >= 1 and k >= 1, got s = {s}, k = {k}"
        )));
    }
    let ln_graphs = k * s * libm::log(s);
    Ok(CountingBounds {
        ln_graphs,
        ln_two_skeleta: ln_graphs + s * k * k * core::f64::consts::LN_2,
    })
}

/// Logs of the explicit-constant caps chained through the upper-bound
/// argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainedCaps {
    /// `ln(c₁e^{(n−1)d})`: volume of the diameter-`d` ball, the argument of
    /// the volume count `ρ_n`.
    pub ln_volume: f64,
    /// `ln(c₂e^{5d})`: net size in dimension 3.
    pub ln_net: f64,
    /// `ln ln(e^{c₃de^{5d}})`: graphs on the net.
    pub lnln_graphs: f64,
    /// `ln ln(e^{c₄de^{5d}})`: 2-skeleta on the net.
    pub lnln_two_skeleta: f64,
}

pub fn chained_caps(consts: &BoundConstants) -> Result<ChainedCaps> {
    consts.validate()?;
    let d = consts.d;
    let ln_d = libm::log(d);
    Ok(ChainedCaps {
        ln_volume: libm::log(consts.c1) + (consts.n as f64 - 1.0) * d,
        ln_net: libm::log(consts.c2) + 5.0 * d,
        lnln_graphs: libm::log(consts.c3) + ln_d + 5.0 * d,
        lnln_two_skeleta: libm::log(consts.c4) + ln_d + 5.0 * d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, LN_10, LN_2};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn tau_examples() {
        let mut c = BoundConstants::new(4, 1.0);
        assert!(rel(tau_bounds(&c).unwrap().ln_upper, E * E * E) < 1e-12);
        c.n = 3;
        assert!(rel(tau_bounds(&c).unwrap().ln_upper, libm::exp(5.0)) < 1e-12);
        c.d = 1e-300;
        assert!(tau_bounds(&c).unwrap().lnln_lower < 1e-299);
        c.n = 2;
        c.d = 1.0;
        assert!(tau_bounds(&c).is_err());
        let mut c = BoundConstants::new(3, 10.0);
        c.a = 1.0;
        let t = tau_bounds(&c).unwrap();
        assert_eq!(t.lnln_lower, 10.0);
        assert!(rel(t.ln_upper, 10.0 * libm::exp(50.0)) < 1e-12);
    }

    #[test]
    fn counting_examples() {
        let b = counting_bounds(1.0, 1.0).unwrap();
        assert_eq!(b.ln_graphs, 0.0);
        assert!(rel(b.ln_two_skeleta, LN_2) < 1e-12);
        let b = counting_bounds(10.0, 2.0).unwrap();
        assert!(rel(b.ln_graphs, 20.0 * LN_10) < 1e-12);
        assert!(rel(b.ln_two_skeleta, 20.0 * LN_10 + 40.0 * LN_2) < 1e-12);
        assert!((b.ln_graphs - 46.0517).abs() < 1e-4);
        assert!((b.ln_two_skeleta - 73.7776).abs() < 1e-4);
        assert!(counting_bounds(0.5, 1.0).is_err());
    }

    #[test]
    fn rejects_bad_constants() {
        let mut c = BoundConstants::new(3, 1.0);
        c.b = 0.0;
        assert!(tau_bounds(&c).is_err());
        c.b = 1.0;
        c.d = f64::NAN;
        assert!(chained_caps(&c).is_err());
    }

    #[test]
    fn chained_caps_values() {
        let c = BoundConstants::new(3, 2.0);
        let caps = chained_caps(&c).unwrap();
        assert_eq!(caps.ln_volume, 4.0);
        assert_eq!(caps.ln_net, 10.0);
        assert!(rel(caps.lnln_graphs, libm::log(2.0) + 10.0) < 1e-15);
    }
}
