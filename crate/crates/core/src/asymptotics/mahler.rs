use alloc::format;

// f64 math for no_std builds; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;

use super::{branch_outside, q_roots, Precision, RootSet};
use crate::forest::CharPolyBundle;
use crate::{Error, Result};

/// Roots whose `|z|` lies this close to 1 are treated as lying on the circle.
const UNIT_CIRCLE_EXCLUSION: f64 = 1e-6;
const INITIAL_NODES: usize = 8;
const MAX_NODES: usize = 1 << 22;

/// A floating value with an estimate of its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// The growth constant by both methods.
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerReport {
    pub a_roots: Estimate,
    pub a_quadrature: Estimate,
    /// `|a_roots - a_quadrature|`.
    pub discrepancy: f64,
    /// Empty when `Q` is constant.
    pub roots_used: RootSet,
}

impl MahlerReport {
    pub fn combined_error(&self) -> f64 {
        self.a_roots.error + self.a_quadrature.error
    }
}

fn eta_f64(bundle: &CharPolyBundle) -> Result<f64> {
    bundle
        .eta
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::PrecisionInsufficient {
            detail: format!("eta = {} exceeds double range", bundle.eta),
        })
}

fn roots_or_empty(bundle: &CharPolyBundle, precision: Precision) -> Result<RootSet> {
    if bundle.shift == 0 {
        return Ok(RootSet::empty());
    }
    q_roots(bundle, precision)
}

fn product_over_roots(bundle: &CharPolyBundle, roots: &RootSet) -> Result<Estimate> {
    let mut value = eta_f64(bundle)?;
    let mut rel = 8.0 * (bundle.shift as f64 + 1.0) * f64::EPSILON;
    for (w, dw) in roots.iter() {
        let z = branch_outside(w);
        let modulus = z.norm();
        if (modulus - 1.0).abs() < UNIT_CIRCLE_EXCLUSION {
            return Err(Error::UnitCircleRoot { re: z.re, im: z.im });
        }
        value *= modulus;
        let slope = (w * w - 1.0).sqrt().norm();
        rel += dw / slope;
    }
    if !value.is_finite() {
        return Err(Error::PrecisionInsufficient {
            detail: "growth constant exceeds double range".into(),
        });
    }
    Ok(Estimate {
        value,
        error: value * rel,
    })
}

/// `A = eta * prod |z_j|` over the roots `w_j` of `Q`, with
/// `z_j = w_j + sqrt(w_j^2 - 1)` on the branch `|z_j| > 1`.
pub fn mahler_via_roots(bundle: &CharPolyBundle, precision: Precision) -> Result<Estimate> {
    let roots = roots_or_empty(bundle, precision)?;
    product_over_roots(bundle, &roots)
}

/// `A = exp(integral_0^1 log|Q(cos 2 pi t)| dt)` by the trapezoid rule, which
/// converges geometrically on this smooth periodic integrand. The node count
/// doubles until two successive estimates of the integral agree.
pub fn mahler_via_quadrature(bundle: &CharPolyBundle, precision: Precision) -> Result<Estimate> {
    let coeffs = bundle.q.to_f64_coeffs();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::PrecisionInsufficient {
            detail: "Q has coefficients beyond double range".into(),
        });
    }
    let integrand = |t: f64| -> Result<f64> {
        let x = (2.0 * core::f64::consts::PI * t).cos();
        let value = coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c).abs();
        if value == 0.0 {
            return Err(Error::UnitCircleRoot { re: x, im: 0.0 });
        }
        Ok(value.ln())
    };

    let tol = precision.tolerance();
    let min_nodes = (4 * (bundle.shift + 1)).max(INITIAL_NODES);
    let mut nodes = INITIAL_NODES;
    let mut sum = 0.0;
    for j in 0..nodes {
        sum += integrand(j as f64 / nodes as f64)?;
    }
    let mut estimate = sum / nodes as f64;
    let mut settled = 0;
    while nodes < MAX_NODES {
        let mut fresh = 0.0;
        for j in 0..nodes {
            fresh += integrand((2 * j + 1) as f64 / (2 * nodes) as f64)?;
        }
        sum += fresh;
        nodes *= 2;
        let next = sum / nodes as f64;
        let change = (next - estimate).abs();
        estimate = next;
        let noise = 16.0 * f64::EPSILON * (1.0 + next.abs());
        if change < (tol / 2.0).max(noise) && nodes >= min_nodes {
            settled += 1;
            if settled == 2 {
                let value = estimate.exp();
                let error = value * (change + noise);
                return Ok(Estimate { value, error });
            }
        } else {
            settled = 0;
        }
    }
    Err(Error::QuadratureNonconvergence { nodes })
}

/// Both estimates of `A` and their agreement.
pub fn mahler_report(bundle: &CharPolyBundle, precision: Precision) -> Result<MahlerReport> {
    let roots = roots_or_empty(bundle, precision)?;
    let a_roots = product_over_roots(bundle, &roots)?;
    let a_quadrature = mahler_via_quadrature(bundle, precision)?;
    Ok(MahlerReport {
        discrepancy: (a_roots.value - a_quadrature.value).abs(),
        a_roots,
        a_quadrature,
        roots_used: roots,
    })
}
