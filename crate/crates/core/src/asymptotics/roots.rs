use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// f64 math for no_std builds; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::Precision;
use crate::algebra::IntegerPolynomial;
use crate::forest::CharPolyBundle;
use crate::{Error, Result};

const MAX_ITERATIONS: usize = 1000;

/// Roots of `Q` listed with multiplicity, each with a radius that certifies a
/// true root within that distance.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    roots: Vec<Complex64>,
    errors: Vec<f64>,
}

impl RootSet {
    pub(crate) fn empty() -> Self {
        RootSet {
            roots: Vec::new(),
            errors: Vec::new(),
        }
    }

    /// Sorted by real part, then imaginary part.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn errors(&self) -> &[f64] {
        &self.errors
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.roots.iter().copied().zip(self.errors.iter().copied())
    }
}

/// All roots of `Q(w)` for a bundle.
pub fn q_roots(bundle: &CharPolyBundle, precision: Precision) -> Result<RootSet> {
    polynomial_roots(&bundle.q, precision)
}

/// Roots of an integer polynomial.
///
/// The polynomial is first split exactly into square-free factors, so every
/// factor has simple roots and the simultaneous iteration converges at full
/// speed even where the polynomial itself has repeated roots.
pub fn polynomial_roots(p: &IntegerPolynomial, precision: Precision) -> Result<RootSet> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut pairs: Vec<(Complex64, f64)> = Vec::new();
    for (factor, multiplicity) in p.squarefree_decomposition() {
        let coeffs = factor.to_f64_coeffs();
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::PrecisionInsufficient {
                detail: "polynomial coefficients exceed double range".into(),
            });
        }
        for (root, err) in simple_roots(&coeffs, precision.tolerance())? {
            for _ in 0..multiplicity {
                pairs.push((root, err));
            }
        }
    }
    pairs.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then_with(|| a.0.im.total_cmp(&b.0.im))
    });
    let (roots, errors) = pairs.into_iter().unzip();
    Ok(RootSet { roots, errors })
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Bound on the rounding error of Horner evaluation at `z`: twice the
/// classical `gamma_2d * sum |a_i| |z|^i`.
fn horner_error(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let abs_sum = coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs());
    let gamma = 2.0 * coeffs.len().max(2) as f64 * f64::EPSILON;
    gamma * abs_sum
}

/// Aberth-Ehrlich iteration on a polynomial with simple roots; returns each
/// root with its certified radius.
fn simple_roots(coeffs: &[f64], tol: f64) -> Result<Vec<(Complex64, f64)>> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    if degree == 1 {
        let root = Complex64::new(-coeffs[0] / lead, 0.0);
        let err = certify(coeffs, root);
        return Ok(alloc::vec![(root, err)]);
    }

    // Initial points on a circle around the centroid, radius from the
    // Fujiwara-type bound on the root moduli.
    let centroid = -coeffs[degree - 1] / (degree as f64 * lead);
    let radius = (0..degree)
        .map(|i| (coeffs[i] / lead).abs().powf(1.0 / (degree - i) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / degree as f64 + 0.4;
            Complex64::new(centroid, 0.0) + Complex64::from_polar(radius, angle)
        })
        .collect();

    let floor = 4.0 * f64::EPSILON;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut largest = 0.0f64;
        for k in 0..degree {
            let (p, dp) = horner(coeffs, z[k]);
            // Residual at rounding level: this root cannot improve further.
            if p.norm() <= horner_error(coeffs, z[k]) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::ConvergenceFailure { iterations });
            }
            z[k] -= step;
            largest = largest.max(step.norm() / z[k].norm().max(1.0));
        }
        if largest <= tol.max(floor) {
            converged = true;
            break;
        }
    }

    // Two Newton polishing passes, then certify.
    for _ in 0..2 {
        for zk in z.iter_mut() {
            let (p, dp) = horner(coeffs, *zk);
            if !dp.is_zero() {
                let step = p / dp;
                if step.norm() < 1e-6 * zk.norm().max(1.0) {
                    *zk -= step;
                }
            }
        }
    }

    let mut out = Vec::with_capacity(degree);
    for zk in z {
        let err = certify(coeffs, zk);
        let scale = zk.norm().max(1.0);
        if !err.is_finite() || (!converged && err > 1e3 * tol * scale) {
            return Err(Error::ConvergenceFailure { iterations });
        }
        // Real coefficients: a root whose inclusion disk meets the real axis
        // is real, since the factor is square-free.
        let root = if zk.im.abs() <= err {
            Complex64::new(zk.re, 0.0)
        } else {
            zk
        };
        out.push((root, err));
    }
    pair_conjugates(&mut out);
    Ok(out)
}

/// Makes non-real roots exact conjugate pairs, as real coefficients demand,
/// so that ordering does not depend on rounding in the real parts.
fn pair_conjugates(roots: &mut [(Complex64, f64)]) {
    let mut used = alloc::vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] || roots[i].0.im <= 0.0 {
            continue;
        }
        let target = roots[i].0.conj();
        let partner = (0..roots.len())
            .filter(|&j| !used[j] && j != i && roots[j].0.im < 0.0)
            .min_by(|&a, &b| {
                (roots[a].0 - target)
                    .norm()
                    .total_cmp(&(roots[b].0 - target).norm())
            });
        if let Some(j) = partner {
            let re = 0.5 * (roots[i].0.re + roots[j].0.re);
            let im = 0.5 * (roots[i].0.im - roots[j].0.im);
            let shift = (roots[i].0 - Complex64::new(re, im)).norm();
            let err = roots[i].1.max(roots[j].1) + shift;
            roots[i] = (Complex64::new(re, im), err);
            roots[j] = (Complex64::new(re, -im), err);
            used[i] = true;
            used[j] = true;
        }
    }
}

/// Radius `d |p(z)| / |p'(z)|` of a disk around `z` that contains a root,
/// with `|p(z)|` inflated by its rounding error.
fn certify(coeffs: &[f64], z: Complex64) -> f64 {
    let degree = (coeffs.len() - 1) as f64;
    let (p, dp) = horner(coeffs, z);
    let residual = p.norm() + horner_error(coeffs, z);
    let slope = dp.norm() - horner_error(&derivative(coeffs), z);
    if slope <= 0.0 {
        return f64::INFINITY;
    }
    degree * residual / slope
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::new(c.to_vec())
    }

    fn close(a: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (a - Complex64::new(re, im)).norm() <= tol
    }

    #[test]
    fn linear_root() {
        let r = polynomial_roots(&poly(&[3, -2]), Precision::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert!(close(r.roots()[0], 1.5, 0.0, 1e-15));
    }

    #[test]
    fn y_graph_roots_with_double_root() {
        let r = polynomial_roots(&poly(&[208, -336, 180, -32]), Precision::default()).unwrap();
        let expected = [1.625, 2.0, 2.0];
        for (root, want) in r.roots().iter().zip(expected) {
            assert!(close(*root, want, 0.0, 1e-13), "{root} vs {want}");
        }
        assert!(r.errors().iter().all(|&e| e < 1e-12));
    }

    #[test]
    fn h_graph_roots() {
        let q = &(&(&poly(&[-2, 1]).pow(2) * &poly(&[-5, 3])) * &poly(&[-9, 5])).scale(&16.into());
        let r = polynomial_roots(q, Precision::default()).unwrap();
        let expected = [5.0 / 3.0, 9.0 / 5.0, 2.0, 2.0];
        for (root, want) in r.roots().iter().zip(expected) {
            assert!(close(*root, want, 0.0, 1e-13), "{root} vs {want}");
        }
    }

    #[test]
    fn complex_roots_are_sorted_and_certified() {
        // (w^2 + 1)(w - 3)
        let r = polynomial_roots(&poly(&[-3, 1, -3, 1]), Precision::default()).unwrap();
        assert!(close(r.roots()[0], 0.0, -1.0, 1e-13));
        assert!(close(r.roots()[1], 0.0, 1.0, 1e-13));
        assert!(close(r.roots()[2], 3.0, 0.0, 1e-13));
        for (w, err) in r.iter() {
            assert!(err < 1e-12, "{w}: {err}");
        }
    }

    #[test]
    fn wilkinson_like_polynomial() {
        let mut p = IntegerPolynomial::one();
        for k in 1..=10 {
            p = &p * &poly(&[-k, 1]);
        }
        let r = polynomial_roots(&p, Precision::default()).unwrap();
        for (k, (w, err)) in r.iter().enumerate() {
            let want = (k + 1) as f64;
            assert!(
                (w.re - want).abs() <= err.max(1e-9),
                "{w} vs {want} ({err})"
            );
            assert!(w.im == 0.0);
        }
    }

    #[test]
    fn constant_has_no_roots() {
        assert_eq!(
            polynomial_roots(&poly(&[5]), Precision::default()),
            Err(Error::ConstantPolynomial)
        );
    }
}
