use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{det_exact, IntegerMatrix, IntegerPolynomial};
use crate::{Error, Result};

/// The symmetric integer nodes `0, 1, -1, 2, -2, ...`, `count` of them.
pub fn interpolation_nodes(count: usize) -> Vec<BigInt> {
    (0..count)
        .map(|i| {
            let k = BigInt::from(i.div_ceil(2));
            if i % 2 == 1 {
                k
            } else {
                -k
            }
        })
        .collect()
}

/// Determinant of a square matrix of integer polynomials.
///
/// The determinant is sampled at `degree_bound + 1` symmetric integer nodes,
/// each sample an exact integer determinant, and the samples are interpolated
/// over the rationals. One additional node is evaluated to confirm the bound.
pub fn poly_matrix_det(
    mat: &[Vec<IntegerPolynomial>],
    degree_bound: usize,
) -> Result<IntegerPolynomial> {
    let nodes = interpolation_nodes(degree_bound + 2);
    let det = poly_matrix_det_at(mat, &nodes[..degree_bound + 1])?;
    let check = &nodes[degree_bound + 1];
    if det.eval_int(check) != sample_det(mat, check)? {
        return Err(Error::DegreeBoundExceeded {
            bound: degree_bound,
        });
    }
    Ok(det)
}

/// Same as [`poly_matrix_det`] with caller-chosen distinct nodes; the
/// interpolant has degree below `nodes.len()`.
pub fn poly_matrix_det_at(
    mat: &[Vec<IntegerPolynomial>],
    nodes: &[BigInt],
) -> Result<IntegerPolynomial> {
    let values = nodes
        .iter()
        .map(|x| sample_det(mat, x))
        .collect::<Result<Vec<_>>>()?;
    interpolate(nodes, &values)
}

fn sample_det(mat: &[Vec<IntegerPolynomial>], x: &BigInt) -> Result<BigInt> {
    let rows = mat
        .iter()
        .map(|row| row.iter().map(|p| p.eval_int(x)).collect())
        .collect();
    Ok(det_exact(&IntegerMatrix::from_rows(rows)?))
}

/// Newton divided differences, expanded to monomial form.
fn interpolate(nodes: &[BigInt], values: &[BigInt]) -> Result<IntegerPolynomial> {
    let n = nodes.len();
    let xs: Vec<BigRational> = nodes
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let mut dd: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }

    // Horner in Newton form: p = dd[n-1]; p = p * (x - x_i) + dd[i].
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[i])
        coeffs.insert(0, BigRational::zero());
        for k in 0..coeffs.len() - 1 {
            let t = &coeffs[k + 1] * &xs[i];
            coeffs[k] -= t;
        }
        coeffs[0] += &dd[i];
    }

    let mut ints = Vec::with_capacity(n);
    for (degree, c) in coeffs.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient { degree });
        }
        ints.push(c.to_integer());
    }
    Ok(IntegerPolynomial::new(ints))
}
