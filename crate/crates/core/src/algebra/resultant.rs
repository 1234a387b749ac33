use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::{det_exact, IntegerMatrix, IntegerPolynomial};
use crate::{Error, Result};

/// Sylvester matrix of `f` (degree `p`) and `g` (degree `q`): `q` shifted rows
/// of `f`'s coefficients followed by `p` shifted rows of `g`'s, highest degree
/// first.
pub fn sylvester_matrix(f: &IntegerPolynomial, g: &IntegerPolynomial) -> Result<IntegerMatrix> {
    let (Some(p), Some(q)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let size = p + q;
    let mut m = IntegerMatrix::zeros(size);
    for row in 0..q {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            m.set(row, row + j, c.clone());
        }
    }
    for row in 0..p {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            m.set(q + row, row + j, c.clone());
        }
    }
    Ok(m)
}

/// `Res(f, g) = lc(f)^deg(g) * prod_{f(a) = 0} g(a)`, exactly, as the
/// determinant of the Sylvester matrix.
pub fn resultant(f: &IntegerPolynomial, g: &IntegerPolynomial) -> Result<BigInt> {
    let (Some(p), Some(q)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    match (p, q) {
        (0, 0) => Ok(BigInt::one()),
        (0, _) => Ok(Pow::pow(f.coeff(0), q)),
        (_, 0) => Ok(Pow::pow(g.coeff(0), p)),
        _ => Ok(det_exact(&sylvester_matrix(f, g)?)),
    }
}
