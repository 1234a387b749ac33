//! Growth constant `A` of `f(n) ~ A^n`: the Mahler measure of `P(z)`,
//! computed from the roots of `Q` and, independently, as
//! `exp(integral_0^1 log|Q(cos 2 pi t)| dt)`.

mod convergence;
mod mahler;
mod roots;

pub use convergence::{convergence_report, ConvergenceReport, ConvergenceRow};
pub use mahler::{mahler_report, mahler_via_quadrature, mahler_via_roots, Estimate, MahlerReport};
pub use roots::{polynomial_roots, q_roots, RootSet};

use core::fmt;

use num_complex::Complex64;

use crate::{Error, Result};

/// Requested accuracy in decimal digits, backed by double precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 14;
    /// Most digits double precision can honestly deliver.
    pub const MAX_DIGITS: u32 = 15;

    pub fn new(digits: u32) -> Result<Self> {
        if digits == 0 || digits > Self::MAX_DIGITS {
            return Err(Error::PrecisionInsufficient {
                detail: alloc::format!(
                    "{digits} digits requested, between 1 and {} supported",
                    Self::MAX_DIGITS
                ),
            });
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// `10^-digits`.
    pub fn tolerance(self) -> f64 {
        num_traits::Float::powi(10.0f64, -(self.0 as i32))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

/// The solution `z` of `(z + 1/z)/2 = w` with `|z| >= 1`.
pub fn branch_outside(w: Complex64) -> Complex64 {
    let root = (w * w - 1.0).sqrt();
    let a = w + root;
    let b = w - root;
    if a.norm() >= b.norm() {
        a
    } else {
        b
    }
}
