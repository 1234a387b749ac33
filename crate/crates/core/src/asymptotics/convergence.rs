use alloc::vec::Vec;

use num_bigint::BigUint;
// f64 math for no_std builds; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;

use super::{mahler_report, Precision};
use crate::forest::char_poly;
use crate::graph::FoliationSpec;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: u64,
    pub f_n: BigUint,
    /// `f(n)^(1/n)`.
    pub nth_root: f64,
    /// `f(n)^(1/n) / A`.
    pub ratio: f64,
    /// `log f(n) - n log A`.
    pub log_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub a: f64,
    pub rows: Vec<ConvergenceRow>,
    /// `|ratio - 1|` in the last row.
    pub final_deviation: f64,
}

/// Natural logarithm of a positive big integer, accurate to double precision.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let drop = bits - 64;
    let top = (x >> drop).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + drop as f64 * core::f64::consts::LN_2
}

/// `f(n)^(1/n) / A` for every admissible `n` from 3 up to `n_max`.
pub fn convergence_report(spec: &FoliationSpec, n_max: u64) -> Result<ConvergenceReport> {
    if n_max < 3 {
        return Err(Error::InvalidN);
    }
    let start = spec.min_n().max(3);
    if start > n_max {
        return Err(Error::JumpTooLargeForN {
            n: n_max,
            max_jump: spec.max_jump(),
        });
    }
    let bundle = char_poly(spec)?;
    let a = mahler_report(&bundle, Precision::default())?.a_roots.value;
    let log_a = a.ln();
    let mut rows = Vec::new();
    for n in start..=n_max {
        let f_n = bundle.forest_count(n)?.f_n;
        let log_f = ln_biguint(&f_n);
        let nf = n as f64;
        rows.push(ConvergenceRow {
            n,
            nth_root: (log_f / nf).exp(),
            ratio: (log_f / nf - log_a).exp(),
            log_deviation: log_f - nf * log_a,
            f_n,
        });
    }
    let final_deviation = rows.last().map_or(0.0, |r| (r.ratio - 1.0).abs());
    Ok(ConvergenceReport {
        a,
        rows,
        final_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, Family, FamilyDescriptor};
    use alloc::vec;

    fn spec(family: Family) -> FoliationSpec {
        build_family(&FamilyDescriptor::symbolic(family)).unwrap()
    }

    #[test]
    fn big_logarithms() {
        let x = BigUint::from(10u32).pow(400);
        assert!((ln_biguint(&x) - 400.0 * 10f64.ln()).abs() < 1e-10);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn cycle_ratio_approaches_one() {
        let r = convergence_report(&spec(Family::Circulant { jumps: vec![1] }), 50).unwrap();
        assert_eq!(r.rows.first().unwrap().n, 3);
        assert_eq!(r.rows.len(), 48);
        assert!(r.final_deviation < 1e-3, "{}", r.final_deviation);
    }

    #[test]
    fn y_ratio_within_a_percent() {
        let y = spec(Family::Y {
            fibers: [vec![1], vec![1], vec![1]],
        });
        let r = convergence_report(&y, 40).unwrap();
        assert!(r.final_deviation < 1e-2, "{}", r.final_deviation);
        // log f(n) - n log A tends to a constant, so its share of log f shrinks.
        let first = &r.rows[0];
        let last = r.rows.last().unwrap();
        let share = |row: &ConvergenceRow| row.log_deviation.abs() / (row.n as f64 * r.a.ln());
        assert!(share(last) < share(first));
    }

    #[test]
    fn rejects_tiny_range() {
        let c = spec(Family::Circulant { jumps: vec![1] });
        assert_eq!(convergence_report(&c, 2), Err(Error::InvalidN));
        let wide = spec(Family::Circulant { jumps: vec![1, 5] });
        assert!(matches!(
            convergence_report(&wide, 8),
            Err(Error::JumpTooLargeForN { .. })
        ));
    }
}
