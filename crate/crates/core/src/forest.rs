//! Characteristic polynomials of a foliation and exact forest counts.
//!
//! For a spec with base `H` on `m` vertices, the generalized Laplacian
//! `L(H, W)` with diagonal
//! `w_i = 2 k_i + d_i + 1 - sum_j 2 T_{s_ij}(w)` has determinant `Q(w)`, an
//! integer polynomial of degree `s = sum_i max_j s_ij`. Substituting
//! `w = (z + 1/z) / 2` gives the Laurent polynomial `P(z)`, and
//! `F(z) = z^s P(z)` is an ordinary palindromic polynomial of degree `2s`.
//! The number of rooted spanning forests of `H_n` is
//! `f(n) = |Res(z^n - 1, F(z))|`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
// f64 math for no_std builds; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Pow, ToPrimitive};

use crate::algebra::{chebyshev_t, det_exact, poly_matrix_det, resultant, IntegerPolynomial};
use crate::asymptotics::{branch_outside, q_roots, Precision};
use crate::graph::{expand, laplacian, FoliationSpec};
use crate::{Error, Result};

/// `Q(w)` and `F(z)` of a foliation with the data needed to interpret them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyBundle {
    /// `Q(w) = det L(H, W)`.
    pub q: IntegerPolynomial,
    /// `F(z) = z^s P(z)`, palindromic of degree `2s`.
    pub f_z: IntegerPolynomial,
    /// `s`, the degree of `q`.
    pub shift: usize,
    pub eta: BigUint,
    /// Number of base vertices with an empty fiber.
    pub m_prime: usize,
    /// Number of base vertices.
    pub m: usize,
    pub max_jump: u32,
}

/// How a forest count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMethod {
    Resultant,
    Oracle,
    ChebyshevFloat,
}

impl CountMethod {
    pub fn tag(self) -> &'static str {
        match self {
            CountMethod::Resultant => "resultant",
            CountMethod::Oracle => "oracle",
            CountMethod::ChebyshevFloat => "chebyshev-float",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCountReport {
    pub n: u64,
    pub f_n: BigUint,
    /// `f(H)`, the forest count of the base graph.
    pub f_base: BigUint,
    pub method: CountMethod,
    /// Set when `n <= 2 * max_jump`: the value is the algebraic formula
    /// evaluated outside the range where `H_n` is defined.
    pub formal: bool,
}

/// Floating evaluation of `eta^n prod_p |2 T_n(w_p) - 2|` with an error bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevEstimate {
    pub n: u64,
    pub value: f64,
    pub error_bound: f64,
    /// The single integer inside `[value - error_bound, value + error_bound]`.
    pub rounded: BigUint,
}

/// Diagonal entries `2 k_i + d_i + 1 - sum_j 2 T_{s_ij}(w)` of `L(H, W)`.
fn chebyshev_diagonal(spec: &FoliationSpec, i: usize) -> IntegerPolynomial {
    let jumps = spec.fibers()[i].effective_jumps();
    let k = jumps.len() as i64;
    let mut entry = IntegerPolynomial::constant(2 * k + i64::from(spec.degree(i)) + 1);
    for s in jumps {
        entry = &entry - &chebyshev_t(s as usize).scale(&BigInt::from(2));
    }
    entry
}

/// `Q(w)` by an exact polynomial-matrix determinant in `w`.
pub fn q_polynomial(spec: &FoliationSpec) -> Result<IntegerPolynomial> {
    let m = spec.vertex_count();
    let base = spec.base();
    let rows: Vec<Vec<IntegerPolynomial>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        chebyshev_diagonal(spec, i)
                    } else {
                        IntegerPolynomial::constant(-i64::from(base.multiplicity(i, j)))
                    }
                })
                .collect()
        })
        .collect();
    poly_matrix_det(&rows, spec.shift())
}

/// `F(z) = z^s P(z)` by a second determinant, taken directly in `z`.
///
/// Row `i` of `L(H, X)` is multiplied by `z^{sigma_i}` with `sigma_i` the
/// largest jump of fiber `i`, which clears every negative power.
pub fn f_polynomial(spec: &FoliationSpec) -> Result<IntegerPolynomial> {
    let m = spec.vertex_count();
    let base = spec.base();
    let rows: Vec<Vec<IntegerPolynomial>> = (0..m)
        .map(|i| {
            let fiber = &spec.fibers()[i];
            let sigma = fiber.max_jump() as usize;
            let jumps = fiber.effective_jumps();
            (0..m)
                .map(|j| {
                    if i != j {
                        return IntegerPolynomial::monomial(
                            -i64::from(base.multiplicity(i, j)),
                            sigma,
                        );
                    }
                    let k = jumps.len() as i64;
                    let mut entry =
                        IntegerPolynomial::monomial(2 * k + i64::from(spec.degree(i)) + 1, sigma);
                    for &s in &jumps {
                        let s = s as usize;
                        entry = &entry - &IntegerPolynomial::monomial(1, sigma + s);
                        entry = &entry - &IntegerPolynomial::monomial(1, sigma - s);
                    }
                    entry
                })
                .collect()
        })
        .collect();
    poly_matrix_det(&rows, 2 * spec.shift())
}

/// `eta`: determinant of the generalized Laplacian of the subgraph induced by
/// the empty-fiber vertices, with diagonal `d_j + 1` taken from the full base.
/// It is 1 when no fiber is empty.
pub fn eta(spec: &FoliationSpec) -> BigUint {
    let empty = spec.empty_fiber_vertices();
    let diag: Vec<BigInt> = empty
        .iter()
        .map(|&j| BigInt::from(spec.degree(j) + 1))
        .collect();
    let det = det_exact(&spec.base().generalized_laplacian(&empty, &diag));
    det.magnitude().clone()
}

/// `f(H) = det(I + L(H))`.
pub fn base_forest_count(spec: &FoliationSpec) -> BigUint {
    det_exact(&spec.base().forest_matrix()).magnitude().clone()
}

/// `Q(-1)` as `det L(H, W)` with `w_i = d_i + 4 t_i + 1`, `t_i` the number of
/// odd jumps of fiber `i`.
pub fn q_at_minus_one(spec: &FoliationSpec) -> BigUint {
    let all: Vec<usize> = (0..spec.vertex_count()).collect();
    let diag: Vec<BigInt> = all
        .iter()
        .map(|&i| BigInt::from(spec.degree(i) + 4 * spec.fibers()[i].odd_count() + 1))
        .collect();
    det_exact(&spec.base().generalized_laplacian(&all, &diag))
        .magnitude()
        .clone()
}

/// Sample points for the `F(z) = z^s Q((z + 1/z)/2)` consistency check.
const IDENTITY_SAMPLES: [(i64, i64); 5] = [(2, 1), (-3, 1), (1, 2), (5, 3), (-7, 4)];

fn invariant(ok: bool, detail: impl FnOnce() -> alloc::string::String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation { detail: detail() })
    }
}

/// Checks `F(z) = z^s Q((z + 1/z)/2)` exactly at a rational `z != 0`.
pub fn transform_identity_holds(bundle: &CharPolyBundle, z: &BigRational) -> bool {
    let two = BigRational::from_integer(BigInt::from(2));
    let w = (z + z.recip()) / two;
    let rhs = Pow::pow(z.clone(), bundle.shift) * bundle.q.eval_rational(&w);
    bundle.f_z.eval_rational(z) == rhs
}

/// Builds `Q`, `F` and `eta`, and cross-checks them against each other.
pub fn char_poly(spec: &FoliationSpec) -> Result<CharPolyBundle> {
    let q = q_polynomial(spec)?;
    let f_z = f_polynomial(spec)?;
    let shift = spec.shift();
    let m = spec.vertex_count();
    let m_prime = spec.empty_fiber_vertices().len();
    let bundle = CharPolyBundle {
        q,
        f_z,
        shift,
        eta: eta(spec),
        m_prime,
        m,
        max_jump: spec.max_jump(),
    };

    invariant(bundle.q.degree() == Some(shift), || {
        format!("deg Q = {:?}, expected {shift}", bundle.q.degree())
    })?;
    invariant(
        bundle.q.leading() == Some(&bundle.expected_leading()),
        || {
            format!(
                "leading coefficient of Q is {:?}, expected {}",
                bundle.q.leading(),
                bundle.expected_leading()
            )
        },
    )?;
    invariant(
        bundle.f_z.degree() == Some(2 * shift) && bundle.f_z.is_palindromic(),
        || {
            format!(
                "F(z) = {} is not palindromic of degree {}",
                bundle.f_z,
                2 * shift
            )
        },
    )?;
    let f_base = base_forest_count(spec);
    invariant(bundle.q_at_one() == BigInt::from(f_base.clone()), || {
        format!("Q(1) = {} but f(H) = {f_base}", bundle.q_at_one())
    })?;
    let qm1 = q_at_minus_one(spec);
    invariant(bundle.q_at_minus_one() == BigInt::from(qm1.clone()), || {
        format!(
            "Q(-1) = {} but det L(H, d + 4t + 1) = {qm1}",
            bundle.q_at_minus_one()
        )
    })?;
    for (a, b) in IDENTITY_SAMPLES {
        let z = BigRational::new(BigInt::from(a), BigInt::from(b));
        invariant(transform_identity_holds(&bundle, &z), || {
            format!("F(z) != z^s Q((z + 1/z)/2) at z = {z}")
        })?;
    }
    Ok(bundle)
}

impl CharPolyBundle {
    /// `(-1)^{m - m'} 2^s eta`, the leading coefficient `Q` must have.
    pub fn expected_leading(&self) -> BigInt {
        let mag = BigInt::from(self.eta.clone()) << self.shift;
        if (self.m - self.m_prime) % 2 == 1 {
            -mag
        } else {
            mag
        }
    }

    pub fn q_at_one(&self) -> BigInt {
        self.q.eval_int(&BigInt::one())
    }

    pub fn q_at_minus_one(&self) -> BigInt {
        self.q.eval_int(&BigInt::from(-1))
    }

    /// `f(H) = Q(1)`.
    pub fn f_base(&self) -> BigUint {
        self.q_at_one().magnitude().clone()
    }

    pub fn admits(&self, n: u64) -> bool {
        n >= 1 && n > 2 * u64::from(self.max_jump)
    }

    /// `f(n) = |Res(z^n - 1, F(z))|`, for any `n >= 1`.
    pub fn forest_count(&self, n: u64) -> Result<ForestCountReport> {
        if n == 0 {
            return Err(Error::InvalidN);
        }
        let unity = &IntegerPolynomial::monomial(1, n as usize) - &IntegerPolynomial::one();
        let res = resultant(&unity, &self.f_z)?;
        Ok(ForestCountReport {
            n,
            f_n: res.magnitude().clone(),
            f_base: self.f_base(),
            method: CountMethod::Resultant,
            formal: !self.admits(n),
        })
    }

    /// Evaluates `eta^n prod_p |2 T_n(w_p) - 2|` in floating point over the
    /// roots of `Q` and rounds it, failing when the error bound does not
    /// isolate a single integer.
    pub fn forest_count_chebyshev(
        &self,
        n: u64,
        precision: Precision,
    ) -> Result<ChebyshevEstimate> {
        if n == 0 {
            return Err(Error::InvalidN);
        }
        let too_big = || Error::PrecisionInsufficient {
            detail: format!("f({n}) exceeds double range"),
        };
        let exponent = i32::try_from(n).map_err(|_| too_big())?;
        let eps = f64::EPSILON;
        let nf = n as f64;
        // Relative error of an n-th power by repeated squaring.
        let pow_ops = 2.0 * (64 - n.leading_zeros()) as f64 + 2.0;
        let eta_n = Pow::pow(&self.eta, n);
        let mut value = eta_n
            .to_f64()
            .filter(|v| v.is_finite())
            .ok_or_else(too_big)?;
        let mut rel = eps;
        if self.shift > 0 {
            let roots = q_roots(self, precision)?;
            for (w, dw) in roots.iter() {
                let z = branch_outside(w);
                let zn = z.powi(exponent);
                let zn_inv = zn.inv();
                let factor = zn + zn_inv - 2.0;
                let mag = factor.norm();
                if mag == 0.0 || !mag.is_finite() {
                    return Err(Error::PrecisionInsufficient {
                        detail: format!("factor 2T_{n}(w) - 2 at w = {w} is not representable"),
                    });
                }
                value *= mag;
                // Rounding in z^n + z^-n - 2, amplified by cancellation.
                rel += (pow_ops + 3.0) * eps * (zn.norm() + zn_inv.norm() + 2.0) / mag;
                // Uncertainty in the root: d/dw (2 T_n(w)) = 2 n U_{n-1}(w).
                let denom = z - z.inv();
                let u = if denom.norm() < 1e-8 {
                    nf * nf
                } else {
                    ((zn - zn_inv) / denom).norm()
                };
                rel += 2.0 * nf * u * dw / mag;
                rel += eps;
            }
        }
        if !value.is_finite() {
            return Err(too_big());
        }
        let error_bound = rel * value;
        let lo = (value - error_bound).ceil();
        let hi = (value + error_bound).floor();
        if lo != hi {
            return Err(Error::PrecisionInsufficient {
                detail: format!(
                    "interval [{}, {}] does not isolate one integer",
                    value - error_bound,
                    value + error_bound
                ),
            });
        }
        let rounded = BigUint::from_f64_exact(lo).ok_or_else(|| Error::PrecisionInsufficient {
            detail: format!("rounded value {lo} is not a positive integer"),
        })?;
        Ok(ChebyshevEstimate {
            n,
            value,
            error_bound,
            rounded,
        })
    }
}

trait FromF64Exact: Sized {
    fn from_f64_exact(x: f64) -> Option<Self>;
}

impl FromF64Exact for BigUint {
    fn from_f64_exact(x: f64) -> Option<Self> {
        if x.is_nan() || x < 1.0 || x.fract() != 0.0 {
            return None;
        }
        num_traits::FromPrimitive::from_f64(x)
    }
}

/// `f(n)` by the resultant route. `n` may be any positive integer; values with
/// `n <= 2 * max_jump` are flagged `formal`.
pub fn forest_count(spec: &FoliationSpec, n: u64) -> Result<ForestCountReport> {
    char_poly(spec)?.forest_count(n)
}

/// `f(n) = det(I + L(H_n))` on the explicitly expanded graph.
pub fn forest_count_oracle(spec: &FoliationSpec, n: u64) -> Result<ForestCountReport> {
    let g = expand(spec, n)?;
    let det = laplacian(&g).add_scalar_identity(&BigInt::one()).det();
    debug_assert_eq!(det.sign(), Sign::Plus);
    Ok(ForestCountReport {
        n,
        f_n: det.magnitude().clone(),
        f_base: base_forest_count(spec),
        method: CountMethod::Oracle,
        formal: false,
    })
}

/// Floating cross-check of [`forest_count`] through the roots of `Q`.
pub fn forest_count_chebyshev(
    spec: &FoliationSpec,
    n: u64,
    precision: Precision,
) -> Result<ChebyshevEstimate> {
    char_poly(spec)?.forest_count_chebyshev(n, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_foliation, BaseGraph, FiberSpec};
    use alloc::vec;

    fn fiber(j: &[u32]) -> FiberSpec {
        FiberSpec::new(j.to_vec()).unwrap()
    }

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::new(c.to_vec())
    }

    fn cycle_spec() -> FoliationSpec {
        make_foliation(BaseGraph::single_vertex(), vec![fiber(&[1])]).unwrap()
    }

    fn gp_spec(k: u32) -> FoliationSpec {
        make_foliation(BaseGraph::path(2).unwrap(), vec![fiber(&[k]), fiber(&[1])]).unwrap()
    }

    fn y_spec() -> FoliationSpec {
        let star = BaseGraph::from_edges(4, &[(0, 3, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        make_foliation(
            star,
            vec![fiber(&[1]), fiber(&[1]), fiber(&[1]), FiberSpec::empty()],
        )
        .unwrap()
    }

    fn h_spec() -> FoliationSpec {
        let base =
            BaseGraph::from_edges(6, &[(0, 4, 1), (2, 4, 1), (1, 5, 1), (3, 5, 1), (4, 5, 1)])
                .unwrap();
        let mut fibers = vec![fiber(&[1]); 4];
        fibers.extend([FiberSpec::empty(), FiberSpec::empty()]);
        make_foliation(base, fibers).unwrap()
    }

    #[test]
    fn cycle_polynomials() {
        let b = char_poly(&cycle_spec()).unwrap();
        assert_eq!(b.q, poly(&[3, -2]));
        assert_eq!(b.f_z, poly(&[-1, 3, -1]));
        assert_eq!((b.shift, b.eta.clone(), b.m_prime), (1, BigUint::one(), 0));
    }

    #[test]
    fn petersen_q_matches_product_form() {
        // (4 - 2 T_2)(4 - 2 T_1) - 1
        let t2 = chebyshev_t(2).scale(&BigInt::from(2));
        let t1 = chebyshev_t(1).scale(&BigInt::from(2));
        let four = IntegerPolynomial::constant(4);
        let expected = &(&(&four - &t2) * &(&four - &t1)) - &IntegerPolynomial::one();
        assert_eq!(expected, poly(&[23, -12, -16, 8]));
        let b = char_poly(&gp_spec(2)).unwrap();
        assert_eq!(b.q, expected);
        assert_eq!(b.shift, 3);
        assert_eq!(b.eta, BigUint::one());
    }

    #[test]
    fn y_and_h_polynomials() {
        let y = char_poly(&y_spec()).unwrap();
        assert_eq!(y.q, poly(&[208, -336, 180, -32]));
        assert_eq!(y.eta, BigUint::from(4u32));
        assert_eq!(y.f_base(), BigUint::from(20u32));

        let h = char_poly(&h_spec()).unwrap();
        let expected = (&(&poly(&[-2, 1]).pow(2) * &poly(&[-5, 3])) * &poly(&[-9, 5]))
            .scale(&BigInt::from(16));
        assert_eq!(h.q, expected);
        assert_eq!(h.eta, BigUint::from(15u32));
        assert_eq!(h.f_base(), BigUint::from(128u32));
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(&gp_spec(3)), BigUint::one());
        assert_eq!(eta(&y_spec()), BigUint::from(4u32));
        assert_eq!(eta(&h_spec()), BigUint::from(15u32));
    }

    #[test]
    fn base_counts() {
        let path =
            make_foliation(BaseGraph::path(2).unwrap(), vec![FiberSpec::empty(); 2]).unwrap();
        assert_eq!(base_forest_count(&path), BigUint::from(3u32));
        assert_eq!(base_forest_count(&y_spec()), BigUint::from(20u32));
        assert_eq!(base_forest_count(&h_spec()), BigUint::from(128u32));
    }

    #[test]
    fn q_at_minus_one_values() {
        assert_eq!(q_at_minus_one(&y_spec()), BigUint::from(756u32));
        assert_eq!(q_at_minus_one(&gp_spec(2)), BigUint::from(11u32));
        assert_eq!(q_at_minus_one(&cycle_spec()), BigUint::from(5u32));
    }

    #[test]
    fn known_counts() {
        let c = char_poly(&cycle_spec()).unwrap();
        assert_eq!(c.forest_count(3).unwrap().f_n, BigUint::from(16u32));
        assert_eq!(c.forest_count(4).unwrap().f_n, BigUint::from(45u32));
        let p = forest_count(&gp_spec(2), 5).unwrap();
        assert_eq!(p.f_n, BigUint::from(314_928u32));
        assert_eq!(p.f_base, BigUint::from(3u32));
        assert!(!p.formal);
        assert_eq!(forest_count_oracle(&gp_spec(2), 5).unwrap().f_n, p.f_n);
    }

    #[test]
    fn small_n_is_formal_but_evaluable() {
        let y = char_poly(&y_spec()).unwrap();
        let r = y.forest_count(2).unwrap();
        assert!(r.formal);
        // 4^2 (2 T_2(13/8) - 2)(2 T_2(2) - 2)^2 = 16 * 105/16 * 144
        assert_eq!(r.f_n, BigUint::from(15_120u32));
        assert!(matches!(
            forest_count_oracle(&y_spec(), 2),
            Err(Error::JumpTooLargeForN { .. })
        ));
        assert_eq!(y.forest_count(0), Err(Error::InvalidN));
    }

    #[test]
    fn empty_fibers_give_powers_of_base_count() {
        let spec =
            make_foliation(BaseGraph::complete(4).unwrap(), vec![FiberSpec::empty(); 4]).unwrap();
        let b = char_poly(&spec).unwrap();
        assert_eq!(b.q, poly(&[125]));
        for n in 1..5u32 {
            let expected = BigUint::from(125u32).pow(n);
            assert_eq!(b.forest_count(u64::from(n)).unwrap().f_n, expected);
            assert_eq!(
                forest_count_oracle(&spec, u64::from(n)).unwrap().f_n,
                expected
            );
        }
    }

    #[test]
    fn chebyshev_route_rounds_to_the_exact_count() {
        let p = Precision::default();
        let c = char_poly(&cycle_spec()).unwrap();
        let e3 = c.forest_count_chebyshev(3, p).unwrap();
        assert!((e3.value - 16.0).abs() < 1e-9);
        assert_eq!(e3.rounded, BigUint::from(16u32));
        assert_eq!(
            c.forest_count_chebyshev(4, p).unwrap().rounded,
            BigUint::from(45u32)
        );
        let y = char_poly(&y_spec()).unwrap();
        assert_eq!(
            y.forest_count_chebyshev(2, p).unwrap().rounded,
            BigUint::from(15_120u32)
        );
        // Doubles resolve integers up to about 10^15; beyond that the route
        // must refuse rather than round wrongly.
        for n in 1..=12 {
            let exact = y.forest_count(n).unwrap().f_n;
            match y.forest_count_chebyshev(n, p) {
                Ok(e) => assert_eq!(e.rounded, exact, "n={n}"),
                Err(Error::PrecisionInsufficient { .. }) => assert!(n > 6, "n={n}"),
                Err(e) => panic!("n={n}: {e}"),
            }
        }
    }

    #[test]
    fn chebyshev_route_refuses_unresolvable_values() {
        let gp = char_poly(&gp_spec(2)).unwrap();
        assert!(matches!(
            gp.forest_count_chebyshev(60, Precision::default()),
            Err(Error::PrecisionInsufficient { .. })
        ));
    }

    #[test]
    fn transform_identity_at_extra_points() {
        let b = char_poly(&h_spec()).unwrap();
        for (a, d) in [(3, 7), (-2, 9), (11, 5)] {
            let z = BigRational::new(BigInt::from(a), BigInt::from(d));
            assert!(transform_identity_holds(&b, &z));
        }
    }
}
