use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut p = IntegerPolynomial {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `c * x^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntegerPolynomial { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &IntegerPolynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// True when coefficient `j` equals coefficient `deg - j` for every `j`.
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        c.iter().eq(c.iter().rev())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * x + c)
    }

    /// Coefficients rounded to `f64`; huge coefficients become infinite.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Gcd of the coefficients, non-negative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Square-free decomposition `self = c * prod_i g_i^i` (Yun's algorithm).
    ///
    /// Returns the nonconstant primitive factors `g_i` paired with their
    /// multiplicity, in increasing multiplicity. The factors are pairwise
    /// coprime and each has only simple roots.
    pub fn squarefree_decomposition(&self) -> Vec<(IntegerPolynomial, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = RatPoly::from_int(&self.primitive_part());
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut d = df.div_exact(&a0).sub(&b.derivative());
        let mut multiplicity = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let next_b = b.div_exact(&a);
            let c = d.div_exact(&a);
            d = c.sub(&next_b.derivative());
            if a.degree() > 0 {
                out.push((a.to_primitive_int(), multiplicity));
            }
            b = next_b;
            multiplicity += 1;
        }
        out
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPolynomial({self})")
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("w")?,
                _ => write!(f, "w^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a IntegerPolynomial> for &'a IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn add(self, rhs: &'a IntegerPolynomial) -> IntegerPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new(
            (0..len)
                .map(|k| self.coeff(k) + rhs.coeff(k))
                .collect::<Vec<_>>(),
        )
    }
}

impl<'a> Sub<&'a IntegerPolynomial> for &'a IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn sub(self, rhs: &'a IntegerPolynomial) -> IntegerPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new(
            (0..len)
                .map(|k| self.coeff(k) - rhs.coeff(k))
                .collect::<Vec<_>>(),
        )
    }
}

impl<'a> Mul<&'a IntegerPolynomial> for &'a IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: &'a IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(coeffs)
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Chebyshev polynomial of the first kind, `T_k(cos t) = cos(k t)`.
///
/// Built with `T_{k+1} = 2w T_k - T_{k-1}`; `T_k` has degree `k` and leading
/// coefficient `2^(k-1)` for `k >= 1`.
pub fn chebyshev_t(k: usize) -> IntegerPolynomial {
    let two_w = IntegerPolynomial::monomial(2, 1);
    let mut prev = IntegerPolynomial::one();
    if k == 0 {
        return prev;
    }
    let mut cur = IntegerPolynomial::x();
    for _ in 1..k {
        let next = &(&two_w * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Rational-coefficient polynomial used internally for gcd computations.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_int(p: &IntegerPolynomial) -> Self {
        RatPoly(
            p.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    fn derivative(&self) -> Self {
        RatPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
        .trimmed()
    }

    fn sub(&self, rhs: &RatPoly) -> Self {
        let len = self.0.len().max(rhs.0.len());
        let zero = BigRational::zero();
        RatPoly(
            (0..len)
                .map(|k| self.0.get(k).unwrap_or(&zero) - rhs.0.get(k).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }

    fn div_rem(&self, rhs: &RatPoly) -> (RatPoly, RatPoly) {
        let dr = rhs.degree();
        assert!(dr >= 0, "division by the zero polynomial");
        let mut rem = self.0.clone();
        let lead = rhs.0.last().unwrap().clone();
        let dq = self.degree() - dr;
        if dq < 0 {
            return (RatPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); dq as usize + 1];
        for k in (0..=dq as usize).rev() {
            let c = &rem[k + dr as usize] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, r) in rhs.0.iter().enumerate() {
                rem[k + j] -= &c * r;
            }
            quot[k] = c;
        }
        rem.truncate(dr as usize);
        (RatPoly(quot).trimmed(), RatPoly(rem).trimmed())
    }

    fn div_exact(&self, rhs: &RatPoly) -> RatPoly {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.0.is_empty(), "inexact polynomial division");
        q
    }

    fn monic(self) -> Self {
        match self.0.last().cloned() {
            Some(lead) => RatPoly(self.0.into_iter().map(|c| c / &lead).collect()),
            None => self,
        }
    }

    fn gcd(&self, rhs: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while b.degree() >= 0 {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    fn to_primitive_int(&self) -> IntegerPolynomial {
        let denom = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        IntegerPolynomial::new(ints).primitive_part()
    }
}
