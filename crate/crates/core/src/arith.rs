//! Square structure of forest counts: `f(n) = f(H) a(n)^2` for odd `n` and
//! `f(n) = p f(H) a(n)^2` for even `n`, where `p` is the square-free part of
//! `Q(-1)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::forest::{char_poly, q_at_minus_one, CharPolyBundle};
use crate::graph::FoliationSpec;
use crate::{Error, Result};

/// Trial division covers every prime below this bound.
const TRIAL_LIMIT: u32 = 1_000_000;

/// Default number of polynomial steps Pollard's method may spend in total.
pub const DEFAULT_FACTOR_BUDGET: u64 = 5_000_000;

/// Bases that make Miller-Rabin exact below 3.3 * 10^24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticReport {
    pub n: u64,
    pub f_n: BigUint,
    pub f_base: BigUint,
    pub q_minus_one: BigUint,
    pub square_free_p: BigUint,
    pub a_n: BigUint,
    pub parity: Parity,
    pub verified: bool,
}

/// `r` with `r^2 = x`, if there is one.
pub fn integer_sqrt_exact(x: &BigUint) -> Option<BigUint> {
    let r = x.sqrt();
    if &r * &r == *x {
        Some(r)
    } else {
        None
    }
}

/// Product of the primes dividing `x` to an odd power. Zero maps to zero.
pub fn squarefree_part(x: &BigUint) -> Result<BigUint> {
    squarefree_part_with_budget(x, DEFAULT_FACTOR_BUDGET)
}

/// As [`squarefree_part`], with an explicit bound on the work spent splitting
/// cofactors that survive trial division.
pub fn squarefree_part_with_budget(x: &BigUint, budget: u64) -> Result<BigUint> {
    if x.is_zero() {
        return Ok(BigUint::zero());
    }
    let mut budget = budget;
    let factors = factorize(x, &mut budget)?;
    Ok(factors
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p))
}

/// Prime factorization as a map from prime to exponent.
fn factorize(x: &BigUint, budget: &mut u64) -> Result<BTreeMap<BigUint, u32>> {
    let mut out = BTreeMap::new();
    let mut rest = x.clone();
    let mut d = 2u32;
    while d < TRIAL_LIMIT {
        let db = BigUint::from(d);
        if &db * &db > rest {
            break;
        }
        while (&rest % &db).is_zero() {
            rest /= &db;
            *out.entry(db.clone()).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut pending = vec![rest];
    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        let limit = BigUint::from(TRIAL_LIMIT);
        if c < &limit * &limit || is_probable_prime(&c) {
            *out.entry(c).or_insert(0) += 1;
            continue;
        }
        if let Some(r) = integer_sqrt_exact(&c) {
            pending.push(r.clone());
            pending.push(r);
            continue;
        }
        let d = split(&c, budget)?;
        pending.push(&c / &d);
        pending.push(d);
    }
    Ok(out)
}

/// Miller-Rabin over fixed bases; deterministic below 3.3 * 10^24.
fn is_probable_prime(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - &one;
    let r = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> r;
    'bases: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..r {
            x = &x * &x % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n` by Brent's variant of
/// Pollard's rho.
fn split(n: &BigUint, budget: &mut u64) -> Result<BigUint> {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        if let Some(d) = brent(n, &c, budget)? {
            return Ok(d);
        }
        c += &one;
    }
}

fn brent(n: &BigUint, c: &BigUint, budget: &mut u64) -> Result<Option<BigUint>> {
    const BATCH: u64 = 128;
    let step = |y: &BigUint| (y * y + c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut spend = |k: u64| -> Result<()> {
        if *budget < k {
            return Err(Error::FactorizationTimeout {
                remaining: format!("{n}"),
            });
        }
        *budget -= k;
        Ok(())
    };

    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        spend(r)?;
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let len = BATCH.min(r - k);
            spend(len)?;
            for _ in 0..len {
                y = step(&y);
                q = q * diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == *n {
        // The batch overshot; redo it one step at a time.
        loop {
            spend(1)?;
            ys = step(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    Ok(if g == *n { None } else { Some(g) })
}

/// Checks the square structure for many `n` against one set of polynomials.
#[derive(Clone, Debug)]
pub struct StructureChecker {
    bundle: CharPolyBundle,
    q_minus_one: BigUint,
    p: BigUint,
}

impl StructureChecker {
    pub fn new(spec: &FoliationSpec) -> Result<Self> {
        let bundle = char_poly(spec)?;
        let q_minus_one = q_at_minus_one(spec);
        let p = squarefree_part(&q_minus_one)?;
        Ok(StructureChecker {
            bundle,
            q_minus_one,
            p,
        })
    }

    pub fn bundle(&self) -> &CharPolyBundle {
        &self.bundle
    }

    pub fn square_free_p(&self) -> &BigUint {
        &self.p
    }

    pub fn check(&self, n: u64) -> Result<ArithmeticReport> {
        if n == 0 {
            return Err(Error::InvalidN);
        }
        if !self.bundle.admits(n) {
            return Err(Error::JumpTooLargeForN {
                n,
                max_jump: self.bundle.max_jump,
            });
        }
        let count = self.bundle.forest_count(n)?;
        let parity = Parity::of(n);
        let divisor = match parity {
            Parity::Odd => count.f_base.clone(),
            Parity::Even => &count.f_base * &self.p,
        };
        let (ratio, rem) = count.f_n.div_rem(&divisor);
        if !rem.is_zero() {
            return Err(Error::StructureViolation {
                n,
                detail: format!("{divisor} does not divide f(n) = {}", count.f_n),
            });
        }
        let a_n = integer_sqrt_exact(&ratio).ok_or_else(|| Error::StructureViolation {
            n,
            detail: format!("f(n) / {divisor} = {ratio} is not a square"),
        })?;
        if &divisor * &a_n * &a_n != count.f_n {
            return Err(Error::StructureViolation {
                n,
                detail: format!("reconstruction from a(n) = {a_n} fails"),
            });
        }
        Ok(ArithmeticReport {
            n,
            f_n: count.f_n,
            f_base: count.f_base,
            q_minus_one: self.q_minus_one.clone(),
            square_free_p: self.p.clone(),
            a_n,
            parity,
            verified: true,
        })
    }
}

/// Computes `f(n)`, `f(H)` and `p`, and extracts `a(n)` exactly.
pub fn verify_arithmetic_structure(spec: &FoliationSpec, n: u64) -> Result<ArithmeticReport> {
    StructureChecker::new(spec)?.check(n)
}
