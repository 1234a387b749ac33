use alloc::vec::Vec;
use core::fmt;
use core::mem;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Square matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(order: usize) -> Self {
        IntegerMatrix {
            order,
            entries: alloc::vec![BigInt::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn<T, F>(order: usize, mut f: F) -> Self
    where
        T: Into<BigInt>,
        F: FnMut(usize, usize) -> T,
    {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j).into());
            }
        }
        IntegerMatrix { order, entries }
    }

    /// Builds a matrix from rows, rejecting ragged or non-square input.
    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    rows: order,
                    row: r,
                    len: row.len(),
                });
            }
            entries.extend(row.into_iter().map(Into::into));
        }
        Ok(IntegerMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Sum of every row, in row order.
    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    /// `self + c * I`.
    pub fn add_scalar_identity(&self, c: &BigInt) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            m.entries[i * self.order + i] += c;
        }
        m
    }

    pub fn det(&self) -> BigInt {
        det_exact(self)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.order {
            list.entry(&self.row(i));
        }
        list.finish()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so the divisions by the
/// previous pivot are exact. Zero entries are skipped, which keeps sparse
/// inputs such as Sylvester matrices cheap. The order-0 matrix has determinant 1.
pub fn det_exact(mat: &IntegerMatrix) -> BigInt {
    let n = mat.order;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = mat.entries.clone();
    let mut negate = false;
    let mut prev = BigInt::one();

    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        let pivot_is_one = pivot.is_one() && prev.is_one();
        for i in k + 1..n {
            let (head, tail) = a.split_at_mut(i * n);
            let upper_row = &head[k * n..k * n + n];
            let row = &mut tail[..n];
            let factor = mem::take(&mut row[k]);
            for j in k + 1..n {
                let upper = &upper_row[j];
                if factor.is_zero() && row[j].is_zero() {
                    continue;
                }
                if pivot_is_one {
                    if !factor.is_zero() && !upper.is_zero() {
                        row[j] -= &factor * upper;
                    }
                    continue;
                }
                let mut v = mem::take(&mut row[j]);
                if !v.is_zero() {
                    v *= &pivot;
                }
                if !factor.is_zero() && !upper.is_zero() {
                    v -= &factor * upper;
                }
                if !v.is_zero() && !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot;
    }

    let det = mem::take(&mut a[n * n - 1]);
    if negate {
        -det
    } else {
        det
    }
}
