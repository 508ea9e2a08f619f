//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `M = T D S` with `T`, `S` unimodular and `D` diagonal, `d_i | d_{i+1}`.
///
/// The inverses of `T` and `S` are carried along so callers never have to
/// invert an integer matrix themselves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmithForm {
    pub t: IntMatrix,
    pub d: IntMatrix,
    pub s: IntMatrix,
    pub t_inv: IntMatrix,
    pub s_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..n).map(|i| self.d[i][i].clone()).filter(|x| !x.is_zero()).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

struct Work {
    a: IntMatrix,
    // left = T^{-1}, right = S^{-1}: left * M * right = D
    left: IntMatrix,
    t: IntMatrix,
    right: IntMatrix,
    s: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.left.swap(i, j);
        for row in self.t.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            row.swap(i, j);
        }
        self.s.swap(i, j);
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.left] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src.iter()) {
                *x += c * y;
            }
        }
        // T <- T E^{-1}: col_j -= c * col_i
        for row in self.t.iter_mut() {
            let v = &row[i] * c;
            row[j] -= v;
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.right] {
            for row in m.iter_mut() {
                let v = &row[j] * c;
                row[i] += v;
            }
        }
        // S <- F^{-1} S: row_j -= c * row_i
        let src = self.s[i].clone();
        for (x, y) in self.s[j].iter_mut().zip(src.iter()) {
            *x -= c * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.left] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
        for row in self.t.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

/// Smith normal form by smallest-pivot elimination followed by a pass that
/// enforces the divisibility chain and a positive diagonal.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work {
        a: m.clone(),
        left: identity(rows),
        t: identity(rows),
        right: identity(cols),
        s: identity(cols),
    };

    for p in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let Some((pi, pj)) = smallest_entry(&w.a, p, p) else {
                break;
            };
            w.swap_rows(p, pi);
            w.swap_cols(p, pj);

            let mut clean = true;
            for i in p + 1..rows {
                if !w.a[i][p].is_zero() {
                    let q = w.a[i][p].div_floor(&w.a[p][p]);
                    w.add_row(i, p, &-q);
                    clean &= w.a[i][p].is_zero();
                }
            }
            for j in p + 1..cols {
                if !w.a[p][j].is_zero() {
                    let q = w.a[p][j].div_floor(&w.a[p][p]);
                    w.add_col(j, p, &-q);
                    clean &= w.a[p][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let pivot = w.a[p][p].clone();
            let offending = (p + 1..rows)
                .find(|&i| (p + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => w.add_row(p, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[p][p].is_negative() {
            w.negate_row(p);
        }
    }

    SmithForm { t: w.t, d: w.a, s: w.s, t_inv: w.left, s_inv: w.right }
}

fn smallest_entry(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, x) in row.iter().enumerate().skip(c0) {
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
