use super::{normalize_chain, AbelianInvariants, IntMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Nonzero Smith invariants of a matrix, d₁ | d₂ | … | d_r, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// ℤ^cols modulo the row space.
    pub fn row_cokernel(&self) -> AbelianInvariants {
        AbelianInvariants::from_diagonal(&self.factors, self.cols - self.rank())
    }

    /// ℤ^rows modulo the column space.
    pub fn column_cokernel(&self) -> AbelianInvariants {
        AbelianInvariants::from_diagonal(&self.factors, self.rows - self.rank())
    }
}

/// Smith normal form diagonal (no transforms).
pub fn snf(m: &IntMatrix) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = m.to_row_vectors();
    let factors = diagonalize(&mut a, m.cols());
    SmithForm { factors, rows: m.rows(), cols: m.cols() }
}

/// Diagonalizes a dense matrix given as rows; returns the positive Smith
/// factors in divisibility order.
pub(crate) fn diagonalize(a: &mut [Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(a, t, bj);
        loop {
            let mut clean = true;
            for k in t + 1..rows {
                if a[k][t].is_zero() {
                    continue;
                }
                let q = &a[k][t] / &a[t][t];
                let (top, rest) = a.split_at_mut(k);
                let pivot_row = &top[t];
                for j in t..cols {
                    if !pivot_row[j].is_zero() {
                        rest[0][j] -= &q * &pivot_row[j];
                    }
                }
                if !a[k][t].is_zero() {
                    clean = false;
                }
            }
            for k in t + 1..cols {
                if a[t][k].is_zero() {
                    continue;
                }
                let q = &a[t][k] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let v = &q * &row[t];
                        row[k] -= v;
                    }
                }
                if !a[t][k].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let mut next: Option<(usize, usize)> = None;
            for k in t + 1..rows {
                if !a[k][t].is_zero() && next.is_none_or(|(i, j)| a[k][t].abs() < a[i][j].abs()) {
                    next = Some((k, t));
                }
            }
            for k in t + 1..cols {
                if !a[t][k].is_zero() && next.is_none_or(|(i, j)| a[t][k].abs() < a[i][j].abs()) {
                    next = Some((t, k));
                }
            }
            let (i, j) = next.expect("unclean pivot has a remainder");
            a.swap(t, i);
            swap_cols(a, t, j);
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    normalize_chain(&mut diag);
    diag
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}
