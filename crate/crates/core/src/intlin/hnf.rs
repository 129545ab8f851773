use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `h = u · m`. Pivot columns strictly increase, pivots are positive,
/// entries above a pivot lie in `[0, pivot)`, zero rows come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    hermite_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// Hermite normal form without the transform.
pub fn hermite_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    hermite_in_place(&mut h, None);
    h
}

/// Reduces `a` in place and returns the pivot columns, one per nonzero row.
pub(crate) fn hermite_in_place(a: &mut IntMatrix, mut u: Option<&mut IntMatrix>) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..cols {
        if p == rows {
            break;
        }
        loop {
            let best = (p..rows).filter(|&r| !a[(r, c)].is_zero()).min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()));
            let Some(best) = best else { break };
            a.swap_rows(p, best);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(p, best);
            }
            let mut clean = true;
            for k in p + 1..rows {
                if a[(k, c)].is_zero() {
                    continue;
                }
                let q = &a[(k, c)] / &a[(p, c)];
                let neg = -q;
                a.add_row_multiple(k, p, &neg);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(k, p, &neg);
                }
                if !a[(k, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[(p, c)].is_zero() {
            continue;
        }
        if a[(p, c)].is_negative() {
            a.negate_row(p);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(p);
            }
        }
        for k in 0..p {
            if a[(k, c)].is_zero() {
                continue;
            }
            let q: BigInt = a[(k, c)].div_floor(&a[(p, c)]);
            if q.is_zero() {
                continue;
            }
            let neg = -q;
            a.add_row_multiple(k, p, &neg);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(k, p, &neg);
            }
        }
        pivots.push(c);
        p += 1;
    }
    pivots
}
