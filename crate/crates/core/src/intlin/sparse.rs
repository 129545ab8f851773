use super::snf::diagonalize;
use super::{normalize_chain, AbelianInvariants};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashSet};

type Row = BTreeMap<usize, BigInt>;

/// Incremental reduction of `ℤ^dim / ⟨rows⟩`.
///
/// Rows are first eliminated on ±1 pivots (cheapest Markowitz cost first);
/// whatever is left goes to a dense Smith reduction. Pivot rows are kept so
/// rows pushed later can be reduced against them, which lets a shared batch
/// of relations be eliminated once and then cloned per variant.
#[derive(Debug, Clone)]
pub struct SparseCokernel {
    dim: usize,
    active: Vec<Option<Row>>,
    col_rows: Vec<BTreeSet<usize>>,
    pivots: Vec<(usize, Row)>,
    seen: HashSet<Vec<(usize, BigInt)>>,
}

impl SparseCokernel {
    pub fn new(dim: usize) -> Self {
        SparseCokernel { dim, active: Vec::new(), col_rows: vec![BTreeSet::new(); dim], pivots: Vec::new(), seen: HashSet::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds a relation given as `(column, value)` pairs.
    pub fn push<I: IntoIterator<Item = (usize, BigInt)>>(&mut self, row: I) {
        let mut r: Row = BTreeMap::new();
        for (c, x) in row {
            assert!(c < self.dim, "column {c} out of range");
            if x.is_zero() {
                continue;
            }
            let e = r.entry(c).or_insert_with(BigInt::zero);
            *e += x;
            if e.is_zero() {
                r.remove(&c);
            }
        }
        for (pc, prow) in &self.pivots {
            if let Some(x) = r.get(pc).cloned() {
                let f = if prow[pc].is_one() { -x } else { x };
                axpy(&mut r, prow, &f);
            }
        }
        self.insert(r);
    }

    fn insert(&mut self, r: Row) {
        if r.is_empty() {
            return;
        }
        let flip = r.values().next().is_some_and(|x| x.is_negative());
        let key: Vec<(usize, BigInt)> = r.iter().map(|(&c, x)| (c, if flip { -x } else { x.clone() })).collect();
        if !self.seen.insert(key) {
            return;
        }
        let id = self.active.len();
        for &c in r.keys() {
            self.col_rows[c].insert(id);
        }
        self.active.push(Some(r));
    }

    /// Eliminates every available ±1 pivot.
    pub fn eliminate_units(&mut self) {
        while let Some((rid, col)) = self.best_unit() {
            let prow = self.active[rid].take().expect("pivot row is active");
            for &c in prow.keys() {
                self.col_rows[c].remove(&rid);
            }
            let targets: Vec<usize> = self.col_rows[col].iter().copied().collect();
            for t in targets {
                let mut row = self.active[t].take().expect("indexed row is active");
                let x = row[&col].clone();
                let f = if prow[&col].is_one() { -x } else { x };
                let before: Vec<usize> = row.keys().copied().collect();
                axpy(&mut row, &prow, &f);
                for c in before {
                    if !row.contains_key(&c) {
                        self.col_rows[c].remove(&t);
                    }
                }
                for &c in row.keys() {
                    self.col_rows[c].insert(t);
                }
                if row.is_empty() {
                    self.active[t] = None;
                } else {
                    self.active[t] = Some(row);
                }
            }
            self.pivots.push((col, prow));
        }
    }

    fn best_unit(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (rid, row) in self.active.iter().enumerate() {
            let Some(row) = row else { continue };
            let rn = row.len() - 1;
            for (&c, x) in row {
                if !x.magnitude().is_one() {
                    continue;
                }
                let cost = rn * (self.col_rows[c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, rid, c));
                    if cost == 0 {
                        return Some((rid, c));
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Rank of the relation lattice and torsion of the quotient.
    pub fn finish(mut self) -> (usize, Vec<BigInt>) {
        self.eliminate_units();
        let rows: Vec<&Row> = self.active.iter().flatten().collect();
        let cols: BTreeSet<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
        let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![BigInt::zero(); cols.len()];
                for (c, x) in r.iter() {
                    v[index[c]] = x.clone();
                }
                v
            })
            .collect();
        let mut factors = diagonalize(&mut dense, cols.len());
        normalize_chain(&mut factors);
        let rank = self.pivots.len() + factors.len();
        (rank, factors.into_iter().filter(|d| !d.is_one()).collect())
    }

    /// `ℤ^dim / ⟨rows⟩`.
    pub fn invariants(self) -> AbelianInvariants {
        let dim = self.dim;
        let (rank, torsion) = self.finish();
        AbelianInvariants { torsion, free_rank: dim - rank }
    }
}

/// row += f · other
fn axpy(row: &mut Row, other: &Row, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for (&c, y) in other {
        let e = row.entry(c).or_insert_with(BigInt::zero);
        *e += f * y;
        if e.is_zero() {
            row.remove(&c);
        }
    }
}

/// `ℤ^dim / ⟨rows⟩` through the sparse route.
pub fn cokernel_of_rows(dim: usize, rows: &[Vec<BigInt>]) -> AbelianInvariants {
    let mut s = SparseCokernel::new(dim);
    for r in rows {
        s.push(r.iter().cloned().enumerate());
    }
    s.invariants()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::{big, snf, IntMatrix};

    #[test]
    fn matches_dense_small() {
        let rows = vec![vec![2, 4, 0], vec![6, 8, 0], vec![1, 1, 1]];
        let m = IntMatrix::from_rows(&rows);
        let dense = snf(&m).row_cokernel();
        let vecs: Vec<Vec<BigInt>> = m.to_row_vectors();
        assert_eq!(cokernel_of_rows(3, &vecs), dense);
    }

    #[test]
    fn incremental_push_after_pivoting() {
        let mut s = SparseCokernel::new(3);
        s.push(vec![(0, big(1)), (1, big(-1))]);
        s.eliminate_units();
        let mut t = s.clone();
        t.push(vec![(0, big(2))]);
        // x0 = x1, 2 x0 = 0: Z/2 + Z
        let inv = t.invariants();
        assert_eq!(inv.torsion, vec![big(2)]);
        assert_eq!(inv.free_rank, 1);
        assert_eq!(s.invariants().free_rank, 2);
    }

    #[test]
    fn duplicates_and_zero_rows() {
        let rows = vec![vec![big(0), big(2)], vec![big(0), big(-2)], vec![big(0), big(0)]];
        let inv = cokernel_of_rows(2, &rows);
        assert_eq!(inv.torsion, vec![big(2)]);
        assert_eq!(inv.free_rank, 1);
    }
}
