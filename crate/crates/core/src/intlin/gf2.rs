//! Bit vectors and incremental row echelon forms over 𝔽₂.

use num_bigint::BigInt;
use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    /// Reduction mod 2 of an integer vector given as `(index, value)` pairs.
    pub fn from_integers<'a, I: IntoIterator<Item = (usize, &'a BigInt)>>(len: usize, entries: I) -> Self {
        let mut v = Self::zeros(len);
        for (i, x) in entries {
            if x.is_odd() {
                v.flip(i);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        if self.get(i) != bit {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range");
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Row echelon basis over 𝔽₂ that tracks, for each stored row, which
/// tagged inputs were combined to produce it.
#[derive(Debug, Clone)]
pub struct Echelon {
    len: usize,
    tag_len: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl Echelon {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Echelon { len, tag_len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual and the tag of
    /// the combination that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut tag = BitVec::zeros(self.tag_len);
        for (p, row, t) in &self.rows {
            if r.get(*p) {
                r.xor_assign(row);
                tag.xor_assign(t);
            }
        }
        (r, tag)
    }

    /// Inserts `v` with tag `tag`; returns `false` if `v` was dependent.
    pub fn insert(&mut self, v: &BitVec, tag: BitVec) -> bool {
        assert_eq!(v.len(), self.len);
        let (r, t) = self.reduce(v);
        let Some(p) = r.first_one() else { return false };
        let mut t = t;
        t.xor_assign(&tag);
        for (_, row, rt) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
                rt.xor_assign(&t);
            }
        }
        self.rows.push((p, r, t));
        true
    }
}

/// Rank over 𝔽₂ of a list of rows.
pub fn rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut e = Echelon::new(first.len(), 0);
    for r in rows {
        e.insert(r, BitVec::zeros(0));
    }
    e.rank()
}
