//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! kernels, integer solving and finitely generated abelian group invariants.
//!
//! Everything is over `BigInt`; no floating point anywhere.

mod hnf;
mod lattice;
mod matrix;
mod snf;
mod sparse;

pub mod gf2;

pub use hnf::{hermite_form, hnf};
pub use lattice::{kernel_lattice, quotient_invariants, solve, LinearSystem};
pub use matrix::IntMatrix;
pub use snf::{snf, SmithForm};
pub use sparse::{cokernel_of_rows, SparseCokernel};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntLinError {
    #[error("no integer solution")]
    NoIntegerSolution,
    #[error("relation {index} lies outside the lattice")]
    RelationOutsideKernel { index: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Invariants of a finitely generated abelian group
/// ℤ^free_rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_m with 1 < t₁ | t₂ | … | t_m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Builds invariants from a list of diagonal entries (any order, zeros
    /// and units allowed). Zeros count towards the free rank.
    pub fn from_diagonal(diag: &[BigInt], extra_free: usize) -> Self {
        let mut nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        let zeros = diag.len() - nonzero.len();
        normalize_chain(&mut nonzero);
        AbelianInvariants { torsion: nonzero.into_iter().filter(|d| !d.is_one()).collect(), free_rank: zeros + extra_free }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// `Some(e)` when the group is (ℤ/2)^e.
    pub fn elementary_two_rank(&self) -> Option<usize> {
        if self.free_rank == 0 && self.torsion.iter().all(|t| *t == BigInt::from(2)) {
            Some(self.torsion.len())
        } else {
            None
        }
    }

    /// Torsion factors as machine integers; `None` if one overflows.
    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(|t| t.to_u64()).collect()
    }

    /// ℤ₂^e
    pub fn two_elementary(e: usize) -> Self {
        AbelianInvariants { torsion: vec![BigInt::from(2); e], free_rank: 0 }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == *t {
                j += 1;
            }
            let count = j - i;
            parts.push(if count == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{count}") });
            i = j;
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Rewrites positive entries into a divisibility chain with the same
/// direct sum, via pairwise (gcd, lcm) replacement.
pub(crate) fn normalize_chain(d: &mut [BigInt]) {
    use num_integer::Integer;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
}

use num_traits::Zero;

#[cfg(test)]
pub(crate) fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
