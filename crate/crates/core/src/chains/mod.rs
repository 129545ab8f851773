//! One-chains [x]⊗ξ_i, the boundary ∂̄₁, and Fox rewriting of relations.
//!
//! A class [x]⊗ξ_i is written x_{j,i} for the generator x = x_j; basis
//! indices are 1-based as in ξ₁ … ξ_d.

mod cycles;

pub use cycles::{
    boundary_consistency_failures, cycle_lattice, cycle_sublattice, kernel_generators, reference_boundary, same_lattice, CycleLattice,
};

use crate::intlin::IntMatrix;
use crate::surface::{expand_derived, Generator, GeneratorKind, Representation, SurfaceError, Word};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Integer combination of classes [x]⊗ξ_i, keyed by (generator, i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ChainVector {
    coeffs: BTreeMap<(Generator, usize), BigInt>,
}

impl ChainVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// x_{·,i} with coefficient 1.
    pub fn unit(g: Generator, i: usize) -> Self {
        let mut c = Self::zero();
        c.add_term(g, i, &BigInt::one());
        c
    }

    /// Builds a vector from `(generator, index, coefficient)` triples.
    pub fn from_terms<I: IntoIterator<Item = (Generator, usize, i64)>>(terms: I) -> Self {
        let mut c = Self::zero();
        for (g, i, x) in terms {
            c.add_term(g, i, &BigInt::from(x));
        }
        c
    }

    pub fn add_term(&mut self, g: Generator, i: usize, x: &BigInt) {
        assert!(i >= 1, "basis indices are 1-based");
        if x.is_zero() {
            return;
        }
        let e = self.coeffs.entry((g, i)).or_insert_with(BigInt::zero);
        *e += x;
        if e.is_zero() {
            self.coeffs.remove(&(g, i));
        }
    }

    /// Adds `[g] ⊗ v` for a module vector `v` (0-based positions).
    pub fn add_tensor(&mut self, g: Generator, v: &[BigInt], sign: &BigInt) {
        for (pos, x) in v.iter().enumerate() {
            if !x.is_zero() {
                self.add_term(g, pos + 1, &(x * sign));
            }
        }
    }

    pub fn coeff(&self, g: Generator, i: usize) -> BigInt {
        self.coeffs.get(&(g, i)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, usize, &BigInt)> {
        self.coeffs.iter().map(|(&(g, i), x)| (g, i, x))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        if k.is_zero() {
            return out;
        }
        for (&key, x) in &self.coeffs {
            out.coeffs.insert(key, x * k);
        }
        out
    }

    pub fn add_assign(&mut self, other: &ChainVector) {
        for (&(g, i), x) in &other.coeffs {
            self.add_term(g, i, x);
        }
    }

    pub fn sub_assign(&mut self, other: &ChainVector) {
        for (&(g, i), x) in &other.coeffs {
            self.add_term(g, i, &-x);
        }
    }

    pub fn plus(&self, other: &ChainVector) -> Self {
        let mut c = self.clone();
        c.add_assign(other);
        c
    }

    pub fn minus(&self, other: &ChainVector) -> Self {
        let mut c = self.clone();
        c.sub_assign(other);
        c
    }

    /// Keeps only coordinates whose generator kind satisfies `keep`.
    pub fn project<F: Fn(GeneratorKind) -> bool>(&self, keep: F) -> Self {
        ChainVector { coeffs: self.coeffs.iter().filter(|((g, _), _)| keep(g.kind)).map(|(k, x)| (*k, x.clone())).collect() }
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(g, i), x)) in self.coeffs.iter().enumerate() {
            let neg = x.is_negative();
            let mag = x.abs();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}_{{{},{}}}", g.kind.letter(), g.index, i)?;
        }
        Ok(())
    }
}

/// Column layout of the chain group ⟨X̄⟩ ≅ ℤ^{|X|·d}: generator blocks in
/// generating-set order, each of width d.
#[derive(Debug, Clone)]
pub struct ChainSpace {
    dim: usize,
    generators: Vec<Generator>,
    offsets: BTreeMap<Generator, usize>,
}

impl ChainSpace {
    pub fn new(rep: &Representation) -> Self {
        let generators = rep.generators().to_vec();
        let dim = rep.dim();
        let offsets = generators.iter().enumerate().map(|(p, &g)| (g, p * dim)).collect();
        ChainSpace { dim, generators, offsets }
    }

    pub fn module_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.dim * self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn column(&self, g: Generator, i: usize) -> Option<usize> {
        self.offsets.get(&g).map(|o| o + i - 1)
    }

    pub fn coordinate(&self, col: usize) -> (Generator, usize) {
        (self.generators[col / self.dim], col % self.dim + 1)
    }

    /// Sparse `(column, value)` form. Panics on coordinates outside the space.
    pub fn to_sparse(&self, c: &ChainVector) -> Vec<(usize, BigInt)> {
        c.terms().map(|(g, i, x)| (self.column(g, i).unwrap_or_else(|| panic!("{g} is not a generator here")), x.clone())).collect()
    }

    pub fn to_dense(&self, c: &ChainVector) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.len()];
        for (col, x) in self.to_sparse(c) {
            v[col] = x;
        }
        v
    }

    pub fn from_dense(&self, v: &[BigInt]) -> ChainVector {
        let mut c = ChainVector::zero();
        for (col, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let (g, i) = self.coordinate(col);
                c.add_term(g, i, x);
            }
        }
        c
    }

    /// Whether every coordinate of `c` belongs to this space.
    pub fn contains(&self, c: &ChainVector) -> bool {
        c.terms().all(|(g, i, _)| self.offsets.contains_key(&g) && i <= self.dim)
    }
}

/// ∂̄₁(c) = Σ c_{x,i} (ψ(x)⁻¹ − I) ξ_i.
pub fn boundary1(rep: &Representation, c: &ChainVector) -> Result<Vec<BigInt>, SurfaceError> {
    let d = rep.dim();
    let mut out = vec![BigInt::zero(); d];
    for (g, i, x) in c.terms() {
        let inv = rep.inverse_matrix(g).ok_or(SurfaceError::UnknownLetter(crate::surface::Letter::pos(g)))?;
        for (r, o) in out.iter_mut().enumerate() {
            let mut e = inv[(r, i - 1)].clone();
            if r == i - 1 {
                e -= 1;
            }
            if !e.is_zero() {
                *o += x * e;
            }
        }
    }
    Ok(out)
}

/// The d × |X|·d matrix of ∂̄₁ in the layout of `space`, restricted to
/// generators whose kind satisfies `keep`.
pub fn boundary_matrix<F: Fn(GeneratorKind) -> bool>(rep: &Representation, space: &ChainSpace, keep: F) -> IntMatrix {
    let d = rep.dim();
    let mut m = IntMatrix::zeros(d, space.len());
    for &g in space.generators() {
        if !keep(g.kind) {
            continue;
        }
        let inv = rep.inverse_matrix(g).expect("space generators belong to the representation");
        let off = space.column(g, 1).expect("generator in space");
        for i in 0..d {
            for r in 0..d {
                let mut e = inv[(r, i)].clone();
                if r == i {
                    e -= 1;
                }
                m[(r, off + i)] = e;
            }
        }
    }
    m
}

/// Fox rewriting of `lhs = rhs` tensored with ξ_t (1-based).
pub fn rewrite_relation(rep: &Representation, lhs: &Word, rhs: &Word, t: usize) -> Result<ChainVector, SurfaceError> {
    assert!((1..=rep.dim()).contains(&t), "basis index out of range");
    let mut all = rewrite_all(rep, lhs, rhs)?;
    Ok(all.swap_remove(t - 1))
}

/// Fox rewriting of `lhs = rhs` for every coefficient ξ₁ … ξ_d at once.
pub fn rewrite_all(rep: &Representation, lhs: &Word, rhs: &Word) -> Result<Vec<ChainVector>, SurfaceError> {
    let spec = rep.spec();
    let mut out = vec![ChainVector::zero(); rep.dim()];
    fox_into(rep, &expand_derived(lhs, spec)?, &BigInt::one(), &mut out)?;
    fox_into(rep, &expand_derived(rhs, spec)?, &-BigInt::one(), &mut out)?;
    Ok(out)
}

/// Adds `sign · Fox(w) ⊗ ξ_t` to `out[t]` for every t. The running matrix
/// holds ψ(prefix)⁻¹, so its column t is ψ(prefix)⁻¹ ξ_t.
fn fox_into(rep: &Representation, w: &Word, sign: &BigInt, out: &mut [ChainVector]) -> Result<(), SurfaceError> {
    let d = rep.dim();
    let mut prefix_inv = IntMatrix::identity(d);
    let neg = -sign;
    for &l in w.letters() {
        let g = l.generator;
        if l.inverse {
            prefix_inv = rep.letter_matrix(l.inv())?.mul_matrix(&prefix_inv);
        }
        let coef = if l.inverse { &neg } else { sign };
        for (t, o) in out.iter_mut().enumerate() {
            for r in 0..d {
                let x = &prefix_inv[(r, t)];
                if !x.is_zero() {
                    o.add_term(g, r + 1, &(x * coef));
                }
            }
        }
        if !l.inverse {
            prefix_inv = rep.letter_matrix(l.inv())?.mul_matrix(&prefix_inv);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{GeneratorKind::*, SurfaceSpec};

    fn gen(k: GeneratorKind, i: u32) -> Generator {
        Generator::new(k, i)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn boundary_examples() {
        let spec = SurfaceSpec::pmk(4, 2, 1, 0).unwrap();
        let rep = Representation::new(&spec);
        let b = boundary1(&rep, &ChainVector::unit(gen(A, 1), 1)).unwrap();
        assert_eq!(b, ints(&[1, 1, 0, 0, 0, 0]));
        for i in 1..=rep.dim() {
            assert!(boundary1(&rep, &ChainVector::unit(gen(D, 1), i)).unwrap().iter().all(Zero::is_zero));
        }
        assert!(boundary1(&rep, &ChainVector::unit(gen(U, 1), 5)).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn braid_rewrites_to_difference() {
        let spec = SurfaceSpec::pmk(4, 2, 1, 0).unwrap();
        let rep = Representation::new(&spec);
        let lhs: Word = "a1 a2 a1".parse().unwrap();
        let rhs: Word = "a2 a1 a2".parse().unwrap();
        for i in 5..=rep.dim() {
            let c = rewrite_relation(&rep, &lhs, &rhs, i).unwrap();
            assert_eq!(c, ChainVector::from_terms([(gen(A, 1), i, 1), (gen(A, 2), i, -1)]));
        }
        assert!(rewrite_relation(&rep, &lhs, &lhs, 1).unwrap().is_zero());
    }

    #[test]
    fn crosscap_commutes_with_boundary_twist() {
        // a₁e_j = e_ja₁ at ξ₁: ±((a_{1,1}+a_{1,2}) + a_{1,g+1} + … + a_{1,g+j} − (e_{j,1}+e_{j,2}))
        let spec = SurfaceSpec::pmk(3, 2, 2, 2).unwrap();
        let rep = Representation::new(&spec);
        let g = spec.genus() as usize;
        for j in 1..=spec.boundary_twists() {
            let lhs = Word::from(gen(A, 1)).concat(&Word::from(gen(E, j)));
            let rhs = Word::from(gen(E, j)).concat(&Word::from(gen(A, 1)));
            let c = rewrite_relation(&rep, &lhs, &rhs, 1).unwrap();
            let mut expected = ChainVector::from_terms([(gen(A, 1), 1, 1), (gen(A, 1), 2, 1), (gen(E, j), 1, -1), (gen(E, j), 2, -1)]);
            for t in 1..=j as usize {
                expected.add_term(gen(A, 1), g + t, &BigInt::one());
            }
            assert_eq!(c, expected.scaled(&BigInt::from(-1)), "j={j}");
        }
    }

    #[test]
    fn display_format() {
        let c = ChainVector::from_terms([(gen(A, 1), 3, 1), (gen(U, 1), 1, -2)]);
        assert_eq!(c.to_string(), "a_{1,3} - 2u_{1,1}");
        assert_eq!(ChainVector::zero().to_string(), "0");
    }

    #[test]
    fn dense_round_trip() {
        let spec = SurfaceSpec::full(3, 0, 2).unwrap();
        let rep = Representation::new(&spec);
        let space = ChainSpace::new(&rep);
        let c = ChainVector::from_terms([(gen(S, 1), 4, 3), (gen(A, 2), 1, -1)]);
        assert_eq!(space.from_dense(&space.to_dense(&c)), c);
        let m = boundary_matrix(&rep, &space, |_| true);
        assert_eq!(m.mul_vec(&space.to_dense(&c)), boundary1(&rep, &c).unwrap());
    }
}
