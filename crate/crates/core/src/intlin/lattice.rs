use super::hnf::hermite_in_place;
use super::{snf, AbelianInvariants, IntLinError, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// A factored integer system `m · x = b`, reusable across right-hand sides.
///
/// Stores the row Hermite form `h = u · mᵀ`; rows of `u` past the rank
/// span the integer kernel of `m`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    equations: usize,
    unknowns: usize,
    h: IntMatrix,
    u: IntMatrix,
    pivots: Vec<usize>,
}

impl LinearSystem {
    pub fn new(m: &IntMatrix) -> Self {
        let mut h = m.transpose();
        let mut u = IntMatrix::identity(m.cols());
        let pivots = hermite_in_place(&mut h, Some(&mut u));
        LinearSystem { equations: m.rows(), unknowns: m.cols(), h, u, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// One integer solution of `m · x = b`.
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>, IntLinError> {
        if b.len() != self.equations {
            return Err(IntLinError::Shape(format!("rhs has length {}, expected {}", b.len(), self.equations)));
        }
        let mut residual = b.to_vec();
        let mut y = Vec::with_capacity(self.pivots.len());
        for (i, &p) in self.pivots.iter().enumerate() {
            let (q, r) = residual[p].div_rem(&self.h[(i, p)]);
            if !r.is_zero() {
                return Err(IntLinError::NoIntegerSolution);
            }
            if !q.is_zero() {
                for (res, hv) in residual.iter_mut().zip(self.h.row(i)) {
                    if !hv.is_zero() {
                        *res -= &q * hv;
                    }
                }
            }
            y.push(q);
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return Err(IntLinError::NoIntegerSolution);
        }
        let mut x = vec![BigInt::zero(); self.unknowns];
        for (i, q) in y.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (xv, uv) in x.iter_mut().zip(self.u.row(i)) {
                if !uv.is_zero() {
                    *xv += q * uv;
                }
            }
        }
        Ok(x)
    }

    /// Kernel basis, saturated, in Hermite-canonical form.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let raw: Vec<Vec<BigInt>> = (self.rank()..self.unknowns).map(|r| self.u.row(r).to_vec()).collect();
        let mut k = IntMatrix::from_vectors(&raw, self.unknowns);
        hermite_in_place(&mut k, None);
        k.to_row_vectors()
    }

    /// Kernel basis straight from the transform, not canonicalized.
    pub fn kernel_raw(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.unknowns).map(|r| self.u.row(r).to_vec()).collect()
    }
}

/// Saturated ℤ-basis of `{x : m · x = 0}` in Hermite-canonical form.
pub fn kernel_lattice(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    LinearSystem::new(m).kernel()
}

/// Some `x ∈ ℤ^cols` with `m · x = b`.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>, IntLinError> {
    LinearSystem::new(m).solve(b)
}

/// Invariants of `L / ⟨relations⟩` where `L` is the lattice spanned by the
/// linearly independent `basis`. Every relation must lie in `L`.
pub fn quotient_invariants(basis: &[Vec<BigInt>], relations: &[Vec<BigInt>]) -> Result<AbelianInvariants, IntLinError> {
    let k = basis.len();
    let ambient = basis.first().or(relations.first()).map_or(0, Vec::len);
    if k == 0 {
        return match relations.iter().position(|r| r.iter().any(|x| !x.is_zero())) {
            Some(index) => Err(IntLinError::RelationOutsideKernel { index }),
            None => Ok(AbelianInvariants::trivial()),
        };
    }
    let b = IntMatrix::from_vectors(basis, ambient).transpose();
    let system = LinearSystem::new(&b);
    let mut coords = Vec::with_capacity(relations.len());
    for (index, r) in relations.iter().enumerate() {
        let c = system.solve(r).map_err(|e| match e {
            IntLinError::NoIntegerSolution => IntLinError::RelationOutsideKernel { index },
            other => other,
        })?;
        coords.push(c);
    }
    let rel = IntMatrix::from_vectors(&coords, k);
    Ok(snf(&rel).row_cokernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::big;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 1]]);
        let k = kernel_lattice(&m);
        assert_eq!(k.len(), 2);
        for b in &k {
            assert_eq!(m.mul_vec(b), v(&[0]));
        }
        // saturated: the basis is primitive and of index one in the kernel
        assert_eq!(k, vec![v(&[1, 0, -1]), v(&[0, 1, -1])]);
    }

    #[test]
    fn solve_and_failure() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve(&m, &v(&[4, 9])).unwrap(), v(&[2, 3]));
        assert_eq!(solve(&m, &v(&[1, 0])), Err(IntLinError::NoIntegerSolution));
        let m = IntMatrix::from_rows(&[vec![1, 1]]);
        let x = solve(&m, &v(&[5])).unwrap();
        assert_eq!(m.mul_vec(&x), v(&[5]));
    }

    #[test]
    fn quotient_examples() {
        let basis = vec![v(&[1, 0]), v(&[0, 1])];
        let q = quotient_invariants(&basis, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(q, AbelianInvariants::two_elementary(2));
        let q = quotient_invariants(&basis, &[]).unwrap();
        assert_eq!(q.free_rank, 2);
        let basis = vec![v(&[1, 1, 0])];
        assert_eq!(quotient_invariants(&basis, &[v(&[1, 0, 0])]), Err(IntLinError::RelationOutsideKernel { index: 0 }));
        assert_eq!(quotient_invariants(&basis, &[v(&[3, 3, 0])]).unwrap().torsion, vec![big(3)]);
    }
}
