use super::{expand_derived, Generator, GeneratorKind, Letter, SurfaceError, SurfaceSpec, Word};
use crate::intlin::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use std::collections::BTreeMap;

/// Which sign pattern to use for the two formulas whose printed
/// coefficients are inconsistent. Only [`SignVariant::Corrected`] is a
/// representation; the others exist so checks can be shown to catch them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SignVariant {
    #[default]
    Corrected,
    /// ψ(e_j)(γ₁) = −γ₂ − δ₁ − δ₂ + δ₃ + … + δ_{j−1} − δ_j.
    PrintedBoundaryTwist,
    /// ψ(s_{n−1})(δ_{s+n−1}) = −(2γ₁ + … + 2γ_g − δ₁ + δ₂ + … + δ_{s+n−1}).
    PrintedBraid,
    /// ψ(s_{n−1})(δ_{s+n−1}) = δ_{s+n−1} − (2γ₁ + … + 2γ_g + δ₁ + … + δ_{s+n−2}).
    FlippedBraidDiagonal,
}

/// ψ on the generators, with inverses. Column i of a matrix is the image of
/// the i-th basis vector ξ_i (γ₁ … γ_g, then δ₁ … δ_{s+n−1}).
#[derive(Debug, Clone)]
pub struct Representation {
    spec: SurfaceSpec,
    variant: SignVariant,
    generators: Vec<Generator>,
    matrices: BTreeMap<Generator, (IntMatrix, IntMatrix)>,
}

impl Representation {
    pub fn new(spec: &SurfaceSpec) -> Self {
        Self::with_variant(spec, SignVariant::Corrected)
    }

    pub fn with_variant(spec: &SurfaceSpec, variant: SignVariant) -> Self {
        let generators = spec.generators();
        let matrices = generators
            .iter()
            .map(|&g| {
                let m = generator_matrix(spec, g, variant);
                let inv = m.inverse_unimodular().expect("generator matrices are unimodular");
                (g, (m, inv))
            })
            .collect();
        Representation { spec: *spec, variant, generators, matrices }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn variant(&self) -> SignVariant {
        self.variant
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn matrix(&self, g: Generator) -> Option<&IntMatrix> {
        self.matrices.get(&g).map(|(m, _)| m)
    }

    pub fn inverse_matrix(&self, g: Generator) -> Option<&IntMatrix> {
        self.matrices.get(&g).map(|(_, m)| m)
    }

    pub fn letter_matrix(&self, l: Letter) -> Result<&IntMatrix, SurfaceError> {
        let (m, inv) = self.matrices.get(&l.generator).ok_or(SurfaceError::UnknownLetter(l))?;
        Ok(if l.inverse { inv } else { m })
    }

    /// ψ(w) for a word in the generators (derived letters must already be
    /// expanded).
    pub fn evaluate(&self, w: &Word) -> Result<IntMatrix, SurfaceError> {
        let mut acc = IntMatrix::identity(self.dim());
        for &l in w.letters() {
            acc = acc.mul_matrix(self.letter_matrix(l)?);
        }
        Ok(acc)
    }

    /// ψ(w) after expanding derived letters.
    pub fn evaluate_expanded(&self, w: &Word) -> Result<IntMatrix, SurfaceError> {
        self.evaluate(&expand_derived(w, &self.spec)?)
    }

    /// Problems with the generator matrices: non-unimodular matrices,
    /// involutions that are not involutions, and coefficients that fail to
    /// preserve the parity of the γ-part. Empty for a valid representation.
    pub fn sanity_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&g, (m, inv)) in &self.matrices {
            if !m.determinant().abs().is_one() {
                out.push(format!("det ψ({g}) is not ±1"));
            }
            if !m.mul_matrix(inv).is_identity() {
                out.push(format!("ψ({g}) ψ({g}⁻¹) ≠ I"));
            }
            let involution = matches!(g.kind, GeneratorKind::U | GeneratorKind::D | GeneratorKind::S | GeneratorKind::V);
            if involution && !m.mul_matrix(m).is_identity() {
                out.push(format!("ψ({g})² ≠ I"));
            }
            if !preserves_gamma_parity(&self.spec, m) {
                out.push(format!("ψ({g}) does not preserve the γ-parity functional"));
            }
        }
        out
    }
}

/// β(ψ ξ_i) ≡ β(ξ_i) mod 2 for every basis vector, where β sums the
/// γ-coordinates.
pub fn preserves_gamma_parity(spec: &SurfaceSpec, m: &IntMatrix) -> bool {
    let g = spec.genus() as usize;
    (0..m.cols()).all(|c| {
        let s: BigInt = (0..g).map(|r| &m[(r, c)]).sum();
        s.is_odd() == (c < g)
    })
}

fn generator_matrix(spec: &SurfaceSpec, gen: Generator, variant: SignVariant) -> IntMatrix {
    use GeneratorKind::*;
    let d = spec.dim();
    let g = spec.genus();
    let last = spec.boundary_twists();
    let mut m = IntMatrix::identity(d);
    let one = BigInt::one;
    let set = |m: &mut IntMatrix, row: usize, col: usize, v: i64| m[(row, col)] = BigInt::from(v);
    match gen.kind {
        A => {
            let (p, q) = (spec.gamma(gen.index), spec.gamma(gen.index + 1));
            set(&mut m, p, p, 0);
            set(&mut m, q, p, -1);
            set(&mut m, p, q, 1);
            set(&mut m, q, q, 2);
        }
        U => {
            let (p, q) = (spec.gamma(gen.index), spec.gamma(gen.index + 1));
            set(&mut m, p, p, 0);
            set(&mut m, q, q, 0);
            set(&mut m, p, q, 1);
            set(&mut m, q, p, 1);
        }
        B => {
            for r in 0..4 {
                for c in 0..4 {
                    let v = if c % 2 == 0 { -1 } else { 1 };
                    m[(r, c)] += BigInt::from(v);
                }
            }
        }
        E => {
            let (g1, g2) = (spec.gamma(1), spec.gamma(2));
            set(&mut m, g1, g1, 0);
            set(&mut m, g2, g1, -1);
            set(&mut m, g1, g2, 1);
            set(&mut m, g2, g2, 2);
            let j = gen.index;
            for t in 1..=j {
                let dt = spec.delta(t);
                let printed_plus = variant == SignVariant::PrintedBoundaryTwist && t >= 3 && t < j;
                set(&mut m, dt, g1, if printed_plus { 1 } else { -1 });
                set(&mut m, dt, g2, 1);
            }
        }
        D => {}
        S => {
            let j = gen.index;
            let n = spec.punctures();
            if j < n - 1 {
                let (p, q) = (spec.delta(spec.boundary() + j), spec.delta(spec.boundary() + j + 1));
                set(&mut m, p, p, 0);
                set(&mut m, q, q, 0);
                set(&mut m, p, q, 1);
                set(&mut m, q, p, 1);
            } else {
                let col = spec.delta(last);
                for i in 1..=g {
                    set(&mut m, spec.gamma(i), col, -2);
                }
                for t in 1..=last {
                    set(&mut m, spec.delta(t), col, -1);
                }
                match variant {
                    SignVariant::PrintedBraid if last >= 2 => set(&mut m, spec.delta(1), col, 1),
                    SignVariant::FlippedBraidDiagonal => set(&mut m, col, col, 1),
                    _ => {}
                }
            }
        }
        V => {
            let j = gen.index;
            let gg = spec.gamma(g);
            if j < spec.punctures() {
                let dj = spec.delta(spec.boundary() + j);
                set(&mut m, dj, dj, -1);
                m[(dj, gg)] = one();
            } else {
                for i in 1..=g {
                    m[(spec.gamma(i), gg)] -= BigInt::from(2);
                }
                for t in 1..=last {
                    m[(spec.delta(t), gg)] -= one();
                }
            }
        }
    }
    debug_assert!(m.rows() == d && !m.is_zero());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{derived_word, Derived, Flavor};
    use num_traits::Zero;

    fn rep(g: u32, s: u32, n: u32, k: u32, f: Flavor) -> Representation {
        Representation::new(&SurfaceSpec::new(g, s, n, k, f).unwrap())
    }

    #[test]
    fn crosscap_transposition_blocks() {
        let r = rep(3, 1, 0, 0, Flavor::Pmk);
        let a1 = r.matrix(Generator::new(GeneratorKind::A, 1)).unwrap();
        assert_eq!(*a1, IntMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 2, 0], vec![0, 0, 1]]));
        let inv = r.inverse_matrix(Generator::new(GeneratorKind::A, 1)).unwrap();
        assert_eq!(*inv, IntMatrix::from_rows(&[vec![2, -1, 0], vec![1, 0, 0], vec![0, 0, 1]]));
    }

    #[test]
    fn derived_transpositions_swap() {
        let r = rep(5, 1, 0, 0, Flavor::Pmk);
        let spec = *r.spec();
        for i in 2..5 {
            let m = r.evaluate(&derived_word(Derived::Transposition(i), &spec).unwrap()).unwrap();
            let mut swap = IntMatrix::identity(r.dim());
            let (p, q) = ((i - 1) as usize, i as usize);
            swap[(p, p)] = BigInt::zero();
            swap[(q, q)] = BigInt::zero();
            swap[(p, q)] = BigInt::one();
            swap[(q, p)] = BigInt::one();
            assert_eq!(m, swap, "u{i}");
        }
    }

    #[test]
    fn sanity_on_corrected() {
        for (g, s, n, k, f) in [(3, 2, 2, 0, Flavor::Pmk), (4, 1, 3, 1, Flavor::Full), (7, 0, 3, 0, Flavor::Full)] {
            assert!(rep(g, s, n, k, f).sanity_failures().is_empty());
        }
    }

    #[test]
    fn flipped_braid_fails_involution() {
        let spec = SurfaceSpec::full(3, 1, 2).unwrap();
        let r = Representation::with_variant(&spec, SignVariant::FlippedBraidDiagonal);
        let f = r.sanity_failures();
        assert!(f.iter().any(|m| m.contains("s1") && m.contains('²')), "{f:?}");
    }

    #[test]
    fn unknown_letter() {
        let r = rep(3, 1, 0, 0, Flavor::Pmk);
        let w: Word = "b1".parse().unwrap();
        assert!(matches!(r.evaluate(&w), Err(SurfaceError::UnknownLetter(_))));
    }
}
