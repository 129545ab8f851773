//! ℤ₂-valued functionals that certify lower bounds, and the closed-form
//! answers used as the oracle.
//!
//! A functional pairs a map α from generators to ℤ₂ with the coefficient
//! functional β (sum of γ-coordinates mod 2). Its value on [x]⊗ξ is
//! α(x)·β(ξ).

use crate::catalog::Catalog;
use crate::chains::{ChainSpace, ChainVector};
use crate::engine::{Ambiguity, EngineError, H1Result, RelationSet};
use crate::intlin::gf2::{self, BitVec};
use crate::intlin::AbelianInvariants;
use crate::surface::{Flavor, GeneratorKind, Representation, SurfaceError, SurfaceSpec};
use num_integer::Integer;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alpha {
    /// Reverses the local orientation at puncture `j`: 1 on v_j only.
    Puncture(u32),
    /// Reverses orientation at an odd number of punctures: 1 on v_n only.
    OddReversals,
    /// Sign of the induced puncture permutation: 1 on every s_i.
    PermutationSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Beta {
    #[default]
    GammaSum,
    /// Sum of γ₁ … γ_{g−1}; not invariant, used to test the descent check.
    DropLastGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Functional {
    pub alpha: Alpha,
    pub beta: Beta,
}

impl Functional {
    pub fn new(alpha: Alpha) -> Self {
        Functional { alpha, beta: Beta::GammaSum }
    }

    pub fn alpha_on(&self, kind: GeneratorKind, index: u32, spec: &SurfaceSpec) -> bool {
        match (self.alpha, kind) {
            (Alpha::Puncture(j), GeneratorKind::V) => index == j,
            (Alpha::OddReversals, GeneratorKind::V) => index == spec.punctures(),
            (Alpha::PermutationSign, GeneratorKind::S) => true,
            _ => false,
        }
    }

    pub fn beta_on(&self, i: usize, spec: &SurfaceSpec) -> bool {
        let g = spec.genus() as usize;
        match self.beta {
            Beta::GammaSum => i <= g,
            Beta::DropLastGamma => i < g,
        }
    }

    /// Value on a chain, extended linearly mod 2.
    pub fn value(&self, spec: &SurfaceSpec, c: &ChainVector) -> bool {
        c.terms()
            .filter(|(g, i, _)| self.alpha_on(g.kind, g.index, spec) && self.beta_on(*i, spec))
            .fold(false, |acc, (_, _, x)| acc ^ x.is_odd())
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha {
            Alpha::Puncture(j) => write!(f, "α_{j}")?,
            Alpha::OddReversals => write!(f, "α")?,
            Alpha::PermutationSign => write!(f, "α′")?,
        }
        if self.beta == Beta::DropLastGamma {
            write!(f, " (β without γ_g)")?;
        }
        Ok(())
    }
}

/// Same as [`Functional::value`].
pub fn functional_value(spec: &SurfaceSpec, f: &Functional, c: &ChainVector) -> bool {
    f.value(spec, c)
}

/// The functionals that apply to a spec.
pub fn functionals(spec: &SurfaceSpec) -> Vec<Functional> {
    match spec.flavor() {
        Flavor::PmPlus => vec![],
        Flavor::Pmk => spec.slide_indices().into_iter().map(|j| Functional::new(Alpha::Puncture(j))).collect(),
        Flavor::Full => vec![Functional::new(Alpha::OddReversals), Functional::new(Alpha::PermutationSign)],
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DescentReport {
    pub failures: Vec<String>,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `f` is well defined on H₁: β is preserved by every
/// generator matrix and f vanishes on every relation vector and on every
/// direction a partial relation leaves undetermined.
pub fn descent_check(rep: &Representation, relations: &RelationSet, f: &Functional) -> DescentReport {
    let spec = rep.spec();
    let mut failures = Vec::new();
    for &g in rep.generators() {
        let m = rep.matrix(g).expect("listed generator");
        for c in 0..m.cols() {
            let image = (0..m.rows()).filter(|&r| f.beta_on(r + 1, spec) && m[(r, c)].is_odd()).count() % 2 == 1;
            if image != f.beta_on(c + 1, spec) {
                failures.push(format!("β ∘ ψ({g}) ≠ β on ξ{}", c + 1));
            }
        }
    }
    for (label, v) in &relations.exact {
        if f.value(spec, v) {
            failures.push(format!("{f} is 1 on {label}"));
        }
    }
    for p in &relations.partial {
        if f.value(spec, &p.base) {
            failures.push(format!("{f} is 1 on {}", p.label));
        }
    }
    for amb in &relations.ambiguities {
        match amb {
            Ambiguity::Kinds(kinds) => {
                // Anything supported on these kinds is killed when α is.
                for g in rep.generators().iter().filter(|g| kinds.contains(&g.kind)) {
                    if f.alpha_on(g.kind, g.index, spec) {
                        failures.push(format!("{f} is nonzero on the undetermined {g}-coordinates"));
                    }
                }
            }
            Ambiguity::Span(vs) => {
                for v in vs.iter().filter(|v| f.value(spec, v)) {
                    failures.push(format!("{f} is 1 on undetermined direction {v}"));
                }
            }
        }
    }
    DescentReport { failures }
}

/// [`descent_check`] starting from a catalog.
pub fn descent_check_catalog(rep: &Representation, catalog: &Catalog, f: &Functional) -> Result<DescentReport, EngineError> {
    Ok(descent_check(rep, &RelationSet::assemble(rep, catalog)?, f))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("functional {functional} does not descend: {reason}")]
    DescentFailed { functional: String, reason: String },
}

/// ℤ₂-rank of the matrix of functional values on the named basis: a lower
/// bound for the number of ℤ₂ summands that holds independently of the
/// reduction.
pub fn lower_bound(result: &H1Result) -> Result<usize, CertifyError> {
    lower_bound_with(result, &functionals(&result.spec))
}

pub fn lower_bound_with(result: &H1Result, fs: &[Functional]) -> Result<usize, CertifyError> {
    let rep = Representation::new(&result.spec);
    for f in fs {
        let report = descent_check(&rep, &result.relations, f);
        if let Some(reason) = report.failures.into_iter().next() {
            return Err(CertifyError::DescentFailed { functional: f.to_string(), reason });
        }
    }
    let rows: Vec<BitVec> = fs
        .iter()
        .map(|f| {
            let mut row = BitVec::zeros(result.named_basis.len());
            for (i, c) in result.named_basis.iter().enumerate() {
                row.set(i, f.value(&result.spec, &c.chain));
            }
            row
        })
        .collect();
    Ok(gf2::rank(&rows))
}

/// Exponent e of the closed-form answer ℤ₂^e. `s = n = 0` is the closed
/// surface; otherwise the flavor's constraints apply as in
/// [`SurfaceSpec::new`].
pub fn oracle_exponent(genus: u32, boundary: u32, punctures: u32, k: u32, flavor: Flavor) -> Result<u32, SurfaceError> {
    let (g, s, n) = (genus, boundary, punctures);
    if g < 3 {
        return Err(SurfaceError::SpecInvalid(format!("genus {g} < 3")));
    }
    if s + n == 0 {
        return Ok(if g <= 6 { 3 } else { 2 });
    }
    let spec = SurfaceSpec::new(g, s, n, k, flavor)?;
    let k = spec.k();
    Ok(match spec.flavor() {
        Flavor::PmPlus | Flavor::Pmk => match (g, s) {
            (3, 0) if k == 0 => 3 + n,
            (3, 0) => 1 + n + k,
            (3, _) => n + 3 * s + k,
            (4, 0) => 3 + n - k,
            (4, _) => 2 + n + s - k,
            (5 | 6, _) => 3 + n - k,
            _ => 2 + n - k,
        },
        Flavor::Full => match (g, s) {
            (3 | 4, 0) => 5,
            (3, _) => 3 * s + 2,
            (4, _) => 4 + s,
            (5 | 6, _) => 5,
            _ => 4,
        },
    })
}

pub fn oracle(spec: &SurfaceSpec) -> AbelianInvariants {
    let e =
        oracle_exponent(spec.genus(), spec.boundary(), spec.punctures(), spec.k(), spec.flavor()).expect("a validated spec has an oracle");
    AbelianInvariants::two_elementary(e as usize)
}

/// Sanity of the spec against the space: every functional's support lies in
/// the chain coordinates. Used by tests and the CLI verify command.
pub fn functionals_fit(spec: &SurfaceSpec) -> bool {
    let space = ChainSpace::new(&Representation::new(spec));
    functionals(spec).iter().all(|f| match f.alpha {
        Alpha::Puncture(j) => space.generators().iter().any(|g| g.kind == GeneratorKind::V && g.index == j),
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{candidate_classes, compute_h1, EngineOptions};
    use crate::surface::Generator;

    #[test]
    fn values_on_units() {
        let spec = SurfaceSpec::full(4, 1, 2).unwrap();
        let unit = |k, j, i| ChainVector::unit(Generator::new(k, j), i);
        let a = Functional::new(Alpha::OddReversals);
        let a2 = Functional::new(Alpha::PermutationSign);
        assert!(a.value(&spec, &unit(GeneratorKind::V, 2, 1)));
        assert!(!a.value(&spec, &unit(GeneratorKind::S, 1, 1)));
        assert!(a2.value(&spec, &unit(GeneratorKind::S, 1, 1)));
        for f in [a, a2, Functional::new(Alpha::Puncture(2))] {
            assert!(!f.value(&spec, &unit(GeneratorKind::A, 1, 3)));
            assert!(!f.value(&spec, &unit(GeneratorKind::U, 1, 3)));
            assert!(!f.value(&spec, &ChainVector::zero()));
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_exponent(3, 0, 2, 0, Flavor::Pmk).unwrap(), 5);
        assert_eq!(oracle_exponent(4, 2, 1, 1, Flavor::Pmk).unwrap(), 4);
        assert_eq!(oracle_exponent(3, 2, 2, 0, Flavor::Full).unwrap(), 8);
        assert_eq!(oracle_exponent(5, 0, 0, 0, Flavor::Pmk).unwrap(), 3);
        assert_eq!(oracle_exponent(7, 0, 0, 0, Flavor::Pmk).unwrap(), 2);
        assert!(oracle_exponent(3, 0, 1, 0, Flavor::Full).is_err());
    }

    #[test]
    fn candidate_count_is_oracle() {
        for g in 3..=9 {
            for s in 0..=3 {
                for n in 0..=3 {
                    if s + n == 0 {
                        continue;
                    }
                    let mut specs = vec![SurfaceSpec::pm_plus(g, s, n).unwrap()];
                    specs.extend((0..=n).map(|k| SurfaceSpec::pmk(g, s, n, k).unwrap()));
                    if n >= 2 {
                        specs.push(SurfaceSpec::full(g, s, n).unwrap());
                    }
                    for spec in specs {
                        assert_eq!(
                            candidate_classes(&spec).len() as u32,
                            oracle_exponent(g, s, n, spec.k(), spec.flavor()).unwrap(),
                            "{spec}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bounds() {
        let opts = EngineOptions::default();
        let r = compute_h1(&SurfaceSpec::pmk(4, 0, 3, 1).unwrap(), &opts).unwrap();
        assert_eq!(lower_bound(&r).unwrap(), 2);
        let r = compute_h1(&SurfaceSpec::full(3, 1, 2).unwrap(), &opts).unwrap();
        assert_eq!(lower_bound(&r).unwrap(), 2);
        let r = compute_h1(&SurfaceSpec::pm_plus(5, 1, 1).unwrap(), &opts).unwrap();
        assert_eq!(lower_bound(&r).unwrap(), 0);
    }

    #[test]
    fn altered_beta_fails_descent() {
        let spec = SurfaceSpec::pmk(4, 0, 2, 0).unwrap();
        let r = compute_h1(&spec, &EngineOptions::default()).unwrap();
        let bad = Functional { alpha: Alpha::Puncture(2), beta: Beta::DropLastGamma };
        assert!(matches!(lower_bound_with(&r, &[bad]), Err(CertifyError::DescentFailed { .. })));
        assert!(functionals_fit(&spec));
    }
}
