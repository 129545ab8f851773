//! Assembles the relation lattice and computes
//! H₁(G; M) = K / R with K the cycle lattice and R the rewritten relations.
//!
//! K is a kernel, so it is saturated in ℤ^N and
//! K/R ≅ torsion(ℤ^N/R) ⊕ ℤ^(rank K − rank R). The quotient is therefore
//! reduced in ambient coordinates by [`SparseCokernel`].

use crate::catalog::{restricted_system, Catalog, RelationBody, UnknownSupport};
use crate::chains::{boundary1, boundary_matrix, cycle_sublattice, rewrite_all, ChainSpace, ChainVector};
use crate::intlin::gf2::{BitVec, Echelon};
use crate::intlin::{hermite_form, AbelianInvariants, LinearSystem, SparseCokernel};
use crate::surface::{Flavor, Generator, GeneratorKind, Representation, SurfaceError, SurfaceSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Number of ambiguity samples; sample 0 takes every unknown ambiguity
    /// to be zero, later ones draw random 0/1 combinations.
    pub samples: usize,
    pub seed: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { samples: 17, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("relation {label} does not rewrite to a cycle")]
    RelationOutsideKernel { label: String },
    #[error("relation {label}: the unknown part cannot have the prescribed boundary")]
    UnsolvablePartial { label: String },
    #[error("invariants depend on the ambiguity sample: {}", observed.iter().map(ToString::to_string).collect::<Vec<_>>().join(" vs "))]
    UnstableSampling { observed: Vec<AbelianInvariants> },
}

/// A partial relation after fixing one particular solution of the unknown.
#[derive(Debug, Clone)]
pub struct PartialInstance {
    pub label: String,
    /// exact part minus the particular unknown chain
    pub base: ChainVector,
    /// index into [`RelationSet::ambiguities`]
    pub ambiguity: usize,
    /// whether the instance survived the informativeness filter
    pub kept: bool,
}

#[derive(Debug, Clone)]
pub enum Ambiguity {
    /// Cycles on the coordinates of these kinds; basis computed on demand.
    Kinds(Vec<GeneratorKind>),
    Span(Vec<ChainVector>),
}

/// All relation vectors of a catalog, rewritten into the chain group.
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub exact: Vec<(String, ChainVector)>,
    pub partial: Vec<PartialInstance>,
    pub ambiguities: Vec<Ambiguity>,
}

impl RelationSet {
    /// Rewrites every entry and fixes a particular solution for each
    /// partial relation. Partial instances whose image away from the
    /// ambiguity coordinates is already implied (over ℚ) by earlier
    /// relations are marked as not kept.
    pub fn assemble(rep: &Representation, catalog: &Catalog) -> Result<RelationSet, EngineError> {
        let space = ChainSpace::new(rep);
        let mut exact = Vec::new();
        let mut partial = Vec::new();
        let mut ambiguities: Vec<Ambiguity> = Vec::new();
        let mut systems: BTreeMap<Vec<GeneratorKind>, (Vec<usize>, LinearSystem)> = BTreeMap::new();
        let is_cycle = |v: &ChainVector| space.contains(v) && boundary1(rep, v).is_ok_and(|b| b.iter().all(Zero::is_zero));

        for e in &catalog.entries {
            match &e.body {
                RelationBody::Word { lhs, rhs } => {
                    for (t, v) in rewrite_all(rep, lhs, rhs)?.into_iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let label = format!("{}@ξ{}", e.label(), t + 1);
                        if !is_cycle(&v) {
                            return Err(EngineError::RelationOutsideKernel { label });
                        }
                        exact.push((label, v));
                    }
                }
                RelationBody::Class(v) => {
                    if !is_cycle(v) {
                        return Err(EngineError::RelationOutsideKernel { label: e.label() });
                    }
                    exact.push((e.label(), v.clone()));
                }
                RelationBody::Partial(p) => {
                    let (particular, amb) = match &p.support {
                        UnknownSupport::Kinds(kinds) => {
                            let (cols, sys) = systems.entry(kinds.clone()).or_insert_with(|| restricted_system(rep, &space, kinds));
                            let x = sys.solve(&p.unknown_boundary).map_err(|_| EngineError::UnsolvablePartial { label: e.label() })?;
                            let mut c = ChainVector::zero();
                            for (j, xv) in x.iter().enumerate() {
                                if !xv.is_zero() {
                                    let (g, i) = space.coordinate(cols[j]);
                                    c.add_term(g, i, xv);
                                }
                            }
                            (c, Ambiguity::Kinds(kinds.clone()))
                        }
                        UnknownSupport::Span(vs) => {
                            if p.unknown_boundary.iter().any(|x| !x.is_zero()) {
                                return Err(EngineError::UnsolvablePartial { label: e.label() });
                            }
                            (ChainVector::zero(), Ambiguity::Span(vs.clone()))
                        }
                    };
                    let base = p.exact.minus(&particular);
                    if !is_cycle(&base) {
                        return Err(EngineError::RelationOutsideKernel { label: e.label() });
                    }
                    let ambiguity = match ambiguities.iter().position(|a| same_ambiguity(a, &amb)) {
                        Some(i) => i,
                        None => {
                            ambiguities.push(amb);
                            ambiguities.len() - 1
                        }
                    };
                    partial.push(PartialInstance { label: e.label(), base, ambiguity, kept: true });
                }
            }
        }
        let mut set = RelationSet { exact, partial, ambiguities };
        set.filter_informative();
        Ok(set)
    }

    /// For coordinate-supported ambiguities, a cycle is determined modulo
    /// the ambiguity lattice (over ℚ) by its coordinates outside the
    /// support. An instance is kept only if that projection is independent
    /// of the exact relations and of the instances kept before it.
    fn filter_informative(&mut self) {
        for (ai, amb) in self.ambiguities.iter().enumerate() {
            let Ambiguity::Kinds(kinds) = amb else { continue };
            let outside = |v: &ChainVector| v.project(|k| !kinds.contains(&k));
            let mut ech = RationalEchelon::default();
            for (_, v) in &self.exact {
                ech.insert(&outside(v));
            }
            for p in self.partial.iter_mut().filter(|p| p.ambiguity == ai) {
                p.kept = ech.insert(&outside(&p.base));
            }
        }
    }

    pub fn kept_partials(&self) -> impl Iterator<Item = &PartialInstance> {
        self.partial.iter().filter(|p| p.kept)
    }

    pub fn ambiguity_basis(&self, rep: &Representation, space: &ChainSpace, index: usize) -> Vec<ChainVector> {
        match &self.ambiguities[index] {
            Ambiguity::Kinds(kinds) => cycle_sublattice(rep, space, |k| kinds.contains(&k)),
            Ambiguity::Span(vs) => vs.clone(),
        }
    }
}

fn same_ambiguity(a: &Ambiguity, b: &Ambiguity) -> bool {
    match (a, b) {
        (Ambiguity::Kinds(x), Ambiguity::Kinds(y)) => x == y,
        (Ambiguity::Span(x), Ambiguity::Span(y)) => x == y,
        _ => false,
    }
}

/// Fraction-free row echelon over ℚ on sparse chain vectors.
#[derive(Debug, Default)]
struct RationalEchelon {
    rows: Vec<((Generator, usize), ChainVector)>,
}

impl RationalEchelon {
    /// Inserts `v`; returns whether it was independent.
    fn insert(&mut self, v: &ChainVector) -> bool {
        let mut r = v.clone();
        for (p, row) in &self.rows {
            let x = r.coeff(p.0, p.1);
            if x.is_zero() {
                continue;
            }
            let y = row.coeff(p.0, p.1);
            r = r.scaled(&y).minus(&row.scaled(&x));
            r = primitive(&r);
        }
        let pivot = r.terms().next().map(|(g, i, _)| (g, i));
        match pivot {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

fn primitive(v: &ChainVector) -> ChainVector {
    let mut g = BigInt::zero();
    for (_, _, x) in v.terms() {
        g = g.gcd(x);
    }
    if g.is_zero() || g == BigInt::from(1) {
        return v.clone();
    }
    let mut out = ChainVector::zero();
    for (gen, i, x) in v.terms() {
        out.add_term(gen, i, &(x / &g));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedClass {
    pub name: String,
    pub chain: ChainVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingReport {
    pub requested: usize,
    /// samples actually reduced (1 when there is no ambiguity to sample)
    pub evaluated: usize,
    pub partial_instances: usize,
    pub kept_instances: usize,
}

/// H/2H together with the relation images needed to express classes.
#[derive(Debug, Clone)]
struct Mod2Quotient {
    space: ChainSpace,
    echelon: Echelon,
    /// candidate index carried in the tag bits, per named class
    named_tags: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct H1Result {
    pub spec: SurfaceSpec,
    pub invariants: AbelianInvariants,
    pub cycle_rank: usize,
    pub relation_rank: usize,
    /// Classes from the candidate list, in order, that form a basis of
    /// H ⊗ ℤ₂ (with respect to the κ = 0 relations).
    pub named_basis: Vec<NamedClass>,
    pub sampling: SamplingReport,
    pub elapsed: Duration,
    pub relations: RelationSet,
    mod2: Mod2Quotient,
}

/// H₁ of the spec's group with the built-in catalog.
pub fn compute_h1(spec: &SurfaceSpec, opts: &EngineOptions) -> Result<H1Result, EngineError> {
    let rep = Representation::new(spec);
    let catalog = Catalog::build(&rep);
    compute_with_catalog(&rep, &catalog, opts)
}

pub fn compute_with_catalog(rep: &Representation, catalog: &Catalog, opts: &EngineOptions) -> Result<H1Result, EngineError> {
    let start = Instant::now();
    let spec = *rep.spec();
    let space = ChainSpace::new(rep);
    let n = space.len();
    let boundary_rank =
        hermite_form(&boundary_matrix(rep, &space, |_| true)).to_row_vectors().iter().filter(|r| r.iter().any(|x| !x.is_zero())).count();
    let cycle_rank = n - boundary_rank;

    let set = RelationSet::assemble(rep, catalog)?;
    let mut shared = SparseCokernel::new(n);
    for (_, v) in &set.exact {
        shared.push(space.to_sparse(v));
    }
    shared.eliminate_units();

    let kept: Vec<&PartialInstance> = set.kept_partials().collect();
    let reduce = |kappas: Option<&[ChainVector]>| {
        let mut s = shared.clone();
        for (k, p) in kept.iter().enumerate() {
            let row = match kappas {
                Some(ks) => p.base.minus(&ks[k]),
                None => p.base.clone(),
            };
            s.push(space.to_sparse(&row));
        }
        let (rank, torsion) = s.finish();
        (rank, AbelianInvariants { torsion, free_rank: cycle_rank - rank })
    };

    let (relation_rank, invariants) = reduce(None);
    let mut evaluated = 1;
    if !kept.is_empty() && opts.samples > 1 {
        let bases: Vec<Vec<ChainVector>> = (0..set.ambiguities.len()).map(|i| set.ambiguity_basis(rep, &space, i)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut observed = vec![invariants.clone()];
        for _ in 1..opts.samples {
            let kappas: Vec<ChainVector> = kept
                .iter()
                .map(|p| {
                    let mut k = ChainVector::zero();
                    for b in &bases[p.ambiguity] {
                        if rng.gen_bool(0.5) {
                            k.add_assign(b);
                        }
                    }
                    k
                })
                .collect();
            let (_, inv) = reduce(Some(&kappas));
            evaluated += 1;
            if !observed.contains(&inv) {
                observed.push(inv);
            }
        }
        if observed.len() > 1 {
            return Err(EngineError::UnstableSampling { observed });
        }
    }

    let candidates = candidate_classes(&spec);
    let mut echelon = Echelon::new(n, candidates.len());
    let to_bits = |v: &ChainVector| {
        let sparse = space.to_sparse(v);
        BitVec::from_integers(n, sparse.iter().map(|(c, x)| (*c, x)))
    };
    for (_, v) in &set.exact {
        echelon.insert(&to_bits(v), BitVec::zeros(candidates.len()));
    }
    for p in &kept {
        echelon.insert(&to_bits(&p.base), BitVec::zeros(candidates.len()));
    }
    let mut named_basis = Vec::new();
    let mut named_tags = Vec::new();
    let tag_len = candidates.len();
    for (ci, c) in candidates.into_iter().enumerate() {
        if !space.contains(&c.chain) {
            continue;
        }
        let mut tag = BitVec::zeros(tag_len);
        tag.flip(ci);
        if echelon.insert(&to_bits(&c.chain), tag) {
            named_basis.push(c);
            named_tags.push(ci);
        }
    }

    let sampling = SamplingReport { requested: opts.samples, evaluated, partial_instances: set.partial.len(), kept_instances: kept.len() };
    drop(kept);
    Ok(H1Result {
        spec,
        invariants,
        cycle_rank,
        relation_rank,
        named_basis,
        sampling,
        elapsed: start.elapsed(),
        relations: set,
        mod2: Mod2Quotient { space, echelon, named_tags },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpressError {
    #[error("the chain is not a cycle of this group")]
    NotACycle,
    #[error("the named classes do not span this class")]
    NotSpanned,
}

/// Image of a cycle in H ⊗ ℤ₂: `None` for zero, otherwise the 0/1
/// coordinates over [`H1Result::named_basis`].
pub fn express_class(result: &H1Result, c: &ChainVector) -> Result<Option<Vec<u8>>, ExpressError> {
    let q = &result.mod2;
    if !q.space.contains(c) {
        return Err(ExpressError::NotACycle);
    }
    let rep = Representation::new(&result.spec);
    if !boundary1(&rep, c).map_err(|_| ExpressError::NotACycle)?.iter().all(Zero::is_zero) {
        return Err(ExpressError::NotACycle);
    }
    let n = q.space.len();
    let sparse = q.space.to_sparse(c);
    let bits = BitVec::from_integers(n, sparse.iter().map(|(col, x)| (*col, x)));
    let (residual, tag) = q.echelon.reduce(&bits);
    if !residual.is_zero() {
        return Err(ExpressError::NotSpanned);
    }
    let coords: Vec<u8> = q.named_tags.iter().map(|&i| u8::from(tag.get(i))).collect();
    Ok(if coords.iter().all(|&x| x == 0) { None } else { Some(coords) })
}

/// Candidate generators of H, in the order they are tried when naming a
/// basis.
pub fn candidate_classes(spec: &SurfaceSpec) -> Vec<NamedClass> {
    use GeneratorKind::*;
    let g = spec.genus();
    let s = spec.boundary();
    let n = spec.punctures();
    let k = spec.k();
    let gen = Generator::new;
    let unit = |kind, j, i: usize| NamedClass {
        name: format!("{}_{{{j},{i}}}", GeneratorKind::letter(kind)),
        chain: ChainVector::unit(gen(kind, j), i),
    };
    let a11_a12 = || NamedClass { name: "a_{1,1}+a_{1,2}".into(), chain: ChainVector::from_terms([(gen(A, 1), 1, 1), (gen(A, 1), 2, 1)]) };
    let b_class = || NamedClass {
        name: "b_{1,1}-a_{1,1}-a_{3,3}".into(),
        chain: ChainVector::from_terms([(gen(B, 1), 1, 1), (gen(A, 1), 1, -1), (gen(A, 3), 3, -1)]),
    };
    let mut out = Vec::new();
    let slides: Vec<u32> = spec.slide_indices();
    let crosscap_span = match spec.flavor() {
        Flavor::Full => s,
        _ => s + k,
    };
    match g {
        3 => {
            out.push(a11_a12());
            if crosscap_span == 0 {
                out.push(unit(A, 1, 3));
                out.push(unit(U, 1, 3));
            } else {
                for i in 3..=2 + crosscap_span as usize {
                    out.push(unit(A, 1, i));
                }
                for i in 3..=2 + crosscap_span as usize {
                    out.push(unit(U, 1, i));
                }
            }
            for j in 1..s {
                out.push(unit(D, j, 1));
            }
        }
        4 => {
            out.push(unit(A, 1, 3));
            out.push(unit(U, 1, 3));
            out.push(b_class());
            for j in 1..s {
                out.push(unit(D, j, 1));
            }
        }
        5 | 6 => {
            out.push(unit(A, 1, 3));
            out.push(unit(U, 1, 3));
            out.push(b_class());
        }
        _ => {
            out.push(unit(U, 1, 3));
            out.push(b_class());
        }
    }
    for j in slides {
        out.push(unit(V, j, 1));
    }
    if spec.flavor() == Flavor::Full && n >= 2 {
        out.push(unit(S, 1, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: SurfaceSpec) -> H1Result {
        compute_h1(&spec, &EngineOptions::default()).unwrap()
    }

    #[test]
    fn small_cases() {
        let r = run(SurfaceSpec::pm_plus(3, 1, 0).unwrap());
        assert_eq!(r.invariants, AbelianInvariants::two_elementary(3));
        let r = run(SurfaceSpec::pmk(3, 0, 1, 0).unwrap());
        assert_eq!(r.invariants, AbelianInvariants::two_elementary(4));
        let r = run(SurfaceSpec::full(5, 0, 2).unwrap());
        assert_eq!(r.invariants, AbelianInvariants::two_elementary(5));
    }

    #[test]
    fn named_basis_matches_rank() {
        let r = run(SurfaceSpec::pmk(4, 1, 2, 0).unwrap());
        assert_eq!(r.named_basis.len(), r.invariants.elementary_two_rank().unwrap());
        for (i, c) in r.named_basis.iter().enumerate() {
            let coords = express_class(&r, &c.chain).unwrap().unwrap();
            let mut unit = vec![0u8; r.named_basis.len()];
            unit[i] = 1;
            assert_eq!(coords, unit);
        }
    }

    #[test]
    fn express_rejects_non_cycles() {
        let spec = SurfaceSpec::pmk(3, 1, 1, 0).unwrap();
        let r = run(spec);
        let c = ChainVector::unit(Generator::new(GeneratorKind::A, 1), 1);
        assert_eq!(express_class(&r, &c), Err(ExpressError::NotACycle));
        let zero_class =
            ChainVector::from_terms([(Generator::new(GeneratorKind::U, 1), 1, 1), (Generator::new(GeneratorKind::U, 1), 2, 1)]);
        assert_eq!(express_class(&r, &zero_class), Ok(None));
    }

    #[test]
    fn seeds_do_not_change_the_result() {
        let spec = SurfaceSpec::pmk(4, 1, 2, 0).unwrap();
        let a = compute_h1(&spec, &EngineOptions { samples: 5, seed: 1 }).unwrap();
        let b = compute_h1(&spec, &EngineOptions { samples: 5, seed: 99 }).unwrap();
        assert_eq!(a.invariants, b.invariants);
    }

    #[test]
    fn partial_filter_keeps_some() {
        let spec = SurfaceSpec::pmk(3, 0, 2, 1).unwrap();
        let r = run(spec);
        assert!(r.sampling.kept_instances > 0);
        assert!(r.sampling.kept_instances < r.sampling.partial_instances);
    }

    #[test]
    fn relation_must_be_a_cycle() {
        let spec = SurfaceSpec::pmk(3, 1, 0, 0).unwrap();
        let rep = Representation::new(&spec);
        let mut cat = Catalog::build(&rep);
        cat.entries.push(crate::catalog::RelationEntry {
            id: "X1".into(),
            instance: String::new(),
            body: RelationBody::Class(ChainVector::unit(Generator::new(GeneratorKind::A, 1), 1)),
        });
        let err = compute_with_catalog(&rep, &cat, &EngineOptions::default()).unwrap_err();
        assert_eq!(err, EngineError::RelationOutsideKernel { label: "X1".into() });
    }
}
