use crosscap::catalog::{verify_catalog, Catalog};
use crosscap::certify::{descent_check, functionals};
use crosscap::chains::{boundary_consistency_failures, cycle_lattice, kernel_generators, same_lattice};
use crosscap::engine::RelationSet;
use crosscap::surface::{Representation, SignVariant, SurfaceSpec};

/// A deliberate sign error, for checking that the suite notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// restore the printed signs of ψ(e_j)
    EPrinted,
    /// restore the printed signs of ψ(s_{n−1})
    SPrinted,
    /// flip the diagonal entry of ψ(s_{n−1})
    SFlip,
}

impl Fault {
    pub fn variant(self) -> SignVariant {
        match self {
            Fault::EPrinted => SignVariant::PrintedBoundaryTwist,
            Fault::SPrinted => SignVariant::PrintedBraid,
            Fault::SFlip => SignVariant::FlippedBraidDiagonal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    MatrixSanity,
    PrintedSignsRejected,
    BoundaryClosedForm,
    Catalog,
    KernelGenerators,
    RewrittenCycles,
    FunctionalDescent,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::MatrixSanity,
        Check::PrintedSignsRejected,
        Check::BoundaryClosedForm,
        Check::Catalog,
        Check::KernelGenerators,
        Check::RewrittenCycles,
        Check::FunctionalDescent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::MatrixSanity => "matrix sanity (det, inverse, involutions, parity)",
            Check::PrintedSignsRejected => "printed signs are rejected",
            Check::BoundaryClosedForm => "boundary matches the closed form",
            Check::Catalog => "catalog relations hold",
            Check::KernelGenerators => "cycle lattice equals the listed generators",
            Check::RewrittenCycles => "rewritten relations are cycles",
            Check::FunctionalDescent => "functionals descend",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub failures: Vec<String>,
}

/// Runs every check on one spec. With a fault the suite runs on the
/// altered representation and the printed-sign check is skipped.
pub fn verify_spec(spec: &SurfaceSpec, fault: Option<Fault>) -> Vec<CheckOutcome> {
    let variant = fault.map_or(SignVariant::Corrected, Fault::variant);
    let rep = Representation::with_variant(spec, variant);
    let mut out = Vec::new();
    let mut push = |check, failures| out.push(CheckOutcome { check, failures });

    push(Check::MatrixSanity, rep.sanity_failures());

    if fault.is_none() {
        let mut missed = Vec::new();
        for printed in [SignVariant::PrintedBoundaryTwist, SignVariant::PrintedBraid] {
            let alt = Representation::with_variant(spec, printed);
            let differs = rep.generators().iter().any(|&g| rep.matrix(g) != alt.matrix(g));
            if differs && alt.sanity_failures().is_empty() && boundary_consistency_failures(&alt).is_empty() {
                missed.push(format!("{printed:?} passes every check"));
            }
        }
        push(Check::PrintedSignsRejected, missed);
    }

    push(Check::BoundaryClosedForm, boundary_consistency_failures(&rep));

    let catalog = Catalog::build(&rep);
    push(Check::Catalog, verify_catalog(&rep, &catalog).failures.into_iter().map(|f| format!("{}: {}", f.label, f.reason)).collect());

    let lattice = cycle_lattice(&rep);
    let listed: Vec<_> = kernel_generators(spec).into_iter().map(|(_, v)| v).collect();
    let same = same_lattice(&lattice.space, &lattice.basis, &listed);
    push(Check::KernelGenerators, if same { vec![] } else { vec!["lattices differ".into()] });

    match RelationSet::assemble(&rep, &catalog) {
        Ok(relations) => {
            push(Check::RewrittenCycles, vec![]);
            let descent = functionals(spec).iter().flat_map(|f| descent_check(&rep, &relations, f).failures).collect();
            push(Check::FunctionalDescent, descent);
        }
        Err(e) => {
            push(Check::RewrittenCycles, vec![e.to_string()]);
            push(Check::FunctionalDescent, vec!["relations unavailable".into()]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_spec_passes() {
        let spec = SurfaceSpec::pmk(3, 0, 2, 1).unwrap();
        let out = verify_spec(&spec, None);
        assert_eq!(out.len(), Check::ALL.len());
        assert!(out.iter().all(|o| o.failures.is_empty()), "{out:?}");
    }

    #[test]
    fn flipped_braid_fails_involution() {
        let spec = SurfaceSpec::full(3, 1, 2).unwrap();
        let out = verify_spec(&spec, Some(Fault::SFlip));
        let sanity = out.iter().find(|o| o.check == Check::MatrixSanity).unwrap();
        assert!(sanity.failures.iter().any(|f| f.contains('²')));
    }
}
