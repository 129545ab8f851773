use crosscap::catalog::{verify_catalog, Catalog, RelationBody};
use crosscap::certify::{descent_check, Alpha, Beta, Functional};
use crosscap::chains::boundary_consistency_failures;
use crosscap::engine::RelationSet;
use crosscap::surface::{Representation, SignVariant, SurfaceSpec, Word};

fn detected(rep: &Representation) -> bool {
    !rep.sanity_failures().is_empty() || !boundary_consistency_failures(rep).is_empty()
}

#[test]
fn corrected_signs_pass_everything() {
    for spec in [SurfaceSpec::pmk(3, 3, 2, 0).unwrap(), SurfaceSpec::full(4, 2, 3).unwrap(), SurfaceSpec::pm_plus(7, 1, 3).unwrap()] {
        let rep = Representation::new(&spec);
        assert!(!detected(&rep), "{spec}");
        assert!(verify_catalog(&rep, &Catalog::build(&rep)).is_clean(), "{spec}");
    }
}

#[test]
fn printed_boundary_twist_is_caught() {
    // the printed and corrected e_j differ once j ≥ 4, so four twists are needed
    let spec = SurfaceSpec::pmk(3, 3, 2, 0).unwrap();
    assert!(detected(&Representation::with_variant(&spec, SignVariant::PrintedBoundaryTwist)));
}

#[test]
fn printed_braid_is_caught() {
    let spec = SurfaceSpec::full(3, 2, 2).unwrap();
    let rep = Representation::with_variant(&spec, SignVariant::PrintedBraid);
    assert!(detected(&rep));
    assert!(boundary_consistency_failures(&rep).iter().any(|f| f.contains("s_{1,")));
}

#[test]
fn flipped_braid_diagonal_breaks_involution() {
    let spec = SurfaceSpec::full(5, 1, 3).unwrap();
    let rep = Representation::with_variant(&spec, SignVariant::FlippedBraidDiagonal);
    assert!(rep.sanity_failures().iter().any(|f| f.contains("s2") && f.contains('²')), "{:?}", rep.sanity_failures());
}

#[test]
fn printed_signs_break_catalog_relations() {
    let spec = SurfaceSpec::full(3, 2, 3).unwrap();
    for variant in [SignVariant::PrintedBoundaryTwist, SignVariant::PrintedBraid] {
        let rep = Representation::with_variant(&spec, variant);
        let report = verify_catalog(&rep, &Catalog::build(&rep));
        assert!(!report.is_clean(), "{variant:?}");
    }
}

#[test]
fn corrupted_word_relation_is_the_only_failure() {
    let spec = SurfaceSpec::pmk(4, 1, 2, 1).unwrap();
    let rep = Representation::new(&spec);
    let mut catalog = Catalog::build(&rep);
    let target = catalog.entries.iter_mut().find(|e| matches!(e.body, RelationBody::Word { .. }) && e.id == "R2").unwrap();
    let label = target.label();
    if let RelationBody::Word { rhs, .. } = &mut target.body {
        *rhs = rhs.concat(&"a1".parse::<Word>().unwrap());
    }
    let report = verify_catalog(&rep, &catalog);
    assert_eq!(report.failures.len(), 1);
    assert_eq!(report.failures[0].label, label);
}

#[test]
fn altered_beta_does_not_descend() {
    let spec = SurfaceSpec::pmk(5, 1, 3, 0).unwrap();
    let rep = Representation::new(&spec);
    let relations = RelationSet::assemble(&rep, &Catalog::build(&rep)).unwrap();
    let good = Functional::new(Alpha::Puncture(3));
    assert!(descent_check(&rep, &relations, &good).passed());
    let bad = Functional { alpha: Alpha::Puncture(3), beta: Beta::DropLastGamma };
    let report = descent_check(&rep, &relations, &bad);
    assert!(!report.passed());
    assert!(report.failures.iter().any(|f| f.contains("β ∘ ψ")));
}
