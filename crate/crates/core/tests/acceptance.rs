//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use crosscap::catalog::{verify_catalog, Catalog, RelationBody};
use crosscap::certify::{descent_check, functionals, lower_bound, oracle, oracle_exponent};
use crosscap::chains::{
    boundary1, boundary_consistency_failures, cycle_lattice, kernel_generators, rewrite_all, same_lattice, ChainSpace, ChainVector,
};
use crosscap::engine::{candidate_classes, compute_h1, express_class, EngineOptions, H1Result, RelationSet};
use crosscap::surface::{Flavor, Representation, SignVariant, SurfaceSpec};
use std::time::{Duration, Instant};

/// Per-spec budget for criteria 1 and 2.
const PER_SPEC_LIMIT: Duration = Duration::from_secs(2);
/// Budget for the whole grid.
const GRID_LIMIT: Duration = Duration::from_secs(300);
/// Samples per spec: sample 0 plus 16 seeded ones.
const SAMPLES: usize = 17;
const SEED: u64 = 0;

struct Run {
    spec: SurfaceSpec,
    result: Result<H1Result, String>,
    elapsed: Duration,
}

fn grid() -> Vec<SurfaceSpec> {
    let mut out = Vec::new();
    for g in 3..=9 {
        for s in 0..=3 {
            for n in 0..=3 {
                if s + n == 0 {
                    continue;
                }
                out.push(SurfaceSpec::pm_plus(g, s, n).unwrap());
                for k in 0..=n {
                    out.push(SurfaceSpec::pmk(g, s, n, k).unwrap());
                }
                if n >= 2 {
                    out.push(SurfaceSpec::full(g, s, n).unwrap());
                }
            }
        }
    }
    out
}

struct Line {
    ok: bool,
    detail: String,
}

fn report(id: usize, title: &str, line: Line) -> bool {
    println!("criterion {id} [{}] {title}: {}", if line.ok { "PASS" } else { "FAIL" }, line.detail);
    line.ok
}

fn grid_match(runs: &[&Run], grid_time: Duration) -> Line {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for r in runs {
        slowest = slowest.max(r.elapsed);
        let expected = oracle(&r.spec);
        match &r.result {
            Ok(h) => {
                let twos = h.invariants.torsion.iter().all(|d| *d == 2.into());
                if !twos || h.invariants.free_rank != 0 || h.invariants != expected {
                    bad.push(format!("{}: got {} want {expected}", r.spec, h.invariants));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", r.spec)),
        }
        if r.elapsed > PER_SPEC_LIMIT {
            bad.push(format!("{}: {:?} over the per-spec limit", r.spec, r.elapsed));
        }
    }
    if grid_time > GRID_LIMIT {
        bad.push(format!("grid took {grid_time:?}"));
    }
    Line {
        ok: bad.is_empty(),
        detail: format!(
            "{}/{} specs match the oracle, slowest {:.0} ms, grid {:.1} s{}",
            runs.len() - bad.len().min(runs.len()),
            runs.len(),
            slowest.as_secs_f64() * 1e3,
            grid_time.as_secs_f64(),
            first_few(&bad)
        ),
    }
}

fn first_few(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!("; {}", v.iter().take(3).cloned().collect::<Vec<_>>().join("; "))
    }
}

fn kernel_lists(specs: &[SurfaceSpec]) -> Line {
    let chosen: Vec<SurfaceSpec> = [
        (3, 1, 0, 0, Flavor::PmPlus),
        (3, 0, 2, 1, Flavor::Pmk),
        (3, 2, 2, 0, Flavor::Full),
        (4, 0, 3, 0, Flavor::Pmk),
        (4, 2, 1, 1, Flavor::Pmk),
        (4, 1, 3, 0, Flavor::Full),
        (5, 0, 2, 0, Flavor::Full),
        (5, 3, 0, 0, Flavor::PmPlus),
        (6, 1, 2, 2, Flavor::Pmk),
        (7, 0, 3, 1, Flavor::Pmk),
        (8, 2, 2, 0, Flavor::Full),
        (9, 3, 3, 3, Flavor::PmPlus),
    ]
    .iter()
    .map(|&(g, s, n, k, f)| SurfaceSpec::new(g, s, n, k, f).unwrap())
    .collect();
    debug_assert!(chosen.iter().all(|c| specs.contains(c)));
    let mut bad = Vec::new();
    for spec in &chosen {
        let rep = Representation::new(spec);
        let lattice = cycle_lattice(&rep);
        let listed: Vec<ChainVector> = kernel_generators(spec).into_iter().map(|(_, v)| v).collect();
        if !same_lattice(&lattice.space, &lattice.basis, &listed) {
            bad.push(spec.to_string());
        }
    }
    Line {
        ok: bad.is_empty(),
        detail: format!(
            "{}/{} specs (all three flavors) equal the listed lattice{}",
            chosen.len() - bad.len(),
            chosen.len(),
            first_few(&bad)
        ),
    }
}

fn catalog_soundness(specs: &[SurfaceSpec]) -> Line {
    let (mut words, mut vectors) = (0usize, 0usize);
    let mut bad = Vec::new();
    for spec in specs {
        let rep = Representation::new(spec);
        let space = ChainSpace::new(&rep);
        let catalog = Catalog::build(&rep);
        let report = verify_catalog(&rep, &catalog);
        for f in &report.failures {
            bad.push(format!("{spec} {}: {}", f.label, f.reason));
        }
        for e in &catalog.entries {
            if let RelationBody::Word { lhs, rhs } = &e.body {
                words += 1;
                match rewrite_all(&rep, lhs, rhs) {
                    Ok(vs) => {
                        for v in vs {
                            vectors += 1;
                            let cycle = space.contains(&v) && boundary1(&rep, &v).is_ok_and(|b| b.iter().all(|x| *x == 0.into()));
                            if !cycle {
                                bad.push(format!("{spec} {} rewrites outside the cycles", e.label()));
                            }
                        }
                    }
                    Err(x) => bad.push(format!("{spec} {}: {x}", e.label())),
                }
            }
        }
        if let Err(e) = RelationSet::assemble(&rep, &catalog) {
            bad.push(format!("{spec}: {e}"));
        }
    }
    Line {
        ok: bad.is_empty(),
        detail: format!(
            "{words} word relations and {vectors} rewritten vectors over {} specs, {} failures{}",
            specs.len(),
            bad.len(),
            first_few(&bad)
        ),
    }
}

fn sign_corrections(specs: &[SurfaceSpec]) -> Line {
    let mut bad = Vec::new();
    let mut caught = [0usize; 2];
    let mut altered = [0usize; 2];
    for spec in specs {
        let rep = Representation::new(spec);
        let problems = rep.sanity_failures().len() + boundary_consistency_failures(&rep).len();
        if problems > 0 {
            bad.push(format!("{spec}: corrected signs fail {problems} checks"));
        }
        for (slot, variant) in [SignVariant::PrintedBoundaryTwist, SignVariant::PrintedBraid].into_iter().enumerate() {
            let faulty = Representation::with_variant(spec, variant);
            let differs = rep.generators().iter().any(|&g| rep.matrix(g) != faulty.matrix(g));
            if !differs {
                continue;
            }
            altered[slot] += 1;
            if faulty.sanity_failures().is_empty() && boundary_consistency_failures(&faulty).is_empty() {
                bad.push(format!("{spec}: {variant:?} not detected"));
            } else {
                caught[slot] += 1;
            }
        }
    }
    let ok = bad.is_empty() && altered.iter().all(|&a| a > 0);
    Line {
        ok,
        detail: format!(
            "corrected signs clean on {} specs; printed e_j caught on {}/{}, printed s_(n-1) caught on {}/{}{}",
            specs.len(),
            caught[0],
            altered[0],
            caught[1],
            altered[1],
            first_few(&bad)
        ),
    }
}

fn sampling(runs: &[Run]) -> Line {
    let mut with_partials = 0;
    let mut bad = Vec::new();
    for r in runs {
        match &r.result {
            Ok(h) if h.sampling.kept_instances > 0 => {
                with_partials += 1;
                if h.sampling.evaluated != SAMPLES {
                    bad.push(format!("{}: only {} samples evaluated", r.spec, h.sampling.evaluated));
                }
            }
            Ok(_) => {}
            Err(e) if e.contains("ambiguity sample") => bad.push(format!("{}: {e}", r.spec)),
            Err(_) => {}
        }
    }
    Line {
        ok: bad.is_empty(),
        detail: format!("{with_partials} specs with partial relations, each stable over {SAMPLES} samples{}", first_few(&bad)),
    }
}

fn certificates(runs: &[Run]) -> Line {
    let mut bad = Vec::new();
    let mut checked = 0;
    for r in runs {
        let Ok(h) = &r.result else { continue };
        let spec = &r.spec;
        let rep = Representation::new(spec);
        for f in functionals(spec) {
            checked += 1;
            if let Some(reason) = descent_check(&rep, &h.relations, &f).failures.first() {
                bad.push(format!("{spec} {f}: {reason}"));
            }
        }
        let bound = match lower_bound(h) {
            Ok(b) => b,
            Err(e) => {
                bad.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let expected = match spec.flavor() {
            Flavor::Pmk => (spec.punctures() - spec.k()) as usize,
            Flavor::Full => 2,
            Flavor::PmPlus => 0,
        };
        let exponent = oracle_exponent(spec.genus(), spec.boundary(), spec.punctures(), spec.k(), spec.flavor()).unwrap() as usize;
        if bound != expected || bound > exponent {
            bad.push(format!("{spec}: bound {bound}, expected {expected}, oracle {exponent}"));
        }
    }
    Line {
        ok: bad.is_empty(),
        detail: format!("{checked} functionals descend; bounds n-k (pmk) and 2 (m), never above the oracle{}", first_few(&bad)),
    }
}

fn named_bases(runs: &[Run]) -> Line {
    let mut bad = Vec::new();
    for r in runs {
        let Ok(h) = &r.result else {
            bad.push(format!("{}: no result", r.spec));
            continue;
        };
        let candidates = candidate_classes(&r.spec);
        let rank = h.invariants.elementary_two_rank();
        if h.named_basis.len() != candidates.len() || rank != Some(candidates.len()) {
            bad.push(format!("{}: {} of {} candidates independent, group {}", r.spec, h.named_basis.len(), candidates.len(), h.invariants));
            continue;
        }
        for (i, c) in h.named_basis.iter().enumerate() {
            let mut unit = vec![0u8; candidates.len()];
            unit[i] = 1;
            if express_class(h, &c.chain) != Ok(Some(unit)) {
                bad.push(format!("{}: {} does not express as itself", r.spec, c.name));
            }
        }
    }
    Line {
        ok: bad.is_empty(),
        detail: format!(
            "{}/{} specs have their candidate list as a basis of H/2H{}",
            runs.len() - bad.len().min(runs.len()),
            runs.len(),
            first_few(&bad)
        ),
    }
}

fn main() {
    let specs = grid();
    let opts = EngineOptions { samples: SAMPLES, seed: SEED };
    let start = Instant::now();
    let runs: Vec<Run> = specs
        .iter()
        .map(|&spec| {
            let t = Instant::now();
            let result = compute_h1(&spec, &opts).map_err(|e| e.to_string());
            Run { spec, result, elapsed: t.elapsed() }
        })
        .collect();
    let grid_time = start.elapsed();

    let pm: Vec<&Run> = runs.iter().filter(|r| r.spec.flavor() != Flavor::Full).collect();
    let full: Vec<&Run> = runs.iter().filter(|r| r.spec.flavor() == Flavor::Full).collect();

    let results = [
        report(1, "pmk and pm+ grid equals the closed form", grid_match(&pm, grid_time)),
        report(2, "full mapping class group grid equals the closed form", grid_match(&full, grid_time)),
        report(3, "cycle lattice equals the listed kernel generators", kernel_lists(&specs)),
        report(4, "catalog soundness", catalog_soundness(&specs)),
        report(5, "sign corrections are forced", sign_corrections(&specs)),
        report(6, "sampling stability", sampling(&runs)),
        report(7, "certificates", certificates(&runs)),
        report(8, "named bases", named_bases(&runs)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
