use crosscap::catalog::Catalog;
use crosscap::certify::{lower_bound, oracle_exponent, CertifyError};
use crosscap::engine::{compute_with_catalog, EngineError, EngineOptions};
use crosscap::surface::{Representation, SurfaceError, SurfaceSpec, Word};
use serde::{Deserialize, Serialize};

/// One computed spec. Field order is the JSON and CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub genus: u32,
    pub boundary: u32,
    pub punctures: u32,
    pub k: u32,
    pub flavor: String,
    pub torsion: Vec<u64>,
    pub free_rank: usize,
    pub generators: Vec<String>,
    pub lower_bound: usize,
    pub oracle: u32,
    #[serde(rename = "match")]
    pub matches: bool,
    pub samples: usize,
    pub seed: u64,
    pub ms: u64,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub engine: EngineOptions,
    /// Report elapsed time; off gives byte-identical output across runs.
    pub timing: bool,
    /// Extra word relations appended to the catalog.
    pub extra: Vec<(Word, Word)>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Spec(#[from] SurfaceError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("a torsion coefficient does not fit in 64 bits")]
    Overflow,
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Spec(_) | RunError::Engine(EngineError::Surface(_)) => 2,
            RunError::Engine(EngineError::UnstableSampling { .. }) => 3,
            _ => 1,
        }
    }
}

pub fn run_spec(spec: &SurfaceSpec, opts: &RunOptions) -> Result<RunRecord, RunError> {
    let rep = Representation::new(spec);
    let mut catalog = Catalog::build(&rep);
    catalog.extend_words(&opts.extra);
    let result = compute_with_catalog(&rep, &catalog, &opts.engine)?;
    let bound = lower_bound(&result)?;
    let oracle = oracle_exponent(spec.genus(), spec.boundary(), spec.punctures(), spec.k(), spec.flavor())?;
    let inv = &result.invariants;
    Ok(RunRecord {
        genus: spec.genus(),
        boundary: spec.boundary(),
        punctures: spec.punctures(),
        k: spec.k(),
        flavor: spec.flavor().as_str().to_string(),
        torsion: inv.torsion_u64().ok_or(RunError::Overflow)?,
        free_rank: inv.free_rank,
        generators: result.named_basis.iter().map(|c| c.name.clone()).collect(),
        lower_bound: bound,
        oracle,
        matches: inv.elementary_two_rank() == Some(oracle as usize),
        samples: opts.engine.samples,
        seed: opts.engine.seed,
        ms: if opts.timing { result.elapsed.as_millis() as u64 } else { 0 },
    })
}

impl RunRecord {
    pub fn group(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == d).count();
            parts.push(if run == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
