//! The relation catalog: word relations, imported class relations, and
//! partial relations whose unknown part is only known up to a lattice.

use crate::chains::{boundary1, boundary_matrix, ChainSpace, ChainVector};
use crate::intlin::{IntMatrix, LinearSystem};
use crate::surface::{Generator, GeneratorKind, Letter, ParseWordError, Representation, SurfaceSpec, Word};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// Where the unknown chain of a partial relation lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnknownSupport {
    /// Any chain on the coordinates of these generator kinds with the
    /// prescribed boundary; the ambiguity is the cycle lattice there.
    Kinds(Vec<GeneratorKind>),
    /// The span of these cycles (prescribed boundary is zero).
    Span(Vec<ChainVector>),
}

/// `exact − unknown = 0` where ∂̄₁(unknown) = `unknown_boundary`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialRelation {
    pub exact: ChainVector,
    pub unknown_boundary: Vec<BigInt>,
    pub support: UnknownSupport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationBody {
    Word { lhs: Word, rhs: Word },
    Class(ChainVector),
    Partial(PartialRelation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationEntry {
    /// Family id: R1 … R20, I1 … I7, or X1, X2, … for user relations.
    pub id: String,
    /// Instance parameters, e.g. `j=2` or `i=1,j=3,t=4`.
    pub instance: String,
    pub body: RelationBody,
}

impl RelationEntry {
    pub fn label(&self) -> String {
        if self.instance.is_empty() {
            self.id.clone()
        } else {
            format!("{}[{}]", self.id, self.instance)
        }
    }
}

impl fmt::Display for RelationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            RelationBody::Word { lhs, rhs } => write!(f, "{}: {} = {}", self.label(), lhs, rhs),
            RelationBody::Class(v) => write!(f, "{}: {} = 0", self.label(), v),
            RelationBody::Partial(p) => write!(f, "{}: {} = (unknown)", self.label(), p.exact),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub spec: SurfaceSpec,
    pub entries: Vec<RelationEntry>,
}

impl Catalog {
    pub fn build(rep: &Representation) -> Catalog {
        let mut b = Builder { rep, spec: *rep.spec(), entries: Vec::new() };
        b.word_relations();
        b.imports();
        b.partials();
        Catalog { spec: b.spec, entries: b.entries }
    }

    pub fn ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = Vec::new();
        for e in &self.entries {
            if ids.last() != Some(&e.id.as_str()) {
                ids.push(&e.id);
            }
        }
        ids
    }

    pub fn by_id<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a RelationEntry> + 'a {
        self.entries.iter().filter(move |e| e.id == id)
    }

    pub fn without(&self, id: &str) -> Catalog {
        Catalog { spec: self.spec, entries: self.entries.iter().filter(|e| e.id != id).cloned().collect() }
    }

    /// Appends user relations as X1, X2, …
    pub fn extend_words(&mut self, relations: &[(Word, Word)]) {
        let start = self.entries.iter().filter(|e| e.id.starts_with('X')).count();
        for (n, (lhs, rhs)) in relations.iter().enumerate() {
            self.entries.push(RelationEntry {
                id: format!("X{}", start + n + 1),
                instance: String::new(),
                body: RelationBody::Word { lhs: lhs.clone(), rhs: rhs.clone() },
            });
        }
    }
}

/// Catalog for `spec` with the corrected representation.
pub fn build_catalog(spec: &SurfaceSpec) -> Catalog {
    Catalog::build(&Representation::new(spec))
}

struct Builder<'a> {
    rep: &'a Representation,
    spec: SurfaceSpec,
    entries: Vec<RelationEntry>,
}

fn gen(k: GeneratorKind, i: u32) -> Generator {
    Generator::new(k, i)
}

fn w(letters: &[(GeneratorKind, u32)]) -> Word {
    Word::from_letters(letters.iter().map(|&(k, i)| Letter::pos(gen(k, i))).collect())
}

impl Builder<'_> {
    fn word(&mut self, id: &str, instance: String, lhs: Word, rhs: Word) {
        self.entries.push(RelationEntry { id: id.into(), instance, body: RelationBody::Word { lhs, rhs } });
    }

    fn class(&mut self, id: &str, instance: String, v: ChainVector) {
        self.entries.push(RelationEntry { id: id.into(), instance, body: RelationBody::Class(v) });
    }

    fn word_relations(&mut self) {
        use GeneratorKind::*;
        let sp = self.spec;
        let (g, s, n) = (sp.genus(), sp.boundary(), sp.punctures());
        let twists = sp.boundary_twists();
        for j in 1..g.saturating_sub(1) {
            self.word("R1", format!("j={j}"), w(&[(A, j), (A, j + 1), (A, j)]), w(&[(A, j + 1), (A, j), (A, j + 1)]));
        }
        for j in 1..=twists {
            self.word("R2", format!("j={j}"), w(&[(A, 1), (E, j)]), w(&[(E, j), (A, 1)]));
        }
        for j in 1..=twists {
            self.word("R3", format!("j={j}"), w(&[(A, 2), (E, j), (A, 2)]), w(&[(E, j), (A, 2), (E, j)]));
        }
        if g <= 4 {
            for j in 1..g {
                for k in 1..s {
                    self.word("R4", format!("j={j},k={k}"), w(&[(A, j), (D, k)]), w(&[(D, k), (A, j)]));
                }
            }
            for k in 1..s {
                self.word("R5", format!("k={k}"), w(&[(U, 1), (D, k)]), w(&[(D, k), (U, 1)]));
            }
            for j in 1..=twists {
                for k in 1..s {
                    self.word("R6", format!("j={j},k={k}"), w(&[(E, j), (D, k)]), w(&[(D, k), (E, j)]));
                }
            }
        }
        if g == 3 {
            let lhs = w(&[(U, 1), (E, s + n)]).pow(2);
            let rhs = w(&[(A, 1), (A, 2)]).pow(6);
            self.word("R7", String::new(), lhs, rhs);
        }
        if g >= 4 {
            for j in 1..=twists {
                self.word("R8", format!("j={j}"), w(&[(E, j), (A, 3)]), w(&[(A, 3), (E, j)]));
            }
            for j in 1..=2 {
                self.word("R9", format!("j={j}"), w(&[(U, j), (U, j + 1), (U, j)]), w(&[(U, j + 1), (U, j), (U, j + 1)]));
            }
            for j in 1..=twists {
                self.word("R10", format!("j={j}"), w(&[(E, j), (U, 3)]), w(&[(U, 3), (E, j)]));
            }
            for j in 1..=twists {
                self.word("R11", format!("j={j}"), w(&[(E, j), (B, 1)]), w(&[(B, 1), (E, j)]));
            }
        }
        for j in sp.slide_indices() {
            self.word("R12", format!("j={j}"), w(&[(A, 1), (V, j)]), w(&[(V, j), (A, 1)]));
        }
        for j in sp.slide_indices() {
            self.word("R13", format!("j={j}"), w(&[(U, 1), (V, j)]), w(&[(V, j), (U, 1)]));
        }
        if sp.flavor() == crate::surface::Flavor::Full {
            for j in 1..n {
                for i in (1..=twists).filter(|&i| i != s + j) {
                    self.word("R16", format!("i={i},j={j}"), w(&[(E, i), (S, j)]), w(&[(S, j), (E, i)]));
                }
            }
            for j in 1..n {
                for i in 1..g {
                    self.word("R17", format!("i={i},j={j}"), w(&[(S, j), (A, i)]), w(&[(A, i), (S, j)]));
                }
            }
            for j in 1..n.saturating_sub(1) {
                self.word("R18", format!("j={j}"), w(&[(S, j), (S, j + 1), (S, j)]), w(&[(S, j + 1), (S, j), (S, j + 1)]));
            }
            for j in 1..n {
                self.word("R19", format!("j={j}"), w(&[(S, j), (U, 1)]), w(&[(U, 1), (S, j)]));
            }
            for j in 1..n {
                let lhs = w(&[(E, s + j - 1), (E, s + j + 1), (S, j)]);
                let rhs = w(&[(E, s + j), (S, j), (S, j), (S, j), (E, s + j)]);
                self.word("R20", format!("j={j}"), lhs, rhs);
            }
        }
    }

    fn imports(&mut self) {
        use GeneratorKind::*;
        let g = self.spec.genus();
        let gu = g as usize;
        let a = |j| gen(A, j);
        let a13 = ChainVector::unit(a(1), 3);
        let two = BigInt::from(2);
        let k1: Vec<(u32, usize)> =
            (1..g).flat_map(|j| (1..=gu).filter(move |&i| i != j as usize && i != j as usize + 1).map(move |i| (j, i))).collect();
        for &(j, i) in &k1 {
            if (j, i) != (1, 3) {
                self.class("I1", format!("j={j},i={i}"), ChainVector::unit(a(j), i).minus(&a13));
            }
        }
        self.class("I1", "order".into(), a13.scaled(&two));
        if g >= 7 {
            self.class("I1", "trivial".into(), a13.clone());
        }

        let k2 = |j: u32| ChainVector::from_terms([(a(j), j as usize, 1), (a(j), j as usize + 1, 1)]);
        for j in 2..g {
            self.class("I2", format!("j={j}"), k2(j).minus(&k2(1)));
        }
        self.class("I2", "order".into(), k2(1).scaled(&two));
        if g >= 4 {
            self.class("I2", "trivial".into(), k2(1));
        }

        let u1 = gen(U, 1);
        let u13 = ChainVector::unit(u1, 3);
        for i in 4..=gu {
            self.class("I3", format!("i={i}"), ChainVector::unit(u1, i).minus(&u13));
        }
        self.class("I3", "order".into(), u13.scaled(&two));
        self.class("I4", String::new(), ChainVector::from_terms([(u1, 1, 1), (u1, 2, 1)]));

        if g >= 5 {
            let span: Vec<ChainVector> = k1.iter().map(|&(j, i)| ChainVector::unit(a(j), i)).collect();
            for i in 5..=gu {
                self.entries.push(RelationEntry {
                    id: "I5".into(),
                    instance: format!("i={i}"),
                    body: RelationBody::Partial(PartialRelation {
                        exact: ChainVector::unit(gen(B, 1), i),
                        unknown_boundary: vec![BigInt::zero(); self.spec.dim()],
                        support: UnknownSupport::Span(span.clone()),
                    }),
                });
            }
        }
        if g >= 4 {
            let b = gen(B, 1);
            self.class("I6", "i=2".into(), ChainVector::from_terms([(b, 2, 1), (b, 1, 1)]));
            self.class("I6", "i=4".into(), ChainVector::from_terms([(b, 4, 1), (b, 1, 1)]));
            self.class("I6", "i=3".into(), ChainVector::from_terms([(b, 3, 1), (b, 1, -1)]));
            self.class("I7", String::new(), ChainVector::from_terms([(b, 1, 2), (a(1), 1, -2), (a(3), 3, -2)]));
        }
    }

    /// x v_j = v_j Y with Y ∈ PM⁺ unknown, ψ(Y) = ψ(v_j)⁻¹ ψ(x) ψ(v_j).
    fn partials(&mut self) {
        use GeneratorKind::*;
        let d = self.spec.dim();
        let rep = self.rep;
        for j in self.spec.slide_indices() {
            let v = gen(V, j);
            let v_inv = rep.inverse_matrix(v).expect("slide present");
            let v_mat = rep.matrix(v).expect("slide present");
            let families: Vec<(&str, Generator)> = (1..self.spec.genus())
                .map(|i| ("R14", gen(A, i)))
                .chain((1..=self.spec.boundary_twists()).map(|i| ("R15", gen(E, i))))
                .collect();
            for (id, x) in families {
                let x_inv = rep.inverse_matrix(x).expect("generator present");
                let y_inv = v_inv.mul_matrix(x_inv).mul_matrix(v_mat);
                let y_inv_minus_i = minus_identity(&y_inv);
                let x_inv_minus_i = minus_identity(x_inv);
                for t in 1..=d {
                    let mut exact = ChainVector::unit(x, t);
                    exact.add_tensor(v, &x_inv_minus_i.column(t - 1), &BigInt::from(1));
                    let target = y_inv_minus_i.mul_vec(&v_inv.column(t - 1));
                    self.entries.push(RelationEntry {
                        id: id.into(),
                        instance: format!("i={},j={j},t={t}", x.index),
                        body: RelationBody::Partial(PartialRelation {
                            exact,
                            unknown_boundary: target,
                            support: UnknownSupport::Kinds(GeneratorKind::PM_PLUS.to_vec()),
                        }),
                    });
                }
            }
        }
    }
}

fn minus_identity(m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        out[(i, i)] -= 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogFailure {
    pub label: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatalogReport {
    pub checked: usize,
    pub failures: Vec<CatalogFailure>,
}

impl CatalogReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Necessary-condition checks on every entry: word relations hold under ψ,
/// class relations are cycles, partial boundaries are consistent and
/// solvable inside their support.
pub fn verify_catalog(rep: &Representation, catalog: &Catalog) -> CatalogReport {
    let space = ChainSpace::new(rep);
    let mut report = CatalogReport::default();
    let mut kinds_solver: Option<(Vec<GeneratorKind>, Vec<usize>, LinearSystem)> = None;
    for e in &catalog.entries {
        report.checked += 1;
        let mut fail = |reason: String| report.failures.push(CatalogFailure { label: e.label(), reason });
        match &e.body {
            RelationBody::Word { lhs, rhs } => match (rep.evaluate_expanded(lhs), rep.evaluate_expanded(rhs)) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(_), Ok(_)) => fail("ψ(lhs) ≠ ψ(rhs)".into()),
                (Err(x), _) | (_, Err(x)) => fail(x.to_string()),
            },
            RelationBody::Class(v) => {
                if !space.contains(v) {
                    fail("uses a coordinate outside the chain group".into());
                } else if !boundary1(rep, v).expect("coordinates checked").iter().all(Zero::is_zero) {
                    fail("not a cycle".into());
                }
            }
            RelationBody::Partial(p) => {
                match boundary1(rep, &p.exact) {
                    Ok(b) if b == p.unknown_boundary => {}
                    Ok(_) => fail("boundary of the exact part differs from the prescribed boundary".into()),
                    Err(x) => fail(x.to_string()),
                }
                match &p.support {
                    UnknownSupport::Span(vs) => {
                        if p.unknown_boundary.iter().any(|x| !x.is_zero()) {
                            fail("span support needs a zero boundary".into());
                        }
                        for v in vs {
                            if !space.contains(v) || !boundary1(rep, v).is_ok_and(|b| b.iter().all(Zero::is_zero)) {
                                fail(format!("ambiguity generator {v} is not a cycle"));
                            }
                        }
                    }
                    UnknownSupport::Kinds(kinds) => {
                        if kinds_solver.as_ref().is_none_or(|(k, _, _)| k != kinds) {
                            let (cols, sys) = restricted_system(rep, &space, kinds);
                            kinds_solver = Some((kinds.clone(), cols, sys));
                        }
                        let (_, _, sys) = kinds_solver.as_ref().expect("just built");
                        if sys.solve(&p.unknown_boundary).is_err() {
                            fail("prescribed boundary is not attained inside the support".into());
                        }
                    }
                }
            }
        }
    }
    report
}

/// ∂̄₁ restricted to the coordinates of `kinds`, factored; returns the
/// chosen columns of `space` with the system.
pub(crate) fn restricted_system(rep: &Representation, space: &ChainSpace, kinds: &[GeneratorKind]) -> (Vec<usize>, LinearSystem) {
    let cols: Vec<usize> = (0..space.len()).filter(|&c| kinds.contains(&space.coordinate(c).0.kind)).collect();
    let full = boundary_matrix(rep, space, |k| kinds.contains(&k));
    let mut m = IntMatrix::zeros(rep.dim(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for r in 0..rep.dim() {
            m[(r, j)] = full[(r, c)].clone();
        }
    }
    (cols, LinearSystem::new(&m))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationFileError {
    #[error("line {line}: expected `lhs = rhs`")]
    MissingEquals { line: usize },
    #[error("line {line}: {source}")]
    Word { line: usize, source: ParseWordError },
}

/// Parses one relation per line, `lhs = rhs`, letters like `a1 a2 u1^-1`.
/// Either side may be `1`. Blank lines and `#` comments are skipped; a
/// line without `=` is an error.
pub fn parse_relations(text: &str) -> Result<Vec<(Word, Word)>, RelationFileError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (l, r) = body.split_once('=').ok_or(RelationFileError::MissingEquals { line })?;
        let lhs: Word = l.parse().map_err(|source| RelationFileError::Word { line, source })?;
        let rhs: Word = r.parse().map_err(|source| RelationFileError::Word { line, source })?;
        out.push((lhs, rhs));
    }
    Ok(out)
}
