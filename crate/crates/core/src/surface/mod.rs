//! Surface parameters, mapping-class generators, words, and the integral
//! representation ψ on H₁(N; ℤ).

mod representation;
mod word;

pub use representation::{Representation, SignVariant};
pub use word::{Letter, ParseWordError, Word};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("invalid surface: {0}")]
    SpecInvalid(String),
    #[error("letter {0} is not a generator of this group")]
    UnknownLetter(Letter),
    #[error("derived word {0} is undefined here")]
    UnknownDerived(String),
}

/// Which subgroup of the mapping class group is being studied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// PM⁺(N): pure, preserving puncture orientations.
    PmPlus,
    /// PM^k(N): pure, preserving the orientation of the first k punctures.
    Pmk,
    /// M(N): the full mapping class group.
    Full,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::PmPlus => "pm+",
            Flavor::Pmk => "pmk",
            Flavor::Full => "m",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Flavor {
    type Err = SurfaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pm+" | "pmplus" => Ok(Flavor::PmPlus),
            "pmk" => Ok(Flavor::Pmk),
            "m" | "full" => Ok(Flavor::Full),
            other => Err(SurfaceError::SpecInvalid(format!("unknown flavor {other:?}"))),
        }
    }
}

/// A nonorientable surface N of genus g with s boundary components and n
/// punctures, together with the group flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSpec {
    genus: u32,
    boundary: u32,
    punctures: u32,
    k: u32,
    flavor: Flavor,
}

impl SurfaceSpec {
    /// Validates the parameters. For [`Flavor::PmPlus`] `k` is forced to n;
    /// for [`Flavor::Full`] `k` is ignored and stored as 0.
    pub fn new(genus: u32, boundary: u32, punctures: u32, k: u32, flavor: Flavor) -> Result<Self, SurfaceError> {
        if genus < 3 {
            return Err(SurfaceError::SpecInvalid(format!("genus must be at least 3, got {genus}")));
        }
        if boundary + punctures == 0 {
            return Err(SurfaceError::SpecInvalid("need at least one boundary component or puncture".into()));
        }
        let k = match flavor {
            Flavor::PmPlus => punctures,
            Flavor::Full => {
                if punctures < 2 {
                    return Err(SurfaceError::SpecInvalid(format!("the full group needs n >= 2, got {punctures}")));
                }
                0
            }
            Flavor::Pmk => {
                if k > punctures {
                    return Err(SurfaceError::SpecInvalid(format!("k = {k} exceeds n = {punctures}")));
                }
                k
            }
        };
        Ok(SurfaceSpec { genus, boundary, punctures, k, flavor })
    }

    pub fn pm_plus(genus: u32, boundary: u32, punctures: u32) -> Result<Self, SurfaceError> {
        Self::new(genus, boundary, punctures, punctures, Flavor::PmPlus)
    }

    pub fn pmk(genus: u32, boundary: u32, punctures: u32, k: u32) -> Result<Self, SurfaceError> {
        Self::new(genus, boundary, punctures, k, Flavor::Pmk)
    }

    pub fn full(genus: u32, boundary: u32, punctures: u32) -> Result<Self, SurfaceError> {
        Self::new(genus, boundary, punctures, 0, Flavor::Full)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Rank of H₁(N; ℤ): d = g + s + n − 1.
    pub fn dim(&self) -> usize {
        (self.genus + self.boundary + self.punctures - 1) as usize
    }

    /// Number of boundary twists e₁ … e_{s+n−1}.
    pub fn boundary_twists(&self) -> u32 {
        self.boundary + self.punctures - 1
    }

    /// Position of γ_i (1-based) in the basis.
    pub fn gamma(&self, i: u32) -> usize {
        debug_assert!((1..=self.genus).contains(&i));
        (i - 1) as usize
    }

    /// Position of δ_i (1-based) in the basis.
    pub fn delta(&self, i: u32) -> usize {
        debug_assert!((1..=self.boundary_twists()).contains(&i));
        (self.genus + i - 1) as usize
    }

    /// Indices j of the puncture slides v_j present in the group.
    pub fn slide_indices(&self) -> Vec<u32> {
        match self.flavor {
            Flavor::PmPlus => vec![],
            Flavor::Pmk => (self.k + 1..=self.punctures).collect(),
            Flavor::Full => vec![self.punctures],
        }
    }

    /// The generating set, in chain-coordinate order
    /// a, u, e, d, b, v, s.
    pub fn generators(&self) -> Vec<Generator> {
        use GeneratorKind::*;
        let mut out = Vec::new();
        out.extend((1..self.genus).map(|i| Generator::new(A, i)));
        out.push(Generator::new(U, 1));
        out.extend((1..=self.boundary_twists()).map(|i| Generator::new(E, i)));
        if self.genus <= 4 {
            out.extend((1..self.boundary).map(|i| Generator::new(D, i)));
        }
        if self.genus >= 4 {
            out.push(Generator::new(B, 1));
        }
        out.extend(self.slide_indices().into_iter().map(|j| Generator::new(V, j)));
        if self.flavor == Flavor::Full {
            out.extend((1..self.punctures).map(|i| Generator::new(S, i)));
        }
        out
    }

    pub fn has_generator(&self, g: Generator) -> bool {
        use GeneratorKind::*;
        let i = g.index;
        match g.kind {
            A => (1..self.genus).contains(&i),
            U => i == 1,
            E => (1..=self.boundary_twists()).contains(&i),
            D => self.genus <= 4 && (1..self.boundary).contains(&i),
            B => self.genus >= 4 && i == 1,
            V => self.slide_indices().contains(&i),
            S => self.flavor == Flavor::Full && (1..self.punctures).contains(&i),
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, s={}, n={}", self.genus, self.boundary, self.punctures)?;
        if self.flavor == Flavor::Pmk {
            write!(f, ", k={}", self.k)?;
        }
        write!(f, ", {})", self.flavor)
    }
}

/// Generator families: crosscap transpositions a, u; boundary twists e;
/// boundary slides d; the twist b; puncture slides v; elementary braids s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    A,
    U,
    E,
    D,
    B,
    V,
    S,
}

impl GeneratorKind {
    pub fn letter(self) -> char {
        match self {
            GeneratorKind::A => 'a',
            GeneratorKind::U => 'u',
            GeneratorKind::E => 'e',
            GeneratorKind::D => 'd',
            GeneratorKind::B => 'b',
            GeneratorKind::V => 'v',
            GeneratorKind::S => 's',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'a' => GeneratorKind::A,
            'u' => GeneratorKind::U,
            'e' => GeneratorKind::E,
            'd' => GeneratorKind::D,
            'b' => GeneratorKind::B,
            'v' => GeneratorKind::V,
            's' => GeneratorKind::S,
            _ => return None,
        })
    }

    /// Kinds generating PM⁺(N).
    pub const PM_PLUS: [GeneratorKind; 5] = [GeneratorKind::A, GeneratorKind::U, GeneratorKind::E, GeneratorKind::D, GeneratorKind::B];
}

/// A generator symbol such as `a2` or `v3` (index is 1-based). Symbols
/// whose index is outside the generating set (`u3`, `e0`, `e_{s+n}`) are
/// derived letters and get expanded by [`expand_derived`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub index: u32,
}

impl Generator {
    pub const fn new(kind: GeneratorKind, index: u32) -> Self {
        Generator { kind, index }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)
    }
}

/// Named derived elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Derived {
    /// u_i = a_{i−1} a_i u_{i−1}⁻¹ a_i⁻¹ a_{i−1}⁻¹ for 2 ≤ i ≤ g − 1.
    Transposition(u32),
    /// W = a₂ ⋯ a_{g−1} u_{g−1} ⋯ u₂.
    Conjugator,
    /// e_{s+n} = W a₁⁻¹ W⁻¹.
    LastBoundaryTwist,
    /// e₀ = a₁.
    ZeroTwist,
}

impl fmt::Display for Derived {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derived::Transposition(i) => write!(f, "u{i}"),
            Derived::Conjugator => f.write_str("W"),
            Derived::LastBoundaryTwist => f.write_str("e_{s+n}"),
            Derived::ZeroTwist => f.write_str("e0"),
        }
    }
}

/// The defining word of a derived element, in the generators of `spec`.
pub fn derived_word(d: Derived, spec: &SurfaceSpec) -> Result<Word, SurfaceError> {
    use GeneratorKind::*;
    let g = spec.genus();
    let pos = |k, i| Letter::pos(Generator::new(k, i));
    match d {
        Derived::Transposition(i) => {
            if i == 1 {
                return Ok(Word::from_letters(vec![pos(U, 1)]));
            }
            if !(2..g).contains(&i) {
                return Err(SurfaceError::UnknownDerived(d.to_string()));
            }
            let prev = derived_word(Derived::Transposition(i - 1), spec)?;
            let ai = Word::from_letters(vec![pos(A, i - 1), pos(A, i)]);
            Ok(ai.concat(&prev.inverse()).concat(&ai.inverse()).free_reduce())
        }
        Derived::Conjugator => {
            let mut w = Word::from_letters((2..g).map(|i| pos(A, i)).collect());
            for i in (2..g).rev() {
                w = w.concat(&derived_word(Derived::Transposition(i), spec)?);
            }
            Ok(w.free_reduce())
        }
        Derived::LastBoundaryTwist => {
            let w = derived_word(Derived::Conjugator, spec)?;
            let a1 = Word::from_letters(vec![Letter::neg(Generator::new(A, 1))]);
            Ok(w.concat(&a1).concat(&w.inverse()).free_reduce())
        }
        Derived::ZeroTwist => Ok(Word::from_letters(vec![pos(A, 1)])),
    }
}

/// Replaces derived letters (u_i for i ≥ 2, e₀, e_{s+n}) by their words.
pub fn expand_derived(w: &Word, spec: &SurfaceSpec) -> Result<Word, SurfaceError> {
    let mut out = Vec::new();
    for l in w.letters() {
        let g = l.generator;
        let derived = match g.kind {
            GeneratorKind::U if g.index >= 2 => Some(Derived::Transposition(g.index)),
            GeneratorKind::E if g.index == 0 => Some(Derived::ZeroTwist),
            GeneratorKind::E if g.index == spec.boundary() + spec.punctures() => Some(Derived::LastBoundaryTwist),
            _ => None,
        };
        match derived {
            Some(d) => {
                let dw = derived_word(d, spec)?;
                let dw = if l.inverse { dw.inverse() } else { dw };
                out.extend_from_slice(dw.letters());
            }
            None => out.push(*l),
        }
    }
    Ok(Word::from_letters(out))
}
