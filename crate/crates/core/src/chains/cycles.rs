use super::{boundary_matrix, ChainSpace, ChainVector};
use crate::intlin::{hermite_form, IntMatrix, LinearSystem};
use crate::surface::{Flavor, Generator, GeneratorKind, Representation, SurfaceSpec};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

/// The cycle lattice K = ⟨X̄⟩ ∩ ker ∂̄₁ with a Hermite-canonical basis.
#[derive(Debug, Clone)]
pub struct CycleLattice {
    pub space: ChainSpace,
    pub basis: Vec<ChainVector>,
    /// `Some("K1")` etc. when a basis vector equals a listed generator.
    pub labels: Vec<Option<String>>,
}

impl CycleLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn cycle_lattice(rep: &Representation) -> CycleLattice {
    let space = ChainSpace::new(rep);
    let basis = cycle_sublattice(rep, &space, |_| true);
    let listed: HashMap<ChainVector, String> = kernel_generators(rep.spec()).into_iter().map(|(label, v)| (v, label)).collect();
    let labels = basis.iter().map(|b| listed.get(b).cloned()).collect();
    CycleLattice { space, basis, labels }
}

/// Cycles supported on the coordinates of generators whose kind satisfies
/// `keep`.
pub fn cycle_sublattice<F: Fn(GeneratorKind) -> bool>(rep: &Representation, space: &ChainSpace, keep: F) -> Vec<ChainVector> {
    let cols: Vec<usize> = (0..space.len()).filter(|&c| keep(space.coordinate(c).0.kind)).collect();
    let full = boundary_matrix(rep, space, &keep);
    let mut m = IntMatrix::zeros(rep.dim(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for r in 0..rep.dim() {
            m[(r, j)] = full[(r, c)].clone();
        }
    }
    LinearSystem::new(&m)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut c = ChainVector::zero();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    let (g, i) = space.coordinate(cols[j]);
                    c.add_term(g, i, x);
                }
            }
            c
        })
        .collect()
}

/// Whether two families of chain vectors span the same lattice.
pub fn same_lattice(space: &ChainSpace, a: &[ChainVector], b: &[ChainVector]) -> bool {
    let canon = |vs: &[ChainVector]| {
        let dense: Vec<Vec<BigInt>> = vs.iter().map(|v| space.to_dense(v)).collect();
        let h = hermite_form(&IntMatrix::from_vectors(&dense, space.len()));
        h.to_row_vectors().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect::<Vec<_>>()
    };
    canon(a) == canon(b)
}

/// The explicit generators (K1)–(K16) of the cycle lattice, labelled.
pub fn kernel_generators(spec: &SurfaceSpec) -> Vec<(String, ChainVector)> {
    use GeneratorKind::*;
    let g = spec.genus();
    let s = spec.boundary();
    let n = spec.punctures();
    let d = spec.dim();
    let gu = g as usize;
    let su = s as usize;
    let a = |j| Generator::new(A, j);
    let e = |j| Generator::new(E, j);
    let u1 = Generator::new(U, 1);
    let b1 = Generator::new(B, 1);
    // e_{0,1} stands for a_{1,1}
    let e1 = |j: u32| if j == 0 { (a(1), 1usize) } else { (e(j), 1usize) };
    let mut out: Vec<(String, ChainVector)> = Vec::new();
    let mut push = |label: &str, terms: Vec<(Generator, usize, i64)>| out.push((label.to_string(), ChainVector::from_terms(terms)));

    for j in 1..g {
        for i in 1..=d {
            if i != j as usize && i != j as usize + 1 {
                push("K1", vec![(a(j), i, 1)]);
            }
        }
        push("K2", vec![(a(j), j as usize, 1), (a(j), j as usize + 1, 1)]);
    }
    for i in 3..=d {
        push("K3", vec![(u1, i, 1)]);
    }
    push("K4", vec![(u1, 1, 1), (u1, 2, 1)]);
    for j in 1..=spec.boundary_twists() {
        for i in 3..=d {
            push("K5", vec![(e(j), i, 1)]);
        }
        push("K6", vec![(e(j), 1, 1), (e(j), 2, 1)]);
    }
    if g <= 4 {
        for j in 1..s {
            for i in 1..=d {
                push("K7", vec![(Generator::new(D, j), i, 1)]);
            }
        }
    }
    if g >= 4 {
        for i in 5..=d {
            push("K8", vec![(b1, i, 1)]);
        }
        push("K9", vec![(b1, 2, 1), (b1, 1, 1)]);
        push("K9", vec![(b1, 4, 1), (b1, 1, 1)]);
        push("K10", vec![(b1, 3, 1), (b1, 1, -1)]);
        push("K11", vec![(b1, 1, 1), (a(1), 1, -1), (a(3), 3, -1)]);
    }

    // −γ₁ − γ₂ − 2γ₃ − … − 2γ_g is cancelled by these a/u terms.
    let closing = |terms: &mut Vec<(Generator, usize, i64)>| {
        if g.is_multiple_of(2) {
            terms.push((a(1), 1, 1));
            for j in (3..g).step_by(2) {
                terms.push((a(j), j as usize, 2));
            }
        } else {
            terms.push((u1, 1, -1));
            for j in (2..g).step_by(2) {
                terms.push((a(j), j as usize, 2));
            }
        }
    };

    for j in spec.slide_indices() {
        let v = Generator::new(V, j);
        let special = if j < n { vec![gu, gu + su + j as usize] } else { vec![gu] };
        for i in 1..=d {
            if !special.contains(&i) {
                push("K12", vec![(v, i, 1)]);
            }
        }
        if j < n {
            let (p, pi) = e1(s + j - 1);
            push("K12", vec![(v, gu, 1), (p, pi, 1), (e(s + j), 1, -1)]);
            push("K12", vec![(v, gu + su + j as usize, 1), (p, pi, -2), (e(s + j), 1, 2)]);
        } else {
            let (p, pi) = e1(s + n - 1);
            let mut t = vec![(v, gu, 1), (p, pi, 1)];
            closing(&mut t);
            push("K12", t);
        }
    }

    if spec.flavor() == Flavor::Full {
        for j in 1..n {
            let sj = Generator::new(S, j);
            let c1 = gu + su + j as usize;
            for i in 1..=d {
                if i != c1 && i != c1 + 1 {
                    push("K13", vec![(sj, i, 1)]);
                }
            }
            if j < n - 1 {
                push("K14", vec![(sj, c1, 1), (sj, c1 + 1, 1)]);
                let (p, pi) = e1(s + j - 1);
                push("K15", vec![(sj, c1, 1), (p, pi, -1), (e(s + j), 1, 2), (e(s + j + 1), 1, -1)]);
            } else {
                let (p, pi) = e1(s + n - 2);
                let mut t = vec![(sj, d, 1), (e(s + n - 1), 1, 2), (p, pi, -1)];
                closing(&mut t);
                push("K16", t);
            }
        }
    }
    out
}

/// ∂̄₁ of x_{·,i} from the closed-form table, independent of ψ.
pub fn reference_boundary(spec: &SurfaceSpec, gen: Generator, i: usize) -> Vec<BigInt> {
    use GeneratorKind::*;
    let d = spec.dim();
    let gu = spec.genus() as usize;
    let su = spec.boundary() as usize;
    let n = spec.punctures();
    let mut v = vec![0i64; d];
    let j = gen.index as usize;
    // 1-based ξ index to 0-based position
    let xi = |k: usize| k - 1;
    match gen.kind {
        A | U => {
            let sgn = if gen.kind == A { 1 } else { -1 };
            if i == j {
                v[xi(j)] += sgn;
                v[xi(j + 1)] += 1;
            } else if i == j + 1 {
                v[xi(j)] -= sgn;
                v[xi(j + 1)] -= 1;
            }
        }
        B => {
            let sgn = match i {
                1 | 3 => 1,
                2 | 4 => -1,
                _ => 0,
            };
            for k in 1..=4 {
                v[xi(k)] += sgn;
            }
        }
        E => {
            let sgn = match i {
                1 => 1,
                2 => -1,
                _ => 0,
            };
            v[xi(1)] += sgn;
            v[xi(2)] += sgn;
            for t in 1..=j {
                v[xi(gu + t)] += sgn;
            }
        }
        D => {}
        S => {
            if (gen.index) < n - 1 {
                let p = gu + su + j;
                if i == p {
                    v[xi(p)] -= 1;
                    v[xi(p + 1)] += 1;
                } else if i == p + 1 {
                    v[xi(p)] += 1;
                    v[xi(p + 1)] -= 1;
                }
            } else if i == d {
                for k in 1..=gu {
                    v[xi(k)] -= 2;
                }
                for k in gu + 1..=d {
                    v[xi(k)] -= 1;
                }
                v[xi(d)] -= 1;
            }
        }
        V => {
            if gen.index < n {
                let p = gu + su + j;
                if i == gu {
                    v[xi(p)] += 1;
                } else if i == p {
                    v[xi(p)] -= 2;
                }
            } else if i == gu {
                for k in 1..=gu {
                    v[xi(k)] -= 2;
                }
                for k in gu + 1..=d {
                    v[xi(k)] -= 1;
                }
            }
        }
    }
    v.into_iter().map(BigInt::from).collect()
}

/// Generators and indices where (ψ(x)⁻¹ − I)ξ_i disagrees with
/// [`reference_boundary`].
pub fn boundary_consistency_failures(rep: &Representation) -> Vec<String> {
    let spec = rep.spec();
    let mut out = Vec::new();
    for &g in rep.generators() {
        for i in 1..=rep.dim() {
            let computed = super::boundary1(rep, &ChainVector::unit(g, i)).expect("generator of rep");
            if computed != reference_boundary(spec, g, i) {
                out.push(format!("boundary of {}_{{{},{}}} disagrees with the closed form", g.kind.letter(), g.index, i));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SignVariant;

    #[test]
    fn small_pm_plus_rank() {
        let rep = Representation::new(&SurfaceSpec::pm_plus(3, 1, 0).unwrap());
        let k = cycle_lattice(&rep);
        assert_eq!(k.rank(), 6);
        let mut labels: Vec<String> = k.labels.iter().flatten().cloned().collect();
        labels.sort();
        assert_eq!(labels, ["K1", "K1", "K2", "K2", "K3", "K4"]);
    }

    #[test]
    fn listed_generators_are_cycles() {
        for spec in [
            SurfaceSpec::pmk(3, 0, 2, 1).unwrap(),
            SurfaceSpec::pmk(4, 2, 2, 0).unwrap(),
            SurfaceSpec::full(5, 1, 3).unwrap(),
            SurfaceSpec::full(6, 0, 2).unwrap(),
            SurfaceSpec::pmk(7, 0, 1, 0).unwrap(),
        ] {
            let rep = Representation::new(&spec);
            for (label, v) in kernel_generators(&spec) {
                let b = super::super::boundary1(&rep, &v).unwrap();
                assert!(b.iter().all(Zero::is_zero), "{spec} {label} {v}");
            }
        }
    }

    #[test]
    fn listed_generators_span_kernel() {
        for spec in [SurfaceSpec::pmk(3, 0, 2, 1).unwrap(), SurfaceSpec::full(4, 1, 2).unwrap(), SurfaceSpec::full(5, 0, 3).unwrap()] {
            let rep = Representation::new(&spec);
            let k = cycle_lattice(&rep);
            let listed: Vec<ChainVector> = kernel_generators(&spec).into_iter().map(|(_, v)| v).collect();
            assert!(same_lattice(&k.space, &k.basis, &listed), "{spec}");
        }
    }

    #[test]
    fn closed_form_boundaries() {
        let spec = SurfaceSpec::full(4, 1, 3).unwrap();
        assert!(boundary_consistency_failures(&Representation::new(&spec)).is_empty());
        let spec = SurfaceSpec::pmk(3, 2, 3, 0).unwrap();
        assert!(boundary_consistency_failures(&Representation::new(&spec)).is_empty());
    }

    #[test]
    fn printed_signs_are_caught() {
        let spec = SurfaceSpec::full(3, 2, 3).unwrap();
        let twist = Representation::with_variant(&spec, SignVariant::PrintedBoundaryTwist);
        assert!(!boundary_consistency_failures(&twist).is_empty());
        let braid = Representation::with_variant(&spec, SignVariant::PrintedBraid);
        assert!(!boundary_consistency_failures(&braid).is_empty());
    }
}
