//! Topological invariants: fundamental group presentations, first homology,
//! regular genera and the G-degree, and a small classification table.

pub mod classify;
pub mod gdegree;
pub mod presentation;
pub mod snf;

use thiserror::Error;

pub use classify::{classify_small, Classification};
pub use gdegree::{cyclic_permutations, g_degree, regular_genus, singular_manifold_defect, GDegreeReport, HalfInt};
pub use presentation::{
    c_group_presentation, full_presentation, homology_h1, pi1_presentation, GroupPresentation, Target,
};
pub use snf::{abelian_invariants, AbelianInvariants};

use crate::graph::{Color, ColoredGraph};
use crate::residues::ResidueId;
use crate::singularity::{Analysis, SingularityError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("color {color} out of range for dimension {n}")]
    ColorOutOfRange { color: Color, n: usize },
    #[error("color {color} does not satisfy the hypothesis for {target:?}: residue {colors}@{min_vertex} is singular", colors = .residue.colors, min_vertex = .residue.min_vertex)]
    HypothesisViolated { color: Color, target: Target, residue: ResidueId },
    #[error("residue {colors}@{min_vertex} could not be classified", colors = .0.colors, min_vertex = .0.min_vertex)]
    Unresolved(ResidueId),
    #[error("not a cyclic order of the colors 0..={n}")]
    InvalidPermutation { n: usize },
    #[error("no table entry for dimension {n} and order {order}")]
    OutOfTableRange { n: usize, order: usize },
}

impl From<SingularityError> for InvariantError {
    fn from(e: SingularityError) -> Self {
        match e {
            SingularityError::UnresolvedResidue(id) => InvariantError::Unresolved(id),
            SingularityError::UnsupportedSingularDimension { .. } => {
                unreachable!("fingerprints do not ask for boundary structure")
            }
        }
    }
}

/// Summary invariants of a graph and of the spaces `M` and `ĥM` it represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub n: usize,
    pub order: usize,
    pub bipartite: bool,
    pub chi_manifold: i64,
    pub chi_quasi_manifold: i64,
    pub h1: AbelianInvariants,
    /// Components of the singular set, i.e. boundary components of `M`.
    pub boundary_components: usize,
    pub singular_dimension: Option<usize>,
    /// `ω_G`, for five colors only.
    pub omega_g: Option<i64>,
}

/// The part of a [`Fingerprint`] that depends only on the represented
/// spaces, so it survives proper dipole moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldInvariants {
    pub n: usize,
    pub bipartite: bool,
    pub chi_manifold: i64,
    pub chi_quasi_manifold: i64,
    pub h1: AbelianInvariants,
    pub boundary_components: usize,
    pub singular_dimension: Option<usize>,
}

impl Fingerprint {
    pub fn manifold_invariants(&self) -> ManifoldInvariants {
        ManifoldInvariants {
            n: self.n,
            bipartite: self.bipartite,
            chi_manifold: self.chi_manifold,
            chi_quasi_manifold: self.chi_quasi_manifold,
            h1: self.h1.clone(),
            boundary_components: self.boundary_components,
            singular_dimension: self.singular_dimension,
        }
    }
}

/// `H₁(M)` is read from the 2-skeleton, which needs no hypothesis on the
/// colors; the `π(Γ,c)` route is cross-checked against it in tests.
pub fn fingerprint(analysis: &Analysis) -> Result<Fingerprint, InvariantError> {
    let g: &ColoredGraph = analysis.graph();
    let euler = analysis.euler_characteristics()?;
    let summary = analysis.singular_summary()?;
    let omega_g = (g.dim() == 4).then(|| g_degree(g).omega_g.twice() / 2);
    Ok(Fingerprint {
        n: g.dim(),
        order: g.order(),
        bipartite: g.is_bipartite(),
        chi_manifold: euler.manifold,
        chi_quasi_manifold: euler.quasi_manifold,
        h1: homology_h1(&full_presentation(g)),
        boundary_components: summary.components.len(),
        singular_dimension: summary.dimension,
        omega_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::singularity::TriBool;
    use proptest::prelude::*;

    #[test]
    fn fingerprints_of_fixtures() {
        let f = fingerprint(&Analysis::new(&fixtures::f_tb())).unwrap();
        assert_eq!(f.h1, AbelianInvariants::free(2));
        assert_eq!(f.boundary_components, 1);
        assert_eq!(f.singular_dimension, Some(1));
        assert_eq!(f.chi_manifold, 0);
        let f = fingerprint(&Analysis::new(&fixtures::order4_nonbipartite_311())).unwrap();
        assert_eq!(f.h1.torsion, vec![2]);
        assert_eq!(f.omega_g, Some(9));
        let f = fingerprint(&Analysis::new(&fixtures::k2(4))).unwrap();
        assert!(f.h1.is_trivial());
        assert_eq!(f.omega_g, Some(0));
    }

    #[test]
    fn both_routes_agree_where_the_color_route_applies() {
        for g in [
            fixtures::rp3(),
            fixtures::suspended_t6(),
            fixtures::f_tb(),
            fixtures::order4_nonbipartite_311(),
            fixtures::order4_nonbipartite_221(),
            fixtures::q4_split(),
        ] {
            let a = Analysis::new(&g);
            let full = homology_h1(&full_presentation(&g));
            let mut used = 0;
            for c in (0..g.num_colors()).filter(|&c| a.color_is_ordinary(c) == TriBool::True) {
                let p = pi1_presentation(&a, c, Target::Manifold).unwrap();
                assert_eq!(homology_h1(&p), full);
                used += 1;
            }
            assert!(used > 0);
        }
    }

    /// Adds a generator `x` with defining relator `x = w⁻¹`, or a redundant
    /// product of existing relators.
    fn tietze_noise(p: &GroupPresentation, picks: &[(usize, bool)]) -> GroupPresentation {
        let mut q = p.clone();
        for (k, &(pick, new_generator)) in picks.iter().enumerate() {
            if q.relators.is_empty() {
                break;
            }
            let r = q.relators[pick % q.relators.len()].clone();
            if new_generator {
                let x = q.generators.len();
                q.generators.push(format!("t{k}"));
                let mut w = vec![(x, 1)];
                w.extend(r.iter().take(2).copied());
                q.relators.push(w);
            } else {
                let s = q.relators[(pick / 3) % q.relators.len()].clone();
                q.relators.push(r.into_iter().chain(s).collect());
            }
        }
        q
    }

    proptest! {
        #[test]
        fn abelianization_survives_tietze_noise(
            which in 0usize..4,
            picks in proptest::collection::vec((0usize..64, any::<bool>()), 0..6),
        ) {
            let g = [fixtures::rp3(), fixtures::t6(), fixtures::f_tb(), fixtures::k4()][which].clone();
            let p = full_presentation(&g);
            prop_assert_eq!(homology_h1(&tietze_noise(&p, &picks)), homology_h1(&p));
        }
    }
}
