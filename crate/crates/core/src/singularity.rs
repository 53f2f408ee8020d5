//! Ordinary and singular residues, the singular set, Euler characteristics
//! and boundary structure.
//!
//! A residue is ordinary when the space it represents is a sphere. In
//! dimensions one and two this is decided exactly; from dimension three on
//! the test is three-valued. Necessary conditions (every facet ordinary,
//! the Euler characteristic of a sphere, trivial first homology) produce
//! `NotSphere` certificates, and cancelling dipoles that are certainly
//! proper down to the order-two graph produces a `Sphere` certificate.
//! Anything else stays `Unknown`, and every summary that depends on an
//! unknown residue refuses to answer rather than guess.

use std::fmt;

use thiserror::Error;

use crate::graph::{ColorSet, ColoredGraph, Vertex};
use crate::invariants::presentation::{full_presentation, homology_h1, pi1_presentation, Target};
use crate::invariants::AbelianInvariants;
use crate::moves::{cancel_unchecked, dipole_candidates};
use crate::residues::{residue_count, ResidueId, ResidueLattice, ResidueView};

/// Reduction steps allowed per vertex of the input.
pub const STEP_LIMIT_FACTOR: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("residue {colors}@{min_vertex} could not be classified", colors = .0.colors, min_vertex = .0.min_vertex)]
    UnresolvedResidue(ResidueId),
    #[error("singular set has dimension {dimension}; boundary structure is only described up to dimension 1 ({components} components)")]
    UnsupportedSingularDimension { dimension: usize, components: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriBool {
    True,
    False,
    Indeterminate,
}

impl TriBool {
    pub fn as_str(self) -> &'static str {
        match self {
            TriBool::True => "true",
            TriBool::False => "false",
            TriBool::Indeterminate => "indeterminate",
        }
    }

    pub fn is_true(self) -> bool {
        self == TriBool::True
    }
}

impl From<bool> for TriBool {
    fn from(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sphere,
    NotSphere,
    Unknown,
}

/// Why a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The order-two graph.
    OrderTwo,
    /// Two colors: the graph is a single cycle.
    Circle,
    /// Surface case: orientability and `b − v/2`, the Euler characteristic.
    Surface { bipartite: bool, euler: i64 },
    /// A facet (an `n`-residue) is singular.
    SingularFacet(ResidueId),
    /// Euler characteristic differs from that of the sphere.
    Euler { chi: i64, expected: i64 },
    /// Nontrivial first homology.
    Homology(AbelianInvariants),
    /// No certainly-proper dipole left at this order.
    Stalled { order: usize },
    /// The step budget ran out at this order.
    StepLimit { order: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::OrderTwo => write!(f, "order two"),
            Certificate::Circle => write!(f, "cycle"),
            Certificate::Surface { bipartite, euler } => {
                write!(f, "surface bipartite={bipartite} euler={euler}")
            }
            Certificate::SingularFacet(id) => write!(f, "singular facet {}@{}", id.colors, id.min_vertex),
            Certificate::Euler { chi, expected } => write!(f, "euler {chi} != {expected}"),
            Certificate::Homology(h) => write!(f, "H1={h}"),
            Certificate::Stalled { order } => write!(f, "reduction stalled at order {order}"),
            Certificate::StepLimit { order } => write!(f, "step limit reached at order {order}"),
        }
    }
}

/// Sphere recognition result. Certificates of reduced graphs carry over to
/// the input because only proper dipoles are cancelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereStatus {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub reduction_steps: usize,
}

impl SphereStatus {
    fn new(verdict: Verdict, certificate: Certificate, reduction_steps: usize) -> Self {
        SphereStatus {
            verdict,
            certificate,
            reduction_steps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueClass {
    Ordinary,
    Singular,
    Unknown,
}

impl ResidueClass {
    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Sphere => ResidueClass::Ordinary,
            Verdict::NotSphere => ResidueClass::Singular,
            Verdict::Unknown => ResidueClass::Unknown,
        }
    }
}

/// What is known about the facets of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Facets {
    AllOrdinary,
    Singular(ResidueId),
    Unresolved,
}

fn summarize_facets<'a>(classes: impl Iterator<Item = (ResidueClass, ResidueId)> + 'a) -> Facets {
    let mut unresolved = false;
    for (class, id) in classes {
        match class {
            ResidueClass::Singular => return Facets::Singular(id),
            ResidueClass::Unknown => unresolved = true,
            ResidueClass::Ordinary => {}
        }
    }
    if unresolved {
        Facets::Unresolved
    } else {
        Facets::AllOrdinary
    }
}

/// `χ(ĥM) = Σ_h (−1)^{n−h} |R_h|`; needs no classification.
pub fn chi_hat(g: &ColoredGraph) -> i64 {
    let n = g.dim();
    ColorSet::all_subsets(n)
        .filter(|s| s.len() <= n)
        .map(|s| {
            let sign = if (n - s.len()) % 2 == 0 { 1 } else { -1 };
            sign * residue_count(g, s) as i64
        })
        .sum()
}

/// Decides whether `g` represents a sphere, with the default step budget.
pub fn sphere_status(g: &ColoredGraph) -> SphereStatus {
    sphere_status_with_limit(g, STEP_LIMIT_FACTOR * g.order())
}

pub fn sphere_status_with_limit(g: &ColoredGraph, limit: usize) -> SphereStatus {
    if g.order() == 2 || g.dim() <= 2 {
        return decide(g, Facets::AllOrdinary, limit, 0);
    }
    let facets = Analysis::new(g).facets();
    decide(g, facets, limit, 0)
}

fn decide(g: &ColoredGraph, facets: Facets, limit: usize, steps: usize) -> SphereStatus {
    use Verdict::*;
    let n = g.dim();
    if g.order() == 2 {
        return SphereStatus::new(Sphere, Certificate::OrderTwo, steps);
    }
    if n == 1 {
        return SphereStatus::new(Sphere, Certificate::Circle, steps);
    }
    if n == 2 {
        let bipartite = g.is_bipartite();
        let bigons = residue_count(g, ColorSet::full(2).without(0))
            + residue_count(g, ColorSet::full(2).without(1))
            + residue_count(g, ColorSet::full(2).without(2));
        let euler = bigons as i64 - g.p() as i64;
        let verdict = if bipartite && euler == 2 { Sphere } else { NotSphere };
        return SphereStatus::new(verdict, Certificate::Surface { bipartite, euler }, steps);
    }
    if let Facets::Singular(id) = facets {
        return SphereStatus::new(NotSphere, Certificate::SingularFacet(id), steps);
    }
    let chi = chi_hat(g);
    let expected = if n % 2 == 0 { 2 } else { 0 };
    if chi != expected {
        return SphereStatus::new(NotSphere, Certificate::Euler { chi, expected }, steps);
    }
    let h1 = homology_h1(&full_presentation(g));
    if !h1.is_trivial() {
        return SphereStatus::new(NotSphere, Certificate::Homology(h1), steps);
    }
    if facets == Facets::AllOrdinary {
        reduce_closed(g.clone(), limit, steps)
    } else {
        reduce_unresolved(g, limit, steps)
    }
}

/// Every dipole of a closed-manifold graph is proper, and cancelling one
/// keeps the graph closed, so any dipole may be cancelled.
fn reduce_closed(mut g: ColoredGraph, limit: usize, mut steps: usize) -> SphereStatus {
    loop {
        if g.order() == 2 {
            return SphereStatus::new(Verdict::Sphere, Certificate::OrderTwo, steps);
        }
        if steps >= limit {
            return SphereStatus::new(Verdict::Unknown, Certificate::StepLimit { order: g.order() }, steps);
        }
        let Some((v, w, colors)) = dipole_candidates(&g).into_iter().next() else {
            return SphereStatus::new(Verdict::Unknown, Certificate::Stalled { order: g.order() }, steps);
        };
        g = cancel_unchecked(&g, v, w, colors).0;
        steps += 1;
    }
}

/// Cancels one dipole that is proper regardless of the unknown facets, then
/// starts over on the smaller graph.
fn reduce_unresolved(g: &ColoredGraph, limit: usize, steps: usize) -> SphereStatus {
    if steps >= limit {
        return SphereStatus::new(Verdict::Unknown, Certificate::StepLimit { order: g.order() }, steps);
    }
    let n = g.dim();
    let candidates = dipole_candidates(g);
    let mut chosen = candidates.iter().find(|d| d.2.len() + 1 >= n).copied();
    if chosen.is_none() {
        let analysis = Analysis::new(g);
        chosen = candidates.into_iter().find(|&(v, w, colors)| {
            let hat = colors.complement(n);
            [v, w].iter().any(|&x| {
                analysis.class(analysis.lattice.containing(hat, x)) == ResidueClass::Ordinary
            })
        });
    }
    let Some((v, w, colors)) = chosen else {
        return SphereStatus::new(Verdict::Unknown, Certificate::Stalled { order: g.order() }, steps);
    };
    let reduced = cancel_unchecked(g, v, w, colors).0;
    let facets = if reduced.order() == 2 {
        Facets::AllOrdinary
    } else {
        Analysis::new(&reduced).facets()
    };
    decide(&reduced, facets, limit, steps + 1)
}

/// A graph together with its residue lattice and the class of every
/// residue of `n` colors or fewer.
#[derive(Debug, Clone)]
pub struct Analysis {
    graph: ColoredGraph,
    lattice: ResidueLattice,
    classes: Vec<ResidueClass>,
    statuses: Vec<Option<SphereStatus>>,
}

/// Euler characteristics of `M`, `ĥM` and the singular set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerCharacteristics {
    pub manifold: i64,
    pub quasi_manifold: i64,
    pub singular_set: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularComponent {
    /// Every singular residue in the component.
    pub residues: Vec<ResidueId>,
    /// The singular `n`-residues of the component.
    pub top: Vec<ResidueId>,
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSetSummary {
    /// `None` when the singular set is empty.
    pub dimension: Option<usize>,
    pub components: Vec<SingularComponent>,
    pub euler: i64,
}

impl SingularSetSummary {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Invariants of the space represented by one singular `n`-residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPiece {
    pub residue: ResidueId,
    pub order: usize,
    pub bipartite: bool,
    pub chi_hat: i64,
    pub h1: Option<AbelianInvariants>,
}

/// A singular `(n−1)`-residue along which pieces are glued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedFace {
    pub residue: ResidueId,
    pub between: Vec<ResidueId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryStructure {
    /// The component of the singular set is a point.
    Single(BoundaryPiece),
    /// The component is one-dimensional: pieces glued along shared faces.
    Glued {
        pieces: Vec<BoundaryPiece>,
        shared: Vec<SharedFace>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub component: usize,
    pub structure: BoundaryStructure,
}

impl Analysis {
    pub fn new(g: &ColoredGraph) -> Self {
        let lattice = ResidueLattice::build(g);
        let n = g.dim();
        let mut classes = vec![ResidueClass::Ordinary; lattice.len()];
        let mut statuses = vec![None; lattice.len()];
        // the whole graph is not one of its own residues
        for idx in lattice.indices_of(ColorSet::full(n)) {
            classes[idx] = ResidueClass::Unknown;
        }
        for rank in 3..=n {
            for colors in ColorSet::subsets_of_size(n, rank) {
                for idx in lattice.indices_of(colors) {
                    let facets = summarize_facets(
                        lattice.covers(idx).iter().map(|&b| (classes[b], lattice.get(b).id())),
                    );
                    let sub = lattice.get(idx).as_graph(g).graph;
                    let status = decide(&sub, facets, STEP_LIMIT_FACTOR * sub.order(), 0);
                    classes[idx] = ResidueClass::from_verdict(status.verdict);
                    statuses[idx] = Some(status);
                }
            }
        }
        Analysis {
            graph: g.clone(),
            lattice,
            classes,
            statuses,
        }
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn lattice(&self) -> &ResidueLattice {
        &self.lattice
    }

    /// Class of the residue at `idx`. Residues with at most two colors are
    /// always ordinary.
    pub fn class(&self, idx: usize) -> ResidueClass {
        self.classes[idx]
    }

    /// Sphere-recognition record, present for residues of three or more colors.
    pub fn status(&self, idx: usize) -> Option<&SphereStatus> {
        self.statuses[idx].as_ref()
    }

    pub fn class_of(&self, colors: ColorSet, v: Vertex) -> ResidueClass {
        self.class(self.lattice.containing(colors, v))
    }

    fn facets(&self) -> Facets {
        let n = self.graph.dim();
        summarize_facets(
            ColorSet::subsets_of_size(n, n)
                .flat_map(|s| self.lattice.indices_of(s))
                .map(|idx| (self.classes[idx], self.lattice.get(idx).id())),
        )
    }

    /// Indices of the classified residues (those with at most `n` colors).
    fn proper_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.graph.dim();
        (0..self.lattice.len()).filter(move |&i| self.lattice.get(i).rank() <= n)
    }

    fn first_unknown(&self) -> Option<ResidueId> {
        self.proper_indices()
            .find(|&i| self.classes[i] == ResidueClass::Unknown)
            .map(|i| self.lattice.get(i).id())
    }

    /// A color `c` is ordinary when no `ĉ`-residue is singular.
    pub fn color_is_ordinary(&self, c: usize) -> TriBool {
        let hat = self.graph.all_colors().without(c);
        let mut out = TriBool::True;
        for idx in self.lattice.indices_of(hat) {
            match self.classes[idx] {
                ResidueClass::Singular => return TriBool::False,
                ResidueClass::Unknown => out = TriBool::Indeterminate,
                ResidueClass::Ordinary => {}
            }
        }
        out
    }

    /// `ĥM` is a closed manifold iff every `n`-residue is ordinary.
    pub fn is_closed(&self) -> TriBool {
        match self.facets() {
            Facets::AllOrdinary => TriBool::True,
            Facets::Singular(_) => TriBool::False,
            Facets::Unresolved => TriBool::Indeterminate,
        }
    }

    /// `ĥM` is a singular manifold iff no residue of fewer than `n` colors
    /// is singular.
    pub fn is_singular_manifold(&self) -> TriBool {
        let n = self.graph.dim();
        summarize_facets(
            self.proper_indices()
                .filter(|&i| self.lattice.get(i).rank() < n)
                .map(|i| (self.classes[i], self.lattice.get(i).id())),
        )
        .into()
    }

    pub fn singular_summary(&self) -> Result<SingularSetSummary, SingularityError> {
        if let Some(id) = self.first_unknown() {
            return Err(SingularityError::UnresolvedResidue(id));
        }
        let n = self.graph.dim();
        let singular: Vec<usize> = self
            .proper_indices()
            .filter(|&i| self.classes[i] == ResidueClass::Singular)
            .collect();
        let sign = |rank: usize| if (n - rank) % 2 == 0 { 1 } else { -1 };
        let mut ds = crate::residues::DisjointSet::new(singular.len());
        for (a, &x) in singular.iter().enumerate() {
            for (b, &y) in singular.iter().enumerate().skip(a + 1) {
                if self.lattice.is_below(x, y) || self.lattice.is_below(y, x) {
                    ds.union(a, b);
                }
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (a, &x) in singular.iter().enumerate() {
            let root = ds.find(a);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, members)) => members.push(x),
                None => groups.push((root, vec![x])),
            }
        }
        let mut components: Vec<SingularComponent> = groups
            .into_iter()
            .map(|(_, members)| {
                let mut residues: Vec<ResidueId> = members.iter().map(|&i| self.lattice.get(i).id()).collect();
                residues.sort();
                let mut top: Vec<ResidueId> = members
                    .iter()
                    .filter(|&&i| self.lattice.get(i).rank() == n)
                    .map(|&i| self.lattice.get(i).id())
                    .collect();
                top.sort();
                let euler = members.iter().map(|&i| sign(self.lattice.get(i).rank())).sum();
                SingularComponent { residues, top, euler }
            })
            .collect();
        components.sort_by(|a, b| a.top.cmp(&b.top));
        let dimension = singular.iter().map(|&i| self.lattice.get(i).rank()).min().map(|h| n - h);
        let euler = components.iter().map(|c| c.euler).sum();
        Ok(SingularSetSummary {
            dimension,
            components,
            euler,
        })
    }

    pub fn euler_characteristics(&self) -> Result<EulerCharacteristics, SingularityError> {
        if let Some(id) = self.first_unknown() {
            return Err(SingularityError::UnresolvedResidue(id));
        }
        let n = self.graph.dim();
        let mut manifold = 0;
        let mut singular_set = 0;
        for i in self.proper_indices() {
            let h = self.lattice.get(i).rank();
            match self.classes[i] {
                ResidueClass::Ordinary => manifold += if h % 2 == 0 { 1 } else { -1 },
                _ => singular_set += if (n - h) % 2 == 0 { 1 } else { -1 },
            }
        }
        Ok(EulerCharacteristics {
            manifold,
            quasi_manifold: chi_hat(&self.graph),
            singular_set,
        })
    }

    /// Number of singular `n`-residues through `v`.
    pub fn vertex_index(&self, v: Vertex) -> Result<usize, SingularityError> {
        let n = self.graph.dim();
        let mut index = 0;
        for c in 0..=n {
            let idx = self.lattice.containing(self.graph.all_colors().without(c), v);
            match self.classes[idx] {
                ResidueClass::Singular => index += 1,
                ResidueClass::Unknown => {
                    return Err(SingularityError::UnresolvedResidue(self.lattice.get(idx).id()))
                }
                ResidueClass::Ordinary => {}
            }
        }
        Ok(index)
    }

    fn boundary_piece(&self, idx: usize) -> BoundaryPiece {
        let view: &ResidueView = self.lattice.get(idx);
        let sub = view.as_graph(&self.graph).graph;
        BoundaryPiece {
            residue: view.id(),
            order: sub.order(),
            bipartite: sub.is_bipartite(),
            chi_hat: chi_hat(&sub),
            h1: quasi_manifold_h1(&sub),
        }
    }

    /// One entry per component of the singular set.
    pub fn boundary_structure(&self) -> Result<Vec<BoundaryComponent>, SingularityError> {
        let summary = self.singular_summary()?;
        let n = self.graph.dim();
        match summary.dimension {
            None => return Ok(Vec::new()),
            Some(d) if d >= 2 => {
                return Err(SingularityError::UnsupportedSingularDimension {
                    dimension: d,
                    components: summary.components.len(),
                })
            }
            _ => {}
        }
        let index_of = |id: ResidueId| self.lattice.index_of(id).expect("summary ids come from the lattice");
        let mut out = Vec::new();
        for (k, comp) in summary.components.iter().enumerate() {
            let pieces: Vec<BoundaryPiece> = comp.top.iter().map(|&id| self.boundary_piece(index_of(id))).collect();
            let shared: Vec<SharedFace> = comp
                .residues
                .iter()
                .filter(|id| id.colors.len() + 1 == n)
                .map(|&id| {
                    let mut between: Vec<ResidueId> = self
                        .lattice
                        .covered_by(index_of(id))
                        .iter()
                        .filter(|&&j| self.classes[j] == ResidueClass::Singular && self.lattice.get(j).rank() == n)
                        .map(|&j| self.lattice.get(j).id())
                        .collect();
                    between.sort();
                    SharedFace { residue: id, between }
                })
                .collect();
            let structure = if pieces.len() == 1 && shared.is_empty() {
                BoundaryStructure::Single(pieces.into_iter().next().unwrap())
            } else {
                BoundaryStructure::Glued { pieces, shared }
            };
            out.push(BoundaryComponent { component: k, structure });
        }
        Ok(out)
    }
}

impl From<Facets> for TriBool {
    fn from(f: Facets) -> Self {
        match f {
            Facets::AllOrdinary => TriBool::True,
            Facets::Singular(_) => TriBool::False,
            Facets::Unresolved => TriBool::Indeterminate,
        }
    }
}

/// `H₁(ĥM)` when some presentation route applies: the full 2-skeleton
/// route if every residue is ordinary, otherwise `π(Γ,c)` for a color `c`
/// such that every other color is ordinary.
pub fn quasi_manifold_h1(g: &ColoredGraph) -> Option<AbelianInvariants> {
    if g.dim() <= 2 || g.order() == 2 {
        return Some(homology_h1(&full_presentation(g)));
    }
    let analysis = Analysis::new(g);
    if analysis.is_closed() == TriBool::True {
        return Some(homology_h1(&full_presentation(g)));
    }
    (0..g.num_colors())
        .find_map(|c| pi1_presentation(&analysis, c, Target::QuasiManifold).ok())
        .map(|p| homology_h1(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::invariants::AbelianInvariants;
    use crate::residues::residues;

    fn ids(colors: &[usize], v: Vertex) -> ResidueId {
        ResidueId {
            colors: colors.iter().copied().collect(),
            min_vertex: v,
        }
    }

    #[test]
    fn small_spheres_and_surfaces() {
        for n in 1..=5 {
            let s = sphere_status(&fixtures::k2(n));
            assert_eq!(s.verdict, Verdict::Sphere);
            assert_eq!(s.reduction_steps, 0);
        }
        let t = sphere_status(&fixtures::t6());
        assert_eq!(t.verdict, Verdict::NotSphere);
        assert_eq!(
            t.certificate,
            Certificate::Surface {
                bipartite: true,
                euler: 0
            }
        );
        let k4 = sphere_status(&fixtures::k4());
        assert_eq!(k4.verdict, Verdict::NotSphere);
        assert_eq!(
            k4.certificate,
            Certificate::Surface {
                bipartite: false,
                euler: 1
            }
        );
    }

    #[test]
    fn projective_space_is_not_a_sphere() {
        let s = sphere_status(&fixtures::rp3());
        assert_eq!(s.verdict, Verdict::NotSphere);
        assert_eq!(
            s.certificate,
            Certificate::Homology(AbelianInvariants {
                free_rank: 0,
                torsion: vec![2]
            })
        );
    }

    #[test]
    fn order_four_bipartite_graphs_are_spheres() {
        let s = sphere_status(&fixtures::q4());
        assert_eq!(s.verdict, Verdict::Sphere);
        assert!(s.reduction_steps >= 1);
        let s = sphere_status(&fixtures::q4_split());
        assert_eq!(s.verdict, Verdict::Sphere);
    }

    #[test]
    fn three_residue_criterion() {
        // ordinary iff b − v/2 = 2, on every 3-residue of the fixtures
        for g in [fixtures::f_tb(), fixtures::order4_nonbipartite_311(), fixtures::q4(), fixtures::rp3()] {
            let a = Analysis::new(&g);
            let l = a.lattice();
            for colors in ColorSet::subsets_of_size(g.dim(), 3) {
                for idx in l.indices_of(colors) {
                    let sub = l.get(idx).as_graph(&g).graph;
                    let b: usize = (0..3).map(|c| residue_count(&sub, ColorSet::full(2).without(c))).sum();
                    let ordinary = b as i64 - sub.p() as i64 == 2;
                    assert_eq!(a.class(idx) == ResidueClass::Ordinary, ordinary);
                }
            }
        }
    }

    #[test]
    fn four_colored_closedness_count() {
        // closed iff g0 + g3 = g2 for 4-colored graphs
        for g in [fixtures::rp3(), fixtures::suspended_t6(), fixtures::k2(3)] {
            let a = Analysis::new(&g);
            let g0 = g.order();
            let g3: usize = ColorSet::subsets_of_size(3, 3).map(|s| residue_count(&g, s)).sum();
            let g2: usize = ColorSet::subsets_of_size(3, 2).map(|s| residue_count(&g, s)).sum();
            assert_eq!(a.is_closed() == TriBool::True, g0 + g3 == g2);
        }
    }

    #[test]
    fn order_two_graph_summary() {
        let a = Analysis::new(&fixtures::k2(4));
        assert!(a.singular_summary().unwrap().is_empty());
        assert_eq!(a.is_closed(), TriBool::True);
        let e = a.euler_characteristics().unwrap();
        assert_eq!((e.manifold, e.quasi_manifold, e.singular_set), (2, 2, 0));
        assert!(a.boundary_structure().unwrap().is_empty());
    }

    #[test]
    fn suspended_torus() {
        let g = fixtures::suspended_t6();
        let a = Analysis::new(&g);
        assert_eq!(a.is_closed(), TriBool::False);
        assert_eq!(a.is_singular_manifold(), TriBool::True);
        let s = a.singular_summary().unwrap();
        assert_eq!(s.dimension, Some(0));
        assert_eq!(s.components.len(), 2);
        assert_eq!(s.euler, 2);
        let tops: Vec<ResidueId> = s.components.iter().flat_map(|c| c.top.clone()).collect();
        assert_eq!(tops, vec![ids(&[0, 1, 2], 0), ids(&[0, 2, 3], 0)]);
        assert_eq!(a.color_is_ordinary(0), TriBool::True);
        assert_eq!(a.color_is_ordinary(1), TriBool::False);
        let b = a.boundary_structure().unwrap();
        assert_eq!(b.len(), 2);
        for comp in b {
            let BoundaryStructure::Single(piece) = comp.structure else {
                panic!("expected a point component");
            };
            assert_eq!(piece.chi_hat, 0);
            assert!(piece.bipartite);
            assert_eq!(piece.h1, Some(AbelianInvariants::free(2)));
        }
        let e = a.euler_characteristics().unwrap();
        assert_eq!(e.manifold, 0);
        for v in 0..g.order() {
            assert_eq!(a.vertex_index(v).unwrap(), 2);
        }
    }

    #[test]
    fn double_suspension_of_torus() {
        let g = fixtures::f_tb();
        let a = Analysis::new(&g);
        assert_eq!(a.is_closed(), TriBool::False);
        assert_eq!(a.is_singular_manifold(), TriBool::False);
        let s = a.singular_summary().unwrap();
        assert_eq!(s.dimension, Some(1));
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.euler, 0);
        assert_eq!(s.components[0].top.len(), 4);
        let e = a.euler_characteristics().unwrap();
        assert_eq!(e.manifold, 0);
        let b = a.boundary_structure().unwrap();
        assert_eq!(b.len(), 1);
        let BoundaryStructure::Glued { pieces, shared } = &b[0].structure else {
            panic!("expected a glued component");
        };
        assert_eq!(pieces.len(), 4);
        assert_eq!(shared.len(), 4);
        assert!(shared.iter().all(|f| f.between.len() == 2));
        assert_eq!((0..5).filter(|&c| a.color_is_ordinary(c) == TriBool::True).count(), 1);
    }

    #[test]
    fn projective_plane_residues_are_singular() {
        let g = fixtures::order4_nonbipartite_311();
        let a = Analysis::new(&g);
        let k4_colors: ColorSet = [0, 3, 4].into_iter().collect();
        assert_eq!(a.class_of(k4_colors, 0), ResidueClass::Singular);
        assert_eq!(a.is_singular_manifold(), TriBool::False);
        assert_eq!(a.color_is_ordinary(3), TriBool::True);
        assert_eq!(a.color_is_ordinary(0), TriBool::False);
        let bigon: ColorSet = [0, 3].into_iter().collect();
        assert_eq!(a.class_of(bigon, 0), ResidueClass::Ordinary);
    }

    #[test]
    fn chi_formulas_agree_when_closed() {
        for g in [fixtures::k2(4), fixtures::rp3(), fixtures::q4()] {
            let a = Analysis::new(&g);
            assert_eq!(a.is_closed(), TriBool::True);
            let e = a.euler_characteristics().unwrap();
            assert_eq!(e.manifold, e.quasi_manifold);
            assert!(a.singular_summary().unwrap().is_empty());
        }
        assert_eq!(chi_hat(&fixtures::t6()), 0);
        assert_eq!(chi_hat(&fixtures::rp3()), 0);
    }

    #[test]
    fn components_match_boundary_count() {
        for g in [fixtures::suspended_t6(), fixtures::f_tb(), fixtures::order4_nonbipartite_221()] {
            let a = Analysis::new(&g);
            let s = a.singular_summary().unwrap();
            match a.boundary_structure() {
                Ok(b) => assert_eq!(b.len(), s.components.len()),
                Err(SingularityError::UnsupportedSingularDimension { components, .. }) => {
                    assert_eq!(components, s.components.len())
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn residue_views_partition() {
        let g = fixtures::f_tb();
        let total: usize = residues(&g, [0, 1, 2].into_iter().collect()).unwrap().iter().map(|r| r.vertices.len()).sum();
        assert_eq!(total, g.order());
    }
}
