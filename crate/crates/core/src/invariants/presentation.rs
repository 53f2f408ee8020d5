//! Group presentations read off a colored graph.
//!
//! `π(Γ,c)` has one generator per `c`-edge, oriented from its smaller
//! endpoint, and one relator per `{i,c}`-bigon: starting at the bigon's
//! smallest vertex, walk the `c`-edge first and then alternate with `i`,
//! recording each `c`-edge with exponent `+1` when it is traversed from its
//! smaller endpoint.

use std::fmt::Write as _;

use thiserror::Error;

use super::snf::{abelian_invariants, AbelianInvariants};
use super::InvariantError;
use crate::graph::{Color, ColorSet, ColoredGraph, Vertex};
use crate::residues::{residues, DisjointSet, ResidueId};
use crate::singularity::{Analysis, ResidueClass};

/// A word as `(generator index, ±1)` letters.
pub type Word = Vec<(usize, i32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Generators additionally set to the identity.
    pub extra_killed: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// The manifold with boundary `M`.
    Manifold,
    /// The quasi-manifold `ĥM`.
    QuasiManifold,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl GroupPresentation {
    /// Relators followed by one single-letter relator per killed generator.
    pub fn all_relators(&self) -> Vec<Word> {
        let mut out = self.relators.clone();
        out.extend(self.extra_killed.iter().map(|&g| vec![(g, 1)]));
        out
    }

    /// Exponent-sum matrix, one row per relator of [`Self::all_relators`].
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.all_relators()
            .iter()
            .map(|w| {
                let mut row = vec![0i64; self.generators.len()];
                for &(g, e) in w {
                    row[g] += e as i64;
                }
                row
            })
            .collect()
    }

    /// Line format: `gen <label>` lines, then `rel <word>` lines with words
    /// like `g3 g1^-1 g2`. Killed generators are written as plain relators.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for label in &self.generators {
            let _ = writeln!(out, "gen {label}");
        }
        for w in self.all_relators() {
            let letters: Vec<String> = w
                .iter()
                .map(|&(g, e)| {
                    if e == 1 {
                        self.generators[g].clone()
                    } else {
                        format!("{}^{e}", self.generators[g])
                    }
                })
                .collect();
            let _ = writeln!(out, "rel {}", letters.join(" "));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<GroupPresentation, PresentationParseError> {
        let err = |line: usize, message: String| PresentationParseError::Syntax { line, message };
        let mut generators: Vec<String> = Vec::new();
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let (kind, rest) = raw.split_once(' ').unwrap_or((raw, ""));
            match kind {
                "gen" => {
                    let label = rest.trim();
                    if label.is_empty() || label.contains(char::is_whitespace) || label.contains('^') {
                        return Err(err(line, format!("bad generator label `{label}`")));
                    }
                    if !relators.is_empty() {
                        return Err(err(line, "generators must precede relators".into()));
                    }
                    generators.push(label.to_string());
                }
                "rel" => {
                    let mut word = Word::new();
                    for tok in rest.split_whitespace() {
                        let (name, exp) = match tok.split_once('^') {
                            Some((n, e)) => {
                                let e: i32 = e
                                    .parse()
                                    .map_err(|_| err(line, format!("bad exponent in `{tok}`")))?;
                                (n, e)
                            }
                            None => (tok, 1),
                        };
                        let g = generators
                            .iter()
                            .position(|l| l == name)
                            .ok_or_else(|| err(line, format!("unknown generator `{name}`")))?;
                        let unit = exp.signum();
                        word.extend(std::iter::repeat_n((g, unit), exp.unsigned_abs() as usize));
                    }
                    relators.push(word);
                }
                other => return Err(err(line, format!("expected `gen` or `rel`, found `{other}`"))),
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
            extra_killed: Vec::new(),
        })
    }
}

/// Abelianization of the presented group.
pub fn homology_h1(p: &GroupPresentation) -> AbelianInvariants {
    abelian_invariants(&p.relation_matrix(), p.generators.len())
}

fn edge_generators(g: &ColoredGraph, c: Color) -> Vec<usize> {
    let mut index = vec![usize::MAX; g.order()];
    for (k, (v, w)) in g.edges(c).enumerate() {
        index[v] = k;
        index[w] = k;
    }
    index
}

/// Relator of the `{i,c}`-bigon through `start` (its smallest vertex).
fn bigon_relator(g: &ColoredGraph, c: Color, i: Color, start: Vertex, gens: &[usize]) -> Word {
    let mut word = Word::new();
    let mut x = start;
    loop {
        let y = g.partner(c, x);
        word.push((gens[x], if x < y { 1 } else { -1 }));
        x = g.partner(i, y);
        if x == start {
            return word;
        }
    }
}

/// `π(Γ,c)`: generated by the `c`-edges, related by the `{i,c}`-bigons.
pub fn c_group_presentation(g: &ColoredGraph, c: Color) -> Result<GroupPresentation, InvariantError> {
    if c > g.dim() {
        return Err(InvariantError::ColorOutOfRange { color: c, n: g.dim() });
    }
    let gens = edge_generators(g, c);
    let generators = (0..g.p()).map(|k| format!("g{k}")).collect();
    let mut relators = Vec::new();
    for i in (0..g.num_colors()).filter(|&i| i != c) {
        let pair: ColorSet = [i, c].into_iter().collect();
        for bigon in residues(g, pair).expect("colors in range") {
            relators.push(bigon_relator(g, c, i, bigon.vertices[0], &gens));
        }
    }
    Ok(GroupPresentation {
        generators,
        relators,
        extra_killed: Vec::new(),
    })
}

/// `c`-edges, by generator index, forming a spanning tree of the quotient
/// whose nodes are the `ĉ`-residues. Edges are tried in index order.
fn spanning_c_edges(g: &ColoredGraph, c: Color) -> Vec<usize> {
    let hat = g.all_colors().without(c);
    let mut node = vec![0; g.order()];
    for (k, r) in residues(g, hat).expect("colors in range").iter().enumerate() {
        for &v in &r.vertices {
            node[v] = k;
        }
    }
    let count = node.iter().max().map_or(0, |m| m + 1);
    let mut ds = DisjointSet::new(count);
    g.edges(c)
        .enumerate()
        .filter(|&(_, (v, w))| ds.union(node[v], node[w]))
        .map(|(k, _)| k)
        .collect()
}

/// A presentation of `π₁(M)` or `π₁(ĥM)` through `π(Γ,c)`.
///
/// For `M` the color `c` must be ordinary (no singular `ĉ`-residue); for
/// `ĥM` every other color must be. The offending residue is reported
/// otherwise.
pub fn pi1_presentation(
    analysis: &Analysis,
    c: Color,
    target: Target,
) -> Result<GroupPresentation, InvariantError> {
    let g = analysis.graph();
    if c > g.dim() {
        return Err(InvariantError::ColorOutOfRange { color: c, n: g.dim() });
    }
    let needs_ordinary: Vec<Color> = match target {
        Target::Manifold => vec![c],
        Target::QuasiManifold => (0..g.num_colors()).filter(|&d| d != c).collect(),
    };
    for d in needs_ordinary {
        check_ordinary_color(analysis, d, c, target)?;
    }
    let mut p = c_group_presentation(g, c)?;
    p.extra_killed = spanning_c_edges(g, c);
    Ok(p)
}

fn check_ordinary_color(
    analysis: &Analysis,
    d: Color,
    c: Color,
    target: Target,
) -> Result<(), InvariantError> {
    let lattice = analysis.lattice();
    let hat = analysis.graph().all_colors().without(d);
    if hat.len() < 3 {
        return Ok(());
    }
    for idx in lattice.indices_of(hat) {
        let id: ResidueId = lattice.get(idx).id();
        match analysis.class(idx) {
            ResidueClass::Ordinary => {}
            ResidueClass::Singular => {
                return Err(InvariantError::HypothesisViolated { color: c, target, residue: id })
            }
            ResidueClass::Unknown => return Err(InvariantError::Unresolved(id)),
        }
    }
    Ok(())
}

/// A presentation of `π₁(M)` read from the 2-skeleton: every edge is a
/// generator, every bigon a relator, and a spanning tree is killed. For
/// `n ≥ 2` the higher cones of `M` are attached along simply connected
/// spheres, so this is valid without any hypothesis on the colors. For
/// `n = 1` the only bigon is the whole circle and is not filled.
pub fn full_presentation(g: &ColoredGraph) -> GroupPresentation {
    let k = g.num_colors();
    // generator of the c-edge at v
    let mut gen_of = vec![vec![0usize; g.order()]; k];
    let mut generators = Vec::new();
    let mut endpoints = Vec::new();
    for (c, row) in gen_of.iter_mut().enumerate() {
        for (v, w) in g.edges(c) {
            row[v] = generators.len();
            row[w] = generators.len();
            endpoints.push((v, w));
            generators.push(format!("e{c}_{v}"));
        }
    }
    let mut relators = Vec::new();
    if g.dim() >= 2 {
        for i in 0..k {
            for j in i + 1..k {
                let pair: ColorSet = [i, j].into_iter().collect();
                for bigon in residues(g, pair).expect("colors in range") {
                    let start = bigon.vertices[0];
                    let mut word = Word::new();
                    let mut x = start;
                    loop {
                        for c in [i, j] {
                            let y = g.partner(c, x);
                            word.push((gen_of[c][x], if x < y { 1 } else { -1 }));
                            x = y;
                        }
                        if x == start {
                            break;
                        }
                    }
                    relators.push(word);
                }
            }
        }
    }
    let mut ds = DisjointSet::new(g.order());
    let extra_killed = endpoints
        .iter()
        .enumerate()
        .filter(|&(_, &(v, w))| ds.union(v, w))
        .map(|(e, _)| e)
        .collect();
    GroupPresentation {
        generators,
        relators,
        extra_killed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::ColorSet;
    use crate::residues::residue_count;

    #[test]
    fn order_two_graph_is_simply_connected() {
        for n in 1..=5 {
            let g = fixtures::k2(n);
            for c in 0..=n {
                let p = c_group_presentation(&g, c).unwrap();
                assert_eq!(p.generators.len(), 1);
                assert_eq!(p.relators.len(), n);
                assert!(p.relators.iter().all(|w| w == &vec![(0, 1)]));
                assert!(homology_h1(&p).is_trivial());
            }
        }
        assert_eq!(homology_h1(&full_presentation(&fixtures::k2(1))), AbelianInvariants::free(1));
    }

    #[test]
    fn bigon_relator_lengths() {
        let g = fixtures::rp3();
        for c in 0..4 {
            let p = c_group_presentation(&g, c).unwrap();
            assert_eq!(p.generators.len(), 4);
            let mut k = 0;
            for i in (0..4).filter(|&i| i != c) {
                let pair: ColorSet = [i, c].into_iter().collect();
                for r in residues(&g, pair).unwrap() {
                    assert_eq!(p.relators[k].len(), r.vertices.len() / 2);
                    k += 1;
                }
            }
            assert_eq!(k, p.relators.len());
        }
    }

    #[test]
    fn projective_space_has_order_two_homology() {
        let g = fixtures::rp3();
        let a = Analysis::new(&g);
        for c in 0..4 {
            let p = pi1_presentation(&a, c, Target::Manifold).unwrap();
            assert!(p.extra_killed.is_empty());
            assert_eq!(homology_h1(&p).torsion, vec![2]);
        }
        assert_eq!(homology_h1(&full_presentation(&g)).torsion, vec![2]);
    }

    #[test]
    fn torus_surfaces() {
        let g = fixtures::t6();
        assert_eq!(homology_h1(&full_presentation(&g)), AbelianInvariants::free(2));
        let a = Analysis::new(&g);
        for c in 0..3 {
            let p = pi1_presentation(&a, c, Target::QuasiManifold).unwrap();
            assert_eq!(homology_h1(&p), AbelianInvariants::free(2));
        }
        let k4 = fixtures::k4();
        assert_eq!(homology_h1(&full_presentation(&k4)).torsion, vec![2]);
    }

    #[test]
    fn hypotheses_are_checked() {
        let g = fixtures::suspended_t6();
        let a = Analysis::new(&g);
        // colors 1 and 3 have singular complements
        let err = pi1_presentation(&a, 1, Target::Manifold).unwrap_err();
        assert!(matches!(err, InvariantError::HypothesisViolated { color: 1, .. }));
        let err = pi1_presentation(&a, 0, Target::QuasiManifold).unwrap_err();
        assert!(matches!(err, InvariantError::HypothesisViolated { .. }));
        let p = pi1_presentation(&a, 0, Target::Manifold).unwrap();
        assert_eq!(homology_h1(&p), AbelianInvariants::free(2));
        // two singular colors: no color qualifies for ĥM
        for c in 0..4 {
            assert!(pi1_presentation(&a, c, Target::QuasiManifold).is_err());
        }
    }

    #[test]
    fn killed_edges_span_the_quotient() {
        let g = fixtures::q4_split();
        let p = c_group_presentation(&g, 0).unwrap();
        let killed = spanning_c_edges(&g, 0);
        assert_eq!(killed.len(), residue_count(&g, g.all_colors().without(0)) - 1);
        assert_eq!(p.generators.len(), 2);
        let a = Analysis::new(&g);
        let p = pi1_presentation(&a, 0, Target::Manifold).unwrap();
        assert_eq!(p.extra_killed, vec![0]);
        assert!(homology_h1(&p).is_trivial());
    }

    #[test]
    fn text_round_trip() {
        let g = fixtures::rp3();
        let p = c_group_presentation(&g, 0).unwrap();
        let text = p.to_text();
        assert!(text.starts_with("gen g0\n"));
        let back = GroupPresentation::parse_text(&text).unwrap();
        assert_eq!(back.relators, p.relators);
        assert_eq!(homology_h1(&back), homology_h1(&p));
        let q = GroupPresentation::parse_text("gen a\ngen b\nrel a^2 b^-1\nrel b^3\n").unwrap();
        assert_eq!(q.relators[0], vec![(0, 1), (0, 1), (1, -1)]);
        assert_eq!(homology_h1(&q).torsion, vec![6]);
        assert!(GroupPresentation::parse_text("gen a\nrel c\n").is_err());
    }
}
