//! Dipole moves, suspension, connected sum and vertex internalization.
//!
//! An `h`-dipole is a pair of vertices joined by exactly `h` edges (colors
//! `C`) that lie in different `Ĉ`-residues. Cancelling it deletes both
//! vertices and welds the hanging edges color by color; adding one is the
//! inverse. All moves return new graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Color, ColorSet, ColoredGraph, GraphError, Vertex, MAX_COLORS};
use crate::residues::residue_through;
use crate::singularity::{Analysis, ResidueClass, SingularityError, TriBool};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("vertices {0} and {1} do not form a dipole")]
    NotADipole(Vertex, Vertex),
    #[error("cancelling a dipole of an order-two graph leaves nothing")]
    WouldAnnihilate,
    #[error("color {color} out of range for a graph with {num_colors} colors")]
    ColorOutOfRange { color: Color, num_colors: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    InvalidVertex { vertex: Vertex, order: usize },
    #[error("invalid dipole insertion: {0}")]
    InvalidInsertion(&'static str),
    #[error(transparent)]
    Unresolved(#[from] SingularityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DipoleKind {
    Ordinary,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Properness {
    Proper,
    NotProper,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dipole {
    pub vertices: (Vertex, Vertex),
    pub colors: ColorSet,
    /// `None` when one of the two complement residues is unclassified.
    pub kind: Option<DipoleKind>,
    pub properness: Properness,
}

impl Dipole {
    pub fn h(&self) -> usize {
        self.colors.len()
    }
}

/// Where the two new vertices of an added dipole go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InsertionSite {
    /// Every hanging edge is cut at this vertex: the first new vertex takes
    /// its place and the second is attached to its old neighbors.
    Vertex(Vertex),
    /// One cut per color outside the dipole colors. For `(c, a)` the
    /// `c`-edge at `a` is cut; `a` attaches to the first new vertex and its
    /// old partner to the second.
    Edges(Vec<(Color, Vertex)>),
}

/// Enough to undo a cancellation with [`add_dipole`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DipoleInsertion {
    pub colors: ColorSet,
    pub site: InsertionSite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexIndex {
    pub vertex: Vertex,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub graph: ColoredGraph,
    pub steps: usize,
    /// Set when reduction stopped on a dipole whose kind could not be
    /// resolved.
    pub incomplete: bool,
}

fn check_vertex(g: &ColoredGraph, v: Vertex) -> Result<(), MoveError> {
    if v < g.order() {
        Ok(())
    } else {
        Err(MoveError::InvalidVertex {
            vertex: v,
            order: g.order(),
        })
    }
}

/// Dipole colors between `v` and `w`, if they form a dipole.
fn dipole_colors(g: &ColoredGraph, v: Vertex, w: Vertex) -> Option<ColorSet> {
    let colors = g.colors_between(v, w);
    if v == w || colors.is_empty() || colors.len() > g.dim() {
        return None;
    }
    let hat = colors.complement(g.dim());
    (!residue_through(g, hat, v).contains(w)).then_some(colors)
}

/// Every dipole as `(v′, v″, colors)` with `v′ < v″`, largest `h` first,
/// then by vertex.
pub(crate) fn dipole_candidates(g: &ColoredGraph) -> Vec<(Vertex, Vertex, ColorSet)> {
    let mut out = Vec::new();
    for v in 0..g.order() {
        let mut seen = ColorSet::EMPTY;
        for c in 0..g.num_colors() {
            let w = g.partner(c, v);
            if w < v || seen.contains(c) {
                continue;
            }
            let between = g.colors_between(v, w);
            seen = seen.union(between);
            if let Some(colors) = dipole_colors(g, v, w) {
                out.push((v, w, colors));
            }
        }
    }
    out.sort_by_key(|&(v, w, colors)| (std::cmp::Reverse(colors.len()), v, w));
    out
}

/// Cancels without checking the dipole condition. Returns the new graph
/// and the insertion that restores the old one.
pub(crate) fn cancel_unchecked(
    g: &ColoredGraph,
    v: Vertex,
    w: Vertex,
    colors: ColorSet,
) -> (ColoredGraph, DipoleInsertion) {
    let order = g.order();
    let new_label = |x: Vertex| x - usize::from(x > v) - usize::from(x > w);
    let mut matchings = g.matchings().to_vec();
    let mut cuts = Vec::new();
    for (c, m) in matchings.iter_mut().enumerate() {
        if colors.contains(c) {
            continue;
        }
        let (a, b) = (m[v], m[w]);
        m[a] = b;
        m[b] = a;
        cuts.push((c, new_label(a)));
    }
    let matchings = matchings
        .into_iter()
        .map(|m| {
            (0..order)
                .filter(|&x| x != v && x != w)
                .map(|x| new_label(m[x]))
                .collect()
        })
        .collect();
    let graph = ColoredGraph::new(matchings).expect("cancelling a dipole keeps the graph connected");
    (
        graph,
        DipoleInsertion {
            colors,
            site: InsertionSite::Edges(cuts),
        },
    )
}

/// Kind and properness of the dipole `(v, w)`.
pub fn classify_dipole(analysis: &Analysis, v: Vertex, w: Vertex) -> Result<Dipole, MoveError> {
    let g = analysis.graph();
    check_vertex(g, v)?;
    check_vertex(g, w)?;
    let colors = dipole_colors(g, v, w).ok_or(MoveError::NotADipole(v, w))?;
    Ok(label(analysis, v.min(w), v.max(w), colors))
}

fn label(analysis: &Analysis, v: Vertex, w: Vertex, colors: ColorSet) -> Dipole {
    let n = analysis.graph().dim();
    let hat = colors.complement(n);
    let ends = [analysis.class_of(hat, v), analysis.class_of(hat, w)];
    let kind = if ends.contains(&ResidueClass::Ordinary) {
        Some(DipoleKind::Ordinary)
    } else if ends.contains(&ResidueClass::Unknown) {
        None
    } else {
        Some(DipoleKind::Singular)
    };
    let properness = match kind {
        Some(DipoleKind::Ordinary) => Properness::Proper,
        None => Properness::Unknown,
        Some(DipoleKind::Singular) => {
            let sub_ordinary = hat.subsets().filter(|d| *d != hat && d.len() >= 3).all(|d| {
                analysis.class_of(d, v) == ResidueClass::Ordinary || analysis.class_of(d, w) == ResidueClass::Ordinary
            });
            if sub_ordinary || analysis.is_singular_manifold() == TriBool::True {
                Properness::NotProper
            } else {
                Properness::Unknown
            }
        }
    };
    Dipole {
        vertices: (v, w),
        colors,
        kind,
        properness,
    }
}

/// All dipoles, largest `h` first and then by vertex.
pub fn find_dipoles(g: &ColoredGraph) -> Vec<Dipole> {
    let candidates = dipole_candidates(g);
    let n = g.dim();
    // complement residues of at most two colors are always ordinary
    let analysis = candidates
        .iter()
        .any(|d| n + 1 - d.2.len() >= 3)
        .then(|| Analysis::new(g));
    candidates
        .into_iter()
        .map(|(v, w, colors)| match &analysis {
            Some(a) => label(a, v, w, colors),
            None => Dipole {
                vertices: (v, w),
                colors,
                kind: Some(DipoleKind::Ordinary),
                properness: Properness::Proper,
            },
        })
        .collect()
}

pub fn cancel_dipole(g: &ColoredGraph, d: &Dipole) -> Result<(ColoredGraph, DipoleInsertion), MoveError> {
    let (v, w) = d.vertices;
    check_vertex(g, v)?;
    check_vertex(g, w)?;
    if g.order() == 2 {
        return Err(MoveError::WouldAnnihilate);
    }
    match dipole_colors(g, v, w) {
        Some(colors) if colors == d.colors => Ok(cancel_unchecked(g, v, w, colors)),
        _ => Err(MoveError::NotADipole(v, w)),
    }
}

/// Adds a dipole on `colors` at `site`. The new vertices are labelled
/// `order` and `order + 1`; the dipole condition is checked on the result.
pub fn add_dipole(
    g: &ColoredGraph,
    colors: ColorSet,
    site: &InsertionSite,
) -> Result<(ColoredGraph, (Vertex, Vertex)), MoveError> {
    let n = g.dim();
    if let Some(c) = colors.iter().find(|&c| c > n) {
        return Err(MoveError::ColorOutOfRange {
            color: c,
            num_colors: n + 1,
        });
    }
    if colors.is_empty() || colors.len() > n {
        return Err(MoveError::InvalidInsertion("a dipole has between 1 and n colors"));
    }
    let hat = colors.complement(n);
    let cuts: Vec<(Color, Vertex)> = match site {
        InsertionSite::Vertex(u) => {
            check_vertex(g, *u)?;
            hat.iter().map(|c| (c, *u)).collect()
        }
        InsertionSite::Edges(cuts) => {
            for &(c, a) in cuts {
                check_vertex(g, a)?;
                if c > n {
                    return Err(MoveError::ColorOutOfRange {
                        color: c,
                        num_colors: n + 1,
                    });
                }
            }
            if cuts.len() != hat.len() || cuts.iter().map(|x| x.0).collect::<ColorSet>() != hat {
                return Err(MoveError::InvalidInsertion("need exactly one cut per complement color"));
            }
            cuts.clone()
        }
    };
    let (x, y) = (g.order(), g.order() + 1);
    let mut matchings: Vec<Vec<Vertex>> = g
        .matchings()
        .iter()
        .map(|m| {
            let mut m = m.clone();
            m.extend([y, x]);
            m
        })
        .collect();
    for (c, a) in cuts {
        let m = &mut matchings[c];
        let b = m[a];
        m[a] = x;
        m[x] = a;
        m[b] = y;
        m[y] = b;
    }
    let out = ColoredGraph::new(matchings)?;
    if dipole_colors(&out, x, y) != Some(colors) {
        return Err(MoveError::InvalidInsertion("the new vertices share a complement residue"));
    }
    Ok((out, (x, y)))
}

/// `Σ_c`: adds a new last color whose matching copies color `c`.
pub fn suspend(g: &ColoredGraph, c: Color) -> Result<ColoredGraph, MoveError> {
    if c >= g.num_colors() {
        return Err(MoveError::ColorOutOfRange {
            color: c,
            num_colors: g.num_colors(),
        });
    }
    if g.num_colors() >= MAX_COLORS {
        return Err(GraphError::TooManyColors(g.num_colors() + 1).into());
    }
    let mut matchings = g.matchings().to_vec();
    matchings.push(g.matching(c).to_vec());
    Ok(ColoredGraph::new(matchings)?)
}

/// Disjoint union of `g1` and `g2` with the `c`-edges at `v1` and `v2`
/// exchanged, so that `v1` and `g1.order() + v2` are joined by a `c`-edge.
/// When the graphs are not both order two that edge is a 1-dipole whose
/// cancellation is [`connected_sum`].
pub fn join(g1: &ColoredGraph, v1: Vertex, g2: &ColoredGraph, v2: Vertex, c: Color) -> Result<ColoredGraph, MoveError> {
    check_sum_args(g1, v1, g2, v2)?;
    if c >= g1.num_colors() {
        return Err(MoveError::ColorOutOfRange {
            color: c,
            num_colors: g1.num_colors(),
        });
    }
    let shift = g1.order();
    let mut matchings: Vec<Vec<Vertex>> = g1
        .matchings()
        .iter()
        .zip(g2.matchings())
        .map(|(m1, m2)| m1.iter().copied().chain(m2.iter().map(|&x| x + shift)).collect())
        .collect();
    let m = &mut matchings[c];
    let (v, w) = (v1, v2 + shift);
    let (a, b) = (m[v], m[w]);
    m[v] = w;
    m[w] = v;
    m[a] = b;
    m[b] = a;
    Ok(ColoredGraph::new(matchings)?)
}

fn check_sum_args(g1: &ColoredGraph, v1: Vertex, g2: &ColoredGraph, v2: Vertex) -> Result<(), MoveError> {
    if g1.dim() != g2.dim() {
        return Err(MoveError::DimensionMismatch {
            left: g1.dim(),
            right: g2.dim(),
        });
    }
    check_vertex(g1, v1)?;
    check_vertex(g2, v2)
}

/// Removes `v1` and `v2` and welds the hanging edges color by color.
/// Vertices of `g1` come first, both in their original order.
pub fn connected_sum(g1: &ColoredGraph, v1: Vertex, g2: &ColoredGraph, v2: Vertex) -> Result<ColoredGraph, MoveError> {
    check_sum_args(g1, v1, g2, v2)?;
    let o1 = g1.order() - 1;
    let label1 = |x: Vertex| x - usize::from(x > v1);
    let label2 = |x: Vertex| o1 + x - usize::from(x > v2);
    let matchings = g1
        .matchings()
        .iter()
        .zip(g2.matchings())
        .map(|(m1, m2)| {
            let mut m = vec![0; o1 + g2.order() - 1];
            let (a, b) = (label1(m1[v1]), label2(m2[v2]));
            for x in (0..g1.order()).filter(|&x| x != v1) {
                m[label1(x)] = label1(m1[x]);
            }
            for x in (0..g2.order()).filter(|&x| x != v2) {
                m[label2(x)] = label2(m2[x]);
            }
            m[a] = b;
            m[b] = a;
            m
        })
        .collect();
    Ok(ColoredGraph::new(matchings)?)
}

pub fn vertex_index(analysis: &Analysis, v: Vertex) -> Result<VertexIndex, MoveError> {
    check_vertex(analysis.graph(), v)?;
    Ok(VertexIndex {
        vertex: v,
        index: analysis.vertex_index(v)?,
    })
}

/// Adds `n`-dipoles until some vertex is internal (index zero). Each step
/// takes a vertex of least positive index and inserts a dipole along the
/// `c`-edge for the smallest color `c` whose `ĉ`-residue there is singular,
/// which lowers that least index by one.
pub fn internalize(g: &ColoredGraph) -> Result<ColoredGraph, MoveError> {
    let n = g.dim();
    let mut current = g.clone();
    for _ in 0..=n + 1 {
        let analysis = Analysis::new(&current);
        let mut best: Option<(usize, Vertex)> = None;
        for v in 0..current.order() {
            let index = analysis.vertex_index(v)?;
            if index == 0 {
                return Ok(current);
            }
            if best.is_none_or(|(i, _)| index < i) {
                best = Some((index, v));
            }
        }
        let (_, v) = best.expect("graphs have vertices");
        let all = current.all_colors();
        let c = (0..=n)
            .find(|&c| analysis.class_of(all.without(c), v) == ResidueClass::Singular)
            .expect("a vertex of positive index has a singular facet");
        current = add_dipole(&current, all.without(c), &InsertionSite::Edges(vec![(c, v)]))?.0;
    }
    unreachable!("the least positive index drops by one per step")
}

/// Cancels ordinary dipoles, largest first, until none is left.
pub fn simplify(g: &ColoredGraph) -> Simplified {
    let n = g.dim();
    let mut graph = g.clone();
    let mut steps = 0;
    loop {
        if graph.order() == 2 {
            return Simplified {
                graph,
                steps,
                incomplete: false,
            };
        }
        let candidates = dipole_candidates(&graph);
        let mut chosen = candidates.iter().find(|d| d.2.len() + 1 >= n).copied();
        let mut incomplete = false;
        if chosen.is_none() && !candidates.is_empty() {
            let analysis = Analysis::new(&graph);
            for &(v, w, colors) in &candidates {
                match label(&analysis, v, w, colors).kind {
                    Some(DipoleKind::Ordinary) => {
                        chosen = Some((v, w, colors));
                        break;
                    }
                    None => incomplete = true,
                    Some(DipoleKind::Singular) => {}
                }
            }
        }
        match chosen {
            Some((v, w, colors)) => {
                graph = cancel_unchecked(&graph, v, w, colors).0;
                steps += 1;
            }
            None => {
                return Simplified {
                    graph,
                    steps,
                    incomplete,
                }
            }
        }
    }
}

/// Adds `k` random ordinary dipoles, reproducibly from `seed`.
pub fn inflate(g: &ColoredGraph, k: usize, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = g.clone();
    for _ in 0..k {
        graph = random_ordinary_dipole(&graph, &mut rng);
    }
    graph
}

fn random_ordinary_dipole(g: &ColoredGraph, rng: &mut ChaCha8Rng) -> ColoredGraph {
    let n = g.dim();
    let all = g.all_colors();
    let order = g.order();
    match rng.gen_range(0..3) {
        // n-dipole along one edge: its complement residues are single edges
        1 => {
            let c = rng.gen_range(0..=n);
            let a = rng.gen_range(0..order);
            if let Ok((out, _)) = add_dipole(g, all.without(c), &InsertionSite::Edges(vec![(c, a)])) {
                return out;
            }
        }
        // (n−1)-dipole across two edges: complement residues are bigons
        2 if n >= 2 => {
            for _ in 0..8 {
                let mut pair: Vec<Color> = (0..=n).collect();
                pair.shuffle(rng);
                let (c, d) = (pair[0], pair[1]);
                let cuts = vec![(c, rng.gen_range(0..order)), (d, rng.gen_range(0..order))];
                if let Ok((out, _)) = add_dipole(g, all.without(c).without(d), &InsertionSite::Edges(cuts)) {
                    return out;
                }
            }
        }
        _ => {}
    }
    // at a vertex the first new vertex and the old one form an order-two residue
    let h = rng.gen_range(1..=n);
    let mut colors: Vec<Color> = (0..=n).collect();
    colors.shuffle(rng);
    let set: ColorSet = colors[..h].iter().copied().collect();
    let u = rng.gen_range(0..order);
    add_dipole(g, set, &InsertionSite::Vertex(u))
        .expect("a vertex insertion is always a dipole")
        .0
}
