//! The colored-graph data model.
//!
//! An `(n+1)`-colored graph of order `2p` is stored as `n+1` fixed-point-free
//! involutions on the vertex set `0..2p`, one per color. Every vertex meets
//! exactly one edge of each color, so walking along a color is a single array
//! lookup. Parallel edges are simply several colors that pair the same two
//! vertices.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Color = usize;
pub type Vertex = usize;

/// Largest number of colors a [`ColorSet`] can hold.
pub const MAX_COLORS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a colored graph needs at least two colors, got {0}")]
    TooFewColors(usize),
    #[error("at most {MAX_COLORS} colors are supported, got {0}")]
    TooManyColors(usize),
    #[error("order {0} is not an even number >= 2")]
    OddOrder(usize),
    #[error("color {color} lists {len} images but the order is {order}")]
    LengthMismatch { color: Color, len: usize, order: usize },
    #[error("color {color} sends vertex {vertex} to {image}, outside 0..{order}")]
    ImageOutOfRange {
        color: Color,
        vertex: Vertex,
        image: Vertex,
        order: usize,
    },
    #[error("color {color} fixes vertex {vertex} (loops are not allowed)")]
    FixedPoint { color: Color, vertex: Vertex },
    #[error("color {color} is not an involution: {vertex} -> {image} -> {back}")]
    NotInvolution {
        color: Color,
        vertex: Vertex,
        image: Vertex,
        back: Vertex,
    },
    #[error("graph is disconnected: only {reached} of {order} vertices reachable from vertex 0")]
    Disconnected { reached: usize, order: usize },
}

/// A subset of the colors `0..=n`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// All colors `0..=n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n < MAX_COLORS);
        if n + 1 == MAX_COLORS {
            ColorSet(u32::MAX)
        } else {
            ColorSet((1u32 << (n + 1)) - 1)
        }
    }

    pub fn singleton(c: Color) -> Self {
        ColorSet(1 << c)
    }

    pub fn contains(self, c: Color) -> bool {
        c < MAX_COLORS && (self.0 >> c) & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1 << c);
    }

    pub fn with(self, c: Color) -> Self {
        ColorSet(self.0 | (1 << c))
    }

    pub fn without(self, c: Color) -> Self {
        ColorSet(self.0 & !(1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `Δ_n − self`.
    pub fn complement(self, n: usize) -> Self {
        ColorSet(Self::full(n).0 & !self.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(c)
        })
    }

    /// Every subset of `0..=n`, in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = ColorSet> {
        (0..=Self::full(n).0).map(ColorSet)
    }

    /// Every subset of `0..=n` with exactly `k` colors.
    pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = ColorSet> {
        Self::all_subsets(n).filter(move |s| s.len() == k)
    }

    /// Every subset of `self`, the empty set included.
    pub fn subsets(self) -> impl Iterator<Item = ColorSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some(((cur | !full).wrapping_add(1)) & full)
            };
            Some(ColorSet(cur))
        })
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        iter.into_iter().fold(ColorSet::EMPTY, |s, c| s.with(c))
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The two color classes of a bipartite graph. `classes.0` holds vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub classes: (Vec<Vertex>, Vec<Vertex>),
}

/// A connected `(n+1)`-regular graph with a proper edge coloring by `0..=n`.
///
/// Values are immutable once built; every constructor validates the
/// involution and connectivity invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    matchings: Vec<Vec<Vertex>>,
}

impl ColoredGraph {
    /// Builds a graph from one involution image list per color.
    pub fn new(matchings: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        check_matchings(&matchings)?;
        let reached = reachable_count(&matchings, ColorSet::full(matchings.len() - 1), 0);
        let order = matchings[0].len();
        if reached != order {
            return Err(GraphError::Disconnected { reached, order });
        }
        Ok(ColoredGraph { matchings })
    }

    /// The dimension `n`; the graph has `n + 1` colors.
    pub fn dim(&self) -> usize {
        self.matchings.len() - 1
    }

    pub fn num_colors(&self) -> usize {
        self.matchings.len()
    }

    /// Number of vertices `2p`.
    pub fn order(&self) -> usize {
        self.matchings[0].len()
    }

    /// Half the order.
    pub fn p(&self) -> usize {
        self.order() / 2
    }

    pub fn all_colors(&self) -> ColorSet {
        ColorSet::full(self.dim())
    }

    /// The other endpoint of the `c`-edge at `v`.
    #[inline]
    pub fn partner(&self, c: Color, v: Vertex) -> Vertex {
        self.matchings[c][v]
    }

    pub fn matching(&self, c: Color) -> &[Vertex] {
        &self.matchings[c]
    }

    pub fn matchings(&self) -> &[Vec<Vertex>] {
        &self.matchings
    }

    pub fn into_matchings(self) -> Vec<Vec<Vertex>> {
        self.matchings
    }

    /// Colors of the edges joining `v` and `w`.
    pub fn colors_between(&self, v: Vertex, w: Vertex) -> ColorSet {
        (0..self.num_colors())
            .filter(|&c| self.matchings[c][v] == w)
            .collect()
    }

    /// The `c`-edges as `(smaller, larger)` endpoint pairs, sorted.
    pub fn edges(&self, c: Color) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.matchings[c]
            .iter()
            .enumerate()
            .filter(|&(v, &w)| v < w)
            .map(|(v, &w)| (v, w))
    }

    /// The 2-coloring of the vertices, if one exists. It is unique up to swap.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let order = self.order();
        let mut side = vec![u8::MAX; order];
        side[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for m in &self.matchings {
                let w = m[v];
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
        let (a, b): (Vec<_>, Vec<_>) = (0..order).partition(|&v| side[v] == 0);
        Some(Bipartition { classes: (a, b) })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> ColoredGraph {
        assert_eq!(perm.len(), self.order(), "permutation length must match order");
        let matchings = self
            .matchings
            .iter()
            .map(|m| {
                let mut out = vec![0; m.len()];
                for (v, &w) in m.iter().enumerate() {
                    out[perm[v]] = perm[w];
                }
                out
            })
            .collect();
        ColoredGraph { matchings }
    }

    /// New color `k` takes the edges of old color `order[k]`.
    pub fn permute_colors(&self, order: &[Color]) -> ColoredGraph {
        assert_eq!(order.len(), self.num_colors(), "color order length must match");
        ColoredGraph {
            matchings: order.iter().map(|&c| self.matchings[c].clone()).collect(),
        }
    }

    /// The subgraph on `vertices` (which must be closed under `colors`), with
    /// vertices renumbered `0..k` in the given order and colors renumbered in
    /// increasing order.
    pub(crate) fn restrict(&self, colors: ColorSet, vertices: &[Vertex]) -> ColoredGraph {
        let mut local = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let matchings = colors
            .iter()
            .map(|c| vertices.iter().map(|&v| local[self.matchings[c][v]]).collect())
            .collect();
        ColoredGraph { matchings }
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph({})", crate::format::to_code(self))
    }
}

/// Checks everything except connectivity.
pub(crate) fn check_matchings(matchings: &[Vec<Vertex>]) -> Result<(), GraphError> {
    if matchings.len() < 2 {
        return Err(GraphError::TooFewColors(matchings.len()));
    }
    if matchings.len() > MAX_COLORS {
        return Err(GraphError::TooManyColors(matchings.len()));
    }
    let order = matchings[0].len();
    if order < 2 || order % 2 == 1 {
        return Err(GraphError::OddOrder(order));
    }
    for (color, m) in matchings.iter().enumerate() {
        if m.len() != order {
            return Err(GraphError::LengthMismatch {
                color,
                len: m.len(),
                order,
            });
        }
        for (vertex, &image) in m.iter().enumerate() {
            if image >= order {
                return Err(GraphError::ImageOutOfRange {
                    color,
                    vertex,
                    image,
                    order,
                });
            }
            if image == vertex {
                return Err(GraphError::FixedPoint { color, vertex });
            }
        }
        for (vertex, &image) in m.iter().enumerate() {
            let back = m[image];
            if back != vertex {
                return Err(GraphError::NotInvolution {
                    color,
                    vertex,
                    image,
                    back,
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn reachable_count(matchings: &[Vec<Vertex>], colors: ColorSet, start: Vertex) -> usize {
    let order = matchings[0].len();
    let mut seen = vec![false; order];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for c in colors.iter() {
            let w = matchings[c][v];
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn color_set_basics() {
        let s: ColorSet = [0, 2, 3].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(s.complement(4), [1, 4].into_iter().collect());
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(s.to_string(), "{0,2,3}");
        assert_eq!(s.subsets().count(), 8);
        assert!(s.subsets().all(|t| t.is_subset(s)));
        assert_eq!(ColorSet::subsets_of_size(4, 2).count(), 10);
    }

    #[test]
    fn rejects_loops_and_non_involutions() {
        let err = ColoredGraph::new(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, GraphError::FixedPoint { color: 1, vertex: 0 });
        let err = ColoredGraph::new(vec![vec![1, 0, 3, 2], vec![1, 2, 3, 0]]).unwrap_err();
        assert!(matches!(err, GraphError::NotInvolution { color: 1, .. }));
        let err = ColoredGraph::new(vec![vec![1, 0, 3, 2], vec![1, 0, 3, 2]]).unwrap_err();
        assert_eq!(err, GraphError::Disconnected { reached: 2, order: 4 });
        let err = ColoredGraph::new(vec![vec![1, 0, 2], vec![1, 0, 2]]).unwrap_err();
        assert_eq!(err, GraphError::OddOrder(3));
        assert_eq!(
            ColoredGraph::new(vec![vec![1, 0]]).unwrap_err(),
            GraphError::TooFewColors(1)
        );
    }

    #[test]
    fn bipartitions_of_fixtures() {
        let k2 = fixtures::k2(4);
        assert_eq!(k2.bipartition().unwrap().classes, (vec![0], vec![1]));
        let t6 = fixtures::t6();
        assert_eq!(t6.bipartition().unwrap().classes, (vec![0, 1, 2], vec![3, 4, 5]));
        assert!(fixtures::order4_nonbipartite_311().bipartition().is_none());
        assert!(fixtures::q4().is_bipartite());
    }

    #[test]
    fn relabel_and_restrict() {
        let t6 = fixtures::t6();
        let g = t6.relabel(&[5, 4, 3, 2, 1, 0]);
        assert_eq!(g.order(), 6);
        for c in 0..3 {
            for v in 0..6 {
                assert_eq!(g.partner(c, 5 - v), 5 - t6.partner(c, v));
            }
        }
        let swapped = t6.permute_colors(&[1, 0, 2]);
        assert_eq!(swapped.matching(0), t6.matching(1));
        assert_eq!(t6.colors_between(0, 3), ColorSet::singleton(0));
    }
}
