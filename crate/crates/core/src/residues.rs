//! Residues: connected components of color-restricted subgraphs, their
//! counts `g_Δ`, and the containment poset over all color subsets.

use thiserror::Error;

use crate::graph::{Color, ColorSet, ColoredGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("color set {colors} uses colors outside 0..={n}")]
    ColorOutOfRange { colors: ColorSet, n: usize },
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSet {
    pub fn new(len: usize) -> Self {
        DisjointSet {
            parent: (0..len).collect(),
            size: vec![1; len],
            sets: len,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn num_sets(&self) -> usize {
        self.sets
    }
}

fn union_colors(g: &ColoredGraph, colors: ColorSet) -> DisjointSet {
    let mut ds = DisjointSet::new(g.order());
    for c in colors.iter() {
        for (v, w) in g.edges(c) {
            ds.union(v, w);
        }
    }
    ds
}

fn check_colors(g: &ColoredGraph, colors: ColorSet) -> Result<(), ResidueError> {
    if colors.is_subset(g.all_colors()) {
        Ok(())
    } else {
        Err(ResidueError::ColorOutOfRange {
            colors,
            n: g.dim(),
        })
    }
}

/// `g_Δ`, the number of `Δ`-residues.
pub fn residue_count(g: &ColoredGraph, colors: ColorSet) -> usize {
    debug_assert!(colors.is_subset(g.all_colors()));
    union_colors(g, colors).num_sets()
}

/// Stable identity of a residue: its color set and smallest vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueId {
    pub colors: ColorSet,
    pub min_vertex: Vertex,
}

/// One connected component of `Γ_Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueView {
    pub colors: ColorSet,
    /// Sorted vertex list.
    pub vertices: Vec<Vertex>,
}

/// A residue re-indexed as a standalone colored graph. Local color `k`
/// corresponds to `colors[k]` of the parent, local vertex `i` to
/// `vertices[i]`.
#[derive(Debug, Clone)]
pub struct ResidueGraph {
    pub graph: ColoredGraph,
    pub colors: Vec<Color>,
    pub vertices: Vec<Vertex>,
}

impl ResidueGraph {
    /// Parent color to local color.
    pub fn local_color(&self, c: Color) -> Option<Color> {
        self.colors.iter().position(|&x| x == c)
    }
}

impl ResidueView {
    pub fn id(&self) -> ResidueId {
        ResidueId {
            colors: self.colors,
            min_vertex: self.vertices[0],
        }
    }

    /// Number of colors `h`.
    pub fn rank(&self) -> usize {
        self.colors.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The residue as a colored graph in its own right. Needs at least two
    /// colors (smaller residues are single vertices or edges).
    pub fn as_graph(&self, parent: &ColoredGraph) -> ResidueGraph {
        assert!(self.rank() >= 2, "residue graphs need at least two colors");
        ResidueGraph {
            graph: parent.restrict(self.colors, &self.vertices),
            colors: self.colors.iter().collect(),
            vertices: self.vertices.clone(),
        }
    }
}

/// The `Δ`-residues of `g`, ordered by smallest vertex.
pub fn residues(g: &ColoredGraph, colors: ColorSet) -> Result<Vec<ResidueView>, ResidueError> {
    check_colors(g, colors)?;
    let mut ds = union_colors(g, colors);
    let mut slot = vec![usize::MAX; g.order()];
    let mut out: Vec<ResidueView> = Vec::with_capacity(ds.num_sets());
    for v in 0..g.order() {
        let root = ds.find(v);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(ResidueView {
                colors,
                vertices: Vec::new(),
            });
        }
        out[slot[root]].vertices.push(v);
    }
    Ok(out)
}

/// The residue of color set `colors` through `v`.
pub fn residue_through(g: &ColoredGraph, colors: ColorSet, v: Vertex) -> ResidueView {
    let mut seen = vec![false; g.order()];
    seen[v] = true;
    let mut stack = vec![v];
    let mut vertices = vec![v];
    while let Some(x) = stack.pop() {
        for c in colors.iter() {
            let w = g.partner(c, x);
            if !seen[w] {
                seen[w] = true;
                vertices.push(w);
                stack.push(w);
            }
        }
    }
    vertices.sort_unstable();
    ResidueView { colors, vertices }
}

/// `g_ĉ = 1` for every color `c`.
pub fn is_supercontracted(g: &ColoredGraph) -> bool {
    let all = g.all_colors();
    (0..g.num_colors()).all(|c| residue_count(g, all.without(c)) == 1)
}

/// Every residue for every color subset, with the cover relation of the
/// containment order.
#[derive(Debug, Clone)]
pub struct ResidueLattice {
    n: usize,
    order: usize,
    residues: Vec<ResidueView>,
    /// Indexed by color-set bits: index of the first residue of that subset.
    first: Vec<usize>,
    /// Indexed by color-set bits, then vertex: residue index.
    member: Vec<Vec<u32>>,
    /// For each residue, the residues it covers (one color fewer).
    lower: Vec<Vec<usize>>,
    /// For each residue, the residues covering it (one color more).
    upper: Vec<Vec<usize>>,
}

impl ResidueLattice {
    pub fn build(g: &ColoredGraph) -> Self {
        let n = g.dim();
        let order = g.order();
        let subsets = 1usize << (n + 1);
        let mut residues_all = Vec::new();
        let mut first = vec![0; subsets];
        let mut member = vec![Vec::new(); subsets];
        for bits in 0..subsets {
            let colors = ColorSet::from_bits(bits as u32);
            first[bits] = residues_all.len();
            let rs = residues(g, colors).expect("subset of the graph's colors");
            let mut table = vec![0u32; order];
            for (i, r) in rs.iter().enumerate() {
                for &v in &r.vertices {
                    table[v] = (first[bits] + i) as u32;
                }
            }
            member[bits] = table;
            residues_all.extend(rs);
        }
        let mut lower = vec![Vec::new(); residues_all.len()];
        let mut upper = vec![Vec::new(); residues_all.len()];
        for (idx, r) in residues_all.iter().enumerate() {
            for c in r.colors.iter() {
                let sub = r.colors.without(c);
                let mut below: Vec<usize> = r
                    .vertices
                    .iter()
                    .map(|&v| member[sub.bits() as usize][v] as usize)
                    .collect();
                below.sort_unstable();
                below.dedup();
                for b in below {
                    lower[idx].push(b);
                    upper[b].push(idx);
                }
            }
        }
        ResidueLattice {
            n,
            order,
            residues: residues_all,
            first,
            member,
            lower,
            upper,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn residues(&self) -> &[ResidueView] {
        &self.residues
    }

    pub fn get(&self, idx: usize) -> &ResidueView {
        &self.residues[idx]
    }

    /// `g_Δ`.
    pub fn count(&self, colors: ColorSet) -> usize {
        let bits = colors.bits() as usize;
        let end = self.first.get(bits + 1).copied().unwrap_or(self.residues.len());
        end - self.first[bits]
    }

    /// Indices of the `Δ`-residues.
    pub fn indices_of(&self, colors: ColorSet) -> std::ops::Range<usize> {
        let bits = colors.bits() as usize;
        let end = self.first.get(bits + 1).copied().unwrap_or(self.residues.len());
        self.first[bits]..end
    }

    /// Index of the `Δ`-residue through `v`.
    pub fn containing(&self, colors: ColorSet, v: Vertex) -> usize {
        self.member[colors.bits() as usize][v] as usize
    }

    pub fn index_of(&self, id: ResidueId) -> Option<usize> {
        if !id.colors.is_subset(ColorSet::full(self.n)) || id.min_vertex >= self.order {
            return None;
        }
        let idx = self.containing(id.colors, id.min_vertex);
        (self.residues[idx].vertices[0] == id.min_vertex).then_some(idx)
    }

    /// `|R_h|` for `h = 0..=n`.
    pub fn counts_by_rank(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 2];
        for r in &self.residues {
            counts[r.rank()] += 1;
        }
        counts.truncate(self.n + 1);
        counts
    }

    /// Residues covered by `idx`.
    pub fn covers(&self, idx: usize) -> &[usize] {
        &self.lower[idx]
    }

    /// Residues covering `idx`.
    pub fn covered_by(&self, idx: usize) -> &[usize] {
        &self.upper[idx]
    }

    /// `a ⪯ b` in the containment order.
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        let (ra, rb) = (&self.residues[a], &self.residues[b]);
        ra.colors.is_subset(rb.colors) && self.containing(rb.colors, ra.vertices[0]) == b
    }
}
