//! Canonical labeling of colored graphs.
//!
//! A connected colored graph is rigidly determined by one vertex: once a
//! start vertex is fixed, a breadth-first walk that visits colors in a fixed
//! order assigns every vertex a label, and any isomorphism must respect that
//! labeling. The canonical code is therefore the lexicographic minimum, over
//! all start vertices (and all color orders when colors may be permuted), of
//! the relabeled adjacency table. Disconnected partial structures used by
//! the census are handled componentwise with sorted component codes.

use std::cmp::Ordering;

use crate::graph::{Color, ColoredGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equivalence {
    /// Vertex relabelings only.
    ColorPreserving,
    /// Vertex relabelings together with any permutation of the colors.
    ColorPermuting,
}

impl Equivalence {
    pub fn as_str(self) -> &'static str {
        match self {
            Equivalence::ColorPreserving => "color-preserving",
            Equivalence::ColorPermuting => "color-permuting",
        }
    }
}

impl std::str::FromStr for Equivalence {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "color-preserving" => Ok(Equivalence::ColorPreserving),
            "color-permuting" => Ok(Equivalence::ColorPermuting),
            other => Err(format!(
                "unknown equivalence `{other}` (expected color-preserving or color-permuting)"
            )),
        }
    }
}

/// A total-order key: equal iff the graphs are isomorphic under `equivalence`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub equivalence: Equivalence,
    pub code: Vec<u8>,
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn color_orders(num_colors: usize, eq: Equivalence) -> Vec<Vec<Color>> {
    match eq {
        Equivalence::ColorPreserving => vec![(0..num_colors).collect()],
        Equivalence::ColorPermuting => permutations(num_colors),
    }
}

/// Scratch space for the breadth-first labeling.
struct Labeler {
    label: Vec<u32>,
    visit: Vec<Vertex>,
}

const UNSET: u32 = u32::MAX;

impl Labeler {
    fn new(order: usize) -> Self {
        Labeler {
            label: vec![UNSET; order],
            visit: Vec::with_capacity(order),
        }
    }

    /// Labels the component of `start` and writes its vertex-major table into
    /// `out`, aborting as soon as the table is known to exceed `best`.
    /// Returns `Ordering::Less` if a strictly smaller table was produced,
    /// `Equal` if the table equals `best`, `Greater` if aborted.
    fn run(
        &mut self,
        mats: &[&[Vertex]],
        start: Vertex,
        best: Option<&[u32]>,
        out: &mut Vec<u32>,
    ) -> Ordering {
        for &v in &self.visit {
            self.label[v] = UNSET;
        }
        self.visit.clear();
        out.clear();
        self.label[start] = 0;
        self.visit.push(start);
        let mut state = if best.is_some() {
            Ordering::Equal
        } else {
            Ordering::Less
        };
        let mut i = 0;
        while i < self.visit.len() {
            let v = self.visit[i];
            i += 1;
            for m in mats {
                let w = m[v];
                if self.label[w] == UNSET {
                    self.label[w] = self.visit.len() as u32;
                    self.visit.push(w);
                }
                let entry = self.label[w];
                if state == Ordering::Equal {
                    let b = best.unwrap()[out.len()];
                    match entry.cmp(&b) {
                        Ordering::Less => state = Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {}
                    }
                }
                out.push(entry);
            }
        }
        state
    }
}

/// Result of the minimization: the table plus the witness that produced it.
struct Best {
    table: Vec<u32>,
    colors: Vec<Color>,
    start: Vertex,
}

fn minimize_connected(g: &ColoredGraph, eq: Equivalence) -> Best {
    let mut labeler = Labeler::new(g.order());
    let mut best: Option<Best> = None;
    let mut scratch = Vec::with_capacity(g.order() * g.num_colors());
    for colors in color_orders(g.num_colors(), eq) {
        let mats: Vec<&[Vertex]> = colors.iter().map(|&c| g.matching(c)).collect();
        for start in 0..g.order() {
            let cmp = labeler.run(&mats, start, best.as_ref().map(|b| b.table.as_slice()), &mut scratch);
            if cmp == Ordering::Less {
                best = Some(Best {
                    table: scratch.clone(),
                    colors: colors.clone(),
                    start,
                });
            }
        }
    }
    best.expect("graph has at least one vertex")
}

fn encode(num_colors: usize, order: usize, tables: &[u32]) -> Vec<u8> {
    let mut code = Vec::with_capacity(3 + 2 * tables.len());
    code.push(num_colors as u8);
    code.extend_from_slice(&(order as u16).to_be_bytes());
    for &t in tables {
        code.extend_from_slice(&(t as u16).to_be_bytes());
    }
    code
}

/// Canonical code of a (connected) colored graph.
pub fn canonical_form(g: &ColoredGraph, eq: Equivalence) -> CanonicalCode {
    let best = minimize_connected(g, eq);
    CanonicalCode {
        equivalence: eq,
        code: encode(g.num_colors(), g.order(), &best.table),
    }
}

/// The representative of `g`'s class whose vertex-major table is the
/// canonical code.
pub fn canonical_graph(g: &ColoredGraph, eq: Equivalence) -> ColoredGraph {
    let best = minimize_connected(g, eq);
    let mats: Vec<&[Vertex]> = best.colors.iter().map(|&c| g.matching(c)).collect();
    let mut labeler = Labeler::new(g.order());
    let mut table = Vec::new();
    labeler.run(&mats, best.start, None, &mut table);
    let perm: Vec<Vertex> = labeler.label.iter().map(|&l| l as usize).collect();
    g.permute_colors(&best.colors).relabel(&perm)
}

pub fn is_isomorphic(a: &ColoredGraph, b: &ColoredGraph, eq: Equivalence) -> bool {
    a.num_colors() == b.num_colors()
        && a.order() == b.order()
        && canonical_form(a, eq) == canonical_form(b, eq)
}

/// Canonical code of a possibly disconnected family of perfect matchings on
/// the same vertex set: component codes are computed separately and sorted.
pub(crate) fn partial_code(matchings: &[Vec<Vertex>], eq: Equivalence) -> Vec<u32> {
    let order = matchings[0].len();
    let mut comp = vec![usize::MAX; order];
    let mut components: Vec<Vec<Vertex>> = Vec::new();
    for s in 0..order {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for m in matchings {
                let w = m[v];
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        components.push(members);
    }

    let mut labeler = Labeler::new(order);
    let mut scratch = Vec::new();
    let mut best_overall: Option<Vec<u32>> = None;
    for colors in color_orders(matchings.len(), eq) {
        let mats: Vec<&[Vertex]> = colors.iter().map(|&c| matchings[c].as_slice()).collect();
        let mut comp_codes: Vec<Vec<u32>> = components
            .iter()
            .map(|members| {
                let mut best: Option<Vec<u32>> = None;
                for &start in members {
                    if labeler.run(&mats, start, best.as_deref(), &mut scratch) == Ordering::Less {
                        best = Some(scratch.clone());
                    }
                }
                let mut code = vec![members.len() as u32];
                code.extend(best.unwrap());
                code
            })
            .collect();
        comp_codes.sort();
        let flat: Vec<u32> = comp_codes.concat();
        if best_overall.as_ref().is_none_or(|b| flat < *b) {
            best_overall = Some(flat);
        }
    }
    best_overall.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute force over all vertex relabelings (and color orders).
    fn brute_isomorphic(a: &ColoredGraph, b: &ColoredGraph, eq: Equivalence) -> bool {
        if a.order() != b.order() || a.num_colors() != b.num_colors() {
            return false;
        }
        color_orders(a.num_colors(), eq).iter().any(|colors| {
            let ap = a.permute_colors(colors);
            permutations(a.order()).iter().any(|perm| ap.relabel(perm) == *b)
        })
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn invariant_under_random_relabelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [fixtures::t6(), fixtures::q4(), fixtures::rp3(), fixtures::f_tb()] {
            let code = canonical_form(&g, Equivalence::ColorPreserving);
            let mut perm: Vec<usize> = (0..g.order()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                let h = g.relabel(&perm);
                assert_eq!(canonical_form(&h, Equivalence::ColorPreserving), code);
            }
        }
    }

    #[test]
    fn canonical_graph_realizes_code() {
        let g = fixtures::f_tb();
        for eq in [Equivalence::ColorPreserving, Equivalence::ColorPermuting] {
            let c = canonical_graph(&g, eq);
            assert!(brute_isomorphic(&g, &c, eq));
            assert_eq!(canonical_form(&c, eq), canonical_form(&g, eq));
            assert_eq!(canonical_graph(&c, eq), c);
        }
    }

    #[test]
    fn color_swap_is_equal_only_when_permuting() {
        let g = fixtures::q4_split();
        let swapped = g.permute_colors(&[1, 0, 2, 3, 4]);
        assert_ne!(
            canonical_form(&g, Equivalence::ColorPreserving),
            canonical_form(&swapped, Equivalence::ColorPreserving)
        );
        assert_eq!(
            canonical_form(&g, Equivalence::ColorPermuting),
            canonical_form(&swapped, Equivalence::ColorPermuting)
        );
    }

    #[test]
    fn duplicated_matching_positions() {
        // {A,A,B,B,B} with the A colors at {0,1} versus {0,2}.
        let a = vec![1, 0, 3, 2];
        let b = vec![3, 2, 1, 0];
        let g01 = ColoredGraph::new(vec![a.clone(), a.clone(), b.clone(), b.clone(), b.clone()]).unwrap();
        let g02 = ColoredGraph::new(vec![a.clone(), b.clone(), a.clone(), b.clone(), b.clone()]).unwrap();
        assert!(!brute_isomorphic(&g01, &g02, Equivalence::ColorPreserving));
        assert!(brute_isomorphic(&g01, &g02, Equivalence::ColorPermuting));
        assert!(!is_isomorphic(&g01, &g02, Equivalence::ColorPreserving));
        assert!(is_isomorphic(&g01, &g02, Equivalence::ColorPermuting));
    }

    #[test]
    fn agrees_with_brute_force_on_order_four() {
        let ms = [vec![1, 0, 3, 2], vec![3, 2, 1, 0], vec![2, 3, 0, 1]];
        let mut graphs = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    if let Ok(g) = ColoredGraph::new(vec![ms[x].clone(), ms[y].clone(), ms[z].clone()]) {
                        graphs.push(g);
                    }
                }
            }
        }
        for eq in [Equivalence::ColorPreserving, Equivalence::ColorPermuting] {
            for a in &graphs {
                for b in &graphs {
                    assert_eq!(is_isomorphic(a, b, eq), brute_isomorphic(a, b, eq), "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn partial_code_sorts_components() {
        let a = vec![vec![1, 0, 3, 2], vec![1, 0, 3, 2]];
        let c = vec![vec![3, 2, 1, 0], vec![3, 2, 1, 0]];
        assert_eq!(
            partial_code(&a, Equivalence::ColorPreserving),
            partial_code(&c, Equivalence::ColorPreserving)
        );
        let d = vec![vec![1, 0, 3, 2], vec![3, 2, 1, 0]];
        assert_ne!(
            partial_code(&a, Equivalence::ColorPreserving),
            partial_code(&d, Equivalence::ColorPreserving)
        );
    }
}
