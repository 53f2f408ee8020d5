//! Regular genera and the G-degree.
//!
//! For a cyclic order `ε` of the colors, `Γ` embeds cellularly in a surface
//! whose faces are the `{ε_j, ε_{j+1}}`-bigons, so
//! `2 − 2ρ_ε = Σ_j g_{ε_j ε_{j+1}} + (1 − n)p`. For non-bipartite graphs the
//! surface is non-orientable and `ρ_ε` is half its genus, hence a
//! half-integer in general.

use std::fmt;

use rayon::prelude::*;

use super::InvariantError;
use crate::graph::{Color, ColorSet, ColoredGraph};
use crate::residues::{residue_count, residues};

/// A multiple of one half, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(x: i64) -> Self {
        HalfInt(2 * x)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        HalfInt(iter.map(|h| h.0).sum())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// Cyclic orders of `0..=n` up to reversal: sequences starting at `0` with
/// second entry smaller than the last. There are `n!/2` of them for `n ≥ 2`
/// and one for `n = 1`.
pub fn cyclic_permutations(n: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut rest: Vec<Color> = (1..=n).collect();
    permute(&mut rest, 0, &mut |seq| {
        if seq.len() < 2 || seq[0] < seq[seq.len() - 1] {
            let mut eps = vec![0];
            eps.extend_from_slice(seq);
            out.push(eps);
        }
    });
    out.sort();
    out
}

fn permute(items: &mut [Color], k: usize, visit: &mut impl FnMut(&[Color])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn pair(a: Color, b: Color) -> ColorSet {
    ColorSet::singleton(a).with(b)
}

/// `Σ_j g_{ε_j ε_{j+1}}` over the cyclic order `eps`.
fn consecutive_bigons(g: &ColoredGraph, eps: &[Color]) -> i64 {
    let k = eps.len();
    (0..k)
        .map(|j| residue_count(g, pair(eps[j], eps[(j + 1) % k])) as i64)
        .sum()
}

fn check_permutation(n: usize, eps: &[Color]) -> Result<(), InvariantError> {
    let mut seen = ColorSet::EMPTY;
    for &c in eps {
        if c > n || seen.contains(c) {
            return Err(InvariantError::InvalidPermutation { n });
        }
        seen.insert(c);
    }
    if eps.len() == n + 1 {
        Ok(())
    } else {
        Err(InvariantError::InvalidPermutation { n })
    }
}

/// `ρ_ε(Γ)`.
pub fn regular_genus(g: &ColoredGraph, eps: &[Color]) -> Result<HalfInt, InvariantError> {
    let n = g.dim();
    check_permutation(n, eps)?;
    let p = g.p() as i64;
    Ok(HalfInt(2 - consecutive_bigons(g, eps) - (1 - n as i64) * p))
}

/// The cyclic orders `ε^c` of `ĉ` used for the per-color relation.
pub const COMPLEMENT_ORDERS: [[Color; 4]; 5] = [[1, 3, 4, 2], [0, 3, 2, 4], [0, 3, 4, 1], [0, 2, 1, 4], [0, 2, 3, 1]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GDegreeChecks {
    /// `ω_G ≡ 0 (mod 3)`.
    pub multiple_of_three: bool,
    /// `ω_G = 3(4 + 6p − |R_2|)`.
    pub closed_form: bool,
    /// `Σ_c ω_G(Γ_ĉ) = 3ρ_G`.
    pub subdegree: bool,
    /// `2g_ĉ − 2ρ_ĉ = Σ_i g_{ε^c_i ε^c_{i+1}} − 2p`, one entry per color.
    pub per_color: Vec<bool>,
}

impl GDegreeChecks {
    pub fn all_pass(&self) -> bool {
        self.multiple_of_three && self.closed_form && self.subdegree && self.per_color.iter().all(|&b| b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GDegreeReport {
    pub n: usize,
    pub p: usize,
    pub per_permutation: Vec<(Vec<Color>, HalfInt)>,
    pub omega_g: HalfInt,
    /// `ω_G / 3`, five colors only.
    pub omega_g_reduced: Option<i64>,
    /// `|R_4| + 5p − |R_2|`, five colors only.
    pub rho_g: Option<i64>,
    /// Five colors only.
    pub checks: Option<GDegreeChecks>,
}

/// `ω_G` of a possibly disconnected graph given as its components.
fn omega_of_components(parent: &ColoredGraph, colors: ColorSet) -> HalfInt {
    residues(parent, colors)
        .expect("colors in range")
        .iter()
        .map(|r| {
            let sub = r.as_graph(parent).graph;
            cyclic_permutations(sub.dim())
                .iter()
                .map(|eps| regular_genus(&sub, eps).expect("generated orders are valid"))
                .sum::<HalfInt>()
        })
        .sum()
}

pub fn g_degree(g: &ColoredGraph) -> GDegreeReport {
    let n = g.dim();
    let p = g.p();
    let per_permutation: Vec<(Vec<Color>, HalfInt)> = cyclic_permutations(n)
        .into_par_iter()
        .map(|eps| {
            let rho = regular_genus(g, &eps).expect("generated orders are valid");
            (eps, rho)
        })
        .collect();
    let omega_g: HalfInt = per_permutation.iter().map(|x| x.1).sum();
    if n != 4 {
        return GDegreeReport {
            n,
            p,
            per_permutation,
            omega_g,
            omega_g_reduced: None,
            rho_g: None,
            checks: None,
        };
    }
    let rank_total = |h: usize| -> i64 { ColorSet::subsets_of_size(4, h).map(|s| residue_count(g, s) as i64).sum() };
    let (r2, r4) = (rank_total(2), rank_total(4));
    let p_i = p as i64;
    let rho_g = r4 + 5 * p_i - r2;
    let all = g.all_colors();
    let subdegree_sum: HalfInt = (0..5).map(|c| omega_of_components(g, all.without(c))).sum();
    let per_color = (0..5)
        .map(|c| {
            let hat = all.without(c);
            let eps = COMPLEMENT_ORDERS[c];
            let mut lhs = 0;
            for r in residues(g, hat).expect("colors in range") {
                let rg = r.as_graph(g);
                let local: Vec<Color> = eps.iter().map(|&e| rg.local_color(e).expect("color of the residue")).collect();
                let rho = regular_genus(&rg.graph, &local).expect("a cyclic order of the residue colors");
                lhs += 2 - rho.twice();
            }
            lhs == consecutive_bigons(g, &eps) - 2 * p_i
        })
        .collect();
    let twice = omega_g.twice();
    let checks = GDegreeChecks {
        multiple_of_three: twice % 6 == 0,
        closed_form: twice == 6 * (4 + 6 * p_i - r2),
        subdegree: subdegree_sum.twice() == 6 * rho_g,
        per_color,
    };
    GDegreeReport {
        n,
        p,
        per_permutation,
        omega_g,
        omega_g_reduced: (twice % 6 == 0).then_some(twice / 6),
        rho_g: Some(rho_g),
        checks: Some(checks),
    }
}

/// `2|R_3| − 3|R_2| + 10p` for five colors; nonnegative, and zero exactly
/// when `ĥM` is a singular manifold.
pub fn singular_manifold_defect(g: &ColoredGraph) -> i64 {
    let total = |h: usize| -> i64 { ColorSet::subsets_of_size(g.dim(), h).map(|s| residue_count(g, s) as i64).sum() };
    2 * total(3) - 3 * total(2) + 10 * g.p() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn factorial(k: usize) -> usize {
        (1..=k).product()
    }

    #[test]
    fn count_of_cyclic_orders() {
        assert_eq!(cyclic_permutations(1), vec![vec![0, 1]]);
        assert_eq!(cyclic_permutations(2), vec![vec![0, 1, 2]]);
        for n in 2..=6 {
            let all = cyclic_permutations(n);
            assert_eq!(all.len(), factorial(n) / 2);
            // no order appears together with its reversal
            for eps in &all {
                let mut rev = vec![0];
                rev.extend(eps[1..].iter().rev());
                assert!(rev == *eps || !all.contains(&rev));
            }
        }
    }

    #[test]
    fn order_two_graph_has_genus_zero() {
        let k = fixtures::k2(4);
        for eps in cyclic_permutations(4) {
            assert_eq!(regular_genus(&k, &eps).unwrap(), HalfInt::from_int(0));
        }
        let r = g_degree(&k);
        assert_eq!(r.omega_g_reduced, Some(0));
        assert!(r.checks.unwrap().all_pass());
    }

    #[test]
    fn torus_has_genus_one() {
        let r = g_degree(&fixtures::t6());
        assert_eq!(r.per_permutation.len(), 1);
        assert_eq!(r.omega_g, HalfInt::from_int(1));
        assert!(r.checks.is_none());
    }

    #[test]
    fn projective_plane_has_half_genus() {
        assert_eq!(g_degree(&fixtures::k4()).omega_g, HalfInt::from_twice(1));
        assert_eq!(HalfInt::from_twice(1).to_string(), "1/2");
    }

    #[test]
    fn order_four_five_colored_graphs() {
        let q = g_degree(&fixtures::q4());
        assert_eq!(q.per_permutation.len(), 12);
        assert_eq!(q.omega_g, HalfInt::from_int(6));
        assert_eq!(q.omega_g_reduced, Some(2));
        assert!(q.checks.unwrap().all_pass());
        let a = g_degree(&fixtures::order4_nonbipartite_311());
        let b = g_degree(&fixtures::order4_nonbipartite_221());
        assert_eq!((a.omega_g_reduced, b.omega_g_reduced), (Some(3), Some(4)));
        assert!(a.checks.unwrap().all_pass() && b.checks.unwrap().all_pass());
    }

    #[test]
    fn defect_vanishes_on_singular_manifolds() {
        assert_eq!(singular_manifold_defect(&fixtures::q4()), 0);
        assert_eq!(singular_manifold_defect(&fixtures::k2(4)), 0);
        assert!(singular_manifold_defect(&fixtures::f_tb()) > 0);
        assert!(singular_manifold_defect(&fixtures::order4_nonbipartite_311()) > 0);
    }

    #[test]
    fn bad_permutations() {
        let g = fixtures::rp3();
        assert!(regular_genus(&g, &[0, 1, 2]).is_err());
        assert!(regular_genus(&g, &[0, 1, 1, 2]).is_err());
        assert!(regular_genus(&g, &[0, 1, 2, 4]).is_err());
        assert!(regular_genus(&g, &[0, 2, 1, 3]).is_ok());
    }
}
