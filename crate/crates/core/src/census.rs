//! Isomorph-free enumeration of small colored graphs.
//!
//! Color 0 is fixed to the matching `(0 1)(2 3)…`. Colors are then added one
//! at a time in every possible way, and after each round the partial
//! assignments are reduced to one per isomorphism class of the partial
//! structure (vertex relabelings, plus permutations of the colors placed so
//! far when colors may be permuted). Any graph restricted to its first `k`
//! colors is isomorphic to a kept partial assignment, so the reduction loses
//! nothing. Survivors of the last round are filtered and deduplicated by
//! canonical form.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::canonical::{canonical_graph, partial_code, Equivalence};
use crate::format::{parse_code, to_code, ParseError};
use crate::graph::{ColorSet, ColoredGraph, Vertex};
use crate::invariants::{classify_small, fingerprint, g_degree, singular_manifold_defect, Fingerprint};
use crate::moves::{find_dipoles, DipoleKind};
use crate::residues::is_supercontracted;
use crate::singularity::{Analysis, TriBool};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n={n} order={order} exceeds the budget (n <= {max_n}, order <= {max_order})")]
    BudgetExceeded {
        n: usize,
        order: usize,
        max_n: usize,
        max_order: usize,
    },
    #[error("invalid census parameters: {0}")]
    InvalidParams(String),
    #[error("catalogue line {line}: {message}")]
    Catalogue { line: usize, message: String },
    #[error("catalogue line {line}: {source}")]
    Entry { line: usize, source: ParseError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Filters {
    pub bipartite_only: bool,
    pub nonbipartite_only: bool,
    pub supercontracted: bool,
    pub no_ordinary_dipoles: bool,
}

impl Filters {
    fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.bipartite_only {
            out.push("bipartite");
        }
        if self.nonbipartite_only {
            out.push("nonbipartite");
        }
        if self.supercontracted {
            out.push("supercontracted");
        }
        if self.no_ordinary_dipoles {
            out.push("no-ordinary-dipoles");
        }
        out
    }

    fn parse(text: &str) -> Result<Filters, String> {
        let mut f = Filters::default();
        if text == "none" {
            return Ok(f);
        }
        for name in text.split(',') {
            match name {
                "bipartite" => f.bipartite_only = true,
                "nonbipartite" => f.nonbipartite_only = true,
                "supercontracted" => f.supercontracted = true,
                "no-ordinary-dipoles" => f.no_ordinary_dipoles = true,
                other => return Err(format!("unknown filter `{other}`")),
            }
        }
        Ok(f)
    }
}

impl fmt::Display for Filters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusParams {
    pub n: usize,
    pub order: usize,
    pub equivalence: Equivalence,
    pub filters: Filters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_n: usize,
    pub max_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_n: 5, max_order: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalogue {
    pub params: CensusParams,
    /// Canonical codes, sorted.
    pub entries: Vec<String>,
}

const HEADER: &str = "# gemkit-census v1";

impl Catalogue {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn graphs(&self) -> Vec<ColoredGraph> {
        self.entries
            .iter()
            .map(|c| parse_code(c).expect("catalogue entries are valid codes"))
            .collect()
    }

    /// `(bipartite, non-bipartite)` entry counts.
    pub fn bipartite_split(&self) -> (usize, usize) {
        let b = self.graphs().iter().filter(|g| g.is_bipartite()).count();
        (b, self.len() - b)
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "{HEADER} n={} order={} eq={} filters={}\n",
            p.n,
            p.order,
            p.equivalence.as_str(),
            p.filters
        );
        for e in &self.entries {
            out.push_str(e);
            out.push('\n');
        }
        let (b, nb) = self.bipartite_split();
        out.push_str(&format!("# count={} bipartite={b} nonbipartite={nb}\n", self.len()));
        out
    }

    pub fn parse_text(text: &str) -> Result<Catalogue, CensusError> {
        let bad = |line: usize, message: String| CensusError::Catalogue { line, message };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty catalogue".into()))?;
        let rest = header
            .strip_prefix(HEADER)
            .ok_or_else(|| bad(1, format!("expected `{HEADER}` header")))?;
        let mut fields = BTreeMap::new();
        for tok in rest.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad(1, format!("bad header field `{tok}`")))?;
            fields.insert(k, v);
        }
        let field = |k: &str| fields.get(k).copied().ok_or_else(|| bad(1, format!("missing header field `{k}`")));
        let num = |k: &str| -> Result<usize, CensusError> {
            field(k)?.parse().map_err(|_| bad(1, format!("bad number for `{k}`")))
        };
        let params = CensusParams {
            n: num("n")?,
            order: num("order")?,
            equivalence: field("eq")?.parse().map_err(|e| bad(1, e))?,
            filters: Filters::parse(field("filters")?).map_err(|e| bad(1, e))?,
        };
        let mut entries = Vec::new();
        let mut footer = None;
        for (i, line) in lines {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(f) = line.strip_prefix("# count=") {
                let count = f.split_whitespace().next().unwrap_or("");
                footer = Some(count.parse::<usize>().map_err(|_| bad(line_no, "bad count".into()))?);
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let g = parse_code(line).map_err(|source| CensusError::Entry { line: line_no, source })?;
            if g.dim() != params.n || g.order() != params.order {
                return Err(bad(line_no, "entry does not match the header".into()));
            }
            entries.push(line.to_string());
        }
        if let Some(count) = footer {
            if count != entries.len() {
                return Err(bad(0, format!("footer count {count} but {} entries", entries.len())));
            }
        }
        Ok(Catalogue { params, entries })
    }
}

fn standard_matching(order: usize) -> Vec<Vertex> {
    (0..order).map(|v| v ^ 1).collect()
}

/// Every fixed-point-free involution of `0..order`.
pub fn perfect_matchings(order: usize) -> Vec<Vec<Vertex>> {
    fn go(m: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let Some(v) = m.iter().position(|&x| x == usize::MAX) else {
            out.push(m.clone());
            return;
        };
        for w in v + 1..m.len() {
            if m[w] == usize::MAX {
                m[v] = w;
                m[w] = v;
                go(m, out);
                m[v] = usize::MAX;
                m[w] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; order], &mut out);
    out
}

fn connected(matchings: &[Vec<Vertex>]) -> bool {
    let order = matchings[0].len();
    crate::graph::reachable_count(matchings, ColorSet::full(matchings.len() - 1), 0) == order
}

/// Two-colorability of the union of the matchings.
fn two_colorable(matchings: &[Vec<Vertex>]) -> bool {
    let order = matchings[0].len();
    let mut side = vec![u8::MAX; order];
    for s in 0..order {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for m in matchings {
                let w = m[v];
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn check_params(params: &CensusParams, budget: Budget) -> Result<(), CensusError> {
    let CensusParams { n, order, filters, .. } = *params;
    if n > budget.max_n || order > budget.max_order {
        return Err(CensusError::BudgetExceeded {
            n,
            order,
            max_n: budget.max_n,
            max_order: budget.max_order,
        });
    }
    if n == 0 {
        return Err(CensusError::InvalidParams("n must be at least 1".into()));
    }
    if order < 2 || order % 2 == 1 {
        return Err(CensusError::InvalidParams("order must be even and positive".into()));
    }
    if filters.bipartite_only && filters.nonbipartite_only {
        return Err(CensusError::InvalidParams("bipartite and nonbipartite filters exclude each other".into()));
    }
    Ok(())
}

pub fn enumerate(params: &CensusParams) -> Result<Catalogue, CensusError> {
    enumerate_with_budget(params, Budget::default())
}

pub fn enumerate_with_budget(params: &CensusParams, budget: Budget) -> Result<Catalogue, CensusError> {
    check_params(params, budget)?;
    let CensusParams {
        n,
        order,
        equivalence,
        filters,
    } = *params;
    let choices = perfect_matchings(order);
    let mut level: Vec<Vec<Vec<Vertex>>> = vec![vec![standard_matching(order)]];
    for k in 1..=n {
        let extended: Vec<(Vec<u32>, Vec<Vec<Vertex>>)> = level
            .par_iter()
            .flat_map_iter(|partial| {
                choices.iter().filter_map(move |m| {
                    let mut next = partial.clone();
                    next.push(m.clone());
                    // partial structures of a bipartite graph are bipartite
                    if filters.bipartite_only && !two_colorable(&next) {
                        return None;
                    }
                    // the first n colors form the residue missing the last one
                    if filters.supercontracted && k + 1 == n && !connected(&next) {
                        return None;
                    }
                    if k == n && !connected(&next) {
                        return None;
                    }
                    Some((partial_code(&next, equivalence), next))
                })
            })
            .collect();
        let mut by_code: BTreeMap<Vec<u32>, Vec<Vec<Vertex>>> = BTreeMap::new();
        for (code, m) in extended {
            by_code.entry(code).or_insert(m);
        }
        level = by_code.into_values().collect();
    }
    let mut entries: Vec<String> = level
        .into_par_iter()
        .filter_map(|matchings| {
            let g = ColoredGraph::new(matchings).ok()?;
            let keep = (!filters.bipartite_only || g.is_bipartite())
                && (!filters.nonbipartite_only || !g.is_bipartite())
                && (!filters.supercontracted || is_supercontracted(&g))
                && (!filters.no_ordinary_dipoles
                    || find_dipoles(&g).iter().all(|d| d.kind != Some(DipoleKind::Ordinary)));
            keep.then(|| to_code(&canonical_graph(&g, equivalence)))
        })
        .collect();
    entries.sort();
    entries.dedup();
    Ok(Catalogue {
        params: *params,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub code: String,
    pub bipartite: bool,
    /// `None` when some residue could not be classified.
    pub fingerprint: Option<Fingerprint>,
    pub closed: TriBool,
    pub singular_manifold: TriBool,
    /// `ω′_G`, five colors only.
    pub omega_reduced: Option<i64>,
    pub classification: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub entries: Vec<EntryReport>,
    pub omega_histogram: BTreeMap<i64, usize>,
    pub closed: usize,
    pub singular_manifolds: usize,
    pub unresolved: usize,
    /// Five colors: defect `2|R_3| − 3|R_2| + 10p` is nonnegative and zero
    /// exactly on singular manifolds.
    pub defect_ok: bool,
    /// Five colors: the closed form, subdegree and per-color identities.
    pub gdegree_ok: bool,
    /// Five colors: `ω′_G` is even on bipartite entries and on singular
    /// manifolds.
    pub parity_ok: bool,
}

pub fn census_report(cat: &Catalogue) -> CensusReport {
    let entries: Vec<EntryReport> = cat
        .entries
        .par_iter()
        .map(|code| {
            let g = parse_code(code).expect("catalogue entries are valid codes");
            let analysis = Analysis::new(&g);
            let degree = (g.dim() == 4).then(|| g_degree(&g));
            EntryReport {
                code: code.clone(),
                bipartite: g.is_bipartite(),
                fingerprint: fingerprint(&analysis).ok(),
                closed: analysis.is_closed(),
                singular_manifold: analysis.is_singular_manifold(),
                omega_reduced: degree.and_then(|d| d.omega_g_reduced),
                classification: classify_small(&g).ok().map(|c| c.to_string()),
            }
        })
        .collect();
    let five = cat.params.n == 4;
    let mut omega_histogram = BTreeMap::new();
    for e in &entries {
        if let Some(w) = e.omega_reduced {
            *omega_histogram.entry(w).or_insert(0) += 1;
        }
    }
    let defect_ok = !five
        || cat.entries.iter().zip(&entries).all(|(code, e)| {
            let d = singular_manifold_defect(&parse_code(code).expect("valid code"));
            d >= 0 && (e.singular_manifold == TriBool::Indeterminate || (d == 0) == e.singular_manifold.is_true())
        });
    let gdegree_ok = !five
        || cat.entries.iter().all(|code| {
            let r = g_degree(&parse_code(code).expect("valid code"));
            r.checks.is_some_and(|c| c.all_pass())
        });
    let parity_ok = !five
        || entries.iter().all(|e| {
            let must_be_even = e.bipartite || e.singular_manifold.is_true();
            !must_be_even || e.omega_reduced.is_some_and(|w| w % 2 == 0)
        });
    CensusReport {
        omega_histogram,
        closed: entries.iter().filter(|e| e.closed.is_true()).count(),
        singular_manifolds: entries.iter().filter(|e| e.singular_manifold.is_true()).count(),
        unresolved: entries.iter().filter(|e| e.fingerprint.is_none()).count(),
        defect_ok,
        gdegree_ok,
        parity_ok,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn params(n: usize, order: usize, eq: Equivalence, filters: Filters) -> CensusParams {
        CensusParams {
            n,
            order,
            equivalence: eq,
            filters,
        }
    }

    fn supercontracted() -> Filters {
        Filters {
            supercontracted: true,
            ..Filters::default()
        }
    }

    /// Isomorphism by trying every vertex bijection and color permutation.
    fn brute_isomorphic(a: &ColoredGraph, b: &ColoredGraph, permute_colors: bool) -> bool {
        let k = a.num_colors();
        let color_perms = if permute_colors {
            crate::canonical::permutations(k)
        } else {
            vec![(0..k).collect()]
        };
        crate::canonical::permutations(a.order()).iter().any(|pv| {
            color_perms.iter().any(|pc| {
                (0..k).all(|c| (0..a.order()).all(|v| pv[a.matching(c)[v]] == b.matching(pc[c])[pv[v]]))
            })
        })
    }

    fn brute_force_classes(n: usize, order: usize, permute_colors: bool) -> usize {
        let all = perfect_matchings(order);
        let mut reps: Vec<ColoredGraph> = Vec::new();
        let mut idx = vec![0usize; n + 1];
        loop {
            let ms: Vec<Vec<Vertex>> = idx.iter().map(|&i| all[i].clone()).collect();
            if let Ok(g) = ColoredGraph::new(ms) {
                if !reps.iter().any(|r| brute_isomorphic(r, &g, permute_colors)) {
                    reps.push(g);
                }
            }
            let Some(pos) = (0..=n).find(|&i| idx[i] + 1 < all.len()) else {
                break;
            };
            idx[pos] += 1;
            for i in idx.iter_mut().take(pos) {
                *i = 0;
            }
        }
        reps.len()
    }

    #[test]
    fn matches_brute_force_on_tiny_cases() {
        for (n, order) in [(2, 4), (1, 4), (2, 2), (3, 4)] {
            for eq in [Equivalence::ColorPreserving, Equivalence::ColorPermuting] {
                let cat = enumerate(&params(n, order, eq, Filters::default())).unwrap();
                let expected = brute_force_classes(n, order, eq == Equivalence::ColorPermuting);
                assert_eq!(cat.len(), expected, "n={n} order={order} {eq:?}");
            }
        }
    }

    #[test]
    fn equivalence_changes_counts() {
        let f = Filters {
            bipartite_only: true,
            ..supercontracted()
        };
        let perm = enumerate(&params(4, 4, Equivalence::ColorPermuting, f)).unwrap();
        let pres = enumerate(&params(4, 4, Equivalence::ColorPreserving, f)).unwrap();
        assert_eq!(perm.len(), 1);
        assert!(pres.len() > 1);
        assert!(crate::canonical::is_isomorphic(
            &perm.graphs()[0],
            &fixtures::q4(),
            Equivalence::ColorPermuting
        ));
    }

    #[test]
    fn deterministic_and_round_trips() {
        let p = params(3, 6, Equivalence::ColorPermuting, supercontracted());
        let a = enumerate(&p).unwrap();
        let b = enumerate(&p).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let back = Catalogue::parse_text(&a.to_text()).unwrap();
        assert_eq!(back, a);
        for g in a.graphs() {
            assert_eq!(crate::format::parse_gem(&crate::format::to_gem(&g)).unwrap(), g);
        }
        let mut sorted = a.entries.clone();
        sorted.sort();
        assert_eq!(sorted, a.entries);
    }

    #[test]
    fn filters_agree_with_their_predicates() {
        let all = enumerate(&params(3, 6, Equivalence::ColorPermuting, Filters::default())).unwrap();
        let sc = enumerate(&params(3, 6, Equivalence::ColorPermuting, supercontracted())).unwrap();
        let expected: Vec<String> = all
            .entries
            .iter()
            .filter(|c| is_supercontracted(&parse_code(c).unwrap()))
            .cloned()
            .collect();
        assert_eq!(sc.entries, expected);
        let nd = Filters {
            no_ordinary_dipoles: true,
            ..Filters::default()
        };
        let no_dip = enumerate(&params(3, 6, Equivalence::ColorPermuting, nd)).unwrap();
        let expected: Vec<String> = all
            .entries
            .iter()
            .filter(|c| {
                find_dipoles(&parse_code(c).unwrap())
                    .iter()
                    .all(|d| d.kind != Some(DipoleKind::Ordinary))
            })
            .cloned()
            .collect();
        assert_eq!(no_dip.entries, expected);
    }

    #[test]
    fn budget_and_params() {
        let big = params(4, 10, Equivalence::ColorPermuting, Filters::default());
        assert!(matches!(enumerate(&big), Err(CensusError::BudgetExceeded { .. })));
        let odd = params(2, 5, Equivalence::ColorPermuting, Filters::default());
        assert!(matches!(enumerate(&odd), Err(CensusError::InvalidParams(_))));
        let both = Filters {
            bipartite_only: true,
            nonbipartite_only: true,
            ..Filters::default()
        };
        assert!(enumerate(&params(2, 4, Equivalence::ColorPermuting, both)).is_err());
    }

    #[test]
    fn catalogue_parse_errors() {
        assert!(Catalogue::parse_text("").is_err());
        assert!(Catalogue::parse_text("# other\n").is_err());
        let text = "# gemkit-census v1 n=1 order=2 eq=color-permuting filters=none\n1;2;1,0;1,0\n# count=2\n";
        assert!(matches!(Catalogue::parse_text(text), Err(CensusError::Catalogue { .. })));
        let text = "# gemkit-census v1 n=1 order=2 eq=color-permuting filters=none\n1;2;1,0\n";
        assert!(matches!(Catalogue::parse_text(text), Err(CensusError::Entry { line: 2, .. })));
    }

    #[test]
    fn perfect_matching_counts() {
        assert_eq!(perfect_matchings(2).len(), 1);
        assert_eq!(perfect_matchings(4).len(), 3);
        assert_eq!(perfect_matchings(6).len(), 15);
        assert_eq!(perfect_matchings(8).len(), 105);
    }

    #[test]
    fn report_on_order_four() {
        let cat = enumerate(&params(4, 4, Equivalence::ColorPermuting, supercontracted())).unwrap();
        let r = census_report(&cat);
        assert_eq!(r.omega_histogram, BTreeMap::from([(2, 1), (3, 1), (4, 1)]));
        assert!(r.defect_ok && r.gdegree_ok && r.parity_ok);
        assert_eq!(r.unresolved, 0);
    }
}
