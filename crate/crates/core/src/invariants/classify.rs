//! Names for the manifolds represented by very small graphs.

use std::fmt;

use super::{fingerprint, InvariantError};
use crate::graph::ColoredGraph;
use crate::singularity::{sphere_status, Analysis, TriBool, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Classification {
    Named(String),
    Unknown,
}

impl Classification {
    pub fn name(&self) -> Option<&str> {
        match self {
            Classification::Named(s) => Some(s),
            Classification::Unknown => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name().unwrap_or("unknown"))
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|d| DIGITS[d as usize - '0' as usize]).collect()
}

fn sphere(n: usize) -> String {
    format!("S{}", superscript(n))
}

fn named(s: impl Into<String>) -> Result<Classification, InvariantError> {
    Ok(Classification::Named(s.into()))
}

/// Largest order covered by the table.
pub const TABLE_MAX_ORDER: usize = 6;
/// Largest dimension covered by the table.
pub const TABLE_MAX_DIM: usize = 4;

/// Names the manifold `M` for graphs of order at most six in dimension at
/// most four:
///
/// * order two: the sphere;
/// * order four: the sphere when bipartite, otherwise `RP²×B^{n−2}`;
/// * surfaces by orientability and Euler characteristic;
/// * bipartite order-six graphs in dimensions three and four by their
///   Euler characteristic, first homology and boundary count.
///
/// Everything else in range is `Unknown`.
pub fn classify_small(g: &ColoredGraph) -> Result<Classification, InvariantError> {
    let (n, order) = (g.dim(), g.order());
    if order > TABLE_MAX_ORDER || n > TABLE_MAX_DIM {
        return Err(InvariantError::OutOfTableRange { n, order });
    }
    if order == 2 {
        return named(sphere(n));
    }
    if n == 1 {
        return named("S¹");
    }
    if n == 2 {
        return named(surface_name(g));
    }
    if order == 4 {
        return if g.is_bipartite() {
            named(sphere(n))
        } else if n == 3 {
            named("RP²×I")
        } else {
            named(format!("RP²×B{}", superscript(n - 2)))
        };
    }
    if !g.is_bipartite() {
        return Ok(Classification::Unknown);
    }
    let analysis = Analysis::new(g);
    let f = fingerprint(&analysis)?;
    let closed = analysis.is_closed() == TriBool::True;
    if closed {
        return Ok(match sphere_status(g).verdict {
            Verdict::Sphere => Classification::Named(sphere(n)),
            _ => Classification::Unknown,
        });
    }
    let rank = (f.h1.torsion.is_empty()).then_some(f.h1.free_rank);
    let name = match (n, f.boundary_components, f.chi_manifold, rank) {
        (3, 1, 0, Some(1)) => "S¹×B²",
        (3, 2, 0, Some(2)) => "T²×I",
        (4, 1, 1, Some(0)) => "B⁴",
        (4, 1, 0, Some(1)) => "S¹×B³",
        (4, 1, 0, Some(2)) => "S¹×S¹×B²",
        _ => return Ok(Classification::Unknown),
    };
    named(name)
}

fn surface_name(g: &ColoredGraph) -> String {
    let bigons: usize = (0..3)
        .map(|c| crate::residues::residue_count(g, g.all_colors().without(c)))
        .sum();
    let chi = bigons as i64 - g.p() as i64;
    if g.is_bipartite() {
        match chi {
            2 => "S²".into(),
            0 => "T²".into(),
            _ => format!("#{}T²", (2 - chi) / 2),
        }
    } else {
        match chi {
            1 => "RP²".into(),
            0 => "K²".into(),
            _ => format!("#{}RP²", 2 - chi),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn name(g: &ColoredGraph) -> String {
        classify_small(g).unwrap().to_string()
    }

    #[test]
    fn small_fixtures() {
        assert_eq!(name(&fixtures::k2(4)), "S⁴");
        assert_eq!(name(&fixtures::k2(1)), "S¹");
        assert_eq!(name(&fixtures::q4()), "S⁴");
        assert_eq!(name(&fixtures::q4_split()), "S⁴");
        assert_eq!(name(&fixtures::order4_nonbipartite_311()), "RP²×B²");
        assert_eq!(name(&fixtures::order4_nonbipartite_221()), "RP²×B²");
        assert_eq!(name(&fixtures::t6()), "T²");
        assert_eq!(name(&fixtures::k4()), "RP²");
        assert_eq!(name(&fixtures::suspended_t6()), "T²×I");
        assert_eq!(name(&fixtures::f_tb()), "S¹×S¹×B²");
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            classify_small(&fixtures::rp3()),
            Err(InvariantError::OutOfTableRange { n: 3, order: 8 })
        ));
        assert!(matches!(
            classify_small(&fixtures::k2(5)),
            Err(InvariantError::OutOfTableRange { .. })
        ));
    }

    #[test]
    fn superscripts() {
        assert_eq!(sphere(12), "S¹²");
        assert_eq!(superscript(0), "⁰");
    }
}
