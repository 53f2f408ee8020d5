//! Graphviz export.

use std::fmt::Write as _;

use crate::graph::{Color, ColoredGraph};

const PALETTE: [&str; 6] = ["red", "blue", "green", "orange", "purple", "brown"];

fn edge_style(c: Color) -> String {
    match PALETTE.get(c) {
        Some(name) => format!("color={name}"),
        None => format!("color=black, label=\"{c}\""),
    }
}

/// Renders `g` as an undirected DOT graph with one edge per color and
/// vertex pair, so parallel edges stay visible.
pub fn export_dot(g: &ColoredGraph) -> String {
    let mut out = String::from("graph gem {\n  node [shape=circle];\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for c in 0..g.num_colors() {
        let style = edge_style(c);
        for (v, w) in g.edges(c) {
            let _ = writeln!(out, "  {v} -- {w} [{style}];");
        }
    }
    out.push_str("}\n");
    out
}
