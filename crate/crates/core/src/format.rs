//! Text encodings of colored graphs.
//!
//! GEM v1 is a line-oriented format:
//!
//! ```text
//! # comments run to the end of the line
//! gem <n> <order>
//! 0: <image of 0> <image of 1> ... <image of order-1>
//! ...
//! n: ...
//! ```
//!
//! The single-line catalogue code used by census files is
//! `<n>;<order>;<images of color 0>;...;<images of color n>` with the images
//! of each color separated by commas.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ColoredGraph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A whitespace-separated token with its 1-based position.
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize_line(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &content[s..i],
                    line: line_no,
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &content[s..],
            line: line_no,
            column: s + 1,
        });
    }
    tokens
}

fn number(tok: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    tok.text
        .parse::<usize>()
        .map_err(|_| syntax(tok.line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

/// Parses and validates a GEM v1 document.
pub fn parse_gem(text: &str) -> Result<ColoredGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize_line(i + 1, l))
        .filter(|t| !t.is_empty());

    let header = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "empty input, expected `gem <n> <order>`"))?;
    if header[0].text != "gem" {
        return Err(syntax(
            header[0].line,
            header[0].column,
            format!("expected `gem`, found `{}`", header[0].text),
        ));
    }
    if header.len() != 3 {
        let t = header.last().unwrap();
        return Err(syntax(t.line, t.column, "header must be `gem <n> <order>`"));
    }
    let n = number(&header[1], "dimension")?;
    let order = number(&header[2], "order")?;
    if n == 0 {
        return Err(GraphError::TooFewColors(1).into());
    }
    if n + 1 > crate::graph::MAX_COLORS {
        return Err(GraphError::TooManyColors(n + 1).into());
    }

    let mut matchings: Vec<Option<Vec<Vertex>>> = vec![None; n + 1];
    for tokens in lines {
        let head = &tokens[0];
        let (label, rest_of_head) = match head.text.find(':') {
            Some(i) => (&head.text[..i], &head.text[i + 1..]),
            None => return Err(syntax(head.line, head.column, "expected `<color>:`")),
        };
        let color: usize = label
            .parse()
            .map_err(|_| syntax(head.line, head.column, format!("bad color label `{label}`")))?;
        if color > n {
            return Err(syntax(
                head.line,
                head.column,
                format!("color {color} out of range 0..={n}"),
            ));
        }
        if matchings[color].is_some() {
            return Err(syntax(head.line, head.column, format!("color {color} listed twice")));
        }
        let mut images = Vec::with_capacity(order);
        if !rest_of_head.is_empty() {
            let tok = Token {
                text: rest_of_head,
                line: head.line,
                column: head.column + label.len() + 1,
            };
            images.push(number(&tok, "vertex")?);
        }
        for tok in &tokens[1..] {
            images.push(number(tok, "vertex")?);
        }
        if images.len() != order {
            let t = tokens.last().unwrap();
            return Err(syntax(
                t.line,
                t.column,
                format!("color {color} lists {} images, expected {order}", images.len()),
            ));
        }
        matchings[color] = Some(images);
    }
    let matchings = matchings
        .into_iter()
        .enumerate()
        .map(|(c, m)| {
            m.ok_or_else(|| syntax(text.lines().count().max(1), 1, format!("missing color {c}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ColoredGraph::new(matchings)?)
}

/// Serializes to canonical GEM v1 text (no comments, single spaces).
pub fn to_gem(g: &ColoredGraph) -> String {
    let mut out = format!("gem {} {}\n", g.dim(), g.order());
    for c in 0..g.num_colors() {
        let _ = write!(out, "{c}:");
        for &w in g.matching(c) {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    out
}

/// Serializes to the single-line catalogue code.
pub fn to_code(g: &ColoredGraph) -> String {
    let mut out = format!("{};{}", g.dim(), g.order());
    for m in g.matchings() {
        out.push(';');
        for (i, w) in m.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{w}");
        }
    }
    out
}

/// Parses a catalogue code. Syntax errors report column positions within
/// the line; the line number is always 1.
pub fn parse_code(code: &str) -> Result<ColoredGraph, ParseError> {
    let code = code.trim();
    let fields: Vec<&str> = code.split(';').collect();
    let mut offsets = Vec::with_capacity(fields.len());
    let mut pos = 1;
    for f in &fields {
        offsets.push(pos);
        pos += f.len() + 1;
    }
    let field_num = |i: usize, what: &str| -> Result<usize, ParseError> {
        fields
            .get(i)
            .ok_or_else(|| syntax(1, pos, format!("missing {what}")))?
            .trim()
            .parse::<usize>()
            .map_err(|_| syntax(1, offsets[i], format!("expected {what}")))
    };
    let n = field_num(0, "dimension")?;
    let order = field_num(1, "order")?;
    if fields.len() != n + 3 {
        return Err(syntax(
            1,
            pos.saturating_sub(1).max(1),
            format!("expected {} color fields, found {}", n + 1, fields.len().saturating_sub(2)),
        ));
    }
    let mut matchings = Vec::with_capacity(n + 1);
    for (i, field) in fields.iter().enumerate().skip(2) {
        let images = field
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| syntax(1, offsets[i], "expected comma-separated vertices"))?;
        if images.len() != order {
            return Err(syntax(
                1,
                offsets[i],
                format!("color {} lists {} images, expected {order}", i - 2, images.len()),
            ));
        }
        matchings.push(images);
    }
    Ok(ColoredGraph::new(matchings)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_order_two_graph() {
        let g = parse_gem("gem 4 2\n0: 1 0\n1: 1 0\n2: 1 0\n3: 1 0\n4: 1 0\n").unwrap();
        assert_eq!(g, fixtures::k2(4));
    }

    #[test]
    fn parses_torus_with_comments() {
        let text = "# torus\ngem 2 6   # header\n0: 3 4 5 0 1 2\n1: 4 5 3 2 0 1\n\n2: 5 3 4 1 2 0\n";
        assert_eq!(parse_gem(text).unwrap(), fixtures::t6());
    }

    #[test]
    fn fixed_point_is_reported() {
        let text = "gem 4 4\n0: 1 0 3 2\n1: 1 0 3 2\n2: 0 3 2 1\n3: 3 2 1 0\n4: 3 2 1 0\n";
        assert_eq!(
            parse_gem(text).unwrap_err(),
            ParseError::Invalid(GraphError::FixedPoint { color: 2, vertex: 0 })
        );
    }

    #[test]
    fn distinct_error_variants() {
        let e = parse_gem("gem 1 4\n0: 1 0 3 2\n1: 1 0 3 2\n").unwrap_err();
        assert!(matches!(e, ParseError::Invalid(GraphError::Disconnected { .. })));
        let e = parse_gem("gem 1 3\n0: 1 0 2\n1: 1 0 2\n").unwrap_err();
        assert_eq!(e, ParseError::Invalid(GraphError::OddOrder(3)));
        let e = parse_gem("gem 1 4\n0: 1 2 3 0\n1: 1 0 3 2\n").unwrap_err();
        assert!(matches!(e, ParseError::Invalid(GraphError::NotInvolution { .. })));
        let e = parse_gem("gem 1 2\n0: 1 x\n1: 1 0\n").unwrap_err();
        assert_eq!(
            e,
            ParseError::Syntax {
                line: 2,
                column: 6,
                message: "expected vertex, found `x`".into()
            }
        );
        let e = parse_gem("gemm 1 2\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, column: 1, .. }));
        let e = parse_gem("gem 1 2\n0: 1 0\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { message, .. } if message == "missing color 1"));
    }

    #[test]
    fn gem_text_round_trips() {
        for g in [fixtures::k2(3), fixtures::t6(), fixtures::rp3(), fixtures::f_tb()] {
            let text = to_gem(&g);
            assert_eq!(parse_gem(&text).unwrap(), g);
            assert_eq!(to_gem(&parse_gem(&text).unwrap()), text);
        }
    }

    #[test]
    fn catalogue_code_round_trips() {
        let g = fixtures::q4();
        let code = to_code(&g);
        assert_eq!(code, "4;4;1,0,3,2;1,0,3,2;3,2,1,0;3,2,1,0;3,2,1,0");
        assert_eq!(parse_code(&code).unwrap(), g);
        assert!(matches!(parse_code("4;4;1,0"), Err(ParseError::Syntax { .. })));
    }
}
