//! Plain-text tree format.
//!
//! ```text
//! # comments start with '#', blank lines are ignored
//! 4          <- vertex count n
//! 1 2        <- one edge per line
//! 2 3
//! 2 4
//! 2 1 4 3    <- optional: position of vertex 1, 2, ..., n
//! ```
//!
//! Lines with two numbers are edges, a line with `n` numbers is the
//! arrangement. For `n = 2` both have two numbers, so the second data line
//! after the header is read as the arrangement.

use std::fmt::Write as _;

use deptree_core::{ArrangementError, LinearArrangement, Tree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EdgeListError {
    #[error("missing vertex count line")]
    MissingHeader,
    #[error("line {line}: {token:?} is not a non-negative integer")]
    BadNumber { line: usize, token: String },
    #[error(
        "line {line}: expected an edge (2 numbers) or an arrangement ({n} numbers), found {found}"
    )]
    BadLine { line: usize, n: usize, found: usize },
    #[error("line {line}: the arrangement must be the last line")]
    ArrangementNotLast { line: usize },
    #[error("line {line}: {source}")]
    Tree {
        line: usize,
        #[source]
        source: TreeError,
    },
    #[error("line {line}: {source}")]
    Arrangement {
        line: usize,
        #[source]
        source: ArrangementError,
    },
}

/// A tree read from an edge list, with its arrangement if one was given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub tree: Tree,
    pub arrangement: Option<LinearArrangement>,
}

impl EdgeList {
    /// The given arrangement, or sentence order.
    pub fn arrangement_or_identity(&self) -> LinearArrangement {
        self.arrangement
            .clone()
            .unwrap_or_else(|| LinearArrangement::identity(self.tree.n()))
    }
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<u32>, EdgeListError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| EdgeListError::BadNumber {
                line: line_no,
                token: tok.to_string(),
            })
        })
        .collect()
}

pub fn parse_edgelist(text: &str) -> Result<EdgeList, EdgeListError> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = data.next().ok_or(EdgeListError::MissingHeader)?;
    let header = numbers(header_line, header)?;
    let [n] = header[..] else {
        return Err(EdgeListError::BadLine {
            line: header_line,
            n: 1,
            found: header.len(),
        });
    };
    let n = n as usize;

    let mut edges = Vec::new();
    let mut arrangement: Option<(usize, Vec<u32>)> = None;
    let mut last_line = header_line;
    for (index, (line_no, line)) in data.enumerate() {
        if let Some((arr_line, _)) = arrangement {
            return Err(EdgeListError::ArrangementNotLast { line: arr_line });
        }
        last_line = line_no;
        let values = numbers(line_no, line)?;
        let is_arrangement = if n == 2 {
            index == 1
        } else {
            values.len() == n
        };
        if is_arrangement {
            arrangement = Some((line_no, values));
        } else if values.len() == 2 {
            edges.push((values[0], values[1]));
        } else {
            return Err(EdgeListError::BadLine {
                line: line_no,
                n,
                found: values.len(),
            });
        }
    }

    let tree = Tree::new(n, &edges).map_err(|source| EdgeListError::Tree {
        line: last_line,
        source,
    })?;
    let arrangement = arrangement
        .map(|(line, positions)| {
            LinearArrangement::from_positions(positions)
                .map_err(|source| EdgeListError::Arrangement { line, source })
        })
        .transpose()?;
    Ok(EdgeList { tree, arrangement })
}

/// Renders a tree (and optional arrangement) in the edge-list format.
pub fn write_edgelist(tree: &Tree, arrangement: Option<&LinearArrangement>) -> String {
    let mut out = String::new();
    writeln!(out, "{}", tree.n()).unwrap();
    for (u, v) in tree.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    if let Some(arr) = arrangement {
        writeln!(out, "{arr}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tree_and_arrangement() {
        let parsed = parse_edgelist("# path\n3\n1 2\n\n2 3\n1 2 3\n").unwrap();
        assert_eq!(parsed.tree, Tree::linear(3));
        assert_eq!(parsed.arrangement, Some(LinearArrangement::identity(3)));
    }

    #[test]
    fn wrong_edge_count() {
        let err = parse_edgelist("3\n1 2\n2 3\n1 3\n").unwrap_err();
        assert!(matches!(
            err,
            EdgeListError::Tree {
                line: 4,
                source: TreeError::WrongEdgeCount { .. }
            }
        ));
    }

    #[test]
    fn format_errors_carry_lines() {
        assert_eq!(
            parse_edgelist("# nothing\n"),
            Err(EdgeListError::MissingHeader)
        );
        assert_eq!(
            parse_edgelist("3\n1 x\n"),
            Err(EdgeListError::BadNumber {
                line: 2,
                token: "x".into()
            })
        );
        assert_eq!(
            parse_edgelist("4\n1 2 3\n"),
            Err(EdgeListError::BadLine {
                line: 2,
                n: 4,
                found: 3
            })
        );
        assert_eq!(
            parse_edgelist("3\n1 2 3\n1 2\n2 3\n"),
            Err(EdgeListError::ArrangementNotLast { line: 2 })
        );
        assert!(matches!(
            parse_edgelist("3\n1 2\n2 3\n1 1 3\n"),
            Err(EdgeListError::Arrangement { line: 4, .. })
        ));
    }

    #[test]
    fn two_vertices() {
        let parsed = parse_edgelist("2\n1 2\n2 1\n").unwrap();
        assert_eq!(parsed.arrangement.unwrap().positions(), &[2, 1]);
        assert!(parse_edgelist("2\n2 1\n").unwrap().arrangement.is_none());
    }

    #[test]
    fn write_then_parse() {
        let tree = Tree::star(5);
        let arr = LinearArrangement::identity(5).reversed();
        let parsed = parse_edgelist(&write_edgelist(&tree, Some(&arr))).unwrap();
        assert_eq!(parsed.tree, tree);
        assert_eq!(parsed.arrangement, Some(arr));
    }
}
