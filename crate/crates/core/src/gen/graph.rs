use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges are stored with the smaller endpoint first, in input order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u + 1));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0 + 1, e.1 + 1));
            }
            out.push(e);
        }
        Ok(SimpleGraph { n, edges: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of edges incident on `v`, ascending.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| x == v || y == v)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(x, y)| x == v || y == v).count()
    }

    /// Parses `n m` followed by `m` lines `u v` with 1-based vertices.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
            let nums: Vec<&str> = l.split_whitespace().collect();
            match nums.as_slice() {
                [x, y] => Ok((
                    x.parse().map_err(|_| GraphError::Syntax {
                        line,
                        message: format!("invalid number `{x}`"),
                    })?,
                    y.parse().map_err(|_| GraphError::Syntax {
                        line,
                        message: format!("invalid number `{y}`"),
                    })?,
                )),
                _ => Err(GraphError::Syntax {
                    line,
                    message: "expected two numbers".into(),
                }),
            }
        };
        let (line, header) = lines.next().ok_or(GraphError::Syntax {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let (u, v) = pair(line, l)?;
            if u == 0 || v == 0 {
                return Err(GraphError::VertexOutOfRange { vertex: 0, n });
            }
            edges.push((u - 1, v - 1));
        }
        if edges.len() != m {
            return Err(GraphError::EdgeCount {
                declared: m,
                found: edges.len(),
            });
        }
        SimpleGraph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let g = SimpleGraph::parse("3 3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(g.to_text(), "3 3\n1 2\n2 3\n1 3\n");
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.incident(2), vec![1, 2]);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(SimpleGraph::parse("2 1\n1 1\n"), Err(GraphError::SelfLoop(1))));
        assert!(matches!(
            SimpleGraph::parse("2 2\n1 2\n2 1\n"),
            Err(GraphError::DuplicateEdge(1, 2))
        ));
        assert!(matches!(
            SimpleGraph::parse("2 1\n1 3\n"),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 2 })
        ));
        assert!(matches!(SimpleGraph::parse("2 2\n1 2\n"), Err(GraphError::EdgeCount { .. })));
        assert!(matches!(SimpleGraph::parse("x\n"), Err(GraphError::Syntax { .. })));
    }
}
