//! Longest trails in the looped complete graph, domino snakes, and the
//! edge map from right-lane cars of single-zero arrival sequences.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::arrival::{simulate, ArrivalSequence};
use crate::error::{Error, Result};

/// An undirected edge of the looped complete graph, normalized to
/// `i <= j`; `i == j` is a loop.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    i: usize,
    j: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { i: a, j: b }
        } else {
            Edge { i: b, j: a }
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn is_loop(&self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// An ordered edge walk: consecutive vertices joined by the listed edges,
/// no edge repeated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trail {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl Trail {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks consecutive incidence and edge uniqueness.
    pub fn is_valid(&self) -> bool {
        if self.vertices.len() != self.edges.len() + 1 {
            return false;
        }
        let mut seen = BTreeSet::new();
        for (w, e) in self.vertices.windows(2).zip(&self.edges) {
            if Edge::new(w[0], w[1]) != *e || !seen.insert(*e) {
                return false;
            }
        }
        true
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }
}

impl fmt::Display for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.vertices.iter().enumerate() {
            if idx > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A line of dominoes laid end to end.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DominoSnake {
    pub pieces: Vec<(usize, usize)>,
}

impl DominoSnake {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Adjacent pieces must match end to end and no piece may repeat.
    pub fn is_valid(&self) -> bool {
        let mut seen = BTreeSet::new();
        for pair in self.pieces.windows(2) {
            if pair[0].1 != pair[1].0 {
                return false;
            }
        }
        self.pieces
            .iter()
            .all(|&(a, b)| seen.insert(Edge::new(a, b)))
    }
}

impl fmt::Display for DominoSnake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(a, b) in &self.pieces {
            write!(f, "[{a}:{b}]")?;
        }
        Ok(())
    }
}

/// Maps right-lane car `c` of the single-zero sequence with its zero at
/// position `p` to an edge of the looped complete graph on `len` vertices.
/// The piecewise formula depends on the parities of `len` and `p`.
pub fn rho(c: usize, p: usize, len: usize) -> Result<Edge> {
    if c < 1 || c > len || p < 1 || p > len {
        return Err(Error::Domain(format!(
            "car {c} and zero position {p} must lie in 1..={len}"
        )));
    }
    let (a, b) = if len.is_multiple_of(2) {
        if p % 2 == 1 {
            if c < p {
                (c + 1, p)
            } else {
                (p, c)
            }
        } else if c + 1 == p && p != len {
            // (c, p) would be a removed matching edge; reroute through the
            // last vertex.
            (p, len)
        } else if c <= p {
            (c, p)
        } else {
            (p, c - 1)
        }
    } else if c == p {
        (p, p)
    } else if p % 2 == 1 {
        if c < p {
            (c + 1, p)
        } else {
            (p, c)
        }
    } else if c < p {
        (c, p)
    } else {
        (p, c - 1)
    };
    Ok(Edge::new(a, b))
}

/// Recovers `(car, zero position)` from an edge in the image of `rho`.
/// For even `len` the removed matching edges `(1,2), (3,4), ...,
/// (len-3, len-2)` are not in the image and are rejected.
pub fn rho_inverse(e: Edge, len: usize) -> Result<(usize, usize)> {
    let (i, j) = (e.i, e.j);
    if i < 1 || j > len {
        return Err(Error::Domain(format!("edge {e} does not fit in 1..={len}")));
    }
    if i == j {
        return Ok((i, i));
    }
    if len.is_multiple_of(2) {
        if i % 2 == 1 && j == i + 1 && j <= len - 2 {
            return Err(Error::Domain(format!(
                "edge {e} belongs to the removed matching for even lengths"
            )));
        }
        let (c, p) = match (i % 2, j % 2) {
            (1, 1) => (j, i),
            (0, 0) if j == len => (i - 1, i),
            (0, 0) => (j + 1, i),
            (0, 1) => (i - 1, j),
            _ => (i, j), // i odd, j even
        };
        Ok((c, p))
    } else {
        let (c, p) = match (i % 2, j % 2) {
            (1, 1) => (j, i),
            (0, 0) => (j + 1, i),
            (0, 1) => (i - 1, j),
            _ => (i, j),
        };
        Ok((c, p))
    }
}

/// Edge set assigned to the right-lane cars of a single-zero sequence.
pub fn rho_image(b: &ArrivalSequence) -> Result<BTreeSet<Edge>> {
    if b.zeros() != 1 {
        return Err(Error::Domain(format!(
            "{b} has {} zeros, the edge map needs exactly one",
            b.zeros()
        )));
    }
    let len = b.len();
    let p = b.bits().iter().position(|&bit| bit == 0).unwrap() + 1;
    let result = simulate(b);
    let mut edges = BTreeSet::new();
    for &c in &result.right_lane {
        edges.insert(rho(c, p, len)?);
    }
    debug_assert_eq!(edges.len(), result.r());
    Ok(edges)
}

/// Closed formula for the longest-trail length in the looped complete
/// graph on `len` vertices.
pub fn longest_trail_length(len: u64) -> u64 {
    let pairs = len * (len - 1) / 2;
    if len % 2 == 1 {
        pairs + len
    } else {
        pairs + len / 2 + 1
    }
}

/// Builds one canonical longest trail: an Eulerian walk of the complete
/// graph (minus the matching `(1,2), (3,4), ..., (len-3, len-2)` when
/// `len` is even), with each vertex's loop inserted at its first visit.
/// Tie-breaking is lowest-numbered available neighbor first.
pub fn longest_trail(len: usize) -> Trail {
    assert!(len >= 1, "the graph needs at least one vertex");
    if len == 1 {
        return Trail {
            vertices: alloc::vec![1, 1],
            edges: alloc::vec![Edge::new(1, 1)],
        };
    }

    // Adjacency of the simple (loopless) graph, kept sorted descending so
    // the lowest neighbor pops last.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut removed = BTreeSet::new();
    if len.is_multiple_of(2) {
        let mut v = 1;
        while v < len - 2 {
            removed.insert(Edge::new(v, v + 1));
            v += 2;
        }
    }
    for a in 1..=len {
        for b in (a + 1)..=len {
            if removed.contains(&Edge::new(a, b)) {
                continue;
            }
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    for list in adj.values_mut() {
        list.sort_unstable_by(|a, b| b.cmp(a));
    }

    // Stack-based Hierholzer; start at an odd-degree vertex when there is
    // one (even len leaves len-1 and len odd).
    let start = if len.is_multiple_of(2) { len - 1 } else { 1 };
    let mut used = BTreeSet::new();
    let mut stack = alloc::vec![start];
    let mut walk = Vec::new();
    while let Some(&v) = stack.last() {
        let next = adj.get_mut(&v).and_then(|list| {
            while let Some(&w) = list.last() {
                if used.contains(&Edge::new(v, w)) {
                    list.pop();
                } else {
                    return Some(w);
                }
            }
            None
        });
        match next {
            Some(w) => {
                used.insert(Edge::new(v, w));
                stack.push(w);
            }
            None => {
                walk.push(stack.pop().unwrap());
            }
        }
    }
    walk.reverse();

    // Splice in every loop at the vertex's first appearance.
    let mut vertices = Vec::with_capacity(walk.len() + len);
    let mut looped = BTreeSet::new();
    for v in walk {
        vertices.push(v);
        if looped.insert(v) {
            vertices.push(v);
        }
    }
    let edges = vertices
        .windows(2)
        .map(|w| Edge::new(w[0], w[1]))
        .collect();
    Trail { vertices, edges }
}

/// Transliterates a trail into dominoes, one piece per edge in walk order.
pub fn trail_to_snake(t: &Trail) -> DominoSnake {
    let pieces = t.vertices.windows(2).map(|w| (w[0], w[1])).collect();
    DominoSnake { pieces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn seq(s: &str) -> ArrivalSequence {
        s.parse().unwrap()
    }

    fn edges(pairs: &[(usize, usize)]) -> BTreeSet<Edge> {
        pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
    }

    #[test]
    fn rho_even_rows() {
        // len=6, zero at 1: right lane cars 1,3,5.
        assert_eq!(rho_image(&seq("011111")).unwrap(), edges(&[(1, 1), (1, 3), (1, 5)]));
        // len=6, zero at 2: right lane cars 1,2,5; car 1 = p-1 maps to (p, len).
        assert_eq!(rho_image(&seq("101111")).unwrap(), edges(&[(2, 6), (2, 2), (2, 4)]));
    }

    #[test]
    fn rho_odd_last_row() {
        // len=7, zero at 7: right lane cars 1,3,5,7.
        assert_eq!(
            rho_image(&seq("1111110")).unwrap(),
            edges(&[(2, 7), (4, 7), (6, 7), (7, 7)])
        );
    }

    #[test]
    fn rho_small_example_rows() {
        assert_eq!(rho_image(&seq("0111")).unwrap(), edges(&[(1, 1), (1, 3)]));
        assert_eq!(rho_image(&seq("1110")).unwrap(), edges(&[(1, 4), (3, 4), (4, 4)]));
        assert_eq!(rho_image(&seq("1101")).unwrap(), edges(&[(2, 3), (3, 3)]));
    }

    #[test]
    fn rho_image_needs_single_zero() {
        assert!(rho_image(&seq("0011")).is_err());
        assert!(rho_image(&seq("1111")).is_err());
    }

    #[test]
    fn rho_inverse_spots() {
        assert_eq!(rho_inverse(Edge::new(2, 6), 6).unwrap(), (1, 2));
        assert_eq!(rho_inverse(Edge::new(4, 4), 9).unwrap(), (4, 4));
        assert!(rho_inverse(Edge::new(1, 2), 6).is_err());
        assert!(rho_inverse(Edge::new(3, 4), 8).is_err());
    }

    #[test]
    fn trail_lengths() {
        let want = [1, 3, 6, 9, 15, 19, 28, 33, 45, 51, 66, 73, 91, 99];
        for (idx, w) in want.iter().enumerate() {
            assert_eq!(longest_trail_length(idx as u64 + 1), *w);
        }
    }

    #[test]
    fn constructed_trails_are_valid() {
        for len in 1..=12usize {
            let t = longest_trail(len);
            assert!(t.is_valid(), "len={len}");
            assert_eq!(t.len() as u64, longest_trail_length(len as u64), "len={len}");
            if len % 2 == 0 && len > 1 {
                let ends = [t.vertices[0], *t.vertices.last().unwrap()];
                let mut ends = ends.to_vec();
                ends.sort_unstable();
                assert_eq!(ends, vec![len - 1, len]);
            } else {
                assert_eq!(t.vertices.first(), t.vertices.last());
            }
            let snake = trail_to_snake(&t);
            assert!(snake.is_valid(), "len={len}");
            assert_eq!(snake.len(), t.len());
        }
    }

    #[test]
    fn single_vertex_trail() {
        let t = longest_trail(1);
        assert_eq!(t.edges, vec![Edge::new(1, 1)]);
        assert_eq!(trail_to_snake(&t).to_string(), "[1:1]");
    }

    #[test]
    fn snake_format() {
        let t = longest_trail(4);
        let s = trail_to_snake(&t);
        assert_eq!(s.len(), 9);
        let text = s.to_string();
        assert!(text.starts_with('[') && text.ends_with(']'));
        assert_eq!(text.matches('[').count(), 9);
    }
}
