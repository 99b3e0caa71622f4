//! Undirected simple graphs, DIMACS ingestion, and the classical
//! brute-force clique oracle used as ground truth by the rest of the crate.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Vertices above this count are refused by the brute-force enumerator.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 25;

/// An undirected simple graph with vertices labeled `1..=n`.
///
/// Edges are stored as canonical pairs `(i, j)` with `1 <= i < j <= n`.
/// Vertex labels are 1-based at this boundary (DIMACS convention); bit
/// positions inside [`CliqueBits`] are 0-based, so vertex `v_k`
/// corresponds to bit `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 1-based edge pairs; pairs are canonicalized
    /// and deduplicated.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::domain(format!("self-loop on vertex {a}")));
            }
            if a < 1 || b < 1 || a > n || b > n {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                edges.insert((i, j));
            }
        }
        Graph { n, edges }
    }

    /// The six-vertex, eleven-edge example graph whose largest clique is
    /// {1, 2, 3, 4}.
    pub fn six_vertex_example() -> Self {
        Graph::new(
            6,
            [
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
                (2, 5),
                (4, 5),
                (3, 6),
                (4, 6),
                (5, 6),
            ],
        )
        .expect("static instance is well-formed")
    }

    /// The three-vertex path graph: edges (1,2) and (2,3).
    pub fn path3() -> Self {
        Graph::new(3, [(1, 2), (2, 3)]).expect("static instance is well-formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// The complementary graph: same vertices, exactly the missing pairs.
    pub fn complement(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if !self.edges.contains(&(i, j)) {
                    edges.insert((i, j));
                }
            }
        }
        Graph { n: self.n, edges }
    }
}

/// Candidate vertex subset encoded as a length-`n` bit string; bit `k`
/// set means vertex `v_{k+1}` is selected.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliqueBits {
    bits: Vec<bool>,
}

impl CliqueBits {
    pub fn new(bits: Vec<bool>) -> Self {
        CliqueBits { bits }
    }

    /// Parses a string of `0`/`1` characters, most significant first
    /// (`x_1` leftmost).
    pub fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::domain(format!("invalid bit character {ch:?}"))),
            }
        }
        Ok(CliqueBits { bits })
    }

    /// Builds from a basis index over `n` bits, bit 0 of the string being
    /// the most significant index bit.
    pub fn from_index(index: usize, n: usize) -> Self {
        let bits = (0..n).map(|k| (index >> (n - 1 - k)) & 1 == 1).collect();
        CliqueBits { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Whether vertex `v_k` (1-based) is selected.
    pub fn contains_vertex(&self, k: usize) -> bool {
        self.bits[k - 1]
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }
}

impl fmt::Display for CliqueBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CliqueBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a DIMACS edge-format document (`c` comments, one `p edge n m`
/// header, `e i j` lines).
///
/// Duplicate `e` lines are tolerated and deduplicated, but the raw `e`
/// line count must match the header. Vertex labels are 1-based in the
/// input and stay 1-based in [`Graph`].
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = BTreeSet::new();
    let mut edge_lines = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(Error::parse(lineno, "expected `p edge <n> <m>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid vertex count"))?;
                let m: usize = fields[3]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header
                    .ok_or_else(|| Error::parse(lineno, "edge line before problem line"))?;
                if fields.len() != 3 {
                    return Err(Error::parse(lineno, "expected `e <i> <j>`"));
                }
                let i: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid vertex index"))?;
                let j: usize = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid vertex index"))?;
                if i == j {
                    return Err(Error::parse(lineno, format!("self-loop on vertex {i}")));
                }
                if i < 1 || j < 1 || i > n || j > n {
                    return Err(Error::parse(
                        lineno,
                        format!("vertex index out of range [1, {n}]"),
                    ));
                }
                edge_lines += 1;
                edges.insert((i.min(j), i.max(j)));
            }
            other => {
                return Err(Error::parse(lineno, format!("unknown line type {other:?}")));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `p edge` header"))?;
    if edge_lines != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges but {edge_lines} `e` lines found"),
        ));
    }
    Ok(Graph { n, edges })
}

/// True iff the selected vertices are pairwise adjacent in `g`, i.e. no
/// complement edge has both endpoints selected.
pub fn is_legal_clique(g: &Graph, x: &CliqueBits) -> bool {
    assert_eq!(x.len(), g.vertex_count(), "bit string length mismatch");
    for i in 1..=g.vertex_count() {
        if !x.contains_vertex(i) {
            continue;
        }
        for j in (i + 1)..=g.vertex_count() {
            if x.contains_vertex(j) && !g.has_edge(i, j) {
                return false;
            }
        }
    }
    true
}

/// Enumerates all 2^n subsets and returns the maximum clique size with
/// every witness of that size. The empty set is excluded from answers:
/// for n >= 1 any single vertex is a clique, so the reported size is at
/// least 1.
pub fn max_cliques_bruteforce(g: &Graph) -> Result<(usize, BTreeSet<CliqueBits>)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::domain("graph has no vertices"));
    }
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::resource(format!(
            "brute force limited to n <= {BRUTE_FORCE_MAX_VERTICES}, got {n}"
        )));
    }
    let mut best = 0usize;
    let mut witnesses = BTreeSet::new();
    for index in 1..(1usize << n) {
        let x = CliqueBits::from_index(index, n);
        if !is_legal_clique(g, &x) {
            continue;
        }
        let w = x.weight();
        if w > best {
            best = w;
            witnesses.clear();
        }
        if w == best {
            witnesses.insert(x);
        }
    }
    Ok((best, witnesses))
}

/// Number of legal cliques of Hamming weight exactly `i`.
pub fn count_solutions(g: &Graph, i: usize) -> Result<usize> {
    let n = g.vertex_count();
    if i > n {
        return Err(Error::domain(format!("weight {i} out of range [0, {n}]")));
    }
    let mut count = 0usize;
    for index in 0..(1usize << n) {
        let x = CliqueBits::from_index(index, n);
        if x.weight() == i && is_legal_clique(g, &x) {
            count += 1;
        }
    }
    Ok(count)
}
