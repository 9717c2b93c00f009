//! Simple undirected graphs on the vertex set `0..n`, the graph6 codec,
//! seeded generation and exhaustive enumeration of small labeled graphs.

use std::fmt;

use thiserror::Error;

/// Largest order accepted by the single-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 62;

/// Largest order [`enumerate_graphs`] accepts without the override flag.
pub const ENUMERATE_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graphs must have at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("permutation has length {got}, graph has {expected} vertices")]
    PermutationLength { expected: usize, got: usize },
    #[error("not a permutation: {0:?}")]
    NotBijective(Vec<usize>),
    #[error("graph6 supports 1..={max} vertices, got {n}", max = GRAPH6_MAX_ORDER)]
    UnsupportedSize { n: usize },
    #[error("graph6 byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("refusing to enumerate graphs on {n} vertices (limit {limit})")]
    EnumerationTooLarge { n: usize, limit: usize },
}

fn graph6_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        message: message.into(),
    }
}

/// A finite simple graph. Vertices are `0..n`; adjacency is symmetric and
/// irreflexive by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adjacent: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Graph {
            n,
            adjacent: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.set_edge(u, v);
        }
        g.sort_neighbors();
        Ok(g)
    }

    /// Builds a graph from a predicate on unordered pairs `i < j`.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for j in 1..n {
            for i in 0..j {
                if edge(i, j) {
                    g.set_edge(i, j);
                }
            }
        }
        g.sort_neighbors();
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_fn(n, |i, j| j == i + 1)
    }

    /// The cycle `0-1-...-(n-1)-0`. For `n < 3` this degenerates to a path.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Graph::from_fn(n, |i, j| j == i + 1 || (n >= 3 && i == 0 && j == n - 1))
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        let n = self.n;
        self.adjacent[u * n + v] = true;
        self.adjacent[v * n + u] = true;
        self.neighbors[u].push(v);
        self.neighbors[v].push(u);
    }

    fn sort_neighbors(&mut self) {
        for list in &mut self.neighbors {
            list.sort_unstable();
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacent[u * self.n + v]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(i, j)` with `i < j`, ordered by `j` then `i` (graph6 order).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// 0/1 adjacency matrix, row-major.
    pub fn adjacency_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as i64).collect())
            .collect()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degree(0);
        self.neighbors.iter().all(|l| l.len() == d)
    }

    /// `{i,j}` is an edge of the complement iff `i != j` and `{i,j}` is not an edge here.
    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| !self.has_edge(i, j)).expect("order is positive")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(i, j)| (i + shift, j + shift)));
        Graph::from_edges(self.n + other.n, &edges).expect("union of simple graphs is simple")
    }

    /// Relabels vertex `i` as `p(i)`: `{i,j}` is an edge here iff
    /// `{p(i),p(j)}` is an edge of the result.
    pub fn apply_permutation(&self, p: &Permutation) -> Result<Graph, GraphError> {
        if p.len() != self.n {
            return Err(GraphError::PermutationLength {
                expected: self.n,
                got: p.len(),
            });
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(i, j)| (p.apply(i), p.apply(j)))
            .collect();
        Graph::from_edges(self.n, &edges)
    }

    pub fn to_graph6(&self) -> Result<String, GraphError> {
        write_graph6(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ n: {}, edges: {:?} }}", self.n, self.edges())
    }
}

/// A bijection on `0..n`, stored as the image of each index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, GraphError> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || seen[x] {
                return Err(GraphError::NotBijective(image));
            }
            seen[x] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Uniform random permutation (Fisher-Yates driven by splitmix64).
    pub fn random(n: usize, rng: &mut SplitMix64) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            image.swap(i, j);
        }
        Permutation(image)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }
}

/// splitmix64 generator. The output stream is part of the reproducibility
/// contract of [`random_graph`]; do not change it.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// G(n, 1/2). Pair `k` (graph6 order) is an edge iff bit `k % 64` of the
/// `(k / 64 + 1)`-th splitmix64 output for `seed` is set.
pub fn random_graph(n: usize, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = SplitMix64::new(seed);
    let mut word = 0u64;
    let mut k = 0usize;
    Graph::from_fn(n, |_, _| {
        if k.is_multiple_of(64) {
            word = rng.next_u64();
        }
        let bit = (word >> (k % 64)) & 1 == 1;
        k += 1;
        bit
    })
}

/// Decodes a single graph6 line (surrounding whitespace is ignored).
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim().as_bytes();
    let Some(&header) = bytes.first() else {
        return Err(graph6_err(0, "empty input"));
    };
    if !(63..=126).contains(&header) {
        return Err(graph6_err(0, format!("header byte {header} outside 63..=126")));
    }
    if header == 126 {
        return Err(graph6_err(0, "multi-byte size header is not supported"));
    }
    let n = (header - 63) as usize;
    if n == 0 {
        return Err(GraphError::UnsupportedSize { n });
    }
    let pairs = n * (n - 1) / 2;
    let expected = 1 + pairs.div_ceil(6);
    if bytes.len() != expected {
        let offset = bytes.len().min(expected);
        return Err(graph6_err(
            offset,
            format!("expected {expected} bytes for n = {n}, found {}", bytes.len()),
        ));
    }
    let mut bits = Vec::with_capacity(pairs);
    for (offset, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(graph6_err(offset, format!("data byte {b} outside 63..=126")));
        }
        let group = b - 63;
        for shift in (0..6).rev() {
            let bit = (group >> shift) & 1 == 1;
            if bits.len() < pairs {
                bits.push(bit);
            } else if bit {
                return Err(graph6_err(offset, "nonzero padding bits"));
            }
        }
    }
    let mut k = 0;
    Graph::from_fn(n, |_, _| {
        k += 1;
        bits[k - 1]
    })
}

pub fn write_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(GraphError::UnsupportedSize { n });
    }
    let mut out = String::with_capacity(1 + (n * n).div_ceil(12));
    out.push((n as u8 + 63) as char);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Iterator over all `2^(n(n-1)/2)` labeled graphs on `n` vertices. The
/// `m`-th graph contains pair `k` (graph6 order) iff bit `k` of `m` is set.
#[derive(Debug, Clone)]
pub struct GraphEnumerator {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for GraphEnumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut k = 0;
        let g = Graph::from_fn(self.n, |_, _| {
            k += 1;
            (mask >> (k - 1)) & 1 == 1
        })
        .expect("order is positive");
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GraphEnumerator {}

/// All labeled graphs on `n` vertices. Orders above [`ENUMERATE_MAX_ORDER`]
/// need `allow_large`; orders whose pair count exceeds 63 are always refused.
pub fn enumerate_graphs(n: usize, allow_large: bool) -> Result<GraphEnumerator, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let pairs = n * (n - 1) / 2;
    if (n > ENUMERATE_MAX_ORDER && !allow_large) || pairs > 63 {
        return Err(GraphError::EnumerationTooLarge {
            n,
            limit: ENUMERATE_MAX_ORDER,
        });
    }
    Ok(GraphEnumerator {
        n,
        next: 0,
        end: 1u64 << pairs,
    })
}
