//! Weighted undirected graphs, the Gset edge-list format, and the
//! classical MaxCut / Ising objectives.
//!
//! Bit `b_j = 0` maps to spin `z_j = +1` and `b_j = 1` to `z_j = -1`, so
//! with `W` the total edge weight and `E = Σ w z_u z_v` the Ising energy,
//! the cut value is `C = (W - E) / 2`.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// An immutable weighted graph with a CSR adjacency index.
///
/// Edges are stored with `u < v`; each edge appears in the adjacency lists
/// of both endpoints, in edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    /// Builds a graph from `(u, v, w)` triples with 0-indexed vertices.
    /// Pairs with `u > v` are normalized.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::InvalidGraph(format!("{n} vertices is too many")));
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
            }
            if !w.is_finite() || w == 0.0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has weight {w}; weights must be finite and nonzero"
                )));
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            if !seen.insert((u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            list.push(Edge { u, v, w });
        }
        Ok(Self::from_edges_unchecked(n, list))
    }

    fn from_edges_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        let mut weights = vec![0.0; offsets[n]];
        for e in &edges {
            targets[fill[e.u]] = e.v as u32;
            weights[fill[e.u]] = e.w;
            fill[e.u] += 1;
            targets[fill[e.v]] = e.u as u32;
            weights[fill[e.v]] = e.w;
            fill[e.v] += 1;
        }
        let total_weight = edges.iter().map(|e| e.w).sum();
        Self {
            n,
            edges,
            offsets,
            targets,
            weights,
            total_weight,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn degree(&self, j: usize) -> usize {
        self.offsets[j + 1] - self.offsets[j]
    }

    /// Neighbor ids and coupling weights of vertex `j`, as parallel slices.
    #[inline]
    pub fn adjacency(&self, j: usize) -> (&[u32], &[f64]) {
        let range = self.offsets[j]..self.offsets[j + 1];
        (&self.targets[range.clone()], &self.weights[range])
    }

    pub fn neighbors(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (t, w) = self.adjacency(j);
        t.iter().zip(w).map(|(&k, &w)| (k as usize, w))
    }

    /// Renders the graph in Gset format with 1-indexed vertices.
    pub fn to_gset(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, format_weight(e.w));
        }
        out
    }
}

fn format_weight(w: f64) -> String {
    if w.fract() == 0.0 && w.abs() < 1e15 {
        format!("{}", w as i64)
    } else {
        // `Display` for f64 prints the shortest string that round-trips.
        format!("{w}")
    }
}

/// Parses the Gset edge-list format: a `n m` header followed by `m` lines
/// `u v w` with 1-indexed vertices. Blank lines are ignored.
pub fn parse_gset(text: &str) -> std::result::Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader { line: 1 })?;
    let mut fields = header.split_whitespace();
    let malformed_header = || ParseError::Malformed {
        line: header_line,
        content: header.to_string(),
    };
    let n: usize = parse_field(fields.next()).ok_or_else(malformed_header)?;
    let m: usize = parse_field(fields.next()).ok_or_else(malformed_header)?;
    if fields.next().is_some() {
        return Err(malformed_header());
    }

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(ParseError::EdgeCountMismatch {
                line,
                expected: m,
                found: m + 1,
            });
        }
        let malformed = || ParseError::Malformed {
            line,
            content: content.to_string(),
        };
        let mut fields = content.split_whitespace();
        let u: i64 = parse_field(fields.next()).ok_or_else(malformed)?;
        let v: i64 = parse_field(fields.next()).ok_or_else(malformed)?;
        let w: f64 = parse_field(fields.next()).ok_or_else(malformed)?;
        if fields.next().is_some() {
            return Err(malformed());
        }
        for vertex in [u, v] {
            if vertex < 1 || vertex as u64 > n as u64 {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop {
                line,
                vertex: u as usize,
            });
        }
        if !w.is_finite() || w == 0.0 {
            return Err(ParseError::InvalidWeight { line });
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let (a, b) = (a as usize - 1, b as usize - 1);
        if !seen.insert((a, b)) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: a + 1,
                v: b + 1,
            });
        }
        edges.push(Edge { u: a, v: b, w });
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            line: last_line,
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}

fn parse_field<T: FromStr>(field: Option<&str>) -> Option<T> {
    field.and_then(|s| s.parse().ok())
}

/// Samples a simple `d`-regular graph with the pairing model.
///
/// Unit weights when `weighted` is false, otherwise i.i.d. uniform on
/// `(0, 1]`. Pairs that would form a self-loop or a repeated edge are
/// rejected; a dead end (no admissible pair left) restarts from scratch,
/// at most `10 n` times.
pub fn gen_regular(n: usize, d: usize, weighted: bool, seed: u64) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::Infeasible { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_attempts = (10 * n).max(1);
    for _ in 0..max_attempts {
        if let Some(pairs) = try_pairing(n, d, &mut rng) {
            let edges = pairs.into_iter().map(|(u, v)| {
                let w = if weighted {
                    1.0 - rng.gen::<f64>()
                } else {
                    1.0
                };
                Edge { u, v, w }
            });
            return Ok(Graph::from_edges_unchecked(n, edges.collect()));
        }
    }
    Err(Error::RetryLimit {
        attempts: max_attempts,
    })
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    points.shuffle(rng);
    let mut used = HashSet::with_capacity(n * d / 2);
    let mut pairs = Vec::with_capacity(n * d / 2);
    let admissible = |a: usize, b: usize, used: &HashSet<(usize, usize)>| {
        a != b && !used.contains(&(a.min(b), a.max(b)))
    };
    while !points.is_empty() {
        let len = points.len();
        let mut chosen = None;
        for _ in 0..64 {
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            if i != j && admissible(points[i], points[j], &used) {
                chosen = Some((i, j));
                break;
            }
        }
        if chosen.is_none() {
            let candidates: Vec<(usize, usize)> = (0..len)
                .flat_map(|i| ((i + 1)..len).map(move |j| (i, j)))
                .filter(|&(i, j)| admissible(points[i], points[j], &used))
                .collect();
            chosen = Some(*candidates.get(rng.gen_range(0..candidates.len().max(1)))?);
        }
        let (i, j) = chosen?;
        let (a, b) = (points[i], points[j]);
        used.insert((a.min(b), a.max(b)));
        pairs.push((a.min(b), a.max(b)));
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    pairs.sort_unstable();
    Some(pairs)
}

/// A `rows x cols` periodic square lattice with i.i.d. `±1` couplings.
///
/// This is the family of the toroidal Gset instances (G12 is 50 x 16,
/// G81 is 200 x 100); the couplings are drawn from this crate's generator,
/// so the instances are structurally equivalent but not identical.
pub fn gen_torus(rows: usize, cols: usize, seed: u64) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(Error::InvalidGraph(format!(
            "torus {rows}x{cols} needs at least 3 rows and columns"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            for (nr, nc) in [(r, (c + 1) % cols), ((r + 1) % rows, c)] {
                let w = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                edges.push((id(r, c), id(nr, nc), w));
            }
        }
    }
    Graph::new(rows * cols, edges)
}

/// A MaxCut assignment, one bit per vertex. Serializes as a `"0101…"`
/// string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Bitstring(Vec<u8>);

impl From<Bitstring> for String {
    fn from(b: Bitstring) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for Bitstring {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl Bitstring {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Panics if any entry is not 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        Self(bits)
    }

    /// The `n` low bits of `mask`, bit `j` at position `j`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self((0..n).map(|j| ((mask >> j) & 1) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u8 {
        self.0[j]
    }

    pub fn flip(&mut self, j: usize) {
        self.0[j] ^= 1;
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| b ^ 1).collect())
    }

    /// Spin value `1 - 2 b_j`.
    #[inline]
    pub fn spin(&self, j: usize) -> f64 {
        1.0 - 2.0 * self.0[j] as f64
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_char(if b == 0 { '0' } else { '1' })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidConfig(format!("bad bit {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }
}

fn check_len(g: &Graph, b: &Bitstring) -> Result<()> {
    if b.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: b.len(),
        });
    }
    Ok(())
}

/// Total weight of the edges whose endpoints carry different bits.
pub fn cut_value(g: &Graph, b: &Bitstring) -> Result<f64> {
    check_len(g, b)?;
    Ok(g.edges()
        .iter()
        .filter(|e| b.get(e.u) != b.get(e.v))
        .map(|e| e.w)
        .sum())
}

/// Classical Ising energy `Σ w z_u z_v` with `z = 1 - 2b`.
pub fn ising_energy(g: &Graph, b: &Bitstring) -> Result<f64> {
    check_len(g, b)?;
    Ok(g.edges()
        .iter()
        .map(|e| e.w * b.spin(e.u) * b.spin(e.v))
        .sum())
}

/// Cut value implied by an Ising energy on `g`.
pub fn cut_from_energy(g: &Graph, energy: f64) -> f64 {
    (g.total_weight() - energy) / 2.0
}

/// `cut / best_known`; the relative error is `1 - r`.
pub fn approximation_ratio(cut: f64, best_known: f64) -> Result<f64> {
    if !(best_known > 0.0) {
        return Err(Error::NonPositiveBestKnown(best_known));
    }
    Ok(cut / best_known)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn minimal_instance_parses() {
        let g = parse_gset("2 1\n1 2 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 1.0 }]);
        assert_eq!(g.total_weight(), 1.0);
    }

    #[test]
    fn parse_normalizes_and_tolerates_whitespace() {
        let g = parse_gset("\n  3 2  \n3 1 -1\n\n2 3 0.5   \n\n").unwrap();
        assert_eq!(
            g.edges()[0],
            Edge {
                u: 0,
                v: 2,
                w: -1.0
            }
        );
        assert_eq!(g.edges()[1], Edge { u: 1, v: 2, w: 0.5 });
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn parse_errors_are_distinct_and_carry_line_numbers() {
        assert_eq!(parse_gset(""), Err(ParseError::MissingHeader { line: 1 }));
        assert!(matches!(
            parse_gset("2 1\n1 x 1"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert_eq!(
            parse_gset("2 1\n1 3 1"),
            Err(ParseError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 2
            })
        );
        assert_eq!(
            parse_gset("3 2\n1 2 1\n\n2 1 1"),
            Err(ParseError::DuplicateEdge {
                line: 4,
                u: 1,
                v: 2
            })
        );
        assert_eq!(
            parse_gset("2 1\n2 2 1"),
            Err(ParseError::SelfLoop { line: 2, vertex: 2 })
        );
        assert_eq!(
            parse_gset("3 3\n1 2 1\n2 3 1"),
            Err(ParseError::EdgeCountMismatch {
                line: 3,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            parse_gset("3 1\n1 2 1\n2 3 1"),
            Err(ParseError::EdgeCountMismatch {
                line: 3,
                expected: 1,
                found: 2
            })
        );
        assert_eq!(
            parse_gset("2 1\n1 2 0"),
            Err(ParseError::InvalidWeight { line: 2 })
        );
    }

    #[test]
    fn serializer_emits_integer_weights_verbatim() {
        let text = "3 2\n1 2 1\n2 3 -1\n";
        assert_eq!(parse_gset(text).unwrap().to_gset(), text);
    }

    #[test]
    fn k4_is_the_only_cubic_graph_on_four_vertices() {
        let g = gen_regular(4, 3, false, 7).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.edges().iter().all(|e| e.w == 1.0));
    }

    #[test]
    fn regular_generation_rejects_infeasible_parameters() {
        assert!(matches!(
            gen_regular(3, 3, false, 0),
            Err(Error::Infeasible { .. })
        ));
        assert!(matches!(
            gen_regular(5, 3, false, 0),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn regular_generation_is_seeded() {
        let a = gen_regular(50, 3, true, 11).unwrap();
        let b = gen_regular(50, 3, true, 11).unwrap();
        let c = gen_regular(50, 3, true, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!((0..50).all(|j| a.degree(j) == 3));
        assert!(a.edges().iter().all(|e| e.w > 0.0 && e.w <= 1.0));
    }

    #[test]
    fn torus_has_four_neighbors_per_site() {
        let g = gen_torus(50, 16, 1).unwrap();
        assert_eq!(g.n(), 800);
        assert_eq!(g.edge_count(), 1600);
        assert!((0..800).all(|j| g.degree(j) == 4));
        assert!(g.edges().iter().all(|e| e.w.abs() == 1.0));
    }

    #[test]
    fn cut_and_energy_examples() {
        let edge = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        let b01 = Bitstring::from_bits(vec![0, 1]);
        assert_eq!(cut_value(&edge, &b01).unwrap(), 1.0);
        assert_eq!(ising_energy(&edge, &b01).unwrap(), -1.0);

        let g = triangle();
        let b = Bitstring::from_bits(vec![0, 0, 1]);
        assert_eq!(cut_value(&g, &b).unwrap(), 2.0);
        assert_eq!(ising_energy(&g, &b).unwrap(), -1.0);

        let zeros = Bitstring::zeros(3);
        assert_eq!(cut_value(&g, &zeros).unwrap(), 0.0);
        assert_eq!(ising_energy(&g, &zeros).unwrap(), g.total_weight());

        assert!(matches!(
            cut_value(&g, &b01),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(approximation_ratio(11624.0, 11624.0).unwrap(), 1.0);
        assert_eq!(approximation_ratio(0.0, 2.0).unwrap(), 0.0);
        assert!(approximation_ratio(1.0, 0.0).is_err());
        assert!(approximation_ratio(1.0, -3.0).is_err());
    }

    #[test]
    fn bitstring_text_round_trip() {
        let b: Bitstring = "0110".parse().unwrap();
        assert_eq!(b.to_string(), "0110");
        assert_eq!(b.complement().to_string(), "1001");
        assert!("012".parse::<Bitstring>().is_err());
    }
}
