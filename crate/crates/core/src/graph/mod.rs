//! Simple undirected graphs, their Cartesian products and vertex
//! identifications, and the distance-matrix invariants built on them.

mod distance;
pub mod generate;
mod theorems;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use distance::{
    distance_matrix, distance_spectral_radius, is_transmission_regular, transmissions, wiener_index,
};
pub use theorems::{
    distance_cartesian_check, inertia_product_check, inertia_product_check_at,
    spectral_radius_bound_check, spectral_radius_lower_bound, wiener_monotonicity_check,
    SpectralBoundReport, BOUND_SLACK, EQUALITY_TOL,
};

/// A finite simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Self-loops, duplicates (in either
    /// orientation) and out-of-range endpoints are rejected.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges: set,
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.vertex_count
    }

    /// Cartesian product `G□H`; vertex `(u, u′)` gets index `u·|V(H)| + u′`,
    /// matching the block order of `𝒟(G)⊘𝒟(H)`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let n = other.vertex_count;
        let mut edges =
            Vec::with_capacity(self.edge_count() * n + other.edge_count() * self.vertex_count);
        for u in 0..self.vertex_count {
            for (a, b) in other.edges() {
                edges.push((u * n + a, u * n + b));
            }
        }
        for (u, v) in self.edges() {
            for w in 0..n {
                edges.push((u * n + w, v * n + w));
            }
        }
        let product =
            Graph::new(self.vertex_count * n, edges).expect("product of simple graphs is simple");
        match (&self.labels, &other.labels) {
            (Some(l), Some(r)) => {
                let labels = l
                    .iter()
                    .flat_map(|a| r.iter().map(move |b| format!("({a},{b})")))
                    .collect();
                product.with_labels(labels).expect("label count matches")
            }
            _ => product,
        }
    }

    /// `Gu*Hv`: glues vertex `v` of `other` onto vertex `u` of `self`.
    ///
    /// Vertices of `self` keep their indices; the remaining vertices of
    /// `other` follow in order.
    pub fn identify_vertices(&self, u: usize, other: &Graph, v: usize) -> Result<Graph> {
        if u >= self.vertex_count || v >= other.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "identification vertices ({u},{v}) out of range ({},{})",
                self.vertex_count, other.vertex_count
            )));
        }
        let offset = self.vertex_count;
        let map = |w: usize| match w.cmp(&v) {
            std::cmp::Ordering::Equal => u,
            std::cmp::Ordering::Less => offset + w,
            std::cmp::Ordering::Greater => offset + w - 1,
        };
        let edges = self
            .edges()
            .chain(other.edges().map(|(a, b)| (map(a), map(b))));
        let glued = Graph::new(self.vertex_count + other.vertex_count - 1, edges)?;
        match (&self.labels, &other.labels) {
            (Some(l), Some(r)) => {
                let labels = l
                    .iter()
                    .cloned()
                    .chain(
                        r.iter()
                            .enumerate()
                            .filter(|&(w, _)| w != v)
                            .map(|(_, s)| s.clone()),
                    )
                    .collect();
                glued.with_labels(labels)
            }
            _ => Ok(glued),
        }
    }

    /// Edge-list text: `p <n>` followed by `e <u> <v>` lines, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.vertex_count);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses edge-list text. Lines starting with `c` and blank lines are
    /// ignored; exactly one `p <n>` line must precede all `e` lines.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut count: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1));
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("p") => {
                    if count.is_some() {
                        return Err(bad("duplicate problem line"));
                    }
                    let n = fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .ok_or_else(|| bad("expected vertex count"))?;
                    if fields.next().is_some() {
                        return Err(bad("trailing fields"));
                    }
                    count = Some(n);
                }
                Some("e") => {
                    if count.is_none() {
                        return Err(bad("edge before problem line"));
                    }
                    let mut endpoint = || -> Result<usize> {
                        let x: usize = fields
                            .next()
                            .and_then(|f| f.parse().ok())
                            .ok_or_else(|| bad("expected two vertex indices"))?;
                        x.checked_sub(1)
                            .ok_or_else(|| bad("vertex indices are 1-based"))
                    };
                    let (a, b) = (endpoint()?, endpoint()?);
                    if fields.next().is_some() {
                        return Err(bad("trailing fields"));
                    }
                    edges.push((a, b));
                }
                _ => return Err(bad("unrecognized line")),
            }
        }
        let n = count.ok_or_else(|| Error::Parse("missing problem line \"p <n>\"".into()))?;
        Graph::new(n, edges)
    }
}
