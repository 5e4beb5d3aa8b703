use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::FiniteSet;
use crate::util::MixedRadix;

/// An edge, addressed by its endpoints and its position in the hom set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub idx: usize,
}

impl Edge {
    pub fn new(src: usize, dst: usize, idx: usize) -> Self {
        Edge { src, dst, idx }
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// A finite directed multigraph: a vertex set and a finite edge set
/// `X(a;b)` for every ordered pair of vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: FiniteSet,
    homs: Vec<FiniteSet>,
}

impl fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|e| self.edge_label(e)).collect();
        f.debug_struct("FiniteGraph")
            .field("vertices", &self.vertices)
            .field("edges", &edges)
            .finish()
    }
}

impl FiniteGraph {
    /// A graph with the given vertices and no edges.
    pub fn discrete(vertices: FiniteSet) -> Self {
        let n = vertices.len();
        FiniteGraph {
            vertices,
            homs: vec![FiniteSet::empty(); n * n],
        }
    }

    /// Builds a graph from `(source, target, name)` edge triples. Names must
    /// be distinct within each hom set.
    pub fn with_edges<I, S>(vertices: FiniteSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
        S: Into<String>,
    {
        let n = vertices.len();
        let mut names: Vec<Vec<String>> = vec![Vec::new(); n * n];
        for (a, b, name) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("vertex index {}", a.max(b))));
            }
            names[a * n + b].push(name.into());
        }
        let homs = names
            .into_iter()
            .map(FiniteSet::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGraph { vertices, homs })
    }

    /// Builds a graph from vertex atoms and `(name, from, to)` triples.
    pub fn from_atoms(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let vs = FiniteSet::new(vertices.iter().copied())?;
        let triples = edges
            .iter()
            .map(|(name, from, to)| Ok((vs.require(from)?, vs.require(to)?, name.to_string())))
            .collect::<Result<Vec<_>>>()?;
        FiniteGraph::with_edges(vs, triples)
    }

    /// Vertices `0..n` with `sizes[a·n + b]` edges from `a` to `b`, named
    /// `a-b#i`.
    pub fn from_hom_sizes(n: usize, sizes: &[usize]) -> Self {
        assert_eq!(sizes.len(), n * n, "one size per ordered vertex pair");
        let homs = sizes
            .iter()
            .enumerate()
            .map(|(k, &m)| {
                FiniteSet::new((0..m).map(|i| format!("{}-{}#{}", k / n, k % n, i)))
                    .expect("generated names are distinct")
            })
            .collect();
        FiniteGraph {
            vertices: FiniteSet::range(n),
            homs,
        }
    }

    /// One vertex, no edges.
    pub fn point() -> Self {
        FiniteGraph::discrete(FiniteSet::range(1))
    }

    /// One vertex with a single loop.
    pub fn loop_point() -> Self {
        FiniteGraph::from_hom_sizes(1, &[1])
    }

    /// Two vertices and one edge `0 → 1`.
    pub fn arrow() -> Self {
        FiniteGraph::from_hom_sizes(2, &[0, 1, 0, 0])
    }

    pub fn shared(self) -> Arc<FiniteGraph> {
        Arc::new(self)
    }

    pub fn vertices(&self) -> &FiniteSet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn hom(&self, a: usize, b: usize) -> &FiniteSet {
        &self.homs[a * self.vertices.len() + b]
    }

    pub fn hom_len(&self, a: usize, b: usize) -> usize {
        self.hom(a, b).len()
    }

    /// Sizes of all hom sets, row-major.
    pub fn hom_sizes(&self) -> Vec<usize> {
        self.homs.iter().map(FiniteSet::len).collect()
    }

    pub fn edges_between(&self, a: usize, b: usize) -> impl Iterator<Item = Edge> {
        (0..self.hom_len(a, b)).map(move |i| Edge::new(a, b, i))
    }

    /// All edges in lexicographic `(src, dst, idx)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.vertex_count();
        (0..n * n).flat_map(move |k| self.edges_between(k / n, k % n))
    }

    pub fn edge_count(&self) -> usize {
        self.homs.iter().map(FiniteSet::len).sum()
    }

    pub fn contains(&self, e: Edge) -> bool {
        e.src < self.vertex_count() && e.dst < self.vertex_count() && e.idx < self.hom_len(e.src, e.dst)
    }

    pub fn edge_name(&self, e: Edge) -> &str {
        self.hom(e.src, e.dst).atom(e.idx)
    }

    /// `name:from->to`, used in witnesses.
    pub fn edge_label(&self, e: Edge) -> String {
        format!(
            "{}:{}->{}",
            self.edge_name(e),
            self.vertices.atom(e.src),
            self.vertices.atom(e.dst)
        )
    }

    /// First edge (lexicographically) with the given name.
    pub fn find_edge(&self, name: &str) -> Option<Edge> {
        self.edges().find(|&e| self.edge_name(e) == name)
    }

    pub fn has_loop_everywhere(&self) -> bool {
        (0..self.vertex_count()).all(|a| self.hom_len(a, a) > 0)
    }
}

/// A chosen loop `1_a ∈ X(a;a)` at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitChoice {
    units: Vec<usize>,
}

impl UnitChoice {
    pub fn new(graph: &FiniteGraph, units: Vec<usize>) -> Result<Self> {
        if units.len() != graph.vertex_count() {
            return Err(Error::ShapeMismatch("one unit per vertex is required".into()));
        }
        for (a, &u) in units.iter().enumerate() {
            if u >= graph.hom_len(a, a) {
                return Err(Error::MissingUnit(graph.vertices().atom(a).to_string()));
            }
        }
        Ok(UnitChoice { units })
    }

    /// Picks the first loop at every vertex; fails fast if one is missing.
    pub fn first_loops(graph: &FiniteGraph) -> Result<Self> {
        UnitChoice::new(graph, vec![0; graph.vertex_count()])
    }

    /// Every possible unit choice, lexicographically.
    pub fn all(graph: &FiniteGraph) -> impl Iterator<Item = UnitChoice> {
        let radices = (0..graph.vertex_count()).map(|a| graph.hom_len(a, a)).collect();
        MixedRadix::new(radices).map(|units| UnitChoice { units })
    }

    pub fn unit(&self, a: usize) -> Edge {
        Edge::new(a, a, self.units[a])
    }

    pub fn is_unit(&self, e: Edge) -> bool {
        e.is_loop() && self.units[e.src] == e.idx
    }

    pub fn indices(&self) -> &[usize] {
        &self.units
    }
}
