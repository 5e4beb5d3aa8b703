use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::FiniteSet;
use crate::graphs::graph::{Edge, FiniteGraph, UnitChoice};
use crate::util::{advance, bracket, radix_product, MixedRadix};

fn same_graph(a: &Arc<FiniteGraph>, b: &Arc<FiniteGraph>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A graph morphism: a vertex mapping plus one edge mapping
/// `X(a;b) → Y(f₀a; f₀b)` per ordered vertex pair.
#[derive(Clone)]
pub struct Transport {
    source: Arc<FiniteGraph>,
    target: Arc<FiniteGraph>,
    vertex_map: Vec<usize>,
    // Indexed by source pair `a·n + b`; entries are edge indices in the
    // target hom `Y(f₀a; f₀b)`.
    edge_maps: Vec<Vec<usize>>,
}

impl PartialEq for Transport {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_map == other.vertex_map
            && self.edge_maps == other.edge_maps
            && same_graph(&self.source, &other.source)
            && same_graph(&self.target, &other.target)
    }
}

impl Eq for Transport {}

impl fmt::Debug for Transport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Transport {
    pub fn new(
        source: Arc<FiniteGraph>,
        target: Arc<FiniteGraph>,
        vertex_map: Vec<usize>,
        edge_maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = source.vertex_count();
        if vertex_map.len() != n || edge_maps.len() != n * n {
            return Err(Error::ShapeMismatch("transport data does not match its source".into()));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::ShapeMismatch(format!("vertex index {v} outside the target")));
        }
        for a in 0..n {
            for b in 0..n {
                let map = &edge_maps[a * n + b];
                if map.len() != source.hom_len(a, b) {
                    return Err(Error::ShapeMismatch(format!(
                        "edge map for ({},{}) is not total",
                        source.vertices().atom(a),
                        source.vertices().atom(b)
                    )));
                }
                let bound = target.hom_len(vertex_map[a], vertex_map[b]);
                if map.iter().any(|&e| e >= bound) {
                    return Err(Error::ShapeMismatch(format!(
                        "edge from {} to {} is sent outside its codomain hom",
                        source.vertices().atom(a),
                        source.vertices().atom(b)
                    )));
                }
            }
        }
        Ok(Transport {
            source,
            target,
            vertex_map,
            edge_maps,
        })
    }

    pub(crate) fn from_parts_unchecked(
        source: Arc<FiniteGraph>,
        target: Arc<FiniteGraph>,
        vertex_map: Vec<usize>,
        edge_maps: Vec<Vec<usize>>,
    ) -> Self {
        Transport {
            source,
            target,
            vertex_map,
            edge_maps,
        }
    }

    pub fn identity(graph: &Arc<FiniteGraph>) -> Self {
        let n = graph.vertex_count();
        Transport {
            source: graph.clone(),
            target: graph.clone(),
            vertex_map: (0..n).collect(),
            edge_maps: (0..n * n).map(|k| (0..graph.hom_len(k / n, k % n)).collect()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGraph> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_maps(&self) -> &[Vec<usize>] {
        &self.edge_maps
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn edge(&self, e: Edge) -> Edge {
        let n = self.source.vertex_count();
        Edge::new(
            self.vertex_map[e.src],
            self.vertex_map[e.dst],
            self.edge_maps[e.src * n + e.dst][e.idx],
        )
    }

    /// Diagrammatic composite: `self` first, then `next`.
    pub fn then(&self, next: &Transport) -> Result<Transport> {
        if !same_graph(&self.target, &next.source) {
            return Err(Error::ShapeMismatch(
                "target of the first transport differs from source of the second".into(),
            ));
        }
        let n = self.source.vertex_count();
        let vertex_map = self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect();
        let edge_maps = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                self.edge_maps[k]
                    .iter()
                    .map(|&i| next.edge(Edge::new(self.vertex_map[a], self.vertex_map[b], i)).idx)
                    .collect()
            })
            .collect();
        Ok(Transport {
            source: self.source.clone(),
            target: next.target.clone(),
            vertex_map,
            edge_maps,
        })
    }

    /// Same source, target and vertex map.
    pub fn is_parallel(&self, other: &Transport) -> bool {
        self.vertex_map == other.vertex_map
            && same_graph(&self.source, &other.source)
            && same_graph(&self.target, &other.target)
    }

    /// `f(1_a) = 1_{f₀a}` for every vertex.
    pub fn preserves_units(&self, source_units: &UnitChoice, target_units: &UnitChoice) -> bool {
        (0..self.source.vertex_count())
            .all(|a| self.edge(source_units.unit(a)) == target_units.unit(self.vertex_map[a]))
    }

    /// Rendering `{(v,w),…}|{(e,d),…}` used as a vertex atom in exponential graphs.
    pub fn label(&self) -> String {
        let vs = self.source.vertices();
        let ws = self.target.vertices();
        let vparts: Vec<String> = (0..vs.len())
            .map(|v| bracket('(', [vs.atom(v), ws.atom(self.vertex_map[v])], ')'))
            .collect();
        let eparts: Vec<String> = self
            .source
            .edges()
            .map(|e| bracket('(', [self.source.edge_name(e), self.target.edge_name(self.edge(e))], ')'))
            .collect();
        format!("{{{}}}|{{{}}}", vparts.join(","), eparts.join(","))
    }
}

/// `f then g`, the composite graph transport.
pub fn compose_transports(f: &Transport, g: &Transport) -> Result<Transport> {
    f.then(g)
}

/// Number of transports `source → target`.
pub fn count_transports(source: &FiniteGraph, target: &FiniteGraph) -> u128 {
    let n = source.vertex_count();
    MixedRadix::new(vec![target.vertex_count(); n])
        .map(|vm| count_transports_over(source, target, &vm))
        .fold(0u128, u128::saturating_add)
}

/// Number of transports `source → target` with the given vertex map.
pub fn count_transports_over(source: &FiniteGraph, target: &FiniteGraph, vertex_map: &[usize]) -> u128 {
    radix_product(
        source
            .edges()
            .map(|e| target.hom_len(vertex_map[e.src], vertex_map[e.dst])),
    )
}

/// Lexicographic enumeration of transports: vertex maps outermost, then the
/// images of edges in `(src, dst, idx)` order.
pub struct Transports {
    source: Arc<FiniteGraph>,
    target: Arc<FiniteGraph>,
    vertex_maps: Box<dyn Iterator<Item = Vec<usize>> + Send>,
    current_vertex_map: Option<Vec<usize>>,
    edges: Vec<Edge>,
    radices: Vec<usize>,
    digits: Option<Vec<usize>>,
}

impl Transports {
    fn load_next_vertex_map(&mut self) {
        for vm in self.vertex_maps.by_ref() {
            let radices: Vec<usize> = self
                .edges
                .iter()
                .map(|e| self.target.hom_len(vm[e.src], vm[e.dst]))
                .collect();
            if radices.iter().all(|&r| r > 0) {
                self.digits = Some(vec![0; radices.len()]);
                self.radices = radices;
                self.current_vertex_map = Some(vm);
                return;
            }
        }
        self.current_vertex_map = None;
        self.digits = None;
    }

    fn build(&self, vm: &[usize], digits: &[usize]) -> Transport {
        let n = self.source.vertex_count();
        let mut edge_maps: Vec<Vec<usize>> = (0..n * n)
            .map(|k| Vec::with_capacity(self.source.hom_len(k / n, k % n)))
            .collect();
        for (e, &d) in self.edges.iter().zip(digits) {
            edge_maps[e.src * n + e.dst].push(d);
        }
        Transport {
            source: self.source.clone(),
            target: self.target.clone(),
            vertex_map: vm.to_vec(),
            edge_maps,
        }
    }
}

impl Iterator for Transports {
    type Item = Transport;

    fn next(&mut self) -> Option<Transport> {
        loop {
            let vm = self.current_vertex_map.clone()?;
            match self.digits.take() {
                Some(digits) => {
                    let t = self.build(&vm, &digits);
                    let mut next = digits;
                    if advance(&mut next, &self.radices) {
                        self.digits = Some(next);
                    } else {
                        self.load_next_vertex_map();
                    }
                    return Some(t);
                }
                None => self.load_next_vertex_map(),
            }
        }
    }
}

/// All transports `source → target`, lexicographically.
pub fn transports(source: &Arc<FiniteGraph>, target: &Arc<FiniteGraph>) -> Transports {
    let n = source.vertex_count();
    let vertex_maps = Box::new(MixedRadix::new(vec![target.vertex_count(); n]));
    transports_from(source, target, vertex_maps)
}

/// All transports with a fixed vertex map (one parallel class).
pub fn transports_over(source: &Arc<FiniteGraph>, target: &Arc<FiniteGraph>, vertex_map: Vec<usize>) -> Transports {
    transports_from(source, target, Box::new(std::iter::once(vertex_map)))
}

fn transports_from(
    source: &Arc<FiniteGraph>,
    target: &Arc<FiniteGraph>,
    vertex_maps: Box<dyn Iterator<Item = Vec<usize>> + Send>,
) -> Transports {
    let mut it = Transports {
        source: source.clone(),
        target: target.clone(),
        vertex_maps,
        current_vertex_map: None,
        edges: source.edges().collect(),
        radices: Vec::new(),
        digits: None,
    };
    it.load_next_vertex_map();
    it
}

/// The Carte biproduct `X × Y`: vertex `⟨x,y⟩` at `x·|Y₀| + y`, edge
/// `⟨α,u⟩` at `i·|Y(y;y')| + j` inside its hom.
#[derive(Debug, Clone)]
pub struct CarteProduct {
    graph: Arc<FiniteGraph>,
    left: Arc<FiniteGraph>,
    right: Arc<FiniteGraph>,
}

pub fn carte_biproduct(left: &Arc<FiniteGraph>, right: &Arc<FiniteGraph>) -> CarteProduct {
    let (n, m) = (left.vertex_count(), right.vertex_count());
    let vertices = FiniteSet::new(
        left.vertices()
            .iter()
            .flat_map(|x| right.vertices().iter().map(move |y| bracket('(', [x, y], ')'))),
    )
    .expect("pairs of distinct atoms are distinct");
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..m {
            for x2 in 0..n {
                for y2 in 0..m {
                    for i in 0..left.hom_len(x, x2) {
                        for j in 0..right.hom_len(y, y2) {
                            let name = bracket(
                                '(',
                                [
                                    left.edge_name(Edge::new(x, x2, i)),
                                    right.edge_name(Edge::new(y, y2, j)),
                                ],
                                ')',
                            );
                            edges.push((x * m + y, x2 * m + y2, name));
                        }
                    }
                }
            }
        }
    }
    let graph = FiniteGraph::with_edges(vertices, edges).expect("pairs of distinct edges are distinct");
    CarteProduct {
        graph: Arc::new(graph),
        left: left.clone(),
        right: right.clone(),
    }
}

impl CarteProduct {
    pub fn graph(&self) -> &Arc<FiniteGraph> {
        &self.graph
    }

    pub fn left(&self) -> &Arc<FiniteGraph> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteGraph> {
        &self.right
    }

    pub fn vertex(&self, x: usize, y: usize) -> usize {
        x * self.right.vertex_count() + y
    }

    pub fn split_vertex(&self, v: usize) -> (usize, usize) {
        let m = self.right.vertex_count();
        (v / m, v % m)
    }

    pub fn edge(&self, first: Edge, second: Edge) -> Edge {
        let width = self.right.hom_len(second.src, second.dst);
        Edge::new(
            self.vertex(first.src, second.src),
            self.vertex(first.dst, second.dst),
            first.idx * width + second.idx,
        )
    }

    pub fn split_edge(&self, e: Edge) -> (Edge, Edge) {
        let (x, y) = self.split_vertex(e.src);
        let (x2, y2) = self.split_vertex(e.dst);
        let width = self.right.hom_len(y, y2);
        (Edge::new(x, x2, e.idx / width), Edge::new(y, y2, e.idx % width))
    }

    /// Componentwise unit choice `⟨1_x, 1_y⟩`.
    pub fn units(&self, left: &UnitChoice, right: &UnitChoice) -> UnitChoice {
        let units = (0..self.graph.vertex_count())
            .map(|v| {
                let (x, y) = self.split_vertex(v);
                self.edge(left.unit(x), right.unit(y)).idx
            })
            .collect();
        UnitChoice::new(&self.graph, units).expect("componentwise units are loops")
    }
}

/// `f × g` between Carte biproducts, defined componentwise.
pub fn biproduct_transport(f: &Transport, g: &Transport, from: &CarteProduct, to: &CarteProduct) -> Result<Transport> {
    if !same_graph(f.source(), from.left())
        || !same_graph(g.source(), from.right())
        || !same_graph(f.target(), to.left())
        || !same_graph(g.target(), to.right())
    {
        return Err(Error::ShapeMismatch("factors do not match the biproducts".into()));
    }
    let n = from.graph.vertex_count();
    let vertex_map: Vec<usize> = (0..n)
        .map(|v| {
            let (x, y) = from.split_vertex(v);
            to.vertex(f.vertex(x), g.vertex(y))
        })
        .collect();
    let mut edge_maps = vec![Vec::new(); n * n];
    for e in from.graph.edges() {
        let (a, u) = from.split_edge(e);
        edge_maps[e.src * n + e.dst].push(to.edge(f.edge(a), g.edge(u)).idx);
    }
    Ok(Transport {
        source: from.graph.clone(),
        target: to.graph.clone(),
        vertex_map,
        edge_maps,
    })
}
