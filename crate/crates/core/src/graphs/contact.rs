use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graphs::graph::{Edge, FiniteGraph};
use crate::graphs::transport::CarteProduct;
use crate::util::{advance, radix_product};

/// A total composition `X(a;b) × X(b;c) → X(a;c)` for all vertex triples,
/// written diagrammatically: `compose(α, β)` is "α then β". No
/// associativity or unit law is assumed.
#[derive(Clone, PartialEq, Eq)]
pub struct ContactTable {
    graph: Arc<FiniteGraph>,
    // Indexed by `(a·n + b)·n + c`; entry `i·|X(b;c)| + j` holds the index
    // of `αᵢ ∘ βⱼ` inside `X(a;c)`.
    table: Vec<Vec<usize>>,
}

impl fmt::Debug for ContactTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.graph;
        let mut list = f.debug_list();
        for first in g.edges() {
            for c in 0..g.vertex_count() {
                for second in g.edges_between(first.dst, c) {
                    let r = self.compose(first, second);
                    list.entry(&format!(
                        "{}∘{}={}",
                        g.edge_name(first),
                        g.edge_name(second),
                        g.edge_name(r)
                    ));
                }
            }
        }
        list.finish()
    }
}

fn slot(n: usize, a: usize, b: usize, c: usize) -> usize {
    (a * n + b) * n + c
}

impl ContactTable {
    /// Tabulates `op`, checking that every result lands in `X(a;c)`.
    pub fn from_fn(graph: &Arc<FiniteGraph>, mut op: impl FnMut(Edge, Edge) -> Edge) -> Result<Self> {
        let n = graph.vertex_count();
        let mut table = vec![Vec::new(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let cell = &mut table[slot(n, a, b, c)];
                    for first in graph.edges_between(a, b) {
                        for second in graph.edges_between(b, c) {
                            let r = op(first, second);
                            if r.src != a || r.dst != c || r.idx >= graph.hom_len(a, c) {
                                return Err(Error::PartialContact(format!(
                                    "{} ∘ {} does not land in the hom from {} to {}",
                                    graph.edge_name(first),
                                    graph.edge_name(second),
                                    graph.vertices().atom(a),
                                    graph.vertices().atom(c)
                                )));
                            }
                            cell.push(r.idx);
                        }
                    }
                }
            }
        }
        Ok(ContactTable {
            graph: graph.clone(),
            table,
        })
    }

    /// Builds a table from explicit `(first, second, result)` triples; every
    /// composable pair must be covered.
    pub fn from_triples(graph: &Arc<FiniteGraph>, triples: &[(Edge, Edge, Edge)]) -> Result<Self> {
        let mut missing = None;
        let table = ContactTable::from_fn(graph, |first, second| {
            match triples.iter().find(|(f, s, _)| *f == first && *s == second) {
                Some(&(_, _, r)) => r,
                None => {
                    missing.get_or_insert((first, second));
                    Edge::new(first.src, second.dst, 0)
                }
            }
        });
        if let Some((f, s)) = missing {
            return Err(Error::PartialContact(format!(
                "no result given for {} ∘ {}",
                graph.edge_name(f),
                graph.edge_name(s)
            )));
        }
        for (f, s, _) in triples {
            if f.dst != s.src || !graph.contains(*f) || !graph.contains(*s) {
                return Err(Error::PartialContact(format!(
                    "{} and {} are not composable",
                    graph.edge_label(*f),
                    graph.edge_label(*s)
                )));
            }
        }
        table
    }

    pub fn graph(&self) -> &Arc<FiniteGraph> {
        &self.graph
    }

    /// `first ∘ second`; the edges must be composable.
    pub fn compose(&self, first: Edge, second: Edge) -> Edge {
        debug_assert_eq!(first.dst, second.src, "edges are not composable");
        let n = self.graph.vertex_count();
        let width = self.graph.hom_len(second.src, second.dst);
        let idx = self.table[slot(n, first.src, first.dst, second.dst)][first.idx * width + second.idx];
        Edge::new(first.src, second.dst, idx)
    }

    pub fn try_compose(&self, first: Edge, second: Edge) -> Result<Edge> {
        if first.dst != second.src || !self.graph.contains(first) || !self.graph.contains(second) {
            return Err(Error::ShapeMismatch(format!(
                "{:?} and {:?} are not composable",
                first, second
            )));
        }
        Ok(self.compose(first, second))
    }

    /// Componentwise contact on a Carte biproduct:
    /// `⟨α,u⟩ ∘ ⟨β,v⟩ = ⟨α∘β, u∘v⟩`.
    pub fn product(left: &ContactTable, right: &ContactTable, product: &CarteProduct) -> Result<Self> {
        if left.graph.as_ref() != product.left().as_ref() || right.graph.as_ref() != product.right().as_ref() {
            return Err(Error::ShapeMismatch("contact tables do not match the product factors".into()));
        }
        ContactTable::from_fn(product.graph(), |first, second| {
            let (a1, u1) = product.split_edge(first);
            let (a2, u2) = product.split_edge(second);
            product.edge(left.compose(a1, a2), right.compose(u1, u2))
        })
    }

    /// Number of distinct contact tables on `graph`; zero when some composable
    /// pair has an empty target hom.
    pub fn count(graph: &FiniteGraph) -> u128 {
        let (radices, _) = table_radices(graph);
        if radices.contains(&0) {
            0
        } else {
            radix_product(radices)
        }
    }

    /// Every contact table on `graph`, lexicographically by table entries.
    pub fn all(graph: &Arc<FiniteGraph>) -> impl Iterator<Item = ContactTable> {
        let (radices, shape) = table_radices(graph);
        let graph = graph.clone();
        let mut digits = if radices.contains(&0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        std::iter::from_fn(move || {
            let current = digits.take()?;
            let mut next = current.clone();
            if advance(&mut next, &radices) {
                digits = Some(next);
            }
            let mut table = Vec::with_capacity(shape.len());
            let mut offset = 0;
            for &len in &shape {
                table.push(current[offset..offset + len].to_vec());
                offset += len;
            }
            Some(ContactTable {
                graph: graph.clone(),
                table,
            })
        })
    }
}

fn table_radices(graph: &FiniteGraph) -> (Vec<usize>, Vec<usize>) {
    let n = graph.vertex_count();
    let mut radices = Vec::new();
    let mut shape = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let cells = graph.hom_len(a, b) * graph.hom_len(b, c);
                shape.push(cells);
                radices.extend(std::iter::repeat_n(graph.hom_len(a, c), cells));
            }
        }
    }
    (radices, shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_tables_of_a_two_element_monoid_shape() {
        let g = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        assert_eq!(ContactTable::count(&g), 16);
        assert_eq!(ContactTable::all(&g).count(), 16);
    }

    #[test]
    fn no_table_when_composites_have_nowhere_to_land() {
        // 0 → 1 → 2 with no edge 0 → 2.
        let g = FiniteGraph::from_hom_sizes(3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]).shared();
        assert_eq!(ContactTable::count(&g), 0);
        assert_eq!(ContactTable::all(&g).count(), 0);
        let err = ContactTable::from_fn(&g, |a, _| a).unwrap_err();
        assert!(matches!(err, Error::PartialContact(_)));
    }

    #[test]
    fn from_triples_requires_every_pair() {
        let g = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        let e = |i| Edge::new(0, 0, i);
        let err = ContactTable::from_triples(&g, &[(e(0), e(0), e(0))]).unwrap_err();
        assert!(matches!(err, Error::PartialContact(_)));
    }
}
