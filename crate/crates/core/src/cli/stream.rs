//! Enumerations streamed as documents.

use std::sync::Arc;

use serde_json::json;

use crate::cli::document::{graph_body, original_body, poset_body, weighted_body, Document, Kind};
use crate::enumerate::{graphs, labeled_posets, unital_magmas};
use crate::quantale::{v_categories, Quantale};
use crate::structure::OriginalGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Labeled posets on `0..size`.
    Posets,
    /// Unital magmas of order `size` as one-object original graphs.
    Magmas,
    /// Graphs on `0..size` with at most `max_edges` edges per hom.
    Graphs,
    /// V-categories on `size` points over a built-in quantale.
    VCategories,
}

/// Loop names for a magma of order `n`: `1`, then `a`, `b`, ….
pub fn magma_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { char::from(b'a' + (i - 1) as u8).to_string() })
        .collect()
}

/// `quantale` is `"boolean"` or `"tropical"` and only read for
/// [`Family::VCategories`].
pub fn enumerate(family: Family, size: usize, max_edges: usize, quantale: &str) -> Box<dyn Iterator<Item = Document>> {
    let wrap = |kind, body| Document::wrap(kind, body).expect("enumerated structures are valid documents");
    match family {
        Family::Posets => Box::new(labeled_posets(size).map(move |p| wrap(Kind::Poset, poset_body(&p)))),
        Family::Magmas => {
            if size == 0 || size > 27 {
                return Box::new(std::iter::empty());
            }
            let names = magma_names(size);
            Box::new(unital_magmas(size).map(move |table| {
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                let x = OriginalGraph::monoid(&refs, &table).expect("tables are square");
                wrap(Kind::OriginalGraph, original_body(&x))
            }))
        }
        Family::Graphs => Box::new(graphs(size, max_edges).map(move |g| wrap(Kind::Graph, graph_body(&g)))),
        Family::VCategories => {
            let q = Arc::new(match quantale {
                "tropical" => Quantale::tropical(3),
                _ => Quantale::boolean(),
            });
            let name = if quantale == "tropical" { "tropical" } else { "boolean" };
            let all: Vec<Document> = v_categories(&q, size)
                .map(|w| wrap(Kind::WeightedGraph, weighted_body(&w, json!(name))))
                .collect();
            Box::new(all.into_iter())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::document::Structure;
    use crate::enumerate::is_associative_table;

    #[test]
    fn three_element_posets() {
        assert_eq!(enumerate(Family::Posets, 3, 0, "").count(), 19);
    }

    #[test]
    fn one_vertex_graphs_with_at_most_one_loop() {
        assert_eq!(enumerate(Family::Graphs, 1, 1, "").count(), 2);
    }

    #[test]
    fn first_non_associative_magma_is_m3() {
        let m3 = crate::structure::m3();
        let first = enumerate(Family::Magmas, 3, 0, "")
            .find(|d| match d.structure() {
                Structure::OriginalGraph(x) => {
                    let table: Vec<Vec<usize>> =
                        (0..3).map(|i| (0..3).map(|j| x.compose(x.graph().edges().nth(i).unwrap(), x.graph().edges().nth(j).unwrap()).idx).collect()).collect();
                    !is_associative_table(&table)
                }
                _ => false,
            })
            .unwrap();
        match first.structure() {
            Structure::OriginalGraph(x) => assert_eq!(x.contact(), m3.contact()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn boolean_three_point_v_categories() {
        assert_eq!(enumerate(Family::VCategories, 3, 0, "boolean").count(), 29);
    }
}
