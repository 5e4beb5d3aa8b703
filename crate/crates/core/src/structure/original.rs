use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::finset::FiniteSet;
use crate::graphs::{ContactTable, Edge, FiniteGraph, Transport, UnitChoice};

/// A graph with chosen unit loops and a contact table. Nothing about the
/// table is assumed; [`validate_original`] checks the unit laws and
/// [`validate_category`] adds associativity.
#[derive(Clone, PartialEq, Eq)]
pub struct OriginalGraph {
    graph: Arc<FiniteGraph>,
    units: UnitChoice,
    contact: ContactTable,
}

impl fmt::Debug for OriginalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OriginalGraph")
            .field("graph", &self.graph)
            .field("units", &self.units)
            .field("contact", &self.contact)
            .finish()
    }
}

impl OriginalGraph {
    pub fn new(units: UnitChoice, contact: ContactTable) -> Result<Self> {
        let graph = contact.graph().clone();
        UnitChoice::new(&graph, units.indices().to_vec())?;
        Ok(OriginalGraph { graph, units, contact })
    }

    /// Units are the first loops and `op` fills the contact table.
    pub fn from_fn(graph: Arc<FiniteGraph>, op: impl FnMut(Edge, Edge) -> Edge) -> Result<Self> {
        let units = UnitChoice::first_loops(&graph)?;
        let contact = ContactTable::from_fn(&graph, op)?;
        Ok(OriginalGraph { graph, units, contact })
    }

    /// A graph with at most one non-unit edge per hom and a unit loop first
    /// at every vertex, composed in the only possible way. Fails when some
    /// composable pair has no edge to land in.
    pub fn thin(graph: Arc<FiniteGraph>) -> Result<Self> {
        let units = UnitChoice::first_loops(&graph)?;
        let contact = ContactTable::from_fn(&graph, |f, g| {
            if units.is_unit(f) {
                g
            } else if units.is_unit(g) {
                f
            } else {
                Edge::new(f.src, g.dst, 0)
            }
        })?;
        Ok(OriginalGraph { graph, units, contact })
    }

    /// One object `*` whose loops are `names`, composed by `table[i][j]`;
    /// the loop at index 0 is the unit.
    pub fn monoid(names: &[&str], table: &[Vec<usize>]) -> Result<Self> {
        let k = names.len();
        if k == 0 || table.len() != k || table.iter().any(|row| row.len() != k) {
            return Err(Error::ShapeMismatch("composition table must be square over the loops".into()));
        }
        let graph = FiniteGraph::with_edges(
            FiniteSet::new(["*"])?,
            names.iter().map(|n| (0usize, 0usize, n.to_string())),
        )?
        .shared();
        OriginalGraph::from_fn(graph, |f, g| Edge::new(0, 0, table[f.idx][g.idx]))
    }

    pub fn graph(&self) -> &Arc<FiniteGraph> {
        &self.graph
    }

    pub fn units(&self) -> &UnitChoice {
        &self.units
    }

    pub fn contact(&self) -> &ContactTable {
        &self.contact
    }

    pub fn unit(&self, a: usize) -> Edge {
        self.units.unit(a)
    }

    pub fn compose(&self, f: Edge, g: Edge) -> Edge {
        self.contact.compose(f, g)
    }

    pub fn edge_label(&self, e: Edge) -> String {
        self.graph.edge_label(e)
    }
}

/// Two vertices `0, 1`, loops `1_0, 1_1` and an arrow `a: 0 → 1`.
pub fn walking_arrow() -> OriginalGraph {
    let g = FiniteGraph::from_atoms(&["0", "1"], &[("1_0", "0", "0"), ("a", "0", "1"), ("1_1", "1", "1")])
        .expect("fixture is well formed");
    OriginalGraph::thin(g.shared()).expect("walking arrow is thin")
}

/// `0 → 1 → 2` with `f`, `g` and their composite `fg`.
pub fn composable_pair() -> OriginalGraph {
    let g = FiniteGraph::from_atoms(
        &["0", "1", "2"],
        &[
            ("1_0", "0", "0"),
            ("f", "0", "1"),
            ("fg", "0", "2"),
            ("1_1", "1", "1"),
            ("g", "1", "2"),
            ("1_2", "2", "2"),
        ],
    )
    .expect("fixture is well formed");
    OriginalGraph::thin(g.shared()).expect("composable pair is thin")
}

/// The cyclic group of order two as a one-object category.
pub fn z2() -> OriginalGraph {
    OriginalGraph::monoid(&["1", "g"], &[vec![0, 1], vec![1, 0]]).expect("fixture is well formed")
}

/// Objects with nothing but their unit loops.
pub fn discrete(n: usize) -> OriginalGraph {
    let g = FiniteGraph::from_hom_sizes(n, &(0..n * n).map(|k| usize::from(k / n == k % n)).collect::<Vec<_>>());
    OriginalGraph::thin(g.shared()).expect("discrete graphs are thin")
}

/// The associative magma `{1,a,b}` with `a∘a = b`, `a∘b = b∘a = a`,
/// `b∘b = b`: the group of order two with an adjoined unit.
pub fn adjoined_unit_z2() -> OriginalGraph {
    OriginalGraph::monoid(&["1", "a", "b"], &[vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]])
        .expect("fixture is well formed")
}

/// The first non-associative unital magma of order three, in the order of
/// [`crate::enumerate::unital_magmas`].
pub fn m3() -> OriginalGraph {
    let table = crate::enumerate::unital_magmas(3)
        .find(|t| !crate::enumerate::is_associative_table(t))
        .expect("a non-associative unital magma of order three exists");
    OriginalGraph::monoid(&["1", "a", "b"], &table).expect("tables are square")
}

/// `1_a ∘ α = α = α ∘ 1_b` for every edge.
pub fn validate_original(x: &OriginalGraph) -> Check {
    let mut check = Check::new("unit neutrality");
    for alpha in x.graph.edges() {
        check.tick();
        let left = x.compose(x.unit(alpha.src), alpha);
        if left != alpha {
            return check.fail(
                vec![x.edge_label(x.unit(alpha.src)), x.edge_label(alpha)],
                x.edge_label(alpha),
                x.edge_label(left),
            );
        }
        let right = x.compose(alpha, x.unit(alpha.dst));
        if right != alpha {
            return check.fail(
                vec![x.edge_label(alpha), x.edge_label(x.unit(alpha.dst))],
                x.edge_label(alpha),
                x.edge_label(right),
            );
        }
    }
    check
}

/// `(α∘β)∘γ = α∘(β∘γ)` for every composable triple.
pub fn associativity_check(x: &OriginalGraph) -> Check {
    let mut check = Check::new("associativity");
    let g = &x.graph;
    for alpha in g.edges() {
        for c in 0..g.vertex_count() {
            for beta in g.edges_between(alpha.dst, c) {
                for d in 0..g.vertex_count() {
                    for gamma in g.edges_between(c, d) {
                        check.tick();
                        let left = x.compose(x.compose(alpha, beta), gamma);
                        let right = x.compose(alpha, x.compose(beta, gamma));
                        if left != right {
                            return check.fail(
                                vec![x.edge_label(alpha), x.edge_label(beta), x.edge_label(gamma)],
                                x.edge_label(left),
                                x.edge_label(right),
                            );
                        }
                    }
                }
            }
        }
    }
    check
}

/// Unit laws and associativity.
pub fn validate_category(x: &OriginalGraph) -> Check {
    validate_original(x).and(associativity_check(x)).renamed("category")
}

/// An original graph whose contact is known to be associative and unital.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory(OriginalGraph);

impl FiniteCategory {
    pub fn new(x: OriginalGraph) -> Result<Self> {
        let check = validate_category(&x);
        match check.witness {
            None => Ok(FiniteCategory(x)),
            Some(w) => Err(Error::HypothesisFailed(format!(
                "{} fails at {}",
                w.property,
                w.location.join(", ")
            ))),
        }
    }

    pub fn original(&self) -> &OriginalGraph {
        &self.0
    }
}

impl std::ops::Deref for FiniteCategory {
    type Target = OriginalGraph;

    fn deref(&self) -> &OriginalGraph {
        &self.0
    }
}

/// Whether a transport keeps chosen units (crude) and contact (natural).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub crude: Check,
    pub natural: Check,
}

impl Classification {
    pub fn is_crude(&self) -> bool {
        self.crude.holds()
    }

    pub fn is_natural(&self) -> bool {
        self.natural.holds()
    }
}

pub fn classify_transport(f: &Transport, x: &OriginalGraph, y: &OriginalGraph) -> Result<Classification> {
    if f.source().as_ref() != x.graph.as_ref() || f.target().as_ref() != y.graph.as_ref() {
        return Err(Error::ShapeMismatch("transport does not connect the given graphs".into()));
    }
    let mut crude = Check::new("crude");
    for a in 0..x.graph.vertex_count() {
        crude.tick();
        let image = f.edge(x.unit(a));
        let expected = y.unit(f.vertex(a));
        if image != expected {
            crude = crude.fail(
                vec![x.edge_label(x.unit(a))],
                y.edge_label(expected),
                y.edge_label(image),
            );
            break;
        }
    }
    let mut natural = Check::new("natural");
    'outer: for alpha in x.graph.edges() {
        for c in 0..x.graph.vertex_count() {
            for beta in x.graph.edges_between(alpha.dst, c) {
                natural.tick();
                let left = f.edge(x.compose(alpha, beta));
                let right = y.compose(f.edge(alpha), f.edge(beta));
                if left != right {
                    natural = natural.fail(
                        vec![x.edge_label(alpha), x.edge_label(beta)],
                        y.edge_label(right),
                        y.edge_label(left),
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(Classification { crude, natural })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::transports;

    #[test]
    fn fixtures_are_categories() {
        for x in [walking_arrow(), composable_pair(), z2(), discrete(2), adjoined_unit_z2()] {
            assert!(validate_category(&x).holds(), "{x:?}");
        }
    }

    #[test]
    fn canonical_m3_is_not_associative() {
        let x = m3();
        assert!(validate_original(&x).holds());
        let w = validate_category(&x).witness.unwrap();
        assert_eq!(w.property, "associativity");
        assert!(FiniteCategory::new(x).is_err());
    }

    #[test]
    fn broken_unit_law_is_reported() {
        let x = OriginalGraph::monoid(&["1", "a"], &[vec![0, 0], vec![1, 1]]).unwrap();
        let w = validate_original(&x).witness.unwrap();
        assert_eq!(w.location, vec!["1:*->*".to_string(), "a:*->*".to_string()]);
    }

    #[test]
    fn functors_between_categories_are_crude_and_natural() {
        let x = walking_arrow();
        let y = composable_pair();
        let mut functors = 0;
        for f in transports(x.graph(), y.graph()) {
            let c = classify_transport(&f, &x, &y).unwrap();
            if c.is_crude() {
                // Thin targets force every crude transport to keep composites.
                assert!(c.is_natural());
                functors += 1;
            }
        }
        assert_eq!(functors, 6);
    }

    #[test]
    fn crude_but_not_natural_on_m3() {
        let x = m3();
        let found = transports(x.graph(), x.graph()).any(|f| {
            let c = classify_transport(&f, &x, &x).unwrap();
            c.is_crude() && !c.is_natural()
        });
        assert!(found);
    }
}
