use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::finset::FinitePoset;
use crate::graphs::{ContactTable, CurriedTransport, Edge, FiniteGraph, Transport, UnitChoice};
use crate::structure::OriginalGraph;

/// Which way an inequality between a composite and a reference edge points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// composite ≤ reference
    Lower,
    /// composite ≥ reference
    Upper,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        }
    }
}

/// Deformed naturality squares: continuous means `α_s∘ψ(u) ≤ φ(u)∘α_t`,
/// cocontinuous means `≥`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Continuity {
    Continuous,
    Cocontinuous,
}

impl Continuity {
    pub fn as_str(self) -> &'static str {
        match self {
            Continuity::Continuous => "continuous",
            Continuity::Cocontinuous => "cocontinuous",
        }
    }
}

/// A graph whose hom sets are posets, optionally with units and contact.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    graph: Arc<FiniteGraph>,
    orders: Vec<FinitePoset>,
    units: Option<UnitChoice>,
    contact: Option<ContactTable>,
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedGraph")
            .field("graph", &self.graph)
            .field("orders", &self.orders)
            .finish()
    }
}

impl OrderedGraph {
    /// `orders[a·n + b]` orders `X(a;b)`; carriers must be the hom sets.
    pub fn new(graph: Arc<FiniteGraph>, orders: Vec<FinitePoset>) -> Result<Self> {
        let n = graph.vertex_count();
        if orders.len() != n * n {
            return Err(Error::ShapeMismatch("one order per hom set is required".into()));
        }
        for (k, order) in orders.iter().enumerate() {
            if order.carrier() != graph.hom(k / n, k % n) {
                return Err(Error::ShapeMismatch(format!(
                    "order on the hom from {} to {} does not match its edges",
                    graph.vertices().atom(k / n),
                    graph.vertices().atom(k % n)
                )));
            }
        }
        Ok(OrderedGraph {
            graph,
            orders,
            units: None,
            contact: None,
        })
    }

    /// Equality as the order on every hom.
    pub fn discrete(graph: Arc<FiniteGraph>) -> Self {
        let n = graph.vertex_count();
        let orders = (0..n * n)
            .map(|k| FinitePoset::discrete(graph.hom(k / n, k % n).clone()))
            .collect();
        OrderedGraph {
            graph,
            orders,
            units: None,
            contact: None,
        }
    }

    /// Every hom ordered as a chain in edge order.
    pub fn chains(graph: Arc<FiniteGraph>) -> Self {
        let n = graph.vertex_count();
        let orders = (0..n * n)
            .map(|k| FinitePoset::chain_on(graph.hom(k / n, k % n).clone()))
            .collect();
        OrderedGraph {
            graph,
            orders,
            units: None,
            contact: None,
        }
    }

    /// Orders an original graph, keeping its units and contact.
    pub fn from_original(x: &OriginalGraph, orders: Vec<FinitePoset>) -> Result<Self> {
        Ok(OrderedGraph::new(x.graph().clone(), orders)?
            .with_units(x.units().clone())
            .with_contact(x.contact().clone()))
    }

    pub fn with_units(mut self, units: UnitChoice) -> Self {
        self.units = Some(units);
        self
    }

    pub fn with_contact(mut self, contact: ContactTable) -> Self {
        self.contact = Some(contact);
        self
    }

    pub fn graph(&self) -> &Arc<FiniteGraph> {
        &self.graph
    }

    pub fn order(&self, a: usize, b: usize) -> &FinitePoset {
        &self.orders[a * self.graph.vertex_count() + b]
    }

    pub fn orders(&self) -> &[FinitePoset] {
        &self.orders
    }

    pub fn units(&self) -> Result<&UnitChoice> {
        self.units
            .as_ref()
            .ok_or_else(|| Error::MissingUnit("no unit choice on the ordered graph".into()))
    }

    pub fn contact(&self) -> Result<&ContactTable> {
        self.contact
            .as_ref()
            .ok_or_else(|| Error::PartialContact("no contact table on the ordered graph".into()))
    }

    pub fn is_discrete(&self) -> bool {
        self.orders.iter().all(FinitePoset::is_discrete)
    }

    /// `e ≤ e′` for two edges of the same hom; edges of different homs are
    /// incomparable.
    pub fn leq(&self, e: Edge, f: Edge) -> bool {
        e.src == f.src && e.dst == f.dst && self.order(e.src, e.dst).leq(e.idx, f.idx)
    }

    /// `composite R reference` for the given direction.
    pub fn compare(&self, direction: Direction, composite: Edge, reference: Edge) -> bool {
        match direction {
            Direction::Lower => self.leq(composite, reference),
            Direction::Upper => self.leq(reference, composite),
        }
    }

    /// The original graph underneath, when units and contact are present.
    pub fn original(&self) -> Result<OriginalGraph> {
        OriginalGraph::new(self.units()?.clone(), self.contact()?.clone())
    }
}

/// `α ≤ α′ ⇒ α∘β ≤ α′∘β` and `β ≤ β′ ⇒ α∘β ≤ α∘β′`.
pub fn monotone_contact_check(y: &OrderedGraph) -> Result<Check> {
    let contact = y.contact()?;
    let g = &y.graph;
    let mut check = Check::new("monotone contact");
    for a in 0..g.vertex_count() {
        for b in 0..g.vertex_count() {
            for c in 0..g.vertex_count() {
                for f1 in g.edges_between(a, b) {
                    for f2 in g.edges_between(a, b) {
                        for h1 in g.edges_between(b, c) {
                            for h2 in g.edges_between(b, c) {
                                if !(y.leq(f1, f2) && y.leq(h1, h2)) {
                                    continue;
                                }
                                check.tick();
                                let (lo, hi) = (contact.compose(f1, h1), contact.compose(f2, h2));
                                if !y.leq(lo, hi) {
                                    return Ok(check.fail(
                                        vec![
                                            g.edge_label(f1),
                                            g.edge_label(f2),
                                            g.edge_label(h1),
                                            g.edge_label(h2),
                                        ],
                                        format!("{} ≤ {}", g.edge_name(lo), g.edge_name(hi)),
                                        "not ordered",
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(check)
}

/// `(α∘β)∘γ ≥ α∘(β∘γ)` for every composable triple.
pub fn lower_associativity_check(y: &OrderedGraph) -> Result<Check> {
    let contact = y.contact()?;
    let g = &y.graph;
    let mut check = Check::new("lower associative contact");
    for alpha in g.edges() {
        for c in 0..g.vertex_count() {
            for beta in g.edges_between(alpha.dst, c) {
                for d in 0..g.vertex_count() {
                    for gamma in g.edges_between(c, d) {
                        check.tick();
                        let left = contact.compose(contact.compose(alpha, beta), gamma);
                        let right = contact.compose(alpha, contact.compose(beta, gamma));
                        if !y.leq(right, left) {
                            return Ok(check.fail(
                                vec![g.edge_label(alpha), g.edge_label(beta), g.edge_label(gamma)],
                                format!("{} ≤ {}", g.edge_name(right), g.edge_name(left)),
                                "not ordered",
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check)
}

/// Pointwise comparison of parallel transports into `y`.
pub fn transport_leq(f: &Transport, g: &Transport, y: &OrderedGraph) -> Result<bool> {
    if !f.is_parallel(g) {
        return Err(Error::NotParallel("transports differ on vertices or endpoints".into()));
    }
    if f.target().as_ref() != y.graph.as_ref() {
        return Err(Error::ShapeMismatch("transports do not land in the ordered graph".into()));
    }
    Ok(f.source().edges().all(|e| y.leq(f.edge(e), g.edge(e))))
}

/// Comparison of names `X → Y^T`: the same vertex maps everywhere, edge
/// images and transform components compared pointwise in `y`.
pub fn curried_leq(g: &CurriedTransport, h: &CurriedTransport, y: &OrderedGraph) -> Result<bool> {
    let x = g.source();
    if x.as_ref() != h.source().as_ref() || g.base().as_ref() != h.base().as_ref() {
        return Err(Error::ShapeMismatch("names have different sources".into()));
    }
    if (0..x.vertex_count()).any(|a| g.vertex(a).vertex_map() != h.vertex(a).vertex_map()) {
        return Err(Error::NotParallel("names differ on vertices".into()));
    }
    let t = g.base();
    for a in 0..x.vertex_count() {
        if !t.edges().all(|u| y.leq(g.vertex(a).edge(u), h.vertex(a).edge(u))) {
            return Ok(false);
        }
    }
    for alpha in x.edges() {
        if !(0..t.vertex_count()).all(|s| y.leq(g.component(alpha, s), h.component(alpha, s))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each edge map of `f` is monotone for the hom orders.
pub fn monotone_transport_check(f: &Transport, x: &OrderedGraph, y: &OrderedGraph) -> Result<Check> {
    if f.source().as_ref() != x.graph.as_ref() || f.target().as_ref() != y.graph.as_ref() {
        return Err(Error::ShapeMismatch("transport does not connect the ordered graphs".into()));
    }
    let g = &x.graph;
    let mut check = Check::new("monotone transport");
    for a in 0..g.vertex_count() {
        for b in 0..g.vertex_count() {
            for e1 in g.edges_between(a, b) {
                for e2 in g.edges_between(a, b) {
                    if !x.leq(e1, e2) {
                        continue;
                    }
                    check.tick();
                    if !y.leq(f.edge(e1), f.edge(e2)) {
                        return Ok(check.fail(
                            vec![g.edge_label(e1), g.edge_label(e2)],
                            format!("{} ≤ {}", y.graph.edge_name(f.edge(e1)), y.graph.edge_name(f.edge(e2))),
                            "not ordered",
                        ));
                    }
                }
            }
        }
    }
    Ok(check)
}
