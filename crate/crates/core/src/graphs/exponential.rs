use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graphs::graph::{Edge, FiniteGraph};
use crate::graphs::transport::{count_transports, transports, Transport};
use crate::util::{bracket, radix_product, rank, Budget, MixedRadix};

/// A family of edges `α_t ∈ Y(φ₀t; ψ₀t)` between two parallel transports.
#[derive(Clone, PartialEq, Eq)]
pub struct Transform {
    domain: Transport,
    codomain: Transport,
    components: Vec<usize>,
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Transform {
    pub fn new(domain: Transport, codomain: Transport, components: Vec<usize>) -> Result<Self> {
        check_components(&domain, &codomain, &components)?;
        Ok(Transform {
            domain,
            codomain,
            components,
        })
    }

    pub(crate) fn from_parts_unchecked(domain: Transport, codomain: Transport, components: Vec<usize>) -> Self {
        Transform {
            domain,
            codomain,
            components,
        }
    }

    /// The transform whose components are the chosen units.
    pub fn identity(phi: &Transport, units: &crate::graphs::UnitChoice) -> Self {
        let components = phi.vertex_map().iter().map(|&y| units.unit(y).idx).collect();
        Transform {
            domain: phi.clone(),
            codomain: phi.clone(),
            components,
        }
    }

    pub fn domain(&self) -> &Transport {
        &self.domain
    }

    pub fn codomain(&self) -> &Transport {
        &self.codomain
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component(&self, t: usize) -> Edge {
        Edge::new(self.domain.vertex(t), self.codomain.vertex(t), self.components[t])
    }

    /// Componentwise image under a transport of the target graph.
    pub fn map(&self, g: &Transport) -> Result<Transform> {
        let domain = self.domain.then(g)?;
        let codomain = self.codomain.then(g)?;
        let components = (0..self.components.len())
            .map(|t| g.edge(self.component(t)).idx)
            .collect();
        Ok(Transform {
            domain,
            codomain,
            components,
        })
    }

    pub fn label(&self) -> String {
        let y = self.domain.target();
        let parts: Vec<&str> = (0..self.components.len())
            .map(|t| y.edge_name(self.component(t)))
            .collect();
        bracket('[', parts, ']')
    }
}

fn check_components(domain: &Transport, codomain: &Transport, components: &[usize]) -> Result<()> {
    if !domain.source().as_ref().eq(codomain.source().as_ref())
        || !domain.target().as_ref().eq(codomain.target().as_ref())
    {
        return Err(Error::NotParallel("transform between non-parallel transports".into()));
    }
    let y = domain.target();
    if components.len() != domain.vertex_map().len() {
        return Err(Error::ShapeMismatch("one component per vertex is required".into()));
    }
    for (t, &c) in components.iter().enumerate() {
        if c >= y.hom_len(domain.vertex(t), codomain.vertex(t)) {
            return Err(Error::ShapeMismatch(format!(
                "component at {} lies outside its hom",
                domain.source().vertices().atom(t)
            )));
        }
    }
    Ok(())
}

/// Radices of the component odometer for transforms `φ → ψ`.
pub fn transform_radices(phi: &Transport, psi: &Transport) -> Vec<usize> {
    let y = phi.target();
    (0..phi.vertex_map().len())
        .map(|t| y.hom_len(phi.vertex(t), psi.vertex(t)))
        .collect()
}

/// `|Y^T(φ;ψ)| = Π_t |Y(φ₀t; ψ₀t)|`.
pub fn count_transforms(phi: &Transport, psi: &Transport) -> u128 {
    radix_product(transform_radices(phi, psi))
}

/// All transforms `φ → ψ`, with components at vertex 0 most significant.
pub fn all_transforms<'a>(phi: &'a Transport, psi: &'a Transport) -> impl Iterator<Item = Transform> + 'a {
    MixedRadix::new(transform_radices(phi, psi))
        .map(move |components| Transform::from_parts_unchecked(phi.clone(), psi.clone(), components))
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct TransportKey(Vec<usize>, Vec<Vec<usize>>);

fn key(t: &Transport) -> TransportKey {
    TransportKey(t.vertex_map().to_vec(), t.edge_maps().to_vec())
}

/// A materialized exponential graph `Y^T`: vertices are the transports
/// `T → Y`, edges the transforms (all of them, or those passing a filter).
pub struct ExponentialGraph {
    base: Arc<FiniteGraph>,
    target: Arc<FiniteGraph>,
    transports: Vec<Transport>,
    positions: HashMap<TransportKey, usize>,
    // Component vectors per ordered pair of vertices, in hom order.
    homs: Vec<Vec<Vec<usize>>>,
    graph: Arc<FiniteGraph>,
}

impl fmt::Debug for ExponentialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExponentialGraph")
            .field("vertices", &self.transports.len())
            .field("edges", &self.graph.edge_count())
            .finish()
    }
}

impl ExponentialGraph {
    /// The full exponential graph `Y^T`.
    pub fn full(base: &Arc<FiniteGraph>, target: &Arc<FiniteGraph>, budget: Budget) -> Result<Self> {
        ExponentialGraph::restricted(base, target, budget, |_| true)
    }

    /// The sub-graph of `Y^T` keeping only the transforms accepted by `keep`.
    pub fn restricted(
        base: &Arc<FiniteGraph>,
        target: &Arc<FiniteGraph>,
        budget: Budget,
        mut keep: impl FnMut(&Transform) -> bool,
    ) -> Result<Self> {
        let vertices = count_transports(base, target);
        budget.admit(vertices.saturating_mul(vertices))?;
        let list: Vec<Transport> = transports(base, target).collect();
        let total: u128 = list
            .iter()
            .flat_map(|phi| list.iter().map(move |psi| count_transforms(phi, psi)))
            .fold(0u128, u128::saturating_add);
        budget.admit(total)?;
        let n = list.len();
        let mut homs = Vec::with_capacity(n * n);
        for phi in &list {
            for psi in &list {
                homs.push(
                    all_transforms(phi, psi)
                        .filter(|a| keep(a))
                        .map(|a| a.components)
                        .collect::<Vec<_>>(),
                );
            }
        }
        let positions = list.iter().enumerate().map(|(i, t)| (key(t), i)).collect();
        let names = crate::finset::FiniteSet::new(list.iter().map(Transport::label))
            .expect("distinct transports have distinct labels");
        let mut edges = Vec::new();
        for (k, hom) in homs.iter().enumerate() {
            let (i, j) = (k / n, k % n);
            for components in hom {
                let a = Transform::from_parts_unchecked(list[i].clone(), list[j].clone(), components.clone());
                edges.push((i, j, a.label()));
            }
        }
        let graph = FiniteGraph::with_edges(names, edges).expect("component labels are distinct");
        Ok(ExponentialGraph {
            base: base.clone(),
            target: target.clone(),
            transports: list,
            positions,
            homs,
            graph: Arc::new(graph),
        })
    }

    pub fn graph(&self) -> &Arc<FiniteGraph> {
        &self.graph
    }

    pub fn base(&self) -> &Arc<FiniteGraph> {
        &self.base
    }

    pub fn target(&self) -> &Arc<FiniteGraph> {
        &self.target
    }

    pub fn transports(&self) -> &[Transport] {
        &self.transports
    }

    pub fn transport(&self, vertex: usize) -> &Transport {
        &self.transports[vertex]
    }

    pub fn position(&self, phi: &Transport) -> Option<usize> {
        self.positions.get(&key(phi)).copied()
    }

    /// The transform carried by an edge of the exponential graph.
    pub fn transform(&self, e: Edge) -> Transform {
        let n = self.transports.len();
        Transform::from_parts_unchecked(
            self.transports[e.src].clone(),
            self.transports[e.dst].clone(),
            self.homs[e.src * n + e.dst][e.idx].clone(),
        )
    }

    /// The edge carrying `alpha`, if it is present.
    pub fn edge_of(&self, alpha: &Transform) -> Option<Edge> {
        let i = self.position(alpha.domain())?;
        let j = self.position(alpha.codomain())?;
        let hom = &self.homs[i * self.transports.len() + j];
        let idx = if hom.len() as u128 == count_transforms(alpha.domain(), alpha.codomain()) {
            rank(&alpha.components, &transform_radices(alpha.domain(), alpha.codomain()))
        } else {
            hom.iter().position(|c| *c == alpha.components)?
        };
        Some(Edge::new(i, j, idx))
    }
}

/// `g^T: Y^T → Y′^T`, sending `φ` to `φ then g` and transforms componentwise.
pub fn target_change(g: &Transport, from: &ExponentialGraph, to: &ExponentialGraph) -> Result<Transport> {
    if from.target.as_ref() != g.source().as_ref() || to.target.as_ref() != g.target().as_ref() {
        return Err(Error::ShapeMismatch("transport does not connect the exponential targets".into()));
    }
    let n = from.transports.len();
    let mut vertex_map = Vec::with_capacity(n);
    for phi in &from.transports {
        let image = phi.then(g)?;
        vertex_map.push(
            to.position(&image)
                .ok_or_else(|| Error::ShapeMismatch("image transport missing from the codomain".into()))?,
        );
    }
    let mut edge_maps = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut map = Vec::new();
            for idx in 0..from.graph.hom_len(i, j) {
                let image = from.transform(Edge::new(i, j, idx)).map(g)?;
                let e = to
                    .edge_of(&image)
                    .ok_or_else(|| Error::ShapeMismatch("image transform missing from the codomain".into()))?;
                map.push(e.idx);
            }
            edge_maps.push(map);
        }
    }
    Transport::new(from.graph.clone(), to.graph.clone(), vertex_map, edge_maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::transport::Transport;

    #[test]
    fn point_base_reproduces_target() {
        let t = FiniteGraph::point().shared();
        let y = FiniteGraph::from_hom_sizes(2, &[1, 2, 0, 1]).shared();
        let e = ExponentialGraph::full(&t, &y, Budget::default()).unwrap();
        assert_eq!(e.graph().hom_sizes(), y.hom_sizes());
    }

    #[test]
    fn hom_sizes_follow_product_formula() {
        let t = FiniteGraph::arrow().shared();
        let y = FiniteGraph::from_hom_sizes(2, &[2, 1, 0, 1]).shared();
        let e = ExponentialGraph::full(&t, &y, Budget::default()).unwrap();
        assert_eq!(e.transports().len() as u128, count_transports(&t, &y));
        for i in 0..e.transports().len() {
            for j in 0..e.transports().len() {
                let (phi, psi) = (e.transport(i), e.transport(j));
                let mut expected = 1;
                for s in 0..2 {
                    expected *= y.hom_len(phi.vertex(s), psi.vertex(s));
                }
                assert_eq!(e.graph().hom_len(i, j), expected);
            }
        }
    }

    #[test]
    fn edge_of_inverts_transform() {
        let t = FiniteGraph::from_hom_sizes(1, &[1]).shared();
        let y = FiniteGraph::from_hom_sizes(2, &[2, 1, 1, 2]).shared();
        let e = ExponentialGraph::full(&t, &y, Budget::default()).unwrap();
        for edge in e.graph().edges() {
            assert_eq!(e.edge_of(&e.transform(edge)), Some(edge));
        }
    }

    #[test]
    fn identity_target_change_is_identity() {
        let t = FiniteGraph::arrow().shared();
        let y = FiniteGraph::from_hom_sizes(2, &[1, 1, 1, 1]).shared();
        let e = ExponentialGraph::full(&t, &y, Budget::default()).unwrap();
        let id = target_change(&Transport::identity(&y), &e, &e).unwrap();
        assert_eq!(id, Transport::identity(e.graph()));
    }

    #[test]
    fn budget_refuses_large_exponentials() {
        let t = FiniteGraph::from_hom_sizes(2, &[2, 2, 2, 2]).shared();
        let y = FiniteGraph::from_hom_sizes(2, &[2, 2, 2, 2]).shared();
        assert!(matches!(
            ExponentialGraph::full(&t, &y, Budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
