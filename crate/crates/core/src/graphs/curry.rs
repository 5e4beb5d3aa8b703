//! Currying for graph transports: the name appointment `X×T → Y` to
//! `X → Y^T`, the pre/post realizations back, and the predicates under
//! which the two are mutually inverse.
//!
//! Transports into `Y^T` are kept in curried form (one transport `T → Y`
//! per vertex, one component family per edge) so `Y^T` never has to be
//! materialized.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graphs::contact::ContactTable;
use crate::graphs::exponential::{all_transforms, count_transforms, ExponentialGraph, Transform};
use crate::graphs::graph::{Edge, FiniteGraph, UnitChoice};
use crate::graphs::transport::{transports, CarteProduct, Transport};
use crate::util::{advance, Budget, MixedRadix};

/// Which contact order a realization or predicate uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Pre,
    Post,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Pre => "pre",
            Side::Post => "post",
        }
    }
}

/// A transport `X → Y^T` in curried form.
#[derive(Clone, PartialEq, Eq)]
pub struct CurriedTransport {
    source: Arc<FiniteGraph>,
    base: Arc<FiniteGraph>,
    target: Arc<FiniteGraph>,
    vertices: Vec<Transport>,
    // Per source pair `a·n + b`, per edge, the components over `T₀`.
    edges: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for CurriedTransport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl CurriedTransport {
    pub fn new(
        source: Arc<FiniteGraph>,
        base: Arc<FiniteGraph>,
        target: Arc<FiniteGraph>,
        vertices: Vec<Transport>,
        edges: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = source.vertex_count();
        if vertices.len() != n || edges.len() != n * n {
            return Err(Error::ShapeMismatch("curried transport data does not match its source".into()));
        }
        for v in &vertices {
            if v.source().as_ref() != base.as_ref() || v.target().as_ref() != target.as_ref() {
                return Err(Error::ShapeMismatch("vertex images are not transports T → Y".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let images = &edges[a * n + b];
                if images.len() != source.hom_len(a, b) {
                    return Err(Error::ShapeMismatch("edge images are not total".into()));
                }
                for components in images {
                    Transform::new(vertices[a].clone(), vertices[b].clone(), components.clone())?;
                }
            }
        }
        Ok(CurriedTransport {
            source,
            base,
            target,
            vertices,
            edges,
        })
    }

    pub fn source(&self) -> &Arc<FiniteGraph> {
        &self.source
    }

    pub fn base(&self) -> &Arc<FiniteGraph> {
        &self.base
    }

    pub fn target(&self) -> &Arc<FiniteGraph> {
        &self.target
    }

    /// `g₀(x)`, a transport `T → Y`.
    pub fn vertex(&self, x: usize) -> &Transport {
        &self.vertices[x]
    }

    pub fn vertex_images(&self) -> &[Transport] {
        &self.vertices
    }

    pub fn components(&self, alpha: Edge) -> &[usize] {
        &self.edges[alpha.src * self.source.vertex_count() + alpha.dst][alpha.idx]
    }

    /// `g(α)_s`.
    pub fn component(&self, alpha: Edge, s: usize) -> Edge {
        Edge::new(
            self.vertices[alpha.src].vertex(s),
            self.vertices[alpha.dst].vertex(s),
            self.components(alpha)[s],
        )
    }

    /// `g(α)` as a transform.
    pub fn transform(&self, alpha: Edge) -> Transform {
        Transform::from_parts_unchecked(
            self.vertices[alpha.src].clone(),
            self.vertices[alpha.dst].clone(),
            self.components(alpha).to_vec(),
        )
    }

    /// Same vertex images.
    pub fn is_parallel(&self, other: &CurriedTransport) -> bool {
        self.vertices == other.vertices
    }

    /// `g then h^T` for a transport `h: Y → Y′`.
    pub fn post_compose(&self, h: &Transport) -> Result<CurriedTransport> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.then(h))
            .collect::<Result<Vec<_>>>()?;
        let edges = self
            .source
            .edges()
            .map(|alpha| self.transform(alpha).map(h).map(|t| (alpha, t)))
            .collect::<Result<Vec<_>>>()?;
        let n = self.source.vertex_count();
        let mut grouped = vec![Vec::new(); n * n];
        for (alpha, t) in edges {
            grouped[alpha.src * n + alpha.dst].push(t.components().to_vec());
        }
        Ok(CurriedTransport {
            source: self.source.clone(),
            base: self.base.clone(),
            target: h.target().clone(),
            vertices,
            edges: grouped,
        })
    }

    /// The same data as a transport into a materialized exponential graph.
    pub fn to_transport(&self, exp: &ExponentialGraph) -> Result<Transport> {
        let n = self.source.vertex_count();
        let missing = || Error::ShapeMismatch("image missing from the exponential graph".into());
        let vertex_map = self
            .vertices
            .iter()
            .map(|v| exp.position(v).ok_or_else(missing))
            .collect::<Result<Vec<_>>>()?;
        let mut edge_maps = vec![Vec::new(); n * n];
        for alpha in self.source.edges() {
            let e = exp.edge_of(&self.transform(alpha)).ok_or_else(missing)?;
            edge_maps[alpha.src * n + alpha.dst].push(e.idx);
        }
        Transport::new(self.source.clone(), exp.graph().clone(), vertex_map, edge_maps)
    }

    /// Inverse of [`CurriedTransport::to_transport`].
    pub fn from_transport(g: &Transport, exp: &ExponentialGraph) -> Result<CurriedTransport> {
        if g.target().as_ref() != exp.graph().as_ref() {
            return Err(Error::ShapeMismatch("transport does not land in the exponential graph".into()));
        }
        let source = g.source().clone();
        let n = source.vertex_count();
        let vertices = g.vertex_map().iter().map(|&v| exp.transport(v).clone()).collect();
        let mut edges = vec![Vec::new(); n * n];
        for alpha in source.edges() {
            edges[alpha.src * n + alpha.dst].push(exp.transform(g.edge(alpha)).components().to_vec());
        }
        Ok(CurriedTransport {
            source,
            base: exp.base().clone(),
            target: exp.target().clone(),
            vertices,
            edges,
        })
    }

    pub fn label(&self) -> String {
        let xs = self.source.vertices();
        let vparts: Vec<String> = (0..xs.len())
            .map(|x| format!("{}:{}", xs.atom(x), self.vertices[x].label()))
            .collect();
        let eparts: Vec<String> = self
            .source
            .edges()
            .map(|alpha| format!("{}:{}", self.source.edge_name(alpha), self.transform(alpha).label()))
            .collect();
        format!("<{}>|<{}>", vparts.join(";"), eparts.join(";"))
    }
}

/// The unit transport `λ: X → (X×T)^T`: `λ(x)` sends `t` to `⟨x,t⟩` and
/// `u` to `⟨1_x,u⟩`; an edge `α` goes to the transform `⟨α,1_s⟩`.
pub fn sections_transport(product: &CarteProduct, ux: &UnitChoice, ut: &UnitChoice) -> CurriedTransport {
    let x = product.left();
    let t = product.right();
    let n = x.vertex_count();
    let m = t.vertex_count();
    let vertices: Vec<Transport> = (0..n)
        .map(|a| {
            let vertex_map = (0..m).map(|s| product.vertex(a, s)).collect();
            let edge_maps = (0..m * m)
                .map(|k| {
                    t.edges_between(k / m, k % m)
                        .map(|u| product.edge(ux.unit(a), u).idx)
                        .collect()
                })
                .collect();
            Transport::from_parts_unchecked(t.clone(), product.graph().clone(), vertex_map, edge_maps)
        })
        .collect();
    let mut edges = vec![Vec::new(); n * n];
    for alpha in x.edges() {
        edges[alpha.src * n + alpha.dst].push((0..m).map(|s| product.edge(alpha, ut.unit(s)).idx).collect());
    }
    CurriedTransport {
        source: x.clone(),
        base: t.clone(),
        target: product.graph().clone(),
        vertices,
        edges,
    }
}

fn check_form(f: &Transport, product: &CarteProduct) -> Result<()> {
    if f.source().as_ref() != product.graph().as_ref() {
        return Err(Error::ShapeMismatch("form is not defined on the given biproduct".into()));
    }
    Ok(())
}

/// The name of a form `f: X×T → Y`: `g₀(x) = f(x,−)` with `u ↦ f(1_x,u)`,
/// and `g(α)_s = f(α,1_s)`. Equal to `λ` followed by `f^T`.
pub fn name_appointment(
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
) -> Result<CurriedTransport> {
    check_form(f, product)?;
    Ok(sections_transport(product, ux, ut)
        .post_compose(f)
        .expect("sections land in the source of the form"))
}

/// `α_s ∘ ψ(u)` (pre) or `φ(u) ∘ α_t` (post) for `u: s → t`.
pub fn evaluate(side: Side, contact: &ContactTable, alpha: &Transform, u: Edge) -> Edge {
    match side {
        Side::Pre => contact.compose(alpha.component(u.src), alpha.codomain().edge(u)),
        Side::Post => contact.compose(alpha.domain().edge(u), alpha.component(u.dst)),
    }
}

/// The realization of `g: X → Y^T` as a form on `X×T`: `⟨x,t⟩ ↦ g₀(x)₀(t)`
/// and `⟨α,u⟩ ↦ g(α)_s ∘ g₀(b)(u)` (pre) or `g₀(a)(u) ∘ g(α)_t` (post).
pub fn realization(g: &CurriedTransport, product: &CarteProduct, contact: &ContactTable, side: Side) -> Result<Transport> {
    if product.left().as_ref() != g.source.as_ref() || product.right().as_ref() != g.base.as_ref() {
        return Err(Error::ShapeMismatch("biproduct does not match the curried transport".into()));
    }
    if contact.graph().as_ref() != g.target.as_ref() {
        return Err(Error::ShapeMismatch("contact table is not on the target graph".into()));
    }
    let graph = product.graph();
    let n = graph.vertex_count();
    let vertex_map = (0..n)
        .map(|v| {
            let (x, t) = product.split_vertex(v);
            g.vertices[x].vertex(t)
        })
        .collect();
    let mut edge_maps = vec![Vec::new(); n * n];
    for e in graph.edges() {
        let (alpha, u) = product.split_edge(e);
        let value = match side {
            Side::Pre => contact.compose(g.component(alpha, u.src), g.vertices[alpha.dst].edge(u)),
            Side::Post => contact.compose(g.vertices[alpha.src].edge(u), g.component(alpha, u.dst)),
        };
        edge_maps[e.src * n + e.dst].push(value.idx);
    }
    Ok(Transport::from_parts_unchecked(graph.clone(), g.target.clone(), vertex_map, edge_maps))
}

/// The evaluation transport `Y^T × T → Y` on a materialized exponential.
pub fn evaluation(exp: &ExponentialGraph, product: &CarteProduct, contact: &ContactTable, side: Side) -> Result<Transport> {
    if product.left().as_ref() != exp.graph().as_ref() || product.right().as_ref() != exp.base().as_ref() {
        return Err(Error::ShapeMismatch("biproduct is not Y^T × T".into()));
    }
    if contact.graph().as_ref() != exp.target().as_ref() {
        return Err(Error::ShapeMismatch("contact table is not on the exponential target".into()));
    }
    let graph = product.graph();
    let n = graph.vertex_count();
    let vertex_map = (0..n)
        .map(|v| {
            let (phi, s) = product.split_vertex(v);
            exp.transport(phi).vertex(s)
        })
        .collect();
    let mut edge_maps = vec![Vec::new(); n * n];
    for e in graph.edges() {
        let (alpha, u) = product.split_edge(e);
        edge_maps[e.src * n + e.dst].push(evaluate(side, contact, &exp.transform(alpha), u).idx);
    }
    Ok(Transport::from_parts_unchecked(graph.clone(), exp.target().clone(), vertex_map, edge_maps))
}

/// A comparison between a composite and the edge it should reproduce;
/// equality for the plain predicates, an order for the ordered ones.
pub type Relation<'a> = &'a dyn Fn(Edge, Edge) -> bool;

/// Checks `f(α,1_s) ∘ f(1_b,u)` (pre) or `f(1_a,u) ∘ f(α,1_t)` (post)
/// against `f(α,u)` under `rel(composite, value)` for every `α: a→b`, `u: s→t`.
#[allow(clippy::too_many_arguments)]
pub fn decomposition_check_with(
    property: &str,
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
    contact: &ContactTable,
    side: Side,
    rel: Relation<'_>,
) -> Check {
    let mut check = Check::new(property);
    let x = product.left();
    let t = product.right();
    let y = f.target();
    for alpha in x.edges() {
        for u in t.edges() {
            check.tick();
            let value = f.edge(product.edge(alpha, u));
            let composite = match side {
                Side::Pre => contact.compose(
                    f.edge(product.edge(alpha, ut.unit(u.src))),
                    f.edge(product.edge(ux.unit(alpha.dst), u)),
                ),
                Side::Post => contact.compose(
                    f.edge(product.edge(ux.unit(alpha.src), u)),
                    f.edge(product.edge(alpha, ut.unit(u.dst))),
                ),
            };
            if !rel(composite, value) {
                return check.fail(
                    vec![x.edge_label(alpha), t.edge_label(u)],
                    y.edge_label(value),
                    y.edge_label(composite),
                );
            }
        }
    }
    check
}

/// Equality form of [`decomposition_check_with`].
pub fn decomposability_check(
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
    contact: &ContactTable,
    side: Side,
) -> Result<Check> {
    check_form(f, product)?;
    let property = format!("{}decomposable", side.as_str());
    Ok(decomposition_check_with(&property, f, product, ux, ut, contact, side, &|a, b| a == b))
}

/// Checks the two neutrality families of `g` under `rel(composite, value)`.
///
/// Pre: `g(1_a)_s ∘ g₀(a)(u)` against `g₀(a)(u)`, and `g(α)_s ∘ g₀(b)(1_s)`
/// against `g(α)_s`. Post: `g₀(a)(u) ∘ g(1_a)_t` against `g₀(a)(u)`, and
/// `g₀(a)(1_s) ∘ g(α)_s` against `g(α)_s`.
pub fn neutrality_check_with(
    property: &str,
    g: &CurriedTransport,
    ux: &UnitChoice,
    ut: &UnitChoice,
    contact: &ContactTable,
    side: Side,
    rel: Relation<'_>,
) -> Check {
    let mut check = Check::new(property);
    let x = &g.source;
    let t = &g.base;
    let y = &g.target;
    for a in 0..x.vertex_count() {
        let unit = ux.unit(a);
        for u in t.edges() {
            check.tick();
            let value = g.vertices[a].edge(u);
            let composite = match side {
                Side::Pre => contact.compose(g.component(unit, u.src), value),
                Side::Post => contact.compose(value, g.component(unit, u.dst)),
            };
            if !rel(composite, value) {
                return check.fail(
                    vec![x.edge_label(unit), t.edge_label(u)],
                    y.edge_label(value),
                    y.edge_label(composite),
                );
            }
        }
    }
    for alpha in x.edges() {
        for s in 0..t.vertex_count() {
            check.tick();
            let value = g.component(alpha, s);
            let composite = match side {
                Side::Pre => contact.compose(value, g.vertices[alpha.dst].edge(ut.unit(s))),
                Side::Post => contact.compose(g.vertices[alpha.src].edge(ut.unit(s)), value),
            };
            if !rel(composite, value) {
                return check.fail(
                    vec![x.edge_label(alpha), t.edge_label(ut.unit(s))],
                    y.edge_label(value),
                    y.edge_label(composite),
                );
            }
        }
    }
    check
}

/// Equality form of [`neutrality_check_with`].
pub fn neutrality_check(g: &CurriedTransport, ux: &UnitChoice, ut: &UnitChoice, contact: &ContactTable, side: Side) -> Check {
    let property = format!("{}neutral", side.as_str());
    neutrality_check_with(&property, g, ux, ut, contact, side, &|a, b| a == b)
}

/// Upper bound on the number of curried transports `X → Y^T`.
pub fn count_curried(x: &FiniteGraph, t: &Arc<FiniteGraph>, y: &Arc<FiniteGraph>) -> u128 {
    let list: Vec<Transport> = transports(t, y).collect();
    count_curried_over(x, &list, count_transforms)
}

fn count_curried_over(x: &FiniteGraph, list: &[Transport], hom: impl Fn(&Transport, &Transport) -> u128) -> u128 {
    let n = x.vertex_count();
    let mut cache: HashMap<(usize, usize), u128> = HashMap::new();
    let mut total = 0u128;
    for vm in MixedRadix::new(vec![list.len(); n]) {
        let mut product = 1u128;
        for alpha in x.edges() {
            let (i, j) = (vm[alpha.src], vm[alpha.dst]);
            let c = *cache.entry((i, j)).or_insert_with(|| hom(&list[i], &list[j]));
            product = product.saturating_mul(c);
            if product == 0 {
                break;
            }
        }
        total = total.saturating_add(product);
    }
    total
}

/// Visits every curried transport `X → Y^T` whose transforms pass `keep`,
/// lexicographically: vertex images first (in transport order), then edge
/// images in edge order. Vertex images must fit in the budget, and so must
/// the number of visited candidates.
pub fn for_each_curried(
    x: &Arc<FiniteGraph>,
    t: &Arc<FiniteGraph>,
    y: &Arc<FiniteGraph>,
    budget: Budget,
    keep: impl Fn(&Transform) -> bool,
    mut visit: impl FnMut(&CurriedTransport) -> ControlFlow<()>,
) -> Result<u64> {
    let n = x.vertex_count();
    let vertex_images: Vec<Transport> = transports(t, y).collect();
    budget.admit(crate::util::saturating_pow(vertex_images.len(), n))?;
    let mut cache: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    let mut allowed = |i: usize, j: usize| -> Vec<Vec<usize>> {
        cache
            .entry((i, j))
            .or_insert_with(|| {
                all_transforms(&vertex_images[i], &vertex_images[j])
                    .filter(|a| keep(a))
                    .map(|a| a.components().to_vec())
                    .collect()
            })
            .clone()
    };
    let total = {
        let mut total = 0u128;
        for vm in MixedRadix::new(vec![vertex_images.len(); n]) {
            let mut product = 1u128;
            for alpha in x.edges() {
                product = product.saturating_mul(allowed(vm[alpha.src], vm[alpha.dst]).len() as u128);
            }
            total = total.saturating_add(product);
        }
        total
    };
    budget.admit(total)?;
    let edges: Vec<Edge> = x.edges().collect();
    let mut visited = 0u64;
    for vm in MixedRadix::new(vec![vertex_images.len(); n]) {
        let options: Vec<Vec<Vec<usize>>> = edges.iter().map(|a| allowed(vm[a.src], vm[a.dst])).collect();
        let radices: Vec<usize> = options.iter().map(Vec::len).collect();
        if radices.contains(&0) {
            continue;
        }
        let vertices: Vec<Transport> = vm.iter().map(|&i| vertex_images[i].clone()).collect();
        let mut digits = vec![0; edges.len()];
        loop {
            let mut grouped = vec![Vec::new(); n * n];
            for (k, alpha) in edges.iter().enumerate() {
                grouped[alpha.src * n + alpha.dst].push(options[k][digits[k]].clone());
            }
            let g = CurriedTransport {
                source: x.clone(),
                base: t.clone(),
                target: y.clone(),
                vertices: vertices.clone(),
                edges: grouped,
            };
            visited += 1;
            if visit(&g).is_break() {
                return Ok(visited);
            }
            if !advance(&mut digits, &radices) {
                break;
            }
        }
    }
    Ok(visited)
}

/// Every curried transport `X → Y^T`, collected.
pub fn all_curried(
    x: &Arc<FiniteGraph>,
    t: &Arc<FiniteGraph>,
    y: &Arc<FiniteGraph>,
    budget: Budget,
) -> Result<Vec<CurriedTransport>> {
    let mut out = Vec::new();
    for_each_curried(x, t, y, budget, |_| true, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::transport::{carte_biproduct, transports};

    fn monoid(size: usize, op: impl Fn(usize, usize) -> usize) -> (Arc<FiniteGraph>, ContactTable) {
        let g = FiniteGraph::from_hom_sizes(1, &[size]).shared();
        let c = ContactTable::from_fn(&g, |a, b| Edge::new(0, 0, op(a.idx, b.idx))).unwrap();
        (g, c)
    }

    #[test]
    fn name_matches_direct_formula() {
        let x = FiniteGraph::from_hom_sizes(2, &[1, 1, 0, 1]).shared();
        let t = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        let (y, _) = monoid(2, |a, b| a ^ b);
        let p = carte_biproduct(&x, &t);
        let ux = UnitChoice::first_loops(&x).unwrap();
        let ut = UnitChoice::first_loops(&t).unwrap();
        for f in transports(p.graph(), &y).take(200) {
            let g = name_appointment(&f, &p, &ux, &ut).unwrap();
            for alpha in x.edges() {
                for s in 0..t.vertex_count() {
                    assert_eq!(g.component(alpha, s), f.edge(p.edge(alpha, ut.unit(s))));
                }
            }
            for a in 0..2 {
                for u in t.edges() {
                    assert_eq!(g.vertex(a).edge(u), f.edge(p.edge(ux.unit(a), u)));
                }
            }
        }
    }

    #[test]
    fn decomposable_forms_round_trip() {
        let x = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        let t = x.clone();
        let (y, c) = monoid(2, |a, b| a ^ b);
        let p = carte_biproduct(&x, &t);
        let u = UnitChoice::first_loops(&x).unwrap();
        let mut seen = 0;
        for f in transports(p.graph(), &y) {
            if decomposability_check(&f, &p, &u, &u, &c, Side::Pre).unwrap().holds() {
                seen += 1;
                let g = name_appointment(&f, &p, &u, &u).unwrap();
                assert_eq!(realization(&g, &p, &c, Side::Pre).unwrap(), f);
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn neutral_names_round_trip() {
        let x = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        let t = x.clone();
        let (y, c) = monoid(2, |a, b| a ^ b);
        let p = carte_biproduct(&x, &t);
        let u = UnitChoice::first_loops(&x).unwrap();
        for g in all_curried(&x, &t, &y, Budget::default()).unwrap() {
            if neutrality_check(&g, &u, &u, &c, Side::Pre).holds() && neutrality_check(&g, &u, &u, &c, Side::Post).holds() {
                let f = realization(&g, &p, &c, Side::Pre).unwrap();
                assert_eq!(name_appointment(&f, &p, &u, &u).unwrap(), g);
            }
        }
    }

    #[test]
    fn curried_count_matches_enumeration() {
        let x = FiniteGraph::arrow().shared();
        let t = FiniteGraph::from_hom_sizes(1, &[1]).shared();
        let y = FiniteGraph::from_hom_sizes(2, &[1, 2, 1, 1]).shared();
        let all = all_curried(&x, &t, &y, Budget::default()).unwrap();
        assert_eq!(all.len() as u128, count_curried(&x, &t, &y));
    }

    #[test]
    fn materialized_round_trip() {
        let x = FiniteGraph::arrow().shared();
        let t = FiniteGraph::from_hom_sizes(1, &[1]).shared();
        let y = FiniteGraph::from_hom_sizes(2, &[1, 2, 1, 1]).shared();
        let exp = ExponentialGraph::full(&t, &y, Budget::default()).unwrap();
        for g in all_curried(&x, &t, &y, Budget::default()).unwrap() {
            let h = g.to_transport(&exp).unwrap();
            assert_eq!(CurriedTransport::from_transport(&h, &exp).unwrap(), g);
        }
    }

    #[test]
    fn evaluation_at_units_returns_components() {
        let t = FiniteGraph::from_hom_sizes(1, &[1]).shared();
        let (y, c) = monoid(2, |a, b| a ^ b);
        let exp = ExponentialGraph::full(&t, &y, Budget::default()).unwrap();
        let p = carte_biproduct(exp.graph(), &t);
        let ev = evaluation(&exp, &p, &c, Side::Pre).unwrap();
        let unit = Edge::new(0, 0, 0);
        for alpha in exp.graph().edges() {
            let a = exp.transform(alpha);
            if a.codomain().edge(unit) == unit {
                assert_eq!(ev.edge(p.edge(alpha, unit)), a.component(0));
            }
        }
    }
}
