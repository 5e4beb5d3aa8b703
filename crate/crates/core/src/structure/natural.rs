use std::sync::Arc;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graphs::{
    all_transforms, evaluate, transports, ContactTable, ExponentialGraph, FiniteGraph, Relation, Side,
    Transform,
};
use crate::structure::original::OriginalGraph;
use crate::util::Budget;

/// Compares the precontact arrow `α_s ∘ ψ(u)` with the postcontact arrow
/// `φ(u) ∘ α_t` by `rel(pre, post)` for every edge `u: s → t` of the base.
pub fn square_check_with(property: &str, alpha: &Transform, contact: &ContactTable, rel: Relation<'_>) -> Check {
    let mut check = Check::new(property);
    let t = alpha.domain().source();
    let y = alpha.domain().target();
    for u in t.edges() {
        check.tick();
        let pre = evaluate(Side::Pre, contact, alpha, u);
        let post = evaluate(Side::Post, contact, alpha, u);
        if !rel(pre, post) {
            return check.fail(vec![alpha.label(), t.edge_label(u)], y.edge_label(post), y.edge_label(pre));
        }
    }
    check
}

/// `α_s ∘ ψ(u) = φ(u) ∘ α_t` for every edge `u: s → t`.
pub fn natural_transform_check(alpha: &Transform, contact: &ContactTable) -> Check {
    square_check_with("natural transform", alpha, contact, &|a, b| a == b)
}

pub fn is_natural(alpha: &Transform, contact: &ContactTable) -> bool {
    natural_transform_check(alpha, contact).holds()
}

/// `Y^(T)`: the sub-graph of `Y^T` whose edges are the natural transforms.
pub fn natural_exponential(t: &Arc<FiniteGraph>, y: &OriginalGraph, budget: Budget) -> Result<ExponentialGraph> {
    ExponentialGraph::restricted(t, y.graph(), budget, |a| is_natural(a, y.contact()))
}

/// Vertical composite `(α∘β)_s = α_s ∘ β_s`.
pub fn compose_transforms(alpha: &Transform, beta: &Transform, contact: &ContactTable) -> Result<Transform> {
    if alpha.codomain() != beta.domain() {
        return Err(Error::ShapeMismatch("codomain of the first transform is not the domain of the second".into()));
    }
    let components = (0..alpha.components().len())
        .map(|s| contact.compose(alpha.component(s), beta.component(s)).idx)
        .collect();
    Transform::new(alpha.domain().clone(), beta.codomain().clone(), components)
}

/// Searches for natural `α: φ → ψ`, `β: ψ → ξ` whose composite is not
/// natural. `None` means none exists among the transports `T → Y`.
pub fn natural_composition_witness(
    t: &Arc<FiniteGraph>,
    y: &OriginalGraph,
    budget: Budget,
) -> Result<Option<(Transform, Transform)>> {
    let exp = natural_exponential(t, y, budget)?;
    let g = exp.graph();
    for a in g.edges() {
        for c in 0..g.vertex_count() {
            for b in g.edges_between(a.dst, c) {
                let (alpha, beta) = (exp.transform(a), exp.transform(b));
                let composite = compose_transforms(&alpha, &beta, y.contact())?;
                if !is_natural(&composite, y.contact()) {
                    return Ok(Some((alpha, beta)));
                }
            }
        }
    }
    Ok(None)
}

/// `ev⁺ = ev⁻` on every natural transform `T ⇒ Y`, checked edge by edge.
pub fn evaluations_agree(t: &Arc<FiniteGraph>, y: &OriginalGraph, budget: Budget) -> Result<Check> {
    let mut check = Check::new("pre and post evaluation agree");
    let list: Vec<_> = transports(t, y.graph()).collect();
    budget.admit((list.len() as u128).saturating_mul(list.len() as u128))?;
    for phi in &list {
        for psi in &list {
            for alpha in all_transforms(phi, psi) {
                if !is_natural(&alpha, y.contact()) {
                    continue;
                }
                for u in t.edges() {
                    check.tick();
                    let pre = evaluate(Side::Pre, y.contact(), &alpha, u);
                    let post = evaluate(Side::Post, y.contact(), &alpha, u);
                    if pre != post {
                        return Ok(check.fail(
                            vec![alpha.label(), t.edge_label(u)],
                            y.edge_label(pre),
                            y.edge_label(post),
                        ));
                    }
                }
            }
        }
    }
    Ok(check)
}

/// Checks that composing natural transforms is associative and that the
/// unit transforms are neutral on `Y^(T)`.
pub fn transform_composition_laws(t: &Arc<FiniteGraph>, y: &OriginalGraph, budget: Budget) -> Result<Check> {
    let exp = natural_exponential(t, y, budget)?;
    let g = exp.graph();
    let contact = y.contact();
    let mut check = Check::new("transform composition");
    for a in g.edges() {
        let alpha = exp.transform(a);
        check.tick();
        let left = compose_transforms(&Transform::identity(alpha.domain(), y.units()), &alpha, contact)?;
        let right = compose_transforms(&alpha, &Transform::identity(alpha.codomain(), y.units()), contact)?;
        if left != alpha || right != alpha {
            return Ok(check.fail(vec![alpha.label()], alpha.label(), format!("{} / {}", left.label(), right.label())));
        }
        for c in 0..g.vertex_count() {
            for b in g.edges_between(a.dst, c) {
                let beta = exp.transform(b);
                let ab = compose_transforms(&alpha, &beta, contact)?;
                if !is_natural(&ab, contact) {
                    return Ok(check.fail(
                        vec![alpha.label(), beta.label()],
                        "natural composite".to_string(),
                        ab.label(),
                    ));
                }
                for d in 0..g.vertex_count() {
                    for e in g.edges_between(c, d) {
                        check.tick();
                        let gamma = exp.transform(e);
                        let left = compose_transforms(&ab, &gamma, contact)?;
                        let right = compose_transforms(&alpha, &compose_transforms(&beta, &gamma, contact)?, contact)?;
                        if left != right {
                            return Ok(check.fail(
                                vec![alpha.label(), beta.label(), gamma.label()],
                                left.label(),
                                right.label(),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check)
}
