use std::sync::Arc;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graphs::{all_transforms, ExponentialGraph, FiniteGraph, Transform, Transport};
use crate::ordered::graph::{monotone_contact_check, Continuity, OrderedGraph};
use crate::structure::{compose_transforms, square_check_with};
use crate::util::Budget;

/// The deformed square of `alpha` for every base edge: `pre ≤ post` when
/// continuous, `pre ≥ post` when cocontinuous.
pub fn continuity_check(alpha: &Transform, y: &OrderedGraph, continuity: Continuity) -> Result<Check> {
    let contact = y.contact()?;
    let rel = |pre, post| match continuity {
        Continuity::Continuous => y.leq(pre, post),
        Continuity::Cocontinuous => y.leq(post, pre),
    };
    Ok(square_check_with(&format!("{} transform", continuity.as_str()), alpha, contact, &rel))
}

pub fn is_continuous(alpha: &Transform, y: &OrderedGraph, continuity: Continuity) -> Result<bool> {
    Ok(continuity_check(alpha, y, continuity)?.holds())
}

/// Transforms `φ ⇒ ψ` satisfying the deformed square, in enumeration order.
pub fn continuous_transform_set(
    phi: &Transport,
    psi: &Transport,
    y: &OrderedGraph,
    continuity: Continuity,
) -> Result<Vec<Transform>> {
    let contact = y.contact()?;
    if phi.target().as_ref() != y.graph().as_ref() {
        return Err(Error::ShapeMismatch("transports do not land in the ordered graph".into()));
    }
    let rel = |pre, post| match continuity {
        Continuity::Continuous => y.leq(pre, post),
        Continuity::Cocontinuous => y.leq(post, pre),
    };
    Ok(all_transforms(phi, psi)
        .filter(|a| square_check_with("", a, contact, &rel).holds())
        .collect())
}

/// `Y^(T)_−` or `Y^(T)_+`: the sub-graph of `Y^T` on the continuous (or
/// cocontinuous) transforms.
pub fn continuous_exponential(
    t: &Arc<FiniteGraph>,
    y: &OrderedGraph,
    continuity: Continuity,
    budget: Budget,
) -> Result<ExponentialGraph> {
    y.contact()?;
    ExponentialGraph::restricted(t, y.graph(), budget, |a| {
        is_continuous(a, y, continuity).unwrap_or(false)
    })
}

/// `(α∘β)∘γ = α∘(β∘γ)` on the contact table of `y`.
pub fn contact_associativity_check(y: &OrderedGraph) -> Result<Check> {
    let contact = y.contact()?;
    let g = y.graph();
    let mut check = Check::new("associative contact");
    for alpha in g.edges() {
        for c in 0..g.vertex_count() {
            for beta in g.edges_between(alpha.dst, c) {
                for d in 0..g.vertex_count() {
                    for gamma in g.edges_between(c, d) {
                        check.tick();
                        let left = contact.compose(contact.compose(alpha, beta), gamma);
                        let right = contact.compose(alpha, contact.compose(beta, gamma));
                        if left != right {
                            return Ok(check.fail(
                                vec![g.edge_label(alpha), g.edge_label(beta), g.edge_label(gamma)],
                                g.edge_label(right),
                                g.edge_label(left),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check)
}

/// Composable pairs of continuous transforms whose composite is continuous.
/// No hypothesis on the contact is checked.
pub fn continuous_composition_unchecked(t: &Arc<FiniteGraph>, y: &OrderedGraph, budget: Budget) -> Result<Check> {
    let contact = y.contact()?;
    let exp = continuous_exponential(t, y, Continuity::Continuous, budget)?;
    let g = exp.graph();
    let mut check = Check::new("continuous transforms compose");
    for a in g.edges() {
        for c in 0..g.vertex_count() {
            for b in g.edges_between(a.dst, c) {
                check.tick();
                let (alpha, beta) = (exp.transform(a), exp.transform(b));
                let composite = compose_transforms(&alpha, &beta, contact)?;
                if let Some(w) = continuity_check(&composite, y, Continuity::Continuous)?.witness {
                    return Ok(check.fail(vec![alpha.label(), beta.label()], w.expected, w.found));
                }
            }
        }
    }
    Ok(check)
}

/// Closure of `Y^(T)_−` under composition, after verifying that the
/// contact is associative and monotone.
pub fn continuous_composition_closure(t: &Arc<FiniteGraph>, y: &OrderedGraph, budget: Budget) -> Result<Check> {
    if let Some(w) = contact_associativity_check(y)?.witness {
        return Err(Error::HypothesisFailed(format!("contact is not associative at {}", w.location.join(", "))));
    }
    if let Some(w) = monotone_contact_check(y)?.witness {
        return Err(Error::HypothesisFailed(format!("contact is not monotone at {}", w.location.join(", "))));
    }
    continuous_composition_unchecked(t, y, budget)
}

/// A continuous transform `T ⇒ Y` that is not natural.
pub fn strictly_continuous_witness(t: &Arc<FiniteGraph>, y: &OrderedGraph, budget: Budget) -> Result<Option<Transform>> {
    let exp = continuous_exponential(t, y, Continuity::Continuous, budget)?;
    let contact = y.contact()?;
    let found = exp
        .graph()
        .edges()
        .map(|e| exp.transform(e))
        .find(|a| !crate::structure::is_natural(a, contact));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinitePoset;
    use crate::graphs::{transports, ContactTable, Edge};
    use crate::structure::{is_natural, OriginalGraph};

    fn chain_monoid() -> OrderedGraph {
        let x = OriginalGraph::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap();
        OrderedGraph::from_original(&x, vec![FinitePoset::chain_on(x.graph().hom(0, 0).clone())]).unwrap()
    }

    #[test]
    fn natural_is_continuous_and_cocontinuous() {
        let y = chain_monoid();
        let t = FiniteGraph::arrow().shared();
        let all: Vec<_> = transports(&t, y.graph()).collect();
        for phi in &all {
            for psi in &all {
                let lower = continuous_transform_set(phi, psi, &y, Continuity::Continuous).unwrap();
                let upper = continuous_transform_set(phi, psi, &y, Continuity::Cocontinuous).unwrap();
                for a in all_transforms(phi, psi) {
                    let both = lower.contains(&a) && upper.contains(&a);
                    assert_eq!(both, is_natural(&a, y.contact().unwrap()));
                }
            }
        }
    }

    #[test]
    fn discrete_continuity_is_naturality() {
        let x = crate::structure::z2();
        let y = OrderedGraph::discrete(x.graph().clone()).with_units(x.units().clone()).with_contact(x.contact().clone());
        let t = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        let all: Vec<_> = transports(&t, y.graph()).collect();
        for phi in &all {
            for psi in &all {
                for a in all_transforms(phi, psi) {
                    let natural = is_natural(&a, x.contact());
                    assert_eq!(is_continuous(&a, &y, Continuity::Continuous).unwrap(), natural);
                    assert_eq!(is_continuous(&a, &y, Continuity::Cocontinuous).unwrap(), natural);
                }
            }
        }
    }

    #[test]
    fn chain_target_has_strictly_continuous_transform() {
        let y = chain_monoid();
        let t = FiniteGraph::loop_point().shared();
        assert!(strictly_continuous_witness(&t, &y, Budget::default()).unwrap().is_some());
    }

    #[test]
    fn closure_on_monotone_monoid() {
        let y = chain_monoid();
        for t in [FiniteGraph::loop_point(), FiniteGraph::from_hom_sizes(1, &[2]), FiniteGraph::arrow()] {
            let c = continuous_composition_closure(&t.shared(), &y, Budget::default()).unwrap();
            assert!(c.holds(), "{c:?}");
        }
    }

    #[test]
    fn closure_refuses_non_monotone_contact() {
        let g = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        // 1 ≤ e but e∘e = 1 while 1∘1 = 1 and e∘1 = e: not monotone.
        let contact = ContactTable::from_fn(&g, |a, b| Edge::new(0, 0, a.idx ^ b.idx)).unwrap();
        let y = OrderedGraph::chains(g).with_contact(contact);
        let t = FiniteGraph::loop_point().shared();
        assert!(matches!(
            continuous_composition_closure(&t, &y, Budget::default()),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn non_monotone_contact_can_break_closure() {
        let g = FiniteGraph::from_hom_sizes(1, &[2]).shared();
        let t = FiniteGraph::loop_point().shared();
        let found = ContactTable::all(&g).any(|contact| {
            let y = OrderedGraph::chains(g.clone()).with_contact(contact);
            !monotone_contact_check(&y).unwrap().holds()
                && !continuous_composition_unchecked(&t, &y, Budget::default()).unwrap().holds()
        });
        assert!(found);
    }
}
