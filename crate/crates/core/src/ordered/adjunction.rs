use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::graphs::{
    carte_biproduct, count_transports, count_transports_over, decomposition_check_with, for_each_curried,
    name_appointment, neutrality_check_with, realization, transports, transports_over, CarteProduct,
    CurriedTransport, Side, Transport, UnitChoice,
};
use crate::ordered::graph::{curried_leq, monotone_contact_check, transport_leq, Continuity, Direction, OrderedGraph};
use crate::ordered::transforms::continuity_check;
use crate::structure::{validate_original, OriginalGraph};
use crate::util::Budget;

/// `f(α,1_s)∘f(1_b,u)` (pre) or `f(1_a,u)∘f(α,1_t)` (post) compared with
/// `f(α,u)`: lower means composite ≤ value, upper composite ≥ value.
pub fn decomposition_inequality_check(
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
    y: &OrderedGraph,
    side: Side,
    direction: Direction,
) -> Result<Check> {
    let contact = y.contact()?;
    if f.source().as_ref() != product.graph().as_ref() || f.target().as_ref() != y.graph().as_ref() {
        return Err(Error::ShapeMismatch("form does not run from the product into the ordered graph".into()));
    }
    let property = format!("{} {}decomposable", direction.as_str(), side.as_str());
    let rel = |composite, value| y.compare(direction, composite, value);
    Ok(decomposition_check_with(&property, f, product, ux, ut, contact, side, &rel))
}

/// Both neutrality families of `g` with composite against value compared in
/// the given direction.
pub fn neutrality_inequality_check(
    g: &CurriedTransport,
    ux: &UnitChoice,
    ut: &UnitChoice,
    y: &OrderedGraph,
    side: Side,
    direction: Direction,
) -> Result<Check> {
    let contact = y.contact()?;
    let property = format!("{} {}neutral", direction.as_str(), side.as_str());
    let rel = |composite, value| y.compare(direction, composite, value);
    Ok(neutrality_check_with(&property, g, ux, ut, contact, side, &rel))
}

/// Exhaustive unit and counit inequalities with monotonicity of both
/// appointments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub forms: u64,
    pub lower_predecomposable: u64,
    /// `realize_pre(name(f)) ≤ f` for lower predecomposable `f`.
    pub unit_inequality: Check,
    pub names: u64,
    pub upper_preneutral: u64,
    /// `g ≤ name(realize_pre(g))` for upper preneutral `g`.
    pub counit_inequality: Check,
    /// `f ≤ f′ ⇒ name(f) ≤ name(f′)`.
    pub name_monotone: Check,
    /// `g ≤ g′ ⇒ realize_pre(g) ≤ realize_pre(g′)`.
    pub realization_monotone: Check,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.unit_inequality.holds()
            && self.counit_inequality.holds()
            && self.name_monotone.holds()
            && self.realization_monotone.holds()
    }
}

fn require_monotone(y: &OrderedGraph) -> Result<()> {
    match monotone_contact_check(y)?.witness {
        Some(w) => Err(Error::HypothesisFailed(format!("contact is not monotone at {}", w.location.join(", ")))),
        None => Ok(()),
    }
}

fn pairwise<T>(groups: &BTreeMap<Vec<usize>, Vec<T>>, mut visit: impl FnMut(&T, &T) -> Result<bool>) -> Result<bool> {
    for group in groups.values() {
        for a in group {
            for b in group {
                if !visit(a, b)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn adjunction_inequality_suite(
    x: &OriginalGraph,
    t: &OriginalGraph,
    y: &OrderedGraph,
    budget: Budget,
) -> Result<InequalityReport> {
    require_monotone(y)?;
    let contact = y.contact()?;
    let product = carte_biproduct(x.graph(), t.graph());
    let (ux, ut) = (x.units(), t.units());
    budget.admit(count_transports(product.graph(), y.graph()))?;

    let mut forms = 0;
    let mut lower_predecomposable = 0;
    let mut unit_inequality = Check::new("realize_pre(name(f)) ≤ f");
    let mut by_vertices: BTreeMap<Vec<usize>, Vec<(Transport, CurriedTransport)>> = BTreeMap::new();
    for f in transports(product.graph(), y.graph()) {
        forms += 1;
        let g = name_appointment(&f, &product, ux, ut)?;
        if decomposition_inequality_check(&f, &product, ux, ut, y, Side::Pre, Direction::Lower)?.holds() {
            lower_predecomposable += 1;
            unit_inequality.tick();
            let back = realization(&g, &product, contact, Side::Pre)?;
            if !transport_leq(&back, &f, y)? {
                unit_inequality = unit_inequality.fail(vec![f.label()], format!("below {}", f.label()), back.label());
            }
        }
        by_vertices.entry(f.vertex_map().to_vec()).or_default().push((f, g));
    }
    let mut name_monotone = Check::new("name appointment is monotone");
    pairwise(&by_vertices, |(f, g), (f2, g2)| {
        if transport_leq(f, f2, y)? {
            name_monotone.tick();
            if !curried_leq(g, g2, y)? {
                name_monotone = name_monotone.clone().fail(vec![f.label(), f2.label()], "ordered names", "unordered names");
                return Ok(false);
            }
        }
        Ok(true)
    })?;

    let mut names = 0;
    let mut upper_preneutral = 0;
    let mut counit_inequality = Check::new("g ≤ name(realize_pre(g))");
    let mut name_groups: BTreeMap<Vec<usize>, Vec<(CurriedTransport, Transport)>> = BTreeMap::new();
    let mut failure: Option<Error> = None;
    for_each_curried(x.graph(), t.graph(), y.graph(), budget, |_| true, |g| {
        names += 1;
        let step = (|| -> Result<()> {
            let realized = realization(g, &product, contact, Side::Pre)?;
            if neutrality_inequality_check(g, ux, ut, y, Side::Pre, Direction::Upper)?.holds() {
                upper_preneutral += 1;
                counit_inequality.tick();
                let back = name_appointment(&realized, &product, ux, ut)?;
                if !curried_leq(g, &back, y)? {
                    counit_inequality = counit_inequality.clone().fail(vec![g.label()], format!("above {}", g.label()), back.label());
                }
            }
            let key = g.vertex_images().iter().flat_map(|p| p.vertex_map().iter().copied()).collect();
            name_groups.entry(key).or_default().push((g.clone(), realized));
            Ok(())
        })();
        match step {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut realization_monotone = Check::new("realization is monotone");
    pairwise(&name_groups, |(g, f), (g2, f2)| {
        if curried_leq(g, g2, y)? {
            realization_monotone.tick();
            if !transport_leq(f, f2, y)? {
                realization_monotone =
                    realization_monotone.clone().fail(vec![g.label(), g2.label()], "ordered realizations", "unordered realizations");
                return Ok(false);
            }
        }
        Ok(true)
    })?;

    Ok(InequalityReport {
        forms,
        lower_predecomposable,
        unit_inequality,
        names,
        upper_preneutral,
        counit_inequality,
        name_monotone,
        realization_monotone,
    })
}

/// `realize_side(name(h)) = h`.
pub fn is_regular(h: &Transport, product: &CarteProduct, ux: &UnitChoice, ut: &UnitChoice, y: &OrderedGraph, side: Side) -> Result<bool> {
    let back = realization(&name_appointment(h, product, ux, ut)?, product, y.contact()?, side)?;
    Ok(&back == h)
}

/// `f⁺ = realize_pre(name f)` or `f⁻ = realize_post(name f)`, with the
/// extremality certificate against every regular transport over the same
/// vertex map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularBound {
    pub side: Side,
    pub bound: String,
    pub regular: bool,
    /// `f ≤ f⁺` (pre) or `f⁻ ≤ f` (post).
    pub bounds: bool,
    /// Regular transports on the same side of `f` that were compared.
    pub competitors: u64,
    pub extremal: Check,
    #[serde(skip)]
    pub transport: Transport,
}

impl RegularBound {
    pub fn holds(&self) -> bool {
        self.regular && self.bounds && self.extremal.holds()
    }
}

/// Hypotheses of [`regular_bound`]: the decomposition inequality of the
/// side, unit preservation, neutral units in `y`, monotone contact.
pub fn regular_bound_hypotheses(
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
    y: &OrderedGraph,
    side: Side,
) -> Result<Check> {
    let direction = match side {
        Side::Pre => Direction::Upper,
        Side::Post => Direction::Lower,
    };
    let mut crude = Check::new("form preserves units");
    crude.tick();
    if !f.preserves_units(&product.units(ux, ut), y.units()?) {
        crude = crude.fail(vec![f.label()], "unit-preserving form", f.label());
    }
    Ok(decomposition_inequality_check(f, product, ux, ut, y, side, direction)?
        .and(crude)
        .and(validate_original(&y.original()?))
        .and(monotone_contact_check(y)?))
}

pub fn regular_bound(
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
    y: &OrderedGraph,
    side: Side,
    budget: Budget,
) -> Result<RegularBound> {
    if let Some(w) = regular_bound_hypotheses(f, product, ux, ut, y, side)?.witness {
        return Err(Error::HypothesisFailed(format!("{} at {}", w.property, w.location.join(", "))));
    }
    let contact = y.contact()?;
    let bound = realization(&name_appointment(f, product, ux, ut)?, product, contact, side)?;
    let regular = is_regular(&bound, product, ux, ut, y, side)?;
    let bounds = match side {
        Side::Pre => transport_leq(f, &bound, y)?,
        Side::Post => transport_leq(&bound, f, y)?,
    };
    budget.admit(count_transports_over(product.graph(), y.graph(), f.vertex_map()))?;
    let mut competitors = 0;
    let mut extremal = Check::new(match side {
        Side::Pre => "least preregular upper bound",
        Side::Post => "greatest postregular lower bound",
    });
    for h in transports_over(product.graph(), y.graph(), f.vertex_map().to_vec()) {
        let beyond = match side {
            Side::Pre => transport_leq(f, &h, y)?,
            Side::Post => transport_leq(&h, f, y)?,
        };
        if !beyond || !is_regular(&h, product, ux, ut, y, side)? {
            continue;
        }
        competitors += 1;
        extremal.tick();
        let ok = match side {
            Side::Pre => transport_leq(&bound, &h, y)?,
            Side::Post => transport_leq(&h, &bound, y)?,
        };
        if !ok {
            extremal = extremal.fail(vec![f.label(), h.label()], bound.label(), h.label());
        }
    }
    Ok(RegularBound {
        side,
        bound: bound.label(),
        regular,
        bounds,
        competitors,
        extremal,
        transport: bound,
    })
}

/// The pair of decomposition inequalities under which every transform in
/// the name of a form satisfies the given deformed square.
pub fn corestriction_hypotheses(target: Continuity) -> [(Side, Direction); 2] {
    match target {
        Continuity::Continuous => [(Side::Pre, Direction::Lower), (Side::Post, Direction::Upper)],
        Continuity::Cocontinuous => [(Side::Pre, Direction::Upper), (Side::Post, Direction::Lower)],
    }
}

/// Every transform `name(f)(α)` satisfies the deformed square; no
/// hypothesis is checked.
pub fn corestriction_unchecked(
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
    y: &OrderedGraph,
    target: Continuity,
) -> Result<Check> {
    let g = name_appointment(f, product, ux, ut)?;
    let mut check = Check::new(format!("name lands in {} transforms", target.as_str()));
    for alpha in product.left().edges() {
        check.tick();
        if let Some(w) = continuity_check(&g.transform(alpha), y, target)?.witness {
            let mut location = vec![f.label(), product.left().edge_label(alpha)];
            location.extend(w.location);
            return Ok(check.fail(location, w.expected, w.found));
        }
    }
    Ok(check)
}

pub fn corestriction_check(
    f: &Transport,
    product: &CarteProduct,
    ux: &UnitChoice,
    ut: &UnitChoice,
    y: &OrderedGraph,
    target: Continuity,
) -> Result<Check> {
    for (side, direction) in corestriction_hypotheses(target) {
        if let Some(w) = decomposition_inequality_check(f, product, ux, ut, y, side, direction)?.witness {
            return Err(Error::HypothesisFailed(format!("{} at {}", w.property, w.location.join(", "))));
        }
    }
    corestriction_unchecked(f, product, ux, ut, y, target)
}

/// Outcome of running the corestriction over every form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorestrictionReport {
    pub forms: u64,
    pub eligible: u64,
    pub corestricted: Check,
    /// A form meeting only the other hypothesis whose name leaves the
    /// target exponential.
    pub without_pre: Option<Witness>,
    pub without_post: Option<Witness>,
}

pub fn corestriction_suite(
    x: &OriginalGraph,
    t: &OriginalGraph,
    y: &OrderedGraph,
    target: Continuity,
    budget: Budget,
) -> Result<CorestrictionReport> {
    let product = carte_biproduct(x.graph(), t.graph());
    let (ux, ut) = (x.units(), t.units());
    budget.admit(count_transports(product.graph(), y.graph()))?;
    let [(pre_side, pre_dir), (post_side, post_dir)] = corestriction_hypotheses(target);
    let mut forms = 0;
    let mut eligible = 0;
    let mut corestricted = Check::new(format!("corestriction into {} transforms", target.as_str()));
    let mut without_pre = None;
    let mut without_post = None;
    for f in transports(product.graph(), y.graph()) {
        forms += 1;
        let pre = decomposition_inequality_check(&f, &product, ux, ut, y, pre_side, pre_dir)?.holds();
        let post = decomposition_inequality_check(&f, &product, ux, ut, y, post_side, post_dir)?.holds();
        if !pre && !post {
            continue;
        }
        let landed = corestriction_unchecked(&f, &product, ux, ut, y, target)?;
        match (pre, post) {
            (true, true) => {
                eligible += 1;
                corestricted = corestricted.and(landed);
            }
            (true, false) => {
                if without_post.is_none() {
                    without_post = landed.witness;
                }
            }
            _ => {
                if without_pre.is_none() {
                    without_pre = landed.witness;
                }
            }
        }
    }
    Ok(CorestrictionReport {
        forms,
        eligible,
        corestricted,
        without_pre,
        without_post,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinitePoset;
    use crate::graphs::{decomposability_check, neutrality_check, round_trip_suite};
    use crate::structure::{is_natural, walking_arrow, z2};

    fn chain_monoid() -> OrderedGraph {
        let x = OriginalGraph::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap();
        OrderedGraph::from_original(&x, vec![FinitePoset::chain_on(x.graph().hom(0, 0).clone())]).unwrap()
    }

    fn discrete_z2() -> OrderedGraph {
        let y = z2();
        OrderedGraph::discrete(y.graph().clone()).with_units(y.units().clone()).with_contact(y.contact().clone())
    }

    #[test]
    fn suite_on_chain_monoid() {
        let w = walking_arrow();
        let r = adjunction_inequality_suite(&w, &w, &chain_monoid(), Budget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.lower_predecomposable > 0 && r.upper_preneutral > 0);
    }

    #[test]
    fn discrete_inequalities_are_equalities() {
        let w = walking_arrow();
        let y = discrete_z2();
        let product = carte_biproduct(w.graph(), w.graph());
        let contact = y.contact().unwrap();
        for f in transports(product.graph(), y.graph()) {
            for side in [Side::Pre, Side::Post] {
                let plain = decomposability_check(&f, &product, w.units(), w.units(), contact, side).unwrap();
                for direction in [Direction::Lower, Direction::Upper] {
                    let ordered = decomposition_inequality_check(&f, &product, w.units(), w.units(), &y, side, direction).unwrap();
                    assert_eq!(ordered.holds(), plain.holds());
                    assert_eq!(ordered.witness.map(|w| w.location), plain.witness.as_ref().map(|w| w.location.clone()));
                }
                let g = name_appointment(&f, &product, w.units(), w.units()).unwrap();
                let plain = neutrality_check(&g, w.units(), w.units(), contact, side);
                let ordered = neutrality_inequality_check(&g, w.units(), w.units(), &y, side, Direction::Upper).unwrap();
                assert_eq!(ordered.holds(), plain.holds());
            }
        }
        let r = adjunction_inequality_suite(&w, &w, &y, Budget::default()).unwrap();
        let plain = round_trip_suite(w.graph(), w.graph(), contact, w.units(), w.units(), Budget::default()).unwrap();
        assert_eq!(r.lower_predecomposable, plain.predecomposable);
        assert!(r.holds());
    }

    #[test]
    fn bounds_sandwich_and_extremality() {
        let w = walking_arrow();
        let y = chain_monoid();
        let product = carte_biproduct(w.graph(), w.graph());
        let (ux, ut) = (w.units(), w.units());
        let mut both = 0;
        for f in transports(product.graph(), y.graph()) {
            let pre_ok = regular_bound_hypotheses(&f, &product, ux, ut, &y, Side::Pre).unwrap().holds();
            let post_ok = regular_bound_hypotheses(&f, &product, ux, ut, &y, Side::Post).unwrap().holds();
            if pre_ok {
                let up = regular_bound(&f, &product, ux, ut, &y, Side::Pre, Budget::default()).unwrap();
                assert!(up.holds(), "{up:?}");
            }
            if post_ok {
                let down = regular_bound(&f, &product, ux, ut, &y, Side::Post, Budget::default()).unwrap();
                assert!(down.holds(), "{down:?}");
            }
            if pre_ok && post_ok {
                both += 1;
                let up = regular_bound(&f, &product, ux, ut, &y, Side::Pre, Budget::default()).unwrap().transport;
                let down = regular_bound(&f, &product, ux, ut, &y, Side::Post, Budget::default()).unwrap().transport;
                assert!(transport_leq(&down, &f, &y).unwrap() && transport_leq(&f, &up, &y).unwrap());
                let g = name_appointment(&f, &product, ux, ut).unwrap();
                let natural = w.graph().edges().all(|a| is_natural(&g.transform(a), y.contact().unwrap()));
                assert_eq!(up == down, natural);
            }
        }
        assert!(both > 0);
    }

    #[test]
    fn preregular_form_is_its_own_bound() {
        let w = walking_arrow();
        let y = chain_monoid();
        let product = carte_biproduct(w.graph(), w.graph());
        let f = transports(product.graph(), y.graph())
            .find(|f| {
                regular_bound_hypotheses(f, &product, w.units(), w.units(), &y, Side::Pre).unwrap().holds()
                    && is_regular(f, &product, w.units(), w.units(), &y, Side::Pre).unwrap()
            })
            .unwrap();
        let up = regular_bound(&f, &product, w.units(), w.units(), &y, Side::Pre, Budget::default()).unwrap();
        assert_eq!(up.transport, f);
    }

    #[test]
    fn missing_hypothesis_is_reported() {
        let w = walking_arrow();
        let y = chain_monoid();
        let product = carte_biproduct(w.graph(), w.graph());
        let f = transports(product.graph(), y.graph())
            .find(|f| !f.preserves_units(&product.units(w.units(), w.units()), y.units().unwrap()))
            .unwrap();
        assert!(matches!(
            regular_bound(&f, &product, w.units(), w.units(), &y, Side::Pre, Budget::default()),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn corestriction_holds_and_needs_both_hypotheses() {
        let w = walking_arrow();
        let y = chain_monoid();
        for target in [Continuity::Continuous, Continuity::Cocontinuous] {
            let r = corestriction_suite(&w, &w, &y, target, Budget::default()).unwrap();
            assert!(r.corestricted.holds(), "{r:?}");
            assert!(r.eligible > 0);
            assert!(r.without_pre.is_some() || r.without_post.is_some(), "{r:?}");
        }
    }

    #[test]
    fn decomposable_forms_need_no_hypothesis_search() {
        let w = walking_arrow();
        let y = chain_monoid();
        let product = carte_biproduct(w.graph(), w.graph());
        for f in transports(product.graph(), y.graph()) {
            let pre = decomposability_check(&f, &product, w.units(), w.units(), y.contact().unwrap(), Side::Pre).unwrap();
            let post = decomposability_check(&f, &product, w.units(), w.units(), y.contact().unwrap(), Side::Post).unwrap();
            if pre.holds() && post.holds() {
                for target in [Continuity::Continuous, Continuity::Cocontinuous] {
                    assert!(corestriction_check(&f, &product, w.units(), w.units(), &y, target).unwrap().holds());
                }
            }
        }
    }
}
