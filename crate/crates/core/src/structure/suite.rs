use std::ops::ControlFlow;

use serde::Serialize;

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::graphs::{
    carte_biproduct, count_transports, decomposability_check, for_each_curried, name_appointment,
    neutrality_check, realization, transports, Side,
};
use crate::structure::natural::is_natural;
use crate::structure::original::OriginalGraph;
use crate::util::Budget;

/// Decomposable forms `X×T → Y` against natural, neutral names
/// `X → Y^(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub forms: u64,
    pub decomposable: u64,
    pub names: u64,
    pub neutral_names: u64,
    /// The name of a decomposable form is natural and neutral on both sides.
    pub names_land: Check,
    /// `realize_pre(name(f)) = realize_post(name(f)) = f`.
    pub forms_round_trip: Check,
    /// `name(realize_pre(g)) = g` and `realize_pre(g)` is decomposable.
    pub names_round_trip: Check,
    /// A form that is not decomposable and whose name is not natural.
    pub unnatural_name: Option<Witness>,
    pub bijective: bool,
}

pub fn bijection_suite(x: &OriginalGraph, t: &OriginalGraph, y: &OriginalGraph, budget: Budget) -> Result<BijectionReport> {
    let product = carte_biproduct(x.graph(), t.graph());
    let (ux, ut, contact) = (x.units(), t.units(), y.contact());
    budget.admit(count_transports(product.graph(), y.graph()))?;

    let mut forms = 0;
    let mut decomposable = 0;
    let mut names_land = Check::new("name of a decomposable form is natural and neutral");
    let mut forms_round_trip = Check::new("realize(name(f)) = f");
    let mut unnatural_name = None;
    for f in transports(product.graph(), y.graph()) {
        forms += 1;
        let pre = decomposability_check(&f, &product, ux, ut, contact, Side::Pre)?;
        let post = decomposability_check(&f, &product, ux, ut, contact, Side::Post)?;
        let g = name_appointment(&f, &product, ux, ut)?;
        if !(pre.holds() && post.holds()) {
            if unnatural_name.is_none() {
                if let Some(alpha) = x.graph().edges().find(|&a| !is_natural(&g.transform(a), contact)) {
                    unnatural_name = Some(Witness::new(
                        "name of a non-decomposable form",
                        vec![f.label(), x.edge_label(alpha)],
                        "natural transform",
                        g.transform(alpha).label(),
                    ));
                }
            }
            continue;
        }
        decomposable += 1;
        names_land.tick();
        let natural = x.graph().edges().all(|a| is_natural(&g.transform(a), contact));
        let neutral = neutrality_check(&g, ux, ut, contact, Side::Pre)
            .and(neutrality_check(&g, ux, ut, contact, Side::Post));
        if !natural || !neutral.holds() {
            names_land = names_land.fail(vec![f.label()], "natural neutral name", g.label());
        }
        forms_round_trip.tick();
        for side in [Side::Pre, Side::Post] {
            let back = realization(&g, &product, contact, side)?;
            if back != f {
                forms_round_trip = forms_round_trip.fail(vec![f.label(), side.as_str().into()], f.label(), back.label());
            }
        }
    }

    let mut names = 0;
    let mut neutral_names = 0;
    let mut names_round_trip = Check::new("name(realize(g)) = g");
    let mut failure: Option<Error> = None;
    for_each_curried(
        x.graph(),
        t.graph(),
        y.graph(),
        budget,
        |a| is_natural(a, contact),
        |g| {
            names += 1;
            let neutral = neutrality_check(g, ux, ut, contact, Side::Pre)
                .and(neutrality_check(g, ux, ut, contact, Side::Post));
            if !neutral.holds() {
                return ControlFlow::Continue(());
            }
            neutral_names += 1;
            names_round_trip.tick();
            let step = realization(g, &product, contact, Side::Pre).and_then(|f| {
                let back = name_appointment(&f, &product, ux, ut)?;
                let pre = decomposability_check(&f, &product, ux, ut, contact, Side::Pre)?;
                let post = decomposability_check(&f, &product, ux, ut, contact, Side::Post)?;
                Ok((back, pre.holds() && post.holds()))
            });
            match step {
                Ok((back, true)) if &back == g => {}
                Ok((back, _)) => {
                    names_round_trip = names_round_trip.clone().fail(vec![g.label()], g.label(), back.label());
                }
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let bijective = decomposable == neutral_names
        && names_land.holds()
        && forms_round_trip.holds()
        && names_round_trip.holds();
    Ok(BijectionReport {
        forms,
        decomposable,
        names,
        neutral_names,
        names_land,
        forms_round_trip,
        names_round_trip,
        unnatural_name,
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::original::{walking_arrow, z2};

    #[test]
    fn walking_arrow_cube() {
        let w = walking_arrow();
        let r = bijection_suite(&w, &w, &w, Budget::default()).unwrap();
        assert!(r.bijective, "{r:?}");
        assert!(r.decomposable > 0);
        // Parallel paths agree in a thin target, so every name is natural.
        assert!(r.unnatural_name.is_none());
    }

    #[test]
    fn group_target_has_unnatural_names() {
        let w = walking_arrow();
        let r = bijection_suite(&w, &w, &z2(), Budget::default()).unwrap();
        assert!(r.bijective, "{r:?}");
        assert!(r.unnatural_name.is_some());
    }

    #[test]
    fn one_loop_target_is_a_singleton_on_both_sides() {
        let w = walking_arrow();
        let y = OriginalGraph::monoid(&["1"], &[vec![0]]).unwrap();
        let r = bijection_suite(&w, &w, &y, Budget::default()).unwrap();
        assert_eq!((r.forms, r.decomposable, r.neutral_names), (1, 1, 1));
        assert!(r.bijective);
    }
}
