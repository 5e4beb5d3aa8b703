use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::check::{Check, Witness};
use crate::error::Result;
use crate::graphs::contact::ContactTable;
use crate::graphs::curry::{
    decomposability_check, for_each_curried, name_appointment, neutrality_check, realization, Side,
};
use crate::graphs::graph::{FiniteGraph, UnitChoice};
use crate::graphs::transport::{carte_biproduct, count_transports, transports};
use crate::util::Budget;

/// Exhaustive round trips between forms `X×T → Y` and names `X → Y^T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub forms: u64,
    pub predecomposable: u64,
    pub names: u64,
    pub neutral: u64,
    /// `realize_pre(name(f)) = f` for every predecomposable `f`.
    pub forms_round_trip: Check,
    /// `name(realize_pre(g)) = g` for every pre- and postneutral `g`.
    pub names_round_trip: Check,
    pub non_decomposable: Option<Witness>,
    pub non_neutral: Option<Witness>,
}

impl RoundTripReport {
    pub fn holds(&self) -> bool {
        self.forms_round_trip.holds() && self.names_round_trip.holds()
    }
}

/// Candidates visited by [`round_trip_suite`]: every form plus every name.
pub fn round_trip_candidates(x: &Arc<FiniteGraph>, t: &Arc<FiniteGraph>, y: &Arc<FiniteGraph>) -> u128 {
    let product = carte_biproduct(x, t);
    count_transports(product.graph(), y).saturating_add(crate::graphs::curry::count_curried(x, t, y))
}

pub fn round_trip_suite(
    x: &Arc<FiniteGraph>,
    t: &Arc<FiniteGraph>,
    contact: &ContactTable,
    ux: &UnitChoice,
    ut: &UnitChoice,
    budget: Budget,
) -> Result<RoundTripReport> {
    let y = contact.graph();
    let product = carte_biproduct(x, t);
    budget.admit(count_transports(product.graph(), y))?;

    let mut forms = 0;
    let mut predecomposable = 0;
    let mut forms_round_trip = Check::new("realize_pre(name(f)) = f");
    let mut non_decomposable = None;
    for f in transports(product.graph(), y) {
        forms += 1;
        let check = decomposability_check(&f, &product, ux, ut, contact, Side::Pre)?;
        if let Some(w) = check.witness {
            non_decomposable.get_or_insert(w);
            continue;
        }
        predecomposable += 1;
        forms_round_trip.tick();
        let back = realization(&name_appointment(&f, &product, ux, ut)?, &product, contact, Side::Pre)?;
        if back != f {
            forms_round_trip = forms_round_trip.fail(vec![f.label()], f.label(), back.label());
        }
    }

    let mut names = 0;
    let mut neutral = 0;
    let mut names_round_trip = Check::new("name(realize_pre(g)) = g");
    let mut non_neutral = None;
    let mut failure: Option<crate::error::Error> = None;
    for_each_curried(x, t, y, budget, |_| true, |g| {
        names += 1;
        let pre = neutrality_check(g, ux, ut, contact, Side::Pre);
        let post = neutrality_check(g, ux, ut, contact, Side::Post);
        let both = pre.and(post);
        if let Some(w) = both.witness {
            non_neutral.get_or_insert(w);
            return ControlFlow::Continue(());
        }
        neutral += 1;
        names_round_trip.tick();
        let round = realization(g, &product, contact, Side::Pre)
            .and_then(|f| name_appointment(&f, &product, ux, ut));
        match round {
            Ok(back) if &back == g => {}
            Ok(back) => {
                names_round_trip = names_round_trip.clone().fail(vec![g.label()], g.label(), back.label());
            }
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(RoundTripReport {
        forms,
        predecomposable,
        names,
        neutral,
        forms_round_trip,
        names_round_trip,
        non_decomposable,
        non_neutral,
    })
}
