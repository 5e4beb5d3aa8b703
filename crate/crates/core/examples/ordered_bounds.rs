// Hom sets ordered as chains: the currying round trips become
// inequalities, and names have least and greatest regular bounds.

use adjunct::cli::chain_monoid;
use adjunct::graphs::{carte_biproduct, transports, Side};
use adjunct::ordered::{adjunction_inequality_suite, corestriction_suite, regular_bound, regular_bound_hypotheses, Continuity};
use adjunct::structure::{walking_arrow, z2};
use adjunct::Budget;

pub fn run() -> adjunct::Result<()> {
    let y = chain_monoid();
    let (x, t) = (walking_arrow(), z2());

    let r = adjunction_inequality_suite(&x, &t, &y, Budget::default())?;
    println!(
        "{} forms, {} lower predecomposable; {} names, {} upper preneutral; inequalities hold: {}",
        r.forms, r.lower_predecomposable, r.names, r.upper_preneutral, r.holds()
    );

    let product = carte_biproduct(x.graph(), t.graph());
    for side in [Side::Pre, Side::Post] {
        let (mut eligible, mut certified, mut competitors) = (0, 0, 0);
        for f in transports(product.graph(), y.graph()) {
            if !regular_bound_hypotheses(&f, &product, x.units(), t.units(), &y, side)?.holds() {
                continue;
            }
            let b = regular_bound(&f, &product, x.units(), t.units(), &y, side, Budget::default())?;
            eligible += 1;
            certified += usize::from(b.holds());
            competitors += b.competitors;
        }
        println!("{}: {certified} of {eligible} eligible forms have a certified extremal bound ({competitors} comparisons)", side.as_str());
    }

    for target in [Continuity::Continuous, Continuity::Cocontinuous] {
        let c = corestriction_suite(&x, &t, &y, target, Budget::default())?;
        println!("{}: {} of {} forms eligible, corestriction holds: {}", target.as_str(), c.eligible, c.forms, c.corestricted.holds());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("ordered example");
}
