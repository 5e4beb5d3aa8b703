// Currying transports out of a Carte biproduct of graphs, with the
// decomposability and neutrality conditions that make it invertible.

use adjunct::graphs::round_trip_suite;
use adjunct::structure::{walking_arrow, z2};
use adjunct::Budget;

pub fn run() -> adjunct::Result<()> {
    let (x, t, y) = (walking_arrow(), walking_arrow(), z2());
    let r = round_trip_suite(x.graph(), t.graph(), y.contact(), x.units(), t.units(), Budget::default())?;
    println!("forms X×T → Y: {} ({} predecomposable)", r.forms, r.predecomposable);
    println!("names X → Y^T: {} ({} neutral)", r.names, r.neutral);
    println!("realize(name f) = f on predecomposable forms: {}", r.forms_round_trip.holds());
    println!("name(realize g) = g on neutral names: {}", r.names_round_trip.holds());
    if let Some(w) = &r.non_decomposable {
        println!("a form that does not come back: {}", w.location.join(" "));
    }
    assert!(r.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("graph currying example");
}
