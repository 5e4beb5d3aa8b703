// Truncated distances as a quantale: finite metric spaces, the sup
// distance on maps, and per-quantale meet distribution.

use std::sync::Arc;

use adjunct::quantale::{meet_distribution_check, v_adjunction_suite, v_category_validate, v_exponential, Quantale, WeightedGraph};
use adjunct::Budget;

pub fn run() -> adjunct::Result<()> {
    let q = Arc::new(Quantale::tropical(3));
    // Three points on a line at 0, 1, 2.
    let line = Arc::new(WeightedGraph::from_rows(q.clone(), &[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]])?);
    println!("line is a V-category: {}", v_category_validate(&line).holds());

    let two = Arc::new(WeightedGraph::from_rows(q.clone(), &[vec![0, 1], vec![1, 0]])?);
    let exp = v_exponential(&two, &line, Budget::default())?;
    let g = exp.graph();
    println!("{} non-expanding maps from two points into the line", g.len());
    for a in 0..g.len().min(3) {
        for b in 0..g.len().min(3) {
            print!("{:>5}", q.name(g.weight(a, b)));
        }
        println!();
    }

    let point = Arc::new(WeightedGraph::from_rows(q.clone(), &[vec![0]])?);
    let r = v_adjunction_suite(&two, &point, &line, Budget::default())?;
    println!("{} forms, {} names, round trips hold: {}", r.forms, r.names, r.holds());

    for (label, quantale) in [("boolean", Quantale::boolean()), ("tropical", Quantale::tropical(3))] {
        let c = meet_distribution_check(&quantale);
        match c.witness {
            None => println!("{label}: tensor preserves meets"),
            Some(w) => println!("{label}: tensor does not preserve meets at {}", w.location.join(", ")),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("quantale example");
}
