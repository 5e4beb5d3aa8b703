// Currying on finite sets: a form `X × T → Y` and its name `X → Y^T`.

use adjunct::finset::{exponential, name, product, realize, set_adjunction_suite, FiniteSet, Mapping};
use adjunct::Budget;

pub fn run() -> adjunct::Result<()> {
    let x = FiniteSet::new(["a", "b"])?;
    let t = FiniteSet::new(["s", "t"])?;
    let y = FiniteSet::new(["0", "1"])?;
    let prod = product(&x, &t);
    let expo = exponential(&t, &y);

    // 1 on the diagonal pairs (a,s) and (b,t).
    let f = Mapping::new(prod.set().clone(), y.clone(), vec![1, 0, 0, 1])?;
    let g = name(&prod, &expo, &f)?;
    println!("form  {f:?}");
    println!("name  {g:?}");
    assert_eq!(realize(&prod, &expo, &g)?, f);

    for (nx, nt, ny) in [(2, 2, 2), (3, 1, 3), (1, 3, 2)] {
        let r = set_adjunction_suite(&FiniteSet::range(nx), &FiniteSet::range(nt), &FiniteSet::range(ny), Budget::default())?;
        println!(
            "|X|={nx} |T|={nt} |Y|={ny}: {} forms, {} names, triangles {} / {}, natural {} / {}",
            r.forms,
            r.names,
            r.triangle_product.holds(),
            r.triangle_exponential.holds(),
            r.natural_in_source.holds(),
            r.natural_in_target.holds()
        );
        assert!(r.holds());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("set adjunction example");
}
