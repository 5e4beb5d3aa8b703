// Categories as original graphs, the failing non-associative magma, and
// the correspondence between social points and natural transforms.

use adjunct::structure::{
    composable_pair, edge_transform_correspondence, fullfaithful_check, m3, validate_category, walking_arrow,
    yoneda_correspondence, z2, Character, FiniteCategory,
};
use adjunct::Budget;

pub fn run() -> adjunct::Result<()> {
    for (label, x) in [("walking arrow", walking_arrow()), ("composable pair", composable_pair()), ("Z/2", z2()), ("M3", m3())] {
        let c = validate_category(&x);
        match &c.witness {
            None => println!("{label}: category ({} cases)", c.checked),
            Some(w) => println!("{label}: {} fails at {} (expected {}, found {})", w.property, w.location.join(", "), w.expected, w.found),
        }
    }

    let x = walking_arrow();
    let hom = edge_transform_correspondence(&x, 0, 1, Budget::default())?;
    println!("Nat(X(-;0), X(-;1)) has {} element(s)", hom.correspondence.transforms);

    let rep = Character::representable(&x, 1)?;
    let y = yoneda_correspondence(&x, &rep, 1, Budget::default())?;
    println!("X(-;1): {} social points, {} transforms", y.social_points, y.transforms);
    assert!(y.holds());

    let category = FiniteCategory::new(composable_pair())?;
    println!("Yoneda embedding full and faithful: {}", fullfaithful_check(&category, Budget::default())?.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("yoneda example");
}
