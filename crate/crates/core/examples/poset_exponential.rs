// Monotone maps between finite posets, evaluation, and limit sets.

use adjunct::finset::{all_mappings, is_limit_continuous, is_monotone, poset_eval_monotone_check, poset_exponential, FinitePoset};

pub fn run() -> adjunct::Result<()> {
    let chain = FinitePoset::chain(3);
    let exp = poset_exponential(&chain, &chain);
    println!("monotone self-maps of the 3-chain: {}", exp.maps().len());
    assert_eq!(exp.maps().len(), 10);

    let eval = poset_eval_monotone_check(&chain, &chain);
    println!("evaluation is monotone: {} ({} cases)", eval.holds(), eval.checked);

    let vee = FinitePoset::generated_by(adjunct::finset::FiniteSet::range(3), &[(0, 2), (1, 2)])?;
    let mut agree = 0;
    for m in all_mappings(vee.carrier(), chain.carrier()) {
        assert_eq!(is_monotone(&m, &vee, &chain), is_limit_continuous(&m, &vee, &chain));
        agree += 1;
    }
    println!("monotone and limit-continuous agree on all {agree} maps from the vee to the chain");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("poset example");
}
