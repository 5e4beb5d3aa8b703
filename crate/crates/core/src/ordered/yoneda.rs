use serde::Serialize;

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::finset::FinitePoset;
use crate::graphs::ContactTable;
use crate::ordered::graph::{Direction, OrderedGraph};
use crate::structure::{
    character_transforms_with, point_from_transform, social_points_with, transform_from_point, Character,
    CharacterTransform, OriginalGraph,
};
use crate::util::Budget;

/// A character whose value sets are posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedCharacter {
    character: Character,
    orders: Vec<FinitePoset>,
}

impl OrderedCharacter {
    pub fn new(character: Character, orders: Vec<FinitePoset>) -> Result<Self> {
        if orders.len() != character.value_sets().len()
            || orders.iter().zip(character.value_sets()).any(|(o, v)| o.carrier() != v)
        {
            return Err(Error::ShapeMismatch("one order per value set is required".into()));
        }
        Ok(OrderedCharacter { character, orders })
    }

    pub fn discrete(character: Character) -> Self {
        let orders = character.value_sets().iter().cloned().map(FinitePoset::discrete).collect();
        OrderedCharacter { character, orders }
    }

    /// Value sets ordered as chains in index order.
    pub fn chains(character: Character) -> Self {
        let orders = character.value_sets().iter().cloned().map(FinitePoset::chain_on).collect();
        OrderedCharacter { character, orders }
    }

    /// `X(−;x)` with the hom orders of `y`.
    pub fn representable(y: &OrderedGraph, target: usize) -> Result<Self> {
        let character = Character::representable(&y.original()?, target)?;
        let n = y.graph().vertex_count();
        let orders = (0..n).map(|a| y.order(a, target).clone()).collect();
        Ok(OrderedCharacter { character, orders })
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn order(&self, a: usize) -> &FinitePoset {
        &self.orders[a]
    }

    fn compare(&self, direction: Direction, a: usize, composite: usize, reference: usize) -> bool {
        match direction {
            Direction::Lower => self.orders[a].leq(composite, reference),
            Direction::Upper => self.orders[a].leq(reference, composite),
        }
    }
}

/// Lower: `h^F(f^F(m)) ≤ (h∘f)^F(m)` for every composable `h`, `f` into
/// `x`. Upper reverses the inequality.
pub fn social_points_ordered(f: &OrderedCharacter, contact: &ContactTable, x: usize, direction: Direction) -> Vec<usize> {
    social_points_with(&f.character, contact, x, &|c, left, right| f.compare(direction, c, left, right))
}

/// Transforms `X(−;x) ⇒ F` with `h^F(α_a(f)) ≤ α_b(h∘f)`.
pub fn continuous_character_transforms(
    x: &OriginalGraph,
    f: &OrderedCharacter,
    target: usize,
    budget: Budget,
) -> Result<Vec<CharacterTransform>> {
    character_transforms_with(x, &f.character, target, budget, &|b, composite_value, acted| {
        f.orders[b].leq(acted, composite_value)
    })
}

/// Lower social points against continuous transforms `X(−;x) ⇒ F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuousYonedaReport {
    pub lower_social_points: usize,
    pub continuous_transforms: usize,
    /// Each lower social point generates a continuous transform that
    /// returns the point at `1_x`.
    pub point_to_transform: Check,
    /// The transform generated by `α_x(1_x)` lies below `α`.
    pub generated_below: Check,
    /// A continuous transform not generated by any point.
    pub ungenerated: Option<Witness>,
    pub bijective: bool,
}

pub fn continuous_yoneda_check(
    x: &OriginalGraph,
    f: &OrderedCharacter,
    target: usize,
    budget: Budget,
) -> Result<ContinuousYonedaReport> {
    let social = social_points_ordered(f, x.contact(), target, Direction::Lower);
    let transforms = continuous_character_transforms(x, f, target, budget)?;
    let values = f.character.values(target);
    let name = |m: usize| values.atom(m).to_string();
    let show = |a: &CharacterTransform| format!("{:?}", a.components);

    let mut forward = Check::new("lower social point to continuous transform");
    for &m in &social {
        forward.tick();
        let alpha = transform_from_point(x, &f.character, target, m);
        if !transforms.contains(&alpha) {
            forward = forward.fail(vec![name(m)], "continuous transform", show(&alpha));
            break;
        }
        let back = point_from_transform(x, target, &alpha);
        if back != m {
            forward = forward.fail(vec![name(m)], name(m), name(back));
            break;
        }
    }

    let g = x.graph();
    let mut below = Check::new("generated transform lies below");
    let mut ungenerated = None;
    for alpha in &transforms {
        below.tick();
        let m = point_from_transform(x, target, alpha);
        let generated = transform_from_point(x, &f.character, target, m);
        let pointwise = g.edges().filter(|e| e.dst == target).all(|e| f.orders[e.src].leq(generated.at(e), alpha.at(e)));
        if !pointwise {
            below = below.fail(vec![show(alpha)], format!("below {}", show(alpha)), show(&generated));
        }
        if &generated != alpha && ungenerated.is_none() {
            ungenerated = Some(Witness::new("continuous transform from a point", vec![show(alpha)], show(alpha), show(&generated)));
        }
    }
    let bijective = forward.holds() && ungenerated.is_none() && social.len() == transforms.len();
    Ok(ContinuousYonedaReport {
        lower_social_points: social.len(),
        continuous_transforms: transforms.len(),
        point_to_transform: forward,
        generated_below: below,
        ungenerated,
        bijective,
    })
}
