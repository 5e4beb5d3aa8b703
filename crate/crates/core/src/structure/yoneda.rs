use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graphs::Edge;
use crate::structure::character::{social_points, Character, ValueRelation};
use crate::structure::original::{FiniteCategory, OriginalGraph};
use crate::util::{advance, radix_product, Budget};

/// A transform `X(−;x) ⇒ F`: `components[a][i]` is the value in `F₀(a)`
/// assigned to the `i`-th edge of `X(a;x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterTransform {
    pub components: Vec<Vec<usize>>,
}

impl CharacterTransform {
    pub fn at(&self, f: Edge) -> usize {
        self.components[f.src][f.idx]
    }
}

fn check_vertex(x: &OriginalGraph, v: usize) -> Result<()> {
    if v >= x.graph().vertex_count() {
        return Err(Error::UnknownElement(format!("vertex index {v}")));
    }
    Ok(())
}

/// `rel(b, α_b(h∘f), h^F(α_a(f)))` for every `h: b → a` and `f: a → x`.
pub fn transform_naturality_with(
    x: &OriginalGraph,
    f: &Character,
    target: usize,
    alpha: &CharacterTransform,
    rel: ValueRelation<'_>,
) -> bool {
    let g = x.graph();
    for a in 0..g.vertex_count() {
        for fe in g.edges_between(a, target) {
            let value = alpha.at(fe);
            for b in 0..g.vertex_count() {
                for h in g.edges_between(b, a) {
                    if !rel(b, alpha.at(x.compose(h, fe)), f.act(h, value)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Candidate count for transforms `X(−;x) ⇒ F`.
pub fn count_character_transforms(x: &OriginalGraph, f: &Character, target: usize) -> u128 {
    let g = x.graph();
    radix_product((0..g.vertex_count()).flat_map(|a| std::iter::repeat_n(f.values(a).len(), g.hom_len(a, target))))
}

/// Every transform `X(−;x) ⇒ F` passing `rel`, lexicographically.
pub fn character_transforms_with(
    x: &OriginalGraph,
    f: &Character,
    target: usize,
    budget: Budget,
    rel: ValueRelation<'_>,
) -> Result<Vec<CharacterTransform>> {
    check_vertex(x, target)?;
    budget.admit(count_character_transforms(x, f, target))?;
    let g = x.graph();
    let slots: Vec<(usize, usize)> = (0..g.vertex_count())
        .flat_map(|a| (0..g.hom_len(a, target)).map(move |i| (a, i)))
        .collect();
    let radices: Vec<usize> = slots.iter().map(|&(a, _)| f.values(a).len()).collect();
    let mut out = Vec::new();
    if radices.contains(&0) {
        return Ok(out);
    }
    let mut digits = vec![0; slots.len()];
    loop {
        let mut components: Vec<Vec<usize>> = (0..g.vertex_count()).map(|_| Vec::new()).collect();
        for (&(a, _), &d) in slots.iter().zip(&digits) {
            components[a].push(d);
        }
        let alpha = CharacterTransform { components };
        if transform_naturality_with(x, f, target, &alpha, rel) {
            out.push(alpha);
        }
        if !advance(&mut digits, &radices) {
            break;
        }
    }
    Ok(out)
}

/// Natural transforms `X(−;x) ⇒ F`.
pub fn natural_character_transforms(
    x: &OriginalGraph,
    f: &Character,
    target: usize,
    budget: Budget,
) -> Result<Vec<CharacterTransform>> {
    character_transforms_with(x, f, target, budget, &|_, a, b| a == b)
}

/// `α_a(f) = f^F(m)`.
pub fn transform_from_point(x: &OriginalGraph, f: &Character, target: usize, m: usize) -> CharacterTransform {
    let g = x.graph();
    CharacterTransform {
        components: (0..g.vertex_count())
            .map(|a| g.edges_between(a, target).map(|fe| f.act(fe, m)).collect())
            .collect(),
    }
}

/// `m = α_x(1_x)`.
pub fn point_from_transform(x: &OriginalGraph, target: usize, alpha: &CharacterTransform) -> usize {
    alpha.at(x.unit(target))
}

/// Both directions of the point/transform correspondence, checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YonedaReport {
    pub social_points: usize,
    pub transforms: usize,
    /// Social points generate natural transforms that give the point back.
    pub point_to_transform: Check,
    /// Natural transforms give social points that regenerate the transform.
    pub transform_to_point: Check,
    pub bijective: bool,
}

impl YonedaReport {
    pub fn holds(&self) -> bool {
        self.bijective
    }
}

pub fn yoneda_correspondence(x: &OriginalGraph, f: &Character, target: usize, budget: Budget) -> Result<YonedaReport> {
    check_vertex(x, target)?;
    let social = social_points(f, x.contact(), target);
    let transforms = natural_character_transforms(x, f, target, budget)?;
    let name = |m: usize| f.values(target).atom(m).to_string();

    let mut forward = Check::new("point to transform");
    for &m in &social {
        forward.tick();
        let alpha = transform_from_point(x, f, target, m);
        if !transforms.contains(&alpha) {
            forward = forward.fail(vec![name(m)], "natural transform", format!("{:?}", alpha.components));
            break;
        }
        let back = point_from_transform(x, target, &alpha);
        if back != m {
            forward = forward.fail(vec![name(m)], name(m), name(back));
            break;
        }
    }
    let mut backward = Check::new("transform to point");
    for alpha in &transforms {
        backward.tick();
        let m = point_from_transform(x, target, alpha);
        if !social.contains(&m) {
            backward = backward.fail(vec![format!("{:?}", alpha.components)], "social point", name(m));
            break;
        }
        let again = transform_from_point(x, f, target, m);
        if &again != alpha {
            backward = backward.fail(
                vec![format!("{:?}", alpha.components)],
                format!("{:?}", alpha.components),
                format!("{:?}", again.components),
            );
            break;
        }
    }
    let bijective = forward.holds() && backward.holds();
    Ok(YonedaReport {
        social_points: social.len(),
        transforms: transforms.len(),
        point_to_transform: forward,
        transform_to_point: backward,
        bijective,
    })
}

/// Edges `θ: x → y` against natural transforms `X(−;x) ⇒ X(−;y)`, with
/// the composition law `β_x(α_x(1_x)) = θ ∘ κ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeTransformReport {
    pub correspondence: YonedaReport,
    pub composition: Check,
}

impl EdgeTransformReport {
    pub fn holds(&self) -> bool {
        self.correspondence.holds() && self.composition.holds()
    }
}

pub fn edge_transform_correspondence(x: &OriginalGraph, from: usize, to: usize, budget: Budget) -> Result<EdgeTransformReport> {
    check_vertex(x, from)?;
    check_vertex(x, to)?;
    let g = x.graph();
    let f = Character::representable(x, to)?;
    let correspondence = yoneda_correspondence(x, &f, from, budget)?;
    let social_theta = social_points(&f, x.contact(), from);
    let mut composition = Check::new("transform composition matches contact");
    'outer: for z in 0..g.vertex_count() {
        let h = Character::representable(x, z)?;
        let social_kappa = social_points(&h, x.contact(), to);
        for &ti in &social_theta {
            let theta = Edge::new(from, to, ti);
            let alpha = transform_from_point(x, &f, from, ti);
            for &ki in &social_kappa {
                composition.tick();
                let kappa = Edge::new(to, z, ki);
                let beta = transform_from_point(x, &h, to, ki);
                // (α then β)_x(1_x) = β_x(α_x(1_x)).
                let via = beta.at(Edge::new(from, to, alpha.at(x.unit(from))));
                let direct = x.compose(theta, kappa).idx;
                if via != direct {
                    composition = composition.fail(
                        vec![x.edge_label(theta), x.edge_label(kappa)],
                        x.edge_label(Edge::new(from, z, direct)),
                        x.edge_label(Edge::new(from, z, via)),
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(EdgeTransformReport {
        correspondence,
        composition,
    })
}

/// An inverse of `θ: x → y`, and whether the induced transforms
/// `f ↦ f∘θ` and `f ↦ f∘θ⁻¹` are mutually inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub inverse: Option<String>,
    pub transforms_inverse: Check,
}

pub fn iso_check(x: &OriginalGraph, theta: Edge) -> Result<IsoReport> {
    let g = x.graph();
    if !g.contains(theta) {
        return Err(Error::UnknownElement(format!("{theta:?}")));
    }
    let (a, b) = (theta.src, theta.dst);
    let inverse = g
        .edges_between(b, a)
        .find(|&inv| x.compose(theta, inv) == x.unit(a) && x.compose(inv, theta) == x.unit(b));
    let mut check = Check::new("induced transforms are inverse");
    if let Some(inv) = inverse {
        for (start, there, back) in [(a, theta, inv), (b, inv, theta)] {
            for c in 0..g.vertex_count() {
                for f in g.edges_between(c, start) {
                    check.tick();
                    let round = x.compose(x.compose(f, there), back);
                    if round != f {
                        check = check.fail(
                            vec![x.edge_label(f)],
                            x.edge_label(f),
                            x.edge_label(round),
                        );
                    }
                }
            }
        }
    } else {
        check = check.fail(vec![x.edge_label(theta)], "an inverse edge", "none");
    }
    Ok(IsoReport {
        inverse: inverse.map(|e| x.edge_label(e)),
        transforms_inverse: check,
    })
}

/// `|X(a;b)| = |Nat(X(−;a), X(−;b))|` with the correspondence bijective,
/// for every pair of objects.
pub fn fullfaithful_check(x: &FiniteCategory, budget: Budget) -> Result<Check> {
    let g = x.graph();
    let mut check = Check::new("full and faithful embedding");
    for a in 0..g.vertex_count() {
        for b in 0..g.vertex_count() {
            check.tick();
            let report = edge_transform_correspondence(x, a, b, budget)?;
            let edges = g.hom_len(a, b);
            if report.correspondence.transforms != edges || !report.holds() {
                return Ok(check.fail(
                    vec![g.vertices().atom(a).to_string(), g.vertices().atom(b).to_string()],
                    format!("{edges} transforms"),
                    format!("{} transforms", report.correspondence.transforms),
                ));
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FiniteSet;
    use crate::structure::original::{composable_pair, discrete, m3, walking_arrow, z2};

    #[test]
    fn walking_arrow_has_one_transform_between_representables() {
        let x = walking_arrow();
        let f = Character::representable(&x, 1).unwrap();
        let r = yoneda_correspondence(&x, &f, 0, Budget::default()).unwrap();
        assert_eq!((r.transforms, r.social_points), (1, 1));
        assert!(r.bijective);
    }

    #[test]
    fn categories_embed_fully_faithfully() {
        for x in [walking_arrow(), composable_pair(), z2(), discrete(2)] {
            let c = FiniteCategory::new(x).unwrap();
            assert!(fullfaithful_check(&c, Budget::default()).unwrap().holds());
        }
    }

    #[test]
    fn m3_representables_still_correspond() {
        let x = m3();
        let f = Character::representable(&x, 0).unwrap();
        let r = yoneda_correspondence(&x, &f, 0, Budget::default()).unwrap();
        assert!(r.bijective);
        assert!(r.social_points < 3);
    }

    #[test]
    fn non_unital_character_breaks_the_count() {
        // One object, two points, every loop acting as the constant at p.
        let x = OriginalGraph::monoid(&["1"], &[vec![0]]).unwrap();
        let f = Character::new(x.graph().clone(), vec![FiniteSet::new(["p", "q"]).unwrap()], vec![vec![vec![0, 0]]])
            .unwrap();
        let r = yoneda_correspondence(&x, &f, 0, Budget::default()).unwrap();
        assert_eq!((r.social_points, r.transforms), (2, 1));
        assert!(!r.bijective);
    }

    #[test]
    fn inverses() {
        let g = z2();
        let gen = Edge::new(0, 0, 1);
        assert_eq!(iso_check(&g, gen).unwrap().inverse.as_deref(), Some("g:*->*"));
        let w = walking_arrow();
        let a = w.graph().find_edge("a").unwrap();
        let r = iso_check(&w, a).unwrap();
        assert!(r.inverse.is_none());
        let unit = iso_check(&w, w.unit(0)).unwrap();
        assert!(unit.transforms_inverse.holds());
    }
}
